//! Rational functions in canonical reduced form.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::gcd;
use super::mpoly::{default_names, MPoly};
use super::rational::Q;

/// `num / den`, with `gcd(num, den) = 1` and `den` integral, primitive and
/// with positive leading coefficient. Equal functions have equal fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: MPoly,
    den: MPoly,
}

impl RatFunc {
    pub fn new(num: MPoly, den: MPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        assert_eq!(num.nvars(), den.nvars(), "arity mismatch");
        if num.is_zero() {
            return Some(Self::zero(num.nvars()));
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        let (c, den) = den.integral_normal_form();
        let num = num.scale(&c.recip());
        Some(RatFunc { num, den })
    }

    pub fn from_poly(p: MPoly) -> Self {
        let n = p.nvars();
        RatFunc {
            num: p,
            den: MPoly::one(n),
        }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        Self::from_poly(MPoly::constant(nvars, c))
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(MPoly::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(MPoly::one(nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::from_poly(MPoly::var(nvars, i))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_constant() && self.num == self.den
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn recip(&self) -> Option<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow_i(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        // Powers of a reduced fraction stay reduced.
        let (c, den) = base.den.pow(k).integral_normal_form();
        Some(RatFunc {
            num: base.num.pow(k).scale(&c.recip()),
            den,
        })
    }

    /// Value at a point, `None` at a pole.
    pub fn eval(&self, point: &[Q]) -> Option<Q> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(point) / d)
    }

    /// Substitutes rational functions for every variable. The images must all
    /// live in the same ring.
    pub fn compose(&self, images: &[RatFunc]) -> Option<RatFunc> {
        let n = compose_poly(&self.num, images)?;
        let d = compose_poly(&self.den, images)?;
        n.checked_div(&d)
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Option<RatFunc> {
        if rhs.is_zero() {
            return None;
        }
        Some(self * &rhs.recip()?)
    }

    pub fn remap(&self, nvars: usize, map: &[usize]) -> RatFunc {
        RatFunc::new(self.num.remap(nvars, map), self.den.remap(nvars, map)).unwrap()
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let n = self.num.fmt_with(names);
        if self.den.is_one() {
            return n;
        }
        let wrap = |p: &MPoly, s: String| {
            if p.num_terms() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}/{}", wrap(&self.num, n), wrap(&self.den, self.den.fmt_with(names)))
    }
}

/// Substitutes rational functions into a polynomial.
pub fn compose_poly(p: &MPoly, images: &[RatFunc]) -> Option<RatFunc> {
    assert_eq!(images.len(), p.nvars());
    let nv = images.first().map(RatFunc::nvars).unwrap_or(0);
    // Accumulate over a common denominator to avoid a gcd per term.
    let degs: Vec<u32> = (0..p.nvars()).map(|i| p.degree_in(i)).collect();
    let mut pows: Vec<Vec<(MPoly, MPoly)>> = Vec::with_capacity(images.len());
    for (img, &d) in images.iter().zip(&degs) {
        let mut v = vec![(MPoly::one(nv), MPoly::one(nv))];
        for k in 1..=d as usize {
            let (n, dd) = &v[k - 1];
            v.push((n * &img.num, dd * &img.den));
        }
        pows.push(v);
    }
    let mut num = MPoly::zero(nv);
    let den_all: MPoly = images
        .iter()
        .zip(&degs)
        .fold(MPoly::one(nv), |acc, (img, &d)| &acc * &img.den.pow(d));
    for (m, c) in p.terms() {
        let mut t = MPoly::constant(nv, c.clone());
        for (i, &e) in m.exps().iter().enumerate() {
            let e = e as usize;
            t = &t * &pows[i][e].0;
            // Multiply by den_i^(d_i - e) so every term shares den_all.
            t = &t * &images[i].den.pow(degs[i] - e as u32);
        }
        num += &t;
    }
    RatFunc::new(num, den_all)
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&default_names(self.nvars())))
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        RatFunc::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den).unwrap()
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero(self.nvars());
        }
        // Cross-cancel first to keep the factors small.
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let n1 = self.num.exact_div(&g1).unwrap();
        let d2 = rhs.den.exact_div(&g1).unwrap();
        let n2 = rhs.num.exact_div(&g2).unwrap();
        let d1 = self.den.exact_div(&g2).unwrap();
        let (c, den) = (&d1 * &d2).integral_normal_form();
        RatFunc {
            num: (&n1 * &n2).scale(&c.recip()),
            den,
        }
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        &self + &rhs
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        &self - &rhs
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        &self * &rhs
    }
}

impl Div for RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: RatFunc) -> RatFunc {
        &self / &rhs
    }
}

impl RatFunc {
    pub fn scale(&self, c: &Q) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero(self.nvars());
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn neg_one(nvars: usize) -> RatFunc {
        RatFunc::constant(nvars, -Q::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::q;

    fn z() -> RatFunc {
        RatFunc::var(1, 0)
    }
    fn one() -> RatFunc {
        RatFunc::one(1)
    }

    #[test]
    fn canonical_form() {
        let a = &z() / &(&one() - &z());
        let b = &(&z() * &RatFunc::constant(1, q(-2)))
            / &(&(&z() * &RatFunc::constant(1, q(2))) - &RatFunc::constant(1, q(2)));
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "-x0/(x0 - 1)");
    }

    #[test]
    fn product_identity() {
        // z/(1-z) * (z-1) * (-1/z) = 1
        let x1 = &z() / &(&one() - &z());
        let x2 = &z() - &one();
        let x3 = -(&one() / &z());
        assert!((&(&x1 * &x2) * &x3).is_one());
    }

    #[test]
    fn compose_and_eval() {
        let f = &one() / &(&one() - &z());
        let g = f.compose(&[&one() / &z()]).unwrap();
        assert_eq!(g, &z() / &(&z() - &one()));
        assert_eq!(g.eval(&[q(3)]), Some(crate::exactalg::rational::qf(3, 2)));
        assert_eq!(g.eval(&[q(1)]), None);
    }
}
