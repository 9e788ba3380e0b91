//! Multivariate power series truncated by total degree.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::mpoly::{default_names, MPoly, Monomial};
use super::ratfunc::RatFunc;
use super::rational::Q;
use crate::error::{Error, Result};

/// A power series in `nvars` variables known modulo total degree `order + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    nvars: usize,
    order: u32,
    terms: BTreeMap<Monomial, Q>,
}

impl TruncSeries {
    pub fn zero(nvars: usize, order: u32) -> Self {
        TruncSeries {
            nvars,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, order: u32, c: Q) -> Self {
        let mut s = Self::zero(nvars, order);
        s.add_term(Monomial::one(nvars), c);
        s
    }

    pub fn one(nvars: usize, order: u32) -> Self {
        Self::constant(nvars, order, Q::one())
    }

    pub fn var(nvars: usize, order: u32, i: usize) -> Self {
        let mut s = Self::zero(nvars, order);
        s.add_term(Monomial::var(nvars, i), Q::one());
        s
    }

    pub fn from_poly(p: &MPoly, order: u32) -> Self {
        let mut s = Self::zero(p.nvars(), order);
        for (m, c) in p.terms() {
            s.add_term(m.clone(), c.clone());
        }
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn coeff_of(&self, exps: &[u32]) -> Q {
        self.coeff(&Monomial::from_exps(exps.to_vec()))
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&Monomial::one(self.nvars))
    }

    /// Adds `c * m`, dropping it when `m` lies beyond the truncation.
    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() || m.degree() > self.order {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn truncate(&self, order: u32) -> Self {
        TruncSeries {
            nvars: self.nvars,
            order,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= order)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// The homogeneous component of total degree `k`.
    pub fn homogeneous(&self, k: u32) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter().filter(move |(m, _)| m.degree() == k)
    }

    pub fn to_poly(&self) -> MPoly {
        MPoly::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), c.clone())))
    }

    fn check(&self, rhs: &Self) -> Result<()> {
        if self.nvars != rhs.nvars || self.order != rhs.order {
            return Err(Error::TruncationMismatch {
                left: (self.nvars, self.order),
                right: (rhs.nvars, rhs.order),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        let mut s = self.clone();
        for (m, c) in &rhs.terms {
            s.add_term(m.clone(), c.clone());
        }
        Ok(s)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.try_add(&rhs.neg())
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(self.mul_unchecked(rhs))
    }

    fn mul_unchecked(&self, rhs: &Self) -> Self {
        let mut s = Self::zero(self.nvars, self.order);
        // Group by degree so the inner loop can stop early.
        let a = by_degree(&self.terms);
        let b = by_degree(&rhs.terms);
        for &(da, ma, ca) in &a {
            for &(db, mb, cb) in &b {
                if da + db > self.order {
                    break;
                }
                s.add_term(ma.mul(mb), ca * cb);
            }
        }
        s
    }

    pub fn neg(&self) -> Self {
        TruncSeries {
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut s = Self::zero(self.nvars, self.order);
        if c.is_zero() {
            return s;
        }
        s.terms = self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect();
        s
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        let mut s = Self::zero(self.nvars, self.order);
        for (k, c) in &self.terms {
            s.add_term(k.mul(m), c.clone());
        }
        s
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars, self.order);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c = self.constant_term();
        if c.is_zero() {
            return Err(Error::PoleAtOrigin);
        }
        let cinv = c.recip();
        // 1/s = c^-1 * sum_k h^k with h = 1 - s/c.
        let h = Self::one(self.nvars, self.order).try_sub(&self.scale(&cinv))?;
        let mut acc = Self::one(self.nvars, self.order);
        let mut p = Self::one(self.nvars, self.order);
        for _ in 0..self.order {
            p = p.mul_unchecked(&h);
            if p.is_zero() {
                break;
            }
            acc = acc.try_add(&p)?;
        }
        Ok(acc.scale(&cinv))
    }

    pub fn pow_i(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.inverse()?.pow(e.unsigned_abs() as u32))
        }
    }

    /// Logarithm of a series with constant term exactly one.
    pub fn log(&self) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(Error::NonUnitConstantTerm);
        }
        let h = Self::one(self.nvars, self.order).try_sub(self)?;
        let mut acc = Self::zero(self.nvars, self.order);
        let mut p = Self::one(self.nvars, self.order);
        for k in 1..=self.order {
            p = p.mul_unchecked(&h);
            if p.is_zero() {
                break;
            }
            acc = acc.try_sub(&p.scale(&Q::new(BigInt::one(), BigInt::from(k))))?;
        }
        Ok(acc)
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        format!("{} + O({})", self.to_poly().fmt_with(names), self.order + 1)
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&default_names(self.nvars)))
    }
}

fn by_degree(t: &BTreeMap<Monomial, Q>) -> Vec<(u32, &Monomial, &Q)> {
    let mut v: Vec<(u32, &Monomial, &Q)> = t.iter().map(|(m, c)| (m.degree(), m, c)).collect();
    v.sort_by_key(|x| x.0);
    v
}

/// Taylor expansion of a rational function at the origin.
pub fn rat_expand(f: &RatFunc, order: u32) -> Result<TruncSeries> {
    let den = TruncSeries::from_poly(f.den(), order);
    if den.constant_term().is_zero() {
        return Err(Error::PoleAtOrigin);
    }
    let num = TruncSeries::from_poly(f.num(), order);
    num.try_mul(&den.inverse()?)
}

/// Evaluates a polynomial in `nx + ny` variables at `x_i = X_i` (the series
/// variables themselves) and `y_k = args[k]`.
pub fn eval_poly_at(p: &MPoly, nx: usize, args: &[TruncSeries]) -> TruncSeries {
    let ny = args.len();
    assert_eq!(p.nvars(), nx + ny, "arity mismatch");
    let (nvars, order) = match args.first() {
        Some(a) => (a.nvars, a.order),
        None => panic!("eval_poly_at needs at least one series argument"),
    };
    assert_eq!(nvars, nx);
    let mut powers: Vec<Vec<TruncSeries>> = Vec::with_capacity(ny);
    for (k, a) in args.iter().enumerate() {
        let d = p.degree_in(nx + k) as usize;
        let mut v = vec![TruncSeries::one(nvars, order)];
        for j in 1..=d {
            let next = v[j - 1].mul_unchecked(a);
            v.push(next);
        }
        powers.push(v);
    }
    let mut acc = TruncSeries::zero(nvars, order);
    for (m, c) in p.terms() {
        let xm = Monomial::from_exps(m.exps()[..nx].to_vec());
        if xm.degree() > order {
            continue;
        }
        let mut t = TruncSeries::constant(nvars, order, c.clone()).mul_monomial(&xm);
        for k in 0..ny {
            let e = m.get(nx + k) as usize;
            if e > 0 {
                t = t.mul_unchecked(&powers[k][e]);
            }
        }
        for (mm, cc) in t.terms {
            acc.add_term(mm, cc);
        }
    }
    acc
}
