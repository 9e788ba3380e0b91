//! Multivariate polynomial gcd over the rationals.
//!
//! Recursive primitive polynomial remainder sequences: the polynomials are
//! viewed as univariate in their highest variable with coefficients in the
//! remaining ones, contents are split off recursively.

use num_traits::One;

use super::mpoly::{MPoly, Monomial};
use super::rational::Q;

/// Greatest common divisor, normalized to be integral, primitive and with a
/// positive leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one(a.nvars());
    }
    // Fast path: one side divides the other.
    if a.num_terms() <= b.num_terms() {
        if b.exact_div(a).is_some() {
            return a.normalized();
        }
    } else if a.exact_div(b).is_some() {
        return b.normalized();
    }
    let v = a.max_var().max(b.max_var()).expect("non-constant");
    let (a_uses, b_uses) = (a.uses_var(v), b.uses_var(v));
    if !a_uses {
        return gcd(a, &content_in(b, v));
    }
    if !b_uses {
        return gcd(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd(&ca, &cb);
    let pa = a.exact_div(&ca).expect("content divides");
    let pb = b.exact_div(&cb).expect("content divides");
    let g = primitive_prs(pa, pb, v);
    (&c * &g).normalized()
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `x_v`.
pub fn content_in(p: &MPoly, v: usize) -> MPoly {
    let mut coeffs = p.coeffs_in(v);
    coeffs.retain(|c| !c.is_zero());
    coeffs.sort_by_key(MPoly::num_terms);
    let mut acc = MPoly::zero(p.nvars());
    for c in coeffs {
        acc = gcd(&acc, &c);
        if acc.is_constant() {
            return MPoly::one(p.nvars());
        }
    }
    acc
}

pub fn primitive_part_in(p: &MPoly, v: usize) -> MPoly {
    if p.is_zero() {
        return p.clone();
    }
    p.exact_div(&content_in(p, v)).expect("content divides").normalized()
}

fn lead_in(p: &MPoly, v: usize) -> (u32, MPoly) {
    let d = p.degree_in(v);
    (d, p.coeff_in(v, d))
}

/// A nonzero multiple of the pseudo-remainder of `a` by `b` in `x_v`.
fn pseudo_rem(a: &MPoly, b: &MPoly, v: usize) -> MPoly {
    let (db, lb) = lead_in(b, v);
    let mut r = a.clone();
    loop {
        if r.is_zero() {
            return r;
        }
        let (dr, lr) = lead_in(&r, v);
        if dr < db {
            return r;
        }
        let shift = Monomial::var(a.nvars(), v);
        let mut t = &lr * b;
        for _ in 0..(dr - db) {
            t = t.mul_monomial(&shift, &Q::one());
        }
        r = &(&lb * &r) - &t;
    }
}

fn primitive_prs(mut a: MPoly, mut b: MPoly, v: usize) -> MPoly {
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    a = primitive_part_in(&a, v);
    b = primitive_part_in(&b, v);
    while !b.is_zero() {
        let r = pseudo_rem(&a, &b, v);
        if r.is_zero() {
            return b;
        }
        if !r.uses_var(v) {
            return MPoly::one(a.nvars());
        }
        a = b;
        b = primitive_part_in(&r, v);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::q;

    fn x(i: usize) -> MPoly {
        MPoly::var(3, i)
    }
    fn c(n: i64) -> MPoly {
        MPoly::constant(3, q(n))
    }

    #[test]
    fn univariate() {
        let a = &(&x(0) - &c(1)) * &(&x(0) + &c(2));
        let b = &(&x(0) - &c(1)) * &(&x(0) - &c(3));
        assert_eq!(gcd(&a, &b), &x(0) - &c(1));
    }

    #[test]
    fn multivariate_common_factor() {
        let f = &(&x(0) * &x(1)) + &c(1);
        let g1 = &x(2) - &x(0);
        let g2 = &(&x(1) * &x(1)) + &x(2);
        let a = &(&f * &g1).scale(&q(6)) * &x(1);
        let b = &(&f * &g2).scale(&q(-4)) * &x(1);
        assert_eq!(gcd(&a, &b), &f * &x(1));
    }

    #[test]
    fn coprime() {
        let a = &x(0) + &x(1);
        let b = &x(0) - &x(1);
        assert_eq!(gcd(&a, &b), c(1));
    }
}
