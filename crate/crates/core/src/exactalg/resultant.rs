//! Sylvester resultants and successive elimination.

use super::gcd::{content_in, gcd};
use super::mpoly::MPoly;
use crate::error::{Error, Result};

/// Most variables `eliminate` will remove.
pub const MAX_ELIMINATED: usize = 3;
/// Term-count guard on intermediate resultants.
pub const MAX_TERMS: usize = 20_000;

/// Resultant of `a` and `b` with respect to `x_v`.
pub fn resultant(a: &MPoly, b: &MPoly, v: usize) -> MPoly {
    let n = a.nvars();
    let da = a.degree_in(v) as usize;
    let db = b.degree_in(v) as usize;
    if da == 0 && db == 0 {
        return MPoly::one(n);
    }
    if da == 0 {
        return a.pow(db as u32);
    }
    if db == 0 {
        return b.pow(da as u32);
    }
    let ca = a.coeffs_in(v);
    let cb = b.coeffs_in(v);
    let size = da + db;
    let mut m = vec![vec![MPoly::zero(n); size]; size];
    for r in 0..db {
        for (k, c) in ca.iter().enumerate() {
            m[r][r + da - k] = c.clone();
        }
    }
    for r in 0..da {
        for (k, c) in cb.iter().enumerate() {
            m[db + r][r + db - k] = c.clone();
        }
    }
    bareiss_det(m)
}

/// Fraction-free determinant of a square polynomial matrix.
pub fn bareiss_det(mut m: Vec<Vec<MPoly>>) -> MPoly {
    let n = m.len();
    if n == 0 {
        return MPoly::one(0);
    }
    let nv = m[0][0].nvars();
    let mut sign = false;
    let mut prev = MPoly::one(nv);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return MPoly::zero(nv);
            };
            m.swap(k, p);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Squarefree part of a polynomial (product of distinct irreducible factors
/// up to a constant), computed variable by variable.
pub fn squarefree(p: &MPoly) -> MPoly {
    if p.is_constant() {
        return p.normalized();
    }
    let mut out = MPoly::one(p.nvars());
    let mut rest = p.normalized();
    for v in 0..p.nvars() {
        if !rest.uses_var(v) {
            continue;
        }
        let c = content_in(&rest, v);
        let prim = rest.exact_div(&c).unwrap();
        let g = gcd(&prim, &prim.derivative(v));
        out = &out * &prim.exact_div(&g).unwrap();
        rest = c;
    }
    (&out * &rest).normalized()
}

/// Eliminates the listed variables by successive resultants. Output
/// polynomials do not involve the eliminated variables; they may carry
/// spurious factors and must be verified by the caller.
pub fn resultant_eliminate(polys: &[MPoly], eliminate: &[usize]) -> Result<Vec<MPoly>> {
    if eliminate.len() > MAX_ELIMINATED {
        return Err(Error::EliminationBlowup(format!(
            "asked to eliminate {} variables (limit {})",
            eliminate.len(),
            MAX_ELIMINATED
        )));
    }
    let mut current: Vec<MPoly> = polys.iter().filter(|p| !p.is_zero()).map(MPoly::normalized).collect();
    for &v in eliminate {
        let (mut with, without): (Vec<MPoly>, Vec<MPoly>) = current.into_iter().partition(|p| p.uses_var(v));
        current = without;
        if with.is_empty() {
            continue;
        }
        with.sort_by_key(|p| (p.degree_in(v), p.num_terms()));
        let pivot = with.remove(0);
        for p in with {
            let r = resultant(&pivot, &p, v);
            if r.num_terms() > MAX_TERMS {
                return Err(Error::EliminationBlowup(format!(
                    "intermediate resultant has {} terms",
                    r.num_terms()
                )));
            }
            if !r.is_zero() && !r.is_constant() {
                current.push(squarefree(&r));
            }
        }
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::q;

    #[test]
    fn linear_substitution() {
        // vars: U, V, t
        let (u, v, t) = (MPoly::var(3, 0), MPoly::var(3, 1), MPoly::var(3, 2));
        let one = MPoly::one(3);
        let p1 = &v - &(&one - &t);
        let p2 = &u - &t;
        let out = resultant_eliminate(&[p1, p2], &[2]).unwrap();
        assert_eq!(out, vec![&(&u + &v) - &one]);
    }

    #[test]
    fn cusp() {
        let (u, v, t) = (MPoly::var(3, 0), MPoly::var(3, 1), MPoly::var(3, 2));
        let p1 = &u - &t.pow(2);
        let p2 = &v - &t.pow(3);
        let out = resultant_eliminate(&[p1, p2], &[2]).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0], &u.pow(3) - &v.pow(2));
    }

    #[test]
    fn guard() {
        let p = MPoly::var(5, 0);
        assert!(matches!(
            resultant_eliminate(&[p], &[0, 1, 2, 3]),
            Err(Error::EliminationBlowup(_))
        ));
    }

    #[test]
    fn squarefree_part() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let f = &x + &y;
        let p = &(&f.pow(3) * &y.pow(2)).scale(&q(4)) * &(&x - &MPoly::one(2));
        assert_eq!(squarefree(&p), (&(&f * &y) * &(&x - &MPoly::one(2))).normalized());
    }
}
