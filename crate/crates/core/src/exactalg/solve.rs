//! Dense linear algebra over the rationals and order-by-order solving of
//! implicit power-series systems.

use num_traits::{One, Zero};

use super::mpoly::{MPoly, Monomial};
use super::rational::Q;
use super::series::{eval_poly_at, TruncSeries};
use crate::error::{Error, Result};

pub type QMatrix = Vec<Vec<Q>>;

/// Inverse by Gauss-Jordan elimination, `None` when singular.
pub fn invert(a: &QMatrix) -> Option<QMatrix> {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "matrix must be square");
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let p = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (x, y) in m[r].iter_mut().zip(pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn rank(a: &QMatrix) -> usize {
    let mut m = a.clone();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                let pr = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(pr) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn mat_vec(a: &QMatrix, v: &[Q]) -> Vec<Q> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(Q::zero(), |acc, (x, y)| acc + x * y))
        .collect()
}

/// Solves `G_j(x, y) = 0` for power series `y(x)` with `y(0) = seed`.
///
/// Each `G_j` is a polynomial in `nx + seed.len()` variables, the first `nx`
/// being the series variables. At every total degree the new coefficients are
/// obtained from the constant Jacobian `dG/dy(0, seed)`. The final residual is
/// checked to vanish modulo the truncation.
pub fn series_solve(eqs: &[MPoly], nx: usize, seed: &[Q], order: u32) -> Result<Vec<TruncSeries>> {
    let ny = seed.len();
    if eqs.len() != ny {
        return Err(Error::DimensionMismatch(format!(
            "{} equations for {} unknowns",
            eqs.len(),
            ny
        )));
    }
    let mut base = vec![Q::zero(); nx];
    base.extend_from_slice(seed);
    for g in eqs {
        if !g.eval(&base).is_zero() {
            return Err(Error::SeedNotRoot);
        }
    }
    let jac: QMatrix = eqs
        .iter()
        .map(|g| (0..ny).map(|k| g.derivative(nx + k).eval(&base)).collect())
        .collect();
    let jinv = invert(&jac).ok_or(Error::SingularJacobian)?;

    let mut ys: Vec<TruncSeries> = seed
        .iter()
        .map(|c| TruncSeries::constant(nx, order, c.clone()))
        .collect();
    for k in 1..=order {
        let args: Vec<TruncSeries> = ys.iter().map(|y| y.truncate(k)).collect();
        let res: Vec<TruncSeries> = eqs.iter().map(|g| eval_poly_at(g, nx, &args)).collect();
        let mut monos: Vec<Monomial> = res
            .iter()
            .flat_map(|r| r.homogeneous(k).map(|(m, _)| m.clone()))
            .collect();
        monos.sort();
        monos.dedup();
        for m in monos {
            let r: Vec<Q> = res.iter().map(|s| -s.coeff(&m)).collect();
            let dy = mat_vec(&jinv, &r);
            for (y, c) in ys.iter_mut().zip(dy) {
                y.add_term(m.clone(), c);
            }
        }
    }
    for g in eqs {
        if !eval_poly_at(g, nx, &ys).is_zero() {
            return Err(Error::VerificationFailed("series residual does not vanish".into()));
        }
    }
    Ok(ys)
}
