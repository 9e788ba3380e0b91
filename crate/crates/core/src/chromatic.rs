//! Chromatic polynomials, moduli point counts over finite fields and the
//! torus-chart obstruction.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ribbon::{Multigraph, RibbonGraph};

/// Dense integer polynomial, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `x`
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `x - c`
    pub fn linear(c: i64) -> Self {
        Self::from_i64(&[-c, 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }

    pub fn sub(&self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }

    pub fn mul(&self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPoly::new(c)
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        (0..e).fold(IntPoly::one(), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// `p(x + c)`
    pub fn shift(&self, c: i64) -> IntPoly {
        let lin = IntPoly::from_i64(&[c, 1]);
        self.coeffs.iter().rev().fold(IntPoly::zero(), |acc, a| {
            acc.mul(&lin).add(&IntPoly::new(vec![a.clone()]))
        })
    }

    /// Quotient and remainder by a monic divisor.
    pub fn div_rem_monic(&self, d: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(d.leading().is_one(), "divisor must be monic");
        let dd = d.degree().expect("nonzero divisor");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (IntPoly::zero(), self.clone());
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= &c * dc;
            }
            q[k] = c;
        }
        (IntPoly::new(q), IntPoly::new(r))
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("x"))
    }
}

/// A simple graph on `0..n` used inside the recursion.
#[derive(Clone, PartialEq, Eq, Hash)]
struct Simple {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Simple {
    fn adjacency(&self) -> Vec<BTreeSet<usize>> {
        let mut adj = vec![BTreeSet::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        adj
    }

    /// Deletes vertex `v`, renumbering the ones above it.
    fn remove_vertex(&self, v: usize) -> Simple {
        let f = |x: usize| if x > v { x - 1 } else { x };
        Simple {
            n: self.n - 1,
            edges: self
                .edges
                .iter()
                .filter(|&&(a, b)| a != v && b != v)
                .map(|&(a, b)| (f(a), f(b)))
                .collect(),
        }
    }

    /// Contracts the edge `(a, b)`, `a < b`, merging `b` into `a`.
    fn contract(&self, a: usize, b: usize) -> Simple {
        let f = |x: usize| {
            let x = if x == b { a } else { x };
            if x > b {
                x - 1
            } else {
                x
            }
        };
        let mut edges = BTreeSet::new();
        for &(x, y) in &self.edges {
            if (x, y) == (a, b) {
                continue;
            }
            let (p, q) = (f(x), f(y));
            edges.insert((p.min(q), p.max(q)));
        }
        Simple { n: self.n - 1, edges }
    }
}

/// Chromatic polynomial by deletion-contraction, with loop, isolated-vertex
/// and simplicial-vertex shortcuts and memoization.
pub fn chromatic_polynomial(g: &Multigraph) -> IntPoly {
    if g.has_loop() {
        return IntPoly::zero();
    }
    let s = Simple {
        n: g.vertex_count,
        edges: g.simple_edges(),
    };
    let mut memo = HashMap::new();
    chrom_rec(&s, &mut memo)
}

fn chrom_rec(g: &Simple, memo: &mut HashMap<Simple, IntPoly>) -> IntPoly {
    if g.edges.is_empty() {
        return IntPoly::x().pow(g.n as u32);
    }
    if let Some(p) = memo.get(g) {
        return p.clone();
    }
    let adj = g.adjacency();
    // A vertex whose neighbours form a clique of size k contributes x - k.
    let simplicial = (0..g.n).find(|&v| {
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        nb.iter()
            .enumerate()
            .all(|(i, &a)| nb[i + 1..].iter().all(|b| adj[a].contains(b)))
    });
    let result = if let Some(v) = simplicial {
        IntPoly::linear(adj[v].len() as i64).mul(&chrom_rec(&g.remove_vertex(v), memo))
    } else {
        let &(a, b) = g
            .edges
            .iter()
            .max_by_key(|&&(a, b)| adj[a].len() + adj[b].len())
            .expect("nonempty");
        let mut del = g.clone();
        del.edges.remove(&(a, b));
        chrom_rec(&del, memo).sub(&chrom_rec(&g.contract(a, b), memo))
    };
    memo.insert(g.clone(), result.clone());
    result
}

/// `q^3 - q`, the order of PGL_2(F_q).
pub fn pgl2_order() -> IntPoly {
    IntPoly::from_i64(&[0, -1, 0, 1])
}

/// Number of points of the moduli space over F_q as a polynomial in q:
/// proper (q+1)-colorings of the dual graph divided by q^3 - q.
pub fn moduli_count_poly(graph: &RibbonGraph) -> Result<IntPoly> {
    let p = chromatic_polynomial(&graph.dual()).shift(1);
    let (quo, rem) = p.div_rem_monic(&pgl2_order());
    if !rem.is_zero() {
        return Err(Error::NotDivisible(format!("remainder {}", rem.fmt_var("q"))));
    }
    Ok(quo)
}

pub const BRUTE_FORCE_LIMIT: u128 = 100_000_000;

/// Counts proper colorings of the faces with q+1 colors by enumeration and
/// divides by q^3 - q.
pub fn brute_force_moduli_count(graph: &RibbonGraph, q: u64) -> Result<BigInt> {
    if q < 2 {
        return Err(Error::InvalidArgument(format!("q = {q} must be at least 2")));
    }
    let f = graph.num_faces();
    let colors = q + 1;
    let total = (colors as u128).checked_pow(f as u32).unwrap_or(u128::MAX);
    if total > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge(total));
    }
    let dual = graph.dual();
    if dual.has_loop() {
        return Ok(BigInt::zero());
    }
    let mut nbrs = vec![Vec::new(); f];
    for (a, b) in dual.simple_edges() {
        nbrs[b].push(a);
        nbrs[a].push(b);
    }
    let mut assign = vec![0u64; f];
    let count = color_rec(0, &nbrs, colors, &mut assign);
    let order = BigInt::from(q) * BigInt::from(q) * BigInt::from(q) - BigInt::from(q);
    let (quo, rem) = BigInt::from(count).div_rem(&order);
    if !rem.is_zero() {
        return Err(Error::NotDivisible(format!(
            "{count} proper colorings, q^3 - q = {order}"
        )));
    }
    Ok(quo)
}

fn color_rec(i: usize, nbrs: &[Vec<usize>], colors: u64, assign: &mut [u64]) -> u64 {
    if i == assign.len() {
        return 1;
    }
    let mut total = 0;
    for c in 0..colors {
        if nbrs[i].iter().any(|&j| j < i && assign[j] == c) {
            continue;
        }
        assign[i] = c;
        total += color_rec(i + 1, nbrs, colors, assign);
    }
    total
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FillabilityReport {
    pub genus: usize,
    #[serde(serialize_with = "ser_poly")]
    pub moduli_poly: IntPoly,
    #[serde(serialize_with = "ser_poly")]
    pub torus_poly: IntPoly,
    pub second_coeff_moduli: i64,
    pub second_coeff_torus: i64,
    pub obstructed: bool,
}

fn ser_poly<S: serde::Serializer>(p: &IntPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.fmt_var("q"))
}

/// Compares the point count with that of a torus `(q-1)^g`: a torus chart
/// would need at least as many points, so a smaller `q^(g-1)` coefficient
/// with the same leading term rules out every chart.
pub fn fillability_obstruction(graph: &RibbonGraph) -> Result<FillabilityReport> {
    if let Some(why) = graph.simplicity_defect() {
        return Err(Error::NotSimple(why));
    }
    let g = graph.genus();
    if g == 0 {
        return Err(Error::InvalidArgument("genus 0 has no torus chart to compare".into()));
    }
    let moduli = moduli_count_poly(graph)?;
    let torus = IntPoly::linear(1).pow(g as u32);
    let shape_ok = moduli.degree() == Some(g) && moduli.leading().is_one();
    if !shape_ok {
        return Err(Error::VerificationFailed(format!(
            "count polynomial {} is not monic of degree {g}",
            moduli.fmt_var("q")
        )));
    }
    let second_m = moduli.coeff(g - 1).to_i64().expect("small coefficient");
    let second_t = torus.coeff(g - 1).to_i64().expect("small coefficient");
    if second_m != -2 * g as i64 {
        return Err(Error::VerificationFailed(format!(
            "q^{} coefficient is {second_m}, expected {}",
            g - 1,
            -2 * g as i64
        )));
    }
    Ok(FillabilityReport {
        genus: g,
        obstructed: second_m < second_t,
        moduli_poly: moduli,
        torus_poly: torus,
        second_coeff_moduli: second_m,
        second_coeff_torus: second_t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ribbon::presets;

    #[test]
    fn small_chromatic_polynomials() {
        assert_eq!(chromatic_polynomial(&Multigraph::new(1, vec![]).unwrap()), IntPoly::x());
        let k4 = Multigraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(chromatic_polynomial(&k4), IntPoly::from_i64(&[0, -6, 11, -6, 1]));
        let looped = Multigraph::new(2, vec![(0, 1), (1, 1)]).unwrap();
        assert!(chromatic_polynomial(&looped).is_zero());
        // 4-cycle: (x-1)^4 + (x-1)
        let c4 = Multigraph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 1)]).unwrap();
        assert_eq!(
            chromatic_polynomial(&c4),
            IntPoly::linear(1).pow(4).add(&IntPoly::linear(1))
        );
    }

    #[test]
    fn point_counts() {
        let t = moduli_count_poly(&presets::tetrahedron()).unwrap();
        assert_eq!(t, IntPoly::linear(2));
        let p = moduli_count_poly(&presets::prism()).unwrap();
        assert_eq!(p, IntPoly::from_i64(&[4, -4, 1]));
        let c = moduli_count_poly(&presets::cube()).unwrap();
        assert_eq!(c, IntPoly::from_i64(&[-11, 14, -6, 1]));
        assert_eq!(c.fmt_var("q"), "q^3 - 6q^2 + 14q - 11");
    }

    #[test]
    fn brute_force_small() {
        let t = presets::tetrahedron();
        assert_eq!(brute_force_moduli_count(&t, 3).unwrap(), BigInt::from(1));
        assert_eq!(brute_force_moduli_count(&t, 2).unwrap(), BigInt::from(0));
        assert_eq!(brute_force_moduli_count(&presets::prism(), 3).unwrap(), BigInt::from(1));
    }

    #[test]
    fn fillability() {
        let r = fillability_obstruction(&presets::prism()).unwrap();
        assert_eq!((r.second_coeff_moduli, r.second_coeff_torus), (-4, -2));
        assert!(r.obstructed);
        assert!(matches!(
            fillability_obstruction(&presets::theta()),
            Err(Error::NotSimple(_))
        ));
    }

    #[test]
    fn shift_and_divide() {
        let p = IntPoly::from_i64(&[1, 2, 1]);
        assert_eq!(p.shift(-1), IntPoly::from_i64(&[0, 0, 1]));
        let (q, r) = IntPoly::from_i64(&[0, -1, 0, 1])
            .mul(&IntPoly::linear(5))
            .div_rem_monic(&pgl2_order());
        assert_eq!((q, r), (IntPoly::linear(5), IntPoly::zero()));
    }
}
