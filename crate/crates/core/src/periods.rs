//! The cross-ratio period map on moduli of face colorings.
//!
//! Faces carry points of the projective line in homogeneous coordinates
//! `[p : q]`, so infinity is `[1 : 0]` and never a limit. For an edge with
//! primary dart `h` (its smaller dart) the four surrounding faces are
//!
//! * `a = face(h)`, `c = face(alpha h)`: the two faces along the edge,
//! * `b = face(sigma^-1(alpha h))`, `d = face(sigma^-1(h))`: the faces
//!   across the two endpoints,
//!
//! and `x = -D(b,a) D(d,c) / (D(c,b) D(a,d))` with `D(u,v) = p_u q_v - p_v q_u`.
//! The value does not depend on which dart is primary. Reversing the
//! orientation of an edge class inverts `x`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::mpoly::MPoly;
use crate::exactalg::ratfunc::RatFunc;
use crate::exactalg::rational::Q;
use crate::homlattice::EdgeClass;
use crate::ribbon::RibbonGraph;

/// A point `[p : q]` of the projective line over a field of rational
/// functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjPoint {
    pub p: RatFunc,
    pub q: RatFunc,
}

impl ProjPoint {
    pub fn new(p: RatFunc, q: RatFunc) -> Result<Self> {
        if p.is_zero() && q.is_zero() {
            return Err(Error::DegenerateConfiguration("point [0 : 0]".into()));
        }
        Ok(ProjPoint { p, q })
    }

    pub fn finite(z: RatFunc) -> Self {
        let n = z.nvars();
        ProjPoint {
            p: z,
            q: RatFunc::one(n),
        }
    }

    pub fn infinity(nvars: usize) -> Self {
        ProjPoint {
            p: RatFunc::one(nvars),
            q: RatFunc::zero(nvars),
        }
    }

    pub fn constant(nvars: usize, z: Q) -> Self {
        Self::finite(RatFunc::constant(nvars, z))
    }

    /// Applies `[[a, b], [c, d]]`.
    pub fn transform(&self, m: &[[Q; 2]; 2]) -> ProjPoint {
        let n = self.p.nvars();
        let k = |x: &Q| RatFunc::constant(n, x.clone());
        ProjPoint {
            p: &(&k(&m[0][0]) * &self.p) + &(&k(&m[0][1]) * &self.q),
            q: &(&k(&m[1][0]) * &self.p) + &(&k(&m[1][1]) * &self.q),
        }
    }
}

fn det(u: &ProjPoint, v: &ProjPoint) -> RatFunc {
    &(&u.p * &v.q) - &(&v.p * &u.q)
}

/// The faces `(a, b, c, d)` around an edge.
pub fn surrounding_faces(graph: &RibbonGraph, edge: usize) -> (usize, usize, usize, usize) {
    let (h, k) = graph.edges()[edge];
    (
        graph.face_of(h),
        graph.face_of(graph.sigma_inv(k)),
        graph.face_of(k),
        graph.face_of(graph.sigma_inv(h)),
    )
}

pub fn cross_ratio(graph: &RibbonGraph, edge: usize, coords: &[ProjPoint]) -> Result<RatFunc> {
    if edge >= graph.num_edges() {
        return Err(Error::EdgeOutOfRange(edge));
    }
    if coords.len() != graph.num_faces() {
        return Err(Error::DimensionMismatch(format!(
            "{} face coordinates for {} faces",
            coords.len(),
            graph.num_faces()
        )));
    }
    let (a, b, c, d) = surrounding_faces(graph, edge);
    let (pa, pb, pc, pd) = (&coords[a], &coords[b], &coords[c], &coords[d]);
    let num = &det(pb, pa) * &det(pd, pc);
    let den = &det(pc, pb) * &det(pa, pd);
    if num.is_zero() || den.is_zero() {
        return Err(Error::DegenerateConfiguration(format!(
            "edge {edge}: faces ({a}, {b}, {c}, {d}) are not in general position"
        )));
    }
    Ok(-(&num / &den))
}

/// Three faces sent to `0`, `1` and `infinity`.
pub type Gauge = [usize; 3];

/// The lexicographically first triple of pairwise adjacent faces, or
/// `(0, 1, 2)` with `dense = false` when there is none.
pub fn default_gauge(graph: &RibbonGraph) -> (Gauge, bool) {
    let f = graph.num_faces();
    let mut adj = vec![vec![false; f]; f];
    for e in 0..graph.num_edges() {
        let (x, y) = graph.edge_faces(e);
        adj[x][y] = true;
        adj[y][x] = true;
    }
    for i in 0..f {
        for j in i + 1..f {
            for k in j + 1..f {
                if adj[i][j] && adj[j][k] && adj[i][k] {
                    return ([i, j, k], true);
                }
            }
        }
    }
    ([0, 1, 2], false)
}

/// The period map in a gauge: free faces carry variables `t1..tg`.
#[derive(Clone, Debug)]
pub struct PeriodChart {
    pub gauge: Gauge,
    /// Face carrying `t_{k+1}`, ascending.
    pub free_faces: Vec<usize>,
    pub edge_values: Vec<RatFunc>,
    pub face_coords: Vec<ProjPoint>,
    /// Whether the gauge faces are pairwise adjacent; otherwise the chart
    /// covers only a dense open subset of the moduli space.
    pub adjacent_gauge: bool,
    face_edges: Vec<Vec<usize>>,
}

impl PeriodChart {
    pub fn nvars(&self) -> usize {
        self.free_faces.len()
    }

    pub fn var_names(&self) -> Vec<String> {
        (1..=self.nvars()).map(|i| format!("t{i}")).collect()
    }

    /// `prod_e x_e^{c_e}`.
    pub fn monomial(&self, c: &EdgeClass) -> RatFunc {
        let n = self.nvars();
        let mut acc = RatFunc::one(n);
        for (e, &k) in c.0.iter().enumerate() {
            if k != 0 {
                acc = &acc * &self.edge_values[e].pow_i(k).expect("edge values are nonzero");
            }
        }
        acc
    }

    /// Product of the edge values around a face.
    pub fn face_product(&self, f: usize) -> RatFunc {
        let n = self.nvars();
        self.face_edges[f]
            .iter()
            .fold(RatFunc::one(n), |acc, &e| &acc * &self.edge_values[e])
    }

    /// Checks that each supplied rational function vanishes identically.
    pub fn verify_relations(&self, relations: &[(String, RatFunc)]) -> Result<()> {
        for (name, r) in relations {
            if !r.is_zero() {
                return Err(Error::RelationFailed(format!(
                    "{name}: residual {}",
                    r.fmt_with(&self.var_names())
                )));
            }
        }
        Ok(())
    }
}

/// Builds the chart and checks every face relation exactly.
pub fn build_chart(graph: &RibbonGraph, gauge: Option<Gauge>) -> Result<PeriodChart> {
    let f = graph.num_faces();
    let (gauge, adjacent) = match gauge {
        Some(gg) => {
            if let Some(&bad) = gg.iter().find(|&&x| x >= f) {
                return Err(Error::FaceOutOfRange(bad));
            }
            if gg[0] == gg[1] || gg[1] == gg[2] || gg[0] == gg[2] {
                return Err(Error::InvalidGauge(format!("faces {gg:?} are not distinct")));
            }
            let adj = |x: usize, y: usize| {
                (0..graph.num_edges()).any(|e| {
                    let (p, q) = graph.edge_faces(e);
                    (p == x && q == y) || (p == y && q == x)
                })
            };
            (gg, adj(gg[0], gg[1]) && adj(gg[1], gg[2]) && adj(gg[0], gg[2]))
        }
        None => default_gauge(graph),
    };
    let free_faces: Vec<usize> = (0..f).filter(|x| !gauge.contains(x)).collect();
    let n = free_faces.len();
    let mut coords = vec![ProjPoint::infinity(n); f];
    coords[gauge[0]] = ProjPoint::constant(n, Q::from_integer(0.into()));
    coords[gauge[1]] = ProjPoint::constant(n, Q::from_integer(1.into()));
    coords[gauge[2]] = ProjPoint::infinity(n);
    for (k, &face) in free_faces.iter().enumerate() {
        coords[face] = ProjPoint::finite(RatFunc::var(n, k));
    }
    let edge_values = (0..graph.num_edges())
        .map(|e| cross_ratio(graph, e, &coords))
        .collect::<Result<Vec<_>>>()?;
    let chart = PeriodChart {
        gauge,
        free_faces,
        edge_values,
        face_coords: coords,
        adjacent_gauge: adjacent,
        face_edges: (0..f).map(|x| graph.face_edges(x)).collect(),
    };
    for x in 0..f {
        if !chart.face_product(x).is_one() {
            return Err(Error::FaceRelationFailed(x));
        }
    }
    Ok(chart)
}

/// Outcome of comparing periods across a blow-up.
#[derive(Clone, Debug, Serialize)]
pub struct BlowupPeriodCheck {
    pub incident_edges: Vec<usize>,
    pub negated: usize,
    pub unchanged: usize,
}

/// With matching gauges, `x'_{e} / x'_{e'} = -x_e` for the three edges at
/// the blown-up vertex (`e'` the opposite exceptional edge) and `x'_e = x_e`
/// for all other edges.
pub fn blowup_period_check(graph: &RibbonGraph, vertex: usize, gauge: Option<Gauge>) -> Result<BlowupPeriodCheck> {
    let b = graph.blow_up_detailed(vertex)?;
    let chart = build_chart(graph, gauge)?;
    let chart2 = build_chart(&b.graph, Some(chart.gauge))?;
    let n = chart.nvars();
    let n2 = chart2.nvars();
    debug_assert_eq!(n2, n + 1);
    let embed: Vec<usize> = (0..n).collect();
    let mut negated = 0;
    let mut unchanged = 0;
    for e in 0..graph.num_edges() {
        let old = chart.edge_values[e].remap(n2, &embed);
        match b.incident_edges.iter().position(|&x| x == e) {
            Some(k) => {
                let new = &chart2.edge_values[e] / &chart2.edge_values[b.opposite_exceptional[k]];
                if new != -old {
                    return Err(Error::DecompositionFailed(format!("x_i(e{e}) != -x_e{e}")));
                }
                negated += 1;
            }
            None => {
                if chart2.edge_values[e] != old {
                    return Err(Error::DecompositionFailed(format!("x_e{e} changed")));
                }
                unchanged += 1;
            }
        }
    }
    Ok(BlowupPeriodCheck {
        incident_edges: b.incident_edges,
        negated,
        unchanged,
    })
}

/// Polynomial helper for building expected relations in tests and presets.
pub fn chart_var(chart: &PeriodChart, k: usize) -> RatFunc {
    RatFunc::from_poly(MPoly::var(chart.nvars(), k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::q;
    use crate::ribbon::presets;

    #[test]
    fn tetrahedron_golden() {
        let t = presets::tetrahedron();
        // z0 = 0, z1 = 1, z2 = infinity, z3 = z; face indices 0, 1, 3, 2.
        let chart = build_chart(&t, Some([0, 1, 3])).unwrap();
        let z = chart_var(&chart, 0);
        let one = RatFunc::one(1);
        let x1 = &z / &(&one - &z);
        let x2 = &z - &one;
        let x3 = -(&one / &z);
        let expected = [x1.clone(), x2.clone(), x3.clone(), x1, x2, x3];
        assert_eq!(chart.edge_values, expected);
    }

    #[test]
    fn degenerate_configuration() {
        let t = presets::tetrahedron();
        let pts: Vec<ProjPoint> = (0..4).map(|_| ProjPoint::constant(0, q(1))).collect();
        assert!(matches!(
            cross_ratio(&t, 0, &pts),
            Err(Error::DegenerateConfiguration(_))
        ));
    }

    #[test]
    fn primary_dart_does_not_matter() {
        // Swapping alpha-partners relabels a <-> c and b <-> d.
        let p = presets::prism();
        for e in 0..p.num_edges() {
            let (a, b, c, d) = surrounding_faces(&p, e);
            let (h, k) = p.edges()[e];
            assert_eq!((p.face_of(k), p.face_of(p.sigma_inv(h))), (c, d));
            assert_eq!((p.face_of(h), p.face_of(p.sigma_inv(k))), (a, b));
        }
    }

    #[test]
    fn charts_for_presets() {
        for g in [
            presets::theta(),
            presets::tetrahedron(),
            presets::prism(),
            presets::cube(),
        ] {
            let c = build_chart(&g, None).unwrap();
            assert!(c.adjacent_gauge);
            assert_eq!(c.nvars(), g.genus());
        }
        let theta = build_chart(&presets::theta(), None).unwrap();
        assert!(theta.edge_values.iter().all(|x| *x == RatFunc::constant(0, q(-1))));
    }

    #[test]
    fn blowups() {
        let r = blowup_period_check(&presets::theta(), 0, None).unwrap();
        assert_eq!((r.negated, r.unchanged), (3, 0));
        let r = blowup_period_check(&presets::tetrahedron(), 0, None).unwrap();
        assert_eq!((r.negated, r.unchanged), (3, 3));
    }
}
