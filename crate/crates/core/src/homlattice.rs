//! The edge lattice of a cubic planar graph: intersection form, face
//! relations, the first homology of the double cover, phases and framings.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::snf::{smith_normal_form, IntMatrix};
use crate::ribbon::RibbonGraph;

/// An integer combination of edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct EdgeClass(pub Vec<i64>);

impl EdgeClass {
    pub fn zero(e: usize) -> Self {
        EdgeClass(vec![0; e])
    }

    pub fn unit(e: usize, i: usize) -> Self {
        let mut v = vec![0; e];
        v[i] = 1;
        EdgeClass(v)
    }

    /// Sum of unit vectors with the given signed multiplicities.
    pub fn from_terms(e: usize, terms: &[(usize, i64)]) -> Self {
        let mut v = vec![0; e];
        for &(i, c) in terms {
            v[i] += c;
        }
        EdgeClass(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &EdgeClass) -> EdgeClass {
        EdgeClass(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &EdgeClass) -> EdgeClass {
        EdgeClass(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> EdgeClass {
        EdgeClass(self.0.iter().map(|a| a * k).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }
}

/// `A[e1][e2]` counts, over the darts `h` of `e1`, `+1` when the next dart
/// counterclockwise belongs to `e2` and `-1` when the previous one does.
pub fn intersection_form(graph: &RibbonGraph) -> IntMatrix {
    let e = graph.num_edges();
    let mut a = IntMatrix::zeros(e, e);
    for h in 0..graph.dart_count() {
        let e1 = graph.edge_of(h);
        let e2 = graph.edge_of(graph.sigma()[h]);
        if e1 != e2 {
            a[(e1, e2)] += 1;
            a[(e2, e1)] -= 1;
        }
    }
    a
}

/// One relation per face: the multiplicity of each edge on its boundary.
pub fn face_relations(graph: &RibbonGraph) -> Vec<EdgeClass> {
    (0..graph.num_faces())
        .map(|f| {
            let mut v = vec![0; graph.num_edges()];
            for e in graph.face_edges(f) {
                v[e] += 1;
            }
            EdgeClass(v)
        })
        .collect()
}

pub fn relation_matrix(graph: &RibbonGraph) -> IntMatrix {
    let rows: Vec<Vec<i64>> = face_relations(graph).into_iter().map(|c| c.0).collect();
    IntMatrix::from_rows_with_cols(&rows, graph.num_edges())
}

/// `H_1` of the double cover: edges modulo the saturation of the face
/// relations. The face relations alone always leave a `Z/2` (each edge lies on
/// two faces, so they sum to zero mod 2); the missing relations are the vertex
/// sums, and saturating is the same as adding them.
#[derive(Clone, Debug, Serialize)]
pub struct H1Presentation {
    pub relation_matrix: IntMatrix,
    pub invariant_factors: Vec<i64>,
    /// Invariant factors of the face relations larger than one.
    pub torsion: Vec<i64>,
    pub basis: Vec<EdgeClass>,
    pub induced_form: IntMatrix,
    pub intersection_form: IntMatrix,
    pub genus: usize,
    /// `e x 2g`: multiplying an edge vector by it gives its coordinates in
    /// `basis`.
    coordinates: IntMatrix,
}

impl H1Presentation {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn pair(&self, a: &EdgeClass, b: &EdgeClass) -> i64 {
        self.intersection_form.pair(&a.0, &b.0)
    }

    /// Coordinates of a class in `basis`.
    pub fn project(&self, c: &EdgeClass) -> Vec<i64> {
        self.coordinates.transpose().mul_vec(&c.0)
    }

    /// Whether `c` vanishes in `H_1`.
    pub fn is_trivial(&self, c: &EdgeClass) -> bool {
        self.project(c).iter().all(|&x| x == 0)
    }
}

fn fail(msg: String) -> Error {
    Error::PresentationAssertionFailed(msg)
}

pub fn h1_presentation(graph: &RibbonGraph) -> Result<H1Presentation> {
    let g = graph.genus();
    let e = graph.num_edges();
    let a = intersection_form(graph);
    if !a.is_antisymmetric() {
        return Err(fail("intersection form is not antisymmetric".into()));
    }
    let rels = face_relations(graph);
    for (f, r) in rels.iter().enumerate() {
        if a.mul_vec(&r.0).iter().any(|&x| x != 0) {
            return Err(fail(format!("face {f} is not in the radical of the form")));
        }
    }
    let ra = a.rank();
    if ra != 2 * g {
        return Err(fail(format!("form has rank {ra}, expected {}", 2 * g)));
    }
    let rm = relation_matrix(graph);
    let snf = smith_normal_form(&rm);
    let r = snf.invariant_factors.len();
    if e - r != 2 * g {
        return Err(fail(format!("quotient has free rank {}, expected {}", e - r, 2 * g)));
    }
    let torsion: Vec<i64> = snf.invariant_factors.iter().copied().filter(|&d| d > 1).collect();
    // In the coordinates y = x V the saturated relations are the first r
    // axes, so rows r.. of V^-1 form a basis of the quotient.
    let basis: Vec<EdgeClass> = (r..e).map(|i| EdgeClass(snf.v_inv.row(i).to_vec())).collect();
    let mut coordinates = IntMatrix::zeros(e, e - r);
    for i in 0..e {
        for j in r..e {
            coordinates[(i, j - r)] = snf.v[(i, j)];
        }
    }
    let mut induced = IntMatrix::zeros(basis.len(), basis.len());
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            induced[(i, j)] = a.pair(&x.0, &y.0);
        }
    }
    let det = induced.det();
    if det != 1.into() {
        return Err(fail(format!("induced form has determinant {det}")));
    }
    Ok(H1Presentation {
        relation_matrix: rm,
        invariant_factors: snf.invariant_factors,
        torsion,
        basis,
        induced_form: induced,
        intersection_form: a,
        genus: g,
        coordinates,
    })
}

/// A phase (the kernel classes `nu`), its zero-framing lifts `mu`, a framing
/// matrix and the order-two twist `signs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhaseFraming {
    pub kernel_classes: Vec<EdgeClass>,
    pub lift_classes: Vec<EdgeClass>,
    pub framing: Vec<Vec<i64>>,
    pub signs: Vec<i64>,
}

impl PhaseFraming {
    pub fn genus(&self) -> usize {
        self.kernel_classes.len()
    }

    pub fn with_framing(mut self, framing: Vec<Vec<i64>>) -> Self {
        self.framing = framing;
        self
    }

    /// Effective signs used by the framing twist: `signs_i * (-1)^{M_ii}`.
    pub fn effective_signs(&self) -> Vec<i64> {
        self.signs
            .iter()
            .enumerate()
            .map(|(i, s)| if self.framing[i][i].rem_euclid(2) == 1 { -s } else { *s })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PhaseReport {
    pub genus: usize,
    pub kernel_pairings: Vec<Vec<i64>>,
    pub lift_kernel_pairings: Vec<Vec<i64>>,
    pub framed_lifts: Vec<EdgeClass>,
}

pub fn validate_phase_framing(pres: &H1Presentation, pf: &PhaseFraming) -> Result<PhaseReport> {
    let g = pres.genus;
    let e = pres.relation_matrix.cols();
    let dims = |what: &str, n: usize| Error::DimensionMismatch(format!("{what}: got {n}, expected {g}"));
    if pf.kernel_classes.len() != g {
        return Err(dims("kernel classes", pf.kernel_classes.len()));
    }
    if pf.lift_classes.len() != g {
        return Err(dims("lift classes", pf.lift_classes.len()));
    }
    if pf.framing.len() != g || pf.framing.iter().any(|r| r.len() != g) {
        return Err(dims("framing rows", pf.framing.len()));
    }
    if pf.signs.len() != g {
        return Err(dims("signs", pf.signs.len()));
    }
    if pf.signs.iter().any(|s| s.abs() != 1) {
        return Err(Error::InvalidArgument("signs must be +1 or -1".into()));
    }
    for c in pf.kernel_classes.iter().chain(&pf.lift_classes) {
        if c.len() != e {
            return Err(Error::DimensionMismatch(format!(
                "class of length {}, expected {e}",
                c.len()
            )));
        }
    }
    // Primitivity: the kernel's H_1 coordinates extend to a basis.
    let coords: Vec<Vec<i64>> = pf.kernel_classes.iter().map(|c| pres.project(c)).collect();
    let snf = smith_normal_form(&IntMatrix::from_rows_with_cols(&coords, 2 * g));
    if snf.invariant_factors.len() != g {
        return Err(Error::NotPrimitive("kernel classes are dependent in H1".into()));
    }
    if snf.invariant_factors.iter().any(|&d| d != 1) {
        return Err(Error::NotPrimitive(format!(
            "invariant factors {:?}",
            snf.invariant_factors
        )));
    }
    let table = |xs: &[EdgeClass], ys: &[EdgeClass]| -> Vec<Vec<i64>> {
        xs.iter()
            .map(|x| ys.iter().map(|y| pres.pair(x, y)).collect())
            .collect()
    };
    let nn = table(&pf.kernel_classes, &pf.kernel_classes);
    if nn.iter().flatten().any(|&x| x != 0) {
        return Err(Error::NotIsotropic(format!("kernel pairings {nn:?}")));
    }
    let mm = table(&pf.lift_classes, &pf.lift_classes);
    if mm.iter().flatten().any(|&x| x != 0) {
        return Err(Error::NotIsotropic(format!("lift pairings {mm:?}")));
    }
    let mn = table(&pf.lift_classes, &pf.kernel_classes);
    for (i, row) in mn.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            if x != i64::from(i == j) {
                return Err(Error::NotDual(format!("<mu_{}, nu_{}> = {x}", i + 1, j + 1)));
            }
        }
    }
    let m = IntMatrix::from_rows_with_cols(&pf.framing, g);
    if !m.is_symmetric() {
        return Err(Error::FramingNotSymmetric);
    }
    let framed: Vec<EdgeClass> = (0..g)
        .map(|i| {
            (0..g).fold(pf.lift_classes[i].clone(), |acc, j| {
                acc.add(&pf.kernel_classes[j].scale(pf.framing[i][j]))
            })
        })
        .collect();
    debug_assert!(table(&framed, &framed).iter().flatten().all(|&x| x == 0));
    Ok(PhaseReport {
        genus: g,
        kernel_pairings: nn,
        lift_kernel_pairings: mn,
        framed_lifts: framed,
    })
}

/// Lattice comparison between a graph and its blow-up at a vertex.
#[derive(Clone, Debug, Serialize)]
pub struct BlowupSplit {
    /// `i(e)` for every original edge.
    pub inclusion: Vec<EdgeClass>,
    pub exceptional_edges: Vec<usize>,
    /// Pairings among the exceptional edges.
    pub exceptional_form: Vec<Vec<i64>>,
}

/// `i(e) = e - e'` for the three edges at the vertex (with `e'` the
/// exceptional edge not touching `e`) and `i(e) = e` otherwise. Verifies that
/// `i` preserves the form and that its image is orthogonal to the
/// exceptional edges.
pub fn blowup_lattice_split(graph: &RibbonGraph, vertex: usize) -> Result<BlowupSplit> {
    let b = graph.blow_up_detailed(vertex)?;
    let a = intersection_form(graph);
    let a2 = intersection_form(&b.graph);
    let e2 = b.graph.num_edges();
    let inclusion: Vec<EdgeClass> = (0..graph.num_edges())
        .map(|e| match b.incident_edges.iter().position(|&x| x == e) {
            Some(k) => EdgeClass::from_terms(e2, &[(e, 1), (b.opposite_exceptional[k], -1)]),
            None => EdgeClass::unit(e2, e),
        })
        .collect();
    for (x, ix) in inclusion.iter().enumerate() {
        for (y, iy) in inclusion.iter().enumerate() {
            let got = a2.pair(&ix.0, &iy.0);
            if got != a[(x, y)] {
                return Err(Error::DecompositionFailed(format!(
                    "<i(e{x}), i(e{y})> = {got}, expected {}",
                    a[(x, y)]
                )));
            }
        }
        for &t in &b.exceptional_edges {
            let got = a2.pair(&ix.0, &EdgeClass::unit(e2, t).0);
            if got != 0 {
                return Err(Error::DecompositionFailed(format!("<i(e{x}), e{t}> = {got}")));
            }
        }
    }
    let exceptional_form = b
        .exceptional_edges
        .iter()
        .map(|&s| b.exceptional_edges.iter().map(|&t| a2[(s, t)]).collect())
        .collect();
    Ok(BlowupSplit {
        inclusion,
        exceptional_edges: b.exceptional_edges,
        exceptional_form,
    })
}

pub mod presets {
    //! Phases and zero-framing lifts for the built-in graphs.

    use super::*;

    pub const NAMES: [&str; 3] = ["tetra-p", "prism-M", "cube-std"];

    fn zero(g: usize) -> Vec<Vec<i64>> {
        vec![vec![0; g]; g]
    }

    /// Tetrahedron: kernel `e2`, lift `e1`, framing `(p)`.
    pub fn tetra_p(p: i64) -> PhaseFraming {
        PhaseFraming {
            kernel_classes: vec![EdgeClass::unit(6, 1)],
            lift_classes: vec![EdgeClass::unit(6, 0)],
            framing: vec![vec![p]],
            signs: vec![1],
        }
    }

    /// Prism: kernel `(c, i)`, lifts `(b, h)`.
    pub fn prism_m(m: Vec<Vec<i64>>) -> PhaseFraming {
        PhaseFraming {
            kernel_classes: vec![EdgeClass::unit(9, 2), EdgeClass::unit(9, 8)],
            lift_classes: vec![EdgeClass::unit(9, 1), EdgeClass::unit(9, 7)],
            framing: m,
            signs: vec![1, 1],
        }
    }

    /// Cube: kernel `(e9, e3, e6)`, lifts `(e1 + e3, e2, e7)`, with the
    /// order-two twist on the first coordinate.
    pub fn cube_std(m: Vec<Vec<i64>>) -> PhaseFraming {
        PhaseFraming {
            kernel_classes: vec![EdgeClass::unit(12, 8), EdgeClass::unit(12, 2), EdgeClass::unit(12, 5)],
            lift_classes: vec![
                EdgeClass::from_terms(12, &[(0, 1), (2, 1)]),
                EdgeClass::unit(12, 1),
                EdgeClass::unit(12, 6),
            ],
            framing: m,
            signs: vec![-1, 1, 1],
        }
    }

    /// Preset by name with zero framing.
    pub fn by_name(name: &str) -> Result<PhaseFraming> {
        match name {
            "tetra-p" => Ok(tetra_p(0)),
            "prism-M" | "prism-m" => Ok(prism_m(zero(2))),
            "cube-std" => Ok(cube_std(zero(3))),
            _ => Err(Error::UnknownPreset(name.to_string())),
        }
    }

    /// The graph preset each phase preset belongs to.
    pub fn graph_of(name: &str) -> Option<&'static str> {
        match name {
            "tetra-p" => Some("tetrahedron"),
            "prism-M" | "prism-m" => Some("prism"),
            "cube-std" => Some("cube"),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ribbon::presets as graphs;

    #[test]
    fn tetrahedron_pairings() {
        let t = graphs::tetrahedron();
        let a = intersection_form(&t);
        // Opposite edges share a class: e1 = {0,3}, e2 = {1,4}, e3 = {2,5}.
        for (x, y) in [(0, 1), (1, 2), (2, 0)] {
            assert_eq!(a[(x, y)], 1, "<{x},{y}>");
        }
        let p = h1_presentation(&t).unwrap();
        assert_eq!(p.rank(), 2);
        assert_eq!(p.induced_form.det(), 1.into());
        assert_eq!(p.invariant_factors, vec![1, 1, 1, 2]);
        assert_eq!(p.project(&EdgeClass::unit(6, 0)), p.project(&EdgeClass::unit(6, 3)));
        assert!(p.is_trivial(&EdgeClass::from_terms(6, &[(0, 1), (2, 1), (4, 1)])));
    }

    #[test]
    fn theta_form_vanishes() {
        let t = graphs::theta();
        assert!(intersection_form(&t).is_zero());
        let p = h1_presentation(&t).unwrap();
        assert_eq!(p.rank(), 0);
        assert_eq!(p.torsion, vec![2]);
    }

    #[test]
    fn phase_presets_validate() {
        let tp = h1_presentation(&graphs::tetrahedron()).unwrap();
        for p in -3..=3 {
            validate_phase_framing(&tp, &presets::tetra_p(p)).unwrap();
        }
        let pp = h1_presentation(&graphs::prism()).unwrap();
        validate_phase_framing(&pp, &presets::prism_m(vec![vec![1, -2], vec![-2, 0]])).unwrap();
        assert_eq!(
            validate_phase_framing(&pp, &presets::prism_m(vec![vec![0, 1], vec![2, 0]])).unwrap_err(),
            Error::FramingNotSymmetric
        );
        let cp = h1_presentation(&graphs::cube()).unwrap();
        let r = validate_phase_framing(&cp, &presets::cube_std(vec![vec![0; 3]; 3])).unwrap();
        assert_eq!(
            r.lift_kernel_pairings,
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]
        );
    }

    #[test]
    fn non_primitive_kernel() {
        let tp = h1_presentation(&graphs::tetrahedron()).unwrap();
        let mut pf = presets::tetra_p(0);
        pf.kernel_classes = vec![EdgeClass::from_terms(6, &[(1, 2)])];
        assert!(matches!(validate_phase_framing(&tp, &pf), Err(Error::NotPrimitive(_))));
    }

    #[test]
    fn blowup_split() {
        blowup_lattice_split(&graphs::theta(), 0).unwrap();
        let s = blowup_lattice_split(&graphs::tetrahedron(), 0).unwrap();
        let f = &s.exceptional_form;
        assert!(f[0][1].abs() == 1 && f[1][2] == f[0][1] && f[2][0] == f[0][1]);
    }
}
