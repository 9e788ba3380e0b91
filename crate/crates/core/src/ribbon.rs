//! Cubic planar graphs as combinatorial maps.
//!
//! A graph is a set of darts (half-edges) with two permutations: `alpha`
//! pairs the two darts of an edge and `sigma` rotates counterclockwise around
//! a vertex. Faces are the cycles of `phi = sigma . alpha`; the face of a dart
//! `h` is the one to the right of `h` when walking away from its vertex.
//!
//! Indexing is deterministic: edges are ordered by their smaller dart,
//! vertices and faces by the smallest dart of their cycle.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RibbonGraph {
    alpha: Vec<usize>,
    sigma: Vec<usize>,
    sigma_inv: Vec<usize>,
    face_labels: BTreeMap<usize, String>,
    vertices: Vec<Vec<usize>>,
    vertex_of: Vec<usize>,
    faces: Vec<Vec<usize>>,
    face_of: Vec<usize>,
    edges: Vec<(usize, usize)>,
    edge_of: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct GraphStats {
    pub v: usize,
    pub e: usize,
    pub f: usize,
    pub g: usize,
}

/// An abstract multigraph; loops and parallel edges are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(a, b) in &edges {
            if a >= vertex_count || b >= vertex_count {
                return Err(Error::VertexOutOfRange(a.max(b)));
            }
        }
        Ok(Multigraph { vertex_count, edges })
    }

    /// Sorted list of distinct non-loop neighbor pairs.
    pub fn simple_edges(&self) -> BTreeSet<(usize, usize)> {
        self.edges
            .iter()
            .filter(|(a, b)| a != b)
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect()
    }

    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(|(a, b)| a == b)
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertex_count];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d.sort_unstable();
        d
    }
}

fn check_permutation(p: &[usize], name: &str) -> Result<()> {
    let n = p.len();
    let mut seen = vec![false; n];
    for (i, &x) in p.iter().enumerate() {
        if x >= n {
            return Err(Error::MalformedPermutation(format!("{name}[{i}] = {x} out of range")));
        }
        if seen[x] {
            return Err(Error::MalformedPermutation(format!("{name} maps two darts to {x}")));
        }
        seen[x] = true;
    }
    Ok(())
}

fn cycles(p: &[usize]) -> (Vec<Vec<usize>>, Vec<usize>) {
    let n = p.len();
    let mut owner = vec![usize::MAX; n];
    let mut out = Vec::new();
    for start in 0..n {
        if owner[start] != usize::MAX {
            continue;
        }
        let mut cyc = vec![start];
        owner[start] = out.len();
        let mut h = p[start];
        while h != start {
            owner[h] = out.len();
            cyc.push(h);
            h = p[h];
        }
        out.push(cyc);
    }
    (out, owner)
}

impl RibbonGraph {
    /// Builds and validates a cubic planar graph.
    pub fn new(alpha: Vec<usize>, sigma: Vec<usize>) -> Result<Self> {
        Self::build(alpha, sigma, true)
    }

    /// Like [`new`](Self::new) but accepts vertices of any degree.
    pub fn new_non_cubic(alpha: Vec<usize>, sigma: Vec<usize>) -> Result<Self> {
        Self::build(alpha, sigma, false)
    }

    fn build(alpha: Vec<usize>, sigma: Vec<usize>, cubic: bool) -> Result<Self> {
        let n = alpha.len();
        if n == 0 || !n.is_multiple_of(2) {
            return Err(Error::MalformedPermutation(format!(
                "dart count {n} must be positive and even"
            )));
        }
        if sigma.len() != n {
            return Err(Error::MalformedPermutation(format!(
                "alpha has {n} entries but sigma has {}",
                sigma.len()
            )));
        }
        check_permutation(&alpha, "alpha")?;
        check_permutation(&sigma, "sigma")?;
        for (h, &a) in alpha.iter().enumerate() {
            if a == h {
                return Err(Error::MalformedPermutation(format!("alpha fixes dart {h}")));
            }
            if alpha[a] != h {
                return Err(Error::MalformedPermutation(format!(
                    "alpha is not an involution at dart {h}"
                )));
            }
        }
        let (vertices, vertex_of) = cycles(&sigma);
        if cubic {
            if let Some((i, c)) = vertices.iter().enumerate().find(|(_, c)| c.len() != 3) {
                return Err(Error::NotCubic {
                    vertex: i,
                    degree: c.len(),
                });
            }
        }
        let phi: Vec<usize> = (0..n).map(|h| sigma[alpha[h]]).collect();
        let (faces, face_of) = cycles(&phi);
        let mut edges = Vec::with_capacity(n / 2);
        let mut edge_of = vec![0; n];
        for h in 0..n {
            if h < alpha[h] {
                edge_of[h] = edges.len();
                edge_of[alpha[h]] = edges.len();
                edges.push((h, alpha[h]));
            }
        }
        let mut sigma_inv = vec![0; n];
        for (h, &s) in sigma.iter().enumerate() {
            sigma_inv[s] = h;
        }
        let g = RibbonGraph {
            alpha,
            sigma,
            sigma_inv,
            face_labels: BTreeMap::new(),
            vertices,
            vertex_of,
            faces,
            face_of,
            edges,
            edge_of,
        };
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        let euler = g.vertices.len() as i64 - g.edges.len() as i64 + g.faces.len() as i64;
        if euler != 2 {
            return Err(Error::NotPlanar { euler });
        }
        Ok(g)
    }

    fn is_connected(&self) -> bool {
        let n = self.alpha.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(h) = stack.pop() {
            for k in [self.alpha[h], self.sigma[h]] {
                if !seen[k] {
                    seen[k] = true;
                    count += 1;
                    stack.push(k);
                }
            }
        }
        count == n
    }

    /// Straight-line embedding: edge `k` gets darts `2k` (at its first
    /// endpoint) and `2k + 1`; rotations are read off counterclockwise from
    /// the coordinates.
    pub fn from_straight_line(points: &[(i64, i64)], edges: &[(usize, usize)]) -> Result<Self> {
        let n = 2 * edges.len();
        let mut alpha = vec![0; n];
        let mut at: Vec<Vec<(f64, usize)>> = vec![Vec::new(); points.len()];
        for (k, &(a, b)) in edges.iter().enumerate() {
            if a >= points.len() || b >= points.len() {
                return Err(Error::VertexOutOfRange(a.max(b)));
            }
            alpha[2 * k] = 2 * k + 1;
            alpha[2 * k + 1] = 2 * k;
            let (pa, pb) = (points[a], points[b]);
            let ang = |from: (i64, i64), to: (i64, i64)| ((to.1 - from.1) as f64).atan2((to.0 - from.0) as f64);
            at[a].push((ang(pa, pb), 2 * k));
            at[b].push((ang(pb, pa), 2 * k + 1));
        }
        let mut sigma = vec![0; n];
        for darts in &mut at {
            darts.sort_by(|x, y| x.0.total_cmp(&y.0));
            for i in 0..darts.len() {
                sigma[darts[i].1] = darts[(i + 1) % darts.len()].1;
            }
        }
        Self::new(alpha, sigma)
    }

    pub fn with_face_labels(mut self, labels: BTreeMap<usize, String>) -> Result<Self> {
        if let Some(&f) = labels.keys().find(|&&f| f >= self.faces.len()) {
            return Err(Error::FaceOutOfRange(f));
        }
        self.face_labels = labels;
        Ok(self)
    }

    pub fn dart_count(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[usize] {
        &self.alpha
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn sigma_inv(&self, h: usize) -> usize {
        self.sigma_inv[h]
    }

    pub fn face_labels(&self) -> &BTreeMap<usize, String> {
        &self.face_labels
    }

    /// Label of a face, defaulting to `F<index>`.
    pub fn face_name(&self, f: usize) -> String {
        self.face_labels.get(&f).cloned().unwrap_or_else(|| format!("F{f}"))
    }

    pub fn stats(&self) -> GraphStats {
        let f = self.faces.len();
        GraphStats {
            v: self.vertices.len(),
            e: self.edges.len(),
            f,
            g: f.saturating_sub(3),
        }
    }

    pub fn genus(&self) -> usize {
        self.stats().g
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn vertices(&self) -> &[Vec<usize>] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    /// Edges as dart pairs `(h, alpha h)` with `h < alpha h`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertex_of(&self, h: usize) -> usize {
        self.vertex_of[h]
    }

    pub fn face_of(&self, h: usize) -> usize {
        self.face_of[h]
    }

    pub fn edge_of(&self, h: usize) -> usize {
        self.edge_of[h]
    }

    pub fn edge_endpoints(&self, e: usize) -> (usize, usize) {
        let (h, k) = self.edges[e];
        (self.vertex_of[h], self.vertex_of[k])
    }

    /// The two faces along edge `e`: right of its first dart, then right of
    /// its second.
    pub fn edge_faces(&self, e: usize) -> (usize, usize) {
        let (h, k) = self.edges[e];
        (self.face_of[h], self.face_of[k])
    }

    /// Edges on the boundary of face `f`, with multiplicity.
    pub fn face_edges(&self, f: usize) -> Vec<usize> {
        self.faces[f].iter().map(|&h| self.edge_of[h]).collect()
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let (a, b) = self.edge_endpoints(e);
        a == b
    }

    /// No loops and no parallel edges.
    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        for e in 0..self.edges.len() {
            let (a, b) = self.edge_endpoints(e);
            if a == b || !seen.insert((a.min(b), a.max(b))) {
                return false;
            }
        }
        true
    }

    /// Why the graph fails to be simple, if it does.
    pub fn simplicity_defect(&self) -> Option<String> {
        let mut seen = BTreeMap::new();
        for e in 0..self.edges.len() {
            let (a, b) = self.edge_endpoints(e);
            if a == b {
                return Some(format!("edge {e} is a loop"));
            }
            if let Some(prev) = seen.insert((a.min(b), a.max(b)), e) {
                return Some(format!("edges {prev} and {e} are parallel"));
            }
        }
        None
    }

    /// Face adjacency: one dual vertex per face, one dual edge per edge.
    pub fn dual(&self) -> Multigraph {
        let edges = (0..self.edges.len()).map(|e| self.edge_faces(e)).collect();
        Multigraph {
            vertex_count: self.faces.len(),
            edges,
        }
    }

    /// Replaces `vertex` by a small triangle. Original darts keep their
    /// numbers, so original edges and faces keep their indices; the three new
    /// edges are appended and the new triangle is the last face.
    pub fn blow_up(&self, vertex: usize) -> Result<RibbonGraph> {
        Ok(self.blow_up_detailed(vertex)?.graph)
    }

    pub fn blow_up_detailed(&self, vertex: usize) -> Result<BlowUp> {
        let cyc = self.vertices.get(vertex).ok_or(Error::VertexOutOfRange(vertex))?;
        if cyc.len() != 3 {
            return Err(Error::NotCubic {
                vertex,
                degree: cyc.len(),
            });
        }
        let n = self.dart_count();
        let h = [cyc[0], cyc[1], cyc[2]];
        let mut alpha = self.alpha.clone();
        let mut sigma = self.sigma.clone();
        alpha.resize(n + 6, 0);
        sigma.resize(n + 6, 0);
        // At the new vertex k: h_k, then tp(k) towards vertex k+1, then tm(k)
        // towards vertex k-1.
        let tp = |k: usize| n + 2 * (k % 3);
        let tm = |k: usize| n + 2 * (k % 3) + 1;
        for k in 0..3 {
            sigma[h[k]] = tp(k);
            sigma[tp(k)] = tm(k);
            sigma[tm(k)] = h[k];
            alpha[tp(k)] = tm(k + 1);
            alpha[tm(k + 1)] = tp(k);
        }
        let mut graph = RibbonGraph::new(alpha, sigma)?;
        graph.face_labels = self.face_labels.clone();
        let original_edges: Vec<usize> = h.iter().map(|&d| self.edge_of[d]).collect();
        // The exceptional edge opposite h_k joins the new vertices k+1, k+2.
        let opposite: Vec<usize> = (0..3).map(|k| graph.edge_of[tp(k + 1)]).collect();
        let triangle_face = graph.face_of[tm(0)];
        Ok(BlowUp {
            graph,
            incident_edges: original_edges,
            opposite_exceptional: opposite,
            exceptional_edges: (0..3).map(|i| self.num_edges() + i).collect(),
            triangle_face,
        })
    }

    /// The flip move on a non-loop edge: with `h` at `u`, `p = sigma h`,
    /// `q = sigma^2 h` and `h' = alpha h` at `w` with `r = sigma h'`,
    /// `s = sigma^2 h'`, the new rotations are `(h q r)` and `(h' s p)`.
    pub fn edge_move(&self, edge: usize) -> Result<RibbonGraph> {
        if edge >= self.num_edges() {
            return Err(Error::EdgeOutOfRange(edge));
        }
        if self.is_loop(edge) {
            return Err(Error::LoopEdge(edge));
        }
        let (h, h2) = self.edges[edge];
        let s1 = &self.sigma;
        if s1[s1[s1[h]]] != h || s1[s1[s1[h2]]] != h2 {
            return Err(Error::NotCubic {
                vertex: self.vertex_of[h],
                degree: 0,
            });
        }
        let (p, q) = (s1[h], s1[s1[h]]);
        let (r, s) = (s1[h2], s1[s1[h2]]);
        let mut sigma = self.sigma.clone();
        sigma[h] = q;
        sigma[q] = r;
        sigma[r] = h;
        sigma[h2] = s;
        sigma[s] = p;
        sigma[p] = h2;
        let mut g = RibbonGraph::new(self.alpha.clone(), sigma)?;
        g.face_labels = self.face_labels.clone();
        Ok(g)
    }

    /// Canonical code under orientation-preserving relabeling: the
    /// lexicographically least `(alpha, sigma)` over breadth-first
    /// relabelings from every starting dart.
    pub fn canonical_code(&self) -> Vec<usize> {
        let n = self.dart_count();
        let mut best: Option<Vec<usize>> = None;
        for start in 0..n {
            let mut label = vec![usize::MAX; n];
            let mut order = Vec::with_capacity(n);
            let mut queue = VecDeque::from([start]);
            label[start] = 0;
            while let Some(h) = queue.pop_front() {
                order.push(h);
                for k in [self.alpha[h], self.sigma[h]] {
                    if label[k] == usize::MAX {
                        label[k] = order.len() + queue.len();
                        queue.push_back(k);
                    }
                }
            }
            let mut code = Vec::with_capacity(2 * n);
            for &h in &order {
                code.push(label[self.alpha[h]]);
            }
            for &h in &order {
                code.push(label[self.sigma[h]]);
            }
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        }
        best.unwrap_or_default()
    }

    pub fn is_isomorphic(&self, other: &RibbonGraph) -> bool {
        self.dart_count() == other.dart_count() && self.canonical_code() == other.canonical_code()
    }
}

/// A blow-up together with the bookkeeping needed to compare lattices.
#[derive(Clone, Debug)]
pub struct BlowUp {
    pub graph: RibbonGraph,
    /// The three original edges at the blown-up vertex, in rotation order.
    pub incident_edges: Vec<usize>,
    /// For each incident edge, the exceptional edge not touching it.
    pub opposite_exceptional: Vec<usize>,
    pub exceptional_edges: Vec<usize>,
    pub triangle_face: usize,
}

pub mod presets {
    //! Built-in graphs with hand-checked embeddings.

    use super::*;

    pub const NAMES: [&str; 4] = ["theta", "tetrahedron", "prism", "cube"];

    pub fn by_name(name: &str) -> Result<RibbonGraph> {
        match name {
            "theta" => Ok(theta()),
            "tetrahedron" | "tetra" => Ok(tetrahedron()),
            "prism" => Ok(prism()),
            "cube" => Ok(cube()),
            _ => Err(Error::UnknownPreset(name.to_string())),
        }
    }

    fn labels(names: &[&str]) -> BTreeMap<usize, String> {
        names.iter().enumerate().map(|(i, s)| (i, s.to_string())).collect()
    }

    /// Two vertices joined by three edges.
    pub fn theta() -> RibbonGraph {
        RibbonGraph::new(vec![1, 0, 3, 2, 5, 4], vec![2, 5, 4, 1, 0, 3]).expect("theta is valid")
    }

    /// Edges `[AB, BD, DA, CD, AC, BC]` with `C` inside triangle `ABD`;
    /// opposite edges `0,3`, `1,4` and `2,5` share a homology class.
    pub fn tetrahedron() -> RibbonGraph {
        let pts = [(-4, -3), (4, -3), (0, 0), (0, 4)];
        let edges = [(0, 1), (1, 3), (3, 0), (2, 3), (0, 2), (1, 2)];
        RibbonGraph::from_straight_line(&pts, &edges)
            .and_then(|g| g.with_face_labels(labels(&["z0", "z1", "z3", "z2"])))
            .expect("tetrahedron is valid")
    }

    /// Edges `a..i` in index order: inner triangle `a, b, c`, spokes and
    /// quadrilateral sides `d, e, f`, outer triangle `g, h, i`.
    pub fn prism() -> RibbonGraph {
        let pts = [(-9, -10), (9, -10), (4, -6), (-4, -6), (0, 0), (0, 6)];
        let edges = [(2, 3), (3, 4), (2, 4), (4, 5), (0, 3), (1, 2), (0, 1), (1, 5), (0, 5)];
        RibbonGraph::from_straight_line(&pts, &edges)
            .and_then(|g| g.with_face_labels(labels(&["x", "z1", "z2", "z3", "y"])))
            .expect("prism is valid")
    }

    /// Edges `e1..e12` in index order: inner square, outer square, spokes.
    pub fn cube() -> RibbonGraph {
        let pts = [(1, -1), (-1, -1), (-1, 1), (1, 1), (2, -2), (-2, -2), (-2, 2), (2, 2)];
        let edges = [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 0),
            (4, 5),
            (5, 6),
            (6, 7),
            (7, 4),
            (4, 0),
            (5, 1),
            (6, 2),
            (7, 3),
        ];
        RibbonGraph::from_straight_line(&pts, &edges)
            .and_then(|g| g.with_face_labels(labels(&["u", "w", "x", "y", "z", "v"])))
            .expect("cube is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::presets::*;
    use super::*;

    #[test]
    fn stats_of_presets() {
        assert_eq!(tetrahedron().stats(), GraphStats { v: 4, e: 6, f: 4, g: 1 });
        assert_eq!(theta().stats(), GraphStats { v: 2, e: 3, f: 3, g: 0 });
        assert_eq!(prism().stats(), GraphStats { v: 6, e: 9, f: 5, g: 2 });
        assert_eq!(
            cube().stats(),
            GraphStats {
                v: 8,
                e: 12,
                f: 6,
                g: 3
            }
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            RibbonGraph::new(vec![0, 1], vec![0, 1]),
            Err(Error::MalformedPermutation(_))
        ));
        assert!(matches!(
            RibbonGraph::new(vec![1, 0, 3, 2], vec![1, 0, 3, 2]),
            Err(Error::NotCubic { .. })
        ));
        // Theta with a twisted rotation at one vertex embeds on a torus.
        assert!(matches!(
            RibbonGraph::new(vec![1, 0, 3, 2, 5, 4], vec![2, 3, 4, 5, 0, 1]),
            Err(Error::NotPlanar { euler: 0 })
        ));
    }

    #[test]
    fn face_labels_match_edges() {
        let t = tetrahedron();
        let sets: Vec<BTreeSet<usize>> = (0..4).map(|f| t.face_edges(f).into_iter().collect()).collect();
        assert_eq!(sets[0], BTreeSet::from([0, 1, 2]));
        assert_eq!(sets[1], BTreeSet::from([0, 4, 5]));
        assert_eq!(sets[2], BTreeSet::from([1, 3, 5]));
        assert_eq!(sets[3], BTreeSet::from([2, 3, 4]));
        let c = cube();
        let u: BTreeSet<usize> = c.face_edges(0).into_iter().collect();
        let v: BTreeSet<usize> = c.face_edges(5).into_iter().collect();
        assert_eq!(u, BTreeSet::from([0, 1, 2, 3]));
        assert_eq!(v, BTreeSet::from([4, 5, 6, 7]));
    }

    #[test]
    fn blow_up_bookkeeping() {
        let b = theta().blow_up_detailed(0).unwrap();
        assert!(b.graph.is_isomorphic(&tetrahedron()));
        assert_eq!(b.triangle_face, 3);
        assert_eq!(b.exceptional_edges, vec![3, 4, 5]);
        for (k, &e) in b.incident_edges.iter().enumerate() {
            let (x, y) = b.graph.edge_endpoints(b.opposite_exceptional[k]);
            let (p, q) = b.graph.edge_endpoints(e);
            assert!(![x, y].contains(&p) && ![x, y].contains(&q));
        }
        let p = tetrahedron().blow_up(2).unwrap();
        assert!(p.is_isomorphic(&prism()));
    }

    #[test]
    fn edge_move_involution() {
        // A flip on K4 creates two double edges: faces of sizes 2, 2, 4, 4.
        let t = tetrahedron();
        let first = t.edge_move(0).unwrap();
        let mut sizes: Vec<usize> = first.faces().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 2, 4, 4]);
        assert!(!first.is_simple());
        for e in 0..6 {
            let m = t.edge_move(e).unwrap();
            assert_eq!(m.stats(), t.stats());
            assert!(m.is_isomorphic(&first));
            assert!(m.edge_move(e).unwrap().is_isomorphic(&t));
        }
        let p = prism();
        for e in 0..9 {
            let twice = p.edge_move(e).unwrap().edge_move(e).unwrap();
            assert!(twice.is_isomorphic(&p));
        }
        assert!(matches!(theta().edge_move(7), Err(Error::EdgeOutOfRange(7))));
    }

    #[test]
    fn dual_of_prism() {
        let d = prism().dual();
        assert_eq!(d.vertex_count, 5);
        assert_eq!(d.simple_edges().len(), 9);
        assert!(!d.simple_edges().contains(&(0, 4)));
    }
}
