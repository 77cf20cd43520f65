//! The graph-to-polytope construction `Λ(G)`.
//!
//! For a graph `G` on `n >= 3` nodes, identify the nodes with the vertices of
//! an `(n-1)`-simplex, cut off every simplex vertex (giving `Γ`), then cut off
//! every vertex of `Γ` that lies on an edge of `G`. The result is a simple
//! `(n-1)`-polytope whose isomorphism type determines `G`.
//!
//! Vertices of `Γ` are ordered pairs `(i, j)`, `i != j`: the vertex near
//! simplex vertex `i` on the simplex edge towards `j`. The black edges are
//! `(i, j) – (j, i)` for `{i, j} ∈ E(G)`; both endpoints get cut.
//!
//! Facets, in order: the truncated simplex facets `F'_k` (`x_k >= 0`), the
//! first-round cuts `C_i` (`x_i <= 1 - ε`), then one second-round cut per
//! cut vertex `(i, j)` in lexicographic order.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::geometry::PointSet;
use crate::incidence::IncidenceMatrix;
use crate::rational::{dot, int, rat, Rational};

/// A simple undirected graph with edges stored as sorted `(u, v)`, `u < v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InputGraph {
    n_nodes: usize,
    edges: Vec<(usize, usize)>,
}

impl InputGraph {
    pub fn new(n_nodes: usize, edges: Vec<(usize, usize)>) -> Result<Self, Error> {
        let mut norm = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u >= n_nodes || v >= n_nodes {
                return Err(Error::InvalidGraph("edge endpoint out of range"));
            }
            if u == v {
                return Err(Error::InvalidGraph("self-loop"));
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        if norm.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph("duplicate edge"));
        }
        Ok(Self {
            n_nodes,
            edges: norm,
        })
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// The graph with node `v` renamed `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> InputGraph {
        let edges = self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        Self::new(self.n_nodes, edges).expect("relabeling preserves validity")
    }
}

/// Truncation depths: `ε` for the first round of cuts, `δ` for the second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaConfig {
    eps: Rational,
    delta: Rational,
}

impl Default for LambdaConfig {
    fn default() -> Self {
        Self {
            eps: rat(1, 4),
            delta: rat(1, 64),
        }
    }
}

impl LambdaConfig {
    /// Requires `0 < ε <= 1/4` and `0 < δ <= ε²/4`.
    pub fn new(eps: Rational, delta: Rational) -> Result<Self, Error> {
        if eps <= Rational::zero() || eps > rat(1, 4) {
            return Err(Error::InvalidConfig("eps must lie in (0, 1/4]"));
        }
        if delta <= Rational::zero() || delta > &eps * &eps / int(4) {
            return Err(Error::InvalidConfig("delta must lie in (0, eps^2/4]"));
        }
        Ok(Self { eps, delta })
    }

    pub fn eps(&self) -> &Rational {
        &self.eps
    }

    pub fn delta(&self) -> &Rational {
        &self.delta
    }
}

/// A vertex of `Λ(G)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LambdaVertex {
    /// An uncut vertex `(i, j)` of `Γ`.
    Kept(usize, usize),
    /// The vertex created on the edge from cut vertex `at` towards its
    /// `Γ`-neighbor `toward`.
    Cut {
        at: (usize, usize),
        toward: (usize, usize),
    },
}

/// A facet of `Λ(G)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LambdaFacet {
    /// `x_k >= 0`.
    Simplex(usize),
    /// `x_i <= 1 - ε`.
    Blue(usize),
    /// The cut at `Γ`-vertex `(i, j)`.
    Green(usize, usize),
}

/// Linear inequalities `a·x <= b` and equations `a·x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HDescription {
    pub dim: usize,
    pub inequalities: Vec<(Vec<Rational>, Rational)>,
    pub equalities: Vec<(Vec<Rational>, Rational)>,
}

impl HDescription {
    /// For each inequality, the sorted indices of the points where it is
    /// tight. `None` if some point violates an inequality or an equation.
    pub fn tight_pattern(&self, points: &PointSet) -> Option<Vec<Vec<usize>>> {
        let feasible = points.points().iter().all(|p| {
            self.equalities.iter().all(|(a, b)| &dot(a, p) == b)
                && self.inequalities.iter().all(|(a, b)| &dot(a, p) <= b)
        });
        feasible.then(|| {
            self.inequalities
                .iter()
                .map(|(a, b)| {
                    (0..points.len())
                        .filter(|&i| &dot(a, points.point(i)) == b)
                        .collect()
                })
                .collect()
        })
    }
}

fn check_size(g: &InputGraph) -> Result<usize, Error> {
    match g.n_nodes() {
        n if n >= 3 => Ok(n),
        n => Err(Error::GraphTooSmall(n)),
    }
}

/// Cut vertices of `Γ`: both orientations of every edge, lexicographic.
fn cut_vertices(g: &InputGraph) -> Vec<(usize, usize)> {
    let mut cut: Vec<(usize, usize)> =
        g.edges().iter().flat_map(|&(u, v)| [(u, v), (v, u)]).collect();
    cut.sort_unstable();
    cut
}

/// `Γ`-neighbors of `(i, j)`: `(i, k)` for `k != i, j` and `(j, i)`,
/// lexicographic.
fn gamma_neighbors(n: usize, (i, j): (usize, usize)) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = (0..n).filter(|&k| k != i && k != j).map(|k| (i, k)).collect();
    out.push((j, i));
    out.sort_unstable();
    out
}

fn gamma_on_facet((i, j): (usize, usize), facet: LambdaFacet) -> bool {
    match facet {
        LambdaFacet::Simplex(k) => k != i && k != j,
        LambdaFacet::Blue(l) => l == i,
        LambdaFacet::Green(..) => false,
    }
}

/// Vertices and facets of `Λ(G)` in output order.
pub fn lambda_labels(g: &InputGraph) -> Result<(Vec<LambdaVertex>, Vec<LambdaFacet>), Error> {
    let n = check_size(g)?;
    let cut = cut_vertices(g);
    let mut vertices = Vec::new();
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            if !g.has_edge(i, j) {
                vertices.push(LambdaVertex::Kept(i, j));
            }
        }
    }
    for &at in &cut {
        for toward in gamma_neighbors(n, at) {
            vertices.push(LambdaVertex::Cut { at, toward });
        }
    }
    let facets = (0..n)
        .map(LambdaFacet::Simplex)
        .chain((0..n).map(LambdaFacet::Blue))
        .chain(cut.iter().map(|&(i, j)| LambdaFacet::Green(i, j)))
        .collect();
    Ok((vertices, facets))
}

fn on_facet(v: LambdaVertex, f: LambdaFacet) -> bool {
    match (v, f) {
        (LambdaVertex::Kept(i, j), f) => gamma_on_facet((i, j), f),
        (LambdaVertex::Cut { at, .. }, LambdaFacet::Green(i, j)) => at == (i, j),
        (LambdaVertex::Cut { at, toward }, f) => gamma_on_facet(at, f) && gamma_on_facet(toward, f),
    }
}

/// Vertex-facet incidences of `Λ(G)`.
pub fn lambda_incidence(g: &InputGraph) -> Result<IncidenceMatrix, Error> {
    let (vertices, facets) = lambda_labels(g)?;
    let rows = facets
        .iter()
        .map(|&f| (0..vertices.len()).filter(|&v| on_facet(vertices[v], f)).collect())
        .collect();
    Ok(IncidenceMatrix::new(vertices.len(), rows)?)
}

/// Vertex-facet incidences of the stacked simplicial polytope `Λ*(G)`.
pub fn stacked_dual(g: &InputGraph) -> Result<IncidenceMatrix, Error> {
    Ok(lambda_incidence(g)?.dual())
}

/// Exact coordinates (in `R^n`, on the hyperplane `Σ x = 1`) and an
/// H-description of `Λ(G)`.
///
/// `Γ`-vertex `(i, j)` sits at `(1-ε) e_i + ε e_j`. The cut at `Γ`-vertex
/// `c` is `c·x <= c·c - δ`; its new vertices lie on the edges from `c`
/// towards its neighbors `u` at parameter `δ / (c·c - c·u)`.
///
/// The tight-inequality pattern is cross-checked against
/// [`lambda_incidence`] and every non-tight inequality must hold strictly.
pub fn lambda_coordinates(
    g: &InputGraph,
    cfg: &LambdaConfig,
) -> Result<(PointSet, HDescription), Error> {
    let n = check_size(g)?;
    let (vertices, facets) = lambda_labels(g)?;
    let eps = cfg.eps();
    let one_minus = Rational::one() - eps;
    let gamma = |(i, j): (usize, usize)| -> Vec<Rational> {
        let mut x = vec![Rational::zero(); n];
        x[i] = one_minus.clone();
        x[j] = eps.clone();
        x
    };

    let points: Vec<Vec<Rational>> = vertices
        .iter()
        .map(|&v| match v {
            LambdaVertex::Kept(i, j) => gamma((i, j)),
            LambdaVertex::Cut { at, toward } => {
                let c = gamma(at);
                let u = gamma(toward);
                let drop = dot(&c, &c) - dot(&c, &u);
                let t = cfg.delta() / drop;
                c.iter().zip(&u).map(|(a, b)| a + &t * (b - a)).collect()
            }
        })
        .collect();

    let unit = |k: usize, s: i64| -> Vec<Rational> {
        (0..n).map(|i| if i == k { int(s) } else { Rational::zero() }).collect()
    };
    let inequalities = facets
        .iter()
        .map(|&f| match f {
            LambdaFacet::Simplex(k) => (unit(k, -1), Rational::zero()),
            LambdaFacet::Blue(i) => (unit(i, 1), one_minus.clone()),
            LambdaFacet::Green(i, j) => {
                let c = gamma((i, j));
                let rhs = dot(&c, &c) - cfg.delta();
                (c, rhs)
            }
        })
        .collect();
    let h = HDescription {
        dim: n,
        inequalities,
        equalities: vec![(vec![Rational::one(); n], Rational::one())],
    };
    let points = PointSet::new(n, points)
        .map_err(|_| Error::CoordinateCheck("two vertices coincide"))?;

    let pattern = h
        .tight_pattern(&points)
        .ok_or(Error::CoordinateCheck("a vertex violates the H-description"))?;
    let expected = lambda_incidence(g)?;
    if !pattern.iter().map(Vec::as_slice).eq(expected.facets()) {
        return Err(Error::CoordinateCheck("tight pattern differs from the incidences"));
    }
    Ok((points, h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_simple_polytope, polytope_graph};
    use crate::lattice::FaceLattice;

    fn graph(n: usize, edges: &[(usize, usize)]) -> InputGraph {
        InputGraph::new(n, edges.to_vec()).unwrap()
    }

    #[test]
    fn polygons_for_three_nodes() {
        // (ℓ - 6) / 2 edges for an ℓ-gon.
        for (edges, ell) in [(vec![], 6), (vec![(0, 1)], 8), (vec![(0, 1), (1, 2)], 10), (vec![(0, 1), (0, 2), (1, 2)], 12)] {
            let p = lambda_incidence(&graph(3, &edges)).unwrap();
            assert_eq!((p.n_vertices(), p.n_facets()), (ell, ell));
            assert!(p.facets().all(|f| f.len() == 2));
            let g = polytope_graph(&p).unwrap();
            assert_eq!(g.regular_degree(), Some(2));
            let dual = stacked_dual(&graph(3, &edges)).unwrap();
            assert_eq!((dual.n_vertices(), dual.n_facets()), (ell, ell));
        }
    }

    #[test]
    fn sizes_and_simplicity() {
        let g = graph(5, &[(0, 1), (1, 2), (3, 4), (0, 4)]);
        let p = lambda_incidence(&g).unwrap();
        // Each of the 2|E| cuts trades one vertex for n - 1.
        assert_eq!(p.n_vertices(), 5 * 4 + 2 * 4 * 3);
        assert_eq!(p.n_facets(), 10 + 8);
        assert!(is_simple_polytope(&p, 4));
        let l = FaceLattice::build(&p).unwrap();
        assert_eq!(l.dimension(), 4);
    }

    #[test]
    fn stacked_dual_of_empty_four() {
        let d = stacked_dual(&graph(4, &[])).unwrap();
        let l = FaceLattice::build(&d).unwrap();
        let lp = FaceLattice::build(&lambda_incidence(&graph(4, &[])).unwrap()).unwrap();
        // Truncated tetrahedron: (12, 18, 8); its dual reverses that.
        assert_eq!(lp.f_vector(), vec![12, 18, 8]);
        assert_eq!(l.f_vector(), vec![8, 18, 12]);
    }

    #[test]
    fn hexagon_coordinates() {
        let (pts, h) = lambda_coordinates(&graph(3, &[]), &LambdaConfig::default()).unwrap();
        let mut expected: Vec<Vec<Rational>> = Vec::new();
        for i in 0..3 {
            for j in (0..3).filter(|&j| j != i) {
                let mut x = vec![Rational::zero(); 3];
                x[i] = rat(3, 4);
                x[j] = rat(1, 4);
                expected.push(x);
            }
        }
        assert_eq!(pts.points(), expected.as_slice());
        assert!(pts.points().iter().all(|p| p.iter().sum::<Rational>() == Rational::one()));
        assert_eq!(h.inequalities.len(), 6);
    }

    #[test]
    fn blue_edge_cut_parameter() {
        // c·v - c·(i,k) = ε² = 1/16, so the new vertex sits at t = δ/ε² = 1/4.
        let cfg = LambdaConfig::default();
        let (pts, _) = lambda_coordinates(&graph(3, &[(0, 1)]), &cfg).unwrap();
        let (vertices, _) = lambda_labels(&graph(3, &[(0, 1)])).unwrap();
        let idx = vertices
            .iter()
            .position(|&v| v == LambdaVertex::Cut { at: (0, 1), toward: (0, 2) })
            .unwrap();
        // (1-t)(3/4, 1/4, 0) + t(3/4, 0, 1/4) with t = 1/4.
        assert_eq!(pts.point(idx), &[rat(3, 4), rat(3, 16), rat(1, 16)]);
        let black = vertices
            .iter()
            .position(|&v| v == LambdaVertex::Cut { at: (0, 1), toward: (1, 0) })
            .unwrap();
        // Along the black edge the drop is (1-2ε)² = 1/4, so t = 1/16.
        let t = rat(1, 16);
        let x0 = rat(3, 4) + &t * (rat(1, 4) - rat(3, 4));
        assert_eq!(pts.point(black)[0], x0);
    }

    #[test]
    fn config_bounds() {
        assert!(LambdaConfig::new(rat(1, 3), rat(1, 100)).is_err());
        assert!(LambdaConfig::new(rat(1, 4), rat(1, 32)).is_err());
        assert!(LambdaConfig::new(rat(1, 5), rat(1, 100)).is_ok());
        assert!(LambdaConfig::new(rat(1, 4), Rational::zero()).is_err());
    }

    #[test]
    fn small_graphs_rejected() {
        assert_eq!(lambda_incidence(&graph(2, &[(0, 1)])), Err(Error::GraphTooSmall(2)));
        assert!(InputGraph::new(3, vec![(0, 0)]).is_err());
        assert!(InputGraph::new(3, vec![(0, 1), (1, 0)]).is_err());
        assert!(InputGraph::new(3, vec![(0, 3)]).is_err());
    }

    #[test]
    fn other_configs_pass_cross_check() {
        let g = graph(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        for (e, d) in [(rat(1, 4), rat(1, 64)), (rat(1, 5), rat(1, 200)), (rat(1, 8), rat(1, 256))] {
            let cfg = LambdaConfig::new(e, d).unwrap();
            assert!(lambda_coordinates(&g, &cfg).is_ok());
        }
    }
}
