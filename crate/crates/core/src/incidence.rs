//! Vertex-facet incidence matrices.
//!
//! An [`IncidenceMatrix`] is the bipartite vertex/facet relation of a
//! polytope. It determines the whole face lattice, so it is the input format
//! for every combinatorial algorithm in this crate.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{IncidenceError, LatticeError};
use crate::lattice::FaceLattice;

/// Vertex-facet incidences with facet rows stored as sorted vertex lists.
///
/// Construction enforces that facets are non-empty proper subsets of the
/// vertices, pairwise incomparable, and that every vertex lies on some facet.
/// These are necessary but not sufficient for polytopality; see
/// [`IncidenceMatrix::validate_polytopal`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IncidenceMatrix {
    n_vertices: usize,
    rows: Vec<Vec<usize>>,
}

impl IncidenceMatrix {
    pub fn new(n_vertices: usize, rows: Vec<Vec<usize>>) -> Result<Self, IncidenceError> {
        let n_facets = rows.len();
        if n_vertices < 2 || n_facets < 2 {
            return Err(IncidenceError::TooSmall {
                n_vertices,
                n_facets,
            });
        }
        let mut sorted = Vec::with_capacity(n_facets);
        for (facet, row) in rows.into_iter().enumerate() {
            sorted.push(normalize_row(facet, row, n_vertices)?);
        }

        for i in 0..n_facets {
            for j in i + 1..n_facets {
                let (a, b) = (&sorted[i], &sorted[j]);
                if a == b {
                    return Err(IncidenceError::DuplicateFacet {
                        first: i,
                        second: j,
                    });
                }
                if is_sorted_subset(a, b) {
                    return Err(IncidenceError::FacetContainment { inner: i, outer: j });
                }
                if is_sorted_subset(b, a) {
                    return Err(IncidenceError::FacetContainment { inner: j, outer: i });
                }
            }
        }

        let mut covered = vec![false; n_vertices];
        for &v in sorted.iter().flatten() {
            covered[v] = true;
        }
        if let Some(vertex) = covered.iter().position(|&c| !c) {
            return Err(IncidenceError::UncoveredVertex { vertex });
        }

        Ok(Self {
            n_vertices,
            rows: sorted,
        })
    }

    /// Builds a matrix whose rows are known to be sorted and valid.
    pub(crate) fn from_sorted_rows_unchecked(n_vertices: usize, rows: Vec<Vec<usize>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1])));
        Self { n_vertices, rows }
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_facets(&self) -> usize {
        self.rows.len()
    }

    /// Sorted vertex list of facet `j`.
    pub fn facet(&self, j: usize) -> &[usize] {
        &self.rows[j]
    }

    pub fn facets(&self) -> impl ExactSizeIterator<Item = &[usize]> + '_ {
        self.rows.iter().map(Vec::as_slice)
    }

    /// Number of vertex-facet incidences (α).
    pub fn incidence_count(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// For each vertex, the sorted list of facets containing it.
    pub fn vertex_facets(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n_vertices];
        for (j, row) in self.rows.iter().enumerate() {
            for &v in row {
                out[v].push(j);
            }
        }
        out
    }

    /// The transpose: vertices of the result are the facets of `self`, and
    /// facet `j` of the result lists the facets of `self` containing vertex
    /// `j`. For a polytope this is the incidence matrix of its dual.
    ///
    /// The result is not re-validated; transposing a non-polytopal matrix may
    /// produce one that violates the construction invariants.
    pub fn dual(&self) -> IncidenceMatrix {
        Self::from_sorted_rows_unchecked(self.n_facets(), self.vertex_facets())
    }

    /// Rows sorted lexicographically. Two matrices that differ only in facet
    /// order have the same sorted rows.
    pub fn sorted_rows(&self) -> Vec<Vec<usize>> {
        let mut rows = self.rows.clone();
        rows.sort();
        rows
    }

    /// Renumbers vertices: vertex `v` becomes `perm[v]`. Facet order is kept.
    pub fn relabel_vertices(&self, perm: &[usize]) -> IncidenceMatrix {
        assert_eq!(perm.len(), self.n_vertices, "permutation length");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut r: Vec<usize> = r.iter().map(|&v| perm[v]).collect();
                r.sort_unstable();
                r
            })
            .collect();
        Self::from_sorted_rows_unchecked(self.n_vertices, rows)
    }

    /// Reorders facets: the result's facet `i` is `self`'s facet `order[i]`.
    pub fn reorder_facets(&self, order: &[usize]) -> IncidenceMatrix {
        assert_eq!(order.len(), self.n_facets(), "permutation length");
        let rows = order.iter().map(|&j| self.rows[j].clone()).collect();
        Self::from_sorted_rows_unchecked(self.n_vertices, rows)
    }

    /// Checks the lattice-level necessary conditions for polytopality:
    /// gradedness, the diamond property, atomicity and coatomicity.
    ///
    /// Results of the isomorphism algorithms are undefined on inputs that
    /// fail this check.
    pub fn validate_polytopal(&self) -> Result<(), LatticeError> {
        FaceLattice::build(self).map(|_| ())
    }
}

fn normalize_row(
    facet: usize,
    mut row: Vec<usize>,
    n_vertices: usize,
) -> Result<Vec<usize>, IncidenceError> {
    if row.is_empty() {
        return Err(IncidenceError::EmptyFacet { facet });
    }
    if let Some(&index) = row.iter().find(|&&v| v >= n_vertices) {
        return Err(IncidenceError::IndexOutOfRange {
            facet,
            index,
            n_vertices,
        });
    }
    row.sort_unstable();
    if let Some(w) = row.windows(2).find(|w| w[0] == w[1]) {
        return Err(IncidenceError::RepeatedIndex { facet, index: w[0] });
    }
    if row.len() == n_vertices {
        return Err(IncidenceError::FacetEqualsVertexSet { facet });
    }
    Ok(row)
}

/// `a ⊆ b` for sorted slices.
pub(crate) fn is_sorted_subset(a: &[usize], b: &[usize]) -> bool {
    let mut it = b.iter();
    a.iter().all(|x| it.any(|y| y == x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use alloc::vec;

    fn square() -> IncidenceMatrix {
        IncidenceMatrix::new(4, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]).unwrap()
    }

    #[test]
    fn tetrahedron_counts() {
        let t = IncidenceMatrix::new(
            4,
            vec![vec![1, 2, 3], vec![0, 2, 3], vec![0, 1, 3], vec![0, 1, 2]],
        )
        .unwrap();
        assert_eq!((t.n_vertices(), t.n_facets(), t.incidence_count()), (4, 4, 12));
        assert_eq!(t.dual().sorted_rows(), t.sorted_rows());
    }

    #[test]
    fn square_counts_and_dual() {
        let s = square();
        assert_eq!((s.n_vertices(), s.n_facets(), s.incidence_count()), (4, 4, 8));
        let d = s.dual();
        assert_eq!((d.n_vertices(), d.n_facets()), (4, 4));
        assert!(d.validate_polytopal().is_ok());
    }

    #[test]
    fn rows_are_sorted_on_construction() {
        let m = IncidenceMatrix::new(3, vec![vec![1, 0], vec![2, 1], vec![0, 2]]).unwrap();
        assert_eq!(m.facet(0), &[0, 1]);
        assert_eq!(m.facet(1), &[1, 2]);
    }

    #[test]
    fn rejects_full_facet() {
        let e = IncidenceMatrix::new(4, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 1, 2, 3]])
            .unwrap_err();
        assert_eq!(e, IncidenceError::FacetEqualsVertexSet { facet: 3 });
    }

    #[test]
    fn rejects_malformed_rows() {
        use IncidenceError::*;
        let err = |n, rows: Vec<Vec<usize>>| IncidenceMatrix::new(n, rows).unwrap_err();
        assert!(matches!(err(1, vec![vec![0], vec![0]]), TooSmall { .. }));
        assert!(matches!(err(3, vec![vec![0], vec![]]), EmptyFacet { facet: 1 }));
        assert!(matches!(err(3, vec![vec![0, 3], vec![1]]), IndexOutOfRange { index: 3, .. }));
        assert!(matches!(err(3, vec![vec![0, 0], vec![1]]), RepeatedIndex { .. }));
        assert!(matches!(
            err(3, vec![vec![0, 1], vec![1, 0], vec![2]]),
            DuplicateFacet { first: 0, second: 1 }
        ));
        assert!(matches!(
            err(3, vec![vec![0, 1], vec![1], vec![2]]),
            FacetContainment { inner: 1, outer: 0 }
        ));
        assert!(matches!(err(3, vec![vec![0], vec![1]]), UncoveredVertex { vertex: 2 }));
    }

    #[test]
    fn glued_chain_is_rejected_at_construction() {
        // {0,1,2} is the full vertex set and contains every other row.
        let e = IncidenceMatrix::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2], vec![0, 1, 2]])
            .unwrap_err();
        assert_eq!(e, IncidenceError::FacetEqualsVertexSet { facet: 3 });
    }

    #[test]
    fn cube_dual_is_octahedron() {
        let cube = families::cube(3);
        let octa = cube.dual();
        assert_eq!((octa.n_vertices(), octa.n_facets()), (6, 8));
        assert!(octa.facets().all(|f| f.len() == 3));
        assert_eq!(octa.dual().sorted_rows(), cube.sorted_rows());
        assert_eq!(octa.incidence_count(), cube.incidence_count());
    }

    #[test]
    fn polytopality_checks() {
        assert!(families::cube(3).validate_polytopal().is_ok());
        let missing = IncidenceMatrix::new(4, vec![vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
        assert!(matches!(
            missing.validate_polytopal(),
            Err(LatticeError::Diamond { middle: 1, .. })
        ));
    }

    #[test]
    fn relabel_round_trip() {
        let c = families::cube(3);
        let perm = [3, 1, 4, 0, 7, 5, 2, 6];
        let mut inv = [0; 8];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        assert_eq!(c.relabel_vertices(&perm).relabel_vertices(&inv), c);
    }
}
