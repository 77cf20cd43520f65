use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::incidence::IncidenceMatrix;

/// A combinatorial isomorphism `P → Q`: a vertex bijection together with the
/// facet bijection it induces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IsoCertificate {
    pub vertex_map: Vec<usize>,
    pub facet_map: Vec<usize>,
}

impl IsoCertificate {
    /// Completes a vertex bijection to a certificate. Returns `None` unless
    /// the map is a bijection sending every facet of `p` onto a facet of `q`.
    pub fn from_vertex_map(
        p: &IncidenceMatrix,
        q: &IncidenceMatrix,
        vertex_map: Vec<usize>,
    ) -> Option<Self> {
        if p.n_vertices() != q.n_vertices()
            || p.n_facets() != q.n_facets()
            || !is_permutation(&vertex_map, q.n_vertices())
        {
            return None;
        }
        let index: BTreeMap<&[usize], usize> =
            q.facets().enumerate().map(|(j, f)| (f, j)).collect();
        let mut facet_map = Vec::with_capacity(p.n_facets());
        let mut image = Vec::new();
        for f in p.facets() {
            image.clear();
            image.extend(f.iter().map(|&v| vertex_map[v]));
            image.sort_unstable();
            facet_map.push(*index.get(image.as_slice())?);
        }
        let cert = Self {
            vertex_map,
            facet_map,
        };
        is_permutation(&cert.facet_map, q.n_facets()).then_some(cert)
    }

    /// Checks the certificate against raw incidences: both maps are
    /// bijections and vertex `v` lies on facet `j` of `p` exactly when
    /// `vertex_map[v]` lies on `facet_map[j]` of `q`.
    pub fn verify(&self, p: &IncidenceMatrix, q: &IncidenceMatrix) -> bool {
        if p.n_vertices() != q.n_vertices()
            || p.n_facets() != q.n_facets()
            || !is_permutation(&self.vertex_map, q.n_vertices())
            || !is_permutation(&self.facet_map, q.n_facets())
        {
            return false;
        }
        p.facets().enumerate().all(|(j, f)| {
            let target = q.facet(self.facet_map[j]);
            f.len() == target.len()
                && f.iter().all(|&v| target.binary_search(&self.vertex_map[v]).is_ok())
        })
    }

    /// The same isomorphism read on the duals: vertices and facets swap.
    pub fn transpose(self) -> Self {
        Self {
            vertex_map: self.facet_map,
            facet_map: self.vertex_map,
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            vertex_map: invert(&self.vertex_map),
            facet_map: invert(&self.facet_map),
        }
    }
}

pub(crate) fn is_permutation(map: &[usize], n: usize) -> bool {
    if map.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    map.iter().all(|&x| x < n && !core::mem::replace(&mut seen[x], true))
}

pub(crate) fn invert(map: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; map.len()];
    for (i, &x) in map.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn identity_and_relabeling() {
        let c = families::cube(3);
        let id: Vec<usize> = (0..8).collect();
        let cert = IsoCertificate::from_vertex_map(&c, &c, id).unwrap();
        assert!(cert.verify(&c, &c));

        let perm = vec![5, 2, 7, 0, 1, 6, 3, 4];
        let q = c.relabel_vertices(&perm);
        let cert = IsoCertificate::from_vertex_map(&c, &q, perm).unwrap();
        assert!(cert.verify(&c, &q));
        assert!(cert.inverse().verify(&q, &c));
        assert!(cert.clone().transpose().verify(&c.dual(), &q.dual()));
    }

    #[test]
    fn rejects_non_isomorphisms() {
        let c = families::cube(3);
        // Swapping two adjacent vertices breaks the facets.
        let bad = vec![1, 0, 2, 3, 4, 5, 6, 7];
        assert!(IsoCertificate::from_vertex_map(&c, &c, bad.clone()).is_none());
        let forged = IsoCertificate {
            vertex_map: bad,
            facet_map: (0..6).collect(),
        };
        assert!(!forged.verify(&c, &c));
        assert!(IsoCertificate::from_vertex_map(&c, &c, vec![0; 8]).is_none());
    }
}
