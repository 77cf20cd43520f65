//! General polytope isomorphism through edge-labeled flag graphs.
//!
//! The flag graph has one node per flag (maximal chain of faces) and joins
//! two flags by an edge labeled `i` when they differ exactly in their rank-`i`
//! face. Two polytopes are isomorphic iff their flag graphs admit a
//! label-preserving isomorphism. Such a map is forced by the image of a
//! single flag, so the search tries each candidate image of one root flag
//! and follows labels outward.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::certificate::IsoCertificate;
use crate::error::Error;
use crate::incidence::IncidenceMatrix;
use crate::lattice::{FaceLattice, Flags};

/// Flags of a face lattice with, for each flag and label `i`, the unique
/// flag that differs from it only in rank `i`.
#[derive(Clone, Debug)]
pub struct FlagGraph {
    flags: Flags,
    /// `neighbors[c * d + i]`: the `i`-neighbor of flag `c`.
    neighbors: Vec<u32>,
    /// Vertex (rank-0 face) of each flag.
    vertex: Vec<u32>,
}

impl FlagGraph {
    pub fn build(lattice: &FaceLattice) -> Result<Self, Error> {
        let d = lattice.dimension();
        let flags = lattice.enumerate_flags();
        let zeta = flags.len();
        let mut neighbors = vec![0u32; zeta * d];
        let mut scratch: Vec<u32> = Vec::with_capacity(d);
        for (c, flag) in flags.iter().enumerate() {
            for i in 0..d {
                let lower = if i == 0 { lattice.bottom() } else { flag[i - 1] as usize };
                let upper = if i + 1 == d { lattice.top() } else { flag[i + 1] as usize };
                let current = flag[i] as usize;
                let down = lattice.down(upper);
                let mut others = lattice
                    .up(lower)
                    .iter()
                    .filter(|&&h| h != current && down.binary_search(&h).is_ok());
                let replacement = match (others.next(), others.next()) {
                    (Some(&h), None) => h,
                    _ => return Err(Error::FlagGraphNotUniquelyLabeled { flag: c, label: i }),
                };
                scratch.clear();
                scratch.extend_from_slice(flag);
                scratch[i] = replacement as u32;
                let other = flags
                    .index_of(&scratch)
                    .ok_or(Error::FlagGraphNotUniquelyLabeled { flag: c, label: i })?;
                neighbors[c * d + i] = other as u32;
            }
        }
        let vertex = flags
            .iter()
            .map(|f| lattice.face(f[0] as usize).vertices[0] as u32)
            .collect();
        let graph = Self {
            flags,
            neighbors,
            vertex,
        };
        if !graph.is_connected() {
            return Err(Error::FlagGraphDisconnected);
        }
        Ok(graph)
    }

    pub fn dimension(&self) -> usize {
        self.flags.dimension()
    }

    /// Number of flags (ζ).
    pub fn len(&self) -> usize {
        self.vertex.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertex.is_empty()
    }

    pub fn flags(&self) -> &Flags {
        &self.flags
    }

    #[inline]
    pub fn neighbor(&self, c: usize, label: usize) -> usize {
        self.neighbors[c * self.dimension() + label] as usize
    }

    /// The vertex contained in flag `c`.
    pub fn vertex_of(&self, c: usize) -> usize {
        self.vertex[c] as usize
    }

    fn is_connected(&self) -> bool {
        let d = self.dimension();
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(c) = queue.pop_front() {
            for i in 0..d {
                let o = self.neighbor(c, i);
                if !seen[o] {
                    seen[o] = true;
                    count += 1;
                    queue.push_back(o);
                }
            }
        }
        count == self.len()
    }

    /// For each flag, the size of its orbit under the labels in `mask`.
    fn orbit_sizes(&self, mask: u64) -> Vec<u32> {
        let d = self.dimension();
        let n = self.len();
        let mut comp = vec![u32::MAX; n];
        let mut sizes = Vec::new();
        let mut stack = Vec::new();
        for start in 0..n {
            if comp[start] != u32::MAX {
                continue;
            }
            let id = sizes.len() as u32;
            comp[start] = id;
            stack.push(start);
            let mut size = 0u32;
            while let Some(c) = stack.pop() {
                size += 1;
                for i in (0..d).filter(|i| mask & (1 << i) != 0) {
                    let o = self.neighbor(c, i);
                    if comp[o] == u32::MAX {
                        comp[o] = id;
                        stack.push(o);
                    }
                }
            }
            sizes.push(size);
        }
        comp.iter().map(|&c| sizes[c as usize]).collect()
    }

    /// Label-invariant starting colors: orbit sizes under every "all labels
    /// but one" subgroup and every pair of labels.
    fn invariant_profile(&self) -> Vec<Vec<u32>> {
        let d = self.dimension();
        let all = (1u64 << d) - 1;
        let mut masks: Vec<u64> = (0..d).map(|i| all & !(1 << i)).collect();
        for i in 0..d {
            for j in i + 1..d {
                masks.push((1 << i) | (1 << j));
            }
        }
        masks.into_iter().map(|m| self.orbit_sizes(m)).collect()
    }
}

/// Searches for a label-preserving isomorphism `fp → fq`. The result maps
/// flag `c` of `fp` to flag `result[c]` of `fq`; among all such maps it is
/// the one with the smallest image of flag 0.
pub fn label_preserving_iso(fp: &FlagGraph, fq: &FlagGraph) -> Option<Vec<usize>> {
    let d = fp.dimension();
    if d != fq.dimension() || fp.len() != fq.len() {
        return None;
    }
    let zeta = fp.len();
    let colors = refine_jointly(fp, fq)?;
    let root_color = colors[0];

    let mut image = vec![u32::MAX; zeta];
    let mut preimage = vec![u32::MAX; zeta];
    let mut queue = VecDeque::new();
    let mut touched = Vec::new();
    for x in (0..zeta).filter(|&x| colors[zeta + x] == root_color) {
        for &c in &touched {
            image[c as usize] = u32::MAX;
        }
        preimage.fill(u32::MAX);
        touched.clear();
        queue.clear();

        image[0] = x as u32;
        preimage[x] = 0;
        touched.push(0u32);
        queue.push_back(0usize);
        let mut ok = true;
        'bfs: while let Some(c) = queue.pop_front() {
            let xc = image[c] as usize;
            for i in 0..d {
                let (nc, nx) = (fp.neighbor(c, i), fq.neighbor(xc, i));
                if image[nc] == u32::MAX {
                    if preimage[nx] != u32::MAX {
                        ok = false;
                        break 'bfs;
                    }
                    image[nc] = nx as u32;
                    preimage[nx] = nc as u32;
                    touched.push(nc as u32);
                    queue.push_back(nc);
                } else if image[nc] as usize != nx {
                    ok = false;
                    break 'bfs;
                }
            }
        }
        if ok && touched.len() == zeta {
            let map: Vec<usize> = image.iter().map(|&y| y as usize).collect();
            let preserved = (0..zeta)
                .all(|c| (0..d).all(|i| map[fp.neighbor(c, i)] == fq.neighbor(map[c], i)));
            if preserved {
                return Some(map);
            }
        }
    }
    None
}

/// Color refinement on the disjoint union of both flag graphs. Returns the
/// stable colors (flags of `fp` first), or `None` once the color histograms
/// of the two sides differ. Colors are invariant under label-preserving
/// isomorphisms, so candidate root images can be restricted to the root's
/// color class without losing any solution.
fn refine_jointly(fp: &FlagGraph, fq: &FlagGraph) -> Option<Vec<u32>> {
    let d = fp.dimension();
    let zeta = fp.len();
    let total = 2 * zeta;
    let (pp, pq) = (fp.invariant_profile(), fq.invariant_profile());
    let width = pp.len();
    let mut sig: Vec<u32> = Vec::with_capacity(total * width.max(d + 1));
    for c in 0..total {
        let (prof, idx) = if c < zeta { (&pp, c) } else { (&pq, c - zeta) };
        sig.extend(prof.iter().map(|col| col[idx]));
    }
    let (mut colors, mut classes) = canonical_colors(&sig, width, total);
    loop {
        if !same_histogram(&colors[..zeta], &colors[zeta..], classes) {
            return None;
        }
        sig.clear();
        for c in 0..total {
            let (g, local, base) = if c < zeta { (fp, c, 0) } else { (fq, c - zeta, zeta) };
            sig.push(colors[c]);
            sig.extend((0..d).map(|i| colors[base + g.neighbor(local, i)]));
        }
        let (next, next_classes) = canonical_colors(&sig, d + 1, total);
        colors = next;
        if next_classes == classes {
            break;
        }
        classes = next_classes;
    }
    Some(colors)
}

/// Assigns dense color ids in lexicographic order of the signatures.
fn canonical_colors(sig: &[u32], width: usize, total: usize) -> (Vec<u32>, usize) {
    let row = |c: usize| &sig[c * width..(c + 1) * width];
    let mut order: Vec<usize> = (0..total).collect();
    order.sort_unstable_by(|&a, &b| row(a).cmp(row(b)));
    let mut colors = vec![0u32; total];
    let mut next = 0u32;
    for k in 0..order.len() {
        if k > 0 && row(order[k]) != row(order[k - 1]) {
            next += 1;
        }
        colors[order[k]] = next;
    }
    (colors, if total == 0 { 0 } else { next as usize + 1 })
}

fn same_histogram(a: &[u32], b: &[u32], classes: usize) -> bool {
    let mut h = vec![0i64; classes];
    for &c in a {
        h[c as usize] += 1;
    }
    for &c in b {
        h[c as usize] -= 1;
    }
    h.iter().all(|&x| x == 0)
}

/// Decides combinatorial isomorphism of arbitrary polytopes.
///
/// Cheap invariants (sizes, dimension, f-vector, flag count) are compared
/// first. The vertex map is read off a label-preserving flag isomorphism and
/// verified against the incidences before it is returned.
pub fn isomorphic(
    p: &IncidenceMatrix,
    q: &IncidenceMatrix,
) -> Result<Option<IsoCertificate>, Error> {
    if p.n_vertices() != q.n_vertices() || p.n_facets() != q.n_facets() {
        return Ok(None);
    }
    let lp = FaceLattice::build(p)?;
    let lq = FaceLattice::build(q)?;
    if lp.dimension() != lq.dimension()
        || lp.f_vector() != lq.f_vector()
        || lp.flag_count() != lq.flag_count()
    {
        return Ok(None);
    }
    let fp = FlagGraph::build(&lp)?;
    let fq = FlagGraph::build(&lq)?;
    let Some(flag_map) = label_preserving_iso(&fp, &fq) else {
        return Ok(None);
    };

    let mut vertex_map = vec![usize::MAX; p.n_vertices()];
    for (c, &x) in flag_map.iter().enumerate() {
        let (v, y) = (fp.vertex_of(c), fq.vertex_of(x));
        match vertex_map[v] {
            usize::MAX => vertex_map[v] = y,
            prev if prev != y => return Err(Error::ProjectionNotWellDefined),
            _ => {}
        }
    }
    IsoCertificate::from_vertex_map(p, q, vertex_map)
        .map(Some)
        .ok_or(Error::CertificateRejected)
}

/// Outcome of [`iso_up_to_duality`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DualityIso {
    /// `P ≅ Q`; the certificate maps `P` to `Q`.
    Direct(IsoCertificate),
    /// `P ≅ Q*` but not `P ≅ Q`; the certificate maps `P` to `dual(Q)`.
    Dual(IsoCertificate),
    Neither,
}

/// Isomorphism of `P` with `Q` or with its dual, preferring the direct one.
pub fn iso_up_to_duality(p: &IncidenceMatrix, q: &IncidenceMatrix) -> Result<DualityIso, Error> {
    if let Some(cert) = isomorphic(p, q)? {
        return Ok(DualityIso::Direct(cert));
    }
    Ok(match isomorphic(p, &q.dual())? {
        Some(cert) => DualityIso::Dual(cert),
        None => DualityIso::Neither,
    })
}

/// Whether `P` is combinatorially isomorphic to its dual; the certificate
/// maps `P` to `dual(P)`.
pub fn self_dual(p: &IncidenceMatrix) -> Result<Option<IsoCertificate>, Error> {
    isomorphic(p, &p.dual())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn flag_graph(p: &IncidenceMatrix) -> FlagGraph {
        FlagGraph::build(&FaceLattice::build(p).unwrap()).unwrap()
    }

    fn assert_structure(g: &FlagGraph) {
        let d = g.dimension();
        for c in 0..g.len() {
            for i in 0..d {
                let o = g.neighbor(c, i);
                assert_ne!(o, c);
                assert_eq!(g.neighbor(o, i), c);
                let (a, b) = (g.flags().get(c), g.flags().get(o));
                let diff: Vec<usize> = (0..d).filter(|&k| a[k] != b[k]).collect();
                assert_eq!(diff, vec![i]);
            }
        }
    }

    #[test]
    fn square_flag_graph_is_alternating_cycle() {
        let g = flag_graph(&families::polygon(4));
        assert_eq!(g.len(), 8);
        assert_structure(&g);
        // Walking labels 0,1,0,1,... returns after 8 steps and not before.
        let mut c = 0;
        for step in 0..8 {
            c = g.neighbor(c, step % 2);
            assert_eq!(c == 0, step == 7);
        }
    }

    #[test]
    fn small_flag_graphs() {
        for (p, zeta) in [(families::simplex(3), 24), (families::cube(3), 48)] {
            let g = flag_graph(&p);
            assert_eq!(g.len(), zeta);
            assert_structure(&g);
        }
    }

    #[test]
    fn square_identity() {
        let g = flag_graph(&families::polygon(4));
        let map = label_preserving_iso(&g, &g).unwrap();
        assert_eq!(map, (0..8).collect::<Vec<_>>());
    }

    #[test]
    fn cube_vs_octahedron_flags() {
        let c = flag_graph(&families::cube(3));
        let o = flag_graph(&families::cross_polytope(3));
        assert_eq!(label_preserving_iso(&c, &o), None);
    }

    #[test]
    fn relabeled_cube() {
        let c = families::cube(3);
        let q = c.relabel_vertices(&[6, 3, 0, 7, 2, 5, 4, 1]).reorder_facets(&[5, 0, 3, 1, 4, 2]);
        let cert = isomorphic(&c, &q).unwrap().unwrap();
        assert!(cert.verify(&c, &q));
        assert_eq!(isomorphic(&c, &families::cross_polytope(3)).unwrap(), None);
    }

    #[test]
    fn duality_aware() {
        let c = families::cube(3);
        let o = families::cross_polytope(3);
        assert!(matches!(iso_up_to_duality(&c, &o).unwrap(), DualityIso::Dual(cert) if cert.verify(&c, &o.dual())));
        assert!(matches!(iso_up_to_duality(&c, &c).unwrap(), DualityIso::Direct(_)));
    }

    #[test]
    fn self_duality() {
        let pyr = families::pyramid(&families::polygon(4));
        let cert = self_dual(&pyr).unwrap().unwrap();
        assert!(cert.verify(&pyr, &pyr.dual()));
        assert!(self_dual(&families::simplex(3)).unwrap().is_some());
        assert!(self_dual(&families::cube(3)).unwrap().is_none());
        assert!(self_dual(&families::cross_polytope(3)).unwrap().is_none());
    }

    #[test]
    fn reversed_pentagonal_prism() {
        let p = families::prism(&families::polygon(5));
        let q = p.relabel_vertices(&[9, 8, 7, 6, 5, 4, 3, 2, 1, 0]);
        assert!(isomorphic(&p, &q).unwrap().is_some());
    }
}
