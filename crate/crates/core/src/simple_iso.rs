//! Isomorphism of simple polytopes by neighborhood propagation.
//!
//! In a simple `d`-polytope every edge `{v, w}` carries a bijection
//! `Ψ_{v,w}: N[v] → N[w]` that fixes `v` and `w` and sends a third neighbor
//! `u` of `v` to the other neighbor of `w` on the 2-face spanned by `v, w, u`.
//! An isomorphism is determined by where it sends one vertex and that
//! vertex's neighbors, and the local maps along a spanning tree are forced:
//!
//! ```text
//! π_w = Ψ_{π(v), π(w)} ∘ π_v ∘ Ψ_{w, v}
//! ```
//!
//! So it suffices to try every image `x` of a root vertex and each of the
//! `d!` bijections `N(v0) → N(x)`, propagate along the tree, and keep the
//! first candidate whose local maps agree wherever they overlap.

use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::certificate::IsoCertificate;
use crate::error::Error;
use crate::graph::{polytope_graph, simple_dimension, PolytopeGraph};
use crate::incidence::IncidenceMatrix;

/// The maps `Ψ_{v,w}` for every directed edge of a simple polytope.
#[derive(Clone, Debug)]
pub struct EdgeBijections {
    graph: PolytopeGraph,
    dimension: usize,
    /// Entry `((v * d) + k) * d + j` is `Ψ_{v, N(v)[k]}(N(v)[j])`.
    table: Vec<u32>,
}

impl EdgeBijections {
    pub fn compute(p: &IncidenceMatrix) -> Result<Self, Error> {
        let graph = polytope_graph(p)?;
        let d = simple_dimension(p, &graph).ok_or(Error::NotSimple)?;
        Self::with_graph(p, graph, d)
    }

    fn with_graph(p: &IncidenceMatrix, graph: PolytopeGraph, d: usize) -> Result<Self, Error> {
        let n = p.n_vertices();
        let facets: Vec<BitSet> = p
            .facets()
            .map(|f| BitSet::from_indices(n, f.iter().copied()))
            .collect();
        let vf = p.vertex_facets();
        let mut table = vec![0u32; n * d * d];
        for v in 0..n {
            let nv = graph.neighbors(v);
            for (k, &w) in nv.iter().enumerate() {
                let vw: Vec<usize> =
                    vf[v].iter().copied().filter(|j| vf[w].binary_search(j).is_ok()).collect();
                for (j, &u) in nv.iter().enumerate() {
                    let slot = (v * d + k) * d + j;
                    if u == w {
                        table[slot] = w as u32;
                        continue;
                    }
                    // The 2-face through v, w, u: intersection of the facets
                    // containing all three (the whole polytope when d = 2).
                    let mut face = BitSet::full(n);
                    for &f in vw.iter().filter(|f| vf[u].binary_search(f).is_ok()) {
                        face.intersect_with(&facets[f]);
                    }
                    let mut other = graph
                        .neighbors(w)
                        .iter()
                        .filter(|&&y| y != v && face.contains(y));
                    match (other.next(), other.next()) {
                        (Some(&y), None) => table[slot] = y as u32,
                        _ => return Err(Error::TwoFaceNotCycle { v, w, u }),
                    }
                }
            }
        }
        Ok(Self {
            graph,
            dimension: d,
            table,
        })
    }

    pub fn graph(&self) -> &PolytopeGraph {
        &self.graph
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// `Ψ_{v,w}(u)` for `u ∈ N[v]`; `None` if `{v, w}` is not an edge or
    /// `u ∉ N[v]`.
    pub fn psi(&self, v: usize, w: usize, u: usize) -> Option<usize> {
        let k = self.graph.neighbors(v).binary_search(&w).ok()?;
        if u == v {
            return Some(v);
        }
        let j = self.graph.neighbors(v).binary_search(&u).ok()?;
        Some(self.entry(v, k, j))
    }

    #[inline]
    fn entry(&self, v: usize, k: usize, j: usize) -> usize {
        let d = self.dimension;
        self.table[(v * d + k) * d + j] as usize
    }

    /// `Ψ_{v,w}` as `(u, Ψ(u))` pairs over `N[v]` in ascending `u`.
    pub fn map(&self, v: usize, w: usize) -> Option<Vec<(usize, usize)>> {
        self.graph.neighbors(v).binary_search(&w).ok()?;
        Some(
            self.graph
                .closed_neighborhood(v)
                .into_iter()
                .map(|u| (u, self.psi(v, w, u).expect("u in N[v]")))
                .collect(),
        )
    }

    /// Position of `u` in the closed-neighborhood layout `[v, N(v)…]`.
    #[inline]
    fn slot(&self, v: usize, u: usize) -> Option<usize> {
        if u == v {
            Some(0)
        } else {
            self.graph.neighbors(v).binary_search(&u).ok().map(|j| j + 1)
        }
    }

    /// `Ψ_{a,b}(z)` addressed by layout slot of `z` in `N[a]`.
    #[inline]
    fn apply_slot(&self, a: usize, b_index: usize, z_slot: usize) -> usize {
        if z_slot == 0 {
            a
        } else {
            self.entry(a, b_index, z_slot - 1)
        }
    }
}

/// Decides whether two simple polytopes are combinatorially isomorphic.
///
/// Returns a verified certificate for the first successful candidate in the
/// order (image of vertex 0 ascending, neighbor bijection lexicographic), or
/// `None`. Inputs that are not simple are rejected with [`Error::NotSimple`].
pub fn simple_isomorphism(
    p: &IncidenceMatrix,
    q: &IncidenceMatrix,
) -> Result<Option<IsoCertificate>, Error> {
    let bp = EdgeBijections::compute(p)?;
    let bq = EdgeBijections::compute(q)?;
    if bp.dimension != bq.dimension
        || p.n_vertices() != q.n_vertices()
        || p.n_facets() != q.n_facets()
    {
        return Ok(None);
    }
    Ok(Propagation::new(p, q, &bp, &bq).search())
}

/// Decides isomorphism of simplicial polytopes by running the simple
/// algorithm on their duals and transposing the certificate.
pub fn simplicial_isomorphism(
    p: &IncidenceMatrix,
    q: &IncidenceMatrix,
) -> Result<Option<IsoCertificate>, Error> {
    let (pd, qd) = (p.dual(), q.dual());
    let not_simplicial = |e: Error| match e {
        Error::NotSimple => Error::NotSimplicial,
        other => other,
    };
    let found = simple_isomorphism(&pd, &qd).map_err(not_simplicial)?;
    Ok(found.map(IsoCertificate::transpose).filter(|c| {
        let ok = c.verify(p, q);
        debug_assert!(ok, "transposed certificate failed verification");
        ok
    }))
}

const UNSET: u32 = u32::MAX;

struct Propagation<'a> {
    p: &'a IncidenceMatrix,
    q: &'a IncidenceMatrix,
    bp: &'a EdgeBijections,
    bq: &'a EdgeBijections,
    tree: Vec<(usize, usize)>,
    /// Local maps: `local[v * (d + 1) + s]` is `π_v` at slot `s` of `N[v]`.
    local: Vec<u32>,
    global: Vec<u32>,
}

impl<'a> Propagation<'a> {
    fn new(
        p: &'a IncidenceMatrix,
        q: &'a IncidenceMatrix,
        bp: &'a EdgeBijections,
        bq: &'a EdgeBijections,
    ) -> Self {
        let n = p.n_vertices();
        let d = bp.dimension;
        Self {
            p,
            q,
            bp,
            bq,
            tree: bp.graph.bfs_tree(0),
            local: vec![UNSET; n * (d + 1)],
            global: vec![UNSET; n],
        }
    }

    fn search(&mut self) -> Option<IsoCertificate> {
        let d = self.bp.dimension;
        for x in 0..self.q.n_vertices() {
            let mut image: Vec<u32> = self.bq.graph.neighbors(x).iter().map(|&y| y as u32).collect();
            loop {
                if let Some(cert) = self.try_candidate(x, &image) {
                    return Some(cert);
                }
                if !next_permutation(&mut image) {
                    break;
                }
            }
            debug_assert_eq!(image.len(), d);
        }
        None
    }

    /// Steps 1-3 for one root bijection `π_{v0}`.
    fn try_candidate(&mut self, x: usize, root_image: &[u32]) -> Option<IsoCertificate> {
        let d = self.bp.dimension;
        let w = d + 1;
        self.global.fill(UNSET);
        self.local[0] = x as u32;
        self.local[1..w].copy_from_slice(root_image);
        if !self.record(0) {
            return None;
        }
        for t in 0..self.tree.len() {
            let (child, parent) = self.tree[t];
            let a = self.local[parent * w] as usize;
            let child_slot = self.bp.slot(parent, child).expect("tree edge");
            let b = self.local[parent * w + child_slot] as usize;
            let b_index = self.bq.graph.neighbors(a).binary_search(&b).ok()?;
            let k_back = self.bp.graph.neighbors(child).binary_search(&parent).expect("tree edge");

            // π_child(y) = Ψ_{a,b}(π_parent(Ψ_{child,parent}(y))) for y ∈ N[child].
            for s in 0..w {
                let y_img = if s == 0 {
                    child
                } else {
                    self.bp.entry(child, k_back, s - 1)
                };
                let y_slot = self.bp.slot(parent, y_img).expect("Ψ maps into N[parent]");
                let z = self.local[parent * w + y_slot] as usize;
                let z_slot = self.bq.slot(a, z)?;
                self.local[child * w + s] = self.bq.apply_slot(a, b_index, z_slot) as u32;
            }
            if !self.neighborhood_preserved(child) || !self.record(child) {
                return None;
            }
        }
        let map: Vec<usize> = self.global.iter().map(|&y| y as usize).collect();
        let cert = IsoCertificate::from_vertex_map(self.p, self.q, map);
        debug_assert!(cert.is_some(), "consistent propagation failed verification");
        cert
    }

    /// Condition (1): `π_v(N(v)) = N(π_v(v))`.
    fn neighborhood_preserved(&self, v: usize) -> bool {
        let w = self.bp.dimension + 1;
        let local = &self.local[v * w..(v + 1) * w];
        let mut image: Vec<usize> = local[1..].iter().map(|&y| y as usize).collect();
        image.sort_unstable();
        image == self.bq.graph.neighbors(local[0] as usize)
    }

    /// Condition (3), checked incrementally against every earlier local map.
    fn record(&mut self, v: usize) -> bool {
        let w = self.bp.dimension + 1;
        for s in 0..w {
            let u = if s == 0 { v } else { self.bp.graph.neighbors(v)[s - 1] };
            let img = self.local[v * w + s];
            match self.global[u] {
                UNSET => self.global[u] = img,
                prev if prev != img => return false,
                _ => {}
            }
        }
        true
    }
}

/// Advances to the next lexicographic permutation; false at the last one.
fn next_permutation(a: &mut [u32]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}
