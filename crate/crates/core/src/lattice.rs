//! Face lattices of polytopes given by incidences.
//!
//! Faces are the vertex sets closed under the Galois connection between
//! vertices and facets: a set is a face iff it equals the intersection of all
//! facets containing it (the empty face and the whole polytope are included).
//! The lattice is built upward from the empty face by repeatedly adding one
//! vertex and closing; the minimal closures above a face are its covers.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::bitset::BitSet;
use crate::error::LatticeError;
use crate::incidence::IncidenceMatrix;

/// A face: its rank (dimension, `-1` for the empty face) and vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub rank: isize,
    pub vertices: Vec<usize>,
}

/// The ranked Hasse diagram of all faces of a polytope.
///
/// Face ids are assigned by `(rank, sorted vertex list)`, so id `0` is the
/// empty face, ids `1..=n` are the vertices in order, and the last id is the
/// polytope itself.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    n_vertices: usize,
    faces: Vec<Face>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    dimension: usize,
    /// `rank_start[r + 1]..rank_start[r + 2]` are the ids of rank `r`.
    rank_start: Vec<usize>,
    facet_face: Vec<usize>,
}

struct Closure<'a> {
    facets: Vec<BitSet>,
    vertex_facets: Vec<BitSet>,
    matrix: &'a IncidenceMatrix,
}

impl Closure<'_> {
    /// Vertex set cut out by a set of facets; the empty facet set gives the
    /// whole polytope.
    fn vertices_of(&self, facet_set: &BitSet) -> BitSet {
        let n = self.matrix.n_vertices();
        let mut it = facet_set.iter();
        match it.next() {
            None => BitSet::full(n),
            Some(first) => {
                let mut acc = self.facets[first].clone();
                for j in it {
                    acc.intersect_with(&self.facets[j]);
                }
                acc
            }
        }
    }
}

impl FaceLattice {
    pub fn build(p: &IncidenceMatrix) -> Result<Self, LatticeError> {
        let n = p.n_vertices();
        let m = p.n_facets();
        let closure = Closure {
            facets: p.facets().map(|f| BitSet::from_indices(n, f.iter().copied())).collect(),
            vertex_facets: p
                .vertex_facets()
                .into_iter()
                .map(|fs| BitSet::from_indices(m, fs))
                .collect(),
            matrix: p,
        };

        // Discovery: faces as (vertex set, facet set), covers by discovery index.
        let mut verts: Vec<BitSet> = vec![BitSet::empty(n)];
        let mut fsets: Vec<BitSet> = vec![BitSet::full(m)];
        let mut index: BTreeMap<BitSet, usize> = BTreeMap::new();
        index.insert(verts[0].clone(), 0);
        let mut up_raw: Vec<Vec<usize>> = vec![Vec::new()];

        let mut next = 0;
        while next < verts.len() {
            let face = verts[next].clone();
            let fset = fsets[next].clone();
            let mut seen: BTreeSet<BitSet> = BTreeSet::new();
            let mut candidates: Vec<(BitSet, BitSet)> = Vec::new();
            for v in (0..n).filter(|&v| !face.contains(v)) {
                let f2 = fset.intersection(&closure.vertex_facets[v]);
                if seen.insert(f2.clone()) {
                    let vs = closure.vertices_of(&f2);
                    candidates.push((vs, f2));
                }
            }
            candidates.sort_by_key(|(vs, _)| vs.len());
            let mut covers = Vec::new();
            for i in 0..candidates.len() {
                let g = &candidates[i].0;
                let minimal = candidates[..i]
                    .iter()
                    .all(|(h, _)| h.len() == g.len() || !h.is_subset(g));
                if minimal && !candidates[..i].iter().any(|(h, _)| h == g) {
                    let id = match index.get(g) {
                        Some(&id) => id,
                        None => {
                            let id = verts.len();
                            index.insert(g.clone(), id);
                            verts.push(g.clone());
                            fsets.push(candidates[i].1.clone());
                            up_raw.push(Vec::new());
                            id
                        }
                    };
                    covers.push(id);
                }
            }
            up_raw[next] = covers;
            next += 1;
        }

        let count = verts.len();
        let mut down_raw: Vec<Vec<usize>> = vec![Vec::new(); count];
        for (f, ups) in up_raw.iter().enumerate() {
            for &g in ups {
                down_raw[g].push(f);
            }
        }

        // Ranks by longest chain from the bottom, in order of face size.
        let vlists: Vec<Vec<usize>> = verts.iter().map(BitSet::to_vec).collect();
        let mut topo: Vec<usize> = (0..count).collect();
        topo.sort_by(|&a, &b| {
            (vlists[a].len(), &vlists[a]).cmp(&(vlists[b].len(), &vlists[b]))
        });
        let mut rank = vec![-1isize; count];
        for &g in &topo {
            if let Some(r) = down_raw[g].iter().map(|&f| rank[f] + 1).max() {
                rank[g] = r;
            }
        }
        for &g in &topo {
            for &f in &down_raw[g] {
                if rank[f] != rank[g] - 1 {
                    return Err(LatticeError::NotGraded {
                        lower: vlists[f].clone(),
                        upper: vlists[g].clone(),
                        gap: (rank[g] - rank[f]) as i64,
                    });
                }
            }
        }

        // Canonical ids.
        let mut order: Vec<usize> = (0..count).collect();
        order.sort_by(|&a, &b| (rank[a], &vlists[a]).cmp(&(rank[b], &vlists[b])));
        let mut new_id = vec![0; count];
        for (id, &old) in order.iter().enumerate() {
            new_id[old] = id;
        }
        let remap = |lists: &[Vec<usize>], old: usize| {
            let mut l: Vec<usize> = lists[old].iter().map(|&x| new_id[x]).collect();
            l.sort_unstable();
            l
        };
        let up: Vec<Vec<usize>> = order.iter().map(|&o| remap(&up_raw, o)).collect();
        let down: Vec<Vec<usize>> = order.iter().map(|&o| remap(&down_raw, o)).collect();
        let mut vlists = vlists;
        let faces: Vec<Face> = order
            .iter()
            .map(|&o| Face {
                rank: rank[o],
                vertices: core::mem::take(&mut vlists[o]),
            })
            .collect();

        let top_rank = faces.last().map_or(-1, |f| f.rank);
        if top_rank < 1 {
            return Err(LatticeError::Degenerate {
                dimension: top_rank as i64,
            });
        }
        let dimension = top_rank as usize;
        let mut rank_start = vec![0; dimension + 3];
        for f in &faces {
            rank_start[(f.rank + 2) as usize] += 1;
        }
        for i in 1..rank_start.len() {
            rank_start[i] += rank_start[i - 1];
        }

        // Diamond property on every rank-2 interval.
        let mut middle = BTreeMap::new();
        for f in 0..faces.len() {
            middle.clear();
            for &h in &up[f] {
                for &g in &up[h] {
                    *middle.entry(g).or_insert(0usize) += 1;
                }
            }
            if let Some((&g, &c)) = middle.iter().find(|(_, &c)| c != 2) {
                return Err(LatticeError::Diamond {
                    lower: faces[f].vertices.clone(),
                    upper: faces[g].vertices.clone(),
                    middle: c,
                });
            }
        }

        let lookup = |vs: &[usize]| -> Option<usize> {
            let i = faces.partition_point(|f| (f.rank, f.vertices.as_slice()) < (0, vs));
            (i < faces.len() && faces[i].vertices == vs).then_some(i)
        };
        for v in 0..n {
            if lookup(&[v]) != Some(1 + v) {
                return Err(LatticeError::NotAtomic { vertex: v });
            }
        }
        let top = faces.len() - 1;
        let mut facet_face = Vec::with_capacity(m);
        for (j, facet) in p.facets().enumerate() {
            let lo = rank_start[dimension];
            let hi = rank_start[dimension + 1];
            let found = (lo..hi).find(|&id| faces[id].vertices == facet);
            match found {
                Some(id) if up[id] == [top] => facet_face.push(id),
                _ => return Err(LatticeError::NotCoatomic { facet: j }),
            }
        }
        if rank_start[dimension + 1] - rank_start[dimension] != m {
            // A rank d-1 face that is not a listed facet.
            return Err(LatticeError::NotCoatomic { facet: m });
        }

        Ok(Self {
            n_vertices: n,
            faces,
            up,
            down,
            dimension,
            rank_start,
            facet_face,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_facets(&self) -> usize {
        self.facet_face.len()
    }

    /// Number of faces including the empty face and the polytope (φ).
    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: usize) -> &Face {
        &self.faces[id]
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.faces.len() - 1
    }

    /// Face ids of rank `r`, for `-1 <= r <= d`.
    pub fn rank_range(&self, r: isize) -> Range<usize> {
        let i = (r + 1) as usize;
        self.rank_start[i]..self.rank_start[i + 1]
    }

    /// Faces covering `id`, ascending.
    pub fn up(&self, id: usize) -> &[usize] {
        &self.up[id]
    }

    /// Faces covered by `id`, ascending.
    pub fn down(&self, id: usize) -> &[usize] {
        &self.down[id]
    }

    /// Face id of vertex `v`.
    pub fn vertex_face(&self, v: usize) -> usize {
        1 + v
    }

    /// Face id of facet `j` of the source matrix.
    pub fn facet_face(&self, j: usize) -> usize {
        self.facet_face[j]
    }

    /// `(f_0, …, f_{d-1})`.
    pub fn f_vector(&self) -> Vec<usize> {
        (0..self.dimension as isize)
            .map(|r| self.rank_range(r).len())
            .collect()
    }

    /// Number of maximal chains (ζ), counted over the Hasse diagram without
    /// enumerating them.
    pub fn flag_count(&self) -> u128 {
        let mut paths = vec![0u128; self.faces.len()];
        paths[0] = 1;
        for id in 1..self.faces.len() {
            paths[id] = self.down[id].iter().map(|&f| paths[f]).sum();
        }
        paths[self.top()]
    }

    /// All flags, sorted lexicographically by face-id tuple.
    pub fn enumerate_flags(&self) -> Flags {
        let d = self.dimension;
        let mut tuples = Vec::new();
        let mut chain = Vec::with_capacity(d);
        for f0 in self.rank_range(0) {
            chain.push(f0 as u32);
            self.extend_flags(&mut chain, &mut tuples);
            chain.pop();
        }
        Flags {
            dimension: d,
            tuples,
        }
    }

    fn extend_flags(&self, chain: &mut Vec<u32>, out: &mut Vec<u32>) {
        if chain.len() == self.dimension {
            out.extend_from_slice(chain);
            return;
        }
        let last = *chain.last().expect("non-empty chain") as usize;
        for &g in &self.up[last] {
            chain.push(g as u32);
            self.extend_flags(chain, out);
            chain.pop();
        }
    }
}

/// Flags stored as a flat array of face-id tuples, one face per rank
/// `0..d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flags {
    dimension: usize,
    tuples: Vec<u32>,
}

impl Flags {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.tuples.len() / self.dimension
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn get(&self, i: usize) -> &[u32] {
        &self.tuples[i * self.dimension..(i + 1) * self.dimension]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[u32]> + '_ {
        self.tuples.chunks_exact(self.dimension)
    }

    /// Index of a flag by binary search.
    pub fn index_of(&self, flag: &[u32]) -> Option<usize> {
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(flag) {
                core::cmp::Ordering::Less => lo = mid + 1,
                core::cmp::Ordering::Greater => hi = mid,
                core::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }
}
