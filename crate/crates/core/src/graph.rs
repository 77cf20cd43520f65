//! The graph of a polytope (vertices and edges) and simplicity tests.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::error::Error;
use crate::incidence::IncidenceMatrix;

/// Vertices and 1-faces of a polytope, with sorted neighbor lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeGraph {
    adjacency: Vec<Vec<usize>>,
}

impl PolytopeGraph {
    /// Builds a graph from neighbor lists. Lists are sorted and must be
    /// symmetric.
    pub fn from_adjacency(mut adjacency: Vec<Vec<usize>>) -> Self {
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Self { adjacency }
    }

    pub fn n_nodes(&self) -> usize {
        self.adjacency.len()
    }

    /// `N(v)`, ascending.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    /// `N[v] = N(v) ∪ {v}`, ascending.
    pub fn closed_neighborhood(&self, v: usize) -> Vec<usize> {
        let mut out = self.adjacency[v].clone();
        let at = out.partition_point(|&x| x < v);
        out.insert(at, v);
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// `Some(k)` if every node has degree `k`.
    pub fn regular_degree(&self) -> Option<usize> {
        let k = self.adjacency.first().map_or(0, Vec::len);
        self.adjacency.iter().all(|a| a.len() == k).then_some(k)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n_nodes();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == n
    }

    /// Breadth-first spanning tree from `root`, visiting neighbors in
    /// ascending order. Returns `(node, parent)` pairs in visiting order,
    /// excluding the root.
    pub fn bfs_tree(&self, root: usize) -> Vec<(usize, usize)> {
        let mut seen = vec![false; self.n_nodes()];
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        let mut out = Vec::with_capacity(self.n_nodes().saturating_sub(1));
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    out.push((v, u));
                    queue.push_back(v);
                }
            }
        }
        out
    }
}

/// The graph of `p`: `{u, v}` is an edge iff the smallest face containing
/// both vertices has exactly those two vertices.
pub fn polytope_graph(p: &IncidenceMatrix) -> Result<PolytopeGraph, Error> {
    let n = p.n_vertices();
    let facets: Vec<BitSet> = p
        .facets()
        .map(|f| BitSet::from_indices(n, f.iter().copied()))
        .collect();
    let vf = p.vertex_facets();
    let mut adjacency = vec![Vec::new(); n];
    for u in 0..n {
        for v in u + 1..n {
            let mut closure: Option<BitSet> = None;
            let mut it_v = vf[v].iter().peekable();
            for &j in &vf[u] {
                while it_v.next_if(|&&k| k < j).is_some() {}
                if it_v.peek() == Some(&&j) {
                    match &mut closure {
                        None => closure = Some(facets[j].clone()),
                        Some(c) => c.intersect_with(&facets[j]),
                    }
                }
            }
            // No common facet: the closure is the whole polytope.
            let size = closure.map_or(n, |c| c.len());
            if size == 2 {
                adjacency[u].push(v);
                adjacency[v].push(u);
            }
        }
    }
    let g = PolytopeGraph { adjacency };
    if !g.is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    Ok(g)
}

/// Every vertex lies in exactly `d` facets.
pub fn is_simple_polytope(p: &IncidenceMatrix, d: usize) -> bool {
    let mut count = vec![0usize; p.n_vertices()];
    for &v in p.facets().flatten() {
        count[v] += 1;
    }
    count.iter().all(|&c| c == d)
}

/// Every facet has exactly `d` vertices.
pub fn is_simplicial(p: &IncidenceMatrix, d: usize) -> bool {
    p.facets().all(|f| f.len() == d)
}

/// Dimension of `p` if it is simple, decided from incidences and the graph
/// alone: every vertex has `k` neighbors and lies on `k` facets, and every
/// edge lies on exactly `k - 1` facets. The vertex figures are then
/// `(k-1)`-simplices, so `k` is the dimension.
pub fn simple_dimension(p: &IncidenceMatrix, g: &PolytopeGraph) -> Option<usize> {
    let k = g.regular_degree()?;
    if !is_simple_polytope(p, k) || k == 0 {
        return None;
    }
    let vf = p.vertex_facets();
    for (u, v) in g.edges() {
        let common = vf[u].iter().filter(|j| vf[v].binary_search(j).is_ok()).count();
        if common != k - 1 {
            return None;
        }
    }
    Some(k)
}
