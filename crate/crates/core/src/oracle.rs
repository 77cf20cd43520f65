//! Brute-force reference implementations.
//!
//! These exist to cross-check the fast algorithms on small inputs. They make
//! no use of lattices, flag graphs, or edge bijections.

use alloc::vec;
use alloc::vec::Vec;

use crate::certificate::IsoCertificate;
use crate::error::Error;
use crate::incidence::IncidenceMatrix;
use crate::reduction::InputGraph;

/// Default bound on `n_vertices + n_facets` for [`oracle_incidence_iso`].
pub const DEFAULT_INCIDENCE_CAP: usize = 40;
/// Default bound on the node count for [`oracle_graph_iso`].
pub const DEFAULT_GRAPH_CAP: usize = 10;

fn common_counts(p: &IncidenceMatrix) -> Vec<Vec<usize>> {
    let n = p.n_vertices();
    let mut c = vec![vec![0usize; n]; n];
    for f in p.facets() {
        for &a in f {
            for &b in f {
                c[a][b] += 1;
            }
        }
    }
    c
}

/// Isomorphism of two incidence matrices by exhaustive search over vertex
/// bijections. Returns the lexicographically first vertex map that works.
pub fn oracle_incidence_iso(
    p: &IncidenceMatrix,
    q: &IncidenceMatrix,
    cap: usize,
) -> Result<Option<IsoCertificate>, Error> {
    for size in [p.n_vertices() + p.n_facets(), q.n_vertices() + q.n_facets()] {
        if size > cap {
            return Err(Error::OracleCap { size, cap });
        }
    }
    if p.n_vertices() != q.n_vertices() || p.n_facets() != q.n_facets() {
        return Ok(None);
    }
    let mut sp: Vec<usize> = p.facets().map(<[usize]>::len).collect();
    let mut sq: Vec<usize> = q.facets().map(<[usize]>::len).collect();
    sp.sort_unstable();
    sq.sort_unstable();
    if sp != sq {
        return Ok(None);
    }
    let cp = common_counts(p);
    let cq = common_counts(q);
    let n = p.n_vertices();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(extend(p, q, &cp, &cq, 0, &mut map, &mut used))
}

fn extend(
    p: &IncidenceMatrix,
    q: &IncidenceMatrix,
    cp: &[Vec<usize>],
    cq: &[Vec<usize>],
    v: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> Option<IsoCertificate> {
    if v == map.len() {
        return IsoCertificate::from_vertex_map(p, q, map.to_vec());
    }
    for w in 0..map.len() {
        if used[w] || cp[v][v] != cq[w][w] {
            continue;
        }
        if (0..v).any(|u| cp[u][v] != cq[map[u]][w]) {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if let Some(c) = extend(p, q, cp, cq, v + 1, map, used) {
            return Some(c);
        }
        used[w] = false;
    }
    map[v] = usize::MAX;
    None
}

/// Graph isomorphism by exhaustive search. Returns the lexicographically
/// first node map `g -> h`.
pub fn oracle_graph_iso(
    g: &InputGraph,
    h: &InputGraph,
    cap: usize,
) -> Result<Option<Vec<usize>>, Error> {
    let size = g.n_nodes().max(h.n_nodes());
    if size > cap {
        return Err(Error::OracleCap { size, cap });
    }
    if g.n_nodes() != h.n_nodes() || g.edges().len() != h.edges().len() {
        return Ok(None);
    }
    let n = g.n_nodes();
    let mut map = Vec::with_capacity(n);
    let mut used = vec![false; n];
    Ok(graph_extend(g, h, &mut map, &mut used).then_some(map))
}

fn graph_extend(g: &InputGraph, h: &InputGraph, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
    let v = map.len();
    if v == g.n_nodes() {
        return true;
    }
    for w in 0..used.len() {
        if used[w] || g.degree(v) != h.degree(w) {
            continue;
        }
        if (0..v).any(|u| g.has_edge(u, v) != h.has_edge(map[u], w)) {
            continue;
        }
        map.push(w);
        used[w] = true;
        if graph_extend(g, h, map, used) {
            return true;
        }
        map.pop();
        used[w] = false;
    }
    false
}
