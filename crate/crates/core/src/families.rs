//! Incidence matrices of standard polytope families and constructions.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::graph::{polytope_graph, simple_dimension};
use crate::incidence::IncidenceMatrix;

/// The `d`-simplex; facet `j` omits vertex `j`.
pub fn simplex(d: usize) -> IncidenceMatrix {
    assert!(d >= 1);
    let rows = (0..=d).map(|j| (0..=d).filter(|&v| v != j).collect()).collect();
    IncidenceMatrix::from_sorted_rows_unchecked(d + 1, rows)
}

/// The `k`-gon; facet `i` is the edge `{i, i+1 mod k}`.
pub fn polygon(k: usize) -> IncidenceMatrix {
    assert!(k >= 3);
    let rows = (0..k)
        .map(|i| {
            let (a, b) = (i, (i + 1) % k);
            vec![a.min(b), a.max(b)]
        })
        .collect();
    IncidenceMatrix::from_sorted_rows_unchecked(k, rows)
}

/// The `d`-cube. Vertices are bit masks; facet `2i + b` holds the vertices
/// whose bit `i` equals `b`.
pub fn cube(d: usize) -> IncidenceMatrix {
    assert!(d >= 1);
    let n = 1usize << d;
    let rows = (0..d)
        .flat_map(|i| (0..2).map(move |b| (0..n).filter(|v| (v >> i) & 1 == b).collect()))
        .collect();
    IncidenceMatrix::from_sorted_rows_unchecked(n, rows)
}

/// The `d`-dimensional cross-polytope, as the dual of the cube.
pub fn cross_polytope(d: usize) -> IncidenceMatrix {
    cube(d).dual()
}

/// Pyramid over `base`: the apex is the last vertex, the base the last facet.
pub fn pyramid(base: &IncidenceMatrix) -> IncidenceMatrix {
    let n = base.n_vertices();
    let mut rows: Vec<Vec<usize>> = base
        .facets()
        .map(|f| f.iter().copied().chain([n]).collect())
        .collect();
    rows.push((0..n).collect());
    IncidenceMatrix::from_sorted_rows_unchecked(n + 1, rows)
}

/// Prism over `base`: vertex `v` and its copy `v + n`; the two base copies
/// are the last two facets.
pub fn prism(base: &IncidenceMatrix) -> IncidenceMatrix {
    let n = base.n_vertices();
    let mut rows: Vec<Vec<usize>> = base
        .facets()
        .map(|f| f.iter().copied().chain(f.iter().map(|&v| v + n)).collect())
        .collect();
    rows.push((0..n).collect());
    rows.push((n..2 * n).collect());
    IncidenceMatrix::from_sorted_rows_unchecked(2 * n, rows)
}

/// Cuts off vertex `v` of a simple polytope. The remaining vertices keep
/// their order; one new vertex per neighbor of `v` is appended (in neighbor
/// order), and the new facet is last.
pub fn truncate_vertex(p: &IncidenceMatrix, v: usize) -> Result<IncidenceMatrix, Error> {
    let g = polytope_graph(p)?;
    simple_dimension(p, &g).ok_or(Error::NotSimple)?;
    let n = p.n_vertices();
    let renumber = |u: usize| if u < v { u } else { u - 1 };
    let fresh: Vec<usize> = g.neighbors(v).to_vec();
    let mut rows: Vec<Vec<usize>> = Vec::with_capacity(p.n_facets() + 1);
    for f in p.facets() {
        let mut row: Vec<usize> = f.iter().filter(|&&u| u != v).map(|&u| renumber(u)).collect();
        if f.binary_search(&v).is_ok() {
            for (k, &w) in fresh.iter().enumerate() {
                if f.binary_search(&w).is_ok() {
                    row.push(n - 1 + k);
                }
            }
        }
        rows.push(row);
    }
    rows.push((n - 1..n - 1 + fresh.len()).collect());
    Ok(IncidenceMatrix::from_sorted_rows_unchecked(n - 1 + fresh.len(), rows))
}
