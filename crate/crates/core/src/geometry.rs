//! Affine isomorphism and congruence of finite rational point sets.
//!
//! Fix a maximal affinely independent set `S` of the first point set. An
//! affine map is determined by the images of `S`, so the search runs over
//! ordered tuples `T` of the second set and accepts the first whose induced
//! map sends the first set onto the second.
//!
//! Two necessary conditions prune the tuples without losing solutions:
//! the affine-invariant inner product obtained by whitening with the second
//! moment matrix of each set, and for congruence the squared Euclidean
//! distances. Orthogonality is tested through squared distances so all
//! arithmetic stays rational.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::certificate::is_permutation;
use crate::error::Error;
use crate::rational::{
    dot, invert, mat_mul, mat_vec, solve_in_span, squared_distance, sub, EchelonBasis, Rational,
};

/// A finite set of distinct points with rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    dim: usize,
    points: Vec<Vec<Rational>>,
}

impl PointSet {
    pub fn new(dim: usize, points: Vec<Vec<Rational>>) -> Result<Self, Error> {
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::AmbientMismatch(dim, p.len()));
        }
        let mut seen = BTreeMap::new();
        for (i, p) in points.iter().enumerate() {
            if seen.insert(p, i).is_some() {
                return Err(Error::DuplicatePoint(i));
            }
        }
        Ok(Self { dim, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &[Rational] {
        &self.points[i]
    }

    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }

    /// Dimension of the affine hull, `-1` for the empty set.
    pub fn affine_dimension(&self) -> isize {
        greedy_affine_basis(&self.points).len() as isize - 1
    }
}

/// An affine map `x ↦ A x + b` and the vertex bijection it induces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMapCertificate {
    pub linear: Vec<Vec<Rational>>,
    pub translation: Vec<Rational>,
    pub vertex_map: Vec<usize>,
}

impl AffineMapCertificate {
    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        mat_vec(&self.linear, x)
            .into_iter()
            .zip(&self.translation)
            .map(|(a, b)| a + b)
            .collect()
    }

    /// `A p + b = q[vertex_map[p]]` for every point, with `vertex_map` a
    /// bijection.
    pub fn verify(&self, vp: &PointSet, vq: &PointSet) -> bool {
        let d = vp.dim();
        vq.dim() == d
            && self.linear.len() == d
            && self.linear.iter().all(|r| r.len() == d)
            && self.translation.len() == d
            && is_permutation(&self.vertex_map, vq.len())
            && vp.len() == vq.len()
            && vp
                .points()
                .iter()
                .zip(&self.vertex_map)
                .all(|(p, &j)| self.apply(p) == vq.point(j))
    }

    /// [`verify`](Self::verify) plus preservation of every pairwise squared
    /// distance, i.e. the map is an isometry on the affine hull.
    pub fn verify_congruence(&self, vp: &PointSet, vq: &PointSet) -> bool {
        self.verify(vp, vq)
            && (0..vp.len()).all(|a| {
                (a + 1..vp.len()).all(|b| {
                    squared_distance(vp.point(a), vp.point(b))
                        == squared_distance(
                            vq.point(self.vertex_map[a]),
                            vq.point(self.vertex_map[b]),
                        )
                })
            })
    }
}

/// Searches for an affine map sending `vp` bijectively onto `vq`.
pub fn affine_iso(vp: &PointSet, vq: &PointSet) -> Result<Option<AffineMapCertificate>, Error> {
    search(vp, vq, false)
}

/// Searches for an affine map that also preserves all squared distances.
pub fn congruent(vp: &PointSet, vq: &PointSet) -> Result<Option<AffineMapCertificate>, Error> {
    search(vp, vq, true)
}

/// Projective isomorphism is not implemented.
pub fn projective_iso(_vp: &PointSet, _vq: &PointSet) -> Result<Option<AffineMapCertificate>, Error> {
    Err(Error::Unsupported)
}

/// Indices of a maximal affinely independent subset, chosen greedily by
/// index.
fn greedy_affine_basis(points: &[Vec<Rational>]) -> Vec<usize> {
    let Some(first) = points.first() else {
        return Vec::new();
    };
    let mut basis = EchelonBasis::default();
    let mut out = vec![0];
    for (i, p) in points.iter().enumerate().skip(1) {
        if basis.insert(&sub(p, first)) {
            out.push(i);
        }
    }
    out
}

/// Coordinates of every point in the frame `s_0; s_1 - s_0, …`.
fn frame_coordinates(points: &[Vec<Rational>], basis: &[usize]) -> Vec<Vec<Rational>> {
    let origin = &points[basis[0]];
    let dirs: Vec<Vec<Rational>> = basis[1..].iter().map(|&i| sub(&points[i], origin)).collect();
    points
        .iter()
        .map(|p| solve_in_span(&dirs, &sub(p, origin)).expect("point lies in the affine hull"))
        .collect()
}

/// Inner products `⟨y_a - ȳ, Σ⁻¹ (y_b - ȳ)⟩` with `Σ` the second moment
/// matrix about the centroid. Invariant under affine bijections of the set.
fn whitened_gram(coords: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = coords.len();
    let r = coords.first().map_or(0, Vec::len);
    if r == 0 {
        return vec![vec![Rational::zero(); n]; n];
    }
    let count = Rational::from_integer(n.into());
    let centroid: Vec<Rational> = (0..r)
        .map(|k| coords.iter().fold(Rational::zero(), |acc, y| acc + &y[k]) / &count)
        .collect();
    let centered: Vec<Vec<Rational>> = coords.iter().map(|y| sub(y, &centroid)).collect();
    let mut moment = vec![vec![Rational::zero(); r]; r];
    for y in &centered {
        for i in 0..r {
            for j in 0..r {
                moment[i][j] += &y[i] * &y[j];
            }
        }
    }
    let inv = invert(&moment).expect("points span their affine hull");
    let whitened: Vec<Vec<Rational>> = centered.iter().map(|y| mat_vec(&inv, y)).collect();
    centered
        .iter()
        .map(|a| whitened.iter().map(|b| dot(a, b)).collect())
        .collect()
}

fn distance_matrix(points: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    points
        .iter()
        .map(|a| points.iter().map(|b| squared_distance(a, b)).collect())
        .collect()
}

/// Per-point invariant: sorted rows of each invariant matrix.
fn fingerprints(matrices: &[&Vec<Vec<Rational>>], n: usize) -> Vec<Vec<Rational>> {
    (0..n)
        .map(|i| {
            let mut fp = Vec::new();
            for m in matrices {
                fp.push(m[i][i].clone());
                let mut row = m[i].clone();
                row.sort();
                fp.extend(row);
            }
            fp
        })
        .collect()
}

struct Search<'a> {
    vp: &'a PointSet,
    vq: &'a PointSet,
    basis: Vec<usize>,
    barycentric: Vec<Vec<Rational>>,
    invariants_p: Vec<Vec<Vec<Rational>>>,
    invariants_q: Vec<Vec<Vec<Rational>>>,
    fp_p: Vec<Vec<Rational>>,
    fp_q: Vec<Vec<Rational>>,
    index_q: BTreeMap<&'a [Rational], usize>,
}

fn search(
    vp: &PointSet,
    vq: &PointSet,
    congruence: bool,
) -> Result<Option<AffineMapCertificate>, Error> {
    if vp.dim() != vq.dim() {
        return Err(Error::AmbientMismatch(vp.dim(), vq.dim()));
    }
    if vp.len() != vq.len() {
        return Ok(None);
    }
    let dim = vp.dim();
    if vp.is_empty() {
        return Ok(Some(AffineMapCertificate {
            linear: identity(dim),
            translation: vec![Rational::zero(); dim],
            vertex_map: Vec::new(),
        }));
    }
    let basis = greedy_affine_basis(vp.points());
    let basis_q = greedy_affine_basis(vq.points());
    if basis.len() != basis_q.len() {
        return Ok(None);
    }
    let yp = frame_coordinates(vp.points(), &basis);
    let yq = frame_coordinates(vq.points(), &basis_q);
    let mut invariants_p = vec![whitened_gram(&yp)];
    let mut invariants_q = vec![whitened_gram(&yq)];
    if congruence {
        invariants_p.push(distance_matrix(vp.points()));
        invariants_q.push(distance_matrix(vq.points()));
    }
    let fp_p = fingerprints(&invariants_p.iter().collect::<Vec<_>>(), vp.len());
    let fp_q = fingerprints(&invariants_q.iter().collect::<Vec<_>>(), vq.len());
    let (mut sp, mut sq) = (fp_p.clone(), fp_q.clone());
    sp.sort();
    sq.sort();
    if sp != sq {
        return Ok(None);
    }
    let barycentric = yp
        .iter()
        .map(|y| {
            let mut l = Vec::with_capacity(y.len() + 1);
            l.push(y.iter().fold(Rational::one(), |acc, t| acc - t));
            l.extend(y.iter().cloned());
            l
        })
        .collect();
    let s = Search {
        vp,
        vq,
        basis,
        barycentric,
        invariants_p,
        invariants_q,
        fp_p,
        fp_q,
        index_q: vq.points().iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect(),
    };
    let mut chosen = Vec::with_capacity(s.basis.len());
    let mut used = vec![false; vq.len()];
    Ok(s.extend(&mut chosen, &mut used))
}

impl Search<'_> {
    fn extend(&self, chosen: &mut Vec<usize>, used: &mut [bool]) -> Option<AffineMapCertificate> {
        let pos = chosen.len();
        if pos == self.basis.len() {
            return self.complete(chosen);
        }
        let s = self.basis[pos];
        for t in 0..self.vq.len() {
            if used[t] || self.fp_p[s] != self.fp_q[t] {
                continue;
            }
            let consistent = chosen.iter().enumerate().all(|(k, &tk)| {
                let sk = self.basis[k];
                self.invariants_p
                    .iter()
                    .zip(&self.invariants_q)
                    .all(|(mp, mq)| mp[s][sk] == mq[t][tk])
            });
            if !consistent {
                continue;
            }
            chosen.push(t);
            used[t] = true;
            let found = self.extend(chosen, used);
            used[t] = false;
            chosen.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }

    /// Maps every point through the affine map fixed by `S → T` and checks
    /// that the result is a bijection onto the second set.
    fn complete(&self, targets: &[usize]) -> Option<AffineMapCertificate> {
        let dim = self.vp.dim();
        let mut vertex_map = Vec::with_capacity(self.vp.len());
        let mut hit = vec![false; self.vq.len()];
        for lambda in &self.barycentric {
            let mut img = vec![Rational::zero(); dim];
            for (l, &t) in lambda.iter().zip(targets) {
                if l.is_zero() {
                    continue;
                }
                for (x, y) in img.iter_mut().zip(self.vq.point(t)) {
                    *x += l * y;
                }
            }
            let &j = self.index_q.get(img.as_slice())?;
            if core::mem::replace(&mut hit[j], true) {
                return None;
            }
            vertex_map.push(j);
        }
        let (linear, translation) = self.ambient_map(targets);
        let cert = AffineMapCertificate {
            linear,
            translation,
            vertex_map,
        };
        debug_assert!(cert.verify(self.vp, self.vq));
        Some(cert)
    }

    /// Extends the map on the affine hulls to all of space: hull directions
    /// are completed to a basis with standard vectors on both sides.
    fn ambient_map(&self, targets: &[usize]) -> (Vec<Vec<Rational>>, Vec<Rational>) {
        let dim = self.vp.dim();
        let s0 = self.vp.point(self.basis[0]);
        let t0 = self.vq.point(targets[0]);
        let src: Vec<Vec<Rational>> =
            self.basis[1..].iter().map(|&i| sub(self.vp.point(i), s0)).collect();
        let dst: Vec<Vec<Rational>> =
            targets[1..].iter().map(|&i| sub(self.vq.point(i), t0)).collect();
        let m = columns_to_matrix(&complete_basis(src, dim));
        let n = columns_to_matrix(&complete_basis(dst, dim));
        let linear = mat_mul(&n, &invert(&m).expect("completed basis"));
        let translation = sub(t0, &mat_vec(&linear, s0));
        (linear, translation)
    }
}

fn complete_basis(mut vectors: Vec<Vec<Rational>>, dim: usize) -> Vec<Vec<Rational>> {
    let mut echelon = EchelonBasis::default();
    for v in &vectors {
        echelon.insert(v);
    }
    for k in 0..dim {
        if echelon.rank() == dim {
            break;
        }
        let e: Vec<Rational> = (0..dim)
            .map(|i| if i == k { Rational::one() } else { Rational::zero() })
            .collect();
        if echelon.insert(&e) {
            vectors.push(e);
        }
    }
    vectors
}

fn columns_to_matrix(cols: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let dim = cols.len();
    (0..dim).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect()
}

fn identity(dim: usize) -> Vec<Vec<Rational>> {
    (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect()
}
