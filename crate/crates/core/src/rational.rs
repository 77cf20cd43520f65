//! Exact rational arithmetic helpers.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;

/// `n / d` as an exact rational.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn squared_distance(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| {
        let t = x - y;
        acc + &t * &t
    })
}

/// Incrementally maintained row-echelon basis of a subspace.
#[derive(Clone, Debug, Default)]
pub(crate) struct EchelonBasis {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl EchelonBasis {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` if it is independent of the current basis; returns whether
    /// it was added.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut r = v.to_vec();
        for (pivot, row) in &self.rows {
            if !r[*pivot].is_zero() {
                let f = r[*pivot].clone();
                for (x, y) in r.iter_mut().zip(row) {
                    *x -= &f * y;
                }
            }
        }
        match r.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(p) => {
                let inv = r[p].recip();
                for x in r.iter_mut() {
                    *x *= &inv;
                }
                // Keep rows fully reduced so later inserts stay consistent.
                for (_, row) in self.rows.iter_mut() {
                    if !row[p].is_zero() {
                        let f = row[p].clone();
                        for (x, y) in row.iter_mut().zip(&r) {
                            *x -= &f * y;
                        }
                    }
                }
                self.rows.push((p, r));
                true
            }
        }
    }
}

/// Solves `Σ y_i · columns[i] = target` for linearly independent columns.
/// Returns `None` if `target` is outside their span.
pub(crate) fn solve_in_span(columns: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let dim = target.len();
    let c = columns.len();
    // Augmented dim × (c + 1) system.
    let mut m: Vec<Vec<Rational>> = (0..dim)
        .map(|r| {
            let mut row: Vec<Rational> = columns.iter().map(|col| col[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(c);
    for col in 0..c {
        let sel = (pivot_row..dim).find(|&r| !m[r][col].is_zero())?;
        m.swap(pivot_row, sel);
        let inv = m[pivot_row][col].recip();
        for x in m[pivot_row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..dim {
            if r != pivot_row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let (src, dst) = if r < pivot_row {
                    let (a, b) = m.split_at_mut(pivot_row);
                    (&b[0], &mut a[r])
                } else {
                    let (a, b) = m.split_at_mut(r);
                    (&a[pivot_row], &mut b[0])
                };
                for (x, y) in dst.iter_mut().zip(src.iter()) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    if m[pivot_row..].iter().any(|row| !row[c].is_zero()) {
        return None;
    }
    Some(pivots.iter().map(|&r| m[r][c].clone()).collect())
}

/// Inverse of a square matrix, `None` if singular.
pub(crate) fn invert(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let sel = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, sel);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        let pivot = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub(crate) fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(Rational::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

pub(crate) fn mat_vec(a: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    a.iter().map(|row| dot(row, v)).collect()
}
