//! Exact dense linear algebra: rational inversion, definiteness test and
//! fraction-free (Bareiss) elimination over any exact-division ring.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{Int, Rational};

/// Commutative ring with an exact-division oracle, enough for Bareiss.
pub trait ExactRing: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_ring_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / other`, where the caller guarantees divisibility.
    fn div_exact(&self, other: &Self) -> Self;
}

impl ExactRing for BigInt {
    fn zero_like(&self) -> Self {
        Zero::zero()
    }
    fn one_like(&self) -> Self {
        One::one()
    }
    fn is_ring_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Self {
        debug_assert!(Zero::is_zero(&(self % other)));
        self / other
    }
}

/// Result of a Bareiss sweep.
pub struct Elimination<T> {
    pub rank: usize,
    /// Determinant when the matrix is square and of full rank, else zero.
    pub det: T,
}

/// Fraction-free Gaussian elimination with row pivoting. Consumes the matrix,
/// which must have at least one entry.
pub fn bareiss<T: ExactRing>(mut m: Vec<Vec<T>>) -> Elimination<T> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    assert!(nrows > 0 && ncols > 0, "bareiss needs a nonempty matrix");
    let zero = m[0][0].zero_like();
    let mut prev = m[0][0].one_like();
    let mut rank = 0;
    let mut negate = false;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&r| !m[r][col].is_ring_zero()) else {
            continue;
        };
        if p != rank {
            m.swap(p, rank);
            negate = !negate;
        }
        let (head, tail) = m.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let pivot = pivot_row[col].clone();
        for row in tail.iter_mut() {
            let factor = row[col].clone();
            for j in col + 1..ncols {
                let v = pivot.mul(&row[j]).sub(&factor.mul(&pivot_row[j]));
                row[j] = v.div_exact(&prev);
            }
            row[col] = zero.clone();
        }
        prev = pivot;
        rank += 1;
    }
    let det = if nrows == ncols && rank == nrows {
        if negate {
            prev.neg()
        } else {
            prev
        }
    } else {
        zero
    };
    Elimination { rank, det }
}

/// Rank of a rational matrix; each row is scaled to integers first.
pub fn rational_rank(rows: &[Vec<Rational>]) -> usize {
    let int_rows: Vec<Vec<Int>> = rows
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .map(|r| integer_row(r))
        .collect();
    if int_rows.is_empty() {
        return 0;
    }
    bareiss(int_rows).rank
}

/// Row echelon basis built one row at a time; suited to tall systems whose
/// rank is bounded by a small column count.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the basis and keeps it if independent.
    pub fn insert(&mut self, mut row: Vec<Rational>) -> bool {
        for (pivot, b) in &self.rows {
            if !row[*pivot].is_zero() {
                let f = row[*pivot].clone();
                for (x, y) in row.iter_mut().zip(b) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        let Some(pivot) = row.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = row[pivot].recip();
        for x in row.iter_mut() {
            *x *= &inv;
        }
        self.rows.push((pivot, row));
        true
    }
}

/// Multiplies a rational row by the lcm of its denominators.
pub fn integer_row(row: &[Rational]) -> Vec<Int> {
    let den = row.iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&den / x.denom())).collect()
}

pub fn identity(n: usize) -> Vec<Vec<Rational>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect()
}

/// Gauss-Jordan inverse; `None` when singular.
pub fn inverse(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut inv = identity(n);
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(p, col);
        inv.swap(p, col);
        let piv = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &piv;
            inv[col][j] = &inv[col][j] / &piv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let t = &f * &a[col][j];
                a[r][j] -= t;
                let t = &f * &inv[col][j];
                inv[r][j] -= t;
            }
        }
    }
    Some(inv)
}

/// Symmetric negative definiteness by the signs of the leading principal
/// minors, `(-1)^k det_k > 0`. Without row exchanges the Bareiss pivots are
/// exactly those minors, so one sweep suffices.
pub fn is_negative_definite(m: &[Vec<Int>]) -> bool {
    let n = m.len();
    let mut a: Vec<Vec<Int>> = m.to_vec();
    let mut prev = Int::one();
    for k in 0..n {
        let minor = a[k][k].clone();
        let ok = if k % 2 == 0 { minor.is_negative() } else { minor.is_positive() };
        if !ok {
            return false;
        }
        let (head, tail) = a.split_at_mut(k + 1);
        let pivot_row = &head[k];
        for row in tail.iter_mut() {
            let factor = row[k].clone();
            for j in k + 1..n {
                row[j] = (&minor * &row[j] - &factor * &pivot_row[j]) / &prev;
            }
            row[k] = Int::zero();
        }
        prev = minor;
    }
    true
}

pub fn mat_vec(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}
