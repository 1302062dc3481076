//! Smith normal form over `BigInt`, tracking the column transform.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::Int;

pub struct Smith {
    /// Diagonal of `D`, nonnegative, each dividing the next.
    pub diagonal: Vec<Int>,
    /// Unimodular `V` with `U * A * V = D` for some unimodular `U`.
    pub v: Vec<Vec<Int>>,
}

/// Smith normal form of a square integer matrix.
pub fn smith_normal_form(a: &[Vec<Int>]) -> Smith {
    let n = a.len();
    let mut m: Vec<Vec<Int>> = a.to_vec();
    let mut v: Vec<Vec<Int>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Int::one() } else { Int::zero() }).collect())
        .collect();

    for t in 0..n {
        loop {
            // smallest nonzero |entry| in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if !m[i][j].is_zero()
                        && best.map_or(true, |(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            m.swap(t, pi);
            swap_cols(&mut m, t, pj);
            swap_cols(&mut v, t, pj);

            let mut dirty = false;
            for i in t + 1..n {
                let q = m[i][t].div_floor(&m[t][t]);
                if !q.is_zero() {
                    let pivot_row = m[t].clone();
                    for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                        *x -= &q * p;
                    }
                }
                dirty |= !m[i][t].is_zero();
            }
            for j in t + 1..n {
                let q = m[t][j].div_floor(&m[t][t]);
                if !q.is_zero() {
                    col_axpy(&mut m, j, t, &q);
                    col_axpy(&mut v, j, t, &q);
                }
                dirty |= !m[t][j].is_zero();
            }
            if dirty {
                continue;
            }
            // divisibility of the remaining block by the pivot
            let bad = (t + 1..n).find(|&i| (t + 1..n).any(|j| !(&m[i][j] % &m[t][t]).is_zero()));
            match bad {
                Some(i) => {
                    let row = m[i].clone();
                    for (x, r) in m[t].iter_mut().zip(&row) {
                        *x += r;
                    }
                }
                None => break,
            }
        }
        if m[t][t].is_negative() {
            for x in m[t].iter_mut() {
                *x = -&*x;
            }
        }
    }
    Smith {
        diagonal: (0..n).map(|i| m[i][i].clone()).collect(),
        v,
    }
}

fn swap_cols(m: &mut [Vec<Int>], a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }
}

/// column `dst -= q * column src`
fn col_axpy(m: &mut [Vec<Int>], dst: usize, src: usize, q: &Int) {
    for row in m.iter_mut() {
        let t = q * &row[src];
        row[dst] -= t;
    }
}

/// Order of the class of the `i`-th basis vector in `Z^n / rowspace(A)`,
/// `None` if infinite.
pub fn basis_order(s: &Smith, i: usize) -> Option<Int> {
    let mut order = Int::one();
    for (k, d) in s.diagonal.iter().enumerate() {
        let c = &s.v[i][k];
        if d.is_zero() {
            if !c.is_zero() {
                return None;
            }
            continue;
        }
        order = order.lcm(&(d / d.gcd(c)));
    }
    Some(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::linalg::bareiss;
    use proptest::prelude::*;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<Int>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    fn mat_mul(a: &[Vec<Int>], b: &[Vec<Int>]) -> Vec<Vec<Int>> {
        let n = b[0].len();
        a.iter()
            .map(|r| (0..n).map(|j| r.iter().zip(b).map(|(x, br)| x * &br[j]).sum()).collect())
            .collect()
    }

    #[test]
    fn small_examples() {
        let s = smith_normal_form(&ints(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(s.diagonal, vec![int(2), int(6), int(12)]);

        let s = smith_normal_form(&ints(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.diagonal, vec![int(1), int(6)]);
        // Z/2 + Z/3: both generators have their own order
        assert_eq!(basis_order(&s, 0), Some(int(2)));
        assert_eq!(basis_order(&s, 1), Some(int(3)));
    }

    proptest! {
        #[test]
        fn diagonal_divides_and_v_is_unimodular(
            entries in proptest::collection::vec(-9i64..10, 16)
        ) {
            let a: Vec<Vec<Int>> = entries.chunks(4).map(|r| r.iter().map(|&x| int(x)).collect()).collect();
            let s = smith_normal_form(&a);
            for w in s.diagonal.windows(2) {
                if !w[1].is_zero() {
                    prop_assert!((&w[1] % &w[0]).is_zero());
                }
            }
            let det_v = bareiss(s.v.clone()).det;
            prop_assert_eq!(det_v.abs(), int(1));
            let prod: Int = s.diagonal.iter().product();
            prop_assert_eq!(prod, bareiss(a.clone()).det.abs());
            // columns of A*V generate the same lattice as those of D up to U
            let av = mat_mul(&a, &s.v);
            let rank_av = bareiss(av).rank;
            prop_assert_eq!(rank_av, s.diagonal.iter().filter(|d| !d.is_zero()).count());
        }
    }
}
