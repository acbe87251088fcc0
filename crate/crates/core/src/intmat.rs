//! Exact rank of integer matrices by fraction-free elimination.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Rank over Q of an integer matrix, computed by Bareiss-style fraction-free
/// elimination: every intermediate entry is an exact minor, and each division
/// by the previous pivot is exact. Rows need not be square or full rank.
pub fn rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    debug_assert!(m.iter().all(|r| r.len() == cols), "ragged matrix");
    let mut rank = 0;
    let mut prev = BigInt::one();
    let mut col = 0;
    while rank < rows && col < cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            col += 1;
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for r in rank + 1..rows {
            if m[r][col].is_zero() && pivot.is_one() && prev.is_one() {
                // fast path: nothing to eliminate, no rescale needed
                continue;
            }
            for c in col + 1..cols {
                let t = &m[r][c] * &pivot - &m[r][col] * &m[rank][c];
                let (quot, rem) = num_integer::Integer::div_rem(&t, &prev);
                debug_assert!(rem.is_zero(), "Bareiss division is exact");
                m[r][c] = quot;
            }
            m[r][col] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
        col += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn small_ranks() {
        assert_eq!(rank(vec![]), 0);
        assert_eq!(rank(mat(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(mat(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(mat(&[&[1, 2], &[3, 4]])), 2);
        assert_eq!(rank(mat(&[&[0, 1, 0], &[0, 0, 2], &[0, 3, 5]])), 2);
        // wide and tall shapes
        assert_eq!(rank(mat(&[&[2, 0, 0, 1]])), 1);
        assert_eq!(rank(mat(&[&[1], &[2], &[3]])), 1);
    }

    #[test]
    fn rank_matches_rational_elimination() {
        use num_rational::BigRational;
        fn rational_rank(m: &[Vec<BigInt>]) -> usize {
            let mut m: Vec<Vec<BigRational>> = m
                .iter()
                .map(|r| r.iter().map(|x| BigRational::from(x.clone())).collect())
                .collect();
            let rows = m.len();
            if rows == 0 {
                return 0;
            }
            let cols = m[0].len();
            let mut rank = 0;
            for col in 0..cols {
                let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
                    continue;
                };
                m.swap(rank, p);
                let pivot = m[rank][col].clone();
                for r in 0..rows {
                    if r != rank && !m[r][col].is_zero() {
                        let f = &m[r][col] / &pivot;
                        let scaled: Vec<BigRational> =
                            m[rank].iter().map(|x| x * &f).collect();
                        for (entry, s) in m[r].iter_mut().zip(scaled) {
                            *entry -= s;
                        }
                    }
                }
                rank += 1;
                if rank == rows {
                    break;
                }
            }
            rank
        }

        // deterministic pseudorandom small matrices
        let mut state: u64 = 0x9e3779b97f4a7c15;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..60 {
            let r = (next() % 5 + 1) as usize;
            let c = (next() % 6 + 1) as usize;
            let m: Vec<Vec<BigInt>> = (0..r)
                .map(|_| (0..c).map(|_| BigInt::from(next() % 7) - 3).collect())
                .collect();
            assert_eq!(rank(m.clone()), rational_rank(&m));
        }
    }
}
