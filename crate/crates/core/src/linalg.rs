//! Small exact linear algebra: rational Gaussian elimination and
//! fraction-free (Bareiss) rank over the integers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn rational(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Solves the square system `matrix * x = rhs` exactly. Returns `None` when
/// the matrix is singular.
pub fn solve(matrix: &[Vec<BigRational>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = matrix.len();
    assert_eq!(rhs.len(), n, "rhs length must match row count");
    let mut aug: Vec<Vec<BigRational>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            assert_eq!(row.len(), n, "matrix must be square");
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();

    for col in 0..n {
        let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let inv = BigRational::one() / aug[col][col].clone();
        for entry in aug[col][col..].iter_mut() {
            *entry *= &inv;
        }
        for r in 0..n {
            if r == col || aug[r][col].is_zero() {
                continue;
            }
            let factor = aug[r][col].clone();
            for c in col..=n {
                let delta = &factor * &aug[col][c];
                aug[r][c] -= delta;
            }
        }
    }
    Some(aug.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

/// Like [`solve`] for small integer systems.
pub fn solve_i64(matrix: &[Vec<i64>], rhs: &[i64]) -> Option<Vec<BigRational>> {
    let m: Vec<Vec<BigRational>> = matrix
        .iter()
        .map(|row| row.iter().map(|&v| rational(v)).collect())
        .collect();
    let b: Vec<BigRational> = rhs.iter().map(|&v| rational(v)).collect();
    solve(&m, &b)
}

/// Rank of an integer matrix by fraction-free elimination. Every
/// intermediate entry is a minor of the input, so no rationals appear.
pub fn rank(matrix: &[Vec<i64>]) -> usize {
    let rows = matrix.len();
    if rows == 0 {
        return 0;
    }
    let cols = matrix[0].len();
    let mut a: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = (&a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c]) / &prev;
                a[r][c] = v;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_system() {
        let x = solve_i64(&[vec![2, 1], vec![1, 3]], &[3, 5]).unwrap();
        assert_eq!(x, vec![BigRational::new(4.into(), 5.into()), BigRational::new(7.into(), 5.into())]);
    }

    #[test]
    fn singular_system_has_no_solution() {
        assert!(solve_i64(&[vec![1, 2], vec![2, 4]], &[1, 2]).is_none());
    }

    #[test]
    fn bareiss_rank() {
        assert_eq!(rank(&[vec![1, 0], vec![1, 1], vec![1, 2], vec![1, 3]]), 2);
        assert_eq!(rank(&[vec![1, 2, 3], vec![2, 4, 6]]), 1);
        assert_eq!(rank(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(rank(&[vec![0, 1, 2], vec![1, 0, 3], vec![1, 1, 5]]), 2);
    }
}
