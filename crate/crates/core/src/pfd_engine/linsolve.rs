//! Fraction-free (Bareiss) elimination for square rational systems.

use num_integer::Integer as _;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_arith::{Integer, Rational};

/// Multiplies a row of rationals by the lcm of its denominators.
fn integer_row(row: &[Rational]) -> Vec<Integer> {
    let l = row.iter().fold(Integer::one(), |acc, q| acc.lcm(q.denom()));
    row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
}

/// Solves `a x = b` exactly. Errors with `Internal` when `a` is singular.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Result<Vec<Rational>> {
    let n = a.len();
    if b.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(Error::Internal("linear system is not square".into()));
    }
    let mut m: Vec<Vec<Integer>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            integer_row(&r)
        })
        .collect();

    let mut prev = Integer::one();
    for k in 0..n {
        let p = (k..n)
            .find(|&i| !m[i][k].is_zero())
            .ok_or_else(|| Error::Internal("singular linear system".into()))?;
        m.swap(k, p);
        let (top, rest) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            let factor = row[k].clone();
            for j in k + 1..=n {
                row[j] = (&row[j] * &pivot_row[k] - &factor * &pivot_row[j]) / &prev;
            }
            row[k] = Integer::zero();
        }
        prev = m[k][k].clone();
    }

    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from_integer(m[i][n].clone());
        for j in i + 1..n {
            acc -= Rational::from_integer(m[i][j].clone()) * &x[j];
        }
        x[i] = acc.checked_div(&Rational::from_integer(m[i][i].clone()))?;
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    #[test]
    fn small_system_with_pivoting() {
        // 0x + y = 2, x + y/2 = 3
        let a = vec![vec![q(0, 1), q(1, 1)], vec![q(1, 1), q(1, 2)]];
        let x = solve(&a, &[q(2, 1), q(3, 1)]).unwrap();
        assert_eq!(x, vec![q(2, 1), q(2, 1)]);
    }

    #[test]
    fn hilbert_matrix_exact() {
        let n = 6;
        let a: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| q(1, (i + j + 1) as i64)).collect())
            .collect();
        let want: Vec<Rational> = (0..n).map(|i| q(i as i64 - 2, 3)).collect();
        let b: Vec<Rational> = a
            .iter()
            .map(|row| row.iter().zip(&want).map(|(c, x)| c * x).sum())
            .collect();
        assert_eq!(solve(&a, &b).unwrap(), want);
    }

    #[test]
    fn singular_is_internal_error() {
        let a = vec![vec![q(1, 1), q(2, 1)], vec![q(2, 1), q(4, 1)]];
        assert!(matches!(solve(&a, &[q(1, 1), q(1, 1)]), Err(Error::Internal(_))));
    }
}
