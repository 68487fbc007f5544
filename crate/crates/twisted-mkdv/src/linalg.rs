//! Exact dense linear algebra over a coefficient scalar.
//!
//! Gaussian elimination with pivoting on invertible entries.  Over the
//! rationals every nonzero entry is invertible; over dual numbers a column
//! whose remaining entries are all nilpotent raises `Error::Field`.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Row-reduces `m` in place and returns the pivot columns.
pub fn rref<F: Scalar>(m: &mut [Vec<F>]) -> Result<Vec<usize>> {
    let rows = m.len();
    if rows == 0 {
        return Ok(vec![]);
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // find an invertible pivot in column c at or below row r
        let mut pivot = None;
        let mut saw_nonzero = false;
        for i in r..rows {
            if !m[i][c].is_zero() {
                saw_nonzero = true;
                if m[i][c].inv().is_some() {
                    pivot = Some(i);
                    break;
                }
            }
        }
        let Some(p) = pivot else {
            if saw_nonzero {
                return Err(Error::Field);
            }
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().unwrap();
        for j in c..cols {
            m[r][j] = m[r][j].clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in c..cols {
                    m[i][j] = m[i][j].clone() - factor.clone() * m[r][j].clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Ok(pivots)
}

/// Outcome of an exact linear solve.
pub struct Solution<F> {
    /// A solution vector (free variables set to zero), if consistent.
    pub values: Option<Vec<F>>,
    /// Whether the solution is unique.
    pub unique: bool,
}

/// Solves `A x = b` exactly. `a` is a list of rows.
pub fn solve<F: Scalar>(a: &[Vec<F>], b: &[F]) -> Result<Solution<F>> {
    assert_eq!(a.len(), b.len(), "row/rhs mismatch");
    let cols = a.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut v = row.clone();
            v.push(rhs.clone());
            v
        })
        .collect();
    let pivots = rref(&mut aug)?;
    // inconsistent iff a pivot landed in the rhs column
    if pivots.contains(&cols) {
        return Ok(Solution {
            values: None,
            unique: false,
        });
    }
    let mut x = vec![F::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug[i][cols].clone();
    }
    Ok(Solution {
        values: Some(x),
        unique: pivots.len() == cols,
    })
}

/// A basis of the right kernel of `A`.
pub fn nullspace<F: Scalar>(a: &[Vec<F>]) -> Result<Vec<Vec<F>>> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<F>> = a.to_vec();
    let pivots = rref(&mut m)?;
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &fc in &free {
        let mut v = vec![F::zero(); cols];
        v[fc] = F::one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[i][fc].clone();
        }
        basis.push(v);
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat_int, Rat};

    fn row(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn solve_unique() {
        let a = vec![row(&[2, 1]), row(&[1, -1])];
        let b = row(&[5, 1]);
        let s = solve(&a, &b).unwrap();
        assert!(s.unique);
        assert_eq!(s.values.unwrap(), row(&[2, 1]));
    }

    #[test]
    fn solve_inconsistent() {
        let a = vec![row(&[1, 1]), row(&[2, 2])];
        let b = row(&[1, 3]);
        let s = solve(&a, &b).unwrap();
        assert!(s.values.is_none());
    }

    #[test]
    fn nullspace_of_rank_one() {
        let a = vec![row(&[1, 2, 3])];
        let ns = nullspace(&a).unwrap();
        assert_eq!(ns.len(), 2);
        for v in ns {
            let dot: Rat = v
                .iter()
                .zip(&row(&[1, 2, 3]))
                .map(|(x, y)| x.clone() * y.clone())
                .sum();
            assert!(num_traits::Zero::is_zero(&dot));
        }
    }
}
