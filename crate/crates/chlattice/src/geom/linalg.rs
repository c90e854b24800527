//! Small exact linear algebra over rationals: rank and system solving by
//! Gaussian elimination. Everything here works on tiny matrices (at most
//! 4x4 in practice), so no pivoting strategy beyond "first nonzero".

use super::Point;
use crate::rational::Rational;
use num_traits::Zero;

/// Row rank of a rational matrix.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut col = 0;
    while rank < rows.len() && col < ncols {
        let pivot = (rank..rows.len()).find(|&r| !rows[r][col].is_zero());
        let Some(p) = pivot else {
            col += 1;
            continue;
        };
        rows.swap(rank, p);
        let pv = rows[rank][col].clone();
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let f = &rows[r][col] / &pv;
            for c in col..ncols {
                let v = &rows[rank][c] * &f;
                rows[r][c] = &rows[r][c] - v;
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}

/// Rank of the difference vectors of a point set (dimension of its affine
/// hull).
pub fn affine_rank(points: &[Point]) -> usize {
    match points.split_first() {
        None => 0,
        Some((p0, rest)) => rank(rest.iter().map(|p| p.sub(p0)).collect()),
    }
}

/// Solves `A x = b` exactly. Returns the unique solution, or `None` when
/// the system is inconsistent or underdetermined.
pub fn solve_exact(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(a.len(), b.len());
    let nrows = a.len();
    let ncols = a.first().map_or(0, |r| r.len());
    // augmented matrix
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut prow = 0;
    for col in 0..ncols {
        let Some(p) = (prow..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(prow, p);
        let pv = m[prow][col].clone();
        for r in 0..nrows {
            if r == prow || m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &pv;
            for c in col..=ncols {
                let v = &m[prow][c] * &f;
                m[r][c] = &m[r][c] - v;
            }
        }
        pivots.push((prow, col));
        prow += 1;
        if prow == nrows {
            break;
        }
    }
    // inconsistent: a zero row with nonzero rhs
    for r in prow..nrows {
        if !m[r][ncols].is_zero() {
            return None;
        }
    }
    // underdetermined: fewer pivots than unknowns
    if pivots.len() < ncols {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for &(r, c) in &pivots {
        x[c] = &m[r][ncols] / &m[r][c];
    }
    Some(x)
}
