//! Exact Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use crate::grassmann::Rational;

/// Reduced row echelon form of `rows`, returned together with the pivot
/// column of each nonzero row. Zero rows are dropped.
pub fn rref(rows: &[Vec<Rational>]) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut a: Vec<Vec<Rational>> = rows.to_vec();
    let width = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        if r == a.len() {
            break;
        }
        let Some(found) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, found);
        let inv = a[r][col].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i == r || a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            let pivot_row = a[r].clone();
            for (x, p) in a[i].iter_mut().zip(&pivot_row).skip(col) {
                *x -= &f * p;
            }
        }
        pivots.push(col);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    rref(rows).1.len()
}

/// Basis of `{x : A x = 0}` for the `m x n` matrix `A` given by rows, with
/// `n = width`. One basis vector per free column, with a 1 in that column.
pub fn null_space(rows: &[Vec<Rational>], width: usize) -> Vec<Vec<Rational>> {
    let (reduced, pivots) = rref(rows);
    let mut basis = Vec::new();
    for free in (0..width).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); width];
        v[free] = Rational::one();
        for (row, &p) in reduced.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::rational;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| rational(x)).collect())
            .collect()
    }

    #[test]
    fn rank_of_dependent_rows() {
        assert_eq!(rank(&mat(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]])), 2);
        assert_eq!(rank(&mat(&[&[0, 0], &[0, 0]])), 0);
    }

    #[test]
    fn null_space_vectors_are_annihilated() {
        let a = mat(&[&[1, 2, 3, 4], &[2, 4, 7, 9]]);
        let ns = null_space(&a, 4);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for row in &a {
                let dot: Rational = row.iter().zip(v).map(|(x, y)| x * y).sum();
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn empty_system_has_full_null_space() {
        assert_eq!(null_space(&[], 3).len(), 3);
    }
}
