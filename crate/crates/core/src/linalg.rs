//! Gaussian elimination over a [`Field`]. Matrices are row vectors.

use crate::gf::{Elem, Field};

pub type Matrix = Vec<Vec<Elem>>;

/// Reduced row-echelon form, pivoting only in the first `pivot_cols` columns.
/// Zero rows are dropped. Returns the reduced rows and their pivot columns.
pub fn rref_partial(field: &Field, mut rows: Matrix, pivot_cols: usize) -> (Matrix, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..pivot_cols {
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let inv = field.inv_nz(rows[r][col]);
        for x in rows[r].iter_mut() {
            *x = field.mul(inv, *x);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let c = field.neg(row[col]);
                field.axpy(row, c, &pivot_row);
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.retain(|row| row.iter().any(|x| !x.is_zero()));
    (rows, pivots)
}

pub fn rref(field: &Field, rows: Matrix) -> (Matrix, Vec<usize>) {
    let cols = rows.first().map_or(0, Vec::len);
    rref_partial(field, rows, cols)
}

pub fn rank(field: &Field, rows: &[Vec<Elem>]) -> usize {
    rref(field, rows.to_vec()).1.len()
}

pub fn transpose(rows: &[Vec<Elem>], cols: usize) -> Matrix {
    (0..cols).map(|j| rows.iter().map(|r| r[j]).collect()).collect()
}

/// Some `u` with `sum_i u[i] * rows[i] == target`, free variables set to zero.
pub fn solve_left(field: &Field, rows: &[Vec<Elem>], target: &[Elem]) -> Option<Vec<Elem>> {
    let r = rows.len();
    let system: Matrix = target
        .iter()
        .enumerate()
        .map(|(j, &t)| {
            let mut eq: Vec<Elem> = rows.iter().map(|row| row[j]).collect();
            eq.push(t);
            eq
        })
        .collect();
    let (reduced, pivots) = rref_partial(field, system, r);
    if reduced.len() > pivots.len() {
        // a surviving row without a pivot reads 0 = nonzero
        return None;
    }
    let mut u = vec![Elem::ZERO; r];
    for (row, &p) in reduced.iter().zip(&pivots) {
        u[p] = row[r];
    }
    Some(u)
}

/// Basis of `{u : sum_i u[i] * rows[i] == 0}`.
pub fn left_kernel(field: &Field, rows: &[Vec<Elem>], cols: usize) -> Matrix {
    let r = rows.len();
    let (reduced, pivots) = rref(field, transpose(rows, cols));
    let mut basis = Vec::new();
    for free in (0..r).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Elem::ZERO; r];
        v[free] = Elem::ONE;
        for (row, &p) in reduced.iter().zip(&pivots) {
            v[p] = field.neg(row[free]);
        }
        basis.push(v);
    }
    basis
}

/// `u * m` for a row vector `u`.
pub fn vec_mat(field: &Field, u: &[Elem], m: &[Vec<Elem>], cols: usize) -> Vec<Elem> {
    let mut out = vec![Elem::ZERO; cols];
    for (&c, row) in u.iter().zip(m) {
        field.axpy(&mut out, c, row);
    }
    out
}

pub fn mat_mul(field: &Field, a: &[Vec<Elem>], b: &[Vec<Elem>], cols: usize) -> Matrix {
    a.iter().map(|row| vec_mat(field, row, b, cols)).collect()
}

pub fn identity(k: usize) -> Matrix {
    (0..k).map(|i| (0..k).map(|j| if i == j { Elem::ONE } else { Elem::ZERO }).collect()).collect()
}

/// Inverse of a square matrix, if it exists.
pub fn inverse(field: &Field, m: &[Vec<Elem>]) -> Option<Matrix> {
    let k = m.len();
    let aug: Matrix = m.iter().zip(identity(k)).map(|(row, id)| row.iter().copied().chain(id).collect()).collect();
    let (reduced, pivots) = rref_partial(field, aug, k);
    if pivots.len() != k {
        return None;
    }
    Some(reduced.into_iter().map(|row| row[k..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(v: &[u16]) -> Vec<Elem> {
        v.iter().map(|&x| Elem(x)).collect()
    }

    #[test]
    fn rank_over_gf3() {
        let f = Field::prime(3).unwrap();
        assert_eq!(rank(&f, &[e(&[1, 2]), e(&[2, 1])]), 1);
        assert_eq!(rank(&f, &[e(&[1, 2]), e(&[1, 1])]), 2);
    }

    #[test]
    fn solve_and_kernel() {
        let f = Field::prime(5).unwrap();
        let rows = vec![e(&[1, 0, 2]), e(&[0, 1, 3]), e(&[1, 1, 0])];
        let target = e(&[2, 3, 3]);
        let u = solve_left(&f, &rows, &target).unwrap();
        assert_eq!(vec_mat(&f, &u, &rows, 3), target);
        // r1 + r2 == r3
        let ker = left_kernel(&f, &rows, 3);
        assert_eq!(ker, vec![e(&[4, 4, 1])]);
        assert!(left_kernel(&f, &rows[..2], 3).is_empty());
        let dep = vec![e(&[1, 2]), e(&[2, 4])];
        let ker = left_kernel(&f, &dep, 2);
        assert_eq!(ker.len(), 1);
        assert_eq!(vec_mat(&f, &ker[0], &dep, 2), e(&[0, 0]));
        assert_eq!(solve_left(&f, &dep, &e(&[1, 1])), None);
    }

    #[test]
    fn inverse_round_trip() {
        let f = Field::prime(2).unwrap();
        let m = vec![e(&[1, 1]), e(&[0, 1])];
        let inv = inverse(&f, &m).unwrap();
        assert_eq!(mat_mul(&f, &m, &inv, 2), identity(2));
        assert_eq!(inverse(&f, &[e(&[1, 1]), e(&[1, 1])]), None);
    }
}
