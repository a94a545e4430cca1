//! Dense linear algebra over an arbitrary field.

use super::field::Field;

pub type Matrix<E> = Vec<Vec<E>>;

/// In-place reduced row echelon form; returns the pivot columns.
pub fn rref<F: Field>(m: &mut Matrix<F::Elem>, k: &F) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !k.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, pr);
        let inv = k.inv(&m[r][c]).expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = k.mul(x, &inv);
        }
        for i in 0..rows {
            if i != r && !k.is_zero(&m[i][c]) {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = k.mul(&f, &m[r][j]);
                    m[i][j] = k.sub(&m[i][j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &Matrix<F::Elem>, k: &F) -> usize {
    let mut a = m.clone();
    rref(&mut a, k).len()
}

/// Basis of `{ v : m v = 0 }`.
pub fn nullspace<F: Field>(m: &Matrix<F::Elem>, k: &F) -> Vec<Vec<F::Elem>> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut a = m.clone();
    let pivots = rref(&mut a, k);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![k.zero(); cols];
        v[free] = k.one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = k.neg(&a[row][free]);
        }
        out.push(v);
    }
    out
}

/// Determinant by elimination.
pub fn det<F: Field>(m: &Matrix<F::Elem>, k: &F) -> F::Elem {
    let n = m.len();
    let mut a = m.clone();
    let mut d = k.one();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !k.is_zero(&a[i][c])) else {
            return k.zero();
        };
        if pr != c {
            a.swap(pr, c);
            d = k.neg(&d);
        }
        d = k.mul(&d, &a[c][c]);
        let inv = k.inv(&a[c][c]).expect("nonzero pivot");
        for i in c + 1..n {
            if !k.is_zero(&a[i][c]) {
                let f = k.mul(&a[i][c], &inv);
                for j in c..n {
                    let t = k.mul(&f, &a[c][j]);
                    a[i][j] = k.sub(&a[i][j], &t);
                }
            }
        }
    }
    d
}
