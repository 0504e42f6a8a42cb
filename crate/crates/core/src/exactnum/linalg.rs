//! Small dense linear algebra over an ordered field (exact rationals or floats).

use num_traits::{Num, Signed};

pub type Matrix<T> = Vec<Vec<T>>;

pub trait FieldScalar: Clone + Num + Signed + PartialOrd {}
impl<T: Clone + Num + Signed + PartialOrd> FieldScalar for T {}

fn pivot_row<T: FieldScalar>(m: &Matrix<T>, col: usize, from: usize) -> Option<usize> {
    let mut best: Option<usize> = None;
    for r in from..m.len() {
        if m[r][col].is_zero() {
            continue;
        }
        match best {
            Some(b) if m[b][col].abs() >= m[r][col].abs() => {}
            _ => best = Some(r),
        }
    }
    best
}

pub fn identity<T: FieldScalar>(n: usize) -> Matrix<T> {
    (0..n).map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect()).collect()
}

pub fn determinant<T: FieldScalar>(m: &Matrix<T>) -> T {
    let n = m.len();
    let mut a = m.clone();
    let mut det = T::one();
    for c in 0..n {
        let Some(p) = pivot_row(&a, c, c) else {
            return T::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let piv = a[c][c].clone();
        det = det * piv.clone();
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone() / piv.clone();
            for k in c..n {
                a[r][k] = a[r][k].clone() - f.clone() * a[c][k].clone();
            }
        }
    }
    det
}

/// Inverse by Gauss-Jordan elimination; `None` if singular.
pub fn inverse<T: FieldScalar>(m: &Matrix<T>) -> Option<Matrix<T>> {
    let n = m.len();
    let mut a = m.clone();
    let mut inv = identity::<T>(n);
    for c in 0..n {
        let p = pivot_row(&a, c, c)?;
        a.swap(p, c);
        inv.swap(p, c);
        let piv = a[c][c].clone();
        for k in 0..n {
            a[c][k] = a[c][k].clone() / piv.clone();
            inv[c][k] = inv[c][k].clone() / piv.clone();
        }
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for k in 0..n {
                a[r][k] = a[r][k].clone() - f.clone() * a[c][k].clone();
                inv[r][k] = inv[r][k].clone() - f.clone() * inv[c][k].clone();
            }
        }
    }
    Some(inv)
}

pub fn mat_vec<T: FieldScalar>(m: &Matrix<T>, v: &[T]) -> Vec<T> {
    m.iter().map(|row| row.iter().zip(v).fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())).collect()
}

pub fn mat_mul<T: FieldScalar>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols).map(|j| (0..inner).fold(T::zero(), |acc, k| acc + row[k].clone() * b[k][j].clone())).collect()
        })
        .collect()
}

pub fn transpose<T: Clone>(m: &Matrix<T>) -> Matrix<T> {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Basis of the right null space `{x : m x = 0}` (exact arithmetic expected).
pub fn nullspace<T: FieldScalar>(m: &Matrix<T>) -> Vec<Vec<T>> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let Some(p) = pivot_row(&a, c, r) else {
            continue;
        };
        a.swap(p, r);
        let piv = a[r][c].clone();
        for k in 0..cols {
            a[r][k] = a[r][k].clone() / piv.clone();
        }
        for rr in 0..rows {
            if rr == r || a[rr][c].is_zero() {
                continue;
            }
            let f = a[rr][c].clone();
            for k in 0..cols {
                a[rr][k] = a[rr][k].clone() - f.clone() * a[r][k].clone();
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![T::zero(); cols];
            v[fc] = T::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[i][fc].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn inverse_times_matrix_is_identity() {
        let m = vec![vec![q(2), q(1)], vec![q(5), q(3)]];
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), identity(2));
        assert_eq!(determinant(&m), q(1));
    }

    #[test]
    fn singular_matrix() {
        let m = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert!(inverse(&m).is_none());
        assert_eq!(determinant(&m), q(0));
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 1);
        assert!(mat_vec(&m, &ns[0]).iter().all(|x| *x == q(0)));
    }

    #[test]
    fn float_inverse() {
        let m = vec![vec![1.0, 1.414], vec![1.0, -1.414]];
        let inv = inverse(&m).unwrap();
        let id = mat_mul(&m, &inv);
        assert!((id[0][0] - 1.0f64).abs() < 1e-12 && id[0][1].abs() < 1e-12);
    }
}
