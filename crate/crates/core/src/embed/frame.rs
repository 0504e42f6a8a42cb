//! The Minkowski frame of an order and a certified linear solver.

use num_rational::BigRational;
use num_traits::Zero;

use super::dyadic::Dir;
use super::interval::Interval;
use crate::exactnum::linalg::{self, Matrix};

/// Double-precision Minkowski matrix of an integral basis.
///
/// Column `j` holds the real coordinates (real places, then `Re`/`Im` per
/// complex place) of basis element `j`. Coordinates of a lattice point `v`
/// satisfy `|c_j| <= bound[j] * max_k |v_k|`.
#[derive(Debug, Clone)]
pub struct MinkowskiFrame {
    pub matrix: Matrix<f64>,
    pub inverse: Matrix<f64>,
    pub bound: Vec<f64>,
}

impl MinkowskiFrame {
    pub fn new(matrix: Matrix<f64>) -> Option<MinkowskiFrame> {
        let inverse = linalg::inverse(&matrix)?;
        // l1 row norms, padded against rounding in the f64 inverse
        let bound = inverse.iter().map(|row| row.iter().map(|x| x.abs()).sum::<f64>() * (1.0 + 1e-9) + 1e-9).collect();
        Some(MinkowskiFrame { matrix, inverse, bound })
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    /// Real basis coordinates of the point with real coordinates `v`.
    pub fn coords_of(&self, v: &[f64]) -> Vec<f64> {
        linalg::mat_vec(&self.inverse, v)
    }

    /// Real coordinates of the lattice point with basis coordinates `c`.
    pub fn point_of(&self, c: &[f64]) -> Vec<f64> {
        linalg::mat_vec(&self.matrix, c)
    }

    /// Coordinate box `|c_j| <= bound_j` holding every point of sup-norm at most `r`.
    pub fn coordinate_box(&self, r: f64) -> Vec<i64> {
        self.bound.iter().map(|b| (b * r).floor() as i64).collect()
    }
}

fn inf_norm_upper(rows: &[Vec<Interval>]) -> Interval {
    let mut best = Interval::from_i64(0);
    for row in rows {
        let s = row.iter().fold(Interval::from_i64(0), |acc, x| acc + x.abs());
        best = best.max(&s);
    }
    Interval::point(best.hi().clone())
}

/// Enclose the solution of `m x = t` for every matrix and right-hand side
/// in the given boxes. `None` if the system is too ill-conditioned at the
/// working precision.
pub fn solve_certified(m: &Matrix<Interval>, t: &[Interval], prec: u32) -> Option<Vec<Interval>> {
    let n = m.len();
    let mid: Matrix<BigRational> = m.iter().map(|r| r.iter().map(|x| x.midpoint().to_rational()).collect()).collect();
    let r_exact = linalg::inverse(&mid)?;
    let r: Matrix<Interval> =
        r_exact.iter().map(|row| row.iter().map(|q| Interval::from_rational(q, prec)).collect()).collect();
    let tmid: Vec<Interval> = t.iter().map(|x| Interval::point(x.midpoint())).collect();
    let x0: Vec<Interval> = mat_vec(&r, &tmid)
        .into_iter()
        .map(|x| Interval::point(x.midpoint().round(prec, Dir::Down)).with_prec(prec))
        .collect();

    // beta = ||I - R M||
    let rm = mat_mul(&r, m);
    let defect: Matrix<Interval> = (0..n)
        .map(|i| {
            (0..n).map(|j| if i == j { Interval::from_i64(1) - rm[i][j].clone() } else { -rm[i][j].clone() }).collect()
        })
        .collect();
    let beta = inf_norm_upper(&defect);
    let one = Interval::from_i64(1);
    if !beta.certainly_lt(&one) {
        return None;
    }
    let resid: Vec<Interval> = t.iter().zip(mat_vec(m, &x0)).map(|(a, b)| a - &b).collect();
    let corr = mat_vec(&r, &resid);
    let num = corr.iter().fold(Interval::from_i64(0), |acc, x| acc.max(&x.abs()));
    let bound = (num / (one - beta)).with_prec(prec);
    let rad = bound.hi().clone();
    Some(x0.into_iter().map(|x| x.inflate(&rad)).collect())
}

fn mat_vec(m: &Matrix<Interval>, v: &[Interval]) -> Vec<Interval> {
    m.iter().map(|row| row.iter().zip(v).fold(Interval::zero(), |acc, (a, b)| acc + a * b)).collect()
}

fn mat_mul(a: &Matrix<Interval>, b: &Matrix<Interval>) -> Matrix<Interval> {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols).map(|j| row.iter().zip(b).fold(Interval::zero(), |acc, (x, br)| acc + x * &br[j])).collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::dyadic::Dyadic;

    #[test]
    fn solves_sqrt2_system() {
        // [1 s; 1 -s] x = [3 + 2s, 3 - 2s] with s = sqrt 2 gives x = (3, 2)
        let s = Interval::from_i64(2).with_prec(200).sqrt();
        let m = vec![vec![Interval::from_i64(1), s.clone()], vec![Interval::from_i64(1), -s.clone()]];
        let t = vec![
            Interval::from_i64(3) + s.clone() * Interval::from_i64(2),
            Interval::from_i64(3) - s * Interval::from_i64(2),
        ];
        let x = solve_certified(&m, &t, 200).unwrap();
        assert!(x[0].contains(&Dyadic::from_i64(3)));
        assert!(x[1].contains(&Dyadic::from_i64(2)));
        assert!(x[0].width().magnitude_bits() < -150);
    }

    #[test]
    fn frame_bounds_cover_points() {
        let s = 2f64.sqrt();
        let f = MinkowskiFrame::new(vec![vec![1.0, s], vec![1.0, -s]]).unwrap();
        let c = f.coords_of(&f.point_of(&[3.0, -2.0]));
        assert!((c[0] - 3.0).abs() < 1e-12 && (c[1] + 2.0).abs() < 1e-12);
        let b = f.coordinate_box(3.0 + 2.0 * s);
        assert!(b[0] >= 3 && b[1] >= 2);
    }
}
