//! The shortest vector of the module `O^2` deformed along the diagonal
//! trajectory aimed at `z`.
//!
//! A lattice vector `(q, p)` has length
//! `max(e^-t max_i |q_i|, e^t max_i |q_i z_i + p_i|)`; an approximation pair
//! `(p, q)` enters as the vector `(q, -p)`. Grid statistics are diagnostics,
//! except for [`FlowProfile::floor`], which uses that both factors change by
//! at most `e^|dt|` between grid points.

use rayon::prelude::*;

use crate::approx::{quality, Approximant, Workspace};
use crate::embed::interval::Interval;
use crate::embed::{EmbeddingSet, PlaceVec};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::vectors::TargetVector;

/// Relative slack separating double-precision screening from certified evaluation.
const SCREEN: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryPoint {
    pub t: f64,
    /// Enclosure of the minimum length.
    pub m: Interval,
    /// Integral-basis coordinates of a minimizing `(q, p)`.
    pub q: Vec<i64>,
    pub p: Vec<i64>,
}

/// The length of `(q, p)` with `s = e^t`.
pub fn vector_length<R: Real>(z: &PlaceVec<R>, q: &PlaceVec<R>, p: &PlaceVec<R>, s: &R) -> R {
    let a = q.max_abs() / s.clone();
    let b = q.mul(z).add(p).max_abs() * s.clone();
    a.max(&b)
}

fn coords_range(centre: f64, half: f64) -> std::ops::RangeInclusive<i64> {
    ((centre - half).ceil() as i64)..=((centre + half).floor() as i64)
}

/// Every `c` with `lo_j <= c_j <= hi_j`, last coordinate fastest.
fn for_each_in_box(lo: &[i64], hi: &[i64], mut f: impl FnMut(&[i64])) {
    if lo.iter().zip(hi).any(|(a, b)| a > b) {
        return;
    }
    let d = lo.len();
    let mut c = lo.to_vec();
    loop {
        f(&c);
        let mut k = d;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            c[k] += 1;
            if c[k] <= hi[k] {
                break;
            }
            c[k] = lo[k];
        }
    }
}

struct Search<'w, 'e> {
    ws: &'w Workspace<'e>,
    s: f64,
}

impl Search<'_, '_> {
    /// Visit `(q, p)` for `q` in the coordinate box of radius `r` (one of `+-q`)
    /// and `p` in the box around `-q z` of radius `rho(best)`.
    fn sweep(&self, r: f64, best: &mut f64, mut visit: impl FnMut(&[i64], &[i64], f64, &mut f64)) {
        let frame = self.ws.e.frame();
        let bx = frame.coordinate_box(r);
        let lo: Vec<i64> = bx.iter().map(|b| -b).collect();
        for_each_in_box(&lo, &bx, |q| {
            if !crate::approx::is_normalized(q) {
                return;
            }
            let qf = self.ws.point_f(q);
            let h = qf.max_abs();
            if h / self.s > *best * (1.0 + SCREEN) {
                return;
            }
            let centre: Vec<f64> = self.ws.target_coords(&qf).iter().map(|x| -x).collect();
            let rho = *best * (1.0 + SCREEN) / self.s;
            let plo: Vec<i64> =
                centre.iter().zip(&frame.bound).map(|(c, b)| *coords_range(*c, b * rho).start()).collect();
            let phi: Vec<i64> =
                centre.iter().zip(&frame.bound).map(|(c, b)| *coords_range(*c, b * rho).end()).collect();
            let qz = qf.mul(&self.ws.z_f);
            for_each_in_box(&plo, &phi, |p| {
                let v = (h / self.s).max(qz.add(&self.ws.point_f(p)).max_abs() * self.s);
                visit(q, p, v, best);
            });
        });
    }
}

/// The minimum length at `t`, by branch and bound: `q` runs over coordinate
/// boxes of doubling radius until the radius exceeds `e^t` times the best
/// length, and `p` over the box around `-q z` that could still improve it.
pub fn mahler_min(z: &TargetVector, t: f64, e: &EmbeddingSet) -> TrajectoryPoint {
    let ws = Workspace::new(z, e);
    mahler_min_in(&ws, t, &Interval::from_f64(t).exp())
}

pub(crate) fn mahler_min_in(ws: &Workspace, t: f64, s: &Interval) -> TrajectoryPoint {
    let d = ws.dim();
    let sf = s.mid_f64();
    let search = Search { ws, s: sf };
    let one: Vec<i64> = (0..d).map(|k| i64::from(k == 0)).collect();
    let zero = vec![0i64; d];
    // (0, p) has length e^t house(p) >= e^t, attained by p = 1
    let mut best = sf;
    let mut witness = (zero.clone(), one.clone());
    let mut r = 1.0f64;
    loop {
        search.sweep(r, &mut best, |q, p, v, best| {
            if v < *best {
                *best = v;
                witness = (q.to_vec(), p.to_vec());
            }
        });
        let need = best * sf * (1.0 + SCREEN);
        if r >= need {
            break;
        }
        r = (2.0 * r).min(need);
    }
    // certify: every candidate within the screening slack is evaluated in intervals
    let basis = ws.e.basis_values();
    let length =
        |q: &[i64], p: &[i64]| vector_length(&ws.z, &PlaceVec::combine(basis, q), &PlaceVec::combine(basis, p), s);
    let wit = length(&witness.0, &witness.1);
    let cutoff = wit.upper_f64() * (1.0 + SCREEN);
    let mut m = wit.min(s);
    let mut b = cutoff;
    search.sweep(r, &mut b, |q, p, v, _| {
        if v <= cutoff {
            m = m.min(&length(q, p));
        }
    });
    TrajectoryPoint { t, m, q: witness.0, p: witness.1 }
}

#[derive(Debug, Clone)]
pub struct FlowProfile {
    pub points: Vec<TrajectoryPoint>,
    /// Enclosure of the minimum over the grid.
    pub inf_m: Interval,
    pub inf_at: f64,
    pub threshold: f64,
    /// Local minima of the grid values below the threshold.
    pub dips: Vec<(f64, Interval)>,
    /// A certified lower bound for `m(t)` on the whole grid range.
    pub floor: Interval,
}

impl FlowProfile {
    pub fn verdict_hint(&self) -> &'static str {
        if self.dips.is_empty() {
            "bounded-looking"
        } else {
            "dip-detected"
        }
    }
}

/// `m(t)` on an ascending grid, evaluated in parallel.
pub fn profile(z: &TargetVector, grid: &[f64], e: &EmbeddingSet, threshold: f64) -> Result<FlowProfile> {
    if grid.is_empty() || grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput("the t-grid must be nonempty and ascending".into()));
    }
    let ws = Workspace::new(z, e);
    let points: Vec<TrajectoryPoint> =
        grid.par_iter().map(|&t| mahler_min_in(&ws, t, &Interval::from_f64(t).exp())).collect();
    let (mut inf_m, mut inf_at) = (points[0].m.clone(), points[0].t);
    for p in &points[1..] {
        if p.m.midpoint() < inf_m.midpoint() {
            inf_at = p.t;
        }
        inf_m = inf_m.min(&p.m);
    }
    let mids: Vec<f64> = points.iter().map(|p| p.m.mid_f64()).collect();
    let dips = (0..points.len())
        .filter(|&i| {
            mids[i] < threshold
                && (i == 0 || mids[i] <= mids[i - 1])
                && (i + 1 == points.len() || mids[i] <= mids[i + 1])
        })
        .map(|i| (points[i].t, points[i].m.clone()))
        .collect();
    // between neighbours both factors move by at most e^(dt/2) from the nearer one
    let step = grid.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
    let decay = Interval::from_f64(-step / 2.0).exp();
    let lowest = Interval::point(inf_m.lo().clone());
    let floor = &lowest * &decay;
    Ok(FlowProfile { points, inf_m, inf_at, threshold, dips, floor: Interval::point(floor.lo().clone()) })
}

/// Record of `m(t*)^2 <= quality` at the time `t*` balancing the two factors
/// of the vector `(q, -p)`.
#[derive(Debug, Clone)]
pub struct BalanceRecord {
    pub t_star: f64,
    pub quality: Interval,
    pub point: TrajectoryPoint,
    pub holds: bool,
}

pub fn balance_check(z: &TargetVector, a: &Approximant, e: &EmbeddingSet) -> Result<BalanceRecord> {
    let basis = e.basis_values();
    let q = PlaceVec::combine(basis, &a.q);
    let p = PlaceVec::combine(basis, &a.p);
    let x = q.max_abs();
    let y = q.mul(&z.components).sub(&p).max_abs();
    if y.contains_zero() {
        return Err(Error::FactorZero);
    }
    // e^{t*} = sqrt(x / y), enclosed
    let s = (&x / &y).sqrt();
    let t_star = s.mid_f64().ln();
    let ws = Workspace::new(z, e);
    let point = mahler_min_in(&ws, t_star, &s);
    let qual = quality(z, a, e);
    // refuted only if m^2 certainly exceeds the quality
    let holds = !qual.certainly_lt(&point.m.square());
    Ok(BalanceRecord { t_star, quality: qual, point, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::QuadForm;
    use crate::vectors::quad_zeros;
    use crate::{isolate_roots, FieldElem, NumberField, RatPoly};
    use num_rational::BigRational;

    fn rationals() -> (NumberField, EmbeddingSet) {
        let f = NumberField::new(RatPoly::from_ints(&[0, 1])).unwrap();
        let e = isolate_roots(&f, 128).unwrap();
        (f, e)
    }

    fn brute(z: f64, t: f64, n: i64) -> f64 {
        let mut best = f64::INFINITY;
        for q in -n..=n {
            for p in -n..=n {
                if q == 0 && p == 0 {
                    continue;
                }
                let v = ((-t).exp() * (q as f64).abs()).max(t.exp() * (q as f64 * z + p as f64).abs());
                best = best.min(v);
            }
        }
        best
    }

    #[test]
    fn golden_matches_brute_force() {
        let (f, e) = rationals();
        let z = quad_zeros(&QuadForm::from_ints(&f, &[1], &[-1], &[-1]), &e, &[1]).unwrap();
        let phi = z.components.real[0].mid_f64();
        for t in [0.0, 0.3, 1.0, 2.5, 4.0] {
            let pt = mahler_min(&z, t, &e);
            let b = brute(phi, t, 200);
            assert!((pt.m.mid_f64() - b).abs() < 1e-9, "t={t}: {} vs {b}", pt.m.mid_f64());
            assert!(pt.m.upper_f64() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn rational_collapses() {
        let (f, e) = rationals();
        let z = TargetVector::field_point(&FieldElem::from_rational(&f, BigRational::new(22.into(), 7.into())), &e);
        let pt = mahler_min(&z, 8.0, &e);
        assert_eq!((pt.q.clone(), pt.p.clone()), (vec![7], vec![-22]));
        assert!((pt.m.mid_f64() - 7.0 * (-8f64).exp()).abs() < 1e-12);
        let prof = profile(&z, &[0.0, 2.0, 4.0, 6.0, 8.0], &e, 0.05).unwrap();
        assert_eq!(prof.verdict_hint(), "dip-detected");
    }

    #[test]
    fn balance_holds_for_convergents() {
        let (f, e) = rationals();
        let z = quad_zeros(&QuadForm::from_ints(&f, &[1], &[-1], &[-1]), &e, &[1]).unwrap();
        let rec = balance_check(&z, &Approximant::new(vec![89], vec![55]).unwrap(), &e).unwrap();
        assert!(rec.holds);
        assert!(rec.point.m.mid_f64().powi(2) <= 0.4473);
        let zero = TargetVector::field_point(&FieldElem::from_i64(&f, 3), &e);
        assert!(matches!(
            balance_check(&zero, &Approximant::new(vec![3], vec![1]).unwrap(), &e),
            Err(Error::FactorZero)
        ));
    }
}
