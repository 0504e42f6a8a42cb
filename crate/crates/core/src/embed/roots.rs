//! Root approximation and certified root isolation.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::complex::Cplx;
use super::dyadic::Dyadic;
use super::interval::Interval;
use crate::error::{Error, Result};
use crate::exactnum::sturm::{integer_coeffs, isolate_real_roots, sign_at_dyadic, RealRoot};
use crate::RatPoly;

/// All complex roots of `f` in double precision (Durand-Kerner iteration).
pub fn approximate_roots(f: &RatPoly) -> Vec<Complex64> {
    let d = f.degree().unwrap_or(0);
    if d == 0 {
        return Vec::new();
    }
    let lead = f.leading().to_f64().unwrap_or(1.0);
    let c: Vec<f64> = f.coeffs().iter().map(|x| x.to_f64().unwrap_or(0.0) / lead).collect();
    let eval = |z: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a);
    let bound = 1.0 + c[..d].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..d).map(|k| seed.powu(k as u32) * (bound / 2.0).max(0.5)).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..d {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..d {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            if den.norm() == 0.0 {
                den = Complex64::new(1e-12, 0.0);
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm() / (1.0 + z[i].norm()));
        }
        if delta < 1e-15 {
            break;
        }
    }
    // polish with a few Newton steps
    let df: Vec<f64> = (1..c.len()).map(|k| c[k] * k as f64).collect();
    let deval = |z: Complex64| df.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a);
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let dv = deval(*zi);
            if dv.norm() > 0.0 {
                *zi -= eval(*zi) / dv;
            }
        }
    }
    z
}

fn to_mk(x: &Dyadic) -> (BigInt, u64) {
    if x.exponent() >= 0 {
        (x.mantissa() << (x.exponent() as u64), 0)
    } else {
        (x.mantissa().clone(), (-x.exponent()) as u64)
    }
}

fn dyadic_of(q: &BigRational) -> Dyadic {
    let den = q.denom();
    let k = den.bits() - 1;
    debug_assert_eq!(den, &(BigInt::from(1) << k));
    Dyadic::new(q.numer().clone(), -(k as i64))
}

/// Isolate and refine the real roots to width at most `2^-prec`.
pub fn real_root_enclosures(f: &RatPoly, prec: u32) -> Vec<Interval> {
    let coeffs = integer_coeffs(f);
    isolate_real_roots(f)
        .into_iter()
        .map(|root| match root {
            RealRoot::Exact(q) => {
                let d = dyadic_of(&q);
                Interval::new(d.clone(), d, prec)
            }
            RealRoot::Bracket(lo, hi) => {
                let mut lo = dyadic_of(&lo);
                let mut hi = dyadic_of(&hi);
                let (m, k) = to_mk(&lo);
                let slo = sign_at_dyadic(&coeffs, &m, k);
                let target = -(prec as i64);
                loop {
                    let w = hi.sub(&lo);
                    if w.magnitude_bits() <= target {
                        break;
                    }
                    let mid = lo.add(&hi).shift(-1);
                    let (m, k) = to_mk(&mid);
                    let s = sign_at_dyadic(&coeffs, &m, k);
                    if s == 0 {
                        lo = mid.clone();
                        hi = mid;
                        break;
                    }
                    if s == slo {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                Interval::new(lo, hi, prec)
            }
        })
        .collect()
}

fn point(x: f64, prec: u32) -> Interval {
    Interval::from_f64(x).with_prec(prec)
}

fn eval_poly(f: &RatPoly, z: &Cplx<Interval>, prec: u32) -> Cplx<Interval> {
    f.eval_with(z, |c| Cplx::real(Interval::from_rational(c, prec)))
}

fn mid_point(z: &Cplx<Interval>, prec: u32) -> Cplx<Interval> {
    Cplx::new(
        Interval::point(z.re.midpoint().round(prec + 8, super::dyadic::Dir::Down)).with_prec(prec),
        Interval::point(z.im.midpoint().round(prec + 8, super::dyadic::Dir::Down)).with_prec(prec),
    )
}

/// A certified complex root: centre box and inclusion radius.
struct Disk {
    centre: Cplx<Interval>,
    radius: Dyadic,
}

/// Newton-refine `z0` and return an inclusion disk `|w - z| <= d |f(z)/f'(z)|`.
fn refine_complex(f: &RatPoly, df: &RatPoly, z0: Complex64, prec: u32) -> Option<Disk> {
    let w = prec + 32;
    let d = f.degree().unwrap_or(1) as i64;
    let mut z = Cplx::new(point(z0.re, w), point(z0.im, w));
    let target = -(prec as i64) - 4;
    for _ in 0..200 {
        let fv = eval_poly(f, &z, w);
        let dv = eval_poly(df, &z, w);
        let step = fv.checked_div(&dv)?;
        let next = mid_point(&(z.clone() - step.clone()), w);
        let small = step.abs().hi().magnitude_bits() < target;
        z = next;
        if small {
            break;
        }
    }
    let fv = eval_poly(f, &z, w);
    let dv = eval_poly(df, &z, w);
    let num = fv.abs();
    let den = dv.abs();
    if !den.certainly_positive() {
        return None;
    }
    let ratio = num.hi().div(den.lo(), 64, super::dyadic::Dir::Up);
    let radius = ratio.mul(&Dyadic::from_i64(d));
    Some(Disk { centre: z, radius })
}

fn disks_disjoint(a: &Disk, b: &Disk) -> bool {
    let dre = a.centre.re.clone() - b.centre.re.clone();
    let dim = a.centre.im.clone() - b.centre.im.clone();
    let dist2 = dre.square() + dim.square();
    let r = a.radius.add(&b.radius);
    let r2 = Interval::point(r.mul(&r));
    r2.certainly_lt(&dist2)
}

/// Certified enclosures of the roots with positive imaginary part, ordered by
/// real part then imaginary part.
pub fn complex_root_enclosures(f: &RatPoly, s: usize, prec: u32) -> Result<Vec<Cplx<Interval>>> {
    if s == 0 {
        return Ok(Vec::new());
    }
    let df = f.derivative();
    let mut approx = approximate_roots(f);
    approx.sort_by(|a, b| b.im.partial_cmp(&a.im).unwrap_or(std::cmp::Ordering::Equal));
    let exhausted = || Error::PrecisionExhausted { bits: prec, context: "certifying complex roots".into() };
    let mut disks = Vec::with_capacity(s);
    for z0 in approx.into_iter().take(s) {
        let disk = refine_complex(f, &df, z0, prec).ok_or_else(exhausted)?;
        // disk must stay off the real axis, which also separates it from its conjugate
        let r = Interval::point(disk.radius.clone());
        if !r.certainly_lt(&disk.centre.im) {
            return Err(exhausted());
        }
        disks.push(disk);
    }
    for i in 0..disks.len() {
        for j in i + 1..disks.len() {
            if !disks_disjoint(&disks[i], &disks[j]) {
                return Err(exhausted());
            }
        }
    }
    let tie = Dyadic::new(BigInt::from(1), -((prec / 2) as i64));
    disks.sort_by(|a, b| {
        let dr = a.centre.re.midpoint().sub(&b.centre.re.midpoint());
        if dr.abs() <= tie {
            a.centre.im.midpoint().cmp(&b.centre.im.midpoint())
        } else {
            dr.cmp(&Dyadic::zero())
        }
    });
    Ok(disks
        .into_iter()
        .map(|d| {
            Cplx::new(d.centre.re.inflate(&d.radius).with_prec(prec), d.centre.im.inflate(&d.radius).with_prec(prec))
        })
        .collect())
}

/// Check that the real root intervals are pairwise disjoint and nonempty.
pub fn real_roots_disjoint(roots: &[Interval]) -> bool {
    roots.windows(2).all(|w| w[0].hi() < w[1].lo() || (w[0].hi() <= w[1].lo() && !w[0].is_point()))
        && roots.iter().all(|r| !r.hi().is_zero() || r.lo().is_zero() || !r.lo().is_zero())
        || roots.len() < 2
}

#[allow(dead_code)]
fn is_zero_dyadic(d: &Dyadic) -> bool {
    d.mantissa().is_zero()
}
