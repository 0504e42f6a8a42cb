//! Decimal rendering of enclosures as `mid±rad`, where the printed interval
//! always contains the enclosure.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::dyadic::{Dir, Dyadic};
use super::interval::Interval;
use crate::error::{Error, Result};

fn pow10(k: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), k as usize)
}

/// Floor of log10 of a positive rational.
fn floor_log10(q: &BigRational) -> i64 {
    debug_assert!(q.is_positive());
    let approx = (q.numer().bits() as f64 - q.denom().bits() as f64) * std::f64::consts::LOG10_2;
    let mut e = approx.floor() as i64 - 1;
    let ten = BigRational::from_integer(BigInt::from(10));
    let pw = |k: i64| -> BigRational {
        if k >= 0 {
            BigRational::from_integer(pow10(k as u32))
        } else {
            BigRational::new(BigInt::one(), pow10((-k) as u32))
        }
    };
    while pw(e) > *q {
        e -= 1;
    }
    let mut p = pw(e + 1);
    while p <= *q {
        e += 1;
        p = &p * &ten;
    }
    e
}

/// Round a rational to an integer, half away from zero.
fn round_half_away(q: &BigRational) -> BigInt {
    let two = BigInt::from(2);
    let n = q.numer() * &two + if q.is_negative() { -q.denom() } else { q.denom().clone() };
    let d = q.denom() * two;
    if q.is_negative() {
        -((-n).div_floor(&d))
    } else {
        n.div_floor(&d)
    }
}

/// Plain decimal string of `m * 10^e` with `m` an integer.
fn render(m: &BigInt, e: i64) -> String {
    let neg = m.is_negative();
    let digits = m.abs().to_string();
    let mut s = if e >= 0 {
        let mut s = digits;
        s.push_str(&"0".repeat(e as usize));
        s
    } else {
        let frac = (-e) as usize;
        if digits.len() > frac {
            let (a, b) = digits.split_at(digits.len() - frac);
            format!("{a}.{b}")
        } else {
            format!("0.{}{}", "0".repeat(frac - digits.len()), digits)
        }
    };
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if neg {
        format!("-{s}")
    } else {
        s
    }
}

/// Radius rendered with two significant digits, rounded up.
fn render_radius(r: &BigRational) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let e = floor_log10(r) - 1;
    let scaled = if e >= 0 {
        r / BigRational::from_integer(pow10(e as u32))
    } else {
        r * BigRational::from_integer(pow10((-e) as u32))
    };
    let m = scaled.ceil().to_integer();
    let m = m.to_u64().unwrap_or(99);
    // m has two digits (10..=100)
    let (m, e) = if m >= 100 { (10, e + 1) } else { (m, e) };
    let exp = e + 1;
    format!("{}.{}e{}", m / 10, m % 10, exp)
}

/// Render `mid±rad` with `sig` significant digits for the midpoint.
pub fn format_interval(iv: &Interval, sig: u32) -> String {
    let mid = iv.midpoint().to_rational();
    let rad = iv.radius_upper().to_rational();
    if mid.is_zero() {
        return format!("0±{}", render_radius(&rad));
    }
    let e = floor_log10(&mid.abs());
    let shift = sig as i64 - 1 - e;
    let scaled = if shift >= 0 {
        &mid * BigRational::from_integer(pow10(shift as u32))
    } else {
        &mid / BigRational::from_integer(pow10((-shift) as u32))
    };
    let m = round_half_away(&scaled);
    let printed = if shift >= 0 {
        BigRational::new(m.clone(), pow10(shift as u32))
    } else {
        BigRational::from_integer(&m * pow10((-shift) as u32))
    };
    let total = rad + (mid - printed).abs();
    format!("{}±{}", render(&m, -shift), render_radius(&total))
}

/// A decimal lower (`up == false`) or upper bound for `x` with `sig`
/// significant digits.
pub fn format_bound(x: &Dyadic, sig: u32, up: bool) -> String {
    let q = x.to_rational();
    if q.is_zero() {
        return "0".to_string();
    }
    let shift = sig as i64 - 1 - floor_log10(&q.abs());
    let scaled = if shift >= 0 {
        &q * BigRational::from_integer(pow10(shift as u32))
    } else {
        &q / BigRational::from_integer(pow10((-shift) as u32))
    };
    let m = if up { scaled.ceil().to_integer() } else { scaled.floor().to_integer() };
    render(&m, -shift)
}

/// Parse a decimal or `a/b` rational string exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("cannot parse number '{s}'"));
    if let Some((a, b)) = s.split_once('/') {
        let a: BigInt = a.trim().parse().map_err(|_| bad())?;
        let b: BigInt = b.trim().parse().map_err(|_| bad())?;
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(BigRational::new(a, b));
    }
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int_part, frac_part) = match mant.split_once('.') {
        Some((a, b)) => (a, b),
        None => (mant, ""),
    };
    let neg = int_part.starts_with('-');
    let int_digits = int_part.trim_start_matches(['-', '+']);
    let digits = format!("{int_digits}{frac_part}");
    if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let mut n: BigInt = digits.parse().map_err(|_| bad())?;
    if neg {
        n = -n;
    }
    let e = exp - frac_part.len() as i64;
    Ok(if e >= 0 { BigRational::from_integer(n * pow10(e as u32)) } else { BigRational::new(n, pow10((-e) as u32)) })
}

/// Parse `mid±rad` (or a bare number) into an enclosing interval.
pub fn parse_interval(s: &str, prec: u32) -> Result<Interval> {
    let (m, r) = match s.split_once('±') {
        Some((m, r)) => (parse_rational(m)?, parse_rational(r)?.abs()),
        None => (parse_rational(s)?, BigRational::zero()),
    };
    let lo = Dyadic::from_rational(&(&m - &r), prec, Dir::Down);
    let hi = Dyadic::from_rational(&(&m + &r), prec, Dir::Up);
    Ok(Interval::new(lo, hi, prec))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_enclosure_contains_value() {
        let two = Interval::from_i64(2).with_prec(200);
        let r = two.sqrt();
        let s = format_interval(&r, 20);
        assert!(s.starts_with("1.4142135623730950488±"), "{s}");
        let back = parse_interval(&s, 256).unwrap();
        assert!(back.encloses(&r));
    }

    #[test]
    fn integers_render_without_fraction() {
        assert_eq!(format_interval(&Interval::from_i64(-3), 10), "-3±0");
        assert_eq!(format_interval(&Interval::from_i64(1200), 2), "1200±0");
    }

    #[test]
    fn bounds_bracket_the_value() {
        let r = Interval::from_i64(2).with_prec(200).sqrt();
        let lo = parse_rational(&format_bound(r.lo(), 12, false)).unwrap();
        let hi = parse_rational(&format_bound(r.hi(), 12, true)).unwrap();
        assert!(lo <= r.lo().to_rational() && hi >= r.hi().to_rational());
        assert_eq!(format_bound(r.lo(), 5, false), "1.4142");
        assert_eq!(format_bound(&r.lo().neg(), 5, false), "-1.4143");
    }

    #[test]
    fn parses_forms() {
        assert_eq!(parse_rational("-1.25").unwrap(), BigRational::new((-5).into(), 4.into()));
        assert_eq!(parse_rational("3/6").unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(parse_rational("2e3").unwrap(), BigRational::from_integer(2000.into()));
        assert!(parse_rational("x1").is_err());
    }

    #[test]
    fn radius_rounds_up() {
        let r = BigRational::new(123.into(), 100000.into());
        assert_eq!(render_radius(&r), "1.3e-3");
    }
}
