//! Exact rational helpers: the `p/q` text form, float views and
//! continued-fraction rationalization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational used throughout the crate.
pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Formats as `p/q` (denominator always written, `1/1` for one).
pub fn format_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_q(text: &str) -> Option<Q> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Q::new(n, d))
        }
        None => text.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}

/// Best rational approximation of `x` with denominator at most `max_den`
/// (convergents and semiconvergents of the continued fraction).
pub fn rationalize(x: f64, max_den: u64) -> Q {
    if !x.is_finite() {
        return Q::zero();
    }
    let max_den = max_den.max(1);
    let negative = x < 0.0;
    let target = x.abs();
    let exact = Q::from_float(target).unwrap_or_else(Q::zero);

    // h/k convergents
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut rest = exact.clone();
    let bound = BigInt::from(max_den);
    let mut best: Q;
    loop {
        let a = rest.floor().to_integer();
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        if k2 > bound {
            // largest admissible semiconvergent
            let t = (&bound - &k0).div_floor(&k1);
            if t > BigInt::zero() {
                let semi = Q::new(&t * &h1 + &h0, &t * &k1 + &k0);
                let conv = Q::new(h1.clone(), k1.clone());
                let de = |c: &Q| (c - &exact).abs();
                best = if de(&semi) < de(&conv) { semi } else { conv };
            } else {
                best = Q::new(h1.clone(), k1.clone());
            }
            break;
        }
        best = Q::new(h2.clone(), k2.clone());
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        let frac = &rest - Q::from_integer(a);
        if frac.is_zero() {
            break;
        }
        rest = frac.recip();
    }
    if negative {
        -best
    } else {
        best
    }
}

/// Rounds `x` to the nearest multiple of `1/den`.
pub fn round_to_denominator(x: f64, den: u64) -> Q {
    let scaled = (x * den as f64).round();
    Q::new(BigInt::from(scaled as i128), BigInt::from(den))
}
