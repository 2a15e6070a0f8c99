//! Helpers around [`num_rational::BigRational`].

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::series::SeriesError;

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// `p/q`, reduced. Panics on `q == 0`.
pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn pow_i64(x: &Rational, k: i64) -> Rational {
    if k >= 0 {
        num_traits::pow(x.clone(), k as usize)
    } else {
        num_traits::pow(x.recip(), (-k) as usize)
    }
}

/// Exact `x^power` when it is rational.
pub fn rational_pow(x: &Rational, power: &Rational) -> Option<Rational> {
    let p = power.numer().to_i64()?;
    let q = power.denom().to_u32()?;
    if x.is_zero() {
        return (p > 0).then(Rational::zero);
    }
    let root = if q == 1 {
        x.clone()
    } else {
        if x.is_negative() && q % 2 == 0 {
            return None;
        }
        let n = exact_root(x.numer(), q)?;
        let d = exact_root(x.denom(), q)?;
        Rational::new(n, d)
    };
    Some(pow_i64(&root, p))
}

fn exact_root(n: &BigInt, q: u32) -> Option<BigInt> {
    let r = n.nth_root(q);
    (num_traits::pow(r.clone(), q as usize) == *n).then_some(r)
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // very large numerators: scale down through the bit lengths
        let shift = x.numer().bits().max(x.denom().bits()) as i64 - 60;
        let n = x.numer() >> shift.max(0) as usize;
        let d = x.denom() >> shift.max(0) as usize;
        n.to_f64().unwrap_or(f64::NAN) / d.to_f64().unwrap_or(f64::NAN)
    })
}

/// `p/q`, or just `p` for integers.
pub fn fmt(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse(s: &str) -> Result<Rational, SeriesError> {
    let bad = || SeriesError::MalformedRational(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(big(s.parse().map_err(|_| bad())?)),
    }
}

/// Parse a numerator/denominator pair of decimal strings.
pub fn from_pair(num: &str, den: &str) -> Result<Rational, SeriesError> {
    let bad = || SeriesError::MalformedRational(format!("{num}/{den}"));
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.sign() != Sign::Plus {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub fn is_even_integer(x: &Rational) -> bool {
    x.is_integer() && (x.numer() % BigInt::from(2)).is_zero()
}

pub fn one() -> Rational {
    Rational::one()
}
