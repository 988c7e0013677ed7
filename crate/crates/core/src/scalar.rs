use crate::error::Error;
use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Exact scalar used throughout the crate.
pub type Rat = BigRational;

/// Gaussian rational: complex number with exact rational parts.
pub type CRat = Complex<BigRational>;

/// Rational from a numerator/denominator pair of machine integers.
pub fn rat(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from a machine integer.
pub fn rat_i(num: i64) -> Rat {
    BigRational::from(BigInt::from(num))
}

/// Parses `"p/q"` or `"p"` with optional sign, exactly.
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let bad = || Error::BadRational(s.to_string());
    let t = s.trim();
    if t.is_empty() {
        return Err(bad());
    }
    match t.split_once('/') {
        Some((num, den)) => {
            let n: BigInt = num.trim().parse().map_err(|_| bad())?;
            let d: BigInt = den.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = t.parse().map_err(|_| bad())?;
            Ok(BigRational::from(n))
        }
    }
}

/// Formats a rational as `"p"` or `"p/q"` in lowest terms, `q > 0`.
pub fn format_rat(r: &Rat) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Nearest f64; rationals in this crate stay far from overflow in practice.
pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back to a sign-preserving huge value if conversion overflows.
        if r.is_negative() {
            f64::MIN
        } else {
            f64::MAX
        }
    })
}
