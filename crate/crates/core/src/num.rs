//! Scalar helpers: exact rationals, Gaussian rationals, dyadic rounding and
//! directed square-root bounds.

use num_bigint::{BigInt, Sign as BigSign};
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// Exact complex number with rational real and imaginary parts.
pub type GaussRat = Complex<BigRational>;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn gauss(re: Rational, im: Rational) -> GaussRat {
    Complex::new(re, im)
}

pub fn gauss_real(re: Rational) -> GaussRat {
    Complex::new(re, Rational::zero())
}

/// `2^k` for any signed `k`.
pub fn pow2(k: i64) -> Rational {
    if k >= 0 {
        Rational::from_integer(BigInt::one() << (k as usize))
    } else {
        Rational::new(BigInt::one(), BigInt::one() << ((-k) as usize))
    }
}

/// Bit-size of a rational: the larger bit length of numerator and denominator.
pub fn bit_size(q: &Rational) -> u64 {
    q.numer().bits().max(q.denom().bits())
}

/// Rough base-2 logarithm of `|q|` (exact to within one).
pub fn log2_approx(q: &Rational) -> i64 {
    if q.is_zero() {
        return i64::MIN / 4;
    }
    q.numer().bits() as i64 - q.denom().bits() as i64
}

/// Rounds `q` to the nearest multiple of `2^-bits`, ties away from zero.
/// The rule is odd-symmetric: `round(-q) = -round(q)`.
pub fn round_dyadic(q: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits as usize;
    let scaled = q * Rational::from_integer(scale.clone());
    Rational::new(scaled.round().to_integer(), scale)
}

pub fn round_gauss(z: &GaussRat, bits: u32) -> GaussRat {
    Complex::new(round_dyadic(&z.re, bits), round_dyadic(&z.im, bits))
}

pub fn norm_sqr(z: &GaussRat) -> Rational {
    &z.re * &z.re + &z.im * &z.im
}

fn sqrt_scale(q: &Rational, bits: u32) -> u32 {
    let e = log2_approx(q);
    (bits as i64 - e / 2).max(0) as u32 + 2
}

/// A dyadic rational `u ≥ √q` with about `bits` bits of relative accuracy.
pub fn sqrt_upper(q: &Rational, bits: u32) -> Rational {
    assert!(!q.is_negative(), "square root of a negative rational");
    if q.is_zero() {
        return Rational::zero();
    }
    let k = sqrt_scale(q, bits);
    let scaled = q * Rational::from_integer(BigInt::one() << (2 * k as usize));
    let m = scaled.ceil().to_integer();
    let mut r = m.sqrt();
    if &r * &r < m {
        r += 1;
    }
    Rational::new(r, BigInt::one() << k as usize)
}

/// A dyadic rational `0 ≤ l ≤ √q` with about `bits` bits of relative accuracy.
pub fn sqrt_lower(q: &Rational, bits: u32) -> Rational {
    assert!(!q.is_negative(), "square root of a negative rational");
    if q.is_zero() {
        return Rational::zero();
    }
    let k = sqrt_scale(q, bits);
    let scaled = q * Rational::from_integer(BigInt::one() << (2 * k as usize));
    let m = scaled.floor().to_integer();
    Rational::new(m.sqrt(), BigInt::one() << k as usize)
}

pub fn abs_upper(z: &GaussRat, bits: u32) -> Rational {
    if z.im.is_zero() {
        return z.re.abs();
    }
    if z.re.is_zero() {
        return z.im.abs();
    }
    sqrt_upper(&norm_sqr(z), bits)
}

pub fn abs_lower(z: &GaussRat, bits: u32) -> Rational {
    if z.im.is_zero() {
        return z.re.abs();
    }
    if z.re.is_zero() {
        return z.im.abs();
    }
    sqrt_lower(&norm_sqr(z), bits)
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        if q.numer().sign() == BigSign::Minus {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// Decimal rendering with a fixed number of fractional digits (truncated
/// toward zero), for human-readable reports only.
pub fn to_decimal(q: &Rational, digits: usize) -> String {
    let neg = q.is_negative();
    let a = q.abs();
    let scale = BigInt::from(10).pow(digits as u32);
    let scaled = (a * Rational::from_integer(scale.clone())).round().to_integer();
    let int_part = &scaled / &scale;
    let frac = &scaled % &scale;
    let mut s = String::new();
    if neg && !scaled.is_zero() {
        s.push('-');
    }
    s.push_str(&int_part.to_string());
    if digits > 0 {
        let f = frac.to_string();
        s.push('.');
        for _ in f.len()..digits {
            s.push('0');
        }
        s.push_str(&f);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_bounds_bracket() {
        for (n, d) in [(2, 1), (1, 3), (9, 4), (1, 1_000_000_007), (123456789, 7)] {
            let q = rat(n, d);
            let lo = sqrt_lower(&q, 64);
            let hi = sqrt_upper(&q, 64);
            assert!(&lo * &lo <= q);
            assert!(&hi * &hi >= q);
            assert!(&hi - &lo <= &hi * pow2(-50));
        }
        assert_eq!(sqrt_upper(&rat(9, 4), 32), rat(3, 2));
        assert_eq!(sqrt_lower(&rat(9, 4), 32), rat(3, 2));
    }

    #[test]
    fn rounding_is_odd_symmetric() {
        let q = rat(5, 8);
        assert_eq!(round_dyadic(&q, 2), rat(3, 4));
        assert_eq!(round_dyadic(&-q, 2), rat(-3, 4));
        assert_eq!(round_dyadic(&rat(1, 3), 4), rat(5, 16));
    }

    #[test]
    fn bit_size_is_max_of_parts() {
        assert_eq!(bit_size(&rat(3, 8)), 4);
        assert_eq!(bit_size(&int(-255)), 8);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal(&rat(-3, 4), 3), "-0.750");
        assert_eq!(to_decimal(&rat(1, 3), 4), "0.3333");
        assert_eq!(to_decimal(&int(2), 0), "2");
    }
}
