//! Inclusion and exclusion certificates on discs.

use num_complex::Complex;
use num_traits::Zero;

use crate::interval::ComplexBox;
use crate::num::{abs_lower, abs_upper, log2_approx, pow2, round_gauss, GaussRat, Rational};
use crate::poly::UniPoly;

const ABS_BITS: u32 = 40;

/// Closed disc `|z - c| ≤ r`.
#[derive(Debug, Clone, PartialEq)]
pub struct Disc {
    pub c: GaussRat,
    pub r: Rational,
}

impl Disc {
    pub fn conj(&self) -> Disc {
        Disc { c: Complex::new(self.c.re.clone(), -&self.c.im), r: self.r.clone() }
    }

    /// Strictly inside the open box.
    pub fn strictly_inside(&self, b: &ComplexBox) -> bool {
        &self.c.re - &self.r > b.re.lo
            && &self.c.re + &self.r < b.re.hi
            && &self.c.im - &self.r > b.im.lo
            && &self.c.im + &self.r < b.im.hi
    }

    /// Closed disc and closed box do not meet (tested against the
    /// bounding square of the disc).
    pub fn disjoint_box(&self, b: &ComplexBox) -> bool {
        &self.c.re + &self.r < b.re.lo
            || &self.c.re - &self.r > b.re.hi
            || &self.c.im + &self.r < b.im.lo
            || &self.c.im - &self.r > b.im.hi
    }

    pub fn disjoint(&self, o: &Disc) -> bool {
        let d = &self.c - &o.c;
        let s = &self.r + &o.r;
        &d.re * &d.re + &d.im * &d.im > &s * &s
    }
}

/// Smallest power of two `≥ q` (`q > 0`).
pub fn pow2_ceil(q: &Rational) -> Rational {
    let mut k = log2_approx(q);
    while pow2(k) < *q {
        k += 1;
    }
    while pow2(k - 1) >= *q {
        k -= 1;
    }
    pow2(k)
}

/// Certifies that the disc around `c` contains exactly one root of `f`,
/// by `|b_1| r > |b_0| + Σ_{k≥2} |b_k| r^k` for the Taylor coefficients at `c`.
/// Returns the radius, or `None`.
pub fn rouche_radius(f: &UniPoly, c: &GaussRat, floor_bits: u32) -> Option<Rational> {
    let b = f.taylor_gauss(c);
    if b.len() < 2 {
        return None;
    }
    let a1 = abs_lower(&b[1], ABS_BITS);
    if a1.is_zero() {
        return None;
    }
    let a0 = abs_upper(&b[0], ABS_BITS);
    let r = if a0.is_zero() {
        pow2(-(floor_bits as i64))
    } else {
        pow2_ceil(&(&a0 * Rational::from_integer(2.into()) / &a1))
    };
    let mut rhs = a0;
    let mut rk = &r * &r;
    let lhs = &a1 * &r;
    for bk in &b[2..] {
        if !bk.re.is_zero() || !bk.im.is_zero() {
            rhs += abs_upper(bk, ABS_BITS) * &rk;
            if rhs >= lhs {
                return None;
            }
        }
        rk = &rk * &r;
    }
    (lhs > rhs).then_some(r)
}

/// True when the disc `D(c, rho)` certainly contains no root of `f`:
/// `|b_0| > Σ_{k≥1} |b_k| rho^k`.
pub fn excludes(f: &UniPoly, c: &GaussRat, rho: &Rational) -> bool {
    let b = f.taylor_gauss(c);
    let a0 = abs_lower(&b[0], ABS_BITS);
    if a0.is_zero() {
        return false;
    }
    let mut rhs = Rational::zero();
    let mut rk = rho.clone();
    for bk in &b[1..] {
        rhs += abs_upper(bk, ABS_BITS) * &rk;
        if rhs >= a0 {
            return false;
        }
        rk = &rk * rho;
    }
    a0 > rhs
}

/// `c - f(c)/f'(c)`, rounded to `bits` fractional bits; `None` when `f'(c) = 0`.
pub fn newton_step(f: &UniPoly, fp: &UniPoly, c: &GaussRat, bits: u32) -> Option<GaussRat> {
    let v = f.eval_gauss(c);
    let d = fp.eval_gauss(c);
    let n = &d.re * &d.re + &d.im * &d.im;
    if n.is_zero() {
        return None;
    }
    let q = Complex::new(
        (&v.re * &d.re + &v.im * &d.im) / &n,
        (&v.im * &d.re - &v.re * &d.im) / &n,
    );
    Some(round_gauss(&(c - q), bits))
}

/// Newton-polishes `c` and certifies a disc of radius at most `target`
/// (when given). Precision grows as needed. Keeps real centres real.
pub fn polish(f: &UniPoly, fp: &UniPoly, c: &GaussRat, target: Option<&Rational>, mut bits: u32) -> Option<Disc> {
    if let Some(t) = target {
        bits = bits.max((-log2_approx(t)).max(0) as u32 + 16);
    }
    let mut c = round_gauss(c, bits);
    for _round in 0..6 {
        for _ in 0..8 {
            if let Some(r) = rouche_radius(f, &c, bits + 8) {
                if target.is_none_or(|t| r <= *t) {
                    return Some(Disc { c, r });
                }
            }
            c = newton_step(f, fp, &c, bits)?;
        }
        bits *= 2;
    }
    None
}
