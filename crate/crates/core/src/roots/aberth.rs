//! Simultaneous root approximation (Aberth–Ehrlich), first in `f64` on a
//! scaled copy of the polynomial, then in rounded dyadic arithmetic.

use num_complex::{Complex, Complex64};
use num_traits::Zero;
use rayon::prelude::*;

use crate::num::{from_f64, log2_approx, pow2, round_gauss, to_f64, GaussRat, Rational};
use crate::poly::UniPoly;

/// Exponent `s` such that all roots have modulus below about `2^s`
/// (Fujiwara bound, rounded up).
pub fn root_scale(f: &UniPoly) -> i64 {
    let d = f.degree().unwrap_or(0);
    let lc = f.leading_coeff();
    let mut s = i64::MIN;
    for (k, a) in f.coeffs()[..d].iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let l = log2_approx(&(a / &lc));
        let e = (l + 2).div_euclid((d - k) as i64) + 1;
        s = s.max(e);
    }
    if s == i64::MIN {
        0
    } else {
        s + 1
    }
}

fn horner(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// `f64` approximations of all roots of `f`, or `None` if the iteration
/// produced non-finite values.
pub fn approximate_f64(f: &UniPoly) -> Option<Vec<Complex64>> {
    let d = f.degree()?;
    if d == 0 {
        return Some(Vec::new());
    }
    let s = root_scale(f);
    let lc = f.leading_coeff();
    // monic, roots scaled into the unit disc: b_k = a_k 2^{s(k-d)} / a_d
    let c: Vec<f64> = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, a)| to_f64(&(a / &lc * pow2(s * (k as i64 - d as i64)))))
        .collect();
    if c.iter().any(|x| !x.is_finite()) {
        return None;
    }
    let mut z: Vec<Complex64> = (0..d)
        .map(|j| Complex64::from_polar(0.9, 2.0 * std::f64::consts::PI * (j as f64) / (d as f64) + 0.4))
        .collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..d {
            let (p, dp) = horner(&c, z[i]);
            if p == Complex64::new(0.0, 0.0) {
                continue;
            }
            let w = p / dp;
            let mut sum = Complex64::new(0.0, 0.0);
            for j in 0..d {
                if j != i {
                    sum += 1.0 / (z[i] - z[j]);
                }
            }
            let step = w / (1.0 - w * sum);
            if step.is_finite() {
                z[i] -= step;
                delta = delta.max(step.norm() / z[i].norm().max(1e-300));
            }
        }
        if delta < 1e-15 {
            break;
        }
    }
    let scale = (s as f64).exp2();
    let out: Vec<Complex64> = z.into_iter().map(|x| x * scale).collect();
    out.iter().all(|x| x.is_finite()).then_some(out)
}

pub fn to_gauss(z: Complex64, bits: u32) -> GaussRat {
    let re = from_f64(z.re).unwrap_or_else(Rational::zero);
    let im = from_f64(z.im).unwrap_or_else(Rational::zero);
    round_gauss(&Complex::new(re, im), bits)
}

/// Position of an approximation inside the conjugation-closed root set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    Real,
    Upper,
}

/// One Aberth sweep over the primary approximations `zs` (reals and upper
/// half-plane roots). The full set is `zs` plus conjugates of the uppers.
/// Returns the new primaries and the largest correction as a power-of-two
/// exponent.
pub fn aberth_exact_step(
    f: &UniPoly,
    fp: &UniPoly,
    zs: &[GaussRat],
    slots: &[Slot],
    bits: u32,
) -> (Vec<GaussRat>, i64) {
    let mut all: Vec<GaussRat> = zs.to_vec();
    for (z, s) in zs.iter().zip(slots) {
        if *s == Slot::Upper {
            all.push(z.conj());
        }
    }
    let res: Vec<(GaussRat, i64)> = zs
        .par_iter()
        .enumerate()
        .map(|(i, z)| {
            let v = f.eval_gauss(z);
            if v.re.is_zero() && v.im.is_zero() {
                return (z.clone(), i64::MIN / 4);
            }
            let d = fp.eval_gauss(z);
            let w = cdiv(&v, &d);
            let Some(w) = w else {
                return (z.clone(), i64::MIN / 4);
            };
            let mut sum: GaussRat = Complex::new(Rational::zero(), Rational::zero());
            for (j, y) in all.iter().enumerate() {
                if j == i {
                    continue;
                }
                if let Some(t) = cdiv(&Complex::new(Rational::from_integer(1.into()), Rational::zero()), &(z - y)) {
                    sum += round_gauss(&t, bits + 8);
                }
            }
            let one = Complex::new(Rational::from_integer(1.into()), Rational::zero());
            let den = &one - &(&w * &sum);
            let step = cdiv(&w, &den).unwrap_or(w);
            let mut nz = round_gauss(&(z - &step), bits);
            if slots[i] == Slot::Real {
                nz.im = Rational::zero();
            }
            let mag = log2_approx(&step.re).max(log2_approx(&step.im));
            (nz, mag)
        })
        .collect();
    let mag = res.iter().map(|r| r.1).max().unwrap_or(i64::MIN / 4);
    (res.into_iter().map(|r| r.0).collect(), mag)
}

fn cdiv(a: &GaussRat, b: &GaussRat) -> Option<GaussRat> {
    let n = &b.re * &b.re + &b.im * &b.im;
    if n.is_zero() {
        return None;
    }
    Some(Complex::new(
        (&a.re * &b.re + &a.im * &b.im) / &n,
        (&a.im * &b.re - &a.re * &b.im) / &n,
    ))
}
