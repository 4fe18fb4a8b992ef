//! Real root isolation by Descartes' rule of signs with bisection.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::interval::RatInterval;
use crate::num::{int, pow2, Rational};
use crate::poly::{squarefree_part, UniPoly};

fn sign_var(p: &[BigInt]) -> usize {
    let mut last = 0;
    let mut n = 0;
    for a in p {
        let s = if a.is_positive() {
            1
        } else if a.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                n += 1;
            }
            last = s;
        }
    }
    n
}

/// `p(x + 1)`.
fn shift1(p: &[BigInt]) -> Vec<BigInt> {
    let mut b = p.to_vec();
    let n = b.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = b[j + 1].clone();
            b[j] += t;
        }
    }
    b
}

/// Upper bound on the number of roots in `(0, 1)`.
fn bound01(p: &[BigInt]) -> usize {
    let mut r = p.to_vec();
    r.reverse();
    sign_var(&shift1(&r))
}

fn primitive(mut p: Vec<BigInt>) -> Vec<BigInt> {
    let g = p.iter().fold(BigInt::zero(), |a, x| a.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in &mut p {
            *x = &*x / &g;
        }
    }
    p
}

/// Positive roots of a squarefree integer polynomial with `p(0) != 0`,
/// as intervals `(lo, hi)` with `lo ≥ 0`.
fn positive_roots(p: &[BigInt]) -> Vec<RatInterval> {
    let mut out = Vec::new();
    let d = p.len() - 1;
    if d == 0 || sign_var(p) == 0 {
        return out;
    }
    // bound: 1 + max |a_i / a_d|, rounded up to a power of two
    let lead = Rational::from_integer(p[d].abs());
    let m = p[..d]
        .iter()
        .map(|a| Rational::from_integer(a.abs()) / &lead)
        .fold(Rational::zero(), |x, y| x.max(y))
        + Rational::one();
    let mut k = 0i64;
    while pow2(k) < m {
        k += 1;
    }
    let scale = BigInt::one() << k as usize;
    let mut pk = BigInt::one();
    let q: Vec<BigInt> = p
        .iter()
        .map(|a| {
            let v = a * &pk;
            pk *= &scale;
            v
        })
        .collect();
    let mut stack = vec![(primitive(q), Rational::zero(), pow2(k))];
    while let Some((q, a, w)) = stack.pop() {
        let v = bound01(&q);
        if v == 0 {
            continue;
        }
        if v == 1 {
            out.push(RatInterval::new(a.clone(), &a + &w));
            continue;
        }
        let dq = q.len() - 1;
        let ql: Vec<BigInt> = q.iter().enumerate().map(|(j, c)| c << (dq - j)).collect();
        let mut qr = shift1(&ql);
        let half = &w / int(2);
        let mid = &a + &half;
        if qr[0].is_zero() {
            out.push(RatInterval::point(mid.clone()));
            qr.remove(0);
        }
        stack.push((primitive(ql), a, half.clone()));
        stack.push((primitive(qr), mid, half));
    }
    out
}

/// Disjoint intervals, sorted, each containing exactly one real root of `g`.
/// Interval endpoints are never roots unless the interval is a point.
pub fn real_root_isolation(g: &UniPoly) -> Vec<RatInterval> {
    if g.is_constant() {
        return Vec::new();
    }
    let mut p = squarefree_part(g).primitive_integer();
    let mut out = Vec::new();
    if p[0].is_zero() {
        out.push(RatInterval::point(Rational::zero()));
        p.remove(0);
    }
    out.extend(positive_roots(&p));
    let neg: Vec<BigInt> = p
        .iter()
        .enumerate()
        .map(|(j, a)| if j % 2 == 1 { -a } else { a.clone() })
        .collect();
    out.extend(positive_roots(&neg).into_iter().map(|iv| iv.neg()));
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    out
}

/// Shrinks an isolating interval of a squarefree `g` by bisection to width
/// at most `eps`.
pub fn refine_real(g: &UniPoly, iv: &RatInterval, eps: &Rational) -> RatInterval {
    let (mut lo, mut hi) = (iv.lo.clone(), iv.hi.clone());
    if lo == hi {
        return iv.clone();
    }
    let slo = g.eval(&lo);
    if slo.is_zero() {
        return RatInterval::point(lo);
    }
    while &(&hi - &lo) > eps {
        let mid = (&lo + &hi) / int(2);
        let sm = g.eval(&mid);
        if sm.is_zero() {
            return RatInterval::point(mid);
        }
        if sm.is_positive() == slo.is_positive() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    RatInterval::new(lo, hi)
}
