//! Numeric oracles for the integration tests. Nothing here calls into the
//! library's solving routes: roots come from Aberth iteration and a
//! total-degree homotopy in `f64`, polished by Newton's method in 400-bit
//! fixed point.
#![allow(dead_code)]

use std::f64::consts::PI;
use std::ops::{Add, Div, Mul, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use polystab::interval::{ComplexBox, RatInterval};
use polystab::{GaussRat, MultiPoly, Rational, UniPoly};
use rand::Rng;

/// Fractional bits of the fixed-point oracle (about 120 decimal digits).
pub const PREC: usize = 400;
/// Newton has converged once the step is below `2^-CONVERGED_BITS`.
const CONVERGED_BITS: u64 = 340;

/// Complex fixed point `(re + i im) / 2^PREC`.
#[derive(Clone, Debug, PartialEq)]
pub struct Fx {
    pub re: BigInt,
    pub im: BigInt,
}

fn f2fx(x: f64) -> BigInt {
    let q = BigRational::from_float(x).expect("finite float");
    (q.numer() << PREC) / q.denom()
}

fn fx2f(x: &BigInt) -> f64 {
    BigRational::new(x.clone(), BigInt::one() << PREC).to_f64().unwrap_or(f64::NAN)
}

impl Fx {
    pub fn real(q: &Rational) -> Fx {
        Fx { re: (q.numer() << PREC) / q.denom(), im: BigInt::zero() }
    }

    pub fn from_c64(z: Complex64) -> Fx {
        Fx { re: f2fx(z.re), im: f2fx(z.im) }
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(fx2f(&self.re), fx2f(&self.im))
    }

    pub fn to_gauss(&self) -> GaussRat {
        let d = BigInt::one() << PREC;
        GaussRat::new(Rational::new(self.re.clone(), d.clone()), Rational::new(self.im.clone(), d))
    }

    /// Exact `|z|^2` of the stored value.
    pub fn norm_sqr(&self) -> Rational {
        Rational::new(&self.re * &self.re + &self.im * &self.im, BigInt::one() << (2 * PREC))
    }

    /// Bit length of the larger component, relative to the binary point.
    fn log2_mag(&self) -> i64 {
        self.re.abs().max(self.im.abs()).bits() as i64 - PREC as i64
    }
}

impl Add for Fx {
    type Output = Fx;
    fn add(self, o: Fx) -> Fx {
        Fx { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for Fx {
    type Output = Fx;
    fn sub(self, o: Fx) -> Fx {
        Fx { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Mul for Fx {
    type Output = Fx;
    fn mul(self, o: Fx) -> Fx {
        Fx {
            re: (&self.re * &o.re - &self.im * &o.im) >> PREC,
            im: (&self.re * &o.im + &self.im * &o.re) >> PREC,
        }
    }
}

impl Div for Fx {
    type Output = Fx;
    fn div(self, o: Fx) -> Fx {
        let den = &o.re * &o.re + &o.im * &o.im;
        let nr = &self.re * &o.re + &self.im * &o.im;
        let ni = &self.im * &o.re - &self.re * &o.im;
        Fx { re: (nr << PREC) / &den, im: (ni << PREC) / &den }
    }
}

pub trait Scalar: Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self> {
    fn szero() -> Self;
    fn of_rat(q: &Rational) -> Self;
    fn mag(&self) -> f64;
}

impl Scalar for Complex64 {
    fn szero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn of_rat(q: &Rational) -> Self {
        Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn mag(&self) -> f64 {
        self.norm()
    }
}

impl Scalar for Fx {
    fn szero() -> Self {
        Fx { re: BigInt::zero(), im: BigInt::zero() }
    }
    fn of_rat(q: &Rational) -> Self {
        Fx::real(q)
    }
    fn mag(&self) -> f64 {
        self.to_c64().norm()
    }
}

pub type Terms<T> = Vec<(Vec<u32>, T)>;

pub fn terms_of(p: &MultiPoly) -> Terms<Rational> {
    p.terms().map(|(m, c)| (m.exps().to_vec(), c.clone())).collect()
}

fn derivative(t: &Terms<Rational>, k: usize) -> Terms<Rational> {
    t.iter()
        .filter(|(e, _)| e[k] > 0)
        .map(|(e, c)| {
            let mut e2 = e.clone();
            e2[k] -= 1;
            (e2, c * Rational::from_integer(BigInt::from(e[k])))
        })
        .collect()
}

fn convert<T: Scalar>(t: &Terms<Rational>) -> Terms<T> {
    t.iter().map(|(e, c)| (e.clone(), T::of_rat(c))).collect()
}

pub fn eval<T: Scalar>(t: &Terms<T>, x: &[T]) -> T {
    let mut acc = T::szero();
    for (e, c) in t {
        let mut m = c.clone();
        for (k, &ek) in e.iter().enumerate() {
            for _ in 0..ek {
                m = m * x[k].clone();
            }
        }
        acc = acc + m;
    }
    acc
}

/// Gaussian elimination with partial pivoting.
pub fn solve<T: Scalar>(mut a: Vec<Vec<T>>, mut b: Vec<T>) -> Option<Vec<T>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].mag().total_cmp(&a[j][c].mag()))?;
        if a[p][c].mag() == 0.0 || !a[p][c].mag().is_finite() {
            return None;
        }
        a.swap(c, p);
        b.swap(c, p);
        for r in c + 1..n {
            let f = a[r][c].clone() / a[c][c].clone();
            for k in c..n {
                let v = a[r][k].clone() - f.clone() * a[c][k].clone();
                a[r][k] = v;
            }
            let v = b[r].clone() - f * b[c].clone();
            b[r] = v;
        }
    }
    let mut x = vec![T::szero(); n];
    for c in (0..n).rev() {
        let mut s = b[c].clone();
        for k in c + 1..n {
            s = s - a[c][k].clone() * x[k].clone();
        }
        x[c] = s / a[c][c].clone();
    }
    Some(x)
}

struct Cached<T> {
    f: Vec<Terms<T>>,
    jac: Vec<Vec<Terms<T>>>,
}

impl<T: Scalar> Cached<T> {
    fn new(f: &[Terms<Rational>], jac: &[Vec<Terms<Rational>>]) -> Self {
        Cached { f: f.iter().map(convert).collect(), jac: jac.iter().map(|r| r.iter().map(convert).collect()).collect() }
    }
    fn value(&self, x: &[T]) -> Vec<T> {
        self.f.iter().map(|t| eval(t, x)).collect()
    }
    fn jacobian(&self, x: &[T]) -> Vec<Vec<T>> {
        self.jac.iter().map(|r| r.iter().map(|t| eval(t, x)).collect()).collect()
    }
}

/// A square polynomial system prepared for numeric solving.
pub struct NumSystem {
    n: usize,
    degs: Vec<u32>,
    lo: Cached<Complex64>,
    hi: Cached<Fx>,
}

enum Path {
    Finite(Vec<Complex64>),
    Diverged,
    Failed,
}

impl NumSystem {
    pub fn new(polys: &[MultiPoly]) -> Self {
        let n = polys[0].nvars();
        assert_eq!(polys.len(), n, "homotopy oracle needs a square system");
        let f: Vec<Terms<Rational>> = polys.iter().map(terms_of).collect();
        let jac: Vec<Vec<Terms<Rational>>> = f.iter().map(|t| (0..n).map(|k| derivative(t, k)).collect()).collect();
        let degs = polys.iter().map(|p| p.total_degree().unwrap_or(0)).collect();
        NumSystem { n, degs, lo: Cached::new(&f, &jac), hi: Cached::new(&f, &jac) }
    }

    fn h(&self, x: &[Complex64], tau: f64, gamma: Complex64) -> Vec<Complex64> {
        let f = self.lo.value(x);
        (0..self.n)
            .map(|i| gamma * (1.0 - tau) * (x[i].powu(self.degs[i]) - 1.0) + f[i] * tau)
            .collect()
    }

    fn hx(&self, x: &[Complex64], tau: f64, gamma: Complex64) -> Vec<Vec<Complex64>> {
        let mut j = self.lo.jacobian(x);
        for (i, row) in j.iter_mut().enumerate() {
            for v in row.iter_mut() {
                *v *= tau;
            }
            let d = self.degs[i];
            row[i] += gamma * (1.0 - tau) * x[i].powu(d - 1) * d as f64;
        }
        j
    }

    fn velocity(&self, x: &[Complex64], tau: f64, gamma: Complex64) -> Option<Vec<Complex64>> {
        let f = self.lo.value(x);
        let ht: Vec<Complex64> = (0..self.n).map(|i| -(f[i] - gamma * (x[i].powu(self.degs[i]) - 1.0))).collect();
        solve(self.hx(x, tau, gamma), ht)
    }

    fn correct(&self, x: &mut [Complex64], tau: f64, gamma: Complex64) -> bool {
        for _ in 0..6 {
            let r: Vec<Complex64> = self.h(x, tau, gamma).iter().map(|v| -v).collect();
            let Some(dx) = solve(self.hx(x, tau, gamma), r) else { return false };
            let size = x.iter().map(|v| v.norm()).fold(1.0, f64::max);
            let step = dx.iter().map(|v| v.norm()).fold(0.0, f64::max);
            for (a, d) in x.iter_mut().zip(&dx) {
                *a += d;
            }
            if step < 1e-11 * size {
                return true;
            }
        }
        false
    }

    fn track(&self, mut x: Vec<Complex64>, gamma: Complex64) -> Path {
        let mut tau: f64 = 0.0;
        let mut h: f64 = 0.01;
        let mut streak = 0;
        while tau < 1.0 {
            let t1 = (tau + h).min(1.0);
            let dt = t1 - tau;
            let step = (|| {
                let k1 = self.velocity(&x, tau, gamma)?;
                let x2: Vec<_> = x.iter().zip(&k1).map(|(a, k)| a + k * (dt / 2.0)).collect();
                let k2 = self.velocity(&x2, tau + dt / 2.0, gamma)?;
                let x3: Vec<_> = x.iter().zip(&k2).map(|(a, k)| a + k * (dt / 2.0)).collect();
                let k3 = self.velocity(&x3, tau + dt / 2.0, gamma)?;
                let x4: Vec<_> = x.iter().zip(&k3).map(|(a, k)| a + k * dt).collect();
                let k4 = self.velocity(&x4, t1, gamma)?;
                let mut y: Vec<Complex64> = (0..self.n)
                    .map(|i| x[i] + (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (dt / 6.0))
                    .collect();
                let size = x.iter().map(|v| v.norm()).fold(1.0, f64::max);
                let jump = y.iter().zip(&x).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
                if jump > 0.1 * size {
                    return None;
                }
                self.correct(&mut y, t1, gamma).then_some(y)
            })();
            match step {
                Some(y) => {
                    x = y;
                    tau = t1;
                    streak += 1;
                    if streak >= 3 {
                        h = (h * 2.0).min(0.05);
                        streak = 0;
                    }
                    if x.iter().any(|v| v.norm() > 1e9) {
                        return Path::Diverged;
                    }
                }
                None => {
                    h /= 2.0;
                    streak = 0;
                    if h < 1e-13 {
                        return if x.iter().any(|v| v.norm() > 1e6) { Path::Diverged } else { Path::Failed };
                    }
                }
            }
        }
        Path::Finite(x)
    }

    /// Newton's method in fixed point from a double-precision start.
    pub fn polish(&self, x0: &[Complex64]) -> Option<Vec<Fx>> {
        let mut x: Vec<Fx> = x0.iter().map(|z| Fx::from_c64(*z)).collect();
        for _ in 0..40 {
            let r: Vec<Fx> = self.hi.value(&x).into_iter().map(|v| Fx::szero() - v).collect();
            let dx = solve(self.hi.jacobian(&x), r)?;
            let step = dx.iter().map(Fx::log2_mag).max().unwrap_or(i64::MIN);
            for (a, d) in x.iter_mut().zip(dx) {
                *a = a.clone() + d;
            }
            if step < -(CONVERGED_BITS as i64) {
                return Some(x);
            }
            if x.iter().any(|v| v.log2_mag() > 64) {
                return None;
            }
        }
        None
    }

    fn attempt(&self, gamma: Complex64) -> Option<Vec<Vec<Fx>>> {
        let total: u32 = self.degs.iter().product();
        let mut sols: Vec<Vec<Fx>> = Vec::new();
        for idx in 0..total {
            let mut rest = idx;
            let start: Vec<Complex64> = self
                .degs
                .iter()
                .map(|&d| {
                    let j = rest % d;
                    rest /= d;
                    Complex64::from_polar(1.0, 2.0 * PI * j as f64 / d as f64)
                })
                .collect();
            match self.track(start, gamma) {
                Path::Diverged => continue,
                Path::Failed => return None,
                Path::Finite(x) => {
                    let p = self.polish(&x)?;
                    if sols.iter().any(|s| same_point(s, &p)) {
                        return None;
                    }
                    sols.push(p);
                }
            }
        }
        Some(sols)
    }

    /// All isolated solutions, or `None` when no homotopy run was clean.
    pub fn solve_all<R: Rng>(&self, rng: &mut R) -> Option<Vec<Vec<Fx>>> {
        for _ in 0..4 {
            let gamma = Complex64::from_polar(1.0, rng.gen_range(0.0..2.0 * PI));
            if let Some(s) = self.attempt(gamma) {
                return Some(s);
            }
        }
        None
    }
}

fn same_point(a: &[Fx], b: &[Fx]) -> bool {
    a.iter().zip(b).all(|(x, y)| (x.clone() - y.clone()).log2_mag() < -200)
}

/// `max_k |z_k|` as a double, from the exact squared moduli.
pub fn max_modulus(p: &[Fx]) -> f64 {
    p.iter().map(|z| z.norm_sqr().to_f64().unwrap().sqrt()).fold(0.0, f64::max)
}

type RP = Vec<Rational>;

fn trim(mut p: RP) -> RP {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn deriv(p: &[Rational]) -> RP {
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer(BigInt::from(i))).collect())
}

fn divrem(a: &[Rational], b: &[Rational]) -> (RP, RP) {
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![Rational::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let c = r.last().unwrap() / b.last().unwrap();
        for (i, bi) in b.iter().enumerate() {
            r[k + i] = &r[k + i] - &c * bi;
        }
        q[k] = c;
        r.pop();
        r = trim(r);
    }
    (trim(q), r)
}

fn monic(p: RP) -> RP {
    let l = p.last().unwrap().clone();
    p.into_iter().map(|c| c / &l).collect()
}

fn gcd(a: &[Rational], b: &[Rational]) -> RP {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = divrem(&a, &b).1;
        a = b;
        b = r;
    }
    monic(a)
}

fn sub(a: &[Rational], b: &[Rational]) -> RP {
    let n = a.len().max(b.len());
    let z = Rational::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

/// Yun's squarefree factorization, `(factor, multiplicity)` pairs.
pub fn yun(f: &UniPoly) -> Vec<(RP, usize)> {
    let f = trim(f.coeffs().to_vec());
    let fp = deriv(&f);
    let a0 = gcd(&f, &fp);
    let mut b = divrem(&f, &a0).0;
    let c = divrem(&fp, &a0).0;
    let mut d = sub(&c, &deriv(&b));
    let mut out = Vec::new();
    let mut i = 1;
    while b.len() > 1 {
        let q = gcd(&b, &d);
        if q.len() > 1 {
            out.push((q.clone(), i));
        }
        b = divrem(&b, &q).0;
        let c = divrem(&d, &q).0;
        d = sub(&c, &deriv(&b));
        i += 1;
    }
    out
}

fn horner<T: Scalar>(c: &[T], z: &T) -> T {
    c.iter().rev().fold(T::szero(), |acc, a| acc * z.clone() + a.clone())
}

/// Aberth iteration for all roots of `c` (low to high).
pub fn aberth(c: &[Complex64]) -> Option<Vec<Complex64>> {
    let d = c.len() - 1;
    let lead = c[d];
    // Fujiwara's bound
    let radius = 2.0 * (1..=d).map(|k| (c[d - k] / lead).norm().powf(1.0 / k as f64)).fold(0.0, f64::max);
    let dc: Vec<Complex64> = (1..=d).map(|i| c[i] * i as f64).collect();
    let mut z: Vec<Complex64> =
        (0..d).map(|k| Complex64::from_polar(radius * 0.9, 2.0 * PI * k as f64 / d as f64 + 0.4)).collect();
    for _ in 0..2000 {
        let mut worst: f64 = 0.0;
        for i in 0..d {
            let ratio = horner(c, &z[i]) / horner(&dc, &z[i]);
            let s: Complex64 = (0..d).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (1.0 - ratio * s);
            if !w.is_finite() {
                return None;
            }
            z[i] -= w;
            worst = worst.max(w.norm() / (1.0 + z[i].norm()));
        }
        if worst < 1e-15 {
            return Some(z);
        }
    }
    Some(z)
}

/// Roots of a squarefree polynomial to fixed-point precision, or `None` if
/// the simultaneous iteration stalls or two roots coincide.
pub fn roots_hp(q: &[Rational]) -> Option<Vec<Fx>> {
    if q.len() < 2 {
        return Some(Vec::new());
    }
    let lo: Vec<Complex64> = q.iter().map(Complex64::of_rat).collect();
    let hi: Vec<Fx> = q.iter().map(Fx::real).collect();
    let dhi: Vec<Fx> = deriv(q).iter().map(Fx::real).collect();
    let mut z: Vec<Fx> = aberth(&lo)?.into_iter().map(Fx::from_c64).collect();
    let one = Fx::real(&Rational::one());
    let d = z.len();
    for _ in 0..200 {
        let mut worst = i64::MIN;
        for i in 0..d {
            let ratio = horner(&hi, &z[i]) / horner(&dhi, &z[i]);
            let mut s = Fx::szero();
            for j in (0..d).filter(|&j| j != i) {
                s = s + one.clone() / (z[i].clone() - z[j].clone());
            }
            let w = ratio.clone() / (one.clone() - ratio * s);
            worst = worst.max(w.log2_mag());
            z[i] = z[i].clone() - w;
        }
        if worst < -(CONVERGED_BITS as i64) {
            let distinct = (0..d).all(|i| (i + 1..d).all(|j| (z[i].clone() - z[j].clone()).log2_mag() > -200));
            return distinct.then_some(z);
        }
    }
    None
}

/// Roots of `r` on the unit circle counted with multiplicity. A root
/// within `10^-30` of the circle must also be a root of
/// `gcd(q, reverse(q))`, which holds for every root on the circle.
pub fn circle_count_oracle(r: &UniPoly) -> Option<usize> {
    let tol = Rational::new(BigInt::one(), BigInt::from(10).pow(30));
    let mut count = 0;
    for (q, m) in yun(r) {
        let rev: RP = q.iter().rev().cloned().collect();
        let h: Vec<Fx> = gcd(&q, &rev).iter().map(Fx::real).collect();
        for z in roots_hp(&q)? {
            let gap = (z.norm_sqr() - Rational::one()).abs();
            if gap < tol {
                let hv = horner(&h, &z);
                assert!(h.len() > 1 && hv.log2_mag() < -200, "near-circle root not confirmed");
                count += m;
            }
        }
    }
    Some(count)
}

fn cmul(a: &ComplexBox, b: &ComplexBox) -> ComplexBox {
    ComplexBox {
        re: a.re.mul(&b.re).sub(&a.im.mul(&b.im)),
        im: a.re.mul(&b.im).add(&a.im.mul(&b.re)),
    }
}

/// Term-by-term rectangular enclosure of `p` over a product of boxes.
pub fn cbox_eval(p: &MultiPoly, xs: &[ComplexBox]) -> ComplexBox {
    let zero = RatInterval::point(Rational::zero());
    let mut acc = ComplexBox { re: zero.clone(), im: zero.clone() };
    for (m, c) in p.terms() {
        let mut t = ComplexBox { re: RatInterval::point(c.clone()), im: zero.clone() };
        for (k, &e) in m.exps().iter().enumerate() {
            for _ in 0..e {
                t = cmul(&t, &xs[k]);
            }
        }
        acc = ComplexBox { re: acc.re.add(&t.re), im: acc.im.add(&t.im) };
    }
    acc
}

pub fn box_has_zero(b: &ComplexBox) -> bool {
    b.re.contains(&Rational::zero()) && b.im.contains(&Rational::zero())
}

/// A point of the closed polydisc: half the draws on the torus, the rest
/// uniform in each disc.
pub fn sample_polydisc<R: Rng>(rng: &mut R, n: usize) -> Vec<Complex64> {
    let torus = rng.gen_bool(0.5);
    (0..n)
        .map(|_| {
            let r: f64 = if torus { 1.0 } else { rng.gen::<f64>().sqrt() };
            Complex64::from_polar(r, rng.gen_range(0.0..2.0 * PI))
        })
        .collect()
}

/// `|p(x)|` in double precision.
pub fn modulus_f64(t: &Terms<Complex64>, x: &[Complex64]) -> f64 {
    eval(t, x).norm()
}

pub fn f64_terms(p: &MultiPoly) -> Terms<Complex64> {
    convert(&terms_of(p))
}

/// Exact `|p(x)|^2` at the dyadic rationals nearest to `x`, clamped into
/// the closed polydisc.
pub fn exact_modulus_sqr(p: &MultiPoly, x: &[Complex64]) -> Rational {
    let pt: Vec<GaussRat> = x
        .iter()
        .map(|z| {
            let mut g = GaussRat::new(
                BigRational::from_float(z.re).unwrap(),
                BigRational::from_float(z.im).unwrap(),
            );
            while &g.re * &g.re + &g.im * &g.im > Rational::one() {
                g = GaussRat::new(&g.re * Rational::new(1023.into(), 1024.into()), &g.im * Rational::new(1023.into(), 1024.into()));
            }
            g
        })
        .collect();
    let v = p.evaluate(&pt);
    &v.re * &v.re + &v.im * &v.im
}
