//! Dense univariate polynomials over `BigRational`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Monomial, MultiPoly, Vars};
use crate::num::{GaussRat, Rational};

/// Coefficients low to high, no trailing zeros. The zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    c: Vec<Rational>,
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({})", self.to_multi_named("t"))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_multi_named("t"))
    }
}

impl UniPoly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        UniPoly { c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| Rational::from_integer(x.into())).collect())
    }

    pub fn zero() -> Self {
        UniPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monic linear polynomial `x - a`.
    pub fn linear_root(a: Rational) -> Self {
        Self::new(vec![-a, Rational::one()])
    }

    pub fn x() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.c.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Rational {
        self.c.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.c.iter().map(|x| x * k).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading_coeff().recip())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, x)| x * Rational::from_integer(k.into()))
                .collect(),
        )
    }

    /// Euclidean division `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.c.len() - 1;
        if self.c.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut r = self.c.clone();
        let inv = d.leading_coeff().recip();
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let f = &r[k + dd] * &inv;
            if f.is_zero() {
                continue;
            }
            for (j, dj) in d.c.iter().enumerate() {
                r[k + j] -= &f * dj;
            }
            q[k] = f;
        }
        r.truncate(dd);
        (UniPoly::new(q), UniPoly::new(r))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.div_rem(d).1
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.c.iter().rev().fold(Rational::zero(), |acc, a| acc * x + a)
    }

    pub fn eval_gauss(&self, z: &GaussRat) -> GaussRat {
        let mut acc = Complex::new(Rational::zero(), Rational::zero());
        for a in self.c.iter().rev() {
            acc = &acc * z;
            acc.re += a;
        }
        acc
    }

    /// `self(q(x))`.
    pub fn compose(&self, q: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for a in self.c.iter().rev() {
            acc = &(&acc * q) + &UniPoly::constant(a.clone());
        }
        acc
    }

    /// Taylor coefficients at a Gaussian point `c`: `self(c + y) = Σ b_k y^k`.
    pub fn taylor_gauss(&self, c: &GaussRat) -> Vec<GaussRat> {
        let n = self.c.len();
        let mut b: Vec<GaussRat> = self
            .c
            .iter()
            .map(|a| Complex::new(a.clone(), Rational::zero()))
            .collect();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = &b[j + 1] * c;
                b[j] = &b[j] + &t;
            }
        }
        b
    }

    /// Number of sign changes in the coefficient sequence.
    pub fn sign_changes(&self) -> usize {
        let mut last = 0i8;
        let mut n = 0;
        for a in &self.c {
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

    /// Scales to a primitive integer polynomial with positive leading
    /// coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let l = self.c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let mut ints: Vec<BigInt> = self.c.iter().map(|x| (x * &l).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let sgn = if ints.last().unwrap().is_negative() { -1 } else { 1 };
        for x in &mut ints {
            *x = &*x / &g * sgn;
        }
        ints
    }

    pub fn from_integers(c: &[BigInt]) -> Self {
        Self::new(c.iter().map(|x| Rational::from_integer(x.clone())).collect())
    }

    /// Embeds as a multivariate polynomial in variable `idx` of `vars`.
    pub fn to_multi(&self, vars: &Vars, idx: usize) -> MultiPoly {
        let n = vars.len();
        MultiPoly::from_terms(
            vars.clone(),
            self.c.iter().enumerate().map(|(k, a)| {
                let mut e = vec![0u32; n];
                e[idx] = k as u32;
                (Monomial::new(e), a.clone())
            }),
        )
    }

    pub fn to_multi_named(&self, name: &str) -> MultiPoly {
        self.to_multi(&super::vars(&[name]), 0)
    }

    /// Cauchy bound: every root has modulus below this value.
    pub fn cauchy_bound(&self) -> Rational {
        let lc = self.leading_coeff().abs();
        let d = self.c.len().saturating_sub(1);
        let m = self.c[..d]
            .iter()
            .map(|a| a.abs() / &lc)
            .fold(Rational::zero(), |a, b| if b > a { b } else { a });
        m + Rational::one()
    }
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.c.len().max(rhs.c.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.c.len().max(rhs.c.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.c.len() + rhs.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.c.iter().map(|x| -x).collect())
    }
}

macro_rules! owned_uni_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $f(self, rhs: UniPoly) -> UniPoly {
                (&self).$f(&rhs)
            }
        }
    )*};
}
owned_uni_ops!(Add add, Sub sub, Mul mul);

/// Monic gcd; zero when both inputs are zero.
pub fn gcd_univariate(a: &UniPoly, b: &UniPoly) -> UniPoly {
    // integer primitive remainder sequence keeps coefficient growth in check
    let mut x = UniPoly::from_integers(&a.primitive_integer());
    let mut y = UniPoly::from_integers(&b.primitive_integer());
    while !y.is_zero() {
        let r = x.rem(&y);
        x = y;
        y = UniPoly::from_integers(&r.primitive_integer());
    }
    x.monic()
}

/// Yun's algorithm: returns `(q_j, j)` with `f = lc · Π q_j^j`, each `q_j`
/// monic, squarefree, pairwise coprime and nonconstant.
pub fn squarefree_decomposition(f: &UniPoly) -> Vec<(UniPoly, usize)> {
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let f = f.monic();
    let fp = f.derivative();
    let a0 = gcd_univariate(&f, &fp);
    let mut b = f.div_rem(&a0).0;
    let mut c = fp.div_rem(&a0).0;
    let mut d = &c - &b.derivative();
    let mut j = 1;
    loop {
        let a = gcd_univariate(&b, &d);
        if !a.is_constant() {
            out.push((a.clone(), j));
        }
        b = b.div_rem(&a).0;
        if b.is_constant() {
            break;
        }
        c = d.div_rem(&a).0;
        d = &c - &b.derivative();
        j += 1;
    }
    out
}

/// Squarefree part, monic.
pub fn squarefree_part(f: &UniPoly) -> UniPoly {
    if f.is_constant() {
        return UniPoly::one();
    }
    f.div_rem(&gcd_univariate(f, &f.derivative())).0.monic()
}
