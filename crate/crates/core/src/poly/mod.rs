//! Exact polynomial arithmetic over `BigRational`.
//!
//! [`MultiPoly`] is a sparse map from exponent vectors to nonzero rational
//! coefficients, ordered by graded reverse lexicographic order with
//! `x_1 > x_2 > … > x_n` (declaration order). [`UniPoly`] is a dense
//! univariate polynomial used wherever only one variable is in play.

mod complex;
mod monomial;
mod parse;
mod resultant;
mod uni;

pub use complex::{circle_distance_poly, complex_split};
pub use monomial::Monomial;
pub use parse::{parse_poly, parse_poly_at};
pub use resultant::{resultant, resultant_uni};
pub use uni::{gcd_univariate, squarefree_decomposition, squarefree_part, UniPoly};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex;
use num_traits::{One, Signed, Zero};

use crate::num::{GaussRat, Rational};

/// Shared, ordered list of variable names.
pub type Vars = Arc<[String]>;

pub fn vars(names: &[&str]) -> Vars {
    names.iter().map(|s| s.to_string()).collect::<Vec<_>>().into()
}

/// `z1, …, zn`.
pub fn z_vars(n: usize) -> Vars {
    (1..=n).map(|i| format!("z{i}")).collect::<Vec<_>>().into()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Vars,
    terms: BTreeMap<Monomial, Rational>,
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.vars.join(","), self)
    }
}

impl MultiPoly {
    pub fn zero(vars: Vars) -> Self {
        MultiPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Vars, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            let n = p.nvars();
            p.terms.insert(Monomial::one(n), c);
        }
        p
    }

    pub fn one(vars: Vars) -> Self {
        Self::constant(vars, Rational::one())
    }

    /// The polynomial `x_idx`.
    pub fn var(vars: Vars, idx: usize) -> Self {
        let n = vars.len();
        assert!(idx < n, "variable index out of range");
        Self::monomial(vars, Monomial::unit(n, idx), Rational::one())
    }

    pub fn var_named(vars: Vars, name: &str) -> Self {
        let idx = vars
            .iter()
            .position(|v| v == name)
            .unwrap_or_else(|| panic!("unknown variable {name}"));
        Self::var(vars, idx)
    }

    pub fn monomial(vars: Vars, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.len(), vars.len());
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I>(vars: Vars, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one(self.nvars()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Rational)> {
        self.terms.into_iter()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.values().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn degree_in(&self, idx: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(idx)).max()
    }

    /// Indices of variables that actually occur.
    pub fn used_vars(&self) -> Vec<usize> {
        (0..self.nvars())
            .filter(|&i| self.terms.keys().any(|m| m.exp(i) > 0))
            .collect()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.len(), self.nvars());
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c · m · other`, assuming a shared variable context.
    pub fn add_scaled(&mut self, c: &Rational, m: &Monomial, other: &MultiPoly) {
        debug_assert_eq!(self.vars, other.vars);
        if c.is_zero() {
            return;
        }
        for (om, oc) in &other.terms {
            self.add_term(om.mul(m), c * oc);
        }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.vars.clone());
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.vars.clone());
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(om, oc)| (om.mul(m), oc * c))
                .collect(),
        }
    }

    pub fn monic(&self) -> MultiPoly {
        match self.leading_coeff() {
            Some(lc) => self.scale(&lc.recip()),
            None => self.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = Self::one(self.vars.clone());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Re-expresses the polynomial over `target`, which must contain every
    /// variable that occurs in `self`.
    pub fn with_vars(&self, target: &Vars) -> MultiPoly {
        if &self.vars == target {
            return self.clone();
        }
        let map: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| target.iter().position(|t| t == v))
            .collect();
        let n = target.len();
        let mut out = Self::zero(target.clone());
        for (m, c) in &self.terms {
            let mut e = vec![0u32; n];
            for (i, &x) in m.exps().iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let j = map[i].unwrap_or_else(|| {
                    panic!("variable {} missing from target context", self.vars[i])
                });
                e[j] += x;
            }
            out.add_term(Monomial::new(e), c.clone());
        }
        out
    }

    /// Drops variables that do not occur, keeping the relative order.
    pub fn trim_vars(&self) -> MultiPoly {
        let used = self.used_vars();
        let v: Vars = used.iter().map(|&i| self.vars[i].clone()).collect::<Vec<_>>().into();
        self.with_vars(&v)
    }

    fn aligned(a: &MultiPoly, b: &MultiPoly) -> (MultiPoly, MultiPoly) {
        let v = union_vars(&a.vars, &b.vars);
        (a.with_vars(&v), b.with_vars(&v))
    }

    /// Exact evaluation at a point of Gaussian rationals.
    pub fn evaluate(&self, point: &[GaussRat]) -> GaussRat {
        assert_eq!(point.len(), self.nvars(), "point dimension mismatch");
        let mut powers: Vec<Vec<GaussRat>> = point
            .iter()
            .enumerate()
            .map(|(i, z)| {
                let d = self.degree_in(i).unwrap_or(0) as usize;
                let mut pw = Vec::with_capacity(d + 1);
                pw.push(Complex::new(Rational::one(), Rational::zero()));
                for k in 1..=d {
                    let next = &pw[k - 1] * z;
                    pw.push(next);
                }
                pw
            })
            .collect();
        let mut acc = Complex::new(Rational::zero(), Rational::zero());
        for (m, c) in &self.terms {
            let mut t = Complex::new(c.clone(), Rational::zero());
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            acc += t;
        }
        powers.clear();
        acc
    }

    pub fn eval_rational(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars(), "point dimension mismatch");
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Composition `self[var := q]`. The result lives over the variables of
    /// `self` without `var`, followed by any new variables of `q`.
    pub fn substitute(&self, var: &str, q: &MultiPoly) -> MultiPoly {
        let Some(idx) = self.var_index(var) else {
            return self.clone();
        };
        let rest: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != idx)
            .map(|(_, v)| v.clone())
            .collect();
        let target = union_vars(&rest.into(), &q.vars);
        let q = q.with_vars(&target);
        // coefficients of self as a polynomial in `var`
        let deg = self.degree_in(idx).unwrap_or(0) as usize;
        let mut coeffs: Vec<MultiPoly> = vec![MultiPoly::zero(target.clone()); deg + 1];
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| target.iter().position(|t| t == v).unwrap_or(usize::MAX))
            .collect();
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.len()];
            for (i, &x) in m.exps().iter().enumerate() {
                if i != idx && x > 0 {
                    e[map[i]] += x;
                }
            }
            coeffs[m.exp(idx) as usize].add_term(Monomial::new(e), c.clone());
        }
        let mut acc = MultiPoly::zero(target);
        for c in coeffs.into_iter().rev() {
            acc = &(&acc * &q) + &c;
        }
        acc
    }

    /// Sum of absolute values of all coefficients.
    pub fn l1_norm(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c.abs())
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let (a, d) = Self::aligned(self, d);
        let (lm, lc) = d.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        let lc_inv = lc.recip();
        let mut rem = a;
        let mut quot = MultiPoly::zero(rem.vars.clone());
        while let Some((m, c)) = rem.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = m.div(&lm)?;
            let qc = -(&c * &lc_inv);
            rem.add_scaled(&qc, &qm, &d);
            quot.add_term(qm, -qc);
        }
        Some(quot)
    }

    /// Views the polynomial as univariate in `idx`; the coefficients keep the
    /// full variable context (with exponent zero in `idx`).
    pub fn coefficients_in(&self, idx: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(idx).unwrap_or(0) as usize;
        let mut out = vec![MultiPoly::zero(self.vars.clone()); deg + 1];
        for (m, c) in &self.terms {
            let k = m.exp(idx) as usize;
            out[k].add_term(m.with_exp(idx, 0), c.clone());
        }
        out
    }

    /// Converts to a univariate polynomial if at most one variable occurs.
    pub fn to_uni(&self) -> Option<UniPoly> {
        let used = self.used_vars();
        if used.len() > 1 {
            return None;
        }
        let idx = used.first().copied().unwrap_or(0);
        let deg = self.degree_in(idx).unwrap_or(0) as usize;
        let mut c = vec![Rational::zero(); deg + 1];
        for (m, v) in &self.terms {
            c[m.exp(idx) as usize] = v.clone();
        }
        Some(UniPoly::new(c))
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(&Rational) -> Rational) -> MultiPoly {
        MultiPoly::from_terms(
            self.vars.clone(),
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))),
        )
    }
}

/// Union of two variable lists: `a` first, then new names from `b`.
pub fn union_vars(a: &Vars, b: &Vars) -> Vars {
    if a == b {
        return a.clone();
    }
    let mut out: Vec<String> = a.to_vec();
    for v in b.iter() {
        if !out.contains(v) {
            out.push(v.clone());
        }
    }
    out.into()
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        if self.vars != rhs.vars {
            let (a, b) = MultiPoly::aligned(self, rhs);
            return &a + &b;
        }
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        if self.vars != rhs.vars {
            let (a, b) = MultiPoly::aligned(self, rhs);
            return &a - &b;
        }
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        if self.vars != rhs.vars {
            let (a, b) = MultiPoly::aligned(self, rhs);
            return &a * &b;
        }
        let mut out = MultiPoly::zero(self.vars.clone());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

fn fmt_coeff(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for MultiPoly {
    /// Canonical form: terms in descending monomial order, e.g.
    /// `3/2*z1^2*z2 - z2 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = m.render(&self.vars);
            match (mono.is_empty(), a.is_one()) {
                (true, _) => write!(f, "{}", fmt_coeff(&a))?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{}*{mono}", fmt_coeff(&a))?,
            }
        }
        Ok(())
    }
}
