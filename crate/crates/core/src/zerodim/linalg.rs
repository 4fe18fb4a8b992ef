//! Incremental row echelon form over the rationals, tracking how each
//! stored row combines the inserted vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::num::Rational;
use crate::poly::UniPoly;

struct Row {
    v: Vec<Rational>,
    pivot: usize,
    combo: Vec<Rational>,
}

#[derive(Default)]
pub(crate) struct Echelon {
    rows: Vec<Row>,
    inserted: usize,
}

pub(crate) enum Insert {
    Independent,
    /// Coefficients `c` (one per inserted vector, the last equal to 1) with
    /// `Σ c_j v_j = 0`.
    Dependent(Vec<Rational>),
}

fn axpy(y: &mut [Rational], a: &Rational, x: &[Rational]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi -= a * xi;
        }
    }
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reduces `v`; returns the residual and the coefficients `d` (over the
    /// inserted vectors) with `v = Σ d_j v_j + residual`.
    fn reduce(&self, mut v: Vec<Rational>) -> (Vec<Rational>, Vec<Rational>) {
        let mut d = vec![Rational::zero(); self.inserted];
        for r in &self.rows {
            if v[r.pivot].is_zero() {
                continue;
            }
            let f = &v[r.pivot] / &r.v[r.pivot];
            axpy(&mut v, &f, &r.v);
            for (dj, cj) in d.iter_mut().zip(&r.combo) {
                if !cj.is_zero() {
                    *dj += &f * cj;
                }
            }
        }
        (v, d)
    }

    pub fn insert(&mut self, v: Vec<Rational>) -> Insert {
        let (res, d) = self.reduce(v);
        let idx = self.inserted;
        self.inserted += 1;
        for r in &mut self.rows {
            r.combo.push(Rational::zero());
        }
        match res.iter().position(|x| !x.is_zero()) {
            None => {
                let mut c: Vec<Rational> = d.into_iter().map(|x| -x).collect();
                c.push(Rational::from_integer(1.into()));
                Insert::Dependent(c)
            }
            Some(p) => {
                let mut combo: Vec<Rational> = d.into_iter().map(|x| -x).collect();
                combo.push(Rational::from_integer(1.into()));
                debug_assert_eq!(combo.len(), idx + 1);
                self.rows.push(Row { v: res, pivot: p, combo });
                Insert::Independent
            }
        }
    }

    /// Coefficients expressing `v` over the inserted vectors, if it lies in
    /// their span.
    pub fn solve(&self, v: Vec<Rational>) -> Option<Vec<Rational>> {
        let (res, d) = self.reduce(v);
        res.iter().all(Zero::is_zero).then_some(d)
    }
}

/// Characteristic polynomial `det(x I - A)` of a square rational matrix.
///
/// Denominators are cleared with their lcm `L` and Berkowitz's
/// division-free recurrence runs over the integers on `L A`.
pub(crate) fn charpoly(a: &[Vec<Rational>]) -> UniPoly {
    let n = a.len();
    let l = a
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let m: Vec<Vec<BigInt>> = a
        .iter()
        .map(|row| row.iter().map(|q| q.numer() * (&l / q.denom())).collect())
        .collect();
    let b = berkowitz(&m);
    // det(yI - LA) = Σ b_j y^(n-j); substitute y = L x and divide by L^n.
    let mut c = vec![Rational::zero(); n + 1];
    let mut lpow = BigInt::one();
    for j in 0..=n {
        c[n - j] = Rational::new(b[j].clone(), lpow.clone());
        lpow *= &l;
    }
    UniPoly::new(c)
}

/// Coefficients of `det(x I - A)` from the leading one down.
fn berkowitz(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = a.len();
    let mut p = vec![BigInt::one()];
    for r in 0..n {
        // column above and row left of the new diagonal entry
        let col: Vec<BigInt> = (0..r).map(|i| a[i][r].clone()).collect();
        let row = &a[r][..r];
        let mut t = Vec::with_capacity(r + 2);
        t.push(BigInt::one());
        t.push(-a[r][r].clone());
        let mut v = col;
        for _ in 0..r {
            t.push(-row.iter().zip(&v).map(|(x, y)| x * y).sum::<BigInt>());
            v = (0..r).map(|i| a[i][..r].iter().zip(&v).map(|(x, y)| x * y).sum()).collect();
        }
        let mut q = vec![BigInt::zero(); r + 2];
        for (i, qi) in q.iter_mut().enumerate() {
            for j in 0..=r.min(i) {
                if i - j < t.len() {
                    *qi += &t[i - j] * &p[j];
                }
            }
        }
        p = q;
    }
    p
}
