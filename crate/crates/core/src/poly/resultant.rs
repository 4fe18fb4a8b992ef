//! Resultants by the subresultant pseudo-remainder sequence.

use num_traits::{One, Zero};

use super::{union_vars, MultiPoly, UniPoly, Vars};
use crate::error::{Error, Result};
use crate::num::Rational;

/// Polynomial in a distinguished variable with multivariate coefficients,
/// low to high, no trailing zeros.
type Dense = Vec<MultiPoly>;

fn trim(mut a: Dense) -> Dense {
    while a.last().is_some_and(MultiPoly::is_zero) {
        a.pop();
    }
    a
}

fn deg(a: &Dense) -> usize {
    a.len() - 1
}

fn prem(a: &Dense, b: &Dense) -> Dense {
    let db = deg(b);
    let lb = b.last().unwrap();
    let mut r = a.clone();
    let mut e = (deg(a) + 1 - db) as u32;
    while r.len() > db && !r.is_empty() {
        let dr = deg(&r);
        let lr = r[dr].clone();
        for x in r.iter_mut() {
            *x = &*x * lb;
        }
        let shift = dr - db;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = &r[shift + j] - &(&lr * bj);
        }
        r = trim(r);
        e -= 1;
    }
    if e > 0 {
        let f = lb.pow(e);
        for x in r.iter_mut() {
            *x = &*x * &f;
        }
    }
    r
}

fn div_all(a: Dense, d: &MultiPoly) -> Dense {
    a.into_iter()
        .map(|x| x.div_exact(d).expect("subresultant division is exact"))
        .collect()
}

/// Resultant of `p` and `q` with respect to `var`. The result is expressed
/// over the remaining variables of both inputs.
pub fn resultant(p: &MultiPoly, q: &MultiPoly, var: &str) -> Result<MultiPoly> {
    let ctx = union_vars(p.vars(), q.vars());
    let rest: Vars = ctx
        .iter()
        .filter(|v| v.as_str() != var)
        .cloned()
        .collect::<Vec<_>>()
        .into();
    let (p, q) = (p.with_vars(&ctx), q.with_vars(&ctx));
    let Some(idx) = ctx.iter().position(|v| v == var) else {
        return Err(Error::NoEliminationVariable);
    };
    let dp = p.degree_in(idx).unwrap_or(0);
    let dq = q.degree_in(idx).unwrap_or(0);
    if dp == 0 && dq == 0 {
        return Err(Error::NoEliminationVariable);
    }
    if p.is_zero() || q.is_zero() {
        return Ok(MultiPoly::zero(rest));
    }
    let mut a = trim(p.coefficients_in(idx));
    let mut b = trim(q.coefficients_in(idx));
    let mut s = Rational::one();
    if deg(&a) < deg(&b) {
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            s = -s;
        }
        std::mem::swap(&mut a, &mut b);
    }
    let one = MultiPoly::one(ctx.clone());
    let mut g = one.clone();
    let mut h = one;
    while deg(&b) > 0 {
        let delta = (deg(&a) - deg(&b)) as u32;
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            s = -s;
        }
        let r = prem(&a, &b);
        a = b;
        if r.is_empty() {
            return Ok(MultiPoly::zero(rest));
        }
        b = div_all(r, &(&g * &h.pow(delta)));
        g = a.last().unwrap().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g.pow(delta).div_exact(&h.pow(delta - 1)).expect("exact"),
        };
    }
    let da = deg(&a) as u32;
    let lb = b[0].clone();
    let res = if da == 0 {
        one_like(&lb)
    } else {
        // h^(1 - da) * lb^da
        lb.pow(da).div_exact(&h.pow(da - 1)).expect("exact")
    };
    Ok(res.scale(&s).with_vars(&rest))
}

fn one_like(p: &MultiPoly) -> MultiPoly {
    MultiPoly::one(p.vars().clone())
}

/// Resultant of two univariate polynomials via Euclidean remainders.
pub fn resultant_uni(a: &UniPoly, b: &UniPoly) -> Rational {
    if a.is_zero() || b.is_zero() {
        return Rational::zero();
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut acc = Rational::one();
    loop {
        let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
        if db == 0 {
            return acc * num_traits::pow(b.leading_coeff(), da);
        }
        let r = a.rem(&b);
        if r.is_zero() {
            return Rational::zero();
        }
        let dr = r.degree().unwrap();
        if da % 2 == 1 && db % 2 == 1 {
            acc = -acc;
        }
        acc *= num_traits::pow(b.leading_coeff(), da - dr);
        a = b;
        b = r;
    }
}
