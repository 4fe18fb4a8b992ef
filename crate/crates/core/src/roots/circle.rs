//! Counting roots on the unit circle through the Möbius map
//! `w = (z - i)/(z + i)`, which sends the real line onto the circle minus
//! the point `w = 1`.

use num_traits::Zero;

use super::real::real_root_isolation;
use crate::error::{Error, Result};
use crate::num::int;
use crate::poly::{gcd_univariate, squarefree_decomposition, UniPoly};

/// A polynomial with Gaussian coefficients as a pair `re + i·im`.
#[derive(Clone)]
struct CPoly {
    re: UniPoly,
    im: UniPoly,
}

impl CPoly {
    fn mul(&self, o: &CPoly) -> CPoly {
        CPoly {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }
}

/// Real and imaginary parts of `(z + i)^m q((z - i)/(z + i))`, `m = deg q`.
fn mobius_numerator(q: &UniPoly) -> (UniPoly, UniPoly) {
    let m = q.degree().unwrap_or(0);
    let zm = CPoly { re: UniPoly::x(), im: UniPoly::constant(int(-1)) };
    let zp = CPoly { re: UniPoly::x(), im: UniPoly::constant(int(1)) };
    let one = CPoly { re: UniPoly::one(), im: UniPoly::zero() };
    let mut pm = vec![one.clone()];
    let mut pp = vec![one];
    for k in 1..=m {
        pm.push(pm[k - 1].mul(&zm));
        pp.push(pp[k - 1].mul(&zp));
    }
    let mut re = UniPoly::zero();
    let mut im = UniPoly::zero();
    for (j, c) in q.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let t = pm[j].mul(&pp[m - j]);
        re = &re + &t.re.scale(c);
        im = &im + &t.im.scale(c);
    }
    (re, im)
}

/// Distinct roots of a squarefree `q` on `|z| = 1`.
fn circle_count_squarefree(q: &UniPoly) -> usize {
    let (re, im) = mobius_numerator(q);
    let g = gcd_univariate(&re, &im);
    let finite = real_root_isolation(&g).len();
    // w = 1 is the image of z = ∞
    let at_one = q.eval(&int(1)).is_zero() as usize;
    finite + at_one
}

/// Number of roots of `r` on the unit circle, counted with multiplicity.
pub fn count_circle_roots(r: &UniPoly) -> Result<usize> {
    if r.is_zero() {
        return Err(Error::InvalidArgument("zero polynomial has no finite root count".into()));
    }
    Ok(squarefree_decomposition(r)
        .iter()
        .map(|(q, m)| m * circle_count_squarefree(q))
        .sum())
}
