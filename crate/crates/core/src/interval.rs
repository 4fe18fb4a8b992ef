//! Exact rational intervals, complex boxes and enclosure evaluation.

use std::fmt;

use num_complex::Complex;
use num_traits::{Signed, Zero};

use crate::num::{int, GaussRat, Rational};
use crate::poly::{MultiPoly, UniPoly};

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl fmt::Debug for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    ContainsZero,
    StrictlyPositive,
    StrictlyNegative,
}

fn min_max(v: [Rational; 4]) -> (Rational, Rational) {
    let mut lo = v[0].clone();
    let mut hi = v[0].clone();
    for x in &v[1..] {
        if *x < lo {
            lo = x.clone();
        }
        if *x > hi {
            hi = x.clone();
        }
    }
    (lo, hi)
}

impl RatInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RatInterval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        RatInterval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn mag(&self) -> Rational {
        let (a, b) = (self.lo.abs(), self.hi.abs());
        if a > b {
            a
        } else {
            b
        }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, o: &RatInterval) -> bool {
        self.lo <= o.lo && o.hi <= self.hi
    }

    /// Open interiors intersect.
    pub fn overlaps(&self, o: &RatInterval) -> bool {
        self.lo < o.hi && o.lo < self.hi
    }

    pub fn add(&self, o: &RatInterval) -> RatInterval {
        RatInterval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &RatInterval) -> RatInterval {
        RatInterval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn neg(&self) -> RatInterval {
        RatInterval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn mul(&self, o: &RatInterval) -> RatInterval {
        let (lo, hi) = min_max([
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ]);
        RatInterval { lo, hi }
    }

    /// `{x^2 : x ∈ self}`, tighter than `self.mul(self)`.
    pub fn sqr(&self) -> RatInterval {
        let a = &self.lo * &self.lo;
        let b = &self.hi * &self.hi;
        if self.lo.is_negative() && self.hi.is_positive() {
            RatInterval { lo: Rational::zero(), hi: a.max(b) }
        } else if a < b {
            RatInterval { lo: a, hi: b }
        } else {
            RatInterval { lo: b, hi: a }
        }
    }

    pub fn scale(&self, c: &Rational) -> RatInterval {
        let (a, b) = (&self.lo * c, &self.hi * c);
        if a <= b {
            RatInterval { lo: a, hi: b }
        } else {
            RatInterval { lo: b, hi: a }
        }
    }

    pub fn shift(&self, c: &Rational) -> RatInterval {
        RatInterval { lo: &self.lo + c, hi: &self.hi + c }
    }

    pub fn classify(&self) -> Sign {
        classify(self)
    }
}

pub fn classify(i: &RatInterval) -> Sign {
    if i.lo.is_positive() {
        Sign::StrictlyPositive
    } else if i.hi.is_negative() {
        Sign::StrictlyNegative
    } else {
        Sign::ContainsZero
    }
}

/// Axis-parallel rectangle `re × im` in the complex plane.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ComplexBox {
    pub re: RatInterval,
    pub im: RatInterval,
}

impl fmt::Debug for ComplexBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}x{:?}", self.re, self.im)
    }
}

impl ComplexBox {
    pub fn new(re: RatInterval, im: RatInterval) -> Self {
        ComplexBox { re, im }
    }

    /// Square box of half-width `r` centred at `c`.
    pub fn around(c: &GaussRat, r: &Rational) -> Self {
        ComplexBox {
            re: RatInterval::new(&c.re - r, &c.re + r),
            im: RatInterval::new(&c.im - r, &c.im + r),
        }
    }

    pub fn point(c: &GaussRat) -> Self {
        ComplexBox { re: RatInterval::point(c.re.clone()), im: RatInterval::point(c.im.clone()) }
    }

    /// Largest side length.
    pub fn width(&self) -> Rational {
        self.re.width().max(self.im.width())
    }

    /// Largest absolute value of an endpoint.
    pub fn magnitude(&self) -> Rational {
        self.re.mag().max(self.im.mag())
    }

    pub fn midpoint(&self) -> GaussRat {
        Complex::new(self.re.mid(), self.im.mid())
    }

    pub fn contains(&self, z: &GaussRat) -> bool {
        self.re.contains(&z.re) && self.im.contains(&z.im)
    }

    pub fn contains_box(&self, o: &ComplexBox) -> bool {
        self.re.contains_interval(&o.re) && self.im.contains_interval(&o.im)
    }

    /// Open interiors are disjoint.
    pub fn interior_disjoint(&self, o: &ComplexBox) -> bool {
        !(self.re.overlaps(&o.re) && self.im.overlaps(&o.im))
    }

    /// Closed boxes are disjoint.
    pub fn disjoint(&self, o: &ComplexBox) -> bool {
        self.re.hi < o.re.lo || o.re.hi < self.re.lo || self.im.hi < o.im.lo || o.im.hi < self.im.lo
    }

    /// Complex conjugate box.
    pub fn conj(&self) -> ComplexBox {
        ComplexBox { re: self.re.clone(), im: self.im.neg() }
    }

    /// The four quadrants.
    pub fn quadrisect(&self) -> [ComplexBox; 4] {
        let (rm, im) = (self.re.mid(), self.im.mid());
        let rl = RatInterval::new(self.re.lo.clone(), rm.clone());
        let rh = RatInterval::new(rm, self.re.hi.clone());
        let il = RatInterval::new(self.im.lo.clone(), im.clone());
        let ih = RatInterval::new(im, self.im.hi.clone());
        [
            ComplexBox::new(rl.clone(), il.clone()),
            ComplexBox::new(rh.clone(), il),
            ComplexBox::new(rl, ih.clone()),
            ComplexBox::new(rh, ih),
        ]
    }
}

/// Enclosure of `p` over the product of `doms` (one interval per variable of
/// `p`), by nested Horner evaluation. Each variable is split into its even
/// and odd parts, `p = E(v^2) + v·O(v^2)`, so that even powers see the tight
/// square interval.
pub fn eval_intervals(p: &MultiPoly, doms: &[RatInterval]) -> RatInterval {
    assert_eq!(doms.len(), p.nvars(), "domain dimension mismatch");
    let terms: Vec<(Vec<u32>, Rational)> =
        p.terms().map(|(m, c)| (m.exps().to_vec(), c.clone())).collect();
    let sq: Vec<RatInterval> = doms.iter().map(RatInterval::sqr).collect();
    rec_eval(&terms, 0, doms, &sq)
}

fn rec_eval(terms: &[(Vec<u32>, Rational)], var: usize, doms: &[RatInterval], sq: &[RatInterval]) -> RatInterval {
    if terms.is_empty() {
        return RatInterval::point(Rational::zero());
    }
    if var == doms.len() {
        let s = terms.iter().fold(Rational::zero(), |a, (_, c)| a + c);
        return RatInterval::point(s);
    }
    let deg = terms.iter().map(|(e, _)| e[var]).max().unwrap() as usize;
    if deg == 0 {
        return rec_eval(terms, var + 1, doms, sq);
    }
    let mut buckets: Vec<Vec<(Vec<u32>, Rational)>> = vec![Vec::new(); deg + 1];
    for t in terms {
        buckets[t.0[var] as usize].push(t.clone());
    }
    let coeffs: Vec<Option<RatInterval>> = buckets
        .iter()
        .map(|b| (!b.is_empty()).then(|| rec_eval(b, var + 1, doms, sq)))
        .collect();
    let horner = |start: usize| -> Option<RatInterval> {
        let mut acc: Option<RatInterval> = None;
        let mut k = start + 2 * ((deg - start) / 2);
        loop {
            acc = match (acc, &coeffs[k]) {
                (None, c) => c.clone(),
                (Some(a), c) => {
                    let m = a.mul(&sq[var]);
                    Some(match c {
                        Some(c) => m.add(c),
                        None => m,
                    })
                }
            };
            if k < start + 2 {
                break;
            }
            k -= 2;
        }
        acc
    };
    let even = horner(0);
    let odd = if deg >= 1 { horner(1).map(|o| o.mul(&doms[var])) } else { None };
    match (even, odd) {
        (Some(e), Some(o)) => e.add(&o),
        (Some(e), None) => e,
        (None, Some(o)) => o,
        (None, None) => RatInterval::point(Rational::zero()),
    }
}

/// Enclosure of a bivariate real polynomial in `x1, x2` over the box,
/// reading `x1 ∈ re` and `x2 ∈ im`.
pub fn box_eval(p: &MultiPoly, b: &ComplexBox) -> RatInterval {
    match p.nvars() {
        0 => RatInterval::point(p.constant_term()),
        1 => eval_intervals(p, std::slice::from_ref(&b.re)),
        2 => eval_intervals(p, &[b.re.clone(), b.im.clone()]),
        n => panic!("box_eval expects at most two variables, got {n}"),
    }
}

/// Rectangular complex interval enclosure of `g(B)`.
pub fn complex_eval(g: &UniPoly, b: &ComplexBox) -> ComplexBox {
    let zero = RatInterval::point(Rational::zero());
    let mut re = zero.clone();
    let mut im = zero;
    for a in g.coeffs().iter().rev() {
        let nre = re.mul(&b.re).sub(&im.mul(&b.im)).shift(a);
        let nim = re.mul(&b.im).add(&im.mul(&b.re));
        re = nre;
        im = nim;
    }
    ComplexBox { re, im }
}
