//! Certified root isolation.
//!
//! Complex roots of a squarefree rational polynomial are located with
//! Aberth iterations and then certified one by one with a Rouché test on a
//! small disc around each approximation. The certified discs are pairwise
//! disjoint and there are exactly `deg f` of them, so every root is
//! accounted for. Isolating boxes are nested dyadic boxes chosen around the
//! discs. Non-real roots are handled in conjugate pairs: the upper root is
//! computed and its partner is its mirror image, so the box set is closed
//! under conjugation.

mod aberth;
mod circle;
mod disc;
mod real;

pub use circle::count_circle_roots;
pub use disc::Disc;
pub use real::{real_root_isolation, refine_real};

use num_complex::Complex;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::interval::{ComplexBox, RatInterval};
use crate::num::{int, log2_approx, pow2, GaussRat, Rational};
use crate::poly::UniPoly;
use aberth::{aberth_exact_step, approximate_f64, root_scale, to_gauss, Slot};
use disc::{excludes, newton_step, polish, rouche_radius};

const MAX_BITS: u32 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootKind {
    Real,
    /// Positive imaginary part; the index is the conjugate partner.
    Upper(usize),
    /// Mirror image of the root at the given index.
    Lower(usize),
}

/// Isolating boxes for all complex roots of a squarefree polynomial,
/// sorted by the real then imaginary part of the root.
#[derive(Debug, Clone)]
pub struct IsolationResult {
    pub boxes: Vec<ComplexBox>,
    pub polynomial: UniPoly,
    kinds: Vec<RootKind>,
    discs: Vec<Disc>,
    derivative: UniPoly,
}

impl IsolationResult {
    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn kinds(&self) -> &[RootKind] {
        &self.kinds
    }

    /// Certified discs, one per box, each inside its box.
    pub fn discs(&self) -> &[Disc] {
        &self.discs
    }

    pub fn max_width(&self) -> Rational {
        self.boxes.iter().map(ComplexBox::width).max().unwrap_or_else(Rational::zero)
    }

    pub fn min_width(&self) -> Rational {
        self.boxes.iter().map(ComplexBox::width).min().unwrap_or_else(Rational::zero)
    }

    /// The index that carries the computation for root `i` (itself unless
    /// `i` is a lower conjugate).
    pub fn primary(&self, i: usize) -> usize {
        match self.kinds[i] {
            RootKind::Lower(p) => p,
            _ => i,
        }
    }

    pub fn partner(&self, i: usize) -> Option<usize> {
        match self.kinds[i] {
            RootKind::Real => None,
            RootKind::Upper(p) | RootKind::Lower(p) => Some(p),
        }
    }

    /// Shrinks box `i` (and its conjugate partner) to width at most `eps`,
    /// keeping it nested in the current box.
    pub fn refine_root(&mut self, i: usize, eps: &Rational) -> Result<()> {
        let p = self.primary(i);
        if self.boxes[p].width() <= *eps {
            return Ok(());
        }
        let real = self.kinds[p] == RootKind::Real;
        let (b, d) = descend_to(&self.polynomial, &self.derivative, &self.boxes[p], &self.discs[p], real, eps)?;
        self.boxes[p] = b;
        self.discs[p] = d;
        if let RootKind::Upper(q) = self.kinds[p] {
            self.boxes[q] = self.boxes[p].conj();
            self.discs[q] = self.discs[p].conj();
        }
        Ok(())
    }

    /// Refines every box to width at most `eps`.
    pub fn refine_all(&mut self, eps: &Rational) -> Result<()> {
        let targets: Vec<(usize, Rational)> = (0..self.len())
            .filter(|&i| !matches!(self.kinds[i], RootKind::Lower(_)))
            .map(|i| (i, eps.clone()))
            .collect();
        self.refine_each(&targets)
    }

    /// Refines the listed roots, each to its own width, in parallel.
    pub fn refine_each(&mut self, targets: &[(usize, Rational)]) -> Result<()> {
        let work: Vec<(usize, &Rational)> = targets
            .iter()
            .map(|(i, e)| (self.primary(*i), e))
            .filter(|(p, e)| self.boxes[*p].width() > **e)
            .collect();
        let done: Vec<Result<(usize, ComplexBox, Disc)>> = work
            .par_iter()
            .map(|&(p, e)| {
                let real = self.kinds[p] == RootKind::Real;
                descend_to(&self.polynomial, &self.derivative, &self.boxes[p], &self.discs[p], real, e)
                    .map(|(b, d)| (p, b, d))
            })
            .collect();
        for r in done {
            let (p, b, d) = r?;
            if b.width() >= self.boxes[p].width() {
                continue;
            }
            if let RootKind::Upper(q) = self.kinds[p] {
                self.boxes[q] = b.conj();
                self.discs[q] = d.conj();
            }
            self.boxes[p] = b;
            self.discs[p] = d;
        }
        Ok(())
    }
}

/// Halves `iv` by choosing among the windows at offsets 0, w/2 and w/4 the
/// first one that strictly contains `[c - r, c + r]`.
fn half_windows(iv: &RatInterval) -> [RatInterval; 3] {
    let w = iv.width();
    let h = &w / int(2);
    let q = &w / int(4);
    [
        RatInterval::new(iv.lo.clone(), &iv.lo + &h),
        RatInterval::new(&iv.lo + &h, iv.hi.clone()),
        RatInterval::new(&iv.lo + &q, &iv.lo + &q + &h),
    ]
}

fn inside(c: &Rational, r: &Rational, iv: &RatInterval) -> bool {
    (c - r) > iv.lo && (c + r) < iv.hi
}

/// One level of descent: a sub-box of half the width of `b` that strictly
/// contains the disc. Real roots keep a box symmetric about the real axis.
fn descend_once(b: &ComplexBox, d: &Disc, real: bool) -> Option<ComplexBox> {
    let re = half_windows(&b.re).into_iter().find(|iv| inside(&d.c.re, &d.r, iv))?;
    let im = if real {
        let q = b.im.width() / int(4);
        let iv = RatInterval::new(&b.im.mid() - &q, &b.im.mid() + &q);
        inside(&d.c.im, &d.r, &iv).then_some(iv)?
    } else {
        half_windows(&b.im).into_iter().find(|iv| inside(&d.c.im, &d.r, iv))?
    };
    Some(ComplexBox::new(re, im))
}

/// Re-polishes `d` to a radius small enough to fit a box of width `w`,
/// staying inside `b`.
fn shrink_disc(f: &UniPoly, fp: &UniPoly, d: &Disc, b: &ComplexBox, w: &Rational) -> Result<Disc> {
    let target = (w / int(16)).min(&d.r / int(4));
    let bits = (-log2_approx(&target)).max(0) as u32 + 16;
    if bits > MAX_BITS {
        return Err(Error::IterationCap("root refinement precision".into()));
    }
    let nd = polish(f, fp, &d.c, Some(&target), bits)
        .ok_or_else(|| Error::IterationCap("root refinement".into()))?;
    if !nd.strictly_inside(b) {
        return Err(Error::IterationCap("refined disc left its box".into()));
    }
    Ok(nd)
}

fn descend_step(f: &UniPoly, fp: &UniPoly, b: &ComplexBox, d: &mut Disc, real: bool) -> Result<ComplexBox> {
    for _ in 0..8 {
        if let Some(nb) = descend_once(b, d, real) {
            return Ok(nb);
        }
        *d = shrink_disc(f, fp, d, b, &(b.width() / int(2)))?;
    }
    Err(Error::IterationCap("box descent".into()))
}

fn descend_to(
    f: &UniPoly,
    fp: &UniPoly,
    b: &ComplexBox,
    d: &Disc,
    real: bool,
    eps: &Rational,
) -> Result<(ComplexBox, Disc)> {
    if !eps.is_positive() {
        return Err(Error::InvalidArgument("refinement width must be positive".into()));
    }
    let mut b = b.clone();
    let mut d = d.clone();
    while b.width() > *eps {
        b = descend_step(f, fp, &b, &mut d, real)?;
    }
    Ok((b, d))
}

fn initial_bits(f: &UniPoly) -> u32 {
    let s = root_scale(f);
    64 + s.unsigned_abs() as u32
}

/// Conjugation-closed primary approximations: reals first, then uppers.
fn seed(f: &UniPoly, nreal: usize, bits: u32) -> (Vec<GaussRat>, Vec<Slot>) {
    let d = f.degree().unwrap_or(0);
    let approx = approximate_f64(f).unwrap_or_else(|| {
        let r = (root_scale(f) as f64).exp2() / 2.0;
        (0..d)
            .map(|j| num_complex::Complex64::from_polar(r, 2.0 * std::f64::consts::PI * (j as f64 + 0.25) / d as f64))
            .collect()
    });
    let mut by_im: Vec<_> = approx.clone();
    by_im.sort_by(|a, b| a.im.abs().partial_cmp(&b.im.abs()).unwrap_or(std::cmp::Ordering::Equal));
    let mut zs = Vec::new();
    let mut slots = Vec::new();
    for z in &by_im[..nreal] {
        let mut g = to_gauss(*z, bits);
        g.im = Rational::zero();
        zs.push(g);
        slots.push(Slot::Real);
    }
    let mut rest: Vec<_> = by_im[nreal..].to_vec();
    rest.sort_by(|a, b| b.im.partial_cmp(&a.im).unwrap_or(std::cmp::Ordering::Equal));
    let npairs = (d - nreal) / 2;
    for z in &rest[..npairs] {
        let mut z = *z;
        if z.im <= 0.0 {
            z.im = z.im.abs().max(1e-6 * z.re.abs().max(1.0));
        }
        zs.push(to_gauss(z, bits));
        slots.push(Slot::Upper);
    }
    (zs, slots)
}

/// Certifies discs around the primaries and their mirrors; `None` unless
/// all `d` discs exist and are pairwise disjoint.
fn certify(f: &UniPoly, zs: &[GaussRat], slots: &[Slot], bits: u32) -> Option<Vec<(Disc, Slot)>> {
    use rayon::prelude::*;
    let radii: Vec<Option<Rational>> = zs.par_iter().map(|z| rouche_radius(f, z, bits + 8)).collect();
    let mut discs = Vec::new();
    for ((z, s), r) in zs.iter().zip(slots).zip(radii) {
        let d = Disc { c: z.clone(), r: r? };
        if *s == Slot::Upper && d.c.im <= d.r {
            return None;
        }
        discs.push((d, *s));
    }
    let mut all: Vec<&Disc> = discs.iter().map(|(d, _)| d).collect();
    let mirrors: Vec<Disc> = discs.iter().filter(|(_, s)| *s == Slot::Upper).map(|(d, _)| d.conj()).collect();
    all.extend(mirrors.iter());
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            if !all[i].disjoint(all[j]) {
                return None;
            }
        }
    }
    Some(discs)
}

/// Certified discs for all roots of a squarefree `f`, sorted by centre,
/// with their kinds.
fn certified_discs(f: &UniPoly, fp: &UniPoly) -> Result<(Vec<Disc>, Vec<RootKind>)> {
    let d = f.degree().unwrap_or(0);
    let nreal = real_root_isolation(f).len();
    let mut bits = initial_bits(f);
    let (mut zs, slots) = seed(f, nreal, bits);
    debug_assert_eq!(zs.len(), nreal + (d - nreal) / 2);
    let found = loop {
        if let Some(c) = certify(f, &zs, &slots, bits) {
            break c;
        }
        let mut converged = false;
        for _ in 0..(12 + 2 * (bits as f64).log2() as usize) {
            let (nz, mag) = aberth_exact_step(f, fp, &zs, &slots, bits);
            zs = nz;
            if mag < -(bits as i64) + 8 {
                converged = true;
                break;
            }
        }
        if converged {
            if let Some(c) = certify(f, &zs, &slots, bits) {
                break c;
            }
        }
        bits *= 2;
        if bits > MAX_BITS {
            return Err(Error::IterationCap("root isolation precision".into()));
        }
        zs = zs.iter().map(|z| crate::num::round_gauss(z, bits)).collect();
    };
    let mut discs: Vec<(Disc, RootKind)> = Vec::new();
    for (dd, s) in found {
        match s {
            Slot::Real => discs.push((dd, RootKind::Real)),
            Slot::Upper => {
                discs.push((dd.conj(), RootKind::Lower(usize::MAX)));
                discs.push((dd, RootKind::Upper(usize::MAX)));
            }
        }
    }
    discs.sort_by(|a, b| a.0.c.re.cmp(&b.0.c.re).then(a.0.c.im.cmp(&b.0.c.im)));
    // link partners by exact conjugate centres
    let n = discs.len();
    let mut kinds: Vec<RootKind> = discs.iter().map(|x| x.1).collect();
    for i in 0..n {
        if let RootKind::Upper(_) = kinds[i] {
            let target = discs[i].0.c.conj();
            let j = (0..n).find(|&j| discs[j].0.c == target && matches!(kinds[j], RootKind::Lower(_))).unwrap();
            kinds[i] = RootKind::Upper(j);
            kinds[j] = RootKind::Lower(i);
        }
    }
    Ok((discs.into_iter().map(|x| x.0).collect(), kinds))
}

/// Smallest power-of-two exponent `k ≥ 0` with every disc strictly inside
/// `[-2^k, 2^k]^2`.
fn top_exponent(discs: &[Disc]) -> i64 {
    let mut k = 0i64;
    loop {
        let t = pow2(k);
        if discs.iter().all(|d| d.c.re.abs() + &d.r < t && d.c.im.abs() + &d.r < t) {
            return k;
        }
        k += 1;
    }
}

/// Isolating boxes for every complex root of a squarefree `f`, optionally
/// restricted to the roots inside `region`, with all widths at most `eps`
/// when given. Each box is the coarsest box of the dyadic descent from
/// `[-2^k, 2^k]^2` that separates its root from all the others.
pub fn isolate(f: &UniPoly, region: Option<&ComplexBox>, eps: Option<&Rational>) -> Result<IsolationResult> {
    if f.is_constant() {
        return Err(Error::NoRoots);
    }
    let f = f.monic();
    let fp = f.derivative();
    let (mut discs, kinds) = certified_discs(&f, &fp)?;
    let n = discs.len();
    let k = top_exponent(&discs);
    let top = ComplexBox::new(
        RatInterval::new(-pow2(k), pow2(k)),
        RatInterval::new(-pow2(k), pow2(k)),
    );
    let mut boxes = vec![top; n];
    let primaries: Vec<usize> = (0..n).filter(|&i| !matches!(kinds[i], RootKind::Lower(_))).collect();
    let mirror = |boxes: &mut Vec<ComplexBox>, discs: &mut Vec<Disc>, i: usize| {
        if let RootKind::Upper(q) = kinds[i] {
            boxes[q] = boxes[i].conj();
            discs[q] = discs[i].conj();
        }
    };
    // separate each box from every other disc
    for &i in &primaries {
        let real = kinds[i] == RootKind::Real;
        loop {
            let clear = (0..n).all(|j| j == i || discs[j].disjoint_box(&boxes[i]));
            if clear {
                break;
            }
            let mut d = discs[i].clone();
            boxes[i] = descend_step(&f, &fp, &boxes[i], &mut d, real)?;
            discs[i] = d;
            mirror(&mut boxes, &mut discs, i);
        }
        mirror(&mut boxes, &mut discs, i);
    }
    // then make boxes pairwise interior-disjoint
    loop {
        let mut clash = None;
        'outer: for i in 0..n {
            for j in i + 1..n {
                if !boxes[i].interior_disjoint(&boxes[j]) {
                    clash = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((i, j)) = clash else { break };
        let wide = if boxes[i].width() >= boxes[j].width() { i } else { j };
        let p = match kinds[wide] {
            RootKind::Lower(p) => p,
            _ => wide,
        };
        let real = kinds[p] == RootKind::Real;
        let mut d = discs[p].clone();
        boxes[p] = descend_step(&f, &fp, &boxes[p], &mut d, real)?;
        discs[p] = d;
        mirror(&mut boxes, &mut discs, p);
    }
    let mut res = IsolationResult { boxes, polynomial: f.clone(), kinds, discs, derivative: fp };
    if let Some(region) = region {
        res = restrict(res, region)?;
    }
    if let Some(eps) = eps {
        res.refine_all(eps)?;
    }
    Ok(res)
}

/// Keeps the roots that lie in the closed `region`.
fn restrict(mut res: IsolationResult, region: &ComplexBox) -> Result<IsolationResult> {
    let f = res.polynomial.clone();
    let fp = res.derivative.clone();
    let mut keep = vec![false; res.len()];
    for i in 0..res.len() {
        let mut d = res.discs[i].clone();
        let mut tries = 0;
        loop {
            let in_re = &d.c.re - &d.r >= region.re.lo && &d.c.re + &d.r <= region.re.hi;
            let in_im = &d.c.im - &d.r >= region.im.lo && &d.c.im + &d.r <= region.im.hi;
            if in_re && in_im {
                keep[i] = true;
                break;
            }
            if d.disjoint_box(region) {
                break;
            }
            if exact_root_in(&f, &d, region) {
                keep[i] = true;
                break;
            }
            tries += 1;
            if tries > 12 {
                return Err(Error::IterationCap("root on region boundary".into()));
            }
            d = shrink_disc(&f, &fp, &d, &res.boxes[i], &(d.r.clone() * int(4)))?;
        }
    }
    // keep conjugate structure consistent: drop partner links that leave
    let idx: Vec<usize> = (0..res.len()).filter(|&i| keep[i]).collect();
    let remap = |j: usize| idx.iter().position(|&x| x == j);
    let kinds = idx
        .iter()
        .map(|&i| match res.kinds[i] {
            RootKind::Real => RootKind::Real,
            RootKind::Upper(p) => remap(p).map_or(RootKind::Real, RootKind::Upper),
            RootKind::Lower(p) => remap(p).map_or(RootKind::Real, RootKind::Lower),
        })
        .collect::<Vec<_>>();
    // an unpaired non-real root is refined on its own
    let kinds = kinds
        .iter()
        .zip(&idx)
        .map(|(k, &i)| match (k, res.kinds[i]) {
            (RootKind::Real, RootKind::Upper(_) | RootKind::Lower(_)) => RootKind::Upper(usize::MAX),
            (k, _) => *k,
        })
        .collect::<Vec<_>>();
    res.boxes = idx.iter().map(|&i| res.boxes[i].clone()).collect();
    res.discs = idx.iter().map(|&i| res.discs[i].clone()).collect();
    res.kinds = kinds;
    Ok(res)
}

/// Rational roots sitting exactly on the region boundary.
fn exact_root_in(f: &UniPoly, d: &Disc, region: &ComplexBox) -> bool {
    let c = Complex::new(d.c.re.clone(), d.c.im.clone());
    region.contains(&c) && f.eval_gauss(&c).is_zero()
}

/// Shrinks a box that isolates exactly one root of `f` to a sub-box of
/// width at most `eps` containing the same root.
pub fn refine(f: &UniPoly, b: &ComplexBox, eps: &Rational) -> Result<ComplexBox> {
    if f.is_constant() {
        return Err(Error::NoRoots);
    }
    let f = f.monic();
    let fp = f.derivative();
    let symmetric = b.im.lo == -&b.im.hi;
    let bits = 64 + (-log2_approx(&b.width())).max(0) as u32 + (-log2_approx(eps)).max(0) as u32;
    // breadth-first search for a certified disc inside b
    let mut queue = std::collections::VecDeque::from([b.clone()]);
    let mut visited = 0usize;
    let disc = loop {
        let Some(cell) = queue.pop_front() else {
            return Err(Error::EmptyRefinement);
        };
        visited += 1;
        if visited > 4096 {
            return Err(Error::IterationCap("refinement search".into()));
        }
        let m = cell.midpoint();
        let rho = (cell.re.width() + cell.im.width()) / int(2);
        if excludes(&f, &m, &rho) {
            continue;
        }
        if let Some(d) = try_newton(&f, &fp, &m, b, bits) {
            break d;
        }
        queue.extend(cell.quadrisect());
    };
    let real = symmetric && disc.c.im.is_zero();
    let (nb, _) = descend_to(&f, &fp, b, &disc, real, eps)?;
    Ok(nb)
}

fn try_newton(f: &UniPoly, fp: &UniPoly, start: &GaussRat, b: &ComplexBox, bits: u32) -> Option<Disc> {
    let mut c = crate::num::round_gauss(start, bits);
    for _ in 0..40 {
        if !b.contains(&c) {
            return None;
        }
        if let Some(r) = rouche_radius(f, &c, bits + 8) {
            let d = Disc { c: c.clone(), r };
            if d.strictly_inside(b) {
                return Some(d);
            }
        }
        c = newton_step(f, fp, &c, bits)?;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{gauss, rat};

    fn u(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn quadratic_from_worked_example() {
        let res = isolate(&u(&[-2, -2, 1]), None, None).unwrap();
        assert_eq!(res.len(), 2);
        assert!(res.boxes[0].contains(&gauss(rat(-732, 1000), int(0))));
        assert!(res.boxes[1].contains(&gauss(rat(2732, 1000), int(0))));
        assert_eq!(res.boxes[0].re, RatInterval::new(int(-4), int(0)));
        assert_eq!(res.boxes[1].re, RatInterval::new(int(0), int(4)));
        assert!(res.boxes[0].interior_disjoint(&res.boxes[1]));
    }

    #[test]
    fn single_root_at_origin() {
        let res = isolate(&u(&[0, 1]), None, None).unwrap();
        assert_eq!(res.len(), 1);
        assert!(res.boxes[0].contains(&gauss(int(0), int(0))));
    }

    #[test]
    fn imaginary_pair_straddles_axis() {
        let res = isolate(&u(&[1, 0, 1]), None, None).unwrap();
        assert_eq!(res.len(), 2);
        for b in &res.boxes {
            assert!(b.re.lo < int(0) && b.re.hi > int(0));
        }
        assert_eq!(res.kinds()[0], RootKind::Lower(1));
        assert_eq!(res.boxes[0], res.boxes[1].conj());
    }

    #[test]
    fn constant_has_no_roots() {
        assert_eq!(isolate(&u(&[3]), None, None).unwrap_err(), Error::NoRoots);
    }

    #[test]
    fn refine_to_tiny_width() {
        let f = u(&[-2, -2, 1]);
        let res = isolate(&f, None, None).unwrap();
        let eps = rat(1, 1_000_000);
        let b = refine(&f, &res.boxes[1], &eps).unwrap();
        assert!(b.width() <= eps);
        assert!(res.boxes[1].contains_box(&b));
        // 1 + sqrt(3) lies in b.re
        let lo = &b.re.lo - int(1);
        let hi = &b.re.hi - int(1);
        assert!(lo < int(0) || &lo * &lo < int(3));
        assert!(&hi * &hi > int(3));
        let b5 = refine(&u(&[-5, 1]), &ComplexBox::new(RatInterval::new(int(4), int(7)), RatInterval::new(int(-1), int(1))), &rat(1, 2)).unwrap();
        assert!(b5.width() <= rat(1, 2) && b5.contains(&gauss(int(5), int(0))));
    }

    #[test]
    fn refine_rejects_rootless_box() {
        let f = u(&[-2, -2, 1]);
        let b = ComplexBox::new(RatInterval::new(int(10), int(11)), RatInterval::new(int(0), int(1)));
        assert_eq!(refine(&f, &b, &rat(1, 4)).unwrap_err(), Error::EmptyRefinement);
    }

    #[test]
    fn region_restriction() {
        let f = u(&[-2, -2, 1]);
        let region = ComplexBox::new(RatInterval::new(int(0), int(5)), RatInterval::new(int(-1), int(1)));
        let res = isolate(&f, Some(&region), None).unwrap();
        assert_eq!(res.len(), 1);
    }

    #[test]
    fn higher_degree_with_close_roots() {
        // (t^2 - 2)(t - 1)(t - 1 - 2^-30)(t^2 + t + 1)
        let eps = pow2(-30);
        let close = UniPoly::new(vec![-(int(1) + &eps), int(1)]);
        let f = u(&[-2, 0, 1]) * u(&[-1, 1]) * close * u(&[1, 1, 1]);
        let res = isolate(&f, None, None).unwrap();
        assert_eq!(res.len(), 6);
        for i in 0..6 {
            for j in i + 1..6 {
                assert!(res.boxes[i].interior_disjoint(&res.boxes[j]));
            }
        }
        let mut r = res.clone();
        r.refine_all(&pow2(-40)).unwrap();
        assert!(r.max_width() <= pow2(-40));
    }
}
