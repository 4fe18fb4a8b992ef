//! Deciding whether the variety of a zero-dimensional ideal avoids the
//! closed unit polydisc.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::interval::{classify, ComplexBox, RatInterval, Sign};
use crate::num::{int, Rational};
use crate::poly::{MultiPoly, UniPoly};
use crate::roots::{count_circle_roots, isolate, IsolationResult};
use crate::zerodim::{univ_r, UnivariateRepresentation};

/// Cap on ε halvings inside one variable pass; termination is guaranteed
/// mathematically, the cap only guards against runaway inputs.
const MAX_PASS_HALVINGS: u32 = 400;

/// A point of the variety certified to lie in the closed unit polydisc.
#[derive(Debug, Clone)]
pub struct Witness {
    /// Isolating box of the root of `f`.
    pub root_box: ComplexBox,
    /// Enclosure of each coordinate `g_k(B)`.
    pub coordinates: Vec<ComplexBox>,
    /// Coordinates certified to lie exactly on the unit circle (through the
    /// circle counts) rather than strictly inside it.
    pub on_circle: Vec<bool>,
}

#[derive(Debug, Clone)]
pub struct StabilizabilityVerdict {
    pub stabilizable: bool,
    pub witnesses: Vec<Witness>,
    /// Circle counts `l_k` for the variables examined before the verdict.
    pub circle_counts: Vec<usize>,
    pub ur: UnivariateRepresentation,
    /// Width bound reached by the refinement.
    pub eps: Rational,
    pub note: Option<String>,
}

/// Elimination polynomial `r_k(z) = Res_t(f(t), z - g_k(t))`.
pub fn elimination_polynomial(ur: &UnivariateRepresentation, k: usize) -> UniPoly {
    ur.eliminants[k].clone()
}

/// Number of points of the variety with `|z_k| = 1`.
pub fn circle_count(ur: &UnivariateRepresentation, k: usize) -> Result<usize> {
    if ur.degree() == 0 {
        return Ok(0);
    }
    count_circle_roots(&ur.eliminants[k])
}

/// Enclosure of `|g(x1 + i x2)|^2 - 1` over the box, through a rectangular
/// enclosure of `g(B)`.
pub fn circle_enclosure(g: &UniPoly, b: &ComplexBox) -> RatInterval {
    let w = crate::interval::complex_eval(g, b);
    w.re.sqr().add(&w.im.sqr()).shift(&int(-1))
}

/// Decides `V(⟨polys⟩) ∩ Ū^n = ∅`.
pub fn is_stabilizable(polys: &[MultiPoly]) -> Result<StabilizabilityVerdict> {
    let ur = univ_r(polys)?;
    decide(ur)
}

pub(crate) fn decide(ur: UnivariateRepresentation) -> Result<StabilizabilityVerdict> {
    decide_full(ur).map(|(v, _)| v)
}

/// Verdict together with the refined isolation of the roots of `f`.
pub(crate) fn decide_full(ur: UnivariateRepresentation) -> Result<(StabilizabilityVerdict, Option<IsolationResult>)> {
    let n = ur.g.len();
    if ur.degree() == 0 {
        let v = StabilizabilityVerdict {
            stabilizable: true,
            witnesses: Vec::new(),
            circle_counts: vec![0; n],
            ur,
            eps: Rational::zero(),
            note: Some("empty variety".into()),
        };
        return Ok((v, None));
    }
    let mut iso = isolate(&ur.f, None, None)?;
    let d = iso.len();
    let mut eps = iso.min_width();
    let mut live: Vec<usize> = (0..d).collect();
    let mut counts = Vec::with_capacity(n);
    let mut on_circle = vec![vec![false; n]; d];
    for k in 0..n {
        let lk = circle_count(&ur, k)?;
        counts.push(lk);
        let mut halvings = 0;
        let encl = loop {
            let encl: Vec<RatInterval> = iso.boxes.iter().map(|b| circle_enclosure(&ur.g[k], b)).collect();
            let zeros = encl.iter().filter(|e| classify(e) == Sign::ContainsZero).count();
            if zeros <= lk {
                break encl;
            }
            halvings += 1;
            if halvings > MAX_PASS_HALVINGS {
                return Err(Error::IterationCap(format!("circle separation for variable {}", k + 1)));
            }
            eps = &eps / int(2);
            iso.refine_all(&eps)?;
        };
        for (i, e) in encl.iter().enumerate() {
            on_circle[i][k] = classify(e) == Sign::ContainsZero;
        }
        live.retain(|&i| classify(&encl[i]) != Sign::StrictlyPositive);
        if live.is_empty() {
            let v = StabilizabilityVerdict {
                stabilizable: true,
                witnesses: Vec::new(),
                circle_counts: counts,
                ur,
                eps,
                note: None,
            };
            return Ok((v, Some(iso)));
        }
    }
    let witnesses = live
        .iter()
        .map(|&i| Witness {
            root_box: iso.boxes[i].clone(),
            coordinates: ur.g.iter().map(|g| crate::interval::complex_eval(g, &iso.boxes[i])).collect(),
            on_circle: on_circle[i].clone(),
        })
        .collect();
    let v = StabilizabilityVerdict { stabilizable: false, witnesses, circle_counts: counts, ur, eps, note: None };
    Ok((v, Some(iso)))
}
