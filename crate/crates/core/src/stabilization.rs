//! Construction of a stable polynomial in the ideal, with cofactors and an
//! exact stability certificate.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::interval::{classify, ComplexBox, Sign};
use crate::num::{int, to_decimal, to_f64, GaussRat, Rational};
use crate::poly::{MultiPoly, UniPoly};
use crate::roots::{IsolationResult, RootKind};
use crate::stabilizability::{circle_enclosure, decide_full, StabilizabilityVerdict};
use crate::zerodim::{groebner, normal_form, univ_r, Ideal, UnivariateRepresentation};

/// Per-box halvings allowed while looking for a coordinate outside the disc.
const MAX_BOX_HALVINGS: u32 = 200;
/// Needed halvings grow with the coefficient size of `f`, roughly
/// `log2 ‖f‖₁`, which passes 64 for systems with a few dozen solutions.
pub const DEFAULT_MAX_HALVINGS: u32 = 256;
/// Largest power of `s` tried for membership in a non-radical ideal.
const MAX_POWER: u32 = 64;

#[derive(Debug, Clone)]
pub struct StabilizationOptions {
    /// Starting width; defaults to the smallest isolating box width.
    pub initial_eps: Option<Rational>,
    pub max_halvings: u32,
}

impl Default for StabilizationOptions {
    fn default() -> Self {
        StabilizationOptions { initial_eps: None, max_halvings: DEFAULT_MAX_HALVINGS }
    }
}

/// Rational approximations of the roots of `f`, each tagged with a
/// coordinate whose value there lies outside the closed unit disc.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproxSpectrum {
    pub gammas: Vec<GaussRat>,
    /// Zero-based variable index per root.
    pub var_index: Vec<usize>,
    pub eps: Rational,
    pub f_tilde: UniPoly,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    /// Lower bound for `|s̃|` on the closed polydisc.
    pub lower_bound: Rational,
    /// ℓ1 norm of the correction term.
    pub correction_norm: Rational,
    pub eps_used: Rational,
}

impl Certificate {
    pub fn holds(&self) -> bool {
        self.lower_bound > self.correction_norm
    }
}

#[derive(Debug, Clone)]
pub struct StabilityResult {
    pub s: MultiPoly,
    /// Cofactors over the input generators: `s^power = Σ u_i p_i`.
    pub cofactors: Vec<MultiPoly>,
    /// Exponent needed for membership, 1 for radical ideals.
    pub power: u32,
    pub s_tilde: MultiPoly,
    pub h0: UniPoly,
    pub spectrum: ApproxSpectrum,
    pub certificate: Certificate,
    pub ur: UnivariateRepresentation,
    /// `s^power - Σ u_i p_i` vanished identically.
    pub identity_verified: bool,
    pub halvings: u32,
}

/// Smallest variable index `k` with `|g_k(B)|^2 - 1` certified positive.
fn outside_var(ur: &UnivariateRepresentation, b: &ComplexBox) -> Option<usize> {
    (0..ur.g.len()).find(|&k| classify(&circle_enclosure(&ur.g[k], b)) == Sign::StrictlyPositive)
}

fn modulus_sqr_at(g: &UniPoly, z: &GaussRat) -> Rational {
    let w = g.eval_gauss(z);
    &w.re * &w.re + &w.im * &w.im
}

/// `∏ (t - γ_i)`; conjugate pairs multiply to real quadratics.
fn product_linear(gammas: &[GaussRat], kinds: Option<&[RootKind]>) -> UniPoly {
    let mut acc = UniPoly::one();
    for (i, g) in gammas.iter().enumerate() {
        let kind = kinds.map(|k| k[i]);
        match kind {
            Some(RootKind::Lower(_)) => continue,
            Some(RootKind::Upper(_)) => {
                let q = UniPoly::new(vec![&g.re * &g.re + &g.im * &g.im, -(&g.re * int(2)), Rational::one()]);
                acc = &acc * &q;
            }
            _ => {
                if !g.im.is_zero() {
                    let q = UniPoly::new(vec![&g.re * &g.re + &g.im * &g.im, -(&g.re * int(2)), Rational::one()]);
                    acc = &acc * &q;
                } else {
                    acc = &acc * &UniPoly::linear_root(g.re.clone());
                }
            }
        }
    }
    acc
}

/// Spectrum from boxes already small enough: midpoints and first-hit
/// coordinates. Fails if some box has no certified outside coordinate or
/// its midpoint does not satisfy the exact inequality.
pub fn spectrum_from_boxes(ur: &UnivariateRepresentation, boxes: &[ComplexBox]) -> Result<ApproxSpectrum> {
    let mut gammas = Vec::with_capacity(boxes.len());
    let mut var_index = Vec::with_capacity(boxes.len());
    for b in boxes {
        let k = outside_var(ur, b).ok_or(Error::SpectrumCap)?;
        let m = b.midpoint();
        if modulus_sqr_at(&ur.g[k], &m) <= Rational::one() {
            return Err(Error::SpectrumCap);
        }
        gammas.push(m);
        var_index.push(k);
    }
    let eps = boxes.iter().map(ComplexBox::width).max().unwrap_or_else(Rational::zero);
    let conj_pairs = conjugate_kinds(&gammas);
    let f_tilde = product_linear(&gammas, Some(&conj_pairs));
    Ok(ApproxSpectrum { gammas, var_index, eps, f_tilde })
}

/// Pairs each non-real value with its mirror image among the others.
fn conjugate_kinds(gammas: &[GaussRat]) -> Vec<RootKind> {
    let mut kinds = vec![RootKind::Real; gammas.len()];
    for i in 0..gammas.len() {
        if gammas[i].im.is_positive() {
            if let Some(j) = (0..gammas.len()).find(|&j| gammas[j] == gammas[i].conj()) {
                kinds[i] = RootKind::Upper(j);
                kinds[j] = RootKind::Lower(i);
            }
        }
    }
    kinds
}

/// Refines each box of `iso` (starting from width `eps`) until some
/// coordinate is certified outside the disc at the box and at its midpoint.
pub fn approx_spectrum(
    ur: &UnivariateRepresentation,
    iso: &mut IsolationResult,
    eps: &Rational,
) -> Result<ApproxSpectrum> {
    iso.refine_all(eps)?;
    let primaries: Vec<usize> = (0..iso.len()).filter(|&i| iso.primary(i) == i).collect();
    let mut local: Vec<Rational> = vec![eps.clone(); iso.len()];
    for _ in 0..MAX_BOX_HALVINGS {
        let pending: Vec<usize> = primaries
            .par_iter()
            .copied()
            .filter(|&i| {
                let b = &iso.boxes[i];
                match outside_var(ur, b) {
                    Some(k) => modulus_sqr_at(&ur.g[k], &b.midpoint()) <= Rational::one(),
                    None => true,
                }
            })
            .collect();
        if pending.is_empty() {
            let mut sp = spectrum_from_boxes(ur, &iso.boxes)?;
            sp.eps = eps.clone();
            return Ok(sp);
        }
        let mut targets = Vec::with_capacity(pending.len());
        for i in pending {
            local[i] = (&local[i] / int(2)).min(iso.boxes[i].width() / int(2));
            targets.push((i, local[i].clone()));
        }
        iso.refine_each(&targets)?;
    }
    Err(Error::SpectrumCap)
}

/// `s̃`, `h0` and `s = s̃ - h0 (f̃ - f)` at `t = Σ a_k z_k`.
pub fn build_stable(ur: &UnivariateRepresentation, sp: &ApproxSpectrum) -> (MultiPoly, UniPoly, MultiPoly) {
    let vars = ur.vars.clone();
    let kinds = conjugate_kinds(&sp.gammas);
    let mut s_tilde = MultiPoly::one(vars.clone());
    let mut s_t = UniPoly::one();
    for (i, gm) in sp.gammas.iter().enumerate() {
        let k = sp.var_index[i];
        let w = ur.g[k].eval_gauss(gm);
        let z = MultiPoly::var(vars.clone(), k);
        let gk = &ur.g[k];
        match kinds[i] {
            RootKind::Lower(_) => continue,
            RootKind::Upper(_) => {
                let two_re = &w.re * int(2);
                let norm = &w.re * &w.re + &w.im * &w.im;
                let zq = &(&(&z * &z) - &z.scale(&two_re)) + &MultiPoly::constant(vars.clone(), norm.clone());
                s_tilde = &s_tilde * &zq;
                let tq = &(&(gk * gk) - &gk.scale(&two_re)) + &UniPoly::constant(norm);
                s_t = &s_t * &tq;
            }
            RootKind::Real => {
                let zl = &z - &MultiPoly::constant(vars.clone(), w.re.clone());
                s_tilde = &s_tilde * &zl;
                s_t = &s_t * &(gk - &UniPoly::constant(w.re.clone()));
            }
        }
    }
    let (h0, rem) = s_t.div_rem(&sp.f_tilde);
    debug_assert!(rem.degree().is_none(), "midpoints are roots of s̃_t");
    let corr = &h0 * &(&sp.f_tilde - &ur.f);
    let s = &s_tilde - &ur.at_form(&corr);
    (s_tilde, h0, s)
}

/// Lower bound on `|w| - 1` from the exact `M = |w|^2 > 1`.
fn modulus_gap(m: &Rational) -> Rational {
    let u = (m + Rational::one()) / int(2);
    (m - Rational::one()) / (Rational::one() + u)
}

/// Checks `L > N` where `L` bounds `|s̃|` from below on the closed polydisc
/// and `N` is the ℓ1 norm of `s̃ - s`.
pub fn certify_stable(
    s: &MultiPoly,
    s_tilde: &MultiPoly,
    ur: &UnivariateRepresentation,
    sp: &ApproxSpectrum,
) -> Certificate {
    let mut lower = Rational::one();
    for (i, gm) in sp.gammas.iter().enumerate() {
        let m = modulus_sqr_at(&ur.g[sp.var_index[i]], gm);
        lower *= modulus_gap(&m);
    }
    let n = (s_tilde - s).l1_norm();
    Certificate { lower_bound: lower, correction_norm: n, eps_used: sp.eps.clone() }
}

/// Cofactors of the smallest power of `s` lying in `⟨polys⟩`.
fn membership(s: &MultiPoly, polys: &[MultiPoly]) -> Result<(u32, Vec<MultiPoly>, bool)> {
    let ideal = Ideal::from_polys(polys.to_vec())?;
    let gb = groebner(&ideal);
    let mut p = s.with_vars(&ideal.vars);
    for m in 1..=MAX_POWER {
        let (rem, cof) = normal_form(&p, &gb);
        if rem.is_zero() {
            let mut acc = p.clone();
            for (u, g) in cof.iter().zip(&ideal.generators) {
                acc = &acc - &(u * g);
            }
            return Ok((m, cof, acc.is_zero()));
        }
        p = &p * &s.with_vars(&ideal.vars);
    }
    Err(Error::Membership(format!("no power of s up to {MAX_POWER} reduces to zero")))
}

pub fn stable_polynomial(polys: &[MultiPoly]) -> Result<StabilityResult> {
    stable_polynomial_with(polys, &StabilizationOptions::default())
}

pub fn stable_polynomial_with(polys: &[MultiPoly], opts: &StabilizationOptions) -> Result<StabilityResult> {
    let ur = univ_r(polys)?;
    let (verdict, iso) = decide_full(ur)?;
    stable_after_verdict(polys, verdict, iso, opts)
}

/// The construction loop, given a verdict for `polys` and the isolation it
/// refined.
pub(crate) fn stable_after_verdict(
    polys: &[MultiPoly],
    verdict: StabilizabilityVerdict,
    iso: Option<IsolationResult>,
    opts: &StabilizationOptions,
) -> Result<StabilityResult> {
    if !verdict.stabilizable {
        return Err(Error::NotStabilizable);
    }
    let ur = verdict.ur;
    let Some(mut iso) = iso else {
        // 1 ∈ I, and the constant 1 has no zeros at all
        let one = MultiPoly::one(ur.vars.clone());
        let (power, cofactors, identity_verified) = membership(&one, polys)?;
        return Ok(StabilityResult {
            s: one.clone(),
            cofactors,
            power,
            s_tilde: one,
            h0: UniPoly::zero(),
            spectrum: ApproxSpectrum {
                gammas: Vec::new(),
                var_index: Vec::new(),
                eps: Rational::zero(),
                f_tilde: UniPoly::one(),
            },
            certificate: Certificate {
                lower_bound: Rational::one(),
                correction_norm: Rational::zero(),
                eps_used: Rational::zero(),
            },
            ur,
            identity_verified,
            halvings: 0,
        });
    };
    let mut eps = match &opts.initial_eps {
        Some(e) if e.is_positive() => e.clone(),
        Some(_) => return Err(Error::InvalidArgument("initial eps must be positive".into())),
        None => iso.min_width(),
    };
    let mut last = None;
    for halvings in 0..=opts.max_halvings {
        let sp = approx_spectrum(&ur, &mut iso, &eps)?;
        let (s_tilde, h0, s) = build_stable(&ur, &sp);
        let certificate = certify_stable(&s, &s_tilde, &ur, &sp);
        if certificate.holds() {
            let (power, cofactors, identity_verified) = membership(&s, polys)?;
            return Ok(StabilityResult {
                s,
                cofactors,
                power,
                s_tilde,
                h0,
                spectrum: sp,
                certificate,
                ur,
                identity_verified,
                halvings,
            });
        }
        last = Some(certificate);
        eps = &eps / int(2);
    }
    let (l, n) = last.map_or((String::new(), String::new()), |c| {
        (to_decimal(&c.lower_bound, 6), format!("{:e}", to_f64(&c.correction_norm)))
    });
    Err(Error::IterationCap(format!(
        "certificate still failing after {} halvings (last eps {}, L = {l}, N = {n})",
        opts.max_halvings, &eps * int(2)
    )))
}
