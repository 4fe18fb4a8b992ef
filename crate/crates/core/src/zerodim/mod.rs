//! Zero-dimensional ideals: Gröbner bases with cofactor tracking, the
//! quotient algebra, radicalization and univariate representations.

mod groebner;
mod linalg;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::num::Rational;
use crate::poly::{squarefree_part, union_vars, Monomial, MultiPoly, UniPoly, Vars};
use groebner::{buchberger, reduce_refs, Tracked};
use linalg::{charpoly, Echelon, Insert};

/// Ideal generated by a list of polynomials over a common variable context.
#[derive(Debug, Clone)]
pub struct Ideal {
    pub generators: Vec<MultiPoly>,
    pub vars: Vars,
}

impl Ideal {
    /// Generators are brought into one context: `vars` followed by any
    /// further variables they use.
    pub fn new(generators: Vec<MultiPoly>, vars: &Vars) -> Result<Self> {
        if generators.iter().all(MultiPoly::is_zero) {
            return Err(Error::EmptySystem);
        }
        let v = generators.iter().fold(vars.clone(), |acc, p| union_vars(&acc, p.vars()));
        let generators = generators.iter().map(|p| p.with_vars(&v)).collect();
        Ok(Ideal { generators, vars: v })
    }

    /// Context taken from the first generator.
    pub fn from_polys(generators: Vec<MultiPoly>) -> Result<Self> {
        let v = generators.first().ok_or(Error::EmptySystem)?.vars().clone();
        Self::new(generators, &v)
    }
}

/// Reduced grevlex Gröbner basis. When `transform` is present,
/// `basis[j] = Σ_i transform[j][i] · generators[i]`.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    pub basis: Vec<MultiPoly>,
    pub vars: Vars,
    pub transform: Option<Vec<Vec<MultiPoly>>>,
    pub generators: Vec<MultiPoly>,
}

impl GroebnerBasis {
    pub fn order(&self) -> &'static str {
        "grevlex"
    }

    /// The basis is `{1}`.
    pub fn is_trivial(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    fn tracked(&self) -> Vec<Tracked> {
        self.basis
            .iter()
            .map(|p| Tracked { p: p.clone(), row: None, sugar: 0 })
            .collect()
    }

    /// Remainder of `p` on division by the basis.
    pub fn reduce(&self, p: &MultiPoly) -> MultiPoly {
        let t = Tracked { p: p.with_vars(&self.vars), row: None, sugar: 0 };
        let basis = self.tracked();
        let refs: Vec<&Tracked> = basis.iter().collect();
        reduce_refs(t, &refs).p
    }
}

/// Gröbner basis with the generator transform recorded.
pub fn groebner(ideal: &Ideal) -> GroebnerBasis {
    build_gb(ideal, true)
}

/// Gröbner basis without the transform (cheaper).
pub fn groebner_untracked(ideal: &Ideal) -> GroebnerBasis {
    build_gb(ideal, false)
}

fn build_gb(ideal: &Ideal, track: bool) -> GroebnerBasis {
    let out = buchberger(&ideal.generators, &ideal.vars, track);
    let transform = track.then(|| out.iter().map(|t| t.row.clone().unwrap()).collect());
    GroebnerBasis {
        basis: out.into_iter().map(|t| t.p).collect(),
        vars: ideal.vars.clone(),
        transform,
        generators: ideal.generators.clone(),
    }
}

/// Division of `p` by the basis: returns the remainder and cofactors. With
/// a transform the cofactors are over the original generators
/// (`p = Σ u_i g_i + remainder`), otherwise over the basis elements.
pub fn normal_form(p: &MultiPoly, gb: &GroebnerBasis) -> (MultiPoly, Vec<MultiPoly>) {
    let v = &gb.vars;
    let mut t = p.with_vars(v);
    let mut rem = MultiPoly::zero(v.clone());
    let mut q = vec![MultiPoly::zero(v.clone()); gb.basis.len()];
    while let Some((m, c)) = t.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
        let hit = gb.basis.iter().enumerate().find_map(|(j, g)| {
            let lm = g.leading_monomial()?;
            m.div(lm).map(|d| (j, d))
        });
        match hit {
            Some((j, d)) => {
                let f = &c / gb.basis[j].leading_coeff().unwrap();
                t.add_scaled(&-f.clone(), &d, &gb.basis[j]);
                q[j].add_term(d, f);
            }
            None => {
                t.add_term(m.clone(), -c.clone());
                rem.add_term(m, c);
            }
        }
    }
    let cof = match &gb.transform {
        None => q,
        Some(tr) => {
            let r = gb.generators.len();
            let mut u = vec![MultiPoly::zero(v.clone()); r];
            for (qj, row) in q.iter().zip(tr) {
                if qj.is_zero() {
                    continue;
                }
                for (ui, tji) in u.iter_mut().zip(row) {
                    if !tji.is_zero() {
                        *ui = &*ui + &(qj * tji);
                    }
                }
            }
            u
        }
    };
    (rem, cof)
}

/// Dimension of the quotient algebra, `None` when infinite.
pub fn quotient_dimension(gb: &GroebnerBasis) -> Option<usize> {
    standard_monomials(gb).map(|s| s.len())
}

/// Monomials not divisible by any leading monomial, in increasing order;
/// `None` if some variable has no pure-power leading monomial.
pub fn standard_monomials(gb: &GroebnerBasis) -> Option<Vec<Monomial>> {
    let n = gb.vars.len();
    let lms: Vec<&Monomial> = gb.basis.iter().filter_map(MultiPoly::leading_monomial).collect();
    if lms.iter().any(|m| m.is_one()) {
        return Some(Vec::new());
    }
    for k in 0..n {
        let pure = lms.iter().any(|m| m.exp(k) > 0 && m.degree() == m.exp(k));
        if !pure {
            return None;
        }
    }
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([Monomial::one(n)]);
    while let Some(m) = queue.pop_front() {
        if seen.contains(&m) || lms.iter().any(|l| l.divides(&m)) {
            continue;
        }
        for k in 0..n {
            queue.push_back(m.mul(&Monomial::unit(n, k)));
        }
        seen.insert(m);
    }
    Some(seen.into_iter().collect())
}

/// The quotient algebra `Q[z]/I` in its standard monomial basis, with the
/// multiplication matrices of the variables.
pub(crate) struct Quotient {
    pub basis: Vec<Monomial>,
    /// `mats[k][j]` = coordinates of `z_k · basis[j]`.
    pub mats: Vec<Vec<Vec<Rational>>>,
    /// coordinates of each variable itself
    pub var_coords: Vec<Vec<Rational>>,
}

impl Quotient {
    pub fn new(gb: &GroebnerBasis) -> Result<Self> {
        let basis = standard_monomials(gb).ok_or(Error::NotZeroDimensional)?;
        let index: BTreeMap<Monomial, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let n = gb.vars.len();
        let d = basis.len();
        let coords = |p: &MultiPoly| -> Vec<Rational> {
            let r = gb.reduce(p);
            let mut v = vec![Rational::zero(); d];
            for (m, c) in r.terms() {
                v[index[m]] = c.clone();
            }
            v
        };
        let mut mats = Vec::with_capacity(n);
        let mut var_coords = Vec::with_capacity(n);
        for k in 0..n {
            let zk = Monomial::unit(n, k);
            let cols: Vec<Vec<Rational>> = basis
                .iter()
                .map(|b| {
                    let m = b.mul(&zk);
                    match index.get(&m) {
                        Some(&i) => {
                            let mut v = vec![Rational::zero(); d];
                            v[i] = Rational::one();
                            v
                        }
                        None => coords(&MultiPoly::monomial(gb.vars.clone(), m, Rational::one())),
                    }
                })
                .collect();
            mats.push(cols);
            var_coords.push(coords(&MultiPoly::var(gb.vars.clone(), k)));
        }
        Ok(Quotient { basis, mats, var_coords })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Characteristic polynomial of each variable's multiplication map.
    pub fn charpolys(&self) -> Vec<UniPoly> {
        self.mats.par_iter().map(|m| charpoly(&transpose(m))).collect()
    }

    fn one(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        if !v.is_empty() {
            v[0] = Rational::one();
        }
        v
    }

    /// `M_t v` for `t = Σ a_k z_k`.
    fn apply(&self, a: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let d = self.dim();
        let mut out = vec![Rational::zero(); d];
        for (k, ak) in a.iter().enumerate() {
            if ak.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let f = ak * vj;
                for (o, m) in out.iter_mut().zip(&self.mats[k][j]) {
                    if !m.is_zero() {
                        *o += &f * m;
                    }
                }
            }
        }
        out
    }

    /// Minimal polynomial of `t = Σ a_k z_k`, and the Krylov echelon
    /// of `1, t, t², …` used to find it.
    fn min_poly(&self, a: &[Rational]) -> (UniPoly, Echelon) {
        let mut e = Echelon::new();
        let mut v = self.one();
        loop {
            match e.insert(v.clone()) {
                Insert::Independent => v = self.apply(a, &v),
                Insert::Dependent(c) => return (UniPoly::new(c), e),
            }
        }
    }
}

/// Adds the squarefree parts of the variables' minimal polynomials; the
/// result is radical with the same variety.
pub fn radicalize(ideal: &Ideal) -> Result<Ideal> {
    let gb = groebner_untracked(ideal);
    Ok(radicalize_with(ideal, &gb)?.0)
}

fn radicalize_with(ideal: &Ideal, gb: &GroebnerBasis) -> Result<(Ideal, Option<GroebnerBasis>)> {
    if gb.is_trivial() {
        return Ok((ideal.clone(), None));
    }
    let q = Quotient::new(gb)?;
    Ok(match radical_extension(ideal, &q.charpolys()) {
        Some((rad, rgb)) => (rad, Some(rgb)),
        None => (ideal.clone(), None),
    })
}

/// Adds `sqfree(χ_k)(z_k)` for every variable whose characteristic
/// polynomial has repeated roots; `None` when all are squarefree.
fn radical_extension(ideal: &Ideal, charpolys: &[UniPoly]) -> Option<(Ideal, GroebnerBasis)> {
    let extra: Vec<MultiPoly> = charpolys
        .iter()
        .enumerate()
        .filter_map(|(k, e)| {
            let s = squarefree_part(e);
            (s.degree() != e.degree()).then(|| s.to_multi(&ideal.vars, k))
        })
        .collect();
    if extra.is_empty() {
        return None;
    }
    let mut gens = ideal.generators.clone();
    gens.extend(extra);
    let rad = Ideal { generators: gens, vars: ideal.vars.clone() };
    let rgb = groebner_untracked(&rad);
    Some((rad, rgb))
}

/// Univariate representation `f(t) = 0, z_k = g_k(t)` with
/// `t = Σ a_k z_k` of the (radical of the) ideal.
#[derive(Debug, Clone, PartialEq)]
pub struct UnivariateRepresentation {
    pub a: Vec<Rational>,
    pub f: UniPoly,
    pub g: Vec<UniPoly>,
    pub vars: Vars,
    /// `r_k(z) = ∏ (z - z_k(ζ))` over the points `ζ` of the variety, one per
    /// variable; equal to `Res_t(f(t), z - g_k(t))`.
    pub eliminants: Vec<UniPoly>,
}

impl UnivariateRepresentation {
    pub fn degree(&self) -> usize {
        self.f.degree().unwrap_or(0)
    }

    /// `Σ a_k z_k`.
    pub fn separating_form(&self) -> MultiPoly {
        let mut p = MultiPoly::zero(self.vars.clone());
        for (k, a) in self.a.iter().enumerate() {
            p = &p + &MultiPoly::var(self.vars.clone(), k).scale(a);
        }
        p
    }

    /// `u(Σ a_k z_k)` as a polynomial in the system's variables.
    pub fn at_form(&self, u: &UniPoly) -> MultiPoly {
        let t = self.separating_form();
        let mut acc = MultiPoly::zero(self.vars.clone());
        for c in u.coeffs().iter().rev() {
            acc = &(&acc * &t) + &MultiPoly::constant(self.vars.clone(), c.clone());
        }
        acc
    }
}

fn transpose(cols: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let d = cols.len();
    (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect()
}

/// Separating-form coefficients of trial `j`: `a_k = j^(k-1)`.
pub fn trial_form(j: u64, n: usize) -> Vec<Rational> {
    let mut a = Vec::with_capacity(n);
    let mut p = Rational::one();
    for _ in 0..n {
        a.push(p.clone());
        p *= Rational::from_integer(j.into());
    }
    a
}

/// Univariate representation of `⟨polys⟩`.
pub fn univ_r(polys: &[MultiPoly]) -> Result<UnivariateRepresentation> {
    let ideal = Ideal::from_polys(polys.to_vec())?;
    univ_r_ideal(&ideal)
}

pub fn univ_r_ideal(ideal: &Ideal) -> Result<UnivariateRepresentation> {
    let n = ideal.vars.len();
    let gb = groebner_untracked(ideal);
    if gb.is_trivial() {
        return Ok(UnivariateRepresentation {
            a: trial_form(0, n),
            f: UniPoly::one(),
            g: vec![UniPoly::zero(); n],
            vars: ideal.vars.clone(),
            eliminants: vec![UniPoly::one(); n],
        });
    }
    let mut q = Quotient::new(&gb)?;
    let mut eliminants = q.charpolys();
    if let Some((_, rgb)) = radical_extension(ideal, &eliminants) {
        q = Quotient::new(&rgb)?;
        eliminants = q.charpolys();
    }
    let d = q.dim();
    let cap = (n * d * d.saturating_sub(1) / 2 + 1) as u64;
    for j in 0..cap {
        let a = trial_form(j, n);
        let (f, ech) = q.min_poly(&a);
        if f.degree() != Some(d) {
            continue;
        }
        let mut g = Vec::with_capacity(n);
        for k in 0..n {
            let c = ech
                .solve(q.var_coords[k].clone())
                .ok_or_else(|| Error::IterationCap("shape solve".into()))?;
            g.push(UniPoly::new(c));
        }
        return Ok(UnivariateRepresentation { a, f, g, vars: ideal.vars.clone(), eliminants });
    }
    Err(Error::SeparatingFormExhausted(cap as usize))
}
