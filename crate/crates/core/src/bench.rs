//! Random-instance harness: dense random systems with integer coefficients,
//! rescaled by `z_i = Z_i / 10`, run through both procedures.

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;
use crate::num::{int, Rational};
use crate::poly::{z_vars, Monomial, MultiPoly, Vars};
use crate::stabilizability::decide_full;
use crate::stabilization::{stable_after_verdict, StabilizationOptions};
use crate::zerodim::{univ_r, UnivariateRepresentation};

/// Redraws allowed per instance before giving up on it.
const MAX_RESAMPLES: u32 = 100;

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub nvars: usize,
    pub count: usize,
    /// Total degree of each polynomial; a single entry applies to all.
    pub degrees: Vec<u32>,
    pub coeff_bound: i64,
    pub seed: u64,
    pub omit_timings: bool,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct BenchRow {
    pub seed: u64,
    pub nvars: usize,
    pub nsols: usize,
    pub is_stabilizable: bool,
    pub t_stab_ms: Option<f64>,
    pub stable_found: Option<bool>,
    pub t_poly_ms: Option<f64>,
    pub eps_final: Option<String>,
    #[serde(skip)]
    pub resamples: u32,
    #[serde(skip)]
    pub error: Option<String>,
}

/// All monomials in `n` variables of total degree at most `d`.
fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if cur.len() == n {
            out.push(Monomial::new(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Dense random polynomial of total degree `d` with coefficients uniform in
/// `[-bound, bound]`, then rescaled so that its roots are multiplied by 10.
pub fn random_polynomial<R: Rng>(rng: &mut R, vars: &Vars, d: u32, bound: i64) -> MultiPoly {
    let ten = int(10);
    let terms = monomials_up_to(vars.len(), d).into_iter().map(|m| {
        let c = Rational::from_integer(rng.gen_range(-bound..=bound).into());
        let scale = Rational::one() / num_traits::pow(ten.clone(), m.degree() as usize);
        (m, c * scale)
    });
    MultiPoly::from_terms(vars.clone(), terms)
}

pub fn random_system<R: Rng>(rng: &mut R, nvars: usize, degrees: &[u32], bound: i64) -> Vec<MultiPoly> {
    let vars = z_vars(nvars);
    (0..nvars)
        .map(|i| random_polynomial(rng, &vars, degrees[i.min(degrees.len() - 1)], bound))
        .collect()
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

/// Draws a zero-dimensional system with a nonempty variety; returns it with
/// its univariate representation and the number of redraws.
pub fn draw_instance(seed: u64, cfg: &BenchConfig) -> Option<(Vec<MultiPoly>, UnivariateRepresentation, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for resamples in 0..MAX_RESAMPLES {
        let sys = random_system(&mut rng, cfg.nvars, &cfg.degrees, cfg.coeff_bound);
        if sys.iter().any(|p| p.total_degree().unwrap_or(0) == 0) {
            continue;
        }
        match univ_r(&sys) {
            Ok(ur) if ur.degree() > 0 => return Some((sys, ur, resamples)),
            _ => continue,
        }
    }
    None
}

pub fn run_instance(seed: u64, cfg: &BenchConfig) -> BenchRow {
    let mut row = BenchRow {
        seed,
        nvars: cfg.nvars,
        nsols: 0,
        is_stabilizable: false,
        t_stab_ms: None,
        stable_found: None,
        t_poly_ms: None,
        eps_final: None,
        resamples: MAX_RESAMPLES,
        error: None,
    };
    let Some((sys, _, resamples)) = draw_instance(seed, cfg) else {
        row.error = Some("no admissible draw".into());
        return row;
    };
    row.resamples = resamples;
    // the representation is part of the stabilizability timing
    let t0 = Instant::now();
    let verdict = univ_r(&sys).and_then(decide_full);
    let t_stab = ms(t0);
    let (verdict, iso) = match verdict {
        Ok(v) => v,
        Err(e) => {
            row.error = Some(e.to_string());
            return row;
        }
    };
    row.nsols = verdict.ur.degree();
    row.is_stabilizable = verdict.stabilizable;
    if !cfg.omit_timings {
        row.t_stab_ms = Some(t_stab);
    }
    if row.is_stabilizable {
        let t1 = Instant::now();
        let r = stable_after_verdict(&sys, verdict, iso, &StabilizationOptions::default());
        let t_poly = ms(t1);
        match r {
            Ok(r) => {
                row.stable_found = Some(true);
                row.eps_final = Some(r.certificate.eps_used.to_string());
            }
            Err(e) => {
                row.stable_found = Some(false);
                if e != Error::NotStabilizable {
                    row.error = Some(e.to_string());
                }
            }
        }
        if !cfg.omit_timings {
            row.t_poly_ms = Some(t_poly);
        }
    }
    row
}

/// Rows in instance order; instances run in parallel.
pub fn run(cfg: &BenchConfig) -> Vec<BenchRow> {
    (0..cfg.count as u64)
        .into_par_iter()
        .map(|i| run_instance(cfg.seed.wrapping_add(i), cfg))
        .collect()
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("csv row");
    }
    String::from_utf8(w.into_inner().expect("csv flush")).expect("utf8 csv")
}

/// Mean timings grouped by number of solutions.
pub fn summary(rows: &[BenchRow]) -> String {
    let mut groups: BTreeMap<usize, Vec<&BenchRow>> = BTreeMap::new();
    for r in rows.iter().filter(|r| r.error.is_none()) {
        groups.entry(r.nsols).or_default().push(r);
    }
    let mean = |xs: Vec<f64>| {
        if xs.is_empty() {
            "-".to_string()
        } else {
            format!("{:.3}", xs.iter().sum::<f64>() / xs.len() as f64 / 1e3)
        }
    };
    let mut out = String::from("#V(I)  instances  stabilizable  mean IsStabilizable (s)  mean StablePolynomial (s)\n");
    for (n, rs) in &groups {
        let stab = rs.iter().filter(|r| r.is_stabilizable).count();
        out.push_str(&format!(
            "{:>5}  {:>9}  {:>12}  {:>24}  {:>25}\n",
            n,
            rs.len(),
            stab,
            mean(rs.iter().filter_map(|r| r.t_stab_ms).collect()),
            mean(rs.iter().filter_map(|r| r.t_poly_ms).collect()),
        ));
    }
    let resamples: u32 = rows.iter().map(|r| r.resamples).sum();
    let errors = rows.iter().filter(|r| r.error.is_some()).count();
    out.push_str(&format!("resampled draws: {resamples}; failed instances: {errors}\n"));
    for r in rows.iter().filter(|r| r.error.is_some()) {
        out.push_str(&format!("  seed {}: {}\n", r.seed, r.error.as_deref().unwrap_or("")));
    }
    out
}
