use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_traits::Signed;

use polystab::bench::{self, BenchConfig};
use polystab::num::{to_decimal, Rational};
use polystab::poly::MultiPoly;
use polystab::report::Report;
use polystab::roots::real_root_isolation;
use polystab::system::{read_system, ProblemFile};
use polystab::{is_stabilizable, stable_polynomial_with, Error, StabilizationOptions};

#[derive(Parser)]
#[command(name = "polystab", version, about = "Stabilizability test and stable polynomials for zero-dimensional systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the variety avoids the closed unit polydisc.
    /// Exit code 0: stabilizable, 1: not stabilizable, 2: error.
    IsStabilizable {
        path: PathBuf,
        #[arg(long)]
        json: bool,
        /// Include witness boxes for points inside the polydisc.
        #[arg(long)]
        witnesses: bool,
    },
    /// Build a stable polynomial in the ideal, with cofactors.
    StablePoly {
        path: PathBuf,
        #[command(flatten)]
        stab: StabArgs,
        #[arg(long)]
        json: bool,
    },
    /// Real points of the curves s~ = 0 and s = 0 for a two-variable system,
    /// as CSV `curve,z1,z2`.
    Plot {
        path: PathBuf,
        #[command(flatten)]
        stab: StabArgs,
        /// Sample count along z1.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Half-width of the sampled z1 range.
        #[arg(long, default_value = "4")]
        range: String,
    },
    /// Random-instance benchmark; CSV on stdout, summary on stderr.
    Bench {
        #[arg(long, default_value_t = 2)]
        nvars: usize,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Total degree per polynomial, e.g. `3` or `3,2`.
        #[arg(long, default_value = "2", value_delimiter = ',')]
        degree: Vec<u32>,
        #[arg(long, default_value_t = 100)]
        coeff_bound: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Leave timing columns empty so output is byte-reproducible.
        #[arg(long)]
        omit_timings: bool,
    },
}

#[derive(Args)]
struct StabArgs {
    /// Starting refinement width, e.g. `1/2`.
    #[arg(long)]
    initial_eps: Option<String>,
    #[arg(long)]
    max_halvings: Option<u32>,
}

fn parse_rational(s: &str) -> Result<Rational, Error> {
    let q = Rational::from_str(s.trim()).map_err(|_| Error::InvalidArgument(format!("not a rational number: `{s}`")))?;
    Ok(q)
}

fn options(stab: &StabArgs, pf: &ProblemFile) -> Result<StabilizationOptions, Error> {
    let mut o = StabilizationOptions::default();
    let eps = stab.initial_eps.clone().or_else(|| pf.options.get("initial_eps").cloned());
    if let Some(e) = eps {
        let q = parse_rational(&e)?;
        if !q.is_positive() {
            return Err(Error::InvalidArgument("initial eps must be positive".into()));
        }
        o.initial_eps = Some(q);
    }
    let mh = match (stab.max_halvings, pf.options.get("max_halvings")) {
        (Some(m), _) => Some(m),
        (None, Some(s)) => Some(s.trim().parse().map_err(|_| Error::InvalidArgument(format!("bad max_halvings `{s}`")))?),
        (None, None) => None,
    };
    if let Some(m) = mh {
        o.max_halvings = m;
    }
    Ok(o)
}

fn emit(report: &Report, json: bool) {
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    if let Some(e) = &report.error {
        eprintln!("polystab: {e}");
    }
}

fn fail(e: Error) -> ExitCode {
    eprintln!("polystab: {e}");
    ExitCode::from(2)
}

fn is_stabilizable_cmd(path: &PathBuf, json: bool, witnesses: bool) -> ExitCode {
    let pf = match read_system(path) {
        Ok(pf) => pf,
        Err(e) => return fail(e),
    };
    let t0 = Instant::now();
    let res = is_stabilizable(&pf.polynomials);
    let mut report = Report::new("is-stabilizable", &pf);
    let code = match &res {
        Ok(v) => {
            report = report.with_verdict(v, witnesses);
            if v.stabilizable { 0 } else { 1 }
        }
        Err(e) => {
            report = report.with_error(e);
            2
        }
    };
    report.timing_ms = t0.elapsed().as_secs_f64() * 1e3;
    emit(&report, json);
    ExitCode::from(code)
}

fn stable_poly_cmd(path: &PathBuf, stab: &StabArgs, json: bool) -> ExitCode {
    let pf = match read_system(path) {
        Ok(pf) => pf,
        Err(e) => return fail(e),
    };
    let opts = match options(stab, &pf) {
        Ok(o) => o,
        Err(e) => return fail(e),
    };
    let t0 = Instant::now();
    let res = stable_polynomial_with(&pf.polynomials, &opts);
    let mut report = Report::new("stable-poly", &pf);
    let code = match &res {
        Ok(r) => {
            report = report.with_stable(r);
            0
        }
        Err(e) => {
            report = report.with_error(e);
            2
        }
    };
    report.timing_ms = t0.elapsed().as_secs_f64() * 1e3;
    emit(&report, json);
    ExitCode::from(code)
}

/// Real roots in `z2` of `p(x, z2)`, as decimals.
fn real_z2(p: &MultiPoly, x: &Rational) -> Vec<String> {
    let Some(u) = p.substitute("z1", &MultiPoly::constant(p.vars().clone(), x.clone())).to_uni() else {
        return Vec::new();
    };
    if u.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let sq = polystab::poly::squarefree_part(&u);
    let tol = Rational::new(1.into(), (1u64 << 30).into());
    real_root_isolation(&sq)
        .into_iter()
        .map(|iv| to_decimal(&polystab::roots::refine_real(&sq, &iv, &tol).mid(), 8))
        .collect()
}

fn plot_cmd(path: &PathBuf, stab: &StabArgs, samples: usize, range: &str) -> ExitCode {
    let pf = match read_system(path) {
        Ok(pf) => pf,
        Err(e) => return fail(e),
    };
    if pf.variables.len() != 2 {
        return fail(Error::InvalidArgument("plot needs a two-variable system".into()));
    }
    let opts = match options(stab, &pf) {
        Ok(o) => o,
        Err(e) => return fail(e),
    };
    let half = match parse_rational(range) {
        Ok(h) if h.is_positive() => h,
        Ok(_) => return fail(Error::InvalidArgument("range must be positive".into())),
        Err(e) => return fail(e),
    };
    let r = match stable_polynomial_with(&pf.polynomials, &opts) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let named = |p: &MultiPoly| p.with_vars(&polystab::poly::vars(&["z1", "z2"]));
    let curves = [("s_tilde", named(&r.s_tilde)), ("s", named(&r.s))];
    println!("curve,z1,z2");
    let n = samples.max(2);
    for i in 0..n {
        let x = -half.clone() + &half * Rational::new((2 * i as i64).into(), ((n - 1) as i64).into());
        for (name, p) in &curves {
            for y in real_z2(p, &x) {
                println!("{name},{},{y}", to_decimal(&x, 8));
            }
        }
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::IsStabilizable { path, json, witnesses } => is_stabilizable_cmd(path, *json, *witnesses),
        Command::StablePoly { path, stab, json } => stable_poly_cmd(path, stab, *json),
        Command::Plot { path, stab, samples, range } => plot_cmd(path, stab, *samples, range),
        Command::Bench { nvars, count, degree, coeff_bound, seed, omit_timings } => {
            if *nvars == 0 || degree.is_empty() || degree.contains(&0) || *coeff_bound <= 0 {
                return fail(Error::InvalidArgument("nvars, degrees and coeff-bound must be positive".into()));
            }
            let cfg = BenchConfig {
                nvars: *nvars,
                count: *count,
                degrees: degree.clone(),
                coeff_bound: *coeff_bound,
                seed: *seed,
                omit_timings: *omit_timings,
            };
            let rows = bench::run(&cfg);
            print!("{}", bench::to_csv(&rows));
            eprint!("{}", bench::summary(&rows));
            ExitCode::SUCCESS
        }
    }
}
