//! JSON-serializable reports for the command-line front end.
//!
//! Exact rationals are written as strings (`"-3/4"`); boxes carry exact
//! endpoints plus a decimal rendering.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::interval::ComplexBox;
use crate::num::{to_decimal, GaussRat, Rational};
use crate::stabilizability::{StabilizabilityVerdict, Witness};
use crate::stabilization::StabilityResult;
use crate::system::ProblemFile;
use crate::zerodim::UnivariateRepresentation;

const DECIMALS: usize = 12;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct BoxReport {
    /// Exact `[re_lo, re_hi, im_lo, im_hi]`.
    pub exact: [String; 4],
    pub decimal: [String; 4],
}

impl From<&ComplexBox> for BoxReport {
    fn from(b: &ComplexBox) -> Self {
        let e = [&b.re.lo, &b.re.hi, &b.im.lo, &b.im.hi];
        BoxReport {
            exact: e.map(|q| q.to_string()),
            decimal: e.map(|q| to_decimal(q, DECIMALS)),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ComplexReport {
    pub re: String,
    pub im: String,
}

impl From<&GaussRat> for ComplexReport {
    fn from(z: &GaussRat) -> Self {
        ComplexReport { re: z.re.to_string(), im: z.im.to_string() }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct WitnessReport {
    pub root_box: BoxReport,
    pub coordinates: Vec<BoxReport>,
    pub on_circle: Vec<bool>,
}

impl From<&Witness> for WitnessReport {
    fn from(w: &Witness) -> Self {
        WitnessReport {
            root_box: (&w.root_box).into(),
            coordinates: w.coordinates.iter().map(BoxReport::from).collect(),
            on_circle: w.on_circle.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct UrReport {
    pub separating_form: Vec<String>,
    pub f: String,
    pub g: Vec<String>,
}

impl From<&UnivariateRepresentation> for UrReport {
    fn from(ur: &UnivariateRepresentation) -> Self {
        UrReport {
            separating_form: ur.a.iter().map(Rational::to_string).collect(),
            f: ur.f.to_string(),
            g: ur.g.iter().map(|g| g.to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CertificateReport {
    pub lower_bound: String,
    pub correction_norm: String,
    pub eps: String,
    pub lower_bound_decimal: String,
    pub correction_norm_decimal: String,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct StableReport {
    pub s: String,
    pub power: u32,
    pub cofactors: Vec<String>,
    pub s_tilde: String,
    pub h0: String,
    pub gammas: Vec<ComplexReport>,
    /// One-based variable index chosen for each approximate root.
    pub factor_variables: Vec<usize>,
    pub f_tilde: String,
    pub certificate: CertificateReport,
    pub identity_verified: bool,
    pub halvings: u32,
}

impl From<&StabilityResult> for StableReport {
    fn from(r: &StabilityResult) -> Self {
        let c = &r.certificate;
        StableReport {
            s: r.s.to_string(),
            power: r.power,
            cofactors: r.cofactors.iter().map(|u| u.to_string()).collect(),
            s_tilde: r.s_tilde.to_string(),
            h0: r.h0.to_string(),
            gammas: r.spectrum.gammas.iter().map(ComplexReport::from).collect(),
            factor_variables: r.spectrum.var_index.iter().map(|k| k + 1).collect(),
            f_tilde: r.spectrum.f_tilde.to_string(),
            certificate: CertificateReport {
                lower_bound: c.lower_bound.to_string(),
                correction_norm: c.correction_norm.to_string(),
                eps: c.eps_used.to_string(),
                lower_bound_decimal: to_decimal(&c.lower_bound, DECIMALS),
                correction_norm_decimal: to_decimal(&c.correction_norm, DECIMALS),
                holds: c.holds(),
            },
            identity_verified: r.identity_verified,
            halvings: r.halvings,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub command: String,
    pub variables: Vec<String>,
    pub polynomials: Vec<String>,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stabilizable: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub univariate_representation: Option<UrReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub circle_counts: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<WitnessReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stable: Option<StableReport>,
    pub timing_ms: f64,
}

impl Report {
    pub fn new(command: &str, pf: &ProblemFile) -> Self {
        Report {
            command: command.into(),
            variables: pf.variables.to_vec(),
            polynomials: pf.polynomials.iter().map(|p| p.to_string()).collect(),
            status: "ok".into(),
            error: None,
            stabilizable: None,
            note: None,
            univariate_representation: None,
            circle_counts: None,
            witnesses: None,
            stable: None,
            timing_ms: 0.0,
        }
    }

    pub fn with_error(mut self, e: &Error) -> Self {
        self.status = "error".into();
        self.error = Some(e.to_string());
        self
    }

    pub fn with_verdict(mut self, v: &StabilizabilityVerdict, witnesses: bool) -> Self {
        self.stabilizable = Some(v.stabilizable);
        self.note = v.note.clone();
        self.univariate_representation = Some((&v.ur).into());
        self.circle_counts = Some(v.circle_counts.clone());
        if witnesses {
            self.witnesses = Some(v.witnesses.iter().map(WitnessReport::from).collect());
        }
        self
    }

    pub fn with_stable(mut self, r: &StabilityResult) -> Self {
        self.stabilizable = Some(true);
        self.univariate_representation = Some((&r.ur).into());
        self.stable = Some(r.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(e) = &self.error {
            out.push_str(&format!("error: {e}\n"));
            return out;
        }
        if let Some(ur) = &self.univariate_representation {
            out.push_str(&format!("separating form coefficients: [{}]\n", ur.separating_form.join(", ")));
            out.push_str(&format!("f(t) = {}\n", ur.f));
            for (k, g) in ur.g.iter().enumerate() {
                out.push_str(&format!("{} = {}\n", self.variables.get(k).map_or("?", String::as_str), g));
            }
        }
        if let Some(b) = self.stabilizable {
            out.push_str(&format!("stabilizable: {b}\n"));
        }
        if let Some(n) = &self.note {
            out.push_str(&format!("note: {n}\n"));
        }
        if let Some(c) = &self.circle_counts {
            out.push_str(&format!("circle counts: {c:?}\n"));
        }
        if let Some(ws) = &self.witnesses {
            for (i, w) in ws.iter().enumerate() {
                out.push_str(&format!("witness {}:\n", i + 1));
                for (k, c) in w.coordinates.iter().enumerate() {
                    let d = &c.decimal;
                    out.push_str(&format!(
                        "  {} in [{}, {}] + i[{}, {}]{}\n",
                        self.variables.get(k).map_or("?", String::as_str),
                        d[0],
                        d[1],
                        d[2],
                        d[3],
                        if w.on_circle[k] { " (on unit circle)" } else { "" }
                    ));
                }
            }
        }
        if let Some(s) = &self.stable {
            let gs: Vec<String> = s
                .gammas
                .iter()
                .map(|g| if g.im == "0" { g.re.clone() } else { format!("{} + {}*i", g.re, g.im) })
                .collect();
            out.push_str(&format!("approximate roots: [{}]\n", gs.join(", ")));
            out.push_str(&format!("f~(t) = {}\n", s.f_tilde));
            out.push_str(&format!("s~ = {}\n", s.s_tilde));
            out.push_str(&format!("h0(t) = {}\n", s.h0));
            out.push_str(&format!("s = {}\n", s.s));
            if s.power > 1 {
                out.push_str(&format!("membership holds for s^{}\n", s.power));
            }
            out.push_str(&format!("cofactors: [{}]\n", s.cofactors.join(", ")));
            let c = &s.certificate;
            out.push_str(&format!(
                "certificate: L = {} > N = {} (eps = {})\n",
                c.lower_bound, c.correction_norm, c.eps
            ));
            out.push_str(&format!("identity verified: {}\n", s.identity_verified));
        }
        out
    }
}
