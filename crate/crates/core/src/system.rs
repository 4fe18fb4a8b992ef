//! Problem files: a variable declaration, optional settings and one
//! polynomial per line.
//!
//! ```text
//! # comment
//! vars: z1 z2
//! initial_eps: 1/2
//! z1^2 - 2*z1 - 2
//! z1 + z2 - 2
//! ```
//!
//! A line of the form `name: value` is a directive; `vars` is required and
//! must precede the polynomials. Anything after `#` is ignored. A trailing
//! `;` or `,` on a polynomial line is allowed.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::poly::{parse_poly_at, MultiPoly, Vars};

#[derive(Debug, Clone)]
pub struct ProblemFile {
    pub variables: Vars,
    pub polynomials: Vec<MultiPoly>,
    pub options: BTreeMap<String, String>,
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_alphabetic() || c == '_') && cs.all(|c| c.is_alphanumeric() || c == '_')
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

pub fn parse_system(text: &str) -> Result<ProblemFile> {
    let mut variables: Option<Vars> = None;
    let mut polynomials = Vec::new();
    let mut options = BTreeMap::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        if let Some((key, value)) = body.split_once(':') {
            let key_t = key.trim();
            let kcol = key.len() - key.trim_start().len() + 1;
            if !is_ident(key_t) {
                return Err(parse_err(line, kcol, format!("malformed directive `{key_t}`")));
            }
            if key_t == "vars" {
                if variables.is_some() {
                    return Err(parse_err(line, kcol, "variables declared twice"));
                }
                let names: Vec<String> = value.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).map(String::from).collect();
                if names.is_empty() {
                    return Err(parse_err(line, kcol, "no variables declared"));
                }
                for (i, nm) in names.iter().enumerate() {
                    if !is_ident(nm) {
                        return Err(parse_err(line, kcol, format!("invalid variable name `{nm}`")));
                    }
                    if names[..i].contains(nm) {
                        return Err(parse_err(line, kcol, format!("variable `{nm}` declared twice")));
                    }
                }
                variables = Some(names.into());
            } else {
                options.insert(key_t.to_string(), value.trim().to_string());
            }
            continue;
        }
        let vars = variables
            .as_ref()
            .ok_or_else(|| parse_err(line, 1, "polynomial before the `vars:` declaration"))?;
        let trimmed = body.trim_end();
        let trimmed = trimmed.strip_suffix([';', ',']).unwrap_or(trimmed);
        polynomials.push(parse_poly_at(trimmed, vars, line, 1)?);
    }
    let variables = variables.ok_or_else(|| parse_err(1, 1, "missing `vars:` declaration"))?;
    if polynomials.is_empty() {
        return Err(Error::EmptySystem);
    }
    Ok(ProblemFile { variables, polynomials, options })
}

pub fn read_system(path: &Path) -> Result<ProblemFile> {
    let text = std::fs::read_to_string(path)?;
    parse_system(&text)
}

impl ProblemFile {
    /// Canonical text form, accepted back by [`parse_system`].
    pub fn to_text(&self) -> String {
        let mut out = format!("vars: {}\n", self.variables.join(" "));
        for (k, v) in &self.options {
            out.push_str(&format!("{k}: {v}\n"));
        }
        for p in &self.polynomials {
            out.push_str(&format!("{p}\n"));
        }
        out
    }
}
