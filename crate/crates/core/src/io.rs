//! Coefficient files, factor reports and CSV samples.

use std::collections::BTreeMap;
use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::ap::ApFunc;
use crate::error::{Error, Result};
use crate::order::ArchOrder;
use crate::trig::{BivarPoly, TrigPoly, Z2};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeCoeff {
    pub k: Vec<i64>,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FreqCoeff {
    pub omega: f64,
    pub re: f64,
    pub im: f64,
}

/// On-disk coefficient list, tagged by `"kind"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CoeffFile {
    Trig { coeffs: Vec<LatticeCoeff> },
    Bivar { coeffs: Vec<LatticeCoeff> },
    Ap { coeffs: Vec<FreqCoeff> },
}

/// A parsed coefficient object.
#[derive(Clone, Debug, PartialEq)]
pub enum Coeffs {
    Trig(TrigPoly),
    Bivar(BivarPoly),
    Ap(ApFunc),
}

impl Coeffs {
    pub fn kind(&self) -> &'static str {
        match self {
            Coeffs::Trig(_) => "trig",
            Coeffs::Bivar(_) => "bivar",
            Coeffs::Ap(_) => "ap",
        }
    }
}

impl From<&TrigPoly> for CoeffFile {
    fn from(p: &TrigPoly) -> Self {
        CoeffFile::Trig {
            coeffs: p
                .iter()
                .map(|(k, c)| LatticeCoeff { k: vec![k], re: c.re, im: c.im })
                .collect(),
        }
    }
}

impl From<&BivarPoly> for CoeffFile {
    fn from(p: &BivarPoly) -> Self {
        CoeffFile::Bivar {
            coeffs: p
                .iter()
                .map(|(k, c)| LatticeCoeff { k: vec![k.0, k.1], re: c.re, im: c.im })
                .collect(),
        }
    }
}

impl From<&ApFunc> for CoeffFile {
    fn from(f: &ApFunc) -> Self {
        CoeffFile::Ap {
            coeffs: f
                .iter()
                .map(|(omega, c)| FreqCoeff { omega, re: c.re, im: c.im })
                .collect(),
        }
    }
}

impl From<&Coeffs> for CoeffFile {
    fn from(c: &Coeffs) -> Self {
        match c {
            Coeffs::Trig(p) => p.into(),
            Coeffs::Bivar(p) => p.into(),
            Coeffs::Ap(f) => f.into(),
        }
    }
}

fn bad(msg: String) -> Error {
    Error::InvalidArgument(msg)
}

impl CoeffFile {
    /// Validates index arity and finiteness. Repeated keys are summed.
    pub fn to_coeffs(&self) -> Result<Coeffs> {
        let value = |re: f64, im: f64| {
            if re.is_finite() && im.is_finite() {
                Ok(Complex64::new(re, im))
            } else {
                Err(bad(format!("non-finite coefficient {re} + {im}i")))
            }
        };
        Ok(match self {
            CoeffFile::Trig { coeffs } => {
                let mut pairs = Vec::with_capacity(coeffs.len());
                for c in coeffs {
                    let [k] = c.k[..] else {
                        return Err(bad(format!("trig index needs one entry, got {:?}", c.k)));
                    };
                    pairs.push((k, value(c.re, c.im)?));
                }
                Coeffs::Trig(TrigPoly::from_pairs(pairs))
            }
            CoeffFile::Bivar { coeffs } => {
                let mut pairs = Vec::with_capacity(coeffs.len());
                for c in coeffs {
                    let [m, n] = c.k[..] else {
                        return Err(bad(format!("bivar index needs two entries, got {:?}", c.k)));
                    };
                    pairs.push((Z2(m, n), value(c.re, c.im)?));
                }
                Coeffs::Bivar(BivarPoly::from_pairs(pairs))
            }
            CoeffFile::Ap { coeffs } => {
                let mut pairs = Vec::with_capacity(coeffs.len());
                for c in coeffs {
                    if !c.omega.is_finite() {
                        return Err(bad(format!("non-finite frequency {}", c.omega)));
                    }
                    pairs.push((c.omega, value(c.re, c.im)?));
                }
                Coeffs::Ap(ApFunc::from_pairs(pairs))
            }
        })
    }
}

pub fn parse_coeffs(json: &str) -> Result<Coeffs> {
    let file: CoeffFile =
        serde_json::from_str(json).map_err(|e| bad(format!("coefficient file: {e}")))?;
    file.to_coeffs()
}

pub fn emit_coeffs(c: &Coeffs) -> String {
    serde_json::to_string_pretty(&CoeffFile::from(c)).expect("coefficient files always serialize")
}

pub fn read_coeffs(path: &std::path::Path) -> Result<Coeffs> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| bad(format!("cannot read {}: {e}", path.display())))?;
    parse_coeffs(&text)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErrorReport {
    pub name: String,
    pub message: String,
}

impl From<&Error> for ErrorReport {
    fn from(e: &Error) -> Self {
        ErrorReport {
            name: e.name().to_string(),
            message: e.to_string(),
        }
    }
}

/// Result bundle written by every command. Maps are ordered, so equal runs
/// give byte-identical output.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct FactorReport {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factor: Option<CoeffFile>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub roots: Vec<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mahler: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    pub flags: BTreeMap<String, Value>,
    pub diagnostics: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<ArchOrder>,
    pub config: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorReport>,
}

impl FactorReport {
    pub fn new(command: &str, config: Value) -> Self {
        FactorReport {
            command: command.to_string(),
            config,
            ..Default::default()
        }
    }

    pub fn flag(&mut self, key: &str, v: impl Serialize) {
        self.flags.insert(key.to_string(), to_value(v));
    }

    pub fn diag(&mut self, key: &str, v: impl Serialize) {
        self.diagnostics.insert(key.to_string(), to_value(v));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

pub fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report values always serialize")
}

/// C's `%.17g`.
pub fn fmt_g17(v: f64) -> String {
    if !v.is_finite() {
        return if v.is_nan() {
            "nan".into()
        } else if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{v:.16e}");
    let (mantissa, exp) = sci.split_once('e').unwrap();
    let exp: i32 = exp.parse().unwrap();
    let strip = |s: &str| {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if (-4..17).contains(&exp) {
        strip(&format!("{v:.*}", (16 - exp) as usize))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", strip(mantissa), exp.abs())
    }
}

fn row(out: &mut impl Write, cols: &[f64]) -> std::io::Result<()> {
    let line: Vec<String> = cols.iter().map(|&v| fmt_g17(v)).collect();
    writeln!(out, "{}", line.join(","))
}

/// Samples of `obj` as CSV. Circle: `N` points on `[0, 2π)`, columns
/// `x, re, im`. Torus: `N × N` row-major, columns `x, y, re`. AP: `N`
/// points on `[0, span)`, columns `x, re, im`.
pub fn emit_samples(obj: &Coeffs, n: usize, span: f64, out: &mut impl Write) -> std::io::Result<()> {
    let tau = std::f64::consts::TAU;
    match obj {
        Coeffs::Trig(p) => {
            writeln!(out, "x,re,im")?;
            for j in 0..n {
                let x = tau * j as f64 / n as f64;
                let v = p.eval(x);
                row(out, &[x, v.re, v.im])?;
            }
        }
        Coeffs::Bivar(p) => {
            writeln!(out, "x,y,re")?;
            for i in 0..n {
                for j in 0..n {
                    let (x, y) = (tau * i as f64 / n as f64, tau * j as f64 / n as f64);
                    row(out, &[x, y, p.eval(x, y).re])?;
                }
            }
        }
        Coeffs::Ap(f) => {
            writeln!(out, "x,re,im")?;
            for j in 0..n {
                let x = span * j as f64 / n as f64;
                let v = f.eval(x);
                row(out, &[x, v.re, v.im])?;
            }
        }
    }
    Ok(())
}

/// `x, w(x), |h(x)|²` on `N` circle points, for comparing a factor with its weight.
pub fn emit_factor_samples(
    w: &TrigPoly,
    h: &TrigPoly,
    n: usize,
    out: &mut impl Write,
) -> std::io::Result<()> {
    writeln!(out, "x,w,h2")?;
    for j in 0..n {
        let x = std::f64::consts::TAU * j as f64 / n as f64;
        row(out, &[x, w.eval(x).re, h.eval(x).norm_sqr()])?;
    }
    Ok(())
}

/// `x, y, w(x, y), |h(x, y)|²` on an `N × N` torus grid.
pub fn emit_factor_samples_bivar(
    w: &BivarPoly,
    h: &BivarPoly,
    n: usize,
    out: &mut impl Write,
) -> std::io::Result<()> {
    writeln!(out, "x,y,w,h2")?;
    let tau = std::f64::consts::TAU;
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (tau * i as f64 / n as f64, tau * j as f64 / n as f64);
            row(out, &[x, y, w.eval(x, y).re, h.eval(x, y).norm_sqr()])?;
        }
    }
    Ok(())
}
