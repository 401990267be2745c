//! Oracles used by the integration tests. Nothing here calls into the
//! factorizers; everything is direct arithmetic on coefficient lists.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_complex::Complex64;
use specfact::{BivarPoly, TrigPoly, Z2};

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Coefficients of `|h|²` by the double sum `Σ_j h_j conj(h_{j−k})`.
pub fn autocorr(h: &TrigPoly) -> BTreeMap<i64, Complex64> {
    let mut out = BTreeMap::new();
    for (j, a) in h.iter() {
        for (l, b) in h.iter() {
            *out.entry(j - l).or_insert(c(0.0)) += a * b.conj();
        }
    }
    out
}

pub fn autocorr_bivar(h: &BivarPoly) -> BTreeMap<(i64, i64), Complex64> {
    let mut out = BTreeMap::new();
    for (j, a) in h.iter() {
        for (l, b) in h.iter() {
            *out.entry((j.0 - l.0, j.1 - l.1)).or_insert(c(0.0)) += a * b.conj();
        }
    }
    out
}

/// Max difference between two coefficient maps, missing keys read as 0.
pub fn map_diff<K: Ord + Copy>(a: &BTreeMap<K, Complex64>, b: &BTreeMap<K, Complex64>) -> f64 {
    a.keys()
        .chain(b.keys())
        .map(|k| {
            let x = a.get(k).copied().unwrap_or_default();
            let y = b.get(k).copied().unwrap_or_default();
            (x - y).norm()
        })
        .fold(0.0, f64::max)
}

pub fn trig_map(p: &TrigPoly) -> BTreeMap<i64, Complex64> {
    p.iter().collect()
}

/// Schur-Cohn: `true` iff `Σ p_k z^k` has no zero in the closed unit disk.
/// Each step replaces `p` by `p − κ p^#` with `κ = p_n / conj(p_0)`,
/// which keeps the zeros inside the disk when `|κ| < 1`, and drops the degree.
pub fn schur_cohn_zero_free_disk(coeffs: &[Complex64]) -> bool {
    let mut p: Vec<Complex64> = coeffs.to_vec();
    while p.last().is_some_and(|x| *x == c(0.0)) {
        p.pop();
    }
    while p.len() > 1 {
        let n = p.len() - 1;
        if p[0] == c(0.0) {
            return false;
        }
        let kappa = p[n] / p[0].conj();
        if kappa.norm() >= 1.0 {
            return false;
        }
        let next: Vec<Complex64> = (0..n).map(|j| p[j] - kappa * p[n - j].conj()).collect();
        p = next;
    }
    !p.is_empty()
}

pub fn dense(h: &TrigPoly) -> Vec<Complex64> {
    (0..=h.max_freq().unwrap_or(0)).map(|k| h.coeff(k)).collect()
}

/// `Σ h_k z^k` by the naive power sum.
pub fn eval_z(h: &TrigPoly, z: Complex64) -> Complex64 {
    h.iter().map(|(k, a)| a * z.powi(k as i32)).sum()
}

/// Exponential sum `Σ c e^{iωz}` at a complex point.
pub fn eval_exp(terms: &[(f64, Complex64)], z: Complex64) -> Complex64 {
    terms.iter().map(|(w, a)| a * (Complex64::i() * w * z).exp()).sum()
}

pub fn bivar_keys(p: &BivarPoly) -> Vec<Z2> {
    p.support().collect()
}

/// Pass/fail line shared by the acceptance runner.
pub struct Verdict {
    pub id: u32,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl Verdict {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} [{}] {}: {}",
            self.id,
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.detail
        )
    }
}
