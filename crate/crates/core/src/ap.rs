//! Almost periodic exponential polynomials `f(x) = Σ ĉ(ω) e^{iωx}` on ℝ.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::trig::TrigPoly;

/// Frequencies closer than this are the same frequency.
pub const FREQ_MERGE_TOL: f64 = 1e-12;

/// Finite exponential sum with real frequencies, kept sorted by frequency.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ApFunc {
    terms: Vec<(f64, Complex64)>,
}

impl ApFunc {
    pub fn zero() -> Self {
        ApFunc { terms: Vec::new() }
    }

    pub fn constant(c: impl Into<Complex64>) -> Self {
        Self::from_pairs([(0.0, c.into())])
    }

    /// Sorts, merges frequencies within [`FREQ_MERGE_TOL`] (keeping the
    /// smallest key of each cluster) and drops exact zeros.
    pub fn from_pairs<I, C>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (f64, C)>,
        C: Into<Complex64>,
    {
        let mut raw: Vec<(f64, Complex64)> =
            pairs.into_iter().map(|(w, c)| (w, c.into())).collect();
        raw.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut terms: Vec<(f64, Complex64)> = Vec::with_capacity(raw.len());
        for (w, c) in raw {
            match terms.last_mut() {
                Some((w0, c0)) if w - *w0 <= FREQ_MERGE_TOL => *c0 += c,
                _ => terms.push((w, c)),
            }
        }
        terms.retain(|(_, c)| *c != Complex64::new(0.0, 0.0));
        ApFunc { terms }
    }

    /// Circle polynomial read as a `2π`-periodic function on ℝ.
    pub fn from_trig(p: &TrigPoly) -> Self {
        Self::from_pairs(p.iter().map(|(k, c)| (k as f64, c)))
    }

    pub fn terms(&self) -> &[(f64, Complex64)] {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, Complex64)> + '_ {
        self.terms.iter().copied()
    }

    /// Ω(f), increasing.
    pub fn spectrum(&self) -> Vec<f64> {
        self.terms.iter().map(|t| t.0).collect()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn inf_freq(&self) -> Option<f64> {
        self.terms.first().map(|t| t.0)
    }

    pub fn sup_freq(&self) -> Option<f64> {
        self.terms.last().map(|t| t.0)
    }

    /// Coefficient at `omega`, matched within the merge tolerance.
    pub fn coeff(&self, omega: f64) -> Complex64 {
        self.terms
            .iter()
            .find(|(w, _)| (w - omega).abs() <= FREQ_MERGE_TOL)
            .map(|t| t.1)
            .unwrap_or_default()
    }

    /// Bohr mean `m(f)`: the coefficient at frequency zero.
    pub fn bohr_mean(&self) -> Complex64 {
        self.coeff(0.0)
    }

    /// `(2L)⁻¹ ∫_{-L}^{L} f` by composite Simpson, for validating
    /// [`ApFunc::bohr_mean`]; the gap to the exact mean is `O(1/L)`.
    pub fn bohr_mean_numeric(&self, half_width: f64) -> Complex64 {
        assert!(half_width > 0.0);
        let top = self.terms.iter().map(|t| t.0.abs()).fold(0.0, f64::max);
        // ~32 points per shortest period
        let mut panels = ((2.0 * half_width * (top + 1.0) * 32.0 / (2.0 * PI)).ceil() as usize).max(16);
        panels += panels % 2;
        let h = 2.0 * half_width / panels as f64;
        let mut acc = self.eval(-half_width) + self.eval(half_width);
        for j in 1..panels {
            let weight = if j % 2 == 1 { 4.0 } else { 2.0 };
            acc += self.eval(-half_width + j as f64 * h) * weight;
        }
        acc * (h / 3.0) / (2.0 * half_width)
    }

    /// Bandwidth `b(f) = sup Ω(f) − inf Ω(f)`.
    pub fn bandwidth(&self) -> f64 {
        match (self.inf_freq(), self.sup_freq()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0.0,
        }
    }

    /// Exponential type `max(|inf Ω|, |sup Ω|)` of the entire extension.
    pub fn exp_type(&self) -> Result<f64> {
        match (self.inf_freq(), self.sup_freq()) {
            (Some(lo), Some(hi)) => Ok(lo.abs().max(hi.abs())),
            _ => Err(Error::ZeroFunction),
        }
    }

    pub fn is_one_sided(&self) -> bool {
        self.inf_freq().is_none_or(|w| w >= -FREQ_MERGE_TOL)
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        self.iter().map(|(w, c)| c * Complex64::cis(w * x)).sum()
    }

    /// Product, i.e. convolution over the Minkowski sum of spectra.
    pub fn mul(&self, other: &Self) -> Self {
        Self::from_pairs(
            self.iter()
                .flat_map(|(a, ca)| other.iter().map(move |(b, cb)| (a + b, ca * cb))),
        )
    }

    /// `conj f`: `ĉ(ω) ↦ conj ĉ(−ω)`.
    pub fn conj(&self) -> Self {
        Self::from_pairs(self.iter().map(|(w, c)| (-w, c.conj())))
    }

    /// `|f|²`.
    pub fn squared_modulus(&self) -> Self {
        self.mul(&self.conj())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_pairs(self.iter().chain(other.iter()))
    }

    pub fn scale(&self, s: impl Into<Complex64>) -> Self {
        let s = s.into();
        Self::from_pairs(self.iter().map(|(w, c)| (w, c * s)))
    }

    /// Multiplication by `e^{iδx}`: every frequency moves by `delta`.
    pub fn shift(&self, delta: f64) -> Self {
        Self::from_pairs(self.iter().map(|(w, c)| (w + delta, c)))
    }

    /// Keeps terms for which `keep` returns a new coefficient.
    pub fn map(&self, mut keep: impl FnMut(f64, Complex64) -> Option<Complex64>) -> Self {
        Self::from_pairs(self.iter().filter_map(|(w, c)| keep(w, c).map(|v| (w, v))))
    }

    /// Σ |ĉ(ω)|², the Parseval side of `m(|f|²)`.
    pub fn energy(&self) -> f64 {
        self.terms.iter().map(|t| t.1.norm_sqr()).sum()
    }

    pub fn l1_norm(&self) -> f64 {
        self.terms.iter().map(|t| t.1.norm()).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.iter().map(|t| t.1.norm()).fold(0.0, f64::max)
    }

    /// Largest coefficient gap, matching frequencies within the merge tolerance.
    pub fn max_coeff_diff(&self, other: &Self) -> f64 {
        self.add(&other.scale(-1.0)).max_abs()
    }

    /// Largest `|ĉ(ω) − conj ĉ(−ω)|`.
    pub fn realness_defect(&self) -> f64 {
        self.iter()
            .map(|(w, c)| (c - self.coeff(-w).conj()).norm())
            .fold(0.0, f64::max)
    }

    /// Half-plane extension
    /// `F(z) = Σ_{ω<0} ĉ(ω)e^{iωz̄} + ĉ(0) + Σ_{ω>0} ĉ(ω)e^{iωz}`,
    /// the Poisson integral of `f` at `z`.
    pub fn poisson_extend(&self, z: Complex64) -> Result<Complex64> {
        if z.im < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "Poisson extension needs Im z >= 0, got {}",
                z.im
            )));
        }
        let i = Complex64::i();
        Ok(self
            .iter()
            .map(|(w, c)| {
                if w < -FREQ_MERGE_TOL {
                    c * (i * w * z.conj()).exp()
                } else if w > FREQ_MERGE_TOL {
                    c * (i * w * z).exp()
                } else {
                    c
                }
            })
            .sum())
    }

    /// Entire extension `F(z) = Σ ĉ(ω) e^{iωz}`.
    pub fn entire_extend(&self, z: Complex64) -> Complex64 {
        let i = Complex64::i();
        self.iter().map(|(w, c)| c * (i * w * z).exp()).sum()
    }

    /// Truncated Poisson integral `(y/π) ∫_{|s| ≤ cutoff} f(x−s)/(s²+y²) ds`.
    pub fn poisson_kernel_mean(&self, x: f64, y: f64, cutoff: f64) -> Result<PoissonQuadrature> {
        if !(y > 0.0 && cutoff > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "Poisson quadrature needs y > 0 and cutoff > 0, got y = {y}, cutoff = {cutoff}"
            )));
        }
        let top = self.terms.iter().map(|t| t.0.abs()).fold(0.0, f64::max);
        let scale = self.l1_norm().max(f64::MIN_POSITIVE);
        // panels short against both the kernel width and the fastest period
        let width = y.min(PI / (top + 1e-3)).min(cutoff);
        let panels = (2.0 * cutoff / width).ceil().max(1.0) as usize;
        let step = 2.0 * cutoff / panels as f64;
        let tol = 1e-8 * scale / panels as f64;
        let integrand = |s: f64| self.eval(x - s) * (y / PI / (s * s + y * y));
        let mut value = Complex64::new(0.0, 0.0);
        for p in 0..panels {
            let a = -cutoff + p as f64 * step;
            value += adaptive_simpson(&integrand, a, a + step, tol, 40);
        }
        let tail_mass = 1.0 - 2.0 / PI * (cutoff / y).atan();
        Ok(PoissonQuadrature {
            value,
            truncation_bound: tail_mass * self.l1_norm(),
        })
    }
}

/// Truncated Poisson integral and a bound on the neglected tails.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PoissonQuadrature {
    pub value: Complex64,
    pub truncation_bound: f64,
}

fn adaptive_simpson(f: &impl Fn(f64) -> Complex64, a: f64, b: f64, tol: f64, depth: u32) -> Complex64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (fa + fm * 4.0 + fb) * ((b - a) / 6.0);
    simpson_step(f, a, b, fa, fm, fb, whole, tol, depth)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
    f: &impl Fn(f64) -> Complex64,
    a: f64,
    b: f64,
    fa: Complex64,
    fm: Complex64,
    fb: Complex64,
    whole: Complex64,
    tol: f64,
    depth: u32,
) -> Complex64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (fa + flm * 4.0 + fm) * ((m - a) / 6.0);
    let right = (fm + frm * 4.0 + fb) * ((b - m) / 6.0);
    let delta = left + right - whole;
    if depth == 0 || delta.norm() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}
