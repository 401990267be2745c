//! Ahiezer factors of exponential polynomials and zero counting in the
//! upper half-plane.
//!
//! For `h` with spectrum in `[0, τ]` and `f = |h|²`, the entire extension
//! `F` of `f` factors as `F(z) = S(z)·conj(S(conj z))` with
//! `S(z) = e^{−iτz/2} h(z)`, whose spectrum lies in `[−τ/2, τ/2]`. `S` is
//! zero-free in the open upper half-plane exactly when `h` is, which the
//! argument principle on rectangles decides numerically.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ap::{ApFunc, FREQ_MERGE_TOL};
use crate::error::{Error, Result};

/// Exponential type `max(|inf Ω(f)|, |sup Ω(f)|)`.
pub fn exp_type(f: &ApFunc) -> Result<f64> {
    f.exp_type()
}

#[derive(Clone, Debug, PartialEq)]
pub struct AhiezerPair {
    /// `f = |h|²`, real on ℝ with a symmetric spectrum.
    pub f: ApFunc,
    /// `S = e^{−i(a + τ/2)x} h` with `a = inf Ω(h)`, the canonical (`α = 0`)
    /// representative; `a = 0` whenever `h` has a nonzero mean.
    pub s: ApFunc,
    pub tau: f64,
    /// `max |F(z) − S(z)·conj(S(conj z))|` over [`identity_grid`].
    pub identity_residual: f64,
    /// `Ω(S) ⊂ [−τ/2 − tol, τ/2 + tol]` with the merge tolerance.
    pub spectrum_contained: bool,
    /// Zeros of `h` (equivalently of `S`) over `[−5, 5] × [10⁻⁶, Y]`, `Y`
    /// from [`dominance_height`]; `None` when a zero sits on a box edge.
    pub upper_zero_count: Option<i64>,
}

/// 10 × 10 points with `Re z ∈ [−5, 5]`, `Im z ∈ [−2, 2]`.
pub fn identity_grid() -> Vec<Complex64> {
    let mut pts = Vec::with_capacity(100);
    for i in 0..10 {
        for j in 0..10 {
            pts.push(Complex64::new(
                -5.0 + 10.0 * i as f64 / 9.0,
                -2.0 + 4.0 * j as f64 / 9.0,
            ));
        }
    }
    pts
}

/// `conj(S(conj z))`, the reflection of `S` across the real axis.
pub fn reflect_eval(s: &ApFunc, z: Complex64) -> Complex64 {
    s.entire_extend(z.conj()).conj()
}

/// Largest `|F(z) − S(z)·conj(S(conj z))|` over `points`.
pub fn identity_residual(f: &ApFunc, s: &ApFunc, points: &[Complex64]) -> f64 {
    points
        .iter()
        .map(|&z| (f.entire_extend(z) - s.entire_extend(z) * reflect_eval(s, z)).norm())
        .fold(0.0, f64::max)
}

/// Builds `F = |h|²` and the Ahiezer factor `S` of its entire extension.
pub fn ahiezer_from_factor(h: &ApFunc) -> Result<AhiezerPair> {
    if h.is_zero() {
        return Err(Error::ZeroFunction);
    }
    if !h.is_one_sided() {
        return Err(Error::SpectrumNotOneSided {
            lowest: h.inf_freq().unwrap(),
        });
    }
    let f = h.squared_modulus();
    let tau = exp_type(&f)?;
    let (inf, sup) = (f.inf_freq().unwrap(), f.sup_freq().unwrap());
    // the type and half the bandwidth coincide for a symmetric spectrum
    if (inf + sup).abs() > 2.0 * FREQ_MERGE_TOL || (tau - f.bandwidth() / 2.0).abs() > 2.0 * FREQ_MERGE_TOL {
        return Err(Error::SpectrumAsymmetric { inf, sup });
    }
    let lowest = h.inf_freq().unwrap();
    let s = h.shift(-(lowest + tau / 2.0));
    let spectrum_contained = s
        .spectrum()
        .iter()
        .all(|w| w.abs() <= tau / 2.0 + FREQ_MERGE_TOL);
    let identity_residual = identity_residual(&f, &s, &identity_grid());
    // e^{−iaz} has no zeros, and after it the mean is nonzero
    let upper_zero_count = zero_free_certificate(&h.shift(-lowest), (-5.0, 5.0), 1e-6, 64)
        .ok()
        .map(|c| c.total);
    Ok(AhiezerPair {
        f,
        s,
        tau,
        identity_residual,
        spectrum_contained,
        upper_zero_count,
    })
}

/// Axis-aligned rectangle `[x0, x1] × [y0, y1]` in the upper half-plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContourBox {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl ContourBox {
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Self {
        ContourBox { x0, x1, y0, y1 }
    }

    fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.x0, self.y0),
            Complex64::new(self.x1, self.y0),
            Complex64::new(self.x1, self.y1),
            Complex64::new(self.x0, self.y1),
        ]
    }
}

/// Below this modulus the contour is considered to pass through a zero.
pub const CONTOUR_FLOOR: f64 = 1e-8;
const MAX_BISECTIONS: u32 = 40;

fn phase_increment(a: Complex64, b: Complex64) -> f64 {
    (b / a).arg()
}

/// Accumulated argument change of `F` along the segment `a → b`, split
/// until each step turns by less than `π/2`. A jump that survives every
/// split is a zero on the segment; the principal value leaves it out.
fn segment_winding(f: &ApFunc, a: Complex64, b: Complex64, fa: Complex64, fb: Complex64, depth: u32) -> f64 {
    let d = phase_increment(fa, fb);
    if d.abs() < PI / 2.0 {
        return d;
    }
    if depth == 0 {
        return 0.0;
    }
    let m = (a + b) * 0.5;
    let fm = f.entire_extend(m);
    segment_winding(f, a, m, fa, fm, depth - 1) + segment_winding(f, m, b, fm, fb, depth - 1)
}

/// Number of zeros of the entire extension of `f` inside `bx`, by the
/// argument principle with `samples` initial points per side. Zeros on an
/// edge between samples count one half each.
pub fn upper_halfplane_zero_count(f: &ApFunc, bx: &ContourBox, samples: usize) -> Result<i64> {
    if !(bx.y0 > 0.0 && bx.y1 > bx.y0 && bx.x1 > bx.x0) {
        return Err(Error::InvalidArgument(format!(
            "box must satisfy 0 < y0 < y1 and x0 < x1, got {bx:?}"
        )));
    }
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let corners = bx.corners();
    let mut per_side = samples.max(4);
    let mut min_seen = f64::INFINITY;
    for _attempt in 0..=3 {
        let mut pts = Vec::with_capacity(4 * per_side + 1);
        for side in 0..4 {
            let (a, b) = (corners[side], corners[(side + 1) % 4]);
            for j in 0..per_side {
                pts.push(a + (b - a) * (j as f64 / per_side as f64));
            }
        }
        pts.push(corners[0]);
        let vals: Vec<Complex64> = pts.iter().map(|&z| f.entire_extend(z)).collect();
        min_seen = vals.iter().map(|v| v.norm()).fold(f64::INFINITY, f64::min);
        if min_seen <= CONTOUR_FLOOR {
            per_side *= 2;
            continue;
        }
        let total: f64 = (0..pts.len() - 1)
            .map(|j| segment_winding(f, pts[j], pts[j + 1], vals[j], vals[j + 1], MAX_BISECTIONS))
            .sum();
        return Ok((total / TAU).round() as i64);
    }
    Err(Error::ZeroOnContour { min: min_seen })
}

/// Height above which `|ĉ(0)| > Σ_{ω≠0} |ĉ(ω)| e^{−ω_min y}` rules out zeros
/// of a one-sided `f` with nonzero mean, `ω_min` the smallest positive
/// frequency. `None` when the mean vanishes.
pub fn dominance_height(f: &ApFunc) -> Option<f64> {
    let c0 = f.bohr_mean().norm();
    if c0 == 0.0 {
        return None;
    }
    let rest: f64 = f
        .iter()
        .filter(|(w, _)| *w > FREQ_MERGE_TOL)
        .map(|(_, c)| c.norm())
        .sum();
    let w_min = f
        .iter()
        .map(|(w, _)| w)
        .filter(|w| *w > FREQ_MERGE_TOL)
        .fold(f64::INFINITY, f64::min);
    if rest == 0.0 {
        return Some(0.0);
    }
    // 2× margin on the dominance ratio
    Some(((2.0 * rest / c0).ln() / w_min).max(0.0))
}

/// Zero counts over a family of boxes exhausting `[x0, x1] × [y_min, ∞)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroFreeCertificate {
    /// Zeros are excluded above this height by coefficient dominance.
    pub y_max: f64,
    pub boxes: Vec<(ContourBox, i64)>,
    pub total: i64,
}

impl ZeroFreeCertificate {
    pub fn zero_free(&self) -> bool {
        self.total == 0
    }
}

/// Counts zeros of a one-sided `f` with nonzero mean over
/// `[x0, x1] × [y_min, Y]` in horizontal slabs of unit height (at most 64),
/// `Y` from [`dominance_height`]. For `2π`-periodic `f` one period in `x`
/// covers the whole strip.
pub fn zero_free_certificate(
    f: &ApFunc,
    x_range: (f64, f64),
    y_min: f64,
    samples: usize,
) -> Result<ZeroFreeCertificate> {
    if !f.is_one_sided() {
        return Err(Error::SpectrumNotOneSided {
            lowest: f.inf_freq().unwrap_or(0.0),
        });
    }
    let y_max = dominance_height(f)
        .ok_or_else(|| Error::InvalidArgument("mean is zero; no dominance height".into()))?
        .max(y_min * 2.0);
    let slabs = ((y_max - y_min).ceil() as usize).clamp(1, 64);
    let step = (y_max - y_min) / slabs as f64;
    let mut boxes = Vec::with_capacity(slabs);
    let mut total = 0;
    for s in 0..slabs {
        let bx = ContourBox::new(
            x_range.0,
            x_range.1,
            y_min + s as f64 * step,
            y_min + (s + 1) as f64 * step,
        );
        let count = upper_halfplane_zero_count(f, &bx, samples)?;
        total += count;
        boxes.push((bx, count));
    }
    Ok(ZeroFreeCertificate {
        y_max,
        boxes,
        total,
    })
}

/// Outerness of a one-sided exponential sum: nonzero mean and no zeros of
/// the extension in the open upper half-plane, checked over one horizontal
/// `period` (shifted off the axis-aligned symmetry points by `offset`).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OuterVerdict {
    pub outer: bool,
    pub mean_abs: f64,
    pub certificate: Option<ZeroFreeCertificate>,
}

pub fn verify_outer(f: &ApFunc, period: f64, y_min: f64, samples: usize) -> Result<OuterVerdict> {
    if !f.is_one_sided() {
        return Err(Error::SpectrumNotOneSided {
            lowest: f.inf_freq().unwrap_or(0.0),
        });
    }
    let mean_abs = f.bohr_mean().norm();
    if mean_abs == 0.0 {
        return Ok(OuterVerdict {
            outer: false,
            mean_abs,
            certificate: None,
        });
    }
    let offset = 0.1234567 * period;
    let mut last_err = None;
    // nudge the box sideways if a zero sits on a vertical edge
    for shift in [0.0, 0.01, 0.037] {
        let x0 = -period / 2.0 + offset + shift * period;
        match zero_free_certificate(f, (x0, x0 + period), y_min, samples) {
            Ok(cert) => {
                return Ok(OuterVerdict {
                    outer: cert.zero_free(),
                    mean_abs,
                    certificate: Some(cert),
                })
            }
            Err(e @ Error::ZeroOnContour { .. }) => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last_err.unwrap())
}
