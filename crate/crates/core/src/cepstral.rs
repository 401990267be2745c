//! Spectral factors as `h = exp 𝒜(½ log w)`.
//!
//! `w` is sampled on a uniform grid, `u = ½ log w` is analyzed by DFT, the
//! analytic transform keeps the order-nonnegative half of `û`, and
//! `h = exp v` is re-analyzed into coefficients. A ladder of stages applies
//! Fejér smoothing `e_n * w` and the regularization `w + 1/m` so that each
//! stage is strictly positive even when `w` has zeros; the final stage is
//! the returned factor.
//!
//! The same pipeline runs on the circle (sign of `k`) and on the torus under
//! an [`ArchOrder`] (sign of `m + αn`). [`herglotz_factor`] evaluates the
//! disk extension of the circle factor directly from the Herglotz integral.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid;
use crate::order::ArchOrder;
use crate::trig::{BivarPoly, Lattice, Poly, TrigPoly, Z2};

/// Regularization and smoothing schedule.
///
/// With `m_max = 10^K` the ladder has `K` stages, stage `i` adding
/// `10^{-i}`. With `n_max` set, stage `i` of `K` smooths with Fejér order
/// `n_max / 2^{K-i}`. No `m_max` and no `n_max` is a single exact stage.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Ladder {
    pub m_max: Option<f64>,
    pub n_max: Option<usize>,
}

/// One stage: regularization `1/m` and Fejér order `n` (`None` = off).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Stage {
    pub m: Option<f64>,
    pub n: Option<usize>,
}

impl Ladder {
    pub fn trivial() -> Self {
        Ladder::default()
    }

    pub fn new(m_max: Option<f64>, n_max: Option<usize>) -> Self {
        Ladder { m_max, n_max }
    }

    pub fn stages(&self) -> Vec<Stage> {
        let count = match (self.m_max, self.n_max) {
            (Some(m), _) => (m.log10().round() as usize).max(1),
            (None, Some(_)) => 4,
            (None, None) => 1,
        };
        (1..=count)
            .map(|i| Stage {
                m: self.m_max.map(|m| {
                    if i == count {
                        m
                    } else {
                        10f64.powi(i as i32)
                    }
                }),
                n: self.n_max.map(|n| (n >> (count - i)).max(1)),
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CepstralConfig {
    /// Samples per axis, a power of two.
    pub grid: usize,
    pub ladder: Ladder,
    /// Coefficients below this fraction of the largest are dropped from `h`.
    pub threshold: f64,
    /// Allowed share of `û` energy within two bins of Nyquist.
    pub nyquist_tol: f64,
}

impl CepstralConfig {
    pub fn new(grid: usize) -> Self {
        CepstralConfig {
            grid,
            ladder: Ladder::trivial(),
            threshold: 1e-10,
            nyquist_tol: 1e-8,
        }
    }

    pub fn with_ladder(mut self, ladder: Ladder) -> Self {
        self.ladder = ladder;
        self
    }
}

/// Diagnostics for one ladder stage.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StageReport {
    pub stage: Stage,
    pub grid_min: f64,
    /// Energy share of `û` within two bins of Nyquist.
    pub nyquist_ratio: f64,
    /// L² distance to the previous stage's factor.
    pub l2_delta: Option<f64>,
    /// `min |h|` over the grid; positive means `h` is invertible there.
    pub min_abs_h: f64,
    /// Energy share of `1/h` on order-negative characters.
    pub inverse_leak: f64,
    /// Energy share of `h` on order-negative characters before masking.
    pub leak: f64,
    pub mean: f64,
}

impl StageReport {
    /// Invertible outer certificate: `h` bounded away from zero and `1/h`
    /// one-sided to within `tol`.
    pub fn is_certified(&self, tol: f64) -> bool {
        self.min_abs_h > 0.0 && self.inverse_leak <= tol
    }
}

/// θ̂(Ω(h)) against `[0, τ]`, `τ = max |θ̂(Ω(w))|`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Containment {
    pub tau: f64,
    pub theta_min: f64,
    pub theta_max: f64,
    /// `min(theta_min, τ − theta_max)`; negative when the spectrum spills.
    pub margin: f64,
}

impl Containment {
    pub fn holds(&self, tol: f64) -> bool {
        self.margin >= -tol
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CepstralTrace<K: Lattice> {
    /// `½ log w` on the grid for the final stage.
    pub u: Vec<f64>,
    /// `𝒜(u)` restricted to the grid's resolvable characters.
    pub v: Poly<K>,
    pub h: Poly<K>,
    pub ladder: Vec<StageReport>,
    /// `max |w − |h|²|` over the grid, against the unregularized input.
    pub residual: f64,
    pub containment: Option<Containment>,
}

/// Sampling, analysis and order on one grid.
trait Domain<K: Lattice> {
    fn points(&self) -> usize;
    fn sample(&self, p: &Poly<K>) -> Vec<Complex64>;
    /// Non-Nyquist bins as `(key, coefficient)` plus the Nyquist energy.
    fn analyze(&self, values: Vec<Complex64>) -> (Vec<(K, Complex64)>, f64, f64);
    fn sign(&self, k: K) -> Result<i8>;
}

struct CircleGrid(usize);

impl Domain<i64> for CircleGrid {
    fn points(&self) -> usize {
        self.0
    }

    fn sample(&self, p: &TrigPoly) -> Vec<Complex64> {
        p.samples(self.0)
    }

    fn analyze(&self, mut values: Vec<Complex64>) -> (Vec<(i64, Complex64)>, f64, f64) {
        let n = self.0;
        grid::analyze(&mut values);
        let mut near = 0.0;
        let mut total = 0.0;
        let mut out = Vec::with_capacity(n);
        for (bin, c) in values.into_iter().enumerate() {
            let e = c.norm_sqr();
            total += e;
            if grid::nyquist_distance(bin, n) <= 2 {
                near += e;
            }
            if let Some(k) = grid::bin_frequency(bin, n) {
                out.push((k, c));
            }
        }
        (out, near, total)
    }

    fn sign(&self, k: i64) -> Result<i8> {
        Ok(k.signum() as i8)
    }
}

struct TorusGrid<'a> {
    n: usize,
    order: &'a ArchOrder,
}

impl Domain<Z2> for TorusGrid<'_> {
    fn points(&self) -> usize {
        self.n * self.n
    }

    fn sample(&self, p: &BivarPoly) -> Vec<Complex64> {
        p.samples(self.n)
    }

    fn analyze(&self, mut values: Vec<Complex64>) -> (Vec<(Z2, Complex64)>, f64, f64) {
        let n = self.n;
        grid::analyze_2d(&mut values, n);
        let mut near = 0.0;
        let mut total = 0.0;
        let mut out = Vec::with_capacity(n * n);
        for (idx, c) in values.into_iter().enumerate() {
            let (i, j) = (idx / n, idx % n);
            let e = c.norm_sqr();
            total += e;
            if grid::nyquist_distance(i, n) <= 2 || grid::nyquist_distance(j, n) <= 2 {
                near += e;
            }
            if let (Some(a), Some(b)) = (grid::bin_frequency(i, n), grid::bin_frequency(j, n)) {
                out.push((Z2(a, b), c));
            }
        }
        (out, near, total)
    }

    fn sign(&self, k: Z2) -> Result<i8> {
        self.order.sign(k)
    }
}

fn ratio(part: f64, total: f64) -> f64 {
    if total > 0.0 {
        part / total
    } else {
        0.0
    }
}

fn run<K, D>(
    domain: &D,
    w: &Poly<K>,
    cfg: &CepstralConfig,
    smooth: impl Fn(&Poly<K>, usize) -> Poly<K>,
) -> Result<CepstralTrace<K>>
where
    K: Lattice,
    D: Domain<K>,
{
    let points = domain.points() as f64;
    let mut ladder = Vec::new();
    let mut prev: Option<Poly<K>> = None;
    let mut last: Option<(Vec<f64>, Poly<K>, Poly<K>)> = None;
    for (index, stage) in cfg.ladder.stages().into_iter().enumerate() {
        let mut ws = match stage.n {
            Some(n) => smooth(w, n),
            None => w.clone(),
        };
        if let Some(m) = stage.m {
            ws = ws.add(&Poly::constant(1.0 / m));
        }
        let vals: Vec<f64> = domain.sample(&ws).iter().map(|v| v.re).collect();
        let grid_min = vals.iter().copied().fold(f64::INFINITY, f64::min);
        if !(grid_min > 0.0) {
            return Err(Error::NonpositiveStage {
                stage: index,
                min: grid_min,
            });
        }
        let u: Vec<f64> = vals.iter().map(|v| 0.5 * v.ln()).collect();
        let (u_hat, near, total) =
            domain.analyze(u.iter().map(|&x| Complex64::new(x, 0.0)).collect());
        let nyquist_ratio = ratio(near, total);
        if nyquist_ratio > cfg.nyquist_tol {
            return Err(Error::GridTooCoarse {
                ratio: nyquist_ratio,
            });
        }
        let mut v_pairs = Vec::with_capacity(u_hat.len());
        for (k, c) in u_hat {
            match domain.sign(k)? {
                1 => v_pairs.push((k, c * 2.0)),
                0 => v_pairs.push((k, Complex64::new(c.re, 0.0))),
                _ => {}
            }
        }
        let v = Poly::from_pairs(v_pairs);
        let v_vals = domain.sample(&v);
        let h_vals: Vec<Complex64> = v_vals.iter().map(|z| z.exp()).collect();
        let min_abs_h = h_vals.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
        let inv_vals: Vec<Complex64> = v_vals.iter().map(|z| (-z).exp()).collect();

        let (h_hat, _, h_total) = domain.analyze(h_vals);
        let (inv_hat, _, inv_total) = domain.analyze(inv_vals);
        let mut kept = Vec::with_capacity(h_hat.len());
        let mut leaked = 0.0;
        for (k, c) in h_hat {
            match domain.sign(k)? {
                1 => kept.push((k, c)),
                0 => kept.push((k, Complex64::new(c.re, 0.0))),
                _ => leaked += c.norm_sqr(),
            }
        }
        let mut inverse_leaked = 0.0;
        for (k, c) in inv_hat {
            if domain.sign(k)? < 0 {
                inverse_leaked += c.norm_sqr();
            }
        }
        let h = Poly::from_pairs(kept).truncate(cfg.threshold);
        let l2_delta = prev.as_ref().map(|p| h.sub(p).l2_norm());
        ladder.push(StageReport {
            stage,
            grid_min,
            nyquist_ratio,
            l2_delta,
            min_abs_h,
            inverse_leak: ratio(inverse_leaked, inv_total),
            leak: ratio(leaked, h_total),
            mean: h.mean().re,
        });
        prev = Some(h.clone());
        last = Some((u, v, h));
    }
    let (u, v, h) = last.expect("ladder has at least one stage");
    let wv = domain.sample(w);
    let hv = domain.sample(&h);
    let residual = wv
        .iter()
        .zip(&hv)
        .map(|(a, b)| (a.re - b.norm_sqr()).abs())
        .fold(0.0, f64::max);
    debug_assert_eq!(u.len() as f64, points);
    Ok(CepstralTrace {
        u,
        v,
        h,
        ladder,
        residual,
        containment: None,
    })
}

fn check_grid(n: usize, degree: usize) -> Result<()> {
    if !grid::is_power_of_two(n) || n < 8 * (degree + 1) {
        return Err(Error::InvalidArgument(format!(
            "grid must be a power of two of at least 8·(degree+1) = {}, got {n}",
            8 * (degree + 1)
        )));
    }
    Ok(())
}

/// Outer factor of a nonnegative circle polynomial, `h_0 > 0`.
pub fn cepstral_factor_circle(w: &TrigPoly, cfg: &CepstralConfig) -> Result<CepstralTrace<i64>> {
    w.ensure_real()?;
    if w.is_zero() {
        return Err(Error::InvalidArgument("weight is identically zero".into()));
    }
    check_grid(cfg.grid, w.degree())?;
    run(&CircleGrid(cfg.grid), w, cfg, |p, n| p.fejer_smooth(n))
}

/// Outer factor on the torus for the archimedean order `order`, with the
/// spectrum containment `θ̂(Ω(h)) ⊂ [0, τ]` measured on the result.
pub fn cepstral_factor_ordered(
    w: &BivarPoly,
    order: &ArchOrder,
    cfg: &CepstralConfig,
) -> Result<CepstralTrace<Z2>> {
    w.ensure_real()?;
    if w.is_zero() {
        return Err(Error::InvalidArgument("weight is identically zero".into()));
    }
    check_grid(cfg.grid, w.degree())?;
    let half = (cfg.grid / 2) as i64;
    // every resolvable character on the grid must have a definite sign
    order.certify_box([Z2(-half, -half), Z2(half, half)])?;
    let mut trace = run(
        &TorusGrid {
            n: cfg.grid,
            order,
        },
        w,
        cfg,
        |p, n| p.fejer_smooth(n),
    )?;
    trace.containment = Some(containment(order, w, &trace.h));
    Ok(trace)
}

/// Measures `θ̂(Ω(h))` against `[0, max |θ̂(Ω(w))|]`.
pub fn containment(order: &ArchOrder, w: &BivarPoly, h: &BivarPoly) -> Containment {
    let th = |k: Z2| order.theta_hat(k.0, k.1);
    let tau = w.support().map(|k| th(k).abs()).fold(0.0, f64::max);
    let theta_min = h.support().map(th).fold(f64::INFINITY, f64::min);
    let theta_max = h.support().map(th).fold(f64::NEG_INFINITY, f64::max);
    Containment {
        tau,
        theta_min,
        theta_max,
        margin: theta_min.min(tau - theta_max),
    }
}

/// Value of the Herglotz-integral factor at `z`, with the quadrature bookkeeping.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HerglotzValue {
    pub value: Complex64,
    pub samples: usize,
    /// Quadrature nodes moved by half a step off an exact zero of `w`.
    pub nudged: usize,
}

/// `exp[(2π)⁻¹ ∫ (e^{it} + rz)/(e^{it} − rz) · ½ log w(t) dt]` with
/// `r = 1 − 1/n`, by the trapezoid rule on `64·n` nodes.
pub fn herglotz_factor(w: &TrigPoly, z: Complex64, n: usize) -> Result<HerglotzValue> {
    if z.norm() >= 1.0 {
        return Err(Error::InvalidArgument(format!("need |z| < 1, got {}", z.norm())));
    }
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need n >= 2, got {n}")));
    }
    w.ensure_real()?;
    let samples = 64 * n;
    let step = TAU / samples as f64;
    let rz = z * (1.0 - 1.0 / n as f64);
    let mut nudged = 0;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..samples {
        let mut t = j as f64 * step;
        let mut wt = w.eval(t).re;
        if wt <= 0.0 {
            nudged += 1;
            t += 0.5 * step;
            wt = w.eval(t).re;
            if wt <= 0.0 {
                return Err(Error::LogSingular);
            }
        }
        let e = Complex64::cis(t);
        acc += (e + rz) / (e - rz) * (0.5 * wt.ln());
    }
    Ok(HerglotzValue {
        value: (acc / samples as f64).exp(),
        samples,
        nudged,
    })
}

/// Wiener-algebra norms of `f` and of `exp f`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WienerCheck {
    pub norm: f64,
    pub exp_norm: f64,
    pub bound: f64,
    pub holds: bool,
}

fn wiener_grid(degree: usize, norm: f64) -> usize {
    // exp f has coefficients up to order ~ e·‖f‖ in units of the degree
    let reach = (degree.max(1) as f64) * (4.0 * norm + 16.0);
    ((2.0 * reach) as usize).next_power_of_two().max(64)
}

fn wiener_from(norm: f64, exp_norm: f64) -> WienerCheck {
    let bound = norm.exp();
    WienerCheck {
        norm,
        exp_norm,
        bound,
        holds: exp_norm <= bound + 1e-8,
    }
}

/// Checks `‖exp f‖_A ≤ exp ‖f‖_A` on the circle.
pub fn wiener_norm_check(f: &TrigPoly) -> WienerCheck {
    let norm = f.l1_norm();
    let n = wiener_grid(f.degree(), norm);
    let mut vals: Vec<Complex64> = f.samples(n).iter().map(|z| z.exp()).collect();
    grid::analyze(&mut vals);
    wiener_from(norm, vals.iter().map(|c| c.norm()).sum())
}

/// Checks `‖exp f‖_A ≤ exp ‖f‖_A` on the torus.
pub fn wiener_norm_check_bivar(f: &BivarPoly) -> WienerCheck {
    let norm = f.l1_norm();
    let n = wiener_grid(f.degree(), norm).min(1024);
    let mut vals: Vec<Complex64> = f.samples(n).iter().map(|z| z.exp()).collect();
    grid::analyze_2d(&mut vals, n);
    wiener_from(norm, vals.iter().map(|c| c.norm()).sum())
}
