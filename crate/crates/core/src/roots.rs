//! Root-based spectral factorization on the circle.
//!
//! A nonnegative `w = Σ_{-d}^{d} w_k e^{ikx}` gives the degree-`2d`
//! polynomial `P(z) = Σ w_k z^{k+d}`, whose roots come in pairs
//! `λ ↔ 1/conj(λ)` and whose unit-circle roots have even multiplicity.
//! Keeping one root per pair, the one with `|λ| ≥ 1`, yields the outer
//! factor `H(z) = c ∏ (z − λ)` with `w = |h|²` on the circle and
//! `H(0) > 0`.
//!
//! The same root machinery gives the Mahler measure through Jensen's
//! formula, the outerness test and the inner-outer split.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::trig::TrigPoly;

/// Roots of `Σ_j coeffs[j] z^j` (ascending coefficients) as eigenvalues of
/// the balanced companion matrix. Zero roots from vanishing low-order
/// coefficients are returned exactly.
pub fn poly_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let zero = Complex64::new(0.0, 0.0);
    let Some(top) = coeffs.iter().rposition(|c| *c != zero) else {
        return Err(Error::AllCoefficientsZero);
    };
    let low = coeffs.iter().position(|c| *c != zero).unwrap();
    let mut roots = vec![zero; low];
    let core = &coeffs[low..=top];
    let degree = core.len() - 1;
    match degree {
        0 => {}
        1 => roots.push(-core[0] / core[1]),
        _ => {
            let lead = core[degree];
            let mut m = DMatrix::<Complex64>::zeros(degree, degree);
            for i in 1..degree {
                m[(i, i - 1)] = Complex64::new(1.0, 0.0);
            }
            for i in 0..degree {
                m[(i, degree - 1)] = -core[i] / lead;
            }
            balance(&mut m);
            let eig = m
                .try_schur(f64::EPSILON, 0)
                .and_then(|s| s.eigenvalues())
                .ok_or(Error::RootFinding { degree })?;
            roots.extend(eig.iter().copied());
        }
    }
    Ok(roots)
}

/// Parlett-Reinsch diagonal similarity scaling by powers of two.
fn balance(m: &mut DMatrix<Complex64>) {
    let n = m.nrows();
    let norm1 = |z: Complex64| z.re.abs() + z.im.abs();
    loop {
        let mut converged = true;
        for i in 0..n {
            let mut col = 0.0;
            let mut row = 0.0;
            for j in 0..n {
                if j != i {
                    col += norm1(m[(j, i)]);
                    row += norm1(m[(i, j)]);
                }
            }
            if col == 0.0 || row == 0.0 {
                continue;
            }
            let sum = col + row;
            let mut f = 1.0;
            let mut g = row / 2.0;
            while col < g {
                f *= 2.0;
                col *= 4.0;
            }
            g = row * 2.0;
            while col >= g {
                f /= 2.0;
                col /= 4.0;
            }
            if (col + row) / f < 0.95 * sum {
                converged = false;
                for j in 0..n {
                    m[(i, j)] /= f;
                    m[(j, i)] *= f;
                }
            }
        }
        if converged {
            break;
        }
    }
}

/// Horner evaluation of `p` and `p'` at `z`.
pub fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn newton_step(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let (p, dp) = horner(coeffs, z);
    if dp.norm() == 0.0 {
        return z;
    }
    let next = z - p / dp;
    if next.is_finite() && horner(coeffs, next).0.norm() <= p.norm() {
        next
    } else {
        z
    }
}

/// Ascending coefficients of `∏ (z − λ)`.
pub fn monic_from_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(1.0, 0.0)];
    for &r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); out.len() + 1];
        for (j, c) in out.iter().enumerate() {
            next[j + 1] += c;
            next[j] -= c * r;
        }
        out = next;
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct FejerRieszConfig {
    /// Accepted grid minimum of `w` below zero.
    pub nonneg_tol: f64,
    /// Half-width of the unit-circle band in `log |λ|`, also the pairing distance.
    pub boundary_tol: f64,
    /// One Newton step per selected off-circle root on `P`.
    pub polish: bool,
}

impl Default for FejerRieszConfig {
    fn default() -> Self {
        FejerRieszConfig {
            nonneg_tol: 1e-9,
            boundary_tol: 1e-6,
            polish: false,
        }
    }
}

/// Outer factor of a nonnegative circle polynomial with its roots.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootFactorization {
    #[serde(skip)]
    pub h: TrigPoly,
    pub roots: Vec<Complex64>,
    /// `|h_d|`, the modulus of the leading coefficient.
    pub scale: f64,
    /// Max coefficient error of `|h|²` against the input.
    pub residual: f64,
    pub boundary_pairs: usize,
}

/// Fejér-Riesz factorization `w = |h|²`, `H` free of zeros in the open
/// disk and `H(0) > 0`.
pub fn fejer_riesz(w: &TrigPoly, cfg: &FejerRieszConfig) -> Result<RootFactorization> {
    w.ensure_real()?;
    if w.is_zero() {
        return Err(Error::InvalidArgument("weight is identically zero".into()));
    }
    let d = w.degree();
    let n = (16 * (d + 1)).next_power_of_two().max(256);
    let min = w.min_on_grid(n)?;
    if min < -cfg.nonneg_tol {
        return Err(Error::NotNonnegative { min });
    }
    if d == 0 {
        let w0 = w.mean().re;
        if w0 <= 0.0 {
            return Err(Error::NotNonnegative { min: w0 });
        }
        return Ok(RootFactorization {
            h: TrigPoly::constant(w0.sqrt()),
            roots: Vec::new(),
            scale: w0.sqrt(),
            residual: 0.0,
            boundary_pairs: 0,
        });
    }
    let d = d as i64;
    let lead = w.coeff(d).norm().max(w.coeff(-d).norm());
    if lead < 1e-14 * w.max_abs() {
        return Err(Error::DegenerateLeadingCoeff { magnitude: lead });
    }
    let p: Vec<Complex64> = (-d..=d).map(|k| w.coeff(k)).collect();
    let all = poly_roots(&p)?;

    let tol = cfg.boundary_tol;
    let mut boundary = Vec::new();
    let mut outside = Vec::new();
    let mut inside = Vec::new();
    for r in all {
        let l = r.norm().ln();
        if l.abs() <= tol {
            boundary.push(r);
        } else if l > 0.0 {
            outside.push(r);
        } else {
            inside.push(r);
        }
    }
    if boundary.len() % 2 == 1 {
        return Err(Error::OddBoundaryCluster {
            detail: format!("{} roots on the unit circle", boundary.len()),
        });
    }
    if outside.len() != inside.len() {
        return Err(Error::OddBoundaryCluster {
            detail: format!(
                "{} roots outside the circle but {} inside",
                outside.len(),
                inside.len()
            ),
        });
    }

    let mut selected = Vec::with_capacity(d as usize);
    let pairs = greedy_pairs(&boundary, |a, b| (a - b).norm());
    for (i, j) in &pairs {
        let (a, b) = (boundary[*i], boundary[*j]);
        if (a - b).norm() > 2.0 * tol {
            return Err(Error::OddBoundaryCluster {
                detail: format!("nearest circle roots {a} and {b} are too far apart"),
            });
        }
        let mid = (a + b) * 0.5;
        selected.push(mid / mid.norm());
    }
    // Each outside root is averaged with the reflection of its partner when
    // the two agree closely.
    let reflected: Vec<Complex64> = inside.iter().map(|r| 1.0 / r.conj()).collect();
    for (i, j) in greedy_bipartite(&outside, &reflected) {
        let (mu, nu) = (outside[i], reflected[j]);
        let mut root = if (mu - nu).norm() <= 1e-6 * mu.norm() {
            (mu + nu) * 0.5
        } else {
            mu
        };
        if cfg.polish {
            root = newton_step(&p, root);
        }
        selected.push(root);
    }

    let g = TrigPoly::from_dense(0, &monic_from_roots(&selected));
    let g2 = g.squared_modulus();
    let num: f64 = (-d..=d).map(|k| (w.coeff(k) * g2.coeff(k).conj()).re).sum();
    let den: f64 = (-d..=d).map(|k| g2.coeff(k).norm_sqr()).sum();
    let s = num / den;
    if !(s > 0.0) {
        return Err(Error::NotNonnegative { min });
    }
    let h = normalize_phase(&g.scale(s.sqrt()));
    let residual = h.squared_modulus().max_coeff_diff(w);
    let scale = h.coeff(d).norm();
    Ok(RootFactorization {
        h,
        roots: selected,
        scale,
        residual,
        boundary_pairs: pairs.len(),
    })
}

/// Greedy nearest-neighbour pairing within one set.
fn greedy_pairs(items: &[Complex64], dist: impl Fn(Complex64, Complex64) -> f64) -> Vec<(usize, usize)> {
    let mut used = vec![false; items.len()];
    let mut out = Vec::new();
    for i in 0..items.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let best = (0..items.len())
            .filter(|&j| !used[j])
            .min_by(|&a, &b| dist(items[i], items[a]).total_cmp(&dist(items[i], items[b])));
        if let Some(j) = best {
            used[j] = true;
            out.push((i, j));
        }
    }
    out
}

/// Greedy matching of two equal-length sets by globally shortest distance.
fn greedy_bipartite(a: &[Complex64], b: &[Complex64]) -> Vec<(usize, usize)> {
    let mut cand: Vec<(f64, usize, usize)> = Vec::with_capacity(a.len() * b.len());
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            cand.push(((x - y).norm(), i, j));
        }
    }
    cand.sort_by(|p, q| p.0.total_cmp(&q.0));
    let mut ua = vec![false; a.len()];
    let mut ub = vec![false; b.len()];
    let mut out = Vec::with_capacity(a.len());
    for (_, i, j) in cand {
        if !ua[i] && !ub[j] {
            ua[i] = true;
            ub[j] = true;
            out.push((i, j));
        }
    }
    out.sort();
    out
}

/// Multiplies by a unimodular constant so the lowest coefficient is real positive.
pub fn normalize_phase(h: &TrigPoly) -> TrigPoly {
    match h.iter().next() {
        Some((_, c)) => {
            let phase = c.conj() / c.norm();
            h.map(|k, v| {
                let v = v * phase;
                Some(if k == h.min_freq().unwrap() {
                    Complex64::new(v.norm(), 0.0)
                } else {
                    v
                })
            })
        }
        None => h.clone(),
    }
}

/// Dense ascending coefficients of a polynomial supported in `[0, d]`.
fn one_sided(h: &TrigPoly) -> Result<Vec<Complex64>> {
    match h.min_freq() {
        None => Err(Error::AllCoefficientsZero),
        Some(lo) if lo < 0 => Err(Error::SpectrumNotOneSided { lowest: lo as f64 }),
        Some(_) => Ok((0..=h.max_freq().unwrap()).map(|k| h.coeff(k)).collect()),
    }
}

/// Roots of `H(z) = Σ_{k≥0} h_k z^k` (zero roots included).
pub fn analytic_roots(h: &TrigPoly) -> Result<Vec<Complex64>> {
    poly_roots(&one_sided(h)?)
}

/// Mahler measure by Jensen's formula, `|h_d| ∏ max(1, |λ|)`, equal to
/// `|h(0)| ∏ max(1, |λ|⁻¹)` when `h_0 ≠ 0`. Any support is accepted since
/// a monomial factor has unit measure.
pub fn mahler_jensen(h: &TrigPoly) -> Result<f64> {
    let (_, dense) = h.dense();
    if dense.is_empty() {
        return Err(Error::AllCoefficientsZero);
    }
    let roots = poly_roots(&dense)?;
    let lead = dense.last().unwrap().norm();
    Ok(roots.iter().fold(lead, |acc, r| acc * r.norm().max(1.0)))
}

/// `exp ∫ log|h|` by the trapezoid rule.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MahlerQuadrature {
    pub value: f64,
    /// Samples whose `log |h|` was clipped at −700.
    pub clipped: usize,
}

pub const LOG_CLIP: f64 = -700.0;

pub fn mahler_quadrature(h: &TrigPoly, samples: usize) -> Result<MahlerQuadrature> {
    if h.is_zero() {
        return Err(Error::AllCoefficientsZero);
    }
    let mut clipped = 0;
    let total: f64 = h
        .samples(samples)
        .iter()
        .map(|v| {
            let l = v.norm().ln();
            if l < LOG_CLIP {
                clipped += 1;
                LOG_CLIP
            } else {
                l
            }
        })
        .sum();
    Ok(MahlerQuadrature {
        value: (total / samples as f64).exp(),
        clipped,
    })
}

/// Both outerness criteria for a polynomial supported in `[0, d]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OuterCheck {
    pub mahler: f64,
    pub mean_abs: f64,
    /// Smallest root modulus of `H`, infinite for constants.
    pub min_root_modulus: f64,
    pub by_mahler: bool,
    pub by_roots: bool,
}

pub fn outer_check(h: &TrigPoly, tol: f64) -> Result<OuterCheck> {
    let roots = analytic_roots(h)?;
    let mean_abs = h.coeff(0).norm();
    let mahler = mahler_jensen(h)?;
    let min_root_modulus = roots.iter().map(|r| r.norm()).fold(f64::INFINITY, f64::min);
    Ok(OuterCheck {
        mahler,
        mean_abs,
        min_root_modulus,
        by_mahler: (mahler - mean_abs).abs() <= tol * (1.0 + mean_abs),
        by_roots: min_root_modulus >= 1.0 - tol,
    })
}

/// `h` is outer iff `M(h) = |∫h|`.
pub fn is_outer(h: &TrigPoly, tol: f64) -> Result<bool> {
    Ok(outer_check(h, tol)?.by_mahler)
}

/// Inner factor `e^{iφ} z^k ∏ (z − λ)/(1 − conj(λ) z)` over the nonzero
/// roots inside the disk.
#[derive(Clone, Debug, PartialEq)]
pub struct InnerFactor {
    pub unimodular: Complex64,
    pub monomial: usize,
    pub blaschke_zeros: Vec<Complex64>,
}

impl InnerFactor {
    pub fn eval_z(&self, z: Complex64) -> Complex64 {
        let mut v = self.unimodular * z.powu(self.monomial as u32);
        for &a in &self.blaschke_zeros {
            v *= (z - a) / (1.0 - a.conj() * z);
        }
        v
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        self.eval_z(Complex64::cis(x))
    }

    /// The inner factor as a circle polynomial when it is one.
    pub fn as_polynomial(&self) -> Result<TrigPoly> {
        if self.blaschke_zeros.is_empty() {
            Ok(TrigPoly::from_pairs([(self.monomial as i64, self.unimodular)]))
        } else {
            Err(Error::NonpolynomialInner {
                zeros: self.blaschke_zeros.len(),
            })
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InnerOuter {
    pub inner: InnerFactor,
    pub outer: TrigPoly,
}

/// `h = h_i · h_o` for `h` supported in `[0, d]`. Inside roots are reflected
/// to `1/conj(λ)`; the outer part has the same modulus as `h` on the circle
/// and positive mean.
pub fn inner_outer_split(h: &TrigPoly) -> Result<InnerOuter> {
    let dense = one_sided(h)?;
    let roots = poly_roots(&dense)?;
    let lead = *dense.last().unwrap();
    let mut outer_roots = Vec::with_capacity(roots.len());
    let mut monomial = 0;
    let mut blaschke = Vec::new();
    let mut gain = lead.norm();
    for r in roots {
        if r == Complex64::new(0.0, 0.0) {
            monomial += 1;
        } else if r.norm() < 1.0 {
            blaschke.push(r);
            gain *= r.norm();
            outer_roots.push(1.0 / r.conj());
        } else {
            outer_roots.push(r);
        }
    }
    let outer = normalize_phase(&TrigPoly::from_dense(0, &monic_from_roots(&outer_roots)).scale(gain));
    let mut inner = InnerFactor {
        unimodular: Complex64::new(1.0, 0.0),
        monomial,
        blaschke_zeros: blaschke,
    };
    // fix the unimodular constant at a point where the outer part is largest
    let x = (0..16)
        .map(|j| std::f64::consts::TAU * j as f64 / 16.0)
        .max_by(|a, b| outer.eval(*a).norm().total_cmp(&outer.eval(*b).norm()))
        .unwrap();
    let ratio = h.eval(x) / (outer.eval(x) * inner.eval(x));
    inner.unimodular = ratio / ratio.norm();
    Ok(InnerOuter { inner, outer })
}
