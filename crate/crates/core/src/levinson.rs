//! Finite-section Szegő minimization.
//!
//! Minimizing `∫ |1 + P|² w` over `P = Σ_{k=1}^{n} a_k e^{ikx}` gives the
//! Hermitian Toeplitz normal equations `Σ_j a_j w_{k−j} = 0`, `k = 1..n`,
//! solved by the Levinson-Durbin recursion. The minimum `eps_n` decreases to
//! the Mahler measure `M(w)`, and `√eps_n · (1 + H_n)⁻¹` approximates the
//! outer factor of `w`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid;
use crate::roots::{mahler_quadrature, poly_roots};
use crate::trig::TrigPoly;

/// Grid used for the flatness of `|1 + H_n|² w`.
pub const FLATNESS_GRID: usize = 4096;
/// Accepted grid minimum of `w` below zero.
pub const NONNEG_TOL: f64 = 1e-9;

fn ensure_nonnegative(w: &TrigPoly) -> Result<()> {
    let n = FLATNESS_GRID.max((4 * (w.degree() + 1)).next_power_of_two());
    let min = w.min_on_grid(n)?;
    if min < -NONNEG_TOL {
        return Err(Error::NotNonnegative { min });
    }
    Ok(())
}

/// `w_0, …, w_n`, the first row of the Gram matrix `⟨χ_j, χ_k⟩ = w_{j−k}`.
pub fn toeplitz_moments(w: &TrigPoly, n: usize) -> Result<Vec<Complex64>> {
    w.ensure_real()?;
    Ok((0..=n as i64).map(|k| w.coeff(k)).collect())
}

/// Monic optimal predictor `1 + H_n` and its recursion history.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Predictor {
    /// `1, a_1, …, a_n`.
    pub coeffs: Vec<Complex64>,
    /// Prediction error after each order, `errors[p] = eps_p`.
    pub errors: Vec<f64>,
    pub reflections: Vec<Complex64>,
}

impl Predictor {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eps(&self) -> f64 {
        *self.errors.last().unwrap()
    }

    pub fn as_trig(&self) -> TrigPoly {
        TrigPoly::from_dense(0, &self.coeffs)
    }

    /// Smallest root modulus of `1 + H_n`; at least one for the optimum.
    pub fn min_root_modulus(&self) -> Result<f64> {
        Ok(poly_roots(&self.coeffs)?
            .iter()
            .map(|r| r.norm())
            .fold(f64::INFINITY, f64::min))
    }
}

/// Levinson-Durbin on the moments `r_0, …, r_n` of a Hermitian Toeplitz matrix.
pub fn levinson_solve(moments: &[Complex64]) -> Result<Predictor> {
    let Some(r0) = moments.first() else {
        return Err(Error::InvalidArgument("no moments".into()));
    };
    if !(r0.re > 0.0) {
        return Err(Error::SingularToeplitz {
            order: 0,
            reflection: f64::NAN,
        });
    }
    let n = moments.len() - 1;
    let mut a = vec![Complex64::new(1.0, 0.0)];
    let mut err = r0.re;
    let mut errors = vec![err];
    let mut reflections = Vec::with_capacity(n);
    for p in 1..=n {
        let acc: Complex64 = (0..p).map(|j| a[j] * moments[p - j]).sum();
        let kappa = -acc / err;
        if kappa.norm() >= 1.0 - 1e-12 {
            return Err(Error::SingularToeplitz {
                order: p,
                reflection: kappa.norm(),
            });
        }
        let mut next = a.clone();
        next.push(kappa);
        for j in 1..p {
            next[j] = a[j] + kappa * a[p - j].conj();
        }
        a = next;
        err *= 1.0 - kappa.norm_sqr();
        errors.push(err);
        reflections.push(kappa);
    }
    Ok(Predictor {
        coeffs: a,
        errors,
        reflections,
    })
}

/// Section `n` of the minimization together with the factor it induces.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SzegoSection {
    pub n: usize,
    pub predictor: Predictor,
    pub eps: f64,
    #[serde(skip)]
    pub h: TrigPoly,
    /// `max / min` of `|1 + H_n|² w` on the grid; one when flat.
    pub flatness: f64,
    /// `min |1 + H_n|` on the grid.
    pub min_abs_predictor: f64,
    /// Energy share of `(1 + H_n)⁻¹` on negative frequencies.
    pub leak: f64,
}

fn flatness(w: &TrigPoly, pred: &TrigPoly) -> f64 {
    let wv = w.samples(FLATNESS_GRID);
    let pv = pred.samples(FLATNESS_GRID);
    let (lo, hi) = wv
        .iter()
        .zip(&pv)
        .map(|(a, b)| a.re * b.norm_sqr())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        });
    hi / lo
}

/// Runs the recursion at order `n` and forms `h_n = √eps_n (1 + H_n)⁻¹`
/// by division on an `N`-point grid, coefficients below `1e-10` of the
/// largest dropped.
pub fn szego_section(w: &TrigPoly, n: usize, grid_size: usize) -> Result<SzegoSection> {
    if !grid::is_power_of_two(grid_size) || grid_size < 2 * (n + 1) {
        return Err(Error::InvalidArgument(format!(
            "grid must be a power of two above 2·(order+1), got {grid_size}"
        )));
    }
    w.ensure_real()?;
    ensure_nonnegative(w)?;
    let predictor = levinson_solve(&toeplitz_moments(w, n)?)?;
    let eps = predictor.eps();
    let pred = predictor.as_trig();
    let mut vals = pred.samples(grid_size);
    let min_abs_predictor = vals.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
    let root = eps.sqrt();
    vals.iter_mut().for_each(|z| *z = root / *z);
    grid::analyze(&mut vals);
    let mut kept = Vec::new();
    let mut leaked = 0.0;
    let mut total = 0.0;
    for (bin, c) in vals.into_iter().enumerate() {
        total += c.norm_sqr();
        match grid::bin_frequency(bin, grid_size) {
            Some(0) => kept.push((0, Complex64::new(root, 0.0))),
            Some(k) if k > 0 => kept.push((k, c)),
            _ => leaked += c.norm_sqr(),
        }
    }
    let h = TrigPoly::from_pairs(kept).truncate(1e-10);
    Ok(SzegoSection {
        n,
        flatness: flatness(w, &pred),
        predictor,
        eps,
        h,
        min_abs_predictor,
        leak: if total > 0.0 { leaked / total } else { 0.0 },
    })
}

/// Finite-section factor with its quality measures.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SzegoFactor {
    pub section: SzegoSection,
    /// `max |w − |h_n|²|` on the grid.
    pub residual: f64,
    /// `M(w)` by the trapezoid rule on the same grid.
    pub mahler: f64,
    /// `eps_n − M(w)`, nonnegative up to quadrature error.
    pub gap: f64,
}

pub fn szego_factor(w: &TrigPoly, n: usize, grid_size: usize) -> Result<SzegoFactor> {
    let section = szego_section(w, n, grid_size)?;
    let wv = w.samples(grid_size);
    let hv = section.h.samples(grid_size);
    let residual = wv
        .iter()
        .zip(&hv)
        .map(|(a, b)| (a.re - b.norm_sqr()).abs())
        .fold(0.0, f64::max);
    // w ≥ 0, so M(w) is the geometric mean of w itself
    let mahler = mahler_quadrature(w, grid_size)?.value;
    let gap = section.eps - mahler;
    Ok(SzegoFactor {
        section,
        residual,
        mahler,
        gap,
    })
}
