//! Seeded random inputs for verification runs, examples and tests.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ap::ApFunc;
use crate::error::{Error, Result};
use crate::roots::monic_from_roots;
use crate::trig::{BivarPoly, TrigPoly, Z2};

pub const SEED_VAR: &str = "SPECFACT_SEED";

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `SPECFACT_SEED`, or 0 when unset.
pub fn seed_from_env() -> Result<u64> {
    match std::env::var(SEED_VAR) {
        Err(_) => Ok(0),
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("{SEED_VAR} must be an unsigned integer, got {s:?}"))),
    }
}

/// Uniform in `[−1, 1] × [−1, 1]`.
pub fn unit_box(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0))
}

/// Every coefficient on `[0, d]` drawn from the unit box.
pub fn random_poly(rng: &mut impl Rng, d: usize) -> TrigPoly {
    TrigPoly::from_pairs((0..=d as i64).map(|k| (k, unit_box(rng))))
}

/// `∏ (z − λ)` scaled by `1/∏|λ|` so the constant term is real and
/// positive; all roots outside the open disk makes this outer.
pub fn poly_from_roots(roots: &[Complex64]) -> TrigPoly {
    let dense = monic_from_roots(roots);
    let c0 = dense[0];
    let phase = if c0.norm() > 0.0 { c0.conj() / c0.norm_sqr() } else { Complex64::new(1.0, 0.0) };
    TrigPoly::from_dense(0, &dense).scale(phase)
}

/// Degree-`d` polynomial with root moduli uniform in `[r_min, r_max]`,
/// arguments uniform, `h_0 = 1`.
pub fn random_outer(rng: &mut impl Rng, d: usize, r_min: f64, r_max: f64) -> TrigPoly {
    let roots: Vec<Complex64> = (0..d)
        .map(|_| Complex64::from_polar(rng.random_range(r_min..=r_max), rng.random_range(0.0..std::f64::consts::TAU)))
        .collect();
    poly_from_roots(&roots)
}

/// Real circle polynomial of degree `d`, coefficients from the unit box.
pub fn random_real_trig(rng: &mut impl Rng, d: usize) -> TrigPoly {
    let p = random_poly(rng, d);
    p.add(&p.conj_reflect()).scale(0.5)
}

/// Real torus polynomial with support in `[−d, d]²`.
pub fn random_real_bivar(rng: &mut impl Rng, d: usize) -> BivarPoly {
    let d = d as i64;
    let p = BivarPoly::from_pairs((0..=d).flat_map(|m| (-d..=d).map(move |n| Z2(m, n))).map(|k| (k, unit_box(rng))));
    p.add(&p.conj_reflect()).scale(0.5)
}

/// Support in `[0, d]²` with `g₀₀ = 1` and the other coefficients summing
/// in modulus to `budget < 1`, so `g` has no zeros on the closed polydisk.
pub fn random_bivar_outer(rng: &mut impl Rng, d: usize, budget: f64) -> BivarPoly {
    let d = d as i64;
    let keys: Vec<Z2> = (0..=d).flat_map(|m| (0..=d).map(move |n| Z2(m, n))).filter(|k| *k != Z2(0, 0)).collect();
    let raw: Vec<Complex64> = keys.iter().map(|_| unit_box(rng)).collect();
    let total: f64 = raw.iter().map(|c| c.norm()).sum();
    let s = budget / total;
    BivarPoly::from_pairs(
        std::iter::once((Z2(0, 0), Complex64::new(1.0, 0.0))).chain(keys.into_iter().zip(raw.into_iter().map(|c| c * s))),
    )
}

/// Up to `max_terms` frequencies uniform in `[0, max_freq]`, unit-box coefficients.
pub fn random_ap_one_sided(rng: &mut impl Rng, max_terms: usize, max_freq: f64) -> ApFunc {
    let count = rng.random_range(1..=max_terms);
    ApFunc::from_pairs((0..count).map(|_| (rng.random_range(0.0..=max_freq), unit_box(rng))))
}
