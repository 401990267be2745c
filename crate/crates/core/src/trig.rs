//! Trigonometric polynomials on the circle and on the 2-torus.
//!
//! Both are sparse coefficient maps over a character lattice: `ℤ` for the
//! circle (`f(x) = Σ f_k e^{ikx}`) and `ℤ²` for the torus
//! (`f(x, y) = Σ f_{mn} e^{i(mx + ny)}`). Exact zeros are never stored.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::{Add, Neg};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid;

/// Tolerance on `|f_k - conj(f_{-k})|` for the realness test.
pub const REALNESS_TOL: f64 = 1e-12;

/// A character index: `ℤ` or `ℤ²` under addition.
pub trait Lattice: Copy + Ord + Debug + Add<Output = Self> + Neg<Output = Self> {
    const ZERO: Self;
}

impl Lattice for i64 {
    const ZERO: Self = 0;
}

/// Index `(m, n)` of the torus character `e^{i(mx + ny)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Z2(pub i64, pub i64);

impl Add for Z2 {
    type Output = Z2;
    fn add(self, rhs: Z2) -> Z2 {
        Z2(self.0 + rhs.0, self.1 + rhs.1)
    }
}

impl Neg for Z2 {
    type Output = Z2;
    fn neg(self) -> Z2 {
        Z2(-self.0, -self.1)
    }
}

impl Lattice for Z2 {
    const ZERO: Self = Z2(0, 0);
}

impl From<(i64, i64)> for Z2 {
    fn from((m, n): (i64, i64)) -> Self {
        Z2(m, n)
    }
}

/// Finitely supported coefficient map on a character lattice.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Poly<K: Lattice> {
    coeffs: BTreeMap<K, Complex64>,
}

pub type TrigPoly = Poly<i64>;
pub type BivarPoly = Poly<Z2>;

impl<K: Lattice> Poly<K> {
    pub fn zero() -> Self {
        Poly {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(c: impl Into<Complex64>) -> Self {
        Self::from_pairs([(K::ZERO, c.into())])
    }

    /// Builds a polynomial, summing repeated keys and dropping exact zeros.
    pub fn from_pairs<I, J, C>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (J, C)>,
        J: Into<K>,
        C: Into<Complex64>,
    {
        let mut coeffs = BTreeMap::new();
        for (k, c) in pairs {
            *coeffs.entry(k.into()).or_insert(Complex64::new(0.0, 0.0)) += c.into();
        }
        coeffs.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        Poly { coeffs }
    }

    pub fn coeff(&self, k: K) -> Complex64 {
        self.coeffs.get(&k).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (K, Complex64)> + '_ {
        self.coeffs.iter().map(|(k, c)| (*k, *c))
    }

    /// Ω(f): keys carrying a nonzero coefficient, in increasing order.
    pub fn support(&self) -> impl Iterator<Item = K> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Mean over the group, the coefficient of the trivial character.
    pub fn mean(&self) -> Complex64 {
        self.coeff(K::ZERO)
    }

    pub fn map(&self, mut f: impl FnMut(K, Complex64) -> Option<Complex64>) -> Self {
        Self::from_pairs(self.iter().filter_map(|(k, c)| f(k, c).map(|v| (k, v))))
    }

    pub fn scale(&self, s: impl Into<Complex64>) -> Self {
        let s = s.into();
        self.map(|_, c| Some(c * s))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_pairs(self.iter().chain(other.iter()))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_pairs(self.iter().chain(other.iter().map(|(k, c)| (k, -c))))
    }

    /// Coefficient convolution; samples multiply pointwise.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out: BTreeMap<K, Complex64> = BTreeMap::new();
        for (a, ca) in self.iter() {
            for (b, cb) in other.iter() {
                *out.entry(a + b).or_default() += ca * cb;
            }
        }
        out.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        Poly { coeffs: out }
    }

    /// The conjugate function `conj f`, i.e. `f_k ↦ conj(f_{-k})`.
    pub fn conj_reflect(&self) -> Self {
        Self::from_pairs(self.iter().map(|(k, c)| (-k, c.conj())))
    }

    /// `|h|² = h · conj h`, reflection-symmetric by construction.
    pub fn squared_modulus(&self) -> Self {
        self.mul(&self.conj_reflect()).hermitian_from_upper()
    }

    /// Rebuilds the lower half from the upper one so that
    /// `f_{-k} = conj(f_k)` holds bit-for-bit.
    fn hermitian_from_upper(&self) -> Self {
        let mut pairs = Vec::with_capacity(self.len());
        for (k, c) in self.iter() {
            if k == -k {
                pairs.push((k, Complex64::new(c.re, 0.0)));
            } else if k > -k {
                pairs.push((k, c));
                pairs.push((-k, c.conj()));
            } else if self.coeff(-k) == Complex64::new(0.0, 0.0) {
                // mirror cancelled to an exact zero
                pairs.push((-k, c.conj()));
                pairs.push((k, c));
            }
        }
        Self::from_pairs(pairs)
    }

    /// Largest `|f_k - conj(f_{-k})|`; zero exactly for real-valued `f`.
    pub fn realness_defect(&self) -> f64 {
        self.iter()
            .map(|(k, c)| (c - self.coeff(-k).conj()).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_real(&self) -> bool {
        self.realness_defect() <= REALNESS_TOL
    }

    pub fn ensure_real(&self) -> Result<()> {
        let defect = self.realness_defect();
        if defect <= REALNESS_TOL {
            Ok(())
        } else {
            Err(Error::NotReal { defect })
        }
    }

    /// `Re f = (f + conj f) / 2` at coefficient level.
    pub fn real_part(&self) -> Self {
        Self::from_pairs(
            self.iter()
                .map(|(k, c)| (k, c * 0.5))
                .chain(self.iter().map(|(k, c)| (-k, c.conj() * 0.5))),
        )
    }

    /// Wiener-algebra norm `Σ |f_k|`.
    pub fn l1_norm(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).sum()
    }

    pub fn l2_norm(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Sup-norm distance between coefficient maps.
    pub fn max_coeff_diff(&self, other: &Self) -> f64 {
        self.sub(other).max_abs()
    }

    /// Drops coefficients below `rel * max |f_k|`.
    pub fn truncate(&self, rel: f64) -> Self {
        let floor = rel * self.max_abs();
        self.map(|_, c| (c.norm() > floor).then_some(c))
    }
}

impl TrigPoly {
    /// From ascending coefficients `h_0, h_1, …` placed at `start, start+1, …`.
    pub fn from_dense(start: i64, coeffs: &[Complex64]) -> Self {
        Self::from_pairs(
            coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| (start + j as i64, *c)),
        )
    }

    pub fn from_real_dense(start: i64, coeffs: &[f64]) -> Self {
        Self::from_pairs(
            coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| (start + j as i64, *c)),
        )
    }

    pub fn min_freq(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_freq(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// `max |k|` over the support, zero for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.keys().map(|k| k.unsigned_abs() as usize).max().unwrap_or(0)
    }

    /// Dense ascending coefficients over `[min_freq, max_freq]`.
    pub fn dense(&self) -> (i64, Vec<Complex64>) {
        match (self.min_freq(), self.max_freq()) {
            (Some(lo), Some(hi)) => (lo, (lo..=hi).map(|k| self.coeff(k)).collect()),
            _ => (0, Vec::new()),
        }
    }

    pub fn shift(&self, by: i64) -> Self {
        Self::from_pairs(self.iter().map(|(k, c)| (k + by, c)))
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        self.iter()
            .map(|(k, c)| c * Complex64::cis(k as f64 * x))
            .sum()
    }

    /// Values at `x_j = 2πj/N`, exact for any degree.
    pub fn samples(&self, n: usize) -> Vec<Complex64> {
        let mut buf = vec![Complex64::new(0.0, 0.0); n];
        for (k, c) in self.iter() {
            buf[grid::fold(k, n)] += c;
        }
        grid::synthesize(&mut buf);
        buf
    }

    /// Multiplies the coefficient at `k` by the Fejér weight `max(0, 1 - |k|/n)`.
    pub fn fejer_smooth(&self, n: usize) -> Self {
        assert!(n >= 1, "Fejér order must be positive");
        self.map(|k, c| {
            let w = fejer_weight(k, n);
            (w > 0.0).then_some(c * w)
        })
    }

    /// Minimum of `Re f` over `N` uniform samples.
    pub fn min_on_grid(&self, n: usize) -> Result<f64> {
        self.ensure_real()?;
        if n < 4 * (self.degree() + 1) {
            return Err(Error::InvalidArgument(format!(
                "grid size {n} is below 4·(degree+1) = {}",
                4 * (self.degree() + 1)
            )));
        }
        Ok(self
            .samples(n)
            .iter()
            .map(|v| v.re)
            .fold(f64::INFINITY, f64::min))
    }
}

impl BivarPoly {
    pub fn eval(&self, x: f64, y: f64) -> Complex64 {
        self.iter()
            .map(|(Z2(m, n), c)| c * Complex64::cis(m as f64 * x + n as f64 * y))
            .sum()
    }

    /// `(max |m|, max |n|)` over the support.
    pub fn degrees(&self) -> (usize, usize) {
        self.support().fold((0, 0), |(a, b), Z2(m, n)| {
            (
                a.max(m.unsigned_abs() as usize),
                b.max(n.unsigned_abs() as usize),
            )
        })
    }

    pub fn degree(&self) -> usize {
        let (a, b) = self.degrees();
        a.max(b)
    }

    /// Row-major samples on the `N × N` grid: index `i·N + j` is `(x_i, y_j)`.
    pub fn samples(&self, n: usize) -> Vec<Complex64> {
        let mut buf = vec![Complex64::new(0.0, 0.0); n * n];
        for (Z2(m, k), c) in self.iter() {
            buf[grid::fold(m, n) * n + grid::fold(k, n)] += c;
        }
        grid::synthesize_2d(&mut buf, n);
        buf
    }

    /// Product of per-axis Fejér weights.
    pub fn fejer_smooth(&self, n: usize) -> Self {
        assert!(n >= 1, "Fejér order must be positive");
        self.map(|Z2(a, b), c| {
            let w = fejer_weight(a, n) * fejer_weight(b, n);
            (w > 0.0).then_some(c * w)
        })
    }

    pub fn min_on_grid(&self, n: usize) -> Result<f64> {
        self.ensure_real()?;
        Ok(self
            .samples(n)
            .iter()
            .map(|v| v.re)
            .fold(f64::INFINITY, f64::min))
    }

    /// Embeds a circle polynomial along the first axis.
    pub fn from_trig_x(p: &TrigPoly) -> Self {
        Self::from_pairs(p.iter().map(|(k, c)| (Z2(k, 0), c)))
    }
}

fn fejer_weight(k: i64, n: usize) -> f64 {
    (1.0 - k.unsigned_abs() as f64 / n as f64).max(0.0)
}
