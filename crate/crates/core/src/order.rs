//! Archimedean orders on the dual of the 2-torus and the transforms they
//! induce.
//!
//! A slope `α > 0` embeds the torus characters into ℝ through
//! `θ̂(m, n) = m + αn`. The lift `Θ` carries a torus polynomial to the
//! exponential sum on ℝ with the same coefficients at frequencies `θ̂(m, n)`,
//! i.e. it restricts `f` to the winding line `t ↦ (t, αt)`.
//!
//! The Hilbert transform multiplies the coefficient at `χ` by `−i·sign(χ)`
//! and the analytic transform `𝒜(f) = f + i𝓗(f)` doubles positive
//! characters, keeps the trivial one and drops the negative ones. Both are
//! defined for the circle (sign of `k`), the torus under an [`ArchOrder`],
//! and exponential sums on ℝ (sign of `ω`).

use std::cmp::Ordering;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ap::{ApFunc, FREQ_MERGE_TOL};
use crate::error::{Error, Result};
use crate::trig::{BivarPoly, TrigPoly, Z2};

/// Default lower bound on `|θ̂(χ)|` for nontrivial `χ` in a working box.
pub const DEFAULT_FLOOR: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArchOrder {
    pub alpha: f64,
    /// Optional exact description of the slope, e.g. `"sqrt(2)"`. Informational.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    pub floor: f64,
}

impl ArchOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "slope must be finite and positive, got {alpha}"
            )));
        }
        Ok(ArchOrder {
            alpha,
            exact: None,
            floor: DEFAULT_FLOOR,
        })
    }

    pub fn sqrt2() -> Self {
        ArchOrder::new(std::f64::consts::SQRT_2)
            .unwrap()
            .with_exact("sqrt(2)")
    }

    pub fn golden() -> Self {
        ArchOrder::new((1.0 + 5f64.sqrt()) / 2.0)
            .unwrap()
            .with_exact("(1+sqrt(5))/2")
    }

    pub fn with_exact(mut self, tag: impl Into<String>) -> Self {
        self.exact = Some(tag.into());
        self
    }

    pub fn with_floor(mut self, floor: f64) -> Self {
        self.floor = floor;
        self
    }

    /// `θ̂(m, n) = m + αn`.
    pub fn theta_hat(&self, m: i64, n: i64) -> f64 {
        m as f64 + self.alpha * n as f64
    }

    /// `θ(t) = (t mod 2π, αt mod 2π)`, the winding line.
    pub fn theta(&self, t: f64) -> (f64, f64) {
        let tau = std::f64::consts::TAU;
        (t.rem_euclid(tau), (self.alpha * t).rem_euclid(tau))
    }

    /// Sign of `χ` in the order. Nontrivial characters closer to zero than
    /// the floor are rejected as collisions with the trivial one.
    pub fn sign(&self, k: Z2) -> Result<i8> {
        if k == Z2(0, 0) {
            return Ok(0);
        }
        let t = self.theta_hat(k.0, k.1);
        if t.abs() <= self.floor {
            return Err(Error::OrderCollision {
                a: (k.0, k.1),
                b: (0, 0),
                gap: t.abs(),
            });
        }
        Ok(if t > 0.0 { 1 } else { -1 })
    }

    pub fn compare(&self, a: Z2, b: Z2) -> Result<Ordering> {
        Ok(match self.sign(a + -b)? {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        })
    }

    /// Certifies that `θ̂` is injective on the bounding box of `support`:
    /// every nonzero difference of two box points stays above the floor.
    /// Returns the smallest `|θ̂|` over those differences.
    pub fn certify_box(&self, support: impl IntoIterator<Item = Z2>) -> Result<f64> {
        let mut lo = (i64::MAX, i64::MAX);
        let mut hi = (i64::MIN, i64::MIN);
        for Z2(m, n) in support {
            lo = (lo.0.min(m), lo.1.min(n));
            hi = (hi.0.max(m), hi.1.max(n));
        }
        if lo.0 > hi.0 {
            return Ok(f64::INFINITY);
        }
        let (dm, dn) = (hi.0 - lo.0, hi.1 - lo.1);
        let mut gap = f64::INFINITY;
        for n in 0..=dn {
            let m_lo = if n == 0 { 1 } else { -dm };
            for m in m_lo..=dm {
                let t = self.theta_hat(m, n).abs();
                if t <= self.floor {
                    return Err(Error::OrderCollision {
                        a: (m, n),
                        b: (0, 0),
                        gap: t,
                    });
                }
                gap = gap.min(t);
            }
        }
        Ok(gap)
    }

    /// `Θ(p)`: the coefficient at `(m, n)` moves to frequency `m + αn`.
    pub fn lift(&self, p: &BivarPoly) -> Result<ApFunc> {
        let mut placed: Vec<(f64, Z2)> = p
            .support()
            .map(|k| (self.theta_hat(k.0, k.1), k))
            .collect();
        placed.sort_by(|a, b| a.0.total_cmp(&b.0));
        for pair in placed.windows(2) {
            let gap = pair[1].0 - pair[0].0;
            if gap <= FREQ_MERGE_TOL {
                return Err(Error::OrderCollision {
                    a: (pair[0].1 .0, pair[0].1 .1),
                    b: (pair[1].1 .0, pair[1].1 .1),
                    gap,
                });
            }
        }
        Ok(ApFunc::from_pairs(
            p.iter().map(|(k, c)| (self.theta_hat(k.0, k.1), c)),
        ))
    }

    /// Evaluates `p` along the winding line, `Θ(p)(t) = p(θ(t))`.
    pub fn restrict(&self, p: &BivarPoly, t: f64) -> Complex64 {
        let (x, y) = self.theta(t);
        p.eval(x, y)
    }
}

/// The circle's dual `ℤ` with its usual order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Circle;

/// The dual of ℝ: frequencies ordered as reals, zero within the merge tolerance.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RealLine;

/// Coefficient maps whose characters carry a sign under the order `O`.
pub trait OrderedSpectrum<O>: Sized {
    fn realness_defect(&self) -> f64;

    /// Rebuilds the map from `g(sign(χ), f̂(χ))`, dropping `None`.
    fn map_by_sign(
        &self,
        order: &O,
        g: impl FnMut(i8, Complex64) -> Option<Complex64>,
    ) -> Result<Self>;
}

impl OrderedSpectrum<Circle> for TrigPoly {
    fn realness_defect(&self) -> f64 {
        TrigPoly::realness_defect(self)
    }

    fn map_by_sign(
        &self,
        _: &Circle,
        mut g: impl FnMut(i8, Complex64) -> Option<Complex64>,
    ) -> Result<Self> {
        Ok(self.map(|k, c| g(k.signum() as i8, c)))
    }
}

impl OrderedSpectrum<ArchOrder> for BivarPoly {
    fn realness_defect(&self) -> f64 {
        BivarPoly::realness_defect(self)
    }

    fn map_by_sign(
        &self,
        order: &ArchOrder,
        mut g: impl FnMut(i8, Complex64) -> Option<Complex64>,
    ) -> Result<Self> {
        let mut pairs = Vec::with_capacity(self.len());
        for (k, c) in self.iter() {
            if let Some(v) = g(order.sign(k)?, c) {
                pairs.push((k, v));
            }
        }
        Ok(BivarPoly::from_pairs(pairs))
    }
}

impl OrderedSpectrum<RealLine> for ApFunc {
    fn realness_defect(&self) -> f64 {
        ApFunc::realness_defect(self)
    }

    fn map_by_sign(
        &self,
        _: &RealLine,
        mut g: impl FnMut(i8, Complex64) -> Option<Complex64>,
    ) -> Result<Self> {
        Ok(self.map(|w, c| {
            let s = if w > FREQ_MERGE_TOL {
                1
            } else if w < -FREQ_MERGE_TOL {
                -1
            } else {
                0
            };
            g(s, c)
        }))
    }
}

fn ensure_real<F, O>(f: &F) -> Result<()>
where
    F: OrderedSpectrum<O>,
{
    let defect = f.realness_defect();
    if defect <= crate::trig::REALNESS_TOL {
        Ok(())
    } else {
        Err(Error::NotReal { defect })
    }
}

/// `−i·z`, computed by swapping parts so it is exact.
fn times_minus_i(z: Complex64) -> Complex64 {
    Complex64::new(z.im, -z.re)
}

/// `𝓗(f)`: coefficient at `χ` times `−i·sign(χ)`. Input must be real.
pub fn hilbert_transform<F, O>(order: &O, f: &F) -> Result<F>
where
    F: OrderedSpectrum<O>,
{
    ensure_real(f)?;
    f.map_by_sign(order, |s, c| match s {
        1 => Some(times_minus_i(c)),
        -1 => Some(-times_minus_i(c)),
        _ => None,
    })
}

/// `𝒜(f) = f + i𝓗(f)`: positive characters doubled, negative ones
/// removed, the mean kept. Input must be real.
pub fn analytic_transform<F, O>(order: &O, f: &F) -> Result<F>
where
    F: OrderedSpectrum<O>,
{
    ensure_real(f)?;
    f.map_by_sign(order, |s, c| match s {
        1 => Some(c * 2.0),
        -1 => None,
        _ => Some(c),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn theta_hat_examples() {
        let ord = ArchOrder::sqrt2();
        assert_eq!(ord.theta_hat(0, 0), 0.0);
        assert_eq!(ord.theta_hat(1, 1), 1.0 + SQRT_2);
        assert!(ord.theta_hat(1, -1) < 0.0);
        assert_eq!(ord.sign(Z2(1, -1)).unwrap(), -1);
        assert_eq!(ord.compare(Z2(0, 1), Z2(1, 0)).unwrap(), Ordering::Greater);
    }

    #[test]
    fn lift_examples() {
        let ord = ArchOrder::sqrt2();
        let k = Complex64::new(0.5, -2.0);
        assert_eq!(
            ord.lift(&BivarPoly::constant(k)).unwrap(),
            ApFunc::constant(k)
        );
        let p = BivarPoly::from_pairs([((1, 0), 1.0), ((0, 1), 1.0)]);
        assert_eq!(
            ord.lift(&p).unwrap(),
            ApFunc::from_pairs([(1.0, 1.0), (SQRT_2, 1.0)])
        );
    }

    #[test]
    fn lift_rejects_colliding_lattice_points() {
        let ord = ArchOrder::new(1.0).unwrap();
        let p = BivarPoly::from_pairs([((1, 0), 1.0), ((0, 1), 1.0)]);
        assert!(matches!(ord.lift(&p), Err(Error::OrderCollision { .. })));
        assert!(ord.certify_box(p.support()).is_err());
        assert!(ArchOrder::sqrt2().certify_box(p.support()).unwrap() > 0.4);
    }

    #[test]
    fn lift_matches_restriction_to_winding_line() {
        let ord = ArchOrder::golden();
        let p = BivarPoly::from_pairs([
            ((0, 0), c(1.0)),
            ((1, -1), Complex64::new(0.25, 0.5)),
            ((2, 1), c(-0.75)),
        ]);
        let f = ord.lift(&p).unwrap();
        for t in [0.0, 0.7, 3.1, 12.5, -40.0] {
            assert!((f.eval(t) - ord.restrict(&p, t)).norm() < 1e-11);
        }
    }

    #[test]
    fn hilbert_examples() {
        let cos = TrigPoly::from_pairs([(-1, 0.5), (1, 0.5)]);
        let sin = TrigPoly::from_pairs([(-1, Complex64::new(0.0, 0.5)), (1, Complex64::new(0.0, -0.5))]);
        assert_eq!(hilbert_transform(&Circle, &cos).unwrap(), sin);
        assert!(hilbert_transform(&Circle, &TrigPoly::constant(3.0))
            .unwrap()
            .is_zero());

        let ord = ArchOrder::sqrt2();
        let cos_xy = BivarPoly::from_pairs([((1, -1), 0.5), ((-1, 1), 0.5)]);
        let minus_sin_xy = BivarPoly::from_pairs([
            ((1, -1), Complex64::new(0.0, 0.5)),
            ((-1, 1), Complex64::new(0.0, -0.5)),
        ]);
        assert_eq!(hilbert_transform(&ord, &cos_xy).unwrap(), minus_sin_xy);

        let not_real = TrigPoly::from_pairs([(1, 1.0)]);
        assert!(matches!(
            hilbert_transform(&Circle, &not_real),
            Err(Error::NotReal { .. })
        ));
    }

    #[test]
    fn analytic_examples() {
        let one = TrigPoly::constant(1.0);
        assert_eq!(analytic_transform(&Circle, &one).unwrap(), one);
        let cos = TrigPoly::from_pairs([(-1, 0.5), (1, 0.5)]);
        assert_eq!(
            analytic_transform(&Circle, &cos).unwrap(),
            TrigPoly::from_pairs([(1, 1.0)])
        );
        let ord = ArchOrder::sqrt2();
        let chi = Z2(-1, 1);
        let f = BivarPoly::from_pairs([(chi, 1.0), (-chi, 1.0)]);
        assert_eq!(
            analytic_transform(&ord, &f).unwrap(),
            BivarPoly::from_pairs([(chi, 2.0)])
        );
    }
}
