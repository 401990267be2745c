//! Outer spectral factors of nonnegative trigonometric polynomials on the
//! circle and the torus, and of almost periodic squares on the line.
//!
//! Three independent factorizers share one coefficient model:
//! [`roots::fejer_riesz`] by polynomial roots, [`cepstral`] by the
//! exponential of the analytic transform of `½ log w`, and [`levinson`] by
//! finite-section prediction. [`ahiezer`] handles exponential sums on ℝ.

pub mod ahiezer;
pub mod ap;
pub mod cepstral;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod grid;
pub mod io;
pub mod levinson;
pub mod order;
pub mod roots;
pub mod trig;

pub use ap::ApFunc;
pub use error::{Error, Result};
pub use order::ArchOrder;
pub use trig::{BivarPoly, TrigPoly, Z2};
