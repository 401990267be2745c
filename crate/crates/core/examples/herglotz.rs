//! Outer factor at interior points by the Herglotz integral of log w.
//!
//! `cargo run --example herglotz`

use num_complex::Complex64;
use specfact::cepstral::herglotz_factor;
use specfact::roots::{fejer_riesz, FejerRieszConfig};
use specfact::TrigPoly;

fn main() -> specfact::Result<()> {
    let w = TrigPoly::from_pairs([(-1, 0.5), (0, 1.25), (1, 0.5)]);
    let h = fejer_riesz(&w, &FejerRieszConfig::default())?.h;
    for z in [Complex64::new(0.0, 0.0), Complex64::new(0.3, 0.0), Complex64::new(-0.2, 0.5)] {
        let exact: Complex64 = h.iter().map(|(k, c)| c * z.powi(k as i32)).sum();
        for n in [10, 100, 1000] {
            let v = herglotz_factor(&w, z, n)?;
            println!("z = {z:.2}, n = {n:>4}: {:.10}  error {:.3e}", v.value, (v.value - exact).norm());
        }
    }
    Ok(())
}
