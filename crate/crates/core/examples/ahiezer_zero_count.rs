//! Entire functions of exponential type from one-sided almost periodic
//! factors, and zero counting in the upper half-plane.
//!
//! `cargo run --release --example ahiezer_zero_count`

use std::f64::consts::PI;

use specfact::ahiezer::{ahiezer_from_factor, upper_halfplane_zero_count, verify_outer, ContourBox};
use specfact::ApFunc;

fn main() -> specfact::Result<()> {
    let h = ApFunc::from_pairs([(0.0, 1.0), (1.0, 2.0)]);
    let pair = ahiezer_from_factor(&h)?;
    println!("h = 1 + 2e^iz, type τ = {}", pair.tau);
    println!("S = {:?}", pair.s.iter().map(|(w, c)| (w, c.re)).collect::<Vec<_>>());
    println!("F = {:?}", pair.f.iter().map(|(w, c)| (w, c.re)).collect::<Vec<_>>());
    println!("identity residual {:.3e}", pair.identity_residual);

    // zeros at π(2k+1) + i ln 2
    for (x0, x1) in [(-PI, PI), (-3.0, 3.0), (-4.0, 4.0), (-10.0, 10.0)] {
        let n = upper_halfplane_zero_count(&h, &ContourBox::new(x0, x1, 0.01, 3.0), 256)?;
        println!("zeros in [{x0:.3}, {x1:.3}] x [0.01, 3]: {n}");
    }

    for g in [h.clone(), ApFunc::from_pairs([(0.0, 1.0), (1.0, 0.5), (2f64.sqrt(), 0.25)])] {
        let v = verify_outer(&g, 2.0 * PI, 1e-6, 64)?;
        let cert = v.certificate.as_ref();
        println!(
            "outer {}: |mean| {:.3}, zeros below y = {:.3}: {:?}",
            v.outer,
            v.mean_abs,
            cert.map_or(f64::NAN, |c| c.y_max),
            cert.map(|c| c.total)
        );
    }
    Ok(())
}
