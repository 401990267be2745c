//! Cepstral factorization on the circle, with and without the
//! regularization ladder.
//!
//! `cargo run --release --example cepstral_ladder`

use specfact::cepstral::{cepstral_factor_circle, CepstralConfig, Ladder};
use specfact::roots::{fejer_riesz, FejerRieszConfig};
use specfact::TrigPoly;

fn main() -> specfact::Result<()> {
    let w = TrigPoly::from_pairs([(-1, 0.5), (0, 1.25), (1, 0.5)]);
    let t = cepstral_factor_circle(&w, &CepstralConfig::new(1024))?;
    let exact = fejer_riesz(&w, &FejerRieszConfig::default())?;
    println!("|1 + e^ix/2|^2: h = {:?}", t.h.iter().map(|(k, c)| (k, c.re)).collect::<Vec<_>>());
    println!("  against roots: {:.3e}", t.h.max_coeff_diff(&exact.h));

    // w vanishes at x = π: log w is singular and the ladder is needed
    let w = TrigPoly::from_pairs([(-1, 1.0), (0, 2.0), (1, 1.0)]);
    let cfg = CepstralConfig::new(1 << 14).with_ladder(Ladder::new(Some(1e8), Some(1 << 12)));
    let t = cepstral_factor_circle(&w, &cfg)?;
    println!("|1 + e^ix|^2 on 2^14 points, ladder to m = 1e8:");
    println!("  {:>10} {:>6} {:>12} {:>12} {:>10}", "m", "n", "mean", "l2 delta", "min |h|");
    for s in &t.ladder {
        println!(
            "  {:>10.0e} {:>6} {:>12.8} {:>12} {:>10.3e}",
            s.stage.m.unwrap_or(f64::INFINITY),
            s.stage.n.map_or("off".to_string(), |n| n.to_string()),
            s.mean,
            s.l2_delta.map_or("-".to_string(), |d| format!("{d:.3e}")),
            s.min_abs_h
        );
    }
    println!("  h_0 = {:.8}, h_1 = {:.8}, residual {:.3e}", t.h.coeff(0).re, t.h.coeff(1).re, t.residual);
    Ok(())
}
