//! Factor a nonnegative trigonometric polynomial by its roots.
//!
//! `cargo run --example fejer_riesz`

use specfact::roots::{fejer_riesz, inner_outer_split, FejerRieszConfig};
use specfact::TrigPoly;

fn main() -> specfact::Result<()> {
    // h has a zero inside the disk at z = -1/2; w only sees |h|²
    let h = TrigPoly::from_pairs([(0, 1.0), (1, 2.0)]).mul(&TrigPoly::from_pairs([(0, 1.0), (1, -0.25)]));
    let w = h.squared_modulus();
    println!("w = {:?}", w.iter().collect::<Vec<_>>());

    let f = fejer_riesz(&w, &FejerRieszConfig::default())?;
    println!("outer factor:");
    for (k, c) in f.h.iter() {
        println!("  h_{k} = {:+.12} {:+.12}i", c.re, c.im);
    }
    println!("roots of H: {:?}", f.roots);
    println!("residual max |w - |h|^2| = {:.3e}", f.residual);

    // the original h is not outer; splitting it recovers the same modulus
    let split = inner_outer_split(&h)?;
    println!("blaschke zeros of h: {:?}", split.inner.blaschke_zeros);
    let diff = split.outer.sub(&f.h).max_abs();
    println!("|outer(h) - h_fr|_max = {diff:.3e}");

    // a zero on the circle is paired, not reflected
    let edge = TrigPoly::from_pairs([(-1, 1.0), (0, 2.0), (1, 1.0)]);
    let f = fejer_riesz(&edge, &FejerRieszConfig::default())?;
    println!(
        "|1 + e^ix|^2 -> h = {:?}, boundary pairs {}",
        f.h.iter().map(|(k, c)| (k, c.re)).collect::<Vec<_>>(),
        f.boundary_pairs
    );
    Ok(())
}
