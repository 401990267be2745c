//! Mahler measure by Jensen's formula and by quadrature, and the outer test.
//!
//! `cargo run --example mahler`

use specfact::fixtures::{poly_from_roots, rng, random_outer};
use specfact::roots::{mahler_jensen, mahler_quadrature, outer_check};
use specfact::TrigPoly;
use num_complex::Complex64;

fn main() -> specfact::Result<()> {
    for (label, h) in [
        ("1 + 2z", TrigPoly::from_pairs([(0, 1.0), (1, 2.0)])),
        ("2 + z", TrigPoly::from_pairs([(0, 2.0), (1, 1.0)])),
        ("1 + z", TrigPoly::from_pairs([(0, 1.0), (1, 1.0)])),
        (
            "(z - 0.5i)(z - 3)",
            poly_from_roots(&[Complex64::new(0.0, 0.5), Complex64::new(3.0, 0.0)]),
        ),
    ] {
        let j = mahler_jensen(&h)?;
        let q = mahler_quadrature(&h, 1 << 14)?;
        let o = outer_check(&h, 1e-9)?;
        println!(
            "{label:>20}: jensen {j:.15}  quadrature {:.15} (clipped {})  |h_0| {:.6}  outer {}",
            q.value, q.clipped, o.mean_abs, o.by_roots
        );
    }

    // an outer polynomial has M(h) = |h_0|
    let h = random_outer(&mut rng(7), 12, 1.1, 3.0);
    let o = outer_check(&h, 1e-9)?;
    println!("random outer, degree 12: M = {:.15}, |h_0| = {:.15}", o.mahler, o.mean_abs);
    Ok(())
}
