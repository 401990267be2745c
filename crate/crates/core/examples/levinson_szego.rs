//! Szegő factors from finite Toeplitz sections, converging to the outer
//! factor as the order grows.
//!
//! `cargo run --release --example levinson_szego`

use specfact::levinson::szego_factor;
use specfact::roots::{fejer_riesz, FejerRieszConfig};
use specfact::TrigPoly;

fn main() -> specfact::Result<()> {
    // roots of the outer factor at -2 and 1.25i
    let w = TrigPoly::from_pairs([(0, 2.0), (1, 1.0)])
        .mul(&TrigPoly::from_pairs([(0, 1.25), (1, 1.0)]))
        .squared_modulus();
    let exact = fejer_riesz(&w, &FejerRieszConfig::default())?;
    println!("{:>4} {:>14} {:>12} {:>12} {:>10}", "n", "eps_n", "eps_n - M", "coeff err", "flatness");
    for n in [1, 2, 4, 8, 16, 32, 64, 128] {
        let f = szego_factor(&w, n, 4096)?;
        println!(
            "{n:>4} {:>14.10} {:>12.3e} {:>12.3e} {:>10.6}",
            f.section.eps,
            f.gap,
            f.section.h.max_coeff_diff(&exact.h),
            f.section.flatness
        );
    }
    Ok(())
}
