//! Coefficient files and sample CSVs, as read and written by the CLI.
//!
//! `cargo run --example coefficient_files`

use specfact::io::{emit_coeffs, emit_samples, parse_coeffs, Coeffs};
use specfact::order::ArchOrder;
use specfact::{ApFunc, BivarPoly, TrigPoly};

fn main() -> specfact::Result<()> {
    let w = TrigPoly::from_pairs([(-1, 0.5), (0, 1.25), (1, 0.5)]);
    let p = BivarPoly::from_pairs([((1, 0), 1.0), ((0, 1), 1.0)]);
    let lifted = ArchOrder::sqrt2().lift(&p)?;
    for c in [Coeffs::Trig(w), Coeffs::Bivar(p), Coeffs::Ap(lifted)] {
        let json = emit_coeffs(&c);
        println!("{}:\n{json}", c.kind());
        assert_eq!(parse_coeffs(&json)?, c);
    }

    let h = Coeffs::Ap(ApFunc::from_pairs([(0.0, 1.0), (1.0, 0.5)]));
    let mut out = Vec::new();
    emit_samples(&h, 5, std::f64::consts::TAU, &mut out).expect("write to memory");
    print!("{}", String::from_utf8_lossy(&out));
    Ok(())
}
