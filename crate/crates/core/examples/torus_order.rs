//! Outer factors on the torus under an archimedean order, and the lift to
//! an almost periodic function on the line.
//!
//! `cargo run --release --example torus_order`

use specfact::cepstral::{cepstral_factor_ordered, CepstralConfig};
use specfact::order::{analytic_transform, hilbert_transform, ArchOrder};
use specfact::{BivarPoly, Z2};

fn main() -> specfact::Result<()> {
    let ord = ArchOrder::sqrt2();
    for k in [Z2(1, 0), Z2(0, 1), Z2(3, -2), Z2(-3, 2), Z2(7, -5)] {
        println!("θ̂{k:?} = {:+.6}, sign {}", ord.theta_hat(k.0, k.1), ord.sign(k)?);
    }

    let p = BivarPoly::from_pairs([((1, 0), 1.0), ((0, -1), 1.0)]);
    let p = p.add(&p.conj_reflect());
    let h = hilbert_transform(&ord, &p)?;
    let a = analytic_transform(&ord, &p)?;
    println!("𝓗(p) = {:?}", h.iter().collect::<Vec<_>>());
    println!("𝒜(p) = {:?}", a.iter().collect::<Vec<_>>());

    let g = BivarPoly::from_pairs([((0, 0), 1.0), ((1, 0), 0.5), ((0, 1), 1.0 / 3.0)]);
    let w = g.squared_modulus();
    let t = cepstral_factor_ordered(&w, &ord, &CepstralConfig::new(256))?;
    println!("factor of |g|^2, g = 1 + e^ix/2 + e^iy/3:");
    for (k, c) in t.h.iter() {
        println!("  {k:?}: {:+.12}", c.re);
    }
    let cont = t.containment.expect("ordered factor measures containment");
    println!("  spectrum in [{:.4}, {:.4}], τ = {:.4}", cont.theta_min, cont.theta_max, cont.tau);

    let f = ord.lift(&t.h)?;
    println!("lifted to the line: {:?}", f.iter().map(|(w, c)| (w, c.re)).collect::<Vec<_>>());
    for x in [0.0, 1.0, 2.5] {
        println!("  f({x}) = {:.12}, h(θ({x})) = {:.12}", f.eval(x), ord.restrict(&t.h, x));
    }
    Ok(())
}
