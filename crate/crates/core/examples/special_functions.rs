//! The special-function kernels under the hood: Kummer ₁F₁, the analytic
//! Laplace integral of a hypergeometric product, and energy-normalized
//! Coulomb continuum waves.
//!
//! ```bash
//! cargo run --release -p corotate --example special_functions
//! ```

use corotate::quadrature::integrate_adaptive;
use corotate::specfun::appell::{laplace_product_integral, LaplaceProductArgs};
use corotate::specfun::coulomb::coulomb_radial_wave;
use corotate::specfun::kummer::kummer_1f1;

fn main() -> corotate::Result<()> {
    // Kummer function basics
    println!("₁F₁(0; 2; 5)      = {}", kummer_1f1(0.0, 2.0, 5.0)?);
    println!("₁F₁(3; 3; 1)      = {}  (= e)", kummer_1f1(3.0, 3.0, 1.0)?);
    println!(
        "₁F₁(-1; 2; 1)     = {}  (polynomial)",
        kummer_1f1(-1.0, 2.0, 1.0)?
    );
    println!(
        "₁F₁(-17; 2; 30)   = {:.6e}  (bound-state regime)\n",
        kummer_1f1(-17.0, 2.0, 30.0)?
    );

    // the analytic integral that powers every bound-bound matrix element
    let args = LaplaceProductArgs {
        s: 0.75, // = (1/2 + 1/1)·(2/2): a 1s–2p style overlap
        u: 4.0,
        a1: -1.0,
        c1: 2.0,
        a2: 0.0,
        c2: 4.0,
        q: 2.0,
    };
    let analytic = laplace_product_integral(args)?;
    let quad = integrate_adaptive(
        &|t: f64| {
            if t <= 0.0 {
                return 0.0;
            }
            (-args.s * t).exp()
                * t.powf(args.u - 1.0)
                * kummer_1f1(args.a1, args.c1, t).unwrap()
                * kummer_1f1(args.a2, args.c2, args.q * t).unwrap()
        },
        0.0,
        80.0,
        1e-12,
    )?;
    println!("Laplace product integral, analytic:  {analytic:.12e}");
    println!("same by adaptive quadrature:         {quad:.12e}");
    println!(
        "relative agreement:                  {:.1e}\n",
        ((analytic - quad) / quad).abs()
    );

    // a continuum wave: regular at the origin, unit-density-of-states
    // normalized amplitude √(2/(πk)) in the far zone
    let energy = 0.25f64; // hartree
    let k = (2.0 * energy).sqrt();
    let r: Vec<f64> = vec![0.5, 2.0, 10.0, 50.0, 200.0];
    let u = coulomb_radial_wave(energy, 1, &r)?;
    println!("Coulomb wave u(E = 0.25 hartree, l = 1):");
    for (ri, ui) in r.iter().zip(&u) {
        println!("  u({ri:>6.1}) = {ui:+.6e}");
    }
    println!(
        "asymptotic envelope √(2/(πk)) = {:.6e}",
        (2.0 / (std::f64::consts::PI * k)).sqrt()
    );
    Ok(())
}
