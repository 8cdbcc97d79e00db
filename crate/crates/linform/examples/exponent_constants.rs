//! The verification constants: the exponent `g(gamma)` (exact in the
//! golden-ratio field, strictly decreasing from 2 toward tau) and the bound
//! constant `C(Gamma) = 2^18 * Gamma^(-1/(tau^2 gamma - 2))`.
//!
//! ```text
//! cargo run --release --example exponent_constants
//! ```

use linform::{bound_constant, improved_exponent, GoldenExact, Rat};
use num_bigint::BigInt;

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

fn main() -> Result<(), linform::Error> {
    println!("g(gamma) = tau + (2 tau - 2)/(tau^2 gamma - 2), exact a + b*tau:\n");
    println!("{:>8}  {:>34}  enclosure", "gamma", "exact");
    for gamma in [
        rat(2, 1),
        rat(5, 2),
        rat(3, 1),
        rat(5, 1),
        rat(10, 1),
        rat(100, 1),
    ] {
        let (exact, iv) = improved_exponent(&gamma, 96)?;
        println!(
            "{:>8}  {:>14} + {:>14}*tau  [{}, {}]",
            format!("{}/{}", gamma.numer(), gamma.denom()),
            exact.a.to_string(),
            exact.b.to_string(),
            iv.decimal_lo(12),
            iv.decimal_hi(12)
        );
    }

    // gamma = 2 reduces to exactly 2 in the field.
    let (g2, _) = improved_exponent(&rat(2, 1), 64)?;
    assert!(g2.is_rational() && g2.a == rat(2, 1));
    println!("\ng(2) reduces symbolically to 2 (golden part cancels).");

    // The limit toward tau: g(10^6) - tau is positive but below 1e-5,
    // decided exactly.
    let (g_large, _) = improved_exponent(&rat(1_000_000, 1), 64)?;
    let diff = g_large.sub(&GoldenExact::tau());
    assert_eq!(diff.sign(), std::cmp::Ordering::Greater);
    assert_eq!(diff.cmp_rat(&rat(1, 100_000)), std::cmp::Ordering::Less);
    println!("g(10^6) lies within 1e-5 above tau (exact field comparison).");

    println!("\nC(Gamma) at gamma = 2 (always >= 2^18 = 262144):\n");
    println!("{:>8}  enclosure", "Gamma");
    for g in [rat(9, 10), rat(1, 2), rat(1, 10), rat(1, 100)] {
        let c = bound_constant(&g, &rat(2, 1), 96)?;
        println!(
            "{:>8}  [{}, {}]",
            format!("{}/{}", g.numer(), g.denom()),
            c.decimal_lo(6),
            c.decimal_hi(6)
        );
    }
    Ok(())
}
