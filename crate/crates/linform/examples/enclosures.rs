//! Certified input reals: descriptors, refinable enclosures, and strict
//! comparisons decided by interval refinement.
//!
//! ```text
//! cargo run --release --example enclosures
//! ```

use linform::real::{certified_compare, eval_linear_form, Comparison};
use linform::{CertifiedReal, Precision, Rat};
use num_bigint::BigInt;

fn main() -> Result<(), linform::Error> {
    // The three descriptor forms.
    let sqrt2 = CertifiedReal::parse("alg:-2,0,1@[1,2]")?;
    let third = CertifiedReal::parse("rat:1/3")?;
    let approx = CertifiedReal::parse("dec:1.41421356e-8")?;

    println!("descriptors:");
    for x in [&sqrt2, &third, &approx] {
        println!("  {}", x.render());
    }

    println!("\nenclosures of sqrt(2) at increasing precision:");
    for bits in [8u32, 32, 64, 128] {
        let iv = sqrt2.enclosure(bits)?;
        println!(
            "  {bits:>3} bits: [{}, {}]  width <= 2^-{bits}",
            iv.decimal_lo(24),
            iv.decimal_hi(24)
        );
    }

    // A decimal literal refines only down to its declared error bound.
    println!("\ndecimal literal at 10 bits: {:?}", approx.enclosure(10)?);
    println!(
        "decimal literal at 40 bits: {:?}",
        approx.enclosure(40).unwrap_err()
    );

    // Certified strict comparisons refine until the enclosure separates.
    let prec = Precision::default();
    let cmp = certified_compare(
        |bits| sqrt2.enclosure(bits),
        &Rat::new(BigInt::from(3), BigInt::from(2)),
        &prec,
        "sqrt(2) vs 3/2",
    )?;
    println!("\nsqrt(2) vs 3/2: {:?}", cmp);
    assert_eq!(cmp, Comparison::Less);

    // Exact equality can never be separated: the comparison exhausts its
    // precision schedule instead of guessing.
    let small = Precision {
        start: 32,
        cap: 512,
    };
    let tie = certified_compare(
        |bits| third.enclosure(bits),
        &Rat::new(BigInt::from(1), BigInt::from(3)),
        &small,
        "1/3 vs 1/3",
    );
    println!("1/3 vs 1/3: {}", tie.unwrap_err());

    // Linear form evaluation: sqrt(2) + sqrt(3) - 3 = 0.14626...
    let sqrt3 = CertifiedReal::parse("alg:-3,0,1@[1,2]")?;
    let iv = eval_linear_form(
        &BigInt::from(-3),
        &BigInt::from(1),
        &BigInt::from(1),
        &sqrt2,
        &sqrt3,
        96,
    )?;
    println!(
        "\nsqrt(2) + sqrt(3) - 3 in [{}, {}]",
        iv.decimal_lo(28),
        iv.decimal_hi(28)
    );
    Ok(())
}
