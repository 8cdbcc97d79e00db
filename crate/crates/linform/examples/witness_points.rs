//! Certified positive witness points for the cube-root pair
//! `(2^(1/3), 4^(1/3))`: the case dispatcher at every applicable index, plus
//! direct runs of the golden-regime slab search and the circle search.
//!
//! ```text
//! cargo run --release --example witness_points
//! ```

use linform::{
    circle_search, construct_witness, det_condition, enumerate_best_approximations, golden_witness,
    reverify, CertifiedReal, Error, NuContext, Precision,
};

fn main() -> Result<(), linform::Error> {
    let a1 = CertifiedReal::parse("alg:-2,0,0,1@[1,2]")?;
    let a2 = CertifiedReal::parse("alg:-4,0,0,1@[1,2]")?;
    let prec = Precision::default();
    let seq = enumerate_best_approximations(&a1, &a2, 2000, &prec)?;
    println!("sequence length {}\n", seq.len());

    println!("dispatcher over all indices with a nonzero determinant minor:");
    for nu in 2..=seq.len().saturating_sub(2) {
        let ctx = NuContext::new(&seq, nu)?;
        if !det_condition(ctx.prev().unwrap(), ctx.cur(), ctx.next()) {
            println!("  nu={nu}: skipped (determinant minor vanishes)");
            continue;
        }
        match construct_witness(&ctx, &prec) {
            Ok(w) => {
                let reverified = reverify(&w, &seq, &prec)?;
                println!(
                    "  nu={nu}: case {:?} via {:?}  x=({}, {})  ||a1*x1+a2*x2|| <= {}  rhs <= {}  reverified={reverified}",
                    w.certificate.case,
                    w.source,
                    w.x1,
                    w.x2,
                    w.value.decimal_hi(12),
                    w.certificate.rhs.decimal_hi(12),
                );
            }
            Err(Error::Inapplicable { reason, .. }) => {
                println!("  nu={nu}: inapplicable ({reason})");
            }
            Err(e) => return Err(e),
        }
    }

    // The golden-regime slab witness exists at most indices because its
    // threshold carries a 1/120 factor; run it directly at one of them.
    println!("\ndirect golden-regime slab witness:");
    for nu in 2..seq.len() {
        let ctx = NuContext::new(&seq, nu)?;
        match golden_witness(&ctx, &prec) {
            Ok(w) => {
                println!(
                    "  nu={nu}: x=({}, {})  value <= {}  bound <= {}",
                    w.x1,
                    w.x2,
                    w.value.decimal_hi(12),
                    w.certificate.rhs.decimal_hi(12)
                );
                break;
            }
            Err(Error::PreconditionNotCertified(_)) => continue,
            Err(e) => return Err(e),
        }
    }

    // The circle search applies where both gather inequalities certify.
    println!("\ndirect circle search:");
    for nu in 2..seq.len() {
        let ctx = NuContext::new(&seq, nu)?;
        if !det_condition(ctx.prev().unwrap(), ctx.cur(), ctx.next()) {
            continue;
        }
        match circle_search(&ctx, &prec) {
            Ok(pt) => {
                println!(
                    "  nu={nu}: x=({}, {})  value <= {}",
                    pt.x1,
                    pt.x2,
                    pt.value.decimal_hi(12)
                );
                break;
            }
            Err(Error::PreconditionNotCertified(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(())
}
