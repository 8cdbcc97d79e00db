//! The best-approximation sequence of `m0 + m1*sqrt(2) + m2*sqrt(3)` up to
//! height 200: enumeration, the product bound `zeta_nu * M_{nu+1}^2 <= 1`,
//! and the exact determinant data used by the witness machinery.
//!
//! ```text
//! cargo run --release --example best_approximations
//! ```

use linform::{
    d_nu, det_condition, enumerate_best_approximations, minkowski_check, CertifiedReal, Precision,
};

fn main() -> Result<(), linform::Error> {
    let a1 = CertifiedReal::parse("alg:-2,0,1@[1,2]")?;
    let a2 = CertifiedReal::parse("alg:-3,0,1@[1,2]")?;
    let prec = Precision::default();
    let seq = enumerate_best_approximations(&a1, &a2, 200, &prec)?;

    println!("{} best approximations with height <= 200:\n", seq.len());
    println!(
        "{:>3} {:>8} {:>8} {:>8} {:>6}  zeta (certified)",
        "nu", "m0", "m1", "m2", "M"
    );
    for item in seq.items() {
        println!(
            "{:>3} {:>8} {:>8} {:>8} {:>6}  [{}, {}]",
            item.nu,
            item.m0,
            item.m1,
            item.m2,
            item.height,
            item.zeta().decimal_lo(12),
            item.zeta().decimal_hi(12),
        );
    }

    println!("\nproduct bound zeta_nu * M_(nu+1)^2 <= 1:");
    for (nu, ok) in minkowski_check(&seq) {
        let next = seq.item(nu + 1).unwrap();
        let product = seq
            .item(nu)
            .unwrap()
            .zeta()
            .scale(&linform::Rat::from_integer(
                next.height_big() * next.height_big(),
            ));
        println!(
            "  nu={nu}: product <= {}  certified={ok}",
            product.decimal_hi(10)
        );
        assert!(ok);
    }

    println!("\nconsecutive-triple data:");
    for nu in 2..seq.len() {
        let a = seq.item(nu - 1).unwrap();
        let b = seq.item(nu).unwrap();
        let c = seq.item(nu + 1).unwrap();
        println!(
            "  nu={nu}: det nonzero = {}   D_nu = {}",
            det_condition(a, b, c),
            d_nu(b, c)
        );
    }

    println!("\nJSON lines export of the first rows:");
    let mut buf = Vec::new();
    seq.export_jsonl(&mut buf)?;
    for line in String::from_utf8(buf).unwrap().lines().take(3) {
        println!("  {line}");
    }
    Ok(())
}
