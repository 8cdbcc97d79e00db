//! Full verification run for the cube-root pair at height 500 in empirical
//! mode: enumerate, estimate the hypothesis constant from the cutoff,
//! dispatch witnesses, and certify
//! `||a1*x1 + a2*x2|| * max(x1,x2)^g(gamma) <= C(Gamma)` for each of them.
//!
//! ```text
//! cargo run --release --example verify_run
//! ```

use linform::{run_verification, CertifiedReal, Precision, Rat};
use num_bigint::BigInt;

fn main() -> Result<(), linform::Error> {
    let a1 = CertifiedReal::parse("alg:-2,0,0,1@[1,2]")?;
    let a2 = CertifiedReal::parse("alg:-4,0,0,1@[1,2]")?;
    let gamma = Rat::from_integer(BigInt::from(2));
    let prec = Precision::default();

    let report = run_verification(&a1, &a2, None, &gamma, 500, &prec)?;

    println!(
        "inputs: {} , {}   gamma = {}   mode = {}",
        report.alpha1, report.alpha2, report.gamma, report.gamma_mode
    );
    println!(
        "hypothesis constant from cutoff: Gamma_H in [{}, {}] (attained at nu={})",
        report.big_gamma_h.lo, report.big_gamma_h.hi, report.big_gamma_attained_at
    );
    println!(
        "exponent g = [{}, {}] (exact rational: {:?})",
        report.exponent.lo, report.exponent.hi, report.exponent_exact_rational
    );
    println!(
        "bound constant C = [{}, {}]",
        report.bound_constant.lo, report.bound_constant.hi
    );
    println!(
        "{} best approximations, {} witnesses, {} inapplicable, {} skipped (zero minor)\n",
        report.best_approx_count,
        report.witnesses.len(),
        report.failures.len(),
        report.det_skipped.len()
    );

    println!(
        "{:>4} {:>4} {:>10} {:>10} {:>14} {:>14} holds",
        "nu", "case", "x1", "x2", "lhs_hi", "C_lo"
    );
    for w in &report.witnesses {
        println!(
            "{:>4} {:>4?} {:>10} {:>10} {:>14} {:>14} {}",
            w.nu, w.case, w.x[0], w.x[1], w.lhs_hi, w.c_lo, w.holds
        );
        assert!(w.holds);
    }

    println!("\nobserved decay of ||.|| * max^tau along the witnesses:");
    for w in &report.witnesses {
        println!("  nu={:<3} {}", w.nu, w.golden_product_hi);
    }

    println!("\nfull report as JSON:\n");
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    Ok(())
}
