//! End-to-end verification pipeline.
//!
//! For a pair satisfying the badly-approximable hypothesis
//! `||a1*m1 + a2*m2|| >= Gamma / max(|m1|,|m2|)^gamma` the witnesses built
//! by [`crate::witness::construct_witness`] obey
//! `||a1*x1 + a2*x2|| * max(x1,x2)^g(gamma) <= C(Gamma)` with
//!
//! ```text
//! g(gamma) = tau + (2 tau - 2) / (tau^2 gamma - 2)
//! C(Gamma) = 2^18 * Gamma^(-1 / (tau^2 gamma - 2))
//! ```
//!
//! Both constants are computed exactly in the golden-ratio field first
//! (`tau - tau^2 = -1` collapses the printed exponent), then enclosed. The
//! pipeline either takes a user-supplied `Gamma` (verifying the hypothesis
//! up to the height cutoff and aborting on a certified violation) or runs in
//! empirical mode with the certified cutoff minimum `Gamma_H`; the report
//! records which mode produced it.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use crate::best_approx::{
    decimal_digits_for_width, det_condition, enumerate_best_approximations, BestApproxSequence,
};
use crate::error::Error;
use crate::golden::{pow_golden_int, pow_rat_exponent, GoldenExact};
use crate::interval::{pow2, Rat, RationalInterval, Rounding};
use crate::real::{
    certified_compare, certified_compare_values, CertifiedReal, Comparison, Precision,
};
use crate::witness::{construct_witness, witness_record, NuContext, WitnessPoint};

/// Verification parameters with exact and enclosed constants.
#[derive(Clone, Debug)]
pub struct SpectrumParams {
    pub big_gamma: Rat,
    pub gamma: Rat,
    /// `g(gamma)` as an exact golden-field element.
    pub exponent_exact: GoldenExact,
    pub g_enclosure: RationalInterval,
    pub c_enclosure: RationalInterval,
}

/// Exact `g(gamma)` with a certified enclosure of width about `2^-bits`.
pub fn improved_exponent(gamma: &Rat, bits: u32) -> Result<(GoldenExact, RationalInterval), Error> {
    if gamma < &Rat::from_integer(BigInt::from(2)) {
        return Err(Error::InvalidParameter("gamma must be >= 2".into()));
    }
    let tau = GoldenExact::tau();
    // tau^2 * gamma - 2 = (gamma - 2) + gamma * tau
    let denom = GoldenExact::new(gamma - Rat::from_integer(BigInt::from(2)), gamma.clone());
    let numer = GoldenExact::new(
        Rat::from_integer(BigInt::from(-2)),
        Rat::from_integer(BigInt::from(2)),
    );
    let g = tau.add(&numer.div(&denom)?);
    let enclosure = g.enclosure(bits);
    Ok((g, enclosure))
}

/// Certified enclosure of `C(Gamma) = 2^18 * Gamma^(-1/(tau^2 gamma - 2))`.
pub fn bound_constant(big_gamma: &Rat, gamma: &Rat, bits: u32) -> Result<RationalInterval, Error> {
    if !big_gamma.is_positive() || big_gamma >= &Rat::one() {
        return Err(Error::InvalidParameter(
            "Gamma must lie strictly between 0 and 1".into(),
        ));
    }
    if gamma < &Rat::from_integer(BigInt::from(2)) {
        return Err(Error::InvalidParameter("gamma must be >= 2".into()));
    }
    let denom = GoldenExact::new(gamma - Rat::from_integer(BigInt::from(2)), gamma.clone());
    let exponent = GoldenExact::one().neg().div(&denom)?;
    let base = RationalInterval::point(big_gamma.clone());
    let power = crate::golden::pow_golden(&base, &exponent, bits)?;
    Ok(power.scale(&Rat::from_integer(BigInt::one() << 18)))
}

/// Builds the parameter bundle and checks its structural invariants:
/// `g` lies in `(tau, 2]` and `C >= 2^18`.
pub fn spectrum_params(big_gamma: &Rat, gamma: &Rat, bits: u32) -> Result<SpectrumParams, Error> {
    let (exact, g_enclosure) = improved_exponent(gamma, bits)?;
    let two = GoldenExact::from_int(2);
    if exact.cmp_golden(&two) == std::cmp::Ordering::Greater
        || exact.cmp_golden(&GoldenExact::tau()) != std::cmp::Ordering::Greater
    {
        return Err(Error::InvalidParameter(
            "exponent outside (tau, 2], gamma out of range".into(),
        ));
    }
    let c_enclosure = bound_constant(big_gamma, gamma, bits)?;
    if c_enclosure.hi() < &Rat::from_integer(BigInt::one() << 18) {
        return Err(Error::InvalidParameter(
            "bound constant certified below 2^18, parameters out of range".into(),
        ));
    }
    Ok(SpectrumParams {
        big_gamma: big_gamma.clone(),
        gamma: gamma.clone(),
        exponent_exact: exact,
        g_enclosure,
        c_enclosure,
    })
}

/// Certified cutoff estimate of the badly-approximable constant and the
/// list of indices violating a supplied `Gamma`.
#[derive(Clone, Debug)]
pub struct GammaEstimate {
    /// Enclosure of `Gamma_H = min over heights <= H of ||.|| * max^gamma`.
    pub enclosure: RationalInterval,
    /// 1-based index of the best approximation attaining the minimum.
    pub attained_at: usize,
    /// Indices whose product is certified below the supplied `Gamma`.
    pub violations: Vec<usize>,
}

/// Enclosure source for `zeta_nu * M_nu^gamma`.
fn product_closure<'a>(
    seq: &'a BestApproxSequence,
    nu: usize,
    gamma: &'a Rat,
) -> impl FnMut(u32) -> Result<RationalInterval, Error> + 'a {
    move |bits| {
        let z = seq.zeta_at(nu, bits)?;
        let m = Rat::from_integer(seq.item(nu).expect("valid index").height_big());
        let mg = if gamma.is_integer() {
            let e = gamma
                .to_integer()
                .to_i32()
                .ok_or_else(|| Error::InvalidParameter("gamma exponent too large".into()))?;
            RationalInterval::point(m.pow(e))
        } else {
            RationalInterval::new(
                pow_rat_exponent(&m, gamma, Rounding::Down, bits),
                pow_rat_exponent(&m, gamma, Rounding::Up, bits),
            )?
        };
        Ok(z.mul(&mg))
    }
}

/// Computes `Gamma_H` over an enumerated sequence. The minimum over all
/// nonzero vectors of height at most `H` is attained at a best
/// approximation: any other vector has a larger distance than the record at
/// its height and a height at least the record's, so both factors dominate.
pub fn badly_approx_check_seq(
    seq: &BestApproxSequence,
    gamma: &Rat,
    supplied: Option<&Rat>,
    prec: &Precision,
) -> Result<GammaEstimate, Error> {
    if seq.is_empty() {
        return Err(Error::InvalidParameter("empty sequence".into()));
    }
    let mut best_nu = 1usize;
    for nu in 2..=seq.len() {
        let cmp = certified_compare_values(
            product_closure(seq, nu, gamma),
            product_closure(seq, best_nu, gamma),
            prec,
            &format!("badly-approximable products at nu={nu} vs nu={best_nu}"),
        )?;
        if cmp == Comparison::Less {
            best_nu = nu;
        }
    }
    let mut enclosure = None;
    let mut closure = product_closure(seq, best_nu, gamma);
    for bits in prec.schedule() {
        let iv = closure(bits)?;
        if iv.strictly_positive() && iv.width() <= iv.lo() * pow2(-32) {
            enclosure = Some(iv);
            break;
        }
    }
    let enclosure = enclosure
        .ok_or_else(|| Error::precision(prec.cap, "refining the badly-approximable minimum"))?;

    let mut violations = Vec::new();
    if let Some(bound) = supplied {
        for nu in 1..=seq.len() {
            let cmp = certified_compare(
                product_closure(seq, nu, gamma),
                bound,
                prec,
                &format!("hypothesis product at nu={nu} vs Gamma"),
            )?;
            if cmp == Comparison::Less {
                violations.push(nu);
            }
        }
    }
    Ok(GammaEstimate {
        enclosure,
        attained_at: best_nu,
        violations,
    })
}

/// Convenience wrapper that enumerates first.
pub fn badly_approx_check(
    a1: &CertifiedReal,
    a2: &CertifiedReal,
    gamma: &Rat,
    height_bound: u64,
    supplied: Option<&Rat>,
    prec: &Precision,
) -> Result<GammaEstimate, Error> {
    let seq = enumerate_best_approximations(a1, a2, height_bound, prec)?;
    badly_approx_check_seq(&seq, gamma, supplied, prec)
}

#[derive(Serialize, Clone, Debug)]
pub struct Enclosure {
    pub lo: String,
    pub hi: String,
}

fn enclosure_strings(iv: &RationalInterval) -> Enclosure {
    let digits = decimal_digits_for_width(&iv.width()).min(40);
    Enclosure {
        lo: iv.decimal_lo(digits),
        hi: iv.decimal_hi(digits),
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct VerifiedWitness {
    pub nu: usize,
    pub case: crate::witness::WitnessCase,
    pub source: crate::witness::SearchKind,
    pub x: [u64; 2],
    pub value_hi: String,
    pub bound_rhs: String,
    pub holds: bool,
    /// Upper endpoint of `||.|| * max^g(gamma)`.
    pub lhs_hi: String,
    /// Lower endpoint of `C(Gamma)`.
    pub c_lo: String,
    /// Upper endpoint of `||.|| * max^tau`, the observed decay product.
    pub golden_product_hi: String,
}

#[derive(Serialize, Clone, Debug)]
pub struct FailureRecord {
    pub nu: usize,
    pub reason: String,
}

/// Serializable record of a full verification run. Field order is fixed;
/// identical inputs produce byte-identical documents.
#[derive(Serialize, Clone, Debug)]
pub struct RunReport {
    pub schema_version: u32,
    pub alpha1: String,
    pub alpha2: String,
    pub gamma: String,
    /// `"supplied"` when the hypothesis constant was given, `"empirical"`
    /// when the cutoff minimum stands in for it (the hypothesis is then
    /// verified only up to the height bound).
    pub gamma_mode: String,
    pub big_gamma: String,
    pub big_gamma_h: Enclosure,
    pub big_gamma_attained_at: usize,
    pub height_bound: u64,
    pub precision_cap: u32,
    pub best_approx_count: usize,
    pub exponent: Enclosure,
    /// Exact rational value of `g(gamma)` when the golden part cancels
    /// (for example `gamma = 2` gives exactly `2`).
    pub exponent_exact_rational: Option<String>,
    pub bound_constant: Enclosure,
    pub witnesses: Vec<VerifiedWitness>,
    pub failures: Vec<FailureRecord>,
    pub det_skipped: Vec<usize>,
    pub growth_check_failures: Vec<usize>,
}

/// Runs the full pipeline: enumerate, estimate or verify the hypothesis
/// constant, dispatch a witness at every applicable index, and certify the
/// final exponent bound for each witness.
pub fn run_verification(
    a1: &CertifiedReal,
    a2: &CertifiedReal,
    supplied_gamma: Option<&Rat>,
    gamma: &Rat,
    height_bound: u64,
    prec: &Precision,
) -> Result<RunReport, Error> {
    if gamma < &Rat::from_integer(BigInt::from(2)) {
        return Err(Error::InvalidParameter("gamma must be >= 2".into()));
    }
    if let Some(g) = supplied_gamma {
        if !g.is_positive() || g >= &Rat::one() {
            return Err(Error::InvalidParameter(
                "Gamma must lie strictly between 0 and 1".into(),
            ));
        }
    }
    let seq = enumerate_best_approximations(a1, a2, height_bound, prec)?;
    let estimate = badly_approx_check_seq(&seq, gamma, supplied_gamma, prec)?;
    if let Some(v) = estimate.violations.first() {
        return Err(Error::HypothesisViolated(format!(
            "supplied Gamma fails at nu={v} (certified)"
        )));
    }
    let big_gamma_eff = match supplied_gamma {
        Some(g) => g.clone(),
        None => estimate.enclosure.lo().clone(),
    };
    let params = spectrum_params(&big_gamma_eff, gamma, 128)?;

    let mut witnesses = Vec::new();
    let mut failures = Vec::new();
    let mut det_skipped = Vec::new();
    let mut growth_failures = Vec::new();
    let mut any_det = false;

    let last_dispatch = seq.len().saturating_sub(2);
    for nu in 2..=last_dispatch {
        let ctx = NuContext::new(&seq, nu)?;
        let prev = ctx.prev().expect("nu >= 2");
        if !det_condition(prev, ctx.cur(), ctx.next()) {
            det_skipped.push(nu);
            continue;
        }
        any_det = true;

        // Growth chain: Gamma * M_nu^-gamma <= M_{nu+1}^-2, i.e.
        // Gamma * M_{nu+1}^2 <= M_nu^gamma. Exact when gamma is an integer.
        let growth_holds = growth_check(&seq, nu, &big_gamma_eff, gamma, prec)?;
        if !growth_holds {
            growth_failures.push(nu);
        }

        match construct_witness(&ctx, prec) {
            Ok(w) => {
                let verified = verify_exponent_bound(&seq, &w, &params, prec)?;
                if !verified.holds {
                    failures.push(FailureRecord {
                        nu,
                        reason: "exponent bound not certified for the witness".into(),
                    });
                }
                witnesses.push(verified);
            }
            Err(Error::Inapplicable { nu, reason }) => {
                failures.push(FailureRecord { nu, reason });
            }
            Err(e) => return Err(e),
        }
    }
    if !any_det {
        return Err(Error::NoApplicableNu);
    }

    Ok(RunReport {
        schema_version: 1,
        alpha1: a1.render(),
        alpha2: a2.render(),
        gamma: rat_string(gamma),
        gamma_mode: if supplied_gamma.is_some() {
            "supplied".into()
        } else {
            "empirical".into()
        },
        big_gamma: rat_string(&big_gamma_eff),
        big_gamma_h: enclosure_strings(&estimate.enclosure),
        big_gamma_attained_at: estimate.attained_at,
        height_bound,
        precision_cap: prec.cap,
        best_approx_count: seq.len(),
        exponent: enclosure_strings(&params.g_enclosure),
        exponent_exact_rational: if params.exponent_exact.is_rational() {
            Some(rat_string(&params.exponent_exact.a))
        } else {
            None
        },
        bound_constant: enclosure_strings(&params.c_enclosure),
        witnesses,
        failures,
        det_skipped,
        growth_check_failures: growth_failures,
    })
}

fn rat_string(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn growth_check(
    seq: &BestApproxSequence,
    nu: usize,
    big_gamma: &Rat,
    gamma: &Rat,
    prec: &Precision,
) -> Result<bool, Error> {
    let m_cur = Rat::from_integer(seq.item(nu).expect("valid").height_big());
    let m_next = Rat::from_integer(seq.item(nu + 1).expect("valid").height_big());
    let lhs = big_gamma * &m_next * &m_next;
    if gamma.is_integer() {
        let e = gamma
            .to_integer()
            .to_i32()
            .ok_or_else(|| Error::InvalidParameter("gamma exponent too large".into()))?;
        return Ok(lhs <= m_cur.pow(e));
    }
    match certified_compare(
        |bits| {
            RationalInterval::new(
                pow_rat_exponent(&m_cur, gamma, Rounding::Down, bits),
                pow_rat_exponent(&m_cur, gamma, Rounding::Up, bits),
            )
        },
        &lhs,
        prec,
        &format!("growth chain at nu={nu}"),
    ) {
        Ok(Comparison::Greater) => Ok(true),
        Ok(Comparison::Less) => Ok(false),
        Err(e) => Err(e),
    }
}

fn verify_exponent_bound(
    seq: &BestApproxSequence,
    w: &WitnessPoint,
    params: &SpectrumParams,
    prec: &Precision,
) -> Result<VerifiedWitness, Error> {
    let x1 = BigInt::from(w.x1.clone());
    let x2 = BigInt::from(w.x2.clone());
    let max = BigInt::from(w.max_coordinate());
    let g = params.exponent_exact.clone();
    let lhs_closure = |bits: u32| -> Result<RationalInterval, Error> {
        let v = crate::real::linear_form_distance_best(&x1, &x2, seq.alpha1(), seq.alpha2(), bits)?;
        let p = pow_golden_int(&max, &g, bits)?;
        Ok(v.mul(&p))
    };
    let c_closure = |bits: u32| -> Result<RationalInterval, Error> {
        bound_constant(&params.big_gamma, &params.gamma, bits)
    };
    let holds = match certified_compare_values(
        lhs_closure,
        c_closure,
        prec,
        &format!("exponent bound at nu={}", w.nu),
    )? {
        Comparison::Less => true,
        Comparison::Greater => false,
    };

    let lhs_display = lhs_closure(96)?;
    let golden_product = {
        let v = crate::real::linear_form_distance_best(&x1, &x2, seq.alpha1(), seq.alpha2(), 96)?;
        let p = pow_golden_int(&max, &GoldenExact::tau(), 96)?;
        v.mul(&p)
    };
    let record = witness_record(w, w.nu)?;
    Ok(VerifiedWitness {
        nu: w.nu,
        case: w.certificate.case,
        source: w.source,
        x: record.x,
        value_hi: record.value_hi,
        bound_rhs: record.bound_rhs,
        holds: holds && w.certificate.holds,
        lhs_hi: lhs_display.decimal_hi(24),
        c_lo: params.c_enclosure.decimal_lo(24),
        golden_product_hi: golden_product.decimal_hi(24),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(BigInt::from(n), BigInt::from(d))
    }

    fn cbrt2() -> CertifiedReal {
        CertifiedReal::parse("alg:-2,0,0,1@[1,2]").unwrap()
    }

    fn cbrt4() -> CertifiedReal {
        CertifiedReal::parse("alg:-4,0,0,1@[1,2]").unwrap()
    }

    #[test]
    fn exponent_at_two_is_exactly_two() {
        let (exact, iv) = improved_exponent(&rat(2, 1), 128).unwrap();
        assert!(exact.is_rational());
        assert_eq!(exact.a, rat(2, 1));
        assert!(iv.is_point());
        assert!(iv.contains(&rat(2, 1)));
    }

    #[test]
    fn exponent_decreases_toward_tau() {
        // strictly decreasing on a grid, exact comparisons
        let grid = [
            rat(2, 1),
            rat(5, 2),
            rat(3, 1),
            rat(5, 1),
            rat(10, 1),
            rat(100, 1),
        ];
        let mut prev: Option<GoldenExact> = None;
        for gamma in &grid {
            let (exact, iv) = improved_exponent(gamma, 96).unwrap();
            if let Some(p) = prev {
                assert_eq!(p.cmp_golden(&exact), std::cmp::Ordering::Greater);
                assert_eq!(p.sub(&exact).sign(), std::cmp::Ordering::Greater);
            }
            // tau < g <= 2
            assert_eq!(
                exact.cmp_golden(&GoldenExact::tau()),
                std::cmp::Ordering::Greater
            );
            assert!(iv.hi() <= &rat(2, 1));
            prev = Some(exact);
        }
        // g(10^6) within 1e-5 of tau, exactly decided in the field
        let (g_large, _) = improved_exponent(&rat(1_000_000, 1), 64).unwrap();
        let diff = g_large.sub(&GoldenExact::tau());
        assert_eq!(diff.sign(), std::cmp::Ordering::Greater);
        assert_eq!(diff.cmp_rat(&rat(1, 100_000)), std::cmp::Ordering::Less);
    }

    #[test]
    fn exponent_at_three_matches_golden_oracle() {
        // g(3) = tau + (2 tau - 2)/(3 tau + 1); evaluate independently from
        // a 100-digit integer sqrt of 5.
        let (exact, iv) = improved_exponent(&rat(3, 1), 200).unwrap();
        let bits: usize = 340;
        let scaled: BigInt = BigInt::from(5) << (2usize * bits);
        let root = scaled.sqrt();
        let denom = BigInt::one() << bits;
        let tau_lo = (Rat::new(root.clone(), denom.clone()) + Rat::one()) / rat(2, 1);
        let tau_hi = (Rat::new(root + 1, denom) + Rat::one()) / rat(2, 1);
        for t in [&tau_lo, &tau_hi] {
            let val = t + (t * rat(2, 1) - rat(2, 1)) / (t * rat(3, 1) + Rat::one());
            assert!(iv.contains(&val), "oracle value outside enclosure");
        }
        // sanity: ~1.82918
        let mid = iv.midpoint();
        assert!(mid > rat(18_290, 10_000) && mid < rat(18_294, 10_000));
        assert!(!exact.is_rational());
    }

    #[test]
    fn bound_constant_examples() {
        // Gamma -> 1: C -> 2^18.
        let c = bound_constant(&rat(999_999_999, 1_000_000_000), &rat(2, 1), 96).unwrap();
        let base = rat(262_144, 1);
        assert!(c.lo() >= &base);
        assert!(c.hi() < &(base.clone() + rat(1, 10)));

        // Gamma = 1/2, gamma = 2: C = 2^18 * 2^(1/(2 tau)); the exponent is
        // (tau - 1)/2, so C^2 / 2^37 = 2^tau / 2 which brackets against the
        // golden power of two.
        let c = bound_constant(&rat(1, 2), &rat(2, 1), 128).unwrap();
        let two_tau = pow_golden_int(&BigInt::from(2), &GoldenExact::tau(), 160).unwrap();
        let c_sq = c
            .mul(&c)
            .scale(&Rat::new(BigInt::one(), BigInt::one() << 37));
        let quartered = two_tau.scale(&rat(1, 4));
        assert!(
            c_sq.intersect(&quartered).is_some(),
            "two routes disagree: {c_sq:?} vs {quartered:?}"
        );
        // ~324760.9
        let mid = c.midpoint();
        assert!(mid > rat(324_700, 1) && mid < rat(324_800, 1), "mid={mid}");

        // C >= 2^18 for the acceptance Gamma grid.
        for g in [rat(9, 10), rat(1, 2), rat(1, 10), rat(1, 100)] {
            let c = bound_constant(&g, &rat(2, 1), 96).unwrap();
            assert!(c.lo() > &base);
        }
    }

    #[test]
    fn bound_constant_rejects_bad_parameters() {
        assert!(bound_constant(&rat(3, 2), &rat(2, 1), 64).is_err());
        assert!(bound_constant(&rat(1, 2), &rat(3, 2), 64).is_err());
        assert!(improved_exponent(&rat(1, 1), 64).is_err());
    }

    #[test]
    fn gamma_estimate_monotone_in_height() {
        let prec = Precision::default();
        let e_small = badly_approx_check(&cbrt2(), &cbrt4(), &rat(2, 1), 50, None, &prec).unwrap();
        let e_large = badly_approx_check(&cbrt2(), &cbrt4(), &rat(2, 1), 400, None, &prec).unwrap();
        // min over a larger height range cannot grow
        assert!(e_large.enclosure.lo() <= e_small.enclosure.hi());
        assert!(e_large.enclosure.strictly_positive());
    }

    #[test]
    fn supplied_gamma_violations_detected() {
        let prec = Precision::default();
        // An absurdly large Gamma must be violated somewhere.
        let est = badly_approx_check(
            &cbrt2(),
            &cbrt4(),
            &rat(2, 1),
            100,
            Some(&rat(99, 100)),
            &prec,
        )
        .unwrap();
        assert!(!est.violations.is_empty());
        // A tiny Gamma passes the cutoff check.
        let est = badly_approx_check(
            &cbrt2(),
            &cbrt4(),
            &rat(2, 1),
            100,
            Some(&rat(1, 1_000_000)),
            &prec,
        )
        .unwrap();
        assert!(est.violations.is_empty());
    }

    #[test]
    fn verification_run_produces_holding_witnesses() {
        let prec = Precision::default();
        let report = run_verification(&cbrt2(), &cbrt4(), None, &rat(2, 1), 400, &prec).unwrap();
        assert_eq!(report.schema_version, 1);
        assert_eq!(report.gamma_mode, "empirical");
        assert!(report.best_approx_count >= 6);
        assert!(!report.witnesses.is_empty());
        for w in &report.witnesses {
            assert!(w.holds, "witness at nu={} fails", w.nu);
            assert!(w.x[0] > 0 && w.x[1] > 0);
        }
        assert!(report.growth_check_failures.is_empty());
        assert_eq!(report.exponent_exact_rational.as_deref(), Some("2"));
        // deterministic serialization
        let a = serde_json::to_string(&report).unwrap();
        let report2 = run_verification(&cbrt2(), &cbrt4(), None, &rat(2, 1), 400, &prec).unwrap();
        let b = serde_json::to_string(&report2).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn verification_aborts_on_certified_violation() {
        let prec = Precision::default();
        let r = run_verification(
            &cbrt2(),
            &cbrt4(),
            Some(&rat(99, 100)),
            &rat(2, 1),
            100,
            &prec,
        );
        assert!(matches!(r, Err(Error::HypothesisViolated(_))));
    }
}
