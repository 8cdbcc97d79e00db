//! Acceptance suite: one test per criterion, each printing a pass line with
//! its measurements. Run with `cargo test --release --test acceptance`.
//!
//! Stated runtime budgets are asserted only in optimized builds; the
//! correctness assertions always run.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::time::{Duration, Instant};

use linform::interval::pow2;
use linform::real::{certified_compare, certified_compare_values, linear_form_distance};
use linform::{
    bound_constant, circle_search, construct_witness, d_nu, det_condition,
    enumerate_best_approximations, improved_exponent, minkowski_check, reverify, slab_search,
    BestApproxSequence, CertifiedReal, Comparison, Error, GoldenExact, NuContext, Precision, Rat,
    RationalInterval, WitnessCase,
};

fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn sqrt_pair() -> (CertifiedReal, CertifiedReal) {
    (
        CertifiedReal::parse("alg:-2,0,1@[1,2]").unwrap(),
        CertifiedReal::parse("alg:-3,0,1@[1,2]").unwrap(),
    )
}

fn cbrt_pair() -> (CertifiedReal, CertifiedReal) {
    (
        CertifiedReal::parse("alg:-2,0,0,1@[1,2]").unwrap(),
        CertifiedReal::parse("alg:-4,0,0,1@[1,2]").unwrap(),
    )
}

fn assert_budget(name: &str, elapsed: Duration, budget: Duration) {
    if !cfg!(debug_assertions) {
        assert!(
            elapsed <= budget,
            "{name}: {elapsed:?} exceeded the {budget:?} budget"
        );
    }
}

// ---------------------------------------------------------------------------
// 1. Oracle equivalence of the enumeration at height 200
// ---------------------------------------------------------------------------

/// Literal brute-force record scan: for each height shell, evaluate every
/// canonical vector and keep strict running minima. The arithmetic is exact
/// fixed-point over 192-bit scaled integers, fully independent of the
/// enumerator's wrap-around filter (different scale, no wrapping, no
/// pruning, every candidate evaluated in full).
fn oracle_sequence(a1: &CertifiedReal, a2: &CertifiedReal, height: i64) -> Vec<(i64, i64, u64)> {
    const S: i64 = 192;
    let scale: BigInt = BigInt::one() << S as usize;
    let half_scale: BigInt = &scale / 2;
    let bound = |iv: &RationalInterval| -> (BigInt, BigInt) {
        (
            (iv.lo() * pow2(S)).floor().to_integer(),
            (iv.hi() * pow2(S)).ceil().to_integer(),
        )
    };
    let (a1l, a1h) = bound(&a1.enclosure(S as u32 + 16).unwrap());
    let (a2l, a2h) = bound(&a2.enclosure(S as u32 + 16).unwrap());
    let term = |n: i64, lo: &BigInt, hi: &BigInt| -> (BigInt, BigInt) {
        let x = lo * n;
        let y = hi * n;
        if x <= y {
            (x, y)
        } else {
            (y, x)
        }
    };
    // Exact interval of the scaled distance to the nearest multiple of 2^S.
    let dist = |n1: i64, n2: i64| -> (BigInt, BigInt) {
        let (l1, h1) = term(n1, &a1l, &a1h);
        let (l2, h2) = term(n2, &a2l, &a2h);
        let v_lo = l1 + l2;
        let v_hi = h1 + h2;
        let k = (&v_lo + &v_hi + &scale).div_floor(&(&scale * 2));
        let r_lo = v_lo - &k * &scale;
        let r_hi = v_hi - &k * &scale;
        if !r_lo.is_positive() && !r_hi.is_negative() {
            let m = (-&r_lo).max(r_hi.clone());
            (BigInt::zero(), m)
        } else {
            let (a, b) = if r_hi.is_negative() {
                (-r_hi, -r_lo)
            } else {
                (r_lo, r_hi)
            };
            if b <= half_scale {
                (a, b)
            } else if a >= half_scale {
                (&scale - b, &scale - a)
            } else {
                let folded = &scale - &b;
                (a.min(folded), half_scale.clone())
            }
        }
    };
    let mut out = Vec::new();
    let mut record: Option<(BigInt, BigInt)> = None;
    for h in 1..=height {
        let mut best: Option<(i64, i64, (BigInt, BigInt))> = None;
        let feed = |n1: i64, n2: i64, best: &mut Option<(i64, i64, (BigInt, BigInt))>| {
            let d = dist(n1, n2);
            match best {
                None => *best = Some((n1, n2, d)),
                Some((_, _, b)) => {
                    if d.1 < b.0 {
                        *best = Some((n1, n2, d));
                    } else {
                        assert!(b.1 < d.0, "oracle cannot separate candidates at shell {h}");
                    }
                }
            }
        };
        for n2 in -h..=h {
            feed(h, n2, &mut best);
        }
        for n1 in 1..h {
            feed(n1, h, &mut best);
            feed(n1, -h, &mut best);
        }
        feed(0, h, &mut best);
        let (n1, n2, d) = best.unwrap();
        let beats = match &record {
            None => true,
            Some(r) => d.1 < r.0,
        };
        if beats {
            out.push((n1, n2, h as u64));
            record = Some(d);
        }
    }
    out
}

#[test]
fn criterion_1_enumeration_matches_brute_force_oracle() {
    let start = Instant::now();
    let prec = Precision::default();
    for (name, (a1, a2)) in [("sqrt pair", sqrt_pair()), ("cube-root pair", cbrt_pair())] {
        let expected = oracle_sequence(&a1, &a2, 200);
        let seq = enumerate_best_approximations(&a1, &a2, 200, &prec).unwrap();
        let got: Vec<(i64, i64, u64)> = seq
            .items()
            .iter()
            .map(|it| (it.m1.to_i64().unwrap(), it.m2.to_i64().unwrap(), it.height))
            .collect();
        assert_eq!(got, expected, "{name}: sequence differs from the oracle");
    }
    let elapsed = start.elapsed();
    assert_budget("criterion 1", elapsed, Duration::from_secs(10));
    println!("acceptance 1 (oracle equivalence, height 200, both pairs): PASS in {elapsed:?}");
}

// ---------------------------------------------------------------------------
// 2. Product bound zeta_nu * M_{nu+1}^2 <= 1 at height 5000
// ---------------------------------------------------------------------------

#[test]
fn criterion_2_minkowski_products_certified_height_5000() {
    let start = Instant::now();
    let prec = Precision::default();
    let mut total = 0;
    for (name, (a1, a2)) in [("sqrt pair", sqrt_pair()), ("cube-root pair", cbrt_pair())] {
        let seq = enumerate_best_approximations(&a1, &a2, 5000, &prec).unwrap();
        let results = minkowski_check(&seq);
        assert_eq!(results.len(), seq.len() - 1);
        let violations: Vec<_> = results.iter().filter(|(_, ok)| !ok).collect();
        assert!(
            violations.is_empty(),
            "{name}: violations at {violations:?}"
        );
        total += results.len();
    }
    let elapsed = start.elapsed();
    assert_budget("criterion 2", elapsed, Duration::from_secs(120));
    println!(
        "acceptance 2 (product bound, height 5000, both pairs, {total} pairs checked): PASS in {elapsed:?}"
    );
}

// ---------------------------------------------------------------------------
// 3. Witness suite with the exact printed constants, re-verified
// ---------------------------------------------------------------------------

/// Re-derives the case-specific certificate from primitives, independently
/// of the booleans stored in the witness.
fn rederive_certificate(
    seq: &BestApproxSequence,
    w: &linform::WitnessPoint,
    prec: &Precision,
) -> bool {
    let x1 = BigInt::from(w.x1.clone());
    let x2 = BigInt::from(w.x2.clone());
    let max = BigInt::from(w.max_coordinate());
    let value = |bits: u32| linear_form_distance(&x1, &x2, seq.alpha1(), seq.alpha2(), bits);
    match w.certificate.case {
        WitnessCase::I => {
            let m_window = seq.item(w.nu + 1).unwrap().height_big();
            if max < m_window || max > &m_window * 4 {
                return false;
            }
            let rhs = Rat::new(BigInt::from(16), &max * &max);
            matches!(
                certified_compare(value, &rhs, prec, "re-derive case I"),
                Ok(Comparison::Less)
            )
        }
        WitnessCase::II => {
            let tau = GoldenExact::tau();
            let m_cur = seq.item(w.nu).unwrap().height_big();
            let m_next = seq.item(w.nu + 1).unwrap().height_big();
            let height_ok = matches!(
                certified_compare(
                    |bits| {
                        let a = linform::golden::pow_golden_int(&m_next, &tau, bits)?;
                        let b = linform::golden::pow_golden_int(
                            &m_cur,
                            &GoldenExact::one().sub(&tau),
                            bits,
                        )?;
                        Ok(a.mul(&b).scale(&Rat::from_integer(BigInt::from(240))))
                    },
                    &Rat::from_integer(max.clone()),
                    prec,
                    "re-derive case II height",
                ),
                Ok(Comparison::Greater)
            );
            let value_ok = matches!(
                certified_compare_values(
                    value,
                    |bits| {
                        let c = linform::golden::pow_golden_int(&BigInt::from(24), &tau, bits)?;
                        let d = linform::golden::pow_golden_int(
                            &m_cur,
                            &tau.sub(&GoldenExact::from_int(2)),
                            bits,
                        )?;
                        let e = linform::golden::pow_golden_int(&max, &tau.neg(), bits)?;
                        Ok(c.mul(&d).mul(&e))
                    },
                    prec,
                    "re-derive case II value",
                ),
                Ok(Comparison::Less)
            );
            height_ok && value_ok
        }
    }
}

#[test]
fn criterion_3_witness_suite_certified_and_reverified() {
    let start = Instant::now();
    let prec = Precision::default();
    let doubled = Precision {
        start: 2 * prec.start,
        cap: 2 * prec.cap,
    };
    let mut produced = 0;
    for (name, (a1, a2)) in [("sqrt pair", sqrt_pair()), ("cube-root pair", cbrt_pair())] {
        let seq = enumerate_best_approximations(&a1, &a2, 5000, &prec).unwrap();
        for nu in 2..=seq.len().saturating_sub(2) {
            let ctx = NuContext::new(&seq, nu).unwrap();
            if !det_condition(ctx.prev().unwrap(), ctx.cur(), ctx.next()) {
                continue;
            }
            let w = construct_witness(&ctx, &prec)
                .unwrap_or_else(|e| panic!("{name}: dispatch failed at nu={nu}: {e}"));
            assert!(w.x1 > num_bigint::BigUint::zero());
            assert!(w.x2 > num_bigint::BigUint::zero());
            assert!(w.certificate.holds, "{name}: holds=false at nu={nu}");
            assert!(
                rederive_certificate(&seq, &w, &prec),
                "{name}: independent certificate re-derivation failed at nu={nu}"
            );
            assert!(
                reverify(&w, &seq, &doubled).unwrap(),
                "{name}: doubled-precision re-verification flipped at nu={nu}"
            );
            produced += 1;
        }
    }
    assert!(produced >= 15, "only {produced} witnesses produced");
    let elapsed = start.elapsed();
    println!(
        "acceptance 3 (witness suite, {produced} witnesses, exact constants, doubled-precision reverify): PASS in {elapsed:?}"
    );
}

// ---------------------------------------------------------------------------
// 4. End-to-end verification with the empirical hypothesis constant
// ---------------------------------------------------------------------------

#[test]
fn criterion_4_end_to_end_cube_roots_gamma_two() {
    let start = Instant::now();
    let prec = Precision::default();
    let (a1, a2) = cbrt_pair();

    // Exponent at gamma = 2: exact symbolic reduction to 2 and an enclosure
    // of width <= 2^-64 containing 2.
    let (exact, enclosure) = improved_exponent(&rat(2, 1), 128).unwrap();
    assert!(exact.is_rational());
    assert_eq!(exact.a, rat(2, 1));
    assert!(exact.b.is_zero());
    assert!(enclosure.contains(&rat(2, 1)));
    assert!(enclosure.width() <= pow2(-64));

    let report = linform::run_verification(&a1, &a2, None, &rat(2, 1), 1000, &prec).unwrap();
    assert_eq!(report.gamma_mode, "empirical");
    assert_eq!(report.exponent_exact_rational.as_deref(), Some("2"));
    assert!(!report.witnesses.is_empty());
    for w in &report.witnesses {
        assert!(w.holds, "witness at nu={} fails the exponent bound", w.nu);
    }
    assert!(report.growth_check_failures.is_empty());
    assert!(report.failures.is_empty());

    // Independent spot check of the final inequality for each witness:
    // value * max^2 <= C(Gamma_H), with C recomputed from the reported
    // rational Gamma.
    let big_gamma: Rat = {
        let s = &report.big_gamma;
        linform::real::parse_rational_or_decimal(s).unwrap()
    };
    let seq = enumerate_best_approximations(&a1, &a2, 1000, &prec).unwrap();
    for w in &report.witnesses {
        let x1 = BigInt::from(w.x[0]);
        let x2 = BigInt::from(w.x[1]);
        let max = Rat::from_integer(x1.clone().max(x2.clone()));
        let cmp = certified_compare_values(
            |bits| {
                let v = linear_form_distance(&x1, &x2, seq.alpha1(), seq.alpha2(), bits)?;
                Ok(v.scale(&(&max * &max)))
            },
            |bits| bound_constant(&big_gamma, &rat(2, 1), bits),
            &prec,
            "end-to-end spot check",
        )
        .unwrap();
        assert_eq!(cmp, Comparison::Less, "spot check failed at nu={}", w.nu);
    }
    let elapsed = start.elapsed();
    assert_budget("criterion 4", elapsed, Duration::from_secs(300));
    println!(
        "acceptance 4 (end-to-end, cube roots, gamma=2, Gamma_H from height 1000, {} witnesses): PASS in {elapsed:?}",
        report.witnesses.len()
    );
}

// ---------------------------------------------------------------------------
// 5. Constant families g and C
// ---------------------------------------------------------------------------

#[test]
fn criterion_5_constant_families() {
    let start = Instant::now();
    // g strictly decreasing over the grid: certified enclosure separation
    // and exact golden-field signs.
    let grid = [
        rat(2, 1),
        rat(5, 2),
        rat(3, 1),
        rat(5, 1),
        rat(10, 1),
        rat(100, 1),
    ];
    let mut prev: Option<(GoldenExact, RationalInterval)> = None;
    for gamma in &grid {
        let mut bits = 96;
        let (exact, mut iv) = improved_exponent(gamma, bits).unwrap();
        if let Some((p_exact, p_iv)) = &prev {
            assert_eq!(
                p_exact.sub(&exact).sign(),
                std::cmp::Ordering::Greater,
                "exact order violated at gamma={gamma}"
            );
            let mut sep = iv.strictly_left_of(p_iv);
            while !sep && bits < 4096 {
                bits *= 2;
                iv = improved_exponent(gamma, bits).unwrap().1;
                sep = iv.strictly_left_of(p_iv);
            }
            assert!(sep, "no certified separation at gamma={gamma}");
        }
        prev = Some((exact, iv));
    }

    // g(10^6) within 1e-5 of tau, decided exactly in the field.
    let (g_large, _) = improved_exponent(&rat(1_000_000, 1), 64).unwrap();
    let diff = g_large.sub(&GoldenExact::tau());
    assert_eq!(diff.sign(), std::cmp::Ordering::Greater);
    assert_eq!(diff.cmp_rat(&rat(1, 100_000)), std::cmp::Ordering::Less);

    // C(Gamma) >= 2^18, certified enclosures.
    let two_18 = Rat::from_integer(BigInt::one() << 18);
    for g in [rat(9, 10), rat(1, 2), rat(1, 10), rat(1, 100)] {
        let c = bound_constant(&g, &rat(2, 1), 96).unwrap();
        assert!(c.lo() > &two_18, "C({g}) lower bound {} below 2^18", c.lo());
    }
    let elapsed = start.elapsed();
    println!("acceptance 5 (constant families g and C): PASS in {elapsed:?}");
}

// ---------------------------------------------------------------------------
// 6. Randomized small contexts for the two search procedures
// ---------------------------------------------------------------------------

struct XorShift(u64);

impl XorShift {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    fn pick(&mut self, range: u64) -> u64 {
        self.next() % range
    }
}

const SQUAREFREE: [i64; 16] = [2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 23, 29];

/// Random quadratic irrational (p + sqrt(d)) / q as an algebraic descriptor:
/// root of q^2 x^2 - 2 p q x + (p^2 - d).
fn random_quadratic(rng: &mut XorShift, d: i64) -> CertifiedReal {
    let p = rng.pick(7) as i64 - 3;
    let q = rng.pick(4) as i64 + 1;
    let coeffs = vec![
        BigInt::from(p * p - d),
        BigInt::from(-2 * p * q),
        BigInt::from(q * q),
    ];
    // (p + sqrt d)/q lies in ((p + 1)/q, (p + 6)/q) for d in [2, 29]
    let sqrt_hi = 6;
    let lo = rat(p + 1, q);
    let hi = rat(p + sqrt_hi, q);
    CertifiedReal::algebraic(coeffs, lo, hi).expect("positive root isolated")
}

#[test]
fn criterion_6_randomized_contexts() {
    let start = Instant::now();
    let prec = Precision::default();
    let mut rng = XorShift(0x5eed_1234_abcd_ef01);
    let mut slab_checked = 0;
    let mut circle_checked = 0;
    let mut dispatch_checked = 0;
    let mut pair_count = 0;

    while slab_checked < 100 && pair_count < 60 {
        // Distinct radicands keep 1, a1, a2 independent.
        let i = rng.pick(SQUAREFREE.len() as u64) as usize;
        let mut j = rng.pick(SQUAREFREE.len() as u64) as usize;
        if i == j {
            j = (j + 1) % SQUAREFREE.len();
        }
        let a1 = random_quadratic(&mut rng, SQUAREFREE[i]);
        let a2 = random_quadratic(&mut rng, SQUAREFREE[j]);
        pair_count += 1;
        let seq = match enumerate_best_approximations(&a1, &a2, 80, &prec) {
            Ok(s) => s,
            Err(Error::PrecisionExhausted { .. }) => continue, // dependent draw
            Err(e) => panic!("enumeration failed: {e}"),
        };
        for nu in 1..seq.len() {
            let ctx = NuContext::new(&seq, nu).unwrap();
            // Slab search must always succeed and honor the lower height
            // bound from the strictness remark.
            let found = slab_search(&ctx, &prec)
                .unwrap_or_else(|e| panic!("slab search failed at nu={nu}: {e}"));
            let max = BigInt::from(found.max_coordinate());
            assert!(max >= ctx.next().height_big(), "remark bound violated");
            assert!(found.x1 > num_bigint::BigUint::zero());
            assert!(found.x2 > num_bigint::BigUint::zero());
            slab_checked += 1;

            // Dispatcher across all regimes: every produced witness must be
            // positive with a holding certificate.
            if ctx.prev().is_some() && ctx.next2().is_some() {
                match construct_witness(&ctx, &prec) {
                    Ok(w) => {
                        assert!(w.x1 > num_bigint::BigUint::zero());
                        assert!(w.x2 > num_bigint::BigUint::zero());
                        assert!(w.certificate.holds);
                        dispatch_checked += 1;
                    }
                    Err(Error::DetConditionFailed { .. }) | Err(Error::Inapplicable { .. }) => {}
                    Err(e) => panic!("dispatch failed at nu={nu}: {e}"),
                }
            }

            // Circle search where its preconditions certify.
            if ctx.prev().is_some() && det_condition(ctx.prev().unwrap(), ctx.cur(), ctx.next()) {
                match circle_search(&ctx, &prec) {
                    Ok(pt) => {
                        circle_checked += 1;
                        let cur = ctx.cur();
                        let next = ctx.next();
                        let d = BigInt::from(d_nu(cur, next));
                        let m = cur.height_big();
                        let x1 = BigInt::from(pt.x1.clone());
                        let x2 = BigInt::from(pt.x2.clone());
                        // exact in-circle check, squared form
                        let dx = &x1 * &m - &d * 5;
                        let dy = &x2 * &m - &d * 5;
                        assert!(
                            &dx * &dx + &dy * &dy <= &d * &d * 16u32,
                            "circle membership violated at nu={nu}"
                        );
                        // exact coefficient bounds via Cramer
                        let det = &cur.m1 * &next.m2 - &cur.m2 * &next.m1;
                        let l1_num = &x1 * &next.m2 - &x2 * &next.m1;
                        let l2_num = &cur.m1 * &x2 - &cur.m2 * &x1;
                        let l1 = Rat::new(l1_num, det.clone());
                        let l2 = Rat::new(l2_num, det);
                        assert!(l1.is_integer() && l2.is_integer());
                        let l1_bound = Rat::new(next.height_big() * 20, m);
                        assert!(l1.abs() <= l1_bound, "lambda_nu bound violated");
                        assert!(l2.abs() <= rat(20, 1), "lambda_nu+1 bound violated");
                    }
                    Err(Error::PreconditionNotCertified(_)) => {}
                    Err(e) => panic!("circle search failed at nu={nu}: {e}"),
                }
            }
        }
    }
    assert!(slab_checked >= 100, "only {slab_checked} slab contexts");
    assert!(
        circle_checked >= 10,
        "only {circle_checked} circle contexts"
    );
    assert!(dispatch_checked >= 20, "only {dispatch_checked} dispatches");
    let elapsed = start.elapsed();
    println!(
        "acceptance 6 (randomized contexts: {slab_checked} slab, {circle_checked} circle, {dispatch_checked} dispatched, {pair_count} pairs): PASS in {elapsed:?}"
    );
}

// ---------------------------------------------------------------------------
// 7. Byte-identical verification reports
// ---------------------------------------------------------------------------

#[test]
fn criterion_7_verify_runs_are_byte_identical() {
    let start = Instant::now();
    let exe = env!("CARGO_BIN_EXE_linform");
    let dir = std::env::temp_dir().join(format!("linform-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out1 = dir.join("run1.json");
    let out2 = dir.join("run2.json");
    for out in [&out1, &out2] {
        let status = std::process::Command::new(exe)
            .args([
                "verify",
                "--alpha1",
                "alg:-2,0,0,1@[1,2]",
                "--alpha2",
                "alg:-4,0,0,1@[1,2]",
                "--gamma",
                "2",
                "--height",
                "300",
                "--output",
            ])
            .arg(out)
            .status()
            .expect("spawn linform");
        assert!(status.success(), "verify run failed");
    }
    let b1 = std::fs::read(&out1).unwrap();
    let b2 = std::fs::read(&out2).unwrap();
    assert!(!b1.is_empty());
    assert_eq!(b1, b2, "reports differ between runs");
    let _ = std::fs::remove_dir_all(&dir);
    let elapsed = start.elapsed();
    println!("acceptance 7 (byte-identical verify reports): PASS in {elapsed:?}");
}
