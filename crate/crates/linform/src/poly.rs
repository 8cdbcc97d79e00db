//! Integer polynomial helpers backing algebraic number descriptors:
//! exact evaluation, derivatives, and Sturm-chain root counting.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;

use crate::interval::Rat;

/// Evaluates `c0 + c1 x + ... + cn x^n` at a rational point, exactly.
pub(crate) fn eval(coeffs: &[BigInt], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + Rat::from_integer(c.clone());
    }
    acc
}

pub(crate) fn eval_sign(coeffs: &[BigInt], x: &Rat) -> Ordering {
    let v = eval(coeffs, x);
    if v.is_zero() {
        Ordering::Equal
    } else if v.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

/// Degree after dropping leading zero coefficients; `None` for the zero
/// polynomial.
pub(crate) fn degree(coeffs: &[BigInt]) -> Option<usize> {
    coeffs.iter().rposition(|c| !c.is_zero())
}

fn trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn to_rat_poly(coeffs: &[BigInt]) -> Vec<Rat> {
    trim(
        coeffs
            .iter()
            .map(|c| Rat::from_integer(c.clone()))
            .collect(),
    )
}

fn eval_rat_poly(p: &[Rat], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in p.iter().rev() {
        acc = acc * x + c.clone();
    }
    acc
}

/// Remainder of polynomial division over the rationals.
fn rem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = b.last().expect("nonzero divisor").clone();
    while r.len() > db {
        let dr = r.len() - 1;
        let factor = r.last().unwrap() / &lead;
        let shift = dr - db;
        for i in 0..=db {
            let t = &b[i] * &factor;
            r[shift + i] = &r[shift + i] - t;
        }
        r = trim(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    x
}

fn divide_exact(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = b.last().expect("nonzero divisor").clone();
    let mut q = vec![Rat::zero(); r.len().saturating_sub(db)];
    while r.len() > db {
        let dr = r.len() - 1;
        let factor = r.last().unwrap() / &lead;
        let shift = dr - db;
        q[shift] = factor.clone();
        for i in 0..=db {
            let t = &b[i] * &factor;
            r[shift + i] = &r[shift + i] - t;
        }
        r = trim(r);
        if r.is_empty() {
            break;
        }
    }
    trim(q)
}

/// Square-free part `p / gcd(p, p')`, over the rationals.
fn squarefree(p: &[Rat]) -> Vec<Rat> {
    if p.len() <= 2 {
        return p.to_vec();
    }
    let dp: Vec<Rat> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
        .collect();
    let g = gcd(p, &trim(dp));
    if g.len() <= 1 {
        p.to_vec()
    } else {
        divide_exact(p, &g)
    }
}

fn sturm_chain(p: &[Rat]) -> Vec<Vec<Rat>> {
    let mut chain = Vec::new();
    let p0 = trim(p.to_vec());
    if p0.is_empty() {
        return chain;
    }
    chain.push(p0.clone());
    let p1: Vec<Rat> = trim(
        p0.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
            .collect(),
    );
    if p1.is_empty() {
        return chain;
    }
    chain.push(p1);
    loop {
        let n = chain.len();
        let r = rem(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(r.iter().map(|c| -c.clone()).collect());
    }
    chain
}

fn sign_variations(chain: &[Vec<Rat>], x: &Rat) -> usize {
    let mut count = 0;
    let mut last: Option<bool> = None;
    for p in chain {
        let v = eval_rat_poly(p, x);
        if v.is_zero() {
            continue;
        }
        let positive = v.is_positive();
        if let Some(prev) = last {
            if prev != positive {
                count += 1;
            }
        }
        last = Some(positive);
    }
    count
}

/// Number of distinct real roots of the polynomial in the open interval
/// `(lo, hi)`. Requires the endpoints to be non-roots.
pub(crate) fn count_roots_in(coeffs: &[BigInt], lo: &Rat, hi: &Rat) -> usize {
    let p = squarefree(&to_rat_poly(coeffs));
    let chain = sturm_chain(&p);
    let va = sign_variations(&chain, lo);
    let vb = sign_variations(&chain, hi);
    va.saturating_sub(vb)
}

pub(crate) fn coeffs_to_string(coeffs: &[BigInt]) -> String {
    coeffs
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> Vec<BigInt> {
        coeffs.iter().map(|&c| BigInt::from(c)).collect()
    }

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn eval_horner_exact() {
        // 2 - 3x + x^2 at 1/2 = 2 - 3/2 + 1/4 = 3/4
        let v = eval(&p(&[2, -3, 1]), &rat(1, 2));
        assert_eq!(v, rat(3, 4));
    }

    #[test]
    fn sturm_counts_roots() {
        // x^2 - 2: one root in (1,2), none in (2,3)
        let sq2 = p(&[-2, 0, 1]);
        assert_eq!(count_roots_in(&sq2, &rat(1, 1), &rat(2, 1)), 1);
        assert_eq!(count_roots_in(&sq2, &rat(2, 1), &rat(3, 1)), 0);
        // both roots of x^2 - 2 in (-2, 2)
        assert_eq!(count_roots_in(&sq2, &rat(-2, 1), &rat(2, 1)), 2);
        // x^3 - 2: one real root
        let cb2 = p(&[-2, 0, 0, 1]);
        assert_eq!(count_roots_in(&cb2, &rat(1, 1), &rat(2, 1)), 1);
        // golden ratio polynomial x^2 - x - 1 on (1, 2)
        let tau = p(&[-1, -1, 1]);
        assert_eq!(count_roots_in(&tau, &rat(1, 1), &rat(2, 1)), 1);
    }

    #[test]
    fn sturm_handles_repeated_roots() {
        // (x-1)^2 = 1 - 2x + x^2: one distinct root in (0, 2)
        let sq = p(&[1, -2, 1]);
        assert_eq!(count_roots_in(&sq, &rat(0, 1), &rat(2, 1)), 1);
    }

    #[test]
    fn degree_ignores_leading_zeros() {
        assert_eq!(degree(&p(&[1, 0, 0])), Some(0));
        assert_eq!(degree(&p(&[0, 0])), None);
        assert_eq!(degree(&p(&[0, 0, 7])), Some(2));
    }
}
