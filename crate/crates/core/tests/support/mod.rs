//! Oracles and property checks shared by the integration tests and the
//! acceptance harness. Nothing here calls the Kohnen lift construction.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use twistsha::arith::kronecker;
use twistsha::bkratio::ratio_valuation;
use twistsha::forms::{delta_series, x0_11_series};
use twistsha::hypotheses::{
    check_conditions, st3_violations, DClass, FactsFile, TriState, TwistContext,
};
use twistsha::{Discriminant, QSeries};

fn sigma(n: u64, e: u32) -> BigInt {
    let mut s = BigInt::zero();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            s += BigInt::from(d).pow(e);
            if d * d != n {
                s += BigInt::from(n / d).pow(e);
            }
        }
        d += 1;
    }
    s
}

fn mul_trunc(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().min(b.len());
    let mut out = vec![BigInt::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// τ(0..=n) from `Δ = (E4³ - E6²) / 1728`.
pub fn tau_eisenstein(n: usize) -> Vec<BigInt> {
    let mut e4 = vec![BigInt::one()];
    let mut e6 = vec![BigInt::one()];
    for m in 1..=n as u64 {
        e4.push(sigma(m, 3) * 240);
        e6.push(sigma(m, 5) * -504);
    }
    let e4_3 = mul_trunc(&mul_trunc(&e4, &e4), &e4);
    let e6_2 = mul_trunc(&e6, &e6);
    e4_3.iter()
        .zip(&e6_2)
        .map(|(a, b)| {
            let (q, r) = (a - b).div_rem(&BigInt::from(1728));
            assert!(r.is_zero());
            q
        })
        .collect()
}

fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// Shimura-lift relation `c(D n²) = c(D) Σ_{d|n} μ(d) χ_D(d) d⁵ τ(n/d)` for
/// weight 12, with `tau` indexed from 0.
pub fn shimura_coefficient(c_d: &BigInt, d: i64, n: u64, tau: &[BigInt]) -> BigInt {
    let mut s = BigInt::zero();
    for e in 1..=n {
        if !n.is_multiple_of(e) {
            continue;
        }
        let mu = mobius(e);
        if mu == 0 {
            continue;
        }
        let chi = kronecker(d, e as i64).unwrap() as i64;
        s += BigInt::from(mu * chi) * BigInt::from(e).pow(5) * &tau[(n / e) as usize];
    }
    c_d * s
}

pub fn tau_values(n: usize) -> Vec<BigInt> {
    delta_series(n).to_integers().unwrap()
}

pub fn check_tau_multiplicative(limit: u64) -> Result<usize, String> {
    let tau = tau_values(limit as usize);
    let mut pairs = 0;
    for m in 2..=limit {
        for n in (m + 1)..=(limit / m) {
            if m.gcd(&n) != 1 {
                continue;
            }
            pairs += 1;
            if tau[(m * n) as usize] != &tau[m as usize] * &tau[n as usize] {
                return Err(format!("τ({}) ≠ τ({m})τ({n})", m * n));
            }
        }
    }
    Ok(pairs)
}

pub fn check_hecke_recurrence(max_p: u64) -> Result<usize, String> {
    let primes: Vec<u64> = (2..=max_p).filter(|&p| twistsha::arith::is_prime(p)).collect();
    let tau = tau_values((max_p * max_p) as usize);
    for &p in &primes {
        let lhs = &tau[(p * p) as usize];
        let rhs = &tau[p as usize] * &tau[p as usize] - BigInt::from(p).pow(11);
        if *lhs != rhs {
            return Err(format!("τ({p}²) = {lhs}, expected {rhs}"));
        }
    }
    Ok(primes.len())
}

pub fn check_mod11_congruence(limit: usize) -> Result<(), String> {
    let tau = tau_values(limit);
    let a = x0_11_series(limit).to_integers().unwrap();
    let eleven = BigInt::from(11);
    for n in 1..=limit {
        if !(&tau[n] - &a[n]).mod_floor(&eleven).is_zero() {
            return Err(format!("τ({n}) = {} ≢ a_{n} = {} (mod 11)", tau[n], a[n]));
        }
    }
    Ok(())
}

pub fn check_tau_against_eisenstein(limit: usize) -> Result<(), String> {
    let ours = tau_values(limit);
    let oracle = tau_eisenstein(limit);
    for n in 0..=limit {
        if ours[n] != oracle[n] {
            return Err(format!("τ({n}): product {} vs Eisenstein {}", ours[n], oracle[n]));
        }
    }
    Ok(())
}

pub fn check_plus_space_support(coeffs: &[BigInt]) -> Result<usize, String> {
    let mut checked = 0;
    for (n, c) in coeffs.iter().enumerate() {
        if n % 4 == 2 || n % 4 == 3 {
            checked += 1;
            if !c.is_zero() {
                return Err(format!("c_{n} = {c} outside the plus space"));
            }
        }
    }
    Ok(checked)
}

// q-series laws

fn rational() -> impl Strategy<Value = BigRational> {
    (-50i64..=50, 1i64..=6).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn series_with_prec(prec: usize) -> impl Strategy<Value = QSeries> {
    proptest::collection::vec(rational(), prec + 1).prop_map(QSeries::from_coeffs)
}

pub fn series_triple() -> impl Strategy<Value = (QSeries, QSeries, QSeries)> {
    (0usize..=64).prop_flat_map(|prec| (series_with_prec(prec), series_with_prec(prec), series_with_prec(prec)))
}

fn add(a: &QSeries, b: &QSeries) -> QSeries {
    QSeries::lincomb(a, &BigRational::one(), b, &BigRational::one())
}

pub fn check_series_laws(a: &QSeries, b: &QSeries, c: &QSeries, m: usize) -> Result<(), TestCaseError> {
    prop_assert_eq!(a.mul(b), b.mul(a));
    prop_assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
    prop_assert_eq!(a.mul(&add(b, c)), add(&a.mul(b), &a.mul(c)));
    prop_assert_eq!(a.mul(&QSeries::one(a.prec())), a.clone());
    // Leibniz rule for D = q d/dq
    let lhs = a.mul(b).q_derivative();
    let rhs = add(&a.q_derivative().mul(b), &a.mul(&b.q_derivative()));
    prop_assert_eq!(lhs, rhs);
    // dilation is a ring map and intertwines D with m·D
    prop_assert_eq!(a.mul(b).dilate(m), a.dilate(m).mul(&b.dilate(m)));
    prop_assert_eq!(add(a, b).dilate(m), add(&a.dilate(m), &b.dilate(m)));
    let mq = BigRational::from_integer(BigInt::from(m));
    prop_assert_eq!(a.dilate(m).q_derivative(), a.q_derivative().dilate(m).scale(&mq));
    prop_assert_eq!(a.dilate(m).prec(), m * a.prec() + m - 1);
    Ok(())
}

// ratio laws

const RATIO_PRIMES: [u64; 8] = [3, 5, 7, 11, 13, 29, 67, 691];

fn discriminant_with_sign(k: u32) -> impl Strategy<Value = i64> {
    (1i64..4000).prop_filter_map("not a discriminant", move |m| {
        let d = if (k / 2).is_multiple_of(2) { m } else { -m };
        Discriminant::valid(d).ok().map(|_| d)
    })
}

fn p_free(p: u64) -> impl Strategy<Value = BigInt> {
    (1i64..1_000_000, any::<bool>()).prop_map(move |(v, neg)| {
        let mut v = v;
        while v % p as i64 == 0 {
            v /= p as i64;
        }
        BigInt::from(if neg { -v } else { v })
    })
}

#[derive(Debug, Clone)]
pub struct RatioInput {
    pub p: u64,
    pub k: u32,
    pub c_d: BigInt,
    pub c_d_prime: BigInt,
    pub d: i64,
    pub d_prime: i64,
    pub unit: BigInt,
}

pub fn ratio_input() -> impl Strategy<Value = RatioInput> {
    (proptest::sample::select(RATIO_PRIMES.to_vec()), (1u32..=13).prop_map(|h| 2 * h))
        .prop_flat_map(|(p, k)| {
            (
                Just(p),
                Just(k),
                p_free(p),
                0u32..4,
                p_free(p),
                0u32..4,
                discriminant_with_sign(k),
                discriminant_with_sign(k),
                p_free(p),
            )
        })
        .prop_filter("D = D′", |t| t.6 != t.7)
        .prop_map(|(p, k, u, i, v, j, d, d_prime, unit)| RatioInput {
            p,
            k,
            c_d: u * BigInt::from(p).pow(i),
            c_d_prime: v * BigInt::from(p).pow(j),
            d,
            d_prime,
            unit: unit.abs(),
        })
}

pub fn check_ratio_laws(r: &RatioInput) -> Result<(), TestCaseError> {
    let v = ratio_valuation(r.p, r.k, &r.c_d, &r.c_d_prime, r.d, r.d_prime).unwrap();
    let swapped = ratio_valuation(r.p, r.k, &r.c_d_prime, &r.c_d, r.d_prime, r.d).unwrap();
    prop_assert_eq!(v, -swapped);
    let scaled =
        ratio_valuation(r.p, r.k, &(&r.c_d * &r.unit), &(&r.c_d_prime * &r.unit), r.d, r.d_prime).unwrap();
    prop_assert_eq!(scaled, v);
    let times_p = ratio_valuation(r.p, r.k, &(&r.c_d * r.p), &r.c_d_prime, r.d, r.d_prime).unwrap();
    prop_assert_eq!(times_p, v + 2);
    Ok(())
}

// exhaustive decision-table check

fn facts_for(p: u64, d: i64, m: Option<bool>, t: Option<bool>) -> FactsFile {
    let mut f = FactsFile::new();
    if let Some(v) = m {
        f.insert(&format!("m_splits_at_p:{p}:{d}"), v, "test scenario").unwrap();
    }
    if let Some(v) = t {
        f.insert(&format!("t_mod_pn_splits_all_n:{p}:{d}"), v, "test scenario").unwrap();
    }
    f
}

fn representative(p: u64, class: DClass) -> i64 {
    let p = p as i64;
    match class {
        DClass::PCoprimeToD => [5, -3, -4, 8].into_iter().find(|d| d % p != 0).unwrap(),
        DClass::PDividesD => 4 * p,
        DClass::DIsPStar => if p % 4 == 1 { p } else { -p },
    }
}

fn divides(d: i64, n: i64) -> bool {
    n.rem_euclid(d) == 0
}

fn no_weaker(base: TriState, refined: TriState) -> bool {
    base == TriState::Unknown || base == refined
}

#[derive(Debug, Default)]
pub struct ExhaustiveStats {
    pub contexts: usize,
    pub b_holds: usize,
}

/// Sweeps the decision table and checks the branch invariants, monotonicity in
/// facts, and the Selmer bound whenever (B) holds.
pub fn check_decision_table() -> Result<ExhaustiveStats, String> {
    let mut stats = ExhaustiveStats::default();
    let split_values = [None, Some(true), Some(false)];
    for p in (3..=97u64).filter(|&p| twistsha::arith::is_prime(p)) {
        for k in (2..=26u32).step_by(2) {
            for class in [DClass::PCoprimeToD, DClass::PDividesD, DClass::DIsPStar] {
                let d = representative(p, class);
                let disc = Discriminant::valid(d).map_err(|e| e.to_string())?;
                for ap in 0..3u64 {
                    let ctx = TwistContext::new(None, k, 1, p, disc, BigInt::from(ap))
                        .map_err(|e| e.to_string())?;
                    if ctx.d_class() != class {
                        return Err(format!("D = {d} misclassified for p = {p}"));
                    }
                    let base_viol = st3_violations(&ctx, &FactsFile::new());
                    let base_report = check_conditions(&ctx, None, &FactsFile::new());
                    for m in split_values {
                        for t in split_values {
                            if m == Some(false) && t == Some(true) {
                                continue;
                            }
                            stats.contexts += 1;
                            let facts = facts_for(p, d, m, t);
                            let viol = st3_violations(&ctx, &facts);
                            let tag = format!("p={p} k={k} D={d} a_p={ap} m={m:?} t={t:?}");
                            if ap != 1 && viol.values().any(|v| v.is_unknown()) {
                                return Err(format!("{tag}: Unknown with a_p ≢ 1"));
                            }
                            if class == DClass::PDividesD && !viol.values().all(|v| v.is_fails()) {
                                return Err(format!("{tag}: p | D, D ≠ p* must be all Fails"));
                            }
                            for (case, tri) in &viol {
                                if tri.is_unknown() && tri.reason.is_empty() {
                                    return Err(format!("{tag}: ({case}) Unknown without reason"));
                                }
                                if !no_weaker(base_viol[case].state, tri.state) {
                                    return Err(format!("{tag}: ({case}) flipped when facts were added"));
                                }
                            }
                            let report = check_conditions(&ctx, None, &facts);
                            for (name, b, r) in [
                                ("a", &base_report.a, &report.a),
                                ("b", &base_report.b, &report.b),
                                ("c", &base_report.c, &report.c),
                                ("d", &base_report.d_cond, &report.d_cond),
                                ("tamdif", &base_report.tamdif, &report.tamdif),
                            ] {
                                if !no_weaker(b.state, r.state) {
                                    return Err(format!("{tag}: condition {name} flipped"));
                                }
                            }
                            if report.b.is_holds() {
                                stats.b_holds += 1;
                                if report.selmer_bound.value != Some(1) {
                                    return Err(format!("{tag}: (B) holds but Selmer bound is not 1"));
                                }
                            }
                        }
                    }
                    let (ki, pi) = (k as i64, p as i64);
                    let both_fail = match class {
                        DClass::PCoprimeToD => !divides(pi - 1, ki / 2) && !divides(pi - 1, ki / 2 - 1),
                        DClass::DIsPStar => {
                            !divides(pi - 1, (ki - pi + 1) / 2) && !divides(pi - 1, (ki + pi - 3) / 2)
                        }
                        DClass::PDividesD => true,
                    };
                    if both_fail {
                        for t in [None, Some(false)] {
                            let split = st3_violations(&ctx, &facts_for(p, d, Some(true), t));
                            let nonsplit = st3_violations(&ctx, &facts_for(p, d, Some(false), t));
                            for case in split.keys() {
                                if split[case].state != nonsplit[case].state {
                                    return Err(format!(
                                        "p={p} k={k} D={d} a_p={ap}: ({case}) differs between split branches"
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(stats)
}

pub fn to_i64(x: &BigInt) -> i64 {
    x.to_i64().unwrap()
}
