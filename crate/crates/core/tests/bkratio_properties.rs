mod support;

use num_bigint::BigInt;
use proptest::prelude::*;
use twistsha::bkratio::{ratio_valuation, verdict, ShaConclusion, VerdictConclusion};
use twistsha::forms::PlusCoefficients;
use twistsha::hypotheses::{FactsFile, TwistContext};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn antisymmetry_and_scaling(r in support::ratio_input()) {
        support::check_ratio_laws(&r)?;
    }
}

#[test]
fn valuations_for_known_pairs() {
    let v = |p, a: i64, b: i64, d, dp| {
        ratio_valuation(p, 12, &BigInt::from(a), &BigInt::from(b), d, dp).unwrap()
    };
    assert_eq!(v(11, 52000080, -6480, 517, 33), 2);
    assert_eq!(v(67, -2622438960, -2686320, 2881, 201), 2);
    assert_eq!(v(11, -6480, 52000080, 33, 517), -2);
}

#[test]
fn verdicts_end_to_end() {
    let facts = FactsFile::new().with("tamagawa_equal_at_p:11:517:33", true, "Dummigan, Lemma 6.3");
    let mut table = PlusCoefficients::new();
    let ctx = |p, d| TwistContext::delta(p, d).unwrap();

    let v1 = verdict(&ctx(11, 517), &ctx(11, 33), &facts, &mut table).unwrap();
    assert_eq!(v1.conclusion, VerdictConclusion::ExistsSurjection);
    assert_eq!(v1.certificate.valuation, 2);
    assert!(v1.assumptions.iter().any(|a| a.contains("517")));
    assert!(v1.assumptions.iter().any(|a| a.contains("χ_33")));

    let v2 = verdict(&ctx(67, 2881), &ctx(67, 201), &FactsFile::new(), &mut table).unwrap();
    assert_eq!(v2.conclusion, VerdictConclusion::ExistsSurjection);
    assert_eq!(v2.certificate.valuation, 2);
    assert!(v2.certificate.tamagawa_terms.is_some());

    let swapped = verdict(&ctx(11, 33), &ctx(11, 517), &facts, &mut table).unwrap();
    assert_eq!(swapped.conclusion, VerdictConclusion::Inconclusive);
    assert_eq!(swapped.certificate.valuation, -2);
    assert_eq!(swapped.certificate.conclusion, ShaConclusion::ShaDprimeNontrivial);
}
