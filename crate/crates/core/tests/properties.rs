use proptest::prelude::*;

use pfrac::identities::corollary_sum;
use pfrac::pfd_engine::{
    build_family_spec, oracle_decompose, theorem_decompose, verify_equal, FamilyParams, PfdResult,
    Pole, Polynomial, RationalFunctionSpec,
};
use pfrac::Rational;

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(p, q)| Rational::frac(p, q))
}

fn spec() -> impl Strategy<Value = RationalFunctionSpec> {
    let root = (-12i64..=12, 1i64..=3).prop_map(|(p, q)| Rational::frac(p, q));
    let poles = prop::collection::btree_map(root, 1u32..=3, 1..=4);
    let numerator = prop::collection::vec(rational(), 0..=7);
    (rational(), numerator, poles).prop_map(|(scalar, num, poles)| {
        let poles = poles
            .into_iter()
            .map(|(root, multiplicity)| Pole { root, multiplicity })
            .collect();
        RationalFunctionSpec::new(scalar, Polynomial::new(num), poles).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn oracle_is_certified(s in spec()) {
        let pfd = oracle_decompose(&s).unwrap();
        prop_assert!(verify_equal(&s, &pfd).is_equal());
        for p in s.poles() {
            prop_assert_eq!(pfd.terms[&p.root].len(), p.multiplicity as usize);
        }
    }

    #[test]
    fn residues_cancel_when_degree_gap_is_two(s in spec()) {
        let gap = s.denominator_degree() as i64 - s.numerator().degree().map_or(-1, |d| d as i64);
        prop_assume!(gap >= 2);
        prop_assert!(oracle_decompose(&s).unwrap().residue_sum().is_zero());
    }

    #[test]
    fn json_round_trip(s in spec()) {
        let text = serde_json::to_string(&s).unwrap();
        prop_assert_eq!(serde_json::from_str::<RationalFunctionSpec>(&text).unwrap(), s.clone());
        let pfd = oracle_decompose(&s).unwrap();
        let text = serde_json::to_string(&pfd).unwrap();
        prop_assert_eq!(serde_json::from_str::<PfdResult>(&text).unwrap(), pfd);
    }

    #[test]
    fn theorem_matches_oracle(n in 0u32..=4, lambda in 1u32..=4, mu_frac in 0u32..=4) {
        let mu = mu_frac.min(lambda);
        let spec = build_family_spec(&FamilyParams::theorem(n, lambda, mu)).unwrap();
        prop_assert_eq!(theorem_decompose(n, lambda, mu).unwrap(), oracle_decompose(&spec).unwrap());
    }

    #[test]
    fn corollary_vanishes(n in 1u32..=12, lambda in 2u32..=5, mu in 0u32..=5) {
        let mu = mu.min(lambda);
        prop_assert!(corollary_sum(n, lambda, mu).unwrap().is_zero());
    }

    #[test]
    fn perturbation_is_caught(s in spec(), pick in any::<prop::sample::Index>(), delta in rational()) {
        prop_assume!(!delta.is_zero());
        let mut pfd = oracle_decompose(&s).unwrap();
        let slots: Vec<(Rational, usize)> = pfd
            .terms
            .iter()
            .flat_map(|(r, c)| (0..c.len()).map(move |i| (r.clone(), i)))
            .collect();
        let (root, i) = pick.get(&slots).clone();
        pfd.terms.get_mut(&root).unwrap()[i] += delta;
        prop_assert!(!verify_equal(&s, &pfd).is_equal());
    }
}
