use std::collections::BTreeMap;

use serde::Serialize;

use super::spec::{PfdResult, RationalFunctionSpec};
use super::SamplePoints;
use crate::exact_arith::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Certificate {
    /// Both sides agree at `points` sample points, more than the degree
    /// bound of the cleared difference.
    Equal { points: usize },
    Counterexample {
        x0: Rational,
        spec_value: Rational,
        pfd_value: Rational,
    },
}

impl Certificate {
    pub fn is_equal(&self) -> bool {
        matches!(self, Certificate::Equal { .. })
    }
}

/// Degree bound for `Q' (spec - pfd)` where `Q'` clears both denominators.
fn degree_bound(spec: &RationalFunctionSpec, pfd: &PfdResult) -> usize {
    let mut mult: BTreeMap<&Rational, usize> = BTreeMap::new();
    for p in spec.poles() {
        mult.insert(&p.root, p.multiplicity as usize);
    }
    for (root, c) in &pfd.terms {
        let e = mult.entry(root).or_default();
        *e = (*e).max(c.len());
    }
    let combined: usize = mult.values().sum();
    let spec_side = (spec.numerator().degree().unwrap_or(0) + combined)
        .saturating_sub(spec.denominator_degree());
    let poly_side = pfd.polynomial_part.degree().unwrap_or(0) + combined;
    spec_side.max(poly_side).max(combined.saturating_sub(1))
}

/// Certifies `spec == pfd` as rational functions by exact evaluation at
/// `D + 1` half-integer points that avoid every pole of either side.
pub fn verify_equal(spec: &RationalFunctionSpec, pfd: &PfdResult) -> Certificate {
    let points = degree_bound(spec, pfd) + 1;
    let avoid = |x: &Rational| spec.is_pole(x) || pfd.is_pole(x);
    for x in SamplePoints::avoiding(avoid).take(points) {
        let s = spec.evaluate(&x).expect("sample point avoids poles");
        let p = pfd.evaluate(&x).expect("sample point avoids poles");
        if s != p {
            return Certificate::Counterexample {
                x0: x,
                spec_value: s,
                pfd_value: p,
            };
        }
    }
    Certificate::Equal { points }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pfd_engine::oracle::oracle_decompose;
    use crate::pfd_engine::polynomial::Polynomial;
    use crate::pfd_engine::spec::Pole;
    use crate::pfd_engine::theorem::theorem_decompose;
    use crate::pfd_engine::{build_family_spec, FamilyParams};

    #[test]
    fn theorem_instance_certified() {
        let spec = build_family_spec(&FamilyParams::theorem(2, 3, 1)).unwrap();
        let pfd = theorem_decompose(2, 3, 1).unwrap();
        assert!(verify_equal(&spec, &pfd).is_equal());
        let single = build_family_spec(&FamilyParams::theorem(0, 3, 0)).unwrap();
        assert!(verify_equal(&single, &theorem_decompose(0, 3, 0).unwrap()).is_equal());
    }

    #[test]
    fn perturbation_caught() {
        let spec = build_family_spec(&FamilyParams::theorem(2, 3, 1)).unwrap();
        let mut pfd = theorem_decompose(2, 3, 1).unwrap();
        pfd.terms.get_mut(&Rational::from(-1)).unwrap()[1] += Rational::one();
        match verify_equal(&spec, &pfd) {
            Certificate::Counterexample { x0, spec_value, pfd_value } => {
                assert_eq!(spec.evaluate(&x0).unwrap(), spec_value);
                assert_eq!(pfd.evaluate(&x0).unwrap(), pfd_value);
                assert_ne!(spec_value, pfd_value);
            }
            c => panic!("perturbation not caught: {c:?}"),
        }
    }

    #[test]
    fn missing_polynomial_part_caught() {
        // x^2/(x-1) = x + 1 + 1/(x-1)
        let spec = RationalFunctionSpec::new(
            Rational::one(),
            Polynomial::monomial(2),
            vec![Pole { root: Rational::one(), multiplicity: 1 }],
        )
        .unwrap();
        let mut pfd = oracle_decompose(&spec).unwrap();
        assert!(verify_equal(&spec, &pfd).is_equal());
        pfd.polynomial_part = Polynomial::x();
        assert!(!verify_equal(&spec, &pfd).is_equal());
    }

    #[test]
    fn extra_pole_in_pfd_caught() {
        let spec = RationalFunctionSpec::new(
            Rational::one(),
            Polynomial::one(),
            vec![Pole { root: Rational::zero(), multiplicity: 1 }],
        )
        .unwrap();
        let mut pfd = oracle_decompose(&spec).unwrap();
        pfd.terms.insert(Rational::from(3), vec![Rational::zero(), Rational::one()]);
        assert!(!verify_equal(&spec, &pfd).is_equal());
    }
}
