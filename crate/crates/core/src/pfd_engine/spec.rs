use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::polynomial::Polynomial;
use crate::error::{Error, Result};
use crate::exact_arith::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pole {
    pub root: Rational,
    #[serde(rename = "mult")]
    pub multiplicity: u32,
}

/// `scalar * numerator(x) / prod_j (x - root_j)^{mult_j}`.
///
/// Poles are kept sorted by root; roots are pairwise distinct and every
/// multiplicity is positive. Common factors between numerator and
/// denominator are allowed and left in place.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SpecWire")]
pub struct RationalFunctionSpec {
    scalar: Rational,
    numerator: Polynomial,
    poles: Vec<Pole>,
}

#[derive(Deserialize)]
struct SpecWire {
    scalar: Rational,
    numerator: Polynomial,
    poles: Vec<Pole>,
}

impl TryFrom<SpecWire> for RationalFunctionSpec {
    type Error = Error;
    fn try_from(w: SpecWire) -> Result<Self> {
        RationalFunctionSpec::new(w.scalar, w.numerator, w.poles)
    }
}

impl RationalFunctionSpec {
    pub fn new(scalar: Rational, numerator: Polynomial, mut poles: Vec<Pole>) -> Result<Self> {
        poles.sort_by(|a, b| a.root.cmp(&b.root));
        for w in poles.windows(2) {
            if w[0].root == w[1].root {
                return Err(Error::domain(format!("pole {} listed twice", w[0].root)));
            }
        }
        if let Some(p) = poles.iter().find(|p| p.multiplicity == 0) {
            return Err(Error::domain(format!("pole {} has multiplicity 0", p.root)));
        }
        Ok(RationalFunctionSpec {
            scalar,
            numerator,
            poles,
        })
    }

    pub fn scalar(&self) -> &Rational {
        &self.scalar
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn poles(&self) -> &[Pole] {
        &self.poles
    }

    pub fn is_pole(&self, x: &Rational) -> bool {
        self.poles.iter().any(|p| &p.root == x)
    }

    /// `prod_j (x - root_j)^{mult_j}`
    pub fn denominator(&self) -> Polynomial {
        self.poles.iter().fold(Polynomial::one(), |acc, p| {
            &acc * &Polynomial::linear(&p.root).pow(p.multiplicity)
        })
    }

    pub fn denominator_degree(&self) -> usize {
        self.poles.iter().map(|p| p.multiplicity as usize).sum()
    }

    pub fn evaluate(&self, x: &Rational) -> Result<Rational> {
        if self.is_pole(x) {
            return Err(Error::domain(format!("x = {x} is a pole")));
        }
        let mut den = Rational::one();
        for p in &self.poles {
            den *= (x - &p.root).pow(p.multiplicity);
        }
        (&self.scalar * self.numerator.eval(x)).checked_div(&den)
    }
}

/// `polynomial_part(x) + sum_root sum_t coeffs[t-1] / (x - root)^t`.
///
/// Coefficient vectors are dense in ascending power `t = 1..=e`.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(into = "PfdWire", from = "PfdWire")]
pub struct PfdResult {
    pub polynomial_part: Polynomial,
    pub terms: BTreeMap<Rational, Vec<Rational>>,
}

#[derive(Serialize, Deserialize)]
struct TermWire {
    root: Rational,
    coeffs: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct PfdWire {
    polynomial_part: Polynomial,
    terms: Vec<TermWire>,
}

impl From<PfdResult> for PfdWire {
    fn from(r: PfdResult) -> Self {
        PfdWire {
            polynomial_part: r.polynomial_part,
            terms: r
                .terms
                .into_iter()
                .map(|(root, coeffs)| TermWire { root, coeffs })
                .collect(),
        }
    }
}

impl From<PfdWire> for PfdResult {
    fn from(w: PfdWire) -> Self {
        PfdResult {
            polynomial_part: w.polynomial_part,
            terms: w.terms.into_iter().map(|t| (t.root, t.coeffs)).collect(),
        }
    }
}

impl PfdResult {
    /// Coefficient of `1/(x - root)^t`; zero when absent.
    pub fn coefficient(&self, root: &Rational, t: usize) -> Rational {
        self.terms
            .get(root)
            .and_then(|c| c.get(t.checked_sub(1)?))
            .cloned()
            .unwrap_or_default()
    }

    /// Sum of the simple-pole coefficients over all poles.
    pub fn residue_sum(&self) -> Rational {
        self.terms.values().filter_map(|c| c.first()).sum()
    }

    pub fn is_pole(&self, x: &Rational) -> bool {
        self.terms.contains_key(x)
    }

    pub fn evaluate(&self, x: &Rational) -> Result<Rational> {
        if self.is_pole(x) {
            return Err(Error::domain(format!("x = {x} is a pole")));
        }
        let mut total = self.polynomial_part.eval(x);
        for (root, coeffs) in &self.terms {
            let inv = (x - root).recip()?;
            let mut power = inv.clone();
            for c in coeffs {
                total += c * &power;
                power *= &inv;
            }
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn inv_x_xp1() -> RationalFunctionSpec {
        RationalFunctionSpec::new(
            q(1),
            Polynomial::one(),
            vec![
                Pole { root: q(0), multiplicity: 1 },
                Pole { root: q(-1), multiplicity: 1 },
            ],
        )
        .unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let spec = inv_x_xp1();
        assert_eq!(spec.evaluate(&q(1)).unwrap(), Rational::frac(1, 2));
        assert!(matches!(spec.evaluate(&q(-1)), Err(Error::Domain(_))));
        let pfd = PfdResult {
            polynomial_part: Polynomial::zero(),
            terms: [(q(0), vec![q(1)]), (q(-1), vec![q(-1)])].into_iter().collect(),
        };
        assert_eq!(pfd.evaluate(&q(1)).unwrap(), Rational::frac(1, 2));
        assert!(pfd.evaluate(&q(0)).is_err());
        assert_eq!(pfd.residue_sum(), q(0));
    }

    #[test]
    fn rejects_bad_poles() {
        let dup = vec![
            Pole { root: q(2), multiplicity: 1 },
            Pole { root: q(2), multiplicity: 3 },
        ];
        assert!(RationalFunctionSpec::new(q(1), Polynomial::one(), dup).is_err());
        let zero = vec![Pole { root: q(2), multiplicity: 0 }];
        assert!(RationalFunctionSpec::new(q(1), Polynomial::one(), zero).is_err());
    }

    #[test]
    fn json_shapes() {
        let spec = inv_x_xp1();
        let v = serde_json::to_value(&spec).unwrap();
        assert_eq!(
            v,
            serde_json::json!({
                "scalar": "1",
                "numerator": ["1"],
                "poles": [{"root": "-1", "mult": 1}, {"root": "0", "mult": 1}]
            })
        );
        let back: RationalFunctionSpec = serde_json::from_value(v).unwrap();
        assert_eq!(back, spec);
        let bad = serde_json::json!({"scalar": "1", "numerator": [], "poles": [
            {"root": "1/2", "mult": 1}, {"root": "2/4", "mult": 2}]});
        assert!(serde_json::from_value::<RationalFunctionSpec>(bad).is_err());

        let pfd = PfdResult {
            polynomial_part: Polynomial::constant(q(1)),
            terms: [(q(-1), vec![q(2), Rational::frac(-1, 3)])].into_iter().collect(),
        };
        let v = serde_json::to_value(&pfd).unwrap();
        assert_eq!(
            v,
            serde_json::json!({
                "polynomial_part": ["1"],
                "terms": [{"root": "-1", "coeffs": ["2", "-1/3"]}]
            })
        );
        assert_eq!(serde_json::from_value::<PfdResult>(v).unwrap(), pfd);
    }
}
