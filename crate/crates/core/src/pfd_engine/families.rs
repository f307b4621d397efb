//! The concrete rational-function families and their closed-form
//! decompositions.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::polynomial::{one_minus_x_rising, Polynomial};
use super::spec::{PfdResult, Pole, RationalFunctionSpec};
use super::theorem::properness;
use crate::error::{Error, Result};
use crate::exact_arith::{binom_q, factorial_q, Rational};
use crate::harmonic::hn;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `(n!)^{lam-mu} (1-x)_n^mu / (x)_{n+1}^lam`
    Theorem,
    /// `x (1-x)_n^2 / (x)_{n+1}^2`
    Beukers6,
    /// `(1-x)_n^2 / (1+x)_n^2`
    Ex7,
    /// `n! (2n)! / ((x)_{n+1}^2 (1-x)_n)`
    Ex8,
    /// `(n!)^2 (2n)! / ((x)_{n+1}^3 (1-x)_n)`
    Ex9,
    /// `n! ((2n)!)^2 / ((x)_{n+1}^3 (1-x)_n^2)`
    Ex10,
    /// `(n!)^4 x^theta / (x)_{n+1}^4`
    Theta,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Theorem,
        Family::Beukers6,
        Family::Ex7,
        Family::Ex8,
        Family::Ex9,
        Family::Ex10,
        Family::Theta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Theorem => "theorem",
            Family::Beukers6 => "beukers6",
            Family::Ex7 => "ex7",
            Family::Ex8 => "ex8",
            Family::Ex9 => "ex9",
            Family::Ex10 => "ex10",
            Family::Theta => "theta",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::usage(format!("unknown family {s:?}")))
    }
}

/// Which simple-pole coefficient to use for the `beukers6` family.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ErratumMode {
    /// `1 + 2k H_{n+k} + 2k H_{n-k} - 4 H_k`, as commonly printed.
    Printed,
    /// `1 + 2k H_{n+k} + 2k H_{n-k} - 4k H_k`
    #[default]
    Corrected,
}

impl fmt::Display for ErratumMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ErratumMode::Printed => "printed",
            ErratumMode::Corrected => "corrected",
        })
    }
}

impl FromStr for ErratumMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "printed" => Ok(ErratumMode::Printed),
            "corrected" => Ok(ErratumMode::Corrected),
            _ => Err(Error::usage(format!("unknown erratum mode {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyParams {
    pub family: Family,
    pub n: u32,
    pub lambda: u32,
    pub mu: u32,
    pub theta: u32,
    pub mode: ErratumMode,
}

impl FamilyParams {
    pub fn new(family: Family, n: u32) -> Self {
        FamilyParams {
            family,
            n,
            lambda: 1,
            mu: 0,
            theta: 0,
            mode: ErratumMode::default(),
        }
    }

    pub fn theorem(n: u32, lambda: u32, mu: u32) -> Self {
        FamilyParams {
            lambda,
            mu,
            ..Self::new(Family::Theorem, n)
        }
    }

    pub fn theta(n: u32, theta: u32) -> Self {
        FamilyParams {
            theta,
            ..Self::new(Family::Theta, n)
        }
    }

    pub fn with_mode(self, mode: ErratumMode) -> Self {
        FamilyParams { mode, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        match self.family {
            Family::Theorem => {
                if self.lambda == 0 {
                    return Err(Error::usage("theorem family needs lambda >= 1"));
                }
                if properness(self.n, self.lambda, self.mu) <= 0 {
                    return Err(Error::usage(format!(
                        "theorem family needs lambda + (lambda - mu) n > 0, got lambda = {}, mu = {}, n = {}",
                        self.lambda, self.mu, self.n
                    )));
                }
            }
            Family::Theta
                if self.theta >= 4 + 4 * self.n => {
                    return Err(Error::usage(format!(
                        "theta family needs theta < 4 + 4n, got theta = {}, n = {}",
                        self.theta, self.n
                    )));
                }
            _ => {}
        }
        Ok(())
    }
}

fn poles(roots: impl IntoIterator<Item = i64>, multiplicity: u32) -> Vec<Pole> {
    roots
        .into_iter()
        .map(|r| Pole {
            root: Rational::from(r),
            multiplicity,
        })
        .collect()
}

pub fn build_family_spec(params: &FamilyParams) -> Result<RationalFunctionSpec> {
    params.validate()?;
    let n = params.n;
    let ni = n as i64;
    let nfact = factorial_q(n);
    let two_n_fact = factorial_q(2 * n);
    // (1-x)_n = (-1)^n prod (x - i), so denominator copies flip the scalar sign
    let flip = Rational::sign_power(n as u64);
    let neg = |mult| poles((0..=ni).map(|k| -k), mult);
    let pos = |mult| poles(1..=ni, mult);
    let (scalar, numerator, ps) = match params.family {
        Family::Theorem => {
            let (lam, mu) = (params.lambda, params.mu);
            let scalar = if lam >= mu {
                nfact.pow(lam - mu)
            } else {
                nfact.pow(mu - lam).recip()?
            };
            (scalar, one_minus_x_rising(n).pow(mu), neg(lam))
        }
        Family::Beukers6 => (
            Rational::one(),
            &Polynomial::x() * &one_minus_x_rising(n).pow(2),
            neg(2),
        ),
        Family::Ex7 => (
            Rational::one(),
            one_minus_x_rising(n).pow(2),
            poles((1..=ni).map(|k| -k), 2),
        ),
        Family::Ex8 => (flip * nfact * two_n_fact, Polynomial::one(), [neg(2), pos(1)].concat()),
        Family::Ex9 => (
            flip * nfact.pow(2) * two_n_fact,
            Polynomial::one(),
            [neg(3), pos(1)].concat(),
        ),
        Family::Ex10 => (nfact * two_n_fact.pow(2), Polynomial::one(), [neg(3), pos(2)].concat()),
        Family::Theta => (
            nfact.pow(4),
            Polynomial::monomial(params.theta as usize),
            neg(4),
        ),
    };
    RationalFunctionSpec::new(scalar, numerator, ps)
}

fn c(n: u32, k: u32) -> Rational {
    binom_q(n as u64, k as u64)
}

fn q(v: u32) -> Rational {
    Rational::from(v)
}

/// `[K^{theta-j} b_j(K)]` evaluated at `K = k`, where `b_j` is the `j`-th
/// bracket of the fourth-power family with the harmonic parts held at their
/// values for this `k`. At `k = 0` only the `K^0` coefficient of the Laurent
/// product survives; that reading of `0^{theta-j}` is what makes the
/// decomposition exact for every `theta`.
pub(crate) fn theta_bracket(n: u32, k: u32, theta: u32, j: u32) -> Result<Rational> {
    let th = Polynomial::constant(q(theta));
    let minus_four = Rational::from(-4);
    let a = hn(k, 1) - hn(n - k, 1);
    let b = hn(k, 3) - hn(n - k, 3);
    let cc = hn(k, 2) + hn(n - k, 2);
    let b1 = &th + &Polynomial::monomial(1).scale(&(&minus_four * a));
    let w = &th + &Polynomial::monomial(2).scale(&(&minus_four * cc));
    let v = &th + &Polynomial::monomial(3).scale(&(&minus_four * b));
    let bracket = match j {
        0 => Polynomial::one(),
        1 => b1,
        2 => &b1.pow(2) - &w,
        3 => &(&b1.pow(3) + &v.scale(&q(2))) - &(&b1 * &w).scale(&q(3)),
        _ => return Err(Error::Internal(format!("no bracket of order {j}"))),
    };
    let shift = theta as i64 - j as i64;
    if k > 0 {
        return Ok(bracket.eval(&q(k)) * q(k).powi(shift)?);
    }
    if shift >= 0 {
        return Ok(if shift == 0 { bracket.coeff(0) } else { Rational::zero() });
    }
    let lowest = (-shift) as usize;
    if (0..lowest).any(|d| !bracket.coeff(d).is_zero()) {
        return Err(Error::Internal(format!(
            "bracket {j} at k = 0 has a negative power for theta = {theta}"
        )));
    }
    Ok(bracket.coeff(lowest))
}

/// Decomposition from the closed-form coefficient formulas of each
/// non-theorem family.
pub fn example_decompose(params: &FamilyParams) -> Result<PfdResult> {
    params.validate()?;
    let n = params.n;
    let mut out = PfdResult::default();
    let neg = |k: u32| -Rational::from(k);
    let pos = |k: u32| Rational::from(k);
    let half = Rational::frac(1, 2);
    match params.family {
        Family::Theorem => {
            return Err(Error::usage("theorem family is decomposed by theorem_decompose"));
        }
        Family::Beukers6 => {
            out.terms.insert(Rational::zero(), vec![Rational::one(), Rational::zero()]);
            for k in 1..=n {
                let w = c(n, k).pow(2) * c(n + k, k).pow(2);
                let hk_weight = match params.mode {
                    ErratumMode::Printed => q(4),
                    ErratumMode::Corrected => q(4 * k),
                };
                let simple = Rational::one() + q(2 * k) * hn(n + k, 1) + q(2 * k) * hn(n - k, 1)
                    - hk_weight * hn(k, 1);
                out.terms.insert(neg(k), vec![&w * simple, -(w * q(k))]);
            }
        }
        Family::Ex7 => {
            out.polynomial_part = Polynomial::one();
            for k in 1..=n {
                let w = c(n, k).pow(2) * c(n + k, k).pow(2) * q(k * k);
                let bracket = q(k).recip()? + hn(n + k, 1) + hn(n - k, 1) - q(2) * hn(k, 1);
                out.terms.insert(neg(k), vec![-(q(2) * &w * bracket), w]);
            }
        }
        Family::Ex8 => {
            for k in 1..=n {
                let v = (Rational::sign_power(k as u64) * c(2 * n, n + k))
                    .checked_div(&(c(n + k, n + 1) * q(n + 1)))?;
                out.terms.insert(pos(k), vec![v]);
            }
            for k in 0..=n {
                let w = c(n, k) * c(2 * n, n + k);
                let a = hn(k, 1) + hn(n + k, 1) - q(2) * hn(n - k, 1);
                out.terms.insert(neg(k), vec![&w * a, w]);
            }
        }
        Family::Ex9 => {
            for k in 1..=n {
                let v = (Rational::sign_power(k as u64) * c(2 * n, n + k))
                    .checked_div(&(c(n + k, n + 1) * q(n + 1)).pow(2))?;
                out.terms.insert(pos(k), vec![v]);
            }
            for k in 0..=n {
                let w = Rational::sign_power(k as u64) * c(n, k).pow(2) * c(2 * n, n + k);
                let a = q(2) * hn(k, 1) + hn(n + k, 1) - q(3) * hn(n - k, 1);
                let b = q(2) * hn(k, 2) + hn(n + k, 2) + q(3) * hn(n - k, 2);
                let simple = &half * (a.pow(2) + b);
                out.terms.insert(neg(k), vec![&w * simple, &w * a, w]);
            }
        }
        Family::Ex10 => {
            for k in 1..=n {
                let v = c(2 * n, n + k)
                    .pow(2)
                    .checked_div(&(c(n + k, n + 1) * q(n + 1)))?;
                let a = hn(k - 1, 1) + q(2) * hn(n - k, 1) - q(3) * hn(n + k, 1);
                out.terms.insert(pos(k), vec![&v * a, v]);
            }
            for k in 0..=n {
                let w = Rational::sign_power(k as u64) * c(n, k) * c(2 * n, n + k).pow(2);
                let a = hn(k, 1) + q(2) * hn(n + k, 1) - q(3) * hn(n - k, 1);
                let b = hn(k, 2) + q(2) * hn(n + k, 2) + q(3) * hn(n - k, 2);
                let simple = &half * (a.pow(2) + b);
                out.terms.insert(neg(k), vec![&w * simple, &w * a, w]);
            }
        }
        Family::Theta => {
            let theta = params.theta;
            for k in 0..=n {
                let w = c(n, k).pow(4);
                let mut coeffs = vec![Rational::zero(); 4];
                for j in 0..4u32 {
                    let sign = Rational::sign_power((theta + j) as u64);
                    let value = &w * sign * theta_bracket(n, k, theta, j)?;
                    coeffs[3 - j as usize] = value.checked_div(&factorial_q(j))?;
                }
                out.terms.insert(neg(k), coeffs);
            }
        }
    }
    Ok(out)
}
