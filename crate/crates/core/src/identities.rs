//! Harmonic number identities evaluated by exact direct summation.
//!
//! Each sum is written from its own bracket, independently of the Omega
//! machinery, and checked against its closed form.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bell_coeffs::{omega_coeff, BellArgs};
use crate::error::{Error, Result};
use crate::exact_arith::{binom_q, factorial_q, Rational};
use crate::harmonic::hn;
use crate::pfd_engine::{properness, theta_bracket, ErratumMode, Family};

fn c(n: u32, k: u32) -> Rational {
    binom_q(n as u64, k as u64)
}

fn q(v: u32) -> Rational {
    Rational::from(v)
}

fn sign(e: u32) -> Rational {
    Rational::sign_power(e as u64)
}

/// `sum_k (-1)^{k lam} C(n,k)^lam C(n+k,k)^mu Omega_{lam-1}(lam, mu, -k)`.
pub fn corollary_sum(n: u32, lambda: u32, mu: u32) -> Result<Rational> {
    check_corollary(n, lambda, mu)?;
    (0..=n)
        .map(|k| {
            let omega = omega_coeff(&BellArgs::new(lambda, mu, n, k, lambda - 1)?);
            Ok(sign(k * lambda) * c(n, k).pow(lambda) * c(n + k, k).pow(mu) * omega)
        })
        .sum()
}

/// Zero when `lam + (lam - mu) n > 1`; on the boundary `= 1` the sum picks
/// up the leading coefficient, `(lam-1)! (n!)^{lam-mu} (-1)^{n mu}`.
pub fn corollary_expected(n: u32, lambda: u32, mu: u32) -> Result<Rational> {
    check_corollary(n, lambda, mu)?;
    if properness(n, lambda, mu) > 1 {
        return Ok(Rational::zero());
    }
    let gap = lambda as i64 - mu as i64;
    Ok(factorial_q(lambda - 1) * factorial_q(n).powi(gap)? * sign(n * mu))
}

fn check_corollary(n: u32, lambda: u32, mu: u32) -> Result<()> {
    if lambda == 0 || properness(n, lambda, mu) < 1 {
        return Err(Error::domain(format!(
            "corollary sum needs lambda >= 1 and lambda + (lambda - mu) n >= 1 \
             (lambda = {lambda}, mu = {mu}, n = {n})"
        )));
    }
    Ok(())
}

/// `sum_k (-1)^k C(n,k)^3 {3 (H_k - H_{n-k})^2 + H_k^<2> + H_{n-k}^<2>}`
pub fn hardest_challenge_sum(n: u32) -> Rational {
    (0..=n)
        .map(|k| {
            let d = hn(k, 1) - hn(n - k, 1);
            let bracket = q(3) * d.pow(2) + hn(k, 2) + hn(n - k, 2);
            sign(k) * c(n, k).pow(3) * bracket
        })
        .sum()
}

/// The same sum routed through `Omega_2(3, 0, -k)`, which is three times
/// the bracket.
pub fn hardest_challenge_via_omega(n: u32) -> Rational {
    let third = Rational::frac(1, 3);
    (0..=n)
        .map(|k| {
            let omega = omega_coeff(&BellArgs::new(3, 0, n, k, 2).expect("k <= n"));
            sign(k) * c(n, k).pow(3) * omega * &third
        })
        .sum()
}

/// `sum_{k=1}^n C(n,k)^2 C(n+k,k)^2 {1 + 2k H_{n+k} + 2k H_{n-k} - 4 w_k H_k}`
/// with `w_k = 1` in printed mode and `w_k = k` in corrected mode.
pub fn beukers_sum(n: u32, mode: ErratumMode) -> Result<Rational> {
    if n == 0 {
        return Err(Error::domain("beukers sum needs n >= 1"));
    }
    Ok((1..=n)
        .map(|k| {
            let hk_weight = match mode {
                ErratumMode::Printed => q(4),
                ErratumMode::Corrected => q(4 * k),
            };
            let bracket = Rational::one() + q(2 * k) * hn(n + k, 1) + q(2 * k) * hn(n - k, 1)
                - hk_weight * hn(k, 1);
            c(n, k).pow(2) * c(n + k, k).pow(2) * bracket
        })
        .sum())
}

/// `sum_{k=1}^n k^2 C(n,k)^2 C(n+k,k)^2 {1/k + H_{n+k} + H_{n-k} - 2 H_k}`,
/// which equals `n (n+1)`.
pub fn example7_sum(n: u32) -> Rational {
    (1..=n)
        .map(|k| {
            let bracket = Rational::frac(1, k as i64) + hn(n + k, 1) + hn(n - k, 1)
                - q(2) * hn(k, 1);
            q(k * k) * c(n, k).pow(2) * c(n + k, k).pow(2) * bracket
        })
        .sum()
}

/// Both sides of the identity attached to the mixed-sign families, in the
/// form `(lhs, rhs)`.
pub fn mixed_identity_check(family: Family, n: u32) -> Result<(Rational, Rational)> {
    if n == 0 {
        return Err(Error::domain("mixed identities need n >= 1"));
    }
    let np1 = q(n + 1);
    match family {
        Family::Ex8 => {
            let lhs = (1..=n)
                .map(|k| {
                    (sign(k) * c(2 * n, n + k)).checked_div(&(&np1 * c(n + k, n + 1)))
                })
                .sum::<Result<Rational>>()?;
            let rhs = (0..=n)
                .map(|k| {
                    let bracket = q(2) * hn(n - k, 1) - hn(k, 1) - hn(n + k, 1);
                    c(n, k) * c(2 * n, n + k) * bracket
                })
                .sum();
            Ok((lhs, rhs))
        }
        Family::Ex9 => {
            let inner = (1..=n)
                .map(|k| (sign(k) * c(2 * n, n + k)).checked_div(&c(n + k, n + 1).pow(2)))
                .sum::<Result<Rational>>()?;
            let lhs = (Rational::from(-2) * inner).checked_div(&np1.pow(2))?;
            let rhs = (0..=n)
                .map(|k| {
                    let a = q(2) * hn(k, 1) + hn(n + k, 1) - q(3) * hn(n - k, 1);
                    let b = q(2) * hn(k, 2) + hn(n + k, 2) + q(3) * hn(n - k, 2);
                    sign(k) * c(n, k).pow(2) * c(2 * n, n + k) * (a.pow(2) + b)
                })
                .sum();
            Ok((lhs, rhs))
        }
        Family::Ex10 => {
            let lhs = (0..=n)
                .map(|k| {
                    let a = hn(k, 1) + q(2) * hn(n + k, 1) - q(3) * hn(n - k, 1);
                    let b = hn(k, 2) + q(2) * hn(n + k, 2) + q(3) * hn(n - k, 2);
                    sign(k) * c(n, k) * c(2 * n, n + k).pow(2) * (a.pow(2) + b)
                })
                .sum();
            let inner = (1..=n)
                .map(|k| {
                    let bracket = q(3) * hn(n + k, 1) - hn(k - 1, 1) - q(2) * hn(n - k, 1);
                    (c(2 * n, n + k).pow(2) * bracket).checked_div(&c(n + k, n + 1))
                })
                .sum::<Result<Rational>>()?;
            let rhs = (q(2) * inner).checked_div(&np1)?;
            Ok((lhs, rhs))
        }
        f => Err(Error::usage(format!("{f} has no mixed identity"))),
    }
}

fn check_theta(n: u32, theta: u32) -> Result<()> {
    if theta >= 4 + 4 * n {
        return Err(Error::domain(format!(
            "theta sum needs theta < 4 + 4n (theta = {theta}, n = {n})"
        )));
    }
    Ok(())
}

/// `sum_k k^{theta-3} C(n,k)^4 {cubic bracket}`, with the `k = 0` term read
/// as the constant coefficient of the Laurent product in `k`.
pub fn theta_sum(n: u32, theta: u32) -> Result<Rational> {
    check_theta(n, theta)?;
    (0..=n)
        .map(|k| Ok(c(n, k).pow(4) * theta_bracket(n, k, theta, 3)?))
        .sum()
}

/// `0` for `theta <= 2 + 4n`, `6 (n!)^4` at `theta = 3 + 4n`.
pub fn theta_expected(n: u32, theta: u32) -> Result<Rational> {
    check_theta(n, theta)?;
    if theta == 3 + 4 * n {
        Ok(q(6) * factorial_q(n).pow(4))
    } else {
        Ok(Rational::zero())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityReport {
    pub id: &'static str,
    pub params: Value,
    pub computed: Rational,
    pub expected: Rational,
    pub verdict: Verdict,
}

impl IdentityReport {
    fn new(id: &'static str, params: Value, computed: Rational, expected: Rational) -> Self {
        let verdict = if computed == expected {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        IdentityReport {
            id,
            params,
            computed,
            expected,
            verdict,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Corollary,
    Hardest,
    Beukers,
    Example7,
    Mixed,
    Theta,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Corollary,
        Suite::Hardest,
        Suite::Beukers,
        Suite::Example7,
        Suite::Mixed,
        Suite::Theta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Corollary => "corollary",
            Suite::Hardest => "hardest",
            Suite::Beukers => "beukers",
            Suite::Example7 => "example7",
            Suite::Mixed => "mixed",
            Suite::Theta => "theta",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::usage(format!("unknown suite {s:?}")))
    }
}

/// Parameter ranges for [`run_suite`]. `mu` defaults to `0..=lambda` and
/// `theta` to `0..=3+4n` per tuple.
#[derive(Clone, Debug)]
pub struct SuiteRanges {
    pub n: RangeInclusive<u32>,
    pub lambda: RangeInclusive<u32>,
    pub mu: Option<RangeInclusive<u32>>,
    pub theta: Option<RangeInclusive<u32>>,
    pub mode: ErratumMode,
    pub families: Vec<Family>,
}

impl SuiteRanges {
    pub fn new(n: RangeInclusive<u32>) -> Self {
        SuiteRanges {
            n,
            lambda: 1..=5,
            mu: None,
            theta: None,
            mode: ErratumMode::default(),
            families: vec![Family::Ex8, Family::Ex9, Family::Ex10],
        }
    }
}

#[derive(Clone, Debug)]
enum Case {
    Corollary(u32, u32, u32),
    Hardest(u32),
    Beukers(u32, ErratumMode),
    Example7(u32),
    Mixed(Family, u32),
    Theta(u32, u32),
}

impl Case {
    fn report(&self) -> Result<IdentityReport> {
        Ok(match *self {
            Case::Corollary(n, l, m) => IdentityReport::new(
                "corollary",
                json!({"n": n, "lambda": l, "mu": m}),
                corollary_sum(n, l, m)?,
                corollary_expected(n, l, m)?,
            ),
            Case::Hardest(n) => IdentityReport::new(
                "hardest-challenge",
                json!({"n": n}),
                hardest_challenge_sum(n),
                Rational::zero(),
            ),
            Case::Beukers(n, mode) => IdentityReport::new(
                "beukers",
                json!({"n": n, "mode": mode}),
                beukers_sum(n, mode)?,
                Rational::zero(),
            ),
            Case::Example7(n) => IdentityReport::new(
                "example7",
                json!({"n": n}),
                example7_sum(n),
                q(n * (n + 1)),
            ),
            Case::Mixed(f, n) => {
                let (lhs, rhs) = mixed_identity_check(f, n)?;
                IdentityReport::new("mixed", json!({"family": f, "n": n}), lhs, rhs)
            }
            Case::Theta(n, t) => IdentityReport::new(
                "theta",
                json!({"n": n, "theta": t}),
                theta_sum(n, t)?,
                theta_expected(n, t)?,
            ),
        })
    }
}

fn cases(suite: Suite, r: &SuiteRanges) -> Vec<Case> {
    let ns = r.n.clone();
    match suite {
        Suite::Corollary => ns
            .flat_map(|n| {
                r.lambda.clone().flat_map(move |l| {
                    let mus = r.mu.clone().unwrap_or(0..=l);
                    mus.filter(move |&m| l >= 1 && properness(n, l, m) >= 1)
                        .map(move |m| Case::Corollary(n, l, m))
                })
            })
            .collect(),
        Suite::Hardest => ns.map(Case::Hardest).collect(),
        Suite::Beukers => ns.filter(|&n| n >= 1).map(|n| Case::Beukers(n, r.mode)).collect(),
        Suite::Example7 => ns.map(Case::Example7).collect(),
        Suite::Mixed => r
            .families
            .iter()
            .flat_map(|&f| ns.clone().filter(|&n| n >= 1).map(move |n| Case::Mixed(f, n)))
            .collect(),
        Suite::Theta => ns
            .flat_map(|n| {
                let thetas = r.theta.clone().unwrap_or(0..=3 + 4 * n);
                thetas.filter(move |&t| t < 4 + 4 * n).map(move |t| Case::Theta(n, t))
            })
            .collect(),
    }
}

/// One report per admissible parameter tuple, in lexicographic parameter
/// order. Tuples outside an identity's domain are skipped; a selection with
/// no admissible tuple is a usage error.
pub fn run_suite(suite: Suite, ranges: &SuiteRanges) -> Result<Vec<IdentityReport>> {
    let cases = cases(suite, ranges);
    if cases.is_empty() {
        return Err(Error::usage(format!("ranges select no {suite} parameters")));
    }
    cases.par_iter().map(Case::report).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pfd_engine::{build_family_spec, oracle_decompose, FamilyParams};

    fn r(v: i64) -> Rational {
        Rational::from(v)
    }

    fn oracle_residue_sum(p: &FamilyParams) -> Rational {
        oracle_decompose(&build_family_spec(p).unwrap()).unwrap().residue_sum()
    }

    fn oracle_positive_residues(p: &FamilyParams) -> Rational {
        let pfd = oracle_decompose(&build_family_spec(p).unwrap()).unwrap();
        pfd.terms
            .iter()
            .filter(|(root, _)| !root.is_negative() && !root.is_zero())
            .map(|(_, c)| c[0].clone())
            .sum()
    }

    #[test]
    fn corollary_examples() {
        assert_eq!(corollary_sum(1, 2, 0).unwrap(), r(0));
        assert_eq!(corollary_sum(2, 1, 1).unwrap(), r(1));
        assert_eq!(corollary_sum(2, 3, 1).unwrap(), r(0));
        assert_eq!(corollary_expected(3, 1, 1).unwrap(), r(-1));
        assert!(matches!(corollary_sum(1, 1, 2), Err(Error::Domain(_))));
    }

    #[test]
    fn hardest_examples() {
        for n in [0, 1, 7] {
            assert_eq!(hardest_challenge_sum(n), r(0));
        }
        for n in 0..=8 {
            assert_eq!(hardest_challenge_sum(n), hardest_challenge_via_omega(n));
        }
    }

    #[test]
    fn beukers_examples() {
        assert_eq!(beukers_sum(1, ErratumMode::Printed).unwrap(), r(0));
        assert_eq!(beukers_sum(2, ErratumMode::Corrected).unwrap(), r(0));
        assert_eq!(beukers_sum(2, ErratumMode::Printed).unwrap(), r(216));
        assert!(beukers_sum(0, ErratumMode::Corrected).is_err());
    }

    #[test]
    fn example7_examples() {
        assert_eq!(example7_sum(0), r(0));
        assert_eq!(example7_sum(1), r(2));
        assert_eq!(example7_sum(2), r(6));
    }

    #[test]
    fn mixed_examples() {
        assert_eq!(
            mixed_identity_check(Family::Ex8, 1).unwrap(),
            (Rational::frac(-1, 2), Rational::frac(-1, 2))
        );
        for f in [Family::Ex9, Family::Ex10] {
            let (l, rr) = mixed_identity_check(f, 1).unwrap();
            assert_eq!(l, rr);
        }
        assert!(matches!(mixed_identity_check(Family::Ex7, 1), Err(Error::Usage(_))));
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta_sum(0, 3).unwrap(), r(6));
        assert_eq!(theta_sum(1, 0).unwrap(), r(0));
        assert_eq!(theta_sum(1, 7).unwrap(), r(6));
        assert!(matches!(theta_sum(1, 8), Err(Error::Domain(_))));
    }

    #[test]
    fn sums_agree_with_oracle_residues() {
        for n in 1..=6 {
            for lambda in 1..=3 {
                for mu in 0..=lambda {
                    let p = FamilyParams::theorem(n, lambda, mu);
                    assert_eq!(
                        corollary_sum(n, lambda, mu).unwrap(),
                        factorial_q(lambda - 1) * oracle_residue_sum(&p)
                    );
                }
            }
            let hard = oracle_residue_sum(&FamilyParams::theorem(n, 3, 0));
            assert_eq!(hardest_challenge_sum(n), Rational::frac(2, 3) * hard);

            let b = oracle_residue_sum(&FamilyParams::new(Family::Beukers6, n));
            assert_eq!(beukers_sum(n, ErratumMode::Corrected).unwrap(), b - r(1));

            let e7 = oracle_residue_sum(&FamilyParams::new(Family::Ex7, n));
            assert_eq!(example7_sum(n) * r(-2), e7);

            let pos8 = oracle_positive_residues(&FamilyParams::new(Family::Ex8, n));
            assert_eq!(mixed_identity_check(Family::Ex8, n).unwrap().0, pos8);
            let pos9 = oracle_positive_residues(&FamilyParams::new(Family::Ex9, n));
            assert_eq!(mixed_identity_check(Family::Ex9, n).unwrap().0, r(-2) * pos9);
            let pos10 = oracle_positive_residues(&FamilyParams::new(Family::Ex10, n));
            assert_eq!(mixed_identity_check(Family::Ex10, n).unwrap().1, r(-2) * pos10);

            for theta in 0..4 + 4 * n {
                let res = oracle_residue_sum(&FamilyParams::theta(n, theta));
                let signed = sign(theta + 3) * r(6) * res;
                assert_eq!(theta_sum(n, theta).unwrap(), signed, "theta {theta}");
            }
        }
    }

    #[test]
    fn suites() {
        let mut ranges = SuiteRanges::new(1..=5);
        ranges.lambda = 2..=3;
        let reports = run_suite(Suite::Corollary, &ranges).unwrap();
        assert_eq!(reports.len(), 5 * (3 + 4));
        assert!(reports.iter().all(IdentityReport::passed));

        let reports = run_suite(Suite::Beukers, &SuiteRanges::new(1..=10)).unwrap();
        assert!(reports.iter().all(IdentityReport::passed));

        let mut printed = SuiteRanges::new(2..=2);
        printed.mode = ErratumMode::Printed;
        let reports = run_suite(Suite::Beukers, &printed).unwrap();
        assert_eq!(reports.len(), 1);
        assert_eq!(reports[0].verdict, Verdict::Fail);
        assert_eq!(reports[0].computed, r(216));
        assert_eq!(reports[0].expected, r(0));

        assert!(matches!(run_suite(Suite::Beukers, &SuiteRanges::new(0..=0)), Err(Error::Usage(_))));
        assert!(matches!("apery".parse::<Suite>(), Err(Error::Usage(_))));
    }

    #[test]
    fn report_json_shape() {
        let reports = run_suite(Suite::Example7, &SuiteRanges::new(2..=2)).unwrap();
        let v = serde_json::to_value(&reports[0]).unwrap();
        assert_eq!(
            v,
            json!({"id": "example7", "params": {"n": 2}, "computed": "6", "expected": "6", "verdict": "pass"})
        );
    }
}
