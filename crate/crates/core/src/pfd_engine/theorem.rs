use super::spec::PfdResult;
use crate::bell_coeffs::{omega_coeff, BellArgs};
use crate::error::{Error, Result};
use crate::exact_arith::{binom_q, factorial_q, Rational};

/// `lam + (lam - mu) n`, the degree gap between denominator and numerator
/// plus one.
pub(crate) fn properness(n: u32, lambda: u32, mu: u32) -> i64 {
    lambda as i64 + (lambda as i64 - mu as i64) * n as i64
}

/// Closed-form decomposition of `(n!)^{lam-mu} (1-x)_n^mu / (x)_{n+1}^lam`.
///
/// At pole `-k` the coefficient of `1/(x+k)^{lam-l}` is
/// `(-1)^{k lam} C(n,k)^lam C(n+k,k)^mu Omega_l(lam, mu, -k) / l!`.
pub fn theorem_decompose(n: u32, lambda: u32, mu: u32) -> Result<PfdResult> {
    if lambda == 0 {
        return Err(Error::domain("lambda must be positive"));
    }
    if properness(n, lambda, mu) <= 0 {
        return Err(Error::domain(format!(
            "lambda + (lambda - mu) n must be positive (lambda = {lambda}, mu = {mu}, n = {n})"
        )));
    }
    let mut out = PfdResult::default();
    for k in 0..=n {
        let weight = Rational::sign_power(k as u64 * lambda as u64)
            * binom_q(n as u64, k as u64).pow(lambda)
            * binom_q((n + k) as u64, k as u64).pow(mu);
        let mut coeffs = vec![Rational::zero(); lambda as usize];
        for ell in 0..lambda {
            let omega = omega_coeff(&BellArgs::new(lambda, mu, n, k, ell)?);
            coeffs[(lambda - ell - 1) as usize] = &weight * omega * factorial_q(ell).recip()?;
        }
        out.terms.insert(-Rational::from(k), coeffs);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn small_cases() {
        let p = theorem_decompose(1, 1, 0).unwrap();
        assert_eq!(p.terms[&q(0)], vec![q(1)]);
        assert_eq!(p.terms[&q(-1)], vec![q(-1)]);

        let p = theorem_decompose(1, 1, 1).unwrap();
        assert_eq!(p.terms[&q(0)], vec![q(1)]);
        assert_eq!(p.terms[&q(-1)], vec![q(-2)]);

        let p = theorem_decompose(2, 2, 0).unwrap();
        assert_eq!(p.terms[&q(0)], vec![q(-3), q(1)]);
        assert_eq!(p.terms[&q(-1)], vec![q(0), q(4)]);
        assert_eq!(p.terms[&q(-2)], vec![q(3), q(1)]);
        assert!(p.polynomial_part.is_zero());
    }

    #[test]
    fn rejects_improper() {
        assert!(matches!(theorem_decompose(1, 1, 2), Err(Error::Domain(_))));
        assert!(matches!(theorem_decompose(3, 0, 0), Err(Error::Domain(_))));
        assert!(theorem_decompose(0, 1, 7).is_ok());
    }
}
