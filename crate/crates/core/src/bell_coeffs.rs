//! Numeric Bell-polynomial coefficients at `x = -k`.
//!
//! All three families share the shape
//! `l! * sum_{partitions} weight(parts) * prod_i base_i^{m_i} / (m_i! i^{m_i})`
//! and differ only in the bases and the per-partition weight:
//!
//! | coefficient | base `i`                                                      | weight      |
//! |-------------|---------------------------------------------------------------|-------------|
//! | Omega       | `lam [H_k^<i> + (-1)^i H_{n-k}^<i>] + mu [H_k^<i> - H_{n+k}^<i>]` | 1           |
//! | varpi       | `H_k^<i> + (-1)^i H_{n-k}^<i>`                                 | `lam^parts` |
//! | omega       | `H_k^<i> - H_{n+k}^<i>`                                        | `mu^parts`  |

use crate::error::{Error, Result};
use crate::exact_arith::{binom_q, Rational};
use crate::harmonic::hn;
use crate::partitions::enumerate_partitions;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BellArgs {
    pub lambda: u32,
    pub mu: u32,
    pub n: u32,
    pub k: u32,
    pub ell: u32,
}

impl BellArgs {
    pub fn new(lambda: u32, mu: u32, n: u32, k: u32, ell: u32) -> Result<Self> {
        check_k(n, k)?;
        Ok(BellArgs { lambda, mu, n, k, ell })
    }
}

fn check_k(n: u32, k: u32) -> Result<()> {
    if k > n {
        return Err(Error::domain(format!("k = {k} exceeds n = {n}")));
    }
    Ok(())
}

/// `H_k^<i> + (-1)^i H_{n-k}^<i>`
pub(crate) fn hcal_base(n: u32, k: u32, i: u32) -> Rational {
    let sign = Rational::sign_power(i as u64);
    hn(k, i) + sign * hn(n - k, i)
}

/// `H_k^<i> - H_{n+k}^<i>`
pub(crate) fn h_base(n: u32, k: u32, i: u32) -> Rational {
    hn(k, i) - hn(n + k, i)
}

/// `l! * sum_partitions weight(num_parts) * prod base[i-1]^{m_i} / (m_i! i^{m_i})`.
fn bell_sum(ell: u32, bases: &[Rational], weight: impl Fn(u32) -> Rational) -> Rational {
    let mut total = Rational::zero();
    for p in enumerate_partitions(ell) {
        let mut term = Rational::from_integer(p.cycle_count()) * weight(p.num_parts());
        for (i, m) in p.parts() {
            term *= bases[i as usize - 1].pow(m);
        }
        total += term;
    }
    total
}

pub fn omega_coeff(args: &BellArgs) -> Rational {
    let BellArgs { lambda, mu, n, k, ell } = *args;
    let lam = Rational::from(lambda);
    let mu = Rational::from(mu);
    let bases: Vec<Rational> = (1..=ell)
        .map(|i| &lam * hcal_base(n, k, i) + &mu * h_base(n, k, i))
        .collect();
    bell_sum(ell, &bases, |_| Rational::one())
}

pub fn varpi_coeff(lambda: u32, n: u32, k: u32, ell: u32) -> Result<Rational> {
    check_k(n, k)?;
    let bases: Vec<Rational> = (1..=ell).map(|i| hcal_base(n, k, i)).collect();
    let lam = Rational::from(lambda);
    Ok(bell_sum(ell, &bases, |m| lam.pow(m)))
}

pub fn omega_small_coeff(mu: u32, n: u32, k: u32, ell: u32) -> Result<Rational> {
    check_k(n, k)?;
    let bases: Vec<Rational> = (1..=ell).map(|i| h_base(n, k, i)).collect();
    let mu = Rational::from(mu);
    Ok(bell_sum(ell, &bases, |m| mu.pow(m)))
}

/// Leibniz route: `sum_i C(l, i) varpi_i(lam) omega_{l-i}(mu)`.
pub fn convolve_omega(args: &BellArgs) -> Rational {
    let BellArgs { lambda, mu, n, k, ell } = *args;
    (0..=ell)
        .map(|i| {
            let varpi = varpi_coeff(lambda, n, k, i).expect("k <= n checked by BellArgs");
            let omega = omega_small_coeff(mu, n, k, ell - i).expect("k <= n checked by BellArgs");
            binom_q(ell as u64, i as u64) * varpi * omega
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    fn args(lambda: u32, mu: u32, n: u32, k: u32, ell: u32) -> BellArgs {
        BellArgs::new(lambda, mu, n, k, ell).unwrap()
    }

    #[test]
    fn omega_examples() {
        for &(l, m, n, k) in &[(0, 0, 0, 0), (3, 2, 5, 2), (1, 4, 7, 7)] {
            assert_eq!(omega_coeff(&args(l, m, n, k, 0)), Rational::one());
        }
        assert_eq!(omega_coeff(&args(3, 0, 2, 0, 1)), q(-9, 2));
        assert_eq!(omega_coeff(&args(2, 0, 1, 1, 2)), Rational::from(6));
    }

    #[test]
    fn varpi_and_small_omega_examples() {
        assert_eq!(varpi_coeff(4, 3, 1, 0).unwrap(), Rational::one());
        assert_eq!(varpi_coeff(2, 3, 3, 1).unwrap(), q(11, 3));
        assert_eq!(varpi_coeff(1, 1, 0, 2).unwrap(), Rational::from(2));
        assert_eq!(omega_small_coeff(3, 2, 1, 0).unwrap(), Rational::one());
        assert_eq!(omega_small_coeff(1, 1, 0, 1).unwrap(), Rational::from(-1));
        assert_eq!(omega_small_coeff(1, 1, 0, 2).unwrap(), Rational::zero());
        assert!(varpi_coeff(1, 2, 3, 1).is_err());
        assert!(omega_small_coeff(1, 2, 3, 1).is_err());
        assert!(BellArgs::new(1, 1, 2, 3, 1).is_err());
    }

    #[test]
    fn convolution_examples() {
        assert_eq!(convolve_omega(&args(4, 2, 6, 3, 0)), Rational::one());
        let a = args(2, 3, 4, 1, 1);
        assert_eq!(
            convolve_omega(&a),
            varpi_coeff(2, 4, 1, 1).unwrap() + omega_small_coeff(3, 4, 1, 1).unwrap()
        );
        // Omega_1 = lam (H_k - H_{n-k}) + mu (H_k - H_{n+k})
        let expected = Rational::from(2) * (hn(1, 1) - hn(3, 1)) + Rational::from(3) * (hn(1, 1) - hn(5, 1));
        assert_eq!(omega_coeff(&a), expected);
        let b = args(2, 1, 2, 1, 2);
        assert_eq!(convolve_omega(&b), omega_coeff(&b));
    }

    #[test]
    fn convolution_matches_partition_sum_on_grid() {
        for lambda in 0..=5 {
            for mu in 0..=5 {
                for n in 0..=10 {
                    for k in 0..=n {
                        for ell in 0..=6 {
                            let a = args(lambda, mu, n, k, ell);
                            assert_eq!(convolve_omega(&a), omega_coeff(&a), "{a:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn degenerate_reductions() {
        for lambda in 0..=4 {
            for n in 0..=6 {
                for k in 0..=n {
                    for ell in 0..=5 {
                        assert_eq!(
                            omega_coeff(&args(lambda, 0, n, k, ell)),
                            varpi_coeff(lambda, n, k, ell).unwrap()
                        );
                        assert_eq!(
                            omega_coeff(&args(0, lambda, n, k, ell)),
                            omega_small_coeff(lambda, n, k, ell).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn varpi_first_order_is_antisymmetric() {
        for lambda in 0..=5 {
            for n in 0..=12 {
                for k in 0..=n {
                    let s = varpi_coeff(lambda, n, k, 1).unwrap() + varpi_coeff(lambda, n, n - k, 1).unwrap();
                    assert!(s.is_zero());
                }
            }
        }
    }
}
