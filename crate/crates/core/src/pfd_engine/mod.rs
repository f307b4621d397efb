//! Partial-fraction decomposition of rational functions with rational poles.
//!
//! [`theorem_decompose`] and [`example_decompose`] produce decompositions
//! from closed-form coefficient formulas; [`oracle_decompose`] computes the
//! same thing by polynomial division and an exact linear solve, and
//! [`verify_equal`] certifies a decomposition against its rational function.

mod families;
mod linsolve;
mod oracle;
mod polynomial;
mod spec;
mod theorem;
mod verify;

pub use families::{build_family_spec, example_decompose, ErratumMode, Family, FamilyParams};
pub(crate) use families::theta_bracket;
pub use linsolve::solve;
pub use oracle::oracle_decompose;
pub use polynomial::Polynomial;
pub use spec::{PfdResult, Pole, RationalFunctionSpec};
pub use theorem::theorem_decompose;
pub(crate) use theorem::properness;
pub use verify::{verify_equal, Certificate};

use crate::error::Result;
use crate::exact_arith::Rational;

/// Decomposes any family instance by its closed form.
pub fn decompose_family(params: &FamilyParams) -> Result<PfdResult> {
    params.validate()?;
    match params.family {
        Family::Theorem => theorem_decompose(params.n, params.lambda, params.mu),
        _ => example_decompose(params),
    }
}

/// Half-integers `0 + 1/2, 1 + 1/2, ...` with `skip` points removed.
pub(crate) struct SamplePoints<F> {
    next: i64,
    skip: F,
}

impl<F: Fn(&Rational) -> bool> SamplePoints<F> {
    pub(crate) fn avoiding(skip: F) -> Self {
        SamplePoints { next: 0, skip }
    }
}

impl<F: Fn(&Rational) -> bool> Iterator for SamplePoints<F> {
    type Item = Rational;
    fn next(&mut self) -> Option<Rational> {
        loop {
            let x = Rational::frac(2 * self.next + 1, 2);
            self.next += 1;
            if !(self.skip)(&x) {
                return Some(x);
            }
        }
    }
}
