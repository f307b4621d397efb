//! Harmonic-free ground truth: polynomial division followed by an exact
//! linear solve for the pole coefficients.

use super::linsolve::solve;
use super::spec::{PfdResult, RationalFunctionSpec};
use super::SamplePoints;
use crate::error::Result;
use crate::exact_arith::Rational;

pub fn oracle_decompose(spec: &RationalFunctionSpec) -> Result<PfdResult> {
    let q = spec.denominator();
    let top = spec.numerator().scale(spec.scalar());
    let (polynomial_part, rem) = top.div_rem(&q)?;

    let unknowns: Vec<(&Rational, u32)> = spec
        .poles()
        .iter()
        .flat_map(|p| (1..=p.multiplicity).map(move |t| (&p.root, t)))
        .collect();
    let size = unknowns.len();
    let mut rows = Vec::with_capacity(size);
    let mut rhs = Vec::with_capacity(size);
    for x in SamplePoints::avoiding(|x| spec.is_pole(x)).take(size) {
        let row = unknowns
            .iter()
            .map(|(root, t)| (&x - *root).pow(*t).recip())
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
        rhs.push(rem.eval(&x).checked_div(&q.eval(&x))?);
    }
    let solution = solve(&rows, &rhs)?;

    let mut out = PfdResult {
        polynomial_part,
        ..Default::default()
    };
    let mut it = solution.into_iter();
    for p in spec.poles() {
        out.terms
            .insert(p.root.clone(), it.by_ref().take(p.multiplicity as usize).collect());
    }
    Ok(out)
}
