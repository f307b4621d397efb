//! The full acceptance sweep: every check that the crate's formulas agree
//! with their oracles and closed forms, gathered into one JSON report.

use rayon::prelude::*;
use serde::Serialize;

use crate::bell_coeffs::{convolve_omega, omega_coeff, BellArgs};
use crate::error::{Error, Result};
use crate::exact_arith::{binom_q, Rational};
use crate::harmonic::hn;
use crate::identities::{
    beukers_sum, corollary_expected, corollary_sum, example7_sum, hardest_challenge_sum,
    hardest_challenge_via_omega, mixed_identity_check, theta_expected, theta_sum,
};
use crate::pfd_engine::{
    build_family_spec, decompose_family, oracle_decompose, theorem_decompose, verify_equal,
    Certificate, ErratumMode, Family, FamilyParams, PfdResult, Polynomial, RationalFunctionSpec,
};
use crate::symbolic::reference::{builtin_tables, check_against_reference};
use crate::symbolic::{evaluate_sym, omega_symbolic, OmegaMethod};

/// Environment variable holding the worker-thread count.
pub const WORKERS_ENV: &str = "PFRAC_WORKERS";

const MAX_LISTED_FAILURES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub id: u32,
    pub name: &'static str,
    pub checks: u64,
    pub failed: u64,
    /// The first few failing checks, in check order.
    pub failures: Vec<String>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub passed: bool,
    pub criteria: Vec<CriterionReport>,
}

impl SweepReport {
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self).map_err(|e| Error::Internal(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }
}

struct Tally {
    checks: u64,
    failed: u64,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checks: 0,
            failed: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_LISTED_FAILURES {
                self.failures.push(what());
            }
        }
    }

    /// Checks `got == want`, recording both on mismatch.
    fn eq(&mut self, label: impl FnOnce() -> String, got: &Rational, want: &Rational) {
        self.check(got == want, || format!("{}: got {got}, want {want}", label()));
    }

    fn result<T>(&mut self, label: impl FnOnce() -> String, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(false, || format!("{}: {e}", label()));
                None
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checks += other.checks;
        self.failed += other.failed;
        let room = MAX_LISTED_FAILURES - self.failures.len();
        self.failures.extend(other.failures.into_iter().take(room));
        self
    }

    fn finish(self, id: u32, name: &'static str) -> CriterionReport {
        CriterionReport {
            id,
            name,
            checks: self.checks,
            failed: self.failed,
            passed: self.failed == 0 && self.checks > 0,
            failures: self.failures,
        }
    }
}

/// Runs `f` over `items` in parallel and merges the tallies in item order.
fn par_tally<T: Sync>(items: &[T], f: impl Fn(&T, &mut Tally) + Sync + Send) -> Tally {
    items
        .par_iter()
        .map(|item| {
            let mut t = Tally::new();
            f(item, &mut t);
            t
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::new(), Tally::merge)
}

fn label(p: &FamilyParams) -> String {
    match p.family {
        Family::Theorem => format!("theorem n={} lambda={} mu={}", p.n, p.lambda, p.mu),
        Family::Theta => format!("theta n={} theta={}", p.n, p.theta),
        Family::Beukers6 => format!("beukers6 n={} mode={}", p.n, p.mode),
        f => format!("{f} n={}", p.n),
    }
}

/// One family instance with its closed-form and oracle decompositions.
struct Instance {
    params: FamilyParams,
    spec: RationalFunctionSpec,
    closed: Result<PfdResult>,
    oracle: Result<PfdResult>,
}

fn instance_params() -> Vec<FamilyParams> {
    let mut out = Vec::new();
    for n in 0..=6 {
        for lambda in 1..=5 {
            for mu in 0..=lambda {
                out.push(FamilyParams::theorem(n, lambda, mu));
            }
        }
    }
    for n in 1..=6 {
        out.push(FamilyParams::new(Family::Beukers6, n).with_mode(ErratumMode::Corrected));
    }
    for f in [Family::Ex7, Family::Ex8, Family::Ex9, Family::Ex10] {
        for n in 1..=6 {
            out.push(FamilyParams::new(f, n));
        }
    }
    for n in 0..=5 {
        for theta in 0..=3 + 4 * n {
            out.push(FamilyParams::theta(n, theta));
        }
    }
    out
}

fn build_instances() -> Result<Vec<Instance>> {
    instance_params()
        .into_par_iter()
        .map(|params| {
            let spec = build_family_spec(&params)?;
            Ok(Instance {
                closed: decompose_family(&params),
                oracle: oracle_decompose(&spec),
                params,
                spec,
            })
        })
        .collect()
}

/// Closed-form decomposition equals the oracle for every instance of the
/// selected families.
fn closed_vs_oracle(instances: &[Instance], families: &[Family]) -> Tally {
    let selected: Vec<&Instance> = instances
        .iter()
        .filter(|i| families.contains(&i.params.family))
        .collect();
    par_tally(&selected, |inst, t| {
        let l = label(&inst.params);
        let closed = t.result(|| format!("{l} closed form"), inst.closed.clone());
        let oracle = t.result(|| format!("{l} oracle"), inst.oracle.clone());
        if let (Some(c), Some(o)) = (closed, oracle) {
            t.check(c == o, || format!("{l}: closed form differs from oracle"));
        }
    })
}

fn c(n: u32, k: u32) -> Rational {
    binom_q(n as u64, k as u64)
}

/// Decompositions of `(n!)^lam / (x)_{n+1}^lam` for `lam = 1, 2, 3`, written
/// out term by term.
fn low_order_closed_form(lambda: u32, n: u32) -> PfdResult {
    let mut out = PfdResult::default();
    for k in 0..=n {
        let s = Rational::sign_power(k as u64);
        let d = hn(k, 1) - hn(n - k, 1);
        let coeffs = match lambda {
            1 => vec![s * c(n, k)],
            2 => {
                let w = c(n, k).pow(2);
                vec![Rational::from(2) * &w * d, w]
            }
            _ => {
                let w = s * c(n, k).pow(3);
                let simple = Rational::frac(3, 2)
                    * (Rational::from(3) * d.pow(2) + hn(k, 2) + hn(n - k, 2));
                vec![&w * simple, Rational::from(3) * &w * d, w]
            }
        };
        out.terms.insert(-Rational::from(k), coeffs);
    }
    out
}

fn criterion_2() -> Tally {
    let mut t = Tally::new();
    for lambda in 1..=3 {
        for n in 0..=8 {
            let got = t.result(
                || format!("theorem n={n} lambda={lambda}"),
                theorem_decompose(n, lambda, 0),
            );
            if let Some(got) = got {
                t.check(got == low_order_closed_form(lambda, n), || {
                    format!("lambda={lambda} n={n}: theorem differs from the term-by-term form")
                });
            }
        }
    }
    t
}

fn criterion_3() -> Tally {
    let mut cells = Vec::new();
    for lambda in 1..=5u32 {
        for mu in 0..=lambda {
            for n in 1..=25u32 {
                if lambda as i64 + (lambda as i64 - mu as i64) * n as i64 > 1 {
                    cells.push((n, lambda, mu));
                }
            }
        }
    }
    let mut t = par_tally(&cells, |&(n, l, m), t| {
        let lbl = || format!("corollary n={n} lambda={l} mu={m}");
        if let Some(v) = t.result(lbl, corollary_sum(n, l, m)) {
            t.eq(lbl, &v, &Rational::zero());
        }
    });
    for n in 0..=25 {
        let lbl = || format!("corollary boundary n={n}");
        if let Some(v) = t.result(lbl, corollary_sum(n, 1, 1)) {
            t.eq(lbl, &v, &Rational::sign_power(n as u64));
        }
        if let Some(v) = t.result(lbl, corollary_expected(n, 1, 1)) {
            t.eq(lbl, &v, &Rational::sign_power(n as u64));
        }
    }
    t
}

fn criterion_4() -> Tally {
    let ns: Vec<u32> = (0..=40).collect();
    par_tally(&ns, |&n, t| {
        let v = hardest_challenge_sum(n);
        t.eq(|| format!("hardest n={n}"), &v, &Rational::zero());
        t.eq(|| format!("hardest n={n} omega route"), &hardest_challenge_via_omega(n), &v);
    })
}

fn bell_grid() -> Vec<BellArgs> {
    let mut out = Vec::new();
    for lambda in 0..=5 {
        for mu in 0..=5 {
            for n in 0..=10 {
                for k in 0..=n {
                    for ell in 0..=6 {
                        out.push(BellArgs { lambda, mu, n, k, ell });
                    }
                }
            }
        }
    }
    out
}

fn criterion_5(grid: &[BellArgs]) -> Tally {
    let ells: Vec<u32> = (0..=6).collect();
    let sym = par_tally(&ells, |&ell, t| {
        let a = omega_symbolic(ell, OmegaMethod::PartitionSum);
        let b = omega_symbolic(ell, OmegaMethod::Recurrence);
        t.check(a == b, || format!("symbolic methods differ at order {ell}"));
    });
    let leibniz = par_tally(grid, |a, t| {
        t.eq(
            || format!("leibniz {a:?}"),
            &convolve_omega(a),
            &omega_coeff(a),
        );
    });
    sym.merge(leibniz)
}

fn criterion_6(grid: &[BellArgs]) -> Tally {
    let mut t = Tally::new();
    if let Some(entries) = t.result(|| "reference tables".into(), builtin_tables()) {
        let report = check_against_reference(&entries);
        t.check(report.entries_checked == 18, || {
            format!("expected 18 reference entries, found {}", report.entries_checked)
        });
        for entry in &entries {
            let erratum = report
                .errata
                .iter()
                .find(|e| e.kind == entry.kind.name() && e.ell == entry.ell);
            t.check(erratum.is_none(), || {
                let e = erratum.expect("checked above");
                format!(
                    "erratum {} order {}: reference {} vs computed {}",
                    e.kind, e.ell, e.reference_expanded, e.computed_expanded
                )
            });
        }
    }
    let polys: Vec<_> = (0..=6)
        .map(|l| omega_symbolic(l, OmegaMethod::PartitionSum))
        .collect();
    let eval = par_tally(grid, |a, t| {
        let lbl = || format!("evaluate_sym {a:?}");
        let got = evaluate_sym(
            &polys[a.ell as usize],
            a.n,
            a.k,
            &Rational::from(a.lambda),
            &Rational::from(a.mu),
        );
        if let Some(v) = t.result(lbl, got) {
            t.eq(lbl, &v, &omega_coeff(a));
        }
    });
    t.merge(eval)
}

fn criterion_7(instances: &[Instance]) -> Tally {
    let ns: Vec<u32> = (1..=25).collect();
    let mut t = par_tally(&ns, |&n, t| {
        let lbl = || format!("beukers corrected n={n}");
        if let Some(v) = t.result(lbl, beukers_sum(n, ErratumMode::Corrected)) {
            t.eq(lbl, &v, &Rational::zero());
        }
    });
    let lbl = || "beukers printed n=2".to_string();
    if let Some(v) = t.result(lbl, beukers_sum(2, ErratumMode::Printed)) {
        t.eq(lbl, &v, &Rational::from(216));
    }
    t.merge(closed_vs_oracle(instances, &[Family::Beukers6]))
}

fn criterion_8(instances: &[Instance]) -> Tally {
    let ns: Vec<u32> = (0..=25).collect();
    let mut t = par_tally(&ns, |&n, t| {
        t.eq(
            || format!("example7 n={n}"),
            &example7_sum(n),
            &Rational::from(n * (n + 1)),
        );
    });
    for inst in instances.iter().filter(|i| i.params.family == Family::Ex7) {
        if let Ok(p) = &inst.closed {
            t.check(p.polynomial_part == Polynomial::one(), || {
                format!("{}: polynomial part is {}", label(&inst.params), p.polynomial_part)
            });
        }
    }
    t.merge(closed_vs_oracle(instances, &[Family::Ex7]))
}

fn criterion_9(instances: &[Instance]) -> Tally {
    let mut cells = Vec::new();
    for f in [Family::Ex8, Family::Ex9, Family::Ex10] {
        for n in 1..=15 {
            cells.push((f, n));
        }
    }
    let t = par_tally(&cells, |&(f, n), t| {
        let lbl = || format!("{f} mixed identity n={n}");
        if let Some((lhs, rhs)) = t.result(lbl, mixed_identity_check(f, n)) {
            t.eq(lbl, &lhs, &rhs);
        }
    });
    t.merge(closed_vs_oracle(
        instances,
        &[Family::Ex8, Family::Ex9, Family::Ex10],
    ))
}

fn criterion_10(instances: &[Instance]) -> Tally {
    let mut cells = Vec::new();
    for n in 0..=5u32 {
        for theta in 0..=3 + 4 * n {
            cells.push((n, theta));
        }
    }
    let t = par_tally(&cells, |&(n, theta), t| {
        let lbl = || format!("theta sum n={n} theta={theta}");
        let want = if theta == 3 + 4 * n {
            theta_expected(n, theta)
        } else {
            Ok(Rational::zero())
        };
        if let (Some(v), Some(w)) = (t.result(lbl, theta_sum(n, theta)), t.result(lbl, want)) {
            t.eq(lbl, &v, &w);
        }
    });
    t.merge(closed_vs_oracle(instances, &[Family::Theta]))
}

fn criterion_11(instances: &[Instance]) -> Tally {
    par_tally(instances, |inst, t| {
        let l = label(&inst.params);
        for (which, r) in [("closed form", &inst.closed), ("oracle", &inst.oracle)] {
            if let Ok(p) = r {
                let cert = verify_equal(&inst.spec, p);
                t.check(cert.is_equal(), || format!("{l} {which}: {cert:?}"));
            }
        }
        let Ok(base) = &inst.closed else { return };
        for (root, coeffs) in &base.terms {
            for idx in 0..coeffs.len() {
                let mut bad = base.clone();
                bad.terms.get_mut(root).expect("root present")[idx] += Rational::one();
                let caught = matches!(
                    verify_equal(&inst.spec, &bad),
                    Certificate::Counterexample { .. }
                );
                t.check(caught, || {
                    format!("{l}: perturbation at root {root}, power {} not caught", idx + 1)
                });
            }
        }
    })
}

fn criteria_1_to_11() -> Result<Vec<CriterionReport>> {
    let instances = build_instances()?;
    let grid = bell_grid();
    Ok(vec![
        closed_vs_oracle(&instances, &[Family::Theorem]).finish(1, "theorem-oracle"),
        criterion_2().finish(2, "low-order-specializations"),
        criterion_3().finish(3, "corollary-vanishing"),
        criterion_4().finish(4, "hardest-challenge"),
        criterion_5(&grid).finish(5, "symbolic-and-leibniz"),
        criterion_6(&grid).finish(6, "reference-tables"),
        criterion_7(&instances).finish(7, "beukers6"),
        criterion_8(&instances).finish(8, "example7"),
        criterion_9(&instances).finish(9, "mixed-families"),
        criterion_10(&instances).finish(10, "theta-family"),
        criterion_11(&instances).finish(11, "verification"),
    ])
}

/// Worker count from [`WORKERS_ENV`], or `None` for the default.
pub fn worker_count() -> Result<Option<usize>> {
    match std::env::var(WORKERS_ENV) {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(0) | Err(_) => Err(Error::usage(format!(
                "{WORKERS_ENV} must be a positive integer, got {s:?}"
            ))),
            Ok(n) => Ok(Some(n)),
        },
    }
}

fn pool(workers: Option<usize>) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.unwrap_or(0))
        .build()
        .map_err(|e| Error::Internal(e.to_string()))
}

/// Runs every criterion. The last one recomputes criteria 1-11 on a single
/// thread and requires the serialized result to match the parallel run
/// byte for byte.
pub fn run_sweep(workers: Option<usize>) -> Result<SweepReport> {
    let parallel = pool(workers)?.install(criteria_1_to_11)?;
    let serial = pool(Some(1))?.install(criteria_1_to_11)?;
    let bytes = |v: &Vec<CriterionReport>| serde_json::to_vec(v).map_err(|e| Error::Internal(e.to_string()));
    let mut t = Tally::new();
    t.check(bytes(&parallel)? == bytes(&serial)?, || {
        "parallel and single-threaded reports differ".into()
    });
    let mut criteria = parallel;
    criteria.push(t.finish(12, "determinism"));
    Ok(SweepReport {
        passed: criteria.iter().all(|c| c.passed),
        criteria,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_order_forms_match_theorem_small() {
        for lambda in 1..=3 {
            for n in 0..=3 {
                assert_eq!(
                    theorem_decompose(n, lambda, 0).unwrap(),
                    low_order_closed_form(lambda, n)
                );
            }
        }
    }

    #[test]
    fn tally_caps_listed_failures() {
        let mut t = Tally::new();
        for i in 0..50 {
            t.check(i % 2 == 0, || format!("odd {i}"));
        }
        let r = t.finish(0, "x");
        assert_eq!(r.checks, 50);
        assert_eq!(r.failed, 25);
        assert_eq!(r.failures.len(), MAX_LISTED_FAILURES);
        assert_eq!(r.failures[0], "odd 1");
        assert!(!r.passed);
    }

    #[test]
    fn instance_grid_size() {
        let p = instance_params();
        assert_eq!(p.iter().filter(|p| p.family == Family::Theorem).count(), 7 * 20);
        assert_eq!(p.iter().filter(|p| p.family == Family::Theta).count(), (0..=5).map(|n| 4 + 4 * n).sum::<usize>());
    }
}
