//! Symbolic Omega coefficients as polynomials in harmonic indeterminates.
//!
//! Indeterminates: `L` and `M` stand for the exponents `lam` and `mu`;
//! `g_i` stands for `Hcal_i(x)` and `h_i` for `H_i(x)`. Two independent
//! constructions of `Omega_l` are provided, the closed partition sum and the
//! differential recurrence `Omega_{l+1} = (D - L g_1 - M h_1) Omega_l`, and
//! they must agree as canonical polynomials.

mod poly;
pub mod reference;
pub mod tables;

use std::fmt;

pub use poly::{Monomial, Poly};

use crate::error::{Error, Result};
use crate::exact_arith::Rational;
use crate::harmonic::hn;
use crate::partitions::enumerate_partitions;

/// Indeterminates of [`SymPoly`], ordered `L < M < g_1 < h_1 < g_2 < h_2 < ...`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum SymVar {
    L,
    M,
    /// `g_i`, i.e. `Hcal_i(x)`.
    G(u32),
    /// `h_i`, i.e. `H_i(x)`.
    H(u32),
}

impl SymVar {
    fn key(&self) -> (u32, u32) {
        match *self {
            SymVar::L => (0, 0),
            SymVar::M => (0, 1),
            SymVar::G(i) => (i, 0),
            SymVar::H(i) => (i, 1),
        }
    }
}

impl Ord for SymVar {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for SymVar {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SymVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymVar::L => write!(f, "L"),
            SymVar::M => write!(f, "M"),
            SymVar::G(i) => write!(f, "g{i}"),
            SymVar::H(i) => write!(f, "h{i}"),
        }
    }
}

pub type SymPoly = Poly<SymVar>;

/// Largest harmonic index present; the ring grows on demand so this is
/// informational only.
pub fn depth(p: &SymPoly) -> u32 {
    p.variables()
        .iter()
        .map(|v| match v {
            SymVar::G(i) | SymVar::H(i) => *i,
            _ => 0,
        })
        .max()
        .unwrap_or(0)
}

/// The derivation `D g_j = -j g_{j+1}`, `D h_j = j h_{j+1}`, `D L = D M = 0`.
pub fn sym_derive(p: &SymPoly) -> SymPoly {
    p.derive_with(|v| match *v {
        SymVar::L | SymVar::M => SymPoly::zero(),
        SymVar::G(j) => SymPoly::var(SymVar::G(j + 1)).scale(&-Rational::from(j)),
        SymVar::H(j) => SymPoly::var(SymVar::H(j + 1)).scale(&Rational::from(j)),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OmegaMethod {
    PartitionSum,
    Recurrence,
}

/// `L g_i - (-1)^i M h_i`
fn bell_base(i: u32) -> SymPoly {
    let g = SymPoly::var(SymVar::L) * SymPoly::var(SymVar::G(i));
    let h = SymPoly::var(SymVar::M) * SymPoly::var(SymVar::H(i));
    if i.is_multiple_of(2) {
        g - h
    } else {
        g + h
    }
}

pub fn omega_symbolic(ell: u32, method: OmegaMethod) -> SymPoly {
    match method {
        OmegaMethod::PartitionSum => omega_partition_sum(ell),
        OmegaMethod::Recurrence => omega_recurrence(ell),
    }
}

fn omega_partition_sum(ell: u32) -> SymPoly {
    let mut total = SymPoly::zero();
    for p in enumerate_partitions(ell) {
        let mut term = SymPoly::constant(Rational::from_integer(p.cycle_count()));
        for (i, m) in p.parts() {
            term = &term * &bell_base(i).pow(m);
        }
        total = total + term;
    }
    total.scale(&Rational::sign_power(ell as u64))
}

fn omega_recurrence(ell: u32) -> SymPoly {
    let step = SymPoly::var(SymVar::L) * SymPoly::var(SymVar::G(1))
        + SymPoly::var(SymVar::M) * SymPoly::var(SymVar::H(1));
    let mut omega = SymPoly::one();
    for _ in 0..ell {
        omega = sym_derive(&omega) - &step * &omega;
    }
    omega
}

/// Evaluates at `x = -k`: `g_i -> H_{n-k}^<i> + (-1)^i H_k^<i>`,
/// `h_i -> H_{n+k}^<i> - H_k^<i>`, `L -> lam`, `M -> mu`.
pub fn evaluate_sym(p: &SymPoly, n: u32, k: u32, lambda: &Rational, mu: &Rational) -> Result<Rational> {
    if k > n {
        return Err(Error::domain(format!("k = {k} exceeds n = {n}")));
    }
    p.evaluate(|v| {
        Ok(match *v {
            SymVar::L => lambda.clone(),
            SymVar::M => mu.clone(),
            SymVar::G(i) => hn(n - k, i) + Rational::sign_power(i as u64) * hn(k, i),
            SymVar::H(i) => hn(n + k, i) - hn(k, i),
        })
    })
}

/// Indeterminates of the harmonic-atom basis in which reference tables are
/// written: `lam`, `mu`, `H_k^<i>`, `H_{n-k}^<i>`, `H_{n+k}^<i>`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Atom {
    Lambda,
    Mu,
    /// `H_k^<i>`
    Hk(u32),
    /// `H_{n-k}^<i>`
    Hnk(u32),
    /// `H_{n+k}^<i>`
    Hpk(u32),
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sup = |i: &u32| if *i == 1 { String::new() } else { format!("<{i}>") };
        match self {
            Atom::Lambda => write!(f, "lam"),
            Atom::Mu => write!(f, "mu"),
            Atom::Hk(i) => write!(f, "H{}[k]", sup(i)),
            Atom::Hnk(i) => write!(f, "H{}[n-k]", sup(i)),
            Atom::Hpk(i) => write!(f, "H{}[n+k]", sup(i)),
        }
    }
}

pub type AtomPoly = Poly<Atom>;

/// Rewrites a [`SymPoly`] at `x = -k` in the harmonic-atom basis. The map is
/// injective, so equality after rewriting is equality before.
pub fn to_atoms(p: &SymPoly) -> AtomPoly {
    p.substitute(|v| match *v {
        SymVar::L => AtomPoly::var(Atom::Lambda),
        SymVar::M => AtomPoly::var(Atom::Mu),
        SymVar::G(i) => {
            AtomPoly::var(Atom::Hnk(i)) + AtomPoly::var(Atom::Hk(i)).scale(&Rational::sign_power(i as u64))
        }
        SymVar::H(i) => AtomPoly::var(Atom::Hpk(i)) - AtomPoly::var(Atom::Hk(i)),
    })
}

/// Which coefficient family a table or reference entry describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TableKind {
    /// `Omega_l(lam, mu, -k)`
    Omega,
    /// `varpi_l(lam, -k) = Omega_l(lam, 0, -k)`
    Varpi,
    /// `omega_l(mu, -k) = Omega_l(0, mu, -k)`
    OmegaSmall,
}

impl TableKind {
    pub fn name(&self) -> &'static str {
        match self {
            TableKind::Omega => "omega",
            TableKind::Varpi => "varpi",
            TableKind::OmegaSmall => "omega-small",
        }
    }
}

impl std::str::FromStr for TableKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "omega" | "Omega" => Ok(TableKind::Omega),
            "varpi" => Ok(TableKind::Varpi),
            "omega-small" | "omega_small" => Ok(TableKind::OmegaSmall),
            _ => Err(Error::usage(format!("unknown table kind {s:?}"))),
        }
    }
}

/// `Omega_l`, or its `M = 0` / `L = 0` specialization.
pub fn coefficient_symbolic(kind: TableKind, ell: u32) -> SymPoly {
    let omega = omega_symbolic(ell, OmegaMethod::PartitionSum);
    match kind {
        TableKind::Omega => omega,
        TableKind::Varpi => omega.specialize(&SymVar::M, &Rational::zero()),
        TableKind::OmegaSmall => omega.specialize(&SymVar::L, &Rational::zero()),
    }
}
