//! Table emission for Omega, varpi and omega in LaTeX (grouped bracket
//! style) and JSON (canonical monomial list).

use serde::Serialize;

use super::{coefficient_symbolic, depth, to_atoms, Atom, AtomPoly, SymPoly, SymVar, TableKind};
use crate::error::{Error, Result};
use crate::exact_arith::Rational;
use crate::partitions::enumerate_partitions;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Json,
    Latex,
}

impl std::str::FromStr for TableFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(TableFormat::Json),
            "latex" => Ok(TableFormat::Latex),
            _ => Err(Error::usage(format!("unknown table format {s:?}"))),
        }
    }
}

#[derive(Serialize)]
struct JsonMonomial {
    #[serde(rename = "L")]
    l: u32,
    #[serde(rename = "M")]
    m: u32,
    g: Vec<u32>,
    h: Vec<u32>,
}

#[derive(Serialize)]
struct JsonTerm {
    coefficient: Rational,
    monomial: JsonMonomial,
}

#[derive(Serialize)]
struct JsonEntry {
    ell: u32,
    terms: Vec<JsonTerm>,
}

fn json_entry(ell: u32, p: &SymPoly) -> JsonEntry {
    let d = depth(p) as usize;
    let terms = p
        .terms()
        .map(|(mono, c)| {
            let mut g = vec![0; d];
            let mut h = vec![0; d];
            let (mut l, mut m) = (0, 0);
            for (v, e) in mono.factors() {
                match *v {
                    SymVar::L => l = *e,
                    SymVar::M => m = *e,
                    SymVar::G(i) => g[i as usize - 1] = *e,
                    SymVar::H(i) => h[i as usize - 1] = *e,
                }
            }
            JsonTerm {
                coefficient: c.clone(),
                monomial: JsonMonomial { l, m, g, h },
            }
        })
        .collect();
    JsonEntry { ell, terms }
}

fn sup(i: u32) -> String {
    if i == 1 {
        String::new()
    } else {
        format!("^{{\\langle {i}\\rangle}}")
    }
}

/// Bracketed group `i` of the given kind, in LaTeX and in the atom basis.
fn group(kind: TableKind, i: u32) -> (String, AtomPoly) {
    let s = sup(i);
    let even = i.is_multiple_of(2);
    let hk = AtomPoly::var(Atom::Hk(i));
    let hcal = if even {
        &hk + &AtomPoly::var(Atom::Hnk(i))
    } else {
        &hk - &AtomPoly::var(Atom::Hnk(i))
    };
    let hcal_tex = format!("H_k{s}{}H_{{n-k}}{s}", if even { '+' } else { '-' });
    let hplain = &hk - &AtomPoly::var(Atom::Hpk(i));
    let hplain_tex = format!("H_k{s}-H_{{n+k}}{s}");
    match kind {
        TableKind::Omega => (
            format!("\\Big\\{{\\lambda\\big({hcal_tex}\\big)+\\mu\\big({hplain_tex}\\big)\\Big\\}}"),
            AtomPoly::var(Atom::Lambda) * hcal + AtomPoly::var(Atom::Mu) * hplain,
        ),
        TableKind::Varpi => (format!("\\Big\\{{{hcal_tex}\\Big\\}}"), hcal),
        TableKind::OmegaSmall => (format!("\\Big\\{{{hplain_tex}\\Big\\}}"), hplain),
    }
}

fn power_tex(base: &str, e: u32) -> String {
    if e == 1 {
        base.to_string()
    } else {
        format!("{base}^{{{e}}}")
    }
}

/// Grouped-bracket rendering of `p`, which must be the coefficient of the
/// given kind and order: the grouping is built from the partitions of `ell`
/// and checked to expand back to `p`.
pub fn render_grouped(kind: TableKind, ell: u32, p: &SymPoly) -> Result<String> {
    let mut terms = Vec::new();
    let mut expanded = AtomPoly::zero();
    for part in enumerate_partitions(ell) {
        let count = Rational::from_integer(part.cycle_count());
        let mut poly = AtomPoly::constant(count.clone());
        let mut pieces = Vec::new();
        if !count.is_one() {
            pieces.push(count.to_string());
        }
        let scalar = match kind {
            TableKind::Omega => None,
            TableKind::Varpi => Some((Atom::Lambda, "\\lambda")),
            TableKind::OmegaSmall => Some((Atom::Mu, "\\mu")),
        };
        if let Some((atom, tex)) = scalar {
            poly = &poly * &AtomPoly::var(atom).pow(part.num_parts());
            if part.num_parts() > 0 {
                pieces.push(power_tex(tex, part.num_parts()));
            }
        }
        let mut groups = Vec::new();
        for (i, m) in part.parts() {
            let (tex, g) = group(kind, i);
            poly = &poly * &g.pow(m);
            groups.push(power_tex(&tex, m));
        }
        let body = [pieces.join(""), groups.join("\\times")].concat();
        terms.push(if body.is_empty() { "1".to_string() } else { body });
        expanded = expanded + poly;
    }
    if expanded != to_atoms(p) {
        return Err(Error::Internal(format!(
            "grouped form of {} order {ell} does not expand to the given polynomial",
            kind.name()
        )));
    }
    Ok(terms.join("\n  + "))
}

fn latex_lhs(kind: TableKind, ell: u32) -> String {
    match kind {
        TableKind::Omega => format!("\\Omega_{{{ell}}}(\\lambda,\\mu,-k)"),
        TableKind::Varpi => format!("\\varpi_{{{ell}}}(\\lambda,-k)"),
        TableKind::OmegaSmall => format!("\\omega_{{{ell}}}(\\mu,-k)"),
    }
}

pub fn emit_table(kind: TableKind, ell_max: u32, format: TableFormat) -> Result<String> {
    let polys: Vec<SymPoly> = (0..=ell_max).map(|l| coefficient_symbolic(kind, l)).collect();
    match format {
        TableFormat::Json => {
            let entries: Vec<JsonEntry> = polys
                .iter()
                .enumerate()
                .map(|(l, p)| json_entry(l as u32, p))
                .collect();
            let mut s = serde_json::to_string_pretty(&entries).map_err(|e| Error::Internal(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        TableFormat::Latex => {
            let mut out = String::from("\\begin{align*}\n");
            for (l, p) in polys.iter().enumerate() {
                let l = l as u32;
                out.push_str(&format!(
                    "{} &= {}\\\\\n",
                    latex_lhs(kind, l),
                    render_grouped(kind, l, p)?
                ));
            }
            out.push_str("\\end{align*}\n");
            Ok(out)
        }
    }
}

/// Splits emitted LaTeX back into `(lhs, rhs)` pairs, one per order.
pub fn split_latex_rows(table: &str) -> Vec<(String, String)> {
    let body = table
        .trim()
        .trim_start_matches("\\begin{align*}")
        .trim_end_matches("\\end{align*}");
    body.split("\\\\\n")
        .filter_map(|row| row.split_once("&="))
        .map(|(l, r)| (l.trim().to_string(), r.trim().to_string()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::reference::{builtin_tables, parse_expression};
    use crate::symbolic::{omega_symbolic, OmegaMethod};

    #[test]
    fn varpi_first_order_latex() {
        let t = emit_table(TableKind::Varpi, 1, TableFormat::Latex).unwrap();
        let rows = split_latex_rows(&t);
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].1, "1");
        assert_eq!(rows[1].1, "\\lambda\\Big\\{H_k-H_{n-k}\\Big\\}");
    }

    #[test]
    fn omega_zero_json() {
        let t = emit_table(TableKind::Omega, 0, TableFormat::Json).unwrap();
        let v: serde_json::Value = serde_json::from_str(&t).unwrap();
        assert_eq!(
            v,
            serde_json::json!([{"ell": 0, "terms": [
                {"coefficient": "1", "monomial": {"L": 0, "M": 0, "g": [], "h": []}}
            ]}])
        );
    }

    #[test]
    fn json_monomials_follow_canonical_order() {
        let t = emit_table(TableKind::Omega, 1, TableFormat::Json).unwrap();
        let v: serde_json::Value = serde_json::from_str(&t).unwrap();
        assert_eq!(
            v[1]["terms"],
            serde_json::json!([
                {"coefficient": "-1", "monomial": {"L": 1, "M": 0, "g": [1], "h": [0]}},
                {"coefficient": "-1", "monomial": {"L": 0, "M": 1, "g": [0], "h": [1]}}
            ])
        );
    }

    #[test]
    fn emitted_latex_reparses_to_reference() {
        let reference = builtin_tables().unwrap();
        for kind in [TableKind::Omega, TableKind::Varpi, TableKind::OmegaSmall] {
            let t = emit_table(kind, 5, TableFormat::Latex).unwrap();
            let rows = split_latex_rows(&t);
            assert_eq!(rows.len(), 6);
            for (l, (_, rhs)) in rows.iter().enumerate() {
                let parsed = parse_expression(rhs).unwrap();
                let entry = reference
                    .iter()
                    .find(|e| e.kind == kind && e.ell == l as u32)
                    .unwrap();
                assert_eq!(parsed, entry.poly, "{kind:?} {l}");
            }
        }
    }

    #[test]
    fn grouping_rejects_foreign_polynomial() {
        let wrong = omega_symbolic(2, OmegaMethod::Recurrence);
        assert!(render_grouped(TableKind::Omega, 3, &wrong).is_err());
    }

    #[test]
    fn unknown_format_is_usage_error() {
        assert!(matches!("yaml".parse::<TableFormat>(), Err(Error::Usage(_))));
        assert!(matches!("sigma".parse::<TableKind>(), Err(Error::Usage(_))));
    }
}
