use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use spraylab::expr::Rational;
use spraylab::liealg::{LieAlgebra, Subspace};
use spraylab::{Check, Status};

use crate::document::Section;

/// `1/2*g2 - g3`, or `0`.
pub fn combination(names: &[String], coeffs: &[Rational]) -> String {
    let mut out = String::new();
    for (name, c) in names.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        if !mag.is_one() {
            out.push_str(&format!("{mag}*"));
        }
        out.push_str(name);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn subspace_value(names: &[String], s: &Subspace) -> Value {
    Value::from(
        s.basis()
            .iter()
            .map(|v| combination(names, v))
            .collect::<Vec<_>>(),
    )
}

pub fn default_names(m: usize) -> Vec<String> {
    (1..=m).map(|i| format!("e{i}")).collect()
}

/// Full battery on one algebra. Verdicts go to `data`; only validation and
/// the agreement of the semisimplicity criterion with the Killing form are
/// checks.
pub fn algebra_section(title: &str, names: &[String], a: &LieAlgebra) -> Section {
    let mut sec = Section::new(title);
    let m = a.dim();
    sec.data("dim", m);
    sec.data("basis", names.to_vec());
    let mut brackets = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let row = a.bracket_basis(i, j);
            if row.iter().any(|c| !c.is_zero()) {
                brackets.push(format!(
                    "[{}, {}] = {}",
                    names[i],
                    names[j],
                    combination(names, row)
                ));
            }
        }
    }
    sec.data("brackets", brackets);
    match a.validate() {
        Ok(r) => sec.report("", r),
        Err(e) => {
            sec.check(
                Check::new("structure constants valid", Status::Fail).with_notes(e.to_string()),
            );
            return sec;
        }
    }
    let k = a.killing_form();
    let matrix: Vec<Vec<String>> = k
        .matrix
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect();
    sec.data("killing_form", json!(matrix));
    sec.data("killing_determinant", k.det.to_string());
    sec.data(
        "killing_signature",
        json!({"pos": k.signature.pos, "neg": k.signature.neg, "zero": k.signature.zero}),
    );
    let derived = a.derived_ideal();
    sec.data("derived_ideal", subspace_value(names, &derived));
    sec.data("center", subspace_value(names, &a.center()));
    sec.data("radical", subspace_value(names, &a.radical()));
    let der = a.derivations();
    sec.data(
        "derivations",
        json!({"dimension": der.dimension, "inner_dimension": der.inner_dimension, "all_inner": der.all_inner}),
    );
    let crit = a.semisimplicity_criterion();
    sec.data("derived_ideal_is_whole", crit.derived_is_whole);
    sec.data("reductive", crit.reductive);
    sec.data("semisimple", crit.semisimple);
    if m == 3 {
        sec.data("dim3_class", a.classify_dim3_simple().as_str());
    }
    if let Some(c) = crit.report.get("criterion_consistent") {
        sec.check(c.clone());
    }
    sec
}
