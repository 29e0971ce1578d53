//! The `analyze` pipeline: connection, curvature and nullity always; energy
//! and metrizability when an energy is known; symmetries and their algebra
//! when candidates are given.

use serde_json::{json, Value};
use spraylab::expr::{parse_expr, RatExpr, Var};
use spraylab::liealg::LieAlgebra;
use spraylab::numeric::{bracket_agreement, compare, derivative_agreement};
use spraylab::spray::{
    connection_from_spray, connection_identities, curvature_coefficients, energy_compat,
    horizontal_nullity_basis, involutivity_check, metrizability_conditions, nullity_orthogonality,
    spray_from_metric, ConnectionData, CurvatureData, MetricData, SprayData,
};
use spraylab::symmetry::{
    affine_check, commutes_with_connection, commutes_with_spray, complete_lift,
    dimension_bound_report, isometry_check, structure_constants, BaseVectorField, GeneratorFamily,
};
use spraylab::{Check, Status};

use crate::algebra::{algebra_section, default_names};
use crate::document::{Document, Section};
use crate::manifest::Manifest;

/// Finite-difference comparisons use this fixed relative threshold.
pub const FD_TOLERANCE: f64 = 1e-6;
const SAMPLES: usize = 10;
const SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub fd_check: bool,
    pub tolerance: f64,
}

struct Candidate {
    name: String,
    field: BaseVectorField,
}

pub fn analyze(m: &Manifest, opts: Options) -> spraylab::Result<Document> {
    let n = m.dim;
    let metric = match &m.metric {
        Some(rows) => {
            let rows: Vec<Vec<&str>> = rows
                .iter()
                .map(|r| r.iter().map(String::as_str).collect())
                .collect();
            Some(MetricData::parse(n, &rows)?)
        }
        None => None,
    };
    let spray = match (&metric, &m.spray) {
        (Some(g), _) => spray_from_metric(g),
        (None, Some(coeffs)) => {
            let refs: Vec<&str> = coeffs.iter().map(String::as_str).collect();
            SprayData::parse(n, &refs)?
        }
        (None, None) => return Err(spraylab::Error::Input("metric or spray required".into())),
    };
    let energy = match (&metric, &m.energy_candidate) {
        (Some(g), _) => Some((g.energy(), "metric")),
        (None, Some(e)) => Some((parse_expr(e, n)?, "energy_candidate")),
        (None, None) => None,
    };
    let candidates = m
        .symmetry_candidates
        .iter()
        .map(|c| {
            let refs: Vec<&str> = c.components.iter().map(String::as_str).collect();
            Ok(Candidate {
                name: c.name.clone(),
                field: BaseVectorField::parse(n, &refs)?,
            })
        })
        .collect::<spraylab::Result<Vec<_>>>()?;
    let given_algebra = match &m.lie_algebra {
        Some(file) => {
            let a = file.to_algebra()?;
            a.validate()?;
            Some(a)
        }
        None => None,
    };

    let mut sections = Vec::new();
    sections.push(spray_section(&spray));
    let c = connection_from_spray(&spray)?;
    sections.push(connection_section(&c));
    let curv = curvature_coefficients(&c)?;
    sections.push(curvature_section(&spray, &c, &curv));
    sections.push(nullity_section(metric.as_ref(), &c, &curv)?);
    if let Some((e, source)) = &energy {
        sections.push(energy_section(&spray, &c, &curv, e, source)?);
    }
    if !candidates.is_empty() {
        sections.extend(symmetry_sections(
            &spray,
            &c,
            energy.as_ref().map(|(e, _)| e),
            &candidates,
        )?);
    }
    if let Some(a) = &given_algebra {
        sections.push(algebra_section("lie algebra", &default_names(a.dim()), a));
    }
    if opts.fd_check {
        sections.push(numeric_section(
            &spray,
            &curv,
            energy.as_ref().map(|(e, _)| e),
            &candidates,
            opts.tolerance,
        )?);
    }
    let input = serde_json::to_value(m).expect("manifest serializes");
    Ok(Document::new("analyze", input, sections))
}

fn spray_section(s: &SprayData) -> Section {
    let mut sec = Section::new("spray");
    sec.data("dim", s.dim());
    let g: Vec<String> = s
        .coefficients()
        .iter()
        .enumerate()
        .map(|(i, g)| format!("G^{} = {g}", i + 1))
        .collect();
    sec.data("G", g);
    sec
}

fn connection_section(c: &ConnectionData) -> Section {
    let mut sec = Section::new("connection");
    let coeffs: Vec<String> = c
        .nonzero_coefficients()
        .iter()
        .map(|(j, i, g)| format!("Gamma^{}_{} = {g}", j + 1, i + 1))
        .collect();
    sec.data("nonzero_coefficients", coeffs);
    sec.check(
        Check::new("[J,S] = 2h - I", Status::Pass)
            .with_residual("0")
            .with_notes("coefficients recomputed from the bracket"),
    );
    sec
}

fn curvature_section(s: &SprayData, c: &ConnectionData, curv: &CurvatureData) -> Section {
    let n = curv.dim();
    let mut sec = Section::new("curvature");
    let mut comps = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                let r = curv.component(k, i, j);
                if !r.is_zero() {
                    comps.push(format!("R^{}_{}{} = {r}", k + 1, i + 1, j + 1));
                }
            }
        }
    }
    sec.data("nonzero_components", comps);
    sec.data("flat", curv.is_zero());
    sec.data("linear_in_y", curv.is_y_linear());
    sec.report("", connection_identities(s, c, curv));
    sec
}

fn nullity_section(
    metric: Option<&MetricData>,
    c: &ConnectionData,
    curv: &CurvatureData,
) -> spraylab::Result<Section> {
    let mut sec = Section::new("nullity");
    let basis = horizontal_nullity_basis(curv, c);
    sec.data("rank", basis.len());
    let show = |v: &[RatExpr]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
    let generators: Vec<Value> = basis
        .iter()
        .map(|g| {
            json!({
                "direction": show(&g.direction),
                "primitive": show(&g.primitive),
                "lift": g.lift.to_string(),
                "projectable": g.projectable,
            })
        })
        .collect();
    sec.data("generators", generators);
    let lifts: Vec<_> = basis.iter().map(|g| g.lift.clone()).collect();
    sec.report("", involutivity_check(&lifts, curv, c)?);
    if let Some(g) = metric {
        sec.report("", nullity_orthogonality(g, c, curv));
    }
    Ok(sec)
}

fn energy_section(
    s: &SprayData,
    c: &ConnectionData,
    curv: &CurvatureData,
    e: &RatExpr,
    source: &str,
) -> spraylab::Result<Section> {
    let mut sec = Section::new("energy");
    sec.data("E", e.to_string());
    sec.data("source", source);
    sec.report("", energy_compat(s, e)?);
    let verdict = metrizability_conditions(c, curv, e)?;
    sec.data("curvature_annihilates", verdict.curvature_annihilates);
    sec.data("frobenius", verdict.frobenius);
    sec.data("scaling_identity", verdict.scaling_identity);
    sec.data("metrizable", verdict.metrizable);
    sec.report("", verdict.report);
    Ok(sec)
}

fn family_of(members: &[&Candidate]) -> spraylab::Result<GeneratorFamily> {
    GeneratorFamily::new(
        members
            .iter()
            .map(|c| (c.name.clone(), c.field.clone()))
            .collect(),
    )
}

fn closed_algebra_section(
    title: &str,
    members: &[&Candidate],
    n: usize,
) -> spraylab::Result<Section> {
    let fam = family_of(members)?;
    let mut sec = match structure_constants(&fam) {
        Ok(a) => algebra_section(title, fam.names(), &a),
        Err(e @ (spraylab::Error::NotClosed { .. } | spraylab::Error::DependentGenerators)) => {
            let mut sec = Section::new(title);
            sec.data("basis", fam.names().to_vec());
            sec.check(Check::new("closure", Status::Fail).with_notes(e.to_string()));
            return Ok(sec);
        }
        Err(e) => return Err(e),
    };
    let bound = dimension_bound_report(fam.len(), n);
    sec.data("flat_case", bound.flat);
    sec.report("", bound.report);
    Ok(sec)
}

fn symmetry_sections(
    s: &SprayData,
    c: &ConnectionData,
    energy: Option<&RatExpr>,
    candidates: &[Candidate],
) -> spraylab::Result<Vec<Section>> {
    let mut sec = Section::new("symmetry candidates");
    let mut spray_syms = Vec::new();
    let mut isometries = Vec::new();
    let mut rows = Vec::new();
    for cand in candidates {
        let x = &cand.field;
        let on_spray = commutes_with_spray(x, s)?;
        let is_sym = on_spray.all_passed();
        sec.report(&cand.name, on_spray);
        sec.report(&cand.name, commutes_with_connection(x, s, c)?);
        sec.report(&cand.name, affine_check(x, s, c)?);
        let mut row = json!({
            "name": cand.name,
            "field": x.to_string(),
            "lift": complete_lift(x).to_string(),
            "spray_symmetry": is_sym,
        });
        if let Some(e) = energy {
            let iso = isometry_check(x, e)?;
            let check = &iso.checks[0];
            let member = check.status == Status::Pass;
            row["isometry"] = json!(member);
            row["lie_derivative_omega"] = json!(check.residual);
            row["lie_derivative_energy"] = json!(check.notes);
            if member && is_sym {
                isometries.push(cand);
            }
        }
        if is_sym {
            spray_syms.push(cand);
        }
        rows.push(row);
    }
    sec.data("candidates", rows);
    let n = s.dim();
    let mut out = vec![sec];
    if !spray_syms.is_empty() {
        out.push(closed_algebra_section("symmetry algebra", &spray_syms, n)?);
    }
    if energy.is_some() && !isometries.is_empty() && isometries.len() < spray_syms.len() {
        out.push(closed_algebra_section("isometry algebra", &isometries, n)?);
    }
    Ok(out)
}

fn numeric_check(name: &str, worst: f64, tol: f64, points: usize) -> Check {
    Check::new(name, Status::from_bool(worst <= tol))
        .with_residual(format!("{worst:.3e}"))
        .with_notes(format!("{points} points, tolerance {tol:e}"))
}

fn numeric_section(
    s: &SprayData,
    curv: &CurvatureData,
    energy: Option<&RatExpr>,
    candidates: &[Candidate],
    tol: f64,
) -> spraylab::Result<Section> {
    let n = s.dim();
    let mut sec = Section::new("numeric");
    sec.data("samples", SAMPLES);
    sec.data("seed", SEED);

    let mut targets: Vec<&RatExpr> = s.coefficients().iter().collect();
    if let Some(e) = energy {
        targets.push(e);
    }
    let mut worst = 0.0f64;
    for (t, e) in targets.iter().enumerate() {
        for v in Var::all(n) {
            let seed = SEED + (t * 2 * n + v.slot(n)) as u64;
            worst = worst.max(derivative_agreement(e, v, SAMPLES, seed)?.max_scaled_error);
        }
    }
    sec.check(numeric_check(
        "derivatives vs central differences",
        worst,
        FD_TOLERANCE,
        SAMPLES,
    ));

    let mut worst = 0.0f64;
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let direct = curv.component(k, i, j);
                let bracket = curv.two_form().component(n + k, i, j);
                worst = worst.max(compare(direct, bracket, SAMPLES, SEED)?.max_scaled_error);
            }
        }
    }
    sec.check(numeric_check(
        "R direct vs 1/2[h,h] evaluations",
        worst,
        tol,
        SAMPLES,
    ));

    let sf = s.field();
    let mut worst = 0.0f64;
    let mut any = false;
    for cand in candidates {
        let lift = complete_lift(&cand.field);
        if spraylab::geometry::lie_bracket(&lift, &sf).is_zero() {
            any = true;
            worst = worst.max(bracket_agreement(&lift, &sf, SAMPLES, SEED)?.max_scaled_error);
        }
    }
    if any {
        sec.check(numeric_check(
            "zero symmetry residuals",
            worst,
            tol,
            SAMPLES,
        ));
    }
    Ok(sec)
}

/// The `lie` command on one structure-constant file.
pub fn lie(text: &str) -> spraylab::Result<Document> {
    let file: spraylab::liealg::AlgebraFile = serde_json::from_str(text)
        .map_err(|e| spraylab::Error::Input(format!("malformed JSON: {e}")))?;
    let a: LieAlgebra = file.to_algebra()?;
    a.validate()?;
    let input = serde_json::to_value(&file).expect("algebra file serializes");
    let sec = algebra_section("lie algebra", &default_names(a.dim()), &a);
    Ok(Document::new("lie", input, vec![sec]))
}
