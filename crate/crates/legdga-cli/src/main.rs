//! `legdga`: batch front end for the Legendrian-torus computation pipeline.
//!
//! Exit codes: 0 success, 2 input error, 3 mode mismatch, 4 internal
//! consistency failure, 5 invalid augmentation.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use legdga::curve_geometry::{
    action_profile, analyze, load_curve, loose_chart_scan, quotient_symmetric, AreaForm,
    CrossingDiagram, LefschetzTolerance, PlanarCurve,
};
use legdga::dga_core::{
    acyclicity_test, augmentation_ideal, augmentation_polynomial, bilinearised_lch, dga_from_json,
    dga_to_json, poly_from_json, poly_to_json, superpotential_check, superpotential_search,
    Augmentation, Dga, Expo, Field, LaurentPoly, Scalar,
};
use legdga::knot_dga::{build_knot_dga, grade_crossings};
use legdga::torus_dga::{build_spun_dga, SpinMode};
use legdga::Error;

use legdga_cli::acceptance;
use legdga_cli::report;

#[derive(Parser)]
#[command(name = "legdga", about = "Legendrian torus DGA computations", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Tolerances {
    /// Absolute quadrature tolerance for Lefschetz-form diagnostics.
    #[arg(long, default_value_t = 1e-9)]
    abs_tol: f64,
    /// Slack for comparisons against multiples of pi.
    #[arg(long, default_value_t = 1e-6)]
    pi_slack: f64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Geometric analysis of a curve file: crossings, faces, areas under both
    /// forms, winding, exactness, embedded-lift verdict, loose-chart scan.
    Analyze {
        curve: PathBuf,
        #[command(flatten)]
        tol: Tolerances,
    },
    /// Build a Chekanov-Eliashberg DGA from a curve file.
    Dga {
        curve: PathBuf,
        /// knot | spun | symmetric
        #[arg(long)]
        mode: String,
        /// f2 | fp:<p> | q
        #[arg(long, default_value = "f2")]
        field: String,
    },
    /// Invariants of a DGA (or of a curve built on the fly).
    Invariants {
        #[command(subcommand)]
        sub: InvCmd,
    },
    /// Run the bundled corpus acceptance suite; exit 0 iff all criteria pass.
    Regress {
        /// Directory holding the bundled corpus files.
        #[arg(long, default_value = "corpus")]
        corpus: PathBuf,
    },
}

#[derive(Args, Clone)]
struct InvInput {
    /// Curve (`legdga-curve/1`) or DGA (`legdga-dga/1`) JSON file.
    input: PathBuf,
    /// Build mode when the input is a curve: knot | spun | symmetric.
    #[arg(long, default_value = "symmetric")]
    mode: String,
    /// Coefficient field: f2 | fp:<p> | q.
    #[arg(long, default_value = "f2")]
    field: String,
}

#[derive(Subcommand, Clone)]
enum InvCmd {
    /// Bilinearised Legendrian contact homology ranks.
    Lch {
        #[command(flatten)]
        input: InvInput,
        /// Augmentation, e.g. "mu=1,lambda=2".
        #[arg(long)]
        aug: String,
        /// Second augmentation (defaults to --aug).
        #[arg(long)]
        aug2: Option<String>,
    },
    /// Augmentation ideal and, over a finite field, its solution set.
    Augvar {
        #[command(flatten)]
        input: InvInput,
    },
    /// Augmentation polynomial by elimination at a basepoint augmentation.
    Augpoly {
        #[command(flatten)]
        input: InvInput,
        /// Augmentation, e.g. "mu=1,lambda=2".
        #[arg(long)]
        aug: String,
    },
    /// Acyclicity certificate after specializing Novikov variables.
    Acyclic {
        #[command(flatten)]
        input: InvInput,
        /// Specialization of the Novikov variables, e.g. "mu=1,lambda=1".
        #[arg(long)]
        specialize: String,
    },
    /// Compare an augmentation polynomial against a superpotential file.
    PotentialCheck {
        #[command(flatten)]
        input: InvInput,
        /// Laurent polynomial file (`legdga-poly/1`).
        #[arg(long)]
        potential: PathBuf,
        /// Monomial substitution, e.g. "mu=v,lambda=u^3*v"; searched when
        /// omitted.
        #[arg(long)]
        subst: Option<String>,
        /// Augmentation used for the elimination (first valid one over the
        /// field when omitted).
        #[arg(long)]
        aug: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.cmd) {
        Ok(report) => {
            print!("{}", report::render(&report));
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Schema(_) | Error::Degenerate(_) | Error::Unsupported(_) => 2,
        Error::ModeMismatch(_) => 3,
        Error::Internal(_) => 4,
        Error::InvalidAugmentation(_) => 5,
    }
}

fn run(cmd: &Cmd) -> Result<Value, Error> {
    match cmd {
        Cmd::Analyze { curve, tol } => cmd_analyze(curve, tol),
        Cmd::Dga { curve, mode, field } => cmd_dga(curve, mode, field),
        Cmd::Invariants { sub } => cmd_invariants(sub),
        Cmd::Regress { corpus } => cmd_regress(corpus),
    }
}

// ---------------------------------------------------------------------------
// Input plumbing.
// ---------------------------------------------------------------------------

fn read_file(path: &Path) -> Result<(String, String), Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Schema(format!("cannot read {}: {e}", path.display())))?;
    let digest = report::digest(text.as_bytes());
    Ok((text, digest))
}

fn inputs_value(path: &Path, digest: &str) -> Value {
    let mut m = Map::new();
    m.insert(path.display().to_string(), json!(digest));
    Value::Object(m)
}

enum Input {
    Curve(PlanarCurve),
    Dga(Dga),
    Poly(LaurentPoly, Vec<String>, Field),
}

fn load_input(text: &str) -> Result<Input, Error> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| Error::Schema(format!("invalid JSON: {e}")))?;
    match value.get("schema").and_then(Value::as_str) {
        Some("legdga-dga/1") => Ok(Input::Dga(dga_from_json(&value)?)),
        Some("legdga-poly/1") => {
            let (p, vars, field) = poly_from_json(&value)?;
            Ok(Input::Poly(p, vars, field))
        }
        _ => Ok(Input::Curve(load_curve(text)?)),
    }
}

/// Build a DGA from a curve under the requested mode. Symmetric mode accepts
/// either a quotient curve that already carries cone markers or a symmetric
/// double-cover configuration, which is quotiented first.
fn dga_from_curve(curve: &PlanarCurve, mode: &str, field: &Field) -> Result<Dga, Error> {
    match mode {
        "knot" => {
            let diagram = analyze(curve)?;
            build_knot_dga(&diagram, field.clone())
        }
        "spun" => {
            let diagram = analyze(curve)?;
            build_spun_dga(&diagram, field.clone(), SpinMode::Plain)
        }
        "symmetric" => {
            let quotient;
            let target = if curve.cone_markers.is_empty() {
                quotient = quotient_symmetric(curve)?.0;
                &quotient
            } else {
                curve
            };
            let diagram = analyze(target)?;
            build_spun_dga(&diagram, field.clone(), SpinMode::Symmetric)
        }
        other => Err(Error::ModeMismatch(format!(
            "unknown mode {other:?} (expected knot, spun, or symmetric)"
        ))),
    }
}

fn inv_dga(input: &InvInput) -> Result<(Dga, Value), Error> {
    let (text, digest) = read_file(&input.input)?;
    let field = Field::parse(&input.field)?;
    let dga = match load_input(&text)? {
        Input::Dga(dga) => dga,
        Input::Curve(curve) => dga_from_curve(&curve, &input.mode, &field)?,
        Input::Poly(..) => {
            return Err(Error::Schema(
                "expected a curve or DGA file, found a polynomial file".into(),
            ))
        }
    };
    Ok((dga, inputs_value(&input.input, &digest)))
}

/// Parse "name=value,name=value" against the DGA's Novikov variables.
fn parse_assignments(dga: &Dga, spec: &str) -> Result<Vec<Scalar>, Error> {
    let mut values: Vec<Option<Scalar>> = vec![None; dga.vars.len()];
    for part in spec.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (name, value) = part.split_once('=').ok_or_else(|| {
            Error::InvalidAugmentation(format!("expected name=value, found {part:?}"))
        })?;
        let idx = dga
            .vars
            .iter()
            .position(|v| v == name.trim())
            .ok_or_else(|| {
                Error::InvalidAugmentation(format!("unknown variable {:?}", name.trim()))
            })?;
        values[idx] = Some(dga.field.parse_scalar(value.trim())?);
    }
    values
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            v.ok_or_else(|| {
                Error::InvalidAugmentation(format!("missing value for {:?}", dga.vars[i]))
            })
        })
        .collect()
}

fn parse_augmentation(dga: &Dga, spec: &str) -> Result<Augmentation, Error> {
    let aug = Augmentation {
        values: parse_assignments(dga, spec)?,
    };
    aug.validate(dga)?;
    Ok(aug)
}

/// Parse "mu=v,lambda=u^3*v" into per-variable monomials over `vars`.
fn parse_substitution(
    dga_vars: &[String],
    target_vars: &[String],
    field: &Field,
    spec: &str,
) -> Result<Vec<(Scalar, Expo)>, Error> {
    let mut out: Vec<Option<(Scalar, Expo)>> = vec![None; dga_vars.len()];
    for part in spec.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (name, expr) = part
            .split_once('=')
            .ok_or_else(|| Error::Schema(format!("expected name=monomial, found {part:?}")))?;
        let idx = dga_vars
            .iter()
            .position(|v| v == name.trim())
            .ok_or_else(|| Error::Schema(format!("unknown variable {:?}", name.trim())))?;
        let mut expr = expr.trim();
        let mut coeff = field.one();
        if let Some(rest) = expr.strip_prefix('-') {
            coeff = field.neg(&coeff);
            expr = rest.trim();
        }
        let mut expo: Expo = vec![0; target_vars.len()];
        for factor in expr.split('*') {
            let factor = factor.trim();
            if factor == "1" {
                continue;
            }
            let (base, power) = match factor.split_once('^') {
                Some((b, p)) => {
                    let k: i64 = p.trim().parse().map_err(|_| {
                        Error::Schema(format!("invalid exponent in {factor:?}"))
                    })?;
                    (b.trim(), k)
                }
                None => (factor, 1),
            };
            let t = target_vars.iter().position(|v| v == base).ok_or_else(|| {
                Error::Schema(format!("unknown substitution variable {base:?}"))
            })?;
            expo[t] += power;
        }
        out[idx] = Some((coeff, expo));
    }
    out.into_iter()
        .enumerate()
        .map(|(i, v)| {
            v.ok_or_else(|| Error::Schema(format!("missing substitution for {:?}", dga_vars[i])))
        })
        .collect()
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

fn q_string(x: &legdga::geom::Q) -> String {
    x.to_string()
}

fn diagram_value(diagram: &CrossingDiagram) -> Value {
    let graded = grade_crossings(diagram);
    let crossings: Vec<Value> = graded
        .iter()
        .map(|g| {
            let c = &diagram.crossings[g.crossing];
            json!({
                "label": g.label,
                "x": q_string(&c.point.x),
                "y": q_string(&c.point.y),
                "degree": g.degree,
            })
        })
        .collect();
    let faces: Vec<Value> = diagram
        .faces
        .iter()
        .enumerate()
        .map(|(i, f)| {
            json!({
                "index": i,
                "area": q_string(&f.area()),
                "winding": f.winding,
                "contains_origin": f.contains_origin,
                "unbounded": i == diagram.unbounded_face,
            })
        })
        .collect();
    json!({
        "crossings": crossings,
        "faces": faces,
        "tangent_winding": diagram.tangent_winding,
        "enclosed_area": q_string(&diagram.enclosed_area),
        "exact": diagram.enclosed_area.to_string() == "0",
    })
}

fn cmd_analyze(path: &Path, tol: &Tolerances) -> Result<Value, Error> {
    let (text, digest) = read_file(path)?;
    let curve = load_curve(&text)?;
    let diagram = analyze(&curve)?;
    let tolerances = LefschetzTolerance {
        abs_tol: tol.abs_tol,
        pi_slack: tol.pi_slack,
    };
    let mut warnings = Vec::new();
    let standard = action_profile(&diagram, AreaForm::Standard, tolerances)?;
    let lefschetz = match action_profile(&diagram, AreaForm::Lefschetz, tolerances) {
        Ok(p) => Some(p),
        Err(Error::Degenerate(msg)) => {
            warnings.push(format!("lefschetz profile unavailable: {msg}"));
            None
        }
        Err(e) => return Err(e),
    };
    let profile_value = |p: &legdga::curve_geometry::ActionProfile| -> Value {
        json!({
            "crossings": p.crossings.iter().map(|c| json!({
                "label": c.label,
                "upper_branch": c.upper_branch,
                "exact_gap": c.exact_gap.as_ref().map(q_string),
                "numeric_gap": c.numeric_gap,
            })).collect::<Vec<_>>(),
            "enclosed_exact": p.enclosed_exact.as_ref().map(q_string),
            "enclosed_numeric": p.enclosed_numeric,
            "embedded_lift": p.embedded_lift,
        })
    };
    let loose = match loose_chart_scan(&diagram) {
        Ok(v) => Some(v),
        Err(Error::Degenerate(msg)) => {
            warnings.push(format!("loose-chart scan unavailable: {msg}"));
            None
        }
        Err(e) => return Err(e),
    };
    let results = json!({
        "curve": curve.name,
        "diagram": diagram_value(&diagram),
        "areas": {
            "standard": profile_value(&standard),
            "lefschetz": lefschetz.as_ref().map(profile_value),
        },
        "loose_charts": loose.map(|v| v.iter().map(|l| json!({
            "crossing": l.crossing,
            "teardrop_area": l.area_a,
            "opposite_area": l.area_b,
            "loose_candidate": l.loose_candidate,
        })).collect::<Vec<_>>()),
    });
    let command = json!({
        "name": "analyze",
        "abs_tol": tol.abs_tol,
        "pi_slack": tol.pi_slack,
    });
    Ok(report::envelope(
        command,
        inputs_value(path, &digest),
        results,
        warnings,
    ))
}

// ---------------------------------------------------------------------------
// dga
// ---------------------------------------------------------------------------

fn dga_results(dga: &Dga, warnings: &mut Vec<String>) -> Value {
    let labels: Vec<String> = dga.generators.iter().map(|g| g.label.clone()).collect();
    let differential: Vec<Value> = dga
        .generators
        .iter()
        .zip(&dga.differential)
        .map(|(g, d)| {
            json!({
                "generator": g.label,
                "value": d.render(&labels, &dga.vars, &dga.field),
            })
        })
        .collect();
    let h0 = match dga.degree_zero_homology() {
        Ok(polys) => Some(
            polys
                .iter()
                .map(|p| p.render(&dga.vars, &dga.field))
                .collect::<Vec<_>>(),
        ),
        Err(Error::Unsupported(msg)) => {
            warnings.push(format!("degree-zero homology unavailable: {msg}"));
            None
        }
        Err(_) => None,
    };
    json!({
        "dga": dga_to_json(dga),
        "generators": dga.generators.iter().map(|g| json!({
            "label": g.label,
            "degree": g.degree,
        })).collect::<Vec<_>>(),
        "differential": differential,
        "d_squared_zero": true,
        "degree_zero_homology_ideal": h0,
    })
}

fn cmd_dga(path: &Path, mode: &str, field: &str) -> Result<Value, Error> {
    let (text, digest) = read_file(path)?;
    let curve = load_curve(&text)?;
    let field = Field::parse(field)?;
    let dga = dga_from_curve(&curve, mode, &field)?;
    let mut warnings = Vec::new();
    let results = dga_results(&dga, &mut warnings);
    let command = json!({
        "name": "dga",
        "mode": mode,
        "field": field.tag(),
    });
    Ok(report::envelope(
        command,
        inputs_value(path, &digest),
        results,
        warnings,
    ))
}

// ---------------------------------------------------------------------------
// invariants
// ---------------------------------------------------------------------------

fn cmd_invariants(sub: &InvCmd) -> Result<Value, Error> {
    match sub {
        InvCmd::Lch { input, aug, aug2 } => {
            let (dga, inputs) = inv_dga(input)?;
            let eps0 = parse_augmentation(&dga, aug)?;
            let eps1 = match aug2 {
                Some(s) => parse_augmentation(&dga, s)?,
                None => eps0.clone(),
            };
            let ranks = bilinearised_lch(&dga, &eps0, &eps1)?;
            let ranks: BTreeMap<String, usize> =
                ranks.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
            let command = json!({
                "name": "invariants.lch",
                "mode": input.mode,
                "field": dga.field.tag(),
                "aug": aug,
                "aug2": aug2,
            });
            Ok(report::envelope(
                command,
                inputs,
                json!({ "ranks": ranks }),
                Vec::new(),
            ))
        }
        InvCmd::Augvar { input } => {
            let (dga, inputs) = inv_dga(input)?;
            let ideal = augmentation_ideal(&dga)?;
            let polys: Vec<String> = ideal
                .polys
                .iter()
                .map(|p| p.render(&dga.vars, &dga.field))
                .collect();
            let solutions = match dga.field {
                Field::Rational => None,
                _ => Some(
                    ideal
                        .solve_over(&dga.field, dga.arity())?
                        .iter()
                        .map(|sol| {
                            sol.iter()
                                .zip(&dga.vars)
                                .map(|(s, v)| format!("{v}={}", dga.field.render_scalar(s)))
                                .collect::<Vec<_>>()
                                .join(",")
                        })
                        .collect::<Vec<_>>(),
                ),
            };
            let command = json!({
                "name": "invariants.augvar",
                "mode": input.mode,
                "field": dga.field.tag(),
            });
            Ok(report::envelope(
                command,
                inputs,
                json!({ "ideal": polys, "solutions": solutions }),
                Vec::new(),
            ))
        }
        InvCmd::Augpoly { input, aug } => {
            let (dga, inputs) = inv_dga(input)?;
            let eps = parse_augmentation(&dga, aug)?;
            let poly = augmentation_polynomial(&dga, &eps)?;
            let command = json!({
                "name": "invariants.augpoly",
                "mode": input.mode,
                "field": dga.field.tag(),
                "aug": aug,
            });
            Ok(report::envelope(
                command,
                inputs,
                json!({
                    "polynomial": poly.render(&dga.vars, &dga.field),
                    "poly": poly_to_json(&poly, &dga.vars, &dga.field),
                }),
                Vec::new(),
            ))
        }
        InvCmd::Acyclic { input, specialize } => {
            let (dga, inputs) = inv_dga(input)?;
            let values = parse_assignments(&dga, specialize)?;
            let (acyclic, witness) = acyclicity_test(&dga, &values)?;
            let command = json!({
                "name": "invariants.acyclic",
                "mode": input.mode,
                "field": dga.field.tag(),
                "specialize": specialize,
            });
            Ok(report::envelope(
                command,
                inputs,
                json!({ "acyclic": acyclic, "witness": witness }),
                Vec::new(),
            ))
        }
        InvCmd::PotentialCheck {
            input,
            potential,
            subst,
            aug,
        } => {
            let (dga, inputs) = inv_dga(input)?;
            let (pot_text, pot_digest) = read_file(potential)?;
            let Input::Poly(pot, pot_vars, pot_field) = load_input(&pot_text)? else {
                return Err(Error::Schema(
                    "potential file must use the legdga-poly/1 schema".into(),
                ));
            };
            if pot_field != dga.field {
                return Err(Error::ModeMismatch(
                    "potential field differs from the DGA field".into(),
                ));
            }
            let eps = match aug {
                Some(s) => parse_augmentation(&dga, s)?,
                None => first_augmentation(&dga)?,
            };
            let augpoly = augmentation_polynomial(&dga, &eps)?;
            let mut warnings = Vec::new();
            let (matched, used_subst) = match subst {
                Some(spec) => {
                    let s = parse_substitution(&dga.vars, &pot_vars, &dga.field, spec)?;
                    let pair: [(Scalar, Expo); 2] = [s[0].clone(), s[1].clone()];
                    (
                        superpotential_check(&augpoly, &pot, &pair, &dga.field)?,
                        Some(render_subst(&dga, &pot_vars, &pair)),
                    )
                }
                None => {
                    warnings.push("no substitution given; searched |exponents| <= 3".into());
                    match superpotential_search(&augpoly, &pot, &dga.field)? {
                        Some(pair) => (true, Some(render_subst(&dga, &pot_vars, &pair))),
                        None => (false, None),
                    }
                }
            };
            let mut inputs = inputs;
            if let Value::Object(ref mut m) = inputs {
                m.insert(potential.display().to_string(), json!(pot_digest));
            }
            let command = json!({
                "name": "invariants.potential-check",
                "mode": input.mode,
                "field": dga.field.tag(),
                "subst": subst,
            });
            Ok(report::envelope(
                command,
                inputs,
                json!({
                    "augmentation_polynomial": augpoly.render(&dga.vars, &dga.field),
                    "match": matched,
                    "substitution": used_subst,
                }),
                warnings,
            ))
        }
    }
}

fn render_subst(dga: &Dga, target_vars: &[String], pair: &[(Scalar, Expo); 2]) -> Value {
    let mono = |coeff: &Scalar, e: &Expo| -> String {
        let mut parts = Vec::new();
        if !dga.field.is_one(coeff) {
            parts.push(dga.field.render_scalar(coeff));
        }
        for (v, k) in target_vars.iter().zip(e) {
            match k {
                0 => {}
                1 => parts.push(v.clone()),
                k => parts.push(format!("{v}^{k}")),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    };
    json!(dga
        .vars
        .iter()
        .zip(pair)
        .map(|(v, (c, e))| format!("{v}={}", mono(c, e)))
        .collect::<Vec<_>>()
        .join(","))
}

/// First valid augmentation of the DGA over its (finite) field.
fn first_augmentation(dga: &Dga) -> Result<Augmentation, Error> {
    let ideal = augmentation_ideal(dga)?;
    let solutions = ideal.solve_over(&dga.field, dga.arity())?;
    let values = solutions.into_iter().next().ok_or_else(|| {
        Error::InvalidAugmentation("the DGA admits no augmentation over this field".into())
    })?;
    Ok(Augmentation { values })
}

// ---------------------------------------------------------------------------
// regress
// ---------------------------------------------------------------------------

fn cmd_regress(corpus: &Path) -> Result<Value, Error> {
    let outcomes = acceptance::run_all(corpus);
    let mut all_pass = true;
    let mut lines = Vec::new();
    for o in &outcomes {
        all_pass &= o.pass;
        let line = format!(
            "criterion {}: {} - {}",
            o.criterion,
            if o.pass { "pass" } else { "FAIL" },
            o.detail
        );
        eprintln!("{line}");
        lines.push(json!({
            "criterion": o.criterion,
            "pass": o.pass,
            "detail": o.detail,
        }));
    }
    if !all_pass {
        return Err(Error::Internal("acceptance suite failed".into()));
    }
    let command = json!({ "name": "regress", "corpus": corpus.display().to_string() });
    Ok(report::envelope(
        command,
        json!({}),
        json!({ "criteria": lines, "all_pass": all_pass }),
        Vec::new(),
    ))
}
