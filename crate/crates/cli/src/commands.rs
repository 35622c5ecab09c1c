//! Subcommand implementations.

use std::path::{Path, PathBuf};

use inversive::sample::{generate_pair, Structure};
use inversive::{
    classify_span, detect_common_boundary, full_cross_ratio_check, solve_balls, solve_points,
    verify_correspondence, classify_uniqueness, Configuration, ConfigurationKind, MatchMode,
    OrientedBall, SolveOutcome, Uniqueness,
};
use nalgebra::DMatrix;
use serde_json::json;

use crate::error::{CliError, Result};
use crate::schema::{self, ball_body, ItemBody};

fn print_matrix(labels: &[String], g: &DMatrix<f64>) {
    let width = labels.iter().map(|l| l.len()).max().unwrap_or(0).max(12);
    print!("{:>width$}", "");
    for l in labels {
        print!(" {l:>width$}");
    }
    println!();
    for (i, l) in labels.iter().enumerate() {
        print!("{l:>width$}");
        for j in 0..labels.len() {
            print!(" {:>width$.6}", g[(i, j)]);
        }
        println!();
    }
}

fn matrix_rows(g: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..g.nrows()).map(|i| (0..g.ncols()).map(|j| g[(i, j)]).collect()).collect()
}

fn uniqueness_json(u: &Uniqueness) -> serde_json::Value {
    let witness = |w: &Option<OrientedBall>| match w {
        Some(b) => serde_json::to_value(ball_body(b)).unwrap(),
        None => serde_json::Value::Null,
    };
    match u {
        Uniqueness::Unique => json!({"class": "Unique"}),
        Uniqueness::StronglySymmetric { witness: w } => {
            json!({"class": "StronglySymmetric", "witness": witness(w)})
        }
        Uniqueness::FixedHyperbolicPoint => json!({"class": "FixedHyperbolicPoint"}),
        Uniqueness::PointsOnCommonSphere { witness: w } => {
            json!({"class": "PointsOnCommonSphere", "witness": witness(w)})
        }
    }
}

fn describe_ball(b: &OrientedBall) -> String {
    match ball_body(b) {
        ItemBody::Sphere { center, radius, side } => {
            format!("sphere center {center:?} radius {radius:.6} ({side:?})")
        }
        ItemBody::Halfspace { normal, offset } => {
            format!("halfspace normal {normal:?} offset {offset:.6}")
        }
        _ => unreachable!(),
    }
}

fn describe_uniqueness(u: &Uniqueness) -> String {
    match u {
        Uniqueness::Unique => "Unique".into(),
        Uniqueness::StronglySymmetric { witness } => match witness {
            Some(w) => format!("StronglySymmetric (witness: {})", describe_ball(w)),
            None => "StronglySymmetric".into(),
        },
        Uniqueness::FixedHyperbolicPoint => "FixedHyperbolicPoint".into(),
        Uniqueness::PointsOnCommonSphere { witness } => match witness {
            Some(w) => format!("PointsOnCommonSphere (witness: {})", describe_ball(w)),
            None => "PointsOnCommonSphere".into(),
        },
    }
}

pub fn cmd_gram(config: &Path, as_json: bool) -> Result<()> {
    let (_, conf) = schema::load_config(config)?;
    if conf.is_empty() {
        return Err(CliError::Invariant("empty configuration".into()));
    }
    let g = conf.invariant_gram()?;
    if as_json {
        let kind = match conf.kind() {
            ConfigurationKind::Balls => "balls",
            ConfigurationKind::Points => "points",
        };
        println!(
            "{}",
            json!({"kind": kind, "labels": conf.labels(), "matrix": matrix_rows(&g)})
        );
    } else {
        print_matrix(conf.labels(), &g);
    }
    Ok(())
}

fn solve_report(out: &SolveOutcome, dim: usize, as_json: bool) -> serde_json::Value {
    let mode = match out.mode {
        MatchMode::Direct => "Direct",
        MatchMode::ComplementSwapped => "ComplementSwapped",
    };
    if !as_json {
        println!("mode: {mode}");
        println!("uniqueness: {}", describe_uniqueness(&out.uniqueness));
        println!("residual_gram: {:.3e}", out.residual_gram);
        println!("residual_match: {:.3e}", out.residual_match);
        println!("matrix:");
        let m = out.map.matrix();
        for i in 0..m.nrows() {
            let row: Vec<String> = (0..m.ncols()).map(|j| format!("{:>22.15e}", m[(i, j)])).collect();
            println!("  {}", row.join(" "));
        }
    }
    json!({
        "dim": dim,
        "mode": mode,
        "uniqueness": uniqueness_json(&out.uniqueness),
        "residual_gram": out.residual_gram,
        "residual_match": out.residual_match,
        "matrix": matrix_rows(out.map.matrix()),
    })
}

pub fn cmd_solve(
    kind: ConfigurationKind,
    a: &Path,
    b: &Path,
    tol: Option<f64>,
    as_json: bool,
    out_map: Option<&Path>,
) -> Result<()> {
    let (_, conf_a) = schema::load_config(a)?;
    let (_, conf_b) = schema::load_config(b)?;
    if conf_a.kind() != kind || conf_b.kind() != kind {
        return Err(CliError::Input("configuration kind does not match subcommand".into()));
    }
    let outcome = match kind {
        ConfigurationKind::Balls => solve_balls(&conf_a, &conf_b, tol)?,
        ConfigurationKind::Points => solve_points(&conf_a, &conf_b, tol)?,
    };
    let report = solve_report(&outcome, conf_a.dim(), as_json);
    if as_json {
        println!("{report}");
    }
    if let Some(path) = out_map {
        schema::write_json(path, &schema::map_to_file(&outcome.map, conf_a.dim()))?;
    }
    Ok(())
}

pub fn cmd_classify(config: &Path, as_json: bool) -> Result<()> {
    let (_, conf) = schema::load_config(config)?;
    let class = classify_span(&conf.lifts())?;
    let common = match conf.kind() {
        ConfigurationKind::Balls => Some(detect_common_boundary(&conf)?.0),
        ConfigurationKind::Points => None,
    };
    let uniqueness = classify_uniqueness(&conf)?;
    if as_json {
        println!(
            "{}",
            json!({
                "span": {"kind": format!("{:?}", class.kind), "dim": class.dim},
                "common_boundary_point": common,
                "uniqueness": uniqueness_json(&uniqueness),
            })
        );
    } else {
        println!("span: {:?} dim {}", class.kind, class.dim);
        if let Some(c) = common {
            println!("common boundary point: {}", if c { "yes" } else { "no" });
        }
        println!("uniqueness: {}", describe_uniqueness(&uniqueness));
    }
    Ok(())
}

pub fn cmd_apply(map: &Path, config: &Path) -> Result<()> {
    let g = schema::load_map(map)?;
    let (_, conf) = schema::load_config(config)?;
    if g.dim() != conf.ambient_dim() {
        return Err(CliError::Input(format!(
            "map dimension {} does not match configuration dimension {}",
            g.dim(),
            conf.ambient_dim()
        )));
    }
    let image = conf.apply(&g)?;
    let file = schema::from_core(&image);
    println!(
        "{}",
        serde_json::to_string_pretty(&file)
            .map_err(|e| CliError::Input(format!("serialization failed: {e}")))?
    );
    Ok(())
}

/// Signed Gram comparison under every orientation assignment. The first
/// sign is pinned: a global flip is the legal complement swap, not a new
/// assignment.
fn side_assignment_scan(
    conf_a: &Configuration,
    conf_b: &Configuration,
    tol: f64,
) -> Result<(Vec<(Vec<i8>, f64)>, usize)> {
    let g_a = conf_a.invariant_gram()?;
    let g_b = conf_b.invariant_gram()?;
    let m = conf_a.len();
    let mut rows = Vec::new();
    let mut feasible = 0;
    for mask in 0..(1u32 << (m - 1)) {
        let signs: Vec<i8> =
            (0..m).map(|i| if i > 0 && mask & (1 << (i - 1)) != 0 { -1 } else { 1 }).collect();
        let mut dev = 0.0f64;
        for i in 0..m {
            for j in 0..m {
                let s = (signs[i] * signs[j]) as f64;
                dev = dev.max((s * g_a[(i, j)] - g_b[(i, j)]).abs());
            }
        }
        if dev <= tol {
            feasible += 1;
        }
        rows.push((signs, dev));
    }
    Ok((rows, feasible))
}

pub fn cmd_verify(
    a: &Path,
    b: &Path,
    map: Option<&Path>,
    full_cross_ratios: bool,
    tol: Option<f64>,
    as_json: bool,
) -> Result<()> {
    let (_, conf_a) = schema::load_config(a)?;
    let (_, conf_b) = schema::load_config(b)?;
    if conf_a.kind() != conf_b.kind() {
        return Err(CliError::Input("configurations differ in kind".into()));
    }
    if full_cross_ratios && conf_a.kind() != ConfigurationKind::Points {
        return Err(CliError::Input("--full-cross-ratios applies to point configurations".into()));
    }

    if let Some(map_path) = map {
        let g = schema::load_map(map_path)?;
        let report = verify_correspondence(&conf_a, &conf_b, &g)?;
        let pass_tol = tol.unwrap_or(match conf_a.kind() {
            ConfigurationKind::Balls => 1e-6,
            ConfigurationKind::Points => 1e-7,
        });
        let pass = report.passes(pass_tol);
        let mode = match report.mode {
            MatchMode::Direct => "Direct",
            MatchMode::ComplementSwapped => "ComplementSwapped",
        };
        if as_json {
            println!(
                "{}",
                json!({
                    "pass": pass,
                    "mode": mode,
                    "max_error": report.max_error,
                    "item_errors": report.item_errors,
                    "gram_residual": report.gram_residual,
                })
            );
        } else {
            println!("mode: {mode}");
            println!("max error: {:.3e} (tolerance {pass_tol:.3e})", report.max_error);
            println!("verdict: {}", if pass { "pass" } else { "fail" });
        }
        if !pass {
            return Err(CliError::Refusal(format!(
                "correspondence error {:.3e} exceeds {pass_tol:.3e}",
                report.max_error
            )));
        }
        return Ok(());
    }

    match conf_a.kind() {
        ConfigurationKind::Balls => {
            let gram_tol = tol.unwrap_or(1e-8);
            let (rows, feasible) = side_assignment_scan(&conf_a, &conf_b, gram_tol)?;
            let direct_dev = rows[0].1;
            let pass = direct_dev <= gram_tol;
            if as_json {
                let assignments: Vec<_> = rows
                    .iter()
                    .map(|(signs, dev)| json!({"signs": signs, "max_dev": dev}))
                    .collect();
                println!(
                    "{}",
                    json!({
                        "pass": pass,
                        "direct_max_dev": direct_dev,
                        "feasible_assignments": feasible,
                        "assignments": assignments,
                    })
                );
            } else {
                println!("signed Gram deviation: {direct_dev:.3e} (tolerance {gram_tol:.3e})");
                println!("side assignments tried: {}", rows.len());
                for (signs, dev) in &rows {
                    let text: Vec<&str> =
                        signs.iter().map(|&s| if s > 0 { "+" } else { "-" }).collect();
                    println!("  [{}] max deviation {dev:.3e}", text.join(""));
                }
                println!("feasible assignments: {feasible}");
                println!("verdict: {}", if pass { "pass" } else { "fail" });
            }
            if !pass {
                return Err(CliError::Refusal(format!(
                    "signed Gram deviation {direct_dev:.3e}; {feasible} of {} side assignments feasible",
                    rows.len()
                )));
            }
        }
        ConfigurationKind::Points => {
            if full_cross_ratios {
                let cr_tol = tol.unwrap_or(1e-9);
                let report = full_cross_ratio_check(&conf_a, &conf_b)?;
                let pass = report.max_discrepancy <= cr_tol;
                let witness: Vec<String> =
                    report.witness.iter().map(|&i| conf_a.labels()[i].clone()).collect();
                if as_json {
                    println!(
                        "{}",
                        json!({
                            "pass": pass,
                            "max_discrepancy": report.max_discrepancy,
                            "witness": witness,
                            "tuples": report.tuples,
                        })
                    );
                } else {
                    println!(
                        "cross-ratio discrepancy: {:.3e} over {} tuples (tolerance {cr_tol:.3e})",
                        report.max_discrepancy, report.tuples
                    );
                    println!("witness tuple: {witness:?}");
                    println!("verdict: {}", if pass { "pass" } else { "fail" });
                }
                if !pass {
                    return Err(CliError::Refusal(format!(
                        "cross-ratio discrepancy {:.3e} at tuple {witness:?}",
                        report.max_discrepancy
                    )));
                }
            } else {
                // without a map the only complete point check is solving
                let outcome = solve_points(&conf_a, &conf_b, tol)?;
                if as_json {
                    println!(
                        "{}",
                        json!({"pass": true, "residual_match": outcome.residual_match})
                    );
                } else {
                    println!("solvable: residual {:.3e}", outcome.residual_match);
                    println!("verdict: pass");
                }
            }
        }
    }
    Ok(())
}

pub fn cmd_generate(
    kind: ConfigurationKind,
    n: usize,
    dim: usize,
    seed: u64,
    structure: Structure,
    out_prefix: &Path,
) -> Result<()> {
    if n == 0 || dim == 0 {
        return Err(CliError::Input("n and dim must be at least 1".into()));
    }
    let (a, b, g) = generate_pair(seed, kind, n, dim, structure).map_err(|e| {
        // bad kind/structure combinations are flag errors
        match e {
            inversive::Error::InvalidInput(m) => CliError::Input(m),
            other => CliError::from(other),
        }
    })?;
    let path = |suffix: &str| -> PathBuf {
        let mut name = out_prefix.as_os_str().to_os_string();
        name.push(suffix);
        PathBuf::from(name)
    };
    let (pa, pb, pg) = (path(".a.json"), path(".b.json"), path(".map.json"));
    schema::write_json(&pa, &schema::from_core(&a))?;
    schema::write_json(&pb, &schema::from_core(&b))?;
    schema::write_json(&pg, &schema::map_to_file(&g, dim))?;
    println!("{}", pa.display());
    println!("{}", pb.display());
    println!("{}", pg.display());
    Ok(())
}
