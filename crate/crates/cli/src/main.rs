//! Command-line front end: parses system JSON, dispatches to the bound /
//! sum / verify / nondegen / orbit / polytope pipelines, and emits
//! machine-readable JSON on stdout.
//!
//! Exit codes: 0 success, 1 validation error, 2 size guard, 3 when a verify
//! run contains a failing asserted entry. Errors go to stderr as a JSON
//! object.

use clap::{Args, Parser, Subcommand};
use hypsum_core::bound::{
    chamber_halfspaces, check_homogeneity, homogenize, newton_polytopes, quasi_finiteness_check,
    rank_bound, CoeffMatrix, FieldDesc, GroupKind, RepDescriptor, RepSystem,
};
use hypsum_core::ffield::make_field;
use hypsum_core::nondegen::{self, faces_without_origin};
use hypsum_core::polytope::RationalPolytope;
use hypsum_core::ratio::format_rat;
use hypsum_core::rootsys::Family;
use hypsum_core::sums::{self, Selection};
use serde::Deserialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "hypsum",
    about = "Exact hypergeometric exponential sums over split reductive groups: rank/sum bounds, character sums, and nondegeneracy tests"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Path of the system JSON file.
    file: String,
    /// Override the field characteristic from the file.
    #[arg(long)]
    p: Option<u64>,
    /// Override the field extension degree from the file.
    #[arg(long)]
    m: Option<usize>,
    /// Shorthand for a prime field: --q P is --p P --m 1.
    #[arg(long)]
    q: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Exact rational rank/sum bound and the Newton polytope at infinity.
    Bound {
        /// Path of the system JSON file.
        file: String,
    },
    /// Exact character counts and magnitude of Hyp(A).
    Sum {
        #[command(flatten)]
        common: CommonArgs,
        /// Replace the file's coefficients: "identity" or "zero".
        #[arg(long = "A", value_name = "TUPLE")]
        coefficient_override: Option<String>,
    },
    /// Sweep coefficient tuples and check |Hyp(A)| against q^{d/2} * bound.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Exhaustive sweep of the whole coefficient space.
        #[arg(long)]
        all: bool,
        /// Sample size when not exhaustive.
        #[arg(long, default_value_t = 32)]
        samples: usize,
        /// Seed for reproducible sampling.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Extension-field cap for the witness search.
        #[arg(long = "extension-cap", default_value_t = 2)]
        extension_cap: u32,
    },
    /// Nondegeneracy status of the coefficient tuple, per face.
    Nondegen {
        #[command(flatten)]
        common: CommonArgs,
        /// Replace the file's coefficients: "identity" or "zero".
        #[arg(long = "A", value_name = "TUPLE")]
        coefficient_override: Option<String>,
        #[arg(long = "extension-cap", default_value_t = 2)]
        extension_cap: u32,
    },
    /// Weyl orbits of the maximal weights.
    Orbit {
        /// Path of the system JSON file.
        file: String,
    },
    /// Vertex/facet listing of the Newton polytopes and the chamber cut.
    Polytope {
        /// Path of the system JSON file.
        file: String,
    },
}

// ---- system file schema (documented in docs/system.schema.json) ----

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemFile {
    group: GroupSpec,
    representations: Vec<RepSpec>,
    #[serde(default)]
    field: Option<FieldSpec>,
    #[serde(default)]
    coefficients: Option<Vec<Vec<Vec<CoeffEntry>>>>,
}

#[derive(Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum GroupSpec {
    Torus { n: usize },
    Sl2,
    Gl2,
    Rootsys { family: String, rank: usize },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RepSpec {
    #[serde(default)]
    weight: Option<Vec<i64>>,
    #[serde(default)]
    sym: Option<u32>,
    #[serde(default)]
    det: Option<u32>,
    #[serde(default)]
    highest_weight: Option<Vec<i64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldSpec {
    p: u64,
    #[serde(default = "default_ext")]
    m: usize,
}

fn default_ext() -> usize {
    1
}

/// A coefficient entry: a bare integer or a little-endian generator
/// polynomial.
#[derive(Deserialize)]
#[serde(untagged)]
enum CoeffEntry {
    Int(i64),
    Poly(Vec<i64>),
}

#[derive(Debug)]
enum CliError {
    Validation(String),
    SizeGuard(String),
    VerifyFailed,
}

impl From<hypsum_core::Error> for CliError {
    fn from(e: hypsum_core::Error) -> Self {
        match e {
            hypsum_core::Error::SizeGuard { .. } => CliError::SizeGuard(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

fn parse_system(path: &str) -> Result<RepSystem, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read {path}: {e}")))?;
    let file: SystemFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Validation(format!("invalid system JSON: {e}")))?;

    let group = match &file.group {
        GroupSpec::Torus { n } => GroupKind::Torus { n: *n },
        GroupSpec::Sl2 => GroupKind::Sl2,
        GroupSpec::Gl2 => GroupKind::Gl2,
        GroupSpec::Rootsys { family, rank } => {
            let family = match family.as_str() {
                "A" | "a" => Family::A,
                "B" | "b" => Family::B,
                "G" | "g" => Family::G,
                other => {
                    return Err(CliError::Validation(format!(
                        "unknown root-system family {other:?}"
                    )))
                }
            };
            GroupKind::RootSystem {
                family,
                rank: *rank,
            }
        }
    };

    let reps = file
        .representations
        .iter()
        .map(|r| match (&file.group, r) {
            (
                GroupSpec::Torus { .. },
                RepSpec {
                    weight: Some(w),
                    sym: None,
                    det: None,
                    highest_weight: None,
                },
            ) => Ok(RepDescriptor::TorusChar(w.clone())),
            (
                GroupSpec::Sl2,
                RepSpec {
                    weight: None,
                    sym: Some(m),
                    det: None,
                    highest_weight: None,
                },
            ) => Ok(RepDescriptor::Sym { m: *m }),
            (
                GroupSpec::Gl2,
                RepSpec {
                    weight: None,
                    sym: Some(m),
                    det,
                    highest_weight: None,
                },
            ) => Ok(RepDescriptor::SymDet {
                m: *m,
                k: det.unwrap_or(0),
            }),
            (
                GroupSpec::Rootsys { .. },
                RepSpec {
                    weight: None,
                    sym: None,
                    det: None,
                    highest_weight: Some(v),
                },
            ) => Ok(RepDescriptor::HighestWeight(v.clone())),
            _ => Err(CliError::Validation(
                "representation fields do not match the group type \
                 (torus: weight; sl2: sym; gl2: sym [+ det]; rootsys: highest_weight)"
                    .into(),
            )),
        })
        .collect::<Result<Vec<_>, _>>()?;

    let coefficients = file.coefficients.map(|mats| {
        mats.into_iter()
            .map(|m| {
                m.into_iter()
                    .map(|row| {
                        row.into_iter()
                            .map(|e| match e {
                                CoeffEntry::Int(v) => vec![v],
                                CoeffEntry::Poly(v) => v,
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect()
    });

    let mut sys = RepSystem::new(group, reps);
    sys.coefficients = coefficients;
    sys.field = file.field.map(|f| FieldDesc { p: f.p, m: f.m });
    sys.validate()?;
    Ok(sys)
}

fn resolve_field(sys: &RepSystem, common: &CommonArgs) -> Result<hypsum_core::Fq, CliError> {
    let (p, m) = if let Some(q) = common.q {
        (q, 1)
    } else {
        let base = sys.field.unwrap_or(FieldDesc { p: 0, m: 1 });
        (common.p.unwrap_or(base.p), common.m.unwrap_or(base.m))
    };
    if p == 0 {
        return Err(CliError::Validation(
            "no field given: set \"field\" in the file or pass --p/--m or --q".into(),
        ));
    }
    Ok(make_field(p, m)?)
}

fn polytope_json(p: &RationalPolytope) -> Value {
    json!({
        "dim_ambient": p.dim_ambient,
        "affine_dim": p.affine_dim,
        "vertices": p.vertices.iter().map(|v| {
            v.iter().map(format_rat).collect::<Vec<_>>()
        }).collect::<Vec<_>>(),
        "facets": p.facets.iter().map(|f| json!({
            "normal": f.normal.iter().map(format_rat).collect::<Vec<_>>(),
            "offset": format_rat(&f.offset),
        })).collect::<Vec<_>>(),
        "span_equalities": p.span_equalities.iter().map(|f| json!({
            "normal": f.normal.iter().map(format_rat).collect::<Vec<_>>(),
            "offset": format_rat(&f.offset),
        })).collect::<Vec<_>>(),
    })
}

fn override_coefficients(sys: &mut RepSystem, spec: &Option<String>) -> Result<(), CliError> {
    let Some(spec) = spec else { return Ok(()) };
    let tuple: Vec<CoeffMatrix> = match spec.as_str() {
        "identity" => sys
            .reps
            .iter()
            .map(|r| {
                let dim = r.dim(&sys.group).expect("validated");
                (0..dim)
                    .map(|i| (0..dim).map(|j| vec![i64::from(i == j)]).collect())
                    .collect()
            })
            .collect(),
        "zero" => sys
            .reps
            .iter()
            .map(|r| {
                let dim = r.dim(&sys.group).expect("validated");
                vec![vec![vec![0i64]; dim]; dim]
            })
            .collect(),
        other => {
            return Err(CliError::Validation(format!(
                "unknown coefficient override {other:?}: use \"identity\" or \"zero\""
            )))
        }
    };
    sys.coefficients = Some(tuple);
    Ok(())
}

fn run() -> Result<Value, CliError> {
    // Usage errors are validation errors (exit 1); clap's default exit code
    // 2 is reserved for size guards here.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e)
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) =>
        {
            print!("{e}");
            std::process::exit(0);
        }
        Err(e) => return Err(CliError::Validation(e.to_string())),
    };
    match cli.command {
        Command::Bound { file } => {
            let sys = parse_system(&file)?;
            let r = rank_bound(&sys)?;
            Ok(json!({
                "system": sums::system_summary(&sys),
                "d": r.d,
                "bound": format_rat(&r.bound),
                "lowdim": r.lowdim_flag,
                "homogeneous": check_homogeneity(&sys)?,
                "quasi_finite_span": quasi_finiteness_check(&sys)?,
                "delta_infty": polytope_json(&r.delta_infty),
            }))
        }
        Command::Sum {
            common,
            coefficient_override,
        } => {
            let mut sys = parse_system(&common.file)?;
            override_coefficients(&mut sys, &coefficient_override)?;
            let fq = resolve_field(&sys, &common)?;
            let counts = sums::hyp_sum(&sys, &fq)?;
            let (magnitude, error_bound) = counts.eval_magnitude();
            Ok(json!({
                "system": sums::system_summary(&sys),
                "q": fq.q(),
                "p": fq.p,
                "modulus": fq.modulus,
                "counts": counts.counts,
                "total": counts.total(),
                "magnitude": magnitude,
                "error_bound": error_bound,
            }))
        }
        Command::Verify {
            common,
            all,
            samples,
            seed,
            extension_cap,
        } => {
            let sys = parse_system(&common.file)?;
            let fq = resolve_field(&sys, &common)?;
            let selection = if all {
                Selection::All
            } else {
                Selection::Sample { n: samples, seed }
            };
            let report = sums::verify_bound(&sys, &fq, selection, extension_cap)?;
            let failed = !report.all_asserted_pass;
            let value =
                serde_json::to_value(&report).map_err(|e| CliError::Validation(e.to_string()))?;
            if failed {
                emit(&value);
                return Err(CliError::VerifyFailed);
            }
            Ok(value)
        }
        Command::Nondegen {
            common,
            coefficient_override,
            extension_cap,
        } => {
            let mut sys = parse_system(&common.file)?;
            override_coefficients(&mut sys, &coefficient_override)?;
            if sys.coefficients.is_none() {
                return Err(CliError::Validation(
                    "nondegen needs coefficients (in the file or via --A)".into(),
                ));
            }
            let fq = resolve_field(&sys, &common)?;
            let (_, dinf) = newton_polytopes(&sys)?;
            let faces = faces_without_origin(&dinf);
            let lat = sys.lattice_data()?;
            let orbits = nondegen::face_weyl_orbits(&dinf, &lat.weyl, &faces);
            let overall = nondegen::nondegen_status(&sys, &fq, extension_cap)?;
            let per_face: Vec<Value> = if matches!(sys.group, GroupKind::Torus { n: 1 }) {
                Vec::new()
            } else {
                (0..faces.len())
                    .map(|i| {
                        let status =
                            nondegen::critical_witness_search(&sys, &fq, i, extension_cap)?;
                        Ok(json!({
                            "face_index": i,
                            "face_dim": faces[i].affine_dim,
                            "status": serde_json::to_value(&status).unwrap(),
                        }))
                    })
                    .collect::<Result<_, CliError>>()?
            };
            Ok(json!({
                "system": sums::system_summary(&sys),
                "q": fq.q(),
                "faces_without_origin": faces.len(),
                "face_weyl_orbits": orbits.len(),
                "overall": serde_json::to_value(&overall).unwrap(),
                "per_face": per_face,
            }))
        }
        Command::Orbit { file } => {
            let sys = parse_system(&file)?;
            let lat = sys.lattice_data()?;
            let orbits: Vec<Value> = sys
                .max_weights()?
                .iter()
                .map(|w| {
                    let mut orbit: std::collections::BTreeSet<Vec<i64>> =
                        std::collections::BTreeSet::new();
                    for mat in &lat.weyl {
                        let mut out = vec![0i64; lat.rank];
                        for r in 0..lat.rank {
                            for c in 0..lat.rank {
                                out[r] += mat[r * lat.rank + c] * w[c];
                            }
                        }
                        orbit.insert(out);
                    }
                    json!({
                        "maximal_weight": w,
                        "orbit_size": orbit.len(),
                        "orbit": orbit.into_iter().collect::<Vec<_>>(),
                    })
                })
                .collect();
            Ok(json!({
                "system": sums::system_summary(&sys),
                "weyl_order": lat.weyl.len(),
                "orbits": orbits,
            }))
        }
        Command::Polytope { file } => {
            let sys = parse_system(&file)?;
            let lat = sys.lattice_data()?;
            let (delta, delta_infty) = newton_polytopes(&sys)?;
            let chamber_cut = hypsum_core::polytope::intersect_halfspaces(
                &delta_infty,
                &chamber_halfspaces(&lat),
            )?;
            Ok(json!({
                "system": sums::system_summary(&sys),
                "delta": polytope_json(&delta),
                "delta_infty": polytope_json(&delta_infty),
                "chamber_cut": polytope_json(&chamber_cut),
                "homogenized_delta_infty":
                    polytope_json(&rank_bound(&homogenize(&sys)?)?.delta_infty),
            }))
        }
    }
}

fn emit(value: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable")
    );
}

fn main() {
    match run() {
        Ok(value) => {
            emit(&value);
            std::process::exit(0);
        }
        Err(CliError::VerifyFailed) => {
            eprintln!(
                "{}",
                json!({"error": {"kind": "verify_failed",
                                 "message": "an asserted entry exceeds the bound"}})
            );
            std::process::exit(3);
        }
        Err(CliError::SizeGuard(msg)) => {
            eprintln!(
                "{}",
                json!({"error": {"kind": "size_guard", "message": msg}})
            );
            std::process::exit(2);
        }
        Err(CliError::Validation(msg)) => {
            eprintln!(
                "{}",
                json!({"error": {"kind": "validation", "message": msg}})
            );
            std::process::exit(1);
        }
    }
}
