//! Command-line front end: graph generation and export, the enumeration
//! tables as CSV, degree distributions, metric and decomposition reports,
//! Hamiltonian witnesses, and the formula-vs-oracle verification suite.
//!
//! All results go to stdout (deterministic bytes for a fixed invocation);
//! diagnostics go to stderr. Exit codes: 0 success, 1 verification or
//! runtime failure, 2 usage error, 3 resource cap exceeded.

use clap::{Args, Parser, Subcommand};
use metallic::graph::{ExportFormat, MetallicCube};
use metallic::hamilton::{self, PathWitness, WitnessKind};
use metallic::strings::MetallicString;
use metallic::verify::{self, Caps, Outcome};
use metallic::{counting, metrics, structure, Error};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "metallic",
    about = "Metallic cubes: construction, enumeration, metrics, Hamiltonicity",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Params {
    /// Alphabet size (letters 0..=a).
    #[arg(long)]
    a: u32,
    /// Word length.
    #[arg(long)]
    n: usize,
    /// Maximum number of vertices to materialize.
    #[arg(long = "vertex-cap", default_value_t = metallic::DEFAULT_VERTEX_CAP)]
    vertex_cap: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Build Π^a_n and write it in the chosen format.
    Generate {
        #[command(flatten)]
        params: Params,
        /// Output format: dot, json or edgelist.
        #[arg(long, default_value = "edgelist")]
        format: String,
    },
    /// Reproduce the enumeration tables as CSV.
    Tables {
        #[command(subcommand)]
        table: TableCommand,
    },
    /// Degree distribution of one cube as JSON.
    Degrees {
        #[command(flatten)]
        params: Params,
        /// Route: auto (closed form, brute for a = 1), brute, closed or gf.
        #[arg(long, default_value = "auto")]
        method: String,
    },
    /// Metric report (eccentricities, radius, diameter, center, periphery)
    /// as JSON.
    Metrics {
        #[command(flatten)]
        params: Params,
        /// Exit nonzero if any formula-vs-oracle verdict fails.
        #[arg(long)]
        check: bool,
        /// Maximum |V| for the all-pairs BFS sweep.
        #[arg(long = "allpairs-cap", default_value_t = metallic::DEFAULT_ALLPAIRS_CAP)]
        allpairs_cap: u64,
    },
    /// Decomposition report (canonical, grid or quotient) as JSON.
    Decompose {
        #[command(flatten)]
        params: Params,
        /// Which decomposition: canonical, grid or quotient.
        #[arg(long, default_value = "canonical")]
        kind: String,
        /// Also run the explicit induced-isomorphism checks.
        #[arg(long)]
        verify: bool,
    },
    /// Per-vertex images under the Fibonacci-cube embedding (TSV).
    Embed {
        #[command(flatten)]
        params: Params,
        /// Verify injectivity, image validity and adjacency faithfulness.
        #[arg(long)]
        check: bool,
    },
    /// Hamiltonian path (default) or cycle, one vertex per line; or validate
    /// an externally provided witness file.
    Hamilton {
        #[command(flatten)]
        params: Params,
        /// Construct a cycle (even a; a spanning cycle for odd n, a
        /// near-cycle for even n) instead of a path.
        #[arg(long)]
        cycle: bool,
        /// Validate the witness in this file (one vertex per line; `#`
        /// lines ignored) instead of constructing one.
        #[arg(long)]
        validate: Option<PathBuf>,
    },
    /// Run every formula-vs-oracle check on Π^a_n; exit 0 iff all pass.
    Verify {
        #[command(flatten)]
        params: Params,
        /// Seed for the sampled median/eccentricity spot checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "allpairs-cap", default_value_t = metallic::DEFAULT_ALLPAIRS_CAP)]
        allpairs_cap: u64,
    },
}

#[derive(Subcommand)]
enum TableCommand {
    /// Vertex counts s^a_n: rows a, columns n.
    Vertices {
        #[arg(long = "max-a", default_value_t = 6)]
        max_a: u32,
        #[arg(long = "max-n", default_value_t = 8)]
        max_n: usize,
    },
    /// Edge counts e^a_n: rows a, columns n; `--poly` emits the polynomial
    /// coefficient rows instead.
    Edges {
        #[arg(long = "max-a", default_value_t = 6)]
        max_a: u32,
        #[arg(long = "max-n", default_value_t = 8)]
        max_n: usize,
        #[arg(long)]
        poly: bool,
    },
    /// Degree distribution for one alphabet: rows n, columns k.
    Degrees {
        #[arg(long)]
        a: u32,
        #[arg(long = "max-n", default_value_t = 5)]
        max_n: usize,
        #[arg(long = "vertex-cap", default_value_t = metallic::DEFAULT_VERTEX_CAP)]
        vertex_cap: u64,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::CapExceeded { .. } => ExitCode::from(3),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn run(cli: Cli) -> metallic::Result<ExitCode> {
    match cli.command {
        Command::Generate { params, format } => {
            let format: ExportFormat = format.parse()?;
            let g = build(&params)?;
            print!("{}", g.export(format));
            Ok(ExitCode::SUCCESS)
        }
        Command::Tables { table } => {
            match table {
                TableCommand::Vertices { max_a, max_n } => {
                    print!("{}", counting::vertex_table_csv(max_a, max_n)?);
                }
                TableCommand::Edges { max_a, max_n, poly } => {
                    if poly {
                        print!("{}", counting::edge_poly_csv(max_n));
                    } else {
                        print!("{}", counting::edge_table_csv(max_a, max_n)?);
                    }
                }
                TableCommand::Degrees {
                    a,
                    max_n,
                    vertex_cap,
                } => {
                    print!("{}", counting::degree_table_csv(a, max_n, vertex_cap)?);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Degrees { params, method } => degrees(&params, &method),
        Command::Metrics {
            params,
            check,
            allpairs_cap,
        } => metric_report(&params, check, allpairs_cap),
        Command::Decompose {
            params,
            kind,
            verify,
        } => decompose(&params, &kind, verify),
        Command::Embed { params, check } => embed(&params, check),
        Command::Hamilton {
            params,
            cycle,
            validate,
        } => hamilton_cmd(&params, cycle, validate),
        Command::Verify {
            params,
            seed,
            allpairs_cap,
        } => {
            let caps = Caps {
                vertex_cap: params.vertex_cap,
                allpairs_cap,
            };
            let checks = verify::run_all(params.a, params.n, seed, caps)?;
            for c in &checks {
                match &c.outcome {
                    Outcome::Pass => println!("PASS {}", c.name),
                    Outcome::Fail(detail) => println!("FAIL {} ({detail})", c.name),
                    Outcome::Skipped(reason) => println!("SKIP {} ({reason})", c.name),
                }
            }
            if verify::all_passed(&checks) {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
    }
}

fn build(params: &Params) -> metallic::Result<MetallicCube> {
    MetallicCube::build_capped(params.a, params.n, params.vertex_cap)
}

fn degrees(params: &Params, method: &str) -> metallic::Result<ExitCode> {
    let table = match method {
        "auto" => counting::degree_distribution_auto(params.a, params.n, params.vertex_cap)?,
        "brute" => counting::degree_distribution_brute(&build(params)?),
        "closed" => counting::degree_distribution_closed(params.a, params.n)?,
        "gf" => counting::degree_gf(params.a, params.n)?.degree_table(params.n),
        _ => {
            return Err(Error::InvalidParameter(
                "method must be auto, brute, closed or gf",
            ))
        }
    };
    let counts: serde_json::Map<String, serde_json::Value> = table
        .counts()
        .iter()
        .map(|(k, v)| (k.to_string(), json!(v.to_string())))
        .collect();
    let doc = json!({
        "a": params.a,
        "n": params.n,
        "method": table.method().to_string(),
        "counts": counts,
    });
    println!("{doc}");
    Ok(ExitCode::SUCCESS)
}

fn metric_report(params: &Params, check: bool, allpairs_cap: u64) -> metallic::Result<ExitCode> {
    let g = build(params)?;
    let report = metrics::metric_report_capped(&g, allpairs_cap)?;
    let texts = |ranks: &[u32]| -> Vec<String> {
        ranks.iter().map(|&r| g.vertex_text(r as usize)).collect()
    };
    let doc = json!({
        "a": report.a,
        "n": report.n,
        "radius": report.radius,
        "diameter": report.diameter,
        "formula_radius": report.formula_radius,
        "formula_diameter": report.formula_diameter,
        "center": texts(&report.center),
        "center_predicate": texts(&report.center_predicate_set),
        "formula_center_size": report.formula_center_size.to_string(),
        "periphery": texts(&report.periphery),
        "periphery_formula": texts(&report.periphery_formula_set),
        "eccentricities": report.eccentricities,
        "verdicts": {
            "radius": report.verdicts.radius_ok,
            "diameter": report.verdicts.diameter_ok,
            "center": report.verdicts.center_ok,
            "center_size": report.verdicts.center_size_ok,
            "periphery": report.verdicts.periphery_ok,
        },
        "all_ok": report.verdicts.all_ok(),
    });
    println!("{doc}");
    if check && !report.verdicts.all_ok() {
        eprintln!(
            "metric verdicts failed for a = {}, n = {}",
            params.a, params.n
        );
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn decompose(params: &Params, kind: &str, verify: bool) -> metallic::Result<ExitCode> {
    let g = build(params)?;
    let doc = match kind {
        "canonical" => {
            let dec = structure::canonical_decomposition(&g, verify)?;
            json!({
                "kind": "canonical",
                "a": params.a,
                "n": params.n,
                "letter_part_sizes": dec.letter_parts.iter().map(Vec::len).collect::<Vec<_>>(),
                "block_part_size": dec.block_part.len(),
                "cross_edges": dec.cross_edge_count,
                "sizes_ok": dec.sizes_ok,
                "cross_edges_ok": dec.cross_edges_ok,
                "parts_isomorphic": dec.parts_isomorphic,
                "all_ok": dec.all_ok(),
            })
        }
        "grid" => {
            let dec = structure::grid_decomposition(&g, verify)?;
            let classes: Vec<serde_json::Value> = dec
                .classes
                .iter()
                .map(|c| {
                    json!({
                        "block_positions": c.block_positions,
                        "size": c.members.len(),
                    })
                })
                .collect();
            json!({
                "kind": "grid",
                "a": params.a,
                "n": params.n,
                "class_count": dec.classes.len(),
                "classes": classes,
                "class_count_ok": dec.class_count_ok,
                "sizes_ok": dec.sizes_ok,
                "grids_verified": dec.grids_verified,
                "all_ok": dec.all_ok(),
            })
        }
        "quotient" => {
            let q = structure::quotient_graph(&g)?;
            let gamma = structure::build_fibonacci_cube(params.n - 1)?;
            let images: Vec<String> = q
                .fibonacci_image
                .iter()
                .map(|&r| gamma.vertex(r as usize).to_string())
                .collect();
            json!({
                "kind": "quotient",
                "a": params.a,
                "n": params.n,
                "vertices": q.vertex_count(),
                "edges": q.edge_count(),
                "class_sizes": q.classes.iter().map(|c| c.members.len()).collect::<Vec<_>>(),
                "fibonacci_images": images,
                "isomorphism_ok": q.isomorphism_ok,
            })
        }
        _ => {
            return Err(Error::InvalidParameter(
                "kind must be canonical, grid or quotient",
            ))
        }
    };
    println!("{doc}");
    let ok = doc["all_ok"].as_bool().or(doc["isomorphism_ok"].as_bool());
    if verify && ok == Some(false) {
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn embed(params: &Params, check: bool) -> metallic::Result<ExitCode> {
    let g = build(params)?;
    let mut images = Vec::with_capacity(g.vertex_count());
    for rank in 0..g.vertex_count() {
        let image = structure::sigma_embed(&g.vertex(rank))?;
        println!("{}\t{}", g.vertex_text(rank), image);
        images.push(image);
    }
    if !check {
        return Ok(ExitCode::SUCCESS);
    }
    let mut seen = std::collections::HashSet::new();
    let mut ok = true;
    for image in &images {
        ok &= image.fibonacci_valid();
        ok &= seen.insert(image.bits().to_vec());
    }
    if g.vertex_count() <= 2_000 {
        for u in 0..g.vertex_count() {
            for v in u + 1..g.vertex_count() {
                let adjacent = g.neighbors(u).binary_search(&(v as u32)).is_ok();
                ok &= adjacent == (images[u].hamming(&images[v])? == 1);
            }
        }
    } else {
        for (u, v) in g.edges() {
            ok &= images[u as usize].hamming(&images[v as usize])? == 1;
        }
        eprintln!("note: graph too large for the exhaustive non-edge check; edges only");
    }
    if ok {
        eprintln!("embedding check passed");
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("embedding check FAILED");
        Ok(ExitCode::from(1))
    }
}

fn hamilton_cmd(
    params: &Params,
    cycle: bool,
    validate: Option<PathBuf>,
) -> metallic::Result<ExitCode> {
    let g = build(params)?;
    if let Some(path) = validate {
        let text = std::fs::read_to_string(path)?;
        let mut sequence = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let word = MetallicString::parse(params.a, line)?;
            sequence.push(g.rank_of(&word)? as u32);
        }
        let witness = classify_external(&g, sequence, cycle);
        let report = hamilton::validate_witness(&g, &witness);
        if report.valid {
            println!("valid {}", witness.kind);
            return Ok(ExitCode::SUCCESS);
        }
        println!(
            "invalid {}: {}",
            witness.kind,
            report.violation.map_or_else(String::new, |v| v.to_string())
        );
        return Ok(ExitCode::from(1));
    }

    let witness = if cycle {
        hamilton::hamiltonian_cycle(&g)?
    } else {
        hamilton::hamiltonian_path(&g)?
    };
    eprintln!("kind: {}", witness.kind);
    if let Some(missed) = witness.missed {
        eprintln!("missed: {}", g.vertex_text(missed as usize));
    }
    for &rank in &witness.sequence {
        println!("{}", g.vertex_text(rank as usize));
    }
    Ok(ExitCode::SUCCESS)
}

/// Interprets an externally supplied vertex sequence: a path by default; with
/// `--cycle`, a spanning cycle, or a near-cycle when exactly one vertex is
/// absent (that vertex becomes the declared missed one).
fn classify_external(g: &MetallicCube, sequence: Vec<u32>, cycle: bool) -> PathWitness {
    if !cycle {
        return PathWitness {
            kind: WitnessKind::Path,
            sequence,
            missed: None,
            valid: false,
        };
    }
    if sequence.len() + 1 == g.vertex_count() {
        let mut covered = vec![false; g.vertex_count()];
        for &rank in &sequence {
            if let Some(slot) = covered.get_mut(rank as usize) {
                *slot = true;
            }
        }
        let absent: Vec<u32> = (0..g.vertex_count() as u32)
            .filter(|&r| !covered[r as usize])
            .collect();
        if let [missed] = absent.as_slice() {
            return PathWitness {
                kind: WitnessKind::NearCycle,
                sequence,
                missed: Some(*missed),
                valid: false,
            };
        }
    }
    PathWitness {
        kind: WitnessKind::Cycle,
        sequence,
        missed: None,
        valid: false,
    }
}
