//! `cellblocks` — command-line front end for the cell, decomposition-matrix,
//! unipotent-support and dimension-polynomial checks.
//!
//! Every command prints one JSON document on stdout. The exit code is 0 when
//! the command found no violations outside flagged controls, 3 when it did,
//! 1 on errors and 2 on usage errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use cellblocks::coxeter::CoxeterSystem;
use cellblocks::degrees::{membership, parse_point, registry_by_name};
use cellblocks::hecke::{check_triangularity, decomposition_matrix, poincare_value, TriangularityMode};
use cellblocks::lietype::{
    character_table, jordan_type, principal_series_mod, unipotent_principal_series, unipotent_support,
    FiniteMatrixGroup, GroupFamily,
};
use cellblocks::verify::{cells_summary, dipper_bridge, run_verification, GroupScenario, Scenario, VerifyConfig};

#[derive(Debug, Parser)]
#[command(name = "cellblocks", version)]
#[command(about = "Kazhdan-Lusztig cells, Hecke decomposition matrices and unipotent supports")]
struct Cli {
    /// Compact JSON instead of pretty-printed.
    #[arg(long, global = true)]
    compact: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the full scenario grid described by a TOML configuration.
    Verify {
        /// TOML file with `types`, `q`, `ell`, `seed`, `output`, `groups`,
        /// `type_a_ranks`; omitted keys take their defaults.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Overrides the `output` path of the configuration.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Two-sided Kazhdan-Lusztig cells with a-values and the cell order.
    Cells {
        /// Coxeter type: A1..A4, B2, C2, G2 or I2(m).
        type_label: String,
    },
    /// Decomposition matrix of the Hecke algebra and its triangularity checks.
    Decomp {
        type_label: String,
        q: i64,
        ell: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Dimension-polynomial registries.
    Degrees {
        #[command(subcommand)]
        command: DegreesCommand,
    },
    /// Conjugacy classes or the character table of a small group of Lie type.
    Group {
        /// GL or SL.
        family: String,
        n: usize,
        q: u32,
        what: GroupQuery,
    },
    /// Unipotent supports and average values of every irreducible character.
    Support { family: String, n: usize, q: u32 },
    /// Composition factors of k[G/B] with their B-fixed dimensions, and the
    /// comparison with the simple modules of the Hecke algebra.
    Pseries {
        family: String,
        n: usize,
        q: u32,
        ell: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
enum DegreesCommand {
    /// Which registry polynomials take each value at `q`.
    Check {
        /// D0(A1,id), D0(C2,twisted), Dbar(C2,twisted) or span(A1,id).
        label: String,
        /// Evaluation point in the registry field, e.g. `5` or `2*s` (s = sqrt 2).
        q: String,
        /// Comma-separated dimensions.
        #[arg(value_delimiter = ',')]
        dims: Vec<i64>,
    },
    /// Print a registry in the registry file format.
    Show { label: String },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GroupQuery {
    Classes,
    Chars,
}

struct Outcome {
    value: serde_json::Value,
    clean: bool,
}

impl Outcome {
    fn clean(value: impl Serialize) -> Result<Self> {
        Ok(Self { value: serde_json::to_value(value)?, clean: true })
    }
}

fn group(family: &str, n: usize, q: u32) -> Result<FiniteMatrixGroup> {
    let family: GroupFamily = family.parse()?;
    Ok(FiniteMatrixGroup::build(family, n, q)?)
}

fn run(command: Command) -> Result<(Outcome, Option<PathBuf>)> {
    let outcome = match command {
        Command::Verify { config, output } => {
            let config: VerifyConfig = match config {
                Some(path) => {
                    let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
                    toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))?
                }
                None => VerifyConfig::default(),
            };
            let target = output.or_else(|| config.output.as_ref().map(PathBuf::from));
            let report = run_verification(&config)?;
            let clean = report.clean();
            return Ok((Outcome { value: serde_json::to_value(&report)?, clean }, target));
        }
        Command::Cells { type_label } => Outcome::clean(cells_summary(&type_label)?)?,
        Command::Decomp { type_label, q, ell, seed } => {
            let scenario = Scenario::new(&type_label, q, ell, seed)?;
            let sys = CoxeterSystem::from_label(&type_label)?;
            let d = decomposition_matrix(&sys, q, ell, seed)?;
            let a_mode = check_triangularity(&d, TriangularityMode::A);
            let cell_mode = check_triangularity(&d, TriangularityMode::Cell);
            let clean = !scenario.flags.counted() || (a_mode.passed && cell_mode.passed);
            let value = json!({
                "scenario": scenario,
                "poincare_value": poincare_value(&sys, q).to_string(),
                "decomposition": d,
                "a_mode": a_mode,
                "cell_mode": cell_mode,
            });
            Outcome { value, clean }
        }
        Command::Degrees { command: DegreesCommand::Check { label, q, dims } } => {
            let set = registry_by_name(&label)?;
            let point = parse_point(&q, set.field())?;
            let mut rows = Vec::new();
            let mut non_members = Vec::new();
            for &n in &dims {
                let hits: Vec<String> = membership(n, &point, &set)?.iter().map(|e| e.poly.to_text()).collect();
                if hits.is_empty() {
                    non_members.push(n);
                }
                rows.push(json!({ "dim": n, "matches": hits }));
            }
            let clean = non_members.is_empty();
            let value = json!({
                "registry": set.label().to_string(),
                "q": point.to_string(),
                "results": rows,
                "non_members": non_members,
            });
            Outcome { value, clean }
        }
        Command::Degrees { command: DegreesCommand::Show { label } } => {
            let set = registry_by_name(&label)?;
            Outcome::clean(json!({ "registry": set.label().to_string(), "file": set.to_file_text() }))?
        }
        Command::Group { family, n, q, what } => {
            let g = group(&family, n, q)?;
            match what {
                GroupQuery::Classes => {
                    let classes: Vec<_> = g
                        .classes()
                        .iter()
                        .map(|c| {
                            json!({
                                "representative": g.element(c.representative),
                                "size": c.size,
                                "order": c.order,
                                "jordan_type": jordan_type(&g, c.representative).map(|p| p.label()),
                            })
                        })
                        .collect();
                    Outcome::clean(json!({ "group": g.label(), "order": g.order(), "classes": classes }))?
                }
                GroupQuery::Chars => Outcome::clean(character_table(&g)?)?,
            }
        }
        Command::Support { family, n, q } => {
            let g = group(&family, n, q)?;
            let table = character_table(&g)?;
            let principal = unipotent_principal_series(&g, &table)?;
            let mut rows = Vec::new();
            for chi in 0..table.len() {
                let support = unipotent_support(&g, &table, chi)?;
                let label = principal.iter().find(|(_, c)| *c == chi).map(|(l, _)| l.label());
                rows.push(json!({
                    "character": chi,
                    "degree": table.degrees[chi],
                    "principal_series": label,
                    "support": support.class.partition.label(),
                    "springer_fibre_dim": support.class.springer_fibre_dim,
                    "average_values": support.average_values,
                }));
            }
            Outcome::clean(json!({ "group": g.label(), "characters": rows }))?
        }
        Command::Pseries { family, n, q, ell, seed } => {
            let g = group(&family, n, q)?;
            let scenario = GroupScenario::new(g.family(), n, q, ell, seed)?;
            if scenario.flags.defining_control {
                bail!("l = {ell} is the defining characteristic of {}", g.label());
            }
            let (field, factors) = principal_series_mod(&g, ell, 1, seed)?;
            let bridge = dipper_bridge(&scenario)?;
            let clean = !scenario.admissible() || bridge.passed;
            let value = json!({ "scenario": scenario, "field": field, "factors": factors, "bridge": bridge });
            Outcome { value, clean }
        }
    };
    Ok((outcome, None))
}

fn main() -> Result<ExitCode> {
    let cli = Cli::parse();
    let (outcome, target) = run(cli.command)?;
    let text =
        if cli.compact { serde_json::to_string(&outcome.value)? } else { serde_json::to_string_pretty(&outcome.value)? };
    match target {
        Some(path) => fs::write(&path, text + "\n").with_context(|| format!("writing {}", path.display()))?,
        None => println!("{text}"),
    }
    Ok(if outcome.clean { ExitCode::SUCCESS } else { ExitCode::from(3) })
}
