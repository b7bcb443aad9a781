use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use stanley::clutter::{ChordalityCertificate, CHORDAL_MAX_VERTICES};
use stanley::depth::{depth_report_with_limit, DEPTH_MAX_VARIABLES};
use stanley::harness::gen::{generate_chordal_clutters, random_ideals};
use stanley::harness::{
    evaluate, run_sweep, run_worked_examples, Bundle, Instance, InstanceJson, Record, Section,
    Source, VerificationReport, VerifyConfig,
};
use stanley::io::{
    witness_from_json, witness_to_json, ClutterJson, IdealJson, ParsedIdeal, WitnessJson,
};
use stanley::lq::{chordal_lq_order, find_lq_order, LqOrder};
use stanley::sdepth::{sdepth_with_limit, ModuleKind, SDEPTH_MAX_VARIABLES};
use stanley::sv::{check_sv_witness, sv_number_with_limit, SV_MAX_GENERATORS};
use stanley::{Clutter, Field, SqfIdeal, VarSet};

#[derive(Parser)]
#[command(
    name = "stanley",
    version,
    about = "Exact depth, Stanley depth and Schmitt-Vogel computations for squarefree monomial ideals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Io {
    /// Input JSON file (stdin when omitted).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Write the JSON result here instead of stdout.
    #[arg(long)]
    json_out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Projective dimension and depth through Hochster's formula.
    Depth {
        #[command(flatten)]
        io: Io,
        #[arg(long, default_value = "Q")]
        field: Field,
        /// Largest number of variables accepted.
        #[arg(long, default_value_t = DEPTH_MAX_VARIABLES)]
        max_n: usize,
    },
    /// Exact Stanley depth with an interval-partition certificate.
    Sdepth {
        #[command(flatten)]
        io: Io,
        #[arg(long, default_value = "quotient")]
        kind: ModuleKind,
        /// Largest number of variables accepted.
        #[arg(long, default_value_t = SDEPTH_MAX_VARIABLES)]
        max_n: usize,
    },
    /// Restricted Schmitt-Vogel number, or a check of a given witness.
    Sv {
        #[command(flatten)]
        io: Io,
        /// Witness file to check instead of searching.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Largest number of minimal generators accepted by the search.
        #[arg(long, default_value_t = SV_MAX_GENERATORS)]
        max_generators: usize,
    },
    /// Chordality of a clutter, optionally with the ideal of its d-complement.
    Chordal {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        d: Option<usize>,
        /// Largest number of vertices accepted.
        #[arg(long, default_value_t = CHORDAL_MAX_VERTICES)]
        max_n: usize,
    },
    /// A linear quotients order: from a clutter and --d, or by search on an ideal.
    Lq {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        d: Option<usize>,
    },
    /// Run the verification sweep, or replay a bundle or instance file.
    Verify {
        #[command(flatten)]
        io: Io,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Largest ring size in the generated sweeps.
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long, default_value = "Q")]
        field: Field,
        /// Compute over the generator support and check free-variable shifts.
        #[arg(long)]
        trim: bool,
        /// Random ideals in the Schmitt-Vogel sweep.
        #[arg(long, default_value_t = 200)]
        ideals: usize,
        /// Clutters requested per (n, d) in the chordal sweep.
        #[arg(long, default_value_t = 16)]
        per_cell: usize,
    },
    /// Emit seeded instances as JSON.
    Gen {
        #[arg(long)]
        json_out: Option<PathBuf>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Vertex count for chordal clutters; largest ring size for random ideals.
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        /// Edge size lower bound; omit to emit random ideals instead of clutters.
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 8)]
        max_generators: usize,
    },
    /// Run the two worked examples.
    Examples {
        #[arg(long)]
        json_out: Option<PathBuf>,
        #[arg(long, default_value = "Q")]
        field: Field,
    },
}

/// Failure modes mapped onto exit codes 2 (usage) and 1 (failed check).
enum Failure {
    Usage(String),
    Check(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult = Result<(), Failure>;

fn read_input(path: &Option<PathBuf>) -> Result<String, Failure> {
    match path {
        Some(p) => {
            fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
        }
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn write_output<T: Serialize>(path: &Option<PathBuf>, value: &T) -> CliResult {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_ideal(io: &Io) -> Result<SqfIdeal, Failure> {
    parse_ideal(&read_input(&io.input)?)
}

/// Parses a squarefree ideal; general monomial ideals are polarized first.
fn parse_ideal(text: &str) -> Result<SqfIdeal, Failure> {
    let json: IdealJson = serde_json::from_str(text)?;
    Ok(match json.parse()? {
        ParsedIdeal::Squarefree(i) => i,
        ParsedIdeal::General { n, generators } => {
            eprintln!("note: input is not squarefree; working with its polarization");
            stanley::polarize(n, &generators)?.ideal
        }
    })
}

fn lq_json(lq: &LqOrder, ideal: &SqfIdeal) -> Result<Value, Failure> {
    Ok(json!({
        "order": lq.order().iter().map(|s| s.to_vec()).collect::<Vec<_>>(),
        "colon_counts": lq.colon_counts(),
        "pd": lq.projective_dimension(),
        "depth_quotient": lq.depth(ideal.ambient())?,
    }))
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Depth { io, field, max_n } => {
            let ideal = read_ideal(&io)?;
            let report =
                depth_report_with_limit(&ideal, VarSet::full(ideal.ambient()), field, max_n)?;
            write_output(&io.json_out, &report)
        }
        Command::Sdepth { io, kind, max_n } => {
            let ideal = read_ideal(&io)?;
            let res = sdepth_with_limit(&ideal, kind, VarSet::full(ideal.ambient()), max_n)?;
            write_output(
                &io.json_out,
                &json!({
                    "sdepth": res.value,
                    "certificate": res.certificate.to_index_lists(),
                }),
            )
        }
        Command::Sv {
            io,
            witness,
            max_generators,
        } => {
            let ideal = read_ideal(&io)?;
            if let Some(path) = witness {
                let levels: WitnessJson = serde_json::from_str(&read_input(&Some(path))?)?;
                let w = witness_from_json(ideal.ambient(), &levels)?;
                let violation = check_sv_witness(&ideal, &w)?;
                write_output(
                    &io.json_out,
                    &json!({
                        "valid": violation.is_none(),
                        "levels": w.len(),
                        "violation": violation.as_ref().map(|v| v.to_string()),
                    }),
                )?;
                return match violation {
                    None => Ok(()),
                    Some(v) => Err(Failure::Check(format!("witness rejected: {v}"))),
                };
            }
            let res = sv_number_with_limit(&ideal, max_generators)?;
            write_output(
                &io.json_out,
                &json!({
                    "sv_restricted": res.restricted,
                    "witness": witness_to_json(&res.witness),
                }),
            )
        }
        Command::Chordal { io, d, max_n } => {
            let json: ClutterJson = serde_json::from_str(&read_input(&io.input)?)?;
            let c = json.to_clutter()?;
            let cert = c.is_chordal_with_limit(max_n)?;
            let mut out = json!({
                "chordal": cert.is_chordal(),
                "simplicial_vertices": c.simplicial_vertices(),
            });
            if let ChordalityCertificate::NotChordal { witness } = &cert {
                out["witness"] = serde_json::to_value(witness)?;
            }
            if let Some(d) = d {
                let ideal = c.d_complement(d)?.edge_ideal()?;
                out["ideal"] = serde_json::to_value(IdealJson::from_ideal(&ideal))?;
            }
            write_output(&io.json_out, &out)
        }
        Command::Lq { io, d } => {
            let text = read_input(&io.input)?;
            let out = match d {
                Some(d) => {
                    let c: ClutterJson = serde_json::from_str(&text)?;
                    let c: Clutter = c.to_clutter()?;
                    let ideal = c.d_complement(d)?.edge_ideal()?;
                    let lq = chordal_lq_order(&c, d)?;
                    lq_json(&lq, &ideal)?
                }
                None => {
                    let ideal = parse_ideal(&text)?;
                    match find_lq_order(&ideal)? {
                        Some(lq) => lq_json(&lq, &ideal)?,
                        None => json!({ "order": null }),
                    }
                }
            };
            write_output(&io.json_out, &out)
        }
        Command::Verify {
            io,
            seed,
            max_n,
            field,
            trim,
            ideals,
            per_cell,
        } => {
            let cfg = VerifyConfig {
                seed,
                field,
                max_n,
                clutters_per_cell: per_cell,
                smain_count: ideals,
                trim,
                ..VerifyConfig::default()
            };
            match &io.input {
                None => {
                    let (report, instances) = run_sweep(&cfg)?;
                    finish_report(&io, &report, &instances)
                }
                Some(_) => verify_file(&io, &cfg),
            }
        }
        Command::Gen {
            json_out,
            seed,
            max_n,
            d,
            count,
            max_generators,
        } => {
            let instances: Vec<InstanceJson> = match d {
                Some(d) => generate_chordal_clutters(max_n, d, count, seed)?
                    .0
                    .into_iter()
                    .enumerate()
                    .map(|(k, (c, _))| {
                        Instance::from_clutter(
                            format!("main-n{max_n}-d{d}-{k:02}"),
                            Source::Generated,
                            c,
                            d,
                        )
                        .map(|i| i.to_json())
                    })
                    .collect::<Result<_, _>>()?,
                None => random_ideals(count, max_n, max_generators, seed)?
                    .into_iter()
                    .enumerate()
                    .map(|(k, i)| {
                        Instance::from_ideal(format!("smain-{k:03}"), Source::Generated, i)
                            .to_json()
                    })
                    .collect(),
            };
            write_output(&json_out, &instances)
        }
        Command::Examples { json_out, field } => {
            let cfg = VerifyConfig {
                field,
                ..VerifyConfig::default()
            };
            let records = run_worked_examples(&cfg);
            write_output(&json_out, &records)?;
            match records.iter().find(|r| !r.passed()) {
                None => Ok(()),
                Some(r) => Err(Failure::Check(format!("{} failed", r.id))),
            }
        }
    }
}

fn bundle_path(io: &Io, id: &str) -> PathBuf {
    let name = format!("counterexample-{id}.json");
    match io.json_out.as_deref().and_then(Path::parent) {
        Some(dir) if !dir.as_os_str().is_empty() => dir.join(name),
        _ => PathBuf::from(name),
    }
}

fn describe(record: &Record) -> String {
    record
        .failures()
        .map(|c| {
            let detail = c
                .detail
                .as_deref()
                .map(|d| format!(" ({d})"))
                .unwrap_or_default();
            format!("{}: {} {} {}{detail}", c.name, c.lhs, c.relation, c.rhs)
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn finish_report(
    io: &Io,
    report: &VerificationReport,
    instances: &[(Section, Instance)],
) -> CliResult {
    write_output(&io.json_out, report)?;
    let s = &report.summary;
    eprintln!(
        "examples {} | main {} ({} skipped) | smain {} ({} skipped) | checks {} | failed {}",
        s.example_instances,
        s.main_instances,
        s.main_skipped,
        s.smain_instances,
        s.smain_skipped,
        s.checks,
        s.failed_checks
    );
    match report.first_failure(instances) {
        None => Ok(()),
        Some(bundle) => {
            let path = bundle_path(io, &bundle.record.id);
            write_output(&Some(path.clone()), &bundle)?;
            Err(Failure::Check(format!(
                "{}: {}\nbundle written to {}; replay with: stanley verify --input {}",
                bundle.record.id,
                describe(&bundle.record),
                path.display(),
                path.display()
            )))
        }
    }
}

/// Replays a bundle, or evaluates the instances of a file: clutter instances
/// in the chordal section, bare ideals in the Schmitt-Vogel section.
fn verify_file(io: &Io, cfg: &VerifyConfig) -> CliResult {
    let value: Value = serde_json::from_str(&read_input(&io.input)?)?;
    if value.get("section").is_some() && value.get("instance").is_some() {
        let bundle: Bundle = serde_json::from_value(value)?;
        let record = bundle.replay()?;
        write_output(&io.json_out, &record)?;
        return if record.passed() {
            eprintln!(
                "{}: all {} checks pass on replay",
                record.id,
                record.checks.len()
            );
            Ok(())
        } else {
            Err(Failure::Check(format!(
                "{}: {}",
                record.id,
                describe(&record)
            )))
        };
    }
    let items: Vec<InstanceJson> = match value {
        Value::Array(_) => serde_json::from_value(value)?,
        Value::Object(ref o) if o.contains_key("id") => vec![serde_json::from_value(value)?],
        Value::Object(ref o) if o.contains_key("edges") => {
            return Err(Failure::Usage(
                "a bare clutter needs an instance wrapper with \"d\"".into(),
            ))
        }
        _ => {
            let ideal: IdealJson = serde_json::from_value(value)?;
            vec![InstanceJson {
                id: "input".into(),
                source: Source::File,
                clutter: None,
                d: None,
                ideal: Some(ideal),
                quadratic: None,
            }]
        }
    };
    let instances = items
        .iter()
        .map(|j| {
            let i = j.to_instance()?;
            let section = if i.clutter.is_some() {
                Section::Main
            } else {
                Section::Smain
            };
            Ok((section, i))
        })
        .collect::<Result<Vec<_>, stanley::Error>>()?;
    let records = |s: Section| -> Vec<Record> {
        instances
            .iter()
            .filter(|(t, _)| *t == s)
            .map(|(_, i)| evaluate(s, i, cfg))
            .collect()
    };
    let report = VerificationReport::new(
        cfg.clone(),
        Vec::new(),
        Vec::new(),
        records(Section::Main),
        records(Section::Smain),
    );
    finish_report(io, &report, &instances)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("FAIL {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
