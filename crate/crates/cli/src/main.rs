use clap::{Parser, Subcommand, ValueEnum};
use necklace_core::categorify::{categorify_hom_report, categorify_with, CategorifyOptions};
use necklace_core::error::Error;
use necklace_core::necklace::enumerate_tnd;
use necklace_core::presheaf::find_presheaf_iso;
use necklace_core::report::{
    ids, necklace_dot, necklace_json, parse_bisset, parse_sset, presheaf_json, presheaf_map_json, sset_json, CheckResult,
    RunReport, Status,
};
use necklace_core::sset::{GenId, Sset};
use necklace_core::straighten::{straighten_direct, Straightener};
use necklace_core::suites::{run_suite, Suite, SuiteOptions};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

const EXIT_SCHEMA: u8 = 2;
const EXIT_UNSUPPORTED: u8 = 3;
const EXIT_CHECK: u8 = 4;

#[derive(Parser)]
#[command(name = "necklace", version, about = "Hom computations, straightening and verification suites")]
struct Cli {
    /// Resource guard on expanded simplices.
    #[arg(long, global = true, default_value_t = 2_000_000)]
    max_cells: usize,
    /// Include wall-clock timings in the report (makes it non-deterministic).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// The hom simplicial set between two objects of a bisimplicial set.
    Hom {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Cap on both degrees of the bisimplicial hom.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Straighten a total space over a base.
    Straighten {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        total: PathBuf,
        /// Emit only the value at this object.
        #[arg(long)]
        at: Option<String>,
        /// Compare with the direct one-point extension and attach the isomorphism.
        #[arg(long)]
        certify: bool,
    },
    /// Totally non-degenerate necklaces between two vertices of a simplicial set.
    Necklaces {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, value_enum, default_value = "json")]
        emit: Emit,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        certify: bool,
    },
}

/// A failure that ends the run before any report exists.
struct Fatal {
    code: u8,
    error: Error,
}

impl From<Error> for Fatal {
    fn from(error: Error) -> Self {
        let code = match error {
            Error::Unsupported { .. } | Error::Resource(_) => EXIT_UNSUPPORTED,
            _ => EXIT_SCHEMA,
        };
        Fatal { code, error }
    }
}

fn read(path: &Path) -> Result<String, Fatal> {
    std::fs::read_to_string(path).map_err(|e| Error::Argument(format!("{}: {e}", path.display())).into())
}

fn find_gen<const D: usize>(s: &Sset<D>, id: &str) -> Result<GenId, Error> {
    ids(s).iter().position(|x| x == id).ok_or_else(|| Error::Argument(format!("no generator with id {id:?}")))
}

fn exit_for(report: &RunReport) -> u8 {
    if report.summary.failed > 0 {
        EXIT_CHECK
    } else if report.summary.unsupported > 0 {
        EXIT_UNSUPPORTED
    } else {
        0
    }
}

fn emit(result: Option<Value>, report: &RunReport) {
    let doc = match result {
        Some(r) => json!({"result": r, "report": report}),
        None => json!({"report": report}),
    };
    println!("{}", serde_json::to_string_pretty(&doc).expect("output serializes"));
}

fn run(cli: Cli) -> Result<u8, Fatal> {
    let start = Instant::now();
    let opts = CategorifyOptions { degree_cap: None, max_cells: cli.max_cells };
    let timings = |r: &mut RunReport| {
        if cli.timings {
            r.timings_ms = Some(BTreeMap::from([("total".to_string(), start.elapsed().as_millis())]));
        }
    };
    match cli.command {
        Command::Hom { base, from, to, degree } => {
            let text = read(&base)?;
            let w = parse_bisset(&text)?.to_sset()?;
            let (a, b) = (find_gen(&w, &from)?, find_gen(&w, &to)?);
            let opts = CategorifyOptions { degree_cap: degree, ..opts };
            let (hom, stab) = categorify_hom_report(&w, a, b, &opts)?;
            let mut checks = vec![CheckResult::new("levels are 1-ordered", true)];
            let exact = CheckResult::new(format!("stabilized within bound {:?}", stab.bound), stab.exact);
            checks.push(if stab.exact {
                exact
            } else {
                CheckResult { status: Status::Unsupported, ..exact.with_witness(format!("truncated at degree {}", degree.unwrap_or(0))) }
            });
            let mut report = RunReport::new(format!("hom {from} {to}"), &[text.as_bytes()], checks);
            timings(&mut report);
            let result = json!({"hom": sset_json(hom.sset()), "stabilization": stab});
            emit(Some(result), &report);
            Ok(exit_for(&report))
        }
        Command::Straighten { base, total, at, certify } => {
            let (wtext, ptext) = (read(&base)?, read(&total)?);
            let w = parse_bisset(&wtext)?.to_sset()?;
            let pj = parse_bisset(&ptext)?;
            let cw = categorify_with(&w, &opts)?;
            let p = pj.to_sset()?;
            let pmap = pj.projection(&w)?;
            let st = Straightener::new(&cw, &opts);
            let sp = st.straighten(&p, &pmap)?;
            let presheaf = sp.presheaf();
            let mut checks = vec![CheckResult::new("total space lies over the base", true)];
            if certify {
                let direct = straighten_direct(&cw, &p, &pmap, &opts)?;
                let iso = find_presheaf_iso(&cw.category, presheaf, &direct.presheaf)?;
                let cert = iso.as_ref().map(|f| presheaf_map_json(f, presheaf, &direct.presheaf));
                checks.push(CheckResult::new("colimit of pieces ≅ direct extension", iso.is_some()).with_certificate(cert));
            }
            let result = match at {
                Some(obj) => {
                    let g = find_gen(&w, &obj)?;
                    let i = cw.object_of(g)?;
                    json!({"object": obj, "value": sset_json(&presheaf.values[i])})
                }
                None => presheaf_json(&cw.category, presheaf),
            };
            let mut report = RunReport::new("straighten", &[wtext.as_bytes(), ptext.as_bytes()], checks);
            timings(&mut report);
            emit(Some(result), &report);
            Ok(exit_for(&report))
        }
        Command::Necklaces { base, from, to, emit: how } => {
            let text = read(&base)?;
            let k = parse_sset(&text)?;
            let (a, b) = (find_gen(&k, &from)?, find_gen(&k, &to)?);
            let tnd = enumerate_tnd(&k, a, b)?;
            match how {
                Emit::Dot => print!("{}", necklace_dot(&tnd)),
                Emit::Json => {
                    let mut report = RunReport::new(format!("necklaces {from} {to}"), &[text.as_bytes()], vec![CheckResult::new("1-ordered", true)]);
                    timings(&mut report);
                    emit(Some(necklace_json(&k, &tnd)), &report);
                }
            }
            Ok(0)
        }
        Command::Verify { suite, seed, certify } => {
            let o = SuiteOptions { seed, max_cells: cli.max_cells, certify };
            let checks = run_suite(suite, &o);
            let mut report = RunReport::new(format!("verify --suite {suite} --seed {seed}"), &[], checks);
            timings(&mut report);
            emit(None, &report);
            Ok(exit_for(&report))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Fatal { code, error }) => {
            let witness = match &error {
                Error::Unsupported { witness, .. } => Some(witness.clone()),
                _ => None,
            };
            let doc = json!({"error": error.to_string(), "witness": witness, "exit": code});
            println!("{}", serde_json::to_string_pretty(&doc).expect("error serializes"));
            eprintln!("error: {error}");
            ExitCode::from(code)
        }
    }
}
