//! `tracecodes` command-line frontend.

pub mod catalog;
pub mod codefile;
pub mod presets;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use tracecodes::conway::{ConwayTable, CONWAY_ENV};
use tracecodes::distance::{
    brouwer_zimmermann, distance_from_checks, exact_distance_enum, low_weight_search,
    minimum_distance, DistanceResult, DEFAULT_BUDGET,
};
use tracecodes::duality::HermitianContext;
use tracecodes::quantum::{derive, mds_stabilizer, trace_stabilizer_with, Derivation};
use tracecodes::subfield::{delta_for, subfield_subcode};
use tracecodes::tracecode::{EvalPointSet, PointKind, TraceSpec};
use tracecodes::{Elem, Field};

use crate::catalog::CodeRecord;
use crate::presets::{CsvRow, Refine, TableRow};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] tracecodes::Error),
    #[error("Io: {0}")]
    Io(#[from] std::io::Error),
    #[error("Json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("Csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("Catalog: line {line}: {message}")]
    Catalog { line: usize, message: String },
    #[error("Usage: {0}")]
    Usage(String),
    #[error("Unreachable: {0}")]
    Unreachable(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "tracecodes",
    version,
    about = "Evaluation codes at trace roots, subfield-subcodes and stabilizer codes"
)]
struct Cli {
    /// Conway polynomial data file; overrides the shipped table
    #[arg(long, global = true)]
    conway: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone, Copy)]
struct Tower {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    s: u32,
    #[arg(long)]
    r: u32,
}

impl Tower {
    fn spec(&self) -> Result<TraceSpec, CliError> {
        Ok(TraceSpec::new(self.p, self.s, self.r)?)
    }
}

#[derive(Args, Debug, Clone)]
struct RefineArgs {
    /// Compute distances with the distance engines instead of printing only
    /// designed bounds
    #[arg(long)]
    refine_distance: bool,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Information sets tried when looking for an upper-bound witness
    #[arg(long, default_value_t = 2000)]
    trials: u64,
    /// Skip refinement when the code being enumerated has a larger dimension
    #[arg(long)]
    max_codim: Option<usize>,
}

impl RefineArgs {
    fn refine(&self) -> Option<Refine> {
        self.refine_distance.then_some(Refine {
            budget: self.budget,
            trials: self.trials,
            seed: self.seed,
            max_codim: self.max_codim,
        })
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    /// Machine-readable output; goes to --out, or replaces the human table
    /// on stdout
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Append the produced records to this catalog file
    #[arg(long)]
    catalog: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum Engine {
    Auto,
    Enum,
    Bz,
    Lws,
    Syndrome,
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    /// Print every record as a JSON line
    List,
    /// Check every checksum
    Verify,
}

fn parse_kind(s: &str) -> Result<PointKind, String> {
    PointKind::parse(s).ok_or_else(|| format!("unknown point set {s:?} (z, z_minus_zero, zt, zc)"))
}

fn parse_preset(s: &str) -> Result<String, String> {
    if presets::PRESETS.contains(&s) {
        Ok(s.to_string())
    } else {
        Err(format!("unknown preset {s:?} (t1..t6)"))
    }
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Minimal cyclotomic cosets as JSON lines
    Cosets {
        #[command(flatten)]
        tower: Tower,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Evaluation points as `g^e` (discrete log e) or `0`
    Points {
        #[command(flatten)]
        tower: Tower,
        #[arg(long, default_value = "z", value_parser = parse_kind)]
        kind: PointKind,
    },
    /// Parameters of the subfield-subcode of Δ^σ(t)
    Subcode {
        #[command(flatten)]
        tower: Tower,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value = "z", value_parser = parse_kind)]
        points: PointKind,
        /// Write the generator matrix to this code file
        #[arg(long)]
        write_code: Option<PathBuf>,
        /// With --write-code, write the Euclidean dual instead
        #[arg(long)]
        dual: bool,
    },
    /// Stabilizer code from the subfield code of Δ^σ(t) (or the MDS family)
    Quantum {
        #[command(flatten)]
        tower: Tower,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value = "z", value_parser = parse_kind)]
        points: PointKind,
        /// Comma-separated steps: puncture[:i], shorten[:i], subcode[:m]
        #[arg(long, value_delimiter = ',')]
        derive: Vec<String>,
        /// Use the codes of {0..t} over the big field at the trace roots
        #[arg(long)]
        mds: bool,
        /// Accept a_t >= B(q, n) when the Gram check still passes
        #[arg(long)]
        allow_beyond_bound: bool,
        #[command(flatten)]
        refine: RefineArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Reproduce a published table
    Table {
        #[arg(long, value_parser = parse_preset)]
        preset: String,
        #[command(flatten)]
        refine: RefineArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Minimum distance of the code in a code file
    Distance {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        engine: Engine,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Target weight for the low-weight search
        #[arg(long)]
        target: Option<usize>,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
    },
    /// Inspect a results catalog
    Catalog {
        #[arg(long)]
        file: PathBuf,
        #[command(subcommand)]
        action: CatalogAction,
    },
}

/// Parses `argv` (program name first), runs, and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(()) => 0,
        // reader went away (e.g. piped into `head`)
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    if let Some(path) = &cli.conway {
        // fail here with a diagnostic rather than when the table is first used
        ConwayTable::load(path)?;
        std::env::set_var(CONWAY_ENV, path);
    }
    match cli.cmd {
        Cmd::Cosets { tower, limit } => cosets(tower, limit, out),
        Cmd::Points { tower, kind } => points(tower, kind, out),
        Cmd::Subcode {
            tower,
            t,
            points,
            write_code,
            dual,
        } => subcode(tower, t, points, write_code, dual, out),
        Cmd::Quantum {
            tower,
            t,
            points,
            derive,
            mds,
            allow_beyond_bound,
            refine,
            output,
        } => quantum(
            tower,
            t,
            points,
            &derive,
            mds,
            allow_beyond_bound,
            &refine,
            &output,
            out,
        ),
        Cmd::Table {
            preset,
            refine,
            output,
        } => table(&preset, &refine, &output, out),
        Cmd::Distance {
            input,
            engine,
            budget,
            seed,
            target,
            trials,
        } => distance(&input, engine, budget, seed, target, trials, out),
        Cmd::Catalog { file, action } => {
            let records = catalog::read(&file)?;
            match action {
                CatalogAction::List => {
                    for r in &records {
                        writeln!(out, "{}", serde_json::to_string(r)?)?;
                    }
                }
                CatalogAction::Verify => {
                    writeln!(out, "{} records, all checksums valid", records.len())?
                }
            }
            Ok(())
        }
    }
}

fn cosets(tower: Tower, limit: Option<usize>, out: &mut dyn Write) -> Result<(), CliError> {
    #[derive(Serialize)]
    struct Line<'a> {
        index: usize,
        rep: u64,
        size: usize,
        members: &'a [u64],
    }
    let fam = tracecodes::cosets::cyclotomic_cosets(tower.p, tower.s, tower.r)?;
    for (index, c) in fam
        .cosets()
        .iter()
        .enumerate()
        .take(limit.unwrap_or(usize::MAX))
    {
        let line = Line {
            index,
            rep: c.rep(),
            size: c.size(),
            members: c.members(),
        };
        writeln!(out, "{}", serde_json::to_string(&line)?)?;
    }
    Ok(())
}

fn points(tower: Tower, kind: PointKind, out: &mut dyn Write) -> Result<(), CliError> {
    let spec = tower.spec()?;
    for l in EvalPointSet::new(&spec, kind).logs() {
        match l {
            None => writeln!(out, "0")?,
            Some(e) => writeln!(out, "g^{e}")?,
        }
    }
    Ok(())
}

fn subcode(
    tower: Tower,
    t: usize,
    kind: PointKind,
    write_code: Option<PathBuf>,
    dual: bool,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    #[derive(Serialize)]
    struct Summary {
        length: usize,
        designed_dim_bound: usize,
        actual_dim: usize,
        dual_dim: usize,
        designed_dual_distance: u64,
    }
    let spec = tower.spec()?;
    let delta = delta_for(&spec, t, kind)?;
    let code = subfield_subcode(&spec, &delta, &EvalPointSet::new(&spec, kind))?;
    let summary = Summary {
        length: code.len(),
        designed_dim_bound: code.designed_dim_bound(),
        actual_dim: code.dimension(),
        dual_dim: code.dual_dimension(),
        designed_dual_distance: code.designed_dual_distance(),
    };
    writeln!(out, "{}", serde_json::to_string(&summary)?)?;
    if let Some(path) = write_code {
        let g = if dual {
            tracecodes::duality::euclidean_dual(code.generator())
        } else {
            code.generator().clone()
        };
        let meta = vec![format!(
            "subcode p={} s={} r={} t={t} points={kind}{}",
            tower.p,
            tower.s,
            tower.r,
            if dual { " dual" } else { "" }
        )];
        std::fs::write(path, codefile::serialize_code(&g, &meta))?;
    }
    Ok(())
}

fn parse_derivation(s: &str, n: usize) -> Result<Derivation, CliError> {
    let (name, arg) = match s.split_once(':') {
        Some((a, b)) => (a, Some(b)),
        None => (s, None),
    };
    let num = |default: usize| -> Result<usize, CliError> {
        arg.map_or(Ok(default), |a| {
            a.parse()
                .map_err(|_| CliError::Usage(format!("bad derivation argument {a:?}")))
        })
    };
    match name {
        "puncture" => Ok(Derivation::Puncture {
            coord: num(n.saturating_sub(1))?,
        }),
        "shorten" => Ok(Derivation::Shorten {
            coord: num(n.saturating_sub(1))?,
        }),
        "subcode" => Ok(Derivation::Subcode { delta_k: num(1)? }),
        _ => Err(CliError::Usage(format!("unknown derivation {s:?}"))),
    }
}

#[allow(clippy::too_many_arguments)]
fn quantum(
    tower: Tower,
    t: usize,
    kind: PointKind,
    steps: &[String],
    mds: bool,
    allow_beyond_bound: bool,
    refine: &RefineArgs,
    output: &OutputArgs,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let spec = tower.spec()?;
    let refine = refine.refine();
    let (mut params, rec_t, rec_kind) = if mds {
        let m = mds_stabilizer(&spec, t as u64)?;
        let mut params = m.params;
        if let Some(rf) = &refine {
            let ctx = HermitianContext::new(spec.big_field())?;
            presets::refine_quantum(&mut params, m.code.generator(), &ctx, rf)?;
        }
        (params, Some(t), Some(PointKind::TraceRoots))
    } else {
        let mut ts = trace_stabilizer_with(&spec, t, kind, allow_beyond_bound)?;
        if let Some(rf) = &refine {
            let ctx = HermitianContext::new(spec.sub_field())?;
            presets::refine_quantum(&mut ts.params, ts.code.generator(), &ctx, rf)?;
        }
        (ts.params, Some(t), Some(kind))
    };
    for s in steps {
        let step = parse_derivation(s, params.n)?;
        params = derive(&params, &step)?;
    }
    let record = presets::stabilizer_record(&spec, rec_t, rec_kind, &params);
    let row = TableRow {
        record,
        printed: None,
        gram_certified: Some(true),
        beyond_bound: false,
        codim: None,
        distance: None,
    };
    emit(&[row], output, out, |w, rows| {
        for r in rows {
            writeln!(w, "{}  {}", params_string(&r.record), r.record.provenance)?;
        }
        Ok(())
    })
}

fn params_string(r: &CodeRecord) -> String {
    let d = match (r.d_lb, r.d_ub) {
        (Some(a), Some(b)) if a == b => a.to_string(),
        (lb, _) => format!(">={}", lb.unwrap_or(0).max(r.d_designed)),
    };
    match r.family {
        catalog::Family::Stabilizer => format!("[[{}, {}, {d}]]_{}", r.n, r.k, r.q),
        catalog::Family::Classical => format!("[{}, {}, {d}]_{}", r.n, r.k, r.q),
    }
}

fn table(
    preset: &str,
    refine: &RefineArgs,
    output: &OutputArgs,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let rows = presets::run_preset(preset, refine.refine().as_ref())?;
    emit(&rows, output, out, |w, rows| human_table(w, rows))
}

fn opt(x: Option<u64>) -> String {
    x.map_or("-".into(), |v| v.to_string())
}

pub fn human_table(w: &mut dyn Write, rows: &[TableRow]) -> Result<(), CliError> {
    writeln!(
        w,
        "{:>5} {:>5} {:>4} {:>4} {:>4}   {:>15}  {:<5}  provenance",
        "n", "k", "d", "d_lb", "d_ub", "printed", "match"
    )?;
    let (mut nk_ok, mut d_ok, mut compared) = (0, 0, 0);
    for r in rows {
        let printed = r
            .printed
            .as_ref()
            .map_or("-".into(), |p| format!("({}, {}, {})", p.n, p.k, p.d));
        let mark = match (r.nk_match(), r.d_match()) {
            (Some(true), Some(true)) => "yes",
            (Some(true), Some(false)) => "nk",
            (Some(false), _) => "NO",
            _ => "",
        };
        if let (Some(a), Some(b)) = (r.nk_match(), r.d_match()) {
            compared += 1;
            nk_ok += a as usize;
            d_ok += (a && b) as usize;
        }
        let mut prov = r.record.provenance.clone();
        if r.beyond_bound {
            prov.push_str(" [beyond bound, Gram-certified]");
        }
        writeln!(
            w,
            "{:>5} {:>5} {:>4} {:>4} {:>4}   {:>15}  {:<5}  {}",
            r.record.n,
            r.record.k,
            r.record.d_designed,
            opt(r.record.d_lb),
            opt(r.record.d_ub),
            printed,
            mark,
            prov
        )?;
    }
    writeln!(
        w,
        "{} rows; {compared} with printed values: (n, k) agree on {nk_ok}, (n, k, d) on {d_ok}",
        rows.len()
    )?;
    Ok(())
}

/// Human output and/or machine output per the output flags, and catalog
/// appends.
fn emit(
    rows: &[TableRow],
    output: &OutputArgs,
    out: &mut dyn Write,
    human: impl Fn(&mut dyn Write, &[TableRow]) -> Result<(), CliError>,
) -> Result<(), CliError> {
    let machine = |w: &mut dyn Write, fmt: Format| -> Result<(), CliError> {
        match fmt {
            Format::Csv => {
                let mut wr = csv::Writer::from_writer(w);
                for r in rows {
                    wr.serialize(CsvRow::from(r))?;
                }
                wr.flush()?;
            }
            Format::Json => {
                for r in rows {
                    writeln!(w, "{}", serde_json::to_string(&r.record)?)?;
                }
            }
        }
        Ok(())
    };
    match (&output.out, output.format) {
        (Some(path), fmt) => {
            human(out, rows)?;
            let mut file = std::fs::File::create(path)?;
            machine(&mut file, fmt.unwrap_or(Format::Json))?;
        }
        (None, Some(fmt)) => machine(out, fmt)?,
        (None, None) => human(out, rows)?,
    }
    if let Some(path) = &output.catalog {
        let records: Vec<CodeRecord> = rows.iter().map(|r| r.record.clone()).collect();
        catalog::append(path, &records)?;
    }
    Ok(())
}

fn symbols(f: &Field, v: &[Elem]) -> Vec<String> {
    v.iter()
        .map(|&x| match (f.m(), f.log(x)) {
            (1, _) => x.0.to_string(),
            (_, None) => "0".into(),
            (_, Some(e)) => format!("g^{e}"),
        })
        .collect()
}

fn distance(
    input: &PathBuf,
    engine: Engine,
    budget: u64,
    seed: u64,
    target: Option<usize>,
    trials: u64,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    #[derive(Serialize)]
    struct Report {
        n: usize,
        k: usize,
        lb: usize,
        ub: usize,
        exact: bool,
        method: Option<tracecodes::distance::Method>,
        work_spent: u64,
        witness: Option<Vec<String>>,
    }
    let text = std::fs::read_to_string(input)?;
    let code = codefile::parse_code(&text)?;
    let g = code.generator;
    let f = g.field().clone();
    let k = g.rank();
    let n = g.cols();
    let report = |r: DistanceResult| Report {
        n,
        k,
        lb: r.lb,
        ub: r.ub,
        exact: r.exact,
        method: Some(r.method),
        work_spent: r.work_spent,
        witness: r.witness.as_deref().map(|w| symbols(&f, w)),
    };
    let rep = match engine {
        Engine::Auto => report(minimum_distance(&g, budget)?),
        Engine::Enum => report(exact_distance_enum(&g, budget)?),
        Engine::Bz => report(brouwer_zimmermann(&g, budget)?),
        Engine::Syndrome => report(distance_from_checks(&g.kernel(), None, budget)?),
        Engine::Lws => {
            let target =
                target.ok_or_else(|| CliError::Usage("--engine lws needs --target".into()))?;
            match low_weight_search(&g, target, trials, seed) {
                Some(hit) => Report {
                    n,
                    k,
                    lb: 1,
                    ub: hit.weight,
                    exact: false,
                    method: Some(tracecodes::distance::Method::LowWeightSearch),
                    work_spent: hit.trials,
                    witness: Some(symbols(&f, &hit.codeword)),
                },
                None => Report {
                    n,
                    k,
                    lb: 1,
                    ub: n,
                    exact: false,
                    method: Some(tracecodes::distance::Method::LowWeightSearch),
                    work_spent: trials,
                    witness: None,
                },
            }
        }
    };
    writeln!(out, "{}", serde_json::to_string(&rep)?)?;
    Ok(())
}
