use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use flagcode::decoder::{channel_sim, sim_csv, Decoder};
use flagcode::flagcodes::{subgroup_generators, table_report, weaved_construction};
use flagcode::potential_distances::{
    attained_values, pairwise_attained_values, potential_values, potential_values_for_flag,
};
use flagcode::{Error, FieldCtx, FlagCode};
use thiserror::Error;

mod specfile;

use specfile::{CodeSpec, SpecError};

/// Largest field a sweep will enumerate.
const SWEEP_CAP: u64 = 1 << 20;

#[derive(Parser)]
#[command(
    name = "flagcode",
    version,
    about = "Cyclic orbit flag codes: parameters, tables, sweeps and erasure decoding"
)]
struct Cli {
    /// Code description file (`key = value` lines)
    #[arg(long, global = true)]
    spec: Option<PathBuf>,
    /// Seed for randomized commands
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write CSV output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (defaults to all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parameters of the code in --spec; --out receives the per-projection CSV
    Report,
    /// Reproduce one of the fixed tables as CSV
    Table {
        #[arg(value_enum)]
        name: TableName,
    },
    /// Cardinality and distance of the orbit under every subgroup of F_{q^n}^*
    Sweep,
    /// Erasure channel simulation (requires --seed)
    DecodeSim {
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Largest total erasure count; defaults to one past the decoding radius
        #[arg(long)]
        max_erasures: Option<u32>,
    },
    /// Potential and attained distance values, for --spec or an explicit type
    Potential {
        #[arg(long)]
        n: Option<u32>,
        #[arg(long = "type", value_delimiter = ',')]
        type_vector: Option<Vec<u32>>,
        #[arg(long, value_delimiter = ',')]
        fields: Option<Vec<u32>>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableName {
    Table1,
    Table2,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Spec { path: String, source: SpecError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    ResourceCap(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Spec { .. } | CliError::Usage(_) => 2,
            CliError::Core(Error::FieldTooLarge { .. } | Error::EnumerationCap { .. }) => 4,
            CliError::ResourceCap(_) => 4,
            CliError::Core(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn load_spec(path: Option<&Path>) -> CliResult<CodeSpec> {
    let path = path.ok_or_else(|| CliError::Usage("this command needs --spec".into()))?;
    let text = std::fs::read_to_string(path)?;
    specfile::parse(&text).map_err(|source| CliError::Spec {
        path: path.display().to_string(),
        source,
    })
}

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn set(xs: &BTreeSet<u32>) -> String {
    format!("{{{}}}", join(xs))
}

fn report(cli: &Cli) -> CliResult<()> {
    let spec = load_spec(cli.spec.as_deref())?;
    let code = spec.code()?;
    let ctx = code.generator().ctx().clone();
    let r = code.report();
    let mut s = String::new();
    let _ = writeln!(
        s,
        "field: p={} e={} n={} (q={})",
        ctx.p(),
        ctx.e(),
        ctx.n(),
        ctx.q()
    );
    let _ = writeln!(s, "construction: {}", spec.construction.name());
    let _ = writeln!(s, "type: {}", join(code.type_vector()));
    let _ = writeln!(
        s,
        "beta: alpha^{} (order {})",
        code.beta_exponent(),
        r.beta_order
    );
    let _ = writeln!(s, "cardinality: {}", r.cardinality);
    let _ = writeln!(s, "minimum distance: {}", r.min_distance);
    let _ = writeln!(s, "best friend: F_q^{}", r.best_friend);
    let c = &r.classification;
    let _ = writeln!(
        s,
        "classification: {} (subfields at dimensions {})",
        c.kind.as_str(),
        join(&c.underlying_type)
    );
    let _ = writeln!(s, "disjoint: {}", r.disjoint);
    let _ = writeln!(s, "consistent: {}", r.consistent);
    match potential_values_for_flag(code.generator()) {
        Ok(p) => {
            let _ = writeln!(s, "potential distances: {}", set(&p));
        }
        Err(e @ Error::EnumerationCap { .. }) => {
            let _ = writeln!(s, "potential distances: skipped ({e})");
        }
        Err(e) => return Err(e.into()),
    }
    let mut csv = String::from("position,dim,size,min_distance,best_friend\n");
    for (i, p) in r.projected.iter().enumerate() {
        let _ = writeln!(
            csv,
            "{},{},{},{},{}",
            i + 1,
            p.dim,
            p.size,
            p.min_distance,
            p.best_friend
        );
    }
    let _ = writeln!(s, "projected codes:");
    s.push_str(&csv);
    print!("{s}");
    if let Some(out) = cli.out.as_deref() {
        std::fs::write(out, csv)?;
    }
    Ok(())
}

fn table(cli: &Cli, name: TableName) -> CliResult<()> {
    let mut csv = String::new();
    match name {
        TableName::Table1 => {
            let k = FieldCtx::build(2, 1, 12)?;
            let betas: Vec<_> = [1, 5, 9, 63].iter().map(|&e| k.from_exponent(e)).collect();
            csv.push_str("beta_exponent,order,intersection_order,orbit_size\n");
            for row in table_report(&k, 2, &betas)? {
                let _ = writeln!(
                    csv,
                    "{},{},{},{}",
                    row.beta_exponent, row.order, row.intersection_order, row.orbit_size
                );
            }
        }
        TableName::Table2 => {
            let k = FieldCtx::build(2, 1, 10)?;
            let f = weaved_construction(&k, &[1, 5])?;
            csv.push_str("order,distance\n");
            for (d, b) in subgroup_generators(&k) {
                let _ = writeln!(csv, "{},{}", d, FlagCode::new(f.clone(), b)?.min_distance());
            }
        }
    }
    emit(cli.out.as_deref(), &csv)
}

fn sweep(cli: &Cli) -> CliResult<()> {
    let spec = load_spec(cli.spec.as_deref())?;
    let ctx = spec.field()?;
    if ctx.size() as u64 > SWEEP_CAP {
        return Err(CliError::ResourceCap(format!(
            "sweep needs q^n <= {SWEEP_CAP}, got {}",
            ctx.size()
        )));
    }
    let f = spec.flag(&ctx)?;
    let mut csv = String::from("subgroup_order,cardinality,distance\n");
    for (d, b) in subgroup_generators(&ctx) {
        let c = FlagCode::new(f.clone(), b)?;
        let _ = writeln!(csv, "{},{},{}", d, c.cardinality(), c.min_distance());
    }
    emit(cli.out.as_deref(), &csv)
}

fn decode_sim(cli: &Cli, trials: u64, max_erasures: Option<u32>) -> CliResult<()> {
    let seed = cli
        .seed
        .ok_or_else(|| CliError::Usage("decode-sim needs an explicit --seed".into()))?;
    let spec = load_spec(cli.spec.as_deref())?;
    let code = spec.code()?;
    let total: usize = code.type_vector().iter().sum();
    let max_e = match max_erasures {
        Some(e) => e,
        None => {
            let radius = code.min_distance().saturating_sub(1) / 2;
            (radius + 1).min(total as u32)
        }
    };
    // fail early when no projected code can carry the decoding
    if code.cardinality() > 1 && Decoder::new(&code).radii().iter().all(Option::is_none) {
        return Err(CliError::Core(Error::NoCorrectableShot));
    }
    let rows = channel_sim(&code, trials, max_e, seed)?;
    emit(cli.out.as_deref(), &sim_csv(&rows))
}

fn potential(
    cli: &Cli,
    n: Option<u32>,
    t: Option<Vec<u32>>,
    fields: Option<Vec<u32>>,
) -> CliResult<()> {
    let mut s = String::new();
    match (n, t) {
        (Some(n), Some(t)) => {
            let fields = fields.unwrap_or_default();
            let _ = writeln!(s, "potential: {}", set(&potential_values(n, &t, &fields)?));
        }
        (None, None) => {
            let spec = load_spec(cli.spec.as_deref())?;
            let ctx = spec.field()?;
            let f = spec.flag(&ctx)?;
            let _ = writeln!(s, "potential: {}", set(&potential_values_for_flag(&f)?));
            let _ = writeln!(s, "attained: {}", set(&attained_values(&f)?));
            let _ = writeln!(s, "pairwise: {}", set(&pairwise_attained_values(&f)?));
        }
        _ => {
            return Err(CliError::Usage(
                "give both --n and --type, or a --spec".into(),
            ))
        }
    }
    emit(cli.out.as_deref(), &s)
}

fn run(cli: &Cli) -> CliResult<()> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot configure {t} threads: {e}")))?;
    }
    match &cli.cmd {
        Cmd::Report => report(cli),
        Cmd::Table { name } => table(cli, *name),
        Cmd::Sweep => sweep(cli),
        Cmd::DecodeSim {
            trials,
            max_erasures,
        } => decode_sim(cli, *trials, *max_erasures),
        Cmd::Potential {
            n,
            type_vector,
            fields,
        } => potential(cli, *n, type_vector.clone(), fields.clone()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
