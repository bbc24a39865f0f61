use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pgt::campaign::{run_campaign, CampaignOptions};
use pgt::commands::{run_cached, CommandOptions, Operation};
use pgt::record::Cache;
use pgt::{parse_group, CliError, ResultRecord, Status};

#[derive(Parser)]
#[command(name = "pgt", version, about = "Bases and distinguishing numbers of permutation groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Group document: a JSON file or an inline JSON object.
    #[arg(long)]
    group: String,
    /// Normal subgroup (same degree) to compute modulo.
    #[arg(long)]
    modulo: Option<String>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long = "oracle-cap", default_value_t = pgt_core::distinguish::DEFAULT_ORACLE_CAP)]
    oracle_cap: usize,
    #[arg(long = "point-cap", default_value_t = pgt_core::gf::DEFAULT_POINT_CAP)]
    point_cap: u128,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write records here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Group order.
    Order(Common),
    /// Exact minimal base (or base on q-part functions with --q).
    Base(Common),
    /// Greedy base.
    Greedy(Common),
    /// Exact distinguishing number.
    Dist(Common),
    /// Smallest nontrivial block system.
    Blocks(Common),
    /// Constructive distinguishing coloring of a transitive group.
    Color(Common),
    /// Run a named verification campaign.
    Campaign {
        name: String,
        #[arg(long = "oracle-cap", default_value_t = pgt_core::distinguish::DEFAULT_ORACLE_CAP)]
        oracle_cap: usize,
        #[arg(long = "point-cap", default_value_t = pgt_core::gf::DEFAULT_POINT_CAP)]
        point_cap: u128,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Skip groups above this degree.
        #[arg(long = "max-degree")]
        max_degree: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn writer(out: Option<&PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn emit(records: &[ResultRecord], out: Option<&PathBuf>) -> Result<(), CliError> {
    let mut w = writer(out)?;
    for r in records {
        writeln!(w, "{}", serde_json::to_string(r)?)?;
    }
    w.flush()?;
    Ok(())
}

fn single(op: Operation, c: &Common) -> Result<Vec<ResultRecord>, CliError> {
    let group = parse_group(&c.group)?;
    let g = group.to_perm(c.point_cap)?;
    let modulo = match &c.modulo {
        Some(m) => Some(parse_group(m)?.to_perm(c.point_cap)?),
        None => None,
    };
    let opts = CommandOptions {
        oracle_cap: c.oracle_cap,
        point_cap: c.point_cap,
        q: c.q,
        seed: c.seed,
    };
    Ok(vec![run_cached(op, &g, modulo.as_ref(), &group.id(), &opts, &Cache::from_env())?])
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, out) = match &cli.command {
        Command::Order(c) => (single(Operation::Order, c), c.out.clone()),
        Command::Base(c) => (single(Operation::Base, c), c.out.clone()),
        Command::Greedy(c) => (single(Operation::Greedy, c), c.out.clone()),
        Command::Dist(c) => (single(Operation::Dist, c), c.out.clone()),
        Command::Blocks(c) => (single(Operation::Blocks, c), c.out.clone()),
        Command::Color(c) => (single(Operation::Color, c), c.out.clone()),
        Command::Campaign {
            name,
            oracle_cap,
            point_cap,
            seed,
            jobs,
            max_degree,
            out,
        } => {
            let opts = CampaignOptions {
                oracle_cap: *oracle_cap,
                point_cap: *point_cap,
                seed: *seed,
                jobs: *jobs,
                max_degree: *max_degree,
            };
            (run_campaign(name, &opts), out.clone())
        }
    };
    let records = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&records, out.as_ref()) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let failed = records.iter().filter(|r| r.status == Status::Fail).count();
    let skipped = records.iter().filter(|r| r.status == Status::Skipped).count();
    if skipped > 0 {
        eprintln!("{skipped} item(s) skipped");
    }
    if failed > 0 {
        eprintln!("{failed} violation(s)");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
