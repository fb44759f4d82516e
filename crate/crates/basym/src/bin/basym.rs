use anyhow::{Context, Result};
use basym::report::{parse_command, run};
use basym::session::Session;
use clap::Parser;
use std::path::PathBuf;

/// Multigraded Betti asymptotics: compute the stable support pattern of the
/// Betti tables of products of ideal powers and verify it against direct
/// computation.
#[derive(Parser, Debug)]
#[command(name = "basym", version, about)]
struct Cli {
    /// betti | rees | gb | stanley | shape | verify
    command: String,

    /// Session file (see README for the input grammar)
    #[arg(long)]
    input: PathBuf,

    /// Homological index; verify sweeps 0..=3 when omitted
    #[arg(long)]
    ell: Option<usize>,

    /// Override the window exponent range for every block, e.g. 1..4
    #[arg(long)]
    t: Option<String>,

    /// Override the degree-weight cap of the window
    #[arg(long)]
    wcap: Option<i64>,

    /// Write the JSON report here
    #[arg(long)]
    json: Option<PathBuf>,

    /// Write the TSV support rows here
    #[arg(long)]
    tsv: Option<PathBuf>,

    /// Seed recorded in reports (pipelines are deterministic)
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Worker threads for the oracle sweep (falls back to BASYM_THREADS)
    #[arg(long)]
    threads: Option<usize>,
}

fn parse_range(src: &str) -> Result<(i64, i64)> {
    let (lo, hi) = src
        .split_once("..")
        .context("range looks like a..b")?;
    Ok((lo.trim().parse()?, hi.trim().parse()?))
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let threads = cli.threads.or_else(|| {
        std::env::var("BASYM_THREADS").ok().and_then(|v| v.parse().ok())
    });
    if let Some(n) = threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .ok();
    }

    let src = std::fs::read_to_string(&cli.input)
        .with_context(|| format!("reading {}", cli.input.display()))?;
    let mut session = Session::parse(&src).map_err(|e| anyhow::anyhow!("{e}"))?;
    if let Some(t) = &cli.t {
        let range = parse_range(t)?;
        anyhow::ensure!(range.0 >= 0 && range.0 <= range.1, "invalid --t range");
        session.window.t_ranges = vec![range; session.ideals.len()];
    }
    if let Some(w) = cli.wcap {
        anyhow::ensure!(w > 0, "--wcap must be positive");
        session.window.wcap = w;
    }

    let command = parse_command(&cli.command, cli.ell).map_err(|e| anyhow::anyhow!("{e}"))?;
    let out = run(&session, &command).map_err(|e| anyhow::anyhow!("{e}"))?;

    print!("{}", out.text);
    if let Some(path) = &cli.json {
        let mut value = out.json.clone();
        if let Some(obj) = value.as_object_mut() {
            obj.insert("seed".into(), serde_json::json!(cli.seed));
        }
        std::fs::write(path, serde_json::to_string_pretty(&value)?)
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = &cli.tsv {
        std::fs::write(path, &out.tsv)
            .with_context(|| format!("writing {}", path.display()))?;
    } else if matches!(command, basym::report::Command::Verify { .. }) {
        print!("{}", out.tsv);
    }
    if !out.all_match {
        std::process::exit(1);
    }
    Ok(())
}
