mod report;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::Report;
use suites::{RunConfig, RunError};

type Runner = Box<dyn Fn(&RunConfig, &mut Report) -> Result<(), RunError>>;

#[derive(Parser)]
#[command(name = "symfer", version, about = "Exact verification suites for the symplectic fermion algebra SF(d)+")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Graded dimensions of the C2 quotient
    C2Dims(Common),
    /// Run one verification suite
    Verify {
        #[arg(long)]
        suite: String,
        #[command(flatten)]
        common: Common,
    },
    /// Dimension of Zhu's algebra, from the representations or directly
    Zhu {
        #[arg(long, value_enum, default_value_t = Method::Reps)]
        method: Method,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Reps,
    Direct,
}

#[derive(Args)]
struct Common {
    /// Rank of the symplectic fermions
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=8))]
    d: u32,
    #[arg(long, value_parser = clap::value_parser!(i64).range(0..))]
    max_weight: Option<i64>,
    /// Weight cap for the direct Zhu computation
    #[arg(long, value_parser = clap::value_parser!(i64).range(0..))]
    cap: Option<i64>,
    /// Largest mode index in the relation suites
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(i64).range(1..))]
    max_mode: i64,
    #[arg(long, env = "SYMFER_CACHE")]
    cache_dir: Option<PathBuf>,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (default: available parallelism)
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let (name, common, run): (String, &Common, Runner) = match &cli.command {
        Command::C2Dims(c) => ("c2-dims".into(), c, Box::new(suites::c2_dims)),
        Command::Verify { suite, common } => {
            let s = suite.clone();
            (suite.clone(), common, Box::new(move |rc, r| suites::run_suite(&s, rc, r)))
        }
        Command::Zhu { method: Method::Reps, common } => ("zhu-reps".into(), common, Box::new(suites::zhu_reps)),
        Command::Zhu { method: Method::Direct, common } => ("zhu-direct".into(), common, Box::new(suites::zhu_direct)),
    };
    let threads =
        common.threads.map_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()), |t| t as usize);
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
        log::warn!("thread pool: {e}");
    }
    let rc = RunConfig {
        d: common.d,
        max_weight: common.max_weight,
        cap: common.cap,
        max_mode: common.max_mode,
        cache_dir: common.cache_dir.clone(),
    };
    let mut report = Report::new(&name, rc.d);
    let start = Instant::now();
    match run(&rc, &mut report) {
        Ok(()) => {}
        Err(RunError::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(RunError::Inconclusive(msg)) => report.inconclusive = Some(msg),
        Err(RunError::Internal(msg)) => report.item("run", "completes", format!("error: {msg}"), false),
    }
    report.finish();
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    report.metadata.threads = threads;
    report.metadata.timestamp_unix = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |t| t.as_secs());
    for item in &report.items {
        eprintln!(
            "{} {}: expected {}, got {}",
            if item.pass { "ok  " } else { "FAIL" },
            item.name,
            item.expected,
            item.actual
        );
    }
    for note in &report.notes {
        eprintln!("note {note}");
    }
    if let Some(why) = &report.inconclusive {
        eprintln!("inconclusive: {why}");
    }
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    match &common.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, json + "\n") {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => println!("{json}"),
    }
    ExitCode::from(report.exit_code() as u8)
}
