use clap::{Args, Parser, Subcommand};
use cwf::cli::{self, RunConfig};
use cwf::error::Result;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "cwf", version, about = "Configuration weight function solvers")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// key = value configuration file
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Override one setting, e.g. --set n_f=2 (repeatable)
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Ground-state energy of one ion
    Ion {
        #[arg(long)]
        ion: Option<String>,
        #[arg(long)]
        n_f: Option<usize>,
        /// Also write the determinant scan as CSV
        #[arg(long)]
        scan: Option<PathBuf>,
    },
    /// Energies for a list of ions and configuration counts
    IonTable {
        #[arg(long, default_value = "all")]
        ions: String,
        #[arg(long, default_value = "1,2,3")]
        n_f: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Exact / CI / masked-surface comparison in the discrete well
    Well {
        /// Also write the exact spectrum with symmetry labels as CSV
        #[arg(long)]
        spectrum: Option<PathBuf>,
    },
    /// Weight functions of one ion as CSV
    ChiExport {
        #[arg(long)]
        ion: Option<String>,
        #[arg(long)]
        n_f: Option<usize>,
        #[arg(long)]
        output: PathBuf,
    },
    /// Surface matrices s(p), u(p) as CSV
    MatricesExport {
        #[arg(long)]
        n_f: Option<usize>,
        #[arg(long)]
        output: PathBuf,
    },
}

fn load(common: &Common) -> Result<RunConfig> {
    let mut cfg = match &common.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::default(),
    };
    for o in &common.overrides {
        cfg.apply_override(o)?;
    }
    Ok(cfg)
}

fn with_ion(mut cfg: RunConfig, ion: &Option<String>, n_f: Option<usize>) -> Result<RunConfig> {
    if let Some(ion) = ion {
        cfg.set("ion", ion)?;
    }
    if let Some(n) = n_f {
        cfg.n_f = n;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: Cli) -> Result<()> {
    let cfg = load(&cli.common)?;
    let stdout = std::io::stdout();
    match cli.command {
        Command::Ion { ion, n_f, scan } => {
            let cfg = with_ion(cfg, &ion, n_f)?;
            if let Some(path) = scan {
                let mut w = BufWriter::new(File::create(path)?);
                cli::export_scan(&cfg, &mut w)?;
                w.flush()?;
            }
            let report = cli::run_ion(&cfg)?;
            println!("{}", cli::ion_report_header());
            println!("{}", cli::format_ion_report(&report));
            if report.solution.sign_changes > 1 {
                println!("scan sign changes: {} (lowest reported)", report.solution.sign_changes);
            }
        }
        Command::IonTable { ions, n_f, output } => {
            cfg.validate()?;
            let zs = cli::parse_ions(&ions)?;
            let nfs = cli::parse_n_fs(&n_f)?;
            let text = cli::format_ion_table(&cli::run_ion_table(&cfg, &zs, &nfs)?);
            match output {
                Some(path) => std::fs::write(path, text)?,
                None => stdout.lock().write_all(text.as_bytes())?,
            }
        }
        Command::Well { spectrum } => {
            cfg.validate()?;
            if let Some(path) = spectrum {
                let mut w = BufWriter::new(File::create(path)?);
                cli::export_spectrum(&cfg, &mut w)?;
                w.flush()?;
            }
            print!("{}", cli::run_well(&cfg)?);
        }
        Command::ChiExport { ion, n_f, output } => {
            let cfg = with_ion(cfg, &ion, n_f)?;
            let mut w = BufWriter::new(File::create(&output)?);
            let report = cli::export_chi(&cfg, &mut w)?;
            w.flush()?;
            eprintln!("{}", cli::format_ion_report(&report));
        }
        Command::MatricesExport { n_f, output } => {
            let cfg = with_ion(cfg, &None, n_f)?;
            let mut w = BufWriter::new(File::create(&output)?);
            cli::export_matrices(&cfg, &mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::exit_code(&e) as u8)
        }
    }
}
