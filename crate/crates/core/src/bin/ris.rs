use clap::{Parser, Subcommand, ValueEnum};
use ris_core::experiments::{self, TableCase, TABLE_FOCAL_LENGTHS_M, TABLE_FREQUENCIES_HZ};
use ris_core::farfield::{self, Aperture, FarScenario};
use ris_core::link::{self, free_space_loss};
use ris_core::pattern::Q0;
use ris_core::{db, selfcheck, Error, Result, SPEED_OF_LIGHT};
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ris", version, about = "Path loss of RIS-enabled links")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, ValueEnum)]
enum CaseArg {
    Minimum,
    Typical,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one scenario file and print loss and diagnostics
    Pathloss {
        scenario: PathBuf,
        /// Also print per-element received power and phase
        #[arg(long)]
        per_element: bool,
    },
    /// Run a sweep file and write the rows as CSV
    Sweep {
        sweep: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Override the elements-per-side cap
        #[arg(long)]
        max_per_side: Option<usize>,
        /// Worker threads (default: all cores)
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Side lengths that match the equal-length free-space channel
    Tables {
        #[arg(long, value_enum)]
        case: CaseArg,
        #[arg(long)]
        out: PathBuf,
        /// Effective focal lengths in m
        #[arg(long, value_delimiter = ',')]
        fe: Option<Vec<f64>>,
        /// Frequencies in Hz
        #[arg(long, value_delimiter = ',')]
        freq: Option<Vec<f64>>,
        #[arg(long, default_value_t = SPEED_OF_LIGHT)]
        speed_of_light: f64,
    },
    /// Required RIS size for one operating point
    Size {
        /// Frequency, Hz
        #[arg(long)]
        freq: f64,
        /// Effective focal length, m
        #[arg(long)]
        fe: f64,
        #[arg(long, default_value_t = 1.0)]
        ui: f64,
        #[arg(long, default_value_t = 1.0)]
        us: f64,
        #[arg(long, default_value_t = 1.0)]
        eps: f64,
        #[arg(long, default_value_t = Q0)]
        q: f64,
    },
    /// Run the numerical self-check suite
    Validate,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Pathloss {
            scenario,
            per_element,
        } => pathloss(&scenario, per_element),
        Command::Sweep {
            sweep,
            out,
            max_per_side,
            threads,
        } => {
            let mut spec = experiments::load_sweep(&sweep)?.to_spec()?;
            if let Some(cap) = max_per_side {
                spec.max_elements_per_side = cap;
            }
            let rows = match threads {
                Some(n) => rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .map_err(|e| Error::InvalidArgument(e.to_string()))?
                    .install(|| experiments::run_sweep(&spec))?,
                None => experiments::run_sweep(&spec)?,
            };
            experiments::write_sweep_csv(&rows, create(&out)?)?;
            eprintln!("wrote {} rows to {}", rows.len(), out.display());
            Ok(())
        }
        Command::Tables {
            case,
            out,
            fe,
            freq,
            speed_of_light,
        } => {
            let case = match case {
                CaseArg::Minimum => TableCase::Minimum,
                CaseArg::Typical => TableCase::Typical,
            };
            let fe = fe.unwrap_or_else(|| TABLE_FOCAL_LENGTHS_M.to_vec());
            let freq = freq.unwrap_or_else(|| TABLE_FREQUENCIES_HZ.to_vec());
            let rows = experiments::make_tables(case, &fe, &freq, speed_of_light)?;
            experiments::write_table_csv(&rows, create(&out)?)?;
            eprintln!("wrote {} rows to {}", rows.len(), out.display());
            Ok(())
        }
        Command::Size {
            freq,
            fe,
            ui,
            us,
            eps,
            q,
        } => {
            if freq.is_nan() || freq <= 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "frequency must be positive, got {freq}"
                )));
            }
            let lambda = SPEED_OF_LIGHT / freq;
            let size = farfield::required_area(fe, lambda, ui, us, eps, q)?;
            let mut o = io::stdout().lock();
            writeln!(o, "wavelength_m      {}", experiments::fmt_sig(lambda))?;
            writeln!(o, "area_m2           {}", experiments::fmt_sig(size.area))?;
            writeln!(o, "side_m            {}", experiments::fmt_sig(size.side))?;
            writeln!(
                o,
                "side_lambda       {}",
                experiments::fmt_sig(size.side_over_lambda)
            )?;
            Ok(())
        }
        Command::Validate => {
            let checks = selfcheck::run_all()?;
            let mut failed = 0;
            for c in &checks {
                println!(
                    "{} {:<28} worst {:.3e} (tolerance {:.0e})",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.worst,
                    c.tolerance
                );
                failed += usize::from(!c.passed);
            }
            if failed > 0 {
                return Err(Error::SelfCheck(format!(
                    "{failed} of {} checks failed",
                    checks.len()
                )));
            }
            Ok(())
        }
    }
}

fn pathloss(path: &Path, per_element: bool) -> Result<()> {
    let cfg = experiments::load_scenario(path)?;
    let scenario = cfg.to_scenario()?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    let b = cfg.coefficients(&scenario, base)?;
    let result = if per_element {
        link::receive_power(&scenario, &b)?
    } else {
        link::path_loss(&scenario, &b)?
    };
    let lambda = scenario.wavelength();
    let (ri, rs) = scenario.reference_distances();
    let ls = free_space_loss(ri + rs, lambda)?;
    let geom = scenario.geometry()?;
    let center = geom.len() / 2;
    let far = FarScenario {
        u_inc: geom.u_inc[center],
        u_sca: geom.u_sca[center],
        efficiency: scenario.efficiency(),
        pattern: *scenario.pattern(),
        ..FarScenario::broadside(ri, rs, lambda, Aperture::Area(scenario.ris().area()))?
    };
    let far_gain = farfield::far_path_loss_area(
        far.area(),
        ri,
        rs,
        far.u_inc,
        far.u_sca,
        far.pattern.q(),
        far.efficiency,
    );

    let f = experiments::fmt_sig;
    let mut o = io::stdout().lock();
    writeln!(o, "strategy             {}", b.strategy())?;
    writeln!(o, "elements             {}", scenario.ris().len())?;
    writeln!(o, "wavelength_m         {}", f(lambda))?;
    writeln!(o, "area_m2              {}", f(scenario.ris().area()))?;
    writeln!(o, "loss_db              {}", f(result.loss_db))?;
    writeln!(o, "path_gain            {}", f(result.inverse_loss))?;
    writeln!(o, "received_power_w     {}", f(result.received_power))?;
    writeln!(o, "free_space_loss_db   {}", f(db::to_db(ls)))?;
    writeln!(o, "normalized_db        {}", f(result.gain_over_db(ls)))?;
    writeln!(o, "far_area_loss_db     {}", f(-db::to_db(far_gain)))?;
    writeln!(
        o,
        "effective_focal_m    {}",
        f(farfield::effective_focal_length(ri, rs))
    )?;
    if result.amplifying_elements > 0 {
        writeln!(o, "amplifying_elements  {}", result.amplifying_elements)?;
    }
    if let Some(elements) = &result.per_element {
        writeln!(o, "n,received_power_w,phase_rad")?;
        for (n, d) in elements.iter().enumerate() {
            writeln!(o, "{n},{},{}", f(d.received_power), f(d.phase))?;
        }
    }
    Ok(())
}
