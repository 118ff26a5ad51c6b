use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use boxpart_core::ensembles::EnsembleSpec;
use boxpart_core::qpoly::DegreeCap;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::{self, Family, FerrersView, LawChoice, Settings};
use crate::error::{CliError, Result};
use crate::output::{Format, OutputDocument};

pub const DEGREE_CAP_ENV: &str = "BOXPART_DEGREE_CAP";

#[derive(Debug, Parser)]
#[command(name = "boxpart", version, about = "Exact volume laws of boxed plane partitions and Ferrers diagrams")]
pub struct Cli {
    /// Write the document here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact volume distribution.
    Dist {
        #[command(flatten)]
        ensemble: EnsembleArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Closed-form and exact mean and variance.
    Moments {
        #[command(flatten)]
        ensemble: EnsembleArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// KS distances to the limit law along a family of boxes.
    Converge {
        #[arg(value_enum)]
        family: Family,
        /// Sizes as a comma list and/or inclusive ranges, e.g. `2,4,8` or `2..12`.
        #[arg(long)]
        sizes: String,
        #[arg(long, value_enum, default_value = "gaussian")]
        law: LawChoice,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Fixed half-perimeter Ferrers diagrams by height and area.
    Ferrers {
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value = "joint")]
        what: FerrersView,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Seeded samples from the exact distribution.
    Sample {
        #[command(flatten)]
        ensemble: EnsembleArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Brute-force enumeration (small boxes only).
    Oracle {
        #[command(flatten)]
        ensemble: EnsembleArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnsembleName {
    Pp,
    Spp,
    Cspp,
    FerrersHw,
    FerrersPerimeter,
}

/// Ensemble and side lengths, given either as flags or positionally in the
/// order `r s t` / `r t` / `r` / `h w` / `m`.
#[derive(Debug, Clone, Args)]
pub struct EnsembleArgs {
    #[arg(value_enum)]
    pub ensemble: EnsembleName,
    pub params: Vec<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub h: Option<usize>,
    #[arg(long)]
    pub w: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
}

impl EnsembleArgs {
    pub fn to_spec(&self) -> Result<EnsembleSpec> {
        let names: &[&str] = match self.ensemble {
            EnsembleName::Pp => &["r", "s", "t"],
            EnsembleName::Spp => &["r", "t"],
            EnsembleName::Cspp => &["r"],
            EnsembleName::FerrersHw => &["h", "w"],
            EnsembleName::FerrersPerimeter => &["m"],
        };
        let flags = [
            ("r", self.r),
            ("s", self.s),
            ("t", self.t),
            ("h", self.h),
            ("w", self.w),
            ("m", self.m),
        ];
        if !self.params.is_empty() && flags.iter().any(|(_, v)| v.is_some()) {
            return Err(CliError::Usage("give side lengths either positionally or as flags, not both".into()));
        }
        let values: Vec<usize> = if self.params.is_empty() {
            for (name, v) in flags {
                if v.is_some() && !names.contains(&name) {
                    return Err(CliError::Usage(format!("--{name} does not apply to this ensemble")));
                }
            }
            names
                .iter()
                .map(|n| {
                    flags
                        .iter()
                        .find(|(f, _)| f == n)
                        .and_then(|(_, v)| *v)
                        .ok_or_else(|| CliError::Usage(format!("missing --{n}")))
                })
                .collect::<Result<_>>()?
        } else if self.params.len() == names.len() {
            self.params.clone()
        } else {
            return Err(CliError::Usage(format!(
                "expected {} side lengths ({}), got {}",
                names.len(),
                names.join(" "),
                self.params.len()
            )));
        };
        let spec = match self.ensemble {
            EnsembleName::Pp => EnsembleSpec::pp(values[0], values[1], values[2])?,
            EnsembleName::Spp => EnsembleSpec::spp(values[0], values[1])?,
            EnsembleName::Cspp => EnsembleSpec::cspp(values[0])?,
            EnsembleName::FerrersHw => EnsembleSpec::ferrers_hw(values[0], values[1])?,
            EnsembleName::FerrersPerimeter => EnsembleSpec::ferrers_perimeter(values[0]),
        };
        Ok(spec)
    }
}

/// Parses `2,4,8`, `2..12` or mixtures such as `2..4,8`.
pub fn parse_sizes(text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let bad = || CliError::Usage(format!("bad size entry {part:?}"));
        if let Some((lo, hi)) = part.split_once("..") {
            let lo: usize = lo.trim().parse().map_err(|_| bad())?;
            let hi: usize = hi.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
            out.extend(lo..=hi);
        } else {
            out.push(part.parse().map_err(|_| bad())?);
        }
    }
    Ok(out)
}

/// Degree cap from the environment, falling back to the default.
pub fn settings_from_env() -> Result<Settings> {
    let mut settings = Settings::default();
    if let Ok(raw) = std::env::var(DEGREE_CAP_ENV) {
        let cap = raw
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{DEGREE_CAP_ENV} must be a positive integer, got {raw:?}")))?;
        settings.degree_cap = DegreeCap(cap);
    }
    Ok(settings)
}

pub fn execute(command: &Command, settings: &Settings) -> Result<OutputDocument> {
    match command {
        Command::Dist { ensemble, format } => commands::cmd_dist(&ensemble.to_spec()?, *format, settings),
        Command::Moments { ensemble, format } => commands::cmd_moments(&ensemble.to_spec()?, *format, settings),
        Command::Converge {
            family,
            sizes,
            law,
            r,
            s,
            format,
        } => commands::cmd_converge(*family, &parse_sizes(sizes)?, *law, *r, *s, *format, settings),
        Command::Ferrers { m, what, format } => commands::cmd_ferrers(*m, *what, *format, settings),
        Command::Sample {
            ensemble,
            n,
            seed,
            format,
        } => commands::cmd_sample(&ensemble.to_spec()?, *n, *seed, *format, settings),
        Command::Oracle { ensemble, format } => commands::cmd_oracle(&ensemble.to_spec()?, *format),
    }
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = settings_from_env().and_then(|settings| {
        let doc = execute(&cli.command, &settings)?;
        match &cli.out {
            Some(path) => std::fs::write(path, doc.body.as_bytes())?,
            None => std::io::stdout().lock().write_all(doc.body.as_bytes())?,
        }
        Ok(())
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("boxpart: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(parse_sizes("2,4,8,12").unwrap(), vec![2, 4, 8, 12]);
        assert_eq!(parse_sizes("2..5").unwrap(), vec![2, 3, 4, 5]);
        assert_eq!(parse_sizes("1..2, 9").unwrap(), vec![1, 2, 9]);
        assert!(parse_sizes("").unwrap().is_empty());
        assert!(parse_sizes("x").is_err());
    }

    #[test]
    fn ensemble_args() {
        let cli = Cli::try_parse_from(["boxpart", "moments", "pp", "2", "3", "4"]).unwrap();
        let Command::Moments { ensemble, .. } = cli.command else {
            panic!("wrong subcommand")
        };
        assert_eq!(ensemble.to_spec().unwrap(), EnsembleSpec::Pp { r: 2, s: 3, t: 4 });

        let cli = Cli::try_parse_from(["boxpart", "dist", "spp", "--r", "2", "--t", "5"]).unwrap();
        let Command::Dist { ensemble, .. } = cli.command else {
            panic!("wrong subcommand")
        };
        assert_eq!(ensemble.to_spec().unwrap(), EnsembleSpec::Spp { r: 2, t: 5 });

        let cli = Cli::try_parse_from(["boxpart", "dist", "cspp", "--r", "2", "--t", "5"]).unwrap();
        let Command::Dist { ensemble, .. } = cli.command else {
            panic!("wrong subcommand")
        };
        assert!(ensemble.to_spec().is_err());
    }
}
