use std::path::PathBuf;

use clap::builder::{PossibleValuesParser, TypedValueParser};
use clap::{Args, Parser, Subcommand};
use riemann_lab::harness::{SelectorKind, SideConfigs, TagKind, VariantConfig};
use riemann_lab::{Schedule, Variant};

#[derive(Parser, Debug, Clone, PartialEq)]
#[command(
    name = "riemann-lab",
    version,
    about = "Full, deleted and perturbed Riemann sums, and two-sided checks of Green, Gauss and Stokes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone, PartialEq)]
pub enum Command {
    /// Evaluate a scenario once and print the result
    Integrate(RunArgs),
    /// Evaluate a scenario and compare error and gap against a tolerance
    Verify(VerifyArgs),
    /// Sweep a scenario over several resolutions and fit the convergence rate
    Converge(ConvergeArgs),
    /// List the registered scenarios
    ListScenarios,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct VariantArgs {
    /// Sum variant
    #[arg(long, default_value = "full", value_parser = PossibleValuesParser::new(["full", "deleted", "perturbed", "combined"]).map(|s| s.parse::<Variant>().expect("listed")))]
    pub variant: Variant,

    /// Fixed number of deleted terms
    #[arg(long, conflicts_with = "k_schedule", value_parser = clap::value_parser!(u64).range(1..))]
    pub k: Option<u64>,

    /// Growing deletion count: `pow:<beta>` for floor(m^beta), or `log`
    #[arg(long, value_parser = parse_schedule)]
    pub k_schedule: Option<Schedule>,

    /// Which terms are deleted
    #[arg(long, default_value = "prefix", value_parser = PossibleValuesParser::new(["prefix", "random", "largest"]).map(|s| s.parse::<SelectorKind>().expect("listed")))]
    pub selector: SelectorKind,

    /// Breakpoint jitter as a fraction of min(mesh^2, half the smallest gap)
    #[arg(long, default_value_t = 0.5, value_parser = parse_gamma)]
    pub gamma: f64,

    /// Tag rule
    #[arg(long, default_value = "midpoint", value_parser = PossibleValuesParser::new(["midpoint", "corner", "random"]).map(|s| s.parse::<TagKind>().expect("listed")))]
    pub tags: TagKind,

    /// Seed for random tags, selectors and jitter
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl VariantArgs {
    pub fn schedule(&self) -> Schedule {
        match (self.k_schedule, self.k) {
            (Some(s), _) => s,
            (None, Some(k)) => Schedule::FixedK(k as usize),
            (None, None) => Schedule::FixedK(1),
        }
    }

    pub fn sides(&self) -> SideConfigs {
        SideConfigs::both(
            VariantConfig::new(self.variant)
                .with_schedule(self.schedule())
                .with_selector(self.selector)
                .with_gamma(self.gamma)
                .with_tags(self.tags)
                .with_seed(self.seed),
        )
    }

    fn push(&self, out: &mut Vec<String>) {
        out.extend(["--variant".into(), self.variant.to_string()]);
        match self.schedule() {
            Schedule::FixedK(k) => out.extend(["--k".into(), k.to_string()]),
            Schedule::PowerLaw(b) => out.extend(["--k-schedule".into(), format!("pow:{b}")]),
            Schedule::Logarithmic => out.extend(["--k-schedule".into(), "log".into()]),
        }
        out.extend([
            "--selector".into(),
            self.selector.to_string(),
            "--gamma".into(),
            self.gamma.to_string(),
            "--tags".into(),
            self.tags.to_string(),
            "--seed".into(),
            self.seed.to_string(),
        ]);
    }
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct Runtime {
    /// Worker threads; 1 evaluates every term sequentially
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: Option<u64>,

    /// Print the parsed configuration as a canonical command line and exit
    #[arg(long)]
    pub print_config: bool,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct RunArgs {
    /// Scenario name (see `list-scenarios`)
    pub scenario: String,

    #[command(flatten)]
    pub variant: VariantArgs,

    /// Cells per axis (cells along the path for line scenarios)
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub m: Option<u64>,

    /// Boundary cells per axis for theorem scenarios
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub boundary_m: Option<u64>,

    #[command(flatten)]
    pub runtime: Runtime,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub run: RunArgs,

    /// Accepted error and gap; defaults to the scenario tolerance
    #[arg(long, value_parser = parse_positive)]
    pub tol: Option<f64>,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct ConvergeArgs {
    /// Scenario name (see `list-scenarios`)
    pub scenario: String,

    #[command(flatten)]
    pub variant: VariantArgs,

    /// Strictly increasing resolutions, at least three
    #[arg(long, required = true, value_delimiter = ',', value_parser = clap::value_parser!(u64).range(1..))]
    pub m_list: Vec<u64>,

    /// Seeds to repeat every resolution with; defaults to `--seed`
    #[arg(long, value_delimiter = ',')]
    pub seeds: Vec<u64>,

    /// Write the report as CSV to this path (`-` for stdout)
    #[arg(long)]
    pub csv: Option<PathBuf>,

    #[command(flatten)]
    pub runtime: Runtime,
}

fn parse_schedule(s: &str) -> Result<Schedule, String> {
    if s == "log" {
        return Ok(Schedule::Logarithmic);
    }
    let beta = s
        .strip_prefix("pow:")
        .ok_or_else(|| format!("expected `pow:<beta>` or `log`, got `{s}`"))?;
    let beta: f64 = beta
        .parse()
        .map_err(|e| format!("bad exponent `{beta}`: {e}"))?;
    if !(beta > 0.0 && beta < 1.0) {
        return Err(format!("exponent must lie in (0, 1), got {beta}"));
    }
    Ok(Schedule::PowerLaw(beta))
}

fn parse_gamma(s: &str) -> Result<f64, String> {
    let g: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if !(0.0..1.0).contains(&g) {
        return Err(format!("gamma must lie in [0, 1), got {g}"));
    }
    Ok(g)
}

fn parse_positive(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if !(x > 0.0 && x.is_finite()) {
        return Err(format!("expected a positive number, got {x}"));
    }
    Ok(x)
}

fn quote(s: &str) -> String {
    if !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || "-_./:,=+".contains(c))
    {
        s.to_owned()
    } else {
        format!("'{}'", s.replace('\'', r"'\''"))
    }
}

fn push_runtime(r: &Runtime, out: &mut Vec<String>) {
    if let Some(t) = r.threads {
        out.extend(["--threads".into(), t.to_string()]);
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

impl Cli {
    /// Arguments that reproduce this configuration, defaults spelled out.
    pub fn canonical_args(&self) -> Vec<String> {
        let mut out = Vec::new();
        match &self.command {
            Command::Integrate(a) | Command::Verify(VerifyArgs { run: a, .. }) => {
                let name = if matches!(self.command, Command::Integrate(_)) {
                    "integrate"
                } else {
                    "verify"
                };
                out.extend([name.into(), a.scenario.clone()]);
                a.variant.push(&mut out);
                if let Some(m) = a.m {
                    out.extend(["--m".into(), m.to_string()]);
                }
                if let Some(m) = a.boundary_m {
                    out.extend(["--boundary-m".into(), m.to_string()]);
                }
                if let Command::Verify(VerifyArgs { tol: Some(t), .. }) = &self.command {
                    out.extend(["--tol".into(), t.to_string()]);
                }
                push_runtime(&a.runtime, &mut out);
            }
            Command::Converge(a) => {
                out.extend(["converge".into(), a.scenario.clone()]);
                a.variant.push(&mut out);
                out.extend(["--m-list".into(), join(&a.m_list)]);
                if !a.seeds.is_empty() {
                    out.extend(["--seeds".into(), join(&a.seeds)]);
                }
                if let Some(p) = &a.csv {
                    out.extend(["--csv".into(), p.display().to_string()]);
                }
                push_runtime(&a.runtime, &mut out);
            }
            Command::ListScenarios => out.push("list-scenarios".into()),
        }
        out
    }

    pub fn canonical_line(&self) -> String {
        std::iter::once("riemann-lab".to_owned())
            .chain(self.canonical_args().iter().map(|s| quote(s)))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn runtime(&self) -> Option<&Runtime> {
        match &self.command {
            Command::Integrate(a) | Command::Verify(VerifyArgs { run: a, .. }) => Some(&a.runtime),
            Command::Converge(a) => Some(&a.runtime),
            Command::ListScenarios => None,
        }
    }
}
