mod args;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use riemann_lab::harness::{
    self, emit_csv, emit_csv_file, registry, ConvergenceReport, Evaluation, Outcome,
};
use riemann_lab::{Error, Execution};

use args::{Cli, Command, ConvergeArgs, RunArgs, Runtime, VerifyArgs};

const EXIT_IO: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_FAILED: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if cli.runtime().is_some_and(|r| r.print_config) {
        println!("{}", cli.canonical_line());
        return ExitCode::SUCCESS;
    }
    let mut out = io::stdout().lock();
    match dispatch(&cli, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::UnknownScenario(_)
        | Error::NonMonotoneMList
        | Error::InvalidGamma(_)
        | Error::InvalidSchedule(_)
        | Error::NonEqualPartition
        | Error::TooFewCells(_)
        | Error::CountOverflow { .. }
        | Error::Unsupported { .. } => EXIT_USAGE,
        Error::IoFailure(_) => EXIT_IO,
        _ => EXIT_FAILED,
    }
}

fn dispatch(cli: &Cli, out: &mut impl Write) -> Result<u8, Error> {
    match &cli.command {
        Command::ListScenarios => {
            list(out).map_err(io_err)?;
            Ok(0)
        }
        Command::Integrate(a) => {
            let e = with_runtime(&a.runtime, |exec| evaluate(a, exec))?;
            report(&e, out).map_err(io_err)?;
            Ok(0)
        }
        Command::Verify(VerifyArgs { run, tol }) => {
            let sc = harness::lookup(&run.scenario)?;
            let tol = tol.unwrap_or(sc.tolerance);
            let e = with_runtime(&run.runtime, |exec| evaluate(run, exec))?;
            report(&e, out).map_err(io_err)?;
            let pass = e.passes(tol);
            writeln!(out, "{:<14}{}", "tolerance", tol).map_err(io_err)?;
            writeln!(
                out,
                "{:<14}{}",
                "result",
                if pass { "PASS" } else { "FAIL" }
            )
            .map_err(io_err)?;
            Ok(if pass { 0 } else { EXIT_FAILED })
        }
        Command::Converge(a) => {
            let r = with_runtime(&a.runtime, |exec| converge(a, exec))?;
            match a.csv.as_deref() {
                Some(p) if p.as_os_str() == "-" => emit_csv(&r, &mut *out)?,
                Some(p) => {
                    emit_csv_file(&r, p)?;
                    summary(&r, out).map_err(io_err)?;
                }
                None => summary(&r, out).map_err(io_err)?,
            }
            Ok(0)
        }
    }
}

fn io_err(e: io::Error) -> Error {
    Error::IoFailure(e.to_string())
}

fn with_runtime<T: Send>(
    rt: &Runtime,
    f: impl FnOnce(Execution) -> Result<T, Error> + Send,
) -> Result<T, Error> {
    match rt.threads {
        None => f(Execution::Auto),
        Some(1) => f(Execution::Sequential),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build()
            .map_err(|e| Error::IoFailure(format!("cannot start thread pool: {e}")))?
            .install(|| f(Execution::Auto)),
    }
}

fn evaluate(a: &RunArgs, exec: Execution) -> Result<Evaluation, Error> {
    let sc = harness::lookup(&a.scenario)?;
    let m = a.m.map_or(sc.default_m, |m| m as usize);
    harness::run(
        sc,
        &a.variant.sides(),
        m,
        a.boundary_m.map(|b| b as usize),
        exec,
    )
}

fn converge(a: &ConvergeArgs, exec: Execution) -> Result<ConvergenceReport, Error> {
    let m_list: Vec<usize> = a.m_list.iter().map(|&m| m as usize).collect();
    harness::run_sweep(
        &a.scenario,
        &a.variant.sides(),
        &m_list,
        &a.seeds,
        None,
        exec,
    )
}

fn list(out: &mut impl Write) -> io::Result<()> {
    let width = registry().iter().map(|s| s.name.len()).max().unwrap_or(0);
    for s in registry() {
        writeln!(
            out,
            "{:<width$}  {:<8}  m={:<5} tol={:<6} exact={}  {}",
            s.name,
            s.kind().as_str(),
            s.default_m,
            s.tolerance,
            s.exact,
            s.description
        )?;
    }
    Ok(())
}

fn report(e: &Evaluation, out: &mut impl Write) -> io::Result<()> {
    let row = |out: &mut dyn Write, k: &str, v: String| writeln!(out, "{k:<14}{v}");
    row(out, "scenario", e.scenario.to_owned())?;
    row(out, "kind", e.kind.as_str().to_owned())?;
    row(out, "m", e.resolution.m.to_string())?;
    if let Some(b) = e.resolution.boundary_m {
        row(out, "boundary_m", b.to_string())?;
    }
    row(out, "mesh", e.mesh().to_string())?;
    match &e.outcome {
        Outcome::Single(s) => {
            row(out, "variant", s.variant.to_string())?;
            row(out, "value", s.value.to_string())?;
        }
        Outcome::Pair(r) => {
            row(out, "theorem", r.theorem.to_string())?;
            row(
                out,
                "variant",
                format!("{}/{}", r.variant_lhs, r.variant_rhs),
            )?;
            row(out, "lhs", r.lhs.value.to_string())?;
            row(out, "rhs", r.rhs.value.to_string())?;
            row(out, "gap", r.gap.to_string())?;
        }
    }
    row(out, "exact", e.exact.to_string())?;
    row(out, "abs_error", e.abs_error().to_string())?;
    row(out, "deleted_count", e.deleted_count().to_string())?;
    row(out, "symdiff_total", e.symdiff_total().to_string())
}

fn summary(r: &ConvergenceReport, out: &mut impl Write) -> io::Result<()> {
    writeln!(
        out,
        "scenario {} ({}), variant {}",
        r.scenario,
        r.kind.as_str(),
        r.sides.label(r.kind.is_two_sided())
    )?;
    writeln!(out, "exact {}", r.exact)?;
    let two_sided = r.kind.is_two_sided();
    if two_sided {
        writeln!(
            out,
            "{:>8}  {:>12}  {:>12}  {:>12}",
            "m", "mesh", "max_error", "max_gap"
        )?;
    } else {
        writeln!(out, "{:>8}  {:>12}  {:>12}", "m", "mesh", "max_error")?;
    }
    for (m, mesh, err, gap) in r.worst_by_m() {
        write!(out, "{m:>8}  {mesh:>12.5e}  {err:>12.5e}")?;
        match gap {
            Some(g) if two_sided => writeln!(out, "  {g:>12.5e}")?,
            _ => writeln!(out)?,
        }
    }
    match r.fitted_rate {
        Some(rate) => writeln!(out, "fitted_rate {rate:.4}"),
        None => writeln!(out, "fitted_rate n/a"),
    }
}
