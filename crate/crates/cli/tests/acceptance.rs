//! Acceptance criteria, run sequentially with one PASS/FAIL line each.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::process::Command;
use std::time::{Duration, Instant};

use riemann_lab::harness::{self, run, run_sweep, SelectorKind, SideConfigs, VariantConfig};
use riemann_lab::{
    BoxDomain, DeletionPlan, Error, Execution, Partition, Schedule, Selector, TagRule, Variant,
};
use support::cases;

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    check: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion {
            id: 1,
            name: "deletion bound",
            limit: Duration::from_secs(10),
            check: deletion_bound,
        },
        Criterion {
            id: 2,
            name: "perturbation bound",
            limit: Duration::from_secs(10),
            check: perturbation_bound,
        },
        Criterion {
            id: 3,
            name: "box.sinprod.2d convergence",
            limit: Duration::from_secs(30),
            check: convergence,
        },
        Criterion {
            id: 4,
            name: "green.disk.rotation",
            limit: Duration::from_secs(60),
            check: green,
        },
        Criterion {
            id: 5,
            name: "gauss.ball.identity",
            limit: Duration::from_secs(120),
            check: gauss,
        },
        Criterion {
            id: 6,
            name: "stokes disk and hemisphere",
            limit: Duration::from_secs(60),
            check: stokes,
        },
        Criterion {
            id: 7,
            name: "naive-loop oracle",
            limit: Duration::from_secs(5),
            check: oracle,
        },
        Criterion {
            id: 8,
            name: "cli determinism",
            limit: Duration::MAX,
            check: determinism,
        },
        Criterion {
            id: 9,
            name: "square-root deletion schedule",
            limit: Duration::MAX,
            check: schedule_clause,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.check)();
        let elapsed = start.elapsed();
        let limit = if c.limit == Duration::MAX {
            "none".to_owned()
        } else {
            format!("{}s", c.limit.as_secs())
        };
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= c.limit => (true, d),
            Ok(d) => (false, format!("{d}; over the time limit")),
            Err(d) => (false, d),
        };
        failed += usize::from(!ok);
        println!(
            "{} criterion {} ({}): {} [{:.2}s, limit {}]",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            detail,
            elapsed.as_secs_f64(),
            limit
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

fn count_failures(n: u64, case: impl Fn(u64) -> cases::CaseResult) -> Outcome {
    let failures: Vec<String> = (0..n).filter_map(|i| case(i).err()).collect();
    match failures.first() {
        None => Ok(format!("{n}/{n} cases, no violations")),
        Some(first) => Err(format!(
            "{} of {n} cases violated, first: {first}",
            failures.len()
        )),
    }
}

fn deletion_bound() -> Outcome {
    count_failures(200, |i| {
        cases::deletion_bound_case(0xde1e7e ^ i.wrapping_mul(0x9E37_79B9), i % 2 == 0)
    })
}

fn perturbation_bound() -> Outcome {
    count_failures(200, |i| {
        cases::perturbation_bound_case(0x9e27 ^ i.wrapping_mul(0x9E37_79B9), i % 2 == 0)
    })
}

fn oracle() -> Outcome {
    count_failures(500, |i| {
        let seed = 0x0dac1e ^ i.wrapping_mul(0x9E37_79B9);
        let variant = Variant::ALL[(i / 4 % 4) as usize];
        match i % 4 {
            0 => cases::oracle_box(seed, variant),
            1 => cases::oracle_region(seed, variant),
            2 => cases::oracle_line(seed, variant),
            _ => cases::oracle_surface(seed, variant),
        }
    })
}

fn sides(variant: Variant, k: usize) -> SideConfigs {
    SideConfigs::both(
        VariantConfig::new(variant)
            .with_schedule(Schedule::FixedK(k))
            .with_gamma(0.5)
            .with_seed(7),
    )
}

fn err(e: Error) -> String {
    e.to_string()
}

fn convergence() -> Outcome {
    let sc = harness::lookup("box.sinprod.2d").map_err(err)?;
    let sweep = run_sweep(
        sc.name,
        &sides(Variant::Full, 1),
        &[32, 64, 128, 256],
        &[],
        None,
        Execution::Auto,
    )
    .map_err(err)?;
    let full = sweep.rows.last().unwrap().abs_error;
    let rate = sweep.fitted_rate.ok_or("no fitted rate")?;
    let mut detail = format!("full {full:.2e} rate {rate:.3}");
    let mut ok = full < 1e-6 && (rate - 2.0).abs() <= 0.3;
    for (variant, tol) in [
        (Variant::Deleted, 1e-3),
        (Variant::Perturbed, 1e-2),
        (Variant::Combined, 1e-2),
    ] {
        let e = run(sc, &sides(variant, 8), 256, None, Execution::Auto)
            .map_err(err)?
            .abs_error();
        ok &= e < tol;
        detail += &format!(", {variant} {e:.2e}");
    }
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn theorem_pairs(name: &str, m: usize, boundary_m: usize, tol: f64) -> Outcome {
    let sc = harness::lookup(name).map_err(err)?;
    let mut ok = true;
    let mut detail = Vec::new();
    for variant in Variant::ALL {
        let e = run(sc, &sides(variant, 4), m, Some(boundary_m), Execution::Auto).map_err(err)?;
        let gap = e.gap().ok_or("no gap")?;
        ok &= e.abs_error() < tol && gap < tol;
        detail.push(format!("{variant} err {:.2e} gap {gap:.2e}", e.abs_error()));
    }
    let detail = detail.join(", ");
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn green() -> Outcome {
    theorem_pairs("green.disk.rotation", 256, 4096, 2e-2)
}

fn gauss() -> Outcome {
    theorem_pairs("gauss.ball.identity", 64, 128, 5e-2)
}

fn stokes() -> Outcome {
    let disk = theorem_pairs("stokes.disk.rotation", 256, 4096, 2e-2);
    let full = sides(Variant::Full, 1);
    let d = run(
        harness::lookup("stokes.disk.rotation").map_err(err)?,
        &full,
        256,
        Some(4096),
        Execution::Auto,
    )
    .map_err(err)?;
    let h = run(
        harness::lookup("stokes.hemisphere.rotation").map_err(err)?,
        &full,
        256,
        Some(4096),
        Execution::Auto,
    )
    .map_err(err)?;
    let agree = (d.value() - h.value()).abs();
    let tail = format!("hemisphere vs disk lhs {agree:.2e}");
    match disk {
        Ok(s) if agree < 5e-2 => Ok(format!("{s}; {tail}")),
        Ok(s) | Err(s) => Err(format!("{s}; {tail}")),
    }
}

fn cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_riemann-lab"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "{args:?} exited with {}: {}",
            out.status,
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    Ok(out.stdout)
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let csv = |i: usize| dir.path().join(format!("sweep{i}.csv"));
    let commands: Vec<Vec<String>> = vec![
        [
            "integrate",
            "box.poly.3d",
            "--variant",
            "combined",
            "--k",
            "5",
            "--selector",
            "random",
            "--tags",
            "random",
            "--seed",
            "11",
        ]
        .map(String::from)
        .to_vec(),
        [
            "verify",
            "green.disk.rotation",
            "--variant",
            "perturbed",
            "--gamma",
            "0.5",
            "--seed",
            "3",
            "--m",
            "128",
        ]
        .map(String::from)
        .to_vec(),
        [
            "converge",
            "line.circle.scalar",
            "--variant",
            "deleted",
            "--k-schedule",
            "pow:0.5",
            "--selector",
            "largest",
            "--m-list",
            "64,128,256,512",
            "--seeds",
            "1,2",
            "--csv",
        ]
        .map(String::from)
        .to_vec(),
    ];
    for (i, cmd) in commands.iter().enumerate() {
        let mut runs = Vec::new();
        for rep in 0..2 {
            let mut args = cmd.clone();
            if args[0] == "converge" {
                args.push(csv(rep).display().to_string());
            }
            let args: Vec<&str> = args.iter().map(String::as_str).collect();
            let stdout = cli(&args)?;
            let file = if args[0] == "converge" {
                std::fs::read(csv(rep)).map_err(|e| e.to_string())?
            } else {
                Vec::new()
            };
            runs.push((stdout, file));
        }
        if runs[0] != runs[1] {
            return Err(format!(
                "command {} ({}) differs between runs",
                i + 1,
                cmd[0]
            ));
        }
    }
    Ok("3 commands byte-identical across repeats, stdout and CSV".into())
}

fn schedule_clause() -> Outcome {
    let sc = harness::lookup("box.sin.1d").map_err(err)?;
    let mut detail = Vec::new();
    let mut ok = true;
    for selector in [
        SelectorKind::Prefix,
        SelectorKind::Random,
        SelectorKind::Largest,
    ] {
        let cfg = SideConfigs::both(
            VariantConfig::new(Variant::Deleted)
                .with_schedule(Schedule::PowerLaw(0.5))
                .with_selector(selector),
        );
        let mut errors = Vec::new();
        for m in [100, 10_000, 1_000_000] {
            let e = run(sc, &cfg, m, None, Execution::Auto).map_err(err)?;
            ok &= e.deleted_count() == (m as f64).sqrt() as usize;
            errors.push(e.abs_error());
        }
        ok &= errors.windows(2).all(|w| w[1] < w[0]) && errors[2] < 1e-3;
        detail.push(format!(
            "{selector} {}",
            errors
                .iter()
                .map(|e| format!("{e:.1e}"))
                .collect::<Vec<_>>()
                .join(" > ")
        ));
    }
    let unit = BoxDomain::unit(1).map_err(err)?;
    let uneven =
        Partition::from_breakpoints(&unit, vec![vec![0.0, 0.1, 0.5, 1.0]], TagRule::Midpoint)
            .map_err(err)?;
    let refused = DeletionPlan::new(Schedule::PowerLaw(0.5), Selector::Prefix)
        .map_err(err)?
        .bind(&uneven, None);
    ok &= refused == Err(Error::NonEqualPartition);
    detail.push(format!(
        "non-equal partition: {}",
        refused.err().map_or("accepted".into(), |e| e.to_string())
    ));
    let detail = detail.join(", ");
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}
