use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use fga_cli::eval::{eval_aut, eval_mk, eval_word, infer_basis};
use fga_cli::report::{SuiteReport, Verdict};
use fga_cli::suites::{registry, Suite, SuiteCtx};
use fga_core::{
    build_ball, centralizer_evidence, parse_family_spec, suite_seed, Basis, ProbeBounds,
    RoseSplitting,
};

#[derive(Parser)]
#[command(name = "fga", version, about = "Free-group automorphism toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the seeded verification suites and print one JSON report per line.
    Verify {
        /// Run only the suite with this exact name.
        #[arg(long)]
        suite: Option<String>,
        #[arg(long, default_value_t = 2026)]
        seed: u64,
        /// Ambient rank for suites that scale with it.
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Ball radius / word-length bound.
        #[arg(long = "L", default_value_t = 2)]
        l: usize,
        /// Product depth for family tables.
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Stop scheduling new suites after the first failure.
        #[arg(long)]
        fail_fast: bool,
        /// Append a one-line pass/fail tally.
        #[arg(long)]
        summary: bool,
        /// Include per-suite wall time (reports are no longer byte-stable).
        #[arg(long)]
        timings: bool,
    },
    /// Evaluate a word, automorphism (--aut), or M_k (--mk) expression.
    Eval {
        #[arg(long, conflicts_with = "mk")]
        aut: bool,
        #[arg(long)]
        mk: bool,
        /// Ambient rank; inferred from the expression when omitted.
        #[arg(long)]
        n: Option<usize>,
        /// Witness search radius for automorphism literals without one.
        #[arg(long, default_value_t = 4)]
        depth: usize,
        expr: String,
    },
    /// Export a ball of the coset tree of a splitting, e.g. rose@N=3,k=1.
    Ball {
        spec: String,
        #[arg(long = "L", default_value_t = 2)]
        l: usize,
        #[arg(long, default_value = "dot", value_parser = ["dot", "json"])]
        format: String,
    },
    /// List the words of bounded length fixed by an automorphism.
    Fix {
        phi: String,
        #[arg(long = "L", default_value_t = 3)]
        l: usize,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Centralizer evidence for a generator family, e.g. AutTauCentral@N=3.
    Centralizer {
        spec: String,
        /// Coordinate radius of the bounded probe; 0 skips the probe.
        #[arg(long, default_value_t = 1)]
        depth: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Verify { suite, seed, n, l, depth, jobs, fail_fast, summary, timings } => {
            verify(suite, SuiteCtx { seed, n, l, depth }, jobs, fail_fast, summary, timings)
        }
        Cmd::Eval { aut, mk, n, depth, expr } => {
            let basis = match n {
                Some(rank) => Basis::standard(rank),
                None => infer_basis(&expr),
            };
            if mk {
                println!("{}", eval_mk(&basis, &expr, depth)?);
            } else if aut {
                println!("{}", eval_aut(&basis, &expr, depth)?);
            } else {
                println!("{}", eval_word(&basis, &expr)?);
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Ball { spec, l, format } => {
            let (n, k) = parse_ball_spec(&spec)?;
            let rose = RoseSplitting::new(&Basis::standard(n), k)?;
            let ball = build_ball(&rose, l);
            match format.as_str() {
                "dot" => print!("{}", ball.to_dot()),
                _ => println!("{}", ball.to_json()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Fix { phi, l, n, depth } => {
            let basis = match n {
                Some(rank) => Basis::standard(rank),
                None => infer_basis(&phi),
            };
            let phi = eval_aut(&basis, &phi, depth)?;
            for w in phi.fixed_words(l) {
                println!("{w}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Centralizer { spec, depth } => {
            let spec = parse_family_spec(&spec)?;
            if spec.conjugator.is_some() {
                bail!("centralizer evidence ignores ~conj; drop it from the spec");
            }
            let bounds = (depth > 0).then_some(ProbeBounds { coord_len: depth, tau_power: 2 });
            let ev = centralizer_evidence(spec.kind, spec.n, bounds)?;
            println!("kind: {}  n: {}", spec.kind.name(), spec.n);
            println!("tau centralizes all generators: {}", ev.tau_centralizes_all());
            println!("tau centralizes other factors: {}", ev.tau_centralizes_other_factors());
            if !ev.tau_factors.is_empty() {
                println!("factors containing tau: {}", ev.tau_factors.join(", "));
            }
            for (label, i, commutes) in &ev.per_generator {
                if !commutes {
                    println!("non-commuting: {label} generator {i}");
                }
            }
            if let Some(probe) = &ev.probe {
                println!("probe (coords <= {depth}, tau powers <= 2): {} elements", probe.len());
                for m in probe {
                    println!("  {m}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_ball_spec(spec: &str) -> Result<(usize, usize)> {
    let body = spec
        .strip_prefix("rose@")
        .ok_or_else(|| anyhow!("unknown splitting `{spec}`; expected rose@N=<n>,k=<k>"))?;
    let mut n = None;
    let mut k = None;
    for part in body.split(',') {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| anyhow!("bad clause `{part}` in `{spec}`"))?;
        let value: usize = value.trim().parse().with_context(|| format!("bad number in `{part}`"))?;
        match key.trim() {
            "N" => n = Some(value),
            "k" => k = Some(value),
            other => bail!("unknown key `{other}` in `{spec}`"),
        }
    }
    Ok((
        n.ok_or_else(|| anyhow!("missing N in `{spec}`"))?,
        k.ok_or_else(|| anyhow!("missing k in `{spec}`"))?,
    ))
}

fn run_suite(suite: &Suite, ctx: &SuiteCtx, timings: bool) -> SuiteReport {
    let start = Instant::now();
    let (samples, verdict, counterexample) = match (suite.run)(ctx) {
        Ok(outcome) => {
            let verdict = if outcome.counterexample.is_some() { Verdict::Fail } else { Verdict::Pass };
            (outcome.samples, verdict, outcome.counterexample)
        }
        Err(e) => (0, Verdict::Fail, Some(format!("{e:#}"))),
    };
    SuiteReport {
        suite: suite.name.to_string(),
        anchor: suite.anchor.to_string(),
        seed: suite_seed(ctx.seed, suite.name),
        samples,
        verdict,
        counterexample,
        elapsed_ms: timings.then(|| start.elapsed().as_millis() as u64),
    }
}

fn verify(
    only: Option<String>,
    ctx: SuiteCtx,
    jobs: usize,
    fail_fast: bool,
    summary: bool,
    timings: bool,
) -> Result<ExitCode> {
    let all = registry();
    let selected: Vec<&Suite> = match &only {
        None => all.iter().collect(),
        Some(name) => {
            let found: Vec<&Suite> = all.iter().filter(|s| s.name == *name).collect();
            if found.is_empty() {
                bail!("no suite named `{name}`; see the registry in --help");
            }
            found
        }
    };

    let slots: Vec<Mutex<Option<SuiteReport>>> =
        selected.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let stop = AtomicBool::new(false);
    let workers = jobs.max(1).min(selected.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                if stop.load(Ordering::SeqCst) {
                    break;
                }
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= selected.len() {
                    break;
                }
                let report = run_suite(selected[i], &ctx, timings);
                if fail_fast && report.verdict != Verdict::Pass {
                    stop.store(true, Ordering::SeqCst);
                }
                *slots[i].lock().unwrap() = Some(report);
            });
        }
    });

    let mut passed = 0usize;
    let mut failed = 0usize;
    for slot in &slots {
        // On fail-fast some trailing suites may not have run; stop printing
        // at the first gap so output stays a prefix of the full run.
        let Some(report) = slot.lock().unwrap().take() else { break };
        match report.verdict {
            Verdict::Pass => passed += 1,
            _ => failed += 1,
        }
        println!("{}", report.to_json_line());
        if fail_fast && report.verdict != Verdict::Pass {
            break;
        }
    }
    if summary {
        println!("summary: {passed} passed, {failed} failed, {} total", passed + failed);
    }
    Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}
