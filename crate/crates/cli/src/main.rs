// Copyright 2026 The pathauth Authors
// SPDX-License-Identifier: Apache-2.0

//! `pathauth` command-line front end.
//!
//! Exit status: 0 for allow / found / success, 1 for deny / not found /
//! disagreement, 2 for any error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use pathauth_core::io::{load_workspace, Workspace};
use pathauth_core::matcher::{MatchOutcome, PathMatcher, TraceEvent, TraceSink};
use pathauth_core::oracle::oracle_satisfies;
use pathauth_core::path::{parse, parse_any, render, simplify};
use pathauth_core::pdp::{DecisionTrace, Pdp};
use pathauth_core::policy::{Request, RuleCondition};
use pathauth_core::random::{self, GraphShape};
use pathauth_core::strategy::{Registry, DEFAULT_MATCHER};
use pathauth_core::{fixtures, Error};

#[derive(Parser, Debug)]
#[command(name = "pathauth", version, about = "Path-condition access control engine")]
struct Cli {
    /// Workspace JSON file.
    #[arg(long, short = 'w', global = true)]
    workspace: Option<PathBuf>,
    /// Print search events to stderr.
    #[arg(long, global = true)]
    trace: bool,
    /// Print per-rule search metrics.
    #[arg(long, global = true)]
    metrics: bool,
    /// Print the full decision trace as JSON.
    #[arg(long, global = true)]
    explain: bool,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a workspace and list every violation.
    Validate,
    /// Evaluate one request.
    Eval {
        #[arg(short, long)]
        subject: String,
        #[arg(short, long)]
        object: String,
        #[arg(short, long)]
        action: String,
        #[arg(long, default_value = DEFAULT_MATCHER)]
        matcher: String,
    },
    /// Evaluate every request stored in the workspace.
    EvalBatch {
        #[arg(long, default_value = DEFAULT_MATCHER)]
        matcher: String,
    },
    /// Decide whether a path from subject to object satisfies a condition.
    Match {
        #[arg(short, long)]
        subject: String,
        #[arg(short, long)]
        object: String,
        #[arg(short, long)]
        path: String,
        #[arg(long, default_value = DEFAULT_MATCHER)]
        matcher: String,
    },
    /// Print the canonical simple form of a condition.
    Simplify { path: String },
    /// Write a shipped example workspace.
    Fixture {
        #[arg(value_parser = fixtures::NAMES)]
        name: String,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the matcher with the reference oracle, on the workspace's
    /// rules if one is given, otherwise on random instances.
    OracleCheck {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn workspace(cli: &Cli) -> Result<Workspace, Error> {
    let Some(path) = &cli.workspace else {
        return Err(Error::Io {
            path: PathBuf::from("<none>"),
            source: std::io::Error::new(std::io::ErrorKind::NotFound, "--workspace is required"),
        });
    };
    load_workspace(path)
}

struct StderrTrace;

impl TraceSink for StderrTrace {
    fn event(&mut self, e: TraceEvent) {
        eprintln!("{e}");
    }
}

fn sink(cli: &Cli) -> Box<dyn TraceSink> {
    if cli.trace {
        Box::new(StderrTrace)
    } else {
        Box::new(pathauth_core::matcher::NoTrace)
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn run(cli: &Cli) -> Result<u8, Error> {
    let registry = Registry::builtin();
    match &cli.command {
        Command::Validate => {
            workspace(cli)?;
            println!("valid");
            Ok(0)
        }
        Command::Eval { subject, object, action, matcher } => {
            let ws = workspace(cli)?;
            let pdp = Pdp::new(registry.matcher(matcher)?);
            let q = Request::new(subject, object, action);
            let trace = pdp.evaluate_traced(&ws.graph, &ws.system, &q, sink(cli).as_mut())?;
            print_decision(cli, &trace);
            Ok(if trace.outcome.is_allow() { 0 } else { 1 })
        }
        Command::EvalBatch { matcher } => {
            let ws = workspace(cli)?;
            let pdp = Pdp::new(registry.matcher(matcher)?);
            let mut traces = Vec::new();
            for q in &ws.requests {
                let trace = pdp.evaluate_traced(&ws.graph, &ws.system, q, sink(cli).as_mut())?;
                if !cli.explain {
                    println!("{}\t{trace}", trace.request);
                    print_metrics(cli, &trace);
                }
                traces.push(trace);
            }
            if cli.explain {
                println!("{}", serde_json::to_string_pretty(&traces).expect("traces serialize"));
            }
            Ok(0)
        }
        Command::Match { subject, object, path, matcher } => {
            let ws = workspace(cli)?;
            let pc = parse(path, &ws.graph.model().labels)
                .map_err(|source| Error::Path { text: path.clone(), source })?;
            let m = registry.matcher(matcher)?;
            let out = m.check(&ws.graph, subject, object, &pc, sink(cli).as_mut())?;
            print_match(cli, &out);
            Ok(if out.found { 0 } else { 1 })
        }
        Command::Simplify { path } => {
            let pc = parse_any(path).map_err(|source| Error::Path { text: path.clone(), source })?;
            let s = simplify(&pc);
            println!("{}", render(&s).unwrap_or_else(|_| s.to_string()));
            Ok(0)
        }
        Command::Fixture { name, out } => {
            let ws = fixtures::by_name(name).expect("clap restricts the name");
            match out {
                Some(p) => ws.save(p)?,
                None => print!("{}", ws.to_json()),
            }
            Ok(0)
        }
        Command::OracleCheck { trials } => {
            let m = registry.matcher(DEFAULT_MATCHER)?;
            let (agree, total) = match &cli.workspace {
                Some(_) => oracle_check_workspace(&workspace(cli)?, m.as_ref())?,
                None => oracle_check_random(cli.seed, *trials, m.as_ref())?,
            };
            println!("{agree}/{total} agree");
            Ok(if agree == total { 0 } else { 1 })
        }
    }
}

fn print_decision(cli: &Cli, trace: &DecisionTrace) {
    if cli.explain {
        // keep stdout a single JSON document
        eprintln!("{trace}");
        println!("{}", serde_json::to_string_pretty(trace).expect("trace serializes"));
    } else {
        println!("{trace}");
        print_metrics(cli, trace);
    }
}

fn print_metrics(cli: &Cli, trace: &DecisionTrace) {
    if !cli.metrics {
        return;
    }
    for r in &trace.metrics {
        match &r.metrics {
            Some(m) => println!(
                "  rule {} {:?} found={} n={} e={}",
                r.rule + 1,
                r.principal,
                yes_no(r.found),
                m.nodes_visited,
                m.edges_considered
            ),
            None => println!("  rule {} {:?} found={} (TOP)", r.rule + 1, r.principal, yes_no(r.found)),
        }
    }
}

fn print_match(cli: &Cli, out: &MatchOutcome) {
    let m = &out.metrics;
    println!("found={} n={} e={}", yes_no(out.found), m.nodes_visited, m.edges_considered);
    if cli.metrics || cli.explain {
        println!("queue_peak={} pairs={}", m.queue_peak, m.pairs_processed);
    }
}

fn report(u: &str, v: &str, pc: &dyn std::fmt::Display, got: bool, want: bool) {
    eprintln!("disagreement: {u} -> {v} on {pc}: matcher={got} oracle={want}");
}

fn oracle_check_workspace(ws: &Workspace, m: &dyn PathMatcher) -> Result<(usize, usize), Error> {
    let ids: Vec<&str> = ws.graph.entities().map(|(id, _)| id).collect();
    let (mut agree, mut total) = (0, 0);
    for rule in &ws.system.pm_policy {
        let RuleCondition::Path(pc) = &rule.condition else { continue };
        for u in &ids {
            for v in &ids {
                let got = m.check(&ws.graph, u, v, pc, &mut pathauth_core::matcher::NoTrace)?.found;
                let want = oracle_satisfies(&ws.graph, u, v, pc)?;
                total += 1;
                if got == want {
                    agree += 1;
                } else {
                    report(u, v, pc, got, want);
                }
            }
        }
    }
    Ok((agree, total))
}

fn oracle_check_random(seed: u64, trials: usize, m: &dyn PathMatcher) -> Result<(usize, usize), Error> {
    let mut rng = random::rng(seed);
    let mut agree = 0;
    for _ in 0..trials {
        let g = random::random_graph(&mut rng, GraphShape::default());
        let pc = random::random_simple_condition(&mut rng, &random::labels_of(&g), 6);
        let q = random::random_request(&mut rng, &g);
        let got = m.check(&g, &q.subject, &q.object, &pc, &mut pathauth_core::matcher::NoTrace)?.found;
        let want = oracle_satisfies(&g, &q.subject, &q.object, &pc)?;
        if got == want {
            agree += 1;
        } else {
            report(&q.subject, &q.object, &pc, got, want);
        }
    }
    Ok((agree, trials))
}
