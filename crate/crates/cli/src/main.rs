use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use mckay_hodge::potentials::{build_explicit, build_s4_section, extract_table};
use mckay_hodge::rational::format_rational;
use mckay_hodge::verify::{CheckResult, Suite};
use mckay_hodge::wdvv::{recover_cd, solve_s4, SeedData};
use mckay_hodge::{group_table, GroupName, HurwitzTable};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "mckay-hodge", version, about = "Exact Hurwitz-Hodge integrals for Z2xZ2, A4 and S4")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every integral up to the given length.
    Expand {
        #[arg(long, value_parser = parse_group)]
        group: GroupName,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run verification suites; exits 1 if any check fails.
    Verify {
        #[arg(long, value_enum, default_value_t = Check::All)]
        check: Check,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Print the length-three integral of three classes.
    ThreePoint {
        #[arg(long, value_parser = parse_group)]
        group: GroupName,
        #[arg(num_args = 3, required = true)]
        classes: Vec<String>,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value_t = 10)]
    order: u32,
    #[arg(long, default_value_t = 16)]
    max_order: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    Theorem1,
    Wdvv,
    Specializations,
    Trig,
    Recursion,
    All,
}

impl Check {
    fn suites(self) -> Vec<Suite> {
        match self {
            Check::Theorem1 => vec![Suite::Theorem1],
            Check::Wdvv => vec![Suite::Wdvv],
            Check::Specializations => vec![Suite::Specializations],
            Check::Trig => vec![Suite::Trig],
            Check::Recursion => vec![Suite::Recursion],
            Check::All => Suite::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn parse_group(s: &str) -> Result<GroupName, String> {
    s.parse().map_err(|_| format!("unknown group `{s}` (expected z2z2, a4 or s4)"))
}

/// Usage problems detected after argument parsing.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

impl RunArgs {
    fn validate(&self) -> anyhow::Result<()> {
        if self.order < 3 || self.order > self.max_order {
            bail!(UsageError(format!("--order must lie in 3..={}, got {}", self.max_order, self.order)));
        }
        Ok(())
    }

    fn emit(&self, text: &str) -> anyhow::Result<()> {
        match &self.out {
            Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
            None => {
                std::io::stdout().write_all(text.as_bytes())?;
                Ok(())
            }
        }
    }
}

/// S4: the closed-form `(sigma, zeta)` section together with the recursively
/// computed families containing transpositions and four-cycles.
fn s4_table(order: u32) -> anyhow::Result<HurwitzTable> {
    let mut table = extract_table(&build_s4_section(order)?, GroupName::S4)?;
    let seed = SeedData::base(order)?;
    let z = mckay_hodge::wdvv::solve_z2z2(&seed, order)?;
    let seed = seed.with_z2z2_table(&z.table)?;
    let mut solved = solve_s4(&seed, order)?;
    recover_cd(&mut solved)?;
    for (k, v) in solved.table.entries {
        match table.get(&k) {
            Some(existing) if *existing != v => bail!("recursion and closed form disagree at {k:?}"),
            Some(_) => {}
            None => table.insert(k, v),
        }
    }
    Ok(table)
}

fn table_csv(table: &HurwitzTable) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let tokens = group_table(table.group).nontrivial_tokens();
    let mut header = vec!["group"];
    header.extend(&tokens);
    header.push("value");
    w.write_record(&header)?;
    for (e, v) in &table.entries {
        let mut row = vec![table.group.to_string()];
        row.extend(e.iter().map(ToString::to_string));
        row.push(format_rational(v));
        w.write_record(&row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn expand(group: GroupName, run: &RunArgs) -> anyhow::Result<ExitCode> {
    run.validate()?;
    let table = match group {
        GroupName::S4 => s4_table(run.order)?,
        g => extract_table(&build_explicit(g, run.order)?, g)?,
    };
    let text = match run.format {
        Format::Json => serde_json::to_string(&table.to_json())? + "\n",
        Format::Csv => table_csv(&table)?,
    };
    run.emit(&text)?;
    eprintln!("{}: {} integrals through length {}", group, table.len(), run.order);
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct SuiteReport {
    suite: &'static str,
    checks: Vec<CheckResult>,
}

#[derive(Serialize)]
struct VerifyReport {
    order: u32,
    passed: bool,
    suites: Vec<SuiteReport>,
}

fn verify(check: Check, run: &RunArgs) -> anyhow::Result<ExitCode> {
    run.validate()?;
    let order = run.order;
    let results: Vec<anyhow::Result<SuiteReport>> = std::thread::scope(|s| {
        let handles: Vec<_> = check
            .suites()
            .into_iter()
            .map(|suite| s.spawn(move || Ok(SuiteReport { suite: suite.name(), checks: suite.run(order)? })))
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    });
    let suites = results.into_iter().collect::<anyhow::Result<Vec<_>>>()?;
    let passed = suites.iter().all(|s| s.checks.iter().all(|c| c.passed));
    for s in &suites {
        for c in &s.checks {
            eprintln!("{} [{}] {}: {}", if c.passed { "PASS" } else { "FAIL" }, s.suite, c.name, c.detail);
        }
    }
    eprintln!("{}", if passed { "all checks passed" } else { "some checks failed" });
    let text = match run.format {
        Format::Json => serde_json::to_string_pretty(&VerifyReport { order, passed, suites })? + "\n",
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["suite", "check", "passed", "detail"])?;
            for s in &suites {
                for c in &s.checks {
                    w.write_record([s.suite, &c.name, &c.passed.to_string(), &c.detail])?;
                }
            }
            String::from_utf8(w.into_inner()?)?
        }
    };
    run.emit(&text)?;
    Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn three_point(group: GroupName, classes: &[String]) -> anyhow::Result<ExitCode> {
    let g = group_table(group);
    let idx = classes
        .iter()
        .map(|c| {
            g.class_index(c).map_err(|_| {
                UsageError(format!("unknown class `{c}` for {group}; expected one of {:?}", g.class_tokens()))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    println!("{}", format_rational(&g.three_point(idx[0], idx[1], idx[2])));
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Expand { group, run } => expand(*group, run),
        Command::Verify { check, run } => verify(*check, run),
        Command::ThreePoint { group, classes } => three_point(*group, classes),
    };
    match outcome {
        Ok(code) => code,
        Err(e) if e.is::<UsageError>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
