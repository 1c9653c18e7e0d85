use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use stalemate::agenda::{check_amp_s, Scheme};
use stalemate::axioms::{check, Axiom};
use stalemate::lattice::Space;
use stalemate::relation::{GroundSet, Profile};
use stalemate::report::{CheckReport, Quantifier, SuiteReport, DEFAULT_SAMPLES, SCHEMA_VERSION};
use stalemate::rules::Rule;
use stalemate::verify;
use stalemate::Error;

#[derive(Parser)]
#[command(
    name = "stalemate",
    version,
    about = "Total preorders, social welfare functions and axiom checks"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// List every total preorder on the ground set, in canonical order.
    Enumerate {
        #[command(flatten)]
        ground: GroundArg,
        /// List the preorders of every nonempty sub-agenda as well.
        #[arg(long)]
        sum: bool,
    },
    /// Apply a rule to a profile file (one preorder per line, `#` comments).
    Eval {
        #[command(flatten)]
        ground: GroundArg,
        #[arg(long)]
        agents: usize,
        #[arg(long)]
        rule: String,
        #[arg(long)]
        profile: PathBuf,
    },
    /// Check one axiom or property of a rule.
    Check {
        #[command(flatten)]
        ground: GroundArg,
        #[arg(long)]
        agents: usize,
        #[arg(long)]
        rule: String,
        #[arg(long)]
        axiom: String,
        /// Rule family used by `amp_s`: restriction, at-profile, per-agenda,
        /// or a rule spec rebuilt on every agenda.
        #[arg(long)]
        scheme: Option<String>,
        #[command(flatten)]
        quant: QuantArgs,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, env = "STALEMATE_SEED", default_value_t = 42)]
        seed: u64,
    },
    /// Emit the Hasse diagram in DOT.
    Graph {
        #[command(flatten)]
        ground: GroundArg,
        /// Draw the union of all sub-agenda spaces.
        #[arg(long)]
        sum: bool,
    },
}

#[derive(Args)]
struct GroundArg {
    /// Alternatives, comma separated (at most 8).
    #[arg(long)]
    ground: String,
}

impl GroundArg {
    fn parse(&self) -> Result<GroundSet, Error> {
        GroundSet::parse(&self.ground)
    }
}

#[derive(Args)]
struct QuantArgs {
    /// Enumerate every profile (fails if the domain is too large).
    #[arg(long, conflicts_with = "samples")]
    exhaustive: bool,
    /// Sample this many profiles.
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long, env = "STALEMATE_SEED", default_value_t = 42)]
    seed: u64,
}

impl QuantArgs {
    fn resolve(&self, m: usize, n: usize) -> Quantifier {
        if self.exhaustive {
            Quantifier::Exhaustive
        } else if let Some(samples) = self.samples {
            Quantifier::Sampled {
                samples,
                seed: self.seed,
            }
        } else if m <= 3 && n <= 3 {
            Quantifier::Auto
        } else {
            Quantifier::Sampled {
                samples: DEFAULT_SAMPLES,
                seed: self.seed,
            }
        }
    }
}

enum Outcome {
    Ok,
    Failed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, Error::FamilyUndefined { .. }) {
                eprintln!("hint: pass --scheme at-profile, --scheme per-agenda or --scheme <rule spec>");
            }
            ExitCode::from(2)
        }
    }
}

fn emit(format: Format, value: &Value, text: &str) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("serializable")),
        Format::Text => print!("{text}"),
    }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Enumerate { ground, sum } => {
            let g = ground.parse()?;
            let space = if *sum {
                Space::sum(&g, g.full())?
            } else {
                Space::full(&g)?
            };
            let elems: Vec<String> = space.elems().iter().map(|r| g.render(*r)).collect();
            let value = json!({
                "schema_version": SCHEMA_VERSION,
                "ground": g.labels(),
                "space": if *sum { "sum" } else { "preorders" },
                "count": elems.len(),
                "elements": elems,
            });
            let text: String = elems.iter().map(|e| format!("{e}\n")).collect();
            emit(cli.format, &value, &text);
            Ok(Outcome::Ok)
        }
        Command::Eval {
            ground,
            agents,
            rule,
            profile,
        } => {
            let g = ground.parse()?;
            let text = fs::read_to_string(profile)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", profile.display())))?;
            let p = Profile::parse(&g, &text)?;
            if p.agents() != *agents {
                return Err(Error::Parse(format!(
                    "profile has {} preorders but --agents is {agents}",
                    p.agents()
                )));
            }
            let r = Rule::build(&rule.parse()?, &g, p.agenda(), *agents)?;
            let out = g.render(r.eval(p.prefs())?);
            let value = json!({
                "schema_version": SCHEMA_VERSION,
                "rule": r.name(),
                "ground": g.labels(),
                "profile": p.render(&g),
                "output": out,
            });
            emit(cli.format, &value, &format!("{out}\n"));
            Ok(Outcome::Ok)
        }
        Command::Check {
            ground,
            agents,
            rule,
            axiom,
            scheme,
            quant,
        } => {
            let g = ground.parse()?;
            let r = Rule::parse(rule, &g, *agents)?;
            let axiom: Axiom = axiom.parse()?;
            let q = quant.resolve(g.len(), *agents);
            let report = match (axiom, scheme) {
                (Axiom::AmpS, Some(s)) => check_amp_s(&r, &Scheme::parse(s)?, q)?,
                (_, Some(_)) => return Err(Error::Parse("--scheme applies to amp_s only".into())),
                (_, None) => check(&r, axiom, q)?,
            };
            emit(
                cli.format,
                &serde_json::to_value(&report).expect("serializable"),
                &check_text(&report),
            );
            Ok(if report.verdict.fails() {
                Outcome::Failed
            } else {
                Outcome::Ok
            })
        }
        Command::Verify { suite, seed } => {
            let report = verify::run(suite, *seed)?;
            emit(
                cli.format,
                &serde_json::to_value(&report).expect("serializable"),
                &suite_text(&report),
            );
            Ok(if report.ok() { Outcome::Ok } else { Outcome::Failed })
        }
        Command::Graph { ground, sum } => {
            let g = ground.parse()?;
            let space = if *sum {
                Space::sum(&g, g.full())?
            } else {
                Space::full(&g)?
            };
            print!("{}", space.to_dot());
            Ok(Outcome::Ok)
        }
    }
}

fn check_text(r: &CheckReport) -> String {
    let mut s = format!("{}\n", r.summary());
    for (k, v) in &r.details {
        s.push_str(&format!("  {k}: {v}\n"));
    }
    s
}

fn suite_text(r: &SuiteReport) -> String {
    let mut s = String::new();
    for c in &r.claims {
        let status = match (c.passed, c.gating) {
            (true, _) => "pass",
            (false, true) => "FAIL",
            (false, false) => "open",
        };
        s.push_str(&format!("{status:4}  {}/{}  {}", c.suite, c.id, c.anchor));
        if !c.note.is_empty() {
            s.push_str(&format!("  [{}]", c.note));
        }
        s.push('\n');
    }
    let m = &r.summary;
    s.push_str(&format!(
        "{} claims: {} passed, {} failed, {} open\n",
        m.claims, m.passed, m.failed_gating, m.failed_open
    ));
    s
}
