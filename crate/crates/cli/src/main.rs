use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use revkit::analysis::{
    check_loop_condition, find_uniqueness_witness, is_minimal_revdfa, is_reduced, reduce, reducible_pair, w_set,
};
use revkit::conversion::{copy_counts, to_minimal_revdfa};
use revkit::dot::emit_dot;
use revkit::equivalence::distinguishing_word;
use revkit::format::{parse_dfa_with, ParseOptions};
use revkit::generation::{
    find_irrev_hypothesis, gen_alt_minimal, gen_reduced, random_dfa, witness_from_irrev_loop, HypothesisCase,
};
use revkit::minimize::minimize;
use revkit::morphism::isomorphic;
use revkit::regex::regex_to_dfa;
use revkit::reversibility::{find_forbidden_pattern, irreversible_states, is_reversible_dfa, split_parts};
use revkit::{corpus, Dfa, Error};

/// Reversible deterministic finite automata.
///
/// FILE arguments name a file in the text format, `-` for standard input,
/// or `corpus:NAME` for a bundled fixture (read from $REVKIT_CORPUS when
/// set). Predicates print `true` or `false` and exit with 0 or 1; errors
/// exit with 2.
#[derive(Parser)]
#[command(name = "revkit", version)]
struct Cli {
    /// Print witness records as labelled lines.
    #[arg(long, global = true)]
    witness: bool,
    /// Trim useless states instead of rejecting the input.
    #[arg(long, global = true)]
    allow_useless: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum automaton.
    Minimize { file: String },
    /// Whether the language is accepted by some reversible automaton.
    Reversible { file: String },
    /// Whether the automaton itself is reversible.
    Revdfa { file: String },
    /// Whether the minimum automaton contains a forbidden pattern.
    Forbidden { file: String },
    /// Reversible and irreversible parts, and the border between them.
    Split { file: String },
    /// Minimal reversible automaton by component replication.
    Convert {
        file: String,
        /// Print the replication steps to standard error.
        #[arg(long)]
        trace: bool,
    },
    /// Number of copies of each state in a minimal reversible automaton.
    Counts { file: String },
    /// Whether a reversible automaton is minimal for the language of a second one.
    IsMinimal { rev: String, min: String },
    /// Whether the minimal reversible automaton is unique.
    Unique { file: String },
    /// Whether an irreversible state leads to a loop entered from outside.
    Loopcond { file: String },
    /// The pairs (r, x) through which a reversible automaton reaches copies of Q.
    Wset { file: String, state: String },
    /// Whether no merge of equivalent states keeps a reversible automaton reversible.
    IsReduced { file: String },
    /// Merges equivalent states while reversibility is preserved.
    Reduce { file: String },
    /// A minimal reversible automaton not isomorphic to the canonical one.
    AltMinimal {
        file: String,
        /// Rewire this minimal reversible automaton instead of the canonical one.
        #[arg(long)]
        from: Option<String>,
    },
    /// Whether the sufficient condition for infinitely many reduced automata holds.
    Hypothesis { file: String },
    /// A reduced reversible automaton whose loop is repeated N times.
    GenReduced {
        file: String,
        #[arg(long)]
        n: usize,
        /// Build the witness from a loop in the irreversible part.
        #[arg(long)]
        from_loop: bool,
    },
    /// Whether two automata accept the same language.
    Equiv { a: String, b: String },
    /// Whether two automata are isomorphic.
    Iso { a: String, b: String },
    /// Graphviz rendering.
    Dot {
        file: String,
        /// Shade the reversible and irreversible parts.
        #[arg(long)]
        split: bool,
    },
    /// Minimum automaton of a regular expression over `+`, `*`, parentheses and `ε`.
    Regex { pattern: String },
    /// A random automaton.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        states: usize,
        #[arg(long, default_value_t = 2)]
        letters: usize,
        #[arg(long, default_value_t = 0.7)]
        density: f64,
    },
    /// Lists the bundled fixtures, or prints one.
    Corpus { name: Option<String> },
}

enum Outcome {
    Done,
    Verdict(bool),
}

struct Ctx {
    witness: bool,
    options: ParseOptions,
}

fn failure(message: impl Into<String>) -> Error {
    Error::InvalidParameter(message.into())
}

impl Ctx {
    fn read(&self, source: &str) -> Result<String, Error> {
        if source == "-" {
            let mut text = String::new();
            io::stdin().read_to_string(&mut text).map_err(|e| failure(format!("stdin: {e}")))?;
            return Ok(text);
        }
        if let Some(name) = source.strip_prefix("corpus:") {
            if let Ok(dir) = std::env::var("REVKIT_CORPUS") {
                let path = PathBuf::from(dir).join(format!("{name}.dfa"));
                return std::fs::read_to_string(&path).map_err(|e| failure(format!("{}: {e}", path.display())));
            }
            return corpus::text(name).map(str::to_string).ok_or_else(|| failure(format!("no fixture named {name}")));
        }
        std::fs::read_to_string(source).map_err(|e| failure(format!("{source}: {e}")))
    }

    fn load(&self, source: &str) -> Result<Dfa, Error> {
        parse_dfa_with(&self.read(source)?, self.options)
    }

    /// The minimum automaton of the input; a minimum input keeps its names.
    fn load_minimum(&self, source: &str) -> Result<Dfa, Error> {
        Ok(minimize(&self.load(source)?).0)
    }

    fn report(&self, label: &str, value: impl std::fmt::Display) {
        if self.witness {
            println!("{label}: {value}");
        }
    }
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    let ctx = Ctx { witness: cli.witness, options: ParseOptions { allow_useless: cli.allow_useless } };
    match cli.command {
        Command::Minimize { file } => {
            print!("{}", ctx.load_minimum(&file)?);
            Ok(Outcome::Done)
        }
        Command::Reversible { file } => {
            let m = ctx.load_minimum(&file)?;
            let found = find_forbidden_pattern(&m)?;
            if let Some(w) = &found {
                report_pattern(&ctx, &m, w);
            }
            Ok(Outcome::Verdict(found.is_none()))
        }
        Command::Forbidden { file } => {
            let m = ctx.load_minimum(&file)?;
            let found = find_forbidden_pattern(&m)?;
            if let Some(w) = &found {
                report_pattern(&ctx, &m, w);
            }
            Ok(Outcome::Verdict(found.is_some()))
        }
        Command::Revdfa { file } => {
            let d = ctx.load(&file)?;
            for s in irreversible_states(&d) {
                ctx.report("irreversible", d.name(s));
            }
            Ok(Outcome::Verdict(is_reversible_dfa(&d)))
        }
        Command::Split { file } => {
            let d = ctx.load(&file)?;
            let split = split_parts(&d);
            let names = |states: &[revkit::StateId]| states.iter().map(|&s| d.name(s)).collect::<Vec<_>>().join(" ");
            println!("reversible: {}", names(split.reversible_part()));
            println!("irreversible: {}", names(split.irreversible_part()));
            for &(p, c, q) in split.border() {
                println!("border: {} {c} {}", d.name(p), d.name(q));
            }
            Ok(Outcome::Done)
        }
        Command::Convert { file, trace } => {
            let m = ctx.load_minimum(&file)?;
            let (a, _, steps) = to_minimal_revdfa(&m)?;
            if trace {
                for step in &steps.steps {
                    eprintln!("component: {} (copies: {})", step.component.join(" "), step.alpha);
                    for (src, c, dst, copy) in &step.redistribution {
                        eprintln!("  {src} {c} {dst} -> copy {copy}");
                    }
                }
            }
            print!("{a}");
            Ok(Outcome::Done)
        }
        Command::Counts { file } => {
            let m = ctx.load_minimum(&file)?;
            let counts = copy_counts(&m)?;
            for s in m.states() {
                println!("{} {}", m.name(s), counts.get(s));
            }
            Ok(Outcome::Done)
        }
        Command::IsMinimal { rev, min } => {
            let a = ctx.load(&rev)?;
            let m = ctx.load_minimum(&min)?;
            let report = is_minimal_revdfa(&a, &m)?;
            for w in &report.witnesses {
                let (p, q) = w.origins;
                ctx.report("separated", format!("{} {} {} {}", m.name(w.q), w.x, a.name(p), a.name(q)));
            }
            for &s in &report.failures {
                ctx.report("mergeable", m.name(s));
            }
            Ok(Outcome::Verdict(report.is_minimal()))
        }
        Command::Unique { file } => {
            let m = ctx.load_minimum(&file)?;
            let found = find_uniqueness_witness(&m)?;
            if let Some(w) = &found {
                ctx.report("p", m.name(w.p));
                ctx.report("a", w.a);
                ctx.report("b", w.b);
            }
            Ok(Outcome::Verdict(found.is_none()))
        }
        Command::Loopcond { file } => {
            let m = ctx.load_minimum(&file)?;
            let found = check_loop_condition(&m)?;
            if let Some(w) = &found {
                ctx.report("p", m.name(w.p));
                ctx.report("a", w.a);
                ctx.report("b", w.b);
            }
            Ok(Outcome::Verdict(found.is_some()))
        }
        Command::Wset { file, state } => {
            let m = ctx.load_minimum(&file)?;
            let q = m.require_state(&state)?;
            for (r, x) in w_set(&m, q)?.pairs {
                println!("{} {x}", m.name(r));
            }
            Ok(Outcome::Done)
        }
        Command::IsReduced { file } => {
            let a = ctx.load(&file)?;
            let reduced = is_reduced(&a)?;
            if !reduced {
                if let Some((p, q)) = reducible_pair(&a)? {
                    ctx.report("merge", format!("{} {}", a.name(p), a.name(q)));
                }
            }
            Ok(Outcome::Verdict(reduced))
        }
        Command::Reduce { file } => {
            print!("{}", reduce(&ctx.load(&file)?)?);
            Ok(Outcome::Done)
        }
        Command::AltMinimal { file, from } => {
            let m = ctx.load_minimum(&file)?;
            let a = match from {
                Some(src) => ctx.load(&src)?,
                None => to_minimal_revdfa(&m)?.0,
            };
            print!("{}", gen_alt_minimal(&a, &m)?);
            Ok(Outcome::Done)
        }
        Command::Hypothesis { file } => {
            let m = ctx.load_minimum(&file)?;
            let found = find_irrev_hypothesis(&m)?;
            if let Some(w) = &found {
                ctx.report("loop", m.name(w.loop_state));
                ctx.report("u", &w.path);
                ctx.report("s", m.name(w.s));
                ctx.report("a", w.a);
                ctx.report("b", w.b);
                match w.case {
                    HypothesisCase::DoubleBIndegree => ctx.report("case", "double-b"),
                    HypothesisCase::IrreversibleBSource(r) => ctx.report("case", format!("irreversible-source {}", m.name(r))),
                }
            }
            Ok(Outcome::Verdict(found.is_some()))
        }
        Command::GenReduced { file, n, from_loop } => {
            let m = ctx.load_minimum(&file)?;
            let witness = if from_loop { witness_from_irrev_loop(&m)? } else { find_irrev_hypothesis(&m)? };
            let witness = witness.ok_or_else(|| failure("no witness for the hypothesis"))?;
            print!("{}", gen_reduced(&m, &witness, n)?);
            Ok(Outcome::Done)
        }
        Command::Equiv { a, b } => {
            let (a, b) = (ctx.load(&a)?, ctx.load(&b)?);
            let word = distinguishing_word(&a, &b);
            if let Some(w) = &word {
                ctx.report("word", w);
            }
            Ok(Outcome::Verdict(word.is_none()))
        }
        Command::Iso { a, b } => Ok(Outcome::Verdict(isomorphic(&ctx.load(&a)?, &ctx.load(&b)?))),
        Command::Dot { file, split } => {
            let d = ctx.load(&file)?;
            let parts = split.then(|| split_parts(&d));
            print!("{}", emit_dot(&d, parts.as_ref()));
            Ok(Outcome::Done)
        }
        Command::Regex { pattern } => {
            print!("{}", regex_to_dfa(&pattern)?);
            Ok(Outcome::Done)
        }
        Command::Random { seed, states, letters, density } => {
            print!("{}", random_dfa(seed, states, letters, density)?);
            Ok(Outcome::Done)
        }
        Command::Corpus { name } => {
            match name {
                Some(name) => print!("{}", ctx.read(&format!("corpus:{name}"))?),
                None => corpus::fixtures().iter().for_each(|(name, _)| println!("{name}")),
            }
            Ok(Outcome::Done)
        }
    }
}

fn report_pattern(ctx: &Ctx, m: &Dfa, w: &revkit::reversibility::ForbiddenPatternWitness) {
    ctx.report("p", m.name(w.p));
    ctx.report("q", m.name(w.q));
    ctx.report("a", w.a);
    ctx.report("w", &w.w);
    ctx.report("r", m.name(w.r));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Verdict(v)) => {
            println!("{v}");
            ExitCode::from(if v { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
