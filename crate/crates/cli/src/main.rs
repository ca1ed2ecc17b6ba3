use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use monoid_chains::catalog::{d_generator, named_system};
use monoid_chains::deciders::{decide_with, has_decider, separating_witness, verify_chain};
use monoid_chains::enumerate::{sample_identities, IdentitySpace};
use monoid_chains::monoid::{isoterm_search, semi_decide_d};
use monoid_chains::render::{render_depths, render_grid, restrictor_grid};
use monoid_chains::rewrite::{bounded_derive, check_deduction, Deduction};
use monoid_chains::{
    chain_of, DecideOptions, FiniteMonoid, Identity, SemiVerdict, Tag, VarietyDescriptor, Word, WordProfile,
};

const SCHEMA: &str = "mchain-report 1";

#[derive(Parser)]
#[command(name = "mchain", version, about = "Word problems for chain varieties of monoids")]
struct Cli {
    /// Worker threads for exhaustive checks
    #[arg(long, global = true, env = "MCHAIN_WORKERS")]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the k-decomposition of a word (all levels up to stabilization if --k is absent)
    Decompose {
        word: String,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Print the depth of every letter of a word
    Depth { word: String },
    /// Print the restrictor grid h_i^k for k up to stabilization
    Restrictors { word: String },
    /// Decide an identity in a variety
    Decide {
        #[arg(long)]
        variety: String,
        #[arg(long)]
        identity: String,
        /// Also check letters of shallow depth in the right side for J_k^m
        #[arg(long)]
        symmetric_j: bool,
        /// Letter cap for oracle-backed varieties
        #[arg(long, default_value_t = 4)]
        letter_limit: usize,
    },
    /// Check inclusions and separation witnesses along the chain up to F_{kmax+1}
    VerifyChain {
        #[arg(long, default_value_t = 2)]
        kmax: u32,
        #[arg(long, default_value_t = 3)]
        letters: usize,
        #[arg(long, default_value_t = 6)]
        maxlen: usize,
        /// Use this many seeded random identities instead of the exhaustive space
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Check the dual chain
        #[arg(long)]
        dual: bool,
    },
    /// Finite monoids: P1, B21, K5, or S:<word>,<word>,...
    Monoid {
        #[command(subcommand)]
        action: MonoidAction,
    },
    /// Search for a word w' != w with w = w' in a variety or monoid
    Isoterm {
        word: String,
        #[arg(long, conflicts_with = "monoid", required_unless_present = "monoid")]
        variety: Option<String>,
        #[arg(long)]
        monoid: Option<String>,
        /// Maximal occurrences of each letter in candidates
        #[arg(long, default_value_t = 2)]
        bound: usize,
    },
    /// Search for a deduction, or check one from a file
    Deduce {
        /// `phi` or a comma-separated list of identity codes
        #[arg(long, default_value = "phi")]
        system: String,
        #[arg(long, required_unless_present = "file")]
        goal: Option<String>,
        #[arg(long, default_value_t = 12)]
        max_len: usize,
        #[arg(long, default_value_t = 6)]
        max_steps: usize,
        /// Deduction file to verify
        #[arg(long, conflicts_with = "goal")]
        file: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum MonoidAction {
    /// Build and summarize a monoid
    Build { spec: String },
    /// Check identities in a monoid
    Check {
        spec: String,
        #[arg(long, required_unless_present = "system")]
        identity: Vec<String>,
        #[arg(long)]
        system: Option<String>,
    },
    /// Print the multiplication table
    Dump { spec: String },
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Pass,
    Fail,
    Unknown,
}

impl Outcome {
    fn word(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Unknown => "unknown",
        }
    }

    fn code(self) -> ExitCode {
        match self {
            Outcome::Pass => ExitCode::SUCCESS,
            Outcome::Fail => ExitCode::from(1),
            Outcome::Unknown => ExitCode::from(3),
        }
    }
}

struct Report {
    text: String,
}

impl Report {
    fn new() -> Self {
        let args: Vec<String> = std::env::args()
            .skip(1)
            .map(|a| if a.contains(char::is_whitespace) { format!("{a:?}") } else { a })
            .collect();
        let mut text = format!("{SCHEMA}\n");
        let _ = writeln!(text, "command: {}", args.join(" "));
        Report { text }
    }

    fn line(&mut self, key: &str, value: impl std::fmt::Display) {
        let _ = writeln!(self.text, "{key}: {value}");
    }

    fn finish(mut self, outcome: Outcome) -> ExitCode {
        self.line("result", outcome.word());
        print!("{}", self.text);
        outcome.code()
    }
}

fn parse_word(text: &str) -> Result<Word> {
    Word::parse(text).with_context(|| format!("bad word {text:?}"))
}

fn parse_identity(text: &str) -> Result<Identity> {
    Identity::parse(text).with_context(|| format!("bad identity {text:?}"))
}

fn parse_variety(text: &str) -> Result<VarietyDescriptor> {
    Ok(text.parse()?)
}

fn decompose(word: &str, k: Option<usize>) -> Result<ExitCode> {
    let p = WordProfile::new(&parse_word(word)?);
    match k {
        Some(k) => println!("{}", p.decomposition(k)),
        None => {
            for k in 0..=p.stabilization_level() {
                println!("{k}: {}", p.decomposition(k));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn decide(variety: &str, identity: &str, opts: DecideOptions) -> Result<ExitCode> {
    let v = parse_variety(variety)?;
    let id = parse_identity(identity)?;
    let mut r = Report::new();
    r.line("variety", v);
    r.line("identity", &id);
    if !has_decider(&v) {
        if v.tag() != Tag::D || v.is_dual() {
            bail!("no exact decider for {v}");
        }
        let outcome = match semi_decide_d(&id, 4)? {
            SemiVerdict::Holds => {
                r.line("evidence", "holds in B2^1");
                Outcome::Pass
            }
            SemiVerdict::Fails { refuted_by, witness } => {
                let g = d_generator(refuted_by);
                let s = FiniteMonoid::rees_quotient(std::slice::from_ref(&g));
                let text = witness
                    .iter()
                    .map(|(l, e)| format!("{l}->{}", s.labels()[*e]))
                    .collect::<Vec<_>>();
                r.line("evidence", format!("refuted by S({g}), a member of D{refuted_by}, with {}", text.join(",")));
                Outcome::Fail
            }
            SemiVerdict::Unknown => Outcome::Unknown,
        };
        return Ok(r.finish(outcome));
    }
    let verdict = decide_with(&v, &id, opts)?;
    for reason in &verdict.reasons {
        r.line(if verdict.holds { "checked" } else { "violated" }, reason);
    }
    Ok(r.finish(if verdict.holds { Outcome::Pass } else { Outcome::Fail }))
}

fn verify(kmax: u32, letters: usize, maxlen: usize, sample: Option<usize>, seed: u64, dual: bool) -> Result<ExitCode> {
    if letters == 0 || letters > 8 {
        bail!("--letters must be between 1 and 8");
    }
    let mut chain = chain_of(kmax)?;
    if dual {
        chain = chain.iter().map(VarietyDescriptor::dual).collect();
    }
    let space = match sample {
        Some(n) => IdentitySpace::from_identities(&sample_identities(seed, n, letters, maxlen)),
        None => IdentitySpace::exhaustive(letters, maxlen),
    };
    let mut r = Report::new();
    match sample {
        Some(n) => r.line("space", format!("{n} sampled identities, {letters} letters, length <= {maxlen}, seed {seed}")),
        None => r.line("space", format!("exhaustive, {letters} letters, length <= {maxlen}, {} identities", space.len())),
    }
    let report = verify_chain(&chain, &space, DecideOptions::default())?;
    let mut outcome = Outcome::Pass;
    for p in &report.pairs {
        let mut line = format!(
            "{} < {}: {} accepted={} violations={}",
            p.small,
            p.large,
            if p.passed() { "pass" } else { "fail" },
            p.accepted_by_large,
            p.violations
        );
        if let Some(c) = &p.counterexample {
            let _ = write!(line, " counterexample={c}");
            outcome = Outcome::Fail;
        }
        r.line("inclusion", line);
    }
    for pair in chain.windows(2) {
        let wit = separating_witness(&pair[0], &pair[1])?;
        let small = decide_with(&pair[0], &wit, DecideOptions::default())?.holds;
        let large = decide_with(&pair[1], &wit, DecideOptions::default())?.holds;
        let ok = small && !large;
        if !ok {
            outcome = Outcome::Fail;
        }
        r.line(
            "witness",
            format!("{} < {}: {} {}", pair[0], pair[1], if ok { "pass" } else { "fail" }, wit),
        );
    }
    Ok(r.finish(outcome))
}

fn monoid(action: MonoidAction) -> Result<ExitCode> {
    match action {
        MonoidAction::Build { spec } => {
            let m = FiniteMonoid::from_spec(&spec)?;
            let mut r = Report::new();
            r.line("size", m.size());
            r.line("elements", m.labels().join(" "));
            r.line("identity", &m.labels()[m.identity()]);
            r.line("zero", m.zero().map_or("none", |z| m.labels()[z].as_str()));
            let gens: Vec<&str> = m.generators().iter().map(|&g| m.labels()[g].as_str()).collect();
            r.line("generators", gens.join(" "));
            Ok(r.finish(Outcome::Pass))
        }
        MonoidAction::Dump { spec } => {
            print!("{}", FiniteMonoid::from_spec(&spec)?.dump());
            Ok(ExitCode::SUCCESS)
        }
        MonoidAction::Check { spec, identity, system } => {
            let m = FiniteMonoid::from_spec(&spec)?;
            let mut ids = identity.iter().map(|s| parse_identity(s)).collect::<Result<Vec<_>>>()?;
            if let Some(s) = system {
                ids.extend(named_system(&s)?);
            }
            let mut r = Report::new();
            r.line("monoid", format!("{spec} ({} elements)", m.size()));
            let mut outcome = Outcome::Pass;
            for id in &ids {
                match m.counterexample(id, usize::MAX)? {
                    None => r.line("holds", id),
                    Some(cex) => {
                        let text: Vec<String> =
                            cex.iter().map(|(l, e)| format!("{l}->{}", m.labels()[*e])).collect();
                        r.line("fails", format!("{id} with {}", text.join(",")));
                        outcome = Outcome::Fail;
                    }
                }
            }
            Ok(r.finish(outcome))
        }
    }
}

fn isoterm(word: &str, variety: Option<String>, monoid: Option<String>, bound: usize) -> Result<ExitCode> {
    let w = parse_word(word)?;
    let mut r = Report::new();
    let found = match (variety, monoid) {
        (Some(v), _) => {
            let v = parse_variety(&v)?;
            if !has_decider(&v) {
                bail!("no exact decider for {v}");
            }
            let opts = DecideOptions::default();
            r.line("variety", v);
            isoterm_search(&w, |id| decide_with(&v, id, opts).map(|d| d.holds).unwrap_or(false), bound)
        }
        (None, Some(spec)) => {
            let m = FiniteMonoid::from_spec(&spec)?;
            if w.content().len() > 4 {
                bail!("{} letters exceed the brute-force limit of 4", w.content().len());
            }
            r.line("monoid", format!("{spec} ({} elements)", m.size()));
            isoterm_search(&w, |id| m.counterexample(id, 4).map(|c| c.is_none()).unwrap_or(false), bound)
        }
        (None, None) => bail!("give --variety or --monoid"),
    };
    r.line("word", &w);
    r.line("bound", bound);
    match found {
        Some(other) => {
            r.line("found", Identity::new(w, other));
            r.line("isoterm", "no");
            Ok(r.finish(Outcome::Fail))
        }
        None => {
            r.line("found", "none");
            r.line("isoterm", "not refuted within bound");
            Ok(r.finish(Outcome::Pass))
        }
    }
}

fn deduce(system: &str, goal: Option<String>, max_len: usize, max_steps: usize, file: Option<PathBuf>) -> Result<ExitCode> {
    let mut r = Report::new();
    if let Some(path) = file {
        let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
        let d = Deduction::parse(&text)?;
        let check = check_deduction(&d);
        r.line("steps", d.steps.len());
        r.line("conclusion", d.conclusion());
        for (i, message) in &check.failures {
            r.line("bad-step", format!("{} {message}", i + 1));
        }
        return Ok(r.finish(if check.ok() { Outcome::Pass } else { Outcome::Fail }));
    }
    let goal = parse_identity(goal.as_deref().expect("clap requires --goal"))?;
    let ids = named_system(system)?;
    r.line("system", ids.iter().map(Identity::to_string).collect::<Vec<_>>().join(", "));
    r.line("goal", &goal);
    match bounded_derive(&ids, &goal, max_len, max_steps) {
        Some(d) => {
            r.line("steps", d.steps.len());
            for line in d.to_string().lines() {
                r.line("deduction", line);
            }
            Ok(r.finish(Outcome::Pass))
        }
        None => {
            r.line("searched", format!("length <= {max_len}, steps <= {max_steps}"));
            Ok(r.finish(Outcome::Unknown))
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(n) = cli.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("setting up worker pool")?;
    }
    match cli.command {
        Command::Decompose { word, k } => decompose(&word, k),
        Command::Depth { word } => {
            println!("{}", render_depths(&parse_word(&word)?));
            Ok(ExitCode::SUCCESS)
        }
        Command::Restrictors { word } => {
            print!("{}", render_grid(&restrictor_grid(&parse_word(&word)?)));
            Ok(ExitCode::SUCCESS)
        }
        Command::Decide {
            variety,
            identity,
            symmetric_j,
            letter_limit,
        } => decide(
            &variety,
            &identity,
            DecideOptions {
                letter_limit,
                symmetric_j,
            },
        ),
        Command::VerifyChain {
            kmax,
            letters,
            maxlen,
            sample,
            seed,
            dual,
        } => verify(kmax, letters, maxlen, sample, seed, dual),
        Command::Monoid { action } => monoid(action),
        Command::Isoterm {
            word,
            variety,
            monoid,
            bound,
        } => isoterm(&word, variety, monoid, bound),
        Command::Deduce {
            system,
            goal,
            max_len,
            max_steps,
            file,
        } => deduce(&system, goal, max_len, max_steps, file),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    };
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    code
}
