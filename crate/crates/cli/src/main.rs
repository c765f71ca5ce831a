//! `wreath`: command-line access to the wreath recursion calculus.
//!
//! Words are written `b.c.a` or `b*c*a` and compose left to right: in `g.h`
//! the automorphism `g` acts first. Vertex words are bare digit strings.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand};
use wreath_core::analysis::{
    cycle_section_product, exponent_vector, iterate_lift, levy_necessary_condition, odometer_check,
    schreier_path, SchreierOutcome,
};
use wreath_core::{
    catalog, dsl, equal, level_permutation, prove_identity, Budget, ClosureBudget, Equality,
    EqualityMode, GroupWord, IdentityVerdict, NonIdentityWitness, RecursionSystem,
};

const AFTER_HELP: &str = "Words compose left to right: in g.h, g acts first.\n\
The WREATH_BUDGET environment variable overrides the n*d^n work-unit cap (default 100000000).";

#[derive(Debug, Parser)]
#[command(
    name = "wreath",
    version,
    about = "Computations with self-similar groups given by wreath recursions",
    after_help = AFTER_HELP,
    disable_help_flag = true
)]
struct Cli {
    #[command(flatten)]
    source: Source,

    #[arg(long, action = ArgAction::Help, global = true, help = "Print help")]
    help: Option<bool>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Source {
    /// Read the recursion system from a .wrs file
    #[arg(short = 'f', long, global = true, conflicts_with = "catalog")]
    file: Option<PathBuf>,

    /// Use a built-in recursion system
    #[arg(long, global = true, value_name = "NAME")]
    catalog: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a system and print it in canonical form
    Parse {
        /// Path of a .wrs file (alternative to --file)
        path: Option<PathBuf>,
    },
    /// Image of a vertex word
    Act {
        #[arg(short = 'g', value_name = "WORD")]
        word: String,
        #[arg(short = 'w', value_name = "VWORD")]
        vertex: String,
    },
    /// Root permutation and sections of a word
    Expand {
        #[arg(short = 'g', value_name = "WORD")]
        word: String,
    },
    /// Section of a word at a vertex
    Section {
        #[arg(short = 'g', value_name = "WORD")]
        word: String,
        #[arg(short = 'v', value_name = "VWORD")]
        vertex: String,
    },
    /// Permutation induced on level N
    Perm {
        #[arg(short = 'g', value_name = "WORD")]
        word: String,
        #[arg(short = 'n', value_name = "N")]
        level: usize,
        /// Print the cycle lengths instead of the images
        #[arg(long, conflicts_with = "order")]
        cycles: bool,
        /// Print the order instead of the images
        #[arg(long)]
        order: bool,
    },
    /// Try to certify that a word is the identity
    ProveId {
        #[arg(short = 'g', value_name = "WORD")]
        word: String,
        #[command(flatten)]
        closure: ClosureArgs,
    },
    /// Compare two words
    Equal {
        #[arg(short = 'g', value_name = "U")]
        left: String,
        #[arg(short = 'h', value_name = "V")]
        right: String,
        /// Compare the actions on every level up to N (default 8)
        #[arg(long, value_name = "N", conflicts_with = "prove")]
        level: Option<usize>,
        /// Compare by certifying u.v^-1 = 1
        #[arg(long)]
        prove: bool,
        #[command(flatten)]
        closure: ClosureArgs,
    },
    /// Check for a single d^n-cycle on levels 1..=N
    Odometer {
        #[arg(short = 'g', value_name = "WORD")]
        word: String,
        #[arg(short = 'n', value_name = "N")]
        level: usize,
    },
    /// Iterated product of sections along the root cycle through a letter
    Lift {
        #[arg(short = 'g', value_name = "WORD")]
        word: String,
        #[arg(long, default_value_t = 1)]
        iters: usize,
        #[arg(long, default_value_t = 0)]
        start: usize,
    },
    /// Signed exponent sums per generator
    Exponents {
        #[arg(short = 'g', value_name = "WORD")]
        word: String,
        /// Replace a generator by a word before counting (repeatable)
        #[arg(long, value_name = "NAME=WORD")]
        subst: Vec<String>,
    },
    /// Shortest word over generators sending one vertex to another
    Schreier {
        /// Comma-separated generator words
        #[arg(long, value_name = "LIST")]
        gens: String,
        #[arg(long, value_name = "VWORD")]
        from: String,
        #[arg(long, value_name = "VWORD")]
        to: String,
    },
    /// Algebraic necessary condition for a Levy cycle
    Levy {
        /// Comma-separated curve words
        #[arg(long, value_name = "U1,U2,...")]
        curves: String,
        #[arg(long, value_name = "N")]
        level: usize,
    },
    /// List built-in systems, or print one in .wrs form
    Catalog { name: Option<String> },
}

#[derive(Debug, Args)]
struct ClosureArgs {
    /// Maximum number of words in the section closure
    #[arg(long, default_value_t = 10_000)]
    max_set: usize,
    /// Maximum length of a word in the section closure
    #[arg(long, default_value_t = 512)]
    max_len: usize,
}

impl ClosureArgs {
    fn budget(&self) -> ClosureBudget {
        ClosureBudget {
            max_members: self.max_set,
            max_word_len: self.max_len,
        }
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Domain(String),
}

impl From<wreath_core::Error> for CliError {
    fn from(e: wreath_core::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn work_budget() -> CliResult<Budget> {
    match std::env::var("WREATH_BUDGET") {
        Ok(v) => {
            v.trim().parse().map(Budget::new).map_err(|_| {
                CliError::Usage(format!("WREATH_BUDGET must be an integer, got `{v}`"))
            })
        }
        Err(_) => Ok(Budget::default()),
    }
}

fn load_file(path: &PathBuf) -> CliResult<RecursionSystem> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))?;
    dsl::parse(&text).map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))
}

fn load(source: &Source) -> CliResult<RecursionSystem> {
    match (&source.file, &source.catalog) {
        (Some(path), None) => load_file(path),
        (None, Some(name)) => Ok(catalog::get(name)?.system),
        _ => Err(CliError::Usage(
            "exactly one of --file PATH or --catalog NAME is required".into(),
        )),
    }
}

fn split_list(text: &str) -> impl Iterator<Item = &str> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn witness_text(w: &NonIdentityWitness) -> String {
    let vertex = if w.vertex.is_empty() {
        "(root)".to_string()
    } else {
        w.vertex.to_string()
    };
    format!("witness vertex={vertex} letter={}", w.letter)
}

fn run(cli: Cli) -> CliResult<String> {
    let budget = work_budget()?;
    let mut out = String::new();
    if let Command::Catalog { name } = &cli.command {
        match name {
            None => {
                for n in catalog::list() {
                    writeln!(out, "{n}").unwrap();
                }
            }
            Some(n) => out.push_str(&dsl::serialize(&catalog::get(n)?.system)),
        }
        return Ok(out);
    }
    if let Command::Parse { path: Some(path) } = &cli.command {
        if cli.source.file.is_some() || cli.source.catalog.is_some() {
            return Err(CliError::Usage(
                "give the file either positionally or with --file".into(),
            ));
        }
        return Ok(dsl::serialize(&load_file(path)?));
    }

    let sys = load(&cli.source)?;
    let w = |text: &str| -> CliResult<GroupWord> { Ok(sys.parse_word(text)?) };

    match &cli.command {
        Command::Catalog { .. } => unreachable!(),
        Command::Parse { .. } => out.push_str(&dsl::serialize(&sys)),
        Command::Act { word, vertex } => {
            let image = sys.act(&w(word)?, &sys.parse_vertex(vertex)?)?;
            writeln!(out, "{image}").unwrap();
        }
        Command::Expand { word } => {
            let dec = sys.expand(&w(word)?);
            writeln!(out, "{}", sys.display_decomposition(&dec)).unwrap();
        }
        Command::Section { word, vertex } => {
            let s = sys.section(&w(word)?, &sys.parse_vertex(vertex)?)?;
            writeln!(out, "{}", sys.display(&s)).unwrap();
        }
        Command::Perm {
            word,
            level,
            cycles,
            order,
        } => {
            if *level == 0 {
                return Err(wreath_core::Error::ZeroLevel.into());
            }
            let p = level_permutation(&sys, &w(word)?, *level, budget)?;
            if *order {
                writeln!(out, "{}", p.order()).unwrap();
            } else if *cycles {
                let lengths: Vec<String> =
                    p.cycle_structure().iter().map(|l| l.to_string()).collect();
                writeln!(out, "{}", lengths.join(" ")).unwrap();
            } else {
                for (from, to) in p.vertex_images(sys.alphabet()) {
                    writeln!(out, "{from} -> {to}").unwrap();
                }
            }
        }
        Command::ProveId { word, closure } => {
            match prove_identity(&sys, &w(word)?, closure.budget()) {
                IdentityVerdict::Identity(cert) => {
                    let n = cert.members.len();
                    let plural = if n == 1 { "" } else { "s" };
                    writeln!(out, "identity: certificate with {n} member{plural}").unwrap();
                    for m in &cert.members {
                        writeln!(out, "{}", sys.display(m)).unwrap();
                    }
                }
                IdentityVerdict::NotIdentity(wit) => {
                    writeln!(out, "not identity: {}", witness_text(&wit)).unwrap();
                }
                IdentityVerdict::Inconclusive { explored } => {
                    writeln!(
                        out,
                        "inconclusive: budget exhausted after {explored} closure members"
                    )
                    .unwrap();
                }
            }
        }
        Command::Equal {
            left,
            right,
            level,
            prove,
            closure,
        } => {
            let mode = if *prove {
                EqualityMode::Prove(closure.budget())
            } else {
                EqualityMode::Level(level.unwrap_or(8))
            };
            let line = match equal(&sys, &w(left)?, &w(right)?, mode, budget)? {
                Equality::EqualUpToLevel(n) => format!("equal up to level {n}"),
                Equality::DifferUpToLevel(n) => format!("not equal up to level {n}"),
                Equality::Proved(_) => "proved equal".to_string(),
                Equality::Refuted(wit) => format!("proved not equal: {}", witness_text(&wit)),
                Equality::Inconclusive => "inconclusive: closure budget exhausted".to_string(),
            };
            writeln!(out, "{line}").unwrap();
        }
        Command::Odometer { word, level } => {
            let report = odometer_check(&sys, &w(word)?, *level, budget)?;
            for (i, ok) in report.levels.iter().enumerate() {
                let status = if *ok { "cyclic" } else { "not cyclic" };
                writeln!(out, "level {}: {status}", i + 1).unwrap();
            }
            if report.all_cyclic() {
                writeln!(
                    out,
                    "verdict: cyclic of order d^n on every level up to {level}"
                )
                .unwrap();
            } else {
                writeln!(out, "verdict: not an odometer up to level {level}").unwrap();
            }
        }
        Command::Lift { word, iters, start } => {
            let u = w(word)?;
            let lifted = if *iters == 1 {
                // a single lift needs no full-cycle check
                cycle_section_product(&sys, &u, *start)?
            } else {
                iterate_lift(&sys, &u, *start, *iters)?
            };
            writeln!(out, "{}", sys.display(&lifted)).unwrap();
        }
        Command::Exponents { word, subst } => {
            let mut subs = HashMap::new();
            for s in subst {
                let (name, image) = s.split_once('=').ok_or_else(|| {
                    CliError::Usage(format!("--subst expects NAME=WORD, got `{s}`"))
                })?;
                let gen = sys
                    .lookup(name.trim())
                    .ok_or_else(|| wreath_core::Error::UndefinedSymbol(name.trim().to_string()))?;
                subs.insert(gen, w(image)?);
            }
            let v = exponent_vector(&sys, &w(word)?, &subs)?;
            writeln!(out, "{}", v.display(&sys)).unwrap();
        }
        Command::Schreier { gens, from, to } => {
            let gens = split_list(gens).map(w).collect::<CliResult<Vec<_>>>()?;
            if gens.is_empty() {
                return Err(CliError::Usage("--gens needs at least one word".into()));
            }
            let from = sys.parse_vertex(from)?;
            let to = sys.parse_vertex(to)?;
            if from.len() != to.len() {
                return Err(wreath_core::Error::LengthMismatch {
                    expected: from.len(),
                    actual: to.len(),
                }
                .into());
            }
            match schreier_path(&sys, &gens, &from, &to, budget)? {
                SchreierOutcome::Path { word, .. } => {
                    writeln!(out, "{}", sys.display(&word)).unwrap();
                }
                SchreierOutcome::NotReachable { orbit_size } => {
                    return Err(CliError::Domain(format!(
                        "not reachable: orbit of {from} has {orbit_size} vertices and misses {to}"
                    )));
                }
            }
        }
        Command::Levy { curves, level } => {
            let curves = split_list(curves).map(w).collect::<CliResult<Vec<_>>>()?;
            let report = levy_necessary_condition(&sys, &curves, *level, budget)?;
            let m = curves.len();
            for (k, c) in report.curves.iter().enumerate() {
                let prev = (k + m - 1) % m + 1;
                match c.matching_letter {
                    Some(e) => writeln!(
                        out,
                        "curve {}: section at fixed letter {e} equals curve {prev} up to level {level}",
                        k + 1
                    ),
                    None => writeln!(
                        out,
                        "curve {}: no fixed letter with section equal to curve {prev}",
                        k + 1
                    ),
                }
                .unwrap();
            }
            writeln!(out, "verdict: {}", report.verdict()).unwrap();
        }
    }
    Ok(out)
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
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
