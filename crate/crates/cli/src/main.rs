//! `omega` — command-line front end for the ω-automata toolkit.
//!
//! Exit codes are a stable contract: 0 = decided / success, 1 = a
//! boolean verb decided "false", 2 = error or budget-exhausted unknown.

use clap::{Parser, Subcommand, ValueEnum};
use omega_core::gadgets::{self, corpus};
use omega_core::hierarchy::{self, Pruning};
use omega_core::langops;
use omega_core::mdp;
use omega_core::probability::{self, Rational};
use omega_core::sddet;
use omega_core::{
    format_lasso, parse_automaton, parse_lasso, serialize_automaton, Automaton, Error, Limits,
};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "omega", version, about = "Nondeterminism-hierarchy toolkit for ω-automata")]
struct Cli {
    /// Largest state space any construction may build.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_states: usize,
    /// Largest number of candidates a search may test.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    budget: u64,
    /// Output style: human text or line-parseable `key value` pairs.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Accept partial automata and totalize them with a rejecting sink.
    #[arg(long, global = true)]
    allow_partial: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Kv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Full nondeterminism-level report for an automaton.
    Classify {
        path: PathBuf,
        /// Treat the path as a directory and classify every .aut in it.
        #[arg(long)]
        batch: bool,
    },
    /// Determinize a semantically deterministic Büchi or weak automaton.
    DeterminizeSd {
        aut: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Skip the SD precondition check (experimental output).
        #[arg(long)]
        no_require_sd: bool,
    },
    /// Complement the language.
    Complement {
        aut: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Breakpoint determinization of a co-Büchi automaton.
    NcwDet {
        aut: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Language containment L(first) ⊆ L(second).
    Contains { a: PathBuf, b: PathBuf },
    /// Language equivalence.
    Equiv { a: PathBuf, b: PathBuf },
    /// Lasso membership, e.g. `member a.aut "ab;b"`.
    Member { aut: PathBuf, lasso: String },
    /// Exact probability of the language under uniform random words.
    Measure { aut: PathBuf },
    /// Does some pruning lose only a measure-zero slice of the language?
    AlmostDbp { aut: PathBuf },
    /// Co-safe closure of a co-Büchi automaton.
    Cosafe {
        aut: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Prune to an embodied deterministic automaton.
    Prune {
        aut: PathBuf,
        /// Polarity bits per variable for a SAT-gadget automaton.
        #[arg(long, conflicts_with = "search")]
        assignment: Option<String>,
        /// Search for an equivalent deterministic pruning.
        #[arg(long)]
        search: bool,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Generate a reduction gadget automaton.
    #[command(subcommand)]
    Gadget(GadgetCmd),
    /// Maximal probability of an accepting product run.
    Psyn { mdp: PathBuf, aut: PathBuf },
    /// Maximal probability that the generated word is in the language.
    Psem { mdp: PathBuf, aut: PathBuf },
    /// Per-MDP good-for-MDPs witness: psyn = psem on this MDP.
    GfmWitness { mdp: PathBuf, aut: PathBuf },
    /// Emit the named counterexample corpus.
    Corpus {
        #[arg(long)]
        emit: PathBuf,
    },
}

#[derive(Subcommand)]
enum GadgetCmd {
    /// CNF (DIMACS) → Büchi gadget whose DBPness matches satisfiability.
    Sat {
        dimacs: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Connected graph → HD co-Büchi gadget.
    Hamcycle {
        graph: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Space-bounded Turing machine → weak gadget.
    Tm {
        tm: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

struct Reporter {
    format: Format,
}

impl Reporter {
    fn pair(&self, key: &str, value: impl std::fmt::Display) {
        match self.format {
            Format::Text => println!("{key}: {value}"),
            Format::Kv => println!("{key} {value}"),
        }
    }

    fn line(&self, text: &str, kv: &str) {
        match self.format {
            Format::Text => println!("{text}"),
            Format::Kv => println!("{kv}"),
        }
    }
}

fn rational_str(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

fn load_automaton(path: &Path, allow_partial: bool) -> Result<Automaton, Error> {
    parse_automaton(&read(path)?, allow_partial)
}

fn emit_automaton(a: &Automaton, out: &Option<PathBuf>) -> Result<(), Error> {
    let text = serialize_automaton(a);
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = Limits::default()
        .with_max_states(cli.max_states)
        .with_search_budget(cli.budget);
    let rep = Reporter { format: cli.format };
    match run(&cli, &limits, &rep) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli, limits: &Limits, rep: &Reporter) -> Result<u8, Error> {
    match &cli.cmd {
        Cmd::Classify { path, batch } => {
            if *batch {
                let mut entries: Vec<PathBuf> = std::fs::read_dir(path)
                    .map_err(|e| Error::InvalidInput(format!("cannot list {}: {e}", path.display())))?
                    .filter_map(|e| e.ok().map(|e| e.path()))
                    .filter(|p| p.extension().is_some_and(|x| x == "aut"))
                    .collect();
                entries.sort();
                for file in entries {
                    rep.pair("file", file.display());
                    let a = load_automaton(&file, cli.allow_partial)?;
                    classify_report(&a, limits, rep);
                }
                Ok(0)
            } else {
                let a = load_automaton(path, cli.allow_partial)?;
                classify_report(&a, limits, rep);
                Ok(0)
            }
        }
        Cmd::DeterminizeSd { aut, out, no_require_sd } => {
            let a = load_automaton(aut, cli.allow_partial)?;
            let sd = sddet::determinize_sd_nbw(&a, !no_require_sd, limits)?;
            emit_automaton(&sd.automaton, out)?;
            Ok(0)
        }
        Cmd::Complement { aut, out } => {
            let a = load_automaton(aut, cli.allow_partial)?;
            emit_automaton(&langops::complement(&a, limits)?, out)?;
            Ok(0)
        }
        Cmd::NcwDet { aut, out } => {
            let a = load_automaton(aut, cli.allow_partial)?;
            emit_automaton(&langops::determinize_ncw(&a, limits)?, out)?;
            Ok(0)
        }
        Cmd::Contains { a, b } => {
            let x = load_automaton(a, cli.allow_partial)?;
            let y = load_automaton(b, cli.allow_partial)?;
            match langops::contains_counterexample(&x, &y, limits)? {
                None => {
                    rep.pair("contains", "true");
                    Ok(0)
                }
                Some(w) => {
                    rep.pair("contains", "false");
                    rep.pair("counterexample", format_lasso(x.alphabet(), &w));
                    Ok(1)
                }
            }
        }
        Cmd::Equiv { a, b } => {
            let x = load_automaton(a, cli.allow_partial)?;
            let y = load_automaton(b, cli.allow_partial)?;
            let eq = langops::equivalent(&x, &y, limits)?;
            rep.pair("equivalent", eq);
            Ok(if eq { 0 } else { 1 })
        }
        Cmd::Member { aut, lasso } => {
            let a = load_automaton(aut, cli.allow_partial)?;
            let w = parse_lasso(a.alphabet(), lasso)?;
            let (accepted, witness) = omega_core::lasso_membership(&a, &w)?;
            rep.pair("member", accepted);
            if let Some(wit) = witness {
                let fmt = |states: &[usize]| {
                    states.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
                };
                rep.pair("witness-stem-states", fmt(&wit.stem_states));
                rep.pair("witness-loop-states", fmt(&wit.loop_states));
            }
            Ok(if accepted { 0 } else { 1 })
        }
        Cmd::Measure { aut } => {
            let a = load_automaton(aut, cli.allow_partial)?;
            let m = probability::measure(&a, limits)?;
            rep.pair("measure", rational_str(&m));
            Ok(0)
        }
        Cmd::AlmostDbp { aut } => {
            let a = load_automaton(aut, cli.allow_partial)?;
            let out = probability::almost_dbp(&a, limits)?;
            rep.pair("almost-dbp", out.holds);
            rep.pair("gap", rational_str(&out.gap));
            rep.pair("route", out.route);
            if let Some(p) = &out.pruning {
                rep.pair("pruning", pruning_str(&a, p));
            }
            Ok(if out.holds { 0 } else { 1 })
        }
        Cmd::Cosafe { aut, out } => {
            let a = load_automaton(aut, cli.allow_partial)?;
            emit_automaton(&probability::cosafe_closure(&a, limits)?, out)?;
            Ok(0)
        }
        Cmd::Prune { aut, assignment, search, out } => {
            let a = load_automaton(aut, cli.allow_partial)?;
            let pruning = if let Some(bits) = assignment {
                let bools: Vec<bool> = bits
                    .chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        _ => Err(Error::InvalidInput("assignment must be 0/1 bits".into())),
                    })
                    .collect::<Result<_, _>>()?;
                gadgets::assignment_pruning(&a, &bools)?
            } else if *search {
                let found = hierarchy::check_dbp(&a, limits)?;
                match found.pruning {
                    Some(p) => p,
                    None => {
                        rep.pair("dbp", "false");
                        return Ok(1);
                    }
                }
            } else {
                return Err(Error::InvalidInput(
                    "prune needs --assignment <bits> or --search".into(),
                ));
            };
            emit_automaton(&pruning.apply(&a), out)?;
            Ok(0)
        }
        Cmd::Gadget(g) => {
            match g {
                GadgetCmd::Sat { dimacs, out } => {
                    let phi = gadgets::parse_dimacs(&read(dimacs)?)?;
                    emit_automaton(&gadgets::sat_to_nbw(&phi)?, out)?;
                }
                GadgetCmd::Hamcycle { graph, out } => {
                    let g = gadgets::parse_graph(&read(graph)?)?;
                    emit_automaton(&gadgets::hamcycle_to_ncw(&g)?, out)?;
                }
                GadgetCmd::Tm { tm, out } => {
                    let t = gadgets::parse_tm(&read(tm)?)?;
                    let a = gadgets::tm_to_nww(&t, limits)?;
                    emit_automaton(&a, out)?;
                    if out.is_some() {
                        let w = t.encode_empty_tape_run()?;
                        rep.pair("empty-tape-word", format_lasso(a.alphabet(), &w));
                        rep.pair(
                            "corrupted-word",
                            format_lasso(a.alphabet(), &gadgets::corrupt_first_letter(&t, &w)),
                        );
                    }
                }
            }
            Ok(0)
        }
        Cmd::Psyn { mdp: mpath, aut } => {
            let m = mdp::parse_mdp(&read(mpath)?)?;
            let a = load_automaton(aut, cli.allow_partial)?;
            rep.pair("psyn", rational_str(&mdp::psyn(&m, &a)?));
            Ok(0)
        }
        Cmd::Psem { mdp: mpath, aut } => {
            let m = mdp::parse_mdp(&read(mpath)?)?;
            let a = load_automaton(aut, cli.allow_partial)?;
            rep.pair("psem", rational_str(&mdp::psem(&m, &a, limits)?));
            Ok(0)
        }
        Cmd::GfmWitness { mdp: mpath, aut } => {
            let m = mdp::parse_mdp(&read(mpath)?)?;
            let a = load_automaton(aut, cli.allow_partial)?;
            let (gfm, syn, sem) = mdp::gfm_witness(&m, &a, limits)?;
            rep.line(
                &format!("{gfm} psyn={} psem={}", rational_str(&syn), rational_str(&sem)),
                &format!(
                    "gfm {gfm}\npsyn {}\npsem {}",
                    rational_str(&syn),
                    rational_str(&sem)
                ),
            );
            Ok(if gfm { 0 } else { 1 })
        }
        Cmd::Corpus { emit } => {
            std::fs::create_dir_all(emit)
                .map_err(|e| Error::InvalidInput(format!("cannot create dir: {e}")))?;
            for (name, a) in corpus::corpus() {
                let file = emit.join(format!("{name}.aut"));
                std::fs::write(&file, serialize_automaton(&a))
                    .map_err(|e| Error::InvalidInput(format!("cannot write: {e}")))?;
                rep.pair("wrote", file.display());
            }
            Ok(0)
        }
    }
}

fn classify_report(a: &Automaton, limits: &Limits, rep: &Reporter) {
    let r = hierarchy::classify(a, limits);
    rep.pair("automaton", a.name());
    rep.pair("deterministic", r.deterministic);
    rep.pair("weak", r.weak);
    rep.pair("sd", opt_bool(r.sd));
    if let Some((q, l, s1, s2)) = r.sd_counterexample {
        rep.pair(
            "sd-counterexample",
            format!("({q},{},{s1},{s2})", a.alphabet().letter(l)),
        );
    }
    rep.pair("hd", opt_bool(r.hd));
    rep.pair("dbp", opt_bool(r.dbp));
    if let Some(p) = &r.dbp_pruning {
        rep.pair("dbp-pruning", pruning_str(a, p));
    }
    for c in &r.caveats {
        rep.pair("caveat", c);
    }
}

fn opt_bool(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "true",
        Some(false) => "false",
        None => "unknown",
    }
}

/// Renders only the genuinely chosen slots: `q.letter->p` triples.
fn pruning_str(a: &Automaton, p: &Pruning) -> String {
    let mut parts = Vec::new();
    for q in 0..a.num_states() {
        for l in 0..a.alphabet().len() {
            if a.successors(q, l).len() > 1 {
                parts.push(format!("{q}.{}->{}", a.alphabet().letter(l), p.choice(q, l)));
            }
        }
    }
    if parts.is_empty() {
        parts.push("identity".into());
    }
    parts.join(";")
}

