use std::process::ExitCode;

use artin_bd::braids::BraidWord;
use artin_bd::free_words::{Alphabet, FreeWord};
use artin_bd::involutive_products::InvolutiveWord;
use artin_bd::rank2::{format_std, parse_ab, parse_std, Rank2Group};
use artin_bd::representations::{FiberWord, RepKind, Representation};
use artin_bd::semidirect::{phi, psi, FlavorTag, GroupFlavor, SemidirectElement};
use artin_bd::suites::{run_suite, Suite, SuiteConfig};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "artin-bd",
    version,
    about = "Words, braid actions and automorphisms for Artin groups of type B and D"
)]
struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Omit wall-clock timings so output is byte-for-byte reproducible.
    #[arg(long, global = true)]
    stable: bool,
    /// Worker threads for verification suites.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a free-group word, or a K-word in x1..xn.
    Reduce {
        word: String,
        /// Rank for K-words; defaults to the largest index present.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Apply a braid to a fiber word under one of the representations.
    Act {
        #[arg(long)]
        rep: RepKind,
        #[arg(long)]
        n: usize,
        braid: String,
        word: String,
    },
    /// Decide conjugacy of two words and print a witness c with c w1 c^-1 = w2.
    Conj {
        w1: String,
        w2: String,
        /// Rank for K-words; defaults to the largest index present.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Map a word in b_i (type B) or d_i (type D) to semidirect coordinates.
    Phi {
        #[arg(long)]
        flavor: FlavorTag,
        #[arg(long)]
        n: usize,
        word: String,
    },
    /// Rewrite "(fiber | braid)" as a word in the presentation generators.
    Psi {
        #[arg(long)]
        flavor: FlavorTag,
        #[arg(long)]
        n: usize,
        element: String,
    },
    /// Run a verification suite.
    Verify {
        suite: Suite,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        len: Option<usize>,
        #[arg(long)]
        rep: Option<RepKind>,
        #[arg(long)]
        flavor: Option<FlavorTag>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Rank-2 Artin group with label m.
    Rank2 {
        #[arg(long)]
        m: u32,
        #[command(subcommand)]
        action: Rank2Action,
    },
}

#[derive(Subcommand)]
enum Rank2Action {
    /// Classify the automorphism given by the images of alpha and beta
    /// (written with a and b).
    Classify {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
    },
    /// Central normal form of a word in the coordinates a, b.
    Nf { word: String },
}

enum Failure {
    Verification,
    Input(artin_bd::Error),
}

impl From<artin_bd::Error> for Failure {
    fn from(e: artin_bd::Error) -> Self {
        Failure::Input(e)
    }
}

/// A K-word if every letter is some x_i, otherwise a free-group word.
enum Parsed {
    Free(FreeWord),
    K(InvolutiveWord),
}

fn parse_word(text: &str, n: Option<usize>) -> Result<Parsed, artin_bd::Error> {
    let free: FreeWord = text.parse()?;
    let is_k = free.alphabet() == Some(Alphabet::XY)
        && free
            .letters()
            .iter()
            .all(|l| l.gen.family == artin_bd::free_words::Family::X);
    if !is_k {
        return Ok(Parsed::Free(free));
    }
    let n = n.unwrap_or_else(|| {
        free.letters()
            .iter()
            .map(|l| l.gen.index as usize)
            .max()
            .unwrap_or(1)
    });
    Ok(Parsed::K(InvolutiveWord::parse(text, n)?))
}

fn emit(cli: &Cli, text: String, value: Value) {
    if cli.json {
        println!("{value}");
    } else {
        println!("{text}");
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Reduce { word, n } => {
            let reduced = match parse_word(word, *n)? {
                Parsed::Free(w) => w.to_string(),
                Parsed::K(w) => w.to_string(),
            };
            emit(cli, reduced.clone(), json!({ "reduced": reduced }));
        }
        Command::Act {
            rep,
            n,
            braid,
            word,
        } => {
            let rho = Representation::new(*rep, *n)?;
            let b = BraidWord::parse(braid, *n)?;
            let w = rho.parse_fiber(word)?;
            let image = rho.apply(&b, &w)?.to_string();
            emit(
                cli,
                image.clone(),
                json!({ "rep": rep.name(), "n": n, "result": image }),
            );
        }
        Command::Conj { w1, w2, n } => {
            let witness = match (parse_word(w1, *n)?, parse_word(w2, *n)?) {
                (Parsed::Free(a), Parsed::Free(b)) => {
                    FiberWord::Free(a).conjugacy_witness(&FiberWord::Free(b))
                }
                (Parsed::K(a), Parsed::K(b)) => {
                    let rank = n.unwrap_or(a.rank().max(b.rank()));
                    let lift = |w: &InvolutiveWord| InvolutiveWord::k_reduce(w.letters(), rank);
                    FiberWord::Involutive(lift(&a)?)
                        .conjugacy_witness(&FiberWord::Involutive(lift(&b)?))
                }
                _ => {
                    return Err(Failure::Input(artin_bd::Error::Unsupported(
                        "cannot compare a K-word with a free-group word".into(),
                    )))
                }
            };
            let text = witness
                .as_ref()
                .map_or("not conjugate".to_string(), |c| format!("conjugate by {c}"));
            let value = json!({
                "conjugate": witness.is_some(),
                "witness": witness.map(|c| c.to_string()),
            });
            emit(cli, text, value);
        }
        Command::Phi { flavor, n, word } => {
            let flavor = GroupFlavor::new(*flavor, *n)?;
            let e = phi(&word.parse()?, flavor)?;
            emit(
                cli,
                e.to_string(),
                json!({ "flavor": flavor.to_string(), "fiber": e.fiber.to_string(), "braid": e.braid.to_string() }),
            );
        }
        Command::Psi { flavor, n, element } => {
            let flavor = GroupFlavor::new(*flavor, *n)?;
            let w = psi(&SemidirectElement::parse(element, flavor)?)?.to_string();
            emit(
                cli,
                w.clone(),
                json!({ "flavor": flavor.to_string(), "word": w }),
            );
        }
        Command::Verify {
            suite,
            n,
            m,
            len,
            rep,
            flavor,
            samples,
            seed,
        } => {
            let mut cfg = SuiteConfig {
                n: *n,
                m: *m,
                len: *len,
                rep: *rep,
                flavor: *flavor,
                samples: *samples,
                ..SuiteConfig::default()
            };
            if let Some(seed) = seed {
                cfg.seed = *seed;
            }
            let mut report = run_suite(*suite, &cfg)?;
            if cli.stable {
                report.wall_time_ms = None;
            }
            let value = serde_json::to_value(&report).expect("reports serialize");
            emit(cli, report.to_string(), value);
            if !report.pass {
                return Err(Failure::Verification);
            }
        }
        Command::Rank2 { m, action } => {
            let g = Rank2Group::new(*m)?;
            match action {
                Rank2Action::Classify { alpha, beta } => {
                    let d = g.classify_auto(&parse_std(alpha)?, &parse_std(beta)?)?;
                    let witness = d.inner_witness.to_string();
                    let text = format!(
                        "inner {witness}  eps^{}  tau^{}  eta^{}",
                        d.e_eps, d.e_tau, d.e_eta
                    );
                    let value = json!({
                        "m": m,
                        "inner_witness": witness,
                        "inner_witness_std": format_std(&g.ab_to_std(&d.inner_witness)?),
                        "e_eps": d.e_eps,
                        "e_tau": d.e_tau,
                        "e_eta": d.e_eta,
                    });
                    emit(cli, text, value);
                }
                Rank2Action::Nf { word } => {
                    let nf = g.normal_form(&parse_ab(word)?)?;
                    let value = json!({
                        "m": m,
                        "c_exp": nf.c_exp,
                        "residue": nf.residue.format_with(&g.quotient_names()),
                        "canonical": g.nf_word(&nf).to_string(),
                    });
                    emit(cli, g.format_nf(&nf), value);
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
