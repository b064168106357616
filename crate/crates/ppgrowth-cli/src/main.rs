//! Command-line front end: machines, decisions, counts, growth tables,
//! encodings, sampling, and enumeration with stable JSON output.
//!
//! Exit codes: 0 on success (a NotPP verdict is a successful computation),
//! 1 on domain errors, 2 on usage errors.

use std::io::Read;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use serde_json::json;

use ppgrowth::growthlab::{self, Budget};
use ppgrowth::machines::{self, Automaton};
use ppgrowth::potpos::{self, LanguageSpec, Verdict};
use ppgrowth::spectral;
use ppgrowth::words::{enumerate_cyclic, CyclicWord, Letter, Word};

#[derive(Parser)]
#[command(name = "ppgrowth", version, about = "Growth of potentially positive words in free groups")]
struct Cli {
    /// Emit machine-readable JSON on stdout
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a machine; optionally check properties, print its
    /// characteristic polynomial or dominant root, or emit its text form
    Machine {
        /// f2-lower | goldstein[:<xy>] | rank:<r> | rn:<n> | rnl:<n>
        #[arg(long)]
        builder: String,
        /// Run the reduced / mixing / one-to-constant checks
        #[arg(long)]
        check: bool,
        /// Print the characteristic polynomial
        #[arg(long)]
        charpoly: bool,
        /// Print the dominant real root
        #[arg(long)]
        eig: bool,
        /// Decimal digits for --eig
        #[arg(long, default_value_t = 12)]
        digits: u32,
        /// Write the automaton text format to this file
        #[arg(long, value_name = "FILE")]
        emit: Option<std::path::PathBuf>,
    },
    /// Decide potential positivity of a rank-2 word
    Decide {
        #[arg(long, default_value_t = 2)]
        rank: u16,
        #[arg(long)]
        max_steps: Option<usize>,
        /// Include and verify the witness automorphism
        #[arg(long)]
        witness: bool,
        /// Word (reads stdin when omitted)
        word: Option<String>,
    },
    /// Count closed paths or distinct cyclic words of a machine at a length
    #[command(group(ArgGroup::new("mode").required(true).args(["closed_paths", "distinct_words"])))]
    Count {
        #[arg(long)]
        builder: String,
        #[arg(long)]
        length: usize,
        /// Count closed paths (rotations distinct): trace of A^n
        #[arg(long)]
        closed_paths: bool,
        /// Count distinct cyclic words spelled by closed paths
        #[arg(long)]
        distinct_words: bool,
    },
    /// Growth-rate table for ranks 2..=7
    Table {
        #[arg(long, default_value_t = 12)]
        digits: u32,
    },
    /// Carry a word of the level-n language into the limit language
    Encode {
        #[arg(long)]
        n: usize,
        /// Use the signal form (recoverable level)
        #[arg(long)]
        signal: bool,
        word: Option<String>,
    },
    /// Invert an encoding
    Decode {
        /// Level used by the plain encoding (signal decoding recovers it)
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        signal: bool,
        word: Option<String>,
    },
    /// Sample uniform closed paths of the criterion machine and decide them
    Sample {
        #[arg(long)]
        length: usize,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Enumerate cyclic words of a length, optionally filtered
    Enumerate {
        #[arg(long, default_value_t = 2)]
        rank: u16,
        #[arg(long)]
        length: usize,
        /// all | goldstein | rn:<n> | pp2 | commutator
        #[arg(long, default_value = "all")]
        filter: String,
    },
}

#[derive(Debug)]
struct CliError(String);

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

fn main() -> ExitCode {
    // die quietly when stdout is a closed pipe (e.g. `ppgrowth ... | head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn read_word_arg(arg: Option<String>) -> Result<String, CliError> {
    match arg {
        Some(s) => Ok(s),
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError(format!("reading stdin: {e}")))?;
            Ok(buf.trim().to_string())
        }
    }
}

fn build_machine(spec: &str) -> Result<Automaton, CliError> {
    if spec == "f2-lower" {
        return Ok(machines::build_f2_lower());
    }
    if spec == "goldstein" {
        return Ok(machines::build_goldstein(
            Letter::from_char('B').unwrap(),
            Letter::from_char('a').unwrap(),
        )?);
    }
    if let Some(pair) = spec.strip_prefix("goldstein:") {
        let chars: Vec<char> = pair.chars().collect();
        if chars.len() != 2 {
            return Err(CliError(format!(
                "goldstein pair must be two letters, got {pair:?}"
            )));
        }
        let x = Letter::from_char(chars[0])
            .ok_or_else(|| CliError(format!("bad letter {:?}", chars[0])))?;
        let y = Letter::from_char(chars[1])
            .ok_or_else(|| CliError(format!("bad letter {:?}", chars[1])))?;
        return Ok(machines::build_goldstein(x, y)?);
    }
    if let Some(r) = spec.strip_prefix("rank:") {
        let r: u16 = r.parse().map_err(|_| CliError(format!("bad rank {r:?}")))?;
        return Ok(machines::build_rank_machine(r)?);
    }
    if let Some(n) = spec.strip_prefix("rn:") {
        let n: usize = n.parse().map_err(|_| CliError(format!("bad level {n:?}")))?;
        return Ok(machines::build_rn(n));
    }
    if let Some(n) = spec.strip_prefix("rnl:") {
        let n: usize = n.parse().map_err(|_| CliError(format!("bad level {n:?}")))?;
        return Ok(machines::build_rnl(n));
    }
    Err(CliError(format!(
        "unknown builder {spec:?} (expected f2-lower, goldstein[:xy], rank:<r>, rn:<n>, rnl:<n>)"
    )))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Machine {
            builder,
            check,
            charpoly,
            eig,
            digits,
            emit,
        } => {
            let m = build_machine(&builder)?;
            let mut out = json!({
                "builder": builder,
                "rank": m.rank(),
                "nodes": m.node_count(),
                "edges": m.edge_count(),
                "adjacency": m.adjacency_matrix().to_string_rows(),
            });
            if check {
                let report = m.property_report();
                out["properties"] = serde_json::to_value(&report)?;
            }
            if charpoly {
                let p = spectral::charpoly(&m.adjacency_matrix());
                out["charpoly"] = json!({
                    "display": p.to_string(),
                    "coefficients_ascending": p.to_coeff_strings(),
                });
            }
            if eig {
                let p = spectral::charpoly(&m.adjacency_matrix());
                let root = spectral::dominant_root(&p, digits)?;
                out["dominant_root"] = json!({
                    "value": root.decimal(),
                    "radius": format!("1e-{digits}"),
                });
            }
            if let Some(path) = emit {
                std::fs::write(&path, m.to_text())
                    .map_err(|e| CliError(format!("writing {}: {e}", path.display())))?;
                out["emitted"] = json!(path.display().to_string());
            }
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out)?);
            } else {
                println!(
                    "{} nodes, {} edges (rank {})",
                    m.node_count(),
                    m.edge_count(),
                    m.rank()
                );
                if let Some(p) = out.get("properties") {
                    println!("properties: {p}");
                }
                if let Some(p) = out.get("charpoly") {
                    println!("charpoly: {}", p["display"].as_str().unwrap_or(""));
                }
                if let Some(r) = out.get("dominant_root") {
                    println!("dominant root: {} (+- 1e-{digits})", r["value"].as_str().unwrap_or(""));
                }
                if let Some(f) = out.get("emitted") {
                    println!("wrote {}", f.as_str().unwrap_or(""));
                }
            }
            Ok(())
        }
        Cmd::Decide {
            rank,
            max_steps,
            witness,
            word,
        } => {
            let text = read_word_arg(word)?;
            let input = Word::parse(rank, &text)?;
            let decision = potpos::decide_pp2(&input, max_steps)?;
            let mut out = serde_json::to_value(&decision)?;
            out["input"] = json!(text);
            if witness {
                if let Some(moves) = &decision.witness {
                    let img = potpos::verify_witness(&input, moves)?;
                    out["verified_image"] = json!(img.to_string());
                }
            } else if let Some(obj) = out.as_object_mut() {
                obj.remove("witness");
            }
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out)?);
            } else {
                let verdict = match decision.verdict {
                    Verdict::PotentiallyPositive => "PP",
                    Verdict::NotPotentiallyPositive => "NotPP",
                    Verdict::Undecided => "Undecided",
                };
                println!("{verdict} (steps: {})", decision.steps_used);
                if witness {
                    if let Some(moves) = &decision.witness {
                        let parts: Vec<String> = moves.iter().map(|m| m.to_string()).collect();
                        println!("witness: [{}]", parts.join(", "));
                        println!(
                            "verified image: {}",
                            out["verified_image"].as_str().unwrap_or("")
                        );
                    }
                }
                if let Some(cert) = &decision.certificate {
                    println!("certificate: {} at step {}", cert.word, cert.step);
                }
            }
            Ok(())
        }
        Cmd::Count {
            builder,
            length,
            closed_paths,
            distinct_words: _,
        } => {
            let m = build_machine(&builder)?;
            let (mode, value) = if closed_paths {
                if length == 0 {
                    return Err(CliError("closed paths need length >= 1".into()));
                }
                ("closed-paths", m.count_closed_paths(length as u64).to_string())
            } else {
                ("distinct-words", m.language(length)?.len().to_string())
            };
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "builder": builder,
                        "length": length,
                        "mode": mode,
                        "count": value,
                    }))?
                );
            } else {
                println!("{value}");
            }
            Ok(())
        }
        Cmd::Table { digits } => {
            let rows = growthlab::growth_table(digits)?;
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&rows)?);
            } else {
                print!("{}", growthlab::table_markdown(&rows));
            }
            Ok(())
        }
        Cmd::Encode { n, signal, word } => {
            let text = read_word_arg(word)?;
            let input = CyclicWord::parse(2, &text)?;
            let img = if signal {
                potpos::encode_signal(n, &input)?
            } else {
                potpos::encode_f(n, &input)?
            };
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "input": text,
                        "n": n,
                        "signal": signal,
                        "image": img.to_string(),
                        "input_length": input.len(),
                        "image_length": img.len(),
                    }))?
                );
            } else {
                println!("{img}");
            }
            Ok(())
        }
        Cmd::Decode { n, signal, word } => {
            let text = read_word_arg(word)?;
            let input = CyclicWord::parse(2, &text)?;
            let (level, img) = if signal {
                potpos::decode_signal(&input)?
            } else {
                let n = n.ok_or_else(|| CliError("--n is required without --signal".into()))?;
                (n, potpos::decode_f(n, &input)?)
            };
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "input": text,
                        "n": level,
                        "signal": signal,
                        "word": img.to_string(),
                    }))?
                );
            } else if signal {
                println!("n={level} {img}");
            } else {
                println!("{img}");
            }
            Ok(())
        }
        Cmd::Sample {
            length,
            count,
            seed,
        } => {
            let report = growthlab::sample_pp2(length, count, seed)?;
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                println!(
                    "accepted {}/{} at length {}; {} in the limit language{}",
                    report.accepted,
                    report.requested,
                    report.target_length,
                    report.in_limit_language,
                    report
                        .fraction
                        .map(|f| format!(" (fraction {f:.3})"))
                        .unwrap_or_default()
                );
                println!("caveat: {}", report.caveat);
            }
            Ok(())
        }
        Cmd::Enumerate {
            rank,
            length,
            filter,
        } => {
            let budget = Budget::from_env();
            let words = enumerate_filtered(rank, length, &filter, budget)?;
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "rank": rank,
                        "length": length,
                        "filter": filter,
                        "count": words.len(),
                        "words": words,
                    }))?
                );
            } else {
                for w in &words {
                    println!("{w}");
                }
            }
            Ok(())
        }
    }
}

type WordFilter = Box<dyn Fn(&CyclicWord) -> Result<bool, CliError>>;

fn enumerate_filtered(
    rank: u16,
    length: usize,
    filter: &str,
    budget: Budget,
) -> Result<Vec<String>, CliError> {
    // budget guard through the shared counting path
    let all_spec = LanguageSpec::Forbidden(potpos::ForbiddenSpec { rank, rules: vec![] });
    growthlab::count_language(&all_spec, length, budget)?;
    let keep: WordFilter = match filter {
        "all" => Box::new(|_| Ok(true)),
        "goldstein" => {
            if rank != 2 {
                return Err(CliError("goldstein filter needs rank 2".into()));
            }
            Box::new(|w| Ok(potpos::in_goldstein_set(w)))
        }
        "pp2" => {
            if rank != 2 {
                return Err(CliError("pp2 filter needs rank 2".into()));
            }
            Box::new(|w| {
                Ok(potpos::decide_pp2(&w.to_word(), None)?.verdict == Verdict::PotentiallyPositive)
            })
        }
        "commutator" => Box::new(|w| Ok(w.abelianize().iter().all(|&e| e == 0))),
        other => {
            if let Some(n) = other.strip_prefix("rn:") {
                let n: usize = n
                    .parse()
                    .map_err(|_| CliError(format!("bad level in filter {other:?}")))?;
                if rank != 2 {
                    return Err(CliError("rn filter needs rank 2".into()));
                }
                let m = machines::build_rn(n);
                Box::new(move |w| Ok(m.accepts_cyclic(w)))
            } else {
                return Err(CliError(format!(
                    "unknown filter {other:?} (expected all, goldstein, rn:<n>, pp2, commutator)"
                )));
            }
        }
    };
    let mut out = Vec::new();
    for w in enumerate_cyclic(rank, length) {
        if keep(&w)? {
            out.push(w.to_string());
        }
    }
    Ok(out)
}
