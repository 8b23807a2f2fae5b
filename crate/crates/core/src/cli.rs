//! Command-line front end. `run` returns the process exit code:
//! 0 success, 1 rejected, 2 usage or input error, 3 not found within caps,
//! 4 rank oracle exhausted.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use crate::certificates::{check_cct2_inapplicable, check_conjecture4};
use crate::moves::{
    parse_transcript, scramble, stabilize_transcript, verify_transcript, Presentation, PresentationFile, System,
    Transcript,
};
use crate::search::{rank_oracle_adapter, search_trivialization, Outcome, SearchConfig, Symmetries};
use crate::translator::{translate_en_to_ccac, translate_en_to_cen, TranslateError};
use crate::word::{Alphabet, Word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_FOUND: i32 = 3;
pub const EXIT_ORACLE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "accyc", about = "Replay, translate, search and certify AC-style transcripts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Freely (and cyclically) reduce a word.
    Reduce {
        word: String,
        /// Alphabet size (default 26).
        #[arg(long)]
        rank: Option<usize>,
    },
    /// Replay a transcript and write the resulting presentation.
    Apply {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        transcript: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Replay a transcript; exit 0 if accepted.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        transcript: PathBuf,
        /// `letters` for the letter tuple, or a presentation file.
        #[arg(long)]
        expect: Option<String>,
    },
    /// Translate an EN trivialization.
    Translate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        transcript: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Bounded search for a trivialization.
    Search {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Check a pair against the subword bound or the CCAC orbit.
    Certify {
        #[arg(value_enum)]
        kind: CertKind,
        #[arg(long, num_args = 2, value_names = ["W1", "W2"])]
        pair: Vec<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Emit a scrambled presentation and the EN transcript trivializing it.
    Scramble {
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Splice a stabilization into the transcript.
        #[arg(long)]
        stabilize: bool,
        /// Directory for the two files.
        #[arg(long, default_value = ".")]
        dir: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Cen,
    CcacStab,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CertKind {
    Conj4,
    Ccac,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SystemArg {
    Cen,
    Ccac,
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// TOML search configuration; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    system: Option<SystemArg>,
    #[arg(long)]
    max_len: Option<usize>,
    #[arg(long)]
    max_depth: Option<usize>,
    #[arg(long)]
    budget: Option<usize>,
    /// Comma-separated subset of rotation,inversion,permutation, or `none`.
    #[arg(long)]
    symmetries: Option<String>,
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Debug, Args)]
struct Output {
    /// Output file; defaults to a content-hash name in `--dir`.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = ".")]
    dir: PathBuf,
}

struct Failure(i32, String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(EXIT_USAGE, e.to_string())
    }
}

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            code
        }
    }
}

fn dispatch(cmd: Command) -> Result<i32, Failure> {
    match cmd {
        Command::Reduce { word, rank } => reduce(&word, rank),
        Command::Apply { input, transcript, output } => {
            let p = read_presentation(&input)?;
            let t = read_transcript(&transcript, &p)?;
            let r = verify_transcript(&p, &t, None);
            match r.final_presentation {
                Some(q) if r.accepted => {
                    let path = write_artifact(&output, "presentation", "toml", &PresentationFile::render(&q))?;
                    println!("{}", path.display());
                    Ok(EXIT_OK)
                }
                _ => {
                    println!("rejected: {}", r.reason);
                    Ok(EXIT_REJECTED)
                }
            }
        }
        Command::Verify { input, transcript, expect } => {
            let p = read_presentation(&input)?;
            let t = read_transcript(&transcript, &p)?;
            let expected = match expect.as_deref() {
                None => None,
                Some("letters") => Some(Presentation::letter_tuple(p.alphabet.clone())),
                Some(path) => Some(read_presentation(Path::new(path))?),
            };
            let r = verify_transcript(&p, &t, expected.as_ref());
            if r.accepted {
                println!("accepted");
            } else {
                println!("rejected: {}", r.reason);
            }
            Ok(if r.accepted { EXIT_OK } else { EXIT_REJECTED })
        }
        Command::Translate { input, transcript, mode, search, output } => {
            let p = read_presentation(&input)?;
            let t = read_transcript(&transcript, &p)?;
            let result = match mode {
                Mode::CcacStab => translate_en_to_ccac(&p, &t),
                Mode::Cen => {
                    let oracle = rank_oracle_adapter(search_config(&search)?);
                    translate_en_to_cen(&p, &t, &oracle)
                }
            };
            match result {
                Ok(out) => {
                    let path = write_artifact(&output, "transcript", "txt", &out.format(&p.alphabet))?;
                    println!("{} moves -> {}", out.len(), path.display());
                    Ok(EXIT_OK)
                }
                Err(e @ TranslateError::OracleExhausted(_)) => Err(Failure(EXIT_ORACLE, e.to_string())),
                Err(e) => Err(Failure(EXIT_REJECTED, e.to_string())),
            }
        }
        Command::Search { input, search, output } => {
            let p = read_presentation(&input)?;
            let cfg = search_config(&search)?;
            let r = search_trivialization(&p, &cfg)?;
            print!("{}", r.stats.to_lines());
            match r.outcome {
                Outcome::Found(t) => {
                    let path = write_artifact(&output, "transcript", "txt", &t.format(&p.alphabet))?;
                    println!("found {} moves -> {}", t.len(), path.display());
                    Ok(EXIT_OK)
                }
                other => {
                    let verdict =
                        if other == Outcome::BudgetExceeded { "budget_exceeded" } else { "exhausted_within_caps" };
                    let report = format!(
                        "outcome = \"{verdict}\"\nsystem = \"{}\"\nmax_total_length = {}\nmax_depth = {}\n\n[stats]\n{}",
                        cfg.system,
                        cfg.max_total_length,
                        cfg.max_depth,
                        toml::to_string(&r.stats).expect("stats serialize")
                    );
                    let path = write_artifact(&output, "search-report", "toml", &report)?;
                    println!("{verdict} -> {}", path.display());
                    Ok(EXIT_NOT_FOUND)
                }
            }
        }
        Command::Certify { kind, pair, output } => {
            let alphabet = Alphabet::standard(26);
            let w1 = alphabet.parse_word(&pair[0])?;
            let w2 = alphabet.parse_word(&pair[1])?;
            for x in [&w1, &w2] {
                if x.is_empty() || !x.is_cyclically_reduced() {
                    return Err(Failure(
                        EXIT_USAGE,
                        format!("{} must be nonempty and cyclically reduced", alphabet.format(x)),
                    ));
                }
            }
            let (text, reproduced, summary) = match kind {
                CertKind::Conj4 => {
                    let r = check_conjecture4(&w1, &w2);
                    let summary = format!(
                        "max common cyclic factor {} (witness {}); {} vs {}: inequality {}",
                        r.max_common_length,
                        r.witness,
                        r.reduced_total,
                        r.threshold,
                        if r.inequality_satisfiable { "satisfiable" } else { "unsatisfiable" }
                    );
                    (r.to_toml(), !r.inequality_satisfiable, summary)
                }
                CertKind::Ccac => {
                    let r = check_cct2_inapplicable(&w1, &w2);
                    let summary = format!(
                        "orbit {} states, {} checked; CCT2 applicable: {}; conserved length {} vs target {}",
                        r.orbit_size, r.states_checked, r.cct2_applicable_anywhere, r.length_invariant, r.target_length
                    );
                    (r.to_toml(), r.certifies_non_trivializable, summary)
                }
            };
            let path = write_artifact(&output, "certificate", "toml", &text)?;
            println!("{summary}\n{text}-> {}", path.display());
            Ok(if reproduced { EXIT_OK } else { EXIT_REJECTED })
        }
        Command::Scramble { rank, depth, seed, stabilize, dir } => {
            if rank == 0 || rank > 26 {
                return Err(Failure(EXIT_USAGE, "rank must be between 1 and 26".into()));
            }
            let target = Presentation::letter_tuple(Alphabet::standard(rank));
            let (p, mut t) = scramble(&target, depth, seed, System::En);
            if stabilize {
                t = stabilize_transcript(&p, &t, t.len() / 2, 2, seed)?;
            }
            let out = Output { out: None, dir };
            let pp = write_artifact(&out, "presentation", "toml", &PresentationFile::render(&p))?;
            let tp = write_artifact(&out, "transcript", "txt", &t.format(&p.alphabet))?;
            println!("{}\n{}", pp.display(), tp.display());
            Ok(EXIT_OK)
        }
    }
}

fn reduce(text: &str, rank: Option<usize>) -> Result<i32, Failure> {
    let alphabet = Alphabet::standard(rank.unwrap_or(26));
    let word: Word = alphabet.parse_word(text)?;
    let cr = word.cyclic_reduce();
    println!("reduced: {}", alphabet.format(&word));
    println!("cyclic core: {}", alphabet.format(&cr.core));
    println!("conjugator: {}", alphabet.format(&cr.conjugator));
    Ok(EXIT_OK)
}

fn read_presentation(path: &Path) -> Result<Presentation, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    Ok(PresentationFile::parse(&text)?)
}

fn read_transcript(path: &Path, p: &Presentation) -> Result<Transcript, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    Ok(parse_transcript(&text, &p.alphabet)?)
}

fn search_config(a: &SearchArgs) -> Result<SearchConfig, Failure> {
    let mut cfg = match &a.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure(EXIT_USAGE, format!("{}: {e}", path.display())))?;
            toml::from_str(&text)?
        }
        None => SearchConfig::default(),
    };
    if let Some(s) = a.system {
        cfg.system = match s {
            SystemArg::Cen => System::Cen,
            SystemArg::Ccac => System::Ccac,
        };
    }
    if let Some(v) = a.max_len {
        cfg.max_total_length = v;
    }
    if let Some(v) = a.max_depth {
        cfg.max_depth = v;
    }
    if let Some(v) = a.budget {
        cfg.node_budget = v;
    }
    if let Some(v) = a.workers {
        cfg.workers = v;
    }
    if let Some(s) = &a.symmetries {
        let mut sym = Symmetries::NONE;
        for part in s.split(',').map(str::trim).filter(|x| !x.is_empty() && *x != "none") {
            match part {
                "rotation" => sym.rotation = true,
                "inversion" => sym.inversion = true,
                "permutation" => sym.permutation = true,
                other => return Err(Failure(EXIT_USAGE, format!("unknown symmetry {other:?}"))),
            }
        }
        cfg.symmetries = sym;
    }
    Ok(cfg)
}

/// Write `content` to `--out`, or to `<kind>-<hash>.<ext>` in `--dir`
/// where the hash is the first 16 hex digits of its SHA-256.
fn write_artifact(out: &Output, kind: &str, ext: &str, content: &str) -> Result<PathBuf, Failure> {
    let path = match &out.out {
        Some(p) => p.clone(),
        None => {
            let digest = hex::encode(Sha256::digest(content.as_bytes()));
            out.dir.join(format!("{kind}-{}.{ext}", &digest[..16]))
        }
    };
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)?;
    }
    fs::write(&path, content)?;
    Ok(path)
}
