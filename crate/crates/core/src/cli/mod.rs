//! Command-line front end, kept in the library so it can be driven in-process.
//!
//! Exit codes: 0 success (or invariant), 1 a well-formed negative answer,
//! 2 bad input, 3 internal oracle mismatch, 64 usage error. Failure paths
//! write only to stderr.

pub mod files;
pub mod report;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bipartite::{random_state_with_spectrum, BipartiteState};
use crate::invariance::{
    commutant_check, invariance_structure, is_invariant, sample_invariant_pairs, undo_operator,
    UndoOutcome, UnitaryPair,
};
use crate::matkernel::{random_unit_vector, ComplexMatrix};
use crate::tolerance::{self, Tolerances};
use files::{FileError, PairEntry, PairFile, StateFile, UnitaryFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_ORACLE: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "uli",
    version,
    about = "Local unitary invariance of bipartite pure states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    /// Maximally entangled state on min(d1, d2) levels.
    Bell,
    /// The basis product state |0⟩|0⟩.
    Product,
    /// Haar-random Schmidt bases around a given spectrum.
    Spectrum,
    /// Haar-random unit vector.
    HaarRandom,
}

#[derive(Debug, clap::Args)]
pub struct StateOpts {
    /// Rescale an unnormalized input state instead of rejecting it.
    #[arg(long)]
    pub normalize: bool,
    /// Relative threshold below which Schmidt coefficients count as zero.
    #[arg(long, default_value_t = tolerance::RANK_TOL)]
    pub rank_tol: f64,
    /// Relative gap below which neighbouring coefficients are equal.
    #[arg(long, default_value_t = tolerance::DEGENERACY_TOL)]
    pub degeneracy_tol: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report the Schmidt spectrum and the stabilizer structure of a state.
    Analyze {
        /// State file, or `-` for stdin.
        state: String,
        #[command(flatten)]
        opts: StateOpts,
        /// Relative cutoff for the Lie-algebra nullspace cross-check.
        #[arg(long, default_value_t = tolerance::NULLSPACE_TOL)]
        nullspace_tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Draw random invariant pairs and write them to a pair file.
    Sample {
        state: String,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        opts: StateOpts,
    },
    /// Check whether a pair of unitaries leaves a state invariant.
    Verify {
        state: String,
        /// Unitary file for subsystem 1.
        #[arg(required_unless_present = "pairs", requires = "u2")]
        u1: Option<String>,
        /// Unitary file for subsystem 2.
        u2: Option<String>,
        /// Verify every pair of a file written by `sample` instead.
        #[arg(long, conflicts_with_all = ["u1", "u2"])]
        pairs: Option<String>,
        #[arg(long, env = "ULI_DEFAULT_TOL", default_value_t = tolerance::INVARIANCE_TOL)]
        tol: f64,
        /// Re-unitarize slightly non-unitary inputs instead of rejecting them.
        #[arg(long)]
        lenient: bool,
        #[arg(long)]
        normalize: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Find U2 compensating a given U1, and write it.
    Undo {
        state: String,
        u1: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, env = "ULI_DEFAULT_TOL", default_value_t = tolerance::INVARIANCE_TOL)]
        tol: f64,
        #[arg(long)]
        lenient: bool,
        #[command(flatten)]
        opts: StateOpts,
    },
    /// Generate a test state file.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        #[arg(long)]
        d1: usize,
        #[arg(long)]
        d2: usize,
        /// Comma-separated Schmidt coefficients; entries may be `sqrt(x)`.
        #[arg(long, allow_hyphen_values = true)]
        spectrum: Option<String>,
        /// Interpret `--spectrum` entries as squared coefficients.
        #[arg(long)]
        squared: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Oracle(String),
    Usage(String),
}

impl From<FileError> for Failure {
    fn from(e: FileError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(failure) => {
            let (code, msg) = match failure {
                Failure::Input(m) => (EXIT_INPUT, m),
                Failure::Oracle(m) => (EXIT_ORACLE, m),
                Failure::Usage(m) => (EXIT_USAGE, m),
            };
            let _ = writeln!(stderr, "error: {msg}");
            code
        }
    }
}

fn execute(
    command: Command,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Failure> {
    match command {
        Command::Analyze {
            state,
            opts,
            nullspace_tol,
            format,
        } => {
            let tols = Tolerances {
                rank: opts.rank_tol,
                degeneracy: opts.degeneracy_tol,
                nullspace: nullspace_tol,
                ..Tolerances::default()
            };
            let (state, norm) = load_state(&state, opts.normalize)?;
            let report = report::analyze(&state, norm, &tols)?;
            let text = match format {
                Format::Text => report.to_text(),
                Format::Json => files::to_json(&report),
            };
            if !report.oracle.agree {
                let _ = write!(stderr, "{text}");
                return Err(Failure::Oracle(format!(
                    "group dimension {} disagrees with Lie-algebra dimension {}; \
                     the spectrum is probably near a degeneracy boundary, try other tolerances",
                    report.oracle.group_dimension, report.oracle.lie_algebra_dimension
                )));
            }
            emit(stdout, &text)?;
            Ok(EXIT_OK)
        }

        Command::Sample {
            state,
            count,
            seed,
            out,
            opts,
        } => {
            if count == 0 {
                return Err(Failure::Usage("--count must be at least 1".into()));
            }
            let (state, _) = load_state(&state, opts.normalize)?;
            let structure = invariance_structure(&state, opts.rank_tol, opts.degeneracy_tol)?;
            let pairs = sample_invariant_pairs(&structure, count, |i| pair_rng(seed, i));
            for (i, pair) in pairs.iter().enumerate() {
                let check = is_invariant(pair, &state, tolerance::INVARIANCE_TOL)?;
                if !check.invariant {
                    return Err(Failure::Oracle(format!(
                        "sampled pair {i} fails verification (residual {:.3e})",
                        check.residual
                    )));
                }
            }
            let file = PairFile {
                d1: state.d1(),
                d2: state.d2(),
                seed,
                pairs: pairs.iter().map(PairEntry::from_pair).collect(),
            };
            files::write_text(&out, &files::to_json(&file))?;
            emit(
                stdout,
                &format!("wrote {count} invariant pairs to {}\n", out.display()),
            )?;
            Ok(EXIT_OK)
        }

        Command::Verify {
            state,
            u1,
            u2,
            pairs,
            tol,
            lenient,
            normalize,
            format,
        } => {
            let (state, _) = load_state(&state, normalize)?;
            let pair_list: Vec<UnitaryPair> = match (pairs, u1, u2) {
                (Some(path), _, _) => {
                    let file: PairFile = files::read_json(&path)?;
                    file.pairs
                        .iter()
                        .map(|p| load_pair(&p.u1, &p.u2, lenient, stderr))
                        .collect::<Result<_, _>>()?
                }
                (None, Some(a), Some(b)) => {
                    let a: UnitaryFile = files::read_json(&a)?;
                    let b: UnitaryFile = files::read_json(&b)?;
                    vec![load_pair(&a, &b, lenient, stderr)?]
                }
                _ => return Err(Failure::Usage("give U1 and U2 files, or --pairs".into())),
            };
            let mut results = Vec::with_capacity(pair_list.len());
            for pair in &pair_list {
                if pair.dims() != state.dims() {
                    return Err(Failure::Input(format!(
                        "unitaries act on {}x{}, state is {}x{}",
                        pair.dims().0,
                        pair.dims().1,
                        state.d1(),
                        state.d2()
                    )));
                }
                let inv = is_invariant(pair, &state, tol)?;
                let comm = commutant_check(pair, &state, tol)?;
                results.push(VerifyResult {
                    invariant: inv.invariant,
                    residual: inv.residual,
                    commutant_residual1: comm.residual1,
                    commutant_residual2: comm.residual2,
                });
            }
            let all = results.iter().all(|r| r.invariant);
            let text = match format {
                Format::Json => files::to_json(&VerifyReport {
                    tol,
                    invariant: all,
                    results: results.clone(),
                }),
                Format::Text => {
                    let mut s = String::new();
                    for (i, r) in results.iter().enumerate() {
                        let prefix = if results.len() > 1 {
                            format!("pair {i}: ")
                        } else {
                            String::new()
                        };
                        s.push_str(&format!(
                            "{prefix}residual {:.3e}, commutant residuals {:.3e} {:.3e}, {}\n",
                            r.residual,
                            r.commutant_residual1,
                            r.commutant_residual2,
                            if r.invariant {
                                "invariant"
                            } else {
                                "NOT invariant"
                            }
                        ));
                    }
                    s
                }
            };
            emit(stdout, &text)?;
            Ok(if all { EXIT_OK } else { EXIT_NEGATIVE })
        }

        Command::Undo {
            state,
            u1,
            out,
            tol,
            lenient,
            opts,
        } => {
            let (state, _) = load_state(&state, opts.normalize)?;
            let u1_file: UnitaryFile = files::read_json(&u1)?;
            let u1 = load_unitary(&u1_file, lenient, "U1", stderr)?;
            if u1.rows() != state.d1() {
                return Err(Failure::Input(format!(
                    "U1 is {}x{}, subsystem 1 has dimension {}",
                    u1.rows(),
                    u1.cols(),
                    state.d1()
                )));
            }
            let structure = invariance_structure(&state, opts.rank_tol, opts.degeneracy_tol)?;
            match undo_operator(&u1, &structure, tolerance::UNITARY_TOL, tol)? {
                UndoOutcome::Solved(pair) => {
                    let check = is_invariant(&pair, &state, tol)?;
                    if !check.invariant {
                        return Err(Failure::Oracle(format!(
                            "constructed U2 fails verification (residual {:.3e})",
                            check.residual
                        )));
                    }
                    files::write_text(&out, &files::to_json(&UnitaryFile::from_matrix(&pair.u2)))?;
                    emit(
                        stdout,
                        &format!(
                            "wrote U2 to {} (residual {:.3e})\n",
                            out.display(),
                            check.residual
                        ),
                    )?;
                    Ok(EXIT_OK)
                }
                UndoOutcome::NoSolution { off_block_mass } => {
                    emit(
                        stdout,
                        &format!(
                            "no compensating U2: U1 mixes Schmidt subspaces with different coefficients \
                             (off-block mass {off_block_mass:.3e} > {tol:.1e})\n"
                        ),
                    )?;
                    Ok(EXIT_NEGATIVE)
                }
            }
        }

        Command::Gen {
            kind,
            d1,
            d2,
            spectrum,
            squared,
            seed,
            out,
        } => {
            if d1 == 0 || d2 == 0 {
                return Err(Failure::Usage("--d1 and --d2 must be positive".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let state = match kind {
                GenKind::Bell => {
                    let d = d1.min(d2);
                    let sigma = vec![1.0 / (d as f64).sqrt(); d];
                    BipartiteState::new(
                        ComplexMatrix::rectangular_diagonal(d1, d2, &sigma)?,
                        tolerance::NORM_TOL,
                    )?
                }
                GenKind::Product => BipartiteState::new(
                    ComplexMatrix::rectangular_diagonal(d1, d2, &[1.0])?,
                    tolerance::NORM_TOL,
                )?,
                GenKind::Spectrum => {
                    let text = spectrum
                        .ok_or_else(|| Failure::Usage("kind `spectrum` needs --spectrum".into()))?;
                    let mut sigma = parse_spectrum(&text)?;
                    if squared {
                        if let Some(bad) = sigma.iter().find(|p| **p < 0.0) {
                            return Err(Failure::Input(format!(
                                "negative squared coefficient {bad}"
                            )));
                        }
                        sigma.iter_mut().for_each(|p| *p = p.sqrt());
                    }
                    random_state_with_spectrum(&sigma, d1, d2, tolerance::NORM_TOL, &mut rng)?
                }
                GenKind::HaarRandom => {
                    let v = random_unit_vector(d1 * d2, &mut rng);
                    crate::bipartite::vec_to_matrix(&v, d1, d2, tolerance::NORM_TOL)?
                }
            };
            let text = files::to_json(&StateFile::from_state(&state));
            match out {
                Some(path) => files::write_text(&path, &text)?,
                None => emit(stdout, &text)?,
            }
            Ok(EXIT_OK)
        }
    }
}

#[derive(Clone, Debug, Serialize)]
struct VerifyResult {
    invariant: bool,
    residual: f64,
    commutant_residual1: f64,
    commutant_residual2: f64,
}

#[derive(Debug, Serialize)]
struct VerifyReport {
    tol: f64,
    invariant: bool,
    results: Vec<VerifyResult>,
}

/// Generator for the `index`-th sampled pair. Per-pair streams keep the output
/// independent of how sampling is scheduled.
pub fn pair_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn emit(stdout: &mut dyn Write, text: &str) -> Result<(), Failure> {
    stdout
        .write_all(text.as_bytes())
        .map_err(|e| Failure::Input(format!("writing output: {e}")))
}

fn load_state(path: &str, normalize: bool) -> Result<(BipartiteState, Option<f64>), Failure> {
    let file: StateFile = files::read_json(path)?;
    Ok(file.to_state(normalize, tolerance::NORM_TOL)?)
}

fn load_unitary(
    file: &UnitaryFile,
    lenient: bool,
    what: &str,
    stderr: &mut dyn Write,
) -> Result<ComplexMatrix, Failure> {
    let loaded = file
        .to_unitary(tolerance::UNITARY_TOL, lenient)
        .map_err(|e| Failure::Input(format!("{what}: {e}")))?;
    if let Some(c) = loaded.correction {
        let _ = writeln!(
            stderr,
            "note: {what} re-unitarized, max entry change {c:.3e}"
        );
    }
    Ok(loaded.matrix)
}

fn load_pair(
    a: &UnitaryFile,
    b: &UnitaryFile,
    lenient: bool,
    stderr: &mut dyn Write,
) -> Result<UnitaryPair, Failure> {
    let u1 = load_unitary(a, lenient, "U1", stderr)?;
    let u2 = load_unitary(b, lenient, "U2", stderr)?;
    Ok(UnitaryPair { u1, u2 })
}

/// Comma-separated numbers, each either a plain float or `sqrt(x)`.
fn parse_spectrum(text: &str) -> Result<Vec<f64>, Failure> {
    text.split(',')
        .map(|tok| {
            let tok = tok.trim();
            let value = match tok.strip_prefix("sqrt(").and_then(|t| t.strip_suffix(')')) {
                Some(inner) => inner.trim().parse::<f64>().map(f64::sqrt),
                None => tok.parse::<f64>(),
            };
            value.map_err(|_| Failure::Input(format!("cannot parse spectrum entry `{tok}`")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectrum_parser() {
        let s = parse_spectrum("sqrt(0.5), 0.5, 0").unwrap();
        assert_eq!(s, vec![0.5f64.sqrt(), 0.5, 0.0]);
        assert!(parse_spectrum("0.5,abc").is_err());
        assert!(parse_spectrum("sqrt(-1)").unwrap()[0].is_nan());
    }

    #[test]
    fn pair_streams_differ() {
        use rand::Rng;
        let a: u64 = pair_rng(1, 0).random();
        let b: u64 = pair_rng(1, 1).random();
        let c: u64 = pair_rng(1, 0).random();
        assert_ne!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn usage_errors_exit_64() {
        let mut out = Vec::new();
        let mut err = Vec::new();
        assert_eq!(run(["uli", "frobnicate"], &mut out, &mut err), EXIT_USAGE);
        assert_eq!(run(["uli", "gen", "bell"], &mut out, &mut err), EXIT_USAGE);
        assert!(out.is_empty());
        assert_eq!(run(["uli", "--help"], &mut out, &mut err), EXIT_OK);
    }
}
