//! Seed files and the `qclaw` command line.
//!
//! Exit codes: 0 pass, 1 a check failed, 2 bad input.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::grading::{grading_lattice, GradingVector};
use crate::graph::enumerate_exchange_graph;
use crate::intlin::IntMatrix;
use crate::seed::{ClassicalSeed, CompatiblePair, MutationPath, QuantumSeed};
use crate::verify::{self, VerificationReport};

/// On-disk seed description. Matrices are row lists.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedFile {
    pub m: usize,
    pub n_ex: usize,
    pub lambda: Vec<Vec<i64>>,
    pub b_tilde: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
}

fn matrix(name: &str, rows: &[Vec<i64>], nrows: usize, ncols: usize) -> Result<IntMatrix, String> {
    if rows.len() != nrows {
        return Err(format!("{name} has {} rows, expected {nrows}", rows.len()));
    }
    for (i, r) in rows.iter().enumerate() {
        if r.len() != ncols {
            return Err(format!("{name} row {} has {} entries, expected {ncols}", i + 1, r.len()));
        }
    }
    Ok(IntMatrix::from_rows(rows.to_vec()).expect("shape checked"))
}

impl SeedFile {
    pub fn parse(text: &str) -> Result<SeedFile, String> {
        serde_json::from_str(text).map_err(|e| format!("malformed seed file: {e}"))
    }

    pub fn load(path: &Path) -> Result<SeedFile, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Self::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn from_pair(pair: &CompatiblePair) -> SeedFile {
        SeedFile {
            m: pair.m(),
            n_ex: pair.n_ex(),
            lambda: pair.lambda().to_rows(),
            b_tilde: pair.b_tilde().to_rows(),
            names: None,
            grading: None,
            description: None,
        }
    }

    pub fn pair(&self) -> Result<CompatiblePair, String> {
        let lambda = matrix("lambda", &self.lambda, self.m, self.m)?;
        let b = matrix("b_tilde", &self.b_tilde, self.m, self.n_ex)?;
        if let Some(names) = &self.names {
            if names.len() != self.m {
                return Err(format!("names has {} entries, expected {}", names.len(), self.m));
            }
        }
        if let Some(g) = &self.grading {
            if g.len() != self.m {
                return Err(format!("grading has {} entries, expected {}", g.len(), self.m));
            }
        }
        CompatiblePair::new(lambda, b).map_err(|e| e.to_string())
    }

    pub fn names(&self) -> Vec<String> {
        self.names.clone().unwrap_or_else(|| (1..=self.m).map(|i| format!("x{i}")).collect())
    }
}

#[derive(Debug, Parser)]
#[command(name = "qclaw", about = "Quantum tori, seed mutation and exact verification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Laurent,
    Propkey,
    Powerids,
    Specialization,
    Graded,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the seed file and print the compatibility datum d.
    Validate { file: PathBuf },
    /// Mutate along a path and print the resulting variables.
    Mutate {
        file: PathBuf,
        #[arg(long, default_value = "")]
        seq: String,
        #[arg(long)]
        classical: bool,
    },
    /// Print a basis of the grading lattice.
    Grading { file: PathBuf },
    /// Enumerate the exchange graph.
    Graph {
        file: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_depth: usize,
    },
    /// Compare quantum variables at q = 1 with the classical ones along a path.
    Specialize {
        file: PathBuf,
        #[arg(long, default_value = "")]
        seq: String,
    },
    /// Run a verification suite and print a JSON report.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum)]
        check: Check,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
        /// Largest power checked by `powerids`.
        #[arg(long, default_value_t = 4)]
        l_max: u32,
        /// Degree range for `graded`, e.g. `-4..4`.
        #[arg(long, default_value = "-4..4", allow_hyphen_values = true)]
        degrees: String,
        /// Factor cap for `graded` products.
        #[arg(long, default_value_t = 4)]
        max_factors: usize,
        /// Record wall-clock milliseconds (otherwise 0, so output is reproducible).
        #[arg(long)]
        timing: bool,
    },
}

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn input_error(msg: impl std::fmt::Display) -> Outcome {
        Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

fn parse_path(s: &str, n_ex: usize) -> Result<MutationPath, String> {
    let p: MutationPath = s.parse().map_err(|e: crate::seed::PathParseError| e.to_string())?;
    if let Some(&k) = p.0.iter().find(|&&k| k >= n_ex) {
        return Err(format!("mutation index {} out of range (exchangeable indices 1..={n_ex})", k + 1));
    }
    Ok(p)
}

fn parse_range(s: &str) -> Result<std::ops::RangeInclusive<i64>, String> {
    let bad = || format!("bad degree range `{s}`, expected `lo..hi`");
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    Ok(lo..=hi)
}

/// Runs one command line (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(cli.command) {
        Ok(o) => o,
        Err(msg) => Outcome::input_error(msg),
    }
}

fn load(file: &Path) -> Result<(SeedFile, CompatiblePair), String> {
    let sf = SeedFile::load(file)?;
    let pair = sf.pair().map_err(|e| format!("{}: {e}", file.display()))?;
    Ok((sf, pair))
}

fn execute(cmd: Command) -> Result<Outcome, String> {
    let mut out = String::new();
    let ok = |stdout: String| Ok(Outcome { code: 0, stdout, stderr: String::new() });
    match cmd {
        Command::Validate { file } => {
            let (_, pair) = load(&file)?;
            let d: Vec<String> = pair.d().iter().map(|x| x.to_string()).collect();
            writeln!(out, "ok: m={}, n_ex={}", pair.m(), pair.n_ex()).unwrap();
            writeln!(out, "d=({})", d.join(",")).unwrap();
            ok(out)
        }
        Command::Mutate { file, seq, classical } => {
            let (sf, pair) = load(&file)?;
            let path = parse_path(&seq, pair.n_ex())?;
            let names = sf.names();
            writeln!(out, "path: [{path}]").unwrap();
            if classical {
                let c0 = ClassicalSeed::initial(pair.b_tilde().clone());
                let c = c0.mutate_path(&path).map_err(|e| e.to_string())?;
                writeln!(out, "b_tilde = {}", c.b_tilde()).unwrap();
                for (i, (x, x0)) in c.vars().iter().zip(c0.vars()).enumerate() {
                    let mark = if x == x0 { "" } else { "'" };
                    writeln!(out, "{}{mark} = {}", names[i], x.display_with(&names)).unwrap();
                }
            } else {
                let q0 = QuantumSeed::initial(pair);
                let q = q0.mutate_path(&path).map_err(|e| e.to_string())?;
                writeln!(out, "b_tilde = {}", q.pair().b_tilde()).unwrap();
                writeln!(out, "lambda = {}", q.pair().lambda()).unwrap();
                for (i, (x, x0)) in q.vars().iter().zip(q0.vars()).enumerate() {
                    let mark = if x == x0 { "" } else { "'" };
                    let shown = if sf.names.is_some() { x.display_with(&names).to_string() } else { x.to_string() };
                    writeln!(out, "{}{mark} = {shown}", names[i]).unwrap();
                }
            }
            ok(out)
        }
        Command::Grading { file } => {
            let (sf, pair) = load(&file)?;
            let lattice = grading_lattice(pair.b_tilde());
            writeln!(out, "rank: {}", lattice.rank()).unwrap();
            for v in &lattice.basis {
                writeln!(out, "{v}").unwrap();
            }
            if let Some(g) = sf.grading {
                let g = GradingVector(g);
                let verdict = if lattice.contains(&g) { "in lattice" } else { "NOT in lattice" };
                writeln!(out, "file grading {g}: {verdict}").unwrap();
                if !lattice.contains(&g) {
                    return Ok(Outcome { code: 1, stdout: out, stderr: String::new() });
                }
            }
            ok(out)
        }
        Command::Graph { file, max_depth } => {
            let (_, pair) = load(&file)?;
            let g = enumerate_exchange_graph(QuantumSeed::initial(pair), max_depth).map_err(|e| e.to_string())?;
            writeln!(out, "clusters: {}", g.num_seeds()).unwrap();
            writeln!(out, "variables: {}", g.num_variables()).unwrap();
            writeln!(out, "edges: {}", g.edges()).unwrap();
            writeln!(out, "closed: {}", g.closed).unwrap();
            writeln!(out, "finite type: {}", if g.closed { "yes" } else { "undecided at this depth" }).unwrap();
            ok(out)
        }
        Command::Specialize { file, seq } => {
            let (sf, pair) = load(&file)?;
            let path = parse_path(&seq, pair.n_ex())?;
            let names = sf.names();
            let q = QuantumSeed::initial(pair.clone()).mutate_path(&path).map_err(|e| e.to_string())?;
            let c = ClassicalSeed::initial(pair.b_tilde().clone()).mutate_path(&path).map_err(|e| e.to_string())?;
            let mut code = 0;
            for (i, (qv, cv)) in q.vars().iter().zip(c.vars()).enumerate() {
                let s = qv.specialize_q1();
                let verdict = if &s == cv { "matches classical" } else { "MISMATCH" };
                if &s != cv {
                    code = 1;
                }
                writeln!(out, "{} at q=1: {}  [{verdict}]", names[i], s.display_with(&names)).unwrap();
            }
            Ok(Outcome { code, stdout: out, stderr: String::new() })
        }
        Command::Verify { file, check, depth, samples, rng_seed, l_max, degrees, max_factors, timing } => {
            let (sf, pair) = load(&file)?;
            let report = run_check(&sf, &pair, check, depth, samples, rng_seed, l_max, &degrees, max_factors)?;
            let report = if timing { report } else { report.without_timing() };
            let code = if report.passed() { 0 } else { 1 };
            Ok(Outcome { code, stdout: report.to_json() + "\n", stderr: String::new() })
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn run_check(
    sf: &SeedFile,
    pair: &CompatiblePair,
    check: Check,
    depth: usize,
    samples: usize,
    rng_seed: u64,
    l_max: u32,
    degrees: &str,
    max_factors: usize,
) -> Result<VerificationReport, String> {
    let e = |e: verify::VerifyError| e.to_string();
    match check {
        Check::Laurent => verify::verify_laurent(pair, depth).map_err(e),
        Check::Specialization => verify::specialization_check(pair, depth).map_err(e),
        Check::Graded => {
            let d = sf.grading.clone().ok_or("the graded check needs a `grading` field in the seed file")?;
            verify::graded_dimension_report(pair, &GradingVector(d), parse_range(degrees)?, depth, max_factors)
                .map_err(e)
        }
        Check::Powerids | Check::Propkey => {
            // every seed of the depth-bounded exchange graph, every direction
            let graph = enumerate_exchange_graph(QuantumSeed::initial(pair.clone()), depth).map_err(|x| x.to_string())?;
            let mut parts = Vec::new();
            for s in &graph.seeds {
                for k in 0..pair.n_ex() {
                    let r = if check == Check::Powerids {
                        verify::verify_power_identities(s, k, l_max)
                    } else {
                        verify::verify_prop_key(s, k, samples, rng_seed)
                    }
                    .map_err(e)?;
                    parts.push((s.path().to_string(), r));
                }
            }
            let name = if check == Check::Powerids { "powerids" } else { "propkey" };
            Ok(VerificationReport::merge(name, parts))
        }
    }
}
