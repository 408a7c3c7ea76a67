//! Command-line front end.
//!
//! Exit codes: 0 accept/success, 1 rejected input with a witness on standard
//! output, 2 usage or parse error (diagnostic on standard error).

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::classify::{classify_rational, classify_window, enumerate_schur_rings, ClassificationVerdict};
use crate::error::Error;
use crate::ringcore::{parse_element_file, GroupContext};
use crate::schurmod::{decompose_span, validate_partition, Partition, Universe};
use crate::schurring::{
    orbit_ring, restrict, symmetric_ring, tensor_ring, trivial_ring, verify_schur_ring, SchurRing, SubgroupDescriptor,
};
use crate::verdict::{Rule, Verdict};

#[derive(Debug, Parser)]
#[command(name = "schur", about = "Exact Schur-ring computations over cyclic groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the Schur-ring axioms for a partition file.
    Verify { file: PathBuf },
    /// Print the structure constants of a class pair.
    Structure {
        file: PathBuf,
        #[arg(long = "c")]
        c: usize,
        #[arg(long = "d")]
        d: usize,
    },
    /// Orbit ring of Z/n under a group of unit multipliers.
    Orbit {
        n: i64,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        mult: Vec<i64>,
    },
    /// Symmetric ring over Z/n or a window of Z.
    Symmetric {
        #[arg(long, conflicts_with = "window", required_unless_present = "window")]
        n: Option<i64>,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
        window: Option<Vec<i64>>,
    },
    /// Trivial ring {0}, Z/n minus 0.
    Trivial {
        #[arg(long)]
        n: i64,
    },
    /// Dot product of rings over coprime cyclic groups.
    Tensor { first: PathBuf, second: PathBuf },
    /// Primitive partition of the span of the elements in a file.
    Decompose { file: PathBuf },
    /// Classify a window partition over Z.
    ClassifyWindow { file: PathBuf },
    /// Classify a family of classes over Q.
    ClassifyRational { file: PathBuf },
    /// Enumerate all Schur rings over Z/n.
    Enumerate {
        n: i64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        force: bool,
    },
    /// Restrict a ring to the S-subgroup generated by d.
    Restrict {
        file: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        generator: String,
    },
    #[command(hide = true)]
    Wedge {
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        rest: Vec<String>,
    },
}

/// A failed invocation: exit code plus message for standard error.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn reject(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotSchurRing(_)
            | Error::InvalidPartition(_)
            | Error::NotHadamardClosed(_)
            | Error::NotSSubgroup(_)
            | Error::SplitFailure { .. } => Failure::reject(e.to_string()),
            _ => Failure::usage(e.to_string()),
        }
    }
}

type Outcome = Result<(String, u8), Failure>;

/// Runs one invocation; `args[0]` is the program name.
pub fn run<S: AsRef<str>>(args: &[S], out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let cli = match Cli::try_parse_from(args.iter().map(|a| a.as_ref())) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(cli.command) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(Failure { code, message }) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load_partition(path: &Path) -> Result<Partition, Failure> {
    let text = read(path)?;
    let p = Partition::parse(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    if p.ctx() == GroupContext::InfiniteCyclic && !matches!(p.universe(), Universe::Window { .. }) {
        return Err(Failure::usage(format!("{}: group Z input requires a `window` line", path.display())));
    }
    Ok(p)
}

fn load_ring(path: &Path) -> Result<SchurRing, Failure> {
    Ok(SchurRing::new(load_partition(path)?)?)
}

fn execute(command: Command) -> Outcome {
    match command {
        Command::Verify { file } => verify(&load_partition(&file)?),
        Command::Structure { file, c, d } => structure(&load_ring(&file)?, c, d),
        Command::Orbit { n, mult } => print_ring(orbit_ring(n, &mult)?),
        Command::Symmetric { n, window } => {
            let ring = match (n, window.as_deref()) {
                (Some(n), _) => symmetric_ring(GroupContext::finite(n)?, Universe::WholeGroup)?,
                (None, Some(&[lo, hi])) => symmetric_ring(GroupContext::InfiniteCyclic, Universe::Window { lo, hi })?,
                _ => return Err(Failure::usage("symmetric needs --n or --window")),
            };
            print_ring(ring)
        }
        Command::Trivial { n } => print_ring(trivial_ring(GroupContext::finite(n)?)?),
        Command::Tensor { first, second } => print_ring(tensor_ring(&load_ring(&first)?, &load_ring(&second)?)?),
        Command::Decompose { file } => {
            let text = read(&file)?;
            let (_, elements) =
                parse_element_file(&text).map_err(|e| Failure::usage(format!("{}: {e}", file.display())))?;
            Ok((decompose_span(&elements)?.to_string(), 0))
        }
        Command::ClassifyWindow { file } => report_classification(classify_window(&load_partition(&file)?)?),
        Command::ClassifyRational { file } => {
            let text = read(&file)?;
            let p = Partition::parse(&text).map_err(|e| Failure::usage(format!("{}: {e}", file.display())))?;
            if p.ctx().order().is_some() {
                return Err(Failure::usage(format!("{}: classify-rational needs group Q or Z", file.display())));
            }
            let classes: Vec<_> = p
                .classes()
                .iter()
                .filter(|c| c.iter().all(|e| !e.is_zero()))
                .map(|c| c.iter().map(|e| e.value()).collect())
                .collect();
            report_classification(classify_rational(&classes)?)
        }
        Command::Enumerate { n, out, force } => enumerate(n, out.as_deref(), force),
        Command::Restrict { file, generator } => {
            let ring = load_ring(&file)?;
            let d = ring.ctx().parse_exponent(&generator).map_err(|m| Failure::usage(format!("--generator: {m}")))?;
            // residues are normalized; the subgroup only depends on gcd(d, n)
            let h = SubgroupDescriptor::new(ring.ctx(), d.value())?;
            print_ring(restrict(&ring, &h)?)
        }
        Command::Wedge { .. } => Err(Failure::usage("unsupported construction: wedge product")),
    }
}

fn print_ring(ring: SchurRing) -> Outcome {
    Ok((ring.partition().to_string(), 0))
}

fn verify(p: &Partition) -> Outcome {
    let mut text = format!("group {}\n", p.ctx());
    if let Universe::Window { lo, hi } = p.universe() {
        writeln!(text, "window {lo} {hi}").unwrap();
    }
    for (i, class) in p.classes().iter().enumerate() {
        let items: Vec<String> = class.iter().map(|e| e.to_string()).collect();
        writeln!(text, "class {i}: {}", items.join(" ")).unwrap();
    }
    let verdict = match validate_partition(p) {
        Verdict::Accept => verify_schur_ring(p),
        rejected => rejected,
    };
    let failed = verdict.violation().map(|v| match v.rule {
        Rule::IdentityClass => 1,
        Rule::StarClosure => 2,
        Rule::ProductSplit => 3,
        _ => 0,
    });
    for (k, name) in ["partition", "identity", "star", "product"].into_iter().enumerate() {
        let status = match failed {
            Some(f) if f == k => format!("fail: {}", verdict.violation().unwrap().message),
            Some(f) if f < k => "skipped".to_string(),
            _ => "ok".to_string(),
        };
        writeln!(text, "{name}: {status}").unwrap();
    }
    let (line, code) = match verdict {
        Verdict::Accept => ("accept", 0),
        Verdict::AcceptFragment => ("accept (fragment)", 0),
        Verdict::Reject(_) => ("reject", 1),
    };
    writeln!(text, "verdict: {line}").unwrap();
    Ok((text, code))
}

fn structure(ring: &SchurRing, c: usize, d: usize) -> Outcome {
    let table = ring.structure_constants(c, d)?;
    let (sum, expected) = table.conservation(ring.partition());
    let status = if sum == expected { "ok" } else { "FAIL" };
    Ok((format!("{}conservation {sum} {expected} {status}\n", table.to_lines()), 0))
}

fn report_classification(v: ClassificationVerdict) -> Outcome {
    Ok(match v {
        ClassificationVerdict::GroupRingPattern => ("pattern: group-ring\n".to_string(), 0),
        ClassificationVerdict::SymmetricPattern => ("pattern: symmetric\n".to_string(), 0),
        ClassificationVerdict::Inconsistent(w) => (format!("inconsistent ({}): {}\n", w.rule.name(), w.message), 1),
    })
}

/// Tab-separated summary: one row per ring with its class sizes.
pub fn enumeration_summary(n: i64, rings: &[SchurRing]) -> String {
    let mut text = String::from("n\tcount\tring\tclass_sizes\n");
    for (i, r) in rings.iter().enumerate() {
        let sizes: Vec<String> = r.partition().classes().iter().map(|c| c.len().to_string()).collect();
        writeln!(text, "{n}\t{}\t{i}\t{}", rings.len(), sizes.join(",")).unwrap();
    }
    text
}

/// File name used for the `i`-th enumerated ring.
pub fn ring_file_name(i: usize) -> String {
    format!("ring-{i:03}.partition")
}

fn enumerate(n: i64, out: Option<&Path>, force: bool) -> Outcome {
    let rings = enumerate_schur_rings(n, force)?;
    let summary = enumeration_summary(n, &rings);
    if let Some(dir) = out {
        let io = |e: std::io::Error| Failure::usage(format!("{}: {e}", dir.display()));
        fs::create_dir_all(dir).map_err(io)?;
        for (i, r) in rings.iter().enumerate() {
            fs::write(dir.join(ring_file_name(i)), r.partition().to_string()).map_err(io)?;
        }
        fs::write(dir.join("summary.tsv"), &summary).map_err(io)?;
    }
    Ok((summary, 0))
}
