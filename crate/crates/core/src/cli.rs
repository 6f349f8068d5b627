//! The `leibniz-lab` command: argument parsing, dispatch and rendering.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::{load_algebras, StructureConstants};
use crate::classify::{
    compare_block_table, dim3_solvable_table, match_paper_table, nilpotent_table, products_text,
    solvable_dim1_table, table_to_json, table_to_markdown, verify_table, ClassificationEntry,
};
use crate::form::{canonical_decomposition, format_blocks, FormMatrix};
use crate::iso::{check_isomorphism, iso_invariants, random_basis_fuzz, IsoInvariants};
use crate::scalar::Scalar;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "leibniz-lab",
    version,
    about = "Exact computations with left Leibniz algebras over ℚ(i)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableFormat {
    Md,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structural invariants of every algebra in a JSON file.
    Analyze {
        file: PathBuf,
        /// Substitute a parameter value first, e.g. `--set c=2`.
        #[arg(long = "set", value_name = "NAME=VALUE")]
        set: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Canonical block decomposition of a form given as `0,1;c,0` text.
    CanonicalForm {
        file: PathBuf,
        #[arg(long = "set", value_name = "NAME=VALUE")]
        set: Vec<String>,
    },
    /// Regenerate a classification table.
    Classify {
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum, default_value = "md")]
        format: TableFormat,
        /// The non-nilpotent solvable lists: dimension 2 (one-dimensional
        /// square) or 3 (two-dimensional square).
        #[arg(long)]
        solvable: bool,
    },
    /// Match the regenerated table against the transcribed one.
    MatchPaper {
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Decide whether the algebras in two files are isomorphic.
    CheckIso {
        first: PathBuf,
        second: PathBuf,
        #[arg(long = "set", value_name = "NAME=VALUE")]
        set: Vec<String>,
        #[arg(long, env = "LEIBNIZ_LAB_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Random basis changes must preserve every invariant.
    Fuzz {
        file: PathBuf,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, env = "LEIBNIZ_LAB_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long = "set", value_name = "NAME=VALUE")]
        set: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// A failed invocation: what to print on standard error and the exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type Outcome = Result<i32, Failure>;

/// Runs the command line `args` (program name first) against the process's
/// standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Analyze { file, set, format } => analyze(&file, &set, format, out),
        Command::CanonicalForm { file, set } => canonical_form(&file, &set, out),
        Command::Classify {
            dim,
            format,
            solvable,
        } => classify(dim, format, solvable, out, err),
        Command::MatchPaper { dim, format } => match_paper(dim, format, out),
        Command::CheckIso {
            first,
            second,
            set,
            seed,
            format,
        } => check_iso(&first, &second, &set, seed, format, out),
        Command::Fuzz {
            file,
            trials,
            seed,
            set,
            format,
        } => fuzz(&file, trials, seed, &set, format, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "leibniz-lab: {}", f.message);
            f.code
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| usage(format!("writing output: {e}")))
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn bindings(set: &[String]) -> Result<BTreeMap<String, Scalar>, Failure> {
    set.iter()
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| usage(format!("--set expects NAME=VALUE, got `{kv}`")))?;
            let value = v
                .trim()
                .parse::<Scalar>()
                .map_err(|e| usage(format!("--set {kv}: {e}")))?;
            Ok((k.trim().to_string(), value))
        })
        .collect()
}

fn load(path: &Path, set: &[String]) -> Result<Vec<StructureConstants>, Failure> {
    let list = load_algebras(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let values = bindings(set)?;
    if values.is_empty() {
        return Ok(list);
    }
    list.iter()
        .map(|a| {
            a.substitute(&values)
                .map_err(|e| usage(format!("{}: {e}", path.display())))
        })
        .collect()
}

fn load_one(path: &Path, set: &[String]) -> Result<StructureConstants, Failure> {
    let mut list = load(path, set)?;
    if list.len() != 1 {
        return Err(usage(format!(
            "{}: expected one algebra, found {}",
            path.display(),
            list.len()
        )));
    }
    Ok(list.pop().unwrap())
}

/// `x1 + 2x3`, in the algebra's basis names.
fn vector_text(a: &StructureConstants, v: &[Scalar]) -> String {
    let mut out = String::new();
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let name = a.basis_name(k);
        let t = c.to_text();
        let term = match t.as_str() {
            "1" => name,
            "-1" => format!("-{name}"),
            _ if t.contains(['+', '/']) || t[1..].contains('-') => format!("({t}){name}"),
            _ => format!("{t}{name}"),
        };
        match (out.is_empty(), term.strip_prefix('-')) {
            (true, _) => out = term,
            (false, Some(neg)) => out = format!("{out} - {neg}"),
            (false, None) => out = format!("{out} + {term}"),
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

#[derive(Serialize)]
struct Analysis {
    label: Option<String>,
    dim: usize,
    products: String,
    leibniz: bool,
    lie: bool,
    nilpotent: bool,
    solvable: bool,
    leib_basis: Vec<String>,
    invariants: IsoInvariants,
}

fn analyze(file: &Path, set: &[String], format: Format, out: &mut dyn Write) -> Outcome {
    let list = load(file, set)?;
    let analyses: Vec<Analysis> = list
        .iter()
        .map(|a| Analysis {
            label: a.label().map(str::to_string),
            dim: a.dim(),
            products: products_text(a),
            leibniz: a.verify_leibniz(),
            lie: a.is_lie(),
            nilpotent: a.is_nilpotent(),
            solvable: a.is_solvable(),
            leib_basis: a
                .leib_ideal()
                .basis_vectors()
                .iter()
                .map(|v| vector_text(a, v))
                .collect(),
            invariants: iso_invariants(a),
        })
        .collect();
    match format {
        Format::Json => emit(out, &json(&analyses))?,
        Format::Text => {
            let yes = |b: bool| if b { "yes" } else { "no" };
            let mut text = String::new();
            for (k, x) in analyses.iter().enumerate() {
                if k > 0 {
                    text.push('\n');
                }
                let inv = &x.invariants;
                text.push_str(&format!(
                    "algebra: {}\ndimension: {}\nproducts: {}\nLeibniz identity: {}\n\
                     Lie: {}\nnilpotent: {}\nsolvable: {}\n",
                    x.label.as_deref().unwrap_or("(unlabeled)"),
                    x.dim,
                    if x.products.is_empty() { "none" } else { &x.products },
                    if x.leibniz { "holds" } else { "FAILS" },
                    yes(x.lie),
                    yes(x.nilpotent),
                    yes(x.solvable),
                ));
                text.push_str(&format!(
                    "Leib(A): dim {} [{}]\n",
                    x.leib_basis.len(),
                    x.leib_basis.join(", ")
                ));
                text.push_str(&format!(
                    "dim A²: {}, dim A³: {}, dim A^(2): {}, dim A^(3): {}\n\
                     center: {}, left center: {}, right center: {}\n",
                    inv.dim_a2,
                    inv.dim_a3,
                    inv.dim_derived2,
                    inv.dim_derived3,
                    inv.dim_center,
                    inv.dim_left_center,
                    inv.dim_right_center,
                ));
                if let Some(p) = &inv.pencil {
                    text.push_str(&format!("pencil: {p}\n"));
                }
                if let Some(b) = &inv.blocks {
                    text.push_str(&format!("blocks: {b}\n"));
                }
            }
            emit(out, &text)?;
        }
    }
    Ok(if analyses.iter().all(|x| x.leibniz) {
        EXIT_OK
    } else {
        EXIT_FAILED
    })
}

fn canonical_form(file: &Path, set: &[String], out: &mut dyn Write) -> Outcome {
    let text = std::fs::read_to_string(file)
        .map_err(|e| usage(format!("{}: {e}", file.display())))?;
    let m: FormMatrix = text.parse().map_err(|e: crate::form::ParseMatrixError| {
        let (line, column) = e.locate(&text);
        usage(format!(
            "{}: line {line}, column {column}: {}",
            file.display(),
            e.message
        ))
    })?;
    let values = bindings(set)?;
    let m = if values.is_empty() {
        m
    } else {
        let sub = m
            .matrix()
            .substitute(&values, &[])
            .map_err(|e| usage(e.to_string()))?;
        FormMatrix::new(sub)
    };
    let blocks = canonical_decomposition(&m).map_err(|e| match e {
        crate::form::FormError::ParameterNotSupported => {
            usage("the matrix has free parameters; give values with --set NAME=VALUE")
        }
        other => Failure {
            code: EXIT_FAILED,
            message: other.to_string(),
        },
    })?;
    emit(out, &format!("{}\n", format_blocks(&blocks)))?;
    Ok(EXIT_OK)
}

fn classify(
    dim: usize,
    format: TableFormat,
    solvable: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let (title, entries): (String, Vec<ClassificationEntry>) = match (solvable, dim) {
        (false, 4..=8) => (
            format!("Non-split non-Lie nilpotent Leibniz algebras of dimension {dim} with dim A² = 1"),
            nilpotent_table(dim),
        ),
        (false, _) => return Err(usage("--dim must be in 4..=8 (or use --solvable)")),
        (true, 2) => (
            "Non-split non-Lie non-nilpotent solvable Leibniz algebras with dim A² = 1".into(),
            solvable_dim1_table(),
        ),
        (true, 3) => (
            "Three-dimensional non-Lie solvable Leibniz algebras with dim A² = 2".into(),
            dim3_solvable_table(),
        ),
        (true, _) => {
            return Err(usage(
                "--solvable lists exist for --dim 2 (dim A² = 1) and --dim 3 (dim A² = 2)",
            ))
        }
    };
    let failures = verify_table(&entries);
    match format {
        TableFormat::Json => emit(out, &table_to_json(&entries))?,
        TableFormat::Md => emit(out, &table_to_markdown(&title, &entries))?,
    }
    if failures.is_empty() {
        return Ok(EXIT_OK);
    }
    for (label, what) in &failures {
        let _ = writeln!(err, "leibniz-lab: {label} fails: {}", what.join(", "));
    }
    Ok(EXIT_FAILED)
}

fn match_paper(dim: usize, format: Format, out: &mut dyn Write) -> Outcome {
    let blocks =
        compare_block_table(dim).ok_or_else(|| usage("--dim must be in 4..=8 for match-paper"))?;
    let items = match_paper_table(dim, &nilpotent_table(dim));
    let ok = blocks.is_identical() && items.as_ref().is_none_or(|r| r.is_perfect());
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Report<'a> {
                dim: usize,
                passed: bool,
                items: Option<&'a crate::classify::MatchReport>,
                block_table: &'a crate::classify::BlockTableComparison,
            }
            emit(
                out,
                &json(&Report {
                    dim,
                    passed: ok,
                    items: items.as_ref(),
                    block_table: &blocks,
                }),
            )?;
        }
        Format::Text => {
            let mut text = String::new();
            if let Some(r) = &items {
                text.push_str(&format!(
                    "dim {dim}: {} generated, {} listed, {}\n",
                    r.generated,
                    r.paper,
                    if r.is_perfect() {
                        "perfect matching"
                    } else {
                        "NO perfect matching"
                    }
                ));
                for p in &r.pairs {
                    let mut line = format!("  {} <-> {}", p.generated, p.paper);
                    let renamed: Vec<String> = p
                        .relabeling
                        .params
                        .iter()
                        .filter(|(a, b)| a != b)
                        .map(|(a, b)| format!("{a}->{b}"))
                        .collect();
                    if !renamed.is_empty() {
                        line.push_str(&format!(" [{}]", renamed.join(", ")));
                    }
                    text.push_str(&line);
                    text.push('\n');
                }
                for g in &r.unmatched_generated {
                    text.push_str(&format!("  unmatched generated: {g}\n"));
                }
                for p in &r.unmatched_paper {
                    text.push_str(&format!("  unmatched listed: {p}\n"));
                }
                for n in &r.notes {
                    text.push_str(&format!("note: {n}\n"));
                }
            } else {
                text.push_str(&format!(
                    "dim {dim}: no item list transcribed; comparing block multisets only\n"
                ));
            }
            text.push_str(&format!(
                "block table: {} listed, {} generated, {}\n",
                blocks.listed,
                blocks.generated,
                if blocks.is_identical() {
                    "identical"
                } else {
                    "DIFFERENT"
                }
            ));
            for m in &blocks.missing {
                text.push_str(&format!("  listed only: {m}\n"));
            }
            for m in &blocks.extra {
                text.push_str(&format!("  generated only: {m}\n"));
            }
            emit(out, &text)?;
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_FAILED })
}

fn check_iso(
    first: &Path,
    second: &Path,
    set: &[String],
    seed: u64,
    format: Format,
    out: &mut dyn Write,
) -> Outcome {
    let a = load_one(first, set)?;
    let b = load_one(second, set)?;
    let report = check_isomorphism(&a, &b, seed).map_err(|e| usage(e.to_string()))?;
    match format {
        Format::Json => emit(out, &json(&report))?,
        Format::Text => {
            let verdict = serde_json::to_value(report.verdict).expect("verdict serializes");
            let mut text = format!(
                "verdict: {} (by {})\n",
                verdict.as_str().unwrap_or_default(),
                report.method
            );
            match &report.witness {
                Some(p) => text.push_str(&format!("witness: {}\n", FormMatrix::new(p.clone()))),
                None => text.push_str("witness: none\n"),
            }
            emit(out, &text)?;
        }
    }
    Ok(EXIT_OK)
}

fn fuzz(
    file: &Path,
    trials: usize,
    seed: u64,
    set: &[String],
    format: Format,
    out: &mut dyn Write,
) -> Outcome {
    let a = load_one(file, set)?;
    let report = random_basis_fuzz(&a, trials, seed).map_err(|e| usage(e.to_string()))?;
    match format {
        Format::Json => emit(out, &json(&report))?,
        Format::Text => {
            let mut text = format!(
                "seed {}, {} trials: {}\n",
                report.seed,
                report.trials,
                if report.passed() { "passed" } else { "FAILED" }
            );
            if let Some(b) = &report.invariants.blocks {
                text.push_str(&format!("blocks: {b}\n"));
            }
            if report.isomorphism_checked {
                text.push_str(&format!(
                    "isomorphism checked on every trial; witnesses found: {}/{}\n",
                    report.witnesses_found, report.trials
                ));
            }
            for f in &report.failures {
                text.push_str(&format!(
                    "trial {}: {} (basis change {})\n",
                    f.trial,
                    f.reason,
                    FormMatrix::new(f.basis_change.clone())
                ));
            }
            emit(out, &text)?;
        }
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAILED })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("leibniz-lab").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_capture(&[]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["classify"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["classify", "--dim", "9"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["classify", "--dim", "5", "--solvable"]).0, EXIT_USAGE);
        let (code, _, err) = run_capture(&["analyze", "/nonexistent/x.json"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("/nonexistent/x.json"));
    }

    #[test]
    fn help_is_success() {
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("canonical-form"));
    }

    #[test]
    fn classify_markdown() {
        let (code, out, _) = run_capture(&["classify", "--dim", "4"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.lines().filter(|l| l.starts_with(char::is_numeric)).count(), 6);
    }

    #[test]
    fn bindings_parse() {
        let b = bindings(&["c=1/2".into(), " d = i ".into()]).unwrap();
        assert_eq!(b["c"], Scalar::from_ratio(1, 2));
        assert_eq!(b["d"], Scalar::i());
        assert!(bindings(&["c".into()]).is_err());
    }

    #[test]
    fn vectors_render() {
        let a = StructureConstants::abelian(3);
        let v = [Scalar::one(), Scalar::zero(), Scalar::from_int(-2)];
        assert_eq!(vector_text(&a, &v), "x1 - 2x3");
        assert_eq!(vector_text(&a, &vec![Scalar::zero(); 3]), "0");
    }
}
