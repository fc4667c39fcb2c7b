//! `qpart`: tables, traces, diagrams and verification runs.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qpartition::acceptance::{run_suite, Config, Suite};
use qpartition::bratteli::{BratteliDiagram, Level};
use qpartition::combinatorics::{IntSequence, StandardTableau};
use qpartition::glnq::{GLMatrix, Generator, ModuleBasis, PrimeField, DEFAULT_MAX_DIM, DEFAULT_MAX_GROUP_ORDER};
use qpartition::qpoly::d_poly;
use qpartition::qset::{count_qsp_symbolic, enumerate_qsp_with_limit, QSP_ENUMERATION_LIMIT};
use qpartition::schensted::{delete_insert, delete_insert_trace};
use qpartition::Error;

#[derive(Parser)]
#[command(name = "qpart", version, about = "Combinatorics of q-partition algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DiagramFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    All,
    Identities,
    Basis,
    Commutant,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficients of d_{n,r}(q), or its value at one q.
    Dpoly {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        /// Evaluate at this integer instead of printing coefficients.
        #[arg(long, allow_negative_numbers = true)]
        at: Option<i64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Step-by-step delete-insert trace of a sequence.
    Di {
        #[arg(long)]
        n: usize,
        /// Comma-separated letters in 1..=n.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        seq: Vec<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// The Bratteli diagram down to a level.
    Bratteli {
        #[arg(long)]
        n: usize,
        /// Deepest level, such as 3 or 2.5.
        #[arg(long)]
        levels: Level,
        #[arg(long, value_enum, default_value = "json")]
        format: DiagramFormat,
    },
    /// Enumerate or count n-restricted q-set partitions.
    Qsp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        count_only: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Bound on the search space of the enumeration.
        #[arg(long, default_value_t = QSP_ENUMERATION_LIMIT)]
        max_enumeration: u128,
    },
    /// Permutation matrix of a group element on the canonical basis.
    Rep {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        q: u32,
        /// s<i>, x:i,j,t, h:k,t or matrix:<row-major entries>.
        #[arg(long)]
        gen: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_MAX_DIM)]
        max_dim: u128,
    },
    /// Run acceptance suites and print one line per criterion.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        /// Skip cases with n above this value.
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_MAX_DIM)]
        max_dim: u128,
        #[arg(long, default_value_t = DEFAULT_MAX_GROUP_ORDER)]
        max_group_order: u128,
        #[arg(long, default_value_t = Config::default().seed)]
        seed: u64,
    },
}

/// Failures and their exit codes.
enum Failure {
    Usage(String),
    Guard(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::GuardExceeded { .. } => Failure::Guard(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(cli.command, &mut out);
    print!("{out}");
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Guard(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command, out: &mut String) -> Result<(), Failure> {
    match command {
        Command::Dpoly { n, r, at, format } => dpoly(n, r, at, format, out),
        Command::Di { n, seq, format } => di(n, seq, format, out),
        Command::Bratteli { n, levels, format } => bratteli(n, levels, format, out),
        Command::Qsp {
            n,
            r,
            q,
            count_only,
            format,
            max_enumeration,
        } => qsp(n, r, q, count_only, format, max_enumeration, out),
        Command::Rep {
            n,
            r,
            q,
            gen,
            format,
            max_dim,
        } => rep(n, r, q, &gen, format, max_dim, out),
        Command::Verify {
            suite,
            max_n,
            max_dim,
            max_group_order,
            seed,
        } => {
            let suite = match suite {
                SuiteArg::All => Suite::All,
                SuiteArg::Identities => Suite::Identities,
                SuiteArg::Basis => Suite::Basis,
                SuiteArg::Commutant => Suite::Commutant,
            };
            let config = Config {
                max_n,
                max_dim,
                max_group_order,
                seed,
                ..Config::default()
            };
            verify(suite, &config, out)
        }
    }
}

fn push_json(out: &mut String, v: &Value) {
    out.push_str(&serde_json::to_string(v).expect("json values serialize"));
    out.push('\n');
}

fn dpoly(n: usize, r: usize, at: Option<i64>, format: Format, out: &mut String) -> Result<(), Failure> {
    if n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    let d = d_poly(n, r);
    match (at, format) {
        (Some(x), _) => writeln!(out, "{}", d.eval_i64(x)).unwrap(),
        (None, Format::Table) => writeln!(out, "{d}").unwrap(),
        (None, Format::Json) => push_json(out, &json!({ "n": n, "r": r, "coefficients": d })),
    }
    Ok(())
}

fn rows_json(t: &StandardTableau) -> Value {
    json!(t.rows())
}

fn set_text(s: &[usize]) -> String {
    let items: Vec<String> = s.iter().map(usize::to_string).collect();
    format!("{{{}}}", items.join(","))
}

fn di(n: usize, seq: Vec<usize>, format: Format, out: &mut String) -> Result<(), Failure> {
    let a = IntSequence::new(seq, n)?;
    let steps = delete_insert_trace(&a)?;
    let (p, q) = delete_insert(&a)?;
    match format {
        Format::Json => {
            let steps: Vec<Value> = steps
                .iter()
                .map(|s| {
                    json!({
                        "step": s.step,
                        "letter": s.letter,
                        "after_delete": rows_json(&s.after_delete),
                        "after_insert": rows_json(&s.after_insert),
                        "permutation": s.permutation.one_line(),
                        "backsteps": s.backsteps,
                        "descents": s.descents,
                    })
                })
                .collect();
            push_json(
                out,
                &json!({
                    "n": n,
                    "sequence": a.entries(),
                    "steps": steps,
                    "insertion": rows_json(&p),
                    "recording": q.shapes(),
                }),
            );
        }
        Format::Table => {
            let mut rows = vec![[
                "i".to_string(),
                "a_i".to_string(),
                "P_(i-1/2)".to_string(),
                "P_i".to_string(),
                "shape".to_string(),
                "w_a".to_string(),
                "BS=Des".to_string(),
            ]];
            rows.push([
                "0".into(),
                String::new(),
                String::new(),
                StandardTableau::single_row(n).to_string(),
                StandardTableau::single_row(n).shape().to_string(),
                qpartition::combinatorics::Permutation::identity(n).to_string(),
                "{}".into(),
            ]);
            for s in &steps {
                rows.push([
                    s.step.to_string(),
                    s.letter.to_string(),
                    s.after_delete.to_string(),
                    s.after_insert.to_string(),
                    s.after_insert.shape().to_string(),
                    s.permutation.to_string(),
                    set_text(&s.descents),
                ]);
            }
            let widths: Vec<usize> = (0..7)
                .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
                .collect();
            for row in &rows {
                let cells: Vec<String> = row
                    .iter()
                    .zip(&widths)
                    .map(|(cell, &w)| format!("{cell:<w$}"))
                    .collect();
                writeln!(out, "{}", cells.join("  ").trim_end()).unwrap();
            }
            writeln!(out, "Q = {q}").unwrap();
        }
    }
    Ok(())
}

fn bratteli(n: usize, levels: Level, format: DiagramFormat, out: &mut String) -> Result<(), Failure> {
    let diagram = BratteliDiagram::new(n, levels)?;
    match format {
        DiagramFormat::Dot => out.push_str(&diagram.to_dot()),
        DiagramFormat::Json => push_json(out, &diagram.to_json()),
    }
    Ok(())
}

fn qsp(
    n: usize,
    r: usize,
    q: u32,
    count_only: bool,
    format: Format,
    max_enumeration: u128,
    out: &mut String,
) -> Result<(), Failure> {
    PrimeField::new(q)?;
    if n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    if count_only {
        writeln!(out, "{}", count_qsp_symbolic(n, r).eval_i64(q as i64)).unwrap();
        return Ok(());
    }
    let all = enumerate_qsp_with_limit(n, r, q, max_enumeration)?;
    match format {
        Format::Json => {
            let items: Vec<Value> = all
                .iter()
                .map(|k| json!({ "heights": k.heights(), "entries": k.entries() }))
                .collect();
            push_json(out, &json!({ "n": n, "r": r, "q": q, "count": all.len(), "partitions": items }));
        }
        Format::Table => {
            for (i, k) in all.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                writeln!(out, "{k}").unwrap();
                writeln!(out, "{}", k.to_ascii()).unwrap();
            }
        }
    }
    Ok(())
}

fn parse_element(spec: &str, n: usize, field: PrimeField) -> Result<GLMatrix, Failure> {
    if let Some(body) = spec.strip_prefix("matrix:") {
        let entries = body
            .split(',')
            .map(|x| x.trim().parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| Failure::Usage(format!("cannot parse matrix entries {body:?}")))?;
        Ok(GLMatrix::new(n, field, &entries)?)
    } else {
        Ok(spec.parse::<Generator>()?.to_matrix(n, field)?)
    }
}

fn rep(n: usize, r: usize, q: u32, spec: &str, format: Format, max_dim: u128, out: &mut String) -> Result<(), Failure> {
    let field = PrimeField::new(q)?;
    if n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    let g = parse_element(spec, n, field)?;
    let basis = ModuleBasis::new(n, r, q, max_dim)?;
    let m = basis.matrix(&g)?;
    match format {
        Format::Json => push_json(out, &m.to_triplet_json()),
        Format::Table => {
            for row in m.to_dense() {
                let cells: Vec<String> = row.iter().map(u8::to_string).collect();
                writeln!(out, "{}", cells.join(" ")).unwrap();
            }
        }
    }
    Ok(())
}

fn verify(suite: Suite, config: &Config, out: &mut String) -> Result<(), Failure> {
    let results = run_suite(suite, config)?;
    for r in &results {
        writeln!(out, "{r}").unwrap();
    }
    if results.iter().all(|r| r.passed()) {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}
