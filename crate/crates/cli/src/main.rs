use std::io::Write;
use std::process::ExitCode;

use arlab_core::analysis::rauzy_graph;
use arlab_core::complexity::{complexity_table, ComplexityRow, TableOptions, CSV_HEADER};
use arlab_core::dbonacci::{dbonacci_row, DBonacciNumbers};
use arlab_core::verify::{verify, Fault, VerifyOptions, VerifyReport};
use arlab_core::word::format_symbols;
use arlab_core::{ArPrefix, DirectiveSequence, Error, DEFAULT_BUDGET};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

mod text;

#[derive(Parser, Debug)]
#[command(name = "arlab", version, about = "Arnoux-Rauzy words and their non-repetitive complexity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a prefix of the standard word
    Generate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        length: usize,
    },
    /// Formula and oracle values for n = 1..=n-max
    Table {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n_max: usize,
        /// Run the oracles only up to this n
        #[arg(long)]
        oracle_n_max: Option<usize>,
    },
    /// Check formulas against oracles and invariants; exit 1 on disagreement
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n_max: usize,
        /// Verify this many random directives over `--d` letters instead of `--directive`
        #[arg(long, requires = "d", conflicts_with = "directive")]
        random_directives: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, hide = true, value_enum)]
        inject_fault: Option<FaultArg>,
    },
    /// Rauzy graph of order n
    Rauzy {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'n')]
        n: usize,
    },
    /// Closed forms for the d-bonacci word, compared with the general formulas
    Dbonacci {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        oracle_n_max: Option<usize>,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Directive as `pre:period`, e.g. `:012` or `[]:[0,1,11]`
    #[arg(long)]
    directive: Option<String>,
    /// Alphabet size (inferred from the directive when omitted)
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Largest prefix to materialize, in symbols
    #[arg(long, env = "ARLAB_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Txt,
    Dot,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum FaultArg {
    Nrc,
}

/// Failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Budget { .. } | Error::Inconclusive(_) => 3,
            Error::Internal(_) => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

type Run = Result<(String, u8), Failure>;

impl Common {
    fn directive(&self) -> Result<DirectiveSequence, Failure> {
        let text = self.directive.as_deref().ok_or_else(|| usage("--directive is required"))?;
        let ds = DirectiveSequence::parse(text, self.d)?;
        ds.require_valid_ar()?;
        Ok(ds)
    }

    fn format(&self, allowed: &[Format], default: Format) -> Result<Format, Failure> {
        let f = self.format.unwrap_or(default);
        if allowed.contains(&f) {
            Ok(f)
        } else {
            Err(usage(format!("format {f:?} is not available for this command").to_lowercase()))
        }
    }

    fn table_options(&self, oracle_n_max: Option<usize>) -> TableOptions {
        TableOptions { oracle_n_max, ..TableOptions::with_budget(self.budget) }
    }
}

fn check_n_max(n_max: usize) -> Result<(), Failure> {
    if n_max == 0 {
        return Err(usage("--n-max must be at least 1"));
    }
    Ok(())
}

fn generate(common: &Common, length: usize) -> Run {
    let format = common.format(&[Format::Txt, Format::Json], Format::Txt)?;
    let ds = common.directive()?;
    let prefix = ArPrefix::generate_with_budget(&ds, length, common.budget)?;
    let word = format_symbols(ds.d(), prefix.symbols());
    let out = match format {
        Format::Json => json!({ "directive": ds.to_string(), "d": ds.d(), "length": length, "word": word })
            .to_string(),
        _ => word,
    };
    Ok((out + "\n", 0))
}

fn table(common: &Common, n_max: usize, oracle_n_max: Option<usize>) -> Run {
    let format = common.format(&[Format::Csv, Format::Json, Format::Txt], Format::Csv)?;
    check_n_max(n_max)?;
    let ds = common.directive()?;
    let table = complexity_table(&ds, n_max, &common.table_options(oracle_n_max))?;
    let out = match format {
        Format::Json => serde_json::to_string_pretty(&table.to_json()).expect("json") + "\n",
        Format::Txt => text::render(CSV_HEADER, table.rows.iter().map(ComplexityRow::csv_fields)),
        _ => table.to_csv(),
    };
    Ok((out, 0))
}

fn run_verify(
    common: &Common,
    n_max: usize,
    random: Option<usize>,
    seed: u64,
    fault: Option<FaultArg>,
) -> Run {
    let format = common.format(&[Format::Json, Format::Txt], Format::Json)?;
    check_n_max(n_max)?;
    let options = VerifyOptions {
        table: common.table_options(None),
        fault: fault.map(|FaultArg::Nrc| Fault::Nrc),
    };
    let directives = match random {
        Some(count) => {
            let d = common.d.expect("clap enforces --d");
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|_| DirectiveSequence::random_valid(d, &mut rng))
                .collect::<arlab_core::Result<Vec<_>>>()?
        }
        None => vec![common.directive()?],
    };
    let reports = directives
        .iter()
        .map(|ds| verify(ds, n_max, &options))
        .collect::<arlab_core::Result<Vec<_>>>()?;
    for r in &reports {
        eprintln!(
            "{}: {} failures, {} rows stable",
            r.directive,
            r.failures.len(),
            r.stable_fraction()
        );
    }
    let code = if reports.iter().all(VerifyReport::passed) { 0 } else { 1 };
    let out = match format {
        Format::Txt => reports.iter().map(text::report).collect::<String>(),
        _ => {
            let value = match (random, reports.as_slice()) {
                (None, [one]) => one.to_json(),
                _ => Value::Array(reports.iter().map(VerifyReport::to_json).collect()),
            };
            serde_json::to_string_pretty(&value).expect("json") + "\n"
        }
    };
    Ok((out, code))
}

fn rauzy(common: &Common, n: usize) -> Run {
    let format = common.format(&[Format::Dot, Format::Txt], Format::Dot)?;
    let ds = common.directive()?;
    let start = (4 * (n + 2)).max(1024).min(common.budget).max(n + 2);
    let prefix = ArPrefix::generate_with_budget(&ds, start, common.budget)?;
    let graph = rauzy_graph(&prefix, n)?;
    let out = match format {
        Format::Txt => text::graph(&graph),
        _ => graph.to_dot(),
    };
    Ok((out, 0))
}

fn dbonacci(common: &Common, n_max: usize, oracle_n_max: Option<usize>) -> Run {
    let format = common.format(&[Format::Csv, Format::Json, Format::Txt], Format::Csv)?;
    check_n_max(n_max)?;
    let d = common.d.ok_or_else(|| usage("--d is required"))?;
    let mut numbers = DBonacciNumbers::new(d, 1)?;
    let ds = DirectiveSequence::dbonacci(d)?;
    let table = complexity_table(&ds, n_max, &common.table_options(oracle_n_max))?;

    let header = format!("{CSV_HEADER},D_k,B_len_k,agree_generic");
    let mut rows = Vec::with_capacity(n_max);
    for generic in &table.rows {
        let fast = dbonacci_row(&mut numbers, generic.n as u64)?;
        let agree_generic = fast.nrc == generic.nrc_formula
            && fast.inrc == generic.inrc_formula
            && fast.k == generic.k;
        let mut row = generic.clone();
        row.nrc_formula = fast.nrc.clone();
        row.inrc_formula = fast.inrc.clone();
        row.k = fast.k;
        row.agree_nrc = row.nrc_oracle.map(|o| row.nrc_formula == o.into());
        row.agree_inrc = row.inrc_oracle.map(|o| row.inrc_formula == o.into());
        let mut fields = row.csv_fields();
        fields.extend([fast.d_k.to_string(), fast.bispecial_len.to_string(), agree_generic.to_string()]);
        rows.push((row, fields, fast, agree_generic));
    }

    let rows_agree = rows.iter().all(|(_, _, _, agree)| *agree);
    if !rows_agree {
        eprintln!("closed forms disagree with the general formulas");
    }
    let out = match format {
        Format::Json => {
            let values: Vec<Value> = rows
                .iter()
                .map(|(row, _, fast, agree)| {
                    let mut v = row.to_json();
                    v["D_k"] = json!(fast.d_k.to_string());
                    v["B_len_k"] = json!(fast.bispecial_len.to_string());
                    v["agree_generic"] = json!(agree);
                    v
                })
                .collect();
            serde_json::to_string_pretty(&Value::Array(values)).expect("json") + "\n"
        }
        Format::Txt => text::render(&header, rows.into_iter().map(|(_, f, _, _)| f)),
        _ => {
            let mut out = header + "\n";
            for (_, fields, _, _) in rows {
                out.push_str(&fields.join(","));
                out.push('\n');
            }
            out
        }
    };
    let code = if rows_agree { 0 } else { 1 };
    Ok((out, code))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Generate { common, length } => generate(common, *length),
        Command::Table { common, n_max, oracle_n_max } => table(common, *n_max, *oracle_n_max),
        Command::Verify { common, n_max, random_directives, seed, inject_fault } => {
            run_verify(common, *n_max, *random_directives, *seed, *inject_fault)
        }
        Command::Rauzy { common, n } => rauzy(common, *n),
        Command::Dbonacci { common, n_max, oracle_n_max } => dbonacci(common, *n_max, *oracle_n_max),
    };
    match result {
        Ok((out, code)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("arlab: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
