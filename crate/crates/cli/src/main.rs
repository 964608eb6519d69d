//! Command-line front end: every subcommand maps to one library operation
//! and emits deterministic, machine-readable output (JSON by default, CSV
//! for tabular commands, DOT on request). Big integers are always printed
//! as decimal strings.

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use markov_paths::contfrac::{g_period, matching_number, path_to_cf};
use markov_paths::markov;
use markov_paths::orders::{
    classify_pair, hasse_chain, scan_classes, sup_convergence_rows, verify_unique_max, OrderKind,
    OrderedEntry, DEFAULT_ENUM_GUARD,
};
use markov_paths::paths::{enumerate, PathWord};
use markov_paths::quadratic::{
    lagrange_number, lagrange_number_via_shifts, LagrangeValue,
};
use markov_paths::snake::{build_snake, count_perfect_matchings_capped, DEFAULT_TILE_CAP};
use markov_paths::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OrderArg {
    M,
    L,
}

impl From<OrderArg> for OrderKind {
    fn from(value: OrderArg) -> Self {
        match value {
            OrderArg::M => OrderKind::Matching,
            OrderArg::L => OrderKind::Lagrange,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "markov-paths", version, about = "Exact matching and Lagrange orders of below-diagonal lattice paths")]
struct Cli {
    /// Output format for data payloads.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Fractional digits for decimal approximations.
    #[arg(long, global = true, default_value_t = 12)]
    digits: u32,

    /// Worker threads; changes wall time only, never output bytes.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Continued fraction, period, matching number and Lagrange number of a path.
    Path {
        word: String,
        /// Also compute the Lagrange number by the direct shift-maximum
        /// route and verify both routes agree.
        #[arg(long)]
        direct: bool,
    },
    /// Stream the below-diagonal paths to (a, b) with their order keys.
    Enumerate {
        a: u64,
        b: u64,
        /// Ceiling on the number of paths.
        #[arg(long, default_value_t = DEFAULT_ENUM_GUARD)]
        guard: u64,
    },
    /// Check that R^a U^b strictly dominates D(a, b) under both orders.
    VerifyMax {
        a: u64,
        b: u64,
        #[arg(long, default_value_t = DEFAULT_ENUM_GUARD)]
        guard: u64,
    },
    /// The chain of value-equivalence classes of D(a, b) under one order.
    Hasse {
        a: u64,
        b: u64,
        #[arg(long, value_enum)]
        order: OrderArg,
        /// Emit DOT instead of the structured payload.
        #[arg(long)]
        dot: bool,
        #[arg(long, default_value_t = DEFAULT_ENUM_GUARD)]
        guard: u64,
    },
    /// Snake graph of a path: tiles and exact perfect-matching count.
    Snake {
        word: String,
        /// Emit DOT instead of the structured payload.
        #[arg(long)]
        dot: bool,
        /// Ceiling on the number of tiles the brute-force matcher accepts.
        #[arg(long, default_value_t = DEFAULT_TILE_CAP)]
        tile_cap: usize,
    },
    /// Markov triples and numbers.
    Markov {
        #[command(subcommand)]
        command: MarkovCommand,
    },
    /// Table of L(R^{n+1} U^n) converging to 1 + sqrt(5) from below.
    Suplag {
        #[arg(long)]
        n: u64,
    },
    /// Joint order relation class of a pair of paths.
    Classify { word1: String, word2: String },
    /// Classify every pair of paths in D(a, b).
    ScanClasses {
        a: u64,
        b: u64,
        #[arg(long, default_value_t = DEFAULT_ENUM_GUARD)]
        guard: u64,
    },
}

#[derive(Subcommand, Debug)]
enum MarkovCommand {
    /// Breadth-first layers of the Vieta-exchange tree from (1,1,1).
    Tree {
        #[arg(long)]
        depth: u32,
    },
    /// The Markov number of coprime indices a > b.
    Number { a: u64, b: u64 },
    /// Tree membership and the exact Lagrange identity for indices a > b.
    Identity {
        a: u64,
        b: u64,
        /// Tree depth searched for membership.
        #[arg(long, default_value_t = 25)]
        depth: u32,
    },
}

/// Overall outcome: success, or a verification that ran but failed.
enum Outcome {
    Success,
    VerificationFailed,
}

/// Library errors plus the one CLI-only failure mode.
enum CliError {
    Lib(Error),
    CsvUnsupported(&'static str),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::CsvUnsupported(cmd) => {
                write!(f, "csv output is not available for `{cmd}`; use --format json")
            }
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                std::process::exit(0);
            }
            let _ = e.print();
            std::process::exit(1);
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.max(1))
        .build()
        .expect("thread pool");
    let result = pool.install(|| dispatch(&cli));
    match result {
        Ok(Outcome::Success) => {}
        Ok(Outcome::VerificationFailed) => std::process::exit(2),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Path { word, direct } => cmd_path(cli, word, *direct),
        Command::Enumerate { a, b, guard } => cmd_enumerate(cli, *a, *b, *guard),
        Command::VerifyMax { a, b, guard } => cmd_verify_max(cli, *a, *b, *guard),
        Command::Hasse { a, b, order, dot, guard } => cmd_hasse(cli, *a, *b, *order, *dot, *guard),
        Command::Snake { word, dot, tile_cap } => cmd_snake(cli, word, *dot, *tile_cap),
        Command::Markov { command } => cmd_markov(cli, command),
        Command::Suplag { n } => cmd_suplag(cli, *n),
        Command::Classify { word1, word2 } => cmd_classify(cli, word1, word2),
        Command::ScanClasses { a, b, guard } => cmd_scan(cli, *a, *b, *guard),
    }
}

fn lagrange_json(l: &LagrangeValue, digits: u32) -> Value {
    json!({
        "disc": l.disc().to_string(),
        "q": l.q().to_string(),
        "approx": l.decimal(digits),
    })
}

fn entry_row(entry: &OrderedEntry, digits: u32) -> String {
    let (a, b) = entry.path.endpoint();
    format!(
        "{},{},{},{},{},{},{}",
        entry.path,
        a,
        b,
        entry.m_value,
        entry.l_value.disc(),
        entry.l_value.q(),
        entry.l_value.decimal(digits)
    )
}

fn entry_json(entry: &OrderedEntry, digits: u32) -> Value {
    let (a, b) = entry.path.endpoint();
    json!({
        "word": entry.path.to_string(),
        "a": a,
        "b": b,
        "M": entry.m_value.to_string(),
        "disc": entry.l_value.disc().to_string(),
        "q": entry.l_value.q().to_string(),
        "L_approx": entry.l_value.decimal(digits),
    })
}

const ENTRY_CSV_HEADER: &str = "word,a,b,M,disc,q,L_approx";

fn cmd_path(cli: &Cli, word: &str, direct: bool) -> Result<Outcome, CliError> {
    let w = PathWord::parse(word)?;
    let f = path_to_cf(&w)?;
    let g = g_period(&w)?;
    let m = matching_number(&w)?;
    let l = lagrange_number(&w)?;
    let (a, b) = w.endpoint();
    match cli.format {
        Format::Csv => {
            println!("{ENTRY_CSV_HEADER}");
            let entry = OrderedEntry {
                path: w.clone(),
                m_value: m,
                l_value: l,
            };
            println!("{}", entry_row(&entry, cli.digits));
            Ok(Outcome::Success)
        }
        Format::Json => {
            let mut payload = json!({
                "word": w.to_string(),
                "a": a,
                "b": b,
                "below_diagonal": w.is_below_diagonal(),
                "f": f.entries(),
                "g_period": g.period().entries(),
                "M": m.to_string(),
                "L": lagrange_json(&l, cli.digits),
            });
            let mut failed = false;
            if direct {
                let shifted = lagrange_number_via_shifts(&w)?;
                let agrees = shifted == l.as_surd();
                payload["direct_route_agrees"] = json!(agrees);
                payload["L_direct_approx"] = json!(shifted.decimal(cli.digits));
                failed = !agrees;
            }
            println!("{payload}");
            Ok(if failed {
                Outcome::VerificationFailed
            } else {
                Outcome::Success
            })
        }
    }
}

fn cmd_enumerate(cli: &Cli, a: u64, b: u64, guard: u64) -> Result<Outcome, CliError> {
    use rayon::prelude::*;
    let size = markov_paths::paths::count_below_diagonal(a, b)?;
    if size > markov_paths::BigInt::from(guard) {
        return Err(CliError::Lib(Error::EnumerationGuard {
            size: size.to_string(),
            guard,
        }));
    }
    let words: Vec<PathWord> = enumerate(a, b)?.collect();
    let digits = cli.digits;
    let rows: Vec<String> = match cli.format {
        Format::Csv => words
            .into_par_iter()
            .map(|w| {
                let entry = OrderedEntry::evaluate(w).expect("paths of D(a,b) evaluate");
                entry_row(&entry, digits)
            })
            .collect(),
        Format::Json => words
            .into_par_iter()
            .map(|w| {
                let entry = OrderedEntry::evaluate(w).expect("paths of D(a,b) evaluate");
                entry_json(&entry, digits).to_string()
            })
            .collect(),
    };
    let mut out = String::new();
    if cli.format == Format::Csv {
        out.push_str(ENTRY_CSV_HEADER);
        out.push('\n');
    }
    for row in rows {
        out.push_str(&row);
        out.push('\n');
    }
    print!("{out}");
    Ok(Outcome::Success)
}

fn cmd_verify_max(cli: &Cli, a: u64, b: u64, guard: u64) -> Result<Outcome, CliError> {
    if cli.format == Format::Csv {
        return Err(CliError::CsvUnsupported("verify-max"));
    }
    let report = verify_unique_max(a, b, guard)?;
    let runner_m = report
        .runner_up_m
        .as_ref()
        .map(|(w, m)| json!({"word": w.to_string(), "M": m.to_string()}))
        .unwrap_or(Value::Null);
    let runner_l = report
        .runner_up_l
        .as_ref()
        .map(|(w, l)| json!({"word": w.to_string(), "disc": l.disc().to_string(), "q": l.q().to_string()}))
        .unwrap_or(Value::Null);
    let payload = json!({
        "a": report.a,
        "b": report.b,
        "paths": report.count,
        "max": {
            "word": report.max_word.to_string(),
            "M": report.max_m.to_string(),
            "disc": report.max_l.disc().to_string(),
            "q": report.max_l.q().to_string(),
        },
        "runner_up_m": runner_m,
        "runner_up_l": runner_l,
        "m_holds": report.m_holds,
        "l_holds": report.l_holds,
        "holds": report.holds(),
    });
    println!("{payload}");
    Ok(if report.holds() {
        Outcome::Success
    } else {
        Outcome::VerificationFailed
    })
}

fn cmd_hasse(
    cli: &Cli,
    a: u64,
    b: u64,
    order: OrderArg,
    dot: bool,
    guard: u64,
) -> Result<Outcome, CliError> {
    let chain = hasse_chain(a, b, order.into(), guard)?;
    if dot {
        print!("{}", chain.to_dot());
        return Ok(Outcome::Success);
    }
    match cli.format {
        Format::Csv => {
            println!("label,members");
            for class in &chain.classes {
                println!("{},{}", class.label, class.members.join(" "));
            }
        }
        Format::Json => {
            let classes: Vec<Value> = chain
                .classes
                .iter()
                .map(|c| json!({"label": c.label, "members": c.members}))
                .collect();
            let payload = json!({
                "a": a,
                "b": b,
                "order": chain.order.letter(),
                "kind": "value-chain",
                "classes": classes,
            });
            println!("{payload}");
        }
    }
    Ok(Outcome::Success)
}

fn cmd_snake(cli: &Cli, word: &str, dot: bool, tile_cap: usize) -> Result<Outcome, CliError> {
    if cli.format == Format::Csv && !dot {
        return Err(CliError::CsvUnsupported("snake"));
    }
    let w = PathWord::parse(word)?;
    let graph = build_snake(&w)?;
    if dot {
        print!("{}", graph.to_dot(&w.to_string()));
        return Ok(Outcome::Success);
    }
    let matchings = count_perfect_matchings_capped(&graph, tile_cap)?;
    let tiles: Vec<Value> = graph
        .tiles()
        .iter()
        .map(|t| json!([t.anchor.0, t.anchor.1]))
        .collect();
    let payload = json!({
        "word": w.to_string(),
        "tiles": tiles,
        "matchings": matchings.to_string(),
    });
    println!("{payload}");
    Ok(Outcome::Success)
}

fn cmd_markov(cli: &Cli, command: &MarkovCommand) -> Result<Outcome, CliError> {
    match command {
        MarkovCommand::Tree { depth } => {
            let triples = markov::markov_tree(*depth);
            let mut out = String::new();
            if cli.format == Format::Csv {
                out.push_str("x,y,z\n");
                for t in &triples {
                    out.push_str(&format!("{},{},{}\n", t.x(), t.y(), t.z()));
                }
            } else {
                for t in &triples {
                    let row = json!({
                        "x": t.x().to_string(),
                        "y": t.y().to_string(),
                        "z": t.z().to_string(),
                    });
                    out.push_str(&row.to_string());
                    out.push('\n');
                }
            }
            print!("{out}");
            Ok(Outcome::Success)
        }
        MarkovCommand::Number { a, b } => {
            if cli.format == Format::Csv {
                return Err(CliError::CsvUnsupported("markov number"));
            }
            let m = markov::markov_number(*a, *b)?;
            let word = markov_paths::paths::christoffel(*a, *b)?;
            let payload = json!({
                "a": a,
                "b": b,
                "word": word.to_string(),
                "m": m.to_string(),
            });
            println!("{payload}");
            Ok(Outcome::Success)
        }
        MarkovCommand::Identity { a, b, depth } => {
            if cli.format == Format::Csv {
                return Err(CliError::CsvUnsupported("markov identity"));
            }
            let report = markov::lagrange_markov_identity(*a, *b)?;
            let in_tree = markov::verify_markov_membership(*a, *b, *depth)?;
            let payload = json!({
                "a": a,
                "b": b,
                "m": report.m.to_string(),
                "in_tree": in_tree,
                "identity": report.holds,
            });
            println!("{payload}");
            Ok(if report.holds && in_tree {
                Outcome::Success
            } else {
                Outcome::VerificationFailed
            })
        }
    }
}

fn cmd_suplag(cli: &Cli, n: u64) -> Result<Outcome, CliError> {
    let rows = sup_convergence_rows(n, cli.digits)?;
    let mut ok = true;
    let mut out = String::new();
    if cli.format == Format::Csv {
        out.push_str("n,disc,q,approx,gap,lower_ok,upper_ok,increased\n");
    }
    for row in &rows {
        ok &= row.lower_ok && row.upper_ok && row.increased;
        match cli.format {
            Format::Csv => {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    row.n,
                    row.value.disc(),
                    row.value.q(),
                    row.approx,
                    row.gap,
                    row.lower_ok,
                    row.upper_ok,
                    row.increased
                ));
            }
            Format::Json => {
                let payload = json!({
                    "n": row.n,
                    "disc": row.value.disc().to_string(),
                    "q": row.value.q().to_string(),
                    "approx": row.approx,
                    "gap": row.gap,
                    "lower_ok": row.lower_ok,
                    "upper_ok": row.upper_ok,
                    "increased": row.increased,
                });
                out.push_str(&payload.to_string());
                out.push('\n');
            }
        }
    }
    print!("{out}");
    Ok(if ok {
        Outcome::Success
    } else {
        Outcome::VerificationFailed
    })
}

fn cmd_classify(cli: &Cli, word1: &str, word2: &str) -> Result<Outcome, CliError> {
    if cli.format == Format::Csv {
        return Err(CliError::CsvUnsupported("classify"));
    }
    let w1 = PathWord::parse(word1)?;
    let w2 = PathWord::parse(word2)?;
    let c = classify_pair(&w1, &w2)?;
    let payload = json!({
        "class": c.class.tag(),
        "first": entry_json(&c.first, cli.digits),
        "second": entry_json(&c.second, cli.digits),
    });
    println!("{payload}");
    Ok(Outcome::Success)
}

fn cmd_scan(cli: &Cli, a: u64, b: u64, guard: u64) -> Result<Outcome, CliError> {
    if cli.format == Format::Csv {
        return Err(CliError::CsvUnsupported("scan-classes"));
    }
    let scan = scan_classes(a, b, guard)?;
    let pairs = |v: &Vec<(String, String)>| -> Vec<Value> {
        v.iter().map(|(x, y)| json!([x, y])).collect()
    };
    let payload = json!({
        "a": scan.a,
        "b": scan.b,
        "paths": scan.path_count,
        "pairs": scan.pair_count,
        "counts": {
            "MupLup": scan.mup_lup,
            "MupLdown": scan.mup_ldown,
            "MupLeq": scan.mup_leq_pairs.len(),
            "MeqLup": scan.meq_lup_pairs.len(),
            "MeqLeq": scan.meq_leq_pairs.len(),
        },
        "mup_leq": pairs(&scan.mup_leq_pairs),
        "meq_lup": pairs(&scan.meq_lup_pairs),
        "meq_leq": pairs(&scan.meq_leq_pairs),
    });
    println!("{payload}");
    Ok(Outcome::Success)
}
