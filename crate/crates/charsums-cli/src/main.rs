//! Command-line surface: every library operation plus the verification
//! suites and scans. Exit codes: 0 success, 1 exact-pass suite failure,
//! 2 usage error. Identical argv and seed give byte-identical output for
//! any worker count.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use charsums::arithmetic::{decompose_burgess, decompose_crt, factorize};
use charsums::characters::CharacterGroup;
use charsums::congruences::{
    count_k, count_k_boxed, count_k_direct, count_k_distinct, count_mult_cong, count_nv,
    Interval, TupleBox, TupleFilter, COUNT_CSV_HEADER,
};
use charsums::fmt::format_sig;
use charsums::polynomials::{resultant, IntPolynomial};
use charsums::sums::{moment, MomentRecord};
use charsums::verify::{
    reports_to_csv, reports_to_json, run_scan, run_suite, Grid, SuiteResult, EXACT_SUITES, SCANS,
};

#[derive(Parser)]
#[command(name = "charsums", version, about = "Exact workbench for character sums to composite modulus")]
struct Cli {
    /// Worker threads; the WORKERS environment variable overrides this flag.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Seed for the constructed-instance suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Prime factorization of n.
    Factor { n: u64 },
    /// Decompose q into the squarefree/square/cubefull parts, or the
    /// five-way split with --crt.
    Decompose {
        q: u64,
        #[arg(long)]
        crt: bool,
    },
    /// List the characters mod q with conductor, order and primitivity.
    Chars {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        primitive: bool,
    },
    /// Moment of the short sums of one character.
    Moment {
        #[arg(long)]
        q: u64,
        #[arg(long = "char")]
        char_label: String,
        #[arg(long = "V")]
        v: u64,
        #[arg(long)]
        r: u32,
    },
    /// Kloosterman-fraction congruence counts (and variants).
    Ksum {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        lambda: i64,
        #[arg(long = "V")]
        v: u64,
        /// Restrict to tuples with pairwise distinct entries.
        #[arg(long, conflicts_with = "mult")]
        distinct: bool,
        /// Count the multiplicative congruence over 1..=V instead.
        #[arg(long)]
        mult: bool,
        /// Check the meet-in-the-middle count against direct enumeration.
        #[arg(long)]
        direct: bool,
        /// Split each coordinate into this many equal boxes and report
        /// per-box counts plus the pigeonhole maximum.
        #[arg(long)]
        boxes: Option<u32>,
    },
    /// Number of lambdas with the tuple Wronskian vanishing mod q.
    Ncount {
        #[arg(long)]
        q: u64,
        /// Comma-separated tuple, e.g. "0,1,2,3".
        #[arg(long, allow_hyphen_values = true)]
        v: String,
    },
    /// Resultant of two polynomials (space-separated ascending coefficients).
    Resultant {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
    },
    /// Run one exact-pass statement suite.
    Verify {
        statement: String,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Run one report-only scan over a grid file.
    Scan {
        statement: String,
        #[arg(long)]
        grid: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Run every exact-pass suite and print one line per statement.
    Report {
        /// Directory for the per-statement CSV files.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

const USAGE_EXIT: u8 = 2;
const FAIL_EXIT: u8 = 1;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let workers = std::env::var("WORKERS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .or(cli.workers);
    if let Some(w) = workers {
        if rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build_global()
            .is_err()
        {
            eprintln!("error: worker pool already initialized");
            return ExitCode::from(USAGE_EXIT);
        }
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(USAGE_EXIT)
        }
    }
}

fn run(cli: Cli) -> charsums::Result<ExitCode> {
    match cli.cmd {
        Cmd::Factor { n } => {
            let f = factorize(n)?;
            let parts: Vec<String> = f
                .factors
                .iter()
                .map(|&(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
                .collect();
            if parts.is_empty() {
                println!("{n} = 1");
            } else {
                println!("{n} = {}", parts.join(" * "));
            }
        }
        Cmd::Decompose { q, crt } => {
            if crt {
                let p = decompose_crt(q)?;
                println!("q1={} q2={} q3={} q4={} q5={}", p.q1, p.q2, p.q3, p.q4, p.q5);
            } else {
                let p = decompose_burgess(q)?;
                println!("q1={} s={} c={}", p.q1, p.s, p.c);
            }
        }
        Cmd::Chars { q, primitive } => {
            let group = CharacterGroup::new(q)?;
            println!("label,conductor,order,primitive");
            for chi in group.characters(primitive) {
                println!(
                    "{},{},{},{}",
                    chi.label(),
                    chi.conductor(),
                    chi.order(),
                    chi.is_primitive()
                );
            }
        }
        Cmd::Moment { q, char_label, v, r } => {
            let group = CharacterGroup::new(q)?;
            let chi = group.character_from_label(&char_label)?;
            let rec: MomentRecord = moment(&chi, v, r)?;
            println!("{}", format_sig(rec.value));
        }
        Cmd::Ksum { r, q, lambda, v, distinct, mult, direct, boxes } => {
            println!("{COUNT_CSV_HEADER}");
            let bx = TupleBox::symmetric(r, v);
            if mult {
                let res = count_mult_cong(r, q, lambda, v)?;
                println!("{}", res.csv_line("mult", r, q, lambda, &format!("[1..{v}]^{}", 2 * r)));
            } else if distinct {
                let res = count_k_distinct(r, q, lambda, v)?;
                println!("{}", res.csv_line("k-distinct", r, q, lambda, &bx.describe()));
            } else if let Some(parts) = boxes {
                let cells = split_symmetric_box(r, v, parts)?;
                let counts = count_k_boxed(r, q, lambda, &cells)?;
                let mut max = 0u64;
                for (cell, res) in cells.iter().zip(&counts) {
                    max = max.max(res.count);
                    println!("{}", res.csv_line("k-boxed", r, q, lambda, &cell.describe()));
                }
                println!("# max_box_count={max}");
            } else {
                let res = count_k(r, q, lambda, &bx)?;
                if direct {
                    let check = count_k_direct(r, q, lambda, &bx, TupleFilter::All)?;
                    if check != res {
                        return Err(charsums::Error::Precondition(format!(
                            "meet-in-the-middle {res:?} disagrees with direct {check:?}"
                        )));
                    }
                }
                println!("{}", res.csv_line("k", r, q, lambda, &bx.describe()));
            }
        }
        Cmd::Ncount { q, v } => {
            let tuple = parse_tuple(&v)?;
            println!("{}", count_nv(q, &tuple)?);
        }
        Cmd::Resultant { f, g } => {
            let fp: IntPolynomial = f.parse()?;
            let gp: IntPolynomial = g.parse()?;
            println!("{}", resultant(&fp, &gp)?);
        }
        Cmd::Verify { statement, output, format } => {
            if !EXACT_SUITES.contains(&statement.as_str()) {
                eprintln!(
                    "unknown statement {statement:?}; exact suites:\n  {}",
                    EXACT_SUITES.join("\n  ")
                );
                return Ok(ExitCode::from(USAGE_EXIT));
            }
            let result = run_suite(&statement, cli.seed)?;
            print!("{}", render_suite(&result));
            write_reports(&result, output.as_deref(), format)?;
            if !result.passed() {
                return Ok(ExitCode::from(FAIL_EXIT));
            }
        }
        Cmd::Scan { statement, grid, output, format } => {
            if !SCANS.contains(&statement.as_str()) {
                eprintln!(
                    "unknown statement {statement:?}; scans:\n  {}",
                    SCANS.join("\n  ")
                );
                return Ok(ExitCode::from(USAGE_EXIT));
            }
            let text = std::fs::read_to_string(&grid).map_err(|e| {
                charsums::Error::BadGrid(format!("{}: {e}", grid.display()))
            })?;
            let parsed = Grid::parse(&text)?;
            let result = run_scan(&statement, &parsed)?;
            print!("{}", render_suite(&result));
            write_reports(&result, output.as_deref(), format)?;
            if !result.passed() {
                // Sanity assertions inside a scan failed.
                return Ok(ExitCode::from(FAIL_EXIT));
            }
        }
        Cmd::Report { output, format } => {
            if let Some(dir) = &output {
                std::fs::create_dir_all(dir).map_err(|e| {
                    charsums::Error::Precondition(format!("{}: {e}", dir.display()))
                })?;
            }
            let mut failed = false;
            for id in EXACT_SUITES {
                let result = run_suite(id, cli.seed)?;
                let status = if result.passed() { "pass" } else { "FAIL" };
                let ratio = result
                    .max_ratio
                    .as_ref()
                    .map(|(m, _)| format_sig(*m))
                    .unwrap_or_else(|| "none".into());
                println!(
                    "{status} {id}: instances={} failures={} max_ratio={ratio}",
                    result.instances, result.failures
                );
                failed |= !result.passed();
                if let Some(dir) = &output {
                    let ext = match format {
                        Format::Csv => "csv",
                        Format::Json => "json",
                    };
                    let path = dir.join(format!("{id}.{ext}"));
                    write_reports(&result, Some(&path), format)?;
                }
            }
            println!("scans: {}", SCANS.join(" "));
            if failed {
                return Ok(ExitCode::from(FAIL_EXIT));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn render_suite(result: &SuiteResult) -> String {
    let status = if result.passed() { "pass" } else { "FAIL" };
    format!("{status} {}\n{}", result.statement, result.summary())
}

fn write_reports(
    result: &SuiteResult,
    path: Option<&std::path::Path>,
    format: Format,
) -> charsums::Result<()> {
    let Some(path) = path else { return Ok(()) };
    let body = match format {
        Format::Csv => reports_to_csv(&result.reports),
        Format::Json => reports_to_json(&result.reports),
    };
    std::fs::write(path, body)
        .map_err(|e| charsums::Error::Precondition(format!("{}: {e}", path.display())))
}

fn parse_tuple(s: &str) -> charsums::Result<Vec<i64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| charsums::Error::Precondition(format!("bad tuple entry {t:?}")))
        })
        .collect()
}

/// Splits `[-V, V]` into `parts` nearly equal pieces per coordinate and
/// returns the full product partition of the cube.
fn split_symmetric_box(r: u32, v: u64, parts: u32) -> charsums::Result<Vec<TupleBox>> {
    if parts == 0 {
        return Err(charsums::Error::Precondition("boxes must be positive".into()));
    }
    let lo = -(v as i64);
    let hi = v as i64;
    let total = (hi - lo + 1) as u32;
    let parts = parts.min(total);
    let mut pieces = Vec::new();
    let mut start = lo;
    for i in 0..parts {
        let len = (total / parts + u32::from(i < total % parts)) as i64;
        pieces.push(Interval::new(start, start + len - 1));
        start += len;
    }
    let dims = 2 * r as usize;
    let mut cells: Vec<Vec<Interval>> = vec![Vec::new()];
    for _ in 0..dims {
        let mut next = Vec::with_capacity(cells.len() * pieces.len());
        for cell in &cells {
            for piece in &pieces {
                let mut c = cell.clone();
                c.push(*piece);
                next.push(c);
            }
        }
        cells = next;
    }
    Ok(cells.into_iter().map(TupleBox::new).collect())
}
