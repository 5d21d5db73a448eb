//! Command-line front end for the admissible-set toolkit.
//!
//! Exit codes: 0 = affirmative result or success, 1 = negative result
//! (inadmissible, not found, exhausted nonexistence), 2 = usage or I/O
//! error, 3 = node/time limit reached. `-` stands for stdin/stdout in file
//! positions. Coordinates are 0-indexed everywhere; supports are written as
//! comma-separated integers, types and colours as strings over {1,2}.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use admissible::bounds::BoundReport;
use admissible::clash::{find_clash, is_admissible, ClashWitness};
use admissible::cnf::{decode_verified, export_cnf, parse_model, read_varmap, CnfError};
use admissible::colouring::{
    induced_colouring, reconstruct_monochromatic, ColouringError, TripleColour,
};
use admissible::construct::construct_i;
use admissible::family::Branch;
use admissible::io::{read_family, write_family, ParsedFamily};
use admissible::search::{exists_i, f_max, SearchConfig, SearchStatus, SymmetryFlags};
use admissible::supports::{binomial, SeedOrder};
use admissible::typed::{is_typed_clash, monotype_i_exists, TypeSeq, TypedError};
use admissible::vector::{Support, MAX_LEN};

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_LIMIT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "admissible",
    about = "Verify, construct and search admissible sets in {0,1,2}^m, and turn them into cap-set bounds",
    after_help = "Coordinates are 0-indexed everywhere. Supports are comma-separated integers \
                  (e.g. 0,1,3,4); types and colours are strings over {1,2}; '-' means \
                  stdin/stdout.\nExit codes: 0 affirmative result or success, 1 negative result, \
                  2 usage or I/O error, 3 node/time limit reached.",
    arg_required_else_help = true,
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Colex,
    Lex,
}

impl From<OrderArg> for SeedOrder {
    fn from(o: OrderArg) -> SeedOrder {
        match o {
            OrderArg::Colex => SeedOrder::Colex,
            OrderArg::Lex => SeedOrder::Lex,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BranchArg {
    Zero,
    Nonzero,
}

#[derive(clap::Args)]
struct SearchFlags {
    /// Stop after this many search nodes
    #[arg(long = "nodes")]
    nodes: Option<u64>,
    /// Stop after this many seconds (wall clock)
    #[arg(long = "time")]
    time: Option<f64>,
    /// Worker threads; the result status does not depend on this
    #[arg(long = "threads", default_value_t = 1)]
    threads: usize,
    /// Disable star and coordinate-permutation symmetry breaking
    #[arg(long = "no-symmetry")]
    no_symmetry: bool,
    /// Support enumeration order
    #[arg(long = "order", value_enum, default_value = "colex")]
    order: OrderArg,
}

impl SearchFlags {
    fn config(&self) -> Result<SearchConfig, String> {
        if self.threads == 0 {
            return Err("--threads must be at least 1".into());
        }
        if self.nodes == Some(0) {
            return Err("--nodes must be positive".into());
        }
        if self.time.is_some_and(|t| t <= 0.0) {
            return Err("--time must be positive".into());
        }
        Ok(SearchConfig {
            node_limit: self.nodes,
            time_limit: self.time.map(Duration::from_secs_f64),
            threads: self.threads,
            symmetry: if self.no_symmetry {
                SymmetryFlags::none()
            } else {
                SymmetryFlags::all()
            },
            seed_order: self.order.into(),
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check a family file: admissibility, plus the I(m,w) claim if present
    Verify { file: String },
    /// Emit a closed-form I(m,w) admissible set (w in {1, 2, 3, m-1, m})
    Construct {
        m: usize,
        w: usize,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// Search for an I(m,w) admissible set
    Search {
        m: usize,
        w: usize,
        #[command(flatten)]
        flags: SearchFlags,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// Maximize the number of weight-w vectors in an admissible family
    Fmax {
        m: usize,
        w: usize,
        #[command(flatten)]
        flags: SearchFlags,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// Decide whether three supports form a type-t clash
    TypedClash {
        /// Type over {1,2}, e.g. 1212
        t: String,
        /// Comma-separated 0-indexed coordinates, e.g. 0,1,3,4
        s1: String,
        s2: String,
        s3: String,
        /// Universe size
        m: usize,
    },
    /// Search for an admissible I(m,w) set where every vector has type t
    Monotype {
        m: usize,
        w: usize,
        t: String,
        /// Node budget; exceeding it is reported as a limit, not nonexistence
        #[arg(long, default_value_t = 1 << 24)]
        budget: u64,
    },
    /// Print the induced 8-colouring table of an I(m,m-2) family
    Colour { file: String },
    /// Build the unique I(m,m-2) candidate with a constant colouring
    Reconstruct {
        m: usize,
        /// Colour as three characters over {1,2}, e.g. 121
        colour: String,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// Delete a coordinate, keeping vectors that are zero (or non-zero) there
    Project {
        file: String,
        coord: usize,
        branch: BranchArg,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// Write the I(m,w) existence problem as DIMACS CNF
    ExportCnf {
        m: usize,
        w: usize,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// Decode a solver model against an exported CNF and verify it
    Decode {
        /// The CNF file written by export-cnf (its header carries the varmap)
        cnf: String,
        /// Solver output: literals terminated by 0, `v` lines accepted
        model: String,
    },
    /// Cap-set size and growth base for f weight-w vectors in {0,1,2}^m
    Bound {
        f: u64,
        m: u32,
        w: u32,
        /// Precision of the certified base enclosure, in bits
        #[arg(long, default_value_t = 64)]
        precision: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

/// Ok carries the exit status for completed commands (including negative
/// results and limits); Err is reserved for usage and I/O problems.
fn run(command: Command) -> Result<u8, String> {
    match command {
        Command::Verify { file } => verify(&file),
        Command::Construct { m, w, output } => construct(m, w, &output),
        Command::Search { m, w, flags, output } => search(m, w, &flags, &output),
        Command::Fmax { m, w, flags, output } => fmax(m, w, &flags, &output),
        Command::TypedClash { t, s1, s2, s3, m } => typed_clash(&t, &s1, &s2, &s3, m),
        Command::Monotype { m, w, t, budget } => monotype(m, w, &t, budget),
        Command::Colour { file } => colour(&file),
        Command::Reconstruct { m, colour, output } => reconstruct(m, &colour, &output),
        Command::Project { file, coord, branch, output } => project(&file, coord, branch, &output),
        Command::ExportCnf { m, w, output } => export(m, w, &output),
        Command::Decode { cnf, model } => decode(&cnf, &model),
        Command::Bound { f, m, w, precision } => bound(f, m, w, precision),
    }
}

fn open_input(path: &str) -> Result<Box<dyn BufRead>, String> {
    if path == "-" {
        Ok(Box::new(BufReader::new(io::stdin())))
    } else {
        let file = File::open(path).map_err(|e| format!("{path}: {e}"))?;
        Ok(Box::new(BufReader::new(file)))
    }
}

fn open_output(path: &str) -> Result<Box<dyn Write>, String> {
    if path == "-" {
        Ok(Box::new(BufWriter::new(io::stdout())))
    } else {
        let file = File::create(path).map_err(|e| format!("{path}: {e}"))?;
        Ok(Box::new(BufWriter::new(file)))
    }
}

fn load_family(path: &str) -> Result<ParsedFamily, String> {
    read_family(open_input(path)?).map_err(|e| format!("{path}: {e}"))
}

/// Searches materialise C(m,w) supports with 2^w candidate vectors each;
/// refuse instances where that table alone is hopeless.
fn check_search_scale(cmd: &str, m: usize, w: usize) -> Result<(), String> {
    if w == 0 || w > m || m > MAX_LEN {
        return Err(format!("{cmd} needs 0 < w <= m <= {MAX_LEN}"));
    }
    if w > 24 || binomial(m, w) > 10_000_000 {
        return Err(format!(
            "{cmd} cannot enumerate C({m},{w}) supports with 2^{w} candidates each"
        ));
    }
    Ok(())
}

fn parse_support(text: &str, m: usize) -> Result<Support, String> {
    let members: Vec<usize> = text
        .split(',')
        .map(|tok| tok.trim().parse::<usize>().map_err(|_| format!("bad coordinate {tok:?}")))
        .collect::<Result<_, _>>()?;
    Support::new(m, members).map_err(|e| e.to_string())
}

fn describe_witness(witness: &ClashWitness) -> String {
    match witness {
        ClashWitness::Pair { indices: (i, j), vectors: (a, b) } => {
            format!("pair clash at indices {i},{j}: {a} {b}")
        }
        ClashWitness::Triple { indices: (i, j, k), vectors: (a, b, c) } => {
            format!("triple clash at indices {i},{j},{k}: {a} {b} {c}")
        }
    }
}

fn verify(path: &str) -> Result<u8, String> {
    let parsed = load_family(path)?;
    let family = parsed.family;
    if let Some((m, w)) = parsed.claim {
        if !family.is_i_set(m, w) {
            println!(
                "NOT I({m},{w}): {} vectors of length {}, expected {} of weight {w}",
                family.size(),
                family.len_m(),
                binomial(m, w)
            );
            return Ok(EXIT_NEGATIVE);
        }
    }
    match find_clash(&family) {
        Some(witness) => {
            println!("CLASH: {}", describe_witness(&witness));
            Ok(EXIT_NEGATIVE)
        }
        None => {
            let claim_note = match parsed.claim {
                Some((m, w)) => format!(", I({m},{w})"),
                None => String::new(),
            };
            println!(
                "OK: admissible, {} vectors of length {}{claim_note}",
                family.size(),
                family.len_m()
            );
            Ok(EXIT_OK)
        }
    }
}

fn construct(m: usize, w: usize, output: &str) -> Result<u8, String> {
    let family = construct_i(m, w).map_err(|e| e.to_string())?;
    let mut out = open_output(output)?;
    write_family(&mut out, &family, &[], Some((m, w))).map_err(|e| e.to_string())?;
    Ok(EXIT_OK)
}

fn search(m: usize, w: usize, flags: &SearchFlags, output: &str) -> Result<u8, String> {
    check_search_scale("search", m, w)?;
    let cfg = flags.config()?;
    let outcome = exists_i(m, w, &cfg);
    eprintln!(
        "search I({m},{w}): {:?}, {} nodes, {:.2?}",
        outcome.status, outcome.nodes, outcome.elapsed
    );
    match outcome.status {
        SearchStatus::Found => {
            let witness = outcome.witness.expect("Found carries a witness");
            // wall-clock time goes to stderr only, keeping the emitted file
            // reproducible bit-for-bit under the deterministic defaults
            let comments = vec![format!("found by search after {} nodes", outcome.nodes)];
            let mut out = open_output(output)?;
            write_family(&mut out, &witness, &comments, Some((m, w)))
                .map_err(|e| e.to_string())?;
            Ok(EXIT_OK)
        }
        SearchStatus::Exhausted => {
            eprintln!("no I({m},{w}) admissible set exists (search space exhausted)");
            Ok(EXIT_NEGATIVE)
        }
        SearchStatus::LimitReached => Ok(EXIT_LIMIT),
    }
}

fn fmax(m: usize, w: usize, flags: &SearchFlags, output: &str) -> Result<u8, String> {
    check_search_scale("fmax", m, w)?;
    let cfg = flags.config()?;
    let outcome = f_max(m, w, &cfg);
    eprintln!(
        "fmax f({m},{w}): value {}, exact {}, {} nodes, {:.2?}",
        outcome.value, outcome.exact, outcome.nodes, outcome.elapsed
    );
    let mut comments = vec![
        if outcome.exact {
            format!("f({m},{w}) = {} (exact)", outcome.value)
        } else {
            format!("f({m},{w}) >= {} (search hit a limit)", outcome.value)
        },
        format!("searched {} nodes", outcome.nodes),
    ];
    if outcome.value > 0 {
        let report = BoundReport::new(outcome.value as u64, m as u32, w as u32, 64)
            .map_err(|e| e.to_string())?;
        comments.push(format!("capset count in F_3^{} = {}", report.dimension, report.count));
        comments.push(format!(
            "capset base = {} (error <= 2^-{})",
            report.base.decimal(6),
            report.base.shift
        ));
    }
    let claim = outcome.witness.is_i_set(m, w).then_some((m, w));
    let mut out = open_output(output)?;
    write_family(&mut out, &outcome.witness, &comments, claim).map_err(|e| e.to_string())?;
    Ok(if outcome.exact { EXIT_OK } else { EXIT_LIMIT })
}

fn typed_clash(t: &str, s1: &str, s2: &str, s3: &str, m: usize) -> Result<u8, String> {
    let t: TypeSeq = t.parse().map_err(|e: TypedError| e.to_string())?;
    let (s1, s2, s3) = (
        parse_support(s1, m)?,
        parse_support(s2, m)?,
        parse_support(s3, m)?,
    );
    let clash = is_typed_clash(&s1, &s2, &s3, &t).map_err(|e| e.to_string())?;
    if clash {
        println!("CLASH");
        Ok(EXIT_OK)
    } else {
        println!("NO CLASH");
        Ok(EXIT_NEGATIVE)
    }
}

fn monotype(m: usize, w: usize, t: &str, budget: u64) -> Result<u8, String> {
    check_search_scale("monotype", m, w)?;
    let t: TypeSeq = t.parse().map_err(|e: TypedError| e.to_string())?;
    match monotype_i_exists(m, w, &t, budget) {
        Ok(Some(witness)) => {
            let comments = vec![format!("every vector has type {t}")];
            let mut out = open_output("-")?;
            write_family(&mut out, &witness, &comments, Some((m, w)))
                .map_err(|e| e.to_string())?;
            Ok(EXIT_OK)
        }
        Ok(None) => {
            eprintln!("no I({m},{w}) admissible set with all vectors of type {t}");
            Ok(EXIT_NEGATIVE)
        }
        Err(TypedError::BudgetExceeded { budget }) => {
            eprintln!("node budget {budget} exceeded; existence unresolved");
            Ok(EXIT_LIMIT)
        }
        Err(other) => Err(other.to_string()),
    }
}

fn colour(path: &str) -> Result<u8, String> {
    let parsed = load_family(path)?;
    let colouring = induced_colouring(&parsed.family).map_err(|e| e.to_string())?;
    for ((i, j, k), c) in colouring.iter() {
        println!("{i},{j},{k} {c}");
    }
    Ok(EXIT_OK)
}

fn reconstruct(m: usize, colour: &str, output: &str) -> Result<u8, String> {
    if !(3..=MAX_LEN).contains(&m) {
        return Err(format!("reconstruct needs 3 <= m <= {MAX_LEN}"));
    }
    let colour: TripleColour = colour.parse().map_err(|e: ColouringError| e.to_string())?;
    let family = reconstruct_monochromatic(m, colour);
    let verdict = if is_admissible(&family) { "admissible" } else { "contains a clash" };
    let comments = vec![
        format!("monochromatic colouring {colour} on all coordinate triples"),
        format!("this reconstruction is {verdict}"),
    ];
    let mut out = open_output(output)?;
    write_family(&mut out, &family, &comments, Some((m, m - 2))).map_err(|e| e.to_string())?;
    Ok(EXIT_OK)
}

fn project(path: &str, coord: usize, branch: BranchArg, output: &str) -> Result<u8, String> {
    let parsed = load_family(path)?;
    let branch = match branch {
        BranchArg::Zero => Branch::Zero,
        BranchArg::Nonzero => Branch::NonZero,
    };
    let projected = parsed.family.project(coord, branch).map_err(|e| e.to_string())?;
    // an I(m,w) claim survives projection with the appropriate parameters
    let claim = parsed.claim.and_then(|(m, w)| match branch {
        _ if m != parsed.family.len_m() => None,
        Branch::Zero => Some((m - 1, w)),
        Branch::NonZero => w.checked_sub(1).map(|w1| (m - 1, w1)),
    });
    let mut out = open_output(output)?;
    write_family(&mut out, &projected, &[], claim).map_err(|e| e.to_string())?;
    Ok(EXIT_OK)
}

fn export(m: usize, w: usize, output: &str) -> Result<u8, String> {
    check_search_scale("export-cnf", m, w)?;
    let mut out = open_output(output)?;
    export_cnf(m, w, &mut out).map_err(|e| e.to_string())?;
    Ok(EXIT_OK)
}

fn decode(cnf_path: &str, model_path: &str) -> Result<u8, String> {
    let varmap = read_varmap(open_input(cnf_path)?).map_err(|e| format!("{cnf_path}: {e}"))?;
    let model = parse_model(open_input(model_path)?, varmap.var_count())
        .map_err(|e| format!("{model_path}: {e}"))?;
    match decode_verified(&varmap, &model) {
        Ok(family) => {
            let mut out = open_output("-")?;
            write_family(&mut out, &family, &[], Some((varmap.m(), varmap.w())))
                .map_err(|e| e.to_string())?;
            Ok(EXIT_OK)
        }
        Err(e @ CnfError::Verification(_)) => {
            eprintln!("{e}");
            Ok(EXIT_NEGATIVE)
        }
        Err(other) => Err(other.to_string()),
    }
}

fn bound(f: u64, m: u32, w: u32, precision: u32) -> Result<u8, String> {
    let report = BoundReport::new(f, m, w, precision).map_err(|e| e.to_string())?;
    println!("{}", report.render_text());
    print!("{}", report.render_kv());
    Ok(EXIT_OK)
}
