//! Command-line surface: build states, replay operation streams, query
//! scores, verify against the brute-force oracle, and benchmark.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage or capability
//! error.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use allscores::oracle::oracle_pivots;
use allscores::pivots::{format_dump, parse_dump, score_psam, score_ssam, MatrixKind};
use allscores::sequences::Sequence;
use allscores::{Alphabet, DynState, Error, Op, OpKind, Pivot, Result, StateKind};

#[derive(Parser)]
#[command(
    name = "allscores",
    about = "Incrementally maintained pivot encodings of LCS all-scores matrices",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a state and print its canonical pivot dump.
    Build {
        /// SSAM, PSAM or JOINT.
        kind: String,
        /// String A (or @file).
        a: String,
        /// String B (or @file).
        b: String,
        /// Alphabet symbols (default: ASCII lowercase).
        #[arg(long)]
        alphabet: Option<String>,
    },
    /// Replay an ops file and print the final pivot dump.
    Apply {
        kind: String,
        a: String,
        b: String,
        /// Ops file: one `PA|AA|AB <symbol>` per line, `#` comments.
        ops: PathBuf,
        /// Print a dump after every operation.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        alphabet: Option<String>,
    },
    /// Replay ops (or fuzz randomly), rechecking the oracle after every op.
    Verify {
        kind: String,
        #[arg(required_unless_present = "fuzz")]
        a: Option<String>,
        #[arg(required_unless_present = "fuzz")]
        b: Option<String>,
        #[arg(required_unless_present = "fuzz")]
        ops: Option<PathBuf>,
        /// Run TRIALS random trials from SEED instead of a fixed replay.
        #[arg(long, num_args = 2, value_names = ["TRIALS", "SEED"])]
        fuzz: Option<Vec<u64>>,
        /// Maximum initial string length in fuzz mode.
        #[arg(long, default_value_t = 24)]
        max_len: usize,
        /// Test hook: corrupt the comparison after this 1-based op index.
        #[arg(long, hide = true)]
        corrupt: Option<usize>,
        #[arg(long)]
        alphabet: Option<String>,
    },
    /// Reconstruct one score from a pivot dump.
    Query {
        /// SSAM or PSAM (selects the dump section).
        kind: String,
        dump: PathBuf,
        i: usize,
        j: usize,
    },
    /// Generate an op stream and emit per-op work counters as CSV.
    Bench {
        kind: String,
        /// Instance shape: random, near-identical, disjoint.
        #[arg(long = "gen", default_value = "random")]
        generator: String,
        /// Initial string length.
        #[arg(long, default_value_t = 64)]
        len: usize,
        /// Number of operations to replay.
        #[arg(long, default_value_t = 1000)]
        ops: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Alphabet size (first K lowercase letters).
        #[arg(long, default_value_t = 4)]
        sigma: usize,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Structural(_) => 1,
                _ => 2,
            }
        }
    };
    std::process::exit(code);
}

fn run(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Build { kind, a, b, alphabet } => {
            let kind = StateKind::parse(&kind)?;
            let al = parse_alphabet(alphabet.as_deref())?;
            let a = resolve_string(&a)?;
            let b = resolve_string(&b)?;
            let st = DynState::build(kind, &a, &b, al)?;
            print!("{}", st.dump());
            Ok(0)
        }
        Command::Apply {
            kind,
            a,
            b,
            ops,
            trace,
            alphabet,
        } => {
            let kind = StateKind::parse(&kind)?;
            let al = parse_alphabet(alphabet.as_deref())?;
            let a = resolve_string(&a)?;
            let b = resolve_string(&b)?;
            let stream = load_ops(&ops)?;
            validate_stream(kind, &stream, &al)?;
            let mut st = DynState::build(kind, &a, &b, al)?;
            for op in &stream {
                st.apply(*op)?;
                if trace {
                    print!("{}", st.dump());
                }
            }
            if !trace || stream.is_empty() {
                print!("{}", st.dump());
            }
            Ok(0)
        }
        Command::Verify {
            kind,
            a,
            b,
            ops,
            fuzz,
            max_len,
            corrupt,
            alphabet,
        } => {
            let kind = StateKind::parse(&kind)?;
            if let Some(fuzz) = fuzz {
                return run_fuzz(kind, fuzz[0], fuzz[1], max_len);
            }
            let al = parse_alphabet(alphabet.as_deref())?;
            let a = resolve_string(&a.expect("required by clap"))?;
            let b = resolve_string(&b.expect("required by clap"))?;
            let stream = load_ops(&ops.expect("required by clap"))?;
            validate_stream(kind, &stream, &al)?;
            let mut st = DynState::build(kind, &a, &b, al)?;
            for (idx, op) in stream.iter().enumerate() {
                st.apply(*op)?;
                let tamper = corrupt == Some(idx + 1);
                if let Some(msg) = compare_with_oracle(&st, tamper) {
                    println!(
                        "mismatch after op {} ({} {}):",
                        idx + 1,
                        op.kind.code(),
                        op.sym as char
                    );
                    println!("{msg}");
                    return Ok(1);
                }
            }
            println!("ok: {} ops verified against the oracle", stream.len());
            Ok(0)
        }
        Command::Query { kind, dump, i, j } => {
            let kind = MatrixKind::parse(&kind)?;
            let text = fs::read_to_string(&dump)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", dump.display())))?;
            let sections = parse_dump(&text)?;
            let section = sections
                .iter()
                .find(|s| s.kind == kind)
                .ok_or_else(|| Error::Parse(format!("no {} section in dump", kind.name())))?;
            let score = match kind {
                MatrixKind::Ssam => score_ssam(section, section.bounds.0, i, j)?,
                MatrixKind::Psam => score_psam(section, i, j)?,
            };
            println!("{score}");
            Ok(0)
        }
        Command::Bench {
            kind,
            generator,
            len,
            ops,
            seed,
            sigma,
        } => {
            let kind = StateKind::parse(&kind)?;
            run_bench(kind, &generator, len, ops, seed, sigma)
        }
    }
}

fn parse_alphabet(spec: Option<&str>) -> Result<Alphabet> {
    match spec {
        None => Ok(Alphabet::lowercase()),
        Some(s) => Alphabet::new(s.as_bytes()),
    }
}

/// A literal argument, or the contents of a file for `@path` arguments.
fn resolve_string(arg: &str) -> Result<Vec<u8>> {
    if let Some(path) = arg.strip_prefix('@') {
        let text = fs::read_to_string(Path::new(path))
            .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
        Ok(text.trim_end_matches(['\n', '\r']).as_bytes().to_vec())
    } else {
        Ok(arg.as_bytes().to_vec())
    }
}

fn load_ops(path: &Path) -> Result<Vec<Op>> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let mut ops = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let code = fields.next().unwrap();
        let sym = fields
            .next()
            .ok_or_else(|| Error::Parse(format!("line {}: missing symbol", lineno + 1)))?;
        if fields.next().is_some() || sym.len() != 1 {
            return Err(Error::Parse(format!(
                "line {}: expected `OP <symbol>`",
                lineno + 1
            )));
        }
        ops.push(Op {
            kind: OpKind::parse(code)?,
            sym: sym.as_bytes()[0],
        });
    }
    Ok(ops)
}

/// Reject illegal ops before executing anything.
fn validate_stream(kind: StateKind, ops: &[Op], alphabet: &Alphabet) -> Result<()> {
    for op in ops {
        if !OpKind::legal_for(kind).contains(&op.kind) {
            return Err(Error::Capability(format!(
                "op {} is not supported by {} states",
                op.kind.code(),
                kind.name()
            )));
        }
        alphabet.index_of(op.sym)?;
    }
    Ok(())
}

/// Compare every pivot set of the state with a fresh oracle run; reports
/// the first divergence. `tamper` falsifies the actual set, as a negative
/// control for the verification machinery itself.
fn compare_with_oracle(st: &DynState, tamper: bool) -> Option<String> {
    let a = Sequence::from_bytes(&st.a_bytes(), st.alphabet()).expect("state strings are valid");
    let b = st.b_sequence();
    for set in st.pivot_sets() {
        let expected = oracle_pivots(set.kind, &a, b);
        let mut actual = set.canonical_cells();
        if tamper {
            actual.push((9999, 9999));
        }
        if actual != expected.canonical_cells() {
            let mut shown = expected.clone();
            shown.points = actual.iter().map(|&(row, col)| Pivot { row, col }).collect();
            return Some(format!(
                "expected:\n{}actual:\n{}",
                format_dump(&expected),
                format_dump(&shown)
            ));
        }
    }
    None
}

fn random_string(rng: &mut ChaCha8Rng, pool: &[u8], max_len: usize) -> Vec<u8> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| pool[rng.gen_range(0..pool.len())]).collect()
}

fn random_op(rng: &mut ChaCha8Rng, kind: StateKind, pool: &[u8]) -> Op {
    let legal = OpKind::legal_for(kind);
    Op {
        kind: legal[rng.gen_range(0..legal.len())],
        sym: pool[rng.gen_range(0..pool.len())],
    }
}

fn run_fuzz(kind: StateKind, trials: u64, seed: u64, max_len: usize) -> Result<i32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut total_ops = 0u64;
    for trial in 0..trials {
        let sigma = if rng.gen_bool(0.5) { 2 } else { 4 };
        let al = Alphabet::lowercase_prefix(sigma)?;
        let pool = al.symbols().to_vec();
        let a = random_string(&mut rng, &pool, max_len);
        let b = random_string(&mut rng, &pool, max_len);
        let mut st = DynState::build(kind, &a, &b, al)?;
        let n_ops = rng.gen_range(0..=32);
        for opi in 0..n_ops {
            let op = random_op(&mut rng, kind, &pool);
            st.apply(op)?;
            total_ops += 1;
            if let Some(msg) = compare_with_oracle(&st, false) {
                println!(
                    "mismatch in trial {} after op {} ({} {}):",
                    trial + 1,
                    opi + 1,
                    op.kind.code(),
                    op.sym as char
                );
                println!("{msg}");
                return Ok(1);
            }
        }
    }
    println!("fuzz ok: {trials} trials, {total_ops} ops, 0 mismatches (seed {seed})");
    Ok(0)
}

/// (delta, L) sparsities of the state's current strings.
fn sparsities(st: &DynState) -> (u64, u64) {
    let n = st.b_sequence().len() as u64;
    match st {
        DynState::Ssam(s) => {
            let d = s.pivots().len() as u64;
            (d, n - d)
        }
        DynState::Psam(s) => {
            let l = s.pivots().len() as u64;
            (n - l, l)
        }
        DynState::Joint(s) => (s.k_pivots().len() as u64, s.psi_pivots().len() as u64),
    }
}

fn run_bench(
    kind: StateKind,
    generator: &str,
    len: usize,
    ops: u64,
    seed: u64,
    sigma: usize,
) -> Result<i32> {
    let al = Alphabet::lowercase_prefix(sigma)?;
    let symbols = al.symbols().to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Symbol pools for the two strings; the disjoint shape keeps L = 0.
    let (pool_a, pool_b): (Vec<u8>, Vec<u8>) = match generator {
        "random" | "near-identical" | "near_identical" => (symbols.clone(), symbols.clone()),
        "disjoint" => {
            if sigma < 2 {
                return Err(Error::Parse("disjoint generator needs sigma >= 2".into()));
            }
            let half = sigma / 2;
            (symbols[..half].to_vec(), symbols[half..].to_vec())
        }
        other => {
            return Err(Error::Parse(format!(
                "unknown generator {other:?} (random, near-identical, disjoint)"
            )))
        }
    };

    let b: Vec<u8> = (0..len)
        .map(|_| pool_b[rng.gen_range(0..pool_b.len())])
        .collect();
    let a: Vec<u8> = match generator {
        "near-identical" | "near_identical" => b
            .iter()
            .map(|&s| {
                if rng.gen_ratio(1, 16) {
                    symbols[rng.gen_range(0..symbols.len())]
                } else {
                    s
                }
            })
            .collect(),
        _ => (0..len)
            .map(|_| pool_a[rng.gen_range(0..pool_a.len())])
            .collect(),
    };

    let mut st = DynState::build(kind, &a, &b, al)?;
    println!("op_index,op_kind,n,m,L,Delta,touched_pivots,table_queries,wall_nanos");
    let mut touched_ok = 0u64;
    let mut queries_ok = 0u64;
    for op_index in 1..=ops {
        let (delta_before, l_before) = sparsities(&st);
        let mut op = random_op(&mut rng, kind, &pool_a);
        if op.kind == OpKind::AppendB {
            op.sym = pool_b[rng.gen_range(0..pool_b.len())];
        }
        let start = Instant::now();
        st.apply(op)?;
        let wall_nanos = start.elapsed().as_nanos();
        let c = st.last_op();
        let (delta, l) = sparsities(&st);
        let n = st.b_sequence().len();
        let m = st.a_bytes().len();
        println!(
            "{op_index},{},{n},{m},{l},{delta},{},{},{wall_nanos}",
            op.kind.code(),
            c.touched_pivots,
            c.table_queries
        );
        let budget = match op.kind {
            OpKind::PrependA | OpKind::AppendA => delta_before,
            OpKind::AppendB => l_before,
        };
        if c.touched_pivots <= 4 * (budget + 1) {
            touched_ok += 1;
        }
        if c.table_queries <= 2 * (budget + 1) + 8 {
            queries_ok += 1;
        }
    }
    eprintln!(
        "bench summary: {ops} ops, {touched_ok} within the touched-pivots bound, \
         {queries_ok} within the table-queries bound"
    );
    Ok(if touched_ok == ops && queries_ok == ops { 0 } else { 1 })
}
