//! Command-line surface.  Everything routes through [`run`], which takes
//! the argument vector and output sinks explicitly so tests can drive the
//! whole binary in process.
//!
//! Records go to stdout as JSON lines (or CSV with `--format csv`);
//! diagnostics and timing go to stderr.  Exit codes: `0` success, `1`
//! negative verdict (not recurrent, infeasible, failed identity), `2`
//! usage or domain error.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bijections::{self, classify, f_map, f_target, g_map, g_target, Classification};
use crate::error::Error;
use crate::motzkin::{self, MotzkinWord, StandardYoungTableau};
use crate::necklace::{enumerate_necklaces, motzkin_from_necklace, necklace_from_motzkin, Necklace};
use crate::parking::{self, TieredParkingInstance};
use crate::prufer::{self, PruferPair, SpanningTree};
use crate::sandpile::{self, Configuration};
use crate::split_graph::{Side, SplitGraph};
use crate::verify::{self, VerifyOptions};

#[derive(Parser, Debug)]
#[command(
    name = "splitpile",
    version,
    about = "Sandpile recurrence on complete split graphs: enumeration, bijections, verification"
)]
struct Cli {
    /// Output format for stdout records.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Enumeration budget (objects); overrides SPLITPILE_BUDGET.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Seed for randomized cross-checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SinkArg {
    Clique,
    Independent,
}

impl SinkArg {
    fn graph(self, m: usize, n: usize) -> Result<SplitGraph, Error> {
        match self {
            SinkArg::Clique => SplitGraph::clique_sink(m, n),
            SinkArg::Independent => SplitGraph::independent_sink(m, n),
        }
    }

    fn side(self) -> Side {
        match self {
            SinkArg::Clique => Side::Clique,
            SinkArg::Independent => Side::Independent,
        }
    }

    fn name(self) -> &'static str {
        match self {
            SinkArg::Clique => "clique",
            SinkArg::Independent => "independent",
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum EnumKind {
    Recurrent,
    DecreasingRecurrent,
    Motzkin,
    DhMotzkin,
    Necklaces,
    Trees,
}

impl EnumKind {
    /// The name as written on the command line.
    fn name(self) -> &'static str {
        match self {
            EnumKind::Recurrent => "recurrent",
            EnumKind::DecreasingRecurrent => "decreasing-recurrent",
            EnumKind::Motzkin => "motzkin",
            EnumKind::DhMotzkin => "dh-motzkin",
            EnumKind::Necklaces => "necklaces",
            EnumKind::Trees => "trees",
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Repr {
    Config,
    Word,
    Necklace,
    Parking,
    Syt,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    Config,
    Word,
    Parking,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Stream objects for S(m,n) in a fixed order, then a count line.
    Enumerate {
        #[arg(long, value_enum)]
        kind: EnumKind,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = SinkArg::Clique)]
        sink: SinkArg,
    },
    /// Convert one representation of a recurrent configuration to another.
    Convert {
        #[arg(long, value_enum)]
        from: Repr,
        #[arg(long, value_enum)]
        to: Repr,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = SinkArg::Clique)]
        sink: SinkArg,
        /// Input payload: JSON for structured forms, plain letters for words.
        #[arg(long)]
        payload: String,
    },
    /// Check a single object: recurrence, word validity, or parking feasibility.
    Check {
        #[arg(long, value_enum)]
        kind: CheckKind,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t = SinkArg::Clique)]
        sink: SinkArg,
        #[arg(long)]
        payload: String,
    },
    /// Closed-form counts for a graph shape.
    Count {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Spanning-tree code pairs.
    Tree {
        #[command(subcommand)]
        op: TreeOp,
    },
    /// Run the full identity suite over a sweep of graphs.
    Verify {
        #[arg(long, default_value_t = 3)]
        m_max: usize,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        /// Corrupt one expected value to prove failures are reported.
        #[arg(long, hide = true)]
        inject_failure: bool,
    },
}

#[derive(Subcommand, Debug)]
enum TreeOp {
    /// Tree JSON -> code pair.
    Encode {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        payload: String,
    },
    /// Code pair JSON -> tree.
    Decode {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        payload: String,
    },
}

/// Entry point shared by the binary and the in-process tests.  `budget_env`
/// carries the value of `SPLITPILE_BUDGET`, if set.
pub fn run<I, S>(
    args: I,
    budget_env: Option<&str>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let help = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let sink: &mut dyn Write = if help { &mut *stdout } else { &mut *stderr };
            let _ = write!(sink, "{e}");
            return if help { 0 } else { 2 };
        }
    };
    let budget = match resolve_budget(cli.budget, budget_env) {
        Ok(b) => b,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            return 2;
        }
    };
    let started = Instant::now();
    match dispatch(&cli, budget) {
        Ok((records, code)) => {
            if emit(&records, cli.format, stdout).is_err() {
                return 2;
            }
            let _ = writeln!(
                stderr,
                "# {} record(s) in {:.1}ms",
                records.len(),
                started.elapsed().as_secs_f64() * 1e3
            );
            code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

fn resolve_budget(flag: Option<u64>, env: Option<&str>) -> Result<u64, String> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match env {
        Some(raw) => raw
            .trim()
            .parse::<u64>()
            .map_err(|_| format!("SPLITPILE_BUDGET is not a valid budget: {raw:?}")),
        None => Ok(crate::DEFAULT_BUDGET),
    }
}

/// Render records: one compact JSON object per line, or CSV with the union
/// of keys (alphabetical) as header and nested values JSON-encoded in
/// their cells.
fn emit(records: &[Value], format: Format, out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Json => {
            for r in records {
                writeln!(out, "{}", serde_json::to_string(r).expect("serializable record"))?;
            }
        }
        Format::Csv => {
            let keys: BTreeSet<&str> = records
                .iter()
                .filter_map(|r| r.as_object())
                .flat_map(|o| o.keys().map(String::as_str))
                .collect();
            let mut wtr = csv::Writer::from_writer(Vec::new());
            wtr.write_record(&keys).map_err(csv_io)?;
            for r in records {
                let row: Vec<String> = keys
                    .iter()
                    .map(|k| match r.get(k) {
                        None | Some(Value::Null) => String::new(),
                        Some(Value::String(s)) => s.clone(),
                        Some(other) => other.to_string(),
                    })
                    .collect();
                wtr.write_record(&row).map_err(csv_io)?;
            }
            let bytes = wtr.into_inner().map_err(|e| e.into_error())?;
            out.write_all(&bytes)?;
        }
    }
    Ok(())
}

fn csv_io(e: csv::Error) -> std::io::Error {
    std::io::Error::other(e)
}

fn parse_json<T: serde::de::DeserializeOwned>(what: &str, payload: &str) -> Result<T, Error> {
    serde_json::from_str(payload)
        .map_err(|e| Error::InvalidInput(format!("cannot parse {what} payload: {e}")))
}

fn dispatch(cli: &Cli, budget: u64) -> Result<(Vec<Value>, i32), Error> {
    match &cli.command {
        Command::Enumerate { kind, m, n, sink } => cmd_enumerate(*kind, *m, *n, *sink, budget),
        Command::Convert { from, to, m, n, sink, payload } => {
            cmd_convert(*from, *to, *m, *n, *sink, payload)
        }
        Command::Check { kind, m, n, sink, payload } => {
            cmd_check(*kind, *m, *n, *sink, payload, budget)
        }
        Command::Count { m, n } => cmd_count(*m, *n),
        Command::Tree { op } => match op {
            TreeOp::Encode { m, n, payload } => cmd_tree_encode(*m, *n, payload),
            TreeOp::Decode { m, n, payload } => cmd_tree_decode(*m, *n, payload),
        },
        Command::Verify { m_max, n_max, inject_failure } => {
            cmd_verify(*m_max, *n_max, budget, cli.seed, *inject_failure)
        }
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn cmd_enumerate(
    kind: EnumKind,
    m: usize,
    n: usize,
    sink: SinkArg,
    budget: u64,
) -> Result<(Vec<Value>, i32), Error> {
    let mut records: Vec<Value> = Vec::new();
    match kind {
        EnumKind::Recurrent => {
            let g = sink.graph(m, n)?;
            for c in sandpile::all_recurrent_brute(&g, budget)? {
                records.push(to_value(&c));
            }
        }
        EnumKind::DecreasingRecurrent => {
            let g = sink.graph(m, n)?;
            for rep in bijections::decreasing_recurrent(&g, budget)? {
                let word = match classify(&g, rep.as_configuration())? {
                    Classification::Recurrent(w) => w,
                    Classification::NotRecurrent(_) => unreachable!("image of the word map"),
                };
                records.push(json!({"config": to_value(&rep), "word": word.to_string()}));
            }
        }
        EnumKind::Motzkin => {
            SplitGraph::clique_sink(m, n)?;
            for w in motzkin::generate_all(m - 1, n, budget)? {
                records.push(json!({"word": w.to_string()}));
            }
        }
        EnumKind::DhMotzkin => {
            SplitGraph::independent_sink(m, n)?;
            for w in motzkin::generate_all(m, n - 1, budget)? {
                if w.is_dh() {
                    records.push(json!({"word": w.to_string()}));
                }
            }
        }
        EnumKind::Necklaces => {
            SplitGraph::clique_sink(m, n)?;
            for x in enumerate_necklaces(m, n, budget)? {
                records.push(to_value(&x));
            }
        }
        EnumKind::Trees => {
            for pair in prufer::all_prufer_pairs(m, n, budget)? {
                let tree = prufer::decode(m, n, &pair)?;
                records.push(json!({"tree": to_value(&tree), "codes": to_value(&pair)}));
            }
        }
    }
    let count = records.len();
    records.push(json!({
        "command": "enumerate",
        "kind": kind.name(),
        "m": m,
        "n": n,
        "sink": sink.name(),
        "count": count,
    }));
    Ok((records, 0))
}

/// Word families by sink: the clique sink pairs with plain Motzkin words on
/// `(m-1, n)`, the independent sink with DH words on `(m, n-1)`.
fn check_word_dimensions(w: &MotzkinWord, m: usize, n: usize, sink: SinkArg) -> Result<(), Error> {
    let target = match sink.side() {
        Side::Clique => f_target(w),
        Side::Independent => g_target(w),
    };
    if target != (m, n) {
        return Err(Error::InvalidInput(format!(
            "word {w} targets S{target:?} with the {} sink, not S(({m},{n}))",
            sink.name()
        )));
    }
    if sink.side() == Side::Independent && !w.is_dh() {
        return Err(Error::NotDhMotzkin);
    }
    Ok(())
}

#[derive(serde::Serialize, serde::Deserialize)]
struct ParkingPayload {
    instance: TieredParkingInstance,
    street: Vec<usize>,
}

/// Strict-parking view of a word: tier order, descending requirement
/// lists, and the reversed-word street.
fn parking_view(w: &MotzkinWord, m: usize, sink: SinkArg) -> Result<ParkingPayload, Error> {
    let rep = match sink.side() {
        Side::Clique => f_map(w),
        Side::Independent => g_map(w)?,
    };
    let c = rep.as_configuration();
    let b = c.independent.clone();
    let a_plus_one: Vec<u64> = c.clique.iter().map(|&a| a + 1).collect();
    let tier1 = match sink.side() {
        Side::Clique => m - 1,
        Side::Independent => m,
    };
    let instance =
        TieredParkingInstance::new(vec![tier1, b.len(), a_plus_one.len()], vec![b, a_plus_one])
            .map_err(|_| {
                Error::InvalidInput(
                    "parking form needs every tier nonempty: m >= 2 and n >= 2".into(),
                )
            })?;
    let street = parking::street_from_word(w).tier_sequence();
    Ok(ParkingPayload { instance, street })
}

/// The inverse direction: a street label sequence reads right to left as a
/// word (tier 1 -> D, tier 2 -> H, tier 3 -> U).
fn word_from_street(street: &[usize]) -> Result<MotzkinWord, Error> {
    let letters: Result<Vec<motzkin::Letter>, Error> = street
        .iter()
        .rev()
        .map(|&t| match t {
            1 => Ok(motzkin::Letter::D),
            2 => Ok(motzkin::Letter::H),
            3 => Ok(motzkin::Letter::U),
            other => Err(Error::InvalidInput(format!("street tier {other} out of range 1..=3"))),
        })
        .collect();
    MotzkinWord::new(letters?)
}

fn cmd_convert(
    from: Repr,
    to: Repr,
    m: usize,
    n: usize,
    sink: SinkArg,
    payload: &str,
) -> Result<(Vec<Value>, i32), Error> {
    let g = sink.graph(m, n)?;
    let envelope = |result: Value| {
        json!({
            "command": "convert",
            "from": format!("{from:?}").to_lowercase(),
            "to": format!("{to:?}").to_lowercase(),
            "m": m,
            "n": n,
            "sink": sink.name(),
            "result": result,
        })
    };

    let word: MotzkinWord = match from {
        Repr::Config => {
            let c: Configuration = parse_json("configuration", payload)?;
            match classify(&g, &c)? {
                Classification::Recurrent(w) => w,
                Classification::NotRecurrent(reason) => {
                    let record = json!({
                        "command": "convert",
                        "verdict": "not-recurrent",
                        "reason": to_value(&reason),
                    });
                    return Ok((vec![record], 1));
                }
            }
        }
        Repr::Word => MotzkinWord::from_str(payload.trim())?,
        Repr::Necklace => {
            let x: Necklace = parse_json("necklace", payload)?;
            motzkin_from_necklace(&x)?
        }
        Repr::Parking => {
            let p: ParkingPayload = parse_json("parking", payload)?;
            let w = word_from_street(&p.street)?;
            let expected = parking_view(&w, m, sink)?;
            let same_multisets = {
                let mut got = p.instance.requirements().to_vec();
                let mut want = expected.instance.requirements().to_vec();
                got.iter_mut().for_each(|r| r.sort_unstable());
                want.iter_mut().for_each(|r| r.sort_unstable());
                p.instance.tier_counts() == expected.instance.tier_counts() && got == want
            };
            if !same_multisets {
                return Err(Error::InvalidInput(
                    "street does not park this instance under the exact-count rules".into(),
                ));
            }
            w
        }
        Repr::Syt => {
            if sink.side() != Side::Independent {
                return Err(Error::InvalidInput(
                    "tableaux pair with the independent-sink word family".into(),
                ));
            }
            let t: StandardYoungTableau = parse_json("tableau", payload)?;
            motzkin::dh_from_syt(&t)?
        }
    };
    check_word_dimensions(&word, m, n, sink)?;

    let result = match to {
        Repr::Word => Value::String(word.to_string()),
        Repr::Config => {
            let rep = match sink.side() {
                Side::Clique => f_map(&word),
                Side::Independent => g_map(&word)?,
            };
            to_value(&rep)
        }
        Repr::Necklace => to_value(&necklace_from_motzkin(&word)),
        Repr::Parking => to_value(&parking_view(&word, m, sink)?),
        Repr::Syt => {
            if sink.side() != Side::Independent {
                return Err(Error::InvalidInput(
                    "tableaux pair with the independent-sink word family".into(),
                ));
            }
            to_value(&motzkin::syt_from_dh(&word)?)
        }
    };
    Ok((vec![envelope(result)], 0))
}

fn cmd_check(
    kind: CheckKind,
    m: Option<usize>,
    n: Option<usize>,
    sink: SinkArg,
    payload: &str,
    _budget: u64,
) -> Result<(Vec<Value>, i32), Error> {
    match kind {
        CheckKind::Config => {
            let (m, n) = match (m, n) {
                (Some(m), Some(n)) => (m, n),
                _ => {
                    return Err(Error::InvalidInput(
                        "checking a configuration needs --m and --n".into(),
                    ))
                }
            };
            let g = sink.graph(m, n)?;
            let c: Configuration = parse_json("configuration", payload)?;
            let classification = classify(&g, &c)?;
            let certificate = sandpile::burning_certificate(&g, &c)?;
            let mut record = json!({
                "command": "check",
                "kind": "config",
                "m": m,
                "n": n,
                "sink": sink.name(),
                "recurrent": classification.is_recurrent(),
            });
            let obj = record.as_object_mut().expect("object");
            match classification {
                Classification::Recurrent(w) => {
                    obj.insert("word".into(), Value::String(w.to_string()));
                    let cert = certificate.expect("burning agrees with the word construction");
                    let names: Vec<String> = cert.order.iter().map(|v| v.to_string()).collect();
                    obj.insert("certificate".into(), to_value(&names));
                    Ok((vec![record], 0))
                }
                Classification::NotRecurrent(reason) => {
                    debug_assert!(certificate.is_none());
                    obj.insert("reason".into(), to_value(&reason));
                    Ok((vec![record], 1))
                }
            }
        }
        CheckKind::Word => {
            let record = match MotzkinWord::from_str(payload.trim()) {
                Ok(w) => json!({
                    "command": "check",
                    "kind": "word",
                    "motzkin": true,
                    "dh": w.is_dh(),
                    "u": w.u_count(),
                    "d": w.d_count(),
                    "h": w.h_count(),
                }),
                Err(e) => json!({
                    "command": "check",
                    "kind": "word",
                    "motzkin": false,
                    "reason": e.to_string(),
                }),
            };
            let ok = record["motzkin"].as_bool() == Some(true);
            Ok((vec![record], if ok { 0 } else { 1 }))
        }
        CheckKind::Parking => {
            let p: TieredParkingInstance = parse_json("parking instance", payload)?;
            let closed = parking::is_tiered_pf_literal(&p);
            let searched = parking::is_tiered_pf_literal_backtracking(&p);
            debug_assert_eq!(closed.is_some(), searched.is_some());
            let mut record = json!({
                "command": "check",
                "kind": "parking",
                "feasible": closed.is_some(),
                "implementations_agree": closed.is_some() == searched.is_some(),
            });
            if let Some(street) = closed {
                record
                    .as_object_mut()
                    .expect("object")
                    .insert("street".into(), to_value(&street));
                Ok((vec![record], 0))
            } else {
                Ok((vec![record], 1))
            }
        }
    }
}

fn cmd_count(m: usize, n: usize) -> Result<(Vec<Value>, i32), Error> {
    SplitGraph::clique_sink(m, n)?;
    let record = json!({
        "command": "count",
        "m": m,
        "n": n,
        "recurrent": prufer::count_spanning_trees(m, n).to_string(),
        "spanning_trees": prufer::count_spanning_trees(m, n).to_string(),
        "clique_sink_words": motzkin::count_motzkin(m - 1, n).to_string(),
        "independent_sink_words": motzkin::count_dh(m, n - 1).to_string(),
        "necklaces": motzkin::count_motzkin(m - 1, n).to_string(),
    });
    Ok((vec![record], 0))
}

fn cmd_tree_encode(m: usize, n: usize, payload: &str) -> Result<(Vec<Value>, i32), Error> {
    let tree: SpanningTree = parse_json("tree", payload)?;
    if (tree.m(), tree.n()) != (m, n) {
        return Err(Error::InvalidInput(format!(
            "tree is on S({},{}), flags say S({m},{n})",
            tree.m(),
            tree.n()
        )));
    }
    let pair = prufer::encode(&tree);
    let record = json!({
        "command": "tree-encode",
        "m": m,
        "n": n,
        "result": to_value(&pair),
    });
    Ok((vec![record], 0))
}

fn cmd_tree_decode(m: usize, n: usize, payload: &str) -> Result<(Vec<Value>, i32), Error> {
    let pair: PruferPair = parse_json("code pair", payload)?;
    let tree = prufer::decode(m, n, &pair)?;
    let record = json!({
        "command": "tree-decode",
        "m": m,
        "n": n,
        "result": to_value(&tree),
    });
    Ok((vec![record], 0))
}

fn cmd_verify(
    m_max: usize,
    n_max: usize,
    budget: u64,
    seed: u64,
    inject_failure: bool,
) -> Result<(Vec<Value>, i32), Error> {
    let opts = VerifyOptions { m_max, n_max, budget, seed, inject_failure };
    let outcomes = verify::run_suite(&opts);
    let mut records: Vec<Value> = outcomes.iter().map(to_value).collect();
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    records.push(json!({
        "command": "verify",
        "m_max": m_max,
        "n_max": n_max,
        "seed": seed,
        "checks": outcomes.len(),
        "failed": failed,
        "all_passed": failed == 0,
    }));
    Ok((records, if failed == 0 { 0 } else { 1 }))
}
