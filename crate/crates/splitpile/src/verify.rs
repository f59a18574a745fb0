//! Cross-validation harness: runs every identity the crate advertises over
//! a sweep of small graphs and reports one named pass/fail outcome per
//! check.  This is what the `verify` subcommand and the
//! `verify_identities` example execute.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bijections::{self, classify, f_inverse, f_map, g_inverse, g_map, Classification};
use crate::error::Error;
use crate::motzkin::{self, count_dh, count_motzkin, count_syt_hook, MotzkinWord};
use crate::necklace::{enumerate_necklaces, motzkin_from_necklace, necklace_from_motzkin};
use crate::parking;
use crate::prufer;
use crate::sandpile::{self, Configuration, Odometer};
use crate::split_graph::{Side, SplitGraph, VertexId};

/// Sweep parameters for the identity suite.
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Largest clique part, inclusive.
    pub m_max: usize,
    /// Largest independent part, inclusive.
    pub n_max: usize,
    /// Enumeration budget forwarded to every exhaustive step.
    pub budget: u64,
    /// Seed for the randomized checks (abelian replay, literal parking).
    pub seed: u64,
    /// Deliberately corrupt one expected count so the failure path is
    /// exercised end to end.
    pub inject_failure: bool,
}

impl Default for VerifyOptions {
    fn default() -> VerifyOptions {
        VerifyOptions {
            m_max: 3,
            n_max: 3,
            budget: crate::DEFAULT_BUDGET,
            seed: 0,
            inject_failure: false,
        }
    }
}

/// Result of one named check, aggregated over all cells in the sweep.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CheckOutcome {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

/// Every graph in the sweep: both sink choices for all
/// `1 <= m <= m_max`, `1 <= n <= n_max`.
fn cells(opts: &VerifyOptions) -> Vec<SplitGraph> {
    let mut out = Vec::new();
    for m in 1..=opts.m_max {
        for n in 1..=opts.n_max {
            out.push(SplitGraph::clique_sink(m, n).expect("m, n >= 1"));
            out.push(SplitGraph::independent_sink(m, n).expect("m, n >= 1"));
        }
    }
    out
}

fn cell_name(g: &SplitGraph) -> String {
    format!("S({},{})/{:?}", g.m(), g.n(), g.sink().side).to_lowercase()
}

/// All stable configurations of `g` in lexicographic slot order.
fn stable_configurations(g: &SplitGraph, budget: u64) -> Result<Vec<Configuration>, Error> {
    let (cl, ind) = g.part_sizes();
    let clique_base = (g.m() + g.n() - 1) as u128;
    let ind_base = g.m() as u128;
    let total = clique_base
        .checked_pow(cl as u32)
        .and_then(|x| ind_base.checked_pow(ind as u32).and_then(|y| x.checked_mul(y)))
        .unwrap_or(u128::MAX);
    if total > budget as u128 {
        return Err(Error::BudgetExceeded { needed: total, budget });
    }
    let mut out = Vec::with_capacity(total as usize);
    let mut heights = vec![0u64; cl + ind];
    loop {
        out.push(Configuration::new(heights[..cl].to_vec(), heights[cl..].to_vec()));
        let mut slot = cl + ind;
        let mut advanced = false;
        while slot > 0 {
            slot -= 1;
            let max = if slot < cl { clique_base as u64 - 1 } else { ind_base as u64 - 1 };
            if heights[slot] < max {
                heights[slot] += 1;
                for later in heights.iter_mut().skip(slot + 1) {
                    *later = 0;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            return Ok(out);
        }
    }
}

fn expected_recurrent_count(m: usize, n: usize) -> BigUint {
    prufer::count_spanning_trees(m, n)
}

/// Word parameters `(u, h)` feeding the bijection for this sink choice.
fn word_parameters(g: &SplitGraph) -> (usize, usize) {
    match g.sink().side {
        Side::Clique => (g.m() - 1, g.n()),
        Side::Independent => (g.m(), g.n() - 1),
    }
}

type CheckResult = Result<String, String>;

fn outcome(name: &str, result: CheckResult) -> CheckOutcome {
    match result {
        Ok(detail) => CheckOutcome { check: name.into(), passed: true, detail },
        Err(detail) => CheckOutcome { check: name.into(), passed: false, detail },
    }
}

/// Run the whole suite.  Outcomes come back in a fixed order; the run is
/// deterministic for fixed options.
pub fn run_suite(opts: &VerifyOptions) -> Vec<CheckOutcome> {
    vec![
        outcome("recurrent-count-matches-tree-formula", recurrent_counts(opts)),
        outcome("orbit-decomposition-matches-recurrent-count", orbit_decomposition(opts)),
        outcome("word-image-equals-brute-force", image_equals_brute(opts)),
        outcome("word-classification-agrees-with-burning", classification_vs_burning(opts)),
        outcome("word-maps-roundtrip", word_roundtrips(opts)),
        outcome("word-counts-match-closed-forms", word_counts(opts)),
        outcome("tableau-roundtrip", tableau_roundtrip(opts)),
        outcome("necklace-roundtrip-and-count", necklace_checks(opts)),
        outcome("tree-codes-roundtrip-and-count", tree_checks(opts)),
        outcome("burning-certificate-replay", certificate_replay(opts)),
        outcome("parking-strict-matches-burning", parking_vs_burning(opts)),
        outcome("parking-literal-implementations-agree", parking_literal_agreement(opts)),
        outcome("stabilization-is-order-independent", abelian_replay(opts)),
    ]
}

pub fn all_passed(outcomes: &[CheckOutcome]) -> bool {
    outcomes.iter().all(|o| o.passed)
}

fn fmt_err(cell: &str, e: &Error) -> String {
    format!("{cell}: {e}")
}

fn recurrent_counts(opts: &VerifyOptions) -> CheckResult {
    let mut configs = 0usize;
    for g in cells(opts) {
        let cell = cell_name(&g);
        let brute = sandpile::all_recurrent_brute(&g, opts.budget)
            .map_err(|e| fmt_err(&cell, &e))?;
        let mut expected = expected_recurrent_count(g.m(), g.n());
        if opts.inject_failure {
            expected += 1u32;
        }
        if BigUint::from(brute.len()) != expected {
            return Err(format!("{cell}: expected {expected} recurrent, found {}", brute.len()));
        }
        configs += brute.len();
    }
    Ok(format!("{} cells, {configs} recurrent configurations", cells(opts).len()))
}

fn orbit_decomposition(opts: &VerifyOptions) -> CheckResult {
    for g in cells(opts) {
        let cell = cell_name(&g);
        let reps = bijections::decreasing_recurrent(&g, opts.budget)
            .map_err(|e| fmt_err(&cell, &e))?;
        let (u, h) = word_parameters(&g);
        let expected_reps = match g.sink().side {
            Side::Clique => count_motzkin(u, h),
            Side::Independent => count_dh(u, h),
        };
        if BigUint::from(reps.len()) != expected_reps {
            return Err(format!("{cell}: {} orbit representatives, expected {expected_reps}", reps.len()));
        }
        let total: BigUint = reps.iter().map(|r| r.orbit_size()).sum();
        let expected_total = expected_recurrent_count(g.m(), g.n());
        if total != expected_total {
            return Err(format!("{cell}: orbits cover {total} configurations, expected {expected_total}"));
        }
    }
    Ok(format!("{} cells", cells(opts).len()))
}

fn image_equals_brute(opts: &VerifyOptions) -> CheckResult {
    for g in cells(opts) {
        let cell = cell_name(&g);
        let image: BTreeSet<Configuration> = bijections::decreasing_recurrent(&g, opts.budget)
            .map_err(|e| fmt_err(&cell, &e))?
            .into_iter()
            .map(|r| r.into_configuration())
            .collect();
        let brute: BTreeSet<Configuration> = sandpile::all_recurrent_brute(&g, opts.budget)
            .map_err(|e| fmt_err(&cell, &e))?
            .into_iter()
            .map(|c| c.sorted_desc())
            .collect();
        if image != brute {
            return Err(format!("{cell}: word image and brute-forced decreasing recurrent sets differ"));
        }
    }
    Ok(format!("{} cells", cells(opts).len()))
}

fn classification_vs_burning(opts: &VerifyOptions) -> CheckResult {
    let mut configs = 0usize;
    for g in cells(opts) {
        let cell = cell_name(&g);
        for c in stable_configurations(&g, opts.budget).map_err(|e| fmt_err(&cell, &e))? {
            let by_word = classify(&g, &c).map_err(|e| fmt_err(&cell, &e))?.is_recurrent();
            let by_fire = sandpile::is_recurrent(&g, &c).map_err(|e| fmt_err(&cell, &e))?;
            if by_word != by_fire {
                return Err(format!(
                    "{cell}: {} classified recurrent={by_word} but burning says {by_fire}",
                    c.display_with(&g)
                ));
            }
            configs += 1;
        }
    }
    Ok(format!("{configs} stable configurations"))
}

fn word_roundtrips(opts: &VerifyOptions) -> CheckResult {
    let mut words = 0usize;
    for g in cells(opts) {
        let cell = cell_name(&g);
        let (u, h) = word_parameters(&g);
        let all = motzkin::generate_all(u, h, opts.budget).map_err(|e| fmt_err(&cell, &e))?;
        for w in all {
            let back = match g.sink().side {
                Side::Clique => {
                    let c = f_map(&w);
                    f_inverse(g.m(), g.n(), c.as_configuration())
                }
                Side::Independent => {
                    if !w.is_dh() {
                        continue;
                    }
                    let c = g_map(&w).map_err(|e| fmt_err(&cell, &e))?;
                    g_inverse(g.m(), g.n(), c.as_configuration())
                }
            }
            .map_err(|e| fmt_err(&cell, &e))?;
            match back {
                Classification::Recurrent(w2) if w2 == w => words += 1,
                other => return Err(format!("{cell}: word {w} came back as {other:?}")),
            }
        }
    }
    Ok(format!("{words} words round-tripped"))
}

fn word_counts(opts: &VerifyOptions) -> CheckResult {
    for g in cells(opts) {
        let cell = cell_name(&g);
        let (u, h) = word_parameters(&g);
        let all = motzkin::generate_all(u, h, opts.budget).map_err(|e| fmt_err(&cell, &e))?;
        if BigUint::from(all.len()) != count_motzkin(u, h) {
            return Err(format!("{cell}: generated {} words, formula says {}", all.len(), count_motzkin(u, h)));
        }
        if g.sink().side == Side::Independent {
            let dh = all.iter().filter(|w| w.is_dh()).count();
            if BigUint::from(dh) != count_dh(u, h) || count_dh(u, h) != count_syt_hook(u, h) {
                return Err(format!(
                    "{cell}: {dh} filtered words vs count {} vs hook {}",
                    count_dh(u, h),
                    count_syt_hook(u, h)
                ));
            }
        }
    }
    Ok(format!("{} cells", cells(opts).len()))
}

fn tableau_roundtrip(opts: &VerifyOptions) -> CheckResult {
    let mut words = 0usize;
    for m in 1..=opts.m_max {
        for n in 1..=opts.n_max {
            let all = motzkin::generate_all(m, n - 1, opts.budget)
                .map_err(|e| fmt_err(&format!("S({m},{n})"), &e))?;
            for w in all.into_iter().filter(|w| w.is_dh()) {
                let t = syt_err(motzkin::syt_from_dh(&w), &w)?;
                let back = syt_err(motzkin::dh_from_syt(&t), &w)?;
                if back != w {
                    return Err(format!("tableau of {w} decoded to {back}"));
                }
                words += 1;
            }
        }
    }
    return Ok(format!("{words} words round-tripped through tableaux"));

    fn syt_err<T>(r: Result<T, Error>, w: &MotzkinWord) -> Result<T, String> {
        r.map_err(|e| format!("word {w}: {e}"))
    }
}

fn necklace_checks(opts: &VerifyOptions) -> CheckResult {
    let mut total = 0usize;
    for m in 1..=opts.m_max {
        for n in 1..=opts.n_max {
            let words = motzkin::generate_all(m - 1, n, opts.budget)
                .map_err(|e| fmt_err(&format!("S({m},{n})"), &e))?;
            for w in &words {
                let x = necklace_from_motzkin(w);
                let back = motzkin_from_necklace(&x).map_err(|e| format!("word {w}: {e}"))?;
                if back != *w {
                    return Err(format!("necklace of {w} cut back to {back}"));
                }
            }
            let necklaces = enumerate_necklaces(m, n, opts.budget)
                .map_err(|e| fmt_err(&format!("S({m},{n})"), &e))?;
            if necklaces.len() != words.len() {
                return Err(format!(
                    "S({m},{n}): {} necklaces from {} words",
                    necklaces.len(),
                    words.len()
                ));
            }
            total += words.len();
        }
    }
    Ok(format!("{total} necklaces"))
}

fn tree_checks(opts: &VerifyOptions) -> CheckResult {
    let mut trees = 0usize;
    for m in 1..=opts.m_max {
        for n in 1..=opts.n_max {
            let cell = format!("S({m},{n})");
            let pairs = prufer::all_prufer_pairs(m, n, opts.budget)
                .map_err(|e| fmt_err(&cell, &e))?;
            if BigUint::from(pairs.len()) != prufer::count_spanning_trees(m, n) {
                return Err(format!("{cell}: {} code pairs, formula {}", pairs.len(), prufer::count_spanning_trees(m, n)));
            }
            for pair in &pairs {
                let t = prufer::decode(m, n, pair).map_err(|e| fmt_err(&cell, &e))?;
                let re = prufer::encode(&t);
                if re != *pair {
                    return Err(format!("{cell}: pair {pair:?} decoded to a tree encoding as {re:?}"));
                }
            }
            let brute = prufer::brute_spanning_trees(m, n, opts.budget)
                .map_err(|e| fmt_err(&cell, &e))?;
            if brute.len() != pairs.len() {
                return Err(format!("{cell}: {} brute trees vs {} code pairs", brute.len(), pairs.len()));
            }
            trees += pairs.len();
        }
    }
    Ok(format!("{trees} trees round-tripped"))
}

fn certificate_replay(opts: &VerifyOptions) -> CheckResult {
    let mut recurrent = 0usize;
    for g in cells(opts) {
        let cell = cell_name(&g);
        for c in stable_configurations(&g, opts.budget).map_err(|e| fmt_err(&cell, &e))? {
            match sandpile::burning_certificate(&g, &c).map_err(|e| fmt_err(&cell, &e))? {
                Some(cert) => {
                    if !cert.verify(&g, &c).map_err(|e| fmt_err(&cell, &e))? {
                        return Err(format!("{cell}: certificate for {} failed replay", c.display_with(&g)));
                    }
                    recurrent += 1;
                }
                None => {
                    if sandpile::is_recurrent(&g, &c).map_err(|e| fmt_err(&cell, &e))? {
                        return Err(format!("{cell}: no certificate for recurrent {}", c.display_with(&g)));
                    }
                }
            }
        }
    }
    Ok(format!("{recurrent} certificates replayed"))
}

fn parking_vs_burning(opts: &VerifyOptions) -> CheckResult {
    let mut configs = 0usize;
    for g in cells(opts) {
        let cell = cell_name(&g);
        for c in stable_configurations(&g, opts.budget).map_err(|e| fmt_err(&cell, &e))? {
            let a_plus_one: Vec<u64> = c.clique.iter().map(|&a| a + 1).collect();
            let street = match g.sink().side {
                Side::Clique => {
                    parking::is_recurrent_via_parking_clique(g.m(), g.n(), &c.independent, &a_plus_one)
                }
                Side::Independent => parking::is_recurrent_via_parking_independent(
                    g.m(),
                    g.n(),
                    &c.independent,
                    &a_plus_one,
                ),
            }
            .map_err(|e| fmt_err(&cell, &e))?;
            let burning = sandpile::is_recurrent(&g, &c).map_err(|e| fmt_err(&cell, &e))?;
            if street != burning {
                return Err(format!(
                    "{cell}: parking says {street}, burning says {burning} for {}",
                    c.display_with(&g)
                ));
            }
            configs += 1;
        }
    }
    Ok(format!("{configs} stable configurations"))
}

fn parking_literal_agreement(opts: &VerifyOptions) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x7061726b);
    let rounds = 300;
    for round in 0..rounds {
        let k = rng.gen_range(1..=4usize);
        let tiers: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=5usize)).collect();
        let reqs: Vec<Vec<u64>> = tiers
            .iter()
            .skip(1)
            .map(|&c| (0..c).map(|_| rng.gen_range(0..=12u64)).collect())
            .collect();
        let p = parking::TieredParkingInstance::new(tiers, reqs)
            .map_err(|e| format!("round {round}: {e}"))?;
        let closed = parking::is_tiered_pf_literal(&p);
        let searched = parking::is_tiered_pf_literal_backtracking(&p);
        if closed.is_some() != searched.is_some() {
            return Err(format!(
                "round {round}: closed form says {}, search says {} for {p:?}",
                closed.is_some(),
                searched.is_some()
            ));
        }
        for street in [closed, searched].into_iter().flatten() {
            if !parking::check_street_literal(&p, &street) {
                return Err(format!("round {round}: invalid witness for {p:?}"));
            }
        }
    }
    Ok(format!("{rounds} random instances"))
}

/// Stabilize by toppling one random unstable vertex at a time; the library
/// stabilizer batches topples greedily, so agreement here exercises the
/// order-independence of the dynamics.
fn stabilize_one_at_a_time(
    g: &SplitGraph,
    c: &Configuration,
    rng: &mut ChaCha8Rng,
) -> (Configuration, Odometer) {
    let idx = |v: VertexId| g.global_index(v).expect("vertex of this graph");
    let deg = |v: VertexId| g.degree(v).expect("vertex of this graph") as u64;
    let mut heights: Vec<u64> = vec![0; g.m() + g.n()];
    let mut fired: Vec<u64> = vec![0; g.m() + g.n()];
    for (v, h) in c.slots(g) {
        heights[idx(v)] = h;
    }
    loop {
        let unstable: Vec<VertexId> = g
            .non_sink_vertices()
            .filter(|&v| heights[idx(v)] >= deg(v))
            .collect();
        if unstable.is_empty() {
            break;
        }
        let v = unstable[rng.gen_range(0..unstable.len())];
        heights[idx(v)] -= deg(v);
        fired[idx(v)] += 1;
        for u in g.neighbors(v).expect("vertex of this graph") {
            if u != g.sink() {
                heights[idx(u)] += 1;
            }
        }
    }
    let collect = |xs: &[u64]| -> (Vec<u64>, Vec<u64>) {
        let mut clique = Vec::new();
        let mut independent = Vec::new();
        for v in g.non_sink_vertices() {
            match v.side {
                Side::Clique => clique.push(xs[idx(v)]),
                Side::Independent => independent.push(xs[idx(v)]),
            }
        }
        (clique, independent)
    };
    let (hc, hi) = collect(&heights);
    let (fc, fi) = collect(&fired);
    (Configuration::new(hc, hi), Odometer { clique: fc, independent: fi })
}

fn abelian_replay(opts: &VerifyOptions) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x6162656c);
    let rounds_per_cell = 25;
    let mut rounds = 0usize;
    for g in cells(opts) {
        let cell = cell_name(&g);
        let (cl, ind) = g.part_sizes();
        for _ in 0..rounds_per_cell {
            let clique: Vec<u64> = (0..cl)
                .map(|_| rng.gen_range(0..2 * (g.m() + g.n()) as u64))
                .collect();
            let independent: Vec<u64> =
                (0..ind).map(|_| rng.gen_range(0..2 * (g.m() + g.n()) as u64)).collect();
            let c = Configuration::new(clique, independent);
            let (stable, odo) = sandpile::stabilize(&g, &c).map_err(|e| fmt_err(&cell, &e))?;
            let (stable2, odo2) = stabilize_one_at_a_time(&g, &c, &mut rng);
            if stable != stable2 || odo != odo2 {
                return Err(format!(
                    "{cell}: random-order stabilization of {} diverged",
                    c.display_with(&g)
                ));
            }
            rounds += 1;
        }
    }
    Ok(format!("{rounds} random stabilizations"))
}
