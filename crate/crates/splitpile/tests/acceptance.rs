//! End-to-end acceptance checks.  Runs without the capturing harness and
//! prints exactly one PASS/FAIL line per criterion; exits nonzero if any
//! criterion fails.  Expected values come from independent oracles
//! implemented locally (binomial products, a matrix-tree determinant, the
//! Catalan recurrence, randomized toppling) rather than from the library's
//! own closed forms wherever the point is to cross-check them.

use std::collections::BTreeSet;
use std::panic::catch_unwind;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use splitpile::bijections::{decreasing_recurrent, f_inverse, f_map, g_inverse, g_map, Classification};
use splitpile::motzkin::{
    count_dh, count_syt_hook, dh_from_syt, generate_all, is_motzkin, syt_from_dh, Letter,
    MotzkinWord,
};
use splitpile::necklace::{enumerate_necklaces, motzkin_from_necklace, necklace_from_motzkin};
use splitpile::parking::{
    check_street_literal, is_recurrent_via_parking_clique, is_recurrent_via_parking_independent,
    is_tiered_pf_literal, is_tiered_pf_literal_backtracking, TieredParkingInstance,
};
use splitpile::prufer::{all_prufer_pairs, brute_spanning_trees, decode, encode, SpanningTree};
use splitpile::sandpile::{all_recurrent_brute, is_recurrent, stabilize, Configuration, Odometer};
use splitpile::split_graph::{Side, SplitGraph, VertexId};

const BUDGET: u64 = 10_000_000;

fn main() {
    let criteria: Vec<(&str, &str, fn())> = vec![
        ("criterion-1", "worked examples reproduce bit-exactly", criterion_1),
        ("criterion-2", "recurrent counts match (m+n)^(m-1)*m^(n-1), m+n <= 7, both sinks", criterion_2),
        ("criterion-3", "word-map images, counts and roundtrips, m+n <= 7, both sinks", criterion_3),
        ("criterion-4", "DH counts match hook lengths and enumeration, m+h <= 9", criterion_4),
        ("criterion-5", "necklace roundtrip and unique cut on M(m-1,n), m+n <= 8", criterion_5),
        ("criterion-6", "tree codes roundtrip; S(5,4) count matches determinant oracle", criterion_6),
        ("criterion-7", "parking: strict matches burning; literal closed form matches search", criterion_7),
        ("criterion-8", "abelian property under randomized toppling orders, m+n <= 6", criterion_8),
        ("criterion-9", "independent-sink word count on S(m,1) is the m-th Catalan number", criterion_9),
    ];

    let default_hook = std::panic::take_hook();
    std::panic::set_hook(Box::new(|_| {}));
    let mut failures = 0usize;
    for (name, desc, f) in criteria {
        match catch_unwind(f) {
            Ok(()) => println!("PASS {name}: {desc}"),
            Err(payload) => {
                failures += 1;
                let msg = payload
                    .downcast_ref::<String>()
                    .map(String::as_str)
                    .or_else(|| payload.downcast_ref::<&str>().copied())
                    .unwrap_or("panic without message");
                println!("FAIL {name}: {desc} -- {msg}");
            }
        }
    }
    std::panic::set_hook(default_hook);
    if failures > 0 {
        std::process::exit(1);
    }
}

// ---------- local oracles ----------

fn binom(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    for i in 0..k {
        num *= n - i;
        den *= i + 1;
    }
    let q = &num / &den;
    assert_eq!(&q * &den, num, "binomial must divide exactly");
    q
}

fn tree_count_formula(m: u64, n: u64) -> BigUint {
    BigUint::from(m + n).pow(m as u32 - 1) * BigUint::from(m).pow(n as u32 - 1)
}

/// Exact spanning-tree count via the matrix-tree theorem: determinant of
/// the Laplacian with one row and column removed, computed with
/// fraction-free (Bareiss) elimination over i128.
fn kirchhoff_tree_count(m: usize, n: usize) -> i128 {
    let v = m + n;
    let mut lap = vec![vec![0i128; v]; v];
    let adjacent = |a: usize, b: usize| -> bool {
        if a == b {
            false
        } else {
            a < m || b < m // at least one endpoint in the clique
        }
    };
    for (a, row) in lap.iter_mut().enumerate() {
        for b in 0..v {
            if adjacent(a, b) {
                row[b] = -1;
                row[a] += 1;
            }
        }
    }
    let s = v - 1;
    let mut mat: Vec<Vec<i128>> = lap.into_iter().take(s).map(|row| row[..s].to_vec()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..s {
        if mat[k][k] == 0 {
            let pivot = (k + 1..s).find(|&r| mat[r][k] != 0).expect("nonsingular");
            mat.swap(k, pivot);
            sign = -sign;
        }
        for i in k + 1..s {
            for j in k + 1..s {
                mat[i][j] = (mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j]) / prev;
            }
            mat[i][k] = 0;
        }
        prev = mat[k][k];
    }
    sign * mat[s - 1][s - 1]
}

fn both_sinks(m: usize, n: usize) -> [SplitGraph; 2] {
    [
        SplitGraph::clique_sink(m, n).expect("valid shape"),
        SplitGraph::independent_sink(m, n).expect("valid shape"),
    ]
}

fn shapes_with(total_max: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for m in 1..=total_max - 1 {
        for n in 1..=total_max - m {
            out.push((m, n));
        }
    }
    out
}

/// Every stable configuration of `g`, heights in lexicographic order.
fn stable_configurations(g: &SplitGraph) -> Vec<Configuration> {
    let (cl, ind) = g.part_sizes();
    let clique_base = (g.m() + g.n() - 1) as u64;
    let ind_base = g.m() as u64;
    let mut out = Vec::new();
    let mut heights = vec![0u64; cl + ind];
    loop {
        out.push(Configuration::new(heights[..cl].to_vec(), heights[cl..].to_vec()));
        let mut slot = cl + ind;
        loop {
            if slot == 0 {
                return out;
            }
            slot -= 1;
            let max = if slot < cl { clique_base - 1 } else { ind_base - 1 };
            if heights[slot] < max {
                heights[slot] += 1;
                heights[slot + 1..].iter_mut().for_each(|h| *h = 0);
                break;
            }
            heights[slot] = 0;
        }
    }
}

// ---------- criteria ----------

fn criterion_1() {
    let w = MotzkinWord::from_str("HUHHUDHUDD").unwrap();
    let c = f_map(&w);
    assert_eq!(
        c.as_configuration(),
        &Configuration::new(vec![5, 3, 1], vec![3, 3, 3, 2]),
        "clique-sink worked example"
    );
    match f_inverse(4, 4, c.as_configuration()).unwrap() {
        Classification::Recurrent(back) => assert_eq!(back, w),
        other => panic!("worked example not recurrent: {other:?}"),
    }

    let w = MotzkinWord::from_str("UUDHUDHUDDH").unwrap();
    let c = g_map(&w).unwrap();
    assert_eq!(
        c.as_configuration(),
        &Configuration::new(vec![6, 6, 4, 2], vec![3, 2, 0]),
        "independent-sink worked example"
    );

    let tree = SpanningTree::new(
        5,
        4,
        vec![(1, 5), (2, 7), (6, 3), (8, 5), (5, 3), (3, 7), (7, 4), (4, 9)],
    )
    .unwrap();
    let pair = encode(&tree);
    assert_eq!(pair.f_word, vec![5, 7, 3, 7], "clique deletion word");
    assert_eq!(pair.g_word, vec![3, 5, 4], "independent deletion word");
    assert_eq!(decode(5, 4, &pair).unwrap(), tree, "decoding the sample pair");

    let t = syt_from_dh(&w).unwrap();
    assert_eq!(t.shape(), &[4, 4, 1, 1, 1]);
    assert_eq!(
        t.rows(),
        &[vec![1, 2, 5, 8], vec![3, 6, 9, 10], vec![4], vec![7], vec![11]],
        "tableau of the worked DH word"
    );
    assert_eq!(dh_from_syt(&t).unwrap(), w);
}

fn criterion_2() {
    for (m, n) in shapes_with(7) {
        for g in both_sinks(m, n) {
            let found = all_recurrent_brute(&g, BUDGET).unwrap().len();
            let expected = tree_count_formula(m as u64, n as u64);
            assert_eq!(
                BigUint::from(found),
                expected,
                "S({m},{n}) sink {}: {found} recurrent",
                g.sink()
            );
        }
    }
}

fn criterion_3() {
    for (m, n) in shapes_with(7) {
        for g in both_sinks(m, n) {
            let image: Vec<Configuration> = decreasing_recurrent(&g, BUDGET)
                .unwrap()
                .into_iter()
                .map(|r| r.into_configuration())
                .collect();
            let (mu, nu) = (m as u64, n as u64);
            let expected_times_m = match g.sink().side {
                Side::Clique => binom(2 * mu - 2, mu - 1) * binom(2 * mu - 2 + nu, nu),
                Side::Independent => binom(2 * mu + nu - 1, mu - 1) * binom(mu + nu - 2, mu - 1),
            };
            assert_eq!(
                BigUint::from(image.len()) * mu,
                expected_times_m,
                "S({m},{n}) sink {}: image size {}",
                g.sink(),
                image.len()
            );

            let brute: BTreeSet<Configuration> = all_recurrent_brute(&g, BUDGET)
                .unwrap()
                .into_iter()
                .map(|c| c.sorted_desc())
                .collect();
            let image_set: BTreeSet<Configuration> = image.into_iter().collect();
            assert_eq!(image_set, brute, "S({m},{n}) sink {}: image vs brute force", g.sink());

            // Roundtrip every word of the family.
            match g.sink().side {
                Side::Clique => {
                    for w in generate_all(m - 1, n, BUDGET).unwrap() {
                        let c = f_map(&w);
                        match f_inverse(m, n, c.as_configuration()).unwrap() {
                            Classification::Recurrent(back) => assert_eq!(back, w),
                            other => panic!("f roundtrip of {w}: {other:?}"),
                        }
                    }
                }
                Side::Independent => {
                    for w in generate_all(m, n - 1, BUDGET).unwrap() {
                        if !w.is_dh() {
                            continue;
                        }
                        let c = g_map(&w).unwrap();
                        match g_inverse(m, n, c.as_configuration()).unwrap() {
                            Classification::Recurrent(back) => assert_eq!(back, w),
                            other => panic!("g roundtrip of {w}: {other:?}"),
                        }
                    }
                }
            }
        }
    }
}

fn criterion_4() {
    for m in 1..=9usize {
        for h in 0..=9 - m {
            let words = generate_all(m, h, BUDGET).unwrap();
            let dh: Vec<&MotzkinWord> = words.iter().filter(|w| w.is_dh()).collect();
            let count = BigUint::from(dh.len());
            assert_eq!(count, count_dh(m, h), "count_dh({m},{h})");
            assert_eq!(count, count_syt_hook(m, h), "hook count ({m},{h})");
            let product = binom(2 * m as u64 + h as u64, m as u64 - 1)
                * binom(m as u64 + h as u64 - 1, m as u64 - 1);
            assert_eq!(count * m as u64, product, "binomial product ({m},{h})");
            for w in dh {
                let t = syt_from_dh(w).unwrap();
                assert_eq!(&dh_from_syt(&t).unwrap(), w, "tableau roundtrip of {w}");
            }
        }
    }
}

fn criterion_5() {
    for (m, n) in shapes_with(8) {
        let words = generate_all(m - 1, n, BUDGET).unwrap();
        for w in &words {
            let x = necklace_from_motzkin(w);
            // Exactly one rotation is U followed by a Motzkin word, and
            // cutting there recovers the original word.
            let mut cuts = Vec::new();
            for rot in x.rotations() {
                if rot[0] == Letter::U && is_motzkin(&rot[1..]) {
                    cuts.push(rot[1..].to_vec());
                }
            }
            assert_eq!(cuts.len(), 1, "distinguished cut of {w}");
            assert_eq!(cuts[0], w.letters(), "cut of {w} recovers the word");
            assert_eq!(&motzkin_from_necklace(&x).unwrap(), w);
        }
        let necklaces = enumerate_necklaces(m, n, BUDGET).unwrap();
        assert_eq!(necklaces.len(), words.len(), "necklace count for ({m},{n})");
    }
}

fn criterion_6() {
    for (m, n) in shapes_with(7) {
        let trees = brute_spanning_trees(m, n, BUDGET).unwrap();
        assert_eq!(
            BigUint::from(trees.len()),
            tree_count_formula(m as u64, n as u64),
            "S({m},{n}) brute tree count"
        );
        assert_eq!(
            kirchhoff_tree_count(m, n).to_string(),
            tree_count_formula(m as u64, n as u64).to_string(),
            "S({m},{n}) determinant"
        );
        for t in &trees {
            let pair = encode(t);
            assert_eq!(&decode(m, n, &pair).unwrap(), t, "decode(encode) on S({m},{n})");
        }
        for pair in all_prufer_pairs(m, n, BUDGET).unwrap() {
            let t = decode(m, n, &pair).unwrap();
            assert_eq!(encode(&t), pair, "encode(decode) on S({m},{n})");
        }
    }
    assert_eq!(kirchhoff_tree_count(5, 4), 820_125, "S(5,4) determinant oracle");
    assert_eq!(
        BigUint::from(all_prufer_pairs(5, 4, BUDGET).unwrap().len()),
        tree_count_formula(5, 4),
        "S(5,4) code-pair count"
    );
}

fn criterion_7() {
    // Strict semantics vs the burning oracle on every stable configuration.
    for (m, n) in shapes_with(7) {
        for g in both_sinks(m, n) {
            for c in stable_configurations(&g) {
                let a_plus_one: Vec<u64> = c.clique.iter().map(|&a| a + 1).collect();
                let parked = match g.sink().side {
                    Side::Clique => {
                        is_recurrent_via_parking_clique(m, n, &c.independent, &a_plus_one)
                    }
                    Side::Independent => {
                        is_recurrent_via_parking_independent(m, n, &c.independent, &a_plus_one)
                    }
                }
                .unwrap();
                let burned = is_recurrent(&g, &c).unwrap();
                assert_eq!(
                    parked,
                    burned,
                    "S({m},{n}) sink {}: {}",
                    g.sink(),
                    c.display_with(&g)
                );
            }
        }
    }

    // Literal semantics: closed form vs backtracking on every instance
    // with at most 8 cars (requirement multisets with values up to the
    // car total), swept in parallel over tier compositions.
    let comps: Vec<Vec<usize>> = (1..=8).flat_map(compositions).collect();
    let next = AtomicUsize::new(0);
    let scanned = AtomicU64::new(0);
    let problems: Mutex<Vec<String>> = Mutex::new(Vec::new());
    let workers = std::thread::available_parallelism().map_or(4, |p| p.get().min(16));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(comp) = comps.get(i) else { break };
                scanned.fetch_add(sweep_composition(comp, &problems), Ordering::Relaxed);
            });
        }
    });
    let problems = problems.into_inner().unwrap();
    assert!(problems.is_empty(), "literal disagreements: {}", problems.join("; "));
    assert_eq!(scanned.load(Ordering::Relaxed), 63_364_686, "exhaustive sweep size");

    // ...and on 1000 random larger instances.
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE);
    for round in 0..1000 {
        let k = rng.gen_range(2..=5usize);
        let tiers: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=8usize)).collect();
        let reqs: Vec<Vec<u64>> = tiers
            .iter()
            .skip(1)
            .map(|&c| (0..c).map(|_| rng.gen_range(0..=40u64)).collect())
            .collect();
        let p = TieredParkingInstance::new(tiers, reqs).unwrap();
        assert_eq!(
            is_tiered_pf_literal(&p).is_some(),
            is_tiered_pf_literal_backtracking(&p).is_some(),
            "random round {round}: {p:?}"
        );
    }

    // The two worked multi-tier instances are accepted with witnesses
    // that check out.
    let examples = [
        TieredParkingInstance::new(
            vec![4, 5, 4, 3],
            vec![vec![2, 1, 0, 4, 2], vec![8, 2, 1, 2], vec![4, 10, 8]],
        )
        .unwrap(),
        TieredParkingInstance::new(
            vec![9, 12, 9],
            vec![vec![8, 2, 9, 4, 6, 9, 7, 8, 2, 7, 9, 4], vec![18, 2, 14, 6, 21, 13, 7, 13, 3]],
        )
        .unwrap(),
    ];
    for p in &examples {
        let w1 = is_tiered_pf_literal(p).expect("accepted");
        let w2 = is_tiered_pf_literal_backtracking(p).expect("accepted");
        assert!(check_street_literal(p, &w1));
        assert!(check_street_literal(p, &w2));
    }
}

fn compositions(total: usize) -> Vec<Vec<usize>> {
    if total == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=total {
        for mut rest in compositions(total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn multisets(len: usize, max: u64) -> Vec<Vec<u64>> {
    fn rec(len: usize, lo: u64, max: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if len == 0 {
            out.push(prefix.clone());
            return;
        }
        for v in lo..=max {
            prefix.push(v);
            rec(len - 1, v, max, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, 0, max, &mut Vec::new(), &mut out);
    out
}

fn sweep_composition(comp: &[usize], problems: &Mutex<Vec<String>>) -> u64 {
    let max = comp.iter().sum::<usize>() as u64;
    let spaces: Vec<Vec<Vec<u64>>> = comp[1..].iter().map(|&len| multisets(len, max)).collect();
    let mut pick = vec![0usize; spaces.len()];
    let mut count = 0u64;
    loop {
        let reqs: Vec<Vec<u64>> =
            pick.iter().zip(&spaces).map(|(&i, space)| space[i].clone()).collect();
        let p = TieredParkingInstance::new(comp.to_vec(), reqs).expect("valid shape");
        let closed = is_tiered_pf_literal(&p).is_some();
        let searched = is_tiered_pf_literal_backtracking(&p).is_some();
        if closed != searched {
            problems.lock().unwrap().push(format!("{p:?}: closed {closed}, search {searched}"));
            return count;
        }
        count += 1;
        let mut pos = pick.len();
        loop {
            if pos == 0 {
                return count;
            }
            pos -= 1;
            if pick[pos] + 1 < spaces[pos].len() {
                pick[pos] += 1;
                pick[pos + 1..].iter_mut().for_each(|x| *x = 0);
                break;
            }
            pick[pos] = 0;
        }
    }
}

/// Test-local oracle: stabilize by single topples in a random order.
fn stabilize_random_order(
    g: &SplitGraph,
    c: &Configuration,
    rng: &mut ChaCha8Rng,
) -> (Configuration, Odometer) {
    let idx = |v: VertexId| g.global_index(v).unwrap();
    let mut heights = vec![0u64; g.m() + g.n()];
    let mut fired = vec![0u64; g.m() + g.n()];
    for (v, h) in c.slots(g) {
        heights[idx(v)] = h;
    }
    loop {
        let unstable: Vec<VertexId> = g
            .non_sink_vertices()
            .filter(|&v| heights[idx(v)] >= g.degree(v).unwrap() as u64)
            .collect();
        if unstable.is_empty() {
            break;
        }
        let v = unstable[rng.gen_range(0..unstable.len())];
        heights[idx(v)] -= g.degree(v).unwrap() as u64;
        fired[idx(v)] += 1;
        for u in g.neighbors(v).unwrap() {
            if u != g.sink() {
                heights[idx(u)] += 1;
            }
        }
    }
    let split = |xs: &[u64]| {
        let (mut cl, mut ind) = (Vec::new(), Vec::new());
        for v in g.non_sink_vertices() {
            match v.side {
                Side::Clique => cl.push(xs[idx(v)]),
                Side::Independent => ind.push(xs[idx(v)]),
            }
        }
        (cl, ind)
    };
    let (hc, hi) = split(&heights);
    let (fc, fi) = split(&fired);
    (Configuration::new(hc, hi), Odometer { clique: fc, independent: fi })
}

fn criterion_8() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xAB31);
    for (m, n) in shapes_with(6) {
        for g in both_sinks(m, n) {
            let (cl, ind) = g.part_sizes();
            for _ in 0..100 {
                let top = 3 * (m + n) as u64;
                let c = Configuration::new(
                    (0..cl).map(|_| rng.gen_range(0..top)).collect(),
                    (0..ind).map(|_| rng.gen_range(0..top)).collect(),
                );
                let (stable, odometer) = stabilize(&g, &c).unwrap();
                let (stable2, odometer2) = stabilize_random_order(&g, &c, &mut rng);
                assert_eq!(stable, stable2, "S({m},{n}) sink {}: heights", g.sink());
                assert_eq!(odometer, odometer2, "S({m},{n}) sink {}: odometer", g.sink());
            }
        }
    }
}

fn criterion_9() {
    // Catalan numbers from the convolution recurrence, no binomials.
    let mut catalan = vec![BigUint::from(1u32)];
    for k in 0..10 {
        let next: BigUint = (0..=k).map(|i| &catalan[i] * &catalan[k - i]).sum();
        catalan.push(next);
    }
    for (m, cat) in catalan.iter().enumerate().skip(1) {
        assert_eq!(&count_dh(m, 0), cat, "count_dh({m},0) vs Catalan");
        // The same number, counted by generating the words.
        if m <= 8 {
            let dh = generate_all(m, 0, BUDGET).unwrap().into_iter().filter(|w| w.is_dh()).count();
            assert_eq!(&BigUint::from(dh), cat);
        }
    }
}
