//! Tiered parking functions: coloured cars on a one-way street, each car
//! demanding some number of lower-tier cars parked before it.
//!
//! Two distinct semantics live here, deliberately kept apart:
//!
//! * **Literal ("at least") semantics** ([`is_tiered_pf_literal`]): each
//!   tier-`i` car with requirement `p` asks for *at least* `p` cars of
//!   tiers `1..i` somewhere before it.  An arrangement exists exactly when
//!   every requirement is at most the total number of lower-tier cars —
//!   parking the tiers in increasing order always works, and no arrangement
//!   can ever do better.  The closed form and an independent backtracking
//!   search are both provided and cross-checked.
//!
//! * **Strict (exact-count) semantics** ([`parking_witness_clique`],
//!   [`parking_witness_independent`]): three tiers, where each tier-2 car
//!   has *exactly* its required number of tier-1 cars before it, each
//!   tier-3 car has *exactly* its required number of tier-1-or-2 cars
//!   before it, and every street prefix holds at least as many tier-1 as
//!   tier-3 cars.  Reading a street right to left with tier 1 as `D`, tier
//!   2 as `H` and tier 3 as `U` turns these constraints into precisely the
//!   Motzkin conditions, so a strict street for the requirement lists
//!   `(b_1..b_n)` and `(a_1+1..a_{m-1}+1)` exists exactly when the
//!   configuration `(a;b)` is recurrent.  The independent-sink variant adds
//!   the rule that no tier-2 car parks after all of the tier-1 cars (the
//!   mirror of the DH condition).
//!
//! The literal semantics does **not** characterize recurrence: on `S(2,1)`
//! the stable configuration `(0,-;0)` is not recurrent, yet its requirement
//! lists pass the "at least" reading.  That is why both readings are
//! exposed under separate names.

use std::collections::HashSet;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Car counts per tier plus, for every tier above the first, one
/// requirement per car.  Tier-1 cars never carry requirements.
///
/// Serializes as `{"tiers": [4,5,4,3], "requirements": [[2,1,0,4,2],
/// [8,2,1,2], [4,10,8]]}` (one list per tier starting from tier 2).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TieredParkingInstance {
    tiers: Vec<usize>,
    requirements: Vec<Vec<u64>>,
}

#[derive(Deserialize)]
struct InstanceRepr {
    tiers: Vec<usize>,
    requirements: Vec<Vec<u64>>,
}

impl<'de> Deserialize<'de> for TieredParkingInstance {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<TieredParkingInstance, D::Error> {
        let repr = InstanceRepr::deserialize(deserializer)?;
        TieredParkingInstance::new(repr.tiers, repr.requirements).map_err(serde::de::Error::custom)
    }
}

impl TieredParkingInstance {
    /// `tiers[i]` is the number of cars of tier `i+1` (all positive);
    /// `requirements[i]` lists the per-car requirements of tier `i+2`.
    pub fn new(
        tiers: Vec<usize>,
        requirements: Vec<Vec<u64>>,
    ) -> Result<TieredParkingInstance, Error> {
        if tiers.is_empty() {
            return Err(Error::InvalidParking("need at least one tier".into()));
        }
        if tiers.contains(&0) {
            return Err(Error::InvalidParking("every tier must have a positive car count".into()));
        }
        if requirements.len() != tiers.len() - 1 {
            return Err(Error::InvalidParking(format!(
                "expected {} requirement lists (tiers 2..), got {}",
                tiers.len() - 1,
                requirements.len()
            )));
        }
        for (i, reqs) in requirements.iter().enumerate() {
            if reqs.len() != tiers[i + 1] {
                return Err(Error::InvalidParking(format!(
                    "tier {} has {} cars but {} requirements",
                    i + 2,
                    tiers[i + 1],
                    reqs.len()
                )));
            }
        }
        Ok(TieredParkingInstance { tiers, requirements })
    }

    pub fn tier_counts(&self) -> &[usize] {
        &self.tiers
    }

    /// Requirement lists for tiers `2..=k`.
    pub fn requirements(&self) -> &[Vec<u64>] {
        &self.requirements
    }

    pub fn tier_count(&self) -> usize {
        self.tiers.len()
    }

    pub fn total_cars(&self) -> usize {
        self.tiers.iter().sum()
    }

    /// Requirement of car `car` (1-based) of tier `tier` (tier `>= 2`).
    fn requirement(&self, tier: usize, car: usize) -> u64 {
        self.requirements[tier - 2][car - 1]
    }
}

/// A full parking arrangement: spot `k` (0-based in the vector, spot 1 is
/// nearest the entrance) holds car `car` (1-based within its tier) of tier
/// `tier`.
///
/// Serializes as the sequence of tier labels, e.g. `[2,3,1,3,4,...]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StreetArrangement {
    pub spots: Vec<(usize, usize)>,
}

impl StreetArrangement {
    /// The tier label sequence along the street.
    pub fn tier_sequence(&self) -> Vec<usize> {
        self.spots.iter().map(|&(tier, _)| tier).collect()
    }
}

impl Serialize for StreetArrangement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.tier_sequence().serialize(serializer)
    }
}

/// Does the arrangement park every car of the instance exactly once?
fn is_permutation_of_cars(p: &TieredParkingInstance, s: &StreetArrangement) -> bool {
    if s.spots.len() != p.total_cars() {
        return false;
    }
    // Slot 0 is a placeholder so tiers index 1-based.
    let mut seen = vec![Vec::<bool>::new()];
    seen.extend(p.tiers.iter().map(|&c| vec![false; c + 1]));
    for &(tier, car) in &s.spots {
        if tier == 0 || tier > p.tier_count() || car == 0 || car > p.tiers[tier - 1] {
            return false;
        }
        if seen[tier][car] {
            return false;
        }
        seen[tier][car] = true;
    }
    true
}

/// Check an arrangement against the literal "at least" reading.
pub fn check_street_literal(p: &TieredParkingInstance, s: &StreetArrangement) -> bool {
    if !is_permutation_of_cars(p, s) {
        return false;
    }
    // lower[t] = number of cars of tiers < t parked so far.
    let mut per_tier = vec![0u64; p.tier_count() + 1];
    for &(tier, car) in &s.spots {
        if tier >= 2 {
            let lower: u64 = per_tier[1..tier].iter().sum();
            if lower < p.requirement(tier, car) {
                return false;
            }
        }
        per_tier[tier] += 1;
    }
    true
}

/// Literal recognizer, closed form: an arrangement exists iff every tier-i
/// requirement is at most the total number of cars of tiers below i.
/// Returns a witness street (tiers parked in increasing order) when
/// feasible.
pub fn is_tiered_pf_literal(p: &TieredParkingInstance) -> Option<StreetArrangement> {
    let mut lower = 0u64;
    for tier in 2..=p.tier_count() {
        lower += p.tiers[tier - 2] as u64;
        if p.requirements[tier - 2].iter().any(|&r| r > lower) {
            return None;
        }
    }
    let mut spots = Vec::with_capacity(p.total_cars());
    for tier in 1..=p.tier_count() {
        for car in 1..=p.tiers[tier - 1] {
            spots.push((tier, car));
        }
    }
    let street = StreetArrangement { spots };
    debug_assert!(check_street_literal(p, &street));
    Some(street)
}

/// Literal recognizer, independent route: depth-first search over
/// arrangements, placing one car per spot and backtracking on dead ends.
/// Cars of a tier with equal requirements are interchangeable, so the
/// search branches over (tier, requirement) classes and memoizes failed
/// remainders.  Must agree with [`is_tiered_pf_literal`] everywhere.
pub fn is_tiered_pf_literal_backtracking(p: &TieredParkingInstance) -> Option<StreetArrangement> {
    // Group cars into classes of equal (tier, requirement); remember the
    // original car indices so the witness can name real cars.
    let mut classes: Vec<(usize, u64, Vec<usize>)> = Vec::new();
    for tier in 1..=p.tier_count() {
        let mut cars: Vec<usize> = (1..=p.tiers[tier - 1]).collect();
        if tier == 1 {
            classes.push((1, 0, cars));
            continue;
        }
        cars.sort_by_key(|&car| p.requirement(tier, car));
        for car in cars {
            let r = p.requirement(tier, car);
            match classes.last_mut() {
                Some((t, req, members)) if *t == tier && *req == r => members.push(car),
                _ => classes.push((tier, r, vec![car])),
            }
        }
    }

    // Dead remainder vectors, keyed by their mixed-radix index when the
    // state space is small enough for a flat bitset, hashed otherwise.
    enum Memo {
        Flat { strides: Vec<usize>, failed: Vec<u64> },
        Hashed(HashSet<Vec<usize>>),
    }

    impl Memo {
        fn new(class_sizes: &[usize]) -> Memo {
            const FLAT_CAP: u128 = 1 << 22;
            let mut strides = Vec::with_capacity(class_sizes.len());
            let mut states: u128 = 1;
            for &c in class_sizes {
                strides.push(states as usize);
                states = states.saturating_mul(c as u128 + 1);
                if states > FLAT_CAP {
                    return Memo::Hashed(HashSet::new());
                }
            }
            Memo::Flat { strides, failed: vec![0; (states as usize).div_ceil(64)] }
        }

        fn contains(&self, remaining: &[usize]) -> bool {
            match self {
                Memo::Flat { strides, failed } => {
                    let idx: usize = remaining.iter().zip(strides).map(|(&r, &s)| r * s).sum();
                    failed[idx / 64] & (1 << (idx % 64)) != 0
                }
                Memo::Hashed(set) => !set.is_empty() && set.contains(remaining),
            }
        }

        fn insert(&mut self, remaining: &[usize]) {
            match self {
                Memo::Flat { strides, failed } => {
                    let idx: usize =
                        remaining.iter().zip(strides.iter()).map(|(&r, &s)| r * s).sum();
                    failed[idx / 64] |= 1 << (idx % 64);
                }
                Memo::Hashed(set) => {
                    set.insert(remaining.to_vec());
                }
            }
        }
    }

    struct Search<'a> {
        classes: &'a [(usize, u64, Vec<usize>)],
        remaining: Vec<usize>,
        used: Vec<usize>,
        per_tier: Vec<u64>,
        street: Vec<(usize, usize)>,
        total: usize,
        failed: Memo,
    }

    impl Search<'_> {
        fn dfs(&mut self) -> bool {
            if self.street.len() == self.total {
                return true;
            }
            if self.failed.contains(&self.remaining) {
                return false;
            }
            for c in 0..self.classes.len() {
                if self.remaining[c] == 0 {
                    continue;
                }
                let (tier, req, ref members) = self.classes[c];
                let lower: u64 = self.per_tier[1..tier].iter().sum();
                if tier >= 2 && lower < req {
                    continue;
                }
                let car = members[self.used[c]];
                self.remaining[c] -= 1;
                self.used[c] += 1;
                self.per_tier[tier] += 1;
                self.street.push((tier, car));
                if self.dfs() {
                    return true;
                }
                self.street.pop();
                self.per_tier[tier] -= 1;
                self.used[c] -= 1;
                self.remaining[c] += 1;
            }
            self.failed.insert(&self.remaining);
            false
        }
    }

    let class_sizes: Vec<usize> = classes.iter().map(|(_, _, members)| members.len()).collect();
    let mut search = Search {
        remaining: class_sizes.clone(),
        used: vec![0; classes.len()],
        per_tier: vec![0; p.tier_count() + 1],
        street: Vec::with_capacity(p.total_cars()),
        total: p.total_cars(),
        failed: Memo::new(&class_sizes),
        classes: &classes,
    };
    if search.dfs() {
        let street = StreetArrangement { spots: search.street };
        debug_assert!(check_street_literal(p, &street));
        Some(street)
    } else {
        None
    }
}

fn argsort_asc(xs: &[u64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..xs.len()).collect();
    idx.sort_by_key(|&i| (xs[i], i));
    idx
}

/// The street a word induces when read right to left: `D` parks a tier-1
/// car, `H` a tier-2 car, `U` a tier-3 car.  Car indices count occurrences
/// from the word's end, so the k-th tier-2 car along the street is the
/// word's (h+1-k)-th `H` — lining up with descending requirement lists.
pub fn street_from_word(w: &crate::motzkin::MotzkinWord) -> StreetArrangement {
    use crate::motzkin::Letter;
    let mut left = [0usize, w.d_count(), w.h_count(), w.u_count()];
    let spots = w
        .letters()
        .iter()
        .rev()
        .map(|&l| {
            let tier = match l {
                Letter::D => 1,
                Letter::H => 2,
                Letter::U => 3,
            };
            let car = left[tier];
            left[tier] -= 1;
            (tier, car)
        })
        .collect();
    StreetArrangement { spots }
}

/// Strict three-tier street search shared by both sink cases.
///
/// Tier counts are `(tier1_count, b.len(), a_plus_one.len())`.  Along the
/// street each tier-2 car must see exactly its `b` value of tier-1 cars
/// before it, each tier-3 car exactly its `a_plus_one` value of tier-1/2
/// cars, and every prefix at least as many tier-1 as tier-3 cars.  With
/// `no_tier2_after_all_tier1`, a tier-2 car may not park once every tier-1
/// car has.  Within a tier, cars must appear in weakly increasing
/// requirement order (the exact counts force it), so the search runs over
/// sorted requirements and walks the `(placed1, placed2, placed3)` state
/// space with memoized dead ends.
fn strict_street_search(
    tier1_count: usize,
    b: &[u64],
    a_plus_one: &[u64],
    no_tier2_after_all_tier1: bool,
) -> Option<StreetArrangement> {
    let order2 = argsort_asc(b);
    let order3 = argsort_asc(a_plus_one);
    let b_sorted: Vec<u64> = order2.iter().map(|&i| b[i]).collect();
    let a_sorted: Vec<u64> = order3.iter().map(|&i| a_plus_one[i]).collect();
    let (t1, t2, t3) = (tier1_count, b.len(), a_plus_one.len());

    struct Search<'a> {
        t1: usize,
        t2: usize,
        t3: usize,
        b_sorted: &'a [u64],
        a_sorted: &'a [u64],
        forbid_tail_tier2: bool,
        street: Vec<(usize, usize)>, // (tier, how-many-th of its tier, 1-based)
        failed: Vec<bool>,
    }

    impl Search<'_> {
        fn dfs(&mut self, c1: usize, c2: usize, c3: usize) -> bool {
            if c1 == self.t1 && c2 == self.t2 && c3 == self.t3 {
                return true;
            }
            let key = (c1 * (self.t2 + 1) + c2) * (self.t3 + 1) + c3;
            if self.failed[key] {
                return false;
            }
            if c1 < self.t1 {
                self.street.push((1, c1 + 1));
                if self.dfs(c1 + 1, c2, c3) {
                    return true;
                }
                self.street.pop();
            }
            if c2 < self.t2
                && self.b_sorted[c2] == c1 as u64
                && !(self.forbid_tail_tier2 && c1 == self.t1)
            {
                self.street.push((2, c2 + 1));
                if self.dfs(c1, c2 + 1, c3) {
                    return true;
                }
                self.street.pop();
            }
            if c3 < self.t3 && self.a_sorted[c3] == (c1 + c2) as u64 && c1 > c3 {
                self.street.push((3, c3 + 1));
                if self.dfs(c1, c2, c3 + 1) {
                    return true;
                }
                self.street.pop();
            }
            self.failed[key] = true;
            false
        }
    }

    let mut search = Search {
        t1,
        t2,
        t3,
        b_sorted: &b_sorted,
        a_sorted: &a_sorted,
        forbid_tail_tier2: no_tier2_after_all_tier1,
        street: Vec::with_capacity(t1 + t2 + t3),
        failed: vec![false; (t1 + 1) * (t2 + 1) * (t3 + 1)],
    };
    if !search.dfs(0, 0, 0) {
        return None;
    }
    // Translate k-th-of-tier back to original car indices.
    let spots = search
        .street
        .iter()
        .map(|&(tier, kth)| match tier {
            1 => (1, kth),
            2 => (2, order2[kth - 1] + 1),
            _ => (3, order3[kth - 1] + 1),
        })
        .collect();
    Some(StreetArrangement { spots })
}

/// Verify a street against the strict exact-count semantics.  `b` and
/// `a_plus_one` are the original (possibly unsorted) requirement lists;
/// tier-1 cars number `a_plus_one.len()` — the balanced case both sink
/// recognizers use.
fn check_street_strict(
    tier1_count: usize,
    b: &[u64],
    a_plus_one: &[u64],
    no_tier2_after_all_tier1: bool,
    s: &StreetArrangement,
) -> bool {
    let instance_tiers = [tier1_count, b.len(), a_plus_one.len()];
    if s.spots.len() != instance_tiers.iter().sum::<usize>() {
        return false;
    }
    let mut seen = [
        vec![false; instance_tiers[0] + 1],
        vec![false; instance_tiers[1] + 1],
        vec![false; instance_tiers[2] + 1],
    ];
    let (mut c1, mut c2, mut c3) = (0u64, 0u64, 0u64);
    for &(tier, car) in &s.spots {
        if !(1..=3).contains(&tier) || car == 0 || car > instance_tiers[tier - 1] {
            return false;
        }
        if seen[tier - 1][car] {
            return false;
        }
        seen[tier - 1][car] = true;
        match tier {
            1 => c1 += 1,
            2 => {
                if c1 != b[car - 1] {
                    return false;
                }
                if no_tier2_after_all_tier1 && c1 == tier1_count as u64 {
                    return false;
                }
                c2 += 1;
            }
            _ => {
                if c1 + c2 != a_plus_one[car - 1] {
                    return false;
                }
                c3 += 1;
                if c1 < c3 {
                    return false;
                }
            }
        }
    }
    true
}

/// Strict checker for the clique-sink reading: tier counts
/// `(a_plus_one.len(), b.len(), a_plus_one.len())`, no tail restriction.
pub fn check_street_strict_clique(b: &[u64], a_plus_one: &[u64], s: &StreetArrangement) -> bool {
    check_street_strict(a_plus_one.len(), b, a_plus_one, false, s)
}

/// Strict checker for the independent-sink reading: additionally, no tier-2
/// car parks after all tier-1 cars.
pub fn check_street_strict_independent(
    b: &[u64],
    a_plus_one: &[u64],
    s: &StreetArrangement,
) -> bool {
    check_street_strict(a_plus_one.len(), b, a_plus_one, true, s)
}

/// Strict witness for the clique-sink case on `S(m,n)`: tier order
/// `(m-1, n, m-1)` with tier-2 requirements `b` (the independent heights)
/// and tier-3 requirements `a_plus_one` (clique heights plus one).  A
/// street exists exactly when the configuration is recurrent with sink
/// `v_m`.  Inputs may be unsorted; out-of-range values simply yield `None`.
pub fn parking_witness_clique(
    m: usize,
    n: usize,
    b: &[u64],
    a_plus_one: &[u64],
) -> Result<Option<StreetArrangement>, Error> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidGraph { m, n });
    }
    if b.len() != n || a_plus_one.len() != m - 1 {
        return Err(Error::ShapeMismatch {
            expected_clique: m - 1,
            expected_independent: n,
            got_clique: a_plus_one.len(),
            got_independent: b.len(),
        });
    }
    let witness = strict_street_search(m - 1, b, a_plus_one, false);
    if let Some(ref s) = witness {
        debug_assert!(check_street_strict_clique(b, a_plus_one, s));
    }
    Ok(witness)
}

/// Strict witness for the independent-sink case on `S(m,n)`: tier order
/// `(m, n-1, m)`, plus the rule that no tier-2 car parks after all tier-1
/// cars.  A street exists exactly when the configuration is recurrent with
/// sink `w_n`.
pub fn parking_witness_independent(
    m: usize,
    n: usize,
    b: &[u64],
    a_plus_one: &[u64],
) -> Result<Option<StreetArrangement>, Error> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidGraph { m, n });
    }
    if b.len() != n - 1 || a_plus_one.len() != m {
        return Err(Error::ShapeMismatch {
            expected_clique: m,
            expected_independent: n - 1,
            got_clique: a_plus_one.len(),
            got_independent: b.len(),
        });
    }
    let witness = strict_street_search(m, b, a_plus_one, true);
    if let Some(ref s) = witness {
        debug_assert!(check_street_strict_independent(b, a_plus_one, s));
    }
    Ok(witness)
}

/// Boolean form of [`parking_witness_clique`].
pub fn is_recurrent_via_parking_clique(
    m: usize,
    n: usize,
    b: &[u64],
    a_plus_one: &[u64],
) -> Result<bool, Error> {
    Ok(parking_witness_clique(m, n, b, a_plus_one)?.is_some())
}

/// Boolean form of [`parking_witness_independent`].
pub fn is_recurrent_via_parking_independent(
    m: usize,
    n: usize,
    b: &[u64],
    a_plus_one: &[u64],
) -> Result<bool, Error> {
    Ok(parking_witness_independent(m, n, b, a_plus_one)?.is_some())
}

/// Exhaustive census over all requirement sequences with values in
/// `0..=requirement_bound` for a fixed tier order: how many are literal
/// tiered parking functions, and (for three tiers) how many admit a strict
/// street.  Supports experimentation on the open counting question; no
/// closed form is asserted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TpfCensus {
    pub tiers: Vec<usize>,
    pub bound: u64,
    /// Number of requirement sequences scanned.
    pub total: u64,
    /// How many satisfy the literal "at least" semantics.
    pub literal: u64,
    /// How many admit a strict exact-count street (three-tier orders only;
    /// without the tail restriction).
    pub strict: Option<u64>,
}

/// Scan every requirement sequence for the given tier order with values in
/// `0..=requirement_bound`.  The scan size `(bound+1)^(cars above tier 1)`
/// must stay within `budget`.
pub fn enumerate_tiered_pf(
    tier_counts: &[usize],
    requirement_bound: u64,
    budget: u64,
) -> Result<TpfCensus, Error> {
    // Validate through the instance constructor with all-zero requirements.
    let zero_reqs: Vec<Vec<u64>> =
        tier_counts.iter().skip(1).map(|&c| vec![0u64; c]).collect();
    let mut instance = TieredParkingInstance::new(tier_counts.to_vec(), zero_reqs)?;

    let free_cars: usize = tier_counts.iter().skip(1).sum();
    let base = requirement_bound as u128 + 1;
    let total = base.checked_pow(free_cars as u32).unwrap_or(u128::MAX);
    if total > budget as u128 {
        return Err(Error::BudgetExceeded { needed: total, budget });
    }

    let three_tier = tier_counts.len() == 3;
    let mut literal = 0u64;
    let mut strict = 0u64;
    loop {
        if is_tiered_pf_literal(&instance).is_some() {
            literal += 1;
        }
        if three_tier {
            let b = &instance.requirements[0];
            let a_plus_one = &instance.requirements[1];
            if strict_street_search(tier_counts[0], b, a_plus_one, false).is_some() {
                strict += 1;
            }
        }
        // Next requirement sequence, last slot fastest.
        let mut advanced = false;
        'outer: for list in instance.requirements.iter_mut().rev() {
            for slot in list.iter_mut().rev() {
                if *slot < requirement_bound {
                    *slot += 1;
                    advanced = true;
                    break 'outer;
                }
                *slot = 0;
            }
        }
        if !advanced {
            break;
        }
    }
    Ok(TpfCensus {
        tiers: tier_counts.to_vec(),
        bound: requirement_bound,
        total: total as u64,
        literal,
        strict: if three_tier { Some(strict) } else { None },
    })
}
