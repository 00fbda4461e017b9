//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each, and
//! exits non-zero if any criterion fails.
//!
//! Run with `cargo test -p latval --test acceptance`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use latval::birkhoff::DownsetLattice;
use latval::oracle::{self, DEFAULT_SEARCH_LIMIT};
use latval::realizer::{
    chain_count_weights, complete_valuation, extract_realizer, realizers, recursion_identities,
    round_trip_check,
};
use latval::valuation::{
    check_valuation_axioms, is_bijective, is_complete, omega_encode, weights_from_valuation,
};
use latval::{complementary_poset, Complement, Poset, Realizer, Valuation, WeightFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x1a77_1ce5;
const ROUND_TRIP_POSETS: usize = 200;
const ROUND_TRIP_MAX_ELEMENTS: usize = 7;
const REALIZERS_PER_POSET: usize = 5;
const ORACLE_MAX_ELEMENTS: usize = 10;
const ORACLE_POSETS: usize = 300;
const EXTENSION_BUDGET: u64 = 10_000_000;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, &'static str, Box<dyn Fn() -> Outcome + 'a>);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// One valid `(poset, realizer)` pair with its constructed valuation.
struct Instance {
    poset: Poset,
    realizer: Realizer,
    lattice: DownsetLattice,
    valuation: Valuation,
    weights: WeightFunction,
}

fn random_poset(rng: &mut ChaCha8Rng, k: usize) -> Poset {
    let density: f64 = rng.gen_range(0.1..0.7);
    let pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|x| (x + 1..k).map(move |y| (x, y)))
        .filter(|_| rng.gen_bool(density))
        .collect();
    // Shuffle labels so the relation is not always aligned with input order.
    let mut labels: Vec<usize> = (0..k).collect();
    for i in (1..k).rev() {
        labels.swap(i, rng.gen_range(0..=i));
    }
    let pairs: Vec<_> = pairs
        .into_iter()
        .map(|(x, y)| (labels[x], labels[y]))
        .collect();
    Poset::from_index_pairs((0..k).map(|i| format!("e{i}")).collect(), &pairs).unwrap()
}

/// At least `ROUND_TRIP_POSETS` random posets with a realizer, each with up to
/// `REALIZERS_PER_POSET` realizers.
fn round_trip_family() -> (usize, Vec<Instance>) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut posets = 0;
    let mut out = Vec::new();
    while posets < ROUND_TRIP_POSETS {
        let k = rng.gen_range(1..=ROUND_TRIP_MAX_ELEMENTS);
        let poset = random_poset(&mut rng, k);
        let found = realizers(&poset, REALIZERS_PER_POSET, EXTENSION_BUDGET).unwrap();
        if found.is_empty() {
            continue;
        }
        posets += 1;
        for realizer in found {
            let (lattice, valuation) = complete_valuation(&poset, &realizer).unwrap();
            let weights = chain_count_weights(&poset, &realizer).unwrap();
            out.push(Instance {
                poset: poset.clone(),
                realizer,
                lattice,
                valuation,
                weights,
            });
        }
    }
    (posets, out)
}

fn n_poset() -> Poset {
    Poset::new(["a", "b", "c", "d"], [("a", "c"), ("b", "c"), ("b", "d")]).unwrap()
}

fn standard_example_3() -> Poset {
    Poset::new(
        ["a1", "a2", "a3", "b1", "b2", "b3"],
        [
            ("a1", "b2"),
            ("a1", "b3"),
            ("a2", "b1"),
            ("a2", "b3"),
            ("a3", "b1"),
            ("a3", "b2"),
        ],
    )
    .unwrap()
}

fn ac1_n_poset_fixture() -> Outcome {
    let start = Instant::now();
    let p = n_poset();
    let r = Realizer::from_names(&p, &["b", "d", "a", "c"], &["a", "b", "c", "d"]).unwrap();
    let expected =
        WeightFunction::from_names(&p, &[("b", 1), ("d", 1), ("a", 3), ("c", 2)]).unwrap();

    // Frozen weights cross-checked against explicit chain enumeration.
    let q = oracle::complementary_naive(&p, r.lambda1().order(), r.lambda2().order()).unwrap();
    let enumerated: Vec<u64> = (0..p.len())
        .map(|y| oracle::chains_ending_at(&q, y).len() as u64)
        .collect();
    ensure!(
        enumerated == expected.as_slice(),
        "oracle chain counts {enumerated:?}"
    );

    let w = chain_count_weights(&p, &r).unwrap();
    ensure!(w == expected, "weights {:?}", w.as_slice());
    let (l, v) = complete_valuation(&p, &r).unwrap();
    let mut values = v.values().to_vec();
    values.sort_unstable();
    ensure!(values == (0..8).collect::<Vec<u64>>(), "values {values:?}");
    ensure!(is_bijective(&l, &v), "not bijective");
    ensure!(is_complete(&l, &v).unwrap().ok, "not complete");
    let back = extract_realizer(&l, &v).unwrap();
    ensure!(back == r, "extracted {:?}", back);
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!(
        "weights b=1 d=1 a=3 c=2, values 0..7, realizer recovered in {elapsed:.2?}"
    ))
}

fn ac2_round_trip(family: &[Instance], posets: usize, built_in: Duration) -> Outcome {
    let start = Instant::now();
    ensure!(posets >= ROUND_TRIP_POSETS, "only {posets} posets");
    for inst in family {
        ensure!(
            round_trip_check(&inst.poset, &inst.realizer).unwrap(),
            "round trip failed on {:?} with {:?}",
            inst.poset.covers(),
            inst.realizer
        );
    }
    let elapsed = start.elapsed() + built_in;
    ensure!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    Ok(format!(
        "{} realizers over {posets} posets (|P| <= {ROUND_TRIP_MAX_ELEMENTS}), all round-trip, {elapsed:.2?}",
        family.len()
    ))
}

fn ac3_recursion_identities(family: &[Instance]) -> Outcome {
    let mut checked = 0;
    for inst in family {
        let extracted = extract_realizer(&inst.lattice, &inst.valuation).unwrap();
        let failures = recursion_identities(&inst.lattice, &inst.weights, &extracted).unwrap();
        ensure!(
            failures.is_empty(),
            "{failures:?} on {:?}",
            inst.poset.covers()
        );
        checked += inst.poset.len();
    }
    Ok(format!(
        "all identities hold at {checked} (instance, element) points"
    ))
}

fn ac4_lexicographic(family: &[Instance]) -> Outcome {
    for inst in family {
        let lambda1 = extract_realizer(&inst.lattice, &inst.valuation)
            .unwrap()
            .lambda1()
            .clone();
        let by_value = inst.valuation.ordinals_by_value();
        let mut by_omega: Vec<usize> = (0..inst.lattice.len()).collect();
        by_omega.sort_by_key(|&i| omega_encode(inst.lattice.downset(i), &lambda1));
        ensure!(
            by_value == by_omega,
            "orders differ on {:?}",
            inst.poset.covers()
        );
    }
    Ok(format!(
        "v order equals omega order on {} instances",
        family.len()
    ))
}

fn ac5_oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xface);
    let mut with_realizer = 0;
    for i in 0..ORACLE_POSETS {
        let k = 1 + i % ORACLE_MAX_ELEMENTS;
        let p = random_poset(&mut rng, k);
        let fast = DownsetLattice::new(p.clone()).unwrap();
        let naive = oracle::downsets_naive(&p).unwrap();
        ensure!(
            fast.downsets() == &naive[..],
            "downsets differ on {:?}",
            p.covers()
        );
        for r in realizers(&p, 2, EXTENSION_BUDGET).unwrap() {
            with_realizer += 1;
            let w = chain_count_weights(&p, &r).unwrap();
            let q =
                oracle::complementary_naive(&p, r.lambda1().order(), r.lambda2().order()).unwrap();
            for y in 0..k {
                let chains = oracle::chains_ending_at(&q, y).len() as u64;
                ensure!(w.get(y) == chains, "weight {} vs {chains} chains", w.get(y));
            }
        }
    }
    let s3 = standard_example_3();
    ensure!(
        DownsetLattice::new(s3.clone()).unwrap().downsets()
            == &oracle::downsets_naive(&s3).unwrap()[..],
        "S3 downsets differ"
    );
    Ok(format!(
        "{ORACLE_POSETS} posets (|P| <= {ORACLE_MAX_ELEMENTS}) agree on downsets, {with_realizer} realizers agree on chain counts"
    ))
}

fn ac6_standard_example() -> Outcome {
    let start = Instant::now();
    let report =
        oracle::search_complete_valuations(&standard_example_3(), DEFAULT_SEARCH_LIMIT).unwrap();
    let elapsed = start.elapsed();
    ensure!(
        report.candidates == 4368,
        "{} candidates",
        report.candidates
    );
    ensure!(report.found.is_empty(), "found {:?}", report.found);
    ensure!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    Ok(format!(
        "4368 candidates exhausted, none complete, {elapsed:.2?}"
    ))
}

fn ac7_checker_soundness(family: &[Instance]) -> Outcome {
    let anti = DownsetLattice::new(Poset::antichain(["a", "b"])).unwrap();
    let report = check_valuation_axioms(&anti, &[0, 1, 1, 3]).unwrap();
    let (s, t) = report.additivity.ok_or("no additivity counterexample")?;
    let sets = [anti.downset(s), anti.downset(t)];
    ensure!(sets.iter().all(|d| d.len() == 1), "counterexample {sets:?}");
    for inst in family {
        let axioms = check_valuation_axioms(&inst.lattice, inst.valuation.values()).unwrap();
        ensure!(axioms.is_valid(), "{axioms:?}");
        ensure!(
            is_bijective(&inst.lattice, &inst.valuation),
            "not bijective"
        );
        ensure!(
            weights_from_valuation(&inst.lattice, inst.valuation.values()).unwrap() == inst.weights,
            "weights not recovered"
        );
    }
    Ok(format!(
        "additivity counterexample ({{a}},{{b}}) reported; {} constructed valuations pass",
        family.len()
    ))
}

fn ac8_chain_totals(family: &[Instance]) -> Outcome {
    for inst in family {
        let q = complementary_poset(&inst.poset, &inst.realizer, Complement::Q).unwrap();
        let chains = oracle::total_chains(&q);
        let top = inst.valuation.value(inst.lattice.top());
        ensure!(
            chains == inst.lattice.len() && top + 1 == chains as u64,
            "chains {chains}, |L| {}, v(top) {top}",
            inst.lattice.len()
        );
    }
    Ok(format!(
        "chains of Q = |L| = v(top) + 1 on {} instances",
        family.len()
    ))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let (posets, family) = round_trip_family();
    let built_in = start.elapsed();

    let criteria: Vec<Criterion> = vec![
        (
            "AC1",
            "N-poset end-to-end fixture",
            Box::new(ac1_n_poset_fixture),
        ),
        (
            "AC2",
            "round trip on random dimension-2 posets",
            Box::new(|| ac2_round_trip(&family, posets, built_in)),
        ),
        (
            "AC3",
            "recursion identities",
            Box::new(|| ac3_recursion_identities(&family)),
        ),
        (
            "AC4",
            "lexicographic order",
            Box::new(|| ac4_lexicographic(&family)),
        ),
        (
            "AC5",
            "oracle equivalence",
            Box::new(ac5_oracle_equivalence),
        ),
        (
            "AC6",
            "no complete valuation on S3",
            Box::new(ac6_standard_example),
        ),
        (
            "AC7",
            "axiom checker soundness",
            Box::new(|| ac7_checker_soundness(&family)),
        ),
        (
            "AC8",
            "chain-count totals",
            Box::new(|| ac8_chain_totals(&family)),
        ),
    ];

    let mut failed = 0;
    for (id, name, run) in &criteria {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("{id} PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("{id} FAIL  {name}: {detail}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
