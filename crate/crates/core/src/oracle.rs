//! Brute-force ground truth for the fast paths.
//!
//! Nothing here calls into the lattice, valuation or realizer modules: the
//! code works from the poset relation alone, so agreement with those modules
//! is evidence rather than tautology.

use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::set::ElementSet;
use crate::valuation::WeightFunction;

/// Largest poset [`downsets_naive`] accepts.
pub const NAIVE_ELEMENT_LIMIT: usize = 24;

/// Default bound on candidate weight functions per search.
pub const DEFAULT_SEARCH_LIMIT: u128 = 5_000_000;

/// Every subset of the ground set that is downward closed, in the lattice's
/// canonical order (cardinality, then bit pattern).
pub fn downsets_naive(poset: &Poset) -> Result<Vec<ElementSet>> {
    let k = poset.len();
    if k > NAIVE_ELEMENT_LIMIT {
        return Err(Error::SizeLimitExceeded(
            "oracle",
            k as u128,
            NAIVE_ELEMENT_LIMIT as u128,
        ));
    }
    let mut out: Vec<ElementSet> = (0u32..1 << k)
        .filter(|&mask| {
            (0..k).all(|y| {
                mask >> y & 1 == 0 || (0..k).all(|x| !poset.le(x, y) || mask >> x & 1 == 1)
            })
        })
        .map(|mask| ElementSet::from_indices(k, (0..k).filter(|i| mask >> i & 1 == 1)))
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// A strictly increasing sequence of elements.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Chain {
    pub members: Vec<usize>,
}

/// All chains of `q` whose maximum is `top`, found by backtracking downward.
pub fn chains_ending_at(q: &Poset, top: usize) -> Vec<Chain> {
    fn extend(q: &Poset, suffix: &mut Vec<usize>, out: &mut Vec<Chain>) {
        let mut members = suffix.clone();
        members.reverse();
        out.push(Chain { members });
        let lowest = *suffix.last().expect("suffix holds the top");
        for x in 0..q.len() {
            if q.lt(x, lowest) {
                suffix.push(x);
                extend(q, suffix, out);
                suffix.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(q, &mut vec![top], &mut out);
    out.sort();
    out
}

/// Chains of `q`, counting the empty chain.
pub fn total_chains(q: &Poset) -> usize {
    1 + (0..q.len())
        .map(|y| chains_ending_at(q, y).len())
        .sum::<usize>()
}

/// The complementary poset of `(lambda1, lambda2)` computed from the
/// definition: `x <' y` iff `x` precedes `y` in `lambda1` and follows it in
/// `lambda2`.
pub fn complementary_naive(poset: &Poset, lambda1: &[usize], lambda2: &[usize]) -> Result<Poset> {
    let pos = |order: &[usize], x: usize| order.iter().position(|&z| z == x).expect("permutation");
    let k = poset.len();
    let pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|x| (0..k).map(move |y| (x, y)))
        .filter(|&(x, y)| pos(lambda1, x) < pos(lambda1, y) && pos(lambda2, y) < pos(lambda2, x))
        .collect();
    Poset::from_index_pairs(poset.elements().to_vec(), &pairs)
}

/// Result of an exhaustive weight search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    /// Size of the lattice searched over.
    pub lattice_size: usize,
    /// Weight functions examined.
    pub candidates: u128,
    /// Accepted weight functions, sorted.
    pub found: Vec<WeightFunction>,
}

/// All weight functions inducing a bijective valuation.
///
/// Bijectivity forces every weight to be at least one and the weights to sum
/// to `n - 1`, so only compositions of `n - 1` into `|P|` positive parts are
/// tried.
pub fn search_bijective_valuations(poset: &Poset, limit: u128) -> Result<SearchReport> {
    search(poset, limit, |_, _| true)
}

/// All weight functions inducing a complete valuation.
pub fn search_complete_valuations(poset: &Poset, limit: u128) -> Result<SearchReport> {
    search(poset, limit, is_complete_naive)
}

fn search(
    poset: &Poset,
    limit: u128,
    accept: impl Fn(&[ElementSet], &[u64]) -> bool,
) -> Result<SearchReport> {
    let downsets = downsets_naive(poset)?;
    let n = downsets.len();
    let k = poset.len();
    let candidates = if k == 0 {
        u128::from(n == 1)
    } else {
        binomial(n as u128 - 2, k as u128 - 1)
    };
    if candidates > limit {
        return Err(Error::SizeLimitExceeded("oracle", candidates, limit));
    }
    let mut found = Vec::new();
    let mut weights = vec![0u64; k];
    let mut examined = 0u128;
    compositions(n as u64 - 1, &mut weights, 0, &mut |w| {
        examined += 1;
        let values: Vec<u64> = downsets
            .iter()
            .map(|s| s.iter().map(|x| w[x]).sum())
            .collect();
        let mut seen = vec![false; n];
        let bijective = values.iter().all(|&v| {
            let fresh = (v as usize) < n && !seen[v as usize];
            if fresh {
                seen[v as usize] = true;
            }
            fresh
        });
        if bijective && accept(&downsets, &values) {
            found.push(WeightFunction::new(w.to_vec()));
        }
    });
    debug_assert_eq!(examined, candidates);
    found.sort();
    Ok(SearchReport {
        lattice_size: n,
        candidates: examined,
        found,
    })
}

/// Calls `visit` with every way to write `total` as `slots.len() - from`
/// positive parts in `slots[from..]`.
fn compositions(total: u64, slots: &mut [u64], from: usize, visit: &mut impl FnMut(&[u64])) {
    let remaining = (slots.len() - from) as u64;
    if remaining == 0 {
        if total == 0 {
            visit(slots);
        }
        return;
    }
    if total < remaining {
        return;
    }
    if remaining == 1 {
        slots[from] = total;
        visit(slots);
        return;
    }
    for part in 1..=total - (remaining - 1) {
        slots[from] = part;
        compositions(total - part, slots, from + 1, visit);
    }
}

fn binomial(n: u128, r: u128) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Completeness straight from the definition: grow the closure of each
/// value prefix (suffix) under pairwise union (intersection) to a fixed
/// point and test that its values form a prefix (suffix).
pub fn is_complete_naive(downsets: &[ElementSet], values: &[u64]) -> bool {
    let n = downsets.len();
    let mut by_value: Vec<usize> = (0..n).collect();
    by_value.sort_by_key(|&i| values[i]);
    let value_of = |s: &ElementSet| {
        let i = downsets
            .iter()
            .position(|d| d == s)
            .expect("closed under union and intersection");
        values[i]
    };
    for j in 1..=n {
        let lower: Vec<ElementSet> = by_value[..j].iter().map(|&i| downsets[i].clone()).collect();
        let closed = fixed_point(lower, |a, b| a.union(b));
        let mut vals: Vec<u64> = closed.iter().map(value_of).collect();
        vals.sort_unstable();
        if vals.iter().enumerate().any(|(i, &v)| v != i as u64) {
            return false;
        }
        let upper: Vec<ElementSet> = by_value[n - j..]
            .iter()
            .map(|&i| downsets[i].clone())
            .collect();
        let closed = fixed_point(upper, |a, b| a.intersection(b));
        let mut vals: Vec<u64> = closed.iter().map(value_of).collect();
        vals.sort_unstable();
        let start = (n - vals.len()) as u64;
        if vals.iter().enumerate().any(|(i, &v)| v != start + i as u64) {
            return false;
        }
    }
    true
}

fn fixed_point(
    mut sets: Vec<ElementSet>,
    op: impl Fn(&ElementSet, &ElementSet) -> ElementSet,
) -> Vec<ElementSet> {
    loop {
        let mut fresh = Vec::new();
        for a in &sets {
            for b in &sets {
                let c = op(a, b);
                if !sets.contains(&c) && !fresh.contains(&c) {
                    fresh.push(c);
                }
            }
        }
        if fresh.is_empty() {
            return sets;
        }
        sets.extend(fresh);
    }
}
