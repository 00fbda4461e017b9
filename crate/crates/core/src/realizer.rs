//! Both directions of the correspondence between complete valuations and
//! realizers of dimension-two posets.
//!
//! From a realizer `(Λ1, Λ2)` the weight of `x` is the number of chains of the
//! complementary poset `Q` with maximum `x`; summing weights over downsets
//! gives a complete valuation. From a complete valuation the realizer is read
//! back by sorting elements by the value of their lower cone (`Λ↓`) and by
//! the decreasing dual value of their upper cone (`Λ↑`).

use std::ops::ControlFlow;

use crate::birkhoff::{DownsetLattice, DEFAULT_LATTICE_LIMIT};
use crate::error::{Error, Result};
use crate::poset::{complementary_poset, Complement, Poset, Realizer};
use crate::set::ElementSet;
use crate::valuation::{
    dual_valuation, is_bijective, is_complete, valuation_from_weights, weights_from_valuation,
    Valuation, WeightFunction,
};

/// Default bound on linear extensions tried by [`find_realizer`].
pub const DEFAULT_EXTENSION_BUDGET: u64 = 10_000_000;

/// Largest lattice on which [`Verification::Auto`] still checks completeness.
pub const AUTO_CHECK_LIMIT: usize = 4096;

/// `(first, second)` is a realizer of `poset`.
pub fn is_realizer(poset: &Poset, first: &[usize], second: &[usize]) -> Result<bool> {
    poset.is_realized_by(first, second)
}

/// The lexicographically least realizer (by `Λ1`), if the poset has dimension
/// at most two.
pub fn find_realizer(poset: &Poset) -> Result<Option<Realizer>> {
    Ok(realizers(poset, 1, DEFAULT_EXTENSION_BUDGET)?
        .into_iter()
        .next())
}

/// Up to `cap` realizers in lexicographic order of `Λ1`.
///
/// For a fixed `Λ1` the second order is forced: it must agree with the poset
/// on comparable pairs and reverse `Λ1` on incomparable ones. Each linear
/// extension is therefore tested once, by checking that this forced
/// tournament is transitive. Fails with `SizeLimitExceeded` after `budget`
/// linear extensions.
pub fn realizers(poset: &Poset, cap: usize, budget: u64) -> Result<Vec<Realizer>> {
    let mut found = Vec::new();
    let mut tried = 0u64;
    if cap == 0 {
        return Ok(found);
    }
    let flow = poset.for_each_linear_extension(|lambda1| {
        tried += 1;
        if tried > budget {
            return ControlFlow::Break(Err(Error::SizeLimitExceeded(
                "realizer",
                tried as u128,
                budget as u128,
            )));
        }
        if let Some(lambda2) = forced_conjugate(poset, lambda1) {
            match Realizer::new(poset, lambda1.to_vec(), lambda2) {
                Ok(r) => found.push(r),
                Err(e) => return ControlFlow::Break(Err(e)),
            }
            if found.len() >= cap {
                return ControlFlow::Break(Ok(()));
            }
        }
        ControlFlow::Continue(())
    });
    if let ControlFlow::Break(Err(e)) = flow {
        return Err(e);
    }
    Ok(found)
}

/// The only order that could pair with `lambda1`, if it is transitive.
fn forced_conjugate(poset: &Poset, lambda1: &[usize]) -> Option<Vec<usize>> {
    let k = poset.len();
    let mut position = vec![0; k];
    for (rank, &x) in lambda1.iter().enumerate() {
        position[x] = rank;
    }
    // Number of elements the tournament puts before x; a tournament is
    // transitive iff these are all distinct.
    let mut slot = vec![usize::MAX; k];
    let mut order = vec![0; k];
    for x in 0..k {
        let before = (0..k)
            .filter(|&z| z != x)
            .filter(|&z| {
                if poset.comparable(z, x) {
                    poset.le(z, x)
                } else {
                    position[z] > position[x]
                }
            })
            .count();
        if slot[before] != usize::MAX {
            return None;
        }
        slot[before] = x;
        order[before] = x;
    }
    Some(order)
}

/// Number of chains of `Q` with maximum `x`, for every `x`.
///
/// `Λ1` is a linear extension of `Q`, so one pass in `Λ1` order evaluates
/// `w(y) = 1 + Σ_{x <' y} w(x)`.
pub fn chain_count_weights(poset: &Poset, realizer: &Realizer) -> Result<WeightFunction> {
    let q = complementary_poset(poset, realizer, Complement::Q)?;
    let mut weights = vec![0u64; poset.len()];
    for &y in realizer.lambda1().order() {
        let below = q
            .down_cone(y)
            .iter()
            .filter(|&x| x != y)
            .try_fold(1u64, |acc, x| acc.checked_add(weights[x]))
            .ok_or(Error::Overflow)?;
        weights[y] = below;
    }
    Ok(WeightFunction::new(weights))
}

/// How much of the postcondition [`complete_valuation`] verifies.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Verification {
    /// Bijectivity and completeness.
    Checked,
    /// Bijectivity only.
    Unchecked,
    /// `Checked` up to [`AUTO_CHECK_LIMIT`] lattice elements.
    #[default]
    Auto,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Construction {
    pub lattice_limit: usize,
    pub verification: Verification,
}

impl Default for Construction {
    fn default() -> Self {
        Construction {
            lattice_limit: DEFAULT_LATTICE_LIMIT,
            verification: Verification::Auto,
        }
    }
}

/// The downset lattice of `poset` with the chain-count valuation of `realizer`.
pub fn complete_valuation(
    poset: &Poset,
    realizer: &Realizer,
) -> Result<(DownsetLattice, Valuation)> {
    complete_valuation_with(poset, realizer, Construction::default())
}

pub fn complete_valuation_with(
    poset: &Poset,
    realizer: &Realizer,
    options: Construction,
) -> Result<(DownsetLattice, Valuation)> {
    let weights = chain_count_weights(poset, realizer)?;
    let lattice = DownsetLattice::with_limit(poset.clone(), options.lattice_limit)?;
    let valuation = valuation_from_weights(&lattice, &weights)?;
    if !is_bijective(&lattice, &valuation) {
        return Err(Error::NotBijective);
    }
    let check = match options.verification {
        Verification::Checked => true,
        Verification::Unchecked => false,
        Verification::Auto => lattice.len() <= AUTO_CHECK_LIMIT,
    };
    if check && !is_complete(&lattice, &valuation)?.ok {
        return Err(Error::NotComplete);
    }
    Ok((lattice, valuation))
}

/// One step of the value-by-value walk through the lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuccessorStep {
    pub downset: ElementSet,
    /// The `Q`-least generator of the complementary upset.
    pub added: usize,
    /// Strict `Q`-predecessors of `added` dropped from the current downset.
    pub removed: ElementSet,
    /// Whether the generators of the complementary upset were pairwise
    /// comparable in `Q` with `added` as least element.
    pub generators_form_q_chain: bool,
}

/// Computes successors under the chain-count valuation of a fixed realizer
/// without searching the lattice.
#[derive(Clone, Debug)]
pub struct Successor<'l> {
    lattice: &'l DownsetLattice,
    realizer: Realizer,
    q: Poset,
}

impl<'l> Successor<'l> {
    pub fn new(lattice: &'l DownsetLattice, realizer: &Realizer) -> Result<Self> {
        let q = complementary_poset(lattice.poset(), realizer, Complement::Q)?;
        Ok(Successor {
            lattice,
            realizer: realizer.clone(),
            q,
        })
    }

    /// The downset of value `v(current) + 1`: add `y`, the `Q`-least
    /// generator of the complement of `current`, then drop every strict
    /// `Q`-predecessor of `y`.
    pub fn step(&self, valuation: &Valuation, current: &ElementSet) -> Result<SuccessorStep> {
        let p = self.lattice.poset();
        let from = self.lattice.ordinal(current)?;
        if from == self.lattice.top() {
            return Err(Error::AtTop);
        }
        let complement = current.complement(p.len());
        let generators = p.minimal_in(&complement);
        let lambda1 = self.realizer.lambda1();
        let y = generators
            .iter()
            .min_by_key(|&x| lambda1.position(x))
            .expect("a nonempty upset has a minimal element");
        let generators_form_q_chain = generators.iter().all(|b| self.q.le(y, b));
        let removed = self.q.down_cone(y).without(y).intersection(current);
        let downset = current.with(y).difference(&removed);
        let to = self
            .lattice
            .ordinal(&downset)
            .map_err(|_| Error::SuccessorMismatch("step left the lattice".into()))?;
        if valuation.value(to) != valuation.value(from) + 1 {
            return Err(Error::SuccessorMismatch(format!(
                "{} -> {}",
                valuation.value(from),
                valuation.value(to)
            )));
        }
        Ok(SuccessorStep {
            downset,
            added: y,
            removed,
            generators_form_q_chain,
        })
    }

    /// Every downset from bottom to top, one step at a time.
    pub fn walk(&self, valuation: &Valuation) -> Result<Vec<SuccessorStep>> {
        let mut current = self.lattice.downset(self.lattice.bottom()).clone();
        let mut steps = Vec::with_capacity(self.lattice.len().saturating_sub(1));
        while current != *self.lattice.downset(self.lattice.top()) {
            let step = self.step(valuation, &current)?;
            current = step.downset.clone();
            steps.push(step);
        }
        Ok(steps)
    }
}

/// Reads the realizer `(Λ↓, Λ↑)` back from a complete valuation.
pub fn extract_realizer(lattice: &DownsetLattice, valuation: &Valuation) -> Result<Realizer> {
    match is_complete(lattice, valuation) {
        Ok(verdict) if verdict.ok => {}
        Ok(_) | Err(Error::NotBijective) => return Err(Error::NotComplete),
        Err(e) => return Err(e),
    }
    let p = lattice.poset();
    let weights = weights_from_valuation(lattice, valuation.values())?;
    let dual = dual_valuation(lattice, &weights)?;
    let lower: Vec<u64> = (0..p.len())
        .map(|x| valuation.value(lattice.principal(x)))
        .collect();
    let upper = (0..p.len())
        .map(|x| dual.value_of_upset(lattice, p.up_cone(x)))
        .collect::<Result<Vec<u64>>>()?;
    let mut down_order: Vec<usize> = (0..p.len()).collect();
    down_order.sort_by_key(|&x| lower[x]);
    let mut up_order: Vec<usize> = (0..p.len()).collect();
    up_order.sort_by_key(|&x| std::cmp::Reverse(upper[x]));
    let distinct = |order: &[usize], key: &[u64]| order.windows(2).all(|w| key[w[0]] != key[w[1]]);
    if !distinct(&down_order, &lower) || !distinct(&up_order, &upper) {
        return Err(Error::DuplicateConeValue);
    }
    Realizer::new(p, down_order, up_order)
}

/// Builds the complete valuation of `realizer`, reads a realizer back, and
/// rebuilds the valuation from it. True iff both trips are identities.
pub fn round_trip_check(poset: &Poset, realizer: &Realizer) -> Result<bool> {
    let (lattice, valuation) = complete_valuation(poset, realizer)?;
    let back = extract_realizer(&lattice, &valuation)?;
    if &back != realizer {
        return Ok(false);
    }
    let (_, again) = complete_valuation(poset, &back)?;
    Ok(again == valuation)
}

/// The recursive identities satisfied by a complete valuation and its
/// realizer `(Λ↓, Λ↑)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    /// `v(y↓) = 1 + v(⋃_{x <↓ y} x↓)`.
    LowerConeUnion,
    /// `v'(x↑) = 1 + v'(⋃_{x <↑ y} y↑)`.
    UpperConeUnion,
    /// `w(y) = 1 + Σ w(x)` over `x <↓ y` incomparable to `y`.
    LowerWeightSum,
    /// `w(x) = 1 + Σ w(y)` over `x <↑ y` incomparable to `x`.
    UpperWeightSum,
    /// `w(y) = 1 + Σ_{x <' y} w(x)` in the complementary poset.
    ComplementaryWeightSum,
    /// Incomparable `x <↓ y` forces `w(x) < w(y)`, and `x <↑ y` forces `w(y) < w(x)`.
    CrossingWeightOrder,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IdentityViolation {
    pub identity: Identity,
    pub element: usize,
}

/// Every identity that fails, checked at every element.
pub fn recursion_identities(
    lattice: &DownsetLattice,
    weights: &WeightFunction,
    realizer: &Realizer,
) -> Result<Vec<IdentityViolation>> {
    let p = lattice.poset();
    let k = p.len();
    let (down, up) = (realizer.lambda1(), realizer.lambda2());
    let q = complementary_poset(p, realizer, Complement::Q)?;
    let w = |x: usize| weights.get(x);
    let sum = |set: ElementSet| weights.sum_over(&set);
    let mut out = Vec::new();
    let mut record = |identity, element, holds: bool| {
        if !holds {
            out.push(IdentityViolation { identity, element });
        }
    };

    for y in 0..k {
        let before_down = ElementSet::from_indices(k, (0..k).filter(|&x| down.precedes(x, y)));
        record(
            Identity::LowerConeUnion,
            y,
            sum(p.down_cone(y).clone())? == 1 + sum(p.down_closure(&before_down))?,
        );
        let after_up = ElementSet::from_indices(k, (0..k).filter(|&z| up.precedes(y, z)));
        record(
            Identity::UpperConeUnion,
            y,
            sum(p.up_cone(y).clone())? == 1 + sum(p.up_closure(&after_up))?,
        );
        let crossing_down = ElementSet::from_indices(
            k,
            (0..k).filter(|&x| down.precedes(x, y) && !p.comparable(x, y)),
        );
        record(
            Identity::LowerWeightSum,
            y,
            w(y) == 1 + sum(crossing_down.clone())?,
        );
        let crossing_up = ElementSet::from_indices(
            k,
            (0..k).filter(|&z| up.precedes(y, z) && !p.comparable(y, z)),
        );
        record(
            Identity::UpperWeightSum,
            y,
            w(y) == 1 + sum(crossing_up.clone())?,
        );
        record(
            Identity::ComplementaryWeightSum,
            y,
            w(y) == 1 + sum(q.down_cone(y).without(y))?,
        );
        record(
            Identity::CrossingWeightOrder,
            y,
            crossing_down.iter().all(|x| w(x) < w(y)) && crossing_up.iter().all(|z| w(z) < w(y)),
        );
    }
    Ok(out)
}
