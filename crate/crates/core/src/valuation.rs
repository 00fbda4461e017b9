//! Weight functions, valuations and their dual, the valuation axioms,
//! bijectivity, completeness and the lexicographic `Ω` code of a downset.

use num_bigint::BigUint;

use crate::birkhoff::DownsetLattice;
use crate::error::{Error, Result};
use crate::poset::{LinearExtension, Poset};
use crate::set::ElementSet;

/// A natural number attached to every poset element, indexed like the poset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightFunction {
    weights: Vec<u64>,
}

impl WeightFunction {
    pub fn new(weights: Vec<u64>) -> Self {
        WeightFunction { weights }
    }

    pub fn from_names<S: AsRef<str>>(poset: &Poset, pairs: &[(S, u64)]) -> Result<Self> {
        let mut weights = vec![None; poset.len()];
        for (name, w) in pairs {
            weights[poset.require(name.as_ref())?] = Some(*w);
        }
        weights
            .into_iter()
            .enumerate()
            .map(|(x, w)| {
                w.ok_or_else(|| Error::DomainMismatch(format!("no weight for `{}`", poset.name(x))))
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn get(&self, x: usize) -> u64 {
        self.weights[x]
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Sum of the weights over `set`.
    pub fn sum_over(&self, set: &ElementSet) -> Result<u64> {
        set.iter()
            .try_fold(0u64, |acc, x| acc.checked_add(self.weights[x]))
            .ok_or(Error::Overflow)
    }

    fn check_domain(&self, poset: &Poset) -> Result<()> {
        if self.weights.len() != poset.len() {
            return Err(Error::DomainMismatch(format!(
                "{} weights for {} elements",
                self.weights.len(),
                poset.len()
            )));
        }
        Ok(())
    }
}

/// A valuation on a downset lattice, indexed by lattice ordinal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Valuation {
    values: Vec<u64>,
}

impl Valuation {
    /// Accepts `values` only if they satisfy the valuation axioms on `lattice`.
    pub fn new(lattice: &DownsetLattice, values: Vec<u64>) -> Result<Self> {
        if !check_valuation_axioms(lattice, &values)?.is_valid() {
            return Err(Error::NotAValuation);
        }
        Ok(Valuation { values })
    }

    pub fn value(&self, ordinal: usize) -> u64 {
        self.values[ordinal]
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Lattice ordinals sorted by increasing value.
    pub fn ordinals_by_value(&self) -> Vec<usize> {
        let mut ordinals: Vec<usize> = (0..self.values.len()).collect();
        ordinals.sort_by_key(|&i| (self.values[i], i));
        ordinals
    }
}

/// The dual valuation `v'` on upsets, stored per downset `s` as `v'(δ(s))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualValuation {
    values: Vec<u64>,
}

impl DualValuation {
    /// `v'` of the complement of the downset with this ordinal.
    pub fn value_of_complement(&self, ordinal: usize) -> u64 {
        self.values[ordinal]
    }

    /// `v'` of an upset of the lattice's poset.
    pub fn value_of_upset(&self, lattice: &DownsetLattice, upset: &ElementSet) -> Result<u64> {
        let downset = upset.complement(lattice.poset().len());
        Ok(self.values[lattice.ordinal(&downset)?])
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }
}

/// `v(s) = Σ_{x ∈ s} w(x)` for every downset `s`.
pub fn valuation_from_weights(
    lattice: &DownsetLattice,
    weights: &WeightFunction,
) -> Result<Valuation> {
    weights.check_domain(lattice.poset())?;
    let values = lattice
        .downsets()
        .iter()
        .map(|s| weights.sum_over(s))
        .collect::<Result<Vec<_>>>()?;
    Ok(Valuation { values })
}

/// `v'(u) = Σ_{x ∈ u} w(x)` for every upset `u`, stored under `δ⁻¹(u)`.
pub fn dual_valuation(lattice: &DownsetLattice, weights: &WeightFunction) -> Result<DualValuation> {
    weights.check_domain(lattice.poset())?;
    let k = lattice.poset().len();
    let values = lattice
        .downsets()
        .iter()
        .map(|s| weights.sum_over(&s.complement(k)))
        .collect::<Result<Vec<_>>>()?;
    Ok(DualValuation { values })
}

/// Outcome of checking a value table against the valuation axioms. Each
/// failing axiom carries a counterexample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    /// `Some(v(⊥))` when the bottom value is not zero.
    pub bottom_nonzero: Option<u64>,
    /// A cover `(s, t)`, `s ⊂ t`, with `v(s) > v(t)`.
    pub monotonicity: Option<(usize, usize)>,
    /// A pair `(s, t)` with `v(s ∪ t) + v(s ∩ t) ≠ v(s) + v(t)`.
    pub additivity: Option<(usize, usize)>,
}

impl AxiomReport {
    pub fn is_valid(&self) -> bool {
        self.bottom_nonzero.is_none() && self.monotonicity.is_none() && self.additivity.is_none()
    }
}

/// Checks bottom-zero, monotonicity and additivity of an arbitrary table
/// indexed by lattice ordinal.
pub fn check_valuation_axioms(lattice: &DownsetLattice, values: &[u64]) -> Result<AxiomReport> {
    if values.len() != lattice.len() {
        return Err(Error::DomainMismatch(format!(
            "{} values for {} lattice elements",
            values.len(),
            lattice.len()
        )));
    }
    let bottom = values[lattice.bottom()];
    let bottom_nonzero = (bottom != 0).then_some(bottom);
    // Any order violation shows up on some cover.
    let monotonicity = lattice
        .covers()
        .into_iter()
        .find(|&(lo, hi)| values[lo] > values[hi]);
    let additivity = if is_modular(lattice, values) {
        None
    } else {
        additivity_counterexample(lattice, values)
    };
    Ok(AxiomReport {
        bottom_nonzero,
        monotonicity,
        additivity,
    })
}

/// On a downset lattice, `v` is additive exactly when
/// `v(s) - v(⊥) = Σ_{x ∈ s} (v(x↓) - v(x↓ \ {x}))` for every downset `s`.
fn is_modular(lattice: &DownsetLattice, values: &[u64]) -> bool {
    let p = lattice.poset();
    let increments: Vec<i128> = (0..p.len())
        .map(|x| {
            let cone = lattice.principal(x);
            let below = lattice
                .ordinal(&lattice.downset(cone).without(x))
                .expect("a cone minus its apex is a downset");
            values[cone] as i128 - values[below] as i128
        })
        .collect();
    let bottom = values[lattice.bottom()] as i128;
    lattice
        .downsets()
        .iter()
        .zip(values)
        .all(|(s, &v)| v as i128 - bottom == s.iter().map(|x| increments[x]).sum::<i128>())
}

fn additivity_counterexample(lattice: &DownsetLattice, values: &[u64]) -> Option<(usize, usize)> {
    let n = lattice.len();
    (0..n)
        .flat_map(|s| (s + 1..n).map(move |t| (s, t)))
        .find(|&(s, t)| {
            let lhs = values[lattice.join_ordinals(s, t)] as u128
                + values[lattice.meet_ordinals(s, t)] as u128;
            lhs != values[s] as u128 + values[t] as u128
        })
}

/// Whether the values are exactly `{0, .., n - 1}`.
pub fn is_bijective(lattice: &DownsetLattice, valuation: &Valuation) -> bool {
    let n = lattice.len();
    if valuation.values.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    valuation
        .values
        .iter()
        .all(|&v| match seen.get_mut(v as usize) {
            Some(slot) if !*slot => {
                *slot = true;
                true
            }
            _ => false,
        })
}

/// Closure of `members` under binary join, as sorted ordinals.
pub fn join_set(lattice: &DownsetLattice, members: &[usize]) -> Result<Vec<usize>> {
    closure(lattice, members, |a, b| lattice.join_ordinals(a, b))
}

/// Closure of `members` under binary meet, as sorted ordinals.
pub fn meet_set(lattice: &DownsetLattice, members: &[usize]) -> Result<Vec<usize>> {
    closure(lattice, members, |a, b| lattice.meet_ordinals(a, b))
}

fn closure(
    lattice: &DownsetLattice,
    members: &[usize],
    op: impl Fn(usize, usize) -> usize,
) -> Result<Vec<usize>> {
    if members.is_empty() {
        return Err(Error::EmptyInput);
    }
    if let Some(&bad) = members.iter().find(|&&m| m >= lattice.len()) {
        return Err(Error::DomainMismatch(format!("no lattice element #{bad}")));
    }
    let mut acc = Closure::new(lattice.len());
    for &a in members {
        acc.absorb(a, &op);
    }
    let mut out = acc.members;
    out.sort_unstable();
    Ok(out)
}

/// Incrementally maintained closure of a growing set under one operation.
struct Closure {
    present: Vec<bool>,
    members: Vec<usize>,
}

impl Closure {
    fn new(n: usize) -> Self {
        Closure {
            present: vec![false; n],
            members: Vec::new(),
        }
    }

    /// Adds `a` and every `a · s` for `s` already present. The result is
    /// closed whenever the previous set was.
    fn absorb(&mut self, a: usize, op: &impl Fn(usize, usize) -> usize) {
        if self.present[a] {
            return;
        }
        let before = self.members.len();
        for i in 0..before {
            self.insert(op(a, self.members[i]));
        }
        self.insert(a);
    }

    fn insert(&mut self, c: usize) {
        if !self.present[c] {
            self.present[c] = true;
            self.members.push(c);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SegmentSide {
    /// Initial segment whose join set failed to be initial.
    Lower,
    /// Final segment whose meet set failed to be final.
    Upper,
}

/// A failing segment: its members and the value set of their closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentWitness {
    pub side: SegmentSide,
    pub segment: Vec<usize>,
    pub closure_values: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentVerdict {
    pub ok: bool,
    pub witness: Option<SegmentWitness>,
}

/// Checks lower and upper completeness of a bijective valuation.
///
/// Every initial segment `{v < j}` must have a join set whose values are
/// `{0, .., m}`; every final segment `{v ≥ j}` must have a meet set whose
/// values are `{m, .., n - 1}`. The first failure (lower side first,
/// shortest segment first) is returned as a witness.
pub fn is_complete(lattice: &DownsetLattice, valuation: &Valuation) -> Result<SegmentVerdict> {
    if !is_bijective(lattice, valuation) {
        return Err(Error::NotBijective);
    }
    let n = lattice.len();
    let by_value = valuation.ordinals_by_value();
    let values = &valuation.values;

    let lower = scan_segments(
        by_value.iter().copied(),
        n,
        |a, b| lattice.join_ordinals(a, b),
        |set| {
            let max = set.iter().map(|&i| values[i]).max().unwrap_or(0);
            max + 1 == set.len() as u64
        },
    );
    let upper = || {
        scan_segments(
            by_value.iter().rev().copied(),
            n,
            |a, b| lattice.meet_ordinals(a, b),
            |set| {
                let min = set.iter().map(|&i| values[i]).min().unwrap_or(0);
                n as u64 - min == set.len() as u64
            },
        )
    };
    let failure = match lower {
        Some(f) => Some((SegmentSide::Lower, f)),
        None => upper().map(|f| (SegmentSide::Upper, f)),
    };
    Ok(match failure {
        None => SegmentVerdict {
            ok: true,
            witness: None,
        },
        Some((side, (len, closure))) => {
            let segment = match side {
                SegmentSide::Lower => by_value[..len].to_vec(),
                SegmentSide::Upper => by_value[n - len..].to_vec(),
            };
            let mut closure_values: Vec<u64> = closure.iter().map(|&i| values[i]).collect();
            closure_values.sort_unstable();
            SegmentVerdict {
                ok: false,
                witness: Some(SegmentWitness {
                    side,
                    segment,
                    closure_values,
                }),
            }
        }
    })
}

/// Feeds segment members one by one and returns the first segment length
/// whose closure fails `contiguous`, with that closure.
fn scan_segments(
    order: impl Iterator<Item = usize>,
    n: usize,
    op: impl Fn(usize, usize) -> usize,
    contiguous: impl Fn(&[usize]) -> bool,
) -> Option<(usize, Vec<usize>)> {
    let mut acc = Closure::new(n);
    for (i, a) in order.enumerate() {
        acc.absorb(a, &op);
        if !contiguous(&acc.members) {
            return Some((i + 1, acc.members.clone()));
        }
    }
    None
}

/// The `Ω` code of a downset: bit `j` is set iff the element at zero-based
/// position `j` of `lambda1` belongs to the downset. Comparing codes as
/// integers is the lexicographic order with the last `Λ1` position most
/// significant.
pub fn omega_encode(downset: &ElementSet, lambda1: &LinearExtension) -> BigUint {
    let k = lambda1.order().len();
    let mut digits = vec![0u32; k.div_ceil(32).max(1)];
    for x in downset {
        let j = lambda1.position(x);
        digits[j / 32] |= 1 << (j % 32);
    }
    BigUint::new(digits)
}

/// Recovers `w(x) = v(x↓) - v(x↓ \ {x})` from a valuation table.
pub fn weights_from_valuation(lattice: &DownsetLattice, values: &[u64]) -> Result<WeightFunction> {
    if !check_valuation_axioms(lattice, values)?.is_valid() {
        return Err(Error::NotAValuation);
    }
    let weights = (0..lattice.poset().len())
        .map(|x| {
            let cone = lattice.principal(x);
            let below = lattice.ordinal(&lattice.downset(cone).without(x))?;
            Ok(values[cone] - values[below])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WeightFunction::new(weights))
}
