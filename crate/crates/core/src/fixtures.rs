//! Small posets shared by the unit tests.

use crate::poset::Poset;
use crate::set::ElementSet;

/// `a < c`, `b < c`, `b < d`.
pub(crate) fn n_poset() -> Poset {
    Poset::new(["a", "b", "c", "d"], [("a", "c"), ("b", "c"), ("b", "d")]).unwrap()
}

/// Minimal `a1..ak`, maximal `b1..bk`, `ai < bj` iff `i != j`.
pub(crate) fn standard_example(k: usize) -> Poset {
    let elements: Vec<String> = (1..=k)
        .map(|i| format!("a{i}"))
        .chain((1..=k).map(|i| format!("b{i}")))
        .collect();
    let pairs: Vec<_> = (0..k)
        .flat_map(|i| (0..k).filter(move |&j| j != i).map(move |j| (i, k + j)))
        .collect();
    Poset::from_index_pairs(elements, &pairs).unwrap()
}

pub(crate) fn set(p: &Poset, names: &[&str]) -> ElementSet {
    ElementSet::from_indices(p.len(), names.iter().map(|n| p.index_of(n).unwrap()))
}
