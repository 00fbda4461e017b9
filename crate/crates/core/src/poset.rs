//! Finite posets, linear extensions and realizers.
//!
//! A [`Poset`] keeps its elements in input order. Every other structure in
//! the crate refers to elements by their index into that order, and reports
//! them back in the same order.

use std::collections::HashMap;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::set::ElementSet;

/// A finite partially ordered set with its closed `≤` relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    elements: Vec<String>,
    index: HashMap<String, usize>,
    /// `up[x]` holds every `y` with `x ≤ y`.
    up: Vec<ElementSet>,
    /// `down[y]` holds every `x` with `x ≤ y`.
    down: Vec<ElementSet>,
}

impl Poset {
    /// Builds the reflexive-transitive closure of `pairs`, where `(x, y)`
    /// asserts `x ≤ y`. Pairs need not be covers.
    ///
    /// ```
    /// use latval::Poset;
    /// let n = Poset::new(["a", "b", "c", "d"], [("a", "c"), ("b", "c"), ("b", "d")]).unwrap();
    /// assert_eq!(n.incomparable_pairs().len(), 3);
    /// ```
    pub fn new<E, S, P, A, B>(elements: E, pairs: P) -> Result<Poset>
    where
        E: IntoIterator<Item = S>,
        S: Into<String>,
        P: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        let index = index_elements(&elements)?;
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::UnknownElement(name.to_owned()))
        };
        let pairs = pairs
            .into_iter()
            .map(|(x, y)| Ok((lookup(x.as_ref())?, lookup(y.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        Self::close(elements, index, &pairs)
    }

    /// Same as [`Poset::new`], with pairs given as element indices.
    pub fn from_index_pairs(elements: Vec<String>, pairs: &[(usize, usize)]) -> Result<Poset> {
        let index = index_elements(&elements)?;
        let k = elements.len();
        if let Some(&(x, y)) = pairs.iter().find(|&&(x, y)| x >= k || y >= k) {
            return Err(Error::UnknownElement(format!("#{}", x.max(y))));
        }
        Self::close(elements, index, pairs)
    }

    /// The chain `names[0] < names[1] < ..`.
    pub fn chain<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Poset {
        let elements: Vec<String> = names.into_iter().map(Into::into).collect();
        let pairs: Vec<_> = (1..elements.len()).map(|i| (i - 1, i)).collect();
        Self::from_index_pairs(elements, &pairs).expect("chain is a valid poset")
    }

    /// The antichain on `names`.
    pub fn antichain<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Poset {
        let elements: Vec<String> = names.into_iter().map(Into::into).collect();
        Self::from_index_pairs(elements, &[]).expect("antichain is a valid poset")
    }

    fn close(
        elements: Vec<String>,
        index: HashMap<String, usize>,
        pairs: &[(usize, usize)],
    ) -> Result<Poset> {
        let k = elements.len();
        let mut up: Vec<ElementSet> = (0..k).map(|x| ElementSet::from_indices(k, [x])).collect();
        for &(x, y) in pairs {
            up[x].insert(y);
        }
        // Warshall on bit rows.
        for m in 0..k {
            let row_m = up[m].clone();
            for row in up.iter_mut() {
                if row.contains(m) {
                    row.union_with(&row_m);
                }
            }
        }
        for x in 0..k {
            for y in up[x].iter().filter(|&y| y > x) {
                if up[y].contains(x) {
                    return Err(Error::CycleDetected(
                        elements[x].clone(),
                        elements[y].clone(),
                    ));
                }
            }
        }
        Ok(Self::from_closed_rows(elements, index, up))
    }

    fn from_closed_rows(
        elements: Vec<String>,
        index: HashMap<String, usize>,
        up: Vec<ElementSet>,
    ) -> Poset {
        let k = elements.len();
        let mut down = vec![ElementSet::empty(k); k];
        for (x, row) in up.iter().enumerate() {
            for y in row {
                down[y].insert(x);
            }
        }
        Poset {
            elements,
            index,
            up,
            down,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn name(&self, x: usize) -> &str {
        &self.elements[x]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub(crate) fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownElement(name.to_owned()))
    }

    /// `x ≤ y`.
    #[inline]
    pub fn le(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    /// `x < y`.
    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.le(x, y)
    }

    #[inline]
    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.le(x, y) || self.le(y, x)
    }

    /// The closed relation row of `x`: every `y` with `x ≤ y`.
    pub fn up_cone(&self, x: usize) -> &ElementSet {
        &self.up[x]
    }

    /// Every `y` with `y ≤ x`.
    pub fn down_cone(&self, x: usize) -> &ElementSet {
        &self.down[x]
    }

    pub fn empty_set(&self) -> ElementSet {
        ElementSet::empty(self.len())
    }

    pub fn full_set(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    /// The poset with the relation transposed, on the same element sequence.
    pub fn dual(&self) -> Poset {
        Poset {
            elements: self.elements.clone(),
            index: self.index.clone(),
            up: self.down.clone(),
            down: self.up.clone(),
        }
    }

    /// Unordered incomparable pairs `(x, y)` with `x < y` as indices.
    pub fn incomparable_pairs(&self) -> Vec<(usize, usize)> {
        let k = self.len();
        (0..k)
            .flat_map(|x| (x + 1..k).map(move |y| (x, y)))
            .filter(|&(x, y)| !self.comparable(x, y))
            .collect()
    }

    /// Cover pairs `(x, y)`: `x < y` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.len() {
            for y in self.up[x].iter().filter(|&y| y != x) {
                let between = self.up[x]
                    .intersection(&self.down[y])
                    .iter()
                    .any(|z| z != x && z != y);
                if !between {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn is_downset(&self, set: &ElementSet) -> bool {
        set.iter().all(|x| self.down[x].is_subset(set))
    }

    pub fn is_upset(&self, set: &ElementSet) -> bool {
        set.iter().all(|x| self.up[x].is_subset(set))
    }

    pub fn is_antichain(&self, set: &ElementSet) -> bool {
        set.iter().all(|x| self.up[x].intersection(set).len() == 1)
    }

    /// Elements of `set` with no strictly larger element in `set`.
    pub fn maximal_in(&self, set: &ElementSet) -> ElementSet {
        ElementSet::from_indices(
            self.len(),
            set.iter()
                .filter(|&x| self.up[x].intersection(set).len() == 1),
        )
    }

    /// Elements of `set` with no strictly smaller element in `set`.
    pub fn minimal_in(&self, set: &ElementSet) -> ElementSet {
        ElementSet::from_indices(
            self.len(),
            set.iter()
                .filter(|&x| self.down[x].intersection(set).len() == 1),
        )
    }

    /// Union of the lower cones of `set`.
    pub fn down_closure(&self, set: &ElementSet) -> ElementSet {
        let mut out = self.empty_set();
        for x in set {
            out.union_with(&self.down[x]);
        }
        out
    }

    /// Union of the upper cones of `set`.
    pub fn up_closure(&self, set: &ElementSet) -> ElementSet {
        let mut out = self.empty_set();
        for x in set {
            out.union_with(&self.up[x]);
        }
        out
    }

    /// Whether `seq` lists the elements in an order compatible with `≤`.
    pub fn is_linear_extension(&self, seq: &[usize]) -> Result<bool> {
        let position = positions(self.len(), seq)?;
        Ok((0..self.len()).all(|x| self.up[x].iter().all(|y| position[x] <= position[y])))
    }

    /// Whether `(first, second)` is a realizer: both are linear extensions
    /// and every incomparable pair is ordered oppositely by them.
    pub fn is_realized_by(&self, first: &[usize], second: &[usize]) -> Result<bool> {
        let p1 = positions(self.len(), first)?;
        let p2 = positions(self.len(), second)?;
        if !self.is_linear_extension(first)? || !self.is_linear_extension(second)? {
            return Ok(false);
        }
        Ok(self
            .incomparable_pairs()
            .into_iter()
            .all(|(x, y)| (p1[x] < p1[y]) != (p2[x] < p2[y])))
    }

    /// Calls `visit` on every linear extension in lexicographic order of the
    /// element indices, stopping early when it breaks.
    pub fn for_each_linear_extension<B>(
        &self,
        mut visit: impl FnMut(&[usize]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        let k = self.len();
        let mut pending: Vec<usize> = (0..k).map(|y| self.down[y].len() - 1).collect();
        let mut placed = vec![false; k];
        let mut seq = Vec::with_capacity(k);
        self.extend_linear(&mut pending, &mut placed, &mut seq, &mut visit)
    }

    fn extend_linear<B>(
        &self,
        pending: &mut [usize],
        placed: &mut [bool],
        seq: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        let k = self.len();
        if seq.len() == k {
            return visit(seq);
        }
        for x in 0..k {
            if placed[x] || pending[x] != 0 {
                continue;
            }
            placed[x] = true;
            seq.push(x);
            for y in self.up[x].iter().filter(|&y| y != x) {
                pending[y] -= 1;
            }
            let flow = self.extend_linear(pending, placed, seq, visit);
            for y in self.up[x].iter().filter(|&y| y != x) {
                pending[y] += 1;
            }
            seq.pop();
            placed[x] = false;
            flow?;
        }
        ControlFlow::Continue(())
    }
}

fn index_elements(elements: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(elements.len());
    for (i, name) in elements.iter().enumerate() {
        if index.insert(name.clone(), i).is_some() {
            return Err(Error::DuplicateElement(name.clone()));
        }
    }
    Ok(index)
}

/// Inverse permutation of `seq`, or `NotAPermutation`.
fn positions(k: usize, seq: &[usize]) -> Result<Vec<usize>> {
    if seq.len() != k {
        return Err(Error::NotAPermutation);
    }
    let mut position = vec![usize::MAX; k];
    for (rank, &x) in seq.iter().enumerate() {
        if x >= k || position[x] != usize::MAX {
            return Err(Error::NotAPermutation);
        }
        position[x] = rank;
    }
    Ok(position)
}

/// A linear extension of a poset, with its inverse permutation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearExtension {
    order: Vec<usize>,
    position: Vec<usize>,
}

impl LinearExtension {
    pub fn new(poset: &Poset, order: Vec<usize>) -> Result<LinearExtension> {
        if !poset.is_linear_extension(&order)? {
            return Err(Error::NotALinearExtension);
        }
        Ok(Self::from_order_unchecked(order))
    }

    pub fn from_names<S: AsRef<str>>(poset: &Poset, names: &[S]) -> Result<LinearExtension> {
        let order = names
            .iter()
            .map(|n| poset.require(n.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(poset, order)
    }

    pub(crate) fn from_order_unchecked(order: Vec<usize>) -> LinearExtension {
        let mut position = vec![0; order.len()];
        for (rank, &x) in order.iter().enumerate() {
            position[x] = rank;
        }
        LinearExtension { order, position }
    }

    /// Elements from first to last.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Zero-based rank of `x`.
    pub fn position(&self, x: usize) -> usize {
        self.position[x]
    }

    /// Element at zero-based rank `rank`.
    pub fn at(&self, rank: usize) -> usize {
        self.order[rank]
    }

    /// `x` comes strictly before `y`.
    #[inline]
    pub fn precedes(&self, x: usize, y: usize) -> bool {
        self.position[x] < self.position[y]
    }

    /// The reversed order, a linear extension of the dual poset.
    pub fn reversed(&self) -> LinearExtension {
        Self::from_order_unchecked(self.order.iter().rev().copied().collect())
    }

    pub fn names<'p>(&self, poset: &'p Poset) -> Vec<&'p str> {
        self.order.iter().map(|&x| poset.name(x)).collect()
    }
}

/// An ordered pair of linear extensions whose intersection is the poset order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Realizer {
    lambda1: LinearExtension,
    lambda2: LinearExtension,
}

impl Realizer {
    pub fn new(poset: &Poset, lambda1: Vec<usize>, lambda2: Vec<usize>) -> Result<Realizer> {
        if !poset.is_realized_by(&lambda1, &lambda2)? {
            return Err(Error::InvalidRealizer);
        }
        Ok(Realizer {
            lambda1: LinearExtension::from_order_unchecked(lambda1),
            lambda2: LinearExtension::from_order_unchecked(lambda2),
        })
    }

    pub fn from_names<S: AsRef<str>>(
        poset: &Poset,
        lambda1: &[S],
        lambda2: &[S],
    ) -> Result<Realizer> {
        let resolve = |names: &[S]| {
            names
                .iter()
                .map(|n| poset.require(n.as_ref()))
                .collect::<Result<Vec<_>>>()
        };
        Self::new(poset, resolve(lambda1)?, resolve(lambda2)?)
    }

    pub fn lambda1(&self) -> &LinearExtension {
        &self.lambda1
    }

    pub fn lambda2(&self) -> &LinearExtension {
        &self.lambda2
    }

    /// Whether this realizer still realizes `poset`.
    pub fn realizes(&self, poset: &Poset) -> bool {
        poset
            .is_realized_by(self.lambda1.order(), self.lambda2.order())
            .unwrap_or(false)
    }
}

/// Which member of the complementary couple to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Complement {
    /// Realized by `{Λ1, reversed Λ2}`.
    Q,
    /// Realized by `{reversed Λ1, Λ2}`; the dual of `Q`.
    QPrime,
}

/// The complementary poset of `realizer`: in `Q`, `x < y` iff `x` precedes
/// `y` in `Λ1` and `y` precedes `x` in `Λ2`.
pub fn complementary_poset(
    poset: &Poset,
    realizer: &Realizer,
    variant: Complement,
) -> Result<Poset> {
    if !realizer.realizes(poset) {
        return Err(Error::InvalidRealizer);
    }
    let k = poset.len();
    let (l1, l2) = (realizer.lambda1(), realizer.lambda2());
    let up: Vec<ElementSet> = (0..k)
        .map(|x| {
            ElementSet::from_indices(
                k,
                (0..k).filter(|&y| {
                    x == y
                        || match variant {
                            Complement::Q => l1.precedes(x, y) && l2.precedes(y, x),
                            Complement::QPrime => l1.precedes(y, x) && l2.precedes(x, y),
                        }
                }),
            )
        })
        .collect();
    Ok(Poset::from_closed_rows(
        poset.elements.clone(),
        poset.index.clone(),
        up,
    ))
}
