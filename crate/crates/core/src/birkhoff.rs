//! The downset lattice of a poset and the correspondences between downsets,
//! antichains and complementary upsets.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::set::ElementSet;

/// Default bound on the number of lattice elements.
pub const DEFAULT_LATTICE_LIMIT: usize = 1_000_000;

/// All downsets of a poset, ordered by cardinality and then by bit pattern
/// under the poset's element order. Lattice elements are referred to by
/// their ordinal in that sequence.
#[derive(Clone, Debug)]
pub struct DownsetLattice {
    poset: Poset,
    downsets: Vec<ElementSet>,
    index: HashMap<ElementSet, usize>,
    principal: Vec<usize>,
}

impl DownsetLattice {
    pub fn new(poset: Poset) -> Result<Self> {
        Self::with_limit(poset, DEFAULT_LATTICE_LIMIT)
    }

    /// Fails with `SizeLimitExceeded` as soon as more than `limit` downsets
    /// have been generated.
    pub fn with_limit(poset: Poset, limit: usize) -> Result<Self> {
        let order = topological_order(&poset);
        let mut downsets = Vec::new();
        let mut current = poset.empty_set();
        extend_downsets(&poset, &order, 0, &mut current, &mut downsets, limit)?;
        downsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let index: HashMap<ElementSet, usize> = downsets
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let principal = (0..poset.len())
            .map(|x| index[poset.down_cone(x)])
            .collect();
        Ok(DownsetLattice {
            poset,
            downsets,
            index,
            principal,
        })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    /// Number of lattice elements, equal to the number of antichains.
    pub fn len(&self) -> usize {
        self.downsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.downsets.is_empty()
    }

    pub fn downsets(&self) -> &[ElementSet] {
        &self.downsets
    }

    pub fn downset(&self, ordinal: usize) -> &ElementSet {
        &self.downsets[ordinal]
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.downsets.len() - 1
    }

    pub fn ordinal(&self, set: &ElementSet) -> Result<usize> {
        self.index.get(set).copied().ok_or(Error::UnknownDownset)
    }

    /// Ordinal of the lower cone of `x`.
    pub fn principal(&self, x: usize) -> usize {
        self.principal[x]
    }

    pub fn join(&self, s: &ElementSet, t: &ElementSet) -> Result<ElementSet> {
        self.ordinal(s)?;
        self.ordinal(t)?;
        Ok(s.union(t))
    }

    pub fn meet(&self, s: &ElementSet, t: &ElementSet) -> Result<ElementSet> {
        self.ordinal(s)?;
        self.ordinal(t)?;
        Ok(s.intersection(t))
    }

    pub fn join_ordinals(&self, a: usize, b: usize) -> usize {
        self.index[&self.downsets[a].union(&self.downsets[b])]
    }

    pub fn meet_ordinals(&self, a: usize, b: usize) -> usize {
        self.index[&self.downsets[a].intersection(&self.downsets[b])]
    }

    /// Lattice order on ordinals (set inclusion).
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.downsets[a].is_subset(&self.downsets[b])
    }

    /// The antichain of maximal elements generating `downset`.
    pub fn antichain_of(&self, downset: &ElementSet) -> Result<Antichain> {
        self.ordinal(downset)?;
        Ok(Antichain {
            members: self.poset.maximal_in(downset),
        })
    }

    pub fn downset_of_antichain(&self, antichain: &Antichain) -> Result<ElementSet> {
        if antichain.members.words().len() != self.poset.empty_set().words().len()
            || !self.poset.is_antichain(&antichain.members)
        {
            return Err(Error::NotAnAntichain);
        }
        Ok(self.poset.down_closure(&antichain.members))
    }

    /// The complementary upset of `downset`.
    pub fn delta(&self, downset: &ElementSet) -> Result<ElementSet> {
        self.ordinal(downset)?;
        Ok(downset.complement(self.poset.len()))
    }

    /// Cover pairs `(lower, upper)` of the lattice, as ordinals. Each upper
    /// downset covers the sets obtained by dropping one maximal element.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (upper, set) in self.downsets.iter().enumerate() {
            for x in self.poset.maximal_in(set).iter() {
                out.push((self.index[&set.without(x)], upper));
            }
        }
        out.sort_unstable();
        out
    }
}

/// A set of pairwise incomparable elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Antichain {
    members: ElementSet,
}

impl Antichain {
    pub fn new(poset: &Poset, members: ElementSet) -> Result<Self> {
        if !poset.is_antichain(&members) {
            return Err(Error::NotAnAntichain);
        }
        Ok(Antichain { members })
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }
}

/// A linear extension picked greedily by smallest available index.
fn topological_order(poset: &Poset) -> Vec<usize> {
    let k = poset.len();
    let mut placed = poset.empty_set();
    let mut order = Vec::with_capacity(k);
    while order.len() < k {
        let x = (0..k)
            .find(|&x| !placed.contains(x) && poset.down_cone(x).without(x).is_subset(&placed))
            .expect("a poset always has a minimal unplaced element");
        placed.insert(x);
        order.push(x);
    }
    order
}

/// Decides each element of `order` in turn; an element may join only when
/// its whole lower cone is already in.
fn extend_downsets(
    poset: &Poset,
    order: &[usize],
    depth: usize,
    current: &mut ElementSet,
    out: &mut Vec<ElementSet>,
    limit: usize,
) -> Result<()> {
    let Some(&x) = order.get(depth) else {
        if out.len() >= limit {
            return Err(Error::SizeLimitExceeded(
                "birkhoff",
                out.len() as u128 + 1,
                limit as u128,
            ));
        }
        out.push(current.clone());
        return Ok(());
    };
    extend_downsets(poset, order, depth + 1, current, out, limit)?;
    if poset.down_cone(x).without(x).is_subset(current) {
        current.insert(x);
        let res = extend_downsets(poset, order, depth + 1, current, out, limit);
        current.remove(x);
        res?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{n_poset, set, standard_example};
    use proptest::prelude::*;

    fn naive_downsets(p: &Poset) -> Vec<ElementSet> {
        let k = p.len();
        let mut out: Vec<ElementSet> = (0u32..1 << k)
            .map(|mask| ElementSet::from_indices(k, (0..k).filter(|i| mask >> i & 1 == 1)))
            .filter(|s| {
                s.iter()
                    .all(|y| (0..k).all(|x| !p.le(x, y) || s.contains(x)))
            })
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    #[test]
    fn small_lattice_sizes() {
        let anti = Poset::antichain(["a", "b"]);
        let l = DownsetLattice::new(anti.clone()).unwrap();
        let want = [
            set(&anti, &[]),
            set(&anti, &["a"]),
            set(&anti, &["b"]),
            set(&anti, &["a", "b"]),
        ];
        assert_eq!(l.downsets(), &want[..]);
        assert_eq!(DownsetLattice::new(n_poset()).unwrap().len(), 8);
        assert_eq!(DownsetLattice::new(standard_example(3)).unwrap().len(), 18);
    }

    #[test]
    fn n_poset_order_is_fixed() {
        let p = n_poset();
        let l = DownsetLattice::new(p.clone()).unwrap();
        let names: Vec<Vec<&str>> = l
            .downsets()
            .iter()
            .map(|s| s.iter().map(|x| p.name(x)).collect())
            .collect();
        assert_eq!(
            names,
            vec![
                vec![],
                vec!["a"],
                vec!["b"],
                vec!["a", "b"],
                vec!["b", "d"],
                vec!["a", "b", "c"],
                vec!["a", "b", "d"],
                vec!["a", "b", "c", "d"],
            ]
        );
    }

    #[test]
    fn limit_is_enforced() {
        let p = Poset::antichain((0..12).map(|i| format!("x{i}")));
        let err = DownsetLattice::with_limit(p, 100).unwrap_err();
        assert!(matches!(err, Error::SizeLimitExceeded("birkhoff", _, 100)));
    }

    #[test]
    fn join_and_meet() {
        let anti = Poset::antichain(["a", "b"]);
        let l = DownsetLattice::new(anti.clone()).unwrap();
        assert_eq!(
            l.join(&set(&anti, &["a"]), &set(&anti, &["b"])).unwrap(),
            set(&anti, &["a", "b"])
        );
        for s in l.downsets() {
            assert_eq!(
                &l.meet(s, l.downset(l.bottom())).unwrap(),
                l.downset(l.bottom())
            );
        }
        let n = n_poset();
        let l = DownsetLattice::new(n.clone()).unwrap();
        assert_eq!(
            l.join(&set(&n, &["b"]), &set(&n, &["b", "d"])).unwrap(),
            set(&n, &["b", "d"])
        );
        assert_eq!(
            l.join(&set(&n, &["c"]), &set(&n, &["b"])),
            Err(Error::UnknownDownset)
        );
    }

    #[test]
    fn antichains_and_delta() {
        let n = n_poset();
        let l = DownsetLattice::new(n.clone()).unwrap();
        assert!(l.antichain_of(&n.empty_set()).unwrap().members().is_empty());
        assert_eq!(
            l.antichain_of(&set(&n, &["a", "b", "c"]))
                .unwrap()
                .members(),
            &set(&n, &["c"])
        );
        assert_eq!(
            l.antichain_of(&set(&n, &["a", "b", "d"]))
                .unwrap()
                .members(),
            &set(&n, &["a", "d"])
        );
        let c = Antichain::new(&n, set(&n, &["c"])).unwrap();
        assert_eq!(
            l.downset_of_antichain(&c).unwrap(),
            set(&n, &["a", "b", "c"])
        );
        let ad = Antichain::new(&n, set(&n, &["a", "d"])).unwrap();
        assert_eq!(
            l.downset_of_antichain(&ad).unwrap(),
            set(&n, &["a", "b", "d"])
        );
        let empty = Antichain::new(&n, n.empty_set()).unwrap();
        assert_eq!(l.downset_of_antichain(&empty).unwrap(), n.empty_set());
        assert_eq!(
            Antichain::new(&n, set(&n, &["a", "c"])),
            Err(Error::NotAnAntichain)
        );

        assert_eq!(l.delta(&n.empty_set()).unwrap(), n.full_set());
        assert_eq!(
            l.delta(&set(&n, &["b", "d"])).unwrap(),
            set(&n, &["a", "c"])
        );
        assert_eq!(l.delta(&set(&n, &["d"])), Err(Error::UnknownDownset));
    }

    #[test]
    fn lattice_covers_add_one_element() {
        let l = DownsetLattice::new(n_poset()).unwrap();
        let covers = l.covers();
        assert_eq!(covers.len(), 10);
        for (lo, hi) in covers {
            assert!(l.le(lo, hi));
            assert_eq!(l.downset(lo).len() + 1, l.downset(hi).len());
        }
    }

    fn random_poset() -> impl Strategy<Value = Poset> {
        (1usize..9)
            .prop_flat_map(|k| (Just(k), proptest::collection::vec(any::<bool>(), k * k)))
            .prop_map(|(k, bits)| {
                let pairs: Vec<_> = (0..k)
                    .flat_map(|x| (x + 1..k).map(move |y| (x, y)))
                    .filter(|&(x, y)| bits[x * k + y])
                    .collect();
                Poset::from_index_pairs((0..k).map(|i| format!("e{i}")).collect(), &pairs).unwrap()
            })
    }

    proptest! {
        #[test]
        fn enumeration_matches_naive_filter(p in random_poset()) {
            let l = DownsetLattice::new(p.clone()).unwrap();
            prop_assert_eq!(l.downsets(), &naive_downsets(&p)[..]);
        }

        #[test]
        fn lattice_laws(p in random_poset(), picks in proptest::collection::vec(any::<prop::sample::Index>(), 3)) {
            let l = DownsetLattice::new(p.clone()).unwrap();
            let [s, t, u] = [0, 1, 2].map(|i| picks[i].index(l.len()));
            let (js, jt) = (l.join_ordinals(s, t), l.meet_ordinals(s, t));
            prop_assert!(l.le(s, js) && l.le(t, js) && l.le(jt, s) && l.le(jt, t));
            prop_assert_eq!(
                l.join_ordinals(s, l.meet_ordinals(t, u)),
                l.meet_ordinals(l.join_ordinals(s, t), l.join_ordinals(s, u))
            );
            let (ds, dt) = (l.delta(l.downset(s)).unwrap(), l.delta(l.downset(t)).unwrap());
            prop_assert!(p.is_upset(&ds));
            prop_assert_eq!(l.le(s, t), dt.is_subset(&ds));
            let a = l.antichain_of(l.downset(s)).unwrap();
            prop_assert_eq!(&l.downset_of_antichain(&a).unwrap(), l.downset(s));
        }
    }
}
