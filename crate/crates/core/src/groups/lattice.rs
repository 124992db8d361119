use std::collections::{BTreeMap, HashSet, VecDeque};

use fixedbitset::FixedBitSet;

use super::{FiniteGroup, SubgroupSet};
use crate::{Error, Result};

/// Default bound on the number of overgroups an enumeration may produce.
pub const DEFAULT_NODE_CAP: usize = 1_000_000;

/// All subgroups of a group containing a fixed base subgroup.
#[derive(Clone, Debug)]
pub struct OvergroupLattice {
    pub base: SubgroupSet,
    /// Sorted by order, then by membership mask.
    pub nodes: Vec<SubgroupSet>,
    /// Number of nodes `H` with a given index `[G : H]`.
    pub counts: BTreeMap<usize, usize>,
}

impl OvergroupLattice {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn count_with_index(&self, index: usize) -> usize {
        self.counts.get(&index).copied().unwrap_or(0)
    }
}

/// Enumerates `{H <= G : T <= H}` by saturation.
///
/// Starting from `T`, each discovered `H` is extended by one representative
/// of every right coset `Hg` outside `H`. Every overgroup is reached this way
/// since it is generated by `T` and finitely many elements.
pub fn enumerate_overgroups(g: &FiniteGroup, t: &SubgroupSet, node_cap: usize) -> Result<OvergroupLattice> {
    let mut seen: HashSet<SubgroupSet> = HashSet::from([t.clone()]);
    let mut queue = VecDeque::from([t.clone()]);
    while let Some(h) = queue.pop_front() {
        let mut covered = h.mask().clone();
        for x in 0..g.order() as u32 {
            if covered.contains(x as usize) {
                continue;
            }
            for e in h.elements() {
                covered.insert(g.mul(e, x) as usize);
            }
            let k = h.extended(g, &[x]);
            if !seen.contains(&k) {
                if seen.len() >= node_cap {
                    return Err(Error::NodeCapExceeded { cap: node_cap });
                }
                seen.insert(k.clone());
                queue.push_back(k);
            }
        }
    }
    let mut nodes: Vec<SubgroupSet> = seen.into_iter().collect();
    nodes.sort();
    let mut counts = BTreeMap::new();
    for n in &nodes {
        *counts.entry(n.index_in(g)).or_insert(0) += 1;
    }
    Ok(OvergroupLattice {
        base: t.clone(),
        nodes,
        counts,
    })
}

/// Every subgroup of `g`.
pub fn all_subgroups(g: &FiniteGroup, node_cap: usize) -> Result<Vec<SubgroupSet>> {
    Ok(enumerate_overgroups(g, &SubgroupSet::trivial(g), node_cap)?.nodes)
}

/// One representative per conjugacy class (the smallest in sorted order),
/// with the class size.
pub fn conjugacy_classes(g: &FiniteGroup, subgroups: &[SubgroupSet]) -> Vec<(SubgroupSet, usize)> {
    let mut done: HashSet<FixedBitSet> = HashSet::new();
    let mut out = Vec::new();
    for h in subgroups {
        if done.contains(h.mask()) {
            continue;
        }
        let class: HashSet<SubgroupSet> = (0..g.order() as u32).map(|x| h.conjugate_by(g, x)).collect();
        let rep = class.iter().min().expect("class contains h").clone();
        for k in &class {
            done.insert(k.mask().clone());
        }
        out.push((rep, class.len()));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn klein_four_lattice() {
        let v = FiniteGroup::elementary_abelian(2, 2);
        let l = enumerate_overgroups(&v, &SubgroupSet::trivial(&v), DEFAULT_NODE_CAP).unwrap();
        assert_eq!(l.len(), 5);
        assert_eq!(l.counts, BTreeMap::from([(1, 1), (2, 3), (4, 1)]));
    }

    #[test]
    fn s4_over_three_cycle() {
        let s4 = FiniteGroup::symmetric(4).unwrap();
        let c = s4.find_permutation(&[1, 2, 0, 3]).unwrap();
        let t = SubgroupSet::closure(&s4, &[c]).unwrap();
        let l = enumerate_overgroups(&s4, &t, DEFAULT_NODE_CAP).unwrap();
        let orders: Vec<usize> = l.nodes.iter().map(|n| n.order()).collect();
        assert_eq!(orders, vec![3, 6, 12, 24]);
        assert_eq!(all_subgroups(&s4, DEFAULT_NODE_CAP).unwrap().len(), 30);
    }

    #[test]
    fn node_cap_is_reported() {
        let g = FiniteGroup::elementary_abelian(2, 3);
        assert_eq!(
            enumerate_overgroups(&g, &SubgroupSet::trivial(&g), 3).unwrap_err(),
            Error::NodeCapExceeded { cap: 3 }
        );
    }

    #[test]
    fn classes_of_s4() {
        let s4 = FiniteGroup::symmetric(4).unwrap();
        let subs = all_subgroups(&s4, DEFAULT_NODE_CAP).unwrap();
        let classes = conjugacy_classes(&s4, &subs);
        assert_eq!(classes.len(), 11);
        assert_eq!(classes.iter().map(|c| c.1).sum::<usize>(), 30);
    }
}
