use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;

use super::FiniteGroup;
use crate::{Error, Result};

/// A subgroup stored as a membership mask over the parent's element indices,
/// together with a generating set.
///
/// Equality, ordering and hashing use the mask only.
#[derive(Clone, Debug)]
pub struct SubgroupSet {
    members: FixedBitSet,
    order: usize,
    generators: Vec<u32>,
}

impl PartialEq for SubgroupSet {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for SubgroupSet {}

impl Hash for SubgroupSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl PartialOrd for SubgroupSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by size, then by mask.
impl Ord for SubgroupSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order.cmp(&other.order).then_with(|| self.members.cmp(&other.members))
    }
}

impl SubgroupSet {
    pub fn trivial(g: &FiniteGroup) -> Self {
        let mut members = FixedBitSet::with_capacity(g.order());
        members.insert(0);
        SubgroupSet {
            members,
            order: 1,
            generators: Vec::new(),
        }
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        let mut members = FixedBitSet::with_capacity(g.order());
        members.insert_range(..);
        SubgroupSet {
            members,
            order: g.order(),
            generators: g.generators().to_vec(),
        }
    }

    /// Smallest subgroup containing `seeds`.
    pub fn closure(g: &FiniteGroup, seeds: &[u32]) -> Result<Self> {
        for &s in seeds {
            if s as usize >= g.order() {
                return Err(Error::ElementOutOfRange {
                    index: s as usize,
                    order: g.order(),
                });
            }
        }
        Ok(SubgroupSet::trivial(g).extended(g, seeds))
    }

    /// `<self, extra>`. Elements already in `self` only need the new
    /// generators applied, since `self` is closed under its own.
    pub fn extended(&self, g: &FiniteGroup, extra: &[u32]) -> Self {
        let mut gens = self.generators.clone();
        let fresh: Vec<u32> = extra.iter().copied().filter(|&x| !self.contains(x)).collect();
        if fresh.is_empty() {
            return self.clone();
        }
        let mut members = self.members.clone();
        let mut list: Vec<u32> = self.members.ones().map(|x| x as u32).collect();
        let old = list.len();
        for &x in &fresh {
            if !gens.contains(&x) && !members.contains(x as usize) {
                gens.push(x);
            }
        }
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            let pool: &[u32] = if i < old { &fresh } else { &gens };
            for &s in pool {
                let y = g.mul(x, s);
                if !members.put(y as usize) {
                    list.push(y);
                }
            }
            i += 1;
        }
        let out = SubgroupSet {
            order: list.len(),
            members,
            generators: gens,
        };
        debug_assert!(out.is_subgroup_of(g));
        out
    }

    /// Builds a subgroup from an explicit element list, checking closure.
    pub fn from_elements(g: &FiniteGroup, elements: &[u32]) -> Result<Self> {
        let mut members = FixedBitSet::with_capacity(g.order());
        for &x in elements {
            if x as usize >= g.order() {
                return Err(Error::ElementOutOfRange {
                    index: x as usize,
                    order: g.order(),
                });
            }
            members.insert(x as usize);
        }
        let candidate = SubgroupSet {
            order: members.count_ones(..),
            members,
            generators: elements.iter().copied().filter(|&x| x != 0).collect(),
        };
        if !candidate.is_subgroup_of(g) {
            return Err(Error::NotSubgroup(format!("{elements:?} is not closed")));
        }
        Ok(candidate)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn index_in(&self, g: &FiniteGroup) -> usize {
        g.order() / self.order
    }

    pub fn contains(&self, x: u32) -> bool {
        self.members.contains(x as usize)
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> + '_ {
        self.members.ones().map(|x| x as u32)
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn mask(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn is_subset(&self, other: &SubgroupSet) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn intersection_order(&self, other: &SubgroupSet) -> usize {
        self.members.intersection_count(&other.members)
    }

    pub fn intersection(&self, g: &FiniteGroup, other: &SubgroupSet) -> SubgroupSet {
        let mut members = self.members.clone();
        members.intersect_with(&other.members);
        let elements: Vec<u32> = members.ones().map(|x| x as u32).collect();
        SubgroupSet::closure(g, &elements).expect("indices come from a mask of the same group")
    }

    /// `x^-1 H x`.
    pub fn conjugate_by(&self, g: &FiniteGroup, x: u32) -> SubgroupSet {
        let mut members = FixedBitSet::with_capacity(g.order());
        for h in self.elements() {
            members.insert(g.conjugate(h, x) as usize);
        }
        SubgroupSet {
            members,
            order: self.order,
            generators: self.generators.iter().map(|&h| g.conjugate(h, x)).collect(),
        }
    }

    /// Identity, closure under products and inverses, and Lagrange.
    pub fn is_subgroup_of(&self, g: &FiniteGroup) -> bool {
        if self.members.len() != g.order() || !self.contains(0) || !g.order().is_multiple_of(self.order) {
            return false;
        }
        if self.members.count_ones(..) != self.order {
            return false;
        }
        let elems: Vec<u32> = self.elements().collect();
        elems.iter().all(|&a| self.contains(g.inv(a)) && elems.iter().all(|&b| self.contains(g.mul(a, b))))
    }

    /// Whether `x^-1 H x = H`.
    pub fn is_normalized_by(&self, g: &FiniteGroup, x: u32) -> bool {
        self.generators.iter().all(|&h| self.contains(g.conjugate(h, x)))
    }
}
