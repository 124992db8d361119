use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::{FiniteGroup, SubgroupSet};
use crate::exact::{is_prime, p_part};
use crate::{Error, Result};

/// `N_G(H)`.
pub fn normalizer(g: &FiniteGroup, h: &SubgroupSet) -> SubgroupSet {
    let elements: Vec<u32> = (0..g.order() as u32).filter(|&x| h.is_normalized_by(g, x)).collect();
    SubgroupSet::closure(g, &elements).expect("normalizer elements are in range")
}

/// A Sylow `p`-subgroup of `g`; trivial when `p` does not divide `|g|`.
///
/// Grows a `p`-subgroup `P` one step at a time: while `P` is not Sylow, it is
/// a proper subgroup of a Sylow subgroup `Q`, hence strictly smaller than
/// `N_Q(P)`, so `N_G(P) / P` contains an element of order `p` and adjoining a
/// preimage keeps the result a `p`-group.
///
/// # Panics
///
/// If no growth step exists although `P` is not Sylow, which would mean the
/// group table is inconsistent.
pub fn sylow_subgroup(g: &FiniteGroup, p: u64) -> Result<SubgroupSet> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let target = p_part(g.order() as u64, p) as usize;
    let mut current = SubgroupSet::trivial(g);
    while current.order() < target {
        let n = normalizer(g, &current);
        let step = n
            .elements()
            .filter(|&x| !current.contains(x))
            .map(|x| current.extended(g, &[x]))
            .find(|k| p_part(k.order() as u64, p) as usize == k.order())
            .expect("a p-subgroup below the Sylow order grows inside its normalizer");
        current = step;
    }
    debug_assert!(current.is_subgroup_of(g));
    Ok(current)
}

/// Sylow subgroups `P` of `G` with `P` meeting `T` in a Sylow subgroup of `T`,
/// split into orbits under conjugation by `T`.
#[derive(Clone, Debug)]
pub struct SylowFamily {
    pub p: u64,
    pub members: Vec<SubgroupSet>,
    /// Each orbit lists indices into `members`.
    pub orbits: Vec<Vec<usize>>,
}

pub fn sylow_family(g: &FiniteGroup, t: &SubgroupSet, p: u64) -> Result<SylowFamily> {
    let base = sylow_subgroup(g, p)?;
    let want = p_part(t.order() as u64, p) as usize;
    let mut index: HashMap<FixedBitSet, usize> = HashMap::new();
    let mut members = Vec::new();
    for x in 0..g.order() as u32 {
        let q = base.conjugate_by(g, x);
        if index.contains_key(q.mask()) || q.intersection_order(t) != want {
            continue;
        }
        index.insert(q.mask().clone(), members.len());
        members.push(q);
    }
    let mut orbit_of = vec![usize::MAX; members.len()];
    let mut orbits = Vec::new();
    for start in 0..members.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut orbit = vec![start];
        orbit_of[start] = id;
        let mut i = 0;
        while i < orbit.len() {
            let cur = &members[orbit[i]];
            for &s in t.generators() {
                let img = cur.conjugate_by(g, s);
                let j = *index.get(img.mask()).expect("T-conjugation preserves the family");
                if orbit_of[j] == usize::MAX {
                    orbit_of[j] = id;
                    orbit.push(j);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    Ok(SylowFamily { p, members, orbits })
}
