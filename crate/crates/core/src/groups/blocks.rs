use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use super::{FiniteGroup, SubgroupSet};

/// The action of `G` on the right cosets `Tg` by right multiplication.
#[derive(Clone, Debug)]
pub struct CosetAction {
    /// `coset_of[x]` is the index of the coset `Tx`; the coset `T` itself is 0.
    pub coset_of: Vec<u32>,
    /// For each generator of `G`, the permutation it induces on cosets.
    pub generators: Vec<Vec<u32>>,
    degree: usize,
}

impl CosetAction {
    pub fn new(g: &FiniteGroup, t: &SubgroupSet) -> Self {
        let mut coset_of = vec![u32::MAX; g.order()];
        let mut reps = Vec::new();
        for x in 0..g.order() as u32 {
            if coset_of[x as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x);
            for s in t.elements() {
                coset_of[g.mul(s, x) as usize] = id;
            }
        }
        let generators = g
            .generators()
            .iter()
            .map(|&s| reps.iter().map(|&r| coset_of[g.mul(r, s) as usize]).collect())
            .collect();
        CosetAction {
            coset_of,
            generators,
            degree: reps.len(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Block containing point 0 of the finest invariant partition in which
    /// every point of `seed` and the point `b` are joined to 0.
    ///
    /// Union-find closure: each merge queues its pair, and the images of a
    /// queued pair under every generator are merged in turn.
    pub fn minimal_block(&self, seed: &FixedBitSet, b: usize) -> FixedBitSet {
        let n = self.degree;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut queue = Vec::new();
        for x in seed.ones().chain(std::iter::once(b)) {
            let (r0, rx) = (find(&mut parent, 0), find(&mut parent, x));
            if r0 != rx {
                parent[r0.max(rx)] = r0.min(rx);
                queue.push((0, x));
            }
        }
        while let Some((x, y)) = queue.pop() {
            for perm in &self.generators {
                let (a, c) = (perm[x] as usize, perm[y] as usize);
                let (ra, rc) = (find(&mut parent, a), find(&mut parent, c));
                if ra != rc {
                    parent[ra.max(rc)] = ra.min(rc);
                    queue.push((a, c));
                }
            }
        }
        let mut block = FixedBitSet::with_capacity(n);
        for x in 0..n {
            if find(&mut parent, x) == 0 {
                block.insert(x);
            }
        }
        block
    }

    /// Every invariant partition, each given by its block through point 0
    /// (which determines a partition of a transitive action). Sorted by size.
    pub fn block_systems(&self) -> Vec<FixedBitSet> {
        let n = self.degree;
        let mut trivial = FixedBitSet::with_capacity(n);
        trivial.insert(0);
        let mut seen: HashSet<FixedBitSet> = HashSet::from([trivial.clone()]);
        let mut queue = vec![trivial];
        while let Some(block) = queue.pop() {
            for b in 0..n {
                if block.contains(b) {
                    continue;
                }
                let bigger = self.minimal_block(&block, b);
                if seen.insert(bigger.clone()) {
                    queue.push(bigger);
                }
            }
        }
        let mut out: Vec<FixedBitSet> = seen.into_iter().collect();
        out.sort_by(|a, b| a.count_ones(..).cmp(&b.count_ones(..)).then_with(|| a.cmp(b)));
        out
    }
}
