use std::collections::HashMap;

use crate::{Error, Result};

/// Default bound on the order of a constructed group.
pub const DEFAULT_ORDER_CAP: usize = 5_000;

/// Permutation provenance of a group built from generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutations {
    pub degree: usize,
    pub generators: Vec<Vec<u32>>,
    /// Image lists of every element, indexed like the group.
    pub elements: Vec<Vec<u32>>,
}

/// A finite group on the indices `0..order` with identity `0`.
///
/// `mul(a, b)` is the product "first `a`, then `b`", which matches composing
/// permutations left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    generators: Vec<u32>,
    perms: Option<Permutations>,
}

fn check_cap(order: usize, cap: usize) -> Result<()> {
    if order > cap {
        Err(Error::OrderCapExceeded { cap })
    } else {
        Ok(())
    }
}

/// Checks that `perm` is a bijection of `0..degree`.
pub fn validate_permutation(perm: &[u32], degree: usize) -> Result<()> {
    if perm.len() != degree {
        return Err(Error::InvalidPermutation(format!("expected {degree} images, got {}", perm.len())));
    }
    let mut seen = vec![false; degree];
    for &x in perm {
        let x = x as usize;
        if x >= degree || seen[x] {
            return Err(Error::InvalidPermutation(format!("{perm:?} is not a bijection of 0..{degree}")));
        }
        seen[x] = true;
    }
    Ok(())
}

impl FiniteGroup {
    /// Enumerates the group generated by `generators` breadth first from the
    /// identity, trying generators in the given order.
    pub fn from_permutations(degree: usize, generators: &[Vec<u32>], cap: usize) -> Result<Self> {
        for g in generators {
            validate_permutation(g, degree)?;
        }
        let identity: Vec<u32> = (0..degree as u32).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<u32>, u32> = HashMap::from([(identity, 0)]);
        let mut right: Vec<Vec<u32>> = Vec::new();
        // (parent, generator) with element = parent * generator
        let mut parent: Vec<(u32, usize)> = vec![(0, 0)];
        let mut i = 0;
        while i < elements.len() {
            let mut row = Vec::with_capacity(generators.len());
            for (gi, g) in generators.iter().enumerate() {
                let y: Vec<u32> = elements[i].iter().map(|&x| g[x as usize]).collect();
                let next = index.len() as u32;
                let idx = *index.entry(y.clone()).or_insert_with(|| {
                    elements.push(y);
                    parent.push((i as u32, gi));
                    next
                });
                row.push(idx);
            }
            check_cap(elements.len(), cap)?;
            right.push(row);
            i += 1;
        }
        let n = elements.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            let row = &mut table[a * n..(a + 1) * n];
            row[0] = a as u32;
            for b in 1..n {
                let (pb, gb) = parent[b];
                row[b] = right[row[pb as usize] as usize][gb];
            }
        }
        let gen_indices = generators
            .iter()
            .map(|g| index[g])
            .filter(|&x| x != 0)
            .fold(Vec::new(), |mut acc, x| {
                if !acc.contains(&x) {
                    acc.push(x);
                }
                acc
            });
        let mut group = FiniteGroup::assemble(n, table);
        group.generators = gen_indices;
        group.perms = Some(Permutations {
            degree,
            generators: generators.to_vec(),
            elements,
        });
        Ok(group)
    }

    /// Builds a group from a Cayley table, checking the group axioms.
    ///
    /// Associativity is checked on a generating set: `(xy)g = x(yg)` for all
    /// `x, y` and every generator `g` implies associativity of the whole table.
    pub fn from_table(rows: Vec<Vec<u32>>, cap: usize) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        check_cap(n, cap)?;
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x as usize >= n) {
                return Err(Error::InvalidTable(format!("entry {bad} in row {i} is out of range")));
            }
            table.extend_from_slice(row);
        }
        for i in 0..n {
            if table[i] != i as u32 || table[i * n] != i as u32 {
                return Err(Error::InvalidTable("element 0 is not the identity".into()));
            }
        }
        for i in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for j in 0..n {
                let r = table[i * n + j] as usize;
                let c = table[j * n + i] as usize;
                if row_seen[r] || col_seen[c] {
                    return Err(Error::InvalidTable(format!("row or column {i} repeats an entry")));
                }
                row_seen[r] = true;
                col_seen[c] = true;
            }
        }
        let group = FiniteGroup::assemble(n, table);
        for &g in &group.generators {
            for x in 0..n as u32 {
                for y in 0..n as u32 {
                    if group.mul(group.mul(x, y), g) != group.mul(x, group.mul(y, g)) {
                        return Err(Error::InvalidTable(format!("not associative at ({x}, {y}, {g})")));
                    }
                }
            }
        }
        Ok(group)
    }

    /// Table of a known group given by its multiplication rule.
    pub(crate) fn from_fn(order: usize, mul: impl Fn(usize, usize) -> usize) -> Self {
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                table.push(mul(a, b) as u32);
            }
        }
        FiniteGroup::assemble(order, table)
    }

    fn assemble(order: usize, table: Vec<u32>) -> Self {
        let mut inverse = vec![0u32; order];
        for a in 0..order {
            let row = &table[a * order..(a + 1) * order];
            inverse[a] = row.iter().position(|&x| x == 0).expect("latin row contains the identity") as u32;
        }
        let mut group = FiniteGroup {
            order,
            table,
            inverse,
            generators: Vec::new(),
            perms: None,
        };
        group.generators = group.greedy_generators();
        group
    }

    /// A generating set picked in index order, skipping elements already generated.
    fn greedy_generators(&self) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut list = vec![0u32];
        for e in 0..self.order as u32 {
            if inside[e as usize] {
                continue;
            }
            gens.push(e);
            // re-close under the enlarged generating set
            let mut i = 0;
            while i < list.len() {
                for &s in &gens {
                    let y = self.mul(list[i], s);
                    if !inside[y as usize] {
                        inside[y as usize] = true;
                        list.push(y);
                    }
                }
                i += 1;
            }
        }
        gens
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    pub fn identity(&self) -> u32 {
        0
    }

    /// `g^-1 a g`.
    pub fn conjugate(&self, a: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), a), g)
    }

    pub fn pow(&self, a: u32, mut k: u64) -> u32 {
        let mut base = a;
        let mut acc = 0;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: u32) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn permutations(&self) -> Option<&Permutations> {
        self.perms.as_ref()
    }

    /// Index of the element acting as `perm`, for permutation groups.
    pub fn find_permutation(&self, perm: &[u32]) -> Option<u32> {
        let perms = self.perms.as_ref()?;
        perms.elements.iter().position(|p| p == perm).map(|i| i as u32)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|&a| self.generators.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Row `a` of the Cayley table.
    pub fn row(&self, a: u32) -> &[u32] {
        &self.table[a as usize * self.order..(a as usize + 1) * self.order]
    }

    /// Full check of the group axioms; cubic in the order.
    pub fn satisfies_axioms(&self) -> bool {
        let n = self.order as u32;
        (0..n).all(|a| self.mul(0, a) == a && self.mul(a, 0) == a && self.mul(a, self.inv(a)) == 0)
            && (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c)))))
    }

    // ---- families ----

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        FiniteGroup::from_fn(n, |a, b| (a + b) % n)
    }

    /// Dihedral group of order `2m`: elements `r^i s^j` at index `i + m j`.
    pub fn dihedral(m: usize) -> Self {
        assert!(m >= 1);
        FiniteGroup::from_fn(2 * m, |x, y| {
            let (i, j) = (x % m, x / m);
            let (k, l) = (y % m, y / m);
            let rot = if j == 0 { (i + k) % m } else { (i + m - k) % m };
            rot + m * ((j + l) % 2)
        })
    }

    /// `(Z/p)^a` with base-`p` digit indexing.
    pub fn elementary_abelian(p: usize, a: u32) -> Self {
        let order = p.pow(a);
        FiniteGroup::from_fn(order, |x, y| {
            let (mut x, mut y, mut out, mut place) = (x, y, 0, 1);
            for _ in 0..a {
                out += ((x % p + y % p) % p) * place;
                x /= p;
                y /= p;
                place *= p;
            }
            out
        })
    }

    /// Quaternion group: index `u + 4 s` stands for `(-1)^s` times unit `u` of `1, i, j, k`.
    pub fn quaternion() -> Self {
        // unit products as (sign, unit)
        const UNIT: [[(usize, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        FiniteGroup::from_fn(8, |x, y| {
            let (sign, unit) = UNIT[x % 4][y % 4];
            unit + 4 * ((sign + x / 4 + y / 4) % 2)
        })
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        let mut gens = Vec::new();
        if n >= 2 {
            let mut t: Vec<u32> = (0..n as u32).collect();
            t.swap(0, 1);
            gens.push(t);
        }
        if n >= 3 {
            gens.push((0..n as u32).map(|i| (i + 1) % n as u32).collect());
        }
        FiniteGroup::from_permutations(n.max(1), &gens, DEFAULT_ORDER_CAP)
    }

    pub fn alternating(n: usize) -> Result<Self> {
        let gens: Vec<Vec<u32>> = (2..n)
            .map(|k| {
                let mut p: Vec<u32> = (0..n as u32).collect();
                // the 3-cycle (0 1 k)
                p[0] = 1;
                p[1] = k as u32;
                p[k] = 0;
                p
            })
            .collect();
        FiniteGroup::from_permutations(n.max(1), &gens, DEFAULT_ORDER_CAP)
    }

    /// `G x H` with pair `(a, b)` at index `a |H| + b`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup, cap: usize) -> Result<Self> {
        let m = h.order;
        let order = g.order.checked_mul(m).ok_or(Error::OrderCapExceeded { cap })?;
        check_cap(order, cap)?;
        Ok(FiniteGroup::from_fn(order, |x, y| {
            g.mul((x / m) as u32, (y / m) as u32) as usize * m + h.mul((x % m) as u32, (y % m) as u32) as usize
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_permutation_groups() {
        let s3 = FiniteGroup::from_permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]], DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(s3.satisfies_axioms());
        assert!(!s3.is_abelian());
        let c4 = FiniteGroup::from_permutations(4, &[vec![1, 2, 3, 0]], DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(c4.order(), 4);
        assert!(c4.is_abelian());
    }

    #[test]
    fn table_matches_composition() {
        let s4 = FiniteGroup::symmetric(4).unwrap();
        let perms = s4.permutations().unwrap();
        for a in 0..24u32 {
            for b in 0..24u32 {
                let composed: Vec<u32> = perms.elements[a as usize].iter().map(|&x| perms.elements[b as usize][x as usize]).collect();
                assert_eq!(perms.elements[s4.mul(a, b) as usize], composed);
            }
        }
    }

    #[test]
    fn families_are_groups() {
        for g in [
            FiniteGroup::cyclic(6),
            FiniteGroup::dihedral(4),
            FiniteGroup::dihedral(1),
            FiniteGroup::elementary_abelian(3, 2),
            FiniteGroup::quaternion(),
            FiniteGroup::alternating(4).unwrap(),
            FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(3), 100).unwrap(),
        ] {
            assert!(g.satisfies_axioms());
        }
        let q = FiniteGroup::quaternion();
        assert_eq!((0..8).filter(|&a| q.element_order(a) == 2).count(), 1);
        assert_eq!(FiniteGroup::alternating(5).unwrap().order(), 60);
        assert_eq!(FiniteGroup::symmetric(1).unwrap().order(), 1);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            FiniteGroup::from_permutations(3, &[vec![0, 0, 1]], 10),
            Err(Error::InvalidPermutation(_))
        ));
        assert!(matches!(FiniteGroup::symmetric(8).map(|g| g.order()), Err(Error::OrderCapExceeded { .. })));
        let not_assoc = vec![vec![0, 1, 2], vec![1, 0, 1], vec![2, 2, 0]];
        assert!(FiniteGroup::from_table(not_assoc, 10).is_err());
        let z3 = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        assert_eq!(FiniteGroup::from_table(z3, 10).unwrap().order(), 3);
    }
}
