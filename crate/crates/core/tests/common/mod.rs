//! Independent reference implementations used by the integration tests.
//! Nothing here calls into the code paths under test except to obtain the
//! multiplication table of a group.
#![allow(dead_code)]

use num_bigint::BigUint;
use subcount::groups::FiniteGroup;

/// Every subset of `G` that contains the identity, has size dividing `|G|`
/// and is closed under multiplication, as sorted element lists. Closure under
/// products suffices for a finite subset.
pub fn subgroups_by_subset_filter(g: &FiniteGroup) -> Vec<Vec<u32>> {
    let n = g.order();
    assert!(n <= 24, "subset filter is for tiny groups");
    let mut out = Vec::new();
    // bit i of `rest` stands for element i + 1; the identity is always present
    for rest in 0u32..(1u32 << (n - 1)) {
        let size = rest.count_ones() as usize + 1;
        if !n.is_multiple_of(size) {
            continue;
        }
        let mask = (rest << 1) | 1;
        let elems: Vec<u32> = (0..n as u32).filter(|&i| mask >> i & 1 == 1).collect();
        let closed = elems
            .iter()
            .all(|&a| elems.iter().all(|&b| mask >> g.mul(a, b) & 1 == 1));
        if closed {
            out.push(elems);
        }
    }
    out
}

/// Subgroups from [`subgroups_by_subset_filter`] that contain every element of `t`.
pub fn overgroups_by_subset_filter(all: &[Vec<u32>], t: &[u32]) -> Vec<Vec<u32>> {
    all.iter()
        .filter(|h| t.iter().all(|x| h.binary_search(x).is_ok()))
        .cloned()
        .collect()
}

/// Number of `r`-dimensional subspaces of `F_p^m`, as the number of ordered
/// linearly independent `r`-tuples in `F_p^m` divided by the number of
/// ordered bases of `F_p^r`. Both counts are by direct enumeration.
pub fn subspace_count(m: u32, r: u32, p: u64) -> u64 {
    independent_tuples(m, r, p) / independent_tuples(r, r, p)
}

fn independent_tuples(m: u32, r: u32, p: u64) -> u64 {
    let space = p.pow(m);
    let mut count = 0;
    let mut tuple = vec![0u64; r as usize];
    loop {
        if is_independent(&tuple, m, p) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == tuple.len() {
                return count;
            }
            tuple[i] += 1;
            if tuple[i] < space {
                break;
            }
            tuple[i] = 0;
            i += 1;
        }
    }
}

fn digits(v: u64, m: u32, p: u64) -> Vec<u64> {
    (0..m).map(|i| v / p.pow(i) % p).collect()
}

/// Independence by checking that no nontrivial combination vanishes.
fn is_independent(vectors: &[u64], m: u32, p: u64) -> bool {
    let r = vectors.len() as u32;
    let vs: Vec<Vec<u64>> = vectors.iter().map(|&v| digits(v, m, p)).collect();
    for coeffs in 1..p.pow(r) {
        let cs = digits(coeffs, r, p);
        let zero = (0..m as usize).all(|j| vs.iter().zip(&cs).map(|(v, c)| v[j] * c).sum::<u64>() % p == 0);
        if zero {
            return false;
        }
    }
    true
}

/// Sum over `k` of the number of `k`-dimensional subspaces of `F_p^a`.
pub fn all_subspaces(a: u32, p: u64) -> u64 {
    (0..=a).map(|k| subspace_count(a, k, p)).sum()
}

/// `[m choose r]_p` from the q-Pascal rule, filled row by row, for
/// cross-checks at sizes the subspace enumeration cannot reach.
pub fn gauss_pascal(m: u32, r: u32, p: u64) -> BigUint {
    let mut row = vec![BigUint::from(1u32)];
    for n in 1..=m {
        let mut next = vec![BigUint::from(1u32); n as usize + 1];
        for k in 1..n as usize {
            next[k] = &row[k - 1] + num_traits::pow(BigUint::from(p), k) * &row[k];
        }
        row = next;
    }
    row.get(r as usize).cloned().unwrap_or_default()
}

/// `floor(log2(n) * 2^frac_bits)`, by comparing `n^(2^frac_bits)` with powers of two.
pub fn log2_floor_scaled(n: u64, frac_bits: u32) -> u64 {
    let big = num_traits::pow(BigUint::from(n), 1usize << frac_bits);
    big.bits() - 1
}

/// Trial-division factorization.
pub fn factor_pairs(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}
