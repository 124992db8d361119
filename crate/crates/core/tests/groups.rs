mod common;

use std::collections::{BTreeSet, HashSet};

use proptest::prelude::*;
use subcount::exact::{p_part, Level};
use subcount::groups::{
    check_pair, enumerate_overgroups, parse_corpus, sylow_family, sylow_subgroup, CosetAction, FiniteGroup,
    PairOptions, SubgroupSet, DEFAULT_CORPUS, DEFAULT_NODE_CAP, DEFAULT_ORDER_CAP,
};
use subcount::qfunc::gauss_binom;
use subcount::verify::Verdict;

fn small_corpus(max_order: usize) -> Vec<(String, FiniteGroup)> {
    parse_corpus(DEFAULT_CORPUS)
        .unwrap()
        .groups(DEFAULT_ORDER_CAP)
        .unwrap()
        .into_iter()
        .filter(|g| g.group.order() <= max_order)
        .map(|g| (g.name, g.group))
        .collect()
}

fn sorted(h: &SubgroupSet) -> Vec<u32> {
    h.elements().collect()
}

fn primes_of(n: usize) -> Vec<u64> {
    common::factor_pairs(n as u64).into_iter().map(|(p, _)| p).collect()
}

#[test]
fn overgroups_match_subset_filter() {
    for (name, g) in small_corpus(16) {
        let all = common::subgroups_by_subset_filter(&g);
        for t_elems in &all {
            let t = SubgroupSet::from_elements(&g, t_elems).unwrap();
            let lattice = enumerate_overgroups(&g, &t, DEFAULT_NODE_CAP).unwrap();
            let got: BTreeSet<Vec<u32>> = lattice.nodes.iter().map(sorted).collect();
            let want: BTreeSet<Vec<u32>> = common::overgroups_by_subset_filter(&all, t_elems).into_iter().collect();
            assert_eq!(got, want, "{name} over {t_elems:?}");
        }
    }
}

/// Blocks through the coset `T` itself, found by testing every subset of
/// cosets for invariance: `B g` equals `B` or misses it for every `g`.
fn block_count_by_subsets(g: &FiniteGroup, t: &SubgroupSet) -> usize {
    let mut coset = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() as u32 {
        if coset[x as usize] == usize::MAX {
            for s in t.elements() {
                coset[g.mul(s, x) as usize] = reps.len();
            }
            reps.push(x);
        }
    }
    let n = reps.len();
    assert!(n <= 16);
    let image = |mask: u32, x: u32| -> u32 {
        (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| 1u32 << coset[g.mul(reps[i], x) as usize]).sum()
    };
    (0u32..1 << n)
        .filter(|m| m & 1 == 1 && n % m.count_ones() as usize == 0)
        .filter(|&m| {
            (0..g.order() as u32).all(|x| {
                let im = image(m, x);
                im == m || im & m == 0
            })
        })
        .count()
}

#[test]
fn block_systems_match_subset_test() {
    for (name, g) in small_corpus(16) {
        for t_elems in common::subgroups_by_subset_filter(&g) {
            let t = SubgroupSet::from_elements(&g, &t_elems).unwrap();
            let action = CosetAction::new(&g, &t);
            let expected = block_count_by_subsets(&g, &t);
            assert_eq!(action.block_systems().len(), expected, "{name} over {t_elems:?}");
            assert_eq!(enumerate_overgroups(&g, &t, DEFAULT_NODE_CAP).unwrap().len(), expected);
        }
    }
    let c12 = FiniteGroup::cyclic(12);
    assert_eq!(CosetAction::new(&c12, &SubgroupSet::trivial(&c12)).block_systems().len(), 6);
}

#[test]
fn sylow_orders_are_exact_p_parts() {
    for (name, g) in small_corpus(64) {
        for p in primes_of(g.order()) {
            let s = sylow_subgroup(&g, p).unwrap();
            assert_eq!(s.order() as u64, p_part(g.order() as u64, p), "{name}, p = {p}");
            assert!(s.is_subgroup_of(&g));
        }
    }
    let a5 = FiniteGroup::alternating(5).unwrap();
    for (p, order) in [(2, 4), (3, 3), (5, 5), (7, 1)] {
        assert_eq!(sylow_subgroup(&a5, p).unwrap().order(), order);
    }
}

/// Orbit count of `T` acting by conjugation on the Sylow `p`-subgroups `P`
/// with `|P n T|` equal to the `p`-part of `|T|`, from the subset filter.
fn orbit_count_by_brute_force(g: &FiniteGroup, all: &[Vec<u32>], t: &[u32], p: u64) -> usize {
    let sylow_order = p_part(g.order() as u64, p) as usize;
    let want = p_part(t.len() as u64, p) as usize;
    let family: Vec<&Vec<u32>> = all
        .iter()
        .filter(|h| h.len() == sylow_order)
        .filter(|h| h.iter().filter(|x| t.binary_search(x).is_ok()).count() == want)
        .collect();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut orbits = 0;
    for h in family {
        if seen.contains(h) {
            continue;
        }
        orbits += 1;
        for &x in t {
            let mut conj: Vec<u32> = h.iter().map(|&y| g.conjugate(y, x)).collect();
            conj.sort_unstable();
            seen.insert(conj);
        }
    }
    orbits
}

#[test]
fn sylow_orbits_match_brute_force() {
    for (name, g) in small_corpus(16) {
        let all = common::subgroups_by_subset_filter(&g);
        for t_elems in &all {
            let t = SubgroupSet::from_elements(&g, t_elems).unwrap();
            for p in primes_of(g.order()) {
                let fam = sylow_family(&g, &t, p).unwrap();
                assert_eq!(fam.orbits.len(), orbit_count_by_brute_force(&g, &all, t_elems, p), "{name} {t_elems:?} p={p}");
                let index = t.index_in(&g) as u64;
                assert!(fam.orbits.len() as u64 <= index / p_part(index, p));
            }
        }
    }
    let s3 = FiniteGroup::symmetric(3).unwrap();
    let fam = sylow_family(&s3, &SubgroupSet::trivial(&s3), 2).unwrap();
    assert_eq!((fam.members.len(), fam.orbits.len()), (3, 3));
}

#[test]
fn elementary_abelian_counts_are_tight() {
    for (p, a) in [(2usize, 1u32), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)] {
        let g = FiniteGroup::elementary_abelian(p, a);
        let t = SubgroupSet::trivial(&g);
        let out = check_pair(&g, &t, "E", PairOptions::default()).unwrap();
        assert_eq!(out.verdict(), Verdict::Verified);
        for k in 0..=a {
            let index = p.pow(k);
            let expected = gauss_binom(a, k, p as u64).unwrap();
            assert_eq!(out.per_index.get(&index).copied().unwrap_or(0).to_string(), expected.to_string());
        }
        let pgroup = out.reports.iter().find(|r| r.statement_id == "pgroup_bound").unwrap();
        assert_eq!(pgroup.witnesses[0]["all_tight"], true, "C{p}^{a}");
        assert!(!pgroup.notes.is_empty());
    }
}

#[test]
fn klein_four_and_whole_group() {
    let v = FiniteGroup::elementary_abelian(2, 2);
    let out = check_pair(&v, &SubgroupSet::trivial(&v), "V4", PairOptions::default()).unwrap();
    assert_eq!(out.subgroups, 5);
    let q8 = FiniteGroup::quaternion();
    let out = check_pair(&q8, &SubgroupSet::whole(&q8), "Q8", PairOptions::default()).unwrap();
    assert_eq!(out.subgroups, 1);
    assert_eq!(out.verdict(), Verdict::Verified);
}

#[test]
fn main_bound_on_s4_over_a_three_cycle() {
    let s4 = FiniteGroup::symmetric(4).unwrap();
    let c = s4.find_permutation(&[1, 2, 0, 3]).unwrap();
    let t = SubgroupSet::closure(&s4, &[c]).unwrap();
    let out = check_pair(&s4, &t, "S4", PairOptions { max_level: Level(4), ..PairOptions::default() }).unwrap();
    assert_eq!(out.subgroups, 4);
    let main = &out.reports[0].witnesses[0]["main"];
    let bound: f64 = main["margin"].as_f64().unwrap() * 4.0;
    assert!((bound - 1792.547).abs() < 0.01);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn counts_are_conjugation_invariant(seed in 0u32..24, extra in 0u32..24, x in 0u32..24) {
        let s4 = FiniteGroup::symmetric(4).unwrap();
        let t = SubgroupSet::closure(&s4, &[seed, extra]).unwrap();
        let tx = t.conjugate_by(&s4, x);
        let a = enumerate_overgroups(&s4, &t, DEFAULT_NODE_CAP).unwrap();
        let b = enumerate_overgroups(&s4, &tx, DEFAULT_NODE_CAP).unwrap();
        prop_assert_eq!(a.len(), b.len());
        prop_assert_eq!(a.counts, b.counts);
    }

    #[test]
    fn closure_is_the_smallest_subgroup(seeds in proptest::collection::vec(0u32..18, 0..3)) {
        let g = FiniteGroup::direct_product(&FiniteGroup::symmetric(3).unwrap(), &FiniteGroup::cyclic(3), 100).unwrap();
        let h = SubgroupSet::closure(&g, &seeds).unwrap();
        prop_assert!(h.is_subgroup_of(&g));
        let all = common::subgroups_by_subset_filter(&g);
        let smallest = all
            .iter()
            .filter(|k| seeds.iter().all(|s| k.binary_search(s).is_ok()))
            .min_by_key(|k| k.len())
            .unwrap();
        prop_assert_eq!(&sorted(&h), smallest);
    }
}
