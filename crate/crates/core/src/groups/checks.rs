use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::{enumerate_overgroups, sylow_family, CosetAction, FiniteGroup, OvergroupLattice, SubgroupSet};
use crate::exact::{decide_leq, factorize_u64, p_part, valuation, CertifiedReal, Comparison, Decision, Level};
use crate::qfunc::{bound_f, bound_main, gauss_binom, sub_ceiling};
use crate::verify::{ProbeCase, Verdict, VerificationReport};
use crate::{Error, Result};

fn verdict_of(outcome: Comparison) -> Verdict {
    match outcome {
        Comparison::Leq => Verdict::Verified,
        Comparison::Greater => Verdict::CounterexampleFound,
        Comparison::Undecided => Verdict::Undecided,
    }
}

fn decision_json(d: &Decision) -> Value {
    json!({
        "outcome": d.outcome,
        "value": d.left,
        "bound": d.right,
        "margin": d.right.approx() / d.left.approx(),
    })
}

fn pair_inputs(g: &FiniteGroup, t: &SubgroupSet) -> Value {
    json!({ "group_order": g.order(), "subgroup_order": t.order(), "index": t.index_in(g) })
}

/// If `n` is a power of a single prime `p > 1`, returns `(p, exponent)`.
fn prime_power(n: usize) -> Option<(u64, u32)> {
    let f = factorize_u64(n as u64).ok()?;
    match f.factors() {
        [pp] => Some((pp.prime, pp.exponent)),
        _ => None,
    }
}

/// Overgroups of `T` in a `p`-group, counted per index `p^k`, against the
/// Gaussian binomials `[c choose k]_p`, and the total against `S(p, c)`.
///
/// Rows where the count equals the binomial are listed as tight.
pub fn check_pgroup_bound(
    g: &FiniteGroup,
    t: &SubgroupSet,
    lattice: &OvergroupLattice,
    max_level: Level,
) -> Result<VerificationReport> {
    let (p, _) = prime_power(g.order()).ok_or(Error::NotPrimePower(g.order()))?;
    let c = valuation(t.index_in(g) as u64, p);
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    let mut tight = Vec::new();
    for k in 0..=c {
        let index = p.pow(k) as usize;
        let count = lattice.count_with_index(index);
        let binom = gauss_binom(c, k, p)?;
        let row = json!({ "k": k, "index": index, "count": count, "gaussian_binomial": binom.to_string() });
        if num_bigint::BigUint::from(count) > binom {
            violations.push(row.clone());
        } else if num_bigint::BigUint::from(count) == binom {
            tight.push(k);
        }
        rows.push(row);
    }
    let total = CertifiedReal::from(lattice.len() as u64);
    let d = decide_leq(|_| Ok(total.clone()), |l| sub_ceiling(p, c, l).map(|s| s.value), max_level)?;
    let verdict = if !violations.is_empty() {
        Verdict::CounterexampleFound
    } else {
        verdict_of(d.outcome)
    };
    let mut report = VerificationReport::new("pgroup_bound", pair_inputs(g, t))
        .with_witness(json!({
            "p": p,
            "c": c,
            "per_index": rows,
            "tight": tight,
            "all_tight": tight.len() == c as usize + 1,
            "total_vs_ceiling": decision_json(&d),
        }))
        .with_witnesses(violations);
    if tight.len() == c as usize + 1 {
        report = report.with_note("tight: every per-index count equals its Gaussian binomial");
    }
    Ok(report.finish(verdict, d.level))
}

/// Counts `T`-orbits on Sylow `p`-subgroups meeting `T` in a Sylow subgroup
/// of `T`, against `[G:T] / p^c` with `p^c` the `p`-part of `[G:T]`.
pub fn check_orbit_bound(g: &FiniteGroup, t: &SubgroupSet, p: u64) -> Result<VerificationReport> {
    let index = t.index_in(g) as u64;
    let bound = index / p_part(index, p);
    let family = sylow_family(g, t, p)?;
    let orbits = family.orbits.len() as u64;
    let witness = json!({
        "p": p,
        "family_size": family.members.len(),
        "orbits": orbits,
        "bound": bound,
        "tight": orbits == bound,
    });
    let verdict = if orbits <= bound { Verdict::Verified } else { Verdict::CounterexampleFound };
    let mut inputs = pair_inputs(g, t);
    inputs["p"] = json!(p);
    Ok(VerificationReport::new("orbit_bound", inputs)
        .with_witness(witness)
        .finish(verdict, Level::ZERO))
}

/// `|sub(G, T)|` against the main bound, and against `f([G:T])` when the
/// index exceeds 1.
pub fn check_main_theorem(
    g: &FiniteGroup,
    t: &SubgroupSet,
    lattice: &OvergroupLattice,
    max_level: Level,
) -> Result<VerificationReport> {
    let index = t.index_in(g) as u64;
    let count = CertifiedReal::from(lattice.len() as u64);
    let main = decide_leq(|_| Ok(count.clone()), |l| bound_main(index, l), max_level)?;
    let mut verdicts = vec![verdict_of(main.outcome)];
    let mut witness = json!({ "subgroups": lattice.len(), "main": decision_json(&main) });
    let mut level = main.level;
    if index > 1 {
        let n = factorize_u64(index)?;
        let f = decide_leq(|_| Ok(count.clone()), |l| bound_f(&n, l), max_level)?;
        verdicts.push(verdict_of(f.outcome));
        witness["f"] = decision_json(&f);
        level = level.max(f.level);
    }
    Ok(VerificationReport::new("main_theorem", pair_inputs(g, t))
        .with_witness(witness)
        .finish(Verdict::worst(verdicts), level))
}

/// Block systems of the action on `G/T`, counted independently of the
/// lattice, must match `|sub(G, T)|` and respect the main bound in the degree.
pub fn count_block_systems(
    g: &FiniteGroup,
    t: &SubgroupSet,
    lattice: &OvergroupLattice,
    max_level: Level,
) -> Result<VerificationReport> {
    let action = CosetAction::new(g, t);
    let systems = action.block_systems().len();
    let n = action.degree() as u64;
    let count = CertifiedReal::from(systems as u64);
    let d = decide_leq(|_| Ok(count.clone()), |l| bound_main(n, l), max_level)?;
    let matches = systems == lattice.len();
    let verdict = if matches { verdict_of(d.outcome) } else { Verdict::Mismatch };
    Ok(VerificationReport::new("block_systems", pair_inputs(g, t))
        .with_witness(json!({
            "degree": n,
            "block_systems": systems,
            "overgroups": lattice.len(),
            "bound": decision_json(&d),
        }))
        .finish(verdict, d.level))
}

/// Options for [`check_pair`].
#[derive(Clone, Copy, Debug)]
pub struct PairOptions {
    pub max_level: Level,
    pub node_cap: usize,
    /// Coset actions above this degree skip the block-system count.
    pub block_degree_limit: usize,
}

impl Default for PairOptions {
    fn default() -> Self {
        PairOptions {
            max_level: Level::DEFAULT_CAP,
            node_cap: super::DEFAULT_NODE_CAP,
            block_degree_limit: usize::MAX,
        }
    }
}

/// Everything checked for one pair `(G, T)`.
#[derive(Clone, Debug)]
pub struct PairOutcome {
    pub label: String,
    pub index: usize,
    pub subgroups: usize,
    pub per_index: BTreeMap<usize, usize>,
    pub reports: Vec<VerificationReport>,
}

impl PairOutcome {
    pub fn verdict(&self) -> Verdict {
        Verdict::worst(self.reports.iter().map(|r| r.verdict))
    }

    pub fn probe_case(&self) -> ProbeCase {
        ProbeCase {
            label: self.label.clone(),
            subgroups: self.subgroups as u64,
            index: self.index as u64,
        }
    }
}

/// Runs the main-theorem check, the `p`-group bound when `G` is a `p`-group,
/// the orbit bound for every prime dividing `|G|`, and the block-system count.
pub fn check_pair(g: &FiniteGroup, t: &SubgroupSet, label: &str, opts: PairOptions) -> Result<PairOutcome> {
    let lattice = enumerate_overgroups(g, t, opts.node_cap)?;
    let mut reports = vec![check_main_theorem(g, t, &lattice, opts.max_level)?];
    if prime_power(g.order()).is_some() {
        reports.push(check_pgroup_bound(g, t, &lattice, opts.max_level)?);
    }
    if let Ok(f) = factorize_u64(g.order() as u64) {
        for pp in f.factors() {
            reports.push(check_orbit_bound(g, t, pp.prime)?);
        }
    }
    if t.index_in(g) <= opts.block_degree_limit {
        reports.push(count_block_systems(g, t, &lattice, opts.max_level)?);
    }
    for r in &mut reports {
        r.inputs["label"] = json!(label);
    }
    Ok(PairOutcome {
        label: label.to_string(),
        index: t.index_in(g),
        subgroups: lattice.len(),
        per_index: lattice.counts.clone(),
        reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::DEFAULT_NODE_CAP;

    fn lattice(g: &FiniteGroup, t: &SubgroupSet) -> OvergroupLattice {
        enumerate_overgroups(g, t, DEFAULT_NODE_CAP).unwrap()
    }

    #[test]
    fn pgroup_examples() {
        let v = FiniteGroup::elementary_abelian(2, 2);
        let t = SubgroupSet::trivial(&v);
        let r = check_pgroup_bound(&v, &t, &lattice(&v, &t), Level(4)).unwrap();
        assert_eq!(r.verdict, Verdict::Verified);
        assert_eq!(r.witnesses[0]["all_tight"], true);
        let d8 = FiniteGroup::dihedral(4);
        let t = SubgroupSet::trivial(&d8);
        let r = check_pgroup_bound(&d8, &t, &lattice(&d8, &t), Level(4)).unwrap();
        let counts: Vec<u64> = r.witnesses[0]["per_index"].as_array().unwrap().iter().map(|x| x["count"].as_u64().unwrap()).collect();
        assert_eq!(counts, vec![1, 3, 5, 1]);
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let t = SubgroupSet::trivial(&s3);
        assert_eq!(check_pgroup_bound(&s3, &t, &lattice(&s3, &t), Level(4)).unwrap_err(), Error::NotPrimePower(6));
    }

    #[test]
    fn orbit_examples() {
        let a4 = FiniteGroup::alternating(4).unwrap();
        let v = SubgroupSet::closure(&a4, &(0..12).filter(|&x| a4.element_order(x) == 2).collect::<Vec<_>>()).unwrap();
        assert_eq!(v.order(), 4);
        let r = check_orbit_bound(&a4, &v, 3).unwrap();
        assert_eq!(r.verdict, Verdict::Verified);
        assert_eq!(r.witnesses[0]["bound"], 1);
    }

    #[test]
    fn pair_suite_on_s4() {
        let s4 = FiniteGroup::symmetric(4).unwrap();
        let c = s4.find_permutation(&[1, 2, 0, 3]).unwrap();
        let t = SubgroupSet::closure(&s4, &[c]).unwrap();
        let out = check_pair(&s4, &t, "S4 > C3", PairOptions::default()).unwrap();
        assert_eq!(out.subgroups, 4);
        assert_eq!(out.verdict(), Verdict::Verified);
        assert_eq!(out.reports.len(), 4);
        let whole = SubgroupSet::whole(&s4);
        assert_eq!(check_pair(&s4, &whole, "S4", PairOptions::default()).unwrap().subgroups, 1);
    }
}
