//! Batch checking over a configured list of groups.

use rayon::prelude::*;
use serde::Deserialize;
use serde_json::json;

use super::parse::parse_permutation;
use super::{all_subgroups, check_pair, conjugacy_classes, FiniteGroup, PairOptions, PairOutcome, SubgroupSet};
use crate::exact::{is_prime, Level};
use crate::verify::{conjecture_probe, Verdict, VerificationReport};
use crate::{Error, Result};

/// The corpus shipped with the crate.
pub const DEFAULT_CORPUS: &str = include_str!("../../corpus/default.toml");

/// Groups up to this order get every subgroup under [`SubgroupMode::Auto`].
pub const AUTO_ALL_LIMIT: usize = 24;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubgroupMode {
    #[default]
    Auto,
    All,
    Classes,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Cyclic,
    Dihedral,
    ElementaryAbelian,
    Quaternion,
    Symmetric,
    Alternating,
    Product,
    Permutation,
}

/// One `[[group]]` table.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupEntry {
    pub family: Family,
    pub name: Option<String>,
    pub n: Option<usize>,
    pub p: Option<usize>,
    pub a: Option<u32>,
    pub range: Option<[usize; 2]>,
    pub degree: Option<usize>,
    #[serde(default)]
    pub generators: Vec<String>,
    #[serde(default)]
    pub factors: Vec<GroupEntry>,
    pub subgroups: Option<SubgroupMode>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Corpus {
    #[serde(default)]
    pub group: Vec<GroupEntry>,
}

/// A concrete group from the corpus with its subgroup selection.
#[derive(Clone, Debug)]
pub struct CorpusGroup {
    pub name: String,
    pub group: FiniteGroup,
    pub mode: SubgroupMode,
}

pub fn parse_corpus(text: &str) -> Result<Corpus> {
    toml::from_str(text).map_err(|e| {
        let line = e
            .span()
            .map(|s| text[..s.start.min(text.len())].matches('\n').count() + 1)
            .unwrap_or(0);
        Error::parse(line, e.message().to_string())
    })
}

fn need<T>(value: Option<T>, field: &str, family: Family) -> Result<T> {
    value.ok_or_else(|| Error::InvalidArgument(format!("{family:?} entry needs `{field}`")))
}

fn positive(n: usize, what: &str) -> Result<usize> {
    if n == 0 {
        return Err(Error::InvalidArgument(format!("{what} must be positive")));
    }
    Ok(n)
}

fn fits(order: Option<usize>, cap: usize) -> Result<()> {
    match order {
        Some(o) if o <= cap => Ok(()),
        _ => Err(Error::OrderCapExceeded { cap }),
    }
}

impl GroupEntry {
    /// Expands `range` into one `(name, group)` per value.
    pub fn build(&self, cap: usize) -> Result<Vec<(String, FiniteGroup)>> {
        let values: Vec<Option<usize>> = match self.range {
            Some([lo, hi]) if lo > hi => return Err(Error::InvalidArgument(format!("empty range [{lo}, {hi}]"))),
            Some([lo, hi]) if hi - lo > 4096 => return Err(Error::InvalidArgument("range too long".into())),
            Some([lo, hi]) => (lo..=hi).map(Some).collect(),
            None => vec![None],
        };
        values.into_iter().map(|v| self.build_one(v, cap)).collect()
    }

    fn build_one(&self, ranged: Option<usize>, cap: usize) -> Result<(String, FiniteGroup)> {
        let f = self.family;
        let (label, group) = match f {
            Family::Cyclic => {
                let n = positive(need(ranged.or(self.n), "n", f)?, "n")?;
                fits(Some(n), cap)?;
                (format!("C{n}"), FiniteGroup::cyclic(n))
            }
            Family::Dihedral => {
                let n = positive(need(ranged.or(self.n), "n", f)?, "n")?;
                fits(n.checked_mul(2), cap)?;
                (format!("D{}", 2 * n), FiniteGroup::dihedral(n))
            }
            Family::ElementaryAbelian => {
                let p = need(self.p, "p", f)?;
                if !is_prime(p as u64) {
                    return Err(Error::NotPrime(p as u64));
                }
                let a = match ranged {
                    Some(a) => u32::try_from(a).map_err(|_| Error::OrderCapExceeded { cap })?,
                    None => need(self.a, "a", f)?,
                };
                fits(p.checked_pow(a), cap)?;
                (format!("C{p}^{a}"), FiniteGroup::elementary_abelian(p, a))
            }
            Family::Quaternion => ("Q8".to_string(), FiniteGroup::quaternion()),
            Family::Symmetric | Family::Alternating => {
                let n = positive(need(ranged.or(self.n), "n", f)?, "n")?;
                if n > 12 {
                    return Err(Error::OrderCapExceeded { cap });
                }
                if f == Family::Symmetric {
                    (format!("S{n}"), FiniteGroup::symmetric(n)?)
                } else {
                    (format!("A{n}"), FiniteGroup::alternating(n)?)
                }
            }
            Family::Product => {
                if self.factors.is_empty() {
                    return Err(Error::InvalidArgument("product entry needs `factors`".into()));
                }
                let mut names = Vec::new();
                let mut acc = FiniteGroup::cyclic(1);
                for factor in &self.factors {
                    let mut built = factor.build(cap)?;
                    if built.len() != 1 {
                        return Err(Error::InvalidArgument("product factors cannot use `range`".into()));
                    }
                    let (name, g) = built.pop().expect("length checked");
                    acc = FiniteGroup::direct_product(&acc, &g, cap)?;
                    names.push(name);
                }
                (names.join("x"), acc)
            }
            Family::Permutation => {
                let degree = positive(need(self.degree, "degree", f)?, "degree")?;
                if degree > cap {
                    return Err(Error::OrderCapExceeded { cap });
                }
                let gens = self
                    .generators
                    .iter()
                    .map(|s| parse_permutation(s, degree))
                    .collect::<Result<Vec<_>>>()?;
                ("perm".to_string(), FiniteGroup::from_permutations(degree, &gens, cap)?)
            }
        };
        let name = match (&self.name, ranged) {
            (Some(n), Some(v)) => format!("{n}[{v}]"),
            (Some(n), None) => n.clone(),
            (None, _) => label,
        };
        Ok((name, group))
    }
}

impl Corpus {
    pub fn groups(&self, cap: usize) -> Result<Vec<CorpusGroup>> {
        let mut out = Vec::new();
        for entry in &self.group {
            for (name, group) in entry.build(cap)? {
                out.push(CorpusGroup {
                    name,
                    group,
                    mode: entry.subgroups.unwrap_or_default(),
                });
            }
        }
        Ok(out)
    }
}

/// The subgroups `T` selected for `g`.
pub fn select_subgroups(g: &FiniteGroup, mode: SubgroupMode, node_cap: usize) -> Result<Vec<SubgroupSet>> {
    let all = all_subgroups(g, node_cap)?;
    let every = match mode {
        SubgroupMode::All => true,
        SubgroupMode::Classes => false,
        SubgroupMode::Auto => g.order() <= AUTO_ALL_LIMIT,
    };
    if every {
        Ok(all)
    } else {
        Ok(conjugacy_classes(g, &all).into_iter().map(|(rep, _)| rep).collect())
    }
}

/// Result of a corpus run.
#[derive(Clone, Debug)]
pub struct CorpusRun {
    /// One entry per `(G, T)` pair, in corpus order.
    pub outcomes: Vec<PairOutcome>,
    /// The conjecture probe over all pairs.
    pub probe: VerificationReport,
    /// Counts and worst verdict per check kind.
    pub summary: VerificationReport,
}

impl CorpusRun {
    pub fn verdict(&self) -> Verdict {
        Verdict::worst(self.outcomes.iter().map(PairOutcome::verdict))
    }

    pub fn reports(&self) -> impl Iterator<Item = &VerificationReport> {
        self.outcomes.iter().flat_map(|o| o.reports.iter())
    }
}

fn subgroup_label(g: &FiniteGroup, t: &SubgroupSet) -> String {
    let gens: Vec<String> = match g.permutations() {
        Some(p) => t
            .generators()
            .iter()
            .map(|&x| super::parse::format_permutation(&p.elements[x as usize]))
            .collect(),
        None => t.generators().iter().map(|x| x.to_string()).collect(),
    };
    format!("<{}>", gens.join(", "))
}

/// A pair whose checks could not run (for instance a lattice over the node
/// cap) is recorded as undecided and the run continues.
fn failed_pair(g: &FiniteGroup, t: &SubgroupSet, label: String, error: Error) -> PairOutcome {
    let report = VerificationReport::new(
        "pair_error",
        json!({ "label": label, "group_order": g.order(), "subgroup_order": t.order() }),
    )
    .with_witness(json!({ "error": error.to_string() }))
    .finish(Verdict::Undecided, Level::ZERO);
    PairOutcome {
        label,
        index: t.index_in(g),
        subgroups: 0,
        per_index: Default::default(),
        reports: vec![report],
    }
}

/// Runs [`check_pair`] on every selected pair, spread over `workers` threads.
pub fn run_corpus(groups: &[CorpusGroup], opts: PairOptions, workers: usize) -> Result<CorpusRun> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let outcomes: Vec<PairOutcome> = pool.install(|| {
        let selected: Vec<Result<Vec<SubgroupSet>>> = groups
            .par_iter()
            .map(|cg| select_subgroups(&cg.group, cg.mode, opts.node_cap))
            .collect();
        let mut jobs = Vec::new();
        for (cg, sel) in groups.iter().zip(selected) {
            match sel {
                Ok(ts) => jobs.extend(ts.into_iter().map(|t| (cg, Ok(t)))),
                Err(e) => jobs.push((cg, Err(e))),
            }
        }
        jobs.into_par_iter()
            .map(|(cg, t)| match t {
                Ok(t) => {
                    let label = format!("{} > {}", cg.name, subgroup_label(&cg.group, &t));
                    check_pair(&cg.group, &t, &label, opts).unwrap_or_else(|e| failed_pair(&cg.group, &t, label, e))
                }
                Err(e) => {
                    let t = SubgroupSet::trivial(&cg.group);
                    failed_pair(&cg.group, &t, format!("{} (subgroup selection)", cg.name), e)
                }
            })
            .collect()
    });
    let cases: Vec<_> = outcomes.iter().filter(|o| o.subgroups > 0).map(PairOutcome::probe_case).collect();
    let probe = conjecture_probe(&cases, opts.max_level)?;
    let level = outcomes
        .iter()
        .flat_map(|o| o.reports.iter().map(|r| r.precision_used))
        .max()
        .unwrap_or(Level::ZERO);
    let summary = summarize(&outcomes, groups.len(), level);
    Ok(CorpusRun { outcomes, probe, summary })
}

fn summarize(outcomes: &[PairOutcome], groups: usize, level: Level) -> VerificationReport {
    let mut kinds: Vec<(String, usize, Verdict, f64, usize)> = Vec::new();
    let mut failures = Vec::new();
    for r in outcomes.iter().flat_map(|o| o.reports.iter()) {
        let margin = r.witnesses[0]
            .get("main")
            .or_else(|| r.witnesses[0].get("bound"))
            .or_else(|| r.witnesses[0].get("total_vs_ceiling"))
            .and_then(|d| d.get("margin"))
            .and_then(|m| m.as_f64());
        let tight = r.witnesses[0].get("all_tight").and_then(|t| t.as_bool()).unwrap_or(false)
            || r.witnesses[0].get("tight").and_then(|t| t.as_bool()).unwrap_or(false);
        let pos = match kinds.iter().position(|k| k.0 == r.statement_id) {
            Some(i) => i,
            None => {
                kinds.push((r.statement_id.clone(), 0, Verdict::Verified, f64::INFINITY, 0));
                kinds.len() - 1
            }
        };
        let k = &mut kinds[pos];
        k.1 += 1;
        k.2 = Verdict::worst([k.2, r.verdict]);
        if let Some(m) = margin {
            k.3 = k.3.min(m);
        }
        k.4 += usize::from(tight);
        if r.verdict != Verdict::Verified {
            failures.push(json!({ "statement_id": r.statement_id, "inputs": r.inputs, "verdict": r.verdict }));
        }
    }
    let verdict = Verdict::worst(kinds.iter().map(|k| k.2));
    let rows: Vec<_> = kinds
        .iter()
        .map(|(id, n, v, m, tight)| {
            json!({
                "statement_id": id,
                "reports": n,
                "verdict": v,
                "min_margin": if m.is_finite() { json!(m) } else { json!(null) },
                "tight": tight,
            })
        })
        .collect();
    VerificationReport::new("corpus", json!({ "groups": groups, "pairs": outcomes.len() }))
        .with_witness(json!({ "checks": rows }))
        .with_witnesses(failures)
        .finish(verdict, level)
}
