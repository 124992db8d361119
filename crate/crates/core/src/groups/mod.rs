//! A small finite-group engine: groups as Cayley tables, subgroups as
//! bitmasks, overgroup enumeration, Sylow subgroups, block systems, and the
//! counting checks built on them.

mod blocks;
mod checks;
mod corpus;
mod group;
mod lattice;
mod parse;
mod subgroup;
mod sylow;

pub use blocks::CosetAction;
pub use group::{validate_permutation, FiniteGroup, Permutations, DEFAULT_ORDER_CAP};
pub use lattice::{all_subgroups, conjugacy_classes, enumerate_overgroups, OvergroupLattice, DEFAULT_NODE_CAP};
pub use subgroup::SubgroupSet;
pub use sylow::{normalizer, sylow_family, sylow_subgroup, SylowFamily};
pub use checks::{
    check_main_theorem, check_orbit_bound, check_pair, check_pgroup_bound, count_block_systems, PairOptions, PairOutcome,
};
pub use corpus::{
    parse_corpus, run_corpus, select_subgroups, Corpus, CorpusGroup, CorpusRun, Family, GroupEntry, SubgroupMode,
    AUTO_ALL_LIMIT, DEFAULT_CORPUS,
};
pub use parse::{format_permutation, parse_group_file, parse_permutation, GroupInput};
