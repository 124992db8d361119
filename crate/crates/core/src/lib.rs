//! Exact-arithmetic verification of upper bounds on the number of subgroups
//! of a finite group that contain a prescribed subgroup.
//!
//! The crate is split into four layers:
//!
//! * [`exact`]: integers, rationals, factorizations and certified real
//!   enclosures with rational endpoints, plus a decision procedure for `a <= b`.
//! * [`qfunc`]: Gaussian binomial coefficients, the subgroup ceiling `S(p, a)`,
//!   the Euler-type product `C(p)`, and the two bound functions.
//! * [`verify`]: the finite computations behind the exception table, the
//!   proposition sweep and the exponent constant.
//! * [`groups`]: a brute-force finite group engine used to check every bound
//!   on concrete groups.

pub mod error;
pub mod exact;
pub mod groups;
pub mod qfunc;
pub mod verify;

pub use error::{Error, Result};
