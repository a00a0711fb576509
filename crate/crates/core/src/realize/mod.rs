//! Realizability for `Sigma^b_1` formulas.
//!
//! A realizer is a single natural number coding a tree of tuples (see
//! [`seq`]). For a formula in negation normal form the realizer of
//!
//! * a sharply bounded formula is irrelevant (`0` when built),
//! * `A AND B` is `<rA, rB>`,
//! * `A OR B` is `<rA, rB>` where at least one component realizes its side,
//! * `ALL y <= |t| . A(y)` is `<r_0, ..., r_|t|>`,
//! * `EX y <= t . A(y)` is `<w, r>` with `w <= t` and `r` realizing `A(w)`.
//!
//! `NOT` and `IMPLIES` are removed by [`nnf`](crate::hierarchy::nnf) first.

mod build;
mod check;
mod extract;
mod plan;
pub mod seq;
mod truth;

use std::fmt;
use std::str::FromStr;

use num_traits::Num;

pub use build::build_realizer;
pub use check::check_realizer;
pub use extract::{extract_function, extract_function_with};
pub use seq::{beta, decode_seq, encode_seq, is_seq, seq_len};
pub use truth::brute_truth;

pub(crate) use truth::truth_in;

use crate::error::Result;
use crate::numsem::Nat;
use crate::syntax::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Realizer(Nat);

impl Realizer {
    /// The canonical realizer of a true sharply bounded formula.
    pub fn canonical() -> Self {
        Realizer(Nat::default())
    }

    pub fn value(&self) -> &Nat {
        &self.0
    }

    pub fn into_value(self) -> Nat {
        self.0
    }

    pub fn to_hex(&self) -> String {
        format!("0x{:x}", self.0)
    }
}

impl From<Nat> for Realizer {
    fn from(n: Nat) -> Self {
        Realizer(n)
    }
}

impl fmt::Display for Realizer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid realizer literal `{0}` (expected decimal or 0x-prefixed hex)")]
pub struct ParseRealizerError(String);

impl FromStr for Realizer {
    type Err = ParseRealizerError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
            Some(hex) => Nat::from_str_radix(hex, 16),
            None => Nat::from_str_radix(s, 10),
        };
        parsed
            .map(Realizer)
            .map_err(|_| ParseRealizerError(s.to_owned()))
    }
}

/// The witness of a realized top-level existential, if `phi` has one
/// after normalisation and `r` is shaped accordingly.
pub fn top_witness(phi: &Formula, r: &Realizer) -> Result<Option<Nat>> {
    let plan = plan::Plan::of(phi)?;
    Ok(match plan {
        plan::Plan::Exists { .. } => beta(1, r).ok(),
        _ => None,
    })
}
