//! Workbench for feasible (bounded) arithmetic.
//!
//! The crate covers the language `S, 0, +, *, |x|, half(x), #, <=` with
//! equality, the sharply bounded / `Sigma^b_1` / `Pi^b_1` classification,
//! metered evaluation over the natural numbers, and the realizability
//! semantics for `Sigma^b_1` formulas: building realizers, checking them,
//! and comparing both against a brute-force truth oracle.
//!
//! ```
//! use fa_core::{parse_formula, realize, Budget, Valuation};
//!
//! let phi = parse_formula("EX y <= x . y + y = x").unwrap();
//! let v = Valuation::from_pairs([("x", 4u32)]);
//! let (r, _cost) = realize::build_realizer(&phi, &v, &Budget::default()).unwrap();
//! let r = r.expect("4 is even");
//! assert_eq!(realize::beta(1, &r).unwrap(), 2u32.into());
//! ```

pub mod cli;
pub mod corpus;
mod error;
pub mod hierarchy;
pub mod induct;
pub mod numsem;
pub mod realize;
pub mod syntax;

pub use error::{BudgetKind, Error, Result, SyntaxError};
pub use hierarchy::{classify, nnf, FormulaClass};
pub use numsem::{bit_length, eval_term, Budget, CostReport, Nat, Valuation};
pub use realize::Realizer;
pub use syntax::{parse_formula, parse_term, Formula, Term};
