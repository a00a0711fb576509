//! Proptest strategies shared by the property suites.

#![allow(dead_code)]

use fa_core::syntax::Quantifier;
use fa_core::{classify, Formula, Nat, Term, Valuation};
use proptest::prelude::*;

pub const FREE: [&str; 2] = ["x", "y"];
const BOUND: [&str; 3] = ["u", "v", "w"];

fn name(pool: &'static [&'static str]) -> impl Strategy<Value = String> {
    proptest::sample::select(pool).prop_map(str::to_owned)
}

/// Terms over `x`, `y` and the bound-variable pool.
pub fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        Just(Term::Zero),
        name(&["x", "y", "u", "v", "w"]).prop_map(Term::Var),
        (0u64..6).prop_map(Term::numeral),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Term::succ),
            (inner.clone(), inner.clone()).prop_map(|(s, t)| Term::add(s, t)),
            (inner.clone(), inner.clone()).prop_map(|(s, t)| Term::mul(s, t)),
            inner.clone().prop_map(Term::len),
            inner.clone().prop_map(Term::half),
            (inner.clone(), inner).prop_map(|(s, t)| Term::smash(s, t)),
        ]
    })
}

/// Quantifier bounds: a variable or a numeral up to 8.
fn bound() -> impl Strategy<Value = Term> {
    prop_oneof![
        name(&["x", "y", "u", "v", "w"]).prop_map(Term::Var),
        (0u64..=8).prop_map(Term::numeral),
    ]
}

/// Arbitrary formulas, renamed apart.
pub fn formula() -> impl Strategy<Value = Formula> {
    let atom = prop_oneof![
        (term(), term()).prop_map(|(s, t)| Formula::leq(s, t)),
        (term(), term()).prop_map(|(s, t)| Formula::eq(s, t)),
    ];
    atom.prop_recursive(4, 24, 2, |inner| {
        let quantifier = prop_oneof![Just(Quantifier::Exists), Just(Quantifier::Forall)];
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (quantifier, any::<bool>(), name(&BOUND), bound(), inner).prop_map(
                |(q, sharp, var, bound, body)| if sharp {
                    Formula::sharp(q, var, bound, body)
                } else {
                    Formula::quantify(q, var, bound, body)
                }
            ),
        ]
    })
    .prop_map(|f| f.rename_apart())
}

pub fn sigma_formula() -> impl Strategy<Value = Formula> {
    formula().prop_filter("Sigma^b_1", |f| classify(f).sigma_b1)
}

/// Formulas whose only free variable is `x`, by closing the others with
/// small bounded quantifiers.
pub fn formula_in_x() -> impl Strategy<Value = Formula> {
    formula().prop_map(|f| {
        let mut g = f;
        for v in g.free_vars() {
            if v != "x" {
                g = Formula::sharp(Quantifier::Forall, v, Term::numeral(3), g);
            }
        }
        g.rename_apart()
    })
}

/// A valuation covering `f`, with values drawn from `values` (each <= 16).
pub fn cover(f: &Formula, values: &[u8]) -> Valuation {
    let mut v = Valuation::new();
    for (i, x) in f.free_vars().into_iter().enumerate() {
        v.insert(x, Nat::from(values[i % values.len()] % 17));
    }
    v
}

pub fn values() -> impl Strategy<Value = Vec<u8>> {
    proptest::collection::vec(0u8..=16, 1..6)
}
