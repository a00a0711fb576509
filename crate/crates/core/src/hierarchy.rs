//! Syntactic classification into sharply bounded, `Sigma^b_1` and
//! `Pi^b_1`, and negation normal form.

use serde::Serialize;

use crate::syntax::{Formula, Quantifier, Term};

/// Which levels a formula belongs to, by syntax alone.
///
/// A formula in both `sigma_b1` and `pi_b1` is only a syntactic candidate
/// for `Delta^b_1`; equivalence in the theory is not decided here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FormulaClass {
    #[serde(rename = "sharp")]
    pub sharply_bounded: bool,
    pub sigma_b1: bool,
    pub pi_b1: bool,
}

impl FormulaClass {
    const BASE: FormulaClass = FormulaClass {
        sharply_bounded: true,
        sigma_b1: true,
        pi_b1: true,
    };

    /// Lifts the inductive clauses by the sharply bounded base clause.
    fn closed(self) -> Self {
        FormulaClass {
            sharply_bounded: self.sharply_bounded,
            sigma_b1: self.sigma_b1 || self.sharply_bounded,
            pi_b1: self.pi_b1 || self.sharply_bounded,
        }
    }

    pub fn is_sigma_only(&self) -> bool {
        self.sigma_b1 && !self.pi_b1
    }
}

pub fn classify(phi: &Formula) -> FormulaClass {
    match phi {
        Formula::Leq(..) | Formula::Eq(..) => FormulaClass::BASE,
        Formula::And(a, b) | Formula::Or(a, b) => {
            let (a, b) = (classify(a), classify(b));
            FormulaClass {
                sharply_bounded: a.sharply_bounded && b.sharply_bounded,
                sigma_b1: a.sigma_b1 && b.sigma_b1,
                pi_b1: a.pi_b1 && b.pi_b1,
            }
        }
        Formula::Not(a) => {
            let a = classify(a);
            FormulaClass {
                sharply_bounded: a.sharply_bounded,
                sigma_b1: a.pi_b1,
                pi_b1: a.sigma_b1,
            }
        }
        Formula::Implies(a, b) => {
            let (a, b) = (classify(a), classify(b));
            FormulaClass {
                sharply_bounded: a.sharply_bounded && b.sharply_bounded,
                sigma_b1: a.pi_b1 && b.sigma_b1,
                pi_b1: a.sigma_b1 && b.pi_b1,
            }
        }
        _ => {
            let q = phi.as_quantifier().expect("quantifier");
            let body = classify(q.body);
            // a sharp quantifier is also a bounded one with bound |t|
            let sharp = q.sharp || matches!(q.bound, Term::Len(_));
            let (sigma, pi) = match (q.quantifier, sharp) {
                (Quantifier::Exists, false) => (body.sigma_b1, false),
                (Quantifier::Forall, false) => (false, body.pi_b1),
                (_, true) => (body.sigma_b1, body.pi_b1),
            };
            FormulaClass {
                sharply_bounded: sharp && body.sharply_bounded,
                sigma_b1: sigma,
                pi_b1: pi,
            }
        }
    }
    .closed()
}

/// Negation normal form without `NOT` or `IMPLIES`: negations are pushed
/// through connectives and quantifiers and absorbed into the atoms.
pub fn nnf(phi: &Formula) -> Formula {
    match phi {
        Formula::Leq(..) | Formula::Eq(..) => phi.clone(),
        Formula::And(a, b) => Formula::and(nnf(a), nnf(b)),
        Formula::Or(a, b) => Formula::or(nnf(a), nnf(b)),
        Formula::Implies(a, b) => Formula::or(negated(a), nnf(b)),
        Formula::Not(a) => negated(a),
        _ => {
            let q = phi.as_quantifier().expect("quantifier");
            requantify(phi, nnf(q.body), q.quantifier)
        }
    }
}

/// `nnf(NOT phi)`
fn negated(phi: &Formula) -> Formula {
    match phi {
        Formula::Leq(..) | Formula::Eq(..) => negated_atom_eval_form(phi),
        Formula::And(a, b) => Formula::or(negated(a), negated(b)),
        Formula::Or(a, b) => Formula::and(negated(a), negated(b)),
        Formula::Implies(a, b) => Formula::and(nnf(a), negated(b)),
        Formula::Not(a) => nnf(a),
        _ => {
            let q = phi.as_quantifier().expect("quantifier");
            let dual = match q.quantifier {
                Quantifier::Exists => Quantifier::Forall,
                Quantifier::Forall => Quantifier::Exists,
            };
            requantify(phi, negated(q.body), dual)
        }
    }
}

fn requantify(phi: &Formula, body: Formula, quantifier: Quantifier) -> Formula {
    let q = phi.as_quantifier().expect("quantifier");
    if q.sharp {
        Formula::sharp(quantifier, q.var, q.bound.clone(), body)
    } else {
        Formula::quantify(quantifier, q.var, q.bound.clone(), body)
    }
}

/// Positive quantifier-free equivalent of a negated atom:
/// `NOT s <= t` becomes `S(t) <= s`, `NOT s = t` becomes
/// `S(s) <= t OR S(t) <= s`.
///
/// # Panics
///
/// If `atom` is not `Leq` or `Eq`.
pub fn negated_atom_eval_form(atom: &Formula) -> Formula {
    match atom {
        Formula::Leq(s, t) => Formula::leq(Term::succ(t.clone()), s.clone()),
        Formula::Eq(s, t) => Formula::or(
            Formula::leq(Term::succ(s.clone()), t.clone()),
            Formula::leq(Term::succ(t.clone()), s.clone()),
        ),
        other => panic!("negated_atom_eval_form on a non-atom: {other}"),
    }
}

/// True when `phi` has no `NOT` and no `IMPLIES` node.
pub fn is_negation_free(phi: &Formula) -> bool {
    !phi.uses_negation_or_implication()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn class(text: &str) -> (bool, bool, bool) {
        let c = classify(&parse_formula(text).unwrap());
        (c.sharply_bounded, c.sigma_b1, c.pi_b1)
    }

    #[test]
    fn classify_examples() {
        assert_eq!(class("x <= y"), (true, true, true));
        assert_eq!(class("EX y <= x . y + y = x"), (false, true, false));
        assert_eq!(class("ALL y <= |x| . y <= x"), (true, true, true));
        assert_eq!(
            class("(ALL y <= x . y <= x) IMPLIES (EX z <= x . z = x)"),
            (false, true, false)
        );
    }

    #[test]
    fn classify_more() {
        assert_eq!(class("ALL y <= x . y <= x"), (false, false, true));
        assert_eq!(class("NOT (EX y <= x . y = x)"), (false, false, true));
        assert_eq!(class("NOT (ALL y <= x . y = x)"), (false, true, false));
        // sharp quantifiers over a non-sharp body keep the body's level
        assert_eq!(class("ALL z <= |x| . EX y <= x . y = z"), (false, true, false));
        assert_eq!(class("EX z <= |x| . EX y <= x . y = z"), (false, true, false));
        assert_eq!(class("EX z <= |x| . ALL y <= x . y = z"), (false, false, true));
        // bounded universal over an existential: neither
        assert_eq!(class("ALL z <= x . EX y <= x . y = z"), (false, false, false));
        assert_eq!(
            class("(EX y <= x . y = x) AND (ALL y <= x . y = x)"),
            (false, false, false)
        );
        assert_eq!(
            class("(EX y <= x . y = x) IMPLIES (EX z <= x . z = x)"),
            (false, false, false)
        );
    }

    #[test]
    fn nnf_examples() {
        let f = parse_formula("NOT (x <= y AND y <= z)").unwrap();
        assert_eq!(nnf(&f), parse_formula("S(y) <= x OR S(z) <= y").unwrap());
        let f = parse_formula("NOT NOT x <= y").unwrap();
        assert_eq!(nnf(&f), parse_formula("x <= y").unwrap());
        let f = parse_formula("NOT EX y <= t . y = x").unwrap();
        assert_eq!(
            nnf(&f),
            parse_formula("ALL y <= t . S(y) <= x OR S(x) <= y").unwrap()
        );
        let f = parse_formula("NOT ALL y <= |t| . y <= x").unwrap();
        assert_eq!(nnf(&f), parse_formula("EX y <= |t| . S(x) <= y").unwrap());
        let f = parse_formula("x <= y IMPLIES y <= x").unwrap();
        assert_eq!(nnf(&f), parse_formula("S(y) <= x OR y <= x").unwrap());
    }

    #[test]
    fn negated_atoms() {
        let f = parse_formula("x <= y").unwrap();
        assert_eq!(negated_atom_eval_form(&f), parse_formula("S(y) <= x").unwrap());
        let f = parse_formula("x = y").unwrap();
        assert_eq!(
            negated_atom_eval_form(&f),
            parse_formula("S(x) <= y OR S(y) <= x").unwrap()
        );
        let f = parse_formula("0 <= x").unwrap();
        assert_eq!(negated_atom_eval_form(&f), parse_formula("S(x) <= 0").unwrap());
    }

    #[test]
    fn nnf_keeps_class_and_is_idempotent() {
        let f = parse_formula("(ALL y <= x . y <= x) IMPLIES NOT (ALL z <= |x| . NOT EX w <= z . w = x)").unwrap();
        let g = nnf(&f);
        assert!(is_negation_free(&g));
        assert_eq!(classify(&g), classify(&f));
        assert_eq!(nnf(&g), g);
    }
}
