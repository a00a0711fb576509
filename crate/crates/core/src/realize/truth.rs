//! Direct evaluation of formulas in the standard model.
//!
//! This is the reference oracle: quantifiers are swept, `NOT` and `IMPLIES`
//! are evaluated natively, and nothing here touches realizers.

use num_traits::Zero;

use crate::error::Result;
use crate::numsem::{bit_length, compare_cost, eval_in, Budget, CostReport, Meter, Nat, Valuation};
use crate::syntax::{Formula, Quantifier};

pub fn brute_truth(phi: &Formula, v: &Valuation, b: &Budget) -> Result<(bool, CostReport)> {
    v.require_covers(&phi.free_vars())?;
    let mut meter = Meter::new(b);
    let mut env = v.clone();
    let truth = truth_in(phi, &mut env, &mut meter)?;
    Ok((truth, meter.report()))
}

pub(crate) fn truth_in(phi: &Formula, env: &mut Valuation, meter: &mut Meter) -> Result<bool> {
    match phi {
        Formula::Leq(s, t) | Formula::Eq(s, t) => {
            let a = eval_in(s, env, meter)?;
            let b = eval_in(t, env, meter)?;
            meter.charge(compare_cost(&a, &b))?;
            Ok(if matches!(phi, Formula::Leq(..)) { a <= b } else { a == b })
        }
        Formula::And(a, b) => {
            meter.charge(1)?;
            Ok(truth_in(a, env, meter)? && truth_in(b, env, meter)?)
        }
        Formula::Or(a, b) => {
            meter.charge(1)?;
            Ok(truth_in(a, env, meter)? || truth_in(b, env, meter)?)
        }
        Formula::Implies(a, b) => {
            meter.charge(1)?;
            Ok(!truth_in(a, env, meter)? || truth_in(b, env, meter)?)
        }
        Formula::Not(a) => {
            meter.charge(1)?;
            Ok(!truth_in(a, env, meter)?)
        }
        _ => {
            let q = phi.as_quantifier().expect("quantifier");
            let limit = quantifier_limit(q.bound, q.sharp, env, meter)?;
            let want = q.quantifier == Quantifier::Exists;
            let mut y = Nat::zero();
            while y <= limit {
                meter.charge(1)?;
                let holds = env.scoped(q.var, y.clone(), |env| truth_in(q.body, env, meter))?;
                if holds == want {
                    return Ok(want);
                }
                y += 1u32;
            }
            Ok(!want)
        }
    }
}

/// Largest value the quantified variable ranges over.
pub(crate) fn quantifier_limit(
    bound: &crate::syntax::Term,
    sharp: bool,
    env: &Valuation,
    meter: &mut Meter,
) -> Result<Nat> {
    let t = eval_in(bound, env, meter)?;
    if sharp {
        meter.charge(bit_length(&t) + 1)?;
        Ok(Nat::from(bit_length(&t)))
    } else {
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::syntax::parse_formula;

    fn truth(text: &str, x: u32) -> bool {
        let phi = parse_formula(text).unwrap();
        let v = Valuation::from_pairs([("x", x)]);
        brute_truth(&phi, &v, &Budget::default()).unwrap().0
    }

    #[test]
    fn examples() {
        assert!(truth("0 = 0", 0));
        assert!(!truth("EX y <= x . y + y = x", 5));
        assert!(truth("NOT (EX y <= x . y + y = x)", 5));
        assert!(truth("EX y <= x . y + y = x", 4));
        assert!(truth("ALL y <= |x| . y <= x", 4));
        assert!(!truth("ALL y <= |x| . S(y) <= x", 2));
        assert!(truth("x <= 3 IMPLIES x = 2", 2));
        assert!(truth("x <= 3 IMPLIES x = 2", 7));
        assert!(!truth("x <= 3 IMPLIES x = 2", 1));
    }

    #[test]
    fn missing_variable() {
        let phi = parse_formula("x <= y").unwrap();
        let v = Valuation::from_pairs([("x", 1u32)]);
        assert_eq!(
            brute_truth(&phi, &v, &Budget::default()).unwrap_err(),
            Error::UnboundVariable("y".into())
        );
    }

    #[test]
    fn huge_sweep_hits_the_step_budget() {
        let phi = parse_formula("EX y <= x # x . S(y) <= 0").unwrap();
        let v = Valuation::from_pairs([("x", 1u32 << 20)]);
        let e = brute_truth(&phi, &v, &Budget::new(1 << 20, 100_000)).unwrap_err();
        assert!(matches!(e, Error::BudgetExceeded(_)));
    }
}
