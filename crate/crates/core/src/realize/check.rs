use num_traits::Zero;

use super::plan::Plan;
use super::seq::decode_metered;
use super::truth::{quantifier_limit, truth_in};
use super::Realizer;
use crate::error::Result;
use crate::numsem::{compare_cost, Budget, CostReport, Meter, Nat, Valuation};
use crate::syntax::Formula;

/// Decides whether `r` realizes `phi` under `v`.
///
/// A realizer of the wrong shape (not a sequence, wrong length) is simply
/// rejected. For sharply bounded formulas `r` is ignored.
pub fn check_realizer(
    phi: &Formula,
    r: &Realizer,
    v: &Valuation,
    b: &Budget,
) -> Result<(bool, CostReport)> {
    let plan = Plan::of(phi)?;
    v.require_covers(&phi.free_vars())?;
    let mut meter = Meter::new(b);
    meter.observe(r.value())?;
    let mut env = v.clone();
    let ok = check_in(&plan, r.value(), &mut env, &mut meter)?;
    Ok((ok, meter.report()))
}

fn check_in(plan: &Plan, r: &Nat, env: &mut Valuation, meter: &mut Meter) -> Result<bool> {
    match plan {
        Plan::Delta0(psi) => truth_in(psi, env, meter),
        Plan::And(a, b) | Plan::Or(a, b) => {
            let Some(items) = components(r, Some(2), meter)? else {
                return Ok(false);
            };
            let left = check_in(a, &items[0], env, meter)?;
            if matches!(plan, Plan::And(..)) {
                Ok(left && check_in(b, &items[1], env, meter)?)
            } else {
                Ok(left || check_in(b, &items[1], env, meter)?)
            }
        }
        Plan::ForallSharp { var, bound, body } => {
            let n = quantifier_limit(bound, true, env, meter)?;
            let Some(items) = components(r, None, meter)? else {
                return Ok(false);
            };
            meter.charge(1)?;
            if Nat::from(items.len()) != n.clone() + 1u32 {
                return Ok(false);
            }
            let mut y = Nat::zero();
            for item in &items {
                meter.charge(1)?;
                if !env.scoped(var, y.clone(), |env| check_in(body, item, env, meter))? {
                    return Ok(false);
                }
                y += 1u32;
            }
            Ok(true)
        }
        Plan::Exists {
            var,
            bound,
            sharp,
            body,
        } => {
            let limit = quantifier_limit(bound, *sharp, env, meter)?;
            let Some(items) = components(r, Some(2), meter)? else {
                return Ok(false);
            };
            let (witness, sub) = (&items[0], &items[1]);
            meter.charge(compare_cost(witness, &limit))?;
            if *witness > limit {
                return Ok(false);
            }
            env.scoped(var, witness.clone(), |env| check_in(body, sub, env, meter))
        }
    }
}

/// Decodes `r`, requiring the given length when one is specified.
fn components(r: &Nat, len: Option<usize>, meter: &mut Meter) -> Result<Option<Vec<Nat>>> {
    let items = decode_metered(&Realizer::from(r.clone()), meter)?;
    Ok(items.filter(|items| len.is_none_or(|n| items.len() == n)))
}
