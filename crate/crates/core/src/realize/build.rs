use num_traits::Zero;

use super::plan::Plan;
use super::seq::encode_metered;
use super::truth::{quantifier_limit, truth_in};
use super::Realizer;
use crate::error::Result;
use crate::numsem::{Budget, CostReport, Meter, Nat, Valuation};
use crate::syntax::Formula;

/// Constructs a realizer for `phi` under `v`, or `None` when `phi` is false.
///
/// Deterministic: existentials take their least witness and disjunctions
/// prefer the left disjunct, leaving `0` in the unused slot.
pub fn build_realizer(
    phi: &Formula,
    v: &Valuation,
    b: &Budget,
) -> Result<(Option<Realizer>, CostReport)> {
    let plan = Plan::of(phi)?;
    v.require_covers(&phi.free_vars())?;
    let mut meter = Meter::new(b);
    let mut env = v.clone();
    let r = build_in(&plan, &mut env, &mut meter)?;
    Ok((r.map(Realizer::from), meter.report()))
}

fn build_in(plan: &Plan, env: &mut Valuation, meter: &mut Meter) -> Result<Option<Nat>> {
    match plan {
        Plan::Delta0(psi) => Ok(truth_in(psi, env, meter)?.then(Nat::zero)),
        Plan::And(a, b) => {
            let Some(ra) = build_in(a, env, meter)? else {
                return Ok(None);
            };
            let Some(rb) = build_in(b, env, meter)? else {
                return Ok(None);
            };
            pair(ra, rb, meter)
        }
        Plan::Or(a, b) => {
            if let Some(ra) = build_in(a, env, meter)? {
                return pair(ra, Nat::zero(), meter);
            }
            match build_in(b, env, meter)? {
                Some(rb) => pair(Nat::zero(), rb, meter),
                None => Ok(None),
            }
        }
        Plan::ForallSharp { var, bound, body } => {
            let n = quantifier_limit(bound, true, env, meter)?;
            let mut items = Vec::new();
            let mut y = Nat::zero();
            while y <= n {
                meter.charge(1)?;
                match env.scoped(var, y.clone(), |env| build_in(body, env, meter))? {
                    Some(r) => items.push(r),
                    None => return Ok(None),
                }
                y += 1u32;
            }
            Ok(Some(encode_metered(&items, meter)?.into_value()))
        }
        Plan::Exists {
            var,
            bound,
            sharp,
            body,
        } => {
            let limit = quantifier_limit(bound, *sharp, env, meter)?;
            let mut y = Nat::zero();
            while y <= limit {
                meter.charge(1)?;
                if let Some(r) = env.scoped(var, y.clone(), |env| build_in(body, env, meter))? {
                    return pair(y, r, meter);
                }
                y += 1u32;
            }
            Ok(None)
        }
    }
}

fn pair(a: Nat, b: Nat, meter: &mut Meter) -> Result<Option<Nat>> {
    Ok(Some(encode_metered(&[a, b], meter)?.into_value()))
}
