//! Ground-level witnessing: reading off the function a `Sigma^b_1`
//! definition `phi(x, y)` computes by searching for the least output.

use num_traits::Zero;

use super::plan::Plan;
use super::truth::truth_in;
use crate::error::{Error, Result};
use crate::numsem::{eval_in, Budget, CostReport, Meter, Nat, Valuation};
use crate::syntax::{Formula, Term};

/// Least `y <= y_bound(x)` with `phi(x_val, y)` true; `phi` has input `x`
/// and output `y`.
pub fn extract_function(
    phi: &Formula,
    x_val: &Nat,
    y_bound: &Term,
    b: &Budget,
) -> Result<(Option<Nat>, CostReport)> {
    let inputs = Valuation::new().with("x", x_val.clone());
    extract_function_with(phi, &inputs, "y", y_bound, b)
}

/// As [`extract_function`] with any number of named inputs.
pub fn extract_function_with(
    phi: &Formula,
    inputs: &Valuation,
    output: &str,
    y_bound: &Term,
    b: &Budget,
) -> Result<(Option<Nat>, CostReport)> {
    Plan::of(phi)?;
    inputs.require_covers(&y_bound.free_vars())?;
    let scope = inputs.with(output, Nat::zero());
    scope.require_covers(&phi.free_vars())?;
    if inputs.get(output).is_some() {
        return Err(Error::UnexpectedFreeVariables {
            expected: output.to_owned(),
            found: vec![output.to_owned()],
        });
    }

    let mut meter = Meter::new(b);
    let limit = eval_in(y_bound, inputs, &mut meter)?;
    let mut env = inputs.clone();
    let mut y = Nat::zero();
    while y <= limit {
        meter.charge(1)?;
        if env.scoped(output, y.clone(), |env| truth_in(phi, env, &mut meter))? {
            return Ok((Some(y), meter.report()));
        }
        y += 1u32;
    }
    Ok((None, meter.report()))
}
