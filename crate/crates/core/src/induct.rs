//! Ground-level checking of polynomial induction instances
//!
//! ```text
//! (phi(0) AND ALL x (phi(half(x)) -> phi(x))) -> ALL x phi(x)
//! ```
//!
//! swept over the finite segment `0..=N`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hierarchy::classify;
use crate::numsem::{Budget, CostReport, Meter, Nat, Valuation};
use crate::realize::truth_in;
use crate::syntax::{Formula, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PindReport {
    /// `phi(0)` holds.
    pub base_ok: bool,
    /// Least `x <= N` with `phi(half(x))` true and `phi(x)` false.
    pub first_step_failure: Option<Nat>,
    /// Greatest `M <= N` with `phi(m)` for every `m <= M`; absent when
    /// `phi(0)` fails.
    pub conclusion_ok_up_to: Option<Nat>,
    pub checked_bound: Nat,
}

impl PindReport {
    pub fn premises_hold(&self) -> bool {
        self.base_ok && self.first_step_failure.is_none()
    }
}

fn precondition(phi: &Formula, var: &str) -> Result<()> {
    if !classify(phi).sigma_b1 {
        return Err(Error::NotSigmaB1(phi.to_string()));
    }
    let extra: Vec<String> = phi.free_vars().into_iter().filter(|x| x != var).collect();
    if !extra.is_empty() {
        return Err(Error::UnexpectedFreeVariables {
            expected: var.to_owned(),
            found: extra,
        });
    }
    Ok(())
}

/// Checks the instance of the schema for `phi(var)` on `0..=n`.
pub fn pind_check(phi: &Formula, var: &str, n: &Nat, b: &Budget) -> Result<(PindReport, CostReport)> {
    precondition(phi, var)?;
    let mut meter = Meter::new(b);
    let base = phi.substitute(var, &Term::Zero);
    let premise = phi.substitute(var, &Term::half(Term::var(var)));

    let base_ok = truth_in(&base, &mut Valuation::new(), &mut meter)?;
    let mut first_step_failure = None;
    let mut conclusion_ok_up_to: Option<Nat> = None;
    let mut conclusion_broken = false;

    let mut m = Nat::zero();
    while m <= *n && !(conclusion_broken && first_step_failure.is_some()) {
        let mut env = Valuation::new().with(var, m.clone());
        let holds = truth_in(phi, &mut env, &mut meter)?;
        if !conclusion_broken {
            if holds {
                conclusion_ok_up_to = Some(m.clone());
            } else {
                conclusion_broken = true;
            }
        }
        if !holds && first_step_failure.is_none() && truth_in(&premise, &mut env, &mut meter)? {
            first_step_failure = Some(m.clone());
        }
        m += 1u32;
    }

    let report = PindReport {
        base_ok,
        first_step_failure,
        conclusion_ok_up_to,
        checked_bound: n.clone(),
    };
    Ok((report, meter.report()))
}

/// Executable soundness of the schema on `0..=n`: whenever the premises
/// hold on the segment, `phi(m)` is re-evaluated directly for every
/// `m <= n`. Returns false only if the schema would be unsound there.
pub fn pind_soundness_demo(phi: &Formula, var: &str, n: &Nat, b: &Budget) -> Result<bool> {
    let (report, _) = pind_check(phi, var, n, b)?;
    if !report.premises_hold() {
        return Ok(true);
    }
    let mut meter = Meter::new(b);
    let mut m = Nat::zero();
    while m <= *n {
        let mut env = Valuation::new().with(var, m.clone());
        if !truth_in(phi, &mut env, &mut meter)? {
            return Ok(false);
        }
        m += 1u32;
    }
    Ok(true)
}
