//! The shape of a `Sigma^b_1` formula as seen by the realizability
//! recursion, computed once per query.

use crate::error::{Error, Result};
use crate::hierarchy::{classify, nnf};
use crate::syntax::{Formula, Quantifier, Term};

#[derive(Debug, Clone)]
pub(crate) enum Plan {
    /// Sharply bounded: realizers are ignored, truth is evaluated.
    Delta0(Formula),
    And(Box<Plan>, Box<Plan>),
    Or(Box<Plan>, Box<Plan>),
    /// `ALL var <= |bound| . body`
    ForallSharp {
        var: String,
        bound: Term,
        body: Box<Plan>,
    },
    /// `EX var <= bound . body`, or `<= |bound|` when `sharp`.
    Exists {
        var: String,
        bound: Term,
        sharp: bool,
        body: Box<Plan>,
    },
}

impl Plan {
    pub(crate) fn of(phi: &Formula) -> Result<Plan> {
        if !classify(phi).sigma_b1 {
            return Err(Error::NotSigmaB1(phi.to_string()));
        }
        Plan::compile(&nnf(phi))
    }

    fn compile(psi: &Formula) -> Result<Plan> {
        if classify(psi).sharply_bounded {
            return Ok(Plan::Delta0(psi.clone()));
        }
        match psi {
            Formula::And(a, b) => Ok(Plan::And(
                Box::new(Plan::compile(a)?),
                Box::new(Plan::compile(b)?),
            )),
            Formula::Or(a, b) => Ok(Plan::Or(
                Box::new(Plan::compile(a)?),
                Box::new(Plan::compile(b)?),
            )),
            _ => {
                let q = psi
                    .as_quantifier()
                    .ok_or_else(|| Error::NotSigmaB1(psi.to_string()))?;
                let (sharp, bound) = match (q.sharp, q.bound) {
                    (false, Term::Len(inner)) => (true, inner.as_ref()),
                    (sharp, bound) => (sharp, bound),
                };
                let body = Box::new(Plan::compile(q.body)?);
                match (q.quantifier, sharp) {
                    (Quantifier::Forall, true) => Ok(Plan::ForallSharp {
                        var: q.var.to_owned(),
                        bound: bound.clone(),
                        body,
                    }),
                    (Quantifier::Exists, sharp) => Ok(Plan::Exists {
                        var: q.var.to_owned(),
                        bound: bound.clone(),
                        sharp,
                        body,
                    }),
                    (Quantifier::Forall, false) => Err(Error::NotSigmaB1(psi.to_string())),
                }
            }
        }
    }
}
