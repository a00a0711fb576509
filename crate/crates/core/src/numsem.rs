//! Metered evaluation of terms over the natural numbers.
//!
//! Every node evaluation is charged in abstract bit-operation steps:
//!
//! | node                 | steps                         |
//! |----------------------|-------------------------------|
//! | `0`, variable        | 1                             |
//! | `S`, `half`, `\|.\|` | `\|a\| + 1`                   |
//! | `a + b`              | `max(\|a\|, \|b\|) + 1`       |
//! | `a * b`              | `\|a\| * \|b\| + 1`           |
//! | `a # b`              | `\|a\| * \|b\| + 1`           |
//! | `a <= b`, `a = b`    | `max(\|a\|, \|b\|) + 1`       |
//!
//! `peak_bits` is the largest bit-length of any value seen.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{BudgetKind, Error, Result};
use crate::syntax::Term;

pub type Nat = BigUint;

/// `|n|`: number of binary digits of `n`, with `|0| = 0`.
pub fn bit_length(n: &Nat) -> u64 {
    n.bits()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Budget {
    pub max_bits: u64,
    pub max_steps: u64,
}

impl Budget {
    pub const DEFAULT_MAX_BITS: u64 = 1 << 20;
    pub const DEFAULT_MAX_STEPS: u64 = 1 << 32;

    pub fn new(max_bits: u64, max_steps: u64) -> Self {
        Budget {
            max_bits: max_bits.max(1),
            max_steps: max_steps.max(1),
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(Self::DEFAULT_MAX_BITS, Self::DEFAULT_MAX_STEPS)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
pub struct CostReport {
    pub steps: u64,
    pub peak_bits: u64,
}

/// Running cost accounting for one top-level operation.
#[derive(Debug, Clone)]
pub struct Meter {
    budget: Budget,
    steps: u64,
    peak_bits: u64,
}

impl Meter {
    pub fn new(budget: &Budget) -> Self {
        Meter {
            budget: *budget,
            steps: 0,
            peak_bits: 0,
        }
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    pub fn report(&self) -> CostReport {
        CostReport {
            steps: self.steps,
            peak_bits: self.peak_bits,
        }
    }

    pub fn charge(&mut self, steps: u64) -> Result<()> {
        self.steps = self.steps.saturating_add(steps);
        if self.steps > self.budget.max_steps {
            return Err(Error::BudgetExceeded(BudgetKind::Steps));
        }
        Ok(())
    }

    /// Fails if a value of `bits` bits would not fit the budget.
    pub fn admit_bits(&self, bits: u64) -> Result<()> {
        if bits > self.budget.max_bits {
            return Err(Error::BudgetExceeded(BudgetKind::Bits));
        }
        Ok(())
    }

    pub fn observe(&mut self, n: &Nat) -> Result<()> {
        let bits = bit_length(n);
        self.admit_bits(bits)?;
        self.peak_bits = self.peak_bits.max(bits);
        Ok(())
    }
}

/// Assignment of natural numbers to variable names.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Valuation(BTreeMap<String, Nat>);

impl Valuation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<K, V>(pairs: impl IntoIterator<Item = (K, V)>) -> Self
    where
        K: Into<String>,
        V: Into<Nat>,
    {
        Valuation(
            pairs
                .into_iter()
                .map(|(k, v)| (k.into(), v.into()))
                .collect(),
        )
    }

    pub fn get(&self, name: &str) -> Option<&Nat> {
        self.0.get(name)
    }

    /// Binds `name`, returning the previous value.
    pub fn insert(&mut self, name: impl Into<String>, value: Nat) -> Option<Nat> {
        self.0.insert(name.into(), value)
    }

    pub fn remove(&mut self, name: &str) -> Option<Nat> {
        self.0.remove(name)
    }

    pub fn with(&self, name: impl Into<String>, value: Nat) -> Self {
        let mut v = self.clone();
        v.insert(name, value);
        v
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Nat)> {
        self.0.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Runs `f` with `name` temporarily bound to `value`.
    pub fn scoped<T>(&mut self, name: &str, value: Nat, f: impl FnOnce(&mut Self) -> T) -> T {
        let old = self.0.insert(name.to_owned(), value);
        let out = f(self);
        match old {
            Some(old) => self.0.insert(name.to_owned(), old),
            None => self.0.remove(name),
        };
        out
    }

    pub fn require_covers<'a>(&self, names: impl IntoIterator<Item = &'a String>) -> Result<()> {
        match names.into_iter().find(|x| !self.0.contains_key(*x)) {
            Some(missing) => Err(Error::UnboundVariable(missing.clone())),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k} = {v}")?;
        }
        f.write_str("}")
    }
}

pub fn eval_term(t: &Term, v: &Valuation, b: &Budget) -> Result<(Nat, CostReport)> {
    let mut meter = Meter::new(b);
    let n = eval_in(t, v, &mut meter)?;
    Ok((n, meter.report()))
}

/// Evaluates `t` charging `meter`.
pub fn eval_in(t: &Term, v: &Valuation, meter: &mut Meter) -> Result<Nat> {
    let n = match t {
        Term::Zero => {
            meter.charge(1)?;
            Nat::zero()
        }
        Term::Var(x) => {
            meter.charge(1)?;
            v.get(x).cloned().ok_or_else(|| Error::UnboundVariable(x.clone()))?
        }
        Term::Succ(s) => {
            let a = eval_in(s, v, meter)?;
            meter.charge(bit_length(&a) + 1)?;
            meter.admit_bits(bit_length(&a) + 1)?;
            a + 1u32
        }
        Term::Half(s) => {
            let a = eval_in(s, v, meter)?;
            meter.charge(bit_length(&a) + 1)?;
            a >> 1u32
        }
        Term::Len(s) => {
            let a = eval_in(s, v, meter)?;
            meter.charge(bit_length(&a) + 1)?;
            Nat::from(bit_length(&a))
        }
        Term::Add(s, t) => {
            let a = eval_in(s, v, meter)?;
            let b = eval_in(t, v, meter)?;
            let w = bit_length(&a).max(bit_length(&b));
            meter.charge(w + 1)?;
            meter.admit_bits(w + 1)?;
            a + b
        }
        Term::Mul(s, t) => {
            let a = eval_in(s, v, meter)?;
            let b = eval_in(t, v, meter)?;
            let (la, lb) = (bit_length(&a), bit_length(&b));
            meter.charge(la.saturating_mul(lb).saturating_add(1))?;
            meter.admit_bits(la.saturating_add(lb))?;
            a * b
        }
        Term::Smash(s, t) => {
            let a = eval_in(s, v, meter)?;
            let b = eval_in(t, v, meter)?;
            let exponent = bit_length(&a).saturating_mul(bit_length(&b));
            let out_bits = exponent.saturating_add(1);
            meter.admit_bits(out_bits)?;
            meter.charge(out_bits)?;
            Nat::one() << exponent
        }
    };
    meter.observe(&n)?;
    Ok(n)
}

/// Cost of comparing two values in an atomic formula.
pub fn compare_cost(a: &Nat, b: &Nat) -> u64 {
    bit_length(a).max(bit_length(b)) + 1
}
