//! Terms and formulas of the bounded-arithmetic language.
//!
//! Quantifiers come in two flavours. A *bounded* quantifier `EX y <= t`
//! ranges over `0..=t`; a *sharp* quantifier `EX y <= |t|` ranges over
//! `0..=|t|`. Sharp quantifiers store `t` itself as their bound, not `|t|`.

mod parse;
mod print;

use std::collections::BTreeSet;

pub use parse::{parse_formula, parse_term, MAX_NUMERAL};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Zero,
    Var(String),
    Succ(Box<Term>),
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
    /// Binary length `|t|`.
    Len(Box<Term>),
    /// `half(t)`, i.e. `floor(t / 2)`.
    Half(Box<Term>),
    /// `s # t = 2^(|s| * |t|)`.
    Smash(Box<Term>, Box<Term>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Exists,
    Forall,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Leq(Term, Term),
    Eq(Term, Term),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Not(Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    ExistsBounded { var: String, bound: Term, body: Box<Formula> },
    ForallBounded { var: String, bound: Term, body: Box<Formula> },
    /// `EX var <= |bound| . body`
    ExistsSharp { var: String, bound: Term, body: Box<Formula> },
    /// `ALL var <= |bound| . body`
    ForallSharp { var: String, bound: Term, body: Box<Formula> },
}

/// Borrowed view of any of the four quantifier variants.
#[derive(Debug, Clone, Copy)]
pub struct QuantView<'a> {
    pub quantifier: Quantifier,
    pub sharp: bool,
    pub var: &'a str,
    /// The bound as stored; for sharp quantifiers the range is `0..=|bound|`.
    pub bound: &'a Term,
    pub body: &'a Formula,
}

#[allow(clippy::should_implement_trait)]
impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    /// The numeral `S(S(...S(0)))` with `n` successors.
    pub fn numeral(n: u64) -> Term {
        (0..n).fold(Term::Zero, |t, _| Term::Succ(Box::new(t)))
    }

    pub fn succ(t: Term) -> Term {
        Term::Succ(Box::new(t))
    }

    pub fn add(s: Term, t: Term) -> Term {
        Term::Add(Box::new(s), Box::new(t))
    }

    pub fn mul(s: Term, t: Term) -> Term {
        Term::Mul(Box::new(s), Box::new(t))
    }

    pub fn len(t: Term) -> Term {
        Term::Len(Box::new(t))
    }

    pub fn half(t: Term) -> Term {
        Term::Half(Box::new(t))
    }

    pub fn smash(s: Term, t: Term) -> Term {
        Term::Smash(Box::new(s), Box::new(t))
    }

    /// If the term is a pure successor chain over zero, its value.
    pub fn as_numeral(&self) -> Option<u64> {
        let mut n = 0;
        let mut t = self;
        loop {
            match t {
                Term::Zero => return Some(n),
                Term::Succ(inner) => {
                    n += 1;
                    t = inner;
                }
                _ => return None,
            }
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Zero => {}
            Term::Var(x) => {
                out.insert(x.clone());
            }
            Term::Succ(t) | Term::Len(t) | Term::Half(t) => t.collect_vars(out),
            Term::Add(s, t) | Term::Mul(s, t) | Term::Smash(s, t) => {
                s.collect_vars(out);
                t.collect_vars(out);
            }
        }
    }

    pub fn mentions(&self, name: &str) -> bool {
        match self {
            Term::Zero => false,
            Term::Var(x) => x == name,
            Term::Succ(t) | Term::Len(t) | Term::Half(t) => t.mentions(name),
            Term::Add(s, t) | Term::Mul(s, t) | Term::Smash(s, t) => {
                s.mentions(name) || t.mentions(name)
            }
        }
    }

    /// Replaces every occurrence of `name` by `replacement`.
    pub fn substitute(&self, name: &str, replacement: &Term) -> Term {
        match self {
            Term::Zero => Term::Zero,
            Term::Var(x) if x == name => replacement.clone(),
            Term::Var(x) => Term::Var(x.clone()),
            Term::Succ(t) => Term::succ(t.substitute(name, replacement)),
            Term::Len(t) => Term::len(t.substitute(name, replacement)),
            Term::Half(t) => Term::half(t.substitute(name, replacement)),
            Term::Add(s, t) => Term::add(
                s.substitute(name, replacement),
                t.substitute(name, replacement),
            ),
            Term::Mul(s, t) => Term::mul(
                s.substitute(name, replacement),
                t.substitute(name, replacement),
            ),
            Term::Smash(s, t) => Term::smash(
                s.substitute(name, replacement),
                t.substitute(name, replacement),
            ),
        }
    }

    /// Nesting depth; leaves have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Term::Zero | Term::Var(_) => 0,
            Term::Succ(t) | Term::Len(t) | Term::Half(t) => 1 + t.depth(),
            Term::Add(s, t) | Term::Mul(s, t) | Term::Smash(s, t) => 1 + s.depth().max(t.depth()),
        }
    }

    fn rename_var(&self, from: &str, to: &str) -> Term {
        self.substitute(from, &Term::Var(to.to_owned()))
    }
}

impl Formula {
    pub fn leq(s: Term, t: Term) -> Formula {
        Formula::Leq(s, t)
    }

    pub fn eq(s: Term, t: Term) -> Formula {
        Formula::Eq(s, t)
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Formula {
        Formula::Not(Box::new(a))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    /// Builds a quantifier bounded by `bound` as written: a bound of the
    /// form `|t|` yields the sharp variant with stored bound `t`.
    pub fn quantify(q: Quantifier, var: impl Into<String>, bound: Term, body: Formula) -> Formula {
        match bound {
            Term::Len(inner) => Formula::sharp(q, var, *inner, body),
            bound => {
                let (var, body) = (var.into(), Box::new(body));
                match q {
                    Quantifier::Exists => Formula::ExistsBounded { var, bound, body },
                    Quantifier::Forall => Formula::ForallBounded { var, bound, body },
                }
            }
        }
    }

    /// `q var <= |bound| . body`
    pub fn sharp(q: Quantifier, var: impl Into<String>, bound: Term, body: Formula) -> Formula {
        let (var, body) = (var.into(), Box::new(body));
        match q {
            Quantifier::Exists => Formula::ExistsSharp { var, bound, body },
            Quantifier::Forall => Formula::ForallSharp { var, bound, body },
        }
    }

    pub fn exists(var: impl Into<String>, bound: Term, body: Formula) -> Formula {
        Formula::quantify(Quantifier::Exists, var, bound, body)
    }

    pub fn forall(var: impl Into<String>, bound: Term, body: Formula) -> Formula {
        Formula::quantify(Quantifier::Forall, var, bound, body)
    }

    pub fn as_quantifier(&self) -> Option<QuantView<'_>> {
        let (quantifier, sharp, var, bound, body) = match self {
            Formula::ExistsBounded { var, bound, body } => (Quantifier::Exists, false, var, bound, body),
            Formula::ForallBounded { var, bound, body } => (Quantifier::Forall, false, var, bound, body),
            Formula::ExistsSharp { var, bound, body } => (Quantifier::Exists, true, var, bound, body),
            Formula::ForallSharp { var, bound, body } => (Quantifier::Forall, true, var, bound, body),
            _ => return None,
        };
        Some(QuantView {
            quantifier,
            sharp,
            var,
            bound,
            body,
        })
    }

    fn rebuild_quantifier(view: &QuantView<'_>, var: String, bound: Term, body: Formula) -> Formula {
        if view.sharp {
            Formula::sharp(view.quantifier, var, bound, body)
        } else {
            Formula::quantify(view.quantifier, var, bound, body)
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        let mut term = |t: &Term, bound: &Vec<&str>| {
            for x in t.free_vars() {
                if !bound.contains(&x.as_str()) {
                    out.insert(x);
                }
            }
        };
        match self {
            Formula::Leq(s, t) | Formula::Eq(s, t) => {
                term(s, bound);
                term(t, bound);
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Not(a) => a.collect_free(bound, out),
            _ => {
                let q = self.as_quantifier().expect("quantifier");
                term(q.bound, bound);
                bound.push(q.var);
                q.body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Every variable name occurring anywhere, free or bound.
    pub fn all_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Leq(s, t) | Formula::Eq(s, t) => {
                out.extend(s.free_vars());
                out.extend(t.free_vars());
            }
            _ => {
                if let Some(q) = f.as_quantifier() {
                    out.insert(q.var.to_owned());
                    out.extend(q.bound.free_vars());
                }
            }
        });
        out
    }

    /// Pre-order traversal.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        f(self);
        match self {
            Formula::Leq(..) | Formula::Eq(..) => {}
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            Formula::Not(a) => a.visit(f),
            _ => self.as_quantifier().expect("quantifier").body.visit(f),
        }
    }

    /// Number of connectives and quantifiers on the longest path to an atom.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Leq(..) | Formula::Eq(..) => 0,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                1 + a.depth().max(b.depth())
            }
            Formula::Not(a) => 1 + a.depth(),
            _ => 1 + self.as_quantifier().expect("quantifier").body.depth(),
        }
    }

    pub fn uses_negation_or_implication(&self) -> bool {
        let mut found = false;
        self.visit(&mut |f| {
            if matches!(f, Formula::Not(_) | Formula::Implies(..)) {
                found = true;
            }
        });
        found
    }

    /// Capture-avoiding substitution of `replacement` for the free
    /// occurrences of `name`.
    pub fn substitute(&self, name: &str, replacement: &Term) -> Formula {
        let mut avoid = replacement.free_vars();
        avoid.extend(self.all_names());
        self.subst_in(name, replacement, &mut avoid)
    }

    fn subst_in(&self, name: &str, replacement: &Term, avoid: &mut BTreeSet<String>) -> Formula {
        match self {
            Formula::Leq(s, t) => Formula::Leq(
                s.substitute(name, replacement),
                t.substitute(name, replacement),
            ),
            Formula::Eq(s, t) => Formula::Eq(
                s.substitute(name, replacement),
                t.substitute(name, replacement),
            ),
            Formula::And(a, b) => Formula::and(
                a.subst_in(name, replacement, avoid),
                b.subst_in(name, replacement, avoid),
            ),
            Formula::Or(a, b) => Formula::or(
                a.subst_in(name, replacement, avoid),
                b.subst_in(name, replacement, avoid),
            ),
            Formula::Implies(a, b) => Formula::implies(
                a.subst_in(name, replacement, avoid),
                b.subst_in(name, replacement, avoid),
            ),
            Formula::Not(a) => Formula::not(a.subst_in(name, replacement, avoid)),
            _ => {
                let q = self.as_quantifier().expect("quantifier");
                let bound = q.bound.substitute(name, replacement);
                if q.var == name {
                    // shadowed: the body has no free occurrence of `name`
                    return Formula::rebuild_quantifier(&q, q.var.to_owned(), bound, q.body.clone());
                }
                let (var, body) = if replacement.mentions(q.var) {
                    let fresh = fresh_name(q.var, avoid);
                    avoid.insert(fresh.clone());
                    let renamed = q.body.rename_free(q.var, &fresh);
                    (fresh, renamed)
                } else {
                    (q.var.to_owned(), q.body.clone())
                };
                let body = body.subst_in(name, replacement, avoid);
                Formula::rebuild_quantifier(&q, var, bound, body)
            }
        }
    }

    fn rename_free(&self, from: &str, to: &str) -> Formula {
        match self {
            Formula::Leq(s, t) => Formula::Leq(s.rename_var(from, to), t.rename_var(from, to)),
            Formula::Eq(s, t) => Formula::Eq(s.rename_var(from, to), t.rename_var(from, to)),
            Formula::And(a, b) => Formula::and(a.rename_free(from, to), b.rename_free(from, to)),
            Formula::Or(a, b) => Formula::or(a.rename_free(from, to), b.rename_free(from, to)),
            Formula::Implies(a, b) => {
                Formula::implies(a.rename_free(from, to), b.rename_free(from, to))
            }
            Formula::Not(a) => Formula::not(a.rename_free(from, to)),
            _ => {
                let q = self.as_quantifier().expect("quantifier");
                let bound = q.bound.rename_var(from, to);
                let body = if q.var == from {
                    q.body.clone()
                } else {
                    q.body.rename_free(from, to)
                };
                Formula::rebuild_quantifier(&q, q.var.to_owned(), bound, body)
            }
        }
    }

    /// Renames bound variables so that every binder is distinct from every
    /// other binder and from every free variable. The first binder of a name
    /// keeps it; later clashes get `name_1`, `name_2`, ...
    pub fn rename_apart(&self) -> Formula {
        let mut used = self.free_vars();
        let mut taken = self.all_names();
        self.rename_apart_in(&mut used, &mut taken)
    }

    fn rename_apart_in(&self, used: &mut BTreeSet<String>, taken: &mut BTreeSet<String>) -> Formula {
        match self {
            Formula::Leq(..) | Formula::Eq(..) => self.clone(),
            Formula::And(a, b) => Formula::and(a.rename_apart_in(used, taken), b.rename_apart_in(used, taken)),
            Formula::Or(a, b) => Formula::or(a.rename_apart_in(used, taken), b.rename_apart_in(used, taken)),
            Formula::Implies(a, b) => {
                Formula::implies(a.rename_apart_in(used, taken), b.rename_apart_in(used, taken))
            }
            Formula::Not(a) => Formula::not(a.rename_apart_in(used, taken)),
            _ => {
                let q = self.as_quantifier().expect("quantifier");
                let (var, body) = if used.contains(q.var) {
                    let fresh = fresh_name(q.var, taken);
                    taken.insert(fresh.clone());
                    (fresh.clone(), q.body.rename_free(q.var, &fresh))
                } else {
                    (q.var.to_owned(), q.body.clone())
                };
                used.insert(var.clone());
                let body = body.rename_apart_in(used, taken);
                Formula::rebuild_quantifier(&q, var, q.bound.clone(), body)
            }
        }
    }

    /// True when no binder repeats a name bound elsewhere or free.
    pub fn is_renamed_apart(&self) -> bool {
        let free = self.free_vars();
        let mut binders = BTreeSet::new();
        let mut ok = true;
        self.visit(&mut |f| {
            if let Some(q) = f.as_quantifier() {
                ok &= !free.contains(q.var) && binders.insert(q.var.to_owned());
            }
        });
        ok
    }

    /// Structural equality up to consistent renaming of bound variables.
    pub fn alpha_eq(&self, other: &Formula) -> bool {
        alpha_eq_in(self, other, &mut Vec::new())
    }
}

fn alpha_eq_in<'a>(a: &'a Formula, b: &'a Formula, env: &mut Vec<(&'a str, &'a str)>) -> bool {
    match (a, b) {
        (Formula::Leq(s1, t1), Formula::Leq(s2, t2)) | (Formula::Eq(s1, t1), Formula::Eq(s2, t2)) => {
            term_alpha_eq(s1, s2, env) && term_alpha_eq(t1, t2, env)
        }
        (Formula::And(a1, b1), Formula::And(a2, b2))
        | (Formula::Or(a1, b1), Formula::Or(a2, b2))
        | (Formula::Implies(a1, b1), Formula::Implies(a2, b2)) => {
            alpha_eq_in(a1, a2, env) && alpha_eq_in(b1, b2, env)
        }
        (Formula::Not(a1), Formula::Not(a2)) => alpha_eq_in(a1, a2, env),
        _ => match (a.as_quantifier(), b.as_quantifier()) {
            (Some(q1), Some(q2)) => {
                if q1.quantifier != q2.quantifier
                    || q1.sharp != q2.sharp
                    || !term_alpha_eq(q1.bound, q2.bound, env)
                {
                    return false;
                }
                env.push((q1.var, q2.var));
                let eq = alpha_eq_in(q1.body, q2.body, env);
                env.pop();
                eq
            }
            _ => false,
        },
    }
}

fn term_alpha_eq(a: &Term, b: &Term, env: &[(&str, &str)]) -> bool {
    match (a, b) {
        (Term::Zero, Term::Zero) => true,
        (Term::Var(x), Term::Var(y)) => {
            // innermost binding wins
            match env.iter().rev().find(|(l, r)| l == x || r == y) {
                Some((l, r)) => l == x && r == y,
                None => x == y,
            }
        }
        (Term::Succ(s), Term::Succ(t))
        | (Term::Len(s), Term::Len(t))
        | (Term::Half(s), Term::Half(t)) => term_alpha_eq(s, t, env),
        (Term::Add(s1, t1), Term::Add(s2, t2))
        | (Term::Mul(s1, t1), Term::Mul(s2, t2))
        | (Term::Smash(s1, t1), Term::Smash(s2, t2)) => {
            term_alpha_eq(s1, s2, env) && term_alpha_eq(t1, t2, env)
        }
        _ => false,
    }
}

fn fresh_name(base: &str, taken: &BTreeSet<String>) -> String {
    (1..)
        .map(|i| format!("{base}_{i}"))
        .find(|n| !taken.contains(n))
        .expect("unbounded supply of names")
}
