//! Deterministic random corpora of `Sigma^b_1` formulas and the exhaustive
//! comparison harness run over them.
//!
//! Formulas have the single free variable `x`. Quantifier bounds are
//! variables or literals, and loops are kept shallow so that sweeping every
//! valuation up to a small cap stays cheap.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Result, SyntaxError};
use crate::hierarchy::{classify, FormulaClass};
use crate::numsem::{Budget, Nat, Valuation};
use crate::realize::{brute_truth, build_realizer, check_realizer};
use crate::syntax::{parse_formula, Formula, Quantifier, Term};

/// The free variable of every generated formula.
pub const FREE_VAR: &str = "x";

const MAX_TERM_DEPTH: usize = 3;
const MAX_BOUNDED_NESTING: usize = 2;
const MAX_SHARP_NESTING: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusSpec {
    pub seed: u64,
    pub max_depth: usize,
    pub max_bound_value: u64,
    pub count: usize,
}

impl CorpusSpec {
    pub const DEFAULT_MAX_DEPTH: usize = 5;
    pub const DEFAULT_MAX_BOUND_VALUE: u64 = 64;

    pub fn new(seed: u64, count: usize) -> Self {
        CorpusSpec {
            seed,
            max_depth: Self::DEFAULT_MAX_DEPTH,
            max_bound_value: Self::DEFAULT_MAX_BOUND_VALUE,
            count,
        }
    }

    fn header(&self) -> String {
        format!(
            "# fa corpus seed={} max_depth={} max_bound_value={} count={}",
            self.seed, self.max_depth, self.max_bound_value, self.count
        )
    }

    fn from_header(line: &str) -> Option<Self> {
        let rest = line.strip_prefix('#')?.trim().strip_prefix("fa corpus")?;
        let mut spec = CorpusSpec::new(0, 0);
        for field in rest.split_whitespace() {
            let (key, value) = field.split_once('=')?;
            match key {
                "seed" => spec.seed = value.parse().ok()?,
                "max_depth" => spec.max_depth = value.parse().ok()?,
                "max_bound_value" => spec.max_bound_value = value.parse().ok()?,
                "count" => spec.count = value.parse().ok()?,
                _ => return None,
            }
        }
        Some(spec)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Level {
    Sharp,
    Sigma,
    Pi,
}

impl Level {
    fn dual(self) -> Level {
        match self {
            Level::Sharp => Level::Sharp,
            Level::Sigma => Level::Pi,
            Level::Pi => Level::Sigma,
        }
    }
}

/// What slot `i` of the corpus is steered towards; every block of ten has
/// three sharply bounded, three Sigma-only, two NOT/IMPLIES and two free
/// slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    Sharp,
    SigmaOnly,
    Negation,
    Any,
}

fn slot(i: usize) -> Slot {
    match i % 10 {
        0..=2 => Slot::Sharp,
        3..=5 => Slot::SigmaOnly,
        6 | 7 => Slot::Negation,
        _ => Slot::Any,
    }
}

struct Generator<'a> {
    rng: ChaCha8Rng,
    spec: &'a CorpusSpec,
    scope: Vec<String>,
    next_name: usize,
    bounded_left: usize,
    sharp_left: usize,
}

impl Generator<'_> {
    fn fresh(&mut self) -> String {
        const NAMES: [&str; 5] = ["y", "z", "u", "v", "w"];
        let i = self.next_name;
        self.next_name += 1;
        match i / NAMES.len() {
            0 => NAMES[i].to_owned(),
            k => format!("{}{k}", NAMES[i % NAMES.len()]),
        }
    }

    fn term(&mut self, depth: usize, allow_smash: bool) -> Term {
        if depth == 0 || self.rng.gen_bool(0.35) {
            return if self.rng.gen_bool(0.8) {
                Term::Var(self.scope.choose(&mut self.rng).expect("x in scope").clone())
            } else {
                Term::Zero
            };
        }
        let d = depth - 1;
        let choice = self.rng.gen_range(0..if allow_smash { 6 } else { 5 });
        match choice {
            0 => Term::succ(self.term(d, allow_smash)),
            1 => Term::add(self.term(d, allow_smash), self.term(d, allow_smash)),
            2 => Term::mul(self.term(d, allow_smash), self.term(d, allow_smash)),
            3 => Term::len(self.term(d, allow_smash)),
            4 => Term::half(self.term(d, allow_smash)),
            _ => Term::smash(self.term(d, false), self.term(d, false)),
        }
    }

    fn atom(&mut self) -> Formula {
        let s = self.term(MAX_TERM_DEPTH, true);
        let t = self.term(MAX_TERM_DEPTH, true);
        if self.rng.gen_bool(0.5) {
            Formula::Leq(s, t)
        } else {
            Formula::Eq(s, t)
        }
    }

    fn bound(&mut self) -> Term {
        if self.rng.gen_bool(0.6) {
            Term::Var(self.scope.choose(&mut self.rng).expect("x in scope").clone())
        } else {
            Term::numeral(self.rng.gen_range(0..=self.spec.max_bound_value))
        }
    }

    fn quantified(&mut self, q: Quantifier, sharp: bool, level: Level, depth: usize) -> Formula {
        let bound = self.bound();
        let var = self.fresh();
        self.scope.push(var.clone());
        if sharp {
            self.sharp_left -= 1;
        } else {
            self.bounded_left -= 1;
        }
        let body = self.formula(level, depth - 1);
        if sharp {
            self.sharp_left += 1;
        } else {
            self.bounded_left += 1;
        }
        self.scope.pop();
        if sharp {
            Formula::sharp(q, var, bound, body)
        } else {
            Formula::quantify(q, var, bound, body)
        }
    }

    /// A formula of the given level, by construction.
    fn formula(&mut self, level: Level, depth: usize) -> Formula {
        if depth == 0 || self.rng.gen_bool(0.15) {
            return self.atom();
        }
        let d = depth - 1;
        // the quantifier that may carry a non-sharp bound at this level
        let (unbounded_q, sharp_ok, bounded_ok) = (
            match level {
                Level::Pi => Quantifier::Forall,
                _ => Quantifier::Exists,
            },
            self.sharp_left > 0,
            level != Level::Sharp && self.bounded_left > 0,
        );
        loop {
            match self.rng.gen_range(0..9) {
                0 => return Formula::and(self.formula(level, d), self.formula(level, d)),
                1 => return Formula::or(self.formula(level, d), self.formula(level, d)),
                2 => return Formula::not(self.formula(level.dual(), d)),
                3 => return Formula::implies(self.formula(level.dual(), d), self.formula(level, d)),
                4 | 5 if bounded_ok => return self.quantified(unbounded_q, false, level, depth),
                6 | 7 if sharp_ok => {
                    let q = if self.rng.gen_bool(0.5) {
                        Quantifier::Exists
                    } else {
                        Quantifier::Forall
                    };
                    return self.quantified(q, true, level, depth);
                }
                8 if level != Level::Sharp => return self.formula(Level::Sharp, d),
                _ => {}
            }
        }
    }

    fn for_slot(&mut self, slot: Slot) -> Formula {
        let depth = self.spec.max_depth.max(1);
        match slot {
            Slot::Sharp => self.formula(Level::Sharp, depth),
            Slot::Any => self.formula(Level::Sigma, depth),
            Slot::Negation => {
                if self.rng.gen_bool(0.5) {
                    Formula::not(self.formula(Level::Pi, depth - 1))
                } else {
                    let a = self.formula(Level::Pi, depth - 1);
                    Formula::implies(a, self.formula(Level::Sigma, depth - 1))
                }
            }
            Slot::SigmaOnly => {
                for _ in 0..32 {
                    let f = self.formula(Level::Sigma, depth);
                    if classify(&f).is_sigma_only() {
                        return f;
                    }
                }
                self.quantified(Quantifier::Exists, false, Level::Sigma, depth)
            }
        }
    }
}

/// Generates `spec.count` classified `Sigma^b_1` formulas with free
/// variable [`FREE_VAR`]. Same spec, same corpus.
pub fn generate(spec: &CorpusSpec) -> Vec<(Formula, FormulaClass)> {
    let mut g = Generator {
        rng: ChaCha8Rng::seed_from_u64(spec.seed),
        spec,
        scope: vec![FREE_VAR.to_owned()],
        next_name: 0,
        bounded_left: MAX_BOUNDED_NESTING,
        sharp_left: MAX_SHARP_NESTING,
    };
    (0..spec.count)
        .map(|i| {
            g.next_name = 0;
            let f = g.for_slot(slot(i)).rename_apart();
            let class = classify(&f);
            debug_assert!(class.sigma_b1, "generated non-Sigma formula {f}");
            (f, class)
        })
        .collect()
}

/// First valuation (values `<= cap`, in lexicographic order) where the
/// builder, the checker and the brute-force oracle disagree.
pub fn agreement_failure(phi: &Formula, cap: u64, b: &Budget) -> Result<Option<Valuation>> {
    if !classify(phi).sigma_b1 {
        return Err(crate::Error::NotSigmaB1(phi.to_string()));
    }
    let vars: Vec<String> = phi.free_vars().into_iter().collect();
    let base = cap + 1;
    let total = base.checked_pow(vars.len() as u32).unwrap_or(u64::MAX);
    let valuation = |mut idx: u64| {
        let mut v = Valuation::new();
        for x in vars.iter().rev() {
            v.insert(x.clone(), Nat::from(idx % base));
            idx /= base;
        }
        v
    };
    let outcomes: Vec<Result<bool>> = (0..total)
        .into_par_iter()
        .map(|idx| agrees_at(phi, &valuation(idx), b))
        .collect();
    for (idx, outcome) in outcomes.into_iter().enumerate() {
        if !outcome? {
            return Ok(Some(valuation(idx as u64)));
        }
    }
    Ok(None)
}

fn agrees_at(phi: &Formula, v: &Valuation, b: &Budget) -> Result<bool> {
    let (truth, _) = brute_truth(phi, v, b)?;
    let (built, _) = build_realizer(phi, v, b)?;
    match built {
        None => Ok(!truth),
        Some(r) => Ok(truth && check_realizer(phi, &r, v, b)?.0),
    }
}

/// For every valuation with values `<= cap`: a realizer is built exactly
/// when the oracle says true, and every built realizer is accepted.
pub fn exhaustive_agreement(phi: &Formula, cap: u64, b: &Budget) -> Result<bool> {
    Ok(agreement_failure(phi, cap, b)?.is_none())
}

/// One formula per line after a header comment carrying the generation parameters.
pub fn write_corpus(spec: &CorpusSpec, formulas: &[Formula]) -> String {
    let mut out = spec.header();
    out.push('\n');
    for f in formulas {
        let _ = writeln!(out, "{f}");
    }
    out
}

/// Reads a corpus file; `#` lines are comments, blank lines are skipped.
pub fn read_corpus(text: &str) -> Result<(Option<CorpusSpec>, Vec<Formula>), SyntaxError> {
    let mut spec = None;
    let mut formulas = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.starts_with('#') {
            spec = spec.or_else(|| CorpusSpec::from_header(trimmed));
            continue;
        }
        if trimmed.is_empty() {
            continue;
        }
        let f = parse_formula(line).map_err(|e| SyntaxError {
            line: i + 1,
            ..e
        })?;
        formulas.push(f);
    }
    Ok((spec, formulas))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_and_deterministic() {
        assert!(generate(&CorpusSpec::new(1, 0)).is_empty());
        let spec = CorpusSpec::new(7, 40);
        assert_eq!(generate(&spec), generate(&spec));
        assert_ne!(generate(&spec), generate(&CorpusSpec::new(8, 40)));
    }

    #[test]
    fn quotas_per_hundred() {
        let corpus = generate(&CorpusSpec::new(1, 100));
        assert_eq!(corpus.len(), 100);
        let sigma_only = corpus.iter().filter(|(_, c)| c.is_sigma_only()).count();
        let sharp = corpus.iter().filter(|(_, c)| c.sharply_bounded).count();
        let negation = corpus
            .iter()
            .filter(|(f, _)| f.uses_negation_or_implication())
            .count();
        assert!(sigma_only >= 20, "{sigma_only}");
        assert!(sharp >= 20, "{sharp}");
        assert!(negation >= 10, "{negation}");
    }

    #[test]
    fn well_formed() {
        for (f, class) in generate(&CorpusSpec::new(3, 200)) {
            assert!(class.sigma_b1);
            assert_eq!(class, classify(&f));
            assert!(f.free_vars().iter().all(|x| x == FREE_VAR), "{f}");
            assert!(f.is_renamed_apart());
            assert!(f.depth() <= CorpusSpec::DEFAULT_MAX_DEPTH + 1);
            f.visit(&mut |g| {
                if let Some(q) = g.as_quantifier() {
                    assert!(!q.bound.mentions(q.var), "{g}");
                }
            });
        }
    }

    #[test]
    fn file_round_trip() {
        let spec = CorpusSpec::new(5, 25);
        let formulas: Vec<Formula> = generate(&spec).into_iter().map(|(f, _)| f).collect();
        let text = write_corpus(&spec, &formulas);
        let (read_spec, read) = read_corpus(&text).unwrap();
        assert_eq!(read_spec, Some(spec));
        assert_eq!(read, formulas);
    }

    #[test]
    fn read_reports_line_numbers() {
        let e = read_corpus("# comment\nx <= x\n\nx <=\n").unwrap_err();
        assert_eq!(e.line, 4);
    }

    #[test]
    fn agreement_examples() {
        let b = Budget::default();
        let phi = parse_formula("0 <= x").unwrap();
        assert!(exhaustive_agreement(&phi, 8, &b).unwrap());
        let phi = parse_formula("EX y <= x . y + y = x").unwrap();
        assert!(exhaustive_agreement(&phi, 16, &b).unwrap());
        let phi = parse_formula("EX y <= x . y + y = z").unwrap();
        assert!(exhaustive_agreement(&phi, 6, &b).unwrap());
    }
}
