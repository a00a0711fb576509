use std::fmt::{self, Display, Formatter, Write};

use super::{Formula, Quantifier, Term};

// binding strength of term operators; higher binds tighter
const T_ADD: u8 = 1;
const T_MUL: u8 = 2;
const T_SMASH: u8 = 3;
const T_ATOM: u8 = 4;

impl Term {
    fn prec(&self) -> u8 {
        match self {
            Term::Add(..) => T_ADD,
            Term::Mul(..) => T_MUL,
            Term::Smash(..) => T_SMASH,
            _ => T_ATOM,
        }
    }

    fn write(&self, f: &mut Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.as_numeral() {
            return write!(f, "{n}");
        }
        match self {
            Term::Zero => f.write_char('0'),
            Term::Var(x) => f.write_str(x),
            Term::Succ(t) => write!(f, "S({t})"),
            Term::Len(t) => write!(f, "|{t}|"),
            Term::Half(t) => write!(f, "half({t})"),
            Term::Add(s, t) => self.write_infix(f, s, " + ", t),
            Term::Mul(s, t) => self.write_infix(f, s, " * ", t),
            Term::Smash(s, t) => self.write_infix(f, s, " # ", t),
        }
    }

    // all term operators are left-associative
    fn write_infix(&self, f: &mut Formatter<'_>, s: &Term, op: &str, t: &Term) -> fmt::Result {
        let p = self.prec();
        write_paren(f, s.prec() < p, |f| s.write(f))?;
        f.write_str(op)?;
        write_paren(f, t.prec() <= p, |f| t.write(f))
    }
}

fn write_paren(
    f: &mut Formatter<'_>,
    paren: bool,
    inner: impl FnOnce(&mut Formatter<'_>) -> fmt::Result,
) -> fmt::Result {
    if paren {
        f.write_char('(')?;
        inner(f)?;
        f.write_char(')')
    } else {
        inner(f)
    }
}

impl Display for Term {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        self.write(f)
    }
}

const F_IMPLIES: u8 = 1;
const F_OR: u8 = 2;
const F_AND: u8 = 3;
const F_UNARY: u8 = 4;

impl Formula {
    fn prec(&self) -> u8 {
        match self {
            Formula::Implies(..) => F_IMPLIES,
            Formula::Or(..) => F_OR,
            Formula::And(..) => F_AND,
            _ => F_UNARY,
        }
    }

    /// A quantifier body extends as far right as possible, so a quantifier
    /// (possibly under NOTs) prints bare only in the rightmost position.
    fn ends_open(&self) -> bool {
        match self {
            Formula::Not(a) => a.ends_open(),
            _ => self.as_quantifier().is_some(),
        }
    }

    fn write(&self, f: &mut Formatter<'_>, rightmost: bool) -> fmt::Result {
        match self {
            Formula::Leq(s, t) => write!(f, "{s} <= {t}"),
            Formula::Eq(s, t) => write!(f, "{s} = {t}"),
            Formula::Not(a) => {
                f.write_str("NOT ")?;
                self.write_child(f, a, a.prec() < F_UNARY, rightmost)
            }
            Formula::And(a, b) => self.write_infix(f, a, " AND ", b, false, rightmost),
            Formula::Or(a, b) => self.write_infix(f, a, " OR ", b, false, rightmost),
            Formula::Implies(a, b) => self.write_infix(f, a, " IMPLIES ", b, true, rightmost),
            _ => {
                let q = self.as_quantifier().expect("quantifier");
                let kw = match q.quantifier {
                    Quantifier::Exists => "EX",
                    Quantifier::Forall => "ALL",
                };
                if q.sharp {
                    write!(f, "{kw} {} <= |{}| . ", q.var, q.bound)?;
                } else {
                    write!(f, "{kw} {} <= {} . ", q.var, q.bound)?;
                }
                q.body.write(f, true)
            }
        }
    }

    fn write_child(
        &self,
        f: &mut Formatter<'_>,
        child: &Formula,
        by_prec: bool,
        rightmost: bool,
    ) -> fmt::Result {
        let paren = by_prec || (!rightmost && child.ends_open());
        write_paren(f, paren, |f| child.write(f, rightmost || paren))
    }

    fn write_infix(
        &self,
        f: &mut Formatter<'_>,
        a: &Formula,
        op: &str,
        b: &Formula,
        right_assoc: bool,
        rightmost: bool,
    ) -> fmt::Result {
        let p = self.prec();
        let (left_paren, right_paren) = if right_assoc {
            (a.prec() <= p, b.prec() < p)
        } else {
            (a.prec() < p, b.prec() <= p)
        };
        self.write_child(f, a, left_paren, false)?;
        f.write_str(op)?;
        self.write_child(f, b, right_paren, rightmost)
    }
}

impl Display for Formula {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        self.write(f, true)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse_formula, parse_term};
    use super::*;

    #[test]
    fn pretty_examples() {
        assert_eq!(Term::Zero.to_string(), "0");
        assert_eq!(
            Term::smash(Term::var("x"), Term::var("y")).to_string(),
            "x # y"
        );
        assert_eq!(Term::numeral(3).to_string(), "3");
        assert_eq!(Term::succ(Term::var("x")).to_string(), "S(x)");
    }

    #[test]
    fn term_parens() {
        for text in [
            "(a + b) * c",
            "a * (b * c)",
            "a + b * c # d",
            "(a + b) # c",
            "a # (b # c)",
            "|a + b| * half(c # d)",
        ] {
            let t = parse_term(text).unwrap();
            assert_eq!(t.to_string(), text);
            assert_eq!(parse_term(&t.to_string()).unwrap(), t);
        }
    }

    #[test]
    fn formula_parens() {
        for text in [
            "(EX y <= x . y = x) AND x <= x",
            "x <= x AND (EX y <= x . y = x) AND x = x",
            "((EX y <= x . y = x) OR x = 0) AND x = x",
            "NOT (x <= y AND y <= x)",
            "(NOT EX y <= x . y = x) OR x = 0",
            "x = 0 OR NOT EX y <= x . y = x",
            "(a <= b IMPLIES a <= b) IMPLIES a <= b",
            "a <= b IMPLIES a <= b IMPLIES a <= b",
            "ALL y <= |t| . EX z <= x . z = y OR z <= y",
        ] {
            let f = parse_formula(text).unwrap();
            assert_eq!(f.to_string(), text);
            assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
        }
    }
}
