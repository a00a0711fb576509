//! Recursive descent parser for the ASCII surface grammar.
//!
//! ```text
//! term    := sum
//! sum     := prod ("+" prod)*
//! prod    := smash ("*" smash)*
//! smash   := primary ("#" primary)*
//! primary := numeral | ident | "S(" term ")" | "half(" term ")" | "|" term "|" | "(" term ")"
//! formula := disj ("IMPLIES" formula)?
//! disj    := conj ("OR" conj)*
//! conj    := unary ("AND" unary)*
//! unary   := "NOT" unary | ("EX" | "ALL") ident "<=" term "." formula
//!          | term ("<=" | "=") term | "(" formula ")"
//! ```

use super::{Formula, Quantifier, Term};
use crate::error::SyntaxError;

/// Largest decimal literal accepted; literals desugar to successor chains.
pub const MAX_NUMERAL: u64 = 1024;

const MAX_NESTING: usize = 256;

pub fn parse_term(text: &str) -> Result<Term, SyntaxError> {
    let mut p = Parser::new(text)?;
    let t = p.term()?;
    p.expect_end()?;
    Ok(t)
}

/// Parses a formula and renames its bound variables apart.
pub fn parse_formula(text: &str) -> Result<Formula, SyntaxError> {
    let mut p = Parser::new(text)?;
    let f = p.formula()?;
    p.expect_end()?;
    Ok(f.rename_apart())
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u64),
    LParen,
    RParen,
    Bar,
    Plus,
    Star,
    Hash,
    Leq,
    Equals,
    Dot,
    Ex,
    All,
    Not,
    And,
    Or,
    Implies,
    Succ,
    Half,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(x) => format!("identifier `{x}`"),
            Tok::Num(n) => format!("numeral `{n}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Star => "`*`".into(),
            Tok::Hash => "`#`".into(),
            Tok::Leq => "`<=`".into(),
            Tok::Equals => "`=`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Ex => "`EX`".into(),
            Tok::All => "`ALL`".into(),
            Tok::Not => "`NOT`".into(),
            Tok::And => "`AND`".into(),
            Tok::Or => "`OR`".into(),
            Tok::Implies => "`IMPLIES`".into(),
            Tok::Succ => "`S`".into(),
            Tok::Half => "`half`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, col);
        let err = |message: String| SyntaxError {
            line: start_line,
            column: start_col,
            message,
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let (tok, width) = match c {
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '|' => (Tok::Bar, 1),
            '+' => (Tok::Plus, 1),
            '*' => (Tok::Star, 1),
            '#' => (Tok::Hash, 1),
            '=' => (Tok::Equals, 1),
            '.' => (Tok::Dot, 1),
            '<' if chars.get(i + 1) == Some(&'=') => (Tok::Leq, 2),
            c if c.is_ascii_digit() => {
                let end = (i..chars.len())
                    .find(|&j| !chars[j].is_ascii_digit())
                    .unwrap_or(chars.len());
                let digits: String = chars[i..end].iter().collect();
                let n = digits
                    .parse::<u64>()
                    .ok()
                    .filter(|&n| n <= MAX_NUMERAL)
                    .ok_or_else(|| {
                        err(format!(
                            "numeral {digits} exceeds {MAX_NUMERAL}; bind large values to a variable"
                        ))
                    })?;
                (Tok::Num(n), end - i)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let end = (i..chars.len())
                    .find(|&j| !(chars[j].is_ascii_alphanumeric() || chars[j] == '_'))
                    .unwrap_or(chars.len());
                let word: String = chars[i..end].iter().collect();
                let tok = match word.as_str() {
                    "EX" => Tok::Ex,
                    "ALL" => Tok::All,
                    "NOT" => Tok::Not,
                    "AND" => Tok::And,
                    "OR" => Tok::Or,
                    "IMPLIES" => Tok::Implies,
                    "S" => Tok::Succ,
                    "half" => Tok::Half,
                    _ => Tok::Ident(word),
                };
                (tok, end - i)
            }
            other => return Err(err(format!("unknown symbol `{other}`"))),
        };
        out.push(Spanned {
            tok,
            line: start_line,
            column: start_col,
        });
        i += width;
        col += width;
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    depth: usize,
}

type PResult<T> = Result<T, SyntaxError>;

impl Parser {
    fn new(text: &str) -> PResult<Self> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
            depth: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: String) -> SyntaxError {
        let s = &self.toks[self.pos];
        SyntaxError {
            line: s.line,
            column: s.column,
            message,
        }
    }

    fn unexpected(&self, expected: &str) -> SyntaxError {
        self.error_here(format!("expected {expected}, found {}", self.peek().describe()))
    }

    fn expect(&mut self, tok: Tok) -> PResult<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    fn expect_end(&self) -> PResult<()> {
        match self.peek() {
            Tok::Eof => Ok(()),
            _ => Err(self.unexpected("end of input")),
        }
    }

    fn enter(&mut self) -> PResult<()> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return Err(self.error_here(format!("nesting deeper than {MAX_NESTING}")));
        }
        Ok(())
    }

    fn leave(&mut self) {
        self.depth -= 1;
    }

    fn formula(&mut self) -> PResult<Formula> {
        self.enter()?;
        let lhs = self.disjunction()?;
        let f = if *self.peek() == Tok::Implies {
            self.bump();
            Formula::implies(lhs, self.formula()?)
        } else {
            lhs
        };
        self.leave();
        Ok(f)
    }

    fn disjunction(&mut self) -> PResult<Formula> {
        let mut f = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            f = Formula::or(f, self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> PResult<Formula> {
        let mut f = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> PResult<Formula> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                self.enter()?;
                let f = Formula::not(self.unary()?);
                self.leave();
                Ok(f)
            }
            Tok::Ex | Tok::All => self.quantified(),
            Tok::LParen => {
                let (start, depth) = (self.pos, self.depth);
                let atom_err = match self.atom() {
                    Ok(f) => return Ok(f),
                    Err(e) => (self.pos, e),
                };
                self.pos = start;
                self.depth = depth;
                self.bump();
                let inner = self.formula().and_then(|f| {
                    self.expect(Tok::RParen)?;
                    Ok(f)
                });
                match inner {
                    Ok(f) => Ok(f),
                    Err(e) => {
                        // report whichever reading got further
                        let here = (e.line, e.column);
                        let there = (atom_err.1.line, atom_err.1.column);
                        Err(if there > here { atom_err.1 } else { e })
                    }
                }
            }
            _ => self.atom(),
        }
    }

    fn quantified(&mut self) -> PResult<Formula> {
        let q = match self.bump() {
            Tok::Ex => Quantifier::Exists,
            _ => Quantifier::Forall,
        };
        let var = match self.peek().clone() {
            Tok::Ident(x) => {
                self.bump();
                x
            }
            _ => return Err(self.unexpected("a variable name")),
        };
        self.expect(Tok::Leq)?;
        let bound = self.term()?;
        self.expect(Tok::Dot)?;
        let body = self.formula()?;
        Ok(Formula::quantify(q, var, bound, body))
    }

    fn atom(&mut self) -> PResult<Formula> {
        let lhs = self.term()?;
        match self.peek() {
            Tok::Leq => {
                self.bump();
                Ok(Formula::Leq(lhs, self.term()?))
            }
            Tok::Equals => {
                self.bump();
                Ok(Formula::Eq(lhs, self.term()?))
            }
            _ => Err(self.unexpected("`<=` or `=`")),
        }
    }

    fn term(&mut self) -> PResult<Term> {
        self.enter()?;
        let mut t = self.product()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            t = Term::add(t, self.product()?);
        }
        self.leave();
        Ok(t)
    }

    fn product(&mut self) -> PResult<Term> {
        let mut t = self.smash()?;
        while *self.peek() == Tok::Star {
            self.bump();
            t = Term::mul(t, self.smash()?);
        }
        Ok(t)
    }

    fn smash(&mut self) -> PResult<Term> {
        let mut t = self.primary()?;
        while *self.peek() == Tok::Hash {
            self.bump();
            t = Term::smash(t, self.primary()?);
        }
        Ok(t)
    }

    fn primary(&mut self) -> PResult<Term> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(Term::numeral(n))
            }
            Tok::Ident(x) => {
                self.bump();
                Ok(Term::Var(x))
            }
            Tok::Succ => {
                self.bump();
                self.expect(Tok::LParen)?;
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(Term::succ(t))
            }
            Tok::Half => {
                self.bump();
                self.expect(Tok::LParen)?;
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(Term::half(t))
            }
            Tok::Bar => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::Bar)?;
                Ok(Term::len(t))
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            _ => Err(self.unexpected("a term")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &str) -> Term {
        Term::var(x)
    }

    #[test]
    fn term_examples() {
        assert_eq!(parse_term("0").unwrap(), Term::Zero);
        assert_eq!(
            parse_term("x # S(0)").unwrap(),
            Term::smash(v("x"), Term::succ(Term::Zero))
        );
        assert_eq!(
            parse_term("half(|x| + y)").unwrap(),
            Term::half(Term::add(Term::len(v("x")), v("y")))
        );
    }

    #[test]
    fn term_precedence() {
        // # > * > +
        assert_eq!(
            parse_term("a + b * c # d").unwrap(),
            Term::add(v("a"), Term::mul(v("b"), Term::smash(v("c"), v("d"))))
        );
        assert_eq!(
            parse_term("a + b + c").unwrap(),
            Term::add(Term::add(v("a"), v("b")), v("c"))
        );
        assert_eq!(
            parse_term("(a + b) * c").unwrap(),
            Term::mul(Term::add(v("a"), v("b")), v("c"))
        );
        assert_eq!(parse_term("||x||").unwrap(), Term::len(Term::len(v("x"))));
        assert_eq!(parse_term("3").unwrap(), Term::numeral(3));
    }

    #[test]
    fn formula_examples() {
        assert_eq!(
            parse_formula("EX y <= t . y + y = x").unwrap(),
            Formula::ExistsBounded {
                var: "y".into(),
                bound: v("t"),
                body: Box::new(Formula::Eq(Term::add(v("y"), v("y")), v("x"))),
            }
        );
        assert_eq!(
            parse_formula("ALL y <= |t| . y <= x").unwrap(),
            Formula::ForallSharp {
                var: "y".into(),
                bound: v("t"),
                body: Box::new(Formula::Leq(v("y"), v("x"))),
            }
        );
        let f = parse_formula("NOT (EX y <= x . y = x)").unwrap();
        assert!(matches!(f, Formula::Not(ref inner) if matches!(**inner, Formula::ExistsBounded { .. })));
    }

    #[test]
    fn formula_precedence() {
        let a = || Formula::leq(v("a"), v("b"));
        let f = parse_formula("NOT a <= b AND a <= b OR a <= b IMPLIES a <= b IMPLIES a <= b").unwrap();
        let expected = Formula::implies(
            Formula::or(Formula::and(Formula::not(a()), a()), a()),
            Formula::implies(a(), a()),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn quantifier_body_extends_right() {
        let f = parse_formula("EX y <= x . y = x AND x <= y").unwrap();
        let q = f.as_quantifier().unwrap();
        assert!(matches!(q.body, Formula::And(..)));
    }

    #[test]
    fn bound_plus_something_is_not_sharp() {
        let f = parse_formula("ALL y <= |t| + 1 . y <= x").unwrap();
        assert!(matches!(f, Formula::ForallBounded { .. }));
    }

    #[test]
    fn parenthesised_terms_and_formulas() {
        let f = parse_formula("(x + y) <= z").unwrap();
        assert_eq!(f, Formula::leq(Term::add(v("x"), v("y")), v("z")));
        let g = parse_formula("((x <= y)) AND (x = y)").unwrap();
        assert_eq!(
            g,
            Formula::and(Formula::leq(v("x"), v("y")), Formula::eq(v("x"), v("y")))
        );
    }

    #[test]
    fn shadowing_is_renamed() {
        let f = parse_formula("EX y <= x . EX y <= y . y = y").unwrap();
        assert!(f.is_renamed_apart());
        let outer = f.as_quantifier().unwrap();
        let inner = outer.body.as_quantifier().unwrap();
        assert_eq!(outer.var, "y");
        assert_eq!(inner.var, "y_1");
        assert_eq!(inner.bound, &v("y"));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_term("x - y").unwrap_err();
        assert_eq!((e.line, e.column), (1, 3));
        let e = parse_formula("x <= y AND\n  (y <= z").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(parse_term("(x + y").is_err());
        assert!(parse_term("|x").is_err());
        assert!(parse_term("x)").is_err());
        assert!(parse_formula("EX <= x . x = x").is_err());
        assert!(parse_formula("x <= y z").is_err());
        assert!(parse_term("").is_err());
        assert!(parse_term("S x").is_err());
        assert!(parse_term("99999999999999999999999").is_err());
    }

    #[test]
    fn deep_nesting_is_an_error_not_a_crash() {
        let text = format!("{}x{}", "(".repeat(10_000), ")".repeat(10_000));
        assert!(parse_term(&text).is_err());
        let text = format!("{}x <= y", "NOT ".repeat(10_000));
        assert!(parse_formula(&text).is_err());
    }
}
