//! Tokenizer and recursive-descent parser for the ASCII concrete syntax.
//!
//! Precedence from tightest to loosest: `!`, `&`, `|`, `->` (right
//! associative), `<->`. Quantifier bodies extend as far right as possible.

use super::{is_num_var, is_set_var, Constant, Flavor, Formula, RankOp, SyntaxError, Term};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Forall,
    Exists,
    Dot,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Caret,
    Plus,
    Star,
    Bang,
    Amp,
    Pipe,
    Arrow,
    DArrow,
    Eq(Flavor),
    Lt(Flavor),
    In(Flavor),
    Const(Constant, Flavor),
    Number(u32),
    Negative,
}

struct Lexer<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(src.len());
    let before = &src[..offset];
    let line = before.matches('\n').count() + 1;
    let line_start = before.rfind('\n').map_or(0, |i| i + 1);
    let column = before[line_start..].chars().count() + 1;
    (line, column)
}

fn syntax_err(src: &str, offset: usize, message: impl Into<String>) -> SyntaxError {
    let (line, column) = line_col(src, offset);
    SyntaxError::Syntax {
        offset,
        line,
        column,
        message: message.into(),
    }
}

fn rank_err(src: &str, offset: usize, message: impl Into<String>) -> SyntaxError {
    let (line, column) = line_col(src, offset);
    SyntaxError::Rank {
        offset,
        line,
        column,
        message: message.into(),
    }
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src,
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn peek_at(&self, k: usize) -> Option<u8> {
        self.bytes.get(self.pos + k).copied()
    }

    fn tokens(mut self) -> Result<Vec<(Tok, usize)>, SyntaxError> {
        let mut out = Vec::new();
        loop {
            while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
                self.pos += 1;
            }
            let start = self.pos;
            let Some(b) = self.peek() else { break };
            let tok = match b {
                b'(' => self.single(Tok::LParen),
                b')' => self.single(Tok::RParen),
                b'[' => self.single(Tok::LBracket),
                b']' => self.single(Tok::RBracket),
                b'^' => self.single(Tok::Caret),
                b'+' => self.single(Tok::Plus),
                b'*' => self.single(Tok::Star),
                b'!' => self.single(Tok::Bang),
                b'&' => self.single(Tok::Amp),
                b'|' => self.single(Tok::Pipe),
                b'.' => self.single(Tok::Dot),
                b'-' => {
                    if self.peek_at(1) == Some(b'>') {
                        self.pos += 2;
                        Tok::Arrow
                    } else if self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
                        self.pos += 1;
                        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                            self.pos += 1;
                        }
                        Tok::Negative
                    } else {
                        return Err(syntax_err(self.src, start, "expected `->`"));
                    }
                }
                b'<' => {
                    if self.peek_at(1) == Some(b'-') && self.peek_at(2) == Some(b'>') {
                        self.pos += 3;
                        Tok::DArrow
                    } else {
                        self.pos += 1;
                        Tok::Lt(self.flavor_suffix(start)?)
                    }
                }
                b'=' => {
                    self.pos += 1;
                    Tok::Eq(self.flavor_suffix(start)?)
                }
                b'0'..=b'9' => self.number_or_constant(start)?,
                c if c.is_ascii_alphabetic() => {
                    while self
                        .peek()
                        .is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_')
                    {
                        self.pos += 1;
                    }
                    let word = &self.src[start..self.pos];
                    match word {
                        "forall" => Tok::Forall,
                        "exists" => Tok::Exists,
                        "in_s" => Tok::In(Flavor::S),
                        "in_w" => {
                            self.pos -= 1;
                            Tok::In(self.flavor_suffix(start)?)
                        }
                        _ => Tok::Ident(word.to_string()),
                    }
                }
                _ => {
                    let ch = self.src[start..].chars().next().unwrap_or('?');
                    return Err(syntax_err(
                        self.src,
                        start,
                        format!("unexpected character `{ch}`"),
                    ));
                }
            };
            out.push((tok, start));
        }
        Ok(out)
    }

    fn single(&mut self, t: Tok) -> Tok {
        self.pos += 1;
        t
    }

    /// Reads `s`, `w`, `w(N)` or `w[N]` directly after a relation or constant stem.
    fn flavor_suffix(&mut self, start: usize) -> Result<Flavor, SyntaxError> {
        match self.peek() {
            Some(b's') => {
                self.pos += 1;
                Ok(Flavor::S)
            }
            Some(b'w') => {
                self.pos += 1;
                let open = self.peek();
                let strict = match open {
                    Some(b'[') => true,
                    Some(b'(')
                        if self
                            .peek_at(1)
                            .is_some_and(|c| c.is_ascii_digit() || c == b'-') =>
                    {
                        false
                    }
                    _ => return Ok(Flavor::W),
                };
                let close = if strict { b']' } else { b')' };
                let body_start = self.pos + 1;
                let Some(rel) = self.bytes[body_start..].iter().position(|&c| c == close) else {
                    return Err(rank_err(self.src, self.pos, "unterminated rank annotation"));
                };
                let body = &self.src[body_start..body_start + rel];
                let at = self.pos;
                self.pos = body_start + rel + 1;
                let n = parse_rank(self.src, at, body)?;
                Ok(if strict {
                    Flavor::StrictRanked(n)
                } else {
                    Flavor::WRanked(n)
                })
            }
            _ => Err(syntax_err(self.src, start, "expected flavor `s` or `w`")),
        }
    }

    fn number_or_constant(&mut self, start: usize) -> Result<Tok, SyntaxError> {
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits = &self.src[start..self.pos];
        if self.peek() == Some(b'_') {
            let c = match digits {
                "0" => Constant::Zero,
                "1" => Constant::One,
                _ => {
                    return Err(syntax_err(
                        self.src,
                        start,
                        format!("unknown constant `{digits}_`"),
                    ))
                }
            };
            self.pos += 1;
            let fl = self.flavor_suffix(start)?;
            Ok(Tok::Const(c, fl))
        } else {
            let n = parse_rank(self.src, start, digits)?;
            Ok(Tok::Number(n))
        }
    }
}

fn parse_rank(src: &str, at: usize, body: &str) -> Result<u32, SyntaxError> {
    if body.starts_with('-') {
        return Err(rank_err(src, at, format!("negative rank `{body}`")));
    }
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return Err(rank_err(src, at, format!("malformed rank `{body}`")));
    }
    body.parse()
        .map_err(|_| rank_err(src, at, format!("rank `{body}` out of range")))
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

/// Parses a formula in the ASCII concrete syntax.
pub fn parse(text: &str) -> Result<Formula, SyntaxError> {
    let toks = Lexer::new(text).tokens()?;
    let mut p = Parser {
        src: text,
        toks,
        pos: 0,
    };
    let f = p.formula()?;
    if p.pos < p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(f)
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.src.len(), |(_, o)| *o)
    }

    fn err(&self, msg: &str) -> SyntaxError {
        let found = match self.peek() {
            Some(t) => format!("{msg} (found {t:?})"),
            None => format!("{msg} (found end of input)"),
        };
        syntax_err(self.src, self.offset(), found)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok, what: &str) -> Result<(), SyntaxError> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.err(&format!("expected {what}")))
        }
    }

    fn formula(&mut self) -> Result<Formula, SyntaxError> {
        let mut lhs = self.implication()?;
        while self.eat(&Tok::DArrow) {
            let rhs = self.implication()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.implication()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<Formula, SyntaxError> {
        let mut lhs = self.conjunction()?;
        while self.eat(&Tok::Pipe) {
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, SyntaxError> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::Amp) {
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek() {
            Some(Tok::Bang) => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(Tok::Forall) | Some(Tok::Exists) => {
                let universal = self.peek() == Some(&Tok::Forall);
                self.pos += 1;
                let name = match self.peek() {
                    Some(Tok::Ident(n)) => n.clone(),
                    _ => return Err(self.err("expected a variable after quantifier")),
                };
                self.pos += 1;
                self.expect(&Tok::Dot, "`.` after bound variable")?;
                let body = self.formula()?;
                Ok(match (universal, is_set_var(&name)) {
                    (true, false) => Formula::forall_num(&name, body),
                    (false, false) => Formula::exists_num(&name, body),
                    (true, true) => Formula::forall_set(&name, body),
                    (false, true) => Formula::exists_set(&name, body),
                })
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula, SyntaxError> {
        if self.peek() == Some(&Tok::LParen) {
            let save = self.pos;
            self.pos += 1;
            if let Ok(inner) = self.formula() {
                if self.eat(&Tok::RParen) && !self.starts_term_continuation() {
                    return self.rank_suffixes(inner);
                }
            }
            self.pos = save;
        }
        self.atomic()
    }

    /// After `( ... )`, a relation or arithmetic operator means the group was a term.
    fn starts_term_continuation(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Eq(_) | Tok::Lt(_) | Tok::In(_) | Tok::Plus | Tok::Star)
        )
    }

    fn rank_suffixes(&mut self, mut f: Formula) -> Result<Formula, SyntaxError> {
        while self.eat(&Tok::Caret) {
            let strict = match self.peek() {
                Some(Tok::LParen) => false,
                Some(Tok::LBracket) => true,
                _ => return Err(self.err("expected `(N)` or `[N]` after `^`")),
            };
            self.pos += 1;
            let n = match self.peek() {
                Some(Tok::Number(n)) => *n,
                Some(Tok::Negative) => {
                    return Err(rank_err(self.src, self.offset(), "negative rank"));
                }
                _ => return Err(rank_err(self.src, self.offset(), "malformed rank")),
            };
            self.pos += 1;
            let close = if strict { Tok::RBracket } else { Tok::RParen };
            if !self.eat(&close) {
                return Err(rank_err(self.src, self.offset(), "malformed rank"));
            }
            f = Formula::rank(
                f,
                if strict {
                    RankOp::Strict(n)
                } else {
                    RankOp::Weak(n)
                },
            );
        }
        Ok(f)
    }

    fn atomic(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.term()?;
        match self.peek().cloned() {
            Some(Tok::Eq(fl)) => {
                self.pos += 1;
                Ok(Formula::Eq(lhs, self.term()?, fl))
            }
            Some(Tok::Lt(fl)) => {
                self.pos += 1;
                Ok(Formula::Lt(lhs, self.term()?, fl))
            }
            Some(Tok::In(fl)) => {
                self.pos += 1;
                match self.peek() {
                    Some(Tok::Ident(x)) if is_set_var(x) => {
                        let x = x.clone();
                        self.pos += 1;
                        Ok(Formula::Mem(lhs, x, fl))
                    }
                    _ => Err(self.err("expected a set variable (uppercase) after membership")),
                }
            }
            _ => Err(self.err("expected a relation `=`, `<` or `in_`")),
        }
    }

    fn term(&mut self) -> Result<Term, SyntaxError> {
        let mut lhs = self.product()?;
        while self.eat(&Tok::Plus) {
            lhs = Term::add(lhs, self.product()?);
        }
        Ok(lhs)
    }

    fn product(&mut self) -> Result<Term, SyntaxError> {
        let mut lhs = self.term_atom()?;
        while self.eat(&Tok::Star) {
            lhs = Term::mul(lhs, self.term_atom()?);
        }
        Ok(lhs)
    }

    fn term_atom(&mut self) -> Result<Term, SyntaxError> {
        match self.peek().cloned() {
            Some(Tok::Ident(v)) if is_num_var(&v) => {
                self.pos += 1;
                Ok(Term::Var(v))
            }
            Some(Tok::Ident(_)) => {
                Err(self.err("set variable used where a number term is expected"))
            }
            Some(Tok::Const(c, fl)) => {
                self.pos += 1;
                Ok(Term::Const(c, fl))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(t)
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_additive_identity_axiom() {
        let f = parse("forall n. n + 0_s =s n").unwrap();
        assert_eq!(
            f,
            Formula::forall_num(
                "n",
                Formula::eq(
                    Term::add(Term::var("n"), Term::zero(Flavor::S)),
                    Term::var("n"),
                    Flavor::S
                )
            )
        );
    }

    #[test]
    fn identity_round_trips() {
        let f = parse("x =s x").unwrap();
        assert_eq!(f, Formula::eq(Term::var("x"), Term::var("x"), Flavor::S));
        assert_eq!(parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn parses_strict_rank_operator() {
        let f = parse("(n in_w X)^[2]").unwrap();
        assert_eq!(
            f,
            Formula::rank(
                Formula::mem(Term::var("n"), "X", Flavor::W),
                RankOp::Strict(2)
            )
        );
    }

    #[test]
    fn parses_ranked_relations_and_constants() {
        let f = parse("1_w(2) =w[3] 0_w[1] + x").unwrap();
        assert_eq!(
            f,
            Formula::eq(
                Term::one(Flavor::WRanked(2)),
                Term::add(Term::zero(Flavor::StrictRanked(1)), Term::var("x")),
                Flavor::StrictRanked(3)
            )
        );
        let g = parse("x in_w(4) Y").unwrap();
        assert_eq!(g, Formula::mem(Term::var("x"), "Y", Flavor::WRanked(4)));
    }

    #[test]
    fn parenthesized_terms_and_formulas() {
        let f = parse("(n + 1_s) * m =s k").unwrap();
        assert!(matches!(f, Formula::Eq(Term::Mul(..), _, Flavor::S)));
        let g = parse("((x =s y))").unwrap();
        assert_eq!(g, Formula::eq(Term::var("x"), Term::var("y"), Flavor::S));
    }

    #[test]
    fn precedence_and_associativity() {
        let f = parse("a =s a & b =s b | c =s c -> d =s d <-> e =s e").unwrap();
        let a = || parse("a =s a").unwrap();
        let b = || parse("b =s b").unwrap();
        let c = || parse("c =s c").unwrap();
        let d = || parse("d =s d").unwrap();
        let e = || parse("e =s e").unwrap();
        assert_eq!(
            f,
            Formula::iff(
                Formula::implies(Formula::or(Formula::and(a(), b()), c()), d()),
                e()
            )
        );
        let g = parse("a =s a -> b =s b -> c =s c").unwrap();
        assert_eq!(g, Formula::implies(a(), Formula::implies(b(), c())));
    }

    #[test]
    fn quantifier_sort_follows_case() {
        let f = parse("forall X. exists n. n in_s X").unwrap();
        assert!(
            matches!(f, Formula::ForallSet(ref x, ref b) if x == "X" && matches!(**b, Formula::ExistsNum(..)))
        );
    }

    #[test]
    fn negative_rank_is_rank_error() {
        assert!(matches!(parse("x =w(-1) y"), Err(SyntaxError::Rank { .. })));
        assert!(matches!(
            parse("(x =s y)^(-2)"),
            Err(SyntaxError::Rank { .. })
        ));
        assert!(matches!(
            parse("x in_w[a] X"),
            Err(SyntaxError::Rank { .. })
        ));
        assert!(matches!(parse("x =w(3 y"), Err(SyntaxError::Rank { .. })));
        assert!(matches!(
            parse("x =w(99999999999) y"),
            Err(SyntaxError::Rank { .. })
        ));
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse("x =s\n  & y") {
            Err(SyntaxError::Syntax {
                offset,
                line,
                column,
                ..
            }) => {
                assert_eq!(offset, 7);
                assert_eq!(line, 2);
                assert_eq!(column, 3);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse("x =q y"), Err(SyntaxError::Syntax { .. })));
        assert!(matches!(parse("2_s =s x"), Err(SyntaxError::Syntax { .. })));
        assert!(matches!(parse("x =s y )"), Err(SyntaxError::Syntax { .. })));
        assert!(matches!(parse("n in_s m"), Err(SyntaxError::Syntax { .. })));
        assert!(matches!(parse("X =s y"), Err(SyntaxError::Syntax { .. })));
    }

    #[test]
    fn utf8_columns_count_characters() {
        match parse("x =s y & é") {
            Err(SyntaxError::Syntax { column, offset, .. }) => {
                assert_eq!(offset, 9);
                assert_eq!(column, 10);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
