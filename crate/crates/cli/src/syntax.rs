//! Group expressions:
//!
//! ```text
//! expr    := primary ("x" primary)*
//! primary := "C(" int ")" | "D(" int ")" | "Q8" | "Dih(" expr ")"
//!          | "Dic(" expr "," word ")" | "Wr2(" expr ")" | "Perm[" perms "]"
//!          | "(" expr ")" | name
//! perms   := cycles ("," cycles)*
//! cycles  := ("(" int* ")")+
//! ```

use std::fmt;

use crate::error::{CliError, Pos, Result};

#[derive(Clone, Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: Pos,
}

/// Equality ignores source positions.
impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Expr {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Cyclic(usize),
    Dihedral(usize),
    Q8,
    Dih(Box<Expr>),
    /// The word is kept as text and resolved against the elaborated group.
    Dic(Box<Expr>, String),
    Product(Box<Expr>, Box<Expr>),
    Wr2(Box<Expr>),
    /// Generating permutations, each a list of cycles on points `0..`.
    Perm(Vec<Vec<Vec<usize>>>),
    Name(String),
}

impl Expr {
    fn new(kind: ExprKind, pos: Pos) -> Self {
        Expr { kind, pos }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Cyclic(n) => write!(f, "C({n})"),
            ExprKind::Dihedral(n) => write!(f, "D({n})"),
            ExprKind::Q8 => f.write_str("Q8"),
            ExprKind::Dih(e) => write!(f, "Dih({e})"),
            ExprKind::Dic(e, w) => write!(f, "Dic({e}, {w})"),
            ExprKind::Product(a, b) => {
                if matches!(b.kind, ExprKind::Product(..)) {
                    write!(f, "{a} x ({b})")
                } else {
                    write!(f, "{a} x {b}")
                }
            }
            ExprKind::Wr2(e) => write!(f, "Wr2({e})"),
            ExprKind::Perm(gens) => {
                f.write_str("Perm[")?;
                for (i, cycles) in gens.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    if cycles.is_empty() {
                        f.write_str("()")?;
                    }
                    for c in cycles {
                        let pts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
                        write!(f, "({})", pts.join(" "))?;
                    }
                }
                f.write_str("]")
            }
            ExprKind::Name(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Int(usize),
    Punct(char),
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub pos: Pos,
    /// Byte range in the source.
    pub span: (usize, usize),
}

/// Tokenize `src`, whose first character sits at `origin`.
pub(crate) fn tokenize(src: &str, origin: Pos) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut line = origin.line;
    let mut column = origin.column;
    let mut chars = src.char_indices().peekable();
    while let Some(&(start, ch)) = chars.peek() {
        let pos = Pos { line, column };
        if ch == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if ch.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        let mut end = start + ch.len_utf8();
        let tok = if ch.is_ascii_alphabetic() || ch == '_' {
            chars.next();
            while let Some(&(i, c)) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    chars.next();
                    end = i + 1;
                } else {
                    break;
                }
            }
            Tok::Ident(src[start..end].to_string())
        } else if ch.is_ascii_digit() {
            chars.next();
            while let Some(&(i, c)) = chars.peek() {
                if c.is_ascii_digit() {
                    chars.next();
                    end = i + 1;
                } else {
                    break;
                }
            }
            let n = src[start..end]
                .parse()
                .map_err(|_| CliError::syntax(pos, format!("integer `{}` is too large", &src[start..end])))?;
            Tok::Int(n)
        } else if "()[],^*+-".contains(ch) {
            chars.next();
            Tok::Punct(ch)
        } else {
            return Err(CliError::syntax(pos, format!("unexpected character `{ch}`")));
        };
        column += src[start..end].chars().count();
        out.push(Token { tok, pos, span: (start, end) });
    }
    Ok(out)
}

pub(crate) struct Parser<'a> {
    src: &'a str,
    tokens: Vec<Token>,
    at: usize,
    end: Pos,
}

impl<'a> Parser<'a> {
    pub(crate) fn new(src: &'a str, origin: Pos) -> Result<Self> {
        let tokens = tokenize(src, origin)?;
        let end = end_pos(src, origin);
        Ok(Parser { src, tokens, at: 0, end })
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at)
    }

    fn pos(&self) -> Pos {
        self.peek().map_or(self.end, |t| t.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.at).cloned();
        self.at += 1;
        t
    }

    fn describe(&self) -> String {
        match self.peek().map(|t| &t.tok) {
            None => "end of input".into(),
            Some(Tok::Ident(s)) => format!("`{s}`"),
            Some(Tok::Int(n)) => format!("`{n}`"),
            Some(Tok::Punct(c)) => format!("`{c}`"),
        }
    }

    fn expect(&mut self, c: char) -> Result<Token> {
        match self.peek() {
            Some(t) if t.tok == Tok::Punct(c) => Ok(self.next().unwrap()),
            _ => Err(CliError::syntax(self.pos(), format!("expected `{c}`, found {}", self.describe()))),
        }
    }

    fn int(&mut self) -> Result<usize> {
        match self.peek().map(|t| &t.tok) {
            Some(&Tok::Int(n)) => {
                self.next();
                Ok(n)
            }
            _ => Err(CliError::syntax(self.pos(), format!("expected an integer, found {}", self.describe()))),
        }
    }

    pub(crate) fn finish(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(CliError::syntax(self.pos(), format!("unexpected {} after expression", self.describe()))),
        }
    }

    pub(crate) fn expr(&mut self) -> Result<Expr> {
        let mut left = self.primary()?;
        while let Some(Token { tok: Tok::Ident(s), pos, .. }) = self.peek() {
            if s != "x" {
                break;
            }
            let pos = *pos;
            self.next();
            let right = self.primary()?;
            left = Expr::new(ExprKind::Product(Box::new(left), Box::new(right)), pos);
        }
        Ok(left)
    }

    fn primary(&mut self) -> Result<Expr> {
        let pos = self.pos();
        let Some(tok) = self.next() else {
            return Err(CliError::syntax(pos, "expected a group expression, found end of input"));
        };
        let kind = match tok.tok {
            Tok::Punct('(') => {
                let inner = self.expr()?;
                self.expect(')')?;
                return Ok(inner);
            }
            Tok::Ident(name) => match name.as_str() {
                "C" | "D" => {
                    self.expect('(')?;
                    let n = self.int()?;
                    self.expect(')')?;
                    if name == "C" {
                        ExprKind::Cyclic(n)
                    } else {
                        ExprKind::Dihedral(n)
                    }
                }
                "Q8" => ExprKind::Q8,
                "Dih" | "Wr2" => {
                    self.expect('(')?;
                    let inner = Box::new(self.expr()?);
                    self.expect(')')?;
                    if name == "Dih" {
                        ExprKind::Dih(inner)
                    } else {
                        ExprKind::Wr2(inner)
                    }
                }
                "Dic" => {
                    self.expect('(')?;
                    let inner = Box::new(self.expr()?);
                    let comma = self.expect(',')?;
                    let word = self.raw_until_close(comma.pos)?;
                    ExprKind::Dic(inner, word)
                }
                "Perm" => {
                    self.expect('[')?;
                    let mut gens = vec![self.cycles()?];
                    while self.peek().is_some_and(|t| t.tok == Tok::Punct(',')) {
                        self.next();
                        gens.push(self.cycles()?);
                    }
                    self.expect(']')?;
                    ExprKind::Perm(gens)
                }
                "x" => return Err(CliError::syntax(pos, "`x` needs a group expression on its left")),
                _ => ExprKind::Name(name),
            },
            _ => {
                self.at -= 1;
                return Err(CliError::syntax(pos, format!("expected a group expression, found {}", self.describe())));
            }
        };
        Ok(Expr::new(kind, pos))
    }

    /// The source text of a `Dic` word, up to the matching `)`.
    fn raw_until_close(&mut self, comma: Pos) -> Result<String> {
        let start = self.at;
        let mut depth = 0usize;
        loop {
            match self.peek().map(|t| &t.tok) {
                None => return Err(CliError::syntax(self.end, "unclosed `Dic(`")),
                Some(Tok::Punct('(')) => depth += 1,
                Some(Tok::Punct(')')) if depth == 0 => break,
                Some(Tok::Punct(')')) => depth -= 1,
                _ => {}
            }
            self.next();
        }
        if start == self.at {
            return Err(CliError::syntax(comma, "`Dic` needs a word after the comma"));
        }
        let text = self.src[self.tokens[start].span.0..self.tokens[self.at - 1].span.1].to_string();
        self.next();
        Ok(text.split_whitespace().collect::<Vec<_>>().join(" "))
    }

    fn cycles(&mut self) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        if !self.peek().is_some_and(|t| t.tok == Tok::Punct('(')) {
            return Err(CliError::syntax(self.pos(), format!("expected a cycle, found {}", self.describe())));
        }
        while self.peek().is_some_and(|t| t.tok == Tok::Punct('(')) {
            self.next();
            let mut cycle = Vec::new();
            while let Some(&Tok::Int(n)) = self.peek().map(|t| &t.tok) {
                self.next();
                cycle.push(n);
            }
            self.expect(')')?;
            if !cycle.is_empty() {
                out.push(cycle);
            }
        }
        Ok(out)
    }
}

fn end_pos(src: &str, origin: Pos) -> Pos {
    let mut pos = origin;
    for ch in src.chars() {
        if ch == '\n' {
            pos.line += 1;
            pos.column = 1;
        } else {
            pos.column += 1;
        }
    }
    pos
}

/// Parse a single group expression whose text starts at `origin`.
pub fn parse_expr_at(src: &str, origin: Pos) -> Result<Expr> {
    let mut p = Parser::new(src, origin)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_expr(src: &str) -> Result<Expr> {
    parse_expr_at(src, Pos { line: 1, column: 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_associate_left() {
        let e = parse_expr("C(2) x C(3) x D(4)").unwrap();
        let ExprKind::Product(a, b) = &e.kind else { panic!() };
        assert!(matches!(a.kind, ExprKind::Product(..)));
        assert_eq!(b.kind, ExprKind::Dihedral(4));
        assert_eq!(e.to_string(), "C(2) x C(3) x D(4)");
    }

    #[test]
    fn nested_constructions() {
        let e = parse_expr("Dic(C(4), r^2)").unwrap();
        assert_eq!(e.to_string(), "Dic(C(4), r^2)");
        let e = parse_expr("Wr2(Dih(C(3) x C(3)))").unwrap();
        assert_eq!(parse_expr(&e.to_string()).unwrap(), e);
        let e = parse_expr("C(2) x (C(3) x C(5))").unwrap();
        assert_eq!(e.to_string(), "C(2) x (C(3) x C(5))");
    }

    #[test]
    fn permutations() {
        let e = parse_expr("Perm[(0 1 2)(3 4), (0 1)]").unwrap();
        assert_eq!(e.kind, ExprKind::Perm(vec![vec![vec![0, 1, 2], vec![3, 4]], vec![vec![0, 1]]]));
        assert_eq!(e.to_string(), "Perm[(0 1 2)(3 4), (0 1)]");
    }

    #[test]
    fn diagnostics_carry_locations() {
        let err = parse_expr("C(3) x D(").unwrap_err();
        let CliError::Syntax { pos, .. } = err else { panic!("{err}") };
        assert_eq!(pos, Pos { line: 1, column: 10 });
        let err = parse_expr("C(3) $").unwrap_err();
        let CliError::Syntax { pos, message } = err else { panic!() };
        assert_eq!((pos.column, message.as_str()), (6, "unexpected character `$`"));
        assert!(parse_expr("Dic(C(4), )").is_err());
        assert!(parse_expr("x C(3)").is_err());
    }
}
