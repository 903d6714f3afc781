//! Turning expressions into groups and words into elements.

use std::collections::HashMap;

use cca_core::group::{
    closure, cyclic, dihedral, direct_product, generalized_dicyclic, generalized_dihedral, quaternion, wreath_c2,
};
use cca_core::{FiniteGroup, Permutation};

use crate::error::{CliError, Pos, Result};
use crate::syntax::{Expr, ExprKind};

pub type Env = HashMap<String, FiniteGroup>;

/// Elaborate `e`; groups of order above `cap` fail with [`CliError::Cap`].
pub fn elaborate(e: &Expr, env: &Env, cap: usize) -> Result<FiniteGroup> {
    let at = |err: cca_core::Error| match err {
        cca_core::Error::OrderExceedsCap { cap } => CliError::Cap(format!("group order exceeds cap {cap}")),
        err => CliError::elaboration(e.pos, err.to_string()),
    };
    let g = match &e.kind {
        ExprKind::Cyclic(n) => {
            if *n > cap {
                return Err(CliError::Cap(format!("C({n}) exceeds order cap {cap}")));
            }
            cyclic(*n).map_err(at)?
        }
        ExprKind::Dihedral(n) => {
            if n.saturating_mul(2) > cap {
                return Err(CliError::Cap(format!("D({n}) exceeds order cap {cap}")));
            }
            dihedral(*n).map_err(at)?
        }
        ExprKind::Q8 => quaternion(),
        ExprKind::Dih(inner) => {
            let a = elaborate(inner, env, cap)?;
            if !a.is_abelian() {
                return Err(CliError::elaboration(e.pos, format!("Dih needs an abelian group, `{inner}` is not")));
            }
            generalized_dihedral(&a).map_err(at)?
        }
        ExprKind::Dic(inner, word) => {
            let a = elaborate(inner, env, cap)?;
            if !a.is_abelian() {
                return Err(CliError::elaboration(e.pos, format!("Dic needs an abelian group, `{inner}` is not")));
            }
            let y = parse_word(&a, word, e.pos)?;
            generalized_dicyclic(&a, a.element(y)).map_err(at)?
        }
        ExprKind::Product(l, r) => {
            let (l, r) = (elaborate(l, env, cap)?, elaborate(r, env, cap)?);
            direct_product(&l, &r, cap).map_err(at)?
        }
        ExprKind::Wr2(inner) => wreath_c2(&elaborate(inner, env, cap)?, cap).map_err(at)?,
        ExprKind::Perm(gens) => {
            let degree = gens.iter().flatten().flatten().max().map_or(1, |&m| m + 1);
            let perms = gens
                .iter()
                .map(|cycles| Permutation::from_cycles(degree, cycles))
                .collect::<cca_core::Result<Vec<_>>>()
                .map_err(at)?;
            let mut g = closure(&perms, cap).map_err(at)?;
            g.clear_realization();
            g
        }
        ExprKind::Name(name) => env
            .get(name)
            .cloned()
            .ok_or_else(|| CliError::elaboration(e.pos, format!("unknown group `{name}`")))?,
    };
    if g.order() > cap {
        return Err(CliError::Cap(format!("group of order {} exceeds order cap {cap}", g.order())));
    }
    Ok(g)
}

/// Parse an element word: generator names (longest match) with optional
/// `^k` powers, joined by juxtaposition, whitespace or `*`. Parenthesised
/// sub-words take powers too; `e` and `1` denote the identity unless they
/// name a generator.
pub fn parse_word(g: &FiniteGroup, text: &str, pos: Pos) -> Result<usize> {
    let mut p = WordParser { g, text, at: 0, pos };
    let x = p.product()?;
    p.skip_space();
    if p.at < text.len() {
        return Err(p.error(format!("unexpected `{}`", &text[p.at..])));
    }
    Ok(x)
}

struct WordParser<'a> {
    g: &'a FiniteGroup,
    text: &'a str,
    at: usize,
    pos: Pos,
}

impl WordParser<'_> {
    fn error(&self, message: String) -> CliError {
        let column = self.pos.column + self.text[..self.at].chars().count();
        CliError::syntax(Pos { line: self.pos.line, column }, message)
    }

    fn rest(&self) -> &str {
        &self.text[self.at..]
    }

    fn skip_space(&mut self) {
        while self.rest().starts_with([' ', '\t']) {
            self.at += 1;
        }
    }

    fn product(&mut self) -> Result<usize> {
        let mut acc = self.g.identity();
        let mut any = false;
        loop {
            self.skip_space();
            if any && self.rest().starts_with('*') {
                self.at += 1;
                self.skip_space();
            } else if self.rest().is_empty() || self.rest().starts_with(')') {
                break;
            }
            let f = self.factor()?;
            acc = self.g.mul(acc, f);
            any = true;
        }
        if !any {
            return Err(self.error("empty word".into()));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<usize> {
        let base = if self.rest().starts_with('(') {
            self.at += 1;
            let inner = self.product()?;
            if !self.rest().starts_with(')') {
                return Err(self.error("expected `)`".into()));
            }
            self.at += 1;
            inner
        } else {
            let best = self
                .g
                .generators()
                .iter()
                .filter(|(s, _)| self.rest().starts_with(s.as_str()))
                .max_by_key(|(s, _)| s.len());
            match best {
                Some((s, i)) => {
                    self.at += s.len();
                    *i
                }
                None if self.rest().starts_with(['e', '1']) => {
                    self.at += 1;
                    self.g.identity()
                }
                None => {
                    let names: Vec<&str> = self.g.generators().iter().map(|(s, _)| s.as_str()).collect();
                    return Err(self.error(format!("expected a generator (one of {})", names.join(", "))));
                }
            }
        };
        if self.rest().starts_with('^') {
            self.at += 1;
            let neg = self.rest().starts_with('-');
            if neg {
                self.at += 1;
            }
            let digits = self.rest().chars().take_while(char::is_ascii_digit).count();
            if digits == 0 {
                return Err(self.error("expected an exponent".into()));
            }
            let k: i64 = self.rest()[..digits].parse().map_err(|_| self.error("exponent too large".into()))?;
            self.at += digits;
            return Ok(self.g.pow(base, if neg { -k } else { k }));
        }
        Ok(base)
    }
}

/// Parse a comma-separated connection set. A `+inv` suffix adds the word's
/// inverse; otherwise the set is taken as written.
pub fn parse_connection(g: &FiniteGroup, text: &str, pos: Pos) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for item in text.split(',') {
        let lead = item.len() - item.trim_start().len();
        let trimmed = item.trim();
        let item_pos = Pos { line: pos.line, column: pos.column + text[..offset + lead].chars().count() };
        let (word, inv) = match trimmed.strip_suffix("+inv") {
            Some(w) => (w.trim_end(), true),
            None => (trimmed, false),
        };
        let x = parse_word(g, word, item_pos)?;
        out.push(x);
        if inv {
            out.push(g.inv(x));
        }
        offset += item.len() + 1;
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}
