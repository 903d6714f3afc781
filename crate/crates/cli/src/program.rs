//! Program files: `name = expr` declarations and one task per line.
//!
//! ```text
//! G = C(3) x D(3)
//! check-group G --cap 4096
//! check-graph "D(4)" "r+inv, s"
//! witness-thm31 --n 5
//! ```
//!
//! `#` starts a comment. Arguments containing spaces are double-quoted.

use std::collections::HashSet;
use std::fmt;

use crate::error::{CliError, Pos, Result};
use crate::syntax::{parse_expr_at, Expr};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Task {
    CheckGraph { group: Expr, connection: String },
    CheckGroup { group: Expr, cap: Option<u64> },
    Pair { g: Expr, b: Expr },
    WitnessThm31 { n: usize },
    WitnessProp33 { n: usize },
    Harness { n: usize },
    Census { from: usize, to: usize },
}

impl Task {
    pub fn command(&self) -> &'static str {
        match self {
            Task::CheckGraph { .. } => "check-graph",
            Task::CheckGroup { .. } => "check-group",
            Task::Pair { .. } => "pair",
            Task::WitnessThm31 { .. } => "witness-thm31",
            Task::WitnessProp33 { .. } => "witness-prop33",
            Task::Harness { .. } => "harness-4-10",
            Task::Census { .. } => "census",
        }
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.command())?;
        match self {
            Task::CheckGraph { group, connection } => write!(f, " \"{group}\" \"{connection}\""),
            Task::CheckGroup { group, cap } => {
                write!(f, " \"{group}\"")?;
                match cap {
                    Some(c) => write!(f, " --cap {c}"),
                    None => Ok(()),
                }
            }
            Task::Pair { g, b } => write!(f, " \"{g}\" \"{b}\""),
            Task::WitnessThm31 { n } | Task::WitnessProp33 { n } | Task::Harness { n } => write!(f, " --n {n}"),
            Task::Census { from, to } => write!(f, " --orders {from}..{to}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SpecProgram {
    pub declarations: Vec<(String, Expr)>,
    pub tasks: Vec<Task>,
}

impl fmt::Display for SpecProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, e) in &self.declarations {
            writeln!(f, "{name} = {e}")?;
        }
        for t in &self.tasks {
            writeln!(f, "{t}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Arg {
    text: String,
    /// Position of the first character of `text` (inside any quotes).
    pos: Pos,
}

fn split_args(line: &str, line_no: usize) -> Result<Vec<Arg>> {
    let mut args = Vec::new();
    let chars: Vec<char> = line.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '"' {
            let start = i + 1;
            let close = chars[start..]
                .iter()
                .position(|&d| d == '"')
                .ok_or_else(|| CliError::syntax(Pos { line: line_no, column: i + 1 }, "unterminated string"))?;
            args.push(Arg {
                text: chars[start..start + close].iter().collect(),
                pos: Pos { line: line_no, column: start + 1 },
            });
            i = start + close + 1;
        } else {
            let start = i;
            while i < chars.len() && !chars[i].is_whitespace() && chars[i] != '#' {
                i += 1;
            }
            args.push(Arg { text: chars[start..i].iter().collect(), pos: Pos { line: line_no, column: start + 1 } });
        }
    }
    Ok(args)
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

const RESERVED: [&str; 8] = ["C", "D", "Q8", "Dih", "Dic", "Wr2", "Perm", "x"];

fn parse_number<T: std::str::FromStr>(arg: &Arg, what: &str) -> Result<T> {
    arg.text.parse().map_err(|_| CliError::syntax(arg.pos, format!("expected {what}, found `{}`", arg.text)))
}

/// Parse the arguments following a command name.
fn parse_task(command: &Arg, args: &[Arg], end: Pos) -> Result<Task> {
    let expr = |a: &Arg| parse_expr_at(&a.text, a.pos);
    let missing = |what: &str| CliError::syntax(end, format!("`{}` needs {what}", command.text));
    let flag = |name: &str| -> Result<&Arg> {
        match args {
            [f, v] if f.text == name => Ok(v),
            [f] if f.text == name => Err(missing(&format!("a value after {name}"))),
            [f, ..] if f.text != name => Err(CliError::syntax(f.pos, format!("expected {name}, found `{}`", f.text))),
            [] => Err(missing(name)),
            [_, _, extra, ..] => Err(CliError::syntax(extra.pos, format!("unexpected argument `{}`", extra.text))),
            _ => unreachable!(),
        }
    };
    let too_many = |a: &Arg| CliError::syntax(a.pos, format!("unexpected argument `{}`", a.text));
    Ok(match command.text.as_str() {
        "check-graph" => match args {
            [g, c] => Task::CheckGraph { group: expr(g)?, connection: c.text.trim().to_string() },
            [_, _, extra, ..] => return Err(too_many(extra)),
            _ => return Err(missing("a group and a connection set")),
        },
        "check-group" => match args {
            [g] => Task::CheckGroup { group: expr(g)?, cap: None },
            [g, f, v] if f.text == "--cap" => Task::CheckGroup { group: expr(g)?, cap: Some(parse_number(v, "a cap")?) },
            [_, f, ..] if f.text != "--cap" => return Err(too_many(f)),
            [_, _, _, extra, ..] => return Err(too_many(extra)),
            [_, _] => return Err(missing("a value after --cap")),
            [] => return Err(missing("a group")),
            _ => unreachable!(),
        },
        "pair" => match args {
            [g, b] => Task::Pair { g: expr(g)?, b: expr(b)? },
            [_, _, extra, ..] => return Err(too_many(extra)),
            _ => return Err(missing("two groups")),
        },
        "witness-thm31" => Task::WitnessThm31 { n: parse_number(flag("--n")?, "an integer")? },
        "witness-prop33" => Task::WitnessProp33 { n: parse_number(flag("--n")?, "an integer")? },
        "harness-4-10" => Task::Harness { n: parse_number(flag("--n")?, "an integer")? },
        "census" => {
            let v = flag("--orders")?;
            let (from, to) = parse_range(v)?;
            Task::Census { from, to }
        }
        other => return Err(CliError::syntax(command.pos, format!("unknown command `{other}`"))),
    })
}

/// `a..b`, inclusive.
pub(crate) fn parse_range(arg: &Arg) -> Result<(usize, usize)> {
    let bad = || CliError::syntax(arg.pos, format!("expected a range a..b, found `{}`", arg.text));
    let (a, b) = arg.text.split_once("..").ok_or_else(bad)?;
    let (a, b): (usize, usize) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

/// Parse a range given on the command line.
pub fn parse_orders(text: &str) -> Result<(usize, usize)> {
    parse_range(&Arg { text: text.to_string(), pos: Pos { line: 1, column: 1 } })
}

pub fn parse_spec(text: &str) -> Result<SpecProgram> {
    let mut program = SpecProgram::default();
    let mut names = HashSet::new();
    for (k, line) in text.lines().enumerate() {
        let line_no = k + 1;
        let code = line.split('#').next().unwrap_or("");
        if code.trim().is_empty() {
            continue;
        }
        if let Some((lhs, rhs)) = code.split_once('=') {
            let name = lhs.trim();
            let name_col = lhs.len() - lhs.trim_start().len() + 1;
            let name_pos = Pos { line: line_no, column: name_col };
            if !is_ident(name) || RESERVED.contains(&name) {
                return Err(CliError::syntax(name_pos, format!("`{name}` cannot be declared")));
            }
            if !names.insert(name.to_string()) {
                return Err(CliError::syntax(name_pos, format!("`{name}` is declared twice")));
            }
            let rhs_col = lhs.chars().count() + 2;
            let e = parse_expr_at(rhs, Pos { line: line_no, column: rhs_col })?;
            program.declarations.push((name.to_string(), e));
            continue;
        }
        let args = split_args(line, line_no)?;
        let end = Pos { line: line_no, column: code.trim_end().chars().count() + 1 };
        program.tasks.push(parse_task(&args[0], &args[1..], end)?);
    }
    Ok(program)
}
