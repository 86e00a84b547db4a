//! The `.sing` input format: `key: value;` statements, `#` comments.
//!
//! ```text
//! name: z4u4;
//! equation: x^2 + y^2 + z^4 + u^4;
//! action: 1/2 (0,1,1,1);
//! weight: 1/2 (2,3,1,1);      # optional
//! command: cax2 certify;      # optional, repeatable
//! ```
//!
//! Equations are polynomials over the rationals in `x, y, z, u` built from
//! numbers, `+ - * / ^` and parentheses; `/` divides by a nonzero constant and
//! `^` takes a non-negative integer literal.

use std::fmt;

use num_traits::Zero;

use crate::blowup::{BlowupError, Hyperquotient};
use crate::num::{qi, Q};
use crate::poly::{GroupAction, PolyError, SparsePoly, Var, Weight};

/// Largest accepted exponent literal.
const MAX_EXPONENT: u32 = 256;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub monomial: String,
    pub class: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DslError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("semantic error: {message}")]
    Semantic {
        message: String,
        witnesses: Vec<Witness>,
    },
}

/// A parsed `.sing` file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularityFile {
    pub name: Option<String>,
    pub hq: Hyperquotient,
    pub weight: Option<Weight>,
    pub commands: Vec<String>,
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    column: usize,
}

#[derive(Clone, Copy, Debug)]
struct Ch {
    c: char,
    pos: Pos,
}

fn syntax(pos: Pos, message: impl Into<String>) -> DslError {
    DslError::Syntax {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

/// Characters of `text` with positions, comments removed.
fn positioned(text: &str) -> Vec<Ch> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        for (j, c) in line.chars().enumerate() {
            if c == '#' {
                break;
            }
            out.push(Ch {
                c,
                pos: Pos {
                    line: i + 1,
                    column: j + 1,
                },
            });
        }
        out.push(Ch {
            c: '\n',
            pos: Pos {
                line: i + 1,
                column: line.chars().count() + 1,
            },
        });
    }
    out
}

fn end_pos(chars: &[Ch]) -> Pos {
    chars.last().map_or(Pos { line: 1, column: 1 }, |c| Pos {
        line: c.pos.line,
        column: c.pos.column + 1,
    })
}

fn trim(v: &[Ch]) -> &[Ch] {
    let start = v
        .iter()
        .position(|c| !c.c.is_whitespace())
        .unwrap_or(v.len());
    let end = v
        .iter()
        .rposition(|c| !c.c.is_whitespace())
        .map_or(start, |e| e + 1);
    &v[start..end]
}

fn text_of(v: &[Ch]) -> String {
    v.iter().map(|c| c.c).collect()
}

struct Statement<'a> {
    key: String,
    key_pos: Pos,
    value: &'a [Ch],
    /// Position of the terminating `;`.
    end: Pos,
}

fn statements(chars: &[Ch]) -> Result<Vec<Statement<'_>>, DslError> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        if chars[i].c.is_whitespace() {
            i += 1;
            continue;
        }
        let key_pos = chars[i].pos;
        let start = i;
        while i < chars.len() && (chars[i].c.is_ascii_alphanumeric() || chars[i].c == '_') {
            i += 1;
        }
        if i == start {
            return Err(syntax(
                key_pos,
                format!("expected a key, found '{}'", chars[i].c),
            ));
        }
        let key = text_of(&chars[start..i]);
        while i < chars.len() && chars[i].c.is_whitespace() {
            i += 1;
        }
        if i >= chars.len() || chars[i].c != ':' {
            let pos = chars.get(i).map_or(end_pos(chars), |c| c.pos);
            return Err(syntax(pos, format!("expected ':' after key '{key}'")));
        }
        i += 1;
        let vstart = i;
        while i < chars.len() && chars[i].c != ';' {
            i += 1;
        }
        if i >= chars.len() {
            return Err(syntax(
                end_pos(chars),
                format!("missing ';' after '{key}' value"),
            ));
        }
        out.push(Statement {
            key,
            key_pos,
            value: &chars[vstart..i],
            end: chars[i].pos,
        });
        i += 1;
    }
    Ok(out)
}

/// Recursive-descent parser for polynomial expressions.
struct ExprParser<'a> {
    chars: &'a [Ch],
    i: usize,
    end: Pos,
}

impl<'a> ExprParser<'a> {
    fn new(chars: &'a [Ch], end: Pos) -> Self {
        ExprParser { chars, i: 0, end }
    }

    fn skip_ws(&mut self) {
        while self.i < self.chars.len() && self.chars[self.i].c.is_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<Ch> {
        self.skip_ws();
        self.chars.get(self.i).copied()
    }

    fn pos(&mut self) -> Pos {
        self.peek().map_or(self.end, |c| c.pos)
    }

    fn parse_all(mut self) -> Result<SparsePoly, DslError> {
        if self.peek().is_none() {
            return Err(syntax(self.end, "empty expression"));
        }
        let p = self.expr()?;
        if let Some(c) = self.peek() {
            return Err(syntax(c.pos, format!("unexpected '{}'", c.c)));
        }
        Ok(p)
    }

    fn operand_after(&mut self, op: Ch) -> Result<(), DslError> {
        match self.peek() {
            None => Err(syntax(op.pos, format!("dangling operator '{}'", op.c))),
            Some(c) if matches!(c.c, ')' | '+' | '*' | '/' | '^') => Err(syntax(
                c.pos,
                format!("expected an operand after '{}', found '{}'", op.c, c.c),
            )),
            _ => Ok(()),
        }
    }

    fn expr(&mut self) -> Result<SparsePoly, DslError> {
        let mut acc = self.term()?;
        while let Some(op) = self.peek().filter(|c| matches!(c.c, '+' | '-')) {
            self.i += 1;
            self.operand_after(op)?;
            let rhs = self.term()?;
            acc = if op.c == '+' {
                &acc + &rhs
            } else {
                &acc - &rhs
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<SparsePoly, DslError> {
        let mut acc = self.unary()?;
        while let Some(op) = self.peek().filter(|c| matches!(c.c, '*' | '/')) {
            self.i += 1;
            self.operand_after(op)?;
            let rhs_pos = self.pos();
            let rhs = self.unary()?;
            if op.c == '*' {
                acc = &acc * &rhs;
            } else {
                if !rhs.is_constant() {
                    return Err(syntax(rhs_pos, "division is only by a constant"));
                }
                let c = rhs.constant_term();
                if c.is_zero() {
                    return Err(syntax(rhs_pos, "division by zero"));
                }
                acc = acc.scale(&(qi(1) / c));
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<SparsePoly, DslError> {
        match self.peek() {
            Some(op) if op.c == '-' || op.c == '+' => {
                self.i += 1;
                self.operand_after(op)?;
                let p = self.unary()?;
                Ok(if op.c == '-' { -p } else { p })
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<SparsePoly, DslError> {
        let base = self.atom()?;
        let Some(op) = self.peek().filter(|c| c.c == '^') else {
            return Ok(base);
        };
        self.i += 1;
        self.operand_after(op)?;
        let pos = self.pos();
        let digits = self.digits();
        if digits.is_empty() {
            return Err(syntax(
                pos,
                "exponent must be a non-negative integer literal",
            ));
        }
        let e: u32 = digits
            .parse()
            .ok()
            .filter(|&e| e <= MAX_EXPONENT)
            .ok_or_else(|| syntax(pos, format!("exponent {digits} exceeds {MAX_EXPONENT}")))?;
        if let Some(c) = self.peek().filter(|c| c.c == '^') {
            return Err(syntax(c.pos, "chained '^' is ambiguous; use parentheses"));
        }
        Ok(base.pow(e))
    }

    fn digits(&mut self) -> String {
        self.skip_ws();
        let start = self.i;
        while self.i < self.chars.len() && self.chars[self.i].c.is_ascii_digit() {
            self.i += 1;
        }
        text_of(&self.chars[start..self.i])
    }

    fn atom(&mut self) -> Result<SparsePoly, DslError> {
        let Some(c) = self.peek() else {
            return Err(syntax(self.end, "expected an operand"));
        };
        if c.c == '(' {
            self.i += 1;
            let inner = self.expr()?;
            match self.peek() {
                Some(d) if d.c == ')' => {
                    self.i += 1;
                    Ok(inner)
                }
                Some(d) => Err(syntax(d.pos, format!("expected ')', found '{}'", d.c))),
                None => Err(syntax(self.end, "unclosed '('")),
            }
        } else if c.c.is_ascii_digit() {
            let digits = self.digits();
            let n: num_bigint::BigInt = digits.parse().expect("digit string");
            Ok(SparsePoly::constant(Q::from_integer(n)))
        } else if c.c.is_alphabetic() || c.c == '_' {
            let start = self.i;
            while self.i < self.chars.len()
                && (self.chars[self.i].c.is_alphanumeric() || self.chars[self.i].c == '_')
            {
                self.i += 1;
            }
            let name = text_of(&self.chars[start..self.i]);
            match Var::ALL.into_iter().find(|v| v.name() == name) {
                Some(v) => Ok(SparsePoly::var(v)),
                None => Err(syntax(
                    c.pos,
                    format!("unknown identifier '{name}' (variables are x, y, z, u)"),
                )),
            }
        } else {
            Err(syntax(c.pos, format!("unexpected '{}'", c.c)))
        }
    }
}

fn parse_poly_chars(value: &[Ch], end: Pos) -> Result<SparsePoly, DslError> {
    ExprParser::new(value, end).parse_all()
}

/// Parses a standalone polynomial expression.
pub fn parse_polynomial(text: &str) -> Result<SparsePoly, DslError> {
    let chars = positioned(text);
    let end = end_pos(&chars);
    parse_poly_chars(&chars, end)
}

/// `1/m (a, b, c, d)` with signed integer entries.
fn parse_fraction_vector(value: &[Ch], end: Pos) -> Result<(u64, [i64; 4]), DslError> {
    let v: Vec<Ch> = value
        .iter()
        .copied()
        .filter(|c| !c.c.is_whitespace())
        .collect();
    let at = |i: usize| v.get(i).map_or(end, |c| c.pos);
    let mut i = 0;
    let expect = |i: &mut usize, ch: char| -> Result<(), DslError> {
        if v.get(*i).map(|c| c.c) == Some(ch) {
            *i += 1;
            Ok(())
        } else {
            Err(syntax(
                at(*i),
                format!("expected '{ch}' in '1/m (a,b,c,d)'"),
            ))
        }
    };
    let int = |i: &mut usize, signed: bool| -> Result<i64, DslError> {
        let start = *i;
        if signed && v.get(*i).is_some_and(|c| c.c == '-') {
            *i += 1;
        }
        while v.get(*i).is_some_and(|c| c.c.is_ascii_digit()) {
            *i += 1;
        }
        let s = text_of(&v[start..*i]);
        s.parse::<i64>()
            .map_err(|_| syntax(at(start), "expected an integer in '1/m (a,b,c,d)'"))
    };
    expect(&mut i, '1')?;
    expect(&mut i, '/')?;
    let m_pos = at(i);
    let m = int(&mut i, false)?;
    if m <= 0 {
        return Err(syntax(m_pos, "the order m must be positive"));
    }
    expect(&mut i, '(')?;
    let mut entries = [0i64; 4];
    for (k, e) in entries.iter_mut().enumerate() {
        if k > 0 {
            expect(&mut i, ',')?;
        }
        *e = int(&mut i, true)?;
    }
    expect(&mut i, ')')?;
    if i < v.len() {
        return Err(syntax(at(i), format!("unexpected '{}'", v[i].c)));
    }
    Ok((m as u64, entries))
}

fn parse_action_chars(value: &[Ch], end: Pos) -> Result<GroupAction, DslError> {
    let (m, w) = parse_fraction_vector(value, end)?;
    GroupAction::new(m, w).map_err(|e| syntax(value.first().map_or(end, |c| c.pos), e.to_string()))
}

fn parse_weight_chars(value: &[Ch], end: Pos) -> Result<Weight, DslError> {
    let (m, w) = parse_fraction_vector(value, end)?;
    let pos = value.first().map_or(end, |c| c.pos);
    if w.iter().any(|&e| e <= 0) {
        return Err(syntax(pos, "weight entries must be positive"));
    }
    Weight::new(m, w.map(|e| e as u64)).map_err(|e| syntax(pos, e.to_string()))
}

/// Parses `1/m (a,b,c,d)` as a group action.
pub fn parse_action(text: &str) -> Result<GroupAction, DslError> {
    let chars = positioned(text);
    let end = end_pos(&chars);
    parse_action_chars(trim(&chars), end)
}

/// Parses `1/m (a,b,c,d)` as a weight (positive entries).
pub fn parse_weight(text: &str) -> Result<Weight, DslError> {
    let chars = positioned(text);
    let end = end_pos(&chars);
    parse_weight_chars(trim(&chars), end)
}

fn semantic(e: BlowupError) -> DslError {
    match e {
        BlowupError::Poly(PolyError::NotSemiInvariant {
            first,
            first_class,
            second,
            second_class,
            modulus,
        }) => DslError::Semantic {
            message: format!(
                "equation is not semi-invariant under the action: {first} has class {first_class}, {second} has class {second_class} (mod {modulus})"
            ),
            witnesses: vec![
                Witness {
                    monomial: first,
                    class: first_class,
                },
                Witness {
                    monomial: second,
                    class: second_class,
                },
            ],
        },
        other => DslError::Semantic {
            message: other.to_string(),
            witnesses: vec![],
        },
    }
}

pub fn parse_singularity(text: &str) -> Result<SingularityFile, DslError> {
    let chars = positioned(text);
    let end = end_pos(&chars);
    let mut name = None;
    let mut equation = None;
    let mut action = None;
    let mut weight = None;
    let mut commands = Vec::new();
    for st in statements(&chars)? {
        let value = trim(st.value);
        if value.is_empty() {
            return Err(syntax(st.key_pos, format!("empty value for '{}'", st.key)));
        }
        let duplicate = || syntax(st.key_pos, format!("duplicate key '{}'", st.key));
        match st.key.as_str() {
            "name" => {
                if name.replace(text_of(value)).is_some() {
                    return Err(duplicate());
                }
            }
            "equation" => {
                let p = parse_poly_chars(value, st.end)?;
                if equation.replace(p).is_some() {
                    return Err(duplicate());
                }
            }
            "action" => {
                if action.replace(parse_action_chars(value, st.end)?).is_some() {
                    return Err(duplicate());
                }
            }
            "weight" => {
                if weight.replace(parse_weight_chars(value, st.end)?).is_some() {
                    return Err(duplicate());
                }
            }
            "command" => commands.push(
                text_of(value)
                    .split_whitespace()
                    .collect::<Vec<_>>()
                    .join(" "),
            ),
            other => {
                return Err(syntax(
                    st.key_pos,
                    format!(
                        "unknown key '{other}' (expected name, equation, action, weight, command)"
                    ),
                ))
            }
        }
    }
    let phi = equation.ok_or_else(|| syntax(end, "missing 'equation' statement"))?;
    let action = action.ok_or_else(|| syntax(end, "missing 'action' statement"))?;
    if let Some(w) = &weight {
        if w.modulus() != action.modulus() {
            return Err(DslError::Semantic {
                message: format!(
                    "weight {w} has modulus {}, the action has modulus {}",
                    w.modulus(),
                    action.modulus()
                ),
                witnesses: vec![],
            });
        }
    }
    let hq = Hyperquotient::new(phi, action).map_err(semantic)?;
    Ok(SingularityFile {
        name,
        hq,
        weight,
        commands,
    })
}

/// Canonical text: one statement per line in the order name, equation,
/// action, weight, commands.
pub fn print_singularity(file: &SingularityFile) -> String {
    let mut out = String::new();
    if let Some(n) = &file.name {
        out.push_str(&format!("name: {n};\n"));
    }
    out.push_str(&format!("equation: {};\n", file.hq.phi()));
    out.push_str(&format!("action: {};\n", file.hq.action()));
    if let Some(w) = &file.weight {
        out.push_str(&format!("weight: {w};\n"));
    }
    for c in &file.commands {
        out.push_str(&format!("command: {c};\n"));
    }
    out
}

impl fmt::Display for SingularityFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_singularity(self))
    }
}
