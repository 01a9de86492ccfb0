//! A small arithmetic language in one variable `t`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := number | 't' | 'pi' | 'e' | ident '(' expr ')' | '(' expr ')' | '-' factor
//! vector := expr ',' expr ',' expr | '(' expr ',' expr ',' expr ')'
//! ```
//!
//! Expressions evaluate over any [`Scalar`], so the same tree yields values
//! (`f64`) and exact derivative jets (`Taylor<f64>`).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::dual::{Analytic, Vec3};
use crate::error::{GeomError, Result};
use crate::numerics::taylor::Taylor;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Number(f64),
    Var,
    Pi,
    E,
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(Analytic, Box<Expr>),
}

/// Number types an expression can be evaluated over.
pub trait Scalar:
    Clone
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(v: f64) -> Self;
    fn value(&self) -> f64;
    fn apply(&self, f: Analytic) -> Result<Self>;
}

impl Scalar for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }

    fn value(&self) -> f64 {
        *self
    }

    fn apply(&self, f: Analytic) -> Result<Self> {
        Ok(f.value_and_derivative(*self)?.0)
    }
}

impl Scalar for Taylor<f64> {
    fn from_f64(v: f64) -> Self {
        Taylor::constant(v)
    }

    fn value(&self) -> f64 {
        Taylor::value(self)
    }

    fn apply(&self, f: Analytic) -> Result<Self> {
        let (v0, _) = f.value_and_derivative(Taylor::value(self))?;
        let one = Taylor::constant(1.0);
        Ok(match f {
            Analytic::Sin => self.sin(),
            Analytic::Cos => self.cos(),
            Analytic::Tan => {
                let (s, c) = self.sin_cos();
                s / c
            }
            Analytic::Sqrt => self.sqrt(),
            Analytic::Exp => self.exp(),
            Analytic::Ln => self.ln(),
            Analytic::Atan => (self.diff() / (one + *self * *self)).integrate(v0),
            Analytic::Asin => (self.diff() / (one - *self * *self).sqrt()).integrate(v0),
            Analytic::Acos => -(self.diff() / (one - *self * *self).sqrt()).integrate(-v0),
        })
    }
}

fn function(name: &str) -> Option<Analytic> {
    Some(match name {
        "sin" => Analytic::Sin,
        "cos" => Analytic::Cos,
        "tan" => Analytic::Tan,
        "sqrt" => Analytic::Sqrt,
        "exp" => Analytic::Exp,
        "ln" | "log" => Analytic::Ln,
        "acos" => Analytic::Acos,
        "asin" => Analytic::Asin,
        "atan" => Analytic::Atan,
        _ => return None,
    })
}

impl Expr {
    pub fn parse(text: &str) -> Result<Expr> {
        Self::parse_at(text, 1, 1)
    }

    /// Parses `text`, reporting positions as if it started at `line:column`
    /// of a larger document.
    pub fn parse_at(text: &str, line: usize, column: usize) -> Result<Expr> {
        let mut p = Parser::new(text, line, column)?;
        let e = p.expr()?;
        p.expect_end()?;
        Ok(e)
    }

    pub fn eval<S: Scalar>(&self, t: &S) -> Result<S> {
        Ok(match self {
            Expr::Number(v) => S::from_f64(*v),
            Expr::Var => t.clone(),
            Expr::Pi => S::from_f64(std::f64::consts::PI),
            Expr::E => S::from_f64(std::f64::consts::E),
            Expr::Neg(a) => -a.eval(t)?,
            Expr::Binary(op, a, b) => {
                let (a, b) = (a.eval(t)?, b.eval(t)?);
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => a / b,
                }
            }
            Expr::Call(f, a) => a.eval(t)?.apply(*f)?,
        })
    }

    pub fn value(&self, t: f64) -> Result<f64> {
        self.eval(&t)
    }

    /// Whether the expression mentions `t`.
    pub fn depends_on_t(&self) -> bool {
        match self {
            Expr::Var => true,
            Expr::Number(_) | Expr::Pi | Expr::E => false,
            Expr::Neg(a) | Expr::Call(_, a) => a.depends_on_t(),
            Expr::Binary(_, a, b) => a.depends_on_t() || b.depends_on_t(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Binary(op, ..) => op.precedence(),
            Expr::Neg(_) => 3,
            _ => 4,
        }
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if e.precedence() < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Number(v) if *v < 0.0 => write!(f, "(-{})", -v),
            Expr::Number(v) => write!(f, "{v}"),
            Expr::Var => f.write_str("t"),
            Expr::Pi => f.write_str("pi"),
            Expr::E => f.write_str("e"),
            Expr::Neg(a) => {
                f.write_str("-")?;
                write_child(f, a, 3)
            }
            Expr::Binary(op, a, b) => {
                let p = op.precedence();
                write_child(f, a, p)?;
                write!(f, " {} ", op.symbol())?;
                write_child(f, b, p + 1)
            }
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

/// Three component expressions.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorExpr(pub [Expr; 3]);

impl VectorExpr {
    pub fn parse(text: &str) -> Result<VectorExpr> {
        Self::parse_at(text, 1, 1)
    }

    pub fn parse_at(text: &str, line: usize, column: usize) -> Result<VectorExpr> {
        let mut p = Parser::new(text, line, column)?;
        let wrapped = p.outer_parens()?;
        if wrapped {
            p.bump();
        }
        let x = p.expr()?;
        p.expect(Tok::Comma, "',' between vector components")?;
        let y = p.expr()?;
        p.expect(Tok::Comma, "',' between vector components")?;
        let z = p.expr()?;
        if wrapped {
            p.expect(Tok::RParen, "')'")?;
        }
        p.expect_end()?;
        Ok(VectorExpr([x, y, z]))
    }

    pub fn eval<S: Scalar>(&self, t: &S) -> Result<[S; 3]> {
        Ok([self.0[0].eval(t)?, self.0[1].eval(t)?, self.0[2].eval(t)?])
    }

    pub fn value(&self, t: f64) -> Result<Vec3> {
        let [x, y, z] = self.eval(&t)?;
        Ok(Vec3::new(x, y, z))
    }

    pub fn jet(&self, t: f64) -> Result<Taylor<Vec3>> {
        let [x, y, z] = self.eval(&Taylor::variable(t))?;
        Ok(x.zip(&y, |a, b| Vec3::new(a, b, 0.0))
            .zip(&z, |v, c| Vec3::new(v.x, v.y, c)))
    }
}

impl fmt::Display for VectorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Number(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    Comma,
    End,
}

struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str, line: usize, column: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (line, column);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token {
                tok,
                line: l0,
                column: c0,
            });
            i += 1;
            col += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() || c == '.' {
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let s: String = chars[start..i].iter().collect();
            let v: f64 = s.parse().map_err(|_| GeomError::Parse {
                line: l0,
                column: c0,
                message: format!("malformed number '{s}'"),
            })?;
            out.push(Token {
                tok: Tok::Number(v),
                line: l0,
                column: c0,
            });
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line: l0,
                column: c0,
            });
        } else {
            return Err(GeomError::Parse {
                line: l0,
                column: c0,
                message: format!("unexpected character '{c}'"),
            });
        }
        col += i - start;
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column: col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(text: &str, line: usize, column: usize) -> Result<Self> {
        Ok(Parser {
            toks: lex(text, line, column)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> &Token {
        let t = &self.toks[self.pos];
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> GeomError {
        let t = &self.toks[self.pos];
        GeomError::Parse {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    fn describe(tok: &Tok) -> String {
        match tok {
            Tok::Number(v) => format!("number {v}"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::End => "end of input".into(),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!(
                "expected {what}, found {}",
                Self::describe(self.peek())
            )))
        }
    }

    fn expect_end(&self) -> Result<()> {
        match self.peek() {
            Tok::End => Ok(()),
            Tok::RParen => Err(self.error("unmatched ')'")),
            t => Err(self.error(format!("unexpected {}", Self::describe(t)))),
        }
    }

    /// True when the input starts with '(' whose matching ')' is the last
    /// token. An unmatched leading '(' is reported here.
    fn outer_parens(&self) -> Result<bool> {
        if *self.peek() != Tok::LParen {
            return Ok(false);
        }
        let mut depth = 0usize;
        for (i, t) in self.toks.iter().enumerate().skip(self.pos) {
            match t.tok {
                Tok::LParen => depth += 1,
                Tok::RParen => {
                    depth -= 1;
                    if depth == 0 {
                        return Ok(matches!(self.toks[i + 1].tok, Tok::End));
                    }
                }
                _ => {}
            }
        }
        Err(GeomError::Parse {
            line: self.toks[self.pos].line,
            column: self.toks[self.pos].column,
            message: "unclosed parenthesis".into(),
        })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.factor()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn close_paren(&mut self, open: (usize, usize)) -> Result<()> {
        match self.peek() {
            Tok::RParen => {
                self.bump();
                Ok(())
            }
            Tok::End => Err(GeomError::Parse {
                line: open.0,
                column: open.1,
                message: "unclosed parenthesis".into(),
            }),
            t => Err(self.error(format!("expected ')', found {}", Self::describe(t)))),
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let tok = self.bump();
        let (line, column) = (tok.line, tok.column);
        match tok.tok.clone() {
            Tok::Number(v) => Ok(Expr::Number(v)),
            Tok::Minus => Ok(Expr::Neg(Box::new(self.factor()?))),
            Tok::LParen => {
                let e = self.expr()?;
                self.close_paren((line, column))?;
                Ok(e)
            }
            Tok::Ident(name) => {
                if *self.peek() == Tok::LParen {
                    let open = (self.toks[self.pos].line, self.toks[self.pos].column);
                    let f = function(&name).ok_or(GeomError::UnknownFunction {
                        name: name.clone(),
                        line,
                        column,
                    })?;
                    self.bump();
                    let arg = self.expr()?;
                    self.close_paren(open)?;
                    return Ok(Expr::Call(f, Box::new(arg)));
                }
                match name.as_str() {
                    "t" => Ok(Expr::Var),
                    "pi" => Ok(Expr::Pi),
                    "e" => Ok(Expr::E),
                    _ => Err(GeomError::Parse {
                        line,
                        column,
                        message: format!("unknown name '{name}' (only t, pi and e)"),
                    }),
                }
            }
            Tok::End => {
                self.pos = self.toks.len() - 1;
                Err(self.error("unexpected end of input"))
            }
            other => {
                self.pos -= 1;
                Err(self.error(format!("unexpected {}", Self::describe(&other))))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn precedence_and_unary_minus() {
        assert_eq!(Expr::parse("1 + 2 * 3").unwrap().value(0.0).unwrap(), 7.0);
        assert_eq!(
            Expr::parse("-2 * 3 - -1").unwrap().value(0.0).unwrap(),
            -5.0
        );
        assert_eq!(Expr::parse("8 / 4 / 2").unwrap().value(0.0).unwrap(), 1.0);
        assert_eq!(Expr::parse("1e-2 * 100").unwrap().value(0.0).unwrap(), 1.0);
        assert_abs_diff_eq!(
            Expr::parse("2*pi - t").unwrap().value(1.0).unwrap(),
            std::f64::consts::TAU - 1.0
        );
    }

    #[test]
    fn vector_forms() {
        let v = VectorExpr::parse("(-t*cos(t), 1 - t*sin(t), t)").unwrap();
        let p = v.value(1.0).unwrap();
        assert_abs_diff_eq!(
            p,
            Vec3::new(-(1f64.cos()), 1.0 - 1f64.sin(), 1.0),
            epsilon = 1e-15
        );
        let w = VectorExpr::parse("(t) + 1, 0, 0").unwrap();
        assert_eq!(w.value(1.0).unwrap(), Vec3::new(2.0, 0.0, 0.0));
    }

    #[test]
    fn errors_carry_positions() {
        match VectorExpr::parse("(cos(t), sin(t)") {
            Err(GeomError::Parse {
                line: 1,
                column: 1,
                message,
            }) => assert!(message.contains("unclosed")),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            Expr::parse_at("1 + foo(t)", 3, 11).unwrap_err(),
            GeomError::UnknownFunction {
                name: "foo".into(),
                line: 3,
                column: 15
            }
        );
        assert!(matches!(Expr::parse("1 +"), Err(GeomError::Parse { .. })));
        assert!(matches!(
            Expr::parse("(1"),
            Err(GeomError::Parse { column: 1, .. })
        ));
        assert!(matches!(
            Expr::parse("1)"),
            Err(GeomError::Parse { column: 2, .. })
        ));
        assert!(matches!(Expr::parse("x"), Err(GeomError::Parse { .. })));
        assert!(matches!(
            Expr::parse("2 $ 3"),
            Err(GeomError::Parse { column: 3, .. })
        ));
    }

    #[test]
    fn jets_match_derivatives() {
        let e = Expr::parse(
            "atan(t) + asin(t/2) + acos(t/3) + tan(t) * exp(t) / sqrt(1 + t*t) + ln(2 + t)",
        )
        .unwrap();
        let t = 0.4;
        let jet: Taylor<f64> = e.eval(&Taylor::variable(t)).unwrap();
        let h = 1e-4;
        let f = |x: f64| e.value(x).unwrap();
        assert_abs_diff_eq!(jet.value(), f(t), epsilon = 1e-15);
        let d1 = (f(t + h) - f(t - h)) / (2.0 * h);
        let d2 = (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
        assert_abs_diff_eq!(jet.derivative(1), d1, epsilon = 1e-7);
        assert_abs_diff_eq!(jet.derivative(2), d2, epsilon = 1e-5);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(
            Expr::parse("sqrt(t)").unwrap().value(-1.0),
            Err(GeomError::Domain { .. })
        ));
        assert!(Expr::parse("1/t")
            .unwrap()
            .value(0.0)
            .unwrap()
            .is_infinite());
    }

    #[test]
    fn display_round_trip() {
        for s in [
            "1 - (2 - 3)",
            "-(t + 1) * 2",
            "--t",
            "sin(t) / (cos(t) * 2)",
            "2*pi*e",
            "(1 + 2) + 3",
        ] {
            let e = Expr::parse(s).unwrap();
            assert_eq!(Expr::parse(&e.to_string()).unwrap(), e, "{s} -> {e}");
        }
    }
}
