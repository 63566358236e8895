//! Expression language over the distance invariants.
//!
//! Grammar (left associative, whitespace insensitive):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := INT | INT '/' INT | IDENT | '(' expr ')' | '-' factor
//! ```
//!
//! `INT '/' INT` is a single rational literal. Identifiers name profile
//! fields; a division whose right side is the literal zero is rejected at
//! parse time, anything else only at evaluation.

use std::fmt;

use thiserror::Error;

use crate::invariants::Profile;
use crate::rat::Rat;

/// The invariant symbols the language can evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarId {
    AvgDistance,
    Proximity,
    Remoteness,
    AvgEcc,
    Radius,
    Diameter,
    N,
    M,
}

impl VarId {
    pub const ALL: [VarId; 8] = [
        VarId::AvgDistance,
        VarId::Proximity,
        VarId::Remoteness,
        VarId::AvgEcc,
        VarId::Radius,
        VarId::Diameter,
        VarId::N,
        VarId::M,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            VarId::AvgDistance => "avg_distance",
            VarId::Proximity => "proximity",
            VarId::Remoteness => "remoteness",
            VarId::AvgEcc => "avg_ecc",
            VarId::Radius => "radius",
            VarId::Diameter => "diameter",
            VarId::N => "n",
            VarId::M => "m",
        }
    }

    pub fn from_name(name: &str) -> Option<VarId> {
        VarId::ALL.into_iter().find(|v| v.name() == name)
    }
}

/// Parsed expression tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Number(Rat),
    Var(VarId),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
}

/// Parse failures, with 1-based character columns.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("unknown identifier `{name}` at column {column}")]
    UnknownIdentifier { name: String, column: usize },
    #[error("syntax error at column {column}: {message}")]
    Syntax { message: String, column: usize },
    #[error("division by literal zero at column {column}")]
    ZeroDenominator { column: usize },
}

/// Evaluation failures.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("variable `{0}` is not available in this context")]
    UnboundVariable(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Int(i128),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Open,
    Close,
}

struct Lexer;

impl Lexer {
    fn run(text: &str) -> Result<Vec<(Token, usize)>, ParseError> {
        let chars: Vec<char> = text.chars().collect();
        let mut out = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let column = i + 1;
            match c {
                ' ' | '\t' | '\n' | '\r' => i += 1,
                '+' => {
                    out.push((Token::Plus, column));
                    i += 1;
                }
                '-' => {
                    out.push((Token::Minus, column));
                    i += 1;
                }
                '*' => {
                    out.push((Token::Star, column));
                    i += 1;
                }
                '/' => {
                    out.push((Token::Slash, column));
                    i += 1;
                }
                '(' => {
                    out.push((Token::Open, column));
                    i += 1;
                }
                ')' => {
                    out.push((Token::Close, column));
                    i += 1;
                }
                '0'..='9' => {
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let digits: String = chars[start..i].iter().collect();
                    let value = digits.parse::<i128>().map_err(|_| ParseError::Syntax {
                        message: "integer literal too large".into(),
                        column,
                    })?;
                    out.push((Token::Int(value), column));
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let start = i;
                    while i < chars.len()
                        && (chars[i].is_ascii_alphanumeric() || chars[i] == '_')
                    {
                        i += 1;
                    }
                    out.push((Token::Ident(chars[start..i].iter().collect()), column));
                }
                other => {
                    return Err(ParseError::Syntax {
                        message: format!("unexpected character `{other}`"),
                        column,
                    });
                }
            }
        }
        Ok(out)
    }
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end_column: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn peek2(&self) -> Option<&Token> {
        self.tokens.get(self.pos + 1).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map_or(self.end_column, |&(_, c)| c)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Token::Minus) => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(Token::Slash) => {
                    self.bump();
                    let rhs_column = self.column();
                    let rhs = self.factor()?;
                    if matches!(&rhs, Expr::Number(r) if r.is_zero()) {
                        return Err(ParseError::ZeroDenominator { column: rhs_column });
                    }
                    lhs = Expr::Div(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let column = self.column();
        match self.bump() {
            Some(Token::Int(value)) => {
                // A slash straight into another integer is one rational
                // literal, not a division.
                if self.peek() == Some(&Token::Slash) {
                    if let Some(&Token::Int(den)) = self.peek2() {
                        self.bump();
                        let den_column = self.column();
                        self.bump();
                        if den == 0 {
                            return Err(ParseError::ZeroDenominator { column: den_column });
                        }
                        return Ok(Expr::Number(Rat::new(value, den)));
                    }
                }
                Ok(Expr::Number(Rat::from_int(value)))
            }
            Some(Token::Ident(name)) => match VarId::from_name(&name) {
                Some(v) => Ok(Expr::Var(v)),
                None => Err(ParseError::UnknownIdentifier { name, column }),
            },
            Some(Token::Open) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Token::Close) => Ok(inner),
                    _ => Err(ParseError::Syntax {
                        message: "expected `)`".into(),
                        column: self.end_column.min(self.column()),
                    }),
                }
            }
            Some(Token::Minus) => Ok(Expr::Neg(Box::new(self.factor()?))),
            Some(other) => Err(ParseError::Syntax {
                message: format!("unexpected token `{other:?}`"),
                column,
            }),
            None => Err(ParseError::Syntax {
                message: "unexpected end of input".into(),
                column,
            }),
        }
    }
}

/// Parses an expression over the invariant symbols.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let tokens = Lexer::run(text)?;
    let end_column = text.chars().count() + 1;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end_column,
    };
    let expr = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(ParseError::Syntax {
            message: "trailing input".into(),
            column: parser.column(),
        });
    }
    Ok(expr)
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Children that are themselves binary get parentheses, and the
        // right side of a division always does, so `8 / 5` can never
        // re-lex as the literal `8/5`.
        fn wrap(e: &Expr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            if matches!(
                e,
                Expr::Add(..) | Expr::Sub(..) | Expr::Mul(..) | Expr::Div(..)
            ) {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        }
        match self {
            Expr::Number(r) => write!(f, "{r}"),
            Expr::Var(v) => f.write_str(v.name()),
            Expr::Neg(a) => {
                f.write_str("-")?;
                wrap(a, f)
            }
            Expr::Add(a, b) => {
                wrap(a, f)?;
                f.write_str(" + ")?;
                wrap(b, f)
            }
            Expr::Sub(a, b) => {
                wrap(a, f)?;
                f.write_str(" - ")?;
                wrap(b, f)
            }
            Expr::Mul(a, b) => {
                wrap(a, f)?;
                f.write_str(" * ")?;
                wrap(b, f)
            }
            Expr::Div(a, b) => {
                wrap(a, f)?;
                write!(f, " / ({b})")
            }
        }
    }
}

/// Prints an expression in a form that parses back to the same tree.
pub fn print_expr(e: &Expr) -> String {
    e.to_string()
}

/// Evaluates against a full invariant profile.
pub fn eval_expr(e: &Expr, profile: &Profile) -> Result<Rat, EvalError> {
    eval_with(e, &|v| {
        Ok(match v {
            VarId::AvgDistance => profile.avg_distance.clone(),
            VarId::Proximity => profile.proximity.clone(),
            VarId::Remoteness => profile.remoteness.clone(),
            VarId::AvgEcc => profile.avg_ecc.clone(),
            VarId::Radius => Rat::from_int(i128::from(profile.radius)),
            VarId::Diameter => Rat::from_int(i128::from(profile.diameter)),
            VarId::N => Rat::from_int(profile.n as i128),
            VarId::M => Rat::from_int(profile.m as i128),
        })
    })
}

/// Evaluates a formula in the single variable `n` (used for bounds).
pub fn eval_in_n(e: &Expr, n: usize) -> Result<Rat, EvalError> {
    eval_with(e, &|v| match v {
        VarId::N => Ok(Rat::from_int(n as i128)),
        other => Err(EvalError::UnboundVariable(other.name())),
    })
}

fn eval_with(e: &Expr, lookup: &dyn Fn(VarId) -> Result<Rat, EvalError>) -> Result<Rat, EvalError> {
    Ok(match e {
        Expr::Number(r) => r.clone(),
        Expr::Var(v) => lookup(*v)?,
        Expr::Neg(a) => -eval_with(a, lookup)?,
        Expr::Add(a, b) => eval_with(a, lookup)? + eval_with(b, lookup)?,
        Expr::Sub(a, b) => eval_with(a, lookup)? - eval_with(b, lookup)?,
        Expr::Mul(a, b) => eval_with(a, lookup)? * eval_with(b, lookup)?,
        Expr::Div(a, b) => {
            let den = eval_with(b, lookup)?;
            if den.is_zero() {
                return Err(EvalError::DivisionByZero);
            }
            eval_with(a, lookup)? / den
        }
    })
}
