//! Expression language over blades, duality operations and metric products.
//!
//! Precedence, tightest first: unary (`-`, `rev`, `inv`, `g`, `ginv`,
//! `pair`), `^`, `_|` / `|_`, `.`, `*`, `+` / `-`. Every binary operator is
//! left-associative. Unicode `∧`, `⌟`, `⌞`, `·` and `−` are accepted as
//! aliases.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := dot ('*' dot)*
//! dot   := contr ('.' contr)*
//! contr := wedge (('_|' | '|_') wedge)*
//! wedge := unary ('^' unary)*
//! unary := atom | '-' unary | ('rev' | 'inv' | 'g' | 'ginv') '(' expr ')'
//!        | 'pair' '(' expr ',' expr ')' | '(' expr ')'
//! atom  := NUMBER | 'e' DIGITS | 'd' DIGITS | 'I' | 'J'
//! ```
//!
//! `e<k>` is the basis vector `e_k`, `d<k>` the dual basis form `ε^k`, `I`
//! the pseudoscalar `e_∧` and `J` the dual pseudoscalar `ε^∧`.

use std::fmt;

use thiserror::Error;

/// Nesting deeper than this is rejected instead of risking the stack.
pub const MAX_DEPTH: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Dot,
    LeftContract,
    RightContract,
    Wedge,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Dot => ".",
            BinOp::LeftContract => "_|",
            BinOp::RightContract => "|_",
            BinOp::Wedge => "^",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnOp {
    Neg,
    Rev,
    Inv,
    G,
    GInv,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    /// `e_k`, 1-based.
    Basis(usize),
    /// `ε^k`, 1-based.
    Dual(usize),
    /// `e_∧`.
    PseudoI,
    /// `ε^∧`.
    PseudoJ,
    Unary(UnOp, Box<Expr>),
    Pair(Box<Expr>, Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {column}: {message}")]
pub struct ParseError {
    /// 1-based, in characters.
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    LParen,
    RParen,
    Comma,
    Op(BinOp),
    Minus,
    End,
}

struct Token {
    tok: Tok,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |column: usize, message: String| ParseError { column, message };
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '+' => Some(Tok::Op(BinOp::Add)),
            '-' | '−' => Some(Tok::Minus),
            '*' => Some(Tok::Op(BinOp::Mul)),
            '.' | '·' => Some(Tok::Op(BinOp::Dot)),
            '^' | '∧' => Some(Tok::Op(BinOp::Wedge)),
            '⌟' => Some(Tok::Op(BinOp::LeftContract)),
            '⌞' => Some(Tok::Op(BinOp::RightContract)),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token { tok, column });
            i += 1;
            continue;
        }
        match c {
            c if c.is_whitespace() => i += 1,
            '_' | '|' => {
                let (want, op) = if c == '_' {
                    ('|', BinOp::LeftContract)
                } else {
                    ('_', BinOp::RightContract)
                };
                if chars.get(i + 1) != Some(&want) {
                    return Err(err(column, format!("expected `{c}{want}`")));
                }
                out.push(Token {
                    tok: Tok::Op(op),
                    column,
                });
                i += 2;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i < chars.len() && chars[i] == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()) {
                    i += 1;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i < chars.len() && matches!(chars[i], 'e' | 'E') {
                    let mut j = i + 1;
                    if j < chars.len() && matches!(chars[j], '+' | '-') {
                        j += 1;
                    }
                    if j < chars.len() && chars[j].is_ascii_digit() {
                        while j < chars.len() && chars[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let literal: String = chars[start..i].iter().collect();
                let value: f64 = literal
                    .parse()
                    .map_err(|_| err(column, format!("bad number `{literal}`")))?;
                if !value.is_finite() {
                    return Err(err(column, format!("number `{literal}` overflows")));
                }
                out.push(Token {
                    tok: Tok::Num(value),
                    column,
                });
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Ident(chars[start..i].iter().collect()),
                    column,
                });
            }
            other => return Err(err(column, format!("unexpected character `{other}`"))),
        }
    }
    out.push(Token {
        tok: Tok::End,
        column: chars.len() + 1,
    });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn column(&self) -> usize {
        self.tokens[self.pos].column
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            column: self.column(),
            message: message.into(),
        })
    }

    fn bump(&mut self) -> Tok {
        let tok = self.tokens[self.pos].tok.clone();
        if tok != Tok::End {
            self.pos += 1;
        }
        tok
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {what}, found {}", describe(self.peek())))
        }
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return self.error(format!("expression nested deeper than {MAX_DEPTH}"));
        }
        Ok(())
    }

    fn binary_level(
        &mut self,
        ops: &[BinOp],
        next: fn(&mut Self) -> Result<Expr, ParseError>,
    ) -> Result<Expr, ParseError> {
        let mut lhs = next(self)?;
        // Each link of a chain deepens the left spine, so it counts against
        // the depth budget like a nesting level.
        let entry_depth = self.depth;
        let result = loop {
            let op = match self.peek() {
                Tok::Op(op) if ops.contains(op) => *op,
                Tok::Minus if ops.contains(&BinOp::Sub) => BinOp::Sub,
                _ => break Ok(lhs),
            };
            self.bump();
            if let Err(e) = self.enter() {
                break Err(e);
            }
            match next(self) {
                Ok(rhs) => lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs)),
                Err(e) => break Err(e),
            }
        };
        self.depth = entry_depth;
        result
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        self.enter()?;
        let e = self.binary_level(&[BinOp::Add, BinOp::Sub], Self::term);
        self.depth -= 1;
        e
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        self.binary_level(&[BinOp::Mul], Self::dot)
    }

    fn dot(&mut self) -> Result<Expr, ParseError> {
        self.binary_level(&[BinOp::Dot], Self::contr)
    }

    fn contr(&mut self) -> Result<Expr, ParseError> {
        self.binary_level(&[BinOp::LeftContract, BinOp::RightContract], Self::wedge)
    }

    fn wedge(&mut self) -> Result<Expr, ParseError> {
        self.binary_level(&[BinOp::Wedge], Self::unary)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        self.enter()?;
        let e = self.unary_inner();
        self.depth -= 1;
        e
    }

    fn unary_inner(&mut self) -> Result<Expr, ParseError> {
        let column = self.column();
        match self.bump() {
            Tok::Num(v) => Ok(Expr::Num(v)),
            Tok::Minus => Ok(Expr::Unary(UnOp::Neg, Box::new(self.unary()?))),
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Tok::Ident(name) => self.ident(&name, column),
            other => Err(ParseError {
                column,
                message: format!("expected an operand, found {}", describe(&other)),
            }),
        }
    }

    fn ident(&mut self, name: &str, column: usize) -> Result<Expr, ParseError> {
        let call = |p: &mut Self, op: UnOp| -> Result<Expr, ParseError> {
            p.expect(Tok::LParen, &format!("`(` after `{name}`"))?;
            let arg = p.expr()?;
            p.expect(Tok::RParen, "`)`")?;
            Ok(Expr::Unary(op, Box::new(arg)))
        };
        match name {
            "I" => Ok(Expr::PseudoI),
            "J" => Ok(Expr::PseudoJ),
            "rev" => call(self, UnOp::Rev),
            "inv" => call(self, UnOp::Inv),
            "g" => call(self, UnOp::G),
            "ginv" => call(self, UnOp::GInv),
            "pair" => {
                self.expect(Tok::LParen, "`(` after `pair`")?;
                let a = self.expr()?;
                self.expect(Tok::Comma, "`,` between the arguments of `pair`")?;
                let b = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Expr::Pair(Box::new(a), Box::new(b)))
            }
            _ => {
                let (head, digits) = name.split_at(1);
                let index = (!digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()))
                    .then(|| digits.parse::<usize>().ok())
                    .flatten()
                    .filter(|&k| k >= 1);
                match (head, index) {
                    ("e", Some(k)) => Ok(Expr::Basis(k)),
                    ("d", Some(k)) => Ok(Expr::Dual(k)),
                    _ => Err(ParseError {
                        column,
                        message: format!("unknown name `{name}`"),
                    }),
                }
            }
        }
    }
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Num(v) => format!("number `{v}`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Op(op) => format!("`{}`", op.symbol()),
        Tok::Minus => "`-`".into(),
        Tok::End => "end of input".into(),
    }
}

pub fn parse_expression(text: &str) -> Result<Expr, ParseError> {
    let mut parser = Parser {
        tokens: lex(text)?,
        pos: 0,
        depth: 0,
    };
    let e = parser.expr()?;
    if *parser.peek() != Tok::End {
        return parser.error(format!("unexpected {}", describe(parser.peek())));
    }
    Ok(e)
}

/// Fully parenthesized rendering that parses back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => write!(f, "{v:?}"),
            Expr::Basis(k) => write!(f, "e{k}"),
            Expr::Dual(k) => write!(f, "d{k}"),
            Expr::PseudoI => write!(f, "I"),
            Expr::PseudoJ => write!(f, "J"),
            Expr::Unary(UnOp::Neg, e) => write!(f, "-({e})"),
            Expr::Unary(op, e) => {
                let name = match op {
                    UnOp::Rev => "rev",
                    UnOp::Inv => "inv",
                    UnOp::G => "g",
                    UnOp::GInv => "ginv",
                    UnOp::Neg => unreachable!(),
                };
                write!(f, "{name}({e})")
            }
            Expr::Pair(a, b) => write!(f, "pair({a}, {b})"),
            Expr::Binary(op, a, b) => write!(f, "({a} {} {b})", op.symbol()),
        }
    }
}

/// Static kind of an expression. `Scalar` fits wherever either kind does.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExprKind {
    Scalar,
    Vector,
    Form,
}

impl fmt::Display for ExprKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExprKind::Scalar => "scalar",
            ExprKind::Vector => "multivector",
            ExprKind::Form => "multiform",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KindError {
    #[error("index {index} out of range for dimension {dim} in `{name}`")]
    IndexOutOfRange {
        name: String,
        index: usize,
        dim: usize,
    },
    #[error("{rule}: got {left} and {right} in `{expr}`")]
    Mismatch {
        rule: &'static str,
        left: ExprKind,
        right: ExprKind,
        expr: String,
    },
    #[error("{rule}: got {found} in `{expr}`")]
    Operand {
        rule: &'static str,
        found: ExprKind,
        expr: String,
    },
}

/// Kind discipline: `.` needs one kind on both sides; `pair` needs a form
/// and a vector; `_|`, `|_` are duality contractions across kinds and metric
/// products within a kind; `*` needs a scalar operand; `g` takes vectors and
/// `ginv` takes forms.
pub fn check_kinds(expr: &Expr, dim: usize) -> Result<ExprKind, KindError> {
    use ExprKind::*;
    Ok(match expr {
        Expr::Num(_) => Scalar,
        Expr::Basis(k) | Expr::Dual(k) => {
            if *k > dim {
                return Err(KindError::IndexOutOfRange {
                    name: expr.to_string(),
                    index: *k,
                    dim,
                });
            }
            if matches!(expr, Expr::Basis(_)) {
                Vector
            } else {
                Form
            }
        }
        Expr::PseudoI => Vector,
        Expr::PseudoJ => Form,
        Expr::Unary(op, inner) => {
            let k = check_kinds(inner, dim)?;
            match (op, k) {
                (UnOp::Neg | UnOp::Rev | UnOp::Inv, k) => k,
                (UnOp::G, Scalar) | (UnOp::GInv, Scalar) => Scalar,
                (UnOp::G, Vector) => Form,
                (UnOp::GInv, Form) => Vector,
                (UnOp::G, found) => {
                    return Err(KindError::Operand {
                        rule: "g() maps multivectors to multiforms",
                        found,
                        expr: expr.to_string(),
                    })
                }
                (UnOp::GInv, found) => {
                    return Err(KindError::Operand {
                        rule: "ginv() maps multiforms to multivectors",
                        found,
                        expr: expr.to_string(),
                    })
                }
            }
        }
        Expr::Pair(a, b) => {
            let (ka, kb) = (check_kinds(a, dim)?, check_kinds(b, dim)?);
            match (ka, kb) {
                (Vector, Vector) | (Form, Form) => {
                    return Err(KindError::Mismatch {
                        rule: "pair needs one multiform and one multivector",
                        left: ka,
                        right: kb,
                        expr: expr.to_string(),
                    })
                }
                _ => Scalar,
            }
        }
        Expr::Binary(op, a, b) => {
            let (ka, kb) = (check_kinds(a, dim)?, check_kinds(b, dim)?);
            let mismatch = |rule| KindError::Mismatch {
                rule,
                left: ka,
                right: kb,
                expr: expr.to_string(),
            };
            match op {
                BinOp::Add | BinOp::Sub | BinOp::Wedge => match (ka, kb) {
                    (Scalar, k) | (k, Scalar) => k,
                    (x, y) if x == y => x,
                    _ => {
                        return Err(mismatch(if *op == BinOp::Wedge {
                            "exterior product needs operands of the same kind"
                        } else {
                            "sums need operands of the same kind"
                        }))
                    }
                },
                BinOp::Mul => match (ka, kb) {
                    (Scalar, k) | (k, Scalar) => k,
                    _ => return Err(mismatch("`*` needs a scalar operand")),
                },
                BinOp::Dot => match (ka, kb) {
                    (Vector, Form) | (Form, Vector) => {
                        return Err(mismatch(
                            "scalar product is a metric product and needs operands of the same kind (use pair for mixed kinds)",
                        ))
                    }
                    _ => Scalar,
                },
                // Mixed kinds: duality contraction, result has the kind of
                // the contracted (second for _|, first for |_) operand.
                BinOp::LeftContract => match (ka, kb) {
                    (_, Scalar) => ka,
                    (_, k) => k,
                },
                BinOp::RightContract => match (ka, kb) {
                    (Scalar, _) => kb,
                    (k, _) => k,
                },
            }
        }
    })
}
