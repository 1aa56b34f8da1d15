//! Integer expressions over named parameters.
//!
//! Ledger templates describe exponents, group orders and domain constraints
//! with small arithmetic expressions such as `p*q/2`, `invmod(i, p)` or
//! `q % 2 == 0 && powmod(i, q/2, p) == 1`. Booleans are integers (0 or 1).
//! Division is exact: `7/2` is an error, not `3`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Parameter bindings used when evaluating templates.
pub type Params = BTreeMap<String, i64>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Var(String),
    Neg(Box<Expr>),
    Not(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(String, Vec<Expr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Or,
    And,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    Add,
    Sub,
    Mul,
    Div,
    Rem,
    Pow,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Or => "||",
            BinOp::And => "&&",
            BinOp::Eq => "==",
            BinOp::Ne => "!=",
            BinOp::Lt => "<",
            BinOp::Le => "<=",
            BinOp::Gt => ">",
            BinOp::Ge => ">=",
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Rem => "%",
            BinOp::Pow => "^",
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(v) => write!(f, "{v}"),
            Expr::Var(name) => write!(f, "{name}"),
            Expr::Neg(e) => write!(f, "-({e})"),
            Expr::Not(e) => write!(f, "!({e})"),
            Expr::Bin(op, a, b) => write!(f, "({a} {} {b})", op.symbol()),
            Expr::Call(name, args) => {
                write!(f, "{name}(")?;
                for (idx, arg) in args.iter().enumerate() {
                    if idx > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{arg}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Character cursor shared by the small recursive-descent parsers in this crate.
#[derive(Debug, Clone)]
pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub(crate) fn pos(&self) -> usize {
        self.pos
    }

    pub(crate) fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub(crate) fn skip_ws(&mut self) {
        while let Some(c) = self.rest().chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    pub(crate) fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    /// Peek without skipping whitespace first.
    pub(crate) fn peek_raw(&self) -> Option<char> {
        self.rest().chars().next()
    }

    pub(crate) fn bump(&mut self) -> Option<char> {
        let c = self.rest().chars().next()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    pub(crate) fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(Error::syntax(self.pos, format!("expected `{token}`")))
        }
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.src.len()
    }

    pub(crate) fn unsigned(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek_raw(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::syntax(start, "expected an integer"));
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| Error::syntax(start, "integer out of range"))
    }

    pub(crate) fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        let mut first = true;
        while let Some(c) = self.peek_raw() {
            let ok = if first {
                c.is_alphabetic() || c == '_'
            } else {
                c.is_alphanumeric() || c == '_' || c == '\''
            };
            if !ok {
                break;
            }
            first = false;
            self.pos += c.len_utf8();
        }
        (start != self.pos).then(|| self.src[start..self.pos].to_string())
    }
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr> {
        let mut cur = Cursor::new(src);
        let expr = parse_expr(&mut cur)?;
        if !cur.at_end() {
            return Err(Error::syntax(cur.pos(), "trailing input in expression"));
        }
        Ok(expr)
    }

    pub fn eval(&self, params: &Params) -> Result<i64> {
        match self {
            Expr::Int(v) => Ok(*v),
            Expr::Var(name) => params
                .get(name)
                .copied()
                .ok_or_else(|| Error::Expr(format!("unbound parameter `{name}`"))),
            Expr::Neg(e) => e.eval(params)?.checked_neg().ok_or_else(overflow),
            Expr::Not(e) => Ok((e.eval(params)? == 0) as i64),
            Expr::Bin(op, a, b) => {
                let x = a.eval(params)?;
                // short-circuit so guards like `q % 2 == 0 && q/2 > 1` are safe
                match op {
                    BinOp::And if x == 0 => return Ok(0),
                    BinOp::Or if x != 0 => return Ok(1),
                    _ => {}
                }
                let y = b.eval(params)?;
                binary(*op, x, y)
            }
            Expr::Call(name, args) => {
                let vals = args
                    .iter()
                    .map(|a| a.eval(params))
                    .collect::<Result<Vec<_>>>()?;
                call(name, &vals)
            }
        }
    }
}

/// Parse and evaluate in one step.
pub fn eval_str(src: &str, params: &Params) -> Result<i64> {
    Expr::parse(src)?.eval(params)
}

pub(crate) fn parse_expr(cur: &mut Cursor<'_>) -> Result<Expr> {
    parse_or(cur)
}

fn parse_or(cur: &mut Cursor<'_>) -> Result<Expr> {
    let mut lhs = parse_and(cur)?;
    while cur.eat("||") {
        let rhs = parse_and(cur)?;
        lhs = Expr::Bin(BinOp::Or, Box::new(lhs), Box::new(rhs));
    }
    Ok(lhs)
}

fn parse_and(cur: &mut Cursor<'_>) -> Result<Expr> {
    let mut lhs = parse_cmp(cur)?;
    while cur.eat("&&") {
        let rhs = parse_cmp(cur)?;
        lhs = Expr::Bin(BinOp::And, Box::new(lhs), Box::new(rhs));
    }
    Ok(lhs)
}

fn parse_cmp(cur: &mut Cursor<'_>) -> Result<Expr> {
    let lhs = parse_sum(cur)?;
    let op = if cur.eat("==") {
        BinOp::Eq
    } else if cur.eat("!=") {
        BinOp::Ne
    } else if cur.eat("<=") {
        BinOp::Le
    } else if cur.eat(">=") {
        BinOp::Ge
    } else if cur.eat("<") {
        BinOp::Lt
    } else if cur.eat(">") {
        BinOp::Gt
    } else {
        return Ok(lhs);
    };
    let rhs = parse_sum(cur)?;
    Ok(Expr::Bin(op, Box::new(lhs), Box::new(rhs)))
}

fn parse_sum(cur: &mut Cursor<'_>) -> Result<Expr> {
    let mut lhs = parse_product(cur)?;
    loop {
        let op = if cur.eat("+") {
            BinOp::Add
        } else if cur.eat("-") {
            BinOp::Sub
        } else {
            return Ok(lhs);
        };
        let rhs = parse_product(cur)?;
        lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
    }
}

fn parse_product(cur: &mut Cursor<'_>) -> Result<Expr> {
    let mut lhs = parse_unary(cur)?;
    loop {
        let op = if cur.eat("*") {
            BinOp::Mul
        } else if cur.eat("/") {
            BinOp::Div
        } else if cur.eat("%") {
            BinOp::Rem
        } else {
            return Ok(lhs);
        };
        let rhs = parse_unary(cur)?;
        lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
    }
}

fn parse_unary(cur: &mut Cursor<'_>) -> Result<Expr> {
    if cur.eat("-") {
        return Ok(Expr::Neg(Box::new(parse_unary(cur)?)));
    }
    if cur.peek() == Some('!') && !cur.rest().starts_with("!=") {
        cur.bump();
        return Ok(Expr::Not(Box::new(parse_unary(cur)?)));
    }
    parse_power(cur)
}

fn parse_power(cur: &mut Cursor<'_>) -> Result<Expr> {
    let base = parse_primary(cur)?;
    if cur.eat("^") {
        let exp = parse_unary(cur)?;
        return Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(exp)));
    }
    Ok(base)
}

fn parse_primary(cur: &mut Cursor<'_>) -> Result<Expr> {
    match cur.peek() {
        Some(c) if c.is_ascii_digit() => Ok(Expr::Int(cur.unsigned()? as i64)),
        Some('(') => {
            cur.bump();
            let e = parse_expr(cur)?;
            cur.expect(")")?;
            Ok(e)
        }
        Some('{') => {
            cur.bump();
            let e = parse_expr(cur)?;
            cur.expect("}")?;
            Ok(e)
        }
        _ => {
            let pos = cur.pos();
            let name = cur
                .ident()
                .ok_or_else(|| Error::syntax(pos, "expected a number, name or `(`"))?;
            if cur.peek() == Some('(') {
                cur.bump();
                let mut args = Vec::new();
                if !cur.eat(")") {
                    loop {
                        args.push(parse_expr(cur)?);
                        if cur.eat(")") {
                            break;
                        }
                        cur.expect(",")?;
                    }
                }
                Ok(Expr::Call(name, args))
            } else {
                Ok(Expr::Var(name))
            }
        }
    }
}

fn overflow() -> Error {
    Error::Expr("integer overflow".into())
}

fn binary(op: BinOp, x: i64, y: i64) -> Result<i64> {
    Ok(match op {
        BinOp::Or => (x != 0 || y != 0) as i64,
        BinOp::And => (x != 0 && y != 0) as i64,
        BinOp::Eq => (x == y) as i64,
        BinOp::Ne => (x != y) as i64,
        BinOp::Lt => (x < y) as i64,
        BinOp::Le => (x <= y) as i64,
        BinOp::Gt => (x > y) as i64,
        BinOp::Ge => (x >= y) as i64,
        BinOp::Add => x.checked_add(y).ok_or_else(overflow)?,
        BinOp::Sub => x.checked_sub(y).ok_or_else(overflow)?,
        BinOp::Mul => x.checked_mul(y).ok_or_else(overflow)?,
        BinOp::Div => {
            if y == 0 || x % y != 0 {
                return Err(Error::Expr(format!("{x}/{y} is not an exact division")));
            }
            x / y
        }
        BinOp::Rem => {
            if y == 0 {
                return Err(Error::Expr("remainder by zero".into()));
            }
            x.rem_euclid(y)
        }
        BinOp::Pow => {
            let e = u32::try_from(y)
                .map_err(|_| Error::Expr(format!("negative exponent {y} in integer power")))?;
            x.checked_pow(e).ok_or_else(overflow)?
        }
    })
}

fn arity(name: &str, vals: &[i64], n: usize) -> Result<()> {
    if vals.len() != n {
        return Err(Error::Expr(format!(
            "`{name}` takes {n} arguments, got {}",
            vals.len()
        )));
    }
    Ok(())
}

fn call(name: &str, vals: &[i64]) -> Result<i64> {
    match name {
        "gcd" => {
            arity(name, vals, 2)?;
            Ok(gcd(vals[0], vals[1]))
        }
        "mod" => {
            arity(name, vals, 2)?;
            binary(BinOp::Rem, vals[0], vals[1])
        }
        "abs" => {
            arity(name, vals, 1)?;
            vals[0].checked_abs().ok_or_else(overflow)
        }
        "min" | "max" => {
            arity(name, vals, 2)?;
            Ok(if name == "min" {
                vals[0].min(vals[1])
            } else {
                vals[0].max(vals[1])
            })
        }
        "powmod" => {
            arity(name, vals, 3)?;
            powmod(vals[0], vals[1], vals[2])
        }
        "invmod" => {
            arity(name, vals, 2)?;
            divmod(1, vals[0], vals[1])
        }
        "divmod" => {
            arity(name, vals, 3)?;
            divmod(vals[0], vals[1], vals[2])
        }
        "unit_root" => {
            arity(name, vals, 2)?;
            unit_root(vals[0], vals[1])
        }
        "is_prime" => {
            arity(name, vals, 1)?;
            Ok(is_prime(vals[0]) as i64)
        }
        _ => Err(Error::Expr(format!("unknown function `{name}`"))),
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn powmod(base: i64, exp: i64, m: i64) -> Result<i64> {
    if m <= 0 {
        return Err(Error::Expr(format!("modulus {m} is not positive")));
    }
    if exp < 0 {
        let inv = divmod(1, base, m)?;
        return powmod(inv, -exp, m);
    }
    let m128 = m as i128;
    let mut acc: i128 = 1 % m128;
    let mut b = (base as i128).rem_euclid(m128);
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        e >>= 1;
    }
    Ok(acc as i64)
}

/// Least `s` in `0..m` with `b*s ≡ a (mod m)`.
pub fn divmod(a: i64, b: i64, m: i64) -> Result<i64> {
    if m <= 0 {
        return Err(Error::Expr(format!("modulus {m} is not positive")));
    }
    let (a, b) = (a.rem_euclid(m), b.rem_euclid(m));
    (0..m)
        .find(|s| (b as i128 * *s as i128 - a as i128).rem_euclid(m as i128) == 0)
        .ok_or_else(|| Error::Expr(format!("no solution of {b}*s = {a} mod {m}")))
}

/// Least residue of multiplicative order exactly `n` modulo `p`.
pub fn unit_root(n: i64, p: i64) -> Result<i64> {
    if n <= 0 || p <= 1 {
        return Err(Error::Expr(format!("unit_root({n}, {p}) is undefined")));
    }
    for x in 1..p {
        if gcd(x, p) != 1 {
            continue;
        }
        let mut order = 1;
        let mut acc = x % p;
        while acc != 1 {
            acc = acc * x % p;
            order += 1;
        }
        if order == n {
            return Ok(x);
        }
    }
    Err(Error::Expr(format!("no unit of order {n} modulo {p}")))
}
