//! Recursive-descent parser for η-expressions.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor (("*" | "/")? factor)*
//! factor := "-" factor | atom ("^" uint)?
//! atom   := number | "i" | "e"digit | "η"digit | func "(" expr ")"
//!         | "(" expr ")" | "@"name
//! ```
//!
//! Numbers are decimals or `a/b` rationals written without spaces. Sums and
//! products are stored flat so long chains do not deepen the tree.

use std::fmt;

pub const MAX_DEPTH: usize = 64;
pub const MAX_VARS: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Exp,
    Log,
    Cos,
    Sin,
    Sqrt,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Cos => "cos",
            Func::Sin => "sin",
            Func::Sqrt => "sqrt",
        }
    }

    fn from_name(s: &str) -> Option<Func> {
        Some(match s {
            "exp" => Func::Exp,
            "log" => Func::Log,
            "cos" => Func::Cos,
            "sin" => Func::Sin,
            "sqrt" => Func::Sqrt,
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MulOp {
    Mul,
    Div,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Number(f64),
    Rational(u64, u64),
    Imag,
    Var(usize),
    /// `@name`, with family indices kept in the name (`phi_pm(13)`) and
    /// numeric parameters for the `Psi` representatives.
    State { name: String, params: Vec<Expr> },
    Call(Func, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
    /// The first sign is always `Plus`.
    Sum(Vec<(Sign, Expr)>),
    /// The first operator is always `Mul`.
    Product(Vec<(MulOp, Expr)>),
}

impl Expr {
    pub fn depth(&self) -> usize {
        1 + match self {
            Expr::Number(_) | Expr::Rational(..) | Expr::Imag | Expr::Var(_) => 0,
            Expr::State { params, .. } => params.iter().map(Expr::depth).max().unwrap_or(0),
            Expr::Call(_, e) | Expr::Neg(e) | Expr::Pow(e, _) => e.depth(),
            Expr::Sum(ts) => ts.iter().map(|(_, e)| e.depth()).max().unwrap_or(0),
            Expr::Product(fs) => fs.iter().map(|(_, e)| e.depth()).max().unwrap_or(0),
        }
    }

    /// Largest variable index mentioned directly (library states excluded).
    pub fn max_var(&self) -> usize {
        match self {
            Expr::Var(k) => *k,
            Expr::Number(_) | Expr::Rational(..) | Expr::Imag => 0,
            Expr::State { params, .. } => params.iter().map(Expr::max_var).max().unwrap_or(0),
            Expr::Call(_, e) | Expr::Neg(e) | Expr::Pow(e, _) => e.max_var(),
            Expr::Sum(ts) => ts.iter().map(|(_, e)| e.max_var()).max().unwrap_or(0),
            Expr::Product(fs) => fs.iter().map(|(_, e)| e.max_var()).max().unwrap_or(0),
        }
    }

    fn is_atomic(&self) -> bool {
        matches!(self, Expr::Number(_) | Expr::Rational(..) | Expr::Imag | Expr::Var(_) | Expr::State { .. } | Expr::Call(..))
    }
}

// Printing parenthesizes every compound child, so reparsing gives back the
// same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let child = |f: &mut fmt::Formatter<'_>, e: &Expr| {
            if e.is_atomic() {
                write!(f, "{e}")
            } else {
                write!(f, "({e})")
            }
        };
        match self {
            Expr::Number(x) => write!(f, "{x}"),
            Expr::Rational(a, b) => write!(f, "{a}/{b}"),
            Expr::Imag => write!(f, "i"),
            Expr::Var(k) => write!(f, "e{k}"),
            Expr::State { name, params } => {
                write!(f, "@{name}")?;
                if !params.is_empty() {
                    write!(f, "(")?;
                    for (k, p) in params.iter().enumerate() {
                        if k > 0 {
                            write!(f, ", ")?;
                        }
                        write!(f, "{p}")?;
                    }
                    write!(f, ")")?;
                }
                Ok(())
            }
            Expr::Call(func, e) => write!(f, "{}({e})", func.name()),
            Expr::Neg(e) => {
                write!(f, "-")?;
                child(f, e)
            }
            Expr::Pow(e, k) => {
                child(f, e)?;
                write!(f, "^{k}")
            }
            Expr::Sum(ts) => {
                for (k, (s, e)) in ts.iter().enumerate() {
                    if k > 0 {
                        write!(f, " {} ", if *s == Sign::Plus { '+' } else { '-' })?;
                    }
                    child(f, e)?;
                }
                Ok(())
            }
            Expr::Product(fs) => {
                for (k, (op, e)) in fs.iter().enumerate() {
                    if k > 0 {
                        // spaced so `1 / 2` does not reread as a rational literal
                        write!(f, "{}", if *op == MulOp::Mul { "*" } else { " / " })?;
                    }
                    child(f, e)?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Parses `src` for a context of `n` variables; `e_k` with `k > n` is an
/// error.
pub fn parse(src: &str, n: usize) -> Result<Expr, ParseError> {
    let mut p = Parser { chars: src.chars().collect(), pos: 0, n, depth: 0 };
    p.skip_ws();
    if p.pos == p.chars.len() {
        return Err(p.error("empty expression"));
    }
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error(&format!("unexpected '{}'", p.chars[p.pos])));
    }
    Ok(e)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    n: usize,
    depth: usize,
}

impl Parser {
    fn error_at(&self, pos: usize, msg: &str) -> ParseError {
        let mut line = 1;
        let mut col = 1;
        for &c in &self.chars[..pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        ParseError { line, col, message: msg.to_string() }
    }

    fn error(&self, msg: &str) -> ParseError {
        self.error_at(self.pos, msg)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, k: usize) -> Option<char> {
        self.chars.get(self.pos + k).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.peek().map_or("end of input".to_string(), |x| format!("'{x}'"));
            Err(self.error(&format!("expected '{c}', found {found}")))
        }
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.error(&format!("expression nested deeper than {MAX_DEPTH}")));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        self.enter()?;
        let mut terms = vec![(Sign::Plus, self.term()?)];
        loop {
            let sign = if self.eat('+') {
                Sign::Plus
            } else if self.eat('-') {
                Sign::Minus
            } else {
                break;
            };
            terms.push((sign, self.term()?));
        }
        self.depth -= 1;
        Ok(if terms.len() == 1 { terms.pop().expect("one term").1 } else { Expr::Sum(terms) })
    }

    fn starts_atom(&mut self) -> bool {
        self.skip_ws();
        match self.peek() {
            Some(c) => c.is_ascii_digit() || c == '.' || c == '(' || c == '@' || c == 'η' || c.is_ascii_alphabetic(),
            None => false,
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut factors = vec![(MulOp::Mul, self.factor()?)];
        loop {
            let op = if self.eat('*') {
                MulOp::Mul
            } else if self.eat('/') {
                MulOp::Div
            } else if self.starts_atom() {
                MulOp::Mul
            } else {
                break;
            };
            factors.push((op, self.factor()?));
        }
        Ok(if factors.len() == 1 { factors.pop().expect("one factor").1 } else { Expr::Product(factors) })
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            self.enter()?;
            let inner = self.factor()?;
            self.depth -= 1;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let digits: String = self.chars[start..self.pos].iter().collect();
            let k: u32 = digits.parse().map_err(|_| self.error_at(start, "exponent must be a nonnegative integer"))?;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let Some(c) = self.peek() else {
            return Err(self.error("unexpected end of input"));
        };
        if c.is_ascii_digit() || c == '.' {
            return self.number();
        }
        if c == '(' {
            self.pos += 1;
            let e = self.expr()?;
            self.expect(')')?;
            return Ok(e);
        }
        if c == '@' {
            self.pos += 1;
            return self.state(start);
        }
        if c == 'η' {
            self.pos += 1;
            return self.variable(start);
        }
        if c.is_ascii_alphabetic() {
            let mut end = self.pos;
            while self.chars.get(end).is_some_and(|x| x.is_ascii_alphabetic()) {
                end += 1;
            }
            let word: String = self.chars[self.pos..end].iter().collect();
            if let Some(func) = Func::from_name(&word) {
                self.pos = end;
                self.expect('(')?;
                self.enter()?;
                let arg = self.expr()?;
                self.depth -= 1;
                self.expect(')')?;
                return Ok(Expr::Call(func, Box::new(arg)));
            }
            if c == 'e' && self.peek_at(1).is_some_and(|x| x.is_ascii_digit()) {
                self.pos += 1;
                return self.variable(start);
            }
            if c == 'i' {
                self.pos += 1;
                return Ok(Expr::Imag);
            }
            return Err(self.error(&format!("unknown name '{word}'")));
        }
        Err(self.error(&format!("unexpected '{c}'")))
    }

    fn variable(&mut self, start: usize) -> Result<Expr, ParseError> {
        let d = self.peek().and_then(|c| c.to_digit(10));
        let Some(k) = d else {
            return Err(self.error("expected a variable index 1..9"));
        };
        self.pos += 1;
        let k = k as usize;
        if k == 0 || self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return Err(self.error_at(start, &format!("variable index must be a single digit 1..{MAX_VARS}")));
        }
        if k > self.n {
            return Err(self.error_at(start, &format!("undeclared variable e{k} (n = {})", self.n)));
        }
        Ok(Expr::Var(k))
    }

    fn number(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        let whole = self.digits();
        if self.peek() == Some('/') && !whole.is_empty() && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
            let den_start = self.pos;
            let den = self.digits();
            if self.peek() == Some('.') {
                return Err(self.error("rational literals take integer parts"));
            }
            let a: u64 = whole.parse().map_err(|_| self.error_at(start, "numerator too large"))?;
            let b: u64 = den.parse().map_err(|_| self.error_at(den_start, "denominator too large"))?;
            if b == 0 {
                return Err(self.error_at(den_start, "zero denominator"));
            }
            return Ok(Expr::Rational(a, b));
        }
        let mut text = whole;
        if self.peek() == Some('.') {
            self.pos += 1;
            text.push('.');
            text.push_str(&self.digits());
        }
        if text == "." {
            return Err(self.error_at(start, "malformed number"));
        }
        text.parse::<f64>().map(Expr::Number).map_err(|_| self.error_at(start, "malformed number"))
    }

    // Names: identifier characters, an optional trailing sign for the
    // signed families, then an optional parenthesized argument list.
    fn state(&mut self, start: usize) -> Result<Expr, ParseError> {
        let name_start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        let mut name: String = self.chars[name_start..self.pos].iter().collect();
        if name.is_empty() {
            return Err(self.error_at(start, "expected a state name after '@'"));
        }
        const SIGNED: [&str; 4] = ["ghz2", "w2", "phiTilde", "phiA"];
        if SIGNED.contains(&name.as_str()) {
            match self.peek() {
                Some(s @ ('+' | '-')) => {
                    self.pos += 1;
                    name.push(s);
                }
                _ => return Err(self.error(&format!("'{name}' needs a trailing + or -"))),
            }
        }
        if self.peek() == Some('(') {
            if name.starts_with("Psi") {
                self.pos += 1;
                let mut params = Vec::new();
                if !self.eat(')') {
                    loop {
                        self.enter()?;
                        params.push(self.expr()?);
                        self.depth -= 1;
                        if self.eat(')') {
                            break;
                        }
                        self.expect(',')?;
                    }
                }
                return Ok(Expr::State { name, params });
            }
            let close = self.chars[self.pos..].iter().position(|&c| c == ')').ok_or_else(|| self.error("unclosed '('"))?;
            let args: String = self.chars[self.pos..self.pos + close + 1].iter().filter(|c| !c.is_whitespace()).collect();
            self.pos += close + 1;
            name.push_str(&args);
        }
        Ok(Expr::State { name, params: Vec::new() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_flattening() {
        let e = parse("1 + 2*e1 - e2^2", 2).unwrap();
        match e {
            Expr::Sum(ts) => {
                assert_eq!(ts.len(), 3);
                assert_eq!(ts[2], (Sign::Minus, Expr::Pow(Box::new(Expr::Var(2)), 2)));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn implicit_multiplication() {
        assert_eq!(parse("2e1e2", 2).unwrap(), parse("2*e1*e2", 2).unwrap());
        assert_eq!(parse("η1 η2", 2).unwrap(), parse("e1*e2", 2).unwrap());
    }

    #[test]
    fn rationals_and_division() {
        assert_eq!(parse("1/2", 1).unwrap(), Expr::Rational(1, 2));
        assert!(matches!(parse("1 / 2", 1).unwrap(), Expr::Product(_)));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("1 +\n  e5", 4).unwrap_err();
        assert_eq!((e.line, e.col), (2, 3));
        assert!(parse("", 1).is_err());
        assert!(parse("(1 + e1", 1).is_err());
        assert!(parse("e12", 9).is_err());
        assert!(parse("foo(e1)", 1).is_err());
        let deep = format!("{}1{}", "(".repeat(70), ")".repeat(70));
        assert!(parse(&deep, 1).unwrap_err().message.contains("deeper"));
    }

    #[test]
    fn state_names() {
        assert_eq!(parse("@ghz4", 4).unwrap(), Expr::State { name: "ghz4".into(), params: vec![] });
        assert_eq!(parse("@phiA-(23, 4)", 4).unwrap(), Expr::State { name: "phiA-(23,4)".into(), params: vec![] });
        assert_eq!(parse("@ghz2+ + e1", 2).unwrap().to_string(), "@ghz2+ + e1");
        match parse("@Psi1(1, i, 0, 1/2)", 4).unwrap() {
            Expr::State { params, .. } => assert_eq!(params.len(), 4),
            other => panic!("{other:?}"),
        }
    }
}
