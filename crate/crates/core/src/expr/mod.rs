//! Text grammar for scalars and algebra elements: parse tree, printer,
//! parser and evaluation into the various algebras.

mod eval;
mod parse;

use std::fmt;

use num_bigint::BigInt;

pub use eval::{eval, eval_scalar, EvalError, EvalTarget, FreeTarget, FreeWordExpr, OreTarget, ScalarTarget};
pub use parse::{parse, ParseError};

/// Named scalar constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Constant {
    R,
    S,
    Xi,
    Eta,
    Zeta,
}

impl Constant {
    pub fn name(self) -> &'static str {
        match self {
            Constant::R => "r",
            Constant::S => "s",
            Constant::Xi => "xi",
            Constant::Eta => "eta",
            Constant::Zeta => "zeta",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "r" => Constant::R,
            "s" => Constant::S,
            "xi" => Constant::Xi,
            "eta" => Constant::Eta,
            "zeta" => Constant::Zeta,
            _ => return None,
        })
    }
}

/// Generator families: the Chevalley generators `e1, e2` and one letter per
/// tower level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    E,
    X,
    Y,
    Z,
    U,
    T,
}

impl Family {
    pub fn letter(self) -> &'static str {
        match self {
            Family::E => "e",
            Family::X => "X",
            Family::Y => "Y",
            Family::Z => "Z",
            Family::U => "U",
            Family::T => "T",
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        Some(match c {
            'e' => Family::E,
            'X' => Family::X,
            'Y' => Family::Y,
            'Z' => Family::Z,
            'U' => Family::U,
            'T' => Family::T,
            _ => return None,
        })
    }

    /// Tower level whose generators carry this name (`T` serves levels 3, 2, 1).
    pub fn level(self) -> usize {
        match self {
            Family::E | Family::X => 7,
            Family::Y => 6,
            Family::Z => 5,
            Family::U => 4,
            Family::T => 3,
        }
    }

    /// Family naming the generators of `level`.
    pub fn for_level(level: usize) -> Self {
        match level {
            7 => Family::X,
            6 => Family::Y,
            5 => Family::Z,
            4 => Family::U,
            _ => Family::T,
        }
    }
}

/// A generator symbol such as `X3` or `e2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenRef {
    pub family: Family,
    pub index: usize,
}

impl GenRef {
    pub fn new(family: Family, index: usize) -> Self {
        GenRef { family, index }
    }

    /// Parses identifiers of the form `<family letter><index>`.
    pub fn from_name(s: &str) -> Option<Self> {
        let mut chars = s.chars();
        let family = Family::from_letter(chars.next()?)?;
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.starts_with('0') {
            return None;
        }
        let index: usize = digits.parse().ok()?;
        Some(GenRef { family, index })
    }
}

impl fmt::Display for GenRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.index)
    }
}

/// Parse tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Nonnegative integer literal.
    Int(BigInt),
    Const(Constant),
    Gen(GenRef),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i64),
    /// Explicit parentheses from the source text.
    Group(Box<Expr>),
}

const PREC_SUM: u8 = 1;
const PREC_PRODUCT: u8 = 2;
const PREC_UNARY: u8 = 3;
const PREC_POWER: u8 = 4;
const PREC_ATOM: u8 = 5;

impl Expr {
    pub fn int(n: i64) -> Self {
        if n < 0 {
            Expr::Neg(Box::new(Expr::Int(BigInt::from(-n))))
        } else {
            Expr::Int(BigInt::from(n))
        }
    }

    pub fn gen(family: Family, index: usize) -> Self {
        Expr::Gen(GenRef::new(family, index))
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => PREC_SUM,
            Expr::Mul(..) | Expr::Div(..) => PREC_PRODUCT,
            Expr::Neg(_) => PREC_UNARY,
            Expr::Pow(..) => PREC_POWER,
            _ => PREC_ATOM,
        }
    }

    /// The same tree with every `Group` node removed.
    pub fn strip_groups(&self) -> Expr {
        let b = |e: &Expr| Box::new(e.strip_groups());
        match self {
            Expr::Group(e) => e.strip_groups(),
            Expr::Add(a, c) => Expr::Add(b(a), b(c)),
            Expr::Sub(a, c) => Expr::Sub(b(a), b(c)),
            Expr::Mul(a, c) => Expr::Mul(b(a), b(c)),
            Expr::Div(a, c) => Expr::Div(b(a), b(c)),
            Expr::Neg(a) => Expr::Neg(b(a)),
            Expr::Pow(a, k) => Expr::Pow(b(a), *k),
            leaf => leaf.clone(),
        }
    }

    /// Every generator symbol occurring in the tree.
    pub fn generators(&self) -> Vec<GenRef> {
        let mut out = Vec::new();
        self.collect_gens(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_gens(&self, out: &mut Vec<GenRef>) {
        match self {
            Expr::Gen(g) => out.push(*g),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_gens(out);
                b.collect_gens(out);
            }
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Group(a) => a.collect_gens(out),
            Expr::Int(_) | Expr::Const(_) => {}
        }
    }

    fn write_prec(&self, f: &mut fmt::Formatter<'_>, ctx: u8) -> fmt::Result {
        let own = self.prec();
        if own < ctx {
            f.write_str("(")?;
            self.write_prec(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Const(c) => f.write_str(c.name()),
            Expr::Gen(g) => write!(f, "{g}"),
            Expr::Add(a, b) => {
                a.write_prec(f, PREC_SUM)?;
                f.write_str(" + ")?;
                b.write_prec(f, PREC_PRODUCT)
            }
            Expr::Sub(a, b) => {
                a.write_prec(f, PREC_SUM)?;
                f.write_str(" - ")?;
                b.write_prec(f, PREC_PRODUCT)
            }
            Expr::Mul(a, b) => {
                a.write_prec(f, PREC_PRODUCT)?;
                f.write_str("*")?;
                b.write_prec(f, PREC_UNARY)
            }
            Expr::Div(a, b) => {
                a.write_prec(f, PREC_PRODUCT)?;
                f.write_str("/")?;
                b.write_prec(f, PREC_UNARY)
            }
            Expr::Neg(a) => {
                f.write_str("-")?;
                a.write_prec(f, PREC_UNARY)
            }
            Expr::Pow(a, k) => {
                a.write_prec(f, PREC_ATOM)?;
                write!(f, "^{k}")
            }
            Expr::Group(a) => {
                f.write_str("(")?;
                a.write_prec(f, 0)?;
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_prec(f, 0)
    }
}

#[cfg(test)]
mod tests;
