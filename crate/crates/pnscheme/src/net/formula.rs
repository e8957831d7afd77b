use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::NetError;

/// MELL formula. Text syntax: atoms `X`, negation `~`, `*` for tensor, `|` for par,
/// `!`, `?`, parentheses; `*` binds tighter than `|`, both associate to the left.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom { name: String, positive: bool },
    Tensor(Box<Formula>, Box<Formula>),
    Par(Box<Formula>, Box<Formula>),
    Neg(Box<Formula>),
    Bang(Box<Formula>),
    Quest(Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Self {
        Formula::Atom { name: name.to_string(), positive: true }
    }

    pub fn neg_atom(name: &str) -> Self {
        Formula::Atom { name: name.to_string(), positive: false }
    }

    pub fn tensor(a: Formula, b: Formula) -> Self {
        Formula::Tensor(Box::new(a), Box::new(b))
    }

    pub fn par(a: Formula, b: Formula) -> Self {
        Formula::Par(Box::new(a), Box::new(b))
    }

    pub fn bang(a: Formula) -> Self {
        Formula::Bang(Box::new(a))
    }

    pub fn quest(a: Formula) -> Self {
        Formula::Quest(Box::new(a))
    }

    /// Modal nesting depth; negation is transparent.
    pub fn depth(&self) -> u32 {
        match self {
            Formula::Atom { .. } => 0,
            Formula::Neg(a) => a.depth(),
            Formula::Tensor(a, b) | Formula::Par(a, b) => a.depth().max(b.depth()),
            Formula::Bang(a) | Formula::Quest(a) => a.depth() + 1,
        }
    }

    pub fn is_linear(&self) -> bool {
        self.depth() == 0
    }

    pub fn is_shallow(&self) -> bool {
        self.depth() <= 1
    }

    /// Negation normal form. De Morgan reverses the order of binary connectives,
    /// so `~(A * B)` is `~B | ~A` and a formula's atoms are mirrored by its dual.
    pub fn nnf(&self) -> Formula {
        self.nnf_with(true)
    }

    fn nnf_with(&self, pos: bool) -> Formula {
        match (self, pos) {
            (Formula::Atom { name, positive }, _) => Formula::Atom { name: name.clone(), positive: *positive == pos },
            (Formula::Neg(a), _) => a.nnf_with(!pos),
            (Formula::Tensor(a, b), true) => Formula::tensor(a.nnf_with(true), b.nnf_with(true)),
            (Formula::Par(a, b), true) => Formula::par(a.nnf_with(true), b.nnf_with(true)),
            (Formula::Tensor(a, b), false) => Formula::par(b.nnf_with(false), a.nnf_with(false)),
            (Formula::Par(a, b), false) => Formula::tensor(b.nnf_with(false), a.nnf_with(false)),
            (Formula::Bang(a), true) => Formula::bang(a.nnf_with(true)),
            (Formula::Quest(a), true) => Formula::quest(a.nnf_with(true)),
            (Formula::Bang(a), false) => Formula::quest(a.nnf_with(false)),
            (Formula::Quest(a), false) => Formula::bang(a.nnf_with(false)),
        }
    }

    /// The linear negation, in negation normal form.
    pub fn dual(&self) -> Formula {
        self.nnf_with(false)
    }

    /// Atom occurrences from left to right as `(name, positive)`; negations are resolved.
    pub fn atoms(&self) -> Vec<(String, bool)> {
        let mut out = Vec::new();
        self.nnf().collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut Vec<(String, bool)>) {
        match self {
            Formula::Atom { name, positive } => out.push((name.clone(), *positive)),
            Formula::Neg(a) | Formula::Bang(a) | Formula::Quest(a) => a.collect_atoms(out),
            Formula::Tensor(a, b) | Formula::Par(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    pub fn atom_count(&self) -> usize {
        match self {
            Formula::Atom { .. } => 1,
            Formula::Neg(a) | Formula::Bang(a) | Formula::Quest(a) => a.atom_count(),
            Formula::Tensor(a, b) | Formula::Par(a, b) => a.atom_count() + b.atom_count(),
        }
    }

    /// Connective count plus atoms; used as a cut-size measure.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom { .. } => 1,
            Formula::Neg(a) | Formula::Bang(a) | Formula::Quest(a) => 1 + a.size(),
            Formula::Tensor(a, b) | Formula::Par(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn is_exponential(&self) -> bool {
        matches!(self, Formula::Bang(_) | Formula::Quest(_))
    }

    /// Body of `!A` or `?A`.
    pub fn modal_body(&self) -> Option<&Formula> {
        match self {
            Formula::Bang(a) | Formula::Quest(a) => Some(a),
            _ => None,
        }
    }

    pub fn parse(s: &str) -> Result<Formula, NetError> {
        let mut p = Parser { s: s.as_bytes(), pos: 0 };
        let f = p.par_level()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(f)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> NetError {
        NetError::FormulaSyntax(format!("{msg} at column {} in `{}`", self.pos + 1, String::from_utf8_lossy(self.s)))
    }

    fn par_level(&mut self) -> Result<Formula, NetError> {
        let mut f = self.tensor_level()?;
        while self.peek() == Some(b'|') {
            self.pos += 1;
            f = Formula::par(f, self.tensor_level()?);
        }
        Ok(f)
    }

    fn tensor_level(&mut self) -> Result<Formula, NetError> {
        let mut f = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            f = Formula::tensor(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula, NetError> {
        match self.peek() {
            Some(b'~') => {
                self.pos += 1;
                Ok(Formula::Neg(Box::new(self.unary()?)))
            }
            Some(b'!') => {
                self.pos += 1;
                Ok(Formula::bang(self.unary()?))
            }
            Some(b'?') => {
                self.pos += 1;
                Ok(Formula::quest(self.unary()?))
            }
            Some(b'(') => {
                self.pos += 1;
                let f = self.par_level()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(f)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
                    self.pos += 1;
                }
                Ok(Formula::atom(std::str::from_utf8(&self.s[start..self.pos]).unwrap()))
            }
            _ => Err(self.err("expected a formula")),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn wrapped(x: &Formula, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match x {
                Formula::Tensor(..) | Formula::Par(..) => write!(f, "({x})"),
                _ => write!(f, "{x}"),
            }
        }
        match self {
            Formula::Atom { name, positive: true } => write!(f, "{name}"),
            Formula::Atom { name, positive: false } => write!(f, "~{name}"),
            Formula::Tensor(a, b) => {
                wrapped(a, f)?;
                write!(f, " * ")?;
                wrapped(b, f)
            }
            Formula::Par(a, b) => {
                wrapped(a, f)?;
                write!(f, " | ")?;
                wrapped(b, f)
            }
            Formula::Neg(a) => {
                write!(f, "~")?;
                wrapped(a, f)
            }
            Formula::Bang(a) => {
                write!(f, "!")?;
                wrapped(a, f)
            }
            Formula::Quest(a) => {
                write!(f, "?")?;
                wrapped(a, f)
            }
        }
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Formula::parse(&s).map(|f| f.nnf()).map_err(serde::de::Error::custom)
    }
}
