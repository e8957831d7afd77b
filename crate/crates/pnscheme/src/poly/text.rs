//! Text form: `coef*var^e*var` terms joined by `+`/`-`; primed variables are written `a'`.
//! Ideal files hold one generator per line; `#` starts a comment, and a
//! `# vars: a b c` line fixes the variable order (otherwise first appearance wins).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, MonomialOrder};
use super::poly::{Ideal, Polynomial, Ring};
use super::PolyError;

type RawTerm = (BigRational, Vec<(String, u32)>);

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '.'
}

/// Checks that `s` is usable as a variable name in the text form.
pub fn is_valid_variable(s: &str) -> bool {
    let base = s.trim_end_matches('\'');
    let mut cs = base.chars();
    matches!(cs.next(), Some(c) if is_ident_start(c)) && cs.all(is_ident_char) && s.len() - base.len() <= 1
}

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && (self.s[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.s.get(self.pos).map(|&b| b as char)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn err(&self, msg: &str) -> PolyError {
        PolyError::Parse(format!("{msg} at column {} in `{}`", self.pos + 1, String::from_utf8_lossy(self.s)))
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.s[start..self.pos]).ok()?.parse().ok()
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        if self.pos < self.s.len() && is_ident_start(self.s[self.pos] as char) {
            self.pos += 1;
            while self.pos < self.s.len() && is_ident_char(self.s[self.pos] as char) {
                self.pos += 1;
            }
            if self.pos < self.s.len() && self.s[self.pos] == b'\'' {
                self.pos += 1;
            }
            return Some(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned());
        }
        None
    }
}

fn parse_raw(text: &str) -> Result<Vec<RawTerm>, PolyError> {
    let mut lx = Lexer { s: text.as_bytes(), pos: 0 };
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        let mut sign = BigRational::one();
        match lx.peek() {
            None if first => return Err(lx.err("empty polynomial")),
            None => break,
            Some('+') => {
                lx.bump();
            }
            Some('-') => {
                lx.bump();
                sign = -sign;
            }
            Some(_) if !first => return Err(lx.err("expected `+` or `-`")),
            Some(_) => {}
        }
        first = false;
        let mut coef = sign;
        let mut vars = Vec::new();
        let mut need_factor = true;
        while need_factor {
            need_factor = false;
            if let Some(n) = lx.integer() {
                let mut q = BigRational::from_integer(n);
                if lx.peek() == Some('/') {
                    lx.bump();
                    let d = lx.integer().ok_or_else(|| lx.err("expected denominator"))?;
                    if d.is_zero() {
                        return Err(lx.err("zero denominator"));
                    }
                    q /= BigRational::from_integer(d);
                }
                coef *= q;
            } else if let Some(v) = lx.ident() {
                let mut e = 1u32;
                if lx.peek() == Some('^') {
                    lx.bump();
                    let n = lx.integer().ok_or_else(|| lx.err("expected exponent"))?;
                    e = u32::try_from(n).map_err(|_| lx.err("exponent too large"))?;
                }
                vars.push((v, e));
            } else {
                return Err(lx.err("expected coefficient or variable"));
            }
            if lx.peek() == Some('*') {
                lx.bump();
                need_factor = true;
            }
        }
        terms.push((coef, vars));
    }
    Ok(terms)
}

fn build(ring: &Ring, raw: &[RawTerm]) -> Result<Polynomial, PolyError> {
    let n = ring.len();
    let mut terms = Vec::with_capacity(raw.len());
    for (c, vars) in raw {
        let mut m = Monomial::one(n);
        for (v, e) in vars {
            let i = ring.index_of(v).ok_or_else(|| PolyError::UnknownVariable(v.clone()))?;
            m.0[i] += e;
        }
        terms.push((m, c.clone()));
    }
    Ok(Polynomial::from_terms(n, terms))
}

/// Parses a polynomial over a known ring.
pub fn parse_polynomial(ring: &Ring, text: &str) -> Result<Polynomial, PolyError> {
    build(ring, &parse_raw(text)?)
}

/// Parses an ideal file. `ring` overrides both the header and first-appearance order.
pub fn parse_ideal(text: &str, ring: Option<&Ring>) -> Result<Ideal, PolyError> {
    let mut header: Option<Vec<String>> = None;
    let mut raws = Vec::new();
    for line in text.lines() {
        let (body, comment) = match line.find('#') {
            Some(k) => (&line[..k], Some(&line[k + 1..])),
            None => (line, None),
        };
        if let Some(c) = comment {
            if let Some(rest) = c.trim().strip_prefix("vars:") {
                header = Some(rest.split_whitespace().map(str::to_string).collect());
            }
        }
        if body.trim().is_empty() {
            continue;
        }
        raws.push(parse_raw(body)?);
    }
    let ring = match (ring, header) {
        (Some(r), _) => r.clone(),
        (None, Some(h)) => Ring::new(h)?,
        (None, None) => {
            let mut names: Vec<String> = Vec::new();
            for raw in &raws {
                for (_, vars) in raw {
                    for (v, _) in vars {
                        if !names.contains(v) {
                            names.push(v.clone());
                        }
                    }
                }
            }
            Ring::new(names)?
        }
    };
    let gens = raws.iter().map(|r| build(&ring, r)).collect::<Result<Vec<_>, _>>()?;
    Ok(Ideal::new(ring, gens))
}

/// Renders with terms in decreasing `order`.
pub fn format_polynomial(ring: &Ring, p: &Polynomial, order: &MonomialOrder) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut terms: Vec<&(Monomial, BigRational)> = p.terms().iter().collect();
    terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
    let mut out = String::new();
    for (k, (m, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        if !abs.is_one() || m.is_one() {
            factors.push(abs.to_string());
        }
        for (i, &e) in m.0.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(ring.name(i).to_string()),
                _ => factors.push(format!("{}^{}", ring.name(i), e)),
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

/// One generator per line, preceded by a `# vars:` header.
pub fn format_ideal(ideal: &Ideal, order: &MonomialOrder) -> String {
    let mut out = format!("# vars: {}\n", ideal.ring.names().join(" "));
    for g in &ideal.gens {
        out.push_str(&format_polynomial(&ideal.ring, g, order));
        out.push('\n');
    }
    out
}

/// Parses `grevlex`, `lex` or `elim:<v1,v2,...>` (the listed variables are eliminated).
pub fn parse_order(spec: &str, ring: &Ring) -> Result<MonomialOrder, PolyError> {
    match spec.trim() {
        "grevlex" => Ok(MonomialOrder::Grevlex),
        "lex" => Ok(MonomialOrder::Lex),
        other => {
            let vars = other
                .strip_prefix("elim:")
                .ok_or_else(|| PolyError::Parse(format!("unknown order `{other}`")))?;
            let mut idx = Vec::new();
            for v in vars.split(',').map(str::trim).filter(|v| !v.is_empty()) {
                idx.push(ring.index_of(v).ok_or_else(|| PolyError::UnknownVariable(v.to_string()))?);
            }
            Ok(MonomialOrder::elimination(ring.len(), &idx))
        }
    }
}
