//! Multivariate polynomials over a prime field.

use crate::error::{Error, Result};
use crate::grading::Degree;
use crate::monomial::Monomial;
use crate::ring::Ring;
use std::collections::BTreeMap;

/// Terms are kept sorted descending in the ring order with no zero
/// coefficients, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    pub terms: Vec<(Monomial, u64)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<(&Monomial, u64)> {
        self.terms.first().map(|(m, c)| (m, *c))
    }
}

impl Ring {
    pub fn poly_constant(&self, c: i64) -> Polynomial {
        let c = self.field.reduce(c);
        if c == 0 {
            Polynomial::zero()
        } else {
            Polynomial { terms: vec![(Monomial::one(self.nvars()), c)] }
        }
    }

    pub fn poly_var(&self, i: usize) -> Polynomial {
        Polynomial { terms: vec![(Monomial::var(self.nvars(), i), 1)] }
    }

    pub fn poly_monomial(&self, m: Monomial, c: u64) -> Polynomial {
        if c % self.field.p == 0 {
            Polynomial::zero()
        } else {
            Polynomial { terms: vec![(m, c % self.field.p)] }
        }
    }

    /// Canonicalize an unsorted term list: combine, drop zeros, sort.
    pub fn poly_from_terms(&self, terms: Vec<(Monomial, u64)>) -> Polynomial {
        let mut acc: BTreeMap<Monomial, u64> = BTreeMap::new();
        for (m, c) in terms {
            let e = acc.entry(m).or_insert(0);
            *e = self.field.add(*e, c % self.field.p);
        }
        let mut out: Vec<(Monomial, u64)> =
            acc.into_iter().filter(|&(_, c)| c != 0).collect();
        out.sort_by(|a, b| self.order.compare(&b.0, &a.0));
        Polynomial { terms: out }
    }

    pub fn poly_add(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        let mut terms = f.terms.clone();
        terms.extend(g.terms.iter().cloned());
        self.poly_from_terms(terms)
    }

    pub fn poly_neg(&self, f: &Polynomial) -> Polynomial {
        Polynomial {
            terms: f.terms.iter().map(|(m, c)| (m.clone(), self.field.neg(*c))).collect(),
        }
    }

    pub fn poly_sub(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.poly_add(f, &self.poly_neg(g))
    }

    pub fn poly_scale(&self, c: i64, f: &Polynomial) -> Polynomial {
        let c = self.field.reduce(c);
        if c == 0 {
            return Polynomial::zero();
        }
        Polynomial {
            terms: f.terms.iter().map(|(m, k)| (m.clone(), self.field.mul(*k, c))).collect(),
        }
    }

    pub fn poly_mul_term(&self, f: &Polynomial, m: &Monomial, c: u64) -> Result<Polynomial> {
        if c == 0 {
            return Ok(Polynomial::zero());
        }
        let terms = f
            .terms
            .iter()
            .map(|(fm, fc)| Ok((fm.mul(m)?, self.field.mul(*fc, c))))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.poly_from_terms(terms))
    }

    pub fn poly_mul(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        let mut terms = Vec::with_capacity(f.terms.len() * g.terms.len());
        for (fm, fc) in &f.terms {
            for (gm, gc) in &g.terms {
                terms.push((fm.mul(gm)?, self.field.mul(*fc, *gc)));
            }
        }
        Ok(self.poly_from_terms(terms))
    }

    /// The common G-degree of all terms; errors on zero or inhomogeneous
    /// input, quoting two witness terms in the latter case.
    pub fn poly_degree(&self, f: &Polynomial) -> Result<Degree> {
        let Some((first, _)) = f.terms.first() else {
            return Err(Error::ZeroDegree);
        };
        let d0 = self.monomial_degree(first);
        for (m, _) in &f.terms[1..] {
            let d = self.monomial_degree(m);
            if d != d0 {
                return Err(Error::Inhomogeneous {
                    term_a: self.monomial_to_string(first),
                    deg_a: d0.to_string(),
                    term_b: self.monomial_to_string(m),
                    deg_b: d.to_string(),
                });
            }
        }
        Ok(d0)
    }

    pub fn poly_is_homogeneous(&self, f: &Polynomial) -> bool {
        f.is_zero() || self.poly_degree(f).is_ok()
    }

    pub fn monomial_to_string(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".to_string();
        }
        m.exps
            .iter()
            .enumerate()
            .filter(|&(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    self.vars[i].clone()
                } else {
                    format!("{}^{}", self.vars[i], e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Deterministic printing in descending order of the ambient order.
    pub fn poly_to_string(&self, f: &Polynomial) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        let half = self.field.p / 2;
        let mut out = String::new();
        for (i, (m, c)) in f.terms.iter().enumerate() {
            // print balanced representatives so sign structure is readable
            let (neg, mag) = if *c > half { (true, self.field.p - c) } else { (false, *c) };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&mag.to_string());
            } else if mag == 1 {
                out.push_str(&self.monomial_to_string(m));
            } else {
                out.push_str(&format!("{}*{}", mag, self.monomial_to_string(m)));
            }
        }
        out
    }

    /// Parses the CLI polynomial syntax, e.g. `3*x^2*y - z`.
    pub fn parse_poly(&self, src: &str) -> Result<Polynomial> {
        let mut p = PolyParser { ring: self, src: src.as_bytes(), pos: 0 };
        let f = p.parse_expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(f)
    }
}

struct PolyParser<'a> {
    ring: &'a Ring,
    src: &'a [u8],
    pos: usize,
}

impl<'a> PolyParser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { line: 1, col: self.pos + 1, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn parse_expr(&mut self) -> Result<Polynomial> {
        let mut neg = false;
        if let Some(c) = self.peek() {
            if c == b'-' {
                self.pos += 1;
                neg = true;
            } else if c == b'+' {
                self.pos += 1;
            }
        }
        let mut acc = self.parse_term()?;
        if neg {
            acc = self.ring.poly_neg(&acc);
        }
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    let t = self.parse_term()?;
                    acc = self.ring.poly_add(&acc, &t);
                }
                b'-' => {
                    self.pos += 1;
                    let t = self.parse_term()?;
                    acc = self.ring.poly_sub(&acc, &t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<Polynomial> {
        let mut acc = self.parse_factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.parse_factor()?;
            acc = self.ring.poly_mul(&acc, &f)?;
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.parse_int()?;
                Ok(self.ring.poly_constant(n))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let name = self.parse_ident();
                let idx = self
                    .ring
                    .var_index(&name)
                    .ok_or_else(|| self.err(&format!("unknown variable `{name}`")))?;
                let mut exp = 1u32;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let e = self.parse_int()?;
                    if e < 0 {
                        return Err(self.err("negative exponent"));
                    }
                    exp = u32::try_from(e).map_err(|_| self.err("exponent too large"))?;
                }
                let mut m = Monomial::one(self.ring.nvars());
                m.exps[idx] = exp;
                Ok(self.ring.poly_monomial(m, 1))
            }
            _ => Err(self.err("expected a coefficient or a variable")),
        }
    }

    fn parse_int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer out of range"))
    }

    fn parse_ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8(self.src[start..self.pos].to_vec()).unwrap()
    }
}
