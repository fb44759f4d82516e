//! The input DSL: grading, ring, functional, ideals and window policy.
//!
//! ```text
//! field 32003;
//! grading Z^1;
//! ring x:1 y:1 z:1;
//! phi 1;
//! ideal I = x^2 + y^2 + z^2, x^5 + y^5 + z^5, x^8 + y^8 + z^8;
//! window t=1..5 wcap=40;
//! ```

use crate::error::{Error, Result};
use crate::field::{PrimeField, DEFAULT_CHARACTERISTIC};
use crate::grading::{DegreeGroup, PositivityFunctional, Weight};
use crate::order::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq)]
pub struct Window {
    pub t_ranges: Vec<(i64, i64)>,
    pub wcap: i64,
}

impl Window {
    pub fn default_for(s: usize) -> Self {
        Window { t_ranges: vec![(1, 4); s.max(1)], wcap: 60 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Session {
    pub ring: Ring,
    pub ideals: Vec<(String, Vec<Polynomial>)>,
    pub window: Window,
}

impl Session {
    pub fn parse(src: &str) -> Result<Session> {
        Parser::new(src).parse_session()
    }

    /// Canonical text form; parsing it back yields an equal session.
    pub fn to_dsl(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("field {};\n", self.ring.field.p));
        let g = &self.ring.group;
        let mut parts = Vec::new();
        if g.free_rank > 0 {
            parts.push(format!("Z^{}", g.free_rank));
        }
        for m in &g.torsion_moduli {
            parts.push(format!("Z/{m}"));
        }
        if parts.is_empty() {
            parts.push("Z^0".to_string());
        }
        out.push_str(&format!("grading {};\n", parts.join(" x ")));
        let decl: Vec<String> = self
            .ring
            .vars
            .iter()
            .zip(&self.ring.degrees)
            .map(|(v, d)| {
                let flat = d.flat();
                if flat.len() == 1 {
                    format!("{v}:{}", flat[0])
                } else {
                    format!(
                        "{v}:({})",
                        flat.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
                    )
                }
            })
            .collect();
        out.push_str(&format!("ring {};\n", decl.join(" ")));
        let phi = self.ring.phi.as_ref().expect("session rings carry a functional");
        let ws: Vec<String> = phi.weights.iter().map(|w| w.to_string()).collect();
        if ws.len() == 1 {
            out.push_str(&format!("phi {};\n", ws[0]));
        } else {
            out.push_str(&format!("phi ({});\n", ws.join(",")));
        }
        for (name, gens) in &self.ideals {
            let srcs: Vec<String> = gens.iter().map(|f| self.ring.poly_to_string(f)).collect();
            out.push_str(&format!("ideal {name} = {};\n", srcs.join(", ")));
        }
        let ranges: Vec<String> = self
            .window
            .t_ranges
            .iter()
            .map(|(a, b)| format!("{a}..{b}"))
            .collect();
        out.push_str(&format!(
            "window t={} wcap={};\n",
            ranges.join(","),
            self.window.wcap
        ));
        out
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src: src.as_bytes(), pos: 0, line: 1, col: 1 }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { line: self.line, col: self.col, msg: msg.into() }
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.src.get(self.pos).copied()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        loop {
            match self.src.get(self.pos).copied() {
                Some(c) if c.is_ascii_whitespace() => {
                    self.bump();
                }
                Some(b'#') => {
                    while let Some(c) = self.bump() {
                        if c == b'\n' {
                            break;
                        }
                    }
                }
                _ => break,
            }
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.err(format!("expected `{}`", c as char)))
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.src.get(self.pos) {
            if c.is_ascii_alphanumeric() || *c == b'_' {
                self.bump();
            } else {
                break;
            }
        }
        if start == self.pos {
            return Err(self.err("expected an identifier"));
        }
        Ok(String::from_utf8(self.src[start..self.pos].to_vec()).unwrap())
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.bump();
        }
        while let Some(c) = self.src.get(self.pos) {
            if c.is_ascii_digit() {
                self.bump();
            } else {
                break;
            }
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer out of range"))
    }

    fn weight(&mut self) -> Result<Weight> {
        let num = self.int()?;
        if self.peek() == Some(b'/') {
            self.bump();
            let den = self.int()?;
            if den == 0 {
                return Err(self.err("zero denominator"));
            }
            Ok(Weight::new(num, den))
        } else {
            Ok(Weight::from_integer(num))
        }
    }

    /// Raw text up to the next top-level `,` or `;`.
    fn poly_source(&mut self) -> Result<(String, usize, usize)> {
        self.skip_ws();
        let (line, col) = (self.line, self.col);
        let start = self.pos;
        while let Some(c) = self.src.get(self.pos).copied() {
            if c == b',' || c == b';' {
                break;
            }
            self.bump();
        }
        let text = String::from_utf8(self.src[start..self.pos].to_vec()).unwrap();
        if text.trim().is_empty() {
            return Err(self.err("expected a polynomial"));
        }
        Ok((text, line, col))
    }

    fn parse_session(&mut self) -> Result<Session> {
        let mut field: Option<u64> = None;
        let mut group: Option<DegreeGroup> = None;
        let mut vars: Vec<(String, Vec<i64>)> = Vec::new();
        let mut phi: Option<Vec<Weight>> = None;
        let mut ideals_src: Vec<(String, Vec<(String, usize, usize)>)> = Vec::new();
        let mut t_ranges: Option<Vec<(i64, i64)>> = None;
        let mut wcap: Option<i64> = None;

        loop {
            if self.peek().is_none() {
                break;
            }
            let kw = self.ident()?;
            match kw.as_str() {
                "field" => {
                    let p = self.int()?;
                    if p < 2 {
                        return Err(self.err("field characteristic must be at least 2"));
                    }
                    field = Some(p as u64);
                }
                "grading" => {
                    let mut free = 0usize;
                    let mut torsion = Vec::new();
                    loop {
                        let z = self.ident()?;
                        if z != "Z" {
                            return Err(self.err("grading parts look like Z^d or Z/m"));
                        }
                        match self.peek() {
                            Some(b'^') => {
                                self.bump();
                                let d = self.int()?;
                                if d < 0 {
                                    return Err(self.err("negative free rank"));
                                }
                                free += d as usize;
                            }
                            Some(b'/') => {
                                self.bump();
                                let m = self.int()?;
                                if m < 2 {
                                    return Err(self.err("torsion modulus must be at least 2"));
                                }
                                torsion.push(m);
                            }
                            _ => {
                                free += 1;
                            }
                        }
                        if self.peek() == Some(b'x') {
                            // separator between group factors
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    group = Some(DegreeGroup::new(free, torsion).map_err(|e| self.err(e.to_string()))?);
                }
                "ring" => {
                    while self.peek() != Some(b';') {
                        let name = self.ident()?;
                        self.expect(b':')?;
                        let mut entries = Vec::new();
                        if self.peek() == Some(b'(') {
                            self.bump();
                            loop {
                                entries.push(self.int()?);
                                if self.peek() == Some(b',') {
                                    self.bump();
                                } else {
                                    break;
                                }
                            }
                            self.expect(b')')?;
                        } else {
                            entries.push(self.int()?);
                        }
                        vars.push((name, entries));
                    }
                }
                "phi" => {
                    let mut ws = Vec::new();
                    if self.peek() == Some(b'(') {
                        self.bump();
                        loop {
                            ws.push(self.weight()?);
                            if self.peek() == Some(b',') {
                                self.bump();
                            } else {
                                break;
                            }
                        }
                        self.expect(b')')?;
                    } else {
                        ws.push(self.weight()?);
                    }
                    phi = Some(ws);
                }
                "ideal" => {
                    let name = self.ident()?;
                    self.expect(b'=')?;
                    let mut gens = Vec::new();
                    loop {
                        gens.push(self.poly_source()?);
                        if self.peek() == Some(b',') {
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    ideals_src.push((name, gens));
                }
                "window" => {
                    while self.peek() != Some(b';') {
                        let key = self.ident()?;
                        self.expect(b'=')?;
                        match key.as_str() {
                            "t" => {
                                let mut ranges = Vec::new();
                                loop {
                                    let lo = self.int()?;
                                    self.expect(b'.')?;
                                    self.expect(b'.')?;
                                    let hi = self.int()?;
                                    if lo > hi || lo < 0 {
                                        return Err(self.err("window bounds must satisfy 0 <= lo <= hi"));
                                    }
                                    ranges.push((lo, hi));
                                    if self.peek() == Some(b',') {
                                        self.bump();
                                    } else {
                                        break;
                                    }
                                }
                                t_ranges = Some(ranges);
                            }
                            "wcap" => {
                                let w = self.int()?;
                                if w <= 0 {
                                    return Err(self.err("wcap must be positive"));
                                }
                                wcap = Some(w);
                            }
                            other => {
                                return Err(self.err(format!("unknown window key `{other}`")));
                            }
                        }
                    }
                }
                other => {
                    return Err(self.err(format!("unknown statement `{other}`")));
                }
            }
            self.expect(b';')?;
        }

        let group = group.ok_or_else(|| self.err("missing `grading` statement"))?;
        if vars.is_empty() {
            return Err(self.err("missing `ring` statement"));
        }
        let field = PrimeField::new(field.unwrap_or(DEFAULT_CHARACTERISTIC))
            .map_err(|e| self.err(e.to_string()))?;
        let total = group.free_rank + group.torsion_moduli.len();
        let mut names = Vec::new();
        let mut degrees = Vec::new();
        for (name, entries) in vars {
            if entries.len() != total {
                return Err(self.err(format!(
                    "variable {name}: degree needs {total} entries, got {}",
                    entries.len()
                )));
            }
            degrees.push(group.degree_from_flat(&entries).map_err(|e| self.err(e.to_string()))?);
            names.push(name);
        }
        let phi = match phi {
            Some(ws) => {
                if ws.len() != group.free_rank {
                    return Err(self.err(format!(
                        "phi needs {} weights, got {}",
                        group.free_rank,
                        ws.len()
                    )));
                }
                PositivityFunctional::new(ws)
            }
            None => PositivityFunctional::ones(group.free_rank),
        };
        let ring = Ring::new(group, names, degrees, field, MonomialOrder::GrevLex, phi)?;

        let mut ideals = Vec::new();
        for (name, gens) in ideals_src {
            let mut polys = Vec::new();
            for (src, line, col) in gens {
                let f = ring.parse_poly(&src).map_err(|e| match e {
                    Error::Parse { col: c, msg, .. } => {
                        Error::Parse { line, col: col + c - 1, msg }
                    }
                    other => other,
                })?;
                if f.is_zero() {
                    return Err(Error::Parse {
                        line,
                        col,
                        msg: format!("ideal {name}: zero generator"),
                    });
                }
                ring.poly_degree(&f).map_err(|e| Error::Parse {
                    line,
                    col,
                    msg: format!("ideal {name}, generator `{}`: {e}", src.trim()),
                })?;
                polys.push(f);
            }
            ideals.push((name, polys));
        }
        if ideals.is_empty() {
            return Err(self.err("at least one `ideal` statement is required"));
        }

        let s = ideals.len();
        let mut window = Window::default_for(s);
        if let Some(mut ranges) = t_ranges {
            if ranges.len() == 1 && s > 1 {
                ranges = vec![ranges[0]; s];
            }
            if ranges.len() != s {
                return Err(self.err(format!(
                    "window t needs 1 or {s} ranges, got {}",
                    ranges.len()
                )));
            }
            window.t_ranges = ranges;
        }
        if let Some(w) = wcap {
            window.wcap = w;
        }
        Ok(Session { ring, ideals, window })
    }
}
