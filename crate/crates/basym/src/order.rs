//! Monomial orders on rings and their extensions to free modules.

use crate::monomial::Monomial;
use std::cmp::Ordering;

/// Order on ring monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic, first variable largest.
    GrevLex,
    /// Lexicographic, first variable largest.
    Lex,
    /// Block elimination: grevlex on the masked block first, then grevlex on
    /// the rest. Any monomial meeting the block beats any monomial that does
    /// not, so block variables are eliminated.
    Block { mask: Vec<bool> },
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&x| u64::from(x)).sum();
    let db: u64 = b.iter().map(|&x| u64::from(x)).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Equal => {}
            // smaller exponent in the last differing variable wins
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

fn lex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn compare(&self, u: &Monomial, v: &Monomial) -> Ordering {
        match self {
            MonomialOrder::GrevLex => grevlex(&u.exps, &v.exps),
            MonomialOrder::Lex => lex(&u.exps, &v.exps),
            MonomialOrder::Block { mask } => {
                let pick = |m: &Monomial, inside: bool| -> Vec<u32> {
                    m.exps
                        .iter()
                        .zip(mask)
                        .filter(|(_, &inb)| inb == inside)
                        .map(|(&e, _)| e)
                        .collect()
                };
                match grevlex(&pick(u, true), &pick(v, true)) {
                    Ordering::Equal => grevlex(&pick(u, false), &pick(v, false)),
                    o => o,
                }
            }
        }
    }
}

/// How a ring order extends to monomials with a position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModuleExtension {
    /// Compare monomials first, break ties by position with e_1 > e_2 > ...
    TermOverPosition,
    /// Compare positions first (e_1 > e_2 > ...), then monomials.
    PositionOverTerm,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleOrder {
    pub ring: MonomialOrder,
    pub extension: ModuleExtension,
}

impl ModuleOrder {
    pub fn top(ring: MonomialOrder) -> Self {
        ModuleOrder { ring, extension: ModuleExtension::TermOverPosition }
    }

    pub fn compare(&self, u: (usize, &Monomial), v: (usize, &Monomial)) -> Ordering {
        // lower position index is the larger basis element
        let pos = v.0.cmp(&u.0);
        match self.extension {
            ModuleExtension::TermOverPosition => match self.ring.compare(u.1, v.1) {
                Ordering::Equal => pos,
                o => o,
            },
            ModuleExtension::PositionOverTerm => match pos {
                Ordering::Equal => self.ring.compare(u.1, v.1),
                o => o,
            },
        }
    }
}
