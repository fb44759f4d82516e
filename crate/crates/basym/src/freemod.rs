//! Graded free modules and their elements.

use crate::error::{Error, Result};
use crate::grading::Degree;
use crate::monomial::Monomial;
use crate::order::ModuleOrder;
use crate::poly::Polynomial;
use crate::ring::Ring;
use std::collections::BTreeMap;

/// F = S(-shifts_1) + ... + S(-shifts_r); basis element i carries degree
/// shifts_i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeModule {
    pub shifts: Vec<Degree>,
}

impl FreeModule {
    pub fn new(shifts: Vec<Degree>) -> Self {
        FreeModule { shifts }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModTerm {
    pub pos: usize,
    pub mono: Monomial,
    pub coeff: u64,
}

/// Element of a graded free module; terms sorted descending in a module
/// order, no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModElement {
    pub terms: Vec<ModTerm>,
}

impl ModElement {
    pub fn zero() -> Self {
        ModElement { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&ModTerm> {
        self.terms.first()
    }

    pub fn basis(nvars: usize, pos: usize) -> Self {
        ModElement {
            terms: vec![ModTerm { pos, mono: Monomial::one(nvars), coeff: 1 }],
        }
    }

    pub fn from_poly(f: &Polynomial, pos: usize) -> Self {
        ModElement {
            terms: f
                .terms
                .iter()
                .map(|(m, c)| ModTerm { pos, mono: m.clone(), coeff: *c })
                .collect(),
        }
    }

    /// Rank-one elements convert back to polynomials.
    pub fn into_poly(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|t| (t.mono.clone(), t.coeff)).collect(),
        }
    }

    /// The polynomial coefficient sitting at one basis position.
    pub fn coefficient_at(&self, ring: &Ring, pos: usize) -> Polynomial {
        ring.poly_from_terms(
            self.terms
                .iter()
                .filter(|t| t.pos == pos)
                .map(|t| (t.mono.clone(), t.coeff))
                .collect(),
        )
    }
}

impl Ring {
    pub fn elem_from_terms(&self, order: &ModuleOrder, terms: Vec<ModTerm>) -> ModElement {
        let mut acc: BTreeMap<(usize, Monomial), u64> = BTreeMap::new();
        for t in terms {
            let e = acc.entry((t.pos, t.mono)).or_insert(0);
            *e = self.field.add(*e, t.coeff % self.field.p);
        }
        let mut out: Vec<ModTerm> = acc
            .into_iter()
            .filter(|&(_, c)| c != 0)
            .map(|((pos, mono), coeff)| ModTerm { pos, mono, coeff })
            .collect();
        out.sort_by(|a, b| order.compare((b.pos, &b.mono), (a.pos, &a.mono)));
        ModElement { terms: out }
    }

    pub fn elem_add(&self, order: &ModuleOrder, a: &ModElement, b: &ModElement) -> ModElement {
        let mut terms = a.terms.clone();
        terms.extend(b.terms.iter().cloned());
        self.elem_from_terms(order, terms)
    }

    pub fn elem_neg(&self, a: &ModElement) -> ModElement {
        ModElement {
            terms: a
                .terms
                .iter()
                .map(|t| ModTerm { pos: t.pos, mono: t.mono.clone(), coeff: self.field.neg(t.coeff) })
                .collect(),
        }
    }

    pub fn elem_sub(&self, order: &ModuleOrder, a: &ModElement, b: &ModElement) -> ModElement {
        self.elem_add(order, a, &self.elem_neg(b))
    }

    pub fn elem_scale(&self, c: u64, a: &ModElement) -> ModElement {
        let c = c % self.field.p;
        if c == 0 {
            return ModElement::zero();
        }
        ModElement {
            terms: a
                .terms
                .iter()
                .map(|t| ModTerm { pos: t.pos, mono: t.mono.clone(), coeff: self.field.mul(t.coeff, c) })
                .collect(),
        }
    }

    /// (c * m) * a for a ring term; order is preserved by multiplicativity.
    pub fn elem_mul_term(&self, a: &ModElement, m: &Monomial, c: u64) -> Result<ModElement> {
        if c % self.field.p == 0 {
            return Ok(ModElement::zero());
        }
        Ok(ModElement {
            terms: a
                .terms
                .iter()
                .map(|t| {
                    Ok(ModTerm {
                        pos: t.pos,
                        mono: t.mono.mul(m)?,
                        coeff: self.field.mul(t.coeff, c % self.field.p),
                    })
                })
                .collect::<Result<Vec<_>>>()?,
        })
    }

    pub fn elem_mul_poly(
        &self,
        order: &ModuleOrder,
        f: &Polynomial,
        a: &ModElement,
    ) -> Result<ModElement> {
        let mut acc = ModElement::zero();
        for (m, c) in &f.terms {
            let part = self.elem_mul_term(a, m, *c)?;
            acc = self.elem_add(order, &acc, &part);
        }
        Ok(acc)
    }

    /// The common G-degree of all terms, including basis shifts.
    pub fn elem_degree(&self, module: &FreeModule, a: &ModElement) -> Result<Degree> {
        let Some(first) = a.terms.first() else {
            return Err(Error::ZeroDegree);
        };
        let term_degree = |t: &ModTerm| -> Result<Degree> {
            if t.pos >= module.rank() {
                return Err(Error::AmbientMismatch(format!(
                    "basis index {} out of range for rank {}",
                    t.pos,
                    module.rank()
                )));
            }
            self.group
                .add(&self.monomial_degree(&t.mono), &module.shifts[t.pos])
        };
        let d0 = term_degree(first)?;
        for t in &a.terms[1..] {
            let d = term_degree(t)?;
            if d != d0 {
                return Err(Error::Inhomogeneous {
                    term_a: format!("{}*e{}", self.monomial_to_string(&first.mono), first.pos + 1),
                    deg_a: d0.to_string(),
                    term_b: format!("{}*e{}", self.monomial_to_string(&t.mono), t.pos + 1),
                    deg_b: d.to_string(),
                });
            }
        }
        Ok(d0)
    }

    pub fn elem_is_homogeneous(&self, module: &FreeModule, a: &ModElement) -> bool {
        a.is_zero() || self.elem_degree(module, a).is_ok()
    }

    pub fn elem_to_string(&self, a: &ModElement) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let half = self.field.p / 2;
        let mut out = String::new();
        for (i, t) in a.terms.iter().enumerate() {
            let (neg, mag) =
                if t.coeff > half { (true, self.field.p - t.coeff) } else { (false, t.coeff) };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = if t.mono.is_one() {
                String::new()
            } else {
                format!("{}*", self.monomial_to_string(&t.mono))
            };
            let coeff = if mag == 1 { String::new() } else { format!("{mag}*") };
            out.push_str(&format!("{coeff}{mono}e{}", t.pos + 1));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::grading::{DegreeGroup, PositivityFunctional};
    use crate::order::MonomialOrder;

    fn setup() -> (Ring, FreeModule) {
        let g = DegreeGroup::free(1);
        let one = g.degree_from_flat(&[1]).unwrap();
        let ring = Ring::new(
            g.clone(),
            vec!["x".into(), "y".into()],
            vec![one.clone(), one],
            PrimeField::new(32003).unwrap(),
            MonomialOrder::GrevLex,
            PositivityFunctional::ones(1),
        )
        .unwrap();
        let module = FreeModule::new(vec![
            g.degree_from_flat(&[2]).unwrap(),
            g.degree_from_flat(&[3]).unwrap(),
        ]);
        (ring, module)
    }

    #[test]
    fn homogeneity_accounts_for_shifts() {
        let (ring, module) = setup();
        let order = ring.module_order();
        // y*e1 - x*e2 wait: deg(y*e1) = 1+2 = 3, deg(x*e2) = 1+3 = 4: inhomogeneous
        let y_e1 = ring
            .elem_mul_poly(&order, &ring.poly_var(1), &ModElement::basis(2, 0))
            .unwrap();
        let x_e2 = ring
            .elem_mul_poly(&order, &ring.poly_var(0), &ModElement::basis(2, 1))
            .unwrap();
        let mix = ring.elem_sub(&order, &y_e1, &x_e2);
        assert!(matches!(
            ring.elem_degree(&module, &mix),
            Err(Error::Inhomogeneous { .. })
        ));
        // x*y*e1 and x^2*e1 share degree 4 with shift 2
        let f = ring.parse_poly("x*y + x^2").unwrap();
        let elem = ring.elem_mul_poly(&order, &f, &ModElement::basis(2, 0)).unwrap();
        assert_eq!(ring.elem_degree(&module, &elem).unwrap().flat(), vec![4]);
    }

    #[test]
    fn element_printing_is_deterministic() {
        let (ring, _) = setup();
        let order = ring.module_order();
        let f = ring.parse_poly("y").unwrap();
        let g = ring.parse_poly("x").unwrap();
        let a = ring.elem_mul_poly(&order, &f, &ModElement::basis(2, 0)).unwrap();
        let b = ring.elem_mul_poly(&order, &g, &ModElement::basis(2, 1)).unwrap();
        let s = ring.elem_sub(&order, &a, &b);
        assert_eq!(ring.elem_to_string(&s), "-x*e2 + y*e1");
    }
}
