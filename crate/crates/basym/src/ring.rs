//! Graded polynomial ring descriptors.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::grading::{Degree, DegreeGroup, PositivityFunctional, Weight};
use crate::monomial::Monomial;
use crate::order::{ModuleOrder, MonomialOrder};

/// A G-graded polynomial ring F_p[x_1..x_n] with a monomial order and an
/// optional positivity functional. Rings are immutable descriptors; all
/// polynomial operations borrow one.
#[derive(Debug, Clone, PartialEq)]
pub struct Ring {
    pub group: DegreeGroup,
    pub vars: Vec<String>,
    pub degrees: Vec<Degree>,
    pub field: PrimeField,
    pub order: MonomialOrder,
    pub phi: Option<PositivityFunctional>,
}

impl Ring {
    /// Graded ring; fails fast if the functional is not strictly positive on
    /// every variable degree (needed for minimalization termination and for
    /// per-degree monomial finiteness).
    pub fn new(
        group: DegreeGroup,
        vars: Vec<String>,
        degrees: Vec<Degree>,
        field: PrimeField,
        order: MonomialOrder,
        phi: PositivityFunctional,
    ) -> Result<Self> {
        if vars.len() != degrees.len() {
            return Err(Error::invalid("one degree per variable required"));
        }
        for (v, d) in vars.iter().zip(&degrees) {
            let w = phi.eval(d);
            if w <= Weight::from_integer(0) {
                return Err(Error::Positivity { var: v.clone(), value: w.to_string() });
            }
        }
        Ok(Ring { group, vars, degrees, field, order, phi: Some(phi) })
    }

    /// Ring without a positivity guarantee (elimination scaffolding and
    /// torsion-graded auxiliary rings). Degree-window operations will refuse
    /// to run on it.
    pub(crate) fn new_unchecked(
        group: DegreeGroup,
        vars: Vec<String>,
        degrees: Vec<Degree>,
        field: PrimeField,
        order: MonomialOrder,
        phi: Option<PositivityFunctional>,
    ) -> Self {
        assert_eq!(vars.len(), degrees.len());
        Ring { group, vars, degrees, field, order, phi }
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn module_order(&self) -> ModuleOrder {
        ModuleOrder::top(self.order.clone())
    }

    pub fn functional(&self) -> Result<&PositivityFunctional> {
        self.phi.as_ref().ok_or(Error::MissingFunctional)
    }

    pub fn weight(&self, d: &Degree) -> Weight {
        match &self.phi {
            Some(phi) => phi.eval(d),
            None => Weight::from_integer(0),
        }
    }

    pub fn monomial_degree(&self, m: &Monomial) -> Degree {
        let mut acc = self.group.zero();
        for (e, d) in m.exps.iter().zip(&self.degrees) {
            if *e != 0 {
                let scaled = self.group.scale(i64::from(*e), d).expect("same group");
                acc = self.group.add(&acc, &scaled).expect("same group");
            }
        }
        acc
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// The complete finite list of monomials of G-degree exactly `gamma`,
    /// enumerated by bounding the total functional weight by phi(gamma).
    /// Sorted descending in the ring order.
    pub fn monomials_of_degree(&self, gamma: &Degree) -> Result<Vec<Monomial>> {
        let phi = self.functional()?;
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.nvars()];
        self.enumerate(phi, 0, gamma.clone(), &mut exps, &mut out)?;
        out.sort_by(|a, b| self.order.compare(b, a));
        Ok(out)
    }

    fn enumerate(
        &self,
        phi: &PositivityFunctional,
        idx: usize,
        remaining: Degree,
        exps: &mut Vec<u32>,
        out: &mut Vec<Monomial>,
    ) -> Result<()> {
        if phi.eval(&remaining) < Weight::from_integer(0) {
            return Ok(());
        }
        if idx == self.nvars() {
            if remaining.is_zero() {
                out.push(Monomial::from_exps(exps.clone()));
            }
            return Ok(());
        }
        let step = &self.degrees[idx];
        let mut rem = remaining;
        let mut e = 0u32;
        loop {
            exps[idx] = e;
            self.enumerate(phi, idx + 1, rem.clone(), exps, out)?;
            rem = self.group.sub(&rem, step)?;
            e = e.checked_add(1).ok_or(Error::ExponentOverflow)?;
            if phi.eval(&rem) < Weight::from_integer(0) {
                break;
            }
        }
        exps[idx] = 0;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::DEFAULT_CHARACTERISTIC;

    pub fn standard_ring(names: &[&str]) -> Ring {
        let g = DegreeGroup::free(1);
        let one = g.degree_from_flat(&[1]).unwrap();
        Ring::new(
            g,
            names.iter().map(|s| s.to_string()).collect(),
            vec![one; names.len()],
            PrimeField::new(DEFAULT_CHARACTERISTIC).unwrap(),
            MonomialOrder::GrevLex,
            PositivityFunctional::ones(1),
        )
        .unwrap()
    }

    #[test]
    fn monomials_of_degree_standard() {
        let r = standard_ring(&["x", "y"]);
        let two = r.group.degree_from_flat(&[2]).unwrap();
        let ms = r.monomials_of_degree(&two).unwrap();
        let exps: Vec<Vec<u32>> = ms.iter().map(|m| m.exps.clone()).collect();
        assert_eq!(exps, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn monomials_with_weighted_degrees() {
        // T-variables of a conic-scroll type grading share the degree (10,2)
        let g = DegreeGroup::free(2);
        let ds = [[2, 1], [5, 1], [8, 1]]
            .iter()
            .map(|v| g.degree_from_flat(&v[..]).unwrap())
            .collect::<Vec<_>>();
        let r = Ring::new(
            g.clone(),
            vec!["T1".into(), "T2".into(), "T3".into()],
            ds,
            PrimeField::new(DEFAULT_CHARACTERISTIC).unwrap(),
            MonomialOrder::GrevLex,
            PositivityFunctional::ones(2),
        )
        .unwrap();
        let target = g.degree_from_flat(&[10, 2]).unwrap();
        let ms = r.monomials_of_degree(&target).unwrap();
        let exps: Vec<Vec<u32>> = ms.iter().map(|m| m.exps.clone()).collect();
        assert_eq!(exps, vec![vec![0, 2, 0], vec![1, 0, 1]]);
    }

    #[test]
    fn empty_when_degree_unreachable() {
        let g = DegreeGroup::free(1);
        let r = Ring::new(
            g.clone(),
            vec!["x".into()],
            vec![g.degree_from_flat(&[4]).unwrap()],
            PrimeField::new(DEFAULT_CHARACTERISTIC).unwrap(),
            MonomialOrder::GrevLex,
            PositivityFunctional::ones(1),
        )
        .unwrap();
        let seven = g.degree_from_flat(&[7]).unwrap();
        assert!(r.monomials_of_degree(&seven).unwrap().is_empty());
    }

    #[test]
    fn zero_weight_variable_is_rejected() {
        let g = DegreeGroup::free(2);
        let err = Ring::new(
            g.clone(),
            vec!["x".into()],
            vec![g.degree_from_flat(&[0, 3]).unwrap()],
            PrimeField::new(DEFAULT_CHARACTERISTIC).unwrap(),
            MonomialOrder::GrevLex,
            PositivityFunctional::new(vec![Weight::from_integer(1), Weight::from_integer(0)]),
        );
        assert!(matches!(err, Err(Error::Positivity { .. })));
    }

    #[test]
    fn brute_force_cross_check() {
        // independent oracle: scan all exponent vectors with phi-weight below
        // the bound and compare the degree filter against monomials_of_degree
        let g = DegreeGroup::free(1);
        let degs = [2i64, 3, 5];
        let r = Ring::new(
            g.clone(),
            vec!["a".into(), "b".into(), "c".into()],
            degs.iter().map(|&d| g.degree_from_flat(&[d]).unwrap()).collect(),
            PrimeField::new(DEFAULT_CHARACTERISTIC).unwrap(),
            MonomialOrder::GrevLex,
            PositivityFunctional::ones(1),
        )
        .unwrap();
        for target in 0..=12i64 {
            let gamma = g.degree_from_flat(&[target]).unwrap();
            let mut expected = Vec::new();
            for a in 0..=target / 2 {
                for b in 0..=target / 3 {
                    for c in 0..=target / 5 {
                        if 2 * a + 3 * b + 5 * c == target {
                            expected.push(vec![a as u32, b as u32, c as u32]);
                        }
                    }
                }
            }
            let mut got: Vec<Vec<u32>> = r
                .monomials_of_degree(&gamma)
                .unwrap()
                .into_iter()
                .map(|m| m.exps)
                .collect();
            got.sort();
            expected.sort();
            assert_eq!(got, expected, "degree {target}");
        }
    }
}
