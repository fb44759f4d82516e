#![allow(dead_code)]

//! Shared helpers for the integration suites: ring builders, support-set
//! oracles, and an exact linear-algebra dimension oracle that is independent
//! of the Groebner path.

use basym::rees::ReesSetup;
use basym::{
    Degree, DegreeGroup, ModElement, Monomial, Polynomial, PositivityFunctional, PrimeField,
    MonomialOrder, Ring,
};
use std::collections::BTreeSet;

pub fn standard_ring(names: &[&str]) -> Ring {
    let g = DegreeGroup::free(1);
    let one = g.degree_from_flat(&[1]).unwrap();
    Ring::new(
        g,
        names.iter().map(|s| s.to_string()).collect(),
        vec![one; names.len()],
        PrimeField::new(32003).unwrap(),
        MonomialOrder::GrevLex,
        PositivityFunctional::ones(1),
    )
    .unwrap()
}

pub fn ideal(ring: &Ring, gens: &[&str]) -> Vec<Polynomial> {
    gens.iter().map(|s| ring.parse_poly(s).unwrap()).collect()
}

pub fn setup(ring: &Ring, ideals: &[&[&str]], shifted: bool) -> ReesSetup {
    ReesSetup::new(
        ring.clone(),
        ideals.iter().map(|gens| ideal(ring, gens)).collect(),
        shifted,
    )
    .unwrap()
}

/// E_t = {2a + 8b : a + b = t} = 2t + 6{0..t}; empty for negative t.
pub fn e_t(t: i64) -> BTreeSet<i64> {
    if t < 0 {
        return BTreeSet::new();
    }
    (0..=t).map(|k| 2 * t + 6 * k).collect()
}

pub fn shifted_set(base: i64, s: &BTreeSet<i64>) -> BTreeSet<i64> {
    s.iter().map(|x| x + base).collect()
}

pub fn flat_degrees(set: &BTreeSet<Degree>) -> BTreeSet<i64> {
    set.iter().map(|d| d.free[0]).collect()
}

/// Direct oracle: support of Tor_ell of the power module at t, from a
/// minimal resolution of the directly assembled power presentation.
pub fn oracle_support(setup: &ReesSetup, ell: usize, t: &[i64]) -> BTreeSet<Degree> {
    basym::report::oracle_tor_support(setup, ell, t).unwrap()
}

/// Exact row reduction over F_p; returns the rank.
pub fn fp_rank(field: PrimeField, mut rows: Vec<Vec<u64>>) -> usize {
    let mut rank = 0;
    let cols = rows.first().map_or(0, |r| r.len());
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = field.inv(rows[rank][col]);
        for x in rows[rank].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col];
                let src = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(src) {
                    *x = field.sub(*x, field.mul(f, y));
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Independent dimension oracle for cyclic quotients S/K in one degree:
/// the monomial count minus the rank of the degree-d slice of K, where the
/// slice is spanned by all monomial multiples of the generators. No Groebner
/// machinery involved.
pub fn quotient_dim_linear_algebra(ring: &Ring, gens: &[Polynomial], gamma: &Degree) -> usize {
    let monos = ring.monomials_of_degree(gamma).unwrap();
    if monos.is_empty() {
        return 0;
    }
    let index = |m: &Monomial| monos.iter().position(|x| x == m).unwrap();
    let mut rows = Vec::new();
    for g in gens {
        let gdeg = ring.poly_degree(g).unwrap();
        let local = ring.group.sub(gamma, &gdeg).unwrap();
        for mult in ring.monomials_of_degree(&local).unwrap() {
            let prod = ring.poly_mul_term(g, &mult, 1).unwrap();
            let mut row = vec![0u64; monos.len()];
            for (m, c) in &prod.terms {
                row[index(m)] = *c;
            }
            rows.push(row);
        }
    }
    monos.len() - fp_rank(ring.field, rows)
}

/// Monomial elements of a rank-one ambient module.
pub fn rank1_elems(_ring: &Ring, gens: &[Polynomial]) -> Vec<ModElement> {
    gens.iter().map(|f| ModElement::from_poly(f, 0)).collect()
}

