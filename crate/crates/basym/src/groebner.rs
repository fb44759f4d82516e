//! Buchberger's algorithm for submodules of free modules, with division
//! tracking so that syzygies and membership certificates come out of the same
//! machinery. Normal selection strategy, product criterion (rank one only)
//! and chain criterion.

use crate::error::{Error, Result};
use crate::freemod::{FreeModule, ModElement, ModTerm};
use crate::grading::{Degree, Weight};
use crate::monomial::Monomial;
use crate::order::{ModuleOrder, MonomialOrder};
use crate::poly::Polynomial;
use crate::ring::Ring;
use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

/// Result of dividing `v` by a list of elements: `v = sum q_k b_k + remainder`
/// and no term of the remainder is divisible by any lead term of the list.
pub struct Division {
    pub quotients: Vec<Polynomial>,
    pub remainder: ModElement,
}

pub fn divide(
    ring: &Ring,
    order: &ModuleOrder,
    v: &ModElement,
    basis: &[ModElement],
) -> Result<Division> {
    let mut quotients = vec![Polynomial::zero(); basis.len()];
    let mut rest = v.clone();
    'outer: loop {
        for (ti, term) in rest.terms.iter().enumerate() {
            for (k, b) in basis.iter().enumerate() {
                let Some(lt) = b.lead() else { continue };
                if lt.pos == term.pos && lt.mono.divides(&term.mono) {
                    let cof = lt.mono.divide_into(&term.mono);
                    let c = ring.field.div(term.coeff, lt.coeff);
                    let sub = ring.elem_mul_term(b, &cof, c)?;
                    rest = ring.elem_sub(order, &rest, &sub);
                    quotients[k] =
                        ring.poly_add(&quotients[k], &ring.poly_monomial(cof, c));
                    continue 'outer;
                }
            }
            // this term is irreducible; later terms may still reduce
            let _ = ti;
        }
        break;
    }
    Ok(Division { quotients, remainder: rest })
}

/// Division-algorithm normal form of `v` against `basis`.
pub fn normal_form(
    ring: &Ring,
    order: &ModuleOrder,
    v: &ModElement,
    basis: &[ModElement],
) -> Result<ModElement> {
    Ok(divide(ring, order, v, basis)?.remainder)
}

#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    pub elements: Vec<ModElement>,
    pub order: ModuleOrder,
    pub reduced: bool,
    /// elements[k] = sum_j transform[k][j] * input_gens[j]
    pub(crate) transform: Vec<Vec<Polynomial>>,
}

fn pair_key(
    ring: &Ring,
    module: &FreeModule,
    graded: bool,
    pos: usize,
    lcm: &Monomial,
) -> (Weight, u64, usize, Vec<u32>) {
    let weight = if graded {
        let d = ring
            .group
            .add(&ring.monomial_degree(lcm), &module.shifts[pos])
            .expect("same group");
        ring.weight(&d)
    } else {
        Weight::from_integer(0)
    };
    (weight, lcm.total_degree(), pos, lcm.exps.clone())
}

struct PairQueue {
    heap: BinaryHeap<Reverse<((Weight, u64, usize, Vec<u32>), usize, usize)>>,
}

impl PairQueue {
    fn new() -> Self {
        PairQueue { heap: BinaryHeap::new() }
    }
    fn push(&mut self, key: (Weight, u64, usize, Vec<u32>), i: usize, j: usize) {
        self.heap.push(Reverse((key, i, j)));
    }
    fn pop(&mut self) -> Option<(usize, usize)> {
        self.heap.pop().map(|Reverse((_, i, j))| (i, j))
    }
}

fn is_single_position(e: &ModElement) -> bool {
    e.terms.windows(2).all(|w| w[0].pos == w[1].pos)
}

/// Buchberger with transform tracking. Inputs need not be homogeneous; when
/// the ring carries a functional and all generators are homogeneous, the pair
/// queue is ordered by degree weight (normal strategy), otherwise by total
/// degree of the pair lcm.
pub fn buchberger(
    ring: &Ring,
    module: &FreeModule,
    order: &ModuleOrder,
    gens: &[ModElement],
) -> Result<GroebnerBasis> {
    let mut basis: Vec<ModElement> = Vec::new();
    let mut rep: Vec<Vec<Polynomial>> = Vec::new();
    for (j, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let mut row = vec![Polynomial::zero(); gens.len()];
        row[j] = ring.poly_constant(1);
        basis.push(g.clone());
        rep.push(row);
    }

    let graded = ring.phi.is_some()
        && basis.iter().all(|g| ring.elem_is_homogeneous(module, g));

    let mut queue = PairQueue::new();
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    let push_pairs = |queue: &mut PairQueue, basis: &[ModElement], t: usize| {
        let lt_t = basis[t].lead().unwrap();
        for i in 0..t {
            let lt_i = basis[i].lead().unwrap();
            if lt_i.pos == lt_t.pos {
                let lcm = lt_i.mono.lcm(&lt_t.mono);
                queue.push(pair_key(ring, module, graded, lt_t.pos, &lcm), i, t);
            }
        }
    };
    for t in 0..basis.len() {
        push_pairs(&mut queue, &basis, t);
    }

    while let Some((i, j)) = queue.pop() {
        done.insert((i, j));
        let (lt_i, lt_j) = (basis[i].lead().unwrap(), basis[j].lead().unwrap());
        let lcm = lt_i.mono.lcm(&lt_j.mono);
        // product criterion, valid on a single position
        if module.rank() == 1
            || (is_single_position(&basis[i]) && is_single_position(&basis[j]))
        {
            if lt_i.mono.gcd_is_one(&lt_j.mono) {
                continue;
            }
        }
        // chain criterion
        let mut skip = false;
        for k in 0..basis.len() {
            if k == i || k == j {
                continue;
            }
            let lt_k = basis[k].lead().unwrap();
            if lt_k.pos == lt_i.pos
                && lt_k.mono.divides(&lcm)
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
            {
                skip = true;
                break;
            }
        }
        if skip {
            continue;
        }

        let (spoly, si, sj) = s_pair(ring, order, &basis[i], &basis[j])?;
        let div = divide(ring, order, &spoly, &basis)?;
        if div.remainder.is_zero() {
            continue;
        }
        // representation of the remainder in terms of the input generators
        let mut row = vec![Polynomial::zero(); gens.len()];
        accumulate(ring, &mut row, &si, &rep[i])?;
        accumulate_neg(ring, &mut row, &sj, &rep[j])?;
        for (k, q) in div.quotients.iter().enumerate() {
            if !q.is_zero() {
                let nq = ring.poly_neg(q);
                accumulate_poly(ring, &mut row, &nq, &rep[k])?;
            }
        }
        let lc = div.remainder.lead().unwrap().coeff;
        let inv = ring.field.inv(lc);
        let elem = ring.elem_scale(inv, &div.remainder);
        for p in row.iter_mut() {
            *p = ring.poly_scale(inv as i64, p);
        }
        basis.push(elem);
        rep.push(row);
        push_pairs(&mut queue, &basis, basis.len() - 1);
    }

    interreduce(ring, order, &mut basis, &mut rep)?;
    Ok(GroebnerBasis { elements: basis, order: order.clone(), reduced: true, transform: rep })
}

/// S-pair of two elements with lead terms on the same position. Returns the
/// normalized pair `a_i cof_i g_i - a_j cof_j g_j` plus the two cofactor
/// terms (as полynomials) used.
fn s_pair(
    ring: &Ring,
    order: &ModuleOrder,
    gi: &ModElement,
    gj: &ModElement,
) -> Result<(ModElement, Polynomial, Polynomial)> {
    let lt_i = gi.lead().unwrap();
    let lt_j = gj.lead().unwrap();
    debug_assert_eq!(lt_i.pos, lt_j.pos);
    let lcm = lt_i.mono.lcm(&lt_j.mono);
    let cof_i = lt_i.mono.divide_into(&lcm);
    let cof_j = lt_j.mono.divide_into(&lcm);
    let a_i = ring.field.inv(lt_i.coeff);
    let a_j = ring.field.inv(lt_j.coeff);
    let left = ring.elem_mul_term(gi, &cof_i, a_i)?;
    let right = ring.elem_mul_term(gj, &cof_j, a_j)?;
    Ok((
        ring.elem_sub(order, &left, &right),
        ring.poly_monomial(cof_i, a_i),
        ring.poly_monomial(cof_j, a_j),
    ))
}

fn accumulate(
    ring: &Ring,
    row: &mut [Polynomial],
    factor: &Polynomial,
    src: &[Polynomial],
) -> Result<()> {
    accumulate_poly(ring, row, factor, src)
}

fn accumulate_neg(
    ring: &Ring,
    row: &mut [Polynomial],
    factor: &Polynomial,
    src: &[Polynomial],
) -> Result<()> {
    let neg = ring.poly_neg(factor);
    accumulate_poly(ring, row, &neg, src)
}

fn accumulate_poly(
    ring: &Ring,
    row: &mut [Polynomial],
    factor: &Polynomial,
    src: &[Polynomial],
) -> Result<()> {
    for (dst, s) in row.iter_mut().zip(src) {
        if !s.is_zero() && !factor.is_zero() {
            let prod = ring.poly_mul(factor, s)?;
            *dst = ring.poly_add(dst, &prod);
        }
    }
    Ok(())
}

/// Makes the basis reduced: minimal lead terms, monic, fully tail-reduced.
/// Elements end up sorted ascending by lead term.
fn interreduce(
    ring: &Ring,
    order: &ModuleOrder,
    basis: &mut Vec<ModElement>,
    rep: &mut Vec<Vec<Polynomial>>,
) -> Result<()> {
    // drop elements whose lead is divisible by another surviving lead
    let mut alive: Vec<bool> = vec![true; basis.len()];
    let mut idx: Vec<usize> = (0..basis.len()).collect();
    idx.sort_by(|&a, &b| {
        let la = basis[a].lead().unwrap();
        let lb = basis[b].lead().unwrap();
        order.compare((lb.pos, &lb.mono), (la.pos, &la.mono))
    });
    for &i in &idx {
        let lt_i = basis[i].lead().unwrap().clone();
        for (j, b) in basis.iter().enumerate() {
            if i != j && alive[j] {
                let lt_j = b.lead().unwrap();
                if lt_j.pos == lt_i.pos && lt_j.mono.divides(&lt_i.mono) {
                    alive[i] = false;
                    break;
                }
            }
        }
    }
    let mut kept: Vec<ModElement> = Vec::new();
    let mut kept_rep: Vec<Vec<Polynomial>> = Vec::new();
    for i in (0..basis.len()).filter(|&i| alive[i]) {
        kept.push(basis[i].clone());
        kept_rep.push(rep[i].clone());
    }
    // tail-reduce each element against the others and normalize monic
    for i in 0..kept.len() {
        let others: Vec<ModElement> = kept
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, e)| e.clone())
            .collect();
        let div = divide(ring, order, &kept[i], &others)?;
        let mut elem = div.remainder;
        let mut row = kept_rep[i].clone();
        let mut oth = 0usize;
        for j in 0..kept.len() {
            if j == i {
                continue;
            }
            let q = &div.quotients[oth];
            if !q.is_zero() {
                let nq = ring.poly_neg(q);
                accumulate_poly(ring, &mut row, &nq, &kept_rep[j].clone())?;
            }
            oth += 1;
        }
        let lc = elem.lead().expect("tail reduction keeps the lead").coeff;
        if lc != 1 {
            let inv = ring.field.inv(lc);
            elem = ring.elem_scale(inv, &elem);
            for p in row.iter_mut() {
                *p = ring.poly_scale(inv as i64, p);
            }
        }
        kept[i] = elem;
        kept_rep[i] = row;
    }
    // canonical ordering: ascending lead
    let mut perm: Vec<usize> = (0..kept.len()).collect();
    perm.sort_by(|&a, &b| {
        let la = kept[a].lead().unwrap();
        let lb = kept[b].lead().unwrap();
        order.compare((la.pos, &la.mono), (lb.pos, &lb.mono))
    });
    *basis = perm.iter().map(|&i| kept[i].clone()).collect();
    *rep = perm.iter().map(|&i| kept_rep[i].clone()).collect();
    Ok(())
}

/// Monomial generators of the initial submodule: lead terms of a reduced
/// Groebner basis, coefficients normalized to one.
pub fn initial_submodule(
    ring: &Ring,
    module: &FreeModule,
    order: &ModuleOrder,
    gens: &[ModElement],
) -> Result<Vec<ModElement>> {
    let gb = buchberger(ring, module, order, gens)?;
    Ok(gb
        .elements
        .iter()
        .map(|g| {
            let lt = g.lead().unwrap();
            ModElement {
                terms: vec![ModTerm { pos: lt.pos, mono: lt.mono.clone(), coeff: 1 }],
            }
        })
        .collect())
}

/// Syzygies of a reduced monic Groebner basis from S-pair reductions
/// (Schreyer generators), with the chain criterion thinning the pair list.
fn spair_syzygies(
    ring: &Ring,
    module: &FreeModule,
    order: &ModuleOrder,
    gb: &[ModElement],
) -> Result<Vec<ModElement>> {
    let graded = ring.phi.is_some()
        && gb.iter().all(|g| ring.elem_is_homogeneous(module, g));
    let mut queue = PairQueue::new();
    for j in 0..gb.len() {
        let lt_j = gb[j].lead().unwrap();
        for i in 0..j {
            let lt_i = gb[i].lead().unwrap();
            if lt_i.pos == lt_j.pos {
                let lcm = lt_i.mono.lcm(&lt_j.mono);
                queue.push(pair_key(ring, module, graded, lt_j.pos, &lcm), i, j);
            }
        }
    }
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut syzygies = Vec::new();
    while let Some((i, j)) = queue.pop() {
        done.insert((i, j));
        let lt_i = gb[i].lead().unwrap();
        let lt_j = gb[j].lead().unwrap();
        let lcm = lt_i.mono.lcm(&lt_j.mono);
        let mut skip = false;
        for k in 0..gb.len() {
            if k == i || k == j {
                continue;
            }
            let lt_k = gb[k].lead().unwrap();
            if lt_k.pos == lt_i.pos
                && lt_k.mono.divides(&lcm)
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
            {
                skip = true;
                break;
            }
        }
        if skip {
            continue;
        }
        let (spoly, si, sj) = s_pair(ring, order, &gb[i], &gb[j])?;
        let div = divide(ring, order, &spoly, gb)?;
        if !div.remainder.is_zero() {
            return Err(Error::invalid(
                "S-pair did not reduce to zero against a Groebner basis",
            ));
        }
        let mut terms: Vec<ModTerm> = Vec::new();
        let push_poly = |p: &Polynomial, pos: usize, terms: &mut Vec<ModTerm>| {
            for (m, c) in &p.terms {
                terms.push(ModTerm { pos, mono: m.clone(), coeff: *c });
            }
        };
        push_poly(&si, i, &mut terms);
        push_poly(&ring.poly_neg(&sj), j, &mut terms);
        for (k, q) in div.quotients.iter().enumerate() {
            push_poly(&ring.poly_neg(q), k, &mut terms);
        }
        let syz = ring.elem_from_terms(order, terms);
        if !syz.is_zero() {
            syzygies.push(syz);
        }
    }
    Ok(syzygies)
}

/// Generators of the full syzygy module of `gens` (not necessarily a
/// Groebner basis; zero entries allowed). Lives in a free module with one
/// basis element per generator, carrying the degrees `gen_degrees`.
pub fn syzygy_basis(
    ring: &Ring,
    module: &FreeModule,
    order: &ModuleOrder,
    gens: &[ModElement],
    gen_degrees: &[Degree],
) -> Result<(FreeModule, Vec<ModElement>)> {
    assert_eq!(gens.len(), gen_degrees.len());
    let ambient = FreeModule::new(gen_degrees.to_vec());
    let nvars = ring.nvars();
    let mut syzygies: Vec<ModElement> = Vec::new();
    // a zero generator is annihilated by the unit
    for (j, g) in gens.iter().enumerate() {
        if g.is_zero() {
            syzygies.push(ModElement::basis(nvars, j));
        }
    }
    let nz: Vec<usize> = (0..gens.len()).filter(|&j| !gens[j].is_zero()).collect();
    if nz.is_empty() {
        return Ok((ambient, syzygies));
    }
    let nz_gens: Vec<ModElement> = nz.iter().map(|&j| gens[j].clone()).collect();
    let gb = buchberger(ring, module, order, &nz_gens)?;
    // N: express each generator in terms of the basis
    let mut n_rows: Vec<Vec<Polynomial>> = Vec::new();
    for g in &nz_gens {
        let div = divide(ring, order, g, &gb.elements)?;
        if !div.remainder.is_zero() {
            return Err(Error::invalid(
                "generator did not reduce to zero against its own Groebner basis",
            ));
        }
        n_rows.push(div.quotients);
    }
    // transformed S-pair syzygies: tau_j = sum_k sigma_k M[k][j]
    for sigma in spair_syzygies(ring, module, order, &gb.elements)? {
        let mut terms: Vec<ModTerm> = Vec::new();
        for (k, row) in gb.transform.iter().enumerate() {
            let p_k = sigma.coefficient_at(ring, k);
            if p_k.is_zero() {
                continue;
            }
            for (jj, m_kj) in row.iter().enumerate() {
                if m_kj.is_zero() {
                    continue;
                }
                let prod = ring.poly_mul(&p_k, m_kj)?;
                for (m, c) in &prod.terms {
                    terms.push(ModTerm { pos: nz[jj], mono: m.clone(), coeff: *c });
                }
            }
        }
        let tau = ring.elem_from_terms(order, terms);
        if !tau.is_zero() {
            syzygies.push(tau);
        }
    }
    // rows of I - N*M vanish on the generators by construction
    for (jj, row_n) in n_rows.iter().enumerate() {
        let mut terms: Vec<ModTerm> =
            vec![ModTerm { pos: nz[jj], mono: Monomial::one(nvars), coeff: 1 }];
        for (k, n_jk) in row_n.iter().enumerate() {
            if n_jk.is_zero() {
                continue;
            }
            for (jj2, m_kj) in gb.transform[k].iter().enumerate() {
                if m_kj.is_zero() {
                    continue;
                }
                let prod = ring.poly_neg(&ring.poly_mul(n_jk, m_kj)?);
                for (m, c) in &prod.terms {
                    terms.push(ModTerm { pos: nz[jj2], mono: m.clone(), coeff: *c });
                }
            }
        }
        let row = ring.elem_from_terms(order, terms);
        if !row.is_zero() && !syzygies.contains(&row) {
            syzygies.push(row);
        }
    }
    // canonical output: monic, sorted ascending by lead
    for s in syzygies.iter_mut() {
        let lc = s.lead().unwrap().coeff;
        if lc != 1 {
            *s = ring.elem_scale(ring.field.inv(lc), s);
        }
    }
    syzygies.dedup();
    syzygies.sort_by(|a, b| {
        let la = a.lead().unwrap();
        let lb = b.lead().unwrap();
        order.compare((la.pos, &la.mono), (lb.pos, &lb.mono))
    });
    Ok((ambient, syzygies))
}

/// Intersection of the ideal with the subring omitting the block variables,
/// computed from a block-elimination Groebner basis. The generators are run
/// ungraded; outputs stay in the same ring with zero exponents on the block.
pub fn eliminate(ring: &Ring, gens: &[Polynomial], block: &[usize]) -> Result<Vec<Polynomial>> {
    let mut mask = vec![false; ring.nvars()];
    for &b in block {
        mask[b] = true;
    }
    let elim_ring = Ring::new_unchecked(
        ring.group.clone(),
        ring.vars.clone(),
        ring.degrees.clone(),
        ring.field,
        MonomialOrder::Block { mask: mask.clone() },
        None,
    );
    let order = elim_ring.module_order();
    let module = FreeModule::new(vec![ring.group.zero()]);
    let elems: Vec<ModElement> = gens.iter().map(|f| ModElement::from_poly(f, 0)).collect();
    let gb = buchberger(&elim_ring, &module, &order, &elems)?;
    let mut out = Vec::new();
    for e in &gb.elements {
        let free_of_block = e
            .terms
            .iter()
            .all(|t| t.mono.exps.iter().zip(&mask).all(|(&ex, &inb)| !inb || ex == 0));
        if free_of_block {
            // re-sort into the ambient ring's own order
            out.push(ring.poly_from_terms(
                e.terms.iter().map(|t| (t.mono.clone(), t.coeff)).collect(),
            ));
        }
    }
    out.sort_by(|a, b| {
        let la = a.lead().unwrap().0;
        let lb = b.lead().unwrap().0;
        ring.order.compare(la, lb)
    });
    Ok(out)
}

/// Convenience wrapper for ideal-style (rank one) Groebner bases.
pub fn ideal_groebner(ring: &Ring, gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let module = FreeModule::new(vec![ring.group.zero()]);
    let order = ring.module_order();
    let elems: Vec<ModElement> = gens.iter().map(|f| ModElement::from_poly(f, 0)).collect();
    let gb = buchberger(ring, &module, &order, &elems)?;
    Ok(gb.elements.iter().map(|e| e.into_poly()).collect())
}
