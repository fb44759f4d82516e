//! Graded free modules, complexes, resolutions and their invariants.

use crate::error::{Error, Result};
use crate::freemod::{FreeModule, ModElement, ModTerm};
use crate::grading::Degree;
use crate::groebner::{buchberger, divide, initial_submodule, syzygy_basis};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::Ring;
use std::collections::BTreeMap;

/// Generators-and-relations data of a graded module: the module presented is
/// the cokernel of `relations` inside the free module on `gens`.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub gens: Vec<Degree>,
    pub relations: Vec<ModElement>,
}

impl Presentation {
    pub fn free(shifts: Vec<Degree>) -> Self {
        Presentation { gens: shifts, relations: Vec::new() }
    }

    /// S/<ideal gens> as a cyclic module.
    pub fn cyclic_quotient(ring: &Ring, ideal: &[Polynomial]) -> Self {
        Presentation {
            gens: vec![ring.group.zero()],
            relations: ideal.iter().map(|f| ModElement::from_poly(f, 0)).collect(),
        }
    }

    pub fn ambient(&self) -> FreeModule {
        FreeModule::new(self.gens.clone())
    }

    pub fn is_zero_module(&self) -> bool {
        self.gens.is_empty()
    }
}

/// Degree-zero map of graded free modules, stored by columns.
#[derive(Debug, Clone)]
pub struct GradedMap {
    pub source: FreeModule,
    pub target: FreeModule,
    pub columns: Vec<ModElement>,
}

/// Chain of graded free modules; maps[k] goes from terms[k+1] to terms[k].
#[derive(Debug, Clone)]
pub struct GradedComplex {
    pub terms: Vec<FreeModule>,
    pub maps: Vec<GradedMap>,
}

impl GradedComplex {
    pub fn length(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn term(&self, i: usize) -> Option<&FreeModule> {
        self.terms.get(i)
    }

    /// Rank of the i-th term; zero beyond the computed length.
    pub fn rank(&self, i: usize) -> usize {
        self.terms.get(i).map_or(0, |m| m.rank())
    }

    pub fn shifts(&self, i: usize) -> Vec<Degree> {
        self.terms.get(i).map_or_else(Vec::new, |m| m.shifts.clone())
    }
}

impl Ring {
    /// Image of an element of the source under a graded map.
    pub fn apply_map(&self, map: &GradedMap, v: &ModElement) -> Result<ModElement> {
        let order = self.module_order();
        let mut acc = ModElement::zero();
        for t in &v.terms {
            if t.pos >= map.columns.len() {
                return Err(Error::AmbientMismatch(format!(
                    "position {} outside map source of rank {}",
                    t.pos,
                    map.columns.len()
                )));
            }
            let part = self.elem_mul_term(&map.columns[t.pos], &t.mono, t.coeff)?;
            acc = self.elem_add(&order, &acc, &part);
        }
        Ok(acc)
    }
}

pub fn validate_presentation(ring: &Ring, pres: &Presentation) -> Result<()> {
    let ambient = pres.ambient();
    for rel in &pres.relations {
        if !rel.is_zero() {
            ring.elem_degree(&ambient, rel)?;
        }
    }
    Ok(())
}

/// Checks d_i compose to zero, exactly.
pub fn assert_complex(ring: &Ring, complex: &GradedComplex) -> Result<()> {
    for k in 0..complex.maps.len().saturating_sub(1) {
        for col in &complex.maps[k + 1].columns {
            let img = ring.apply_map(&complex.maps[k], col)?;
            if !img.is_zero() {
                return Err(Error::invalid("differentials do not compose to zero"));
            }
        }
    }
    Ok(())
}

/// Whether no differential entry has a unit (degree-zero constant) term.
pub fn is_minimal(complex: &GradedComplex) -> bool {
    complex.maps.iter().all(|m| {
        m.columns
            .iter()
            .all(|c| c.terms.iter().all(|t| !t.mono.is_one()))
    })
}

/// Graded free resolution of the presented module, built by iterated syzygy
/// computation on Groebner bases and then minimalized (unless `minimal` is
/// false). Exact in homological degrees 1..len-1 with cokernel the module.
pub fn free_resolution(
    ring: &Ring,
    pres: &Presentation,
    len: usize,
    minimal: bool,
) -> Result<GradedComplex> {
    let bound = ring.nvars() + 1;
    if len > bound {
        return Err(Error::ResolutionLength { requested: len, bound });
    }
    validate_presentation(ring, pres)?;
    let order = ring.module_order();
    let mut terms = vec![pres.ambient()];
    let mut maps: Vec<GradedMap> = Vec::new();
    let mut current: Vec<ModElement> = pres
        .relations
        .iter()
        .filter(|r| !r.is_zero())
        .cloned()
        .collect();
    for _ in 1..=len {
        if current.is_empty() {
            break;
        }
        let target = terms.last().unwrap().clone();
        let gb = buchberger(ring, &target, &order, &current)?;
        let shifts: Vec<Degree> = gb
            .elements
            .iter()
            .map(|e| ring.elem_degree(&target, e))
            .collect::<Result<Vec<_>>>()?;
        let source = FreeModule::new(shifts.clone());
        let (_, syz) = syzygy_basis(ring, &target, &order, &gb.elements, &shifts)?;
        maps.push(GradedMap {
            source: source.clone(),
            target,
            columns: gb.elements,
        });
        terms.push(source);
        current = syz;
    }
    let complex = GradedComplex { terms, maps };
    assert_complex(ring, &complex)?;
    if minimal {
        minimalize(ring, &complex)
    } else {
        Ok(complex)
    }
}

/// Entry matrix view of a map: entries[row][col].
fn map_entries(ring: &Ring, map: &GradedMap) -> Vec<Vec<Polynomial>> {
    let rows = map.target.rank();
    (0..rows)
        .map(|r| {
            map.columns
                .iter()
                .map(|c| c.coefficient_at(ring, r))
                .collect()
        })
        .collect()
}

fn entries_to_map(
    ring: &Ring,
    source: FreeModule,
    target: FreeModule,
    entries: &[Vec<Polynomial>],
) -> GradedMap {
    let order = ring.module_order();
    let cols = source.rank();
    let columns = (0..cols)
        .map(|c| {
            let mut terms = Vec::new();
            for (r, row) in entries.iter().enumerate() {
                for (m, co) in &row[c].terms {
                    terms.push(ModTerm { pos: r, mono: m.clone(), coeff: *co });
                }
            }
            ring.elem_from_terms(&order, terms)
        })
        .collect();
    GradedMap { source, target, columns }
}

/// Cancels unit entries until every differential entry lies in the maximal
/// ideal. Homotopy equivalence, so homology is untouched; termination because
/// each step drops two ranks.
pub fn minimalize(ring: &Ring, complex: &GradedComplex) -> Result<GradedComplex> {
    let mut terms = complex.terms.clone();
    let mut mats: Vec<Vec<Vec<Polynomial>>> =
        complex.maps.iter().map(|m| map_entries(ring, m)).collect();
    loop {
        let mut found: Option<(usize, usize, usize)> = None;
        'scan: for (k, mat) in mats.iter().enumerate() {
            for (r, row) in mat.iter().enumerate() {
                for (c, e) in row.iter().enumerate() {
                    if let Some((m, _)) = e.lead() {
                        if m.is_one() {
                            found = Some((k, r, c));
                            break 'scan;
                        }
                    }
                }
            }
        }
        let Some((k, r, c)) = found else { break };
        // homogeneous degree-zero entries with a constant term are constants
        let unit = &mats[k][r][c];
        if unit.terms.len() != 1 {
            return Err(Error::invalid(
                "unit entry with higher-order terms; complex is not graded",
            ));
        }
        let u = unit.terms[0].1;
        let u_inv = ring.field.inv(u);
        let a = mats[k].clone();
        let rows = a.len();
        let cols = if rows == 0 { 0 } else { a[0].len() };
        let mut reduced: Vec<Vec<Polynomial>> = Vec::with_capacity(rows - 1);
        for r2 in 0..rows {
            if r2 == r {
                continue;
            }
            let mut row = Vec::with_capacity(cols - 1);
            for c2 in 0..cols {
                if c2 == c {
                    continue;
                }
                // a[r2][c2] - a[r2][c] * u^-1 * a[r][c2]
                let corr = ring.poly_mul(&a[r2][c], &a[r][c2])?;
                let corr = ring.poly_scale(u_inv as i64, &corr);
                row.push(ring.poly_sub(&a[r2][c2], &corr));
            }
            reduced.push(row);
        }
        mats[k] = reduced;
        terms[k].shifts.remove(r);
        terms[k + 1].shifts.remove(c);
        if k + 1 < mats.len() {
            mats[k + 1].remove(c);
        }
        if k > 0 {
            for row in mats[k - 1].iter_mut() {
                row.remove(r);
            }
        }
    }
    // rebuild maps, trimming trailing zero terms
    let mut maps = Vec::new();
    for (k, mat) in mats.iter().enumerate() {
        maps.push(entries_to_map(
            ring,
            terms[k + 1].clone(),
            terms[k].clone(),
            mat,
        ));
    }
    while let Some(last) = terms.last() {
        if last.rank() == 0 && terms.len() > 1 {
            terms.pop();
            maps.pop();
        } else {
            break;
        }
    }
    let out = GradedComplex { terms, maps };
    assert_complex(ring, &out)?;
    Ok(out)
}

/// Multigraded Betti numbers read off a minimal resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, Degree), usize>,
}

impl BettiTable {
    pub fn support(&self, i: usize) -> Vec<Degree> {
        self.entries
            .keys()
            .filter(|(h, _)| *h == i)
            .map(|(_, d)| d.clone())
            .collect()
    }

    pub fn total(&self, i: usize) -> usize {
        self.entries
            .iter()
            .filter(|((h, _), _)| *h == i)
            .map(|(_, &m)| m)
            .sum()
    }
}

/// Betti table of the presented module up to homological index `max_i`.
/// The resolution is taken one step past `max_i`: a redundant generator of
/// the i-th term is only cancelled through a unit entry of the (i+1)-st
/// differential, so the truncation must include it.
pub fn tor_table(ring: &Ring, pres: &Presentation, max_i: usize) -> Result<BettiTable> {
    let len = (max_i + 1).min(ring.nvars() + 1);
    let res = free_resolution(ring, pres, len, true)?;
    let mut entries = BTreeMap::new();
    for i in 0..=max_i.min(res.length()) {
        for d in res.shifts(i) {
            *entries.entry((i, d)).or_insert(0) += 1;
        }
    }
    Ok(BettiTable { entries })
}

/// Which variables of a product-graded ring are base (x) variables and which
/// are fiber (T) variables, together with how to read the Z^s part of a
/// degree. The free part of a G x Z^s degree stores G first, then Z^s.
#[derive(Debug, Clone)]
pub struct VarSplit {
    pub x_vars: Vec<usize>,
    pub t_vars: Vec<usize>,
    pub g_free_rank: usize,
    pub s: usize,
    /// block index of each T variable, aligned with `t_vars`
    pub t_blocks: Vec<usize>,
}

impl VarSplit {
    pub fn g_part(&self, d: &Degree) -> Degree {
        Degree {
            free: d.free[..self.g_free_rank].to_vec(),
            torsion: d.torsion.clone(),
        }
    }

    pub fn z_part(&self, d: &Degree) -> Vec<i64> {
        d.free[self.g_free_rank..self.g_free_rank + self.s].to_vec()
    }
}

/// All exponent assignments over the T variables with prescribed Z^s degree
/// `v` (per-block compositions; block i holds binom(v_i + r_i - 1, r_i - 1)
/// choices, which bounds the memory of a strand block).
fn t_monomials_of_z_degree(split: &VarSplit, nvars: usize, v: &[i64]) -> Vec<Monomial> {
    if v.iter().any(|&x| x < 0) {
        return Vec::new();
    }
    let mut per_block: Vec<Vec<usize>> = vec![Vec::new(); split.s];
    for (idx, &b) in split.t_blocks.iter().enumerate() {
        per_block[b].push(split.t_vars[idx]);
    }
    let mut monos = vec![Monomial::one(nvars)];
    for (b, vars) in per_block.iter().enumerate() {
        let total = v[b] as u32;
        if vars.is_empty() {
            if total != 0 {
                return Vec::new();
            }
            continue;
        }
        let comps = compositions(total, vars.len());
        let mut next = Vec::with_capacity(monos.len() * comps.len());
        for m in &monos {
            for comp in &comps {
                let mut nm = m.clone();
                for (&var, &e) in vars.iter().zip(comp) {
                    nm.exps[var] = e;
                }
                next.push(nm);
            }
        }
        monos = next;
    }
    monos.sort_by(|a, b| a.exps.cmp(&b.exps));
    monos
}

/// All length-`parts` vectors of nonnegative integers summing to `total`.
pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            let mut v = Vec::with_capacity(parts);
            v.push(first);
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

/// The (*, t)-strand of a complex over a product-graded ring: the subcomplex
/// of elements whose Z^s degree component equals `t`, as a complex of free
/// modules over the base ring.
pub fn strand(
    big_ring: &Ring,
    s_ring: &Ring,
    split: &VarSplit,
    complex: &GradedComplex,
    t: &[i64],
) -> Result<GradedComplex> {
    assert_eq!(t.len(), split.s);
    let order = s_ring.module_order();
    // strand basis of each term: (column, T-monomial) pairs
    let mut bases: Vec<Vec<(usize, Monomial)>> = Vec::new();
    let mut lookup: Vec<BTreeMap<(usize, Vec<u32>), usize>> = Vec::new();
    let mut terms: Vec<FreeModule> = Vec::new();
    for fm in &complex.terms {
        let mut basis = Vec::new();
        let mut map = BTreeMap::new();
        let mut shifts = Vec::new();
        for (col, shift) in fm.shifts.iter().enumerate() {
            let want: Vec<i64> = t
                .iter()
                .zip(split.z_part(shift))
                .map(|(&ti, zi)| ti - zi)
                .collect();
            for m in t_monomials_of_z_degree(split, big_ring.nvars(), &want) {
                let g_extra = split.g_part(&big_ring.monomial_degree(&m));
                let g_shift = s_ring
                    .group
                    .add(&split.g_part(shift), &g_extra)?;
                map.insert((col, m.exps.clone()), basis.len());
                basis.push((col, m));
                shifts.push(g_shift);
            }
        }
        bases.push(basis);
        lookup.push(map);
        terms.push(FreeModule::new(shifts));
    }
    let mut maps = Vec::new();
    for (k, map) in complex.maps.iter().enumerate() {
        let mut columns = Vec::new();
        for (col, tmono) in &bases[k + 1] {
            let image = &map.columns[*col];
            let mut out_terms = Vec::new();
            for term in &image.terms {
                let mut x_mono = Monomial::one(s_ring.nvars());
                for (si, &bi) in split.x_vars.iter().enumerate() {
                    x_mono.exps[si] = term.mono.exps[bi];
                }
                let mut t_mono = tmono.clone();
                for &bi in &split.t_vars {
                    t_mono.exps[bi] += term.mono.exps[bi];
                }
                let idx = *lookup[k]
                    .get(&(term.pos, t_mono.exps.clone()))
                    .ok_or_else(|| Error::invalid("strand index bookkeeping failed"))?;
                out_terms.push(ModTerm { pos: idx, mono: x_mono, coeff: term.coeff });
            }
            columns.push(s_ring.elem_from_terms(&order, out_terms));
        }
        maps.push(GradedMap {
            source: terms[k + 1].clone(),
            target: terms[k].clone(),
            columns,
        });
    }
    let out = GradedComplex { terms, maps };
    assert_complex(s_ring, &out)?;
    Ok(out)
}

/// Presentation of the homology H_i(c) = ker d_i / im d_{i+1}: generators are
/// syzygies of the d_i columns, relations are lifted d_{i+1} columns plus the
/// syzygies among the kernel generators.
pub fn subquotient_presentation(
    ring: &Ring,
    complex: &GradedComplex,
    i: usize,
) -> Result<Presentation> {
    let order = ring.module_order();
    if i >= complex.terms.len() {
        return Ok(Presentation { gens: Vec::new(), relations: Vec::new() });
    }
    let ambient = complex.terms[i].clone();
    // kernel generators of d_i
    let (kernel, kernel_degrees): (Vec<ModElement>, Vec<Degree>) = if i == 0 {
        (
            (0..ambient.rank())
                .map(|p| ModElement::basis(ring.nvars(), p))
                .collect(),
            ambient.shifts.clone(),
        )
    } else {
        let map = &complex.maps[i - 1];
        let (_, syz) = syzygy_basis(
            ring,
            &map.target,
            &order,
            &map.columns,
            &map.source.shifts,
        )?;
        let degs = syz
            .iter()
            .map(|e| ring.elem_degree(&ambient, e))
            .collect::<Result<Vec<_>>>()?;
        (syz, degs)
    };
    if kernel.is_empty() {
        return Ok(Presentation { gens: Vec::new(), relations: Vec::new() });
    }
    let mut relations = Vec::new();
    // lift the incoming boundaries through the kernel generators
    if i < complex.maps.len() {
        let gb = buchberger(ring, &ambient, &order, &kernel)?;
        for col in &complex.maps[i].columns {
            if col.is_zero() {
                continue;
            }
            let div = divide(ring, &order, col, &gb.elements)?;
            if !div.remainder.is_zero() {
                return Err(Error::invalid(
                    "boundary column is not in the kernel of the next differential",
                ));
            }
            let mut coords = vec![Polynomial::zero(); kernel.len()];
            for (k, q) in div.quotients.iter().enumerate() {
                if q.is_zero() {
                    continue;
                }
                for (j, m) in gb.transform[k].iter().enumerate() {
                    if !m.is_zero() {
                        let prod = ring.poly_mul(q, m)?;
                        coords[j] = ring.poly_add(&coords[j], &prod);
                    }
                }
            }
            let mut terms = Vec::new();
            for (j, c) in coords.iter().enumerate() {
                for (m, co) in &c.terms {
                    terms.push(ModTerm { pos: j, mono: m.clone(), coeff: *co });
                }
            }
            let rel = ring.elem_from_terms(&order, terms);
            if !rel.is_zero() {
                relations.push(rel);
            }
        }
    }
    // syzygies among the kernel generators
    let (_, ksyz) = syzygy_basis(ring, &ambient, &order, &kernel, &kernel_degrees)?;
    relations.extend(ksyz);
    Ok(Presentation { gens: kernel_degrees, relations })
}

/// dim_k of the presented module in each requested degree, by counting
/// standard monomials against the initial submodule of the relations.
pub fn hilbert_window(
    ring: &Ring,
    pres: &Presentation,
    degrees: &[Degree],
) -> Result<BTreeMap<Degree, usize>> {
    validate_presentation(ring, pres)?;
    let order = ring.module_order();
    let ambient = pres.ambient();
    let leads = if pres.relations.is_empty() {
        Vec::new()
    } else {
        initial_submodule(ring, &ambient, &order, &pres.relations)?
    };
    let mut by_pos: Vec<Vec<Monomial>> = vec![Vec::new(); ambient.rank()];
    for l in &leads {
        let t = l.lead().unwrap();
        by_pos[t.pos].push(t.mono.clone());
    }
    let mut out = BTreeMap::new();
    for gamma in degrees {
        let mut count = 0usize;
        for (pos, shift) in ambient.shifts.iter().enumerate() {
            let local = ring.group.sub(gamma, shift)?;
            for m in ring.monomials_of_degree(&local)? {
                if !by_pos[pos].iter().any(|l| l.divides(&m)) {
                    count += 1;
                }
            }
        }
        out.insert(gamma.clone(), count);
    }
    Ok(out)
}
