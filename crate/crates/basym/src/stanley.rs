//! Stanley decompositions of monomial quotients, toric degree ideals, and
//! support decompositions of graded modules into shifted free submonoids.

use crate::error::{Error, Result};
use crate::freemod::{FreeModule, ModElement};
use crate::grading::{Degree, DegreeGroup};
use crate::groebner::{ideal_groebner, initial_submodule};
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::Ring;
use serde::Serialize;

/// One summand u * k[Z] of a Stanley decomposition, attached to a basis
/// position of the ambient free module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StanleySummand {
    pub pos: usize,
    pub mono: Monomial,
    pub vars: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StanleyDecomposition {
    pub summands: Vec<StanleySummand>,
}

impl StanleyDecomposition {
    pub fn summand_degree(&self, ring: &Ring, ambient: &FreeModule, s: &StanleySummand) -> Degree {
        ring.group
            .add(&ring.monomial_degree(&s.mono), &ambient.shifts[s.pos])
            .expect("same group")
    }
}

fn minimalize_monomials(gens: &mut Vec<Monomial>) {
    gens.sort();
    gens.dedup();
    let snapshot = gens.clone();
    gens.retain(|g| !snapshot.iter().any(|h| h != g && h.divides(g)));
}

/// Recursive variable split on the standard monomials: branch on the lowest
/// variable occurring in a minimal generator, into the multiplicand-free part
/// (variable removed) and the multiplicand-present part (colon ideal).
fn stanley_rec(
    nvars: usize,
    mut gens: Vec<Monomial>,
    avail: Vec<usize>,
    u: Monomial,
    out: &mut Vec<(Monomial, Vec<usize>)>,
) {
    minimalize_monomials(&mut gens);
    if gens.iter().any(|g| g.is_one()) {
        return;
    }
    if gens.is_empty() {
        out.push((u, avail));
        return;
    }
    let v = (0..nvars)
        .find(|&v| gens.iter().any(|g| g.exps[v] > 0))
        .expect("nonempty nontrivial generators use some variable");
    // branch without v: generators meeting v cannot divide v-free monomials
    let without: Vec<Monomial> = gens.iter().filter(|g| g.exps[v] == 0).cloned().collect();
    let avail_without: Vec<usize> = avail.iter().copied().filter(|&w| w != v).collect();
    stanley_rec(nvars, without, avail_without, u.clone(), out);
    // branch with v: colon by T_v
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let mut e = g.exps.clone();
            if e[v] > 0 {
                e[v] -= 1;
            }
            Monomial::from_exps(e)
        })
        .collect();
    let mut uv = u;
    uv.exps[v] += 1;
    stanley_rec(nvars, colon, avail, uv, out);
}

/// Stanley decomposition of F / <monomial generators>: the summand monomial
/// sets partition the standard monomials position by position.
pub fn stanley_decomposition(
    ring: &Ring,
    ambient: &FreeModule,
    monomial_gens: &[ModElement],
) -> Result<StanleyDecomposition> {
    let nvars = ring.nvars();
    let mut by_pos: Vec<Vec<Monomial>> = vec![Vec::new(); ambient.rank()];
    for g in monomial_gens {
        if g.terms.len() != 1 {
            return Err(Error::invalid("generators of a monomial submodule must be monomials"));
        }
        let t = &g.terms[0];
        by_pos[t.pos].push(t.mono.clone());
    }
    let mut summands = Vec::new();
    for (pos, gens) in by_pos.into_iter().enumerate() {
        let mut local = Vec::new();
        stanley_rec(
            nvars,
            gens,
            (0..nvars).collect(),
            Monomial::one(nvars),
            &mut local,
        );
        for (mono, vars) in local {
            summands.push(StanleySummand { pos, mono, vars });
        }
    }
    Ok(StanleyDecomposition { summands })
}

/// Conservation check on a window: per degree, the summand monomial counts
/// add up to the dimension of the quotient.
pub fn verify_conservation(
    ring: &Ring,
    ambient: &FreeModule,
    monomial_gens: &[ModElement],
    sd: &StanleyDecomposition,
    window: &[Degree],
) -> Result<bool> {
    use crate::homalg::{hilbert_window, Presentation};
    let pres = Presentation {
        gens: ambient.shifts.clone(),
        relations: monomial_gens.to_vec(),
    };
    let dims = hilbert_window(ring, &pres, window)?;
    for gamma in window {
        let mut count = 0usize;
        for s in &sd.summands {
            let base = sd.summand_degree(ring, ambient, s);
            let local = ring.group.sub(gamma, &base)?;
            count += ring
                .monomials_of_degree(&local)?
                .into_iter()
                .filter(|m| m.exps.iter().enumerate().all(|(v, &e)| e == 0 || s.vars.contains(&v)))
                .count();
        }
        if count != dims[gamma] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Generators (a reduced Groebner basis) of the toric ideal of the degree
/// map: all binomials T^a - T^b with deg T^a = deg T^b. Computed from the
/// relation lattice of the variable degrees; the lattice-basis binomials are
/// saturated by the product of the variables through one auxiliary
/// elimination, since they can generate a strictly smaller ideal.
pub fn toric_degree_ideal(ring: &Ring) -> Result<Vec<Polynomial>> {
    let lattice = ring.group.relation_lattice(&ring.degrees)?;
    if lattice.is_empty() {
        return Ok(Vec::new());
    }
    let n = ring.nvars();
    let mut binomials = Vec::new();
    for a in &lattice {
        let mut plus = vec![0u32; n];
        let mut minus = vec![0u32; n];
        for (i, &c) in a.iter().enumerate() {
            if c > 0 {
                plus[i] = c as u32;
            } else {
                minus[i] = (-c) as u32;
            }
        }
        binomials.push((Monomial::from_exps(plus), Monomial::from_exps(minus)));
    }
    // extended ring B[y] for the Rabinowitsch-style saturation
    let mut vars = ring.vars.clone();
    let mut yname = "y_sat".to_string();
    while vars.contains(&yname) {
        yname.insert(0, '_');
    }
    vars.push(yname);
    let mut degrees = ring.degrees.clone();
    degrees.push(ring.group.zero());
    let ext = Ring::new_unchecked(
        ring.group.clone(),
        vars,
        degrees,
        ring.field,
        ring.order.clone(),
        None,
    );
    let mut gens: Vec<Polynomial> = binomials
        .iter()
        .map(|(p, m)| {
            let mut pe = p.exps.clone();
            pe.push(0);
            let mut me = m.exps.clone();
            me.push(0);
            ext.poly_sub(
                &ext.poly_monomial(Monomial::from_exps(pe), 1),
                &ext.poly_monomial(Monomial::from_exps(me), 1),
            )
        })
        .collect();
    // y * T1...Tr - 1
    let mut all = vec![1u32; n];
    all.push(1);
    gens.push(ext.poly_sub(
        &ext.poly_monomial(Monomial::from_exps(all), 1),
        &ext.poly_constant(1),
    ));
    let eliminated = crate::groebner::eliminate(&ext, &gens, &[n])?;
    let shrunk: Vec<Polynomial> = eliminated
        .iter()
        .map(|f| {
            ring.poly_from_terms(
                f.terms
                    .iter()
                    .map(|(m, c)| (Monomial::from_exps(m.exps[..n].to_vec()), *c))
                    .collect(),
            )
        })
        .collect();
    // reduced basis in the ring's own order, so lead terms are canonical
    ideal_groebner(ring, &shrunk)
}

/// A finite union of shifted free submonoids shift + <gens>, each generating
/// tuple linearly independent over Z.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportComponent {
    pub shift: Degree,
    pub gens: Vec<Degree>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportDecomposition {
    pub components: Vec<SupportComponent>,
}

impl SupportDecomposition {
    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

/// True iff gamma lies in some component's shifted free submonoid.
pub fn support_membership(
    group: &DegreeGroup,
    decomp: &SupportDecomposition,
    gamma: &Degree,
) -> Result<bool> {
    for c in &decomp.components {
        if group.shifted_monoid_contains(&c.shift, &c.gens, gamma)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Splits the support of a polynomial subring on the listed variables into
/// disjoint shifted free submonoids, via the toric degree ideal of the
/// variable degrees.
pub fn toric_split(ring: &Ring, vars: &[usize]) -> Result<Vec<(Degree, Vec<Degree>)>> {
    if vars.is_empty() {
        return Ok(vec![(ring.group.zero(), Vec::new())]);
    }
    let sub = Ring::new_unchecked(
        ring.group.clone(),
        vars.iter().map(|&v| ring.vars[v].clone()).collect(),
        vars.iter().map(|&v| ring.degrees[v].clone()).collect(),
        ring.field,
        MonomialOrder::GrevLex,
        None,
    );
    let toric = toric_degree_ideal(&sub)?;
    if toric.is_empty() {
        return Ok(vec![(ring.group.zero(), sub.degrees.clone())]);
    }
    let ambient = FreeModule::new(vec![ring.group.zero()]);
    let order = sub.module_order();
    let leads = initial_submodule(
        &sub,
        &ambient,
        &order,
        &toric.iter().map(|f| ModElement::from_poly(f, 0)).collect::<Vec<_>>(),
    )?;
    let sd = stanley_decomposition(&sub, &ambient, &leads)?;
    let mut out = Vec::new();
    for s in &sd.summands {
        let shift = sub.monomial_degree(&s.mono);
        let gens: Vec<Degree> = s.vars.iter().map(|&v| sub.degrees[v].clone()).collect();
        if !ring.group.is_free_independent(&gens)? {
            return Err(Error::invalid(
                "toric split produced a dependent degree tuple",
            ));
        }
        out.push((shift, gens));
    }
    Ok(out)
}

/// Support of a finitely presented graded module over a polynomial ring as a
/// finite union of shifted free submonoids on subsets of the variable
/// degrees: initial submodule, per-position Stanley summands, then a toric
/// split of each polynomial subring.
pub fn module_support_decomposition(
    ring: &Ring,
    pres: &crate::homalg::Presentation,
) -> Result<SupportDecomposition> {
    if pres.is_zero_module() {
        return Ok(SupportDecomposition { components: Vec::new() });
    }
    crate::homalg::validate_presentation(ring, pres)?;
    let ambient = pres.ambient();
    let order = ring.module_order();
    let leads = if pres.relations.is_empty() {
        Vec::new()
    } else {
        initial_submodule(ring, &ambient, &order, &pres.relations)?
    };
    let sd = stanley_decomposition(ring, &ambient, &leads)?;
    let mut components = Vec::new();
    for s in &sd.summands {
        let base = sd.summand_degree(ring, &ambient, s);
        for (shift, gens) in toric_split(ring, &s.vars)? {
            components.push(SupportComponent {
                shift: ring.group.add(&base, &shift)?,
                gens,
            });
        }
    }
    components.sort_by(|a, b| {
        ring.weight(&a.shift)
            .cmp(&ring.weight(&b.shift))
            .then_with(|| a.shift.cmp(&b.shift))
            .then_with(|| a.gens.cmp(&b.gens))
    });
    components.dedup();
    Ok(SupportDecomposition { components })
}
