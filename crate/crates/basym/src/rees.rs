//! Multi-Rees algebra and module presentations over S[T_ij], plus the direct
//! ideal-power oracle.

use crate::error::{Error, Result};
use crate::freemod::{FreeModule, ModElement, ModTerm};
use crate::grading::{Degree, PositivityFunctional};
use crate::groebner::{buchberger, eliminate, syzygy_basis};
use crate::homalg::{compositions, GradedComplex, GradedMap, Presentation, VarSplit};
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::Ring;

/// The extended ring data for ideals I_1..I_s in S: R = S[T_ij] with the
/// product grading, the fiber ring B = k[T_ij], and the scaffolding ring
/// S[T_ij, u_i] used for kernel eliminations.
///
/// In the default grading deg T_ij = (deg f_ij, e_i). The shifted grading
/// (deg T_ij = (0, e_i)) is only legal when every ideal is generated in a
/// single degree; it keeps the per-index shift sets finite subsets of G.
#[derive(Debug, Clone)]
pub struct ReesSetup {
    pub s_ring: Ring,
    pub ideals: Vec<Vec<Polynomial>>,
    pub gen_degrees: Vec<Vec<Degree>>,
    pub shifted: bool,
    pub r_ring: Ring,
    pub b_ring: Ring,
    pub elim_ring: Ring,
    pub split: VarSplit,
    pub b_split: VarSplit,
    u_indices: Vec<usize>,
}

fn unique_name(base: String, taken: &mut Vec<String>) -> String {
    let mut name = base;
    while taken.contains(&name) {
        name.insert(0, '_');
    }
    taken.push(name.clone());
    name
}

impl ReesSetup {
    pub fn new(s_ring: Ring, ideals: Vec<Vec<Polynomial>>, shifted: bool) -> Result<Self> {
        if ideals.is_empty() {
            return Err(Error::invalid("at least one ideal is required"));
        }
        let s = ideals.len();
        let mut gen_degrees = Vec::with_capacity(s);
        for (i, gens) in ideals.iter().enumerate() {
            if gens.is_empty() {
                return Err(Error::invalid(format!("ideal {} has no generators", i + 1)));
            }
            let degs: Vec<Degree> = gens
                .iter()
                .map(|f| s_ring.poly_degree(f))
                .collect::<Result<Vec<_>>>()?;
            if shifted && degs.iter().any(|d| d != &degs[0]) {
                return Err(Error::NotEquigenerated { index: i + 1 });
            }
            gen_degrees.push(degs);
        }

        let group_r = s_ring.group.product_with_free(s);
        let d = s_ring.group.free_rank;
        let lift = |g: &Degree, z: &[i64]| -> Degree {
            let mut free = g.free.clone();
            free.extend_from_slice(z);
            Degree { free, torsion: g.torsion.clone() }
        };
        let e = |i: usize| -> Vec<i64> {
            (0..s).map(|k| i64::from(k == i)).collect()
        };

        let mut taken = s_ring.vars.clone();
        let mut t_names = Vec::new();
        let mut t_blocks = Vec::new();
        let mut t_degrees = Vec::new();
        for (i, degs) in gen_degrees.iter().enumerate() {
            for (j, gd) in degs.iter().enumerate() {
                let base = if s == 1 {
                    format!("T{}", j + 1)
                } else {
                    format!("T{}_{}", i + 1, j + 1)
                };
                t_names.push(unique_name(base, &mut taken));
                t_blocks.push(i);
                let g_part = if shifted { s_ring.group.zero() } else { gd.clone() };
                t_degrees.push(lift(&g_part, &e(i)));
            }
        }

        let phi_weights: Vec<_> = {
            let base = s_ring.functional()?;
            let mut w = base.weights.clone();
            w.extend(std::iter::repeat(crate::grading::Weight::from_integer(1)).take(s));
            w
        };
        let phi_r = PositivityFunctional::new(phi_weights);

        let mut r_vars = s_ring.vars.clone();
        r_vars.extend(t_names.iter().cloned());
        let mut r_degrees: Vec<Degree> =
            s_ring.degrees.iter().map(|g| lift(g, &vec![0; s])).collect();
        r_degrees.extend(t_degrees.iter().cloned());
        let r_ring = Ring::new(
            group_r.clone(),
            r_vars.clone(),
            r_degrees.clone(),
            s_ring.field,
            MonomialOrder::GrevLex,
            phi_r.clone(),
        )?;

        let b_ring = Ring::new(
            group_r.clone(),
            t_names.clone(),
            t_degrees.clone(),
            s_ring.field,
            MonomialOrder::GrevLex,
            phi_r.clone(),
        )?;

        let mut e_vars = r_vars.clone();
        let mut u_indices = Vec::new();
        let mut e_degrees = r_degrees.clone();
        for i in 0..s {
            let name = unique_name(format!("u{}", i + 1), &mut taken);
            u_indices.push(e_vars.len());
            e_vars.push(name);
            // makes the graph generators T_ij - f_ij u_i formally homogeneous
            let g_part = if shifted {
                s_ring.group.neg(&gen_degrees[i][0])?
            } else {
                s_ring.group.zero()
            };
            e_degrees.push(lift(&g_part, &e(i)));
        }
        let elim_ring = Ring::new_unchecked(
            group_r,
            e_vars,
            e_degrees,
            s_ring.field,
            MonomialOrder::GrevLex,
            None,
        );

        let n = s_ring.nvars();
        let nt = t_names.len();
        let split = VarSplit {
            x_vars: (0..n).collect(),
            t_vars: (n..n + nt).collect(),
            g_free_rank: d,
            s,
            t_blocks: t_blocks.clone(),
        };
        let b_split = VarSplit {
            x_vars: Vec::new(),
            t_vars: (0..nt).collect(),
            g_free_rank: d,
            s,
            t_blocks,
        };

        Ok(ReesSetup {
            s_ring,
            ideals,
            gen_degrees,
            shifted,
            r_ring,
            b_ring,
            elim_ring,
            split,
            b_split,
            u_indices,
        })
    }

    pub fn s(&self) -> usize {
        self.ideals.len()
    }

    fn pad_poly(&self, dst: &Ring, f: &Polynomial) -> Polynomial {
        let n = dst.nvars();
        dst.poly_from_terms(
            f.terms
                .iter()
                .map(|(m, c)| {
                    let mut exps = m.exps.clone();
                    exps.resize(n, 0);
                    (Monomial::from_exps(exps), *c)
                })
                .collect(),
        )
    }

    fn shrink_poly(&self, dst: &Ring, f_terms: &[(Monomial, u64)]) -> Polynomial {
        let n = dst.nvars();
        dst.poly_from_terms(
            f_terms
                .iter()
                .map(|(m, c)| {
                    debug_assert!(m.exps[n..].iter().all(|&e| e == 0));
                    (Monomial::from_exps(m.exps[..n].to_vec()), *c)
                })
                .collect(),
        )
    }

    /// Graph generators T_ij - f_ij u_i in the elimination ring.
    fn graph_generators(&self) -> Result<Vec<Polynomial>> {
        let mut out = Vec::new();
        let mut t_idx = self.split.t_vars[0];
        for (i, gens) in self.ideals.iter().enumerate() {
            for f in gens {
                let t = self.elim_ring.poly_var(t_idx);
                let fu = self.elim_ring.poly_mul(
                    &self.pad_poly(&self.elim_ring, f),
                    &self.elim_ring.poly_var(self.u_indices[i]),
                )?;
                out.push(self.elim_ring.poly_sub(&t, &fu));
                t_idx += 1;
            }
        }
        Ok(out)
    }

    /// Generators of the kernel of R ->> multi-Rees algebra, T_ij -> f_ij u_i.
    pub fn rees_ideal(&self) -> Result<Vec<Polynomial>> {
        let graph = self.graph_generators()?;
        let eliminated = eliminate(&self.elim_ring, &graph, &self.u_indices)?;
        let out: Vec<Polynomial> = eliminated
            .iter()
            .map(|f| self.shrink_poly(&self.r_ring, &f.terms))
            .collect();
        for f in &out {
            // homogeneous for the product grading by construction
            self.r_ring.poly_degree(f)?;
        }
        Ok(out)
    }

    /// Presentation of the multi-Rees module of M over R: generators are the
    /// generators of M placed in fiber degree zero; relations come from a
    /// module-level elimination over S[T, u].
    pub fn rees_module_presentation(&self, m_pres: &Presentation) -> Result<Presentation> {
        crate::homalg::validate_presentation(&self.s_ring, m_pres)?;
        if m_pres.is_zero_module() {
            return Ok(Presentation { gens: Vec::new(), relations: Vec::new() });
        }
        let s = self.s();
        let lift = |g: &Degree| -> Degree {
            let mut free = g.free.clone();
            free.extend_from_slice(&vec![0; s]);
            Degree { free, torsion: g.torsion.clone() }
        };
        let gens: Vec<Degree> = m_pres.gens.iter().map(lift).collect();

        // W = <(T_ij - f_ij u_i) e_a> + <relations of M>, then drop u
        let rank = gens.len();
        let graph = self.graph_generators()?;
        let mut w_gens: Vec<ModElement> = Vec::new();
        for g in &graph {
            for a in 0..rank {
                w_gens.push(ModElement::from_poly(g, a));
            }
        }
        let en = self.elim_ring.nvars();
        for rel in &m_pres.relations {
            if rel.is_zero() {
                continue;
            }
            w_gens.push(ModElement {
                terms: rel
                    .terms
                    .iter()
                    .map(|t| {
                        let mut exps = t.mono.exps.clone();
                        exps.resize(en, 0);
                        ModTerm { pos: t.pos, mono: Monomial::from_exps(exps), coeff: t.coeff }
                    })
                    .collect(),
            });
        }

        let mut mask = vec![false; en];
        for &u in &self.u_indices {
            mask[u] = true;
        }
        let block_ring = Ring::new_unchecked(
            self.elim_ring.group.clone(),
            self.elim_ring.vars.clone(),
            self.elim_ring.degrees.clone(),
            self.elim_ring.field,
            MonomialOrder::Block { mask: mask.clone() },
            None,
        );
        let order = block_ring.module_order();
        let module = FreeModule::new(gens.clone());
        let gb = buchberger(&block_ring, &module, &order, &w_gens)?;

        let rn = self.r_ring.nvars();
        let r_order = self.r_ring.module_order();
        let mut relations = Vec::new();
        for e in &gb.elements {
            let u_free = e
                .terms
                .iter()
                .all(|t| t.mono.exps.iter().zip(&mask).all(|(&ex, &inb)| !inb || ex == 0));
            if u_free {
                relations.push(self.r_ring.elem_from_terms(
                    &r_order,
                    e.terms
                        .iter()
                        .map(|t| {
                            debug_assert!(t.mono.exps[rn..].iter().all(|&x| x == 0));
                            ModTerm {
                                pos: t.pos,
                                mono: Monomial::from_exps(t.mono.exps[..rn].to_vec()),
                                coeff: t.coeff,
                            }
                        })
                        .collect(),
                ));
            }
        }
        let pres = Presentation { gens, relations };
        crate::homalg::validate_presentation(&self.r_ring, &pres)?;
        Ok(pres)
    }

    /// All products of ideal generators with block multiplicities summing to
    /// t_i (no minimality claimed).
    pub fn power_products(&self, t: &[i64]) -> Result<Vec<Polynomial>> {
        if t.len() != self.s() {
            return Err(Error::invalid("power exponent vector has wrong length"));
        }
        if let Some(&bad) = t.iter().find(|&&x| x < 0) {
            return Err(Error::NegativePower(bad));
        }
        let mut products = vec![self.s_ring.poly_constant(1)];
        for (i, gens) in self.ideals.iter().enumerate() {
            let comps = compositions(t[i] as u32, gens.len());
            let mut next = Vec::with_capacity(products.len() * comps.len());
            for p in &products {
                for comp in &comps {
                    let mut acc = p.clone();
                    for (f, &e) in gens.iter().zip(comp) {
                        for _ in 0..e {
                            acc = self.s_ring.poly_mul(&acc, f)?;
                        }
                    }
                    next.push(acc);
                }
            }
            products = next;
        }
        Ok(products)
    }

    /// Presentation over S of M * I_1^{t_1} ... I_s^{t_s}; with no module the
    /// module is S itself and this presents the ideal power.
    pub fn power_module_presentation(
        &self,
        m_pres: Option<&Presentation>,
        t: &[i64],
    ) -> Result<Presentation> {
        let products = self.power_products(t)?;
        let free_rank1 = Presentation::free(vec![self.s_ring.group.zero()]);
        let ambient_pres = m_pres.unwrap_or(&free_rank1);
        let mut elements = Vec::new();
        for p in &products {
            for a in 0..ambient_pres.gens.len() {
                elements.push(ModElement::from_poly(p, a));
            }
        }
        submodule_presentation(&self.s_ring, ambient_pres, &elements)
    }

    /// Sets the base variables to zero inside a complex over R, producing a
    /// complex of free modules over B = k[T].
    pub fn tensor_residue_field(&self, complex: &GradedComplex) -> Result<GradedComplex> {
        let order = self.b_ring.module_order();
        let nt = self.b_ring.nvars();
        let mut maps = Vec::new();
        for map in &complex.maps {
            let columns = map
                .columns
                .iter()
                .map(|col| {
                    self.b_ring.elem_from_terms(
                        &order,
                        col.terms
                            .iter()
                            .filter(|t| {
                                self.split.x_vars.iter().all(|&xi| t.mono.exps[xi] == 0)
                            })
                            .map(|t| {
                                let mut exps = vec![0u32; nt];
                                for (bi, &ri) in self.split.t_vars.iter().enumerate() {
                                    exps[bi] = t.mono.exps[ri];
                                }
                                ModTerm { pos: t.pos, mono: Monomial::from_exps(exps), coeff: t.coeff }
                            })
                            .collect(),
                    )
                })
                .collect();
            maps.push(GradedMap {
                source: map.source.clone(),
                target: map.target.clone(),
                columns,
            });
        }
        let out = GradedComplex { terms: complex.terms.clone(), maps };
        crate::homalg::assert_complex(&self.b_ring, &out)?;
        Ok(out)
    }
}

/// Presentation of the submodule of coker(ambient relations) generated by
/// `elements`: its relations are the syzygies of the elements jointly with
/// the ambient relations, restricted to the element coordinates.
pub fn submodule_presentation(
    ring: &Ring,
    ambient_pres: &Presentation,
    elements: &[ModElement],
) -> Result<Presentation> {
    let ambient = ambient_pres.ambient();
    let order = ring.module_order();
    let gens: Vec<Degree> = elements
        .iter()
        .map(|e| ring.elem_degree(&ambient, e))
        .collect::<Result<Vec<_>>>()?;
    let mut combined: Vec<ModElement> = elements.to_vec();
    let mut combined_degrees = gens.clone();
    for rel in &ambient_pres.relations {
        if rel.is_zero() {
            continue;
        }
        combined.push(rel.clone());
        combined_degrees.push(ring.elem_degree(&ambient, rel)?);
    }
    let (_, syz) = syzygy_basis(ring, &ambient, &order, &combined, &combined_degrees)?;
    let mut relations = Vec::new();
    for s in syz {
        let restricted = ring.elem_from_terms(
            &order,
            s.terms
                .iter()
                .filter(|t| t.pos < elements.len())
                .cloned()
                .collect(),
        );
        if !restricted.is_zero() && !relations.contains(&restricted) {
            relations.push(restricted);
        }
    }
    Ok(Presentation { gens, relations })
}
