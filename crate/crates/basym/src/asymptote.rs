//! End-to-end pipelines: the asymptotic shape of Tor supports of products of
//! ideal powers, the equigenerated bound/limit sets with fitted Hilbert
//! polynomials, and the eventual vanishing classifier.

use crate::error::{Error, Result};
use crate::grading::Degree;
use crate::homalg::{
    compositions, free_resolution, hilbert_window, subquotient_presentation, Presentation,
    VarSplit,
};
use crate::rees::ReesSetup;
use crate::ring::Ring;
use crate::stanley::{module_support_decomposition, SupportDecomposition};
use num_rational::Ratio;
use std::collections::{BTreeMap, BTreeSet};

pub type Q = Ratio<i128>;

/// One component of the eventual shape: for t with t_i >= t0_i the component
/// contributes delta + c_1.E_1 + ... + c_s.E_s over all c_i >= 0 with
/// |c_i| = t_i - t0_i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeComponent {
    pub delta: Degree,
    pub t0: Vec<i64>,
    pub blocks: Vec<Vec<Degree>>,
}

/// Eventual shape of supp Tor_ell(M I_1^{t_1}...I_s^{t_s}, k), valid for all
/// t componentwise at or above `threshold`.
#[derive(Debug, Clone)]
pub struct AsymptoticShape {
    pub ell: usize,
    pub s: usize,
    pub threshold: Vec<i64>,
    pub components: Vec<ShapeComponent>,
    /// the underlying product-graded support decomposition of the homology
    /// module, kept for membership-style evaluation
    pub raw: SupportDecomposition,
}

impl AsymptoticShape {
    /// Exact predicted support at one exponent vector, by enumerating the
    /// block compositions of every component.
    pub fn support_at(&self, setup: &ReesSetup, t: &[i64]) -> Result<BTreeSet<Degree>> {
        let group = &setup.s_ring.group;
        let mut out = BTreeSet::new();
        for comp in &self.components {
            if comp
                .t0
                .iter()
                .zip(t)
                .any(|(&t0, &ti)| ti < t0)
            {
                continue;
            }
            let mut partials: Vec<Degree> = vec![comp.delta.clone()];
            for (i, block) in comp.blocks.iter().enumerate() {
                let budget = (t[i] - comp.t0[i]) as u32;
                let comps = compositions(budget, block.len());
                let mut next = Vec::with_capacity(partials.len() * comps.len());
                for base in &partials {
                    for c in &comps {
                        let mut acc = base.clone();
                        for (gamma, &ci) in block.iter().zip(c) {
                            if ci > 0 {
                                acc = group.add(&acc, &group.scale(i64::from(ci), gamma)?)?;
                            }
                        }
                        next.push(acc);
                    }
                }
                partials = next;
            }
            out.extend(partials);
        }
        Ok(out)
    }

    /// Membership route through the raw decomposition; used to cross-check
    /// the enumerated support.
    pub fn contains(&self, setup: &ReesSetup, gamma: &Degree, t: &[i64]) -> Result<bool> {
        let mut free = gamma.free.clone();
        free.extend_from_slice(t);
        let lifted = Degree { free, torsion: gamma.torsion.clone() };
        crate::stanley::support_membership(&setup.b_ring.group, &self.raw, &lifted)
    }
}

/// The shape pipeline: multi-Rees presentation, minimal resolution over R,
/// reduction mod the base variables, homology over B, and a support
/// decomposition split along the fiber blocks.
pub fn asymptotic_tor_shape(
    setup: &ReesSetup,
    m_pres: Option<&Presentation>,
    ell: usize,
) -> Result<AsymptoticShape> {
    let s = setup.s();
    let free_rank1 = Presentation::free(vec![setup.s_ring.group.zero()]);
    let m = m_pres.unwrap_or(&free_rank1);
    if ell > setup.r_ring.nvars() {
        return Ok(AsymptoticShape {
            ell,
            s,
            threshold: vec![0; s],
            components: Vec::new(),
            raw: SupportDecomposition { components: Vec::new() },
        });
    }
    let rees = setup.rees_module_presentation(m)?;
    let res = free_resolution(&setup.r_ring, &rees, ell + 1, true)?;
    let tensored = setup.tensor_residue_field(&res)?;
    let h = subquotient_presentation(&setup.b_ring, &tensored, ell)?;
    let raw = module_support_decomposition(&setup.b_ring, &h)?;
    shape_from_decomposition(setup, ell, raw)
}

fn shape_from_decomposition(
    setup: &ReesSetup,
    ell: usize,
    raw: SupportDecomposition,
) -> Result<AsymptoticShape> {
    let s = setup.s();
    let split = &setup.b_split;
    let group_g = &setup.s_ring.group;
    let mut threshold = vec![0i64; s];
    let mut components = Vec::new();
    for comp in &raw.components {
        let delta = split.g_part(&comp.shift);
        let t0 = split.z_part(&comp.shift);
        let mut blocks: Vec<Vec<Degree>> = vec![Vec::new(); s];
        for gen in &comp.gens {
            let z = split.z_part(gen);
            let block = z
                .iter()
                .position(|&c| c == 1)
                .ok_or_else(|| Error::invalid("component generator has no fiber block"))?;
            blocks[block].push(split.g_part(gen));
        }
        let missing: Vec<usize> = (0..s).filter(|&i| blocks[i].is_empty()).collect();
        if missing.is_empty() {
            // the concatenated difference tuples must be independent
            let mut deltas = Vec::new();
            for block in &blocks {
                deltas.extend(group_g.delta_tuple(block)?);
            }
            if !group_g.is_free_independent(&deltas)? {
                return Err(Error::invalid(
                    "difference tuple of a full component is dependent",
                ));
            }
            for i in 0..s {
                threshold[i] = threshold[i].max(t0[i]);
            }
            components.push(ShapeComponent { delta, t0, blocks });
        } else {
            // a component missing a fiber block only meets slices with that
            // coordinate pinned at t0; push the threshold past every slice
            for &i in &missing {
                threshold[i] = threshold[i].max(t0[i] + 1);
            }
        }
    }
    Ok(AsymptoticShape { ell, s, threshold, components, raw })
}

/// Tameness classification of a finitely generated fiber module.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tameness {
    EventuallyZero,
    EventuallyNonzero,
}

/// Decides whether the fiber degrees of the presented B-module are eventually
/// all zero or eventually all nonzero on a translated orthant, together with
/// a threshold t0 past which the pattern is constant. A single support
/// component covering every block yields a full shifted orthant; finitely
/// many components each missing a block meet only pinned slices.
pub fn eventual_positivity(
    ring_b: &Ring,
    split: &VarSplit,
    pres: &Presentation,
) -> Result<(Tameness, Vec<i64>)> {
    let s = split.s;
    let decomp = module_support_decomposition(ring_b, pres)?;
    let mut best_cover: Option<Vec<i64>> = None;
    for comp in &decomp.components {
        let t0 = split.z_part(&comp.shift);
        let mut covered = vec![false; s];
        for gen in &comp.gens {
            let z = split.z_part(gen);
            if let Some(i) = z.iter().position(|&c| c == 1) {
                covered[i] = true;
            }
        }
        if covered.iter().all(|&c| c) {
            let better = match &best_cover {
                None => true,
                Some(b) => t0.iter().sum::<i64>() < b.iter().sum::<i64>()
                    || (t0.iter().sum::<i64>() == b.iter().sum::<i64>() && t0 < *b),
            };
            if better {
                best_cover = Some(t0);
            }
        }
    }
    if let Some(t0) = best_cover {
        return Ok((Tameness::EventuallyNonzero, t0));
    }
    let mut t0 = vec![0i64; s];
    for comp in &decomp.components {
        let shift_t = split.z_part(&comp.shift);
        let mut covered = vec![false; s];
        for gen in &comp.gens {
            let z = split.z_part(gen);
            if let Some(i) = z.iter().position(|&c| c == 1) {
                covered[i] = true;
            }
        }
        for i in 0..s {
            if !covered[i] {
                t0[i] = t0[i].max(shift_t[i] + 1);
            }
        }
    }
    Ok((Tameness::EventuallyZero, t0))
}

/// Exact multivariate polynomial with rational coefficients in the fiber
/// exponents t_1..t_s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FittedPoly {
    pub nvars: usize,
    pub terms: Vec<(Vec<u32>, Q)>,
}

impl FittedPoly {
    pub fn eval(&self, t: &[i64]) -> Q {
        let mut acc = Q::from_integer(0);
        for (exps, c) in &self.terms {
            let mut m = Q::from_integer(1);
            for (&e, &ti) in exps.iter().zip(t) {
                for _ in 0..e {
                    m *= Q::from_integer(i128::from(ti));
                }
            }
            acc += c * m;
        }
        acc
    }

    pub fn to_display(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let name = |i: usize| {
            if self.nvars == 1 {
                "t".to_string()
            } else {
                format!("t{}", i + 1)
            }
        };
        let mut parts = Vec::new();
        for (exps, c) in &self.terms {
            if *c == Q::from_integer(0) {
                continue;
            }
            let mono: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|&(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { name(i) } else { format!("{}^{}", name(i), e) })
                .collect();
            let mono = mono.join("*");
            if mono.is_empty() {
                parts.push(format!("{c}"));
            } else if *c == Q::from_integer(1) {
                parts.push(mono);
            } else {
                parts.push(format!("{c}*{mono}"));
            }
        }
        if parts.is_empty() { "0".to_string() } else { parts.join(" + ") }
    }
}

fn monomials_up_to_degree(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for total in 0..=d {
        out.extend(compositions(total, nvars));
    }
    out
}

fn solve_rational(mut a: Vec<Vec<Q>>, mut b: Vec<Q>) -> Option<Vec<Q>> {
    let n = b.len();
    let m = if n == 0 { 0 } else { a[0].len() };
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m {
        let Some(p) = (row..n).find(|&r| a[r][col] != Q::from_integer(0)) else {
            continue;
        };
        a.swap(row, p);
        b.swap(row, p);
        let inv = Q::from_integer(1) / a[row][col];
        for x in a[row].iter_mut() {
            *x *= inv;
        }
        b[row] *= inv;
        for r in 0..n {
            if r != row && a[r][col] != Q::from_integer(0) {
                let f = a[r][col];
                let src = a[row].clone();
                for (x, y) in a[r].iter_mut().zip(src) {
                    *x -= f * y;
                }
                let bb = b[row];
                b[r] -= f * bb;
            }
        }
        pivots.push(col);
        row += 1;
        if row == n {
            break;
        }
    }
    for r in row..n {
        if b[r] != Q::from_integer(0) {
            return None;
        }
    }
    let mut x = vec![Q::from_integer(0); m];
    for (r, &col) in pivots.iter().enumerate() {
        x[col] = b[r];
    }
    Some(x)
}

/// Exact interpolation of dim_k of the module along the affine degree family
/// base + t_1 slope_1 + ... + t_s slope_s at fiber degree t. Total degree is
/// bounded by the fiber variable count minus one; the fit is verified on
/// held-out grid points and the base point is pushed up on mismatch.
pub fn strand_hilbert_polynomial(
    ring_b: &Ring,
    split: &VarSplit,
    pres: &Presentation,
    base: &Degree,
    slopes: &[Degree],
    start: &[i64],
) -> Result<FittedPoly> {
    let s = split.s;
    assert_eq!(slopes.len(), s);
    let deg_bound = ring_b.nvars().saturating_sub(1) as u32;
    let monos = monomials_up_to_degree(s, deg_bound);
    let group_g = base.clone();
    let _ = group_g;
    let dim_at = |t: &[i64]| -> Result<usize> {
        // degree (base + sum t_i slope_i, t) in the product group
        let g_group = crate::grading::DegreeGroup {
            free_rank: split.g_free_rank,
            torsion_moduli: ring_b.group.torsion_moduli.clone(),
        };
        let mut g = base.clone();
        for (slope, &ti) in slopes.iter().zip(t) {
            g = g_group.add(&g, &g_group.scale(ti, slope)?)?;
        }
        let mut free = g.free.clone();
        free.extend_from_slice(t);
        let d = Degree { free, torsion: g.torsion };
        Ok(hilbert_window(ring_b, pres, &[d.clone()])?[&d])
    };
    let mut t_base = start.to_vec();
    for _retry in 0..6 {
        // triangular sample grid: offsets with |a| <= deg_bound
        let offsets = monomials_up_to_degree(s, deg_bound);
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for off in &offsets {
            let t: Vec<i64> = t_base
                .iter()
                .zip(off)
                .map(|(&b, &o)| b + i64::from(o))
                .collect();
            rows.push(
                monos
                    .iter()
                    .map(|m| {
                        let mut v = Q::from_integer(1);
                        for (&e, &ti) in m.iter().zip(&t) {
                            for _ in 0..e {
                                v *= Q::from_integer(i128::from(ti));
                            }
                        }
                        v
                    })
                    .collect::<Vec<Q>>(),
            );
            rhs.push(Q::from_integer(dim_at(&t)? as i128));
        }
        let Some(coeffs) = solve_rational(rows, rhs) else {
            return Err(Error::invalid("interpolation grid was not unisolvent"));
        };
        let poly = FittedPoly {
            nvars: s,
            terms: monos
                .iter()
                .cloned()
                .zip(coeffs)
                .filter(|(_, c)| *c != Q::from_integer(0))
                .collect(),
        };
        // held-out verification: three extra points per fiber variable plus
        // one diagonal point
        let mut holdouts: Vec<Vec<i64>> = Vec::new();
        for i in 0..s {
            for k in 1..=3i64 {
                let mut t = t_base.clone();
                t[i] += i64::from(deg_bound) + k;
                holdouts.push(t);
            }
        }
        holdouts.push(
            t_base
                .iter()
                .map(|&b| b + i64::from(deg_bound) + 1)
                .collect(),
        );
        let mut ok = true;
        for t in &holdouts {
            if poly.eval(t) != Q::from_integer(dim_at(t)? as i128) {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(poly);
        }
        for x in t_base.iter_mut() {
            *x += 1;
        }
    }
    Err(Error::FitDiverged { retries: 6 })
}

/// Splits a fiber-module presentation by the base part of its generator
/// degrees; legal because in the shifted grading the fiber variables do not
/// move the base degree, so relations never mix base parts.
pub fn split_presentation_by_base(
    split: &VarSplit,
    pres: &Presentation,
) -> Result<BTreeMap<Degree, Presentation>> {
    let mut gens_by: BTreeMap<Degree, Vec<usize>> = BTreeMap::new();
    for (j, d) in pres.gens.iter().enumerate() {
        gens_by.entry(split.g_part(d)).or_default().push(j);
    }
    let mut out: BTreeMap<Degree, Presentation> = BTreeMap::new();
    for (eta, idxs) in &gens_by {
        let reindex: BTreeMap<usize, usize> =
            idxs.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let gens: Vec<Degree> = idxs.iter().map(|&j| pres.gens[j].clone()).collect();
        let mut relations = Vec::new();
        for rel in &pres.relations {
            if rel.is_zero() {
                continue;
            }
            let touched: BTreeSet<usize> = rel.terms.iter().map(|t| t.pos).collect();
            let inside = touched.iter().all(|p| reindex.contains_key(p));
            let outside = touched.iter().all(|p| !reindex.contains_key(p));
            if inside {
                let mut r = rel.clone();
                for t in r.terms.iter_mut() {
                    t.pos = reindex[&t.pos];
                }
                relations.push(r);
            } else if !outside {
                return Err(Error::invalid(
                    "relation mixes base degrees; presentation is not base-split",
                ));
            }
        }
        out.insert(eta.clone(), Presentation { gens, relations });
    }
    Ok(out)
}

/// Report for ideals generated in a single degree each: the finite bound set
/// of base degrees per homological index, the subset that survives for large
/// t, thresholds, and fitted Hilbert polynomials per surviving degree.
#[derive(Debug, Clone)]
pub struct EquigeneratedReport {
    pub gamma: Vec<Degree>,
    pub indices: Vec<EquigeneratedIndex>,
}

#[derive(Debug, Clone)]
pub struct EquigeneratedIndex {
    pub i: usize,
    pub delta: Vec<Degree>,
    pub delta_prime: Vec<Degree>,
    pub thresholds: BTreeMap<Degree, Vec<i64>>,
    pub polynomials: BTreeMap<Degree, FittedPoly>,
}

/// Bound sets from the shifted multi-Rees resolution: supp Tor_i(M I^t) is
/// contained in Delta_i + t.gamma for every t >= 0, and equals Delta'_i
/// translates for t >> 0.
pub fn equigenerated_bounds(
    setup: &ReesSetup,
    m_pres: Option<&Presentation>,
    max_i: usize,
) -> Result<EquigeneratedReport> {
    if !setup.shifted {
        return Err(Error::invalid(
            "equigenerated bounds need the shifted grading; use the asymptotic pipeline",
        ));
    }
    let gamma: Vec<Degree> = setup.gen_degrees.iter().map(|d| d[0].clone()).collect();
    let free_rank1 = Presentation::free(vec![setup.s_ring.group.zero()]);
    let m = m_pres.unwrap_or(&free_rank1);
    let rees = setup.rees_module_presentation(m)?;
    let len = (max_i + 1).min(setup.r_ring.nvars() + 1);
    let res = free_resolution(&setup.r_ring, &rees, len, true)?;
    let tensored = setup.tensor_residue_field(&res)?;
    let split = &setup.b_split;
    let mut indices = Vec::new();
    for i in 0..=max_i {
        let mut delta: Vec<Degree> = res
            .shifts(i)
            .iter()
            .map(|d| split.g_part(d))
            .collect();
        delta.sort();
        delta.dedup();
        let h = subquotient_presentation(&setup.b_ring, &tensored, i)?;
        let by_eta = split_presentation_by_base(split, &h)?;
        let mut delta_prime = Vec::new();
        let mut thresholds = BTreeMap::new();
        let mut polynomials = BTreeMap::new();
        for eta in &delta {
            let empty = Presentation { gens: vec![], relations: vec![] };
            let sub = by_eta.get(eta).unwrap_or(&empty);
            let (kind, t0) = eventual_positivity(&setup.b_ring, split, sub)?;
            if kind == Tameness::EventuallyNonzero {
                delta_prime.push(eta.clone());
            }
            thresholds.insert(eta.clone(), t0.clone());
            let start: Vec<i64> = t0.iter().map(|&x| x.max(0)).collect();
            let zero_slopes = vec![setup.s_ring.group.zero(); setup.s()];
            let poly = strand_hilbert_polynomial(
                &setup.b_ring,
                split,
                sub,
                eta,
                &zero_slopes,
                &start,
            )?;
            polynomials.insert(eta.clone(), poly);
        }
        indices.push(EquigeneratedIndex { i, delta, delta_prime, thresholds, polynomials });
    }
    Ok(EquigeneratedReport { gamma, indices })
}
