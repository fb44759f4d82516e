//! Finitely generated abelian degree groups Z^d x Z/m_1 x ... x Z/m_k,
//! degree arithmetic, relation lattices, and positivity functionals.

use crate::error::{Error, Result};
use crate::snf;
use num_rational::Ratio;
use serde::Serialize;
use std::fmt;

/// Descriptor of the grading group G = Z^d + sum_j Z/m_j.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeGroup {
    pub free_rank: usize,
    pub torsion_moduli: Vec<i64>,
}

impl DegreeGroup {
    pub fn new(free_rank: usize, torsion_moduli: Vec<i64>) -> Result<Self> {
        if torsion_moduli.iter().any(|&m| m < 2) {
            return Err(Error::invalid("torsion moduli must all be >= 2"));
        }
        Ok(DegreeGroup { free_rank, torsion_moduli })
    }

    /// Free group Z^d.
    pub fn free(d: usize) -> Self {
        DegreeGroup { free_rank: d, torsion_moduli: Vec::new() }
    }

    pub fn zero(&self) -> Degree {
        Degree {
            free: vec![0; self.free_rank],
            torsion: vec![0; self.torsion_moduli.len()],
        }
    }

    /// Builds a degree, reducing torsion entries into canonical range.
    pub fn degree(&self, free: Vec<i64>, torsion: Vec<i64>) -> Result<Degree> {
        if free.len() != self.free_rank || torsion.len() != self.torsion_moduli.len() {
            return Err(Error::GroupMismatch(format!(
                "expected {}+{} components, got {}+{}",
                self.free_rank,
                self.torsion_moduli.len(),
                free.len(),
                torsion.len()
            )));
        }
        let torsion = torsion
            .into_iter()
            .zip(&self.torsion_moduli)
            .map(|(t, &m)| t.rem_euclid(m))
            .collect();
        Ok(Degree { free, torsion })
    }

    /// Builds a degree from one flat list (free entries then torsion entries).
    pub fn degree_from_flat(&self, entries: &[i64]) -> Result<Degree> {
        if entries.len() != self.free_rank + self.torsion_moduli.len() {
            return Err(Error::GroupMismatch(format!(
                "expected {} components, got {}",
                self.free_rank + self.torsion_moduli.len(),
                entries.len()
            )));
        }
        self.degree(
            entries[..self.free_rank].to_vec(),
            entries[self.free_rank..].to_vec(),
        )
    }

    fn check(&self, d: &Degree) -> Result<()> {
        if d.free.len() != self.free_rank || d.torsion.len() != self.torsion_moduli.len() {
            return Err(Error::GroupMismatch(
                "degree does not belong to this group".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, a: &Degree, b: &Degree) -> Result<Degree> {
        self.check(a)?;
        self.check(b)?;
        Ok(Degree {
            free: a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect(),
            torsion: a
                .torsion
                .iter()
                .zip(&b.torsion)
                .zip(&self.torsion_moduli)
                .map(|((x, y), &m)| (x + y).rem_euclid(m))
                .collect(),
        })
    }

    pub fn sub(&self, a: &Degree, b: &Degree) -> Result<Degree> {
        self.add(a, &self.neg(b)?)
    }

    pub fn neg(&self, a: &Degree) -> Result<Degree> {
        self.check(a)?;
        Ok(Degree {
            free: a.free.iter().map(|x| -x).collect(),
            torsion: a
                .torsion
                .iter()
                .zip(&self.torsion_moduli)
                .map(|(x, &m)| (-x).rem_euclid(m))
                .collect(),
        })
    }

    pub fn scale(&self, k: i64, a: &Degree) -> Result<Degree> {
        self.check(a)?;
        Ok(Degree {
            free: a.free.iter().map(|x| k * x).collect(),
            torsion: a
                .torsion
                .iter()
                .zip(&self.torsion_moduli)
                .map(|(x, &m)| (k * x).rem_euclid(m))
                .collect(),
        })
    }

    /// Product group G x Z^s, free parts first.
    pub fn product_with_free(&self, s: usize) -> DegreeGroup {
        DegreeGroup {
            free_rank: self.free_rank + s,
            torsion_moduli: self.torsion_moduli.clone(),
        }
    }

    /// Stacked relation matrix of a degree tuple: one row per free coordinate,
    /// then one row per torsion coordinate augmented with a modulus column.
    fn relation_matrix(&self, degrees: &[Degree]) -> Result<Vec<Vec<i128>>> {
        for d in degrees {
            self.check(d)?;
        }
        let k = degrees.len();
        let nt = self.torsion_moduli.len();
        let mut rows = Vec::with_capacity(self.free_rank + nt);
        for r in 0..self.free_rank {
            let mut row: Vec<i128> = degrees.iter().map(|d| i128::from(d.free[r])).collect();
            row.extend(std::iter::repeat(0).take(nt));
            rows.push(row);
        }
        for (j, &m) in self.torsion_moduli.iter().enumerate() {
            let mut row: Vec<i128> = degrees.iter().map(|d| i128::from(d.torsion[j])).collect();
            row.extend((0..nt).map(|jj| if jj == j { i128::from(m) } else { 0 }));
            rows.push(row);
        }
        debug_assert!(rows.iter().all(|r| r.len() == k + nt));
        Ok(rows)
    }

    /// Generators of the lattice { a in Z^k : sum a_i * degrees_i = 0 in G }.
    /// Empty output means the tuple is Z-linearly independent.
    pub fn relation_lattice(&self, degrees: &[Degree]) -> Result<Vec<Vec<i64>>> {
        let k = degrees.len();
        if k == 0 {
            return Ok(Vec::new());
        }
        let mat = self.relation_matrix(degrees)?;
        let kernel = snf::integer_kernel(&mat);
        let projected: Vec<Vec<i128>> = kernel
            .into_iter()
            .map(|v| v[..k].to_vec())
            .collect();
        let basis = snf::hermite_rows(&projected);
        Ok(basis
            .into_iter()
            .map(|row| row.into_iter().map(|x| x as i64).collect())
            .collect())
    }

    /// Whether the tuple forms a basis for a free submonoid of G.
    pub fn is_free_independent(&self, degrees: &[Degree]) -> Result<bool> {
        Ok(self.relation_lattice(degrees)?.is_empty())
    }

    /// Consecutive differences (v_2 - v_1, ..., v_s - v_{s-1}); empty when
    /// the tuple has at most one entry.
    pub fn delta_tuple(&self, degrees: &[Degree]) -> Result<Vec<Degree>> {
        degrees
            .windows(2)
            .map(|w| self.sub(&w[1], &w[0]))
            .collect()
    }

    /// Decides gamma in delta + <E> for an independent tuple E: the integer
    /// solution is unique when it exists, so solve and check nonnegativity.
    /// Torsion congruences ride along through the modulus columns.
    pub fn shifted_monoid_contains(
        &self,
        shift: &Degree,
        gens: &[Degree],
        gamma: &Degree,
    ) -> Result<bool> {
        self.check(shift)?;
        self.check(gamma)?;
        let target = self.sub(gamma, shift)?;
        if gens.is_empty() {
            return Ok(target == self.zero());
        }
        let mat = self.relation_matrix(gens)?;
        let mut b: Vec<i128> = target.free.iter().map(|&x| i128::from(x)).collect();
        b.extend(target.torsion.iter().map(|&x| i128::from(x)));
        match snf::solve_integer(&mat, &b) {
            None => Ok(false),
            Some(x) => Ok(x[..gens.len()].iter().all(|&c| c >= 0)),
        }
    }
}

/// An element of a DegreeGroup. Torsion entries are stored reduced, so
/// equality and ordering are plain componentwise comparisons.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Degree {
    pub free: Vec<i64>,
    pub torsion: Vec<i64>,
}

impl Degree {
    /// Flat integer list: free entries then torsion entries.
    pub fn flat(&self) -> Vec<i64> {
        let mut v = self.free.clone();
        v.extend_from_slice(&self.torsion);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.free.iter().all(|&x| x == 0) && self.torsion.iter().all(|&x| x == 0)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flat = self.flat();
        if flat.len() == 1 {
            write!(f, "{}", flat[0])
        } else {
            write!(
                f,
                "({})",
                flat.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
            )
        }
    }
}

pub type Weight = Ratio<i64>;

/// Rational linear functional on the free part of G.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositivityFunctional {
    pub weights: Vec<Weight>,
}

impl PositivityFunctional {
    pub fn new(weights: Vec<Weight>) -> Self {
        PositivityFunctional { weights }
    }

    pub fn ones(d: usize) -> Self {
        PositivityFunctional { weights: vec![Weight::from_integer(1); d] }
    }

    pub fn eval(&self, d: &Degree) -> Weight {
        d.free
            .iter()
            .zip(&self.weights)
            .map(|(&x, w)| w * Weight::from_integer(x))
            .sum()
    }

    /// True iff the functional is strictly positive on every listed degree.
    pub fn all_positive(&self, degrees: &[Degree]) -> bool {
        degrees
            .iter()
            .all(|d| self.eval(d) > Weight::from_integer(0))
    }
}
