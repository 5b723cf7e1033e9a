//! Finite abelian groups as an independent ground truth.
//!
//! Groups are kept in invariant-factor form `ℤ/d₁ × … × ℤ/d_k` with
//! `d₁ | d₂ | … | d_k`. Elements are coordinate vectors, enumerated in
//! lexicographic order with the first coordinate most significant; that order
//! is the basis order of the group and function algebras built from them.

mod algebra;
pub mod random;
mod snf;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use algebra::{counting_integral, function_algebra, group_algebra, induced_hom};
pub use snf::{smith_normal_form, IntMatrix, Snf};

/// Default bound on group orders for enumeration-based oracles.
pub const DEFAULT_ORDER_CAP: u64 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GroupRepr", into = "GroupRepr")]
pub struct AbGroup {
    factors: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct GroupRepr {
    invariant_factors: Vec<u64>,
}

impl TryFrom<GroupRepr> for AbGroup {
    type Error = Error;
    fn try_from(r: GroupRepr) -> Result<Self> {
        AbGroup::new(r.invariant_factors)
    }
}

impl From<AbGroup> for GroupRepr {
    fn from(g: AbGroup) -> Self {
        GroupRepr { invariant_factors: g.factors }
    }
}

impl AbGroup {
    /// Accepts factors already in invariant-factor form.
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if factors.iter().any(|&d| d < 2) {
            return Err(Error::IllFormedHom(format!("invariant factors must be ≥ 2, got {factors:?}")));
        }
        if factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::IllFormedHom(format!("{factors:?} is not a divisibility chain")));
        }
        Ok(AbGroup { factors })
    }

    /// The invariant-factor form of `ℤ/n₁ × … × ℤ/n_k` for arbitrary positive `nᵢ`.
    pub fn canonical(orders: &[u64]) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::IllFormedHom("cyclic factor of order 0 (infinite group)".into()));
        }
        let diag: Vec<BigInt> = orders.iter().map(|&n| BigInt::from(n)).collect();
        let snf = smith_normal_form(&IntMatrix::diagonal(&diag));
        Self::new(
            snf.diagonal()
                .iter()
                .map(|d| d.to_u64().expect("factor fits"))
                .filter(|&d| d > 1)
                .collect(),
        )
    }

    pub fn trivial() -> Self {
        AbGroup { factors: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Self {
        Self::canonical(&[n]).expect("positive order")
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    /// Position of an element in the lexicographic enumeration.
    pub fn index_of(&self, coords: &[u64]) -> usize {
        coords.iter().zip(&self.factors).fold(0usize, |acc, (&x, &d)| acc * d as usize + x as usize)
    }

    pub fn element(&self, mut index: usize) -> Vec<u64> {
        let mut coords = vec![0; self.factors.len()];
        for (slot, &d) in coords.iter_mut().zip(&self.factors).rev() {
            *slot = (index % d as usize) as u64;
            index /= d as usize;
        }
        coords
    }

    pub fn elements(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        (0..self.order() as usize).map(|i| self.element(i))
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).zip(&self.factors).map(|((a, b), d)| (a + b) % d).collect()
    }

    pub fn neg(&self, x: &[u64]) -> Vec<u64> {
        x.iter().zip(&self.factors).map(|(a, d)| (d - a) % d).collect()
    }

    pub fn display(&self) -> String {
        if self.factors.is_empty() {
            "1".into()
        } else {
            self.factors.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join("x")
        }
    }
}

/// Homomorphism given by the images of the standard generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "HomRepr", into = "HomRepr")]
pub struct AbHom {
    domain: AbGroup,
    codomain: AbGroup,
    /// `codomain.rank() × domain.rank()`, entry `(i, j)` reduced mod `codomain.factors[i]`.
    matrix: Vec<Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
struct HomRepr {
    domain: AbGroup,
    codomain: AbGroup,
    matrix: Vec<Vec<i64>>,
}

impl TryFrom<HomRepr> for AbHom {
    type Error = Error;
    fn try_from(r: HomRepr) -> Result<Self> {
        AbHom::new(r.domain, r.codomain, r.matrix)
    }
}

impl From<AbHom> for HomRepr {
    fn from(h: AbHom) -> Self {
        HomRepr {
            domain: h.domain,
            codomain: h.codomain,
            matrix: h.matrix.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect(),
        }
    }
}

impl AbHom {
    pub fn new(domain: AbGroup, codomain: AbGroup, matrix: Vec<Vec<i64>>) -> Result<Self> {
        let (k, l) = (domain.rank(), codomain.rank());
        if matrix.len() != l || matrix.iter().any(|r| r.len() != k) {
            return Err(Error::IllFormedHom(format!("matrix must be {l}x{k}")));
        }
        let mut reduced = vec![vec![0u64; k]; l];
        for i in 0..l {
            let e = codomain.factors[i];
            for j in 0..k {
                let x = matrix[i][j].rem_euclid(e as i64) as u64;
                if !(x as u128 * domain.factors[j] as u128).is_multiple_of(e as u128) {
                    return Err(Error::IllFormedHom(format!(
                        "generator {j} of order {} cannot map to {x} mod {e}",
                        domain.factors[j]
                    )));
                }
                reduced[i][j] = x;
            }
        }
        Ok(AbHom { domain, codomain, matrix: reduced })
    }

    pub fn identity(g: &AbGroup) -> Self {
        let k = g.rank();
        let m = (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect();
        Self::new(g.clone(), g.clone(), m).expect("identity is well defined")
    }

    pub fn zero(domain: &AbGroup, codomain: &AbGroup) -> Self {
        let m = vec![vec![0; domain.rank()]; codomain.rank()];
        Self::new(domain.clone(), codomain.clone(), m).expect("zero is well defined")
    }

    pub fn domain(&self) -> &AbGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &AbGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.matrix
    }

    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        self.matrix
            .iter()
            .zip(&self.codomain.factors)
            .map(|(row, &e)| {
                row.iter().zip(x).fold(0u64, |acc, (&a, &b)| ((acc as u128 + a as u128 * b as u128) % e as u128) as u64)
            })
            .collect()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AbHom) -> Result<AbHom> {
        if inner.codomain != self.domain {
            return Err(Error::IllFormedHom("composition of non-composable homomorphisms".into()));
        }
        let k = inner.domain.rank();
        let columns: Vec<Vec<u64>> = (0..k)
            .map(|j| {
                let mut e = vec![0; k];
                e[j] = 1;
                self.apply(&inner.apply(&e))
            })
            .collect();
        let m = (0..self.codomain.rank()).map(|i| columns.iter().map(|c| c[i] as i64).collect()).collect();
        AbHom::new(inner.domain.clone(), self.codomain.clone(), m)
    }

    fn presentation(&self) -> IntMatrix {
        let l = self.codomain.rank();
        let m = IntMatrix::with_shape(
            l,
            self.domain.rank(),
            self.matrix.iter().flatten().map(|&x| BigInt::from(x)).collect(),
        );
        let e: Vec<BigInt> = self.codomain.factors.iter().map(|&d| BigInt::from(d)).collect();
        m.hstack(&IntMatrix::diagonal(&e))
    }
}

fn reduce_mod(x: &BigInt, d: u64) -> i64 {
    x.mod_floor(&BigInt::from(d)).to_i64().expect("residue fits")
}

/// `Ker f` together with its inclusion into the domain.
pub fn kernel_with_inclusion(f: &AbHom) -> (AbGroup, AbHom) {
    let (k, l) = (f.domain.rank(), f.codomain.rank());
    // Kernel lattice of [M | E] projected to the domain coordinates.
    let snf = smith_normal_form(&f.presentation());
    let basis = snf.v.columns_range(l, k + l).rows_range(0, k);
    let inv = basis.rational_inverse().expect("kernel lattice has full rank");
    let mut rel = IntMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            let x = &inv[i * k + j] * BigRational::from_integer(BigInt::from(f.domain.factors[j]));
            assert!(x.is_integer(), "domain relations lie in the kernel lattice");
            *rel.get_mut(i, j) = x.to_integer();
        }
    }
    let rs = smith_normal_form(&rel);
    let u_inv = rs.u.unimodular_inverse().expect("unimodular");
    let gens = basis.mul(&u_inv);
    let diag = rs.diagonal();
    let keep: Vec<usize> = (0..k).filter(|&i| !diag[i].is_one()).collect();
    let group = AbGroup::new(keep.iter().map(|&i| diag[i].to_u64().expect("factor fits")).collect())
        .expect("SNF yields a divisibility chain");
    let matrix = (0..k)
        .map(|r| keep.iter().map(|&c| reduce_mod(gens.get(r, c), f.domain.factors[r])).collect())
        .collect();
    let inclusion = AbHom::new(group.clone(), f.domain.clone(), matrix).expect("kernel inclusion is well defined");
    (group, inclusion)
}

/// `Cok f` together with the projection from the codomain.
pub fn cokernel_with_projection(f: &AbHom) -> (AbGroup, AbHom) {
    let l = f.codomain.rank();
    let snf = smith_normal_form(&f.presentation());
    let diag = snf.diagonal();
    let keep: Vec<usize> = (0..l).filter(|&i| !diag[i].is_one()).collect();
    let factors: Vec<u64> = keep.iter().map(|&i| diag[i].to_u64().expect("factor fits")).collect();
    let group = AbGroup::new(factors.clone()).expect("SNF yields a divisibility chain");
    let matrix = keep
        .iter()
        .zip(&factors)
        .map(|(&r, &d)| (0..l).map(|c| reduce_mod(snf.u.get(r, c), d)).collect())
        .collect();
    let projection =
        AbHom::new(f.codomain.clone(), group.clone(), matrix).expect("cokernel projection is well defined");
    (group, projection)
}

pub fn hom_kernel(f: &AbHom) -> AbGroup {
    kernel_with_inclusion(f).0
}

pub fn hom_cokernel(f: &AbHom) -> AbGroup {
    cokernel_with_projection(f).0
}

/// `|Ker f| / |Cok f|`.
pub fn index_oracle(f: &AbHom) -> BigRational {
    BigRational::new(BigInt::from(hom_kernel(f).order()), BigInt::from(hom_cokernel(f).order()))
}

/// Every homomorphism `g → h`, in lexicographic order of the matrix entries.
pub fn all_homs(g: &AbGroup, h: &AbGroup) -> Vec<AbHom> {
    // Entry (i, j) ranges over the multiples of e_i / gcd(d_j, e_i).
    let slots: Vec<(u64, u64)> = h
        .factors
        .iter()
        .flat_map(|&e| g.factors.iter().map(move |&d| (d.gcd(&e), e / d.gcd(&e))))
        .collect();
    let mut out = Vec::new();
    let mut counter = vec![0u64; slots.len()];
    loop {
        let entries: Vec<i64> = counter.iter().zip(&slots).map(|(&t, &(_, step))| (t * step) as i64).collect();
        let k = g.rank();
        let matrix = (0..h.rank()).map(|i| entries[i * k..(i + 1) * k].to_vec()).collect();
        out.push(AbHom::new(g.clone(), h.clone(), matrix).expect("enumerated hom is well defined"));
        let Some(pos) = (0..slots.len()).rev().find(|&i| counter[i] + 1 < slots[i].0) else {
            return out;
        };
        counter[pos] += 1;
        counter[pos + 1..].iter_mut().for_each(|c| *c = 0);
    }
}

#[cfg(test)]
mod tests;
