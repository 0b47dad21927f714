//! Finite abelian groups written as products of cyclic factors `Z_{n_1} × … × Z_{n_k}`.
//!
//! Elements are enumerated in mixed radix with the first factor varying fastest:
//! index `i` has residues `(i mod n_1, (i / n_1) mod n_2, …)`. The identity is index 0.
//! Characters use the same enumeration, so `χ_k(l) = Π_j exp(2πi·k_j·l_j / n_j)` is
//! symmetric in `k` and `l`. For `Z_2^d` this is `(-1)^{k·l}` with `k` read in binary,
//! least significant bit first.

use std::fmt;

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{root_of_unity, Cplx, Real};

/// Largest group for which a full [`CharacterTable`] may be materialized.
pub const MAX_TABLE_ORDER: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    orders: Vec<usize>,
    order: usize,
    // lcm of the factor orders; every character value is a power of exp(2πi/exponent)
    exponent: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    residues: Vec<usize>,
}

/// The irreducible character `χ_k` of an abelian group, identified by its index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Character {
    pub index: usize,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl FiniteAbelianGroup {
    pub fn new(orders: Vec<usize>) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::EmptyGroup);
        }
        if let Some(&bad) = orders.iter().find(|&&n| n < 2) {
            return Err(Error::DegenerateOrder(bad));
        }
        let order = orders.iter().product();
        let exponent = orders.iter().fold(1, |l, &n| l / gcd(l, n) * n);
        Ok(Self {
            orders,
            order,
            exponent,
        })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::new(vec![n])
    }

    /// Parses `z6`, `Z2xZ2xZ2`, … (case-insensitive, factors joined by `x`).
    pub fn parse(spec: &str) -> Result<Self> {
        let lower = spec.trim().to_ascii_lowercase();
        let err = || Error::GroupSpec(spec.to_string());
        if lower.is_empty() {
            return Err(err());
        }
        let orders = lower
            .split('x')
            .map(|f| {
                f.strip_prefix('z')
                    .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
                    .and_then(|d| d.parse::<usize>().ok())
                    .ok_or_else(err)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(orders)
    }

    /// Cyclic factor orders `n_1..n_k`.
    pub fn factors(&self) -> &[usize] {
        &self.orders
    }

    /// `|G|`
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            residues: vec![0; self.orders.len()],
        }
    }

    pub fn element(&self, index: usize) -> Result<GroupElement> {
        self.check_index(index)?;
        Ok(GroupElement {
            residues: self.digits(index),
        })
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(|i| GroupElement {
            residues: self.digits(i),
        })
    }

    /// Builds an element from residues, reducing nothing: out-of-range residues are rejected.
    pub fn element_from_residues(&self, residues: Vec<usize>) -> Result<GroupElement> {
        self.check_element_residues(&residues)?;
        Ok(GroupElement { residues })
    }

    pub fn index_of(&self, g: &GroupElement) -> Result<usize> {
        self.check_element(g)?;
        Ok(self.index_unchecked(&g.residues))
    }

    pub fn multiply(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check_element(g)?;
        self.check_element(h)?;
        let residues = g
            .residues
            .iter()
            .zip(&h.residues)
            .zip(&self.orders)
            .map(|((a, b), n)| (a + b) % n)
            .collect();
        Ok(GroupElement { residues })
    }

    pub fn inverse(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check_element(g)?;
        let residues = g
            .residues
            .iter()
            .zip(&self.orders)
            .map(|(a, n)| (n - a) % n)
            .collect();
        Ok(GroupElement { residues })
    }

    /// Product of elements given by index; both indices must be below `|G|`.
    pub fn multiply_indices(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.order && j < self.order);
        let mut out = 0;
        let mut radix = 1;
        let (mut a, mut b) = (i, j);
        for &n in &self.orders {
            out += ((a % n + b % n) % n) * radix;
            radix *= n;
            a /= n;
            b /= n;
        }
        out
    }

    pub fn inverse_index(&self, i: usize) -> usize {
        debug_assert!(i < self.order);
        let mut out = 0;
        let mut radix = 1;
        let mut a = i;
        for &n in &self.orders {
            out += ((n - a % n) % n) * radix;
            radix *= n;
            a /= n;
        }
        out
    }

    pub fn character_of(&self, k: usize) -> Result<Character> {
        self.check_index(k)?;
        Ok(Character { index: k })
    }

    /// `χ_k(α_l)`
    pub fn character<T: Real>(&self, k: usize, l: usize) -> Result<Cplx<T>> {
        self.check_index(k)?;
        self.check_index(l)?;
        Ok(self.character_unchecked(k, l))
    }

    pub(crate) fn character_unchecked<T: Real>(&self, k: usize, l: usize) -> Cplx<T> {
        // Σ_j k_j l_j / n_j expressed over the common denominator `exponent`
        let mut phase = 0;
        let (mut a, mut b) = (k, l);
        for &n in &self.orders {
            let term = (a % n) * (b % n) % n;
            phase = (phase + term * (self.exponent / n)) % self.exponent;
            a /= n;
            b /= n;
        }
        root_of_unity(phase, self.exponent)
    }

    /// The unnormalized character table, entry `(k, l) = χ_k(α_l)`.
    pub fn character_table<T: Real>(&self) -> Array2<Cplx<T>> {
        Array2::from_shape_fn((self.order, self.order), |(k, l)| {
            self.character_unchecked(k, l)
        })
    }

    /// Parses an element: a plain integer is a mixed-radix index, `a:b:c` lists residues.
    pub fn parse_element(&self, spec: &str) -> Result<GroupElement> {
        let spec_err = |reason: String| Error::ElementSpec {
            spec: spec.to_string(),
            reason,
        };
        let s = spec.trim();
        if s.contains(':') {
            let residues = s
                .split(':')
                .map(|d| {
                    d.trim()
                        .parse::<usize>()
                        .map_err(|e| spec_err(e.to_string()))
                })
                .collect::<Result<Vec<_>>>()?;
            self.element_from_residues(residues)
                .map_err(|e| spec_err(e.to_string()))
        } else {
            let index = s.parse::<usize>().map_err(|e| spec_err(e.to_string()))?;
            self.element(index).map_err(|e| spec_err(e.to_string()))
        }
    }

    fn digits(&self, mut index: usize) -> Vec<usize> {
        self.orders
            .iter()
            .map(|&n| {
                let d = index % n;
                index /= n;
                d
            })
            .collect()
    }

    fn index_unchecked(&self, residues: &[usize]) -> usize {
        residues
            .iter()
            .zip(&self.orders)
            .rev()
            .fold(0, |acc, (&r, &n)| acc * n + r)
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index >= self.order {
            return Err(Error::IndexOutOfRange {
                index,
                size: self.order,
            });
        }
        Ok(())
    }

    fn check_element(&self, g: &GroupElement) -> Result<()> {
        self.check_element_residues(&g.residues)
    }

    fn check_element_residues(&self, residues: &[usize]) -> Result<()> {
        if residues.len() != self.orders.len() {
            return Err(Error::DimensionMismatch {
                expected: self.orders.len(),
                got: residues.len(),
            });
        }
        for (&r, &n) in residues.iter().zip(&self.orders) {
            if r >= n {
                return Err(Error::ResidueOutOfRange {
                    residue: r,
                    order: n,
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.orders.iter().map(|n| format!("Z{n}")).collect();
        f.write_str(&parts.join("x"))
    }
}

impl GroupElement {
    pub fn residues(&self) -> &[usize] {
        &self.residues
    }

    pub fn is_identity(&self) -> bool {
        self.residues.iter().all(|&r| r == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.residues.iter().map(|r| r.to_string()).collect();
        f.write_str(&parts.join(":"))
    }
}

impl Character {
    pub fn eval<T: Real>(&self, group: &FiniteAbelianGroup, l: usize) -> Result<Cplx<T>> {
        group.character(self.index, l)
    }
}

/// A materialized character table, for repeated lookups on groups up to [`MAX_TABLE_ORDER`].
#[derive(Debug, Clone)]
pub struct CharacterTable<T: Real> {
    table: Array2<Cplx<T>>,
}

impl<T: Real> CharacterTable<T> {
    pub fn new(group: &FiniteAbelianGroup) -> Result<Self> {
        if group.order() > MAX_TABLE_ORDER {
            return Err(Error::InvalidParameter(format!(
                "character table for |G| = {} exceeds cache limit {MAX_TABLE_ORDER}",
                group.order()
            )));
        }
        Ok(Self {
            table: group.character_table(),
        })
    }

    #[inline]
    pub fn get(&self, k: usize, l: usize) -> Cplx<T> {
        self.table[(k, l)]
    }

    pub fn matrix(&self) -> &Array2<Cplx<T>> {
        &self.table
    }

    pub fn order(&self) -> usize {
        self.table.nrows()
    }
}
