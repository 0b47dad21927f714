//! Uncolored Cayley graphs `Γ(G, S)` of finite abelian groups.
//!
//! Vertices are group elements (by index); `g ~ h` iff `h = g·s` for some `s ∈ S`.
//! Because `G` is abelian the generalized Fourier transform `P_{ij} = χ_i(α_j)/√n`
//! diagonalizes the adjacency matrix, with eigenvalue `x_i = Σ_{s∈S} χ_i(s)`.

use std::collections::VecDeque;

use ndarray::Array2;
use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteAbelianGroup, GroupElement};
use crate::scalar::{Cplx, Real};

/// A validated symmetric generating set without the identity, stored as sorted indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratingSet {
    indices: Vec<usize>,
    connected: bool,
}

impl GeneratingSet {
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Whether `⟨S⟩ = G`. A `false` here is a warning only; every formula still holds per component.
    pub fn generates_group(&self) -> bool {
        self.connected
    }
}

/// Checks `S = S⁻¹` and `e ∉ S`. Duplicates are merged.
pub fn validate_generating_set(
    group: &FiniteAbelianGroup,
    elements: &[GroupElement],
) -> Result<GeneratingSet> {
    let mut indices = elements
        .iter()
        .map(|g| group.index_of(g))
        .collect::<Result<Vec<_>>>()?;
    validate_indices(group, &mut indices)?;
    let connected = subgroup_closure(group, &indices).len() == group.order();
    Ok(GeneratingSet { indices, connected })
}

/// Same as [`validate_generating_set`] with elements given by index.
pub fn validate_generator_indices(
    group: &FiniteAbelianGroup,
    indices: &[usize],
) -> Result<GeneratingSet> {
    let elements = indices
        .iter()
        .map(|&i| group.element(i))
        .collect::<Result<Vec<_>>>()?;
    validate_generating_set(group, &elements)
}

fn validate_indices(group: &FiniteAbelianGroup, indices: &mut Vec<usize>) -> Result<()> {
    indices.sort_unstable();
    indices.dedup();
    if indices.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    if indices.contains(&0) {
        return Err(Error::IdentityInGenerators);
    }
    for &s in indices.iter() {
        if indices.binary_search(&group.inverse_index(s)).is_err() {
            return Err(Error::NotSymmetric(s));
        }
    }
    Ok(())
}

/// Subgroup `⟨S⟩` by breadth-first search from the identity, sorted.
pub fn subgroup_closure(group: &FiniteAbelianGroup, generators: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; group.order()];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(g) = queue.pop_front() {
        for &s in generators {
            let h = group.multiply_indices(g, s);
            if !seen[h] {
                seen[h] = true;
                queue.push_back(h);
            }
        }
    }
    (0..group.order()).filter(|&i| seen[i]).collect()
}

/// Adjacency eigenvalues indexed by character.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum<T> {
    values: Vec<T>,
}

impl<T: Real> Spectrum<T> {
    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn get(&self, i: usize) -> T {
        self.values[i]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Eigenvalues sorted ascending, as a multiset.
    pub fn sorted(&self) -> Vec<T> {
        let mut v = self.values.clone();
        v.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
        v
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CayleyGraph {
    group: FiniteAbelianGroup,
    gens: GeneratingSet,
    adjacency: Array2<u8>,
}

impl CayleyGraph {
    pub fn new(group: FiniteAbelianGroup, gens: GeneratingSet) -> Self {
        let n = group.order();
        let mut adjacency = Array2::zeros((n, n));
        for g in 0..n {
            for &s in gens.indices() {
                adjacency[(g, group.multiply_indices(g, s))] = 1;
            }
        }
        Self {
            group,
            gens,
            adjacency,
        }
    }

    pub fn from_elements(group: FiniteAbelianGroup, elements: &[GroupElement]) -> Result<Self> {
        let gens = validate_generating_set(&group, elements)?;
        Ok(Self::new(group, gens))
    }

    pub fn from_indices(group: FiniteAbelianGroup, indices: &[usize]) -> Result<Self> {
        let gens = validate_generator_indices(&group, indices)?;
        Ok(Self::new(group, gens))
    }

    /// Builds from CLI-style specs: `z2xz2` and `1:0,0:1`.
    pub fn parse(group_spec: &str, gens_spec: &str) -> Result<Self> {
        let group = FiniteAbelianGroup::parse(group_spec)?;
        let elements = gens_spec
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| group.parse_element(s))
            .collect::<Result<Vec<_>>>()?;
        Self::from_elements(group, &elements)
    }

    /// `C_n`: `Z_n` with `S = {1, n−1}`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!(
                "cycle needs at least 3 nodes, got {n}"
            )));
        }
        Self::from_indices(FiniteAbelianGroup::cyclic(n)?, &[1, n - 1])
    }

    /// `Q_d`: `Z_2^d` with the standard basis vectors as generators.
    pub fn hypercube(d: usize) -> Result<Self> {
        if d < 1 {
            return Err(Error::InvalidParameter(
                "hypercube dimension must be at least 1".into(),
            ));
        }
        let group = FiniteAbelianGroup::new(vec![2; d])?;
        let gens: Vec<usize> = (0..d).map(|i| 1 << i).collect();
        Self::from_indices(group, &gens)
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn generators(&self) -> &GeneratingSet {
        &self.gens
    }

    /// Number of vertices `n = |G|`.
    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// `|S|`; the graph is `|S|`-regular.
    pub fn degree(&self) -> usize {
        self.gens.len()
    }

    pub fn adjacency(&self) -> &Array2<u8> {
        &self.adjacency
    }

    pub fn adjacency_real<T: Real>(&self) -> Array2<T> {
        self.adjacency.mapv(|a| T::count(a as usize))
    }

    pub fn neighbors(&self, g: usize) -> impl Iterator<Item = usize> + '_ {
        self.gens
            .indices()
            .iter()
            .map(move |&s| self.group.multiply_indices(g, s))
    }

    /// `x_i = Σ_{s∈S} χ_i(s)`, after checking each imaginary part is negligible.
    pub fn spectrum<T: Real>(&self) -> Result<Spectrum<T>> {
        let tol = T::tol(1e-12, 16.0 * self.degree().max(1) as f64);
        let values = (0..self.order())
            .map(|i| {
                let x: Cplx<T> = self
                    .gens
                    .indices()
                    .iter()
                    .map(|&s| self.group.character_unchecked::<T>(i, s))
                    .fold(Complex::new(T::zero(), T::zero()), |acc, z| acc + z);
                if x.im.abs() > tol {
                    return Err(Error::ComplexEigenvalue {
                        index: i,
                        imag: x.im.to_f64().unwrap_or(f64::NAN),
                    });
                }
                Ok(x.re)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Spectrum { values })
    }

    /// Generalized Fourier transform `P_{ij} = χ_i(α_j)/√n`; `P A P†` is diagonal.
    pub fn fourier<T: Real>(&self) -> Array2<Cplx<T>> {
        fourier(&self.group)
    }
}

/// Generalized Fourier transform of `group`, unitary with `P⁻¹ = P†`.
pub fn fourier<T: Real>(group: &FiniteAbelianGroup) -> Array2<Cplx<T>> {
    let scale = T::count(group.order()).sqrt().recip();
    group.character_table::<T>().mapv(|z| z * scale)
}
