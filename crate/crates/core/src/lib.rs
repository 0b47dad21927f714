//! Exact dynamics of `n` two-photon Jaynes–Cummings atom-cavity systems whose cavities sit on
//! the vertices of an uncolored Cayley graph of a finite abelian group.
//!
//! The generalized Fourier transform of the group block-diagonalizes the Hamiltonian on the
//! `2n`-dimensional photon-excitation manifold into 2×2 Rabi blocks, one per irreducible
//! character. [`dynamics`] evaluates the resulting closed forms, [`entanglement`] reduces them to
//! two-atom density matrices and negativities, and [`oracle`] re-derives everything numerically
//! without the block structure.
//!
//! All numerics are generic over [`Real`] (`f32`/`f64`); the `*64` aliases fix `f64`.

pub mod cayley;
pub mod dynamics;
pub mod entanglement;
pub mod error;
pub mod group;
pub mod oracle;
pub mod sampling;
pub mod scalar;

pub use cayley::{fourier, validate_generating_set, CayleyGraph, GeneratingSet, Spectrum};
pub use dynamics::{
    asymptotic_photon_amplitudes, block_energies, block_hamiltonian, evolve, evolve_block,
    excitation_transfer_amplitudes, from_block_basis, photon_transfer_amplitudes, to_block_basis,
    total_probabilities, BlockState, CavityParams, Evolution, ManifoldState, Regime,
};
pub use entanglement::{
    negativity, negativity_raw, partial_transpose_first, two_atom_reduced,
    w_negativity_closed_form, w_negativity_weak_hopping, TwoAtomDensity,
};
pub use error::{Error, Result};
pub use group::{Character, CharacterTable, FiniteAbelianGroup, GroupElement};
pub use scalar::{Cplx, Real};

pub type Spectrum64 = Spectrum<f64>;
pub type CavityParams64 = CavityParams<f64>;
pub type ManifoldState64 = ManifoldState<f64>;
pub type BlockState64 = BlockState<f64>;
pub type Evolution64 = Evolution<f64>;
pub type TwoAtomDensity64 = TwoAtomDensity<f64>;
pub type DenseHamiltonian64 = oracle::DenseHamiltonian<f64>;
pub type Complex64 = num_complex::Complex<f64>;
