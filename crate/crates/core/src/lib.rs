//! Exact automorphism fixed-point spectra.
//!
//! For a finite group `G` and a divisor `d` of `|G|`, `θ(G, d)` counts the
//! automorphisms of `G` that fix exactly `d` elements. This crate computes
//! the full spectrum `d ↦ θ(G, d)` three independent ways:
//!
//! * [`abelian`]: explicit 2×2 matrices for `Z_{p^a} ⊕ Z_{p^b}` with `a < b`;
//! * [`dihedral`]: the maps `f_{α,β}` realizing `Aut D_{2n}` as `Hol(Z_n)`;
//! * [`oracle`]: a generator-image search over a bare Cayley table.
//!
//! [`formulas`] holds the closed-form counts the enumerations are checked
//! against.
//!
//! ```
//! use theta_core::abelian::{theta_spectrum, Rank2PGroup};
//! use theta_core::formulas::theta_zp_zp2;
//!
//! let g = Rank2PGroup::new(3, 1, 2)?;
//! let spectrum = theta_spectrum(&g)?;
//! for (d, count) in spectrum.iter() {
//!     assert_eq!(count, theta_zp_zp2(3, d)?);
//! }
//! # Ok::<(), theta_core::Error>(())
//! ```

pub mod abelian;
pub mod dihedral;
mod error;
pub mod formulas;
pub mod modarith;
pub mod oracle;
pub mod spectrum;

pub use error::{Error, Result};
pub use spectrum::Spectrum;

// The guide in book/ is compiled as doc-tests so its snippets cannot drift.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/modular.md")]
    mod modular {}
    #[doc = include_str!("../../../book/src/abelian.md")]
    mod abelian {}
    #[doc = include_str!("../../../book/src/dihedral.md")]
    mod dihedral {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
