//! Endomorphism algebras of two-row permutation modules.
//!
//! For a partition `λ = (λ1, λ2)` the algebra `S_F(λ) = End_{F S_r}(M^λ)` is
//! commutative with canonical basis `b(0), …, b(λ2)`. Over a field of
//! characteristic 3 this crate builds its complete set of primitive
//! orthogonal idempotents `e_{m,g}`, labels each with the Young module it
//! cuts out, and checks everything against a brute-force model of `M^λ`
//! inside `E^{⊗r}`.
//!
//! - [`padic`]: base-`p` digits, Lucas binomials, carries.
//! - [`algebra`]: `S_F(λ)` and its multiplication.
//! - [`idempotent`]: the factors, `e_{m,g}` and its prefixes, `ψ_{m,u}`.
//! - [`decompose`]: summands of `M^λ`, `p`-Kostka numbers, complete-set checks.
//! - [`oracle`]: the tensor-space model.

pub mod algebra;
pub mod decompose;
pub mod error;
pub mod idempotent;
pub mod oracle;
pub mod padic;

pub use algebra::{AlgebraContext, AlgebraElement};
pub use error::{Error, Result};
