//! Exact intersection numbers on Deligne-Mumford moduli spaces:
//! ψ-correlators in every genus via the Virasoro (DVV) recursion, mixed ψ–λ
//! Hodge integrals from first principles for g ≤ 1, and a file-backed table
//! for genus-2 λ-monomial values.

pub mod hodge;
pub mod psi;

pub use hodge::{hodge_mixed, lambda_vee_expand, G2Table, HodgeKey};
pub use psi::{psi_dvv, PsiKey};
