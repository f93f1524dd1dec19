//! Witt and Virasoro algebras, the free algebra on `e1, e2`, PBW normal
//! forms in U(W+), and derivations of polynomial rings.

mod cartan;
mod free;
mod lie;
mod pbw;

pub use cartan::{
    cartan_vars, der_bracket, dh_operator, dk_closed_form, dk_operator, pairing, verify_abelian_family,
    verify_dk_closed_form, AbelianFamily, PolyDerivation,
};
pub use free::{commutator, ideal_membership, rel5, rel7, words_of_degree, FreeNC, FreeWord, IdealComponent};
pub use lie::{lie_bracket, LieElement};
pub use pbw::{env_dim, pbw_basis, pbw_product, straighten, straighten_words, EnvElement, PbwMonomial};

use crate::error::Result;

/// One row of the bounded presentation comparison: the quotient of the free
/// algebra by `(rel5, rel7)` in degree `n` against the PBW count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletenessRow {
    pub degree: u32,
    pub words: usize,
    pub ideal_dim: usize,
    pub quotient_dim: usize,
    pub env_dim: u64,
}

impl CompletenessRow {
    pub fn matches(&self) -> bool {
        self.quotient_dim as u64 == self.env_dim
    }
}

/// Compares `dim (free / (rel5, rel7))_n` with `env_dim(n)` for `n <= max_degree`.
/// A mismatch would mean the two relations do not present U(W+) in that
/// degree; the table is informational.
pub fn completeness_report(max_degree: u32) -> Result<Vec<CompletenessRow>> {
    let gens = [rel5(), rel7()];
    (0..=max_degree)
        .map(|d| {
            let comp = IdealComponent::build(&gens, d)?;
            Ok(CompletenessRow {
                degree: d,
                words: comp.ambient_dim(),
                ideal_dim: comp.dim(),
                quotient_dim: comp.ambient_dim() - comp.dim(),
                env_dim: env_dim(d),
            })
        })
        .collect()
}
