//! Sparse polynomials over abstract generators `m_j(d^k(x_v))`.
//!
//! Coefficients are [`UnknownPoly`] values: polynomials in named unknowns with
//! rational coefficients. All values are kept in canonical form (no zero
//! coefficients, sorted keys), so structural equality is mathematical equality.

mod generator;
mod poly;
mod unknown;

pub use generator::{Generator, Monomial};

use core::cmp::Ordering;

/// Display order for sparse exponent vectors: higher total degree first, then
/// pure lexicographic order (larger exponent of the smallest key first).
pub(crate) fn display_cmp<K: Ord>(a: &[(K, u32)], b: &[(K, u32)]) -> Ordering {
    let da: u32 = a.iter().map(|(_, e)| e).sum();
    let db: u32 = b.iter().map(|(_, e)| e).sum();
    if da != db {
        return db.cmp(&da);
    }
    for ((ka, ea), (kb, eb)) in a.iter().zip(b) {
        match ka.cmp(kb) {
            Ordering::Equal => {}
            other => return other,
        }
        if ea != eb {
            return eb.cmp(ea);
        }
    }
    b.len().cmp(&a.len())
}
pub use poly::SymPoly;
pub use unknown::{UMono, Unknown, UnknownPoly};
