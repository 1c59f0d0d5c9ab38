//! Internal homs of `C` viewed as an `E`-module through the embedding,
//! `e ⊙ x = T(e) ⊗ x`.
//!
//! `[m, n]_E` is the class in `E` with
//! `dim Hom_E(e, [m, n]_E) = dim Hom_C(T(e) ⊗ m, n)`.

use crate::category_data::{BaseEmbedding, ObjectClass};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct EnrichedHomResult {
    /// `[m, n]_E` as a class over `E`.
    pub base_class: ObjectClass,
    /// `dim Hom_C(m, n) = Σ_k m_k n_k`; equals the unit multiplicity of
    /// `base_class` because `T` sends the unit to the unit.
    pub hom_dim: u64,
}

impl EnrichedHomResult {
    pub fn is_consistent(&self) -> bool {
        self.base_class.unit_mult() == self.hom_dim
    }
}

fn dim_hom(m: &ObjectClass, n: &ObjectClass) -> Result<u64> {
    m.mults()
        .iter()
        .zip(n.mults())
        .try_fold(0u64, |acc, (a, b)| {
            a.checked_mul(*b).and_then(|t| acc.checked_add(t))
        })
        .ok_or(Error::Overflow("hom dimension"))
}

/// `mult_e = Σ_{i,j} m_i n_j N^C_{T(e) i}^j`.
pub fn internal_hom_over_base(
    emb: &BaseEmbedding,
    m: &ObjectClass,
    n: &ObjectClass,
) -> Result<EnrichedHomResult> {
    let c = emb.target_ring();
    m.check_ring(c)?;
    n.check_ring(c)?;
    let overflow = || Error::Overflow("internal hom");

    let mut mults = vec![0u64; emb.base_ring().rank()];
    for (e, slot) in mults.iter_mut().enumerate() {
        let te = emb.image(e);
        for (i, &mi) in m.mults().iter().enumerate().filter(|(_, &x)| x != 0) {
            for (j, &nj) in n.mults().iter().enumerate().filter(|(_, &x)| x != 0) {
                let nn = u64::from(c.n(te, i, j));
                if nn != 0 {
                    let t = mi
                        .checked_mul(nj)
                        .and_then(|t| t.checked_mul(nn))
                        .ok_or_else(overflow)?;
                    *slot = slot.checked_add(t).ok_or_else(overflow)?;
                }
            }
        }
    }
    Ok(EnrichedHomResult {
        base_class: ObjectClass::new(emb.base_ring().clone(), mults)?,
        hom_dim: dim_hom(m, n)?,
    })
}

/// A component where `[m, n]_E^*` and `[n, m]_E` disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwapMismatch {
    pub base_simple: usize,
    pub dual_of_forward: u64,
    pub backward: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DualSwapReport {
    pub forward: ObjectClass,
    pub backward: ObjectClass,
    pub mismatches: Vec<SwapMismatch>,
}

impl DualSwapReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares the dual of `[m, n]_E` with `[n, m]_E` componentwise.
pub fn internal_hom_dual_swap(
    emb: &BaseEmbedding,
    m: &ObjectClass,
    n: &ObjectClass,
) -> Result<DualSwapReport> {
    let forward = internal_hom_over_base(emb, m, n)?.base_class;
    let backward = internal_hom_over_base(emb, n, m)?.base_class;
    let dual = forward.dual()?;
    let mismatches = (0..emb.base_ring().rank())
        .filter(|&e| dual.mult(e) != backward.mult(e))
        .map(|e| SwapMismatch {
            base_simple: e,
            dual_of_forward: dual.mult(e),
            backward: backward.mult(e),
        })
        .collect();
    Ok(DualSwapReport {
        forward,
        backward,
        mismatches,
    })
}
