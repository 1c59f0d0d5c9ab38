//! Frobenius–Perron dimensions by power iteration on the total fusion
//! matrix.

use std::sync::Arc;

use crate::category_data::{same_ring, BaseEmbedding, FusionRing, ObjectClass};
use crate::error::{Error, Result};
use crate::tol;

#[derive(Clone, Debug)]
pub struct DimensionVector {
    ring: Arc<FusionRing>,
    dims: Vec<f64>,
    category_dim: f64,
    residual: f64,
}

impl DimensionVector {
    pub fn ring(&self) -> &Arc<FusionRing> {
        &self.ring
    }

    pub fn dims(&self) -> &[f64] {
        &self.dims
    }

    pub fn dim(&self, i: usize) -> f64 {
        self.dims[i]
    }

    /// `Σ_i d_i²`.
    pub fn category_dim(&self) -> f64 {
        self.category_dim
    }

    /// Largest `|d_i d_j - Σ_k N_ij^k d_k|` (relative to `max(1, d_i d_j)`).
    pub fn character_residual(&self) -> f64 {
        self.residual
    }
}

/// Max over `(i, j)` of the relative character-property defect.
pub fn character_residual(ring: &FusionRing, dims: &[f64]) -> f64 {
    let r = ring.rank();
    let mut worst = 0.0f64;
    for i in 0..r {
        for j in 0..r {
            let lhs = dims[i] * dims[j];
            let rhs: f64 = (0..r).map(|k| f64::from(ring.n(i, j, k)) * dims[k]).sum();
            worst = worst.max((lhs - rhs).abs() / lhs.abs().max(1.0));
        }
    }
    worst
}

/// Perron eigenvector of `M = Σ_i N_i` with `(N_i)_jk = N_ij^k`, scaled so
/// the unit has dimension 1.
pub fn fpdims(ring: &Arc<FusionRing>) -> Result<DimensionVector> {
    let r = ring.rank();
    let u = ring.unit();
    let mut total = vec![0.0f64; r * r];
    for (_, j, k, m) in ring.nonzero_entries() {
        total[j * r + k] += f64::from(m);
    }

    let mut v = vec![1.0f64; r];
    let mut next = vec![0.0f64; r];
    let mut converged = false;
    let mut delta = f64::INFINITY;
    for _ in 0..tol::POWER_ITERATION_CAP {
        for (j, slot) in next.iter_mut().enumerate() {
            *slot = (0..r).map(|k| total[j * r + k] * v[k]).sum();
        }
        let scale = next[u];
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::CharacterResidual {
                ring: ring.name().to_string(),
                residual: f64::NAN,
            });
        }
        next.iter_mut().for_each(|x| *x /= scale);
        delta = v
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        std::mem::swap(&mut v, &mut next);
        if delta < tol::POWER_ITERATION {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Convergence {
            iterations: tol::POWER_ITERATION_CAP,
            residual: delta,
        });
    }

    let residual = character_residual(ring, &v);
    if residual > tol::CHARACTER || v.iter().any(|&d| d <= 0.0) {
        return Err(Error::CharacterResidual {
            ring: ring.name().to_string(),
            residual,
        });
    }
    let category_dim = v.iter().map(|d| d * d).sum();
    Ok(DimensionVector {
        ring: ring.clone(),
        dims: v,
        category_dim,
        residual,
    })
}

/// Linear extension `Σ_i x_i d_i`.
pub fn fpdim_class(d: &DimensionVector, x: &ObjectClass) -> Result<f64> {
    same_ring(&d.ring, x.ring())?;
    Ok(x.mults()
        .iter()
        .zip(&d.dims)
        .map(|(&m, &di)| m as f64 * di)
        .sum())
}

fn check_dims(emb: &BaseEmbedding, d_c: &DimensionVector, d_e: &DimensionVector) -> Result<()> {
    same_ring(emb.target_ring(), &d_c.ring)?;
    same_ring(emb.base_ring(), &d_e.ring)
}

/// `FPdim(Z(C, E)) = FPdim(C)² / FPdim(E)`.
pub fn relative_center_dim(
    emb: &BaseEmbedding,
    d_c: &DimensionVector,
    d_e: &DimensionVector,
) -> Result<f64> {
    check_dims(emb, d_c, d_e)?;
    Ok(d_c.category_dim * d_c.category_dim / d_e.category_dim)
}

/// Dimension of the regular algebra `I(1_C)`: `FPdim(C) / FPdim(E)`.
pub fn regular_algebra_dim(
    emb: &BaseEmbedding,
    d_c: &DimensionVector,
    d_e: &DimensionVector,
) -> Result<f64> {
    check_dims(emb, d_c, d_e)?;
    Ok(d_c.category_dim / d_e.category_dim)
}
