//! Monodromy, centralizers, Müger centers and classification relative to a
//! symmetric base.
//!
//! Transparency is detected skeletally: `(i, j)` centralize each other iff
//! `S̃_ij = d_i d_j`, where
//!
//! ```text
//! S̃_ij = Σ_k N_ij^k d_k θ_k / (θ_i θ_j)
//! ```
//!
//! This criterion is taken as the contract of [`RibbonData`]: twists that do
//! not come from an actual braiding can make it report nonsense. Two
//! braidings with the same twists are indistinguishable here.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_complex::Complex64;

use crate::category_data::{validate_all, BaseEmbedding, RibbonData};
use crate::error::{Error, Result};
use crate::fp_dimension::{fpdims, DimensionVector};
use crate::tol;

#[derive(Clone, Debug)]
pub struct MonodromyMatrix {
    rank: usize,
    entries: Vec<Complex64>,
    tolerance: f64,
}

impl MonodromyMatrix {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.rank + j]
    }

    /// Relative tolerance used by [`is_transparent_pair`].
    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    /// `max_ij |S̃_ij - S̃_ji|`.
    pub fn asymmetry(&self) -> f64 {
        let r = self.rank;
        (0..r)
            .flat_map(|i| (0..r).map(move |j| (i, j)))
            .map(|(i, j)| (self.get(i, j) - self.get(j, i)).norm())
            .fold(0.0, f64::max)
    }
}

pub fn monodromy(rd: &RibbonData, d: &DimensionVector) -> Result<MonodromyMatrix> {
    let ring = rd.ring();
    if !ring.is_commutative() {
        return Err(Error::NonCommutative(ring.name().to_string()));
    }
    let r = ring.rank();
    let mut entries = vec![Complex64::new(0.0, 0.0); r * r];
    for i in 0..r {
        for j in 0..r {
            let num: Complex64 = (0..r)
                .map(|k| rd.twist(k) * (f64::from(ring.n(i, j, k)) * d.dim(k)))
                .sum();
            entries[i * r + j] = num / (rd.twist(i) * rd.twist(j));
        }
    }
    Ok(MonodromyMatrix {
        rank: r,
        entries,
        tolerance: tol::TRANSPARENCY,
    })
}

/// `|S̃_ij - d_i d_j| ≤ tol · max(1, d_i d_j)`.
pub fn is_transparent_pair(s: &MonodromyMatrix, d: &DimensionVector, i: usize, j: usize) -> bool {
    let dd = d.dim(i) * d.dim(j);
    (s.get(i, j) - dd).norm() <= s.tolerance * dd.max(1.0)
}

/// Simples transparent against every member of `subset`.
pub fn centralizer(
    s: &MonodromyMatrix,
    d: &DimensionVector,
    subset: &BTreeSet<usize>,
) -> BTreeSet<usize> {
    (0..s.rank)
        .filter(|&x| subset.iter().all(|&a| is_transparent_pair(s, d, x, a)))
        .collect()
}

pub fn mueger_center(s: &MonodromyMatrix, d: &DimensionVector) -> BTreeSet<usize> {
    let all = (0..s.rank).collect();
    centralizer(s, d, &all)
}

/// Whether `subset` is closed under taking duals.
pub fn is_dual_closed(rd: &RibbonData, subset: &BTreeSet<usize>) -> bool {
    subset
        .iter()
        .all(|&i| rd.ring().dual_of(i).is_ok_and(|j| subset.contains(&j)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    /// Every simple of `C` is transparent.
    pub is_symmetric: bool,
    /// The image of `E` lies in the Müger center `C′`.
    pub is_over_base: bool,
    /// `C′` equals the image of `E` exactly.
    pub base_centralizer_equals_base: bool,
    /// Base twists agree with the twists of their images.
    pub twists_compatible: bool,
    pub is_umtc_over_e: bool,
    /// `C′`, as simple indices of `C`.
    pub transparent_simples: Vec<usize>,
    /// Image of the base simples.
    pub image: Vec<usize>,
}

impl Classification {
    /// Names of the flags that keep the coefficient from being modular over
    /// the base.
    pub fn failed_flags(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.is_over_base {
            out.push("is_over_base = false".to_string());
        }
        if !self.base_centralizer_equals_base {
            out.push("base_centralizer_equals_base = false".to_string());
        }
        if !self.twists_compatible {
            out.push("twists_compatible = false".to_string());
        }
        if out.is_empty() && !self.is_umtc_over_e {
            out.push("is_umtc_over_E = false".to_string());
        }
        out
    }
}

pub fn classify(emb: &BaseEmbedding) -> Result<Classification> {
    classify_with_tolerance(emb, tol::TRANSPARENCY)
}

/// Classifies `C` relative to `E`. Fusion-level embedding defects are
/// errors; a twist mismatch is recorded in the result instead.
pub fn classify_with_tolerance(emb: &BaseEmbedding, tolerance: f64) -> Result<Classification> {
    let report = validate_all(emb);
    if !report.is_fusion_valid() {
        return Err(Error::Invalid(report));
    }
    let twists_compatible = report.is_valid();

    let target: &Arc<RibbonData> = emb.target();
    let d = fpdims(target.ring())?;
    let s = monodromy(target, &d)?.with_tolerance(tolerance);
    let center = mueger_center(&s, &d);
    let image: BTreeSet<usize> = emb.map().iter().copied().collect();

    let is_symmetric = center.len() == target.ring().rank();
    let is_over_base = image.is_subset(&center);
    let base_centralizer_equals_base = center == image;
    Ok(Classification {
        is_symmetric,
        is_over_base,
        base_centralizer_equals_base,
        twists_compatible,
        is_umtc_over_e: is_over_base && base_centralizer_equals_base && twists_compatible,
        transparent_simples: center.into_iter().collect(),
        image: emb.map().to_vec(),
    })
}
