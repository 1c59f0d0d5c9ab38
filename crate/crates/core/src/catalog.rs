//! Built-in example categories.
//!
//! Each entry is stored as a category file and loads through the ordinary
//! parser. The expected values are what the test suite re-derives; they are
//! never used by the engine itself.

use crate::category_data::BaseEmbedding;
use crate::error::Result;
use crate::format::{parse_category_file, CategoryFile};

/// How an expected value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Immediate from the definitions.
    Trivial,
    /// Computed by an independent route, named here.
    Derived(&'static str),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tagged<T> {
    pub value: T,
    pub provenance: Provenance,
}

const fn trivial<T>(value: T) -> Tagged<T> {
    Tagged {
        value,
        provenance: Provenance::Trivial,
    }
}

const fn derived<T>(value: T, how: &'static str) -> Tagged<T> {
    Tagged {
        value,
        provenance: Provenance::Derived(how),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expected {
    pub rank: usize,
    pub dims: Tagged<&'static [f64]>,
    pub category_dim: Tagged<f64>,
    pub mueger_center: Tagged<&'static [&'static str]>,
    /// Catalog id of the base; `None` means `Vec`.
    pub base: Option<&'static str>,
    pub umtc_over_base: Tagged<bool>,
    /// Handle class to supply when the base is nontrivial.
    pub handle: Option<Tagged<&'static [u64]>>,
    /// Ground-state degeneracy at genus 1, 2, 3 without defects.
    pub gsd: Option<Tagged<[u64; 3]>>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub description: &'static str,
    pub text: &'static str,
    pub expected: Expected,
}

impl CatalogEntry {
    pub fn load(&self) -> Result<CategoryFile> {
        parse_category_file(self.text)
    }

    /// Embedding of the entry's base (`Vec` when it declares none).
    pub fn embedding(&self) -> Result<BaseEmbedding> {
        self.load()?.embedding(None)
    }
}

const PHI: f64 = 1.618_033_988_749_895;
const SQRT2: f64 = std::f64::consts::SQRT_2;

pub fn builtin_catalog() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            id: "trivial",
            description: "Vec: one simple object, the unit",
            text: include_str!("../catalog/trivial.json"),
            expected: Expected {
                rank: 1,
                dims: trivial(&[1.0]),
                category_dim: trivial(1.0),
                mueger_center: trivial(&["1"]),
                base: None,
                umtc_over_base: trivial(true),
                handle: None,
                gsd: Some(trivial([1, 1, 1])),
            },
        },
        CatalogEntry {
            id: "rep_z2",
            description: "Rep(Z/2): Tannakian, psi a boson",
            text: include_str!("../catalog/rep_z2.json"),
            expected: Expected {
                rank: 2,
                dims: derived(&[1.0, 1.0], "pointed fusion"),
                category_dim: derived(2.0, "sum of squared dims"),
                mueger_center: derived(&["1", "psi"], "monodromy brute force"),
                base: None,
                umtc_over_base: derived(false, "Müger center is everything"),
                handle: None,
                gsd: None,
            },
        },
        CatalogEntry {
            id: "svec",
            description: "sVec: super vector spaces, psi a fermion",
            text: include_str!("../catalog/svec.json"),
            expected: Expected {
                rank: 2,
                dims: derived(&[1.0, 1.0], "pointed fusion"),
                category_dim: derived(2.0, "sum of squared dims"),
                mueger_center: derived(&["1", "psi"], "S̃_ψψ = θ_1/θ_ψ² = 1"),
                base: None,
                umtc_over_base: derived(false, "Müger center is everything"),
                handle: None,
                gsd: None,
            },
        },
        CatalogEntry {
            id: "fibonacci",
            description: "Fibonacci: tau x tau = 1 + tau",
            text: include_str!("../catalog/fibonacci.json"),
            expected: Expected {
                rank: 2,
                dims: derived(&[1.0, PHI], "largest root of x² = x + 1"),
                category_dim: derived(2.0 + PHI, "1 + φ²"),
                mueger_center: derived(&["1"], "monodromy brute force"),
                base: None,
                umtc_over_base: derived(true, "Müger center computation"),
                handle: None,
                gsd: Some(derived([2, 5, 15], "Σ_i (D/d_i)^(2g-2)")),
            },
        },
        CatalogEntry {
            id: "ising",
            description: "Ising: sigma x sigma = 1 + epsilon",
            text: include_str!("../catalog/ising.json"),
            expected: Expected {
                rank: 3,
                dims: derived(&[1.0, 1.0, SQRT2], "σ² = 1 ⊕ ε"),
                category_dim: derived(4.0, "1 + 1 + 2"),
                mueger_center: derived(&["1"], "monodromy brute force"),
                base: None,
                umtc_over_base: derived(true, "Müger center computation"),
                handle: None,
                gsd: Some(derived([3, 10, 36], "Σ_i (D/d_i)^(2g-2)")),
            },
        },
        CatalogEntry {
            id: "toric_code",
            description: "Toric code Z(Vec_Z2): 1, e, m, f with f a fermion",
            text: include_str!("../catalog/toric_code.json"),
            expected: Expected {
                rank: 4,
                dims: derived(&[1.0, 1.0, 1.0, 1.0], "pointed fusion"),
                category_dim: derived(4.0, "four invertibles"),
                mueger_center: derived(&["1"], "monodromy brute force"),
                base: None,
                umtc_over_base: derived(true, "Müger center computation"),
                handle: None,
                gsd: Some(derived([4, 16, 64], "Σ_i (D/d_i)^(2g-2)")),
            },
        },
        CatalogEntry {
            id: "rep_z2_over_rep_z2",
            description: "Rep(Z/2) over itself via the identity embedding",
            text: include_str!("../catalog/rep_z2_over_rep_z2.json"),
            expected: Expected {
                rank: 2,
                dims: derived(&[1.0, 1.0], "pointed fusion"),
                category_dim: derived(2.0, "sum of squared dims"),
                mueger_center: derived(&["1", "psi"], "monodromy brute force"),
                base: Some("rep_z2"),
                umtc_over_base: trivial(true),
                handle: Some(derived(&[1, 0], "C = E_A with A = 1, so H = 1 ⊗_1 1")),
                gsd: Some(derived([1, 1, 1], "[1, 1]_E = 1")),
            },
        },
        CatalogEntry {
            id: "ising_over_rep_z2",
            description: "Ising with Rep(Z/2) sent to epsilon; epsilon is not transparent",
            text: include_str!("../catalog/ising_over_rep_z2.json"),
            expected: Expected {
                rank: 3,
                dims: derived(&[1.0, 1.0, SQRT2], "σ² = 1 ⊕ ε"),
                category_dim: derived(4.0, "1 + 1 + 2"),
                mueger_center: derived(&["1"], "monodromy brute force"),
                base: Some("rep_z2"),
                umtc_over_base: derived(false, "S̃_εσ = -√2 ≠ √2"),
                handle: None,
                gsd: None,
            },
        },
    ]
}

pub fn lookup(id: &str) -> Option<CatalogEntry> {
    builtin_catalog().into_iter().find(|e| e.id == id)
}
