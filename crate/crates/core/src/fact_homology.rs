//! Surface invariants for coefficients that are modular over the base.
//!
//! For a closed genus-`g` surface whose only strata are point defects
//! `x_1, …, x_n` the invariant is the class
//!
//! ```text
//! [1_C, x_1 ⊗ … ⊗ x_n ⊗ H^{⊗g}]_E
//! ```
//!
//! in `E`, where `H` is the handle class. Adjacent point defects fuse, and
//! each handle is traded for one more pair of point defects, so the whole
//! evaluation reduces to Grothendieck-ring products followed by one internal
//! hom. Over the trivial base `H = ⊕_i i* ⊗ i`; over a nontrivial base the
//! handle needs algebra data the skeleton lacks and must be supplied.
//!
//! The cylinder with one line defect is only checked at the level of
//! Frobenius–Perron dimensions.

use std::fmt;

use crate::braiding::{classify_with_tolerance, Classification};
use crate::category_data::{fuse, BaseEmbedding, FusionRing, ObjectClass};
use crate::enriched_hom::internal_hom_over_base;
use crate::error::{Error, Result};
use crate::fp_dimension::{fpdim_class, fpdims, regular_algebra_dim, relative_center_dim, DimensionVector};
use crate::tol;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq)]
pub enum SurfaceSpec {
    Closed(ClosedSurface),
    /// `S¹ × ℝ` with one line defect labeled by a `C`-`C` bimodule `M`.
    Cylinder { defect_fpdim: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClosedSurface {
    pub genus: u32,
    pub defects: Vec<ObjectClass>,
    pub handle: Option<ObjectClass>,
    /// Expected `FPdim(H)` for a supplied handle.
    pub handle_fpdim: Option<f64>,
}

impl SurfaceSpec {
    pub fn closed(genus: u32, defects: Vec<ObjectClass>) -> Self {
        SurfaceSpec::Closed(ClosedSurface {
            genus,
            defects,
            handle: None,
            handle_fpdim: None,
        })
    }

    pub fn sphere(defects: Vec<ObjectClass>) -> Self {
        SurfaceSpec::closed(0, defects)
    }

    pub fn with_handle(self, handle: ObjectClass) -> Self {
        match self {
            SurfaceSpec::Closed(mut s) => {
                s.handle = Some(handle);
                SurfaceSpec::Closed(s)
            }
            other => other,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct FhOptions {
    /// Evaluate even when the coefficient is not modular over the base.
    pub force: bool,
    pub tolerance: f64,
}

impl Default for FhOptions {
    fn default() -> Self {
        FhOptions {
            force: false,
            tolerance: tol::TRANSPARENCY,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum DerivationStep {
    GatePassed,
    GateBypassed { failed: Vec<String> },
    MergeDefects { count: usize, result: String },
    InsertHandle { index: u32, handle: String, result: String },
    InternalHom { argument: String, result: String },
}

impl fmt::Display for DerivationStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DerivationStep::GatePassed => write!(f, "coefficient is modular over the base"),
            DerivationStep::GateBypassed { failed } => write!(
                f,
                "WARNING: anomaly-free check bypassed ({}); the closed form is unproven here",
                failed.join(", ")
            ),
            DerivationStep::MergeDefects { count, result } => {
                write!(f, "fuse {count} point defect(s) into one: {result}")
            }
            DerivationStep::InsertHandle {
                index,
                handle,
                result,
            } => write!(f, "cut handle {index} into a defect pair, insert {handle}: {result}"),
            DerivationStep::InternalHom { argument, result } => {
                write!(f, "collapse to [1, {argument}]_E = {result}")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct FhResult {
    /// The class `u_Σ` in `E`.
    pub invariant_class: ObjectClass,
    pub gsd: u64,
    pub derivation_log: Vec<DerivationStep>,
    pub classification: Classification,
}

/// Fuses all defects in order; the empty list gives the unit.
pub fn merge_defects(ring: &Arc<FusionRing>, defects: &[ObjectClass]) -> Result<ObjectClass> {
    defects
        .iter()
        .try_fold(ObjectClass::unit(ring.clone()), |acc, x| fuse(&acc, x))
}

/// The class inserted once per genus. A supplied class is returned
/// unchanged; otherwise the trivial-base closed form `⊕_i i* ⊗ i`.
pub fn handle_object(emb: &BaseEmbedding, override_class: Option<&ObjectClass>) -> Result<ObjectClass> {
    let ring = emb.target_ring();
    if let Some(h) = override_class {
        h.check_ring(ring)?;
        return Ok(h.clone());
    }
    if !emb.base_is_trivial() {
        return Err(Error::Unsupported(format!(
            "base `{}` is nontrivial: a handle class over `{}` must be supplied",
            emb.base_ring().name(),
            ring.name()
        )));
    }
    let r = ring.rank();
    let mut mults = vec![0u64; r];
    for i in 0..r {
        let di = ring.dual_of(i)?;
        for (k, m) in mults.iter_mut().enumerate() {
            *m += u64::from(ring.n(di, i, k));
        }
    }
    ObjectClass::new(ring.clone(), mults)
}

pub fn fh_closed_surface(emb: &BaseEmbedding, spec: &SurfaceSpec, opts: FhOptions) -> Result<FhResult> {
    let surface = match spec {
        SurfaceSpec::Closed(s) => s,
        SurfaceSpec::Cylinder { .. } => {
            return Err(Error::Unsupported(
                "the cylinder variant has no closed-surface invariant; use the cylinder check".into(),
            ))
        }
    };
    let ring = emb.target_ring();
    for x in &surface.defects {
        x.check_ring(ring)?;
    }

    let classification = classify_with_tolerance(emb, opts.tolerance)?;
    let mut log = Vec::new();
    if classification.is_umtc_over_e {
        log.push(DerivationStep::GatePassed);
    } else if opts.force {
        log.push(DerivationStep::GateBypassed {
            failed: classification.failed_flags(),
        });
    } else {
        return Err(Error::NotAnomalyFree(Box::new(classification)));
    }

    let mut acc = merge_defects(ring, &surface.defects)?;
    log.push(DerivationStep::MergeDefects {
        count: surface.defects.len(),
        result: acc.to_string(),
    });

    if surface.genus > 0 {
        let handle = handle_object(emb, surface.handle.as_ref())?;
        if let Some(expected) = surface.handle_fpdim {
            let found = fpdim_class(&fpdims(ring)?, &handle)?;
            if !tol::rel_eq(found, expected, tol::DIMENSION_IDENTITY) {
                return Err(Error::HandleInconsistent { expected, found });
            }
        }
        let handle_str = handle.to_string();
        for index in 1..=surface.genus {
            acc = fuse(&acc, &handle)?;
            log.push(DerivationStep::InsertHandle {
                index,
                handle: handle_str.clone(),
                result: acc.to_string(),
            });
        }
    }

    let hom = internal_hom_over_base(emb, &ObjectClass::unit(ring.clone()), &acc)?;
    log.push(DerivationStep::InternalHom {
        argument: acc.to_string(),
        result: hom.base_class.to_string(),
    });
    let gsd = hom.base_class.unit_mult();
    Ok(FhResult {
        invariant_class: hom.base_class,
        gsd,
        derivation_log: log,
        classification,
    })
}

/// Multiplicity of the base unit in the invariant.
pub fn gsd(result: &FhResult) -> u64 {
    result.invariant_class.unit_mult()
}

#[derive(Clone, Debug, PartialEq)]
pub struct CylinderReport {
    pub fpdim_c: f64,
    pub defect_fpdim: f64,
    pub relative_center_dim: f64,
    /// `FPdim(M) = FPdim(C)`, necessary for `M` to be a closed label.
    pub dimension_condition: bool,
    pub conclusion: String,
}

impl fmt::Display for CylinderReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "FPdim(M) = {:.10} vs FPdim(C) = {:.10}: {}",
            self.defect_fpdim,
            self.fpdim_c,
            if self.dimension_condition { "pass" } else { "FAIL" }
        )?;
        writeln!(f, "FPdim(Z(C, E)) = {:.10}", self.relative_center_dim)?;
        write!(f, "{}", self.conclusion)
    }
}

pub fn fh_cylinder_check(
    emb: &BaseEmbedding,
    spec: &SurfaceSpec,
    d_c: &DimensionVector,
    d_e: &DimensionVector,
) -> Result<CylinderReport> {
    let defect_fpdim = match spec {
        SurfaceSpec::Cylinder { defect_fpdim } => *defect_fpdim,
        SurfaceSpec::Closed(_) => {
            return Err(Error::Unsupported(
                "cylinder check needs the cylinder variant".into(),
            ))
        }
    };
    let fpdim_c = d_c.category_dim();
    let center = relative_center_dim(emb, d_c, d_e)?;
    let dimension_condition = tol::rel_eq(defect_fpdim, fpdim_c, tol::DIMENSION_IDENTITY);
    let base = emb.base_ring().name();
    let conclusion = if dimension_condition {
        if d_c.ring().rank() == 1 {
            format!("invariant ≃ Fun_{base}(X, X) with X = {base}")
        } else {
            format!(
                "invariant ≃ Fun_{base}(X, X) for the {}-module X with M ≃ Fun_{}(X, X)",
                emb.target_ring().name(),
                emb.target_ring().name()
            )
        }
    } else {
        format!(
            "no closed 1-cell label of FPdim {defect_fpdim} exists over `{}`",
            emb.target_ring().name()
        )
    };
    Ok(CylinderReport {
        fpdim_c,
        defect_fpdim,
        relative_center_dim: center,
        dimension_condition,
        conclusion,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct DimensionCheck {
    pub name: &'static str,
    pub left: f64,
    pub right: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub enum MoritaVerdict {
    /// All necessary conditions hold. Never a certificate.
    PossiblyEquivalent,
    NotEquivalent { witness: String },
}

impl fmt::Display for MoritaVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoritaVerdict::PossiblyEquivalent => {
                write!(f, "possibly Morita equivalent (inconclusive: dimension checks are necessary only)")
            }
            MoritaVerdict::NotEquivalent { witness } => {
                write!(f, "not Morita equivalent (witness: {witness})")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MoritaReport {
    pub checks: Vec<DimensionCheck>,
    pub verdict: MoritaVerdict,
}

/// Necessary conditions for `C` and `D` to be Morita equivalent over a
/// shared base: equal FPdim, equal relative-center dimension, equal
/// regular-algebra dimension.
pub fn morita_necessary(emb_c: &BaseEmbedding, emb_d: &BaseEmbedding) -> Result<MoritaReport> {
    let (bc, bd) = (emb_c.base_ring(), emb_d.base_ring());
    if bc != bd {
        return Err(Error::BaseMismatch(bc.name().to_string(), bd.name().to_string()));
    }
    let d_e = fpdims(bc)?;
    let d_c = fpdims(emb_c.target_ring())?;
    let d_d = fpdims(emb_d.target_ring())?;

    let check = |name, left: f64, right: f64| DimensionCheck {
        name,
        left,
        right,
        holds: tol::rel_eq(left, right, tol::DIMENSION_IDENTITY),
    };
    let checks = vec![
        check("FPdim", d_c.category_dim(), d_d.category_dim()),
        check(
            "FPdim(Z(-, E))",
            relative_center_dim(emb_c, &d_c, &d_e)?,
            relative_center_dim(emb_d, &d_d, &d_e)?,
        ),
        check(
            "FPdim(I(1))",
            regular_algebra_dim(emb_c, &d_c, &d_e)?,
            regular_algebra_dim(emb_d, &d_d, &d_e)?,
        ),
    ];
    let verdict = match checks.iter().find(|c| !c.holds) {
        None => MoritaVerdict::PossiblyEquivalent,
        Some(c) => MoritaVerdict::NotEquivalent {
            witness: format!(
                "{} of `{}` is {:.10} but of `{}` is {:.10}",
                c.name,
                emb_c.target_ring().name(),
                c.left,
                emb_d.target_ring().name(),
                c.right
            ),
        },
    };
    Ok(MoritaReport { checks, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category_data::RibbonData;
    use num_complex::Complex64;
    use std::f64::consts::PI;

    fn ribbon(name: &str, labels: &[&str], entries: &[(usize, usize, usize, u32)], twists: &[f64]) -> Arc<RibbonData> {
        let ring = FusionRing::new(
            name,
            labels.iter().map(|s| s.to_string()).collect(),
            0,
            entries.iter().copied(),
        )
        .unwrap();
        Arc::new(RibbonData::new(
            Arc::new(ring),
            twists.iter().map(|&a| Complex64::from_polar(1.0, a)).collect(),
        ))
    }

    fn ising() -> Arc<RibbonData> {
        ribbon(
            "ising",
            &["1", "epsilon", "sigma"],
            &[
                (0, 0, 0, 1),
                (0, 1, 1, 1),
                (0, 2, 2, 1),
                (1, 0, 1, 1),
                (1, 1, 0, 1),
                (1, 2, 2, 1),
                (2, 0, 2, 1),
                (2, 1, 2, 1),
                (2, 2, 0, 1),
                (2, 2, 1, 1),
            ],
            &[0.0, PI, PI / 8.0],
        )
    }

    fn fib() -> Arc<RibbonData> {
        ribbon(
            "fib",
            &["1", "tau"],
            &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1), (1, 1, 1, 1)],
            &[0.0, 0.8 * PI],
        )
    }

    fn toric() -> Arc<RibbonData> {
        let entries: Vec<_> = (0..4)
            .flat_map(|a| (0..4).map(move |b| (a, b, a ^ b, 1)))
            .collect();
        ribbon("toric_code", &["1", "e", "m", "f"], &entries, &[0.0, 0.0, 0.0, PI])
    }

    fn simple(rd: &Arc<RibbonData>, label: &str) -> ObjectClass {
        ObjectClass::simple(rd.ring().clone(), rd.ring().index_of(label).unwrap())
    }

    #[test]
    fn merge_examples() {
        let rd = ising();
        let s = simple(&rd, "sigma");
        assert_eq!(merge_defects(rd.ring(), &[s.clone(), s]).unwrap().mults(), &[1, 1, 0]);
        assert_eq!(merge_defects(rd.ring(), &[]).unwrap(), ObjectClass::unit(rd.ring().clone()));
        let f = fib();
        let t = simple(&f, "tau");
        assert_eq!(merge_defects(f.ring(), &[t.clone(), t.clone(), t]).unwrap().mults(), &[1, 2]);
    }

    #[test]
    fn handle_examples() {
        let emb = BaseEmbedding::trivial_base(toric());
        assert_eq!(handle_object(&emb, None).unwrap().mults(), &[4, 0, 0, 0]);
        let emb = BaseEmbedding::trivial_base(ising());
        assert_eq!(handle_object(&emb, None).unwrap().mults(), &[3, 1, 0]);
        let vec = ribbon("vec", &["1"], &[(0, 0, 0, 1)], &[0.0]);
        let emb = BaseEmbedding::trivial_base(vec);
        assert_eq!(handle_object(&emb, None).unwrap().mults(), &[1]);
    }

    #[test]
    fn nontrivial_base_needs_handle() {
        let z2 = ribbon(
            "rep_z2",
            &["1", "psi"],
            &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1)],
            &[0.0, 0.0],
        );
        let emb = BaseEmbedding::identity(z2.clone());
        let err = handle_object(&emb, None).unwrap_err();
        assert!(matches!(err, Error::Unsupported(ref m) if m.contains("handle")));
        let err = fh_closed_surface(&emb, &SurfaceSpec::closed(1, vec![]), FhOptions::default())
            .unwrap_err();
        assert!(matches!(err, Error::Unsupported(_)));

        // C = E_A with A = 1: the handle is the unit
        let spec = SurfaceSpec::closed(2, vec![]).with_handle(ObjectClass::unit(z2.ring().clone()));
        let r = fh_closed_surface(&emb, &spec, FhOptions::default()).unwrap();
        assert_eq!(r.invariant_class.mults(), &[1, 0]);
    }

    #[test]
    fn closed_surface_examples() {
        let run = |rd: Arc<RibbonData>, g| {
            fh_closed_surface(
                &BaseEmbedding::trivial_base(rd),
                &SurfaceSpec::closed(g, vec![]),
                FhOptions::default(),
            )
            .unwrap()
        };
        assert_eq!(run(toric(), 1).gsd, 4);
        assert_eq!(run(ising(), 0).gsd, 1);
        assert_eq!(run(ising(), 2).gsd, 10);
        assert_eq!(run(fib(), 1).gsd, 2);
        let r = run(ising(), 2);
        assert_eq!(gsd(&r), 10);
        // gate, merge, two handles, internal hom
        assert_eq!(r.derivation_log.len(), 5);
    }

    #[test]
    fn sphere_defects() {
        let rd = ising();
        let emb = BaseEmbedding::trivial_base(rd.clone());
        let s = simple(&rd, "sigma");
        let e = simple(&rd, "epsilon");
        let r = fh_closed_surface(&emb, &SurfaceSpec::sphere(vec![s.clone(), s]), FhOptions::default())
            .unwrap();
        assert_eq!(r.gsd, 1);
        let r = fh_closed_surface(&emb, &SurfaceSpec::sphere(vec![e]), FhOptions::default()).unwrap();
        assert_eq!(r.gsd, 0);
    }

    #[test]
    fn handle_fpdim_consistency() {
        let rd = fib();
        let emb = BaseEmbedding::trivial_base(rd.clone());
        let h = handle_object(&emb, None).unwrap();
        let mut spec = ClosedSurface {
            genus: 1,
            defects: vec![],
            handle: Some(h),
            handle_fpdim: Some(fpdims(rd.ring()).unwrap().category_dim()),
        };
        assert!(fh_closed_surface(&emb, &SurfaceSpec::Closed(spec.clone()), FhOptions::default()).is_ok());
        spec.handle_fpdim = Some(5.0);
        assert!(matches!(
            fh_closed_surface(&emb, &SurfaceSpec::Closed(spec), FhOptions::default()),
            Err(Error::HandleInconsistent { .. })
        ));
    }

    #[test]
    fn gate_and_force() {
        let z2 = ribbon(
            "rep_z2",
            &["1", "psi"],
            &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1)],
            &[0.0, 0.0],
        );
        let emb = BaseEmbedding::from_labels(z2, ising(), [("1", "1"), ("psi", "epsilon")]).unwrap();
        let spec = SurfaceSpec::sphere(vec![]);
        match fh_closed_surface(&emb, &spec, FhOptions::default()) {
            Err(Error::NotAnomalyFree(c)) => assert!(!c.is_over_base),
            other => panic!("expected gate rejection, got {other:?}"),
        }
        let forced = fh_closed_surface(&emb, &spec, FhOptions { force: true, ..Default::default() }).unwrap();
        assert!(matches!(forced.derivation_log[0], DerivationStep::GateBypassed { .. }));
        assert!(forced.derivation_log[0].to_string().contains("WARNING"));
        // [1, 1]_E over Rep(Z/2) ↪ Ising: Hom(T(ψ), 1) = Hom(ε, 1) = 0
        assert_eq!(forced.invariant_class.mults(), &[1, 0]);
    }

    #[test]
    fn cylinder_examples() {
        let check = |rd: Arc<RibbonData>, m: f64| {
            let emb = BaseEmbedding::trivial_base(rd);
            let d_c = fpdims(emb.target_ring()).unwrap();
            let d_e = fpdims(emb.base_ring()).unwrap();
            fh_cylinder_check(&emb, &SurfaceSpec::Cylinder { defect_fpdim: m }, &d_c, &d_e).unwrap()
        };
        assert!(check(ising(), 4.0).dimension_condition);
        assert!(!check(toric(), 2.0).dimension_condition);
        let r = check(ribbon("vec", &["1"], &[(0, 0, 0, 1)], &[0.0]), 1.0);
        assert!(r.dimension_condition);
        assert_eq!(r.conclusion, "invariant ≃ Fun_vec(X, X) with X = vec");
    }

    #[test]
    fn morita_examples() {
        let e = |rd| BaseEmbedding::trivial_base(rd);
        let r = morita_necessary(&e(ising()), &e(ising())).unwrap();
        assert_eq!(r.verdict, MoritaVerdict::PossiblyEquivalent);
        let r = morita_necessary(&e(ising()), &e(toric())).unwrap();
        assert_eq!(r.verdict, MoritaVerdict::PossiblyEquivalent);
        let r = morita_necessary(&e(fib()), &e(ising())).unwrap();
        match r.verdict {
            MoritaVerdict::NotEquivalent { witness } => assert!(witness.starts_with("FPdim of")),
            v => panic!("unexpected {v:?}"),
        }
    }
}
