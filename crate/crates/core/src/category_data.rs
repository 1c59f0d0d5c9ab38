//! Skeletal data: fusion rings, ribbon twists, base embeddings and
//! Grothendieck classes.
//!
//! Simples are identified by their position in `simples`; the unit is an
//! explicit index rather than a positional convention.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol;

/// Fusion ring with a dense multiplicity tensor `N_ij^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRing {
    name: String,
    simples: Vec<String>,
    unit: usize,
    tensor: Vec<u32>,
}

impl FusionRing {
    /// Builds a ring from sparse `(i, j, k, N_ij^k)` entries. Entries not
    /// listed are zero. Out-of-range indices are a structural error; the
    /// fusion axioms are checked separately by [`validate_fusion_ring`].
    pub fn new(
        name: impl Into<String>,
        simples: Vec<String>,
        unit: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, u32)>,
    ) -> Result<Self> {
        let name = name.into();
        let n = simples.len();
        if n == 0 {
            return Err(Error::Structure(format!("`{name}` has no simples")));
        }
        if unit >= n {
            return Err(Error::Structure(format!(
                "unit index {unit} out of range for {n} simples"
            )));
        }
        let mut tensor = vec![0; n * n * n];
        for (i, j, k, m) in entries {
            if i >= n || j >= n || k >= n {
                return Err(Error::Structure(format!(
                    "fusion index ({i}, {j}, {k}) out of range for {n} simples"
                )));
            }
            tensor[(i * n + j) * n + k] = m;
        }
        Ok(FusionRing {
            name,
            simples,
            unit,
            tensor,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn simples(&self) -> &[String] {
        &self.simples
    }

    pub fn rank(&self) -> usize {
        self.simples.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn label(&self, i: usize) -> &str {
        &self.simples[i]
    }

    /// Case-sensitive label lookup.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.simples.iter().position(|s| s == label)
    }

    /// `N_ij^k`.
    #[inline]
    pub fn n(&self, i: usize, j: usize, k: usize) -> u32 {
        let r = self.rank();
        self.tensor[(i * r + j) * r + k]
    }

    /// Nonzero entries in lexicographic `(i, j, k)` order.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, usize, u32)> + '_ {
        let r = self.rank();
        self.tensor.iter().enumerate().filter_map(move |(idx, &m)| {
            (m != 0).then(|| (idx / (r * r), (idx / r) % r, idx % r, m))
        })
    }

    pub fn is_commutative(&self) -> bool {
        let r = self.rank();
        (0..r).all(|i| (0..r).all(|j| (0..r).all(|k| self.n(i, j, k) == self.n(j, i, k))))
    }

    /// The unique `j` with `N_ij^unit = 1`.
    pub fn dual_of(&self, i: usize) -> Result<usize> {
        let mut found = None;
        for j in 0..self.rank() {
            match self.n(i, j, self.unit) {
                0 => {}
                1 if found.is_none() => found = Some(j),
                _ => {
                    found = None;
                    break;
                }
            }
        }
        found.ok_or_else(|| Error::NoDual {
            ring: self.name.clone(),
            label: self.simples[i].clone(),
        })
    }

    /// Returns the same ring with its simples reordered: simple `i` of the
    /// result is simple `order[i]` of `self`.
    pub fn permuted(&self, order: &[usize]) -> Result<FusionRing> {
        let r = self.rank();
        let mut inverse = vec![usize::MAX; r];
        for (new, &old) in order.iter().enumerate() {
            if old >= r || inverse[old] != usize::MAX {
                return Err(Error::Structure("order is not a permutation".into()));
            }
            inverse[old] = new;
        }
        if order.len() != r {
            return Err(Error::Structure("order is not a permutation".into()));
        }
        FusionRing::new(
            self.name.clone(),
            order.iter().map(|&o| self.simples[o].clone()).collect(),
            inverse[self.unit],
            self.nonzero_entries()
                .map(|(i, j, k, m)| (inverse[i], inverse[j], inverse[k], m)),
        )
    }
}

/// A single failed check. Index tuples refer to simple indices of the ring
/// named in the report.
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    UnitLaw { i: usize, j: usize, k: usize },
    Associativity { i: usize, j: usize, k: usize, l: usize },
    Rigidity { i: usize },
    DualCompatibility { i: usize, j: usize, k: usize },
    NonCommutative { i: usize, j: usize, k: usize },
    TwistCount { expected: usize, found: usize },
    TwistUnit,
    TwistDual { i: usize },
    TwistModulus { i: usize, modulus: f64 },
    NotInjective { e: usize, f: usize },
    UnitNotPreserved,
    EmbeddingFusion { e: usize, f: usize, c: usize },
    EmbeddingTwist { e: usize },
}

impl Violation {
    /// Braided-level mismatch between base and target twists. Everything
    /// else is a fusion-level defect.
    pub fn is_twist_level(&self) -> bool {
        matches!(self, Violation::EmbeddingTwist { .. })
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnitLaw { i, j, k } => write!(f, "unit law fails at ({i}, {j}, {k})"),
            Violation::Associativity { i, j, k, l } => {
                write!(f, "associativity fails at ({i}, {j}, {k}, {l})")
            }
            Violation::Rigidity { i } => write!(f, "rigidity fails at i={i}: no unique dual"),
            Violation::DualCompatibility { i, j, k } => {
                write!(f, "dual compatibility fails at ({i}, {j}, {k})")
            }
            Violation::NonCommutative { i, j, k } => {
                write!(f, "N_ij^k != N_ji^k at ({i}, {j}, {k})")
            }
            Violation::TwistCount { expected, found } => {
                write!(f, "expected {expected} twists, found {found}")
            }
            Violation::TwistUnit => write!(f, "twist of the unit is not 1"),
            Violation::TwistDual { i } => write!(f, "twist of simple {i} differs from its dual's"),
            Violation::TwistModulus { i, modulus } => {
                write!(f, "twist of simple {i} has modulus {modulus}")
            }
            Violation::NotInjective { e, f: g } => {
                write!(f, "base simples {e} and {g} map to the same target simple")
            }
            Violation::UnitNotPreserved => write!(f, "base unit does not map to target unit"),
            Violation::EmbeddingFusion { e, f: g, c } => {
                write!(f, "fusion mismatch for base pair ({e}, {g}) at target simple {c}")
            }
            Violation::EmbeddingTwist { e } => {
                write!(f, "twist of base simple {e} differs from its image")
            }
        }
    }
}

/// Outcome of a validation pass. `violations` empty means valid; warnings
/// never invalidate.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    pub subject: String,
    pub violations: Vec<Violation>,
    pub warnings: Vec<Violation>,
}

impl ValidationReport {
    fn new(subject: &str) -> Self {
        ValidationReport {
            subject: subject.to_string(),
            ..Default::default()
        }
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// No violations other than twist-level ones.
    pub fn is_fusion_valid(&self) -> bool {
        self.violations.iter().all(Violation::is_twist_level)
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::Invalid(self))
        }
    }

    fn merge(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
        self.warnings.extend(other.warnings);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            write!(f, "{}: valid", self.subject)?;
        } else {
            write!(f, "{}: {} violation(s)", self.subject, self.violations.len())?;
        }
        for v in &self.violations {
            write!(f, "\n  error: {v}")?;
        }
        for w in &self.warnings {
            write!(f, "\n  warning: {w}")?;
        }
        Ok(())
    }
}

/// Checks the unit law, associativity, rigidity and dual compatibility.
/// Non-commutativity is reported as a warning only.
pub fn validate_fusion_ring(ring: &FusionRing) -> ValidationReport {
    let mut report = ValidationReport::new(ring.name());
    let r = ring.rank();
    let u = ring.unit();

    for j in 0..r {
        for k in 0..r {
            let delta = u32::from(j == k);
            if ring.n(u, j, k) != delta {
                report.violations.push(Violation::UnitLaw { i: u, j, k });
            }
            if ring.n(j, u, k) != delta {
                report.violations.push(Violation::UnitLaw { i: j, j: u, k });
            }
        }
    }

    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                for l in 0..r {
                    let left: u64 = (0..r)
                        .map(|m| u64::from(ring.n(i, j, m)) * u64::from(ring.n(m, k, l)))
                        .sum();
                    let right: u64 = (0..r)
                        .map(|m| u64::from(ring.n(j, k, m)) * u64::from(ring.n(i, m, l)))
                        .sum();
                    if left != right {
                        report
                            .violations
                            .push(Violation::Associativity { i, j, k, l });
                    }
                }
            }
        }
    }

    let duals: Vec<Option<usize>> = (0..r).map(|i| ring.dual_of(i).ok()).collect();
    for (i, d) in duals.iter().enumerate() {
        if d.is_none() {
            report.violations.push(Violation::Rigidity { i });
        }
    }

    if duals.iter().all(Option::is_some) {
        let dual = |i: usize| duals[i].unwrap();
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let m = ring.n(i, j, k);
                    if m != ring.n(dual(j), dual(i), dual(k)) || m != ring.n(dual(i), k, j) {
                        report
                            .violations
                            .push(Violation::DualCompatibility { i, j, k });
                    }
                }
            }
        }
    }

    for i in 0..r {
        for j in (i + 1)..r {
            for k in 0..r {
                if ring.n(i, j, k) != ring.n(j, i, k) {
                    report.warnings.push(Violation::NonCommutative { i, j, k });
                }
            }
        }
    }

    report
}

/// Fusion ring paired with one twist per simple.
#[derive(Clone, Debug, PartialEq)]
pub struct RibbonData {
    ring: Arc<FusionRing>,
    twists: Vec<Complex64>,
}

impl RibbonData {
    /// Stores the twists as given; see [`validate_ribbon`] for the checks.
    pub fn new(ring: Arc<FusionRing>, twists: Vec<Complex64>) -> Self {
        RibbonData { ring, twists }
    }

    pub fn ring(&self) -> &Arc<FusionRing> {
        &self.ring
    }

    pub fn twists(&self) -> &[Complex64] {
        &self.twists
    }

    pub fn twist(&self, i: usize) -> Complex64 {
        self.twists[i]
    }
}

/// Ring axioms plus `θ_unit = 1`, `θ_{i*} = θ_i` and unit modulus.
pub fn validate_ribbon(rd: &RibbonData) -> ValidationReport {
    let ring = rd.ring();
    let mut report = validate_fusion_ring(ring);
    if rd.twists.len() != ring.rank() {
        report.violations.push(Violation::TwistCount {
            expected: ring.rank(),
            found: rd.twists.len(),
        });
        return report;
    }
    if (rd.twist(ring.unit()) - Complex64::new(1.0, 0.0)).norm() > tol::TWIST {
        report.violations.push(Violation::TwistUnit);
    }
    for (i, t) in rd.twists.iter().enumerate() {
        let modulus = t.norm();
        if (modulus - 1.0).abs() > tol::TWIST {
            report.violations.push(Violation::TwistModulus { i, modulus });
        }
        if let Ok(d) = ring.dual_of(i) {
            if (rd.twist(d) - t).norm() > tol::TWIST {
                report.violations.push(Violation::TwistDual { i });
            }
        }
    }
    report
}

/// Map from the simples of a symmetric base `E` into the simples of `C`.
#[derive(Clone, Debug)]
pub struct BaseEmbedding {
    base: Arc<RibbonData>,
    target: Arc<RibbonData>,
    map: Vec<usize>,
}

impl BaseEmbedding {
    pub fn new(base: Arc<RibbonData>, target: Arc<RibbonData>, map: Vec<usize>) -> Result<Self> {
        let (nb, nt) = (base.ring().rank(), target.ring().rank());
        if map.len() != nb {
            return Err(Error::Structure(format!(
                "embedding has {} images for {nb} base simples",
                map.len()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&c| c >= nt) {
            return Err(Error::Structure(format!(
                "embedding image {bad} out of range for {nt} target simples"
            )));
        }
        Ok(BaseEmbedding { base, target, map })
    }

    /// Builds the map from `(base label, target label)` pairs.
    pub fn from_labels<'a>(
        base: Arc<RibbonData>,
        target: Arc<RibbonData>,
        pairs: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self> {
        let mut map = vec![None; base.ring().rank()];
        for (e, c) in pairs {
            let ei = base.ring().index_of(e).ok_or_else(|| {
                Error::Structure(format!("label `{e}` not found in `{}`", base.ring().name()))
            })?;
            let ci = target.ring().index_of(c).ok_or_else(|| {
                Error::Structure(format!(
                    "label `{c}` not found in `{}`",
                    target.ring().name()
                ))
            })?;
            map[ei] = Some(ci);
        }
        let map = map
            .into_iter()
            .enumerate()
            .map(|(e, c)| {
                c.ok_or_else(|| {
                    Error::Structure(format!(
                        "base simple `{}` has no image",
                        base.ring().label(e)
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        BaseEmbedding::new(base, target, map)
    }

    /// Embedding of the trivial category `Vec` (unit to unit).
    pub fn trivial_base(target: Arc<RibbonData>) -> Self {
        let vec_ring = FusionRing::new("vec", vec!["1".into()], 0, [(0, 0, 0, 1)])
            .expect("one-simple ring");
        let base = Arc::new(RibbonData::new(
            Arc::new(vec_ring),
            vec![Complex64::new(1.0, 0.0)],
        ));
        let unit = target.ring().unit();
        BaseEmbedding {
            base,
            target,
            map: vec![unit],
        }
    }

    /// `E = C`, every simple mapped to itself.
    pub fn identity(category: Arc<RibbonData>) -> Self {
        let map = (0..category.ring().rank()).collect();
        BaseEmbedding {
            base: category.clone(),
            target: category,
            map,
        }
    }

    pub fn base(&self) -> &Arc<RibbonData> {
        &self.base
    }

    pub fn target(&self) -> &Arc<RibbonData> {
        &self.target
    }

    pub fn base_ring(&self) -> &Arc<FusionRing> {
        self.base.ring()
    }

    pub fn target_ring(&self) -> &Arc<FusionRing> {
        self.target.ring()
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn image(&self, e: usize) -> usize {
        self.map[e]
    }

    pub fn base_is_trivial(&self) -> bool {
        self.base.ring().rank() == 1
    }
}

/// Injectivity, unit preservation, fusion compatibility (including the
/// closure of the image) and twist compatibility.
pub fn validate_embedding(emb: &BaseEmbedding) -> ValidationReport {
    let (eb, ct) = (emb.base_ring(), emb.target_ring());
    let mut report = ValidationReport::new(&format!("{} -> {}", eb.name(), ct.name()));
    let nb = eb.rank();

    for e in 0..nb {
        for f in (e + 1)..nb {
            if emb.image(e) == emb.image(f) {
                report.violations.push(Violation::NotInjective { e, f });
            }
        }
    }
    if emb.image(eb.unit()) != ct.unit() {
        report.violations.push(Violation::UnitNotPreserved);
    }

    let mut preimage = vec![None; ct.rank()];
    for e in 0..nb {
        preimage[emb.image(e)] = Some(e);
    }
    for e in 0..nb {
        for f in 0..nb {
            for c in 0..ct.rank() {
                let expected = preimage[c].map_or(0, |g| eb.n(e, f, g));
                if ct.n(emb.image(e), emb.image(f), c) != expected {
                    report
                        .violations
                        .push(Violation::EmbeddingFusion { e, f, c });
                }
            }
        }
    }

    if emb.base.twists().len() == nb && emb.target.twists().len() == ct.rank() {
        for e in 0..nb {
            if (emb.base.twist(e) - emb.target.twist(emb.image(e))).norm() > tol::TWIST {
                report.violations.push(Violation::EmbeddingTwist { e });
            }
        }
    }
    report
}

/// Validates both ribbon structures and the embedding between them.
pub fn validate_all(emb: &BaseEmbedding) -> ValidationReport {
    let mut report = validate_ribbon(&emb.base);
    if !Arc::ptr_eq(&emb.base, &emb.target) {
        report.merge(validate_ribbon(&emb.target));
    }
    report.merge(validate_embedding(emb));
    report.subject = format!("{} -> {}", emb.base_ring().name(), emb.target_ring().name());
    report
}

/// Element of the Grothendieck semiring: a multiplicity per simple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjectClass {
    ring: Arc<FusionRing>,
    mults: Vec<u64>,
}

impl ObjectClass {
    pub fn new(ring: Arc<FusionRing>, mults: Vec<u64>) -> Result<Self> {
        if mults.len() != ring.rank() {
            return Err(Error::Structure(format!(
                "class has {} entries, `{}` has {} simples",
                mults.len(),
                ring.name(),
                ring.rank()
            )));
        }
        Ok(ObjectClass { ring, mults })
    }

    pub fn zero(ring: Arc<FusionRing>) -> Self {
        let mults = vec![0; ring.rank()];
        ObjectClass { ring, mults }
    }

    pub fn simple(ring: Arc<FusionRing>, i: usize) -> Self {
        let mut c = ObjectClass::zero(ring);
        c.mults[i] = 1;
        c
    }

    pub fn unit(ring: Arc<FusionRing>) -> Self {
        let u = ring.unit();
        ObjectClass::simple(ring, u)
    }

    pub fn ring(&self) -> &Arc<FusionRing> {
        &self.ring
    }

    pub fn mults(&self) -> &[u64] {
        &self.mults
    }

    pub fn mult(&self, i: usize) -> u64 {
        self.mults[i]
    }

    /// Multiplicity of the unit.
    pub fn unit_mult(&self) -> u64 {
        self.mults[self.ring.unit()]
    }

    pub fn total_mass(&self) -> u64 {
        self.mults.iter().sum()
    }

    pub(crate) fn check_ring(&self, ring: &FusionRing) -> Result<()> {
        same_ring(ring, &self.ring)
    }

    pub fn add(&self, other: &ObjectClass) -> Result<ObjectClass> {
        other.check_ring(&self.ring)?;
        let mults = self
            .mults
            .iter()
            .zip(&other.mults)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow("class sum")))
            .collect::<Result<_>>()?;
        Ok(ObjectClass {
            ring: self.ring.clone(),
            mults,
        })
    }

    /// Image under the dual involution.
    pub fn dual(&self) -> Result<ObjectClass> {
        let mut mults = vec![0; self.mults.len()];
        for (i, &m) in self.mults.iter().enumerate() {
            mults[self.ring.dual_of(i)?] += m;
        }
        Ok(ObjectClass {
            ring: self.ring.clone(),
            mults,
        })
    }
}

impl fmt::Display for ObjectClass {
    /// Renders as `1 + 2*tau`, the same grammar the parsers accept.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = self
            .mults
            .iter()
            .enumerate()
            .filter(|(_, &m)| m != 0)
            .map(|(i, &m)| match m {
                1 => self.ring.label(i).to_string(),
                _ => format!("{m}*{}", self.ring.label(i)),
            })
            .peekable();
        if terms.peek().is_none() {
            return write!(f, "0");
        }
        let joined: Vec<String> = terms.collect();
        write!(f, "{}", joined.join(" + "))
    }
}

pub(crate) fn same_ring(expected: &FusionRing, found: &FusionRing) -> Result<()> {
    if std::ptr::eq(expected, found) || expected == found {
        Ok(())
    } else {
        Err(Error::RingMismatch {
            expected: expected.name().to_string(),
            found: found.name().to_string(),
        })
    }
}

/// Grothendieck-ring product: `(a ⊗ b)_k = Σ_{i,j} a_i b_j N_ij^k`.
pub fn fuse(a: &ObjectClass, b: &ObjectClass) -> Result<ObjectClass> {
    b.check_ring(&a.ring)?;
    let ring = &a.ring;
    let r = ring.rank();
    let mut out = vec![0u64; r];
    for (i, &ai) in a.mults.iter().enumerate().filter(|(_, &m)| m != 0) {
        for (j, &bj) in b.mults.iter().enumerate().filter(|(_, &m)| m != 0) {
            let w = ai.checked_mul(bj).ok_or(Error::Overflow("fusion product"))?;
            for (k, slot) in out.iter_mut().enumerate() {
                let n = u64::from(ring.n(i, j, k));
                if n != 0 {
                    *slot = w
                        .checked_mul(n)
                        .and_then(|t| slot.checked_add(t))
                        .ok_or(Error::Overflow("fusion product"))?;
                }
            }
        }
    }
    Ok(ObjectClass {
        ring: ring.clone(),
        mults: out,
    })
}
