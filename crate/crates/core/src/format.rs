//! JSON category files, surface specs and the class-expression grammar.
//!
//! Category file:
//!
//! ```json
//! {
//!   "name": "fibonacci",
//!   "simples": ["1", "tau"],
//!   "unit": "1",
//!   "fusion": [
//!     ["tau", "tau", "1", 1],
//!     ["tau", "tau", "tau", 1]
//!   ],
//!   "twists": {
//!     "1": [1.0, 0.0],
//!     "tau": [-0.8090169943749473, 0.5877852522924732]
//!   }
//! }
//! ```
//!
//! Products with the unit (`N_{1j}^j = N_{j1}^j = 1`) are implied; listing
//! them is allowed, and an explicit entry overrides the implied one. An
//! optional `base` object names another category and maps its labels into
//! this one.
//!
//! Class expressions: `factor (',' factor)*` is a tensor product,
//! `factor := term ('+' term)*` a direct sum, `term := [k '*'] label` with
//! `k` a positive integer.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::sync::Arc;

use num_complex::Complex64;
use serde_json::{Map, Value};

use crate::catalog;
use crate::category_data::{fuse, BaseEmbedding, FusionRing, ObjectClass, RibbonData};
use crate::error::{Error, Result};
use crate::fact_homology::{ClosedSurface, SurfaceSpec};
use crate::tol;

#[derive(Clone, Debug, PartialEq)]
pub struct BaseRef {
    pub category: String,
    /// `(base label, target label)` in file order.
    pub embedding: Vec<(String, String)>,
}

#[derive(Clone, Debug)]
pub struct CategoryFile {
    pub ring: Arc<FusionRing>,
    pub ribbon: Option<Arc<RibbonData>>,
    pub base: Option<BaseRef>,
}

impl CategoryFile {
    pub fn name(&self) -> &str {
        self.ring.name()
    }

    pub fn ribbon(&self) -> Result<&Arc<RibbonData>> {
        self.ribbon
            .as_ref()
            .ok_or_else(|| Error::semantic("twists", format!("`{}` has no twists", self.name())))
    }

    /// Builds the embedding of the base into this category.
    ///
    /// With no `base` section and no explicit base, the base is `Vec`. A
    /// `base` section naming a category not passed in is looked up in the
    /// built-in catalog. An explicit base without a `base` section is
    /// accepted when it is trivial or has the same data as this file.
    pub fn embedding(&self, base: Option<&CategoryFile>) -> Result<BaseEmbedding> {
        let target = self.ribbon()?.clone();
        let to_semantic = |e: Error| match e {
            Error::Structure(m) => Error::semantic("base.embedding", m),
            other => other,
        };
        match (&self.base, base) {
            (None, None) => Ok(BaseEmbedding::trivial_base(target)),
            (None, Some(b)) => {
                let base_rd = b.ribbon()?.clone();
                if b.ring.rank() == 1 {
                    BaseEmbedding::new(base_rd, target.clone(), vec![target.ring().unit()])
                } else if b.ring.simples() == self.ring.simples()
                    && b.ring.unit() == self.ring.unit()
                    && b.ring.nonzero_entries().eq(self.ring.nonzero_entries())
                {
                    BaseEmbedding::new(base_rd, target, (0..self.ring.rank()).collect())
                } else {
                    Err(Error::semantic(
                        "base",
                        format!(
                            "`{}` declares no embedding of `{}`",
                            self.name(),
                            b.name()
                        ),
                    ))
                }
            }
            (Some(r), Some(b)) => {
                if r.category != b.name() {
                    return Err(Error::semantic(
                        "base.category",
                        format!("file expects base `{}`, got `{}`", r.category, b.name()),
                    ));
                }
                BaseEmbedding::from_labels(
                    b.ribbon()?.clone(),
                    target,
                    r.embedding.iter().map(|(e, c)| (e.as_str(), c.as_str())),
                )
                .map_err(to_semantic)
            }
            (Some(r), None) => {
                let entry = catalog::lookup(&r.category).ok_or_else(|| {
                    Error::semantic(
                        "base.category",
                        format!("base `{}` was not supplied and is not in the catalog", r.category),
                    )
                })?;
                let b = entry.load()?;
                self.embedding(Some(&b))
            }
        }
    }
}

fn syntax(e: serde_json::Error) -> Error {
    Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

fn parse_json(text: &str) -> Result<Map<String, Value>> {
    match serde_json::from_str::<Value>(text).map_err(syntax)? {
        Value::Object(m) => Ok(m),
        _ => Err(Error::semantic("$", "expected a JSON object")),
    }
}

fn reject_unknown(obj: &Map<String, Value>, allowed: &[&str], prefix: &str) -> Result<()> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(Error::semantic(
            format!("{prefix}{k}"),
            format!("unknown field (expected one of {})", allowed.join(", ")),
        )),
        None => Ok(()),
    }
}

fn get_str<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a str> {
    match obj.get(key) {
        Some(Value::String(s)) => Ok(s),
        Some(_) => Err(Error::semantic(path, "expected a string")),
        None => Err(Error::semantic(path, "missing field")),
    }
}

fn lookup_label(ring_labels: &[String], label: &str, path: &str) -> Result<usize> {
    ring_labels
        .iter()
        .position(|s| s == label)
        .ok_or_else(|| Error::semantic(path, format!("unknown label `{label}`")))
}

pub fn parse_category_file(text: &str) -> Result<CategoryFile> {
    let obj = parse_json(text)?;
    reject_unknown(&obj, &["name", "simples", "unit", "fusion", "twists", "base"], "")?;

    let name = get_str(&obj, "name", "name")?.to_string();
    let simples: Vec<String> = match obj.get("simples") {
        Some(Value::Array(a)) => a
            .iter()
            .enumerate()
            .map(|(i, v)| {
                v.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| Error::semantic(format!("simples[{i}]"), "expected a string"))
            })
            .collect::<Result<_>>()?,
        Some(_) => return Err(Error::semantic("simples", "expected an array")),
        None => return Err(Error::semantic("simples", "missing field")),
    };
    if simples.is_empty() {
        return Err(Error::semantic("simples", "at least one simple is required"));
    }
    let mut seen = HashSet::new();
    for (i, s) in simples.iter().enumerate() {
        if !seen.insert(s.as_str()) {
            return Err(Error::semantic(format!("simples[{i}]"), format!("duplicate label `{s}`")));
        }
    }
    let unit = lookup_label(&simples, get_str(&obj, "unit", "unit")?, "unit")?;

    let n = simples.len();
    let mut entries = std::collections::BTreeMap::new();
    for j in 0..n {
        entries.insert((unit, j, j), 1u32);
        entries.insert((j, unit, j), 1u32);
    }
    let fusion = match obj.get("fusion") {
        Some(Value::Array(a)) => a.as_slice(),
        Some(_) => return Err(Error::semantic("fusion", "expected an array")),
        None => &[],
    };
    let mut explicit = HashSet::new();
    for (idx, entry) in fusion.iter().enumerate() {
        let path = format!("fusion[{idx}]");
        let tuple = match entry {
            Value::Array(t) if t.len() == 4 => t,
            _ => {
                return Err(Error::semantic(
                    path,
                    "expected [i_label, j_label, k_label, multiplicity]",
                ))
            }
        };
        let mut idxs = [0usize; 3];
        for (slot, v) in idxs.iter_mut().zip(tuple) {
            let label = v
                .as_str()
                .ok_or_else(|| Error::semantic(&path, "labels must be strings"))?;
            *slot = lookup_label(&simples, label, &path)?;
        }
        let mult = match &tuple[3] {
            Value::Number(num) => {
                if let Some(m) = num.as_u64() {
                    u32::try_from(m)
                        .map_err(|_| Error::semantic(&path, "multiplicity too large"))?
                } else if num.as_i64().is_some_and(|m| m < 0)
                    || num.as_f64().is_some_and(|m| m < 0.0)
                {
                    return Err(Error::semantic(
                        &path,
                        format!("negative multiplicity at {path}"),
                    ));
                } else {
                    return Err(Error::semantic(&path, "multiplicity must be an integer"));
                }
            }
            _ => return Err(Error::semantic(&path, "multiplicity must be an integer")),
        };
        let key = (idxs[0], idxs[1], idxs[2]);
        if !explicit.insert(key) {
            return Err(Error::semantic(path, "duplicate fusion triple"));
        }
        entries.insert(key, mult);
    }
    let ring = Arc::new(
        FusionRing::new(
            name,
            simples.clone(),
            unit,
            entries.into_iter().map(|((i, j, k), m)| (i, j, k, m)),
        )
        .map_err(|e| Error::semantic("fusion", e.to_string()))?,
    );

    let ribbon = match obj.get("twists") {
        None => None,
        Some(Value::Object(tw)) => {
            let mut twists = vec![None; n];
            for (label, v) in tw {
                let path = format!("twists.{label}");
                let i = lookup_label(&simples, label, &path)?;
                let pair = v
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .and_then(|a| Some((a[0].as_f64()?, a[1].as_f64()?)))
                    .ok_or_else(|| Error::semantic(&path, "expected [re, im]"))?;
                let t = Complex64::new(pair.0, pair.1);
                if (t.norm() - 1.0).abs() > tol::TWIST {
                    return Err(Error::semantic(
                        &path,
                        format!("twist modulus {} is not 1", t.norm()),
                    ));
                }
                twists[i] = Some(t);
            }
            let twists = twists
                .into_iter()
                .enumerate()
                .map(|(i, t)| {
                    t.ok_or_else(|| {
                        Error::semantic(format!("twists.{}", simples[i]), "missing twist")
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Some(Arc::new(RibbonData::new(ring.clone(), twists)))
        }
        Some(_) => return Err(Error::semantic("twists", "expected an object")),
    };

    let base = match obj.get("base") {
        None => None,
        Some(Value::Object(b)) => {
            reject_unknown(b, &["category", "embedding"], "base.")?;
            let category = get_str(b, "category", "base.category")?.to_string();
            let embedding = match b.get("embedding") {
                Some(Value::Object(m)) => m
                    .iter()
                    .map(|(k, v)| {
                        let target = v.as_str().ok_or_else(|| {
                            Error::semantic(format!("base.embedding.{k}"), "expected a label")
                        })?;
                        lookup_label(&simples, target, &format!("base.embedding.{k}"))?;
                        Ok((k.clone(), target.to_string()))
                    })
                    .collect::<Result<Vec<_>>>()?,
                Some(_) => return Err(Error::semantic("base.embedding", "expected an object")),
                None => return Err(Error::semantic("base.embedding", "missing field")),
            };
            Some(BaseRef {
                category,
                embedding,
            })
        }
        Some(_) => return Err(Error::semantic("base", "expected an object")),
    };

    Ok(CategoryFile { ring, ribbon, base })
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("string serialization")
}

fn json_f64(x: f64) -> String {
    serde_json::to_string(&x).expect("finite float")
}

/// Canonical text: fixed field order, fusion triples in index order with
/// implied unit products omitted, twists in simple order.
pub fn serialize_category_file(file: &CategoryFile) -> String {
    let ring = &file.ring;
    let u = ring.unit();
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"name\": {},", json_str(ring.name()));
    let simples: Vec<String> = ring.simples().iter().map(|s| json_str(s)).collect();
    let _ = writeln!(out, "  \"simples\": [{}],", simples.join(", "));
    let _ = write!(out, "  \"unit\": {},\n  \"fusion\": [", json_str(ring.label(u)));

    let r = ring.rank();
    let mut lines = Vec::new();
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                let m = ring.n(i, j, k);
                let implied = u32::from((i == u && j == k) || (j == u && i == k));
                if m != implied {
                    lines.push(format!(
                        "    [{}, {}, {}, {m}]",
                        json_str(ring.label(i)),
                        json_str(ring.label(j)),
                        json_str(ring.label(k))
                    ));
                }
            }
        }
    }
    if !lines.is_empty() {
        let _ = write!(out, "\n{}\n  ", lines.join(",\n"));
    }
    out.push(']');

    if let Some(rd) = &file.ribbon {
        out.push_str(",\n  \"twists\": {\n");
        let tw: Vec<String> = rd
            .twists()
            .iter()
            .enumerate()
            .map(|(i, t)| {
                format!(
                    "    {}: [{}, {}]",
                    json_str(ring.label(i)),
                    json_f64(t.re),
                    json_f64(t.im)
                )
            })
            .collect();
        let _ = write!(out, "{}\n  }}", tw.join(",\n"));
    }
    if let Some(b) = &file.base {
        let emb: Vec<String> = b
            .embedding
            .iter()
            .map(|(e, c)| format!("{}: {}", json_str(e), json_str(c)))
            .collect();
        let _ = write!(
            out,
            ",\n  \"base\": {{\n    \"category\": {},\n    \"embedding\": {{{}}}\n  }}",
            json_str(&b.category),
            emb.join(", ")
        );
    }
    out.push_str("\n}\n");
    out
}

fn parse_term(ring: &Arc<FusionRing>, term: &str, path: &str) -> Result<ObjectClass> {
    let term = term.trim();
    let (count, label) = match term.split_once('*') {
        Some((k, label)) => {
            let k = k.trim();
            let count: u64 = k
                .parse()
                .ok()
                .filter(|&c| c > 0)
                .ok_or_else(|| Error::semantic(path, format!("`{k}` is not a positive integer")))?;
            (count, label.trim())
        }
        None => (1, term),
    };
    if label.is_empty() {
        return Err(Error::semantic(path, "empty label"));
    }
    let i = ring
        .index_of(label)
        .ok_or_else(|| Error::semantic(path, format!("unknown label `{label}` in `{}`", ring.name())))?;
    let mut mults = vec![0; ring.rank()];
    mults[i] = count;
    ObjectClass::new(ring.clone(), mults)
}

fn parse_factor(ring: &Arc<FusionRing>, factor: &str, path: &str) -> Result<ObjectClass> {
    factor
        .split('+')
        .map(|t| parse_term(ring, t, path))
        .try_fold(ObjectClass::zero(ring.clone()), |acc, t| acc.add(&t?))
}

fn parse_factors<'a>(
    ring: &Arc<FusionRing>,
    factors: impl IntoIterator<Item = &'a str>,
    path: &str,
) -> Result<ObjectClass> {
    factors
        .into_iter()
        .map(|f| parse_factor(ring, f, path))
        .try_fold(ObjectClass::unit(ring.clone()), |acc, f| fuse(&acc, &f?))
}

/// Parses `sigma,sigma` or `1 + 2*tau` into a class over `ring`.
pub fn parse_class_expr(ring: &Arc<FusionRing>, text: &str) -> Result<ObjectClass> {
    if text.trim().is_empty() {
        return Err(Error::semantic("class", "empty class expression"));
    }
    parse_factors(ring, text.split(','), "class")
}

fn class_from_json(ring: &Arc<FusionRing>, v: &Value, path: &str) -> Result<ObjectClass> {
    match v {
        Value::String(s) => parse_class_expr(ring, s).map_err(|e| match e {
            Error::Semantic { message, .. } => Error::semantic(path, message),
            other => other,
        }),
        Value::Array(items) => {
            let strs = items
                .iter()
                .map(|x| {
                    x.as_str()
                        .ok_or_else(|| Error::semantic(path, "expected label or weighted term"))
                })
                .collect::<Result<Vec<_>>>()?;
            parse_factors(ring, strs, path)
        }
        _ => Err(Error::semantic(path, "expected a string or an array of terms")),
    }
}

pub fn parse_surface_spec(text: &str, ring: &Arc<FusionRing>) -> Result<SurfaceSpec> {
    let obj = parse_json(text)?;
    let variant = match obj.get("variant") {
        None => "closed",
        Some(Value::String(s)) => s.as_str(),
        Some(_) => return Err(Error::semantic("variant", "expected a string")),
    };
    match variant {
        "closed" => {
            reject_unknown(
                &obj,
                &["variant", "genus", "defects", "handle", "handle_fpdim"],
                "",
            )?;
            let genus = match obj.get("genus") {
                None => 0,
                Some(Value::Number(n)) => match n.as_u64() {
                    Some(g) => u32::try_from(g)
                        .map_err(|_| Error::semantic("genus", "genus too large"))?,
                    None if n.as_f64().is_some_and(|g| g < 0.0) => {
                        return Err(Error::semantic("genus", "genus must be nonnegative"))
                    }
                    None => return Err(Error::semantic("genus", "genus must be an integer")),
                },
                Some(_) => return Err(Error::semantic("genus", "genus must be an integer")),
            };
            let defects = match obj.get("defects") {
                None => Vec::new(),
                Some(Value::Array(ds)) => ds
                    .iter()
                    .enumerate()
                    .map(|(i, d)| class_from_json(ring, d, &format!("defects[{i}]")))
                    .collect::<Result<_>>()?,
                Some(_) => return Err(Error::semantic("defects", "expected an array")),
            };
            let handle = obj
                .get("handle")
                .map(|h| class_from_json(ring, h, "handle"))
                .transpose()?;
            let handle_fpdim = match obj.get("handle_fpdim") {
                None => None,
                Some(v) => Some(
                    v.as_f64()
                        .filter(|x| *x > 0.0)
                        .ok_or_else(|| Error::semantic("handle_fpdim", "expected a positive number"))?,
                ),
            };
            Ok(SurfaceSpec::Closed(ClosedSurface {
                genus,
                defects,
                handle,
                handle_fpdim,
            }))
        }
        "cylinder" => {
            for key in ["genus", "defects", "handle", "handle_fpdim"] {
                if obj.contains_key(key) {
                    return Err(Error::semantic(
                        key,
                        "the cylinder variant carries a single line defect and no genus, point defects or handle",
                    ));
                }
            }
            reject_unknown(&obj, &["variant", "defect_fpdim"], "")?;
            let m = obj
                .get("defect_fpdim")
                .ok_or_else(|| Error::semantic("defect_fpdim", "missing field"))?
                .as_f64()
                .filter(|x| *x > 0.0)
                .ok_or_else(|| Error::semantic("defect_fpdim", "expected a positive number"))?;
            Ok(SurfaceSpec::Cylinder { defect_fpdim: m })
        }
        other => Err(Error::Unsupported(format!(
            "surface variant `{other}`: only `closed` (point defects) and `cylinder` (one line defect) can be evaluated"
        ))),
    }
}
