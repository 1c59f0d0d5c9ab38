//! End-to-end acceptance checks. Runs as a plain binary so each criterion
//! prints exactly one PASS/FAIL line; exits nonzero if any fails.

use std::collections::BTreeSet;
use std::path::Path;
use std::process::{Command, Output};

use fuscat_core::fact_homology::MoritaVerdict;
use fuscat_core::{
    builtin_catalog, classify, fh_closed_surface, fpdims, fuse, lookup, monodromy,
    morita_necessary, mueger_center, parse_category_file, regular_algebra_dim,
    relative_center_dim, serialize_category_file, validate_fusion_ring, BaseEmbedding, Error,
    FhOptions, ObjectClass, SurfaceSpec,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn emb(id: &str) -> BaseEmbedding {
    lookup(id).unwrap().embedding().unwrap()
}

const MODULAR_OVER_VEC: [&str; 4] = ["trivial", "fibonacci", "ising", "toric_code"];

fn criterion_1() -> Check {
    let cat = builtin_catalog();
    ensure!(cat.len() >= 6, "only {} catalog entries", cat.len());
    for entry in &cat {
        let file = entry.load().map_err(|e| e.to_string())?;
        let report = validate_fusion_ring(&file.ring);
        ensure!(report.is_valid(), "{}: {report}", entry.id);
        let d = fpdims(&file.ring).map_err(|e| e.to_string())?;
        ensure!(d.character_residual() < 1e-9, "{}: residual {}", entry.id, d.character_residual());
        let rd = file.ribbon.as_ref().ok_or("missing twists")?;
        let s = monodromy(rd, &d).map_err(|e| e.to_string())?;
        ensure!(s.asymmetry() < 1e-9, "{}: monodromy asymmetry {}", entry.id, s.asymmetry());
    }
    Ok(format!("{} entries valid, symmetric monodromy, residual < 1e-9", cat.len()))
}

fn criterion_2() -> Check {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let fib = fpdims(&lookup("fibonacci").unwrap().load().unwrap().ring).unwrap();
    let tau = fib.ring().index_of("tau").unwrap();
    ensure!((fib.dim(tau) - phi).abs() < 1e-9, "d_tau = {}", fib.dim(tau));
    ensure!((fib.dim(tau) - 1.6180339887).abs() < 1e-9, "d_tau = {}", fib.dim(tau));
    ensure!((fib.category_dim() - 3.6180339887).abs() < 1e-9, "dim = {}", fib.category_dim());
    let ising = fpdims(&lookup("ising").unwrap().load().unwrap().ring).unwrap();
    ensure!((ising.category_dim() - 4.0).abs() < 1e-9, "ising dim = {}", ising.category_dim());
    Ok(format!(
        "d_tau = {:.10}, FPdim(Fib) = {:.10}, FPdim(Ising) = {:.10}",
        fib.dim(tau),
        fib.category_dim(),
        ising.category_dim()
    ))
}

fn criterion_3() -> Check {
    let cases: [(&str, &[&str]); 5] = [
        ("fibonacci", &["1"]),
        ("ising", &["1"]),
        ("toric_code", &["1"]),
        ("rep_z2", &["1", "psi"]),
        ("svec", &["1", "psi"]),
    ];
    for (id, want) in cases {
        let file = lookup(id).unwrap().load().unwrap();
        let rd = file.ribbon.unwrap();
        let d = fpdims(rd.ring()).unwrap();
        let s = monodromy(&rd, &d).unwrap();
        let got: Vec<&str> = mueger_center(&s, &d).into_iter().map(|i| rd.ring().label(i)).collect();
        ensure!(got == want, "{id}: center {got:?}");
    }
    for id in MODULAR_OVER_VEC.iter().chain(&["rep_z2_over_rep_z2"]) {
        let c = classify(&emb(id)).map_err(|e| e.to_string())?;
        ensure!(c.is_umtc_over_e, "{id}: {:?}", c.failed_flags());
    }
    Ok("centers match; modular entries and Rep(Z/2) over itself are UMTC over their base".into())
}

fn criterion_4() -> Check {
    let e = emb("ising");
    let d_c = fpdims(e.target_ring()).unwrap();
    let d_e = fpdims(e.base_ring()).unwrap();
    let z = relative_center_dim(&e, &d_c, &d_e).unwrap();
    let a = regular_algebra_dim(&e, &d_c, &d_e).unwrap();
    ensure!((z - 16.0).abs() <= 1e-9 * 16.0, "relative center dim {z}");
    ensure!((a - 4.0).abs() <= 1e-9 * 4.0, "regular algebra dim {a}");
    Ok(format!("FPdim(Z(Ising, Vec)) = {z:.10}, FPdim(I(1)) = {a:.10}"))
}

fn verlinde(dims: &[f64], genus: u32) -> f64 {
    let d2: f64 = dims.iter().map(|d| d * d).sum();
    dims.iter().map(|d| (d2 / (d * d)).powi(genus as i32 - 1)).sum()
}

fn criterion_5() -> Check {
    let cases: [(&str, [u64; 3]); 3] = [
        ("toric_code", [4, 16, 64]),
        ("ising", [3, 10, 36]),
        ("fibonacci", [2, 5, 15]),
    ];
    let mut summary = Vec::new();
    for (id, want) in cases {
        let e = emb(id);
        let dims = fpdims(e.target_ring()).unwrap();
        let mut got = Vec::new();
        for g in 1..=3u32 {
            let r = fh_closed_surface(&e, &SurfaceSpec::closed(g, vec![]), FhOptions::default())
                .map_err(|e| e.to_string())?;
            let oracle = verlinde(dims.dims(), g);
            ensure!((oracle - oracle.round()).abs() < 1e-6, "{id} g={g}: oracle {oracle}");
            ensure!(r.gsd == oracle.round() as u64, "{id} g={g}: handle {} vs oracle {oracle}", r.gsd);
            ensure!(r.gsd == want[g as usize - 1], "{id} g={g}: {}", r.gsd);
            got.push(r.gsd.to_string());
        }
        summary.push(format!("{id} {}", got.join("/")));
    }
    Ok(format!("{} (handle powering = Verlinde sum)", summary.join(", ")))
}

fn criterion_6() -> Check {
    for id in MODULAR_OVER_VEC {
        let e = emb(id);
        let ring = e.target_ring().clone();
        let r = fh_closed_surface(&e, &SurfaceSpec::sphere(vec![]), FhOptions::default()).unwrap();
        ensure!(r.gsd == 1, "{id}: empty sphere gsd {}", r.gsd);
        for x in 0..ring.rank() {
            let xs = ObjectClass::simple(ring.clone(), x);
            let spec = SurfaceSpec::sphere(vec![xs.clone(), xs.dual().unwrap()]);
            let r = fh_closed_surface(&e, &spec, FhOptions::default()).unwrap();
            ensure!(r.gsd == 1, "{id}: [{0}, {0}*] gsd {1}", ring.label(x), r.gsd);
        }
    }
    let e = emb("ising");
    let eps = ObjectClass::simple(e.target_ring().clone(), e.target_ring().index_of("epsilon").unwrap());
    let r = fh_closed_surface(&e, &SurfaceSpec::sphere(vec![eps]), FhOptions::default()).unwrap();
    ensure!(r.gsd == 0, "ising [epsilon] gsd {}", r.gsd);
    Ok("empty sphere 1, [x, x*] 1, Ising [epsilon] 0".into())
}

fn criterion_7() -> Check {
    let entries: Vec<(BaseEmbedding, Option<ObjectClass>)> = builtin_catalog()
        .into_iter()
        .filter(|e| e.expected.umtc_over_base.value)
        .map(|entry| {
            let e = entry.embedding().unwrap();
            let h = entry
                .expected
                .handle
                .as_ref()
                .map(|h| ObjectClass::new(e.target_ring().clone(), h.value.to_vec()).unwrap());
            (e, h)
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let trials = 200;
    for t in 0..trials {
        let (e, handle) = &entries[rng.gen_range(0..entries.len())];
        let ring = e.target_ring().clone();
        let genus = rng.gen_range(0..=2);
        let len = rng.gen_range(2..=4);
        let defects: Vec<ObjectClass> = (0..len)
            .map(|_| {
                let mults = (0..ring.rank()).map(|_| rng.gen_range(0..=2)).collect();
                ObjectClass::new(ring.clone(), mults).unwrap()
            })
            .collect();
        let at = rng.gen_range(0..len - 1);
        let mut merged = defects[..at].to_vec();
        merged.push(fuse(&defects[at], &defects[at + 1]).unwrap());
        merged.extend_from_slice(&defects[at + 2..]);
        let spec = |d: Vec<ObjectClass>| {
            let s = SurfaceSpec::closed(genus, d);
            match handle {
                Some(h) => s.with_handle(h.clone()),
                None => s,
            }
        };
        let a = fh_closed_surface(e, &spec(defects), FhOptions::default()).unwrap();
        let b = fh_closed_surface(e, &spec(merged), FhOptions::default()).unwrap();
        ensure!(
            a.invariant_class == b.invariant_class,
            "trial {t} ({}): {} vs {}",
            ring.name(),
            a.invariant_class,
            b.invariant_class
        );
    }
    Ok(format!("{trials} randomized trials, merged invariant identical"))
}

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fuscat"))
        .args(args)
        .output()
        .expect("run fuscat")
}

fn criterion_8() -> Check {
    let e = emb("ising_over_rep_z2");
    match fh_closed_surface(&e, &SurfaceSpec::closed(1, vec![]), FhOptions::default()) {
        Err(Error::NotAnomalyFree(c)) => {
            ensure!(!c.is_over_base, "is_over_base reported true");
        }
        other => return Err(format!("expected rejection, got {other:?}")),
    }
    let rejected = bin(&["fh", "ising_over_rep_z2", "--genus", "1"]);
    let stderr = String::from_utf8_lossy(&rejected.stderr);
    ensure!(rejected.status.code() == Some(1), "exit {:?}", rejected.status.code());
    ensure!(stderr.contains("is_over_base = false"), "stderr: {stderr}");

    let forced = bin(&[
        "--json", "--force", "fh", "ising_over_rep_z2", "--defect", "sigma", "--defect", "sigma",
    ]);
    ensure!(forced.status.success(), "forced exit {:?}", forced.status.code());
    let out: serde_json::Value = serde_json::from_slice(&forced.stdout).map_err(|e| e.to_string())?;
    let logged = out["log"]
        .as_array()
        .into_iter()
        .flatten()
        .any(|s| s.as_str().is_some_and(|s| s.starts_with("WARNING")));
    ensure!(logged, "no warning in log: {out}");
    ensure!(out["gsd"].is_u64(), "no gsd: {out}");
    Ok("rejected with is_over_base = false; --force evaluates and logs WARNING".into())
}

fn criterion_9() -> Check {
    let r = morita_necessary(&emb("fibonacci"), &emb("ising")).unwrap();
    match &r.verdict {
        MoritaVerdict::NotEquivalent { witness } => {
            ensure!(witness.starts_with("FPdim"), "witness {witness}");
        }
        v => return Err(format!("fibonacci vs ising: {v}")),
    }
    let r = morita_necessary(&emb("ising"), &emb("toric_code")).unwrap();
    ensure!(
        r.verdict == MoritaVerdict::PossiblyEquivalent,
        "ising vs toric_code: {}",
        r.verdict
    );
    let text = String::from_utf8_lossy(&bin(&["morita", "ising", "toric_code"]).stdout).to_string();
    ensure!(text.contains("inconclusive"), "text verdict: {text}");
    Ok("Fib vs Ising not equivalent (FPdim witness); Ising vs toric code inconclusive".into())
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn criterion_10() -> Check {
    for entry in builtin_catalog() {
        let text = serialize_category_file(&parse_category_file(entry.text).map_err(|e| e.to_string())?);
        ensure!(text == entry.text, "{} does not round-trip", entry.id);
    }
    let dir = tempfile::tempdir().unwrap();
    let syntax = write(dir.path(), "syntax.json", "{ \"name\": \"x\", ");
    let semantic = write(
        dir.path(),
        "semantic.json",
        r#"{"name": "x", "simples": ["1", "a"], "unit": "1", "fusion": [["a", "a", "1", -1]]}"#,
    );
    let surface = write(dir.path(), "surface.json", r#"{"variant": "disk_with_boundary"}"#);
    let codes: Vec<Option<i32>> = [
        bin(&["validate", &syntax]),
        bin(&["validate", &semantic]),
        bin(&["fh", "ising", "--surface", &surface]),
    ]
    .iter()
    .map(|o| o.status.code())
    .collect();
    let distinct: BTreeSet<_> = codes.iter().collect();
    ensure!(
        distinct.len() == 3 && !codes.contains(&Some(0)) && !codes.contains(&None),
        "exit codes {codes:?}"
    );
    Ok(format!(
        "catalog round-trips byte-for-byte; exit codes syntax/semantic/unsupported = {}/{}/{}",
        codes[0].unwrap(),
        codes[1].unwrap(),
        codes[2].unwrap()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("validation suite", criterion_1),
        ("FP dimensions", criterion_2),
        ("Müger centers and classification", criterion_3),
        ("dimension identities", criterion_4),
        ("genus series", criterion_5),
        ("sphere cases", criterion_6),
        ("defect-merge invariance", criterion_7),
        ("anomaly-free gate", criterion_8),
        ("Morita necessary conditions", criterion_9),
        ("parser and exit codes", criterion_10),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(check)
            .unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", n + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
