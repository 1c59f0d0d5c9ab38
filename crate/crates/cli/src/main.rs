use std::collections::BTreeSet;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use fuscat_core::fact_homology::{ClosedSurface, CylinderReport, MoritaVerdict};
use fuscat_core::{
    builtin_catalog, centralizer, classify_with_tolerance, fh_closed_surface, fh_cylinder_check,
    fpdims, internal_hom_dual_swap, internal_hom_over_base, is_dual_closed, lookup, monodromy,
    morita_necessary, mueger_center, parse_category_file, parse_class_expr, parse_surface_spec,
    serialize_category_file, tol, validate_all, validate_fusion_ring, validate_ribbon,
    BaseEmbedding, CategoryFile, Error, FhOptions, ObjectClass, SurfaceSpec, ValidationReport,
};

const EXIT_VALIDATION: u8 = 1;
const EXIT_SYNTAX: u8 = 2;
const EXIT_SEMANTIC: u8 = 3;
const EXIT_UNSUPPORTED: u8 = 4;
const EXIT_USAGE: u8 = 64;

/// Skeletal fusion-category calculator: validation, FP dimensions, Müger
/// centers, internal homs over a base and surface invariants.
///
/// A CATEGORY argument is a path to a category file or, if no such file
/// exists, the id of a built-in catalog entry.
#[derive(Parser, Debug)]
#[command(name = "fuscat", version)]
struct Cli {
    /// Print machine-readable JSON instead of the text report
    #[arg(long, global = true)]
    json: bool,

    /// Relative tolerance for transparency (S̃_ij = d_i d_j)
    #[arg(long, global = true, default_value_t = tol::TRANSPARENCY)]
    tol: f64,

    /// Evaluate surfaces even when the coefficient is not modular over the base
    #[arg(long, global = true)]
    force: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct BaseArg {
    /// Base category E (defaults to the file's declared base, else Vec)
    #[arg(long)]
    base: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the fusion axioms, twists and the base embedding
    Validate {
        category: String,
        #[command(flatten)]
        base: BaseArg,
    },
    /// Frobenius–Perron dimensions
    Fpdim { category: String },
    /// Müger center
    Center { category: String },
    /// Centralizer of a set of simples
    Centralizer {
        category: String,
        /// Comma-separated labels
        #[arg(long, value_delimiter = ',')]
        subset: Vec<String>,
    },
    /// Classify relative to a base: over E, modular over E, symmetric
    Classify {
        category: String,
        #[command(flatten)]
        base: BaseArg,
    },
    /// Internal hom [from, to]_E
    Hom {
        category: String,
        #[command(flatten)]
        base: BaseArg,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Surface invariant and ground-state degeneracy
    Fh {
        category: String,
        #[command(flatten)]
        base: BaseArg,
        /// Surface spec file
        #[arg(long, conflicts_with_all = ["genus", "defect", "handle", "cylinder"])]
        surface: Option<String>,
        #[arg(long)]
        genus: Option<u32>,
        /// Point defect class, repeatable
        #[arg(long)]
        defect: Vec<String>,
        /// Handle class (required over a nontrivial base)
        #[arg(long)]
        handle: Option<String>,
        /// Cylinder with one line defect instead of a closed surface
        #[arg(long, requires = "defect_fpdim", conflicts_with_all = ["genus", "defect", "handle"])]
        cylinder: bool,
        #[arg(long)]
        defect_fpdim: Option<f64>,
    },
    /// Necessary conditions for Morita equivalence over a shared base
    Morita {
        first: String,
        second: String,
        #[command(flatten)]
        base: BaseArg,
    },
    /// Built-in example categories
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    List,
    Show { id: String },
}

/// A failure and the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Syntax { .. } => EXIT_SYNTAX,
            Error::Semantic { .. } => EXIT_SEMANTIC,
            Error::Unsupported(_) => EXIT_UNSUPPORTED,
            _ => EXIT_VALIDATION,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

type CmdResult = Result<(), Failure>;

fn load_category(arg: &str) -> Result<CategoryFile, Failure> {
    if Path::new(arg).exists() {
        let text = std::fs::read_to_string(arg)
            .map_err(|e| fail(EXIT_SYNTAX, format!("{arg}: {e}")))?;
        return parse_category_file(&text).map_err(|e| {
            let mut f = Failure::from(e);
            f.message = format!("{arg}: {}", f.message);
            f
        });
    }
    match lookup(arg) {
        Some(entry) => Ok(entry.load()?),
        None => Err(fail(
            EXIT_SYNTAX,
            format!("{arg}: no such file or catalog entry"),
        )),
    }
}

fn load_embedding(category: &CategoryFile, base: &BaseArg) -> Result<BaseEmbedding, Failure> {
    let base_file = base.base.as_deref().map(load_category).transpose()?;
    Ok(category.embedding(base_file.as_ref())?)
}

/// Rejects invalid data before any computation.
fn require_valid(report: ValidationReport) -> CmdResult {
    if report.is_valid() {
        Ok(())
    } else {
        Err(fail(EXIT_VALIDATION, report.to_string()))
    }
}

fn sig10(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (9 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

fn class_json(c: &ObjectClass) -> Value {
    let ring = c.ring();
    let map: Map<String, Value> = (0..ring.rank())
        .map(|i| (ring.label(i).to_string(), json!(c.mult(i))))
        .collect();
    Value::Object(map)
}

fn labels_of(file: &CategoryFile, set: &BTreeSet<usize>) -> Vec<String> {
    set.iter().map(|&i| file.ring.label(i).to_string()).collect()
}

fn print_json(v: &Value) {
    let text = serde_json::to_string_pretty(v).expect("json");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn report_json(r: &ValidationReport) -> Value {
    json!({
        "subject": r.subject,
        "valid": r.is_valid(),
        "violations": r.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "warnings": r.warnings.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
    })
}

fn cmd_validate(cli: &Cli, category: &str, base: &BaseArg) -> CmdResult {
    let file = load_category(category)?;
    let report = if file.ribbon.is_some() && (file.base.is_some() || base.base.is_some()) {
        validate_all(&load_embedding(&file, base)?)
    } else if let Some(rd) = &file.ribbon {
        validate_ribbon(rd)
    } else {
        validate_fusion_ring(&file.ring)
    };
    if cli.json {
        print_json(&report_json(&report));
    } else {
        println!("{report}");
    }
    if report.is_valid() {
        Ok(())
    } else {
        Err(fail(EXIT_VALIDATION, "validation failed"))
    }
}

fn cmd_fpdim(cli: &Cli, category: &str) -> CmdResult {
    let file = load_category(category)?;
    require_valid(validate_fusion_ring(&file.ring))?;
    let d = fpdims(&file.ring)?;
    if cli.json {
        let dims: Map<String, Value> = (0..file.ring.rank())
            .map(|i| (file.ring.label(i).to_string(), json!(d.dim(i))))
            .collect();
        print_json(&json!({
            "category": file.name(),
            "dims": dims,
            "category_dim": d.category_dim(),
        }));
    } else {
        for i in 0..file.ring.rank() {
            println!("{}: {}", file.ring.label(i), sig10(d.dim(i)));
        }
        println!("category_dim: {}", sig10(d.category_dim()));
    }
    Ok(())
}

fn cmd_center(cli: &Cli, category: &str, subset: Option<&[String]>) -> CmdResult {
    let file = load_category(category)?;
    let rd = file.ribbon()?.clone();
    require_valid(validate_ribbon(&rd))?;
    let d = fpdims(rd.ring())?;
    let s = monodromy(&rd, &d)?.with_tolerance(cli.tol);
    let (set, input) = match subset {
        None => (mueger_center(&s, &d), None),
        Some(labels) => {
            let idx = labels
                .iter()
                .map(|l| {
                    rd.ring().index_of(l).ok_or_else(|| {
                        fail(EXIT_SEMANTIC, format!("subset: unknown label `{l}`"))
                    })
                })
                .collect::<Result<BTreeSet<_>, _>>()?;
            if !is_dual_closed(&rd, &idx) {
                eprintln!("warning: subset is not closed under duals");
            }
            (centralizer(&s, &d, &idx), Some(idx))
        }
    };
    let members = labels_of(&file, &set);
    if cli.json {
        let mut out = json!({ "category": file.name() });
        match &input {
            None => {
                out["mueger_center"] = json!(members);
                out["symmetric"] = json!(set.len() == rd.ring().rank());
            }
            Some(x) => {
                out["subset"] = json!(labels_of(&file, x));
                out["centralizer"] = json!(members);
            }
        }
        print_json(&out);
    } else if input.is_none() {
        println!("Müger center of {}: {{{}}}", file.name(), members.join(", "));
    } else {
        println!("centralizer: {{{}}}", members.join(", "));
    }
    Ok(())
}

fn cmd_classify(cli: &Cli, category: &str, base: &BaseArg) -> CmdResult {
    let file = load_category(category)?;
    let emb = load_embedding(&file, base)?;
    let c = classify_with_tolerance(&emb, cli.tol)?;
    let transparent = labels_of(&file, &c.transparent_simples.iter().copied().collect());
    if cli.json {
        print_json(&json!({
            "category": file.name(),
            "base": emb.base_ring().name(),
            "is_symmetric": c.is_symmetric,
            "is_over_base": c.is_over_base,
            "base_centralizer_equals_base": c.base_centralizer_equals_base,
            "twists_compatible": c.twists_compatible,
            "is_umtc_over_E": c.is_umtc_over_e,
            "transparent_simples": transparent,
        }));
    } else {
        println!("{} over {}", file.name(), emb.base_ring().name());
        println!("  is_symmetric:                 {}", c.is_symmetric);
        println!("  is_over_base:                 {}", c.is_over_base);
        println!("  base_centralizer_equals_base: {}", c.base_centralizer_equals_base);
        println!("  twists_compatible:            {}", c.twists_compatible);
        println!("  is_umtc_over_E:               {}", c.is_umtc_over_e);
        println!("  Müger center:                 {{{}}}", transparent.join(", "));
    }
    Ok(())
}

fn cmd_hom(cli: &Cli, category: &str, base: &BaseArg, from: &str, to: &str) -> CmdResult {
    let file = load_category(category)?;
    let emb = load_embedding(&file, base)?;
    let report = validate_all(&emb);
    if !report.is_fusion_valid() {
        return Err(fail(EXIT_VALIDATION, report.to_string()));
    }
    let m = parse_class_expr(&file.ring, from)?;
    let n = parse_class_expr(&file.ring, to)?;
    let h = internal_hom_over_base(&emb, &m, &n)?;
    let swap = internal_hom_dual_swap(&emb, &m, &n)?;
    if cli.json {
        print_json(&json!({
            "from": m.to_string(),
            "to": n.to_string(),
            "internal_hom": class_json(&h.base_class),
            "hom_dim": h.hom_dim,
            "dual_swap": swap.passed(),
        }));
    } else {
        println!("[{m}, {n}]_{} = {}", emb.base_ring().name(), h.base_class);
        println!("dim Hom_C = {}", h.hom_dim);
        println!(
            "dual swap [n, m] = [m, n]*: {}",
            if swap.passed() { "pass" } else { "FAIL" }
        );
    }
    if swap.passed() && h.is_consistent() {
        Ok(())
    } else {
        Err(fail(EXIT_VALIDATION, "internal hom identities failed"))
    }
}

struct InlineSurface<'a> {
    surface: Option<&'a str>,
    genus: Option<u32>,
    defects: &'a [String],
    handle: Option<&'a str>,
    cylinder: bool,
    defect_fpdim: Option<f64>,
}

fn surface_spec(file: &CategoryFile, s: &InlineSurface) -> Result<SurfaceSpec, Failure> {
    if let Some(path) = s.surface {
        let text = std::fs::read_to_string(path)
            .map_err(|e| fail(EXIT_SYNTAX, format!("{path}: {e}")))?;
        return Ok(parse_surface_spec(&text, &file.ring)?);
    }
    if s.cylinder {
        let m = s.defect_fpdim.filter(|m| *m > 0.0).ok_or_else(|| {
            fail(EXIT_SEMANTIC, "defect_fpdim: expected a positive number")
        })?;
        return Ok(SurfaceSpec::Cylinder { defect_fpdim: m });
    }
    if s.defect_fpdim.is_some() {
        return Err(fail(
            EXIT_SEMANTIC,
            "defect_fpdim: only meaningful with --cylinder",
        ));
    }
    let defects = s
        .defects
        .iter()
        .map(|d| parse_class_expr(&file.ring, d))
        .collect::<Result<Vec<_>, _>>()?;
    let handle = s.handle.map(|h| parse_class_expr(&file.ring, h)).transpose()?;
    Ok(SurfaceSpec::Closed(ClosedSurface {
        genus: s.genus.unwrap_or(0),
        defects,
        handle,
        handle_fpdim: None,
    }))
}

fn cylinder_output(cli: &Cli, r: &CylinderReport) -> CmdResult {
    if cli.json {
        print_json(&json!({
            "fpdim_c": r.fpdim_c,
            "defect_fpdim": r.defect_fpdim,
            "relative_center_dim": r.relative_center_dim,
            "dimension_condition": r.dimension_condition,
            "conclusion": r.conclusion,
        }));
    } else {
        println!("{r}");
    }
    if r.dimension_condition {
        Ok(())
    } else {
        Err(fail(EXIT_VALIDATION, "dimension condition failed"))
    }
}

fn cmd_fh(cli: &Cli, category: &str, base: &BaseArg, inline: &InlineSurface) -> CmdResult {
    let file = load_category(category)?;
    let emb = load_embedding(&file, base)?;
    let spec = surface_spec(&file, inline)?;
    if let SurfaceSpec::Cylinder { .. } = spec {
        let d_c = fpdims(emb.target_ring())?;
        let d_e = fpdims(emb.base_ring())?;
        let r = fh_cylinder_check(&emb, &spec, &d_c, &d_e)?;
        return cylinder_output(cli, &r);
    }
    let opts = FhOptions {
        force: cli.force,
        tolerance: cli.tol,
    };
    let result = fh_closed_surface(&emb, &spec, opts)?;
    if !result.classification.is_umtc_over_e {
        eprintln!(
            "WARNING: --force: `{}` is not modular over `{}` ({}); result is not backed by the closed form",
            file.name(),
            emb.base_ring().name(),
            result.classification.failed_flags().join(", ")
        );
    }
    let log: Vec<String> = result.derivation_log.iter().map(|s| s.to_string()).collect();
    if cli.json {
        print_json(&json!({
            "invariant": class_json(&result.invariant_class),
            "gsd": result.gsd,
            "log": log,
        }));
    } else {
        for (i, step) in log.iter().enumerate() {
            println!("{}. {step}", i + 1);
        }
        println!("invariant: {}", result.invariant_class);
        println!("gsd: {}", result.gsd);
    }
    Ok(())
}

fn cmd_morita(cli: &Cli, first: &str, second: &str, base: &BaseArg) -> CmdResult {
    let c = load_category(first)?;
    let d = load_category(second)?;
    let emb_c = load_embedding(&c, base)?;
    let emb_d = load_embedding(&d, base)?;
    for emb in [&emb_c, &emb_d] {
        let report = validate_all(emb);
        if !report.is_fusion_valid() {
            return Err(fail(EXIT_VALIDATION, report.to_string()));
        }
    }
    let report = morita_necessary(&emb_c, &emb_d)?;
    if cli.json {
        let checks: Vec<Value> = report
            .checks
            .iter()
            .map(|c| json!({ "identity": c.name, "left": c.left, "right": c.right, "holds": c.holds }))
            .collect();
        let (verdict, witness) = match &report.verdict {
            MoritaVerdict::PossiblyEquivalent => ("possibly_equivalent", Value::Null),
            MoritaVerdict::NotEquivalent { witness } => ("not_equivalent", json!(witness)),
        };
        print_json(&json!({ "checks": checks, "verdict": verdict, "witness": witness }));
    } else {
        for c in &report.checks {
            println!(
                "{}: {} vs {} {}",
                c.name,
                sig10(c.left),
                sig10(c.right),
                if c.holds { "ok" } else { "DIFFER" }
            );
        }
        println!("{}", report.verdict);
    }
    Ok(())
}

fn cmd_catalog(cli: &Cli, action: &CatalogAction) -> CmdResult {
    match action {
        CatalogAction::List => {
            let cat = builtin_catalog();
            if cli.json {
                let list: Vec<Value> = cat
                    .iter()
                    .map(|e| json!({ "id": e.id, "description": e.description }))
                    .collect();
                print_json(&Value::Array(list));
            } else {
                for e in cat {
                    println!("{:<20} {}", e.id, e.description);
                }
            }
            Ok(())
        }
        CatalogAction::Show { id } => {
            let entry = lookup(id)
                .ok_or_else(|| fail(EXIT_SEMANTIC, format!("no catalog entry `{id}`")))?;
            print!("{}", serialize_category_file(&entry.load()?));
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Validate { category, base } => cmd_validate(cli, category, base),
        Command::Fpdim { category } => cmd_fpdim(cli, category),
        Command::Center { category } => cmd_center(cli, category, None),
        Command::Centralizer { category, subset } => cmd_center(cli, category, Some(subset)),
        Command::Classify { category, base } => cmd_classify(cli, category, base),
        Command::Hom {
            category,
            base,
            from,
            to,
        } => cmd_hom(cli, category, base, from, to),
        Command::Fh {
            category,
            base,
            surface,
            genus,
            defect,
            handle,
            cylinder,
            defect_fpdim,
        } => cmd_fh(
            cli,
            category,
            base,
            &InlineSurface {
                surface: surface.as_deref(),
                genus: *genus,
                defects: defect,
                handle: handle.as_deref(),
                cylinder: *cylinder,
                defect_fpdim: *defect_fpdim,
            },
        ),
        Command::Morita {
            first,
            second,
            base,
        } => cmd_morita(cli, first, second, base),
        Command::Catalog { action } => cmd_catalog(cli, action),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if !(cli.tol.is_finite() && cli.tol > 0.0) {
        eprintln!("error: --tol must be a positive number");
        return ExitCode::from(EXIT_USAGE);
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
