use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::Serialize;
use serde_json::{json, Value};

use quadalg::claims::{check_b, check_c, CheckOptions, ClaimReport};
use quadalg::constructions::{b_complex, b_text, c_complex, c_text, BVariant, PaperComplex};
use quadalg::freealg::{peek_field, MonomialOrder, Presentation};
use quadalg::gbasis::{buchberger_with, GbOptions};
use quadalg::grading::GradedAlgebra;
use quadalg::mutation::mutation_test;
use quadalg::par::ExecMode;
use quadalg::resolution::{
    koszulity_report, minimal_resolution, parse_maps, verify_complex, verify_exactness, verify_minimality,
    write_maps, FreeModuleMap, ResolutionOptions,
};
use quadalg::scalar::{Field, FieldSpec, PrimeField, Rationals};
use quadalg::yoneda::generation_profile;

use crate::args::{Bounds, Cli, Command, Family, Source, Variant};
use crate::output::{csv_table, Outcome};

const ORDER: MonomialOrder = MonomialOrder::DegLex;

pub fn run(cli: &Cli) -> Result<Outcome> {
    let mode = if cli.common.sequential {
        ExecMode::Sequential
    } else {
        ExecMode::Parallel
    };
    let file_field = match source_of(&cli.command) {
        Some(Source { input: Some(path), .. }) => {
            let text = read(path)?;
            peek_field(&text).map_err(|e| anyhow!("{}:{e}", path.display()))?
        }
        _ => None,
    };
    let spec = match &cli.common.field {
        Some(s) => s.parse::<FieldSpec>()?,
        None => file_field.unwrap_or_default(),
    };
    match spec {
        FieldSpec::Prime(p) => run_over(&PrimeField::new(p as u64)?, cli, mode),
        FieldSpec::Rational => run_over(&Rationals, cli, mode),
    }
}

fn source_of(c: &Command) -> Option<&Source> {
    match c {
        Command::MakeAlgebra { source }
        | Command::MakeComplex { source }
        | Command::Gb { source, .. }
        | Command::Hilbert { source, .. }
        | Command::Resolve { source, .. }
        | Command::Verify { source, .. }
        | Command::ExtGens { source, .. } => Some(source),
        Command::PaperCheck { .. } => None,
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn variant(v: Variant) -> BVariant {
    match v {
        Variant::Full => BVariant::Full,
        Variant::Short => BVariant::Short,
    }
}

/// An algebra with the defaults that go with where it came from.
struct Loaded<F: Field> {
    name: String,
    pres: Presentation<F>,
    family: Option<(Family, usize)>,
    default_imax: usize,
    default_jmax: u32,
}

fn load<F: Field>(field: &F, s: &Source) -> Result<Loaded<F>> {
    if let Some(path) = &s.input {
        let text = read(path)?;
        let pres = Presentation::parse(&text, field).map_err(|e| anyhow!("{}:{e}", path.display()))?;
        let stem = path.file_stem().map(|x| x.to_string_lossy().into_owned());
        let name = pres.name().map(String::from).or(stem).unwrap_or_else(|| "A".into());
        return Ok(Loaded {
            name,
            pres,
            family: None,
            default_imax: 4,
            default_jmax: 6,
        });
    }
    let (text, imax, jmax, family) = match (s.family, s.m) {
        (Some(Family::C), Some(m)) => {
            if m < 5 {
                bail!("C(m) is defined for m >= 5; got m = {m}");
            }
            (c_text(m)?, m + 1, m as u32 + 3, (Family::C, m))
        }
        (Some(Family::C), None) => bail!("--family C needs --m"),
        (Some(Family::B), None) => (b_text(variant(s.b_variant)), 5, 8, (Family::B, 4)),
        (Some(Family::B), Some(_)) => bail!("--m applies to --family C only"),
        (None, _) => bail!("give --input FILE or --family C|B"),
    };
    let pres = Presentation::parse(&text, field)?;
    Ok(Loaded {
        name: pres.name().unwrap_or("A").to_string(),
        pres,
        family: Some(family),
        default_imax: imax,
        default_jmax: jmax,
    })
}

/// Resolved bounds with `1 <= imax <= jmax <= maxdeg`.
#[derive(Debug, Clone, Copy, Serialize)]
struct Resolved {
    imax: usize,
    jmax: u32,
    maxdeg: u32,
}

fn resolve_bounds<F: Field>(l: &Loaded<F>, b: &Bounds) -> Result<Resolved> {
    let jmax = b.jmax.unwrap_or(l.default_jmax.max(b.imax.unwrap_or(0) as u32));
    let imax = b.imax.unwrap_or(l.default_imax.min(jmax as usize));
    let maxdeg = b.maxdeg.unwrap_or(jmax);
    if imax < 1 || (imax as u32) > jmax || jmax > maxdeg {
        bail!("bounds must satisfy 1 <= imax <= jmax <= maxdeg; got imax {imax}, jmax {jmax}, maxdeg {maxdeg}");
    }
    Ok(Resolved { imax, jmax, maxdeg })
}

fn algebra<F: Field>(l: &Loaded<F>, maxdeg: u32, mode: ExecMode) -> Result<GradedAlgebra<F>> {
    let gb = buchberger_with(&l.pres, ORDER, maxdeg, GbOptions { mode, ..Default::default() })?;
    Ok(GradedAlgebra::new(gb))
}

fn builtin_complex<F: Field>(l: &Loaded<F>) -> Result<PaperComplex<F>> {
    match l.family {
        Some((Family::C, m)) => Ok(c_complex(&l.pres, m)?),
        Some((Family::B, _)) => Ok(b_complex(&l.pres)?),
        None => bail!("no built-in complex for a presentation file; pass --complex FILE"),
    }
}

/// The common JSON envelope: tool, command, field, order and bounds.
fn envelope<F: Field>(command: &str, field: &F, algebra: &str, bounds: Value, result: Value) -> Value {
    json!({
        "tool": "quadalg",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "algebra": algebra,
        "field": field.spec().to_string(),
        "order": ORDER.name(),
        "bounds": bounds,
        "result": result,
    })
}

fn run_over<F: Field>(field: &F, cli: &Cli, mode: ExecMode) -> Result<Outcome> {
    match &cli.command {
        Command::MakeAlgebra { source } => make_algebra(field, source),
        Command::MakeComplex { source } => make_complex(field, source),
        Command::Gb { source, bounds } => gb(field, source, bounds, mode),
        Command::Hilbert { source, bounds } => hilbert(field, source, bounds, mode),
        Command::Resolve { source, bounds } => resolve(field, source, bounds, mode),
        Command::Verify {
            source,
            bounds,
            complex,
            mutations,
            seed,
        } => verify(field, source, bounds, complex.as_deref(), *mutations, *seed, mode),
        Command::ExtGens { source, bounds } => ext_gens(field, source, bounds, mode),
        Command::PaperCheck { m, b_variant, jmax } => paper_check(field, m, variant(*b_variant), *jmax, mode),
    }
}

fn make_algebra<F: Field>(field: &F, s: &Source) -> Result<Outcome> {
    let l = load(field, s)?;
    let rels: Vec<String> = l.pres.relations().iter().map(|r| l.pres.format_poly(r)).collect();
    let csv = csv_table(
        &["index", "relation"],
        rels.iter().enumerate().map(|(i, r)| [i.to_string(), r.clone()]),
    )?;
    let result = json!({
        "generators": l.pres.names(),
        "degrees": l.pres.degrees(),
        "relations": rels,
    });
    Ok(Outcome {
        text: l.pres.to_text(),
        json: envelope("make-algebra", field, &l.name, Value::Null, result),
        csv,
        failures: Vec::new(),
    })
}

fn make_complex<F: Field>(field: &F, s: &Source) -> Result<Outcome> {
    let l = load(field, s)?;
    let cx = builtin_complex(&l)?;
    let text = write_maps(Some(&cx.name), &cx.maps, &l.pres);
    let mut rows = Vec::new();
    for (k, m) in cx.maps.iter().enumerate() {
        for (r, row) in m.rows().iter().enumerate() {
            for (c, e) in row.iter().enumerate() {
                if !e.is_zero() {
                    rows.push([(k + 1).to_string(), r.to_string(), c.to_string(), l.pres.format_poly(e)]);
                }
            }
        }
    }
    let maps: Vec<Value> = cx.maps.iter().map(|m| map_json(m, &l.pres)).collect();
    let result = json!({
        "name": cx.name,
        "labels": cx.labels,
        "ranks": cx.ranks(),
        "shifts": cx.shifts(),
        "maps": maps,
    });
    Ok(Outcome {
        text,
        json: envelope("make-complex", field, &l.name, Value::Null, result),
        csv: csv_table(&["map", "row", "col", "entry"], rows)?,
        failures: Vec::new(),
    })
}

fn map_json<F: Field>(m: &FreeModuleMap<F>, p: &Presentation<F>) -> Value {
    let rows: Vec<Vec<String>> = m
        .rows()
        .iter()
        .map(|r| r.iter().map(|e| p.format_poly(e)).collect())
        .collect();
    json!({
        "source_shifts": m.source().shifts(),
        "target_shifts": m.target().shifts(),
        "rows": rows,
    })
}

fn gb<F: Field>(field: &F, s: &Source, b: &Bounds, mode: ExecMode) -> Result<Outcome> {
    let l = load(field, s)?;
    let d = b.maxdeg.or(b.jmax).unwrap_or(l.default_jmax);
    let alg = algebra(&l, d, mode)?;
    let summary = alg.gb().summary();
    let mut text = alg.gb().to_text();
    text.push_str(&format!("# {} elements; dims {}\n", summary.basis_size, summary.dims.join(", ")));
    let csv = csv_table(
        &["degree", "basis_elements", "dim"],
        summary.dims.iter().enumerate().map(|(k, dim)| {
            let n = summary.basis_by_degree.get(&(k as u32)).copied().unwrap_or(0);
            [k.to_string(), n.to_string(), dim.clone()]
        }),
    )?;
    let basis: Vec<String> = alg.gb().basis().iter().map(|p| l.pres.format_poly(p)).collect();
    let result = json!({ "summary": summary, "basis": basis });
    Ok(Outcome {
        text,
        json: envelope("gb", field, &l.name, json!({ "maxdeg": d }), result),
        csv,
        failures: Vec::new(),
    })
}

fn hilbert<F: Field>(field: &F, s: &Source, b: &Bounds, mode: ExecMode) -> Result<Outcome> {
    let l = load(field, s)?;
    let d = b.maxdeg.or(b.jmax).unwrap_or(l.default_jmax);
    let alg = algebra(&l, d, mode)?;
    let dims: Vec<String> = alg.gb().dims(d)?.iter().map(|x| x.to_string()).collect();
    let csv = csv_table(
        &["degree", "dim"],
        dims.iter().enumerate().map(|(k, x)| [k.to_string(), x.clone()]),
    )?;
    Ok(Outcome {
        text: format!("{}\n", dims.join(", ")),
        json: envelope("hilbert", field, &l.name, json!({ "maxdeg": d }), json!({ "dims": dims })),
        csv,
        failures: Vec::new(),
    })
}

fn resolve<F: Field>(field: &F, s: &Source, b: &Bounds, mode: ExecMode) -> Result<Outcome> {
    let l = load(field, s)?;
    let r = resolve_bounds(&l, b)?;
    let alg = algebra(&l, r.maxdeg, mode)?;
    let opts = ResolutionOptions {
        mode,
        keep_solvers: false,
    };
    let res = minimal_resolution(&alg, r.imax, r.jmax, opts)?;
    let betti = res.betti_table();
    let k = koszulity_report(&betti);
    let text = format!(
        "Betti table of {} over {} ({} order, i <= {}, j <= {})\n{}\n{}",
        l.name,
        field.spec(),
        ORDER.name(),
        r.imax,
        r.jmax,
        betti.to_text(),
        k.to_text()
    );
    let result = json!({ "betti": betti, "koszulity": k });
    Ok(Outcome {
        text,
        json: envelope("resolve", field, &l.name, serde_json::to_value(r)?, result),
        csv: betti.to_csv(),
        failures: Vec::new(),
    })
}

#[allow(clippy::too_many_arguments)]
fn verify<F: Field>(
    field: &F,
    s: &Source,
    b: &Bounds,
    complex: Option<&Path>,
    mutations: usize,
    seed: u64,
    mode: ExecMode,
) -> Result<Outcome> {
    let l = load(field, s)?;
    let jmax = b.jmax.unwrap_or(l.default_jmax);
    let maxdeg = b.maxdeg.unwrap_or(jmax);
    if jmax < 1 || jmax > maxdeg {
        bail!("bounds must satisfy 1 <= jmax <= maxdeg; got jmax {jmax}, maxdeg {maxdeg}");
    }
    let (name, maps) = match complex {
        Some(path) => {
            let cf = parse_maps(&read(path)?, &l.pres).map_err(|e| anyhow!("{}:{e}", path.display()))?;
            (cf.name.unwrap_or_else(|| "complex".into()), cf.maps)
        }
        None => {
            let cx = builtin_complex(&l)?;
            (cx.name, cx.maps)
        }
    };
    let alg = algebra(&l, maxdeg, mode)?;
    let cc = verify_complex(&maps, &alg)?;
    let minimal = verify_minimality(&maps);
    let ex = verify_exactness(&maps, &alg, jmax, mode)?;
    let mut failures = Vec::new();
    let mut text = format!("{name} over {} (internal degrees <= {jmax})\n", field.spec());
    text.push_str(&format!(
        "complex:   {} ({} composites, {} nonzero entries)\n",
        verdict(cc.ok),
        cc.composites_checked,
        cc.failures.len()
    ));
    for f in cc.failures.iter().take(10) {
        text.push_str(&format!(
            "  composite {} entry ({}, {}) = {} [rows {:?}, cols {:?}]\n",
            f.position, f.row, f.col, f.normal_form, f.row_blocks, f.col_blocks
        ));
    }
    text.push_str(&format!("exactness: {} ({} grading)\n", verdict(ex.exact), ex.grading));
    if let Some(f) = &ex.first_failure {
        text.push_str(&format!(
            "  homology at position {} degree {} multidegree {}: ker {}, im {}\n",
            f.position, f.degree, f.multidegree, f.kernel_dim, f.image_dim
        ));
    }
    text.push_str(&format!("minimal:   {}\n", verdict(minimal)));
    if !cc.ok {
        failures.push(format!("{name}: composites do not vanish"));
    }
    if !ex.exact {
        failures.push(format!("{name}: not exact"));
    }
    if !minimal {
        failures.push(format!("{name}: not minimal"));
    }
    let mut csv_rows = vec![
        ["complex".to_string(), cc.ok.to_string()],
        ["exactness".to_string(), ex.exact.to_string()],
        ["minimality".to_string(), minimal.to_string()],
    ];
    let mut result = json!({
        "complex": cc,
        "exactness": ex,
        "minimal": minimal,
    });
    if mutations > 0 {
        let mr = mutation_test(&maps, &alg, jmax, mutations, seed, mode)?;
        text.push_str(&format!(
            "mutations: {}/{} detected (seed {seed})\n",
            mr.detected, mr.trials
        ));
        for m in mr.mutations.iter().filter(|m| m.detected_by.is_empty()) {
            text.push_str(&format!(
                "  undetected: map {} entry ({}, {}) {} -> {}\n",
                m.map + 1,
                m.row,
                m.col,
                m.before,
                m.after
            ));
        }
        if !mr.all_detected() {
            failures.push(format!("{name}: {} mutations undetected", mr.trials - mr.detected));
        }
        csv_rows.push(["mutations".to_string(), mr.all_detected().to_string()]);
        result["mutations"] = serde_json::to_value(&mr)?;
    }
    Ok(Outcome {
        text,
        json: envelope("verify", field, &l.name, json!({ "jmax": jmax, "maxdeg": maxdeg }), result),
        csv: csv_table(&["check", "passed"], csv_rows)?,
        failures,
    })
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

fn ext_gens<F: Field>(field: &F, s: &Source, b: &Bounds, mode: ExecMode) -> Result<Outcome> {
    let l = load(field, s)?;
    let r = resolve_bounds(&l, b)?;
    let alg = algebra(&l, r.maxdeg, mode)?;
    let opts = ResolutionOptions {
        mode,
        keep_solvers: true,
    };
    let res = minimal_resolution(&alg, r.imax, r.jmax, opts)?;
    let prof = generation_profile(&res, mode)?;
    let mut text = format!("Ext algebra of {} over {}\n", l.name, field.spec());
    text.push_str(&format!("{:>3} {:>3} {:>6} {:>6} {:>4}\n", "i", "j", "b(i,j)", "decomp", "new"));
    for c in &prof.cells {
        text.push_str(&format!(
            "{:>3} {:>3} {:>6} {:>6} {:>4}\n",
            c.i, c.j, c.betti, c.decomposable, c.new
        ));
    }
    text.push_str(&prof.summary());
    text.push('\n');
    let diag: Vec<String> = prof.diagonal.iter().map(|(i, s, b)| format!("{i}:{s}/{b}")).collect();
    text.push_str(&format!("products of Ext^(1,1) on the diagonal (i:span/b(i,i)): {}\n", diag.join(" ")));
    let csv = csv_table(
        &["i", "j", "betti", "decomposable", "new"],
        prof.cells.iter().map(|c| {
            [
                c.i.to_string(),
                c.j.to_string(),
                c.betti.to_string(),
                c.decomposable.to_string(),
                c.new.to_string(),
            ]
        }),
    )?;
    Ok(Outcome {
        text,
        json: envelope("ext-gens", field, &l.name, serde_json::to_value(r)?, serde_json::to_value(&prof)?),
        csv,
        failures: Vec::new(),
    })
}

enum Job {
    B(BVariant),
    C(usize),
}

fn paper_check<F: Field>(
    field: &F,
    ms: &[usize],
    b: BVariant,
    jmax: Option<u32>,
    mode: ExecMode,
) -> Result<Outcome> {
    if let Some(&m) = ms.iter().find(|&&m| m < 5) {
        bail!("paper-check needs m >= 5 (C(m) is not defined for m = {m})");
    }
    let opts = CheckOptions { mode, jmax };
    let mut jobs = vec![Job::B(b)];
    jobs.extend(ms.iter().map(|&m| Job::C(m)));
    let reports: Vec<ClaimReport> = mode
        .map(jobs, |j| match j {
            Job::B(v) => check_b(field, v, opts),
            Job::C(m) => check_c(field, m, opts),
        })
        .into_iter()
        .collect::<Result<_, _>>()?;
    let mut text = String::new();
    let mut failures = Vec::new();
    let mut rows = Vec::new();
    for r in &reports {
        text.push_str(&r.to_text());
        text.push('\n');
        for c in r.failures() {
            failures.push(format!("{}: {}", r.algebra, c.name));
        }
        for c in &r.claims {
            rows.push([
                r.algebra.clone(),
                c.name.clone(),
                c.required.to_string(),
                c.passed.to_string(),
                c.detail.clone(),
            ]);
        }
    }
    let total: usize = reports.iter().map(|r| r.claims.iter().filter(|c| c.required).count()).sum();
    text.push_str(&format!("{} of {total} required claims passed\n", total - failures.len()));
    Ok(Outcome {
        text,
        json: envelope(
            "paper-check",
            field,
            "",
            json!({ "m": ms, "jmax": jmax }),
            json!({ "passed": failures.is_empty(), "reports": reports }),
        ),
        csv: csv_table(&["algebra", "claim", "required", "passed", "detail"], rows)?,
        failures,
    })
}
