use std::path::Path;
use std::{fs, io};

use fsdet_core::bounds::{corollary4_table, thm1_bound, thm2_bound, thm3_bound, thm4_bound};
use fsdet_core::determinants::{
    determinant, functional_eval, h3_expand, triangle_terms, DeterminantKind, DeterminantSpec, Functional,
};
use fsdet_core::proofcheck::{verify_claims, Theorem, DEFAULT_GRID};
use fsdet_core::search::{search, sharpness_sweep, Backend, Objective, SearchConfig, SearchResult};
use fsdet_core::series::{read_coeff_csv, write_coeff_csv};
use fsdet_core::starlike::{catalog, starlike_spot_check, CatalogEntry, StarlikeCoeffs};
use fsdet_core::suites::{identity_suite, lemma_suite, SuiteReport, DEFAULT_IDENTITY_SAMPLES, DEFAULT_LEMMA_SAMPLES};
use serde_json::{json, Value};

use crate::cli::{
    BackendArg, BoundArgs, CoeffsArgs, EvalArgs, SearchArgs, SearchTuning, SuiteArg, SweepArgs, TableName, TheoremArg,
    VerifyArgs,
};
use crate::config::FileConfig;
use crate::report::Report;
use crate::CliError;

/// A rendered report plus whether a verification check failed.
pub struct Outcome {
    pub report: Report,
    pub violation: bool,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Self { report, violation: false }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn bound(args: &BoundArgs, seed: u64) -> Result<Outcome, CliError> {
    let mut r = Report::new("bound", seed);
    let name = format!("{:?}", args.theorem).to_lowercase();
    r.param("theorem", &name).param("params", &args.params);
    let groups: Vec<&[f64]> = match args.theorem {
        TheoremArg::T4 => {
            if !args.params.len().is_multiple_of(3) {
                return Err(usage("t4 takes lambda triples: l1,l2,l3[,l1,l2,l3...]"));
            }
            args.params.chunks(3).collect()
        }
        _ => args.params.chunks(1).collect(),
    };
    for p in groups {
        let b = match args.theorem {
            TheoremArg::T1 => thm1_bound(p[0])?,
            TheoremArg::T2 => thm2_bound(p[0])?,
            TheoremArg::T3 => thm3_bound(p[0])?,
            TheoremArg::T4 => thm4_bound(p[0], p[1], p[2])?,
        };
        r.push(json!({
            "theorem": name,
            "params": p,
            "value": b.value,
            "branch": b.branch,
            "alt_value": b.alt_value,
            "consistent": b.consistent,
        }));
    }
    Ok(r.into())
}

fn load_function(name: &str, order: usize) -> Result<(StarlikeCoeffs, Value), CliError> {
    match name.parse::<CatalogEntry>() {
        Ok(entry) => {
            let f = catalog(&entry, order)?;
            let check = starlike_spot_check(&entry)?;
            Ok((f, serde_json::to_value(check).expect("serializable")))
        }
        Err(catalog_err) => {
            let path = Path::new(name);
            if !path.is_file() {
                return Err(usage(format!(
                    "{catalog_err}; expected one of {} or a coefficient CSV file",
                    CatalogEntry::names().join(", ")
                )));
            }
            let file = fs::File::open(path).map_err(|e| usage(format!("cannot open {name}: {e}")))?;
            let series = read_coeff_csv(file)?;
            Ok((StarlikeCoeffs::from_taylor(&series, name)?, Value::Null))
        }
    }
}

fn determinant_spec(kind: DeterminantKind, p: &[f64]) -> Result<DeterminantSpec, CliError> {
    let index = |x: f64, what: &str| {
        if x.fract() == 0.0 && x >= 1.0 {
            Ok(x as usize)
        } else {
            Err(usage(format!("{what} must be a positive integer, got {x}")))
        }
    };
    if p.len() < 2 {
        return Err(usage("hankel/bdet take n,q,lambda_1..lambda_q"));
    }
    Ok(DeterminantSpec::new(kind, index(p[0], "n")?, index(p[1], "q")?, p[2..].to_vec())?)
}

fn exactly<const N: usize>(name: &str, p: &[f64]) -> Result<[f64; N], CliError> {
    p.try_into().map_err(|_| usage(format!("{name} takes {N} parameter(s), got {}", p.len())))
}

pub fn eval(args: &EvalArgs, seed: u64) -> Result<Outcome, CliError> {
    let p = &args.params;
    let (needed, which) = match args.functional.as_str() {
        "fekete_szego" => (3, Some(Functional::FeketeSzego(exactly::<1>("fekete_szego", p)?[0]))),
        "h2_2" => (4, Some(Functional::H2_2(exactly::<1>("h2_2", p)?[0]))),
        "b2_1" => (4, Some(Functional::B2_1(exactly::<1>("b2_1", p)?[0]))),
        "h3" | "triangle" => {
            exactly::<3>(&args.functional, p)?;
            (5, None)
        }
        "hankel" => (determinant_spec(DeterminantKind::H, p)?.max_index(), None),
        "bdet" => (determinant_spec(DeterminantKind::B, p)?.max_index(), None),
        other => {
            return Err(usage(format!(
                "unknown functional `{other}`; expected fekete_szego, h2_2, b2_1, h3, triangle, hankel or bdet"
            )))
        }
    };
    let (f, check) = load_function(&args.function, needed.max(5))?;

    let mut r = Report::new("eval", seed);
    r.param("function", &args.function).param("functional", &args.functional).param("params", p);
    let mut row = json!({
        "function": args.function,
        "provenance": f.provenance,
        "suspect": f.suspect,
        "functional": args.functional,
        "params": p,
    });
    let value = match (args.functional.as_str(), which) {
        (_, Some(w)) => functional_eval(&f, w)?,
        ("h3", _) => h3_expand(&f, p[0], p[1], p[2])?,
        ("triangle", _) => {
            let t = triangle_terms(&f, p[0], p[1], p[2])?;
            row["terms"] = serde_json::to_value(t).expect("serializable");
            row["rhs"] = json!(t.total());
            h3_expand(&f, p[0], p[1], p[2])?
        }
        ("hankel", _) => determinant(&f, &determinant_spec(DeterminantKind::H, p)?)?,
        _ => determinant(&f, &determinant_spec(DeterminantKind::B, p)?)?,
    };
    row["re"] = json!(value.re);
    row["im"] = json!(value.im);
    row["abs"] = json!(value.norm());
    if !check.is_null() {
        row["starlike_check"] = check;
    }
    r.push(row);
    Ok(r.into())
}

fn search_config(t: &SearchTuning, file: &FileConfig, seed: u64) -> Result<SearchConfig, CliError> {
    let d = SearchConfig::with_seed(seed);
    let cfg = SearchConfig {
        atoms: t.atoms.or(file.get("atoms")?).unwrap_or(d.atoms),
        restarts: t.restarts.or(file.get("restarts")?).unwrap_or(d.restarts),
        max_iters: t.max_iters.or(file.get("max_iters")?).unwrap_or(d.max_iters),
        tol: t.tol.or(file.get("tol")?).unwrap_or(d.tol),
        lemma3_grid: t.lemma3_grid.or(file.get("lemma3_grid")?).unwrap_or(d.lemma3_grid),
        seed,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn describe_config(r: &mut Report, cfg: &SearchConfig) {
    r.param("atoms", cfg.atoms)
        .param("restarts", cfg.restarts)
        .param("max_iters", cfg.max_iters)
        .param("tol", cfg.tol)
        .param("lemma3_grid", cfg.lemma3_grid);
}

fn search_row(s: &SearchResult) -> Value {
    let mut v = serde_json::to_value(s).expect("serializable");
    v["attained"] = json!(s.attained());
    v["exceeds_alt_bound"] = json!(s.exceeds_alt_bound());
    v
}

pub fn run_search(args: &SearchArgs, file: &FileConfig, seed: u64) -> Result<Outcome, CliError> {
    let objective = Objective::parse(&args.functional, &args.params)?;
    let cfg = search_config(&args.tuning, file, seed)?;
    let backend = match args.backend {
        BackendArg::Atoms => Backend::Atoms,
        BackendArg::Lemma3 => Backend::Lemma3,
    };
    let result = search(&objective, backend, &cfg)?;
    let mut r = Report::new("search", seed);
    r.param("functional", objective.name()).param("params", &args.params).param("backend", backend.to_string());
    describe_config(&mut r, &cfg);
    r.push(search_row(&result));
    Ok(r.into())
}

/// Parses an inclusive `a:b:step` range.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<f64> = spec
        .split(':')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| usage(format!("grid `{spec}`: expected a:b:step with numbers")))?;
    let [a, b, step] = parts[..] else {
        return Err(usage(format!("grid `{spec}`: expected a:b:step")));
    };
    if !(a.is_finite() && b.is_finite() && step.is_finite() && step > 0.0 && b >= a) {
        return Err(usage(format!("grid `{spec}`: need finite a <= b and step > 0")));
    }
    let n = ((b - a) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| a + i as f64 * step).collect())
}

pub fn sweep(args: &SweepArgs, file: &FileConfig, seed: u64) -> Result<Outcome, CliError> {
    let values = match (&args.grid, &args.params) {
        (Some(g), _) => parse_grid(g)?,
        (None, Some(p)) => p.clone(),
        (None, None) => return Err(usage("sweep needs --grid or --params")),
    };
    let width = if args.functional == "h3" { 3 } else { 1 };
    if values.is_empty() || !values.len().is_multiple_of(width) {
        return Err(usage(format!("{} takes groups of {width} parameter(s)", args.functional)));
    }
    let objectives =
        values.chunks(width).map(|p| Objective::parse(&args.functional, p)).collect::<Result<Vec<_>, _>>()?;
    let cfg = search_config(&args.tuning, file, seed)?;
    let report = sharpness_sweep(&objectives, &cfg)?;

    let mut r = Report::new("sweep", seed);
    r.param("functional", &args.functional);
    match &args.grid {
        Some(g) => r.param("grid", g),
        None => r.param("params", &values),
    };
    describe_config(&mut r, &cfg);
    for e in &report.entries {
        let exceeds = e.bound.alt_value.is_some_and(|alt| e.value > alt + 1e-9);
        r.push(json!({
            "params": e.params,
            "value": e.value,
            "bound": e.bound,
            "gap": e.gap,
            "status": e.status,
            "exceeds_alt_bound": exceeds,
            "atoms": { "m": cfg.atoms, "value": e.atoms.value, "witness": e.atoms.witness },
            "lemma3": e.lemma3.as_ref().map(|l| json!({ "value": l.value, "witness": l.witness })),
        }));
    }
    Ok(r.into())
}

pub fn table(name: TableName, seed: u64) -> Result<Outcome, CliError> {
    let mut r = Report::new("table", seed);
    match name {
        TableName::Corollary4 => {
            r.param("name", "corollary4");
            for row in corollary4_table() {
                r.push(row);
            }
        }
    }
    Ok(r.into())
}

fn suite_rows(r: &mut Report, s: &SuiteReport) {
    for c in &s.checks {
        r.push(json!({
            "suite": s.suite,
            "check": c.label,
            "n": c.samples,
            "violations": c.violations,
            "max_deviation": c.max_excess,
            "tolerance": c.tolerance,
            "pass": c.pass,
            "location": Value::Null,
        }));
    }
}

pub fn verify(args: &VerifyArgs, file: &FileConfig, seed: u64) -> Result<Outcome, CliError> {
    let samples: Option<usize> = args.samples.or(file.get("samples")?);
    let grid = args.grid.unwrap_or(DEFAULT_GRID);
    let want = |s: SuiteArg| args.suite == s || args.suite == SuiteArg::All;
    let mut r = Report::new("verify", seed);
    r.param("suite", format!("{:?}", args.suite).to_lowercase());
    let mut ok = true;
    if want(SuiteArg::Lemmas) {
        let n = samples.unwrap_or(DEFAULT_LEMMA_SAMPLES);
        r.param("lemma_samples", n);
        let s = lemma_suite(seed, n)?;
        ok &= s.passed();
        suite_rows(&mut r, &s);
    }
    if want(SuiteArg::Identities) {
        let n = samples.unwrap_or(DEFAULT_IDENTITY_SAMPLES);
        r.param("identity_samples", n);
        let s = identity_suite(seed, n)?;
        ok &= s.passed();
        suite_rows(&mut r, &s);
    }
    if want(SuiteArg::Proofs) {
        r.param("grid", grid);
        for (theorem, tag) in [(Theorem::T2, "proofs:t2"), (Theorem::T3, "proofs:t3")] {
            let rep = verify_claims(theorem, grid)?;
            ok &= rep.passed();
            for c in &rep.claims {
                r.push(json!({
                    "suite": tag,
                    "check": c.label,
                    "n": c.grid,
                    "violations": usize::from(!c.pass),
                    "max_deviation": c.max_deviation,
                    "tolerance": c.tolerance,
                    "pass": c.pass,
                    "location": c.location,
                }));
            }
        }
    }
    Ok(Outcome { report: r, violation: !ok })
}

/// Coefficient listing; CSV output uses the `k,re,im` interchange format.
pub fn coeffs(args: &CoeffsArgs, seed: u64, csv: bool, out: &mut dyn io::Write) -> Result<Option<Outcome>, CliError> {
    if args.order == 0 {
        return Err(usage("order must be at least 1"));
    }
    let (f, _) = load_function(&args.function, args.order)?;
    let series = f.to_taylor();
    if csv {
        write_coeff_csv(&series, out)?;
        return Ok(None);
    }
    let mut r = Report::new("coeffs", seed);
    r.param("function", &args.function)
        .param("order", args.order)
        .param("provenance", &f.provenance)
        .param("suspect", f.suspect);
    for (k, c) in series.coeffs().iter().enumerate() {
        r.push(json!({ "k": k, "re": c.re, "im": c.im }));
    }
    Ok(Some(r.into()))
}
