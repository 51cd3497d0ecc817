//! `analyze`: claim reports over files produced by this tool.

use crate::csvio::CsvTable;
use crate::manifest::{load_with_provenance, ManifestCore, RunManifest};
use crate::{CliError, CommonOpts};
use blockent_core::analysis::{
    block_majorization_scan, central_charge, entropy_property_suite, fit_log_scaling, ghz_curve,
    majorizes, saturation, CurveSource, EntropyCurve, MajorizationVerdict, SaturationStatus,
    SpectrumDistribution,
};
use blockent_core::spectrum::{classify, CriticalClass};
use blockent_core::xy::{rho_top_spectrum, xy_modes_at, CorrelationKernel, KernelChoice, XyParams};
use clap::Args;
use serde::Serialize;
use std::path::PathBuf;

#[derive(Args, Debug, Clone)]
pub struct AnalyzeArgs {
    /// Fit S_L = k log2 L + a and estimate the central charge.
    #[arg(long)]
    pub fit: bool,
    /// Detect entropy saturation by successive doublings.
    #[arg(long)]
    pub saturation: bool,
    /// Two-spin-step block majorization scan (recomputes spectra from the
    /// input's parameters).
    #[arg(long)]
    pub majorization: bool,
    /// Renormalization-ordering check between one critical and one massive
    /// input at a fixed block size.
    #[arg(long)]
    pub rg_check: bool,
    /// Monotonicity, concavity, symmetry and bound checks.
    #[arg(long)]
    pub properties: bool,

    /// Input files produced by this tool.
    #[arg(value_name = "INPUT")]
    pub inputs: Vec<PathBuf>,
    /// Output report path (JSON).
    #[arg(long)]
    pub out: PathBuf,

    /// Smallest block size included in fits.
    #[arg(long, default_value_t = 20)]
    pub l_min: usize,
    /// Slope tolerance for fits (defaults: 1e-3 for XY inputs, 0.06 for
    /// finite-ring XXZ inputs).
    #[arg(long)]
    pub slope_tol: Option<f64>,
    /// Saturation tolerance in bits per doubling.
    #[arg(long, default_value_t = 1e-4)]
    pub sat_tol: f64,
    /// Majorization scan range (two-spin steps from scan-min).
    #[arg(long, default_value_t = 4)]
    pub scan_min: usize,
    #[arg(long, default_value_t = 20)]
    pub scan_max: usize,
    /// Number of exact top eigenvalues per block spectrum.
    #[arg(long, default_value_t = 64)]
    pub k: usize,
    /// Decidability slack for truncated majorization comparisons.
    #[arg(long, default_value_t = 1e-3)]
    pub majorization_tol: f64,
    /// Block size for the rg-check comparison.
    #[arg(long, default_value_t = 50)]
    pub at_l: usize,
    /// Include the N-spin GHZ reference curve in a --properties run.
    #[arg(long)]
    pub ghz: Option<usize>,

    #[command(flatten)]
    pub common: CommonOpts,
}

#[derive(Serialize)]
struct Claim {
    claim: String,
    input: String,
    measured: serde_json::Value,
    expected: serde_json::Value,
    expected_source: String,
    tolerance: serde_json::Value,
    verdict: &'static str,
}

#[derive(Serialize)]
struct Report {
    tool: String,
    version: String,
    mode: String,
    manifest_checksum: String,
    claims: Vec<Claim>,
    overall: &'static str,
}

/// A loaded input: parsed table plus the source parameters recovered from
/// its manifest.
struct Input {
    path: String,
    table: CsvTable,
    manifest: RunManifest,
    source: CurveSource,
}

fn parse_param<T: std::str::FromStr>(m: &RunManifest, key: &str) -> Result<T, CliError> {
    m.core
        .parameters
        .get(key)
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| CliError::Usage(format!("manifest lacks usable parameter {key}")))
}

fn load_input(path: &PathBuf) -> Result<Input, CliError> {
    let (content, manifest) = load_with_provenance(path)?;
    let table = CsvTable::parse(&content)?;
    let source = match manifest.core.subcommand.as_str() {
        "xy-entropy" => CurveSource::Xy {
            gamma: parse_param(&manifest, "gamma")?,
            lambda: parse_param(&manifest, "lambda")?,
        },
        "xxz-entropy" => CurveSource::Xxz {
            delta: parse_param(&manifest, "delta")?,
            lambda: parse_param(&manifest, "lambda")?,
            n: parse_param(&manifest, "n")?,
        },
        other => {
            return Err(CliError::Usage(format!(
                "{}: subcommand {other} does not produce analyzable curves",
                path.display()
            )))
        }
    };
    Ok(Input { path: path.display().to_string(), table, manifest, source })
}

fn curve_of(input: &Input) -> Result<EntropyCurve, CliError> {
    let ls = input.table.usize_column("L")?;
    let ss = input.table.f64_column("S_L")?;
    EntropyCurve::new(ls.into_iter().zip(ss).collect(), input.source.clone()).map_err(CliError::from)
}

fn xy_class(source: &CurveSource) -> Option<CriticalClass> {
    match source {
        CurveSource::Xy { gamma, lambda } => XyParams::new(*gamma, *lambda).ok().map(|p| classify(&p)),
        _ => None,
    }
}

fn json_f(x: f64) -> serde_json::Value {
    serde_json::json!(x)
}

pub fn run(args: &AnalyzeArgs) -> Result<(), CliError> {
    crate::init_pool(args.common.jobs);
    let modes = [args.fit, args.saturation, args.majorization, args.rg_check, args.properties];
    if modes.iter().filter(|&&m| m).count() != 1 {
        return Err(CliError::Usage(
            "select exactly one of --fit, --saturation, --majorization, --rg-check, --properties".into(),
        ));
    }
    if args.inputs.is_empty() && args.ghz.is_none() {
        return Err(CliError::Usage("no input files given".into()));
    }
    let mode = if args.fit {
        "fit"
    } else if args.saturation {
        "saturation"
    } else if args.majorization {
        "majorization"
    } else if args.rg_check {
        "rg-check"
    } else {
        "properties"
    };

    let inputs: Vec<Input> = args.inputs.iter().map(load_input).collect::<Result<_, _>>()?;

    let mut claims = Vec::new();
    match mode {
        "fit" => {
            for input in &inputs {
                claims.extend(fit_claims(args, input)?);
            }
        }
        "saturation" => {
            for input in &inputs {
                claims.push(saturation_claim(args, input)?);
            }
        }
        "majorization" => {
            for input in &inputs {
                claims.extend(majorization_claims(args, input)?);
            }
        }
        "rg-check" => {
            claims.push(rg_claim(args, &inputs)?);
        }
        "properties" => {
            for input in &inputs {
                claims.extend(property_claims(input)?);
            }
            if let Some(n) = args.ghz {
                claims.extend(ghz_claims(n)?);
            }
        }
        _ => unreachable!(),
    }

    let overall = if claims.iter().any(|c| c.verdict == "fail") { "fail" } else { "pass" };
    let mut core = ManifestCore::new("analyze").param("mode", mode);
    for input in &inputs {
        core = core.param(&format!("input:{}", input.path), &input.manifest.manifest_checksum);
    }
    let report = Report {
        tool: "blockent".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        mode: mode.into(),
        manifest_checksum: core.checksum(),
        claims,
        overall,
    };
    std::fs::write(&args.out, serde_json::to_string_pretty(&report).expect("report serializes"))?;
    if overall == "fail" {
        return Err(CliError::Claim(format!(
            "{mode} report contains failing claims (see {})",
            args.out.display()
        )));
    }
    Ok(())
}

fn fit_claims(args: &AnalyzeArgs, input: &Input) -> Result<Vec<Claim>, CliError> {
    let curve = curve_of(input)?;
    let fit = fit_log_scaling(&curve, args.l_min)?;
    let (expected_k, source_tag, default_tol): (Option<f64>, &str, f64) = match &input.source {
        CurveSource::Xy { .. } => match xy_class(&input.source) {
            Some(CriticalClass::CriticalXx { .. }) => (Some(1.0 / 3.0), "free-boson scaling", 1e-3),
            Some(CriticalClass::CriticalIsing { .. }) => (Some(1.0 / 6.0), "free-fermion scaling", 1e-3),
            _ => (None, "no closed-form slope for this region", 1e-3),
        },
        CurveSource::Xxz { delta, .. } => {
            if delta.abs() <= 1.0 {
                // finite-size window: the asymptotic 1/3 is approached loosely
                (Some(1.0 / 3.0), "free-boson scaling (finite-size window)", 0.06)
            } else {
                (None, "gapped ring", 0.06)
            }
        }
        CurveSource::Synthetic(_) => (None, "synthetic", 1e-3),
    };
    let tol = args.slope_tol.unwrap_or(default_tol);
    let mut claims = Vec::new();
    let verdict = match expected_k {
        Some(k) if (fit.k - k).abs() <= tol => "pass",
        Some(_) => "fail",
        None => "undecidable",
    };
    claims.push(Claim {
        claim: format!("log2 slope of S_L over L >= {}", args.l_min),
        input: input.path.clone(),
        measured: json_f(fit.k),
        expected: expected_k.map(json_f).unwrap_or(serde_json::Value::Null),
        expected_source: source_tag.into(),
        tolerance: json_f(tol),
        verdict,
    });
    claims.push(Claim {
        claim: "central charge c = 3k".into(),
        input: input.path.clone(),
        measured: json_f(central_charge(&fit)),
        expected: expected_k.map(|k| json_f(3.0 * k)).unwrap_or(serde_json::Value::Null),
        expected_source: source_tag.into(),
        tolerance: json_f(3.0 * tol),
        verdict,
    });
    claims.push(Claim {
        claim: "fit intercept a (reported, not asserted)".into(),
        input: input.path.clone(),
        measured: json_f(fit.a),
        expected: serde_json::Value::Null,
        expected_source: "reported only".into(),
        tolerance: serde_json::Value::Null,
        verdict: "undecidable",
    });
    Ok(claims)
}

fn saturation_claim(args: &AnalyzeArgs, input: &Input) -> Result<Claim, CliError> {
    let curve = curve_of(input)?;
    let result = saturation(&curve, args.sat_tol);
    let measured = match result.status {
        SaturationStatus::Saturated => serde_json::json!({
            "status": "saturated",
            "s_star": result.s_star,
            "l_sat": result.l_sat,
        }),
        SaturationStatus::NotSaturated => serde_json::json!({
            "status": "not-saturated",
            "last_doubling_change": result.last_doubling_change,
        }),
        SaturationStatus::Inconclusive => serde_json::json!({"status": "inconclusive"}),
    };
    let (expected, source_tag, verdict): (serde_json::Value, &str, &'static str) =
        match xy_class(&input.source) {
            Some(c) if c.is_critical() => (
                serde_json::json!("not-saturated"),
                "gapless chains grow without bound",
                if result.status == SaturationStatus::NotSaturated { "pass" } else { "fail" },
            ),
            Some(_) => (
                serde_json::json!("saturated"),
                "gapped chains saturate at the correlation length",
                if result.status == SaturationStatus::Saturated { "pass" } else { "fail" },
            ),
            None => (serde_json::Value::Null, "finite ring: reported only", "undecidable"),
        };
    Ok(Claim {
        claim: format!("saturation by doublings at tol {}", args.sat_tol),
        input: input.path.clone(),
        measured,
        expected,
        expected_source: source_tag.into(),
        tolerance: json_f(args.sat_tol),
        verdict,
    })
}

/// Exact top-K block spectra recomputed from the input's XY parameters.
fn xy_spectra(
    args: &AnalyzeArgs,
    source: &CurveSource,
    ls: &[usize],
) -> Result<Vec<(usize, SpectrumDistribution)>, CliError> {
    let CurveSource::Xy { gamma, lambda } = source else {
        return Err(CliError::Usage("majorization scans need an xy-entropy input".into()));
    };
    let params = XyParams::new(*gamma, *lambda)?;
    let l_max = ls.iter().copied().max().unwrap_or(1);
    let kernel = CorrelationKernel::build(&params, l_max, KernelChoice::Auto, 1e-10)?;
    let mut out = Vec::with_capacity(ls.len());
    for &l in ls {
        let modes = xy_modes_at(&kernel, l)?;
        let k = if l >= 22 { args.k } else { args.k.min(1 << l) };
        let spec = rho_top_spectrum(&modes, k)?;
        out.push((l, SpectrumDistribution::new(spec.top_eigenvalues)?));
    }
    Ok(out)
}

fn verdict_str(v: MajorizationVerdict) -> &'static str {
    match v {
        MajorizationVerdict::Yes => "yes",
        MajorizationVerdict::No => "no",
        MajorizationVerdict::UndecidableAtTruncation => "undecidable-at-truncation",
    }
}

fn majorization_claims(args: &AnalyzeArgs, input: &Input) -> Result<Vec<Claim>, CliError> {
    if args.scan_max < args.scan_min + 2 {
        return Err(CliError::Usage("scan-max must be at least scan-min + 2".into()));
    }
    let ls: Vec<usize> = (args.scan_min..=args.scan_max + 2).collect();
    let spectra = xy_spectra(args, &input.source, &ls)?;
    let entries = block_majorization_scan(&spectra, args.majorization_tol);
    let expect_yes = xy_class(&input.source).map(|c| c.is_critical()).unwrap_or(false);
    let mut claims = Vec::new();
    for entry in entries.iter().filter(|e| (e.l - args.scan_min) % 2 == 0) {
        let measured = serde_json::json!({
            "two_step": verdict_str(entry.two_step),
            "one_step": entry.one_step.map(verdict_str),
        });
        let verdict = if expect_yes {
            if entry.two_step == MajorizationVerdict::Yes { "pass" } else { "fail" }
        } else {
            "undecidable"
        };
        claims.push(Claim {
            claim: format!("rho_{{{}}} majorized by rho_{{{}}}", entry.l + 2, entry.l),
            input: input.path.clone(),
            measured,
            expected: if expect_yes { serde_json::json!("yes") } else { serde_json::Value::Null },
            expected_source: if expect_yes {
                "two-spin-step ordering at conformal points".into()
            } else {
                "no expectation off criticality".into()
            },
            tolerance: json_f(args.majorization_tol),
            verdict,
        });
    }
    Ok(claims)
}

fn rg_claim(args: &AnalyzeArgs, inputs: &[Input]) -> Result<Claim, CliError> {
    if inputs.len() != 2 {
        return Err(CliError::Usage("--rg-check takes exactly two inputs".into()));
    }
    let classes: Vec<bool> = inputs
        .iter()
        .map(|i| xy_class(&i.source).map(|c| c.is_critical()).unwrap_or(false))
        .collect();
    let (critical, massive) = match (classes[0], classes[1]) {
        (true, false) => (&inputs[0], &inputs[1]),
        (false, true) => (&inputs[1], &inputs[0]),
        _ => {
            return Err(CliError::Usage(
                "--rg-check needs exactly one critical and one massive xy input".into(),
            ))
        }
    };
    let ls = [args.at_l];
    let x = xy_spectra(args, &critical.source, &ls)?.remove(0).1;
    let y = xy_spectra(args, &massive.source, &ls)?.remove(0).1;
    let verdict = majorizes(&x, &y, args.majorization_tol);
    Ok(Claim {
        claim: format!("massless spectrum majorized by massive spectrum at L = {}", args.at_l),
        input: format!("{} vs {}", critical.path, massive.path),
        measured: serde_json::json!(verdict_str(verdict)),
        expected: serde_json::json!("yes"),
        expected_source: "entanglement loss along the mass flow".into(),
        tolerance: json_f(args.majorization_tol),
        verdict: if verdict == MajorizationVerdict::Yes { "pass" } else { "fail" },
    })
}

fn property_claims_for(curve: &EntropyCurve, label: &str, ring: Option<usize>) -> Vec<Claim> {
    let report = entropy_property_suite(curve, ring, 1e-9);
    let mut claims = Vec::new();
    let mut push = |name: &str, pass: bool, worst: f64| {
        claims.push(Claim {
            claim: name.to_string(),
            input: label.to_string(),
            measured: serde_json::json!({"worst_violation": worst}),
            expected: serde_json::json!("holds"),
            expected_source: "entropy inequalities".into(),
            tolerance: json_f(1e-9),
            verdict: if pass { "pass" } else { "fail" },
        });
    };
    push("monotonicity up to the half chain", report.monotone.pass, report.monotone.worst_violation);
    push("concavity S_{L+M} + S_{L-M} <= 2 S_L", report.concave.pass, report.concave.worst_violation);
    if let Some(sym) = report.symmetric {
        push("complement symmetry S_L = S_{N-L}", sym.pass, sym.worst_violation);
    }
    push("linear bound S_L <= min(L, N-L)", report.bound.pass, report.bound.worst_violation);
    claims
}

fn property_claims(input: &Input) -> Result<Vec<Claim>, CliError> {
    let curve = curve_of(input)?;
    let ring = match input.source {
        CurveSource::Xxz { n, .. } => Some(n),
        _ => None,
    };
    let mut claims = property_claims_for(&curve, &input.path, ring);
    // the effective-rank columns must be monotone in epsilon
    if input.table.column_index("chi_1e-2").is_ok() {
        let c2 = input.table.usize_column("chi_1e-2")?;
        let c4 = input.table.usize_column("chi_1e-4")?;
        let c6 = input.table.usize_column("chi_1e-6")?;
        let ok = c2
            .iter()
            .zip(&c4)
            .zip(&c6)
            .all(|((a, b), c)| a <= b && b <= c);
        claims.push(Claim {
            claim: "effective rank is monotone in the truncation accuracy".into(),
            input: input.path.clone(),
            measured: serde_json::json!(ok),
            expected: serde_json::json!(true),
            expected_source: "definition of the effective rank".into(),
            tolerance: serde_json::Value::Null,
            verdict: if ok { "pass" } else { "fail" },
        });
    }
    Ok(claims)
}

fn ghz_claims(n: usize) -> Result<Vec<Claim>, CliError> {
    if n < 2 {
        return Err(CliError::Usage("GHZ reference needs at least 2 spins".into()));
    }
    let curve = ghz_curve(n)?;
    let mut claims = property_claims_for(&curve, &format!("ghz-{n}"), Some(n));
    let flat = curve.points().iter().all(|&(_, s)| s == 1.0);
    claims.push(Claim {
        claim: "GHZ block entropies all equal one".into(),
        input: format!("ghz-{n}"),
        measured: serde_json::json!(flat),
        expected: serde_json::json!(true),
        expected_source: "two-term Schmidt decomposition".into(),
        tolerance: serde_json::Value::Null,
        verdict: if flat { "pass" } else { "fail" },
    });
    Ok(claims)
}
