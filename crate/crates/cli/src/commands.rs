use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context};
use nfapprox::approx::{liouville_certificate, scan, Approximant, Extremum, ScanOptions};
use nfapprox::embed::decimal::{format_bound, format_interval};
use nfapprox::files::{AlphaSpec, CertificateFile, CircleSpec, FieldSpec, FormSpec, VectorFile, VectorSpec};
use nfapprox::flow::profile;
use nfapprox::forms::{Certificate, Form, Status};
use nfapprox::invariants;
use nfapprox::{isolate_roots, CMStructure, EmbeddingSet, Error, Interval, NumberField, Settings};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::{self, RunConfig};

const SIG: u32 = 15;

pub const CERTIFIED: u8 = 0;
pub const REFUTED: u8 = 1;
pub const UNKNOWN: u8 = 2;
pub const USAGE: u8 = 3;

pub fn error_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::PrecisionExhausted { .. }) => UNKNOWN,
        Some(Error::NotAnisotropic(s) | Error::NormObstructionMissing(s)) => {
            if s == "unknown" {
                UNKNOWN
            } else {
                REFUTED
            }
        }
        Some(
            Error::DegenerateForm
            | Error::NotTotallyIndefinite { .. }
            | Error::LineNotCircle
            | Error::NotTotallyPositive { .. }
            | Error::NotAZero { .. }
            | Error::FactorZero
            | Error::NotCM(_)
            | Error::ReducibleDetected(_),
        ) => REFUTED,
        _ => USAGE,
    }
}

pub fn run(command: &str, cfg: &RunConfig) -> anyhow::Result<u8> {
    let hash = cfg.hash(command)?;
    match command {
        "field-info" => field_info(&Ctx::new(cfg, hash)?),
        "form-check" => form_check(&Ctx::new(cfg, hash)?),
        "construct" => construct(&Ctx::new(cfg, hash)?),
        "scan" => cmd_scan(&Ctx::new(cfg, hash)?),
        "certify" => certify(&Ctx::new(cfg, hash)?),
        "flow" => flow(&Ctx::new(cfg, hash)?),
        "selftest" => selftest(cfg, hash),
        _ => bail!("unknown command {command}"),
    }
}

struct Ctx<'a> {
    cfg: &'a RunConfig,
    hash: String,
    settings: Settings,
    field: NumberField,
    cm: Option<CMStructure>,
    e: EmbeddingSet,
    form: Option<Form>,
}

impl<'a> Ctx<'a> {
    fn new(cfg: &'a RunConfig, hash: String) -> anyhow::Result<Ctx<'a>> {
        let settings = cfg.settings();
        let path = cfg.field.as_ref().ok_or_else(|| anyhow!("--field is required"))?;
        let spec: FieldSpec = config::load(path)?;
        let field = spec.field().with_context(|| format!("field from {}", path.display()))?;
        let cm = spec.cm(&field, &settings)?;
        let e = isolate_roots(&field, settings.prec).context("isolating roots")?;
        let form = match &cfg.form {
            Some(p) => {
                let fs: FormSpec = config::load(p)?;
                Some(fs.form(&field, cm.as_ref()).with_context(|| format!("form from {}", p.display()))?)
            }
            None => None,
        };
        Ok(Ctx { cfg, hash, settings, field, cm, e, form })
    }

    fn form(&self) -> anyhow::Result<&Form> {
        self.form.as_ref().ok_or_else(|| anyhow!("--form is required"))
    }

    fn vector_spec(&self) -> anyhow::Result<(VectorSpec, Option<VectorFile>)> {
        let c = self.cfg;
        if let Some(p) = &c.vector {
            let vf: VectorFile = config::load(p)?;
            return Ok((vf.spec.clone(), Some(vf)));
        }
        let spec = if let Some(pt) = &c.point {
            VectorSpec::FieldPoint { element: pt.clone() }
        } else if let Some(alphas) = &c.alphas {
            VectorSpec::Corollary {
                f: c.f.clone().unwrap_or_else(|| vec!["0".into()]),
                e: c.e.clone().ok_or_else(|| anyhow!("--e is required with --alphas"))?,
                alphas: alphas.iter().map(|a| AlphaSpec::rational(a)).collect(),
                signs: c.alpha_signs.clone().unwrap_or_else(|| "+".repeat(alphas.len())),
            }
        } else if let Some(angles) = &c.angles {
            VectorSpec::HermCircle { params: angles.iter().map(|&angle| CircleSpec::Angle { angle }).collect() }
        } else if let Some(signs) = &c.signs {
            VectorSpec::QuadZero { signs: signs.clone() }
        } else {
            bail!("no target vector: give --vector, --signs, --alphas, --angles or --point");
        };
        Ok((spec, None))
    }

    fn vector(&self) -> anyhow::Result<(VectorSpec, nfapprox::vectors::TargetVector)> {
        let (spec, stored) = self.vector_spec()?;
        let z = spec
            .build(self.form.as_ref(), self.cm.as_ref(), &self.e, &self.settings)
            .context("building the target vector")?;
        if let Some(vf) = stored.filter(|vf| !vf.components.is_empty()) {
            let old = vf.enclosures(self.field.signature().0)?;
            let agree = old.real_coords().len() == z.components.real_coords().len()
                && old.real_coords().iter().zip(&z.components.real_coords()).all(|(a, b)| a.overlaps(b));
            if !agree {
                return Err(Error::InvalidInput("stored enclosures disagree with the rebuilt vector".into()).into());
            }
        }
        Ok((spec, z))
    }

    fn emit<T: Serialize>(&self, value: &T) -> anyhow::Result<()> {
        match &self.cfg.out {
            Some(p) => write(p, &config::render(value, p)?),
            None => {
                say(&serde_json::to_string_pretty(value)?);
                Ok(())
            }
        }
    }
}

fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Print to stdout; a closed pipe is not an error.
fn say(text: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn iv(x: &Interval) -> String {
    format_interval(x, SIG)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldReport {
    pub command: String,
    pub config_hash: String,
    pub precision: u32,
    pub field: FieldSpec,
    pub degree: usize,
    pub signature: (usize, usize),
    pub discriminant: String,
    pub order: String,
    pub cm: bool,
    pub real_embeddings: Vec<String>,
    pub complex_embeddings: Vec<(String, String)>,
}

fn field_info(ctx: &Ctx) -> anyhow::Result<u8> {
    let f = &ctx.field;
    let report = FieldReport {
        command: "field-info".into(),
        config_hash: ctx.hash.clone(),
        precision: ctx.e.prec(),
        field: FieldSpec::from_field(f, ctx.cm.as_ref()),
        degree: f.degree(),
        signature: f.signature(),
        discriminant: f.discriminant().to_string(),
        order: f.order_name(),
        cm: ctx.cm.is_some(),
        real_embeddings: ctx.e.real_roots().iter().map(iv).collect(),
        complex_embeddings: ctx.e.complex_roots().iter().map(|c| (iv(&c.re), iv(&c.im))).collect(),
    };
    ctx.emit(&report)?;
    Ok(CERTIFIED)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FormReport {
    pub command: String,
    pub config_hash: String,
    pub precision: u32,
    pub form: FormSpec,
    pub discriminant: Vec<String>,
    pub totally_indefinite: bool,
    pub status: Status,
    pub certificate: Certificate,
    pub zero: Option<(Vec<String>, Vec<String>)>,
    pub certified: bool,
}

fn form_check(ctx: &Ctx) -> anyhow::Result<u8> {
    let j = ctx.form()?;
    let indefinite = j.is_totally_indefinite(&ctx.e, &ctx.settings)?;
    let v = j.anisotropy(&ctx.e, &ctx.settings)?;
    let certified = indefinite && v.status == Status::Anisotropic;
    let report = FormReport {
        command: "form-check".into(),
        config_hash: ctx.hash.clone(),
        precision: ctx.e.prec(),
        form: FormSpec::from_form(j),
        discriminant: j.discriminant().coord_strings(),
        totally_indefinite: indefinite,
        status: v.status,
        certificate: v.certificate.clone(),
        zero: v.zero.as_ref().map(|(x, y)| (x.coord_strings(), y.coord_strings())),
        certified,
    };
    ctx.emit(&report)?;
    Ok(match (indefinite, v.status) {
        (true, Status::Anisotropic) => CERTIFIED,
        (true, Status::Unknown) => UNKNOWN,
        _ => REFUTED,
    })
}

fn construct(ctx: &Ctx) -> anyhow::Result<u8> {
    let (spec, z) = ctx.vector()?;
    ctx.emit(&VectorFile::new(spec, &z, &ctx.hash))?;
    Ok(CERTIFIED)
}

fn certificate_form(ctx: &Ctx, z: &nfapprox::vectors::TargetVector) -> anyhow::Result<Form> {
    match (&ctx.form, z.provenance.form()) {
        (Some(j), _) => Ok(j.clone()),
        (None, Some(j)) => Ok(j),
        (None, None) => bail!("--form is required for this target vector"),
    }
}

fn certify(ctx: &Ctx) -> anyhow::Result<u8> {
    let (_, z) = ctx.vector()?;
    let j = certificate_form(ctx, &z)?;
    let c = liouville_certificate(&j, &z, &ctx.e, &ctx.settings)?;
    ctx.emit(&CertificateFile::new(&c, &ctx.hash))?;
    Ok(CERTIFIED)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremumReport {
    pub quality: String,
    pub q: Vec<i64>,
    pub p: Vec<i64>,
    pub witness_quality: String,
}

impl ExtremumReport {
    fn new(x: &Option<Extremum>) -> Option<ExtremumReport> {
        x.as_ref().map(|x| ExtremumReport {
            quality: iv(&x.quality),
            q: x.witness.q.clone(),
            p: x.witness.p.clone(),
            witness_quality: iv(&x.witness_quality),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountReport {
    pub threshold: f64,
    pub certain: usize,
    pub possible: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub command: String,
    pub config_hash: String,
    pub precision: u32,
    pub target: String,
    pub bound: f64,
    pub order: String,
    pub q_count: usize,
    pub pair_count: usize,
    pub min: Option<ExtremumReport>,
    pub tail: Option<ExtremumReport>,
    pub near_min: Option<ExtremumReport>,
    pub far_min: Option<ExtremumReport>,
    pub lower_bound: Option<String>,
    pub lower_bound_note: String,
    pub below: Vec<CountReport>,
    pub violations: Vec<(Vec<i64>, Vec<i64>)>,
    pub unresolved: usize,
}

fn approximant_cols(a: &Approximant) -> Vec<String> {
    a.q.iter().chain(&a.p).map(|v| v.to_string()).collect()
}

fn cmd_scan(ctx: &Ctx) -> anyhow::Result<u8> {
    let (_, z) = ctx.vector()?;
    let (lower_bound, note) = match certificate_form(ctx, &z) {
        Ok(j) => match liouville_certificate(&j, &z, &ctx.e, &ctx.settings) {
            Ok(c) => (Some(c.c_prime), c.regime.to_string()),
            Err(err) => (None, format!("no certificate: {err}")),
        },
        Err(_) => (None, "no form".to_string()),
    };
    let opts = ScanOptions {
        bound: ctx.cfg.bound.unwrap_or(100.0),
        thresholds: ctx.cfg.thresholds.clone().unwrap_or_default(),
        lower_bound,
    };
    if !(opts.bound >= 1.0 && opts.bound.is_finite()) {
        return Err(Error::InvalidInput("--bound must be a finite number >= 1".into()).into());
    }
    let report = scan(&z, &ctx.e, &opts);
    let summary = ScanSummary {
        command: "scan".into(),
        config_hash: ctx.hash.clone(),
        precision: report.prec,
        target: z.provenance.describe(),
        bound: report.bound,
        order: report.order.clone(),
        q_count: report.q_count,
        pair_count: report.pair_count,
        min: ExtremumReport::new(&report.min),
        tail: ExtremumReport::new(&report.tail),
        near_min: ExtremumReport::new(&report.near_min),
        far_min: ExtremumReport::new(&report.far_min),
        lower_bound: report.lower_bound.as_ref().map(iv),
        lower_bound_note: note,
        below: report
            .below
            .iter()
            .map(|b| CountReport { threshold: b.threshold, certain: b.certain, possible: b.possible })
            .collect(),
        violations: report.violations.iter().map(|a| (a.q.clone(), a.p.clone())).collect(),
        unresolved: report.unresolved,
    };
    if let Some(out) = &ctx.cfg.out {
        let d = ctx.field.degree();
        let mut buf =
            format!("# nfapprox scan config-hash={} precision={} bound={}\n", ctx.hash, report.prec, report.bound);
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header: Vec<String> = (0..d).map(|i| format!("q{i}")).chain((0..d).map(|i| format!("p{i}"))).collect();
        header.extend(["house", "quality_lo", "quality_hi", "regime"].map(String::from));
        w.write_record(&header)?;
        for row in &report.rows {
            let mut rec = approximant_cols(&row.approximant);
            rec.push(iv(&row.house));
            rec.push(format_bound(row.quality.lo(), SIG, false));
            rec.push(format_bound(row.quality.hi(), SIG, true));
            rec.push(if row.near { "near" } else { "far" }.to_string());
            w.write_record(&rec)?;
        }
        buf.push_str(std::str::from_utf8(&w.into_inner()?)?);
        write(out, &buf)?;
    }
    say(&serde_json::to_string_pretty(&summary)?);
    Ok(if summary.violations.is_empty() { CERTIFIED } else { REFUTED })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DipReport {
    pub t: f64,
    pub m: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlowSummary {
    pub command: String,
    pub config_hash: String,
    pub precision: u32,
    pub target: String,
    pub tmin: f64,
    pub tmax: f64,
    pub step: f64,
    pub inf_m: String,
    pub inf_at: f64,
    pub floor: String,
    pub threshold: f64,
    pub dips: Vec<DipReport>,
    pub hint: String,
}

/// `tmin, tmin + step, ...` up to `tmax`, rounded to 1e-9 so the grid
/// prints identically on every platform.
pub fn grid(tmin: f64, tmax: f64, step: f64) -> anyhow::Result<Vec<f64>> {
    if !(step > 0.0 && tmax >= tmin && tmin.is_finite() && tmax.is_finite()) {
        return Err(Error::InvalidInput("need step > 0 and tmin <= tmax".into()).into());
    }
    let n = ((tmax - tmin) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| ((tmin + i as f64 * step) * 1e9).round() / 1e9).collect())
}

fn flow(ctx: &Ctx) -> anyhow::Result<u8> {
    let (_, z) = ctx.vector()?;
    let c = ctx.cfg;
    let (tmin, tmax, step) = (c.tmin.unwrap_or(0.0), c.tmax.unwrap_or(10.0), c.step.unwrap_or(0.1));
    let threshold = c.dip_threshold.unwrap_or(0.25);
    let ts = grid(tmin, tmax, step)?;
    let prof = profile(&z, &ts, &ctx.e, threshold)?;
    let summary = FlowSummary {
        command: "flow".into(),
        config_hash: ctx.hash.clone(),
        precision: ctx.e.prec(),
        target: z.provenance.describe(),
        tmin,
        tmax,
        step,
        inf_m: iv(&prof.inf_m),
        inf_at: prof.inf_at,
        floor: format_bound(prof.floor.lo(), SIG, false),
        threshold,
        dips: prof.dips.iter().map(|(t, m)| DipReport { t: *t, m: iv(m) }).collect(),
        hint: prof.verdict_hint().to_string(),
    };
    if let Some(out) = &c.out {
        let d = ctx.field.degree();
        let mut buf = format!("# nfapprox flow config-hash={} precision={}\n", ctx.hash, ctx.e.prec());
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header: Vec<String> = ["t", "m_lo", "m_hi"].map(String::from).to_vec();
        header.extend((0..d).map(|i| format!("q{i}")).chain((0..d).map(|i| format!("p{i}"))));
        w.write_record(&header)?;
        for pt in &prof.points {
            let mut rec =
                vec![pt.t.to_string(), format_bound(pt.m.lo(), SIG, false), format_bound(pt.m.hi(), SIG, true)];
            rec.extend(pt.q.iter().chain(&pt.p).map(|v| v.to_string()));
            w.write_record(&rec)?;
        }
        buf.push_str(std::str::from_utf8(&w.into_inner()?)?);
        write(out, &buf)?;
    }
    if let Some(svg) = &c.svg {
        write(svg, &render_svg(&prof.points.iter().map(|p| (p.t, p.m.mid_f64())).collect::<Vec<_>>(), threshold))?;
    }
    say(&serde_json::to_string_pretty(&summary)?);
    Ok(CERTIFIED)
}

/// A static polyline of `(t, m(t))` with the dip threshold dashed.
pub fn render_svg(pts: &[(f64, f64)], threshold: f64) -> String {
    let (w, h, pad) = (640.0, 320.0, 30.0);
    let t0 = pts.first().map_or(0.0, |p| p.0);
    let t1 = pts.last().map_or(1.0, |p| p.0).max(t0 + 1e-9);
    let top = pts.iter().map(|p| p.1).fold(threshold, f64::max) * 1.1;
    let x = |t: f64| pad + (t - t0) / (t1 - t0) * (w - 2.0 * pad);
    let y = |m: f64| h - pad - m / top * (h - 2.0 * pad);
    let mut s =
        format!("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n");
    let _ = writeln!(s, "<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>");
    let _ = writeln!(
        s,
        "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>",
        x(t0),
        y(threshold),
        x(t1),
        y(threshold)
    );
    let poly: Vec<String> = pts.iter().map(|&(t, m)| format!("{:.2},{:.2}", x(t), y(m))).collect();
    let _ =
        writeln!(s, "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"{}\"/>", poly.join(" "));
    let _ =
        writeln!(s, "<text x=\"{pad}\" y=\"{}\" font-size=\"12\">t = {t0} .. {t1}, max m = {top:.3}</text>", h - 8.0);
    s.push_str("</svg>\n");
    s
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub command: String,
    pub config_hash: String,
    pub precision: u32,
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
    pub passed: bool,
}

fn selftest(cfg: &RunConfig, hash: String) -> anyhow::Result<u8> {
    let seed = cfg.seed.unwrap_or(0);
    let prec = cfg.precision();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let suites: Vec<SuiteReport> = invariants::run_all(&mut rng, prec)
        .into_iter()
        .map(|r| SuiteReport { name: r.name.to_string(), cases: r.cases, failures: r.failures })
        .collect();
    let passed = suites.iter().all(|s| s.failures.is_empty());
    let report =
        SelftestReport { command: "selftest".into(), config_hash: hash, precision: prec, seed, suites, passed };
    match &cfg.out {
        Some(p) => write(p, &config::render(&report, p)?)?,
        None => say(&serde_json::to_string_pretty(&report)?),
    }
    Ok(if passed { CERTIFIED } else { REFUTED })
}
