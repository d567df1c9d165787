//! Report documents shared by the text and JSON front ends.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::algebra::Algebra;
use crate::bounds::{aggregate, BoundReport, Context, Direction, ManifoldDescriptor, Status};
use crate::catalog;
use crate::cuplength::{cup_length, zcl_basic, zcl_full, CupLengthResult, Limits, Method};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::golden::{run_all, ExampleRow};
use crate::ring_file::RingDescriptor;

/// Identifier of the JSON layout; bumped on incompatible changes.
pub const SCHEMA_ID: &str = "tcframe-report/1";
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Ring,
    FrameBundle,
    Examples,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub schema: String,
    pub engine_version: String,
    pub command: CommandKind,
    /// Echo of the parsed input.
    pub input: serde_json::Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub examples: Option<Vec<ExampleRow>>,
    pub warnings: Vec<String>,
    /// Wall-clock time in microseconds, present only when requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_us: Option<u64>,
}

impl ReportDocument {
    fn new(command: CommandKind, input: serde_json::Value) -> Self {
        ReportDocument {
            schema: SCHEMA_ID.into(),
            engine_version: ENGINE_VERSION.into(),
            command,
            input,
            ring: None,
            bounds: None,
            examples: None,
            warnings: Vec::new(),
            timing_us: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("report: {e}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Compute {
    Cl,
    ZclBasic,
    ZclFull,
    Basis,
    Poincare,
}

impl FromStr for Compute {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "cl" => Compute::Cl,
            "zcl-basic" => Compute::ZclBasic,
            "zcl-full" => Compute::ZclFull,
            "basis" => Compute::Basis,
            "poincare" => Compute::Poincare,
            other => {
                return Err(Error::Parse(format!(
                    "unknown quantity {other:?}; expected cl, zcl-basic, zcl-full, basis or poincare"
                )))
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingReport {
    pub reference: String,
    pub field: FieldSpec,
    pub encoding: String,
    pub dim: u64,
    pub top_degree: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poincare: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<BasisRow>>,
    pub quantities: Vec<QuantityReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisRow {
    pub index: u64,
    pub name: String,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuantityReport {
    pub quantity: Compute,
    pub value: u32,
    /// `false`: a budget ran out and `value` is a lower bound.
    pub exact: bool,
    pub method: Method,
    pub witness: Vec<String>,
    pub witness_compact: String,
    pub product: String,
    /// The witness was re-multiplied and found nonzero.
    pub verified: bool,
}

/// Loads a ring from a catalog id or a ring file.
pub fn load_ring(reference: &str, field: Option<FieldSpec>, max_dim: usize) -> Result<(String, Algebra)> {
    let path = Path::new(reference);
    if reference.ends_with(".json") || path.is_file() {
        let desc = RingDescriptor::from_path(path)?;
        if let Some(f) = field {
            if f != desc.field() {
                return Err(Error::Domain(format!(
                    "--field {f} disagrees with the ring file's field {}",
                    desc.field()
                )));
            }
        }
        return Ok((reference.to_string(), desc.build_with_cap(max_dim)?));
    }
    let entry = catalog::lookup(reference, field)?;
    if let Some(f) = field {
        if f != entry.field {
            return Err(Error::Domain(format!(
                "--field {f} disagrees with catalog id {reference}"
            )));
        }
    }
    if entry.algebra.dim() > max_dim {
        return Err(Error::capacity("ring", entry.algebra.dim(), max_dim));
    }
    Ok((entry.id(), entry.algebra))
}

fn quantity(kind: Compute, r: &CupLengthResult, source: &Algebra) -> QuantityReport {
    let witness: Vec<String> = r.witness.iter().map(|w| w.to_string()).collect();
    let labels: Vec<String> = match kind {
        Compute::ZclBasic => r
            .witness
            .iter()
            .map(|w| match basic_label(w.terms(), source) {
                Some(name) => format!("bar({name})"),
                None => format!("({w})"),
            })
            .collect(),
        Compute::Cl => r
            .witness
            .iter()
            .map(|w| {
                let s = w.to_string();
                if w.terms().len() == 1 {
                    s
                } else {
                    format!("({s})")
                }
            })
            .collect(),
        _ => r.witness.iter().map(|w| format!("({w})")).collect(),
    };
    QuantityReport {
        quantity: kind,
        value: r.value,
        exact: r.exact,
        method: r.method,
        witness,
        witness_compact: compact(&labels),
        product: r.product().map(|p| p.to_string()).unwrap_or_else(|| "1".into()),
        verified: r.verify(),
    }
}

/// Recognizes `1⊗m − m⊗1`.
fn basic_label(terms: &[(usize, crate::field::Scalar)], source: &Algebra) -> Option<String> {
    let d = source.dim();
    if terms.len() != 2 {
        return None;
    }
    let m = terms.iter().find(|(k, c)| *k < d && c.is_one())?.0;
    terms.iter().any(|(k, _)| *k == m * d).then(|| source.basis_name(m))
}

/// Joins factors with `*`, writing runs of equal factors as powers.
pub fn compact(labels: &[String]) -> String {
    if labels.is_empty() {
        return "1".into();
    }
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < labels.len() {
        let mut j = i;
        while j < labels.len() && labels[j] == labels[i] {
            j += 1;
        }
        let run = j - i;
        parts.push(if run == 1 {
            labels[i].clone()
        } else {
            format!("{}^{run}", labels[i])
        });
        i = j;
    }
    parts.join(" * ")
}

pub fn ring_report(
    reference: &str,
    field: Option<FieldSpec>,
    computes: &[Compute],
    limits: &Limits,
) -> Result<ReportDocument> {
    let (id, a) = load_ring(reference, field, limits.max_dim)?;
    let mut doc = ReportDocument::new(
        CommandKind::Ring,
        json!({
            "reference": reference,
            "field": field.map(|f| f.label()),
            "compute": computes,
        }),
    );
    let mut ring = RingReport {
        reference: id,
        field: a.field(),
        encoding: a.encoding_name().into(),
        dim: a.dim() as u64,
        top_degree: a.top_degree(),
        poincare: None,
        basis: None,
        quantities: Vec::new(),
    };
    for &c in computes {
        match c {
            Compute::Poincare => ring.poincare = Some(a.poincare_polynomial()),
            Compute::Basis => {
                ring.basis = Some(
                    (0..a.dim())
                        .map(|i| BasisRow {
                            index: i as u64,
                            name: a.basis_name(i),
                            degree: a.degree_of(i),
                        })
                        .collect(),
                )
            }
            Compute::Cl => ring.quantities.push(quantity(c, &cup_length(&a, limits)?, &a)),
            Compute::ZclBasic => ring.quantities.push(quantity(c, &zcl_basic(&a, limits)?, &a)),
            Compute::ZclFull => ring.quantities.push(quantity(
                c,
                &zcl_full(&a, limits).map_err(|e| e.with_hint("retry with --compute zcl-basic"))?,
                &a,
            )),
        }
    }
    for q in &ring.quantities {
        if !q.exact {
            doc.warnings.push(format!(
                "{} search hit its node budget; {} is a lower bound (raise --budget)",
                serde_json::to_value(q.quantity)
                    .expect("serializes")
                    .as_str()
                    .unwrap_or(""),
                q.value
            ));
        }
        if !q.verified {
            doc.warnings
                .push(format!("witness for {:?} failed re-multiplication", q.quantity));
        }
    }
    doc.ring = Some(ring);
    Ok(doc)
}

pub fn frame_bundle_report(path: &Path, ctx: &Context) -> Result<ReportDocument> {
    let desc = ManifoldDescriptor::from_path(path)?;
    let mut ctx = ctx.clone();
    if ctx.base_dir.is_none() {
        ctx.base_dir = path.parent().map(Path::to_path_buf);
    }
    let bounds = aggregate(&desc, &ctx)?;
    let mut doc = ReportDocument::new(
        CommandKind::FrameBundle,
        json!({
            "path": path.display().to_string(),
            "descriptor": desc,
        }),
    );
    doc.warnings = bounds.warnings.clone();
    doc.bounds = Some(bounds);
    Ok(doc)
}

pub fn examples_report(ctx: &Context) -> Result<ReportDocument> {
    let rows = run_all(ctx)?;
    let mut doc = ReportDocument::new(CommandKind::Examples, json!({}));
    for row in &rows {
        for w in &row.report.warnings {
            doc.warnings.push(format!("{}: {w}", row.key));
        }
    }
    doc.examples = Some(rows);
    Ok(doc)
}

fn field_label(f: Option<FieldSpec>) -> String {
    f.map(|f| f.to_string()).unwrap_or_else(|| "-".into())
}

fn status_label(s: Status) -> &'static str {
    match s {
        Status::Applied => "applied",
        Status::RefutedPremise => "refuted-premise",
    }
}

/// Human-readable rendering; carries the same numbers as the JSON form.
pub fn render_text(doc: &ReportDocument) -> String {
    let mut out = String::new();
    if let Some(ring) = &doc.ring {
        render_ring(&mut out, ring);
    }
    if let Some(b) = &doc.bounds {
        render_bounds(&mut out, b);
    }
    if let Some(rows) = &doc.examples {
        render_examples(&mut out, rows);
    }
    for w in &doc.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    if let Some(t) = doc.timing_us {
        let _ = writeln!(out, "time: {t} us");
    }
    out
}

fn render_ring(out: &mut String, r: &RingReport) {
    let _ = writeln!(
        out,
        "ring {} over {} ({} encoding), dim {}, top degree {}",
        r.reference, r.field, r.encoding, r.dim, r.top_degree
    );
    if let Some(p) = &r.poincare {
        let terms: Vec<String> = p
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(d, c)| match d {
                0 => c.to_string(),
                1 if *c == 1 => "t".into(),
                1 => format!("{c}t"),
                _ if *c == 1 => format!("t^{d}"),
                _ => format!("{c}t^{d}"),
            })
            .collect();
        let _ = writeln!(out, "poincare: {}", terms.join(" + "));
    }
    if let Some(basis) = &r.basis {
        let _ = writeln!(out, "basis ({}):", basis.len());
        for b in basis {
            let _ = writeln!(out, "  {:>4}  deg {:>3}  {}", b.index, b.degree, b.name);
        }
    }
    for q in &r.quantities {
        let name = serde_json::to_value(q.quantity).expect("serializes");
        let _ = writeln!(
            out,
            "{}: {}{}",
            name.as_str().unwrap_or_default(),
            if q.exact { "" } else { ">= " },
            q.value
        );
        let _ = writeln!(out, "  witness: {}", q.witness_compact);
        let _ = writeln!(out, "  product: {}", q.product);
        let _ = writeln!(out, "  verified: {}", if q.verified { "yes" } else { "NO" });
    }
}

fn render_bounds(out: &mut String, b: &BoundReport) {
    let _ = writeln!(out, "TC(F(M)) for {} (dim {})", b.name, b.dim);
    for e in &b.entries {
        let dir = match e.direction {
            Direction::Lower => ">=",
            Direction::Upper => "<=",
        };
        let _ = writeln!(
            out,
            "  {:<28} {} {:>4}  {:<4} {}",
            e.rule,
            dir,
            e.value,
            field_label(e.field),
            status_label(e.status)
        );
        let _ = writeln!(out, "      {}", e.citation);
        for a in &e.assumptions {
            let _ = writeln!(out, "      - {a}");
        }
    }
    let _ = writeln!(out, "interval: [{}, {}]", b.interval.lo, b.interval.hi);
    let _ = writeln!(
        out,
        "verified interval: [{}, {}]",
        b.verified_interval.lo, b.verified_interval.hi
    );
    for n in &b.notes {
        let _ = writeln!(out, "note: {n}");
    }
}

fn render_examples(out: &mut String, rows: &[ExampleRow]) {
    let _ = writeln!(
        out,
        "{:<14} {:<52} {:>10} {:>10} {:>10}  agreement",
        "key", "manifold", "computed", "verified", "published"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:<14} {:<52} {:>10} {:>10} {:>10}  {}",
            r.key,
            r.name,
            r.computed.to_string(),
            r.verified.to_string(),
            r.published.as_interval().to_string(),
            if r.agrees { "match" } else { "DISCREPANCY" }
        );
        if let Some(n) = &r.note {
            let _ = writeln!(out, "{:<14} {n}", "");
        }
    }
}
