//! Built-in example manifolds and their published `TC(F(M))` values.

use serde::{Deserialize, Serialize};

use crate::bounds::{aggregate, cat_so, korbas_cl, BoundReport, Context, Interval, ManifoldDescriptor};
use crate::error::Result;
use crate::field::FieldSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PublishedValue {
    pub lo: u64,
    pub hi: u64,
}

impl PublishedValue {
    fn exact(v: u64) -> Self {
        PublishedValue { lo: v, hi: v }
    }

    pub fn as_interval(&self) -> Interval {
        Interval {
            lo: self.lo,
            hi: self.hi,
        }
    }
}

#[derive(Clone, Debug)]
pub struct GoldenExample {
    pub key: String,
    pub descriptor: ManifoldDescriptor,
    pub published: PublishedValue,
    pub note: Option<String>,
}

const FILES: &[(&str, &str, PublishedValue)] = &[
    ("rp1", include_str!("../data/rp1.json"), PublishedValue { lo: 2, hi: 2 }),
    ("rp3", include_str!("../data/rp3.json"), PublishedValue { lo: 7, hi: 7 }),
    (
        "rp7",
        include_str!("../data/rp7.json"),
        PublishedValue { lo: 19, hi: 19 },
    ),
    ("s2", include_str!("../data/s2.json"), PublishedValue { lo: 4, hi: 4 }),
    ("t2", include_str!("../data/t2.json"), PublishedValue { lo: 4, hi: 4 }),
    (
        "sigma2",
        include_str!("../data/sigma2.json"),
        PublishedValue { lo: 5, hi: 6 },
    ),
    (
        "sigma3",
        include_str!("../data/sigma3.json"),
        PublishedValue { lo: 5, hi: 6 },
    ),
    (
        "generic3",
        include_str!("../data/generic3.json"),
        PublishedValue { lo: 5, hi: 10 },
    ),
    (
        "irreducible3",
        include_str!("../data/irreducible3.json"),
        PublishedValue { lo: 7, hi: 10 },
    ),
    (
        "cp2",
        include_str!("../data/cp2.json"),
        PublishedValue { lo: 9, hi: 15 },
    ),
    (
        "cp3",
        include_str!("../data/cp3.json"),
        PublishedValue { lo: 12, hi: 28 },
    ),
];

/// Descriptor of the `n`-torus.
pub fn torus_descriptor(n: u64) -> ManifoldDescriptor {
    let mut cohomology = std::collections::BTreeMap::new();
    cohomology.insert("char2".to_string(), format!("torus:{n}:char2"));
    ManifoldDescriptor {
        name: format!("T^{n}"),
        dim: n,
        orientable: true,
        parallelizable: true,
        spin: true,
        lie_group: true,
        frame_bundle_lie_group: None,
        tncz_fields: vec![FieldSpec::f2()],
        cohomology,
        known_tc_base: Some(crate::bounds::TcBase::Exact(n + 1)),
        known_cat_base: Some(n + 1),
        free_action_dim: n,
        connectivity: None,
        known_cl: Vec::new(),
    }
}

/// Every built-in example, in display order: the named manifolds, then
/// `T^n` for `n = 1..=10`.
pub fn golden_catalog() -> Vec<GoldenExample> {
    let mut out: Vec<GoldenExample> = FILES
        .iter()
        .map(|(key, text, published)| GoldenExample {
            key: (*key).to_string(),
            descriptor: ManifoldDescriptor::from_json(text).expect("built-in descriptor parses"),
            published: *published,
            note: None,
        })
        .collect();
    for n in 1..=10 {
        let printed = cat_so(n).value + n + 1;
        out.push(GoldenExample {
            key: format!("torus{n}"),
            descriptor: torus_descriptor(n),
            published: PublishedValue::exact(printed),
            note: Some(format!(
                "printed as cat(SO({n}))+{n}+1 = {printed}; the displayed bounds give [cl(SO({n}))+{n}+1, cat(SO({n}))+{n}] = [{}, {}]",
                korbas_cl(n) + n + 1,
                cat_so(n).value + n
            )),
        });
    }
    out
}

/// Result of one example run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExampleRow {
    pub key: String,
    pub name: String,
    pub computed: Interval,
    pub verified: Interval,
    pub published: PublishedValue,
    pub agrees: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub report: BoundReport,
}

pub fn run_example(ex: &GoldenExample, ctx: &Context) -> Result<ExampleRow> {
    let report = aggregate(&ex.descriptor, ctx)?;
    Ok(ExampleRow {
        key: ex.key.clone(),
        name: ex.descriptor.name.clone(),
        computed: report.interval,
        verified: report.verified_interval,
        published: ex.published,
        agrees: report.interval == ex.published.as_interval(),
        note: ex.note.clone(),
        report,
    })
}

pub fn run_all(ctx: &Context) -> Result<Vec<ExampleRow>> {
    golden_catalog().iter().map(|ex| run_example(ex, ctx)).collect()
}
