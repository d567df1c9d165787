use proptest::prelude::*;

use tcframe::bounds::{
    aggregate, cat_so, frame_bundle_dim, korbas_cl, so_char2_cup_length, upper_farber, Context, KnownCl,
    ManifoldDescriptor, Status, TcBase,
};
use tcframe::catalog::so_ring;
use tcframe::cuplength::{cup_length_by_search, Limits};
use tcframe::golden::golden_catalog;
use tcframe::FieldSpec;

#[test]
fn korbas_matches_ring_count() {
    for n in 2..=64 {
        assert_eq!(korbas_cl(n), so_char2_cup_length(n).unwrap(), "n = {n}");
    }
}

#[test]
fn korbas_matches_search() {
    for n in 2..=8 {
        let a = so_ring(n, FieldSpec::f2()).unwrap();
        let r = cup_length_by_search(&a, &Limits::default()).unwrap();
        assert!(r.exact);
        assert_eq!(u64::from(r.value), korbas_cl(n), "n = {n}");
    }
}

#[test]
fn farber_frame_bundle_form() {
    for n in 1..=32 {
        assert_eq!(upper_farber(frame_bundle_dim(n), 0), n * (n + 1) + 1);
    }
}

#[test]
fn cat_so_examples() {
    assert_eq!(cat_so(3).value, 4);
    assert_eq!(cat_so(2).value, 2);
    assert!(cat_so(10).exact && !cat_so(11).exact);
}

#[test]
fn golden_catalog_is_consistent() {
    for ex in golden_catalog() {
        let r = aggregate(&ex.descriptor, &Context::default()).unwrap();
        assert!(r.interval.is_consistent(), "{}", ex.key);
        assert!(r.verified_interval.is_consistent(), "{}", ex.key);
        assert!(r.verified_interval.contains(&r.interval), "{}", ex.key);
    }
}

#[test]
fn entry_order_is_fixed() {
    let ex = golden_catalog().into_iter().find(|e| e.key == "cp3").unwrap();
    let r = aggregate(&ex.descriptor, &Context::default()).unwrap();
    let rules: Vec<&str> = r.entries.iter().map(|e| e.rule.as_str()).collect();
    assert_eq!(
        rules,
        [
            "lower-tncz",
            "lower-tncz-computed",
            "lower-dim-theorem",
            "lower-dim-corollary",
            "lower-spin",
            "upper-free-action",
            "upper-farber"
        ]
    );
    let statuses: Vec<Status> = r.entries.iter().map(|e| e.status).collect();
    assert_eq!(statuses[0], Status::RefutedPremise);
    assert_eq!(statuses[1], Status::Applied);
    assert_eq!(statuses[3], Status::Applied);
}

#[test]
fn torus_interval_collapses() {
    for ex in golden_catalog().iter().filter(|e| e.key.starts_with("torus")) {
        let n = ex.descriptor.dim;
        let r = aggregate(&ex.descriptor, &Context::default()).unwrap();
        assert_eq!(r.interval.lo, korbas_cl(n) + n + 1);
        assert_eq!(r.interval.hi, cat_so(n).value + n);
    }
}

#[test]
fn parallelizable_upper_needs_exact_cat() {
    let mut d = tcframe::golden::torus_descriptor(11);
    d.cohomology.clear();
    let r = aggregate(&d, &Context::default()).unwrap();
    assert!(r.entries.iter().all(|e| e.rule != "upper-parallelizable"));
    assert!(r.notes.iter().any(|n| n.contains("cat(SO(11))")));
}

#[test]
fn descriptor_round_trip() {
    for ex in golden_catalog() {
        let json = serde_json::to_string(&ex.descriptor).unwrap();
        assert_eq!(ManifoldDescriptor::from_json(&json).unwrap(), ex.descriptor);
    }
}

#[test]
fn unknown_descriptor_field_is_rejected() {
    let err = ManifoldDescriptor::from_json(r#"{"name": "x", "dim": 2, "orientable": true, "colour": 1}"#);
    assert!(err.is_err());
}

fn flagged(base: &ManifoldDescriptor, flags: u8, tc: Option<u64>, cl: Option<u64>) -> ManifoldDescriptor {
    let mut d = base.clone();
    d.parallelizable |= flags & 1 != 0;
    d.spin |= flags & 2 != 0;
    if flags & 4 != 0 && !d.tncz_fields.contains(&FieldSpec::f2()) {
        d.tncz_fields.push(FieldSpec::f2());
    }
    if d.known_tc_base.is_none() {
        d.known_tc_base = tc.map(TcBase::Exact);
    }
    if let Some(v) = cl {
        d.known_cl.push(KnownCl {
            field: FieldSpec::f2(),
            value: v,
        });
    }
    d
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Adding a declaration never widens the interval.
    #[test]
    fn aggregate_is_monotone(
        which in 0usize..11,
        before in 0u8..8,
        extra in 0u8..8,
        tc in proptest::option::of(1u64..12),
        cl in proptest::option::of(1u64..4),
    ) {
        let catalog = golden_catalog();
        let base = &catalog[which].descriptor;
        let ctx = Context::default();
        let narrow = flagged(base, before | extra, tc, cl);
        let wide = flagged(base, before, None, None);
        let (Ok(w), Ok(n)) = (aggregate(&wide, &ctx), aggregate(&narrow, &ctx)) else {
            return Ok(());
        };
        prop_assert!(n.interval.lo >= w.interval.lo && n.interval.hi <= w.interval.hi,
            "{}: {:?} -> {:?}", base.name, w.interval, n.interval);
    }
}
