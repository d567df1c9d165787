//! Cohomology rings of the spaces that appear as bases and fibers of frame
//! bundles: `SO(n)`, real and complex projective spaces, tori, spheres and
//! closed oriented surfaces.
//!
//! Entries are addressable by id strings of the form `kind:param[:field]`,
//! for example `so:5:char2`, `cp:3:char0`, `surface:2:char2`, `rp:3`.

use std::fmt;

use serde::Serialize;

use crate::algebra::{Algebra, GeneratorSpec};
use crate::error::{Error, Result};
use crate::field::FieldSpec;

/// The smallest power of two `2^k` with `i * 2^k >= n`.
///
/// This is the height of the generator `b_i` in `H*(SO(n); F_2)`.
pub fn pi_exponent(i: u64, n: u64) -> Result<u64> {
    if i == 0 || i.is_multiple_of(2) {
        return Err(Error::Domain(format!("index {i} must be odd and positive")));
    }
    if i >= n {
        return Err(Error::Domain(format!("index {i} must be smaller than n = {n}")));
    }
    let mut p = 1u64;
    while i * p < n {
        p *= 2;
    }
    Ok(p)
}

/// `H*(SO(n); K)`.
///
/// Outside characteristic two this is an exterior algebra on `⌊n/2⌋` odd
/// generators: `a_3, a_7, …, a_{4m-1}` for `n = 2m+1`, plus `a'_{2m+1}` for
/// `n = 2m+2`. In characteristic two it is `⊗_{i odd, i<n} F[b_i]/(b_i^{p_i})`.
/// `SO(1)` is a point.
pub fn so_ring(n: u64, field: FieldSpec) -> Result<Algebra> {
    if n == 0 {
        return Err(Error::Domain("SO(n) needs n >= 1".into()));
    }
    let gens = if field.is_char_two() {
        (1..n)
            .step_by(2)
            .map(|i| Ok(GeneratorSpec::new(format!("b{i}"), i as u32, pi_exponent(i, n)? as u32)))
            .collect::<Result<Vec<_>>>()?
    } else {
        let m = if n % 2 == 1 { (n - 1) / 2 } else { (n - 2) / 2 };
        let mut gens: Vec<GeneratorSpec> = (1..=m)
            .map(|k| GeneratorSpec::exterior(format!("a{}", 4 * k - 1), (4 * k - 1) as u32))
            .collect();
        if n.is_multiple_of(2) {
            gens.push(GeneratorSpec::exterior(format!("a'{}", n - 1), (n - 1) as u32));
        }
        gens
    };
    Algebra::monomial(field, gens)
}

/// `H*(RP^n; F_2) = F_2[α]/(α^{n+1})`; other fields are rejected.
pub fn rp_ring(n: u64, field: FieldSpec) -> Result<Algebra> {
    if !field.is_char_two() {
        return Err(Error::Unsupported(format!(
            "RP^n is only provided over characteristic 2, got {field}"
        )));
    }
    if n == 0 {
        return Err(Error::Domain("RP^n needs n >= 1".into()));
    }
    Algebra::monomial(field, vec![GeneratorSpec::new("x", 1, (n + 1) as u32)])
}

/// `H*(CP^n; K) = K[u]/(u^{n+1})` with `|u| = 2`.
pub fn cp_ring(n: u64, field: FieldSpec) -> Result<Algebra> {
    if n == 0 {
        return Err(Error::Domain("CP^n needs n >= 1".into()));
    }
    Algebra::monomial(field, vec![GeneratorSpec::new("u", 2, (n + 1) as u32)])
}

/// `H*(T^n; K)`: exterior algebra on `n` degree-one classes (`u^2 = 0` in
/// every characteristic, including two).
pub fn torus_ring(n: u64, field: FieldSpec) -> Result<Algebra> {
    if n == 0 {
        return Err(Error::Domain("T^n needs n >= 1".into()));
    }
    Algebra::monomial(
        field,
        (1..=n).map(|i| GeneratorSpec::exterior(format!("u{i}"), 1)).collect(),
    )
}

/// `H*(S^n; K)`: one class in degree `n` squaring to zero.
pub fn sphere_ring(n: u64, field: FieldSpec) -> Result<Algebra> {
    if n == 0 {
        return Err(Error::Domain("S^n needs n >= 1".into()));
    }
    Algebra::monomial(field, vec![GeneratorSpec::exterior("u", n as u32)])
}

/// `H*(Σ_g; K)` as a table algebra with basis `1, α_1..α_g, β_1..β_g, ω`,
/// `α_i β_i = ω = -β_i α_i` and all other products of degree-one classes zero.
pub fn surface_ring(g: u64, field: FieldSpec) -> Result<Algebra> {
    if g == 0 {
        return Err(Error::Domain("Σ_g needs g >= 1".into()));
    }
    let g = g as usize;
    let mut basis = vec![("1".to_string(), 0)];
    basis.extend((1..=g).map(|i| (format!("α{i}"), 1)));
    basis.extend((1..=g).map(|i| (format!("β{i}"), 1)));
    basis.push(("ω".to_string(), 2));
    let top = 2 * g + 1;
    let mut products = Vec::new();
    for i in 1..=g {
        products.push((i, g + i, top, field.one()));
        products.push((g + i, i, top, field.from_i64(-1)));
    }
    Algebra::table(field, basis, products)
}

/// A named ring from the catalog.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub kind: RingKind,
    pub parameter: u64,
    pub field: FieldSpec,
    pub algebra: Algebra,
    pub citation: &'static str,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RingKind {
    So,
    Rp,
    Cp,
    Torus,
    Sphere,
    Surface,
    Point,
}

impl RingKind {
    fn parse(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "so" => RingKind::So,
            "rp" => RingKind::Rp,
            "cp" => RingKind::Cp,
            "torus" | "t" => RingKind::Torus,
            "sphere" | "s" => RingKind::Sphere,
            "surface" | "sigma" => RingKind::Surface,
            "point" | "pt" => RingKind::Point,
            other => return Err(Error::Parse(format!("unknown catalog ring kind {other:?}"))),
        })
    }

    fn tag(&self) -> &'static str {
        match self {
            RingKind::So => "so",
            RingKind::Rp => "rp",
            RingKind::Cp => "cp",
            RingKind::Torus => "torus",
            RingKind::Sphere => "sphere",
            RingKind::Surface => "surface",
            RingKind::Point => "point",
        }
    }

    fn citation(&self) -> &'static str {
        match self {
            RingKind::So => {
                "H*(SO(n)): exterior on floor(n/2) odd classes (char != 2); tensor of F2[b_i]/(b_i^{p_i}) (char 2)"
            }
            RingKind::Rp => "H*(RP^n;F2) = F2[x]/(x^{n+1})",
            RingKind::Cp => "H*(CP^n;K) = K[u]/(u^{n+1}), |u| = 2",
            RingKind::Torus => "H*(T^n;K) = exterior on n degree-1 classes",
            RingKind::Sphere => "H*(S^n;K) = K[u]/(u^2), |u| = n",
            RingKind::Surface => "H*(Σ_g;K): α_i β_i = ω, other degree-1 products zero",
            RingKind::Point => "H*(point;K) = K",
        }
    }
}

impl CatalogEntry {
    pub fn build(kind: RingKind, parameter: u64, field: FieldSpec) -> Result<Self> {
        let algebra = match kind {
            RingKind::So => so_ring(parameter, field)?,
            RingKind::Rp => rp_ring(parameter, field)?,
            RingKind::Cp => cp_ring(parameter, field)?,
            RingKind::Torus => torus_ring(parameter, field)?,
            RingKind::Sphere => sphere_ring(parameter, field)?,
            RingKind::Surface => surface_ring(parameter, field)?,
            RingKind::Point => Algebra::ground(field),
        };
        Ok(CatalogEntry {
            kind,
            parameter,
            field,
            algebra,
            citation: kind.citation(),
        })
    }

    pub fn id(&self) -> String {
        format!("{}:{}:{}", self.kind.tag(), self.parameter, self.field.label())
    }
}

impl fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id())
    }
}

/// Parses `kind:param[:field]`. A missing field falls back to `default_field`;
/// `rp` defaults to characteristic two.
pub fn lookup(id: &str, default_field: Option<FieldSpec>) -> Result<CatalogEntry> {
    let parts: Vec<&str> = id.trim().split(':').collect();
    if parts.is_empty() || parts.len() > 3 {
        return Err(Error::Parse(format!("catalog id {id:?} is not kind:param[:field]")));
    }
    let kind = RingKind::parse(parts[0])?;
    let parameter = match parts.get(1) {
        Some(p) => p
            .parse()
            .map_err(|_| Error::Parse(format!("bad parameter in catalog id {id:?}")))?,
        None if kind == RingKind::Point => 0,
        None => return Err(Error::Parse(format!("catalog id {id:?} lacks a parameter"))),
    };
    let field = match parts.get(2) {
        Some(f) => f.parse()?,
        None => match (default_field, kind) {
            (Some(f), _) => f,
            (None, RingKind::Rp) => FieldSpec::f2(),
            (None, _) => {
                return Err(Error::Parse(format!(
                    "catalog id {id:?} needs a field suffix such as :char0"
                )))
            }
        },
    };
    CatalogEntry::build(kind, parameter, field)
}

/// Every catalog ring of dimension at most `max_dim` over the given fields,
/// with parameters up to a small bound per kind.
pub fn small_catalog(max_dim: usize, fields: &[FieldSpec]) -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for &field in fields {
        let kinds: &[(RingKind, std::ops::RangeInclusive<u64>)] = &[
            (RingKind::So, 2..=12),
            (RingKind::Rp, 1..=15),
            (RingKind::Cp, 1..=15),
            (RingKind::Torus, 1..=4),
            (RingKind::Sphere, 1..=4),
            (RingKind::Surface, 1..=7),
        ];
        for (kind, range) in kinds {
            for p in range.clone() {
                if let Ok(e) = CatalogEntry::build(*kind, p, field) {
                    if e.algebra.dim() <= max_dim {
                        out.push(e);
                    }
                }
            }
        }
    }
    out
}
