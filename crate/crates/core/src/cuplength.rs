//! Cup length, basic zero-divisor cup length and zero-divisor cup length.
//!
//! All three quantities are lengths of longest nonzero products in an ideal
//! of a finite-dimensional algebra. Products are multilinear, so a length-`n`
//! product of ideal elements is nonzero for some choice of elements iff it is
//! nonzero for some choice of elements drawn from a spanning set. Every
//! search below therefore runs over a finite spanning set:
//!
//! * `cl(A)`: the positive-degree basis of `A`;
//! * `zcl''(A)`: the basic zero-divisors `m̄ = 1⊗m − m⊗1` for positive-degree
//!   basis monomials `m` (the map `u ↦ ū` is linear);
//! * `zcl(A)`: a basis of the kernel of `μ: A⊗A → A`, computed per degree.
//!
//! Graded commutativity means reordering factors only changes the sign, so
//! searches enumerate multisets (non-decreasing index sequences) instead of
//! ordered tuples. A product whose prefix vanishes vanishes, which prunes
//! the search tree.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Element, SparseVec, DEFAULT_MAX_DIM};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{kernel, EchelonBasis};

/// Resource limits shared by the engine entry points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest algebra (including tensor squares) that may be built.
    pub max_dim: usize,
    /// Largest tensor square on which the full zero-divisor ideal is computed.
    pub zcl_full_max_dim: usize,
    /// Search nodes allowed per top-level branch of a product search.
    pub search_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_dim: DEFAULT_MAX_DIM,
            zcl_full_max_dim: 1024,
            search_budget: 2_000_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    Search,
    LinearAlgebra,
}

/// A cup length together with a witnessing nonzero product.
#[derive(Clone, Debug)]
pub struct CupLengthResult {
    pub value: u32,
    /// Factors whose product is nonzero; `witness.len() == value`.
    pub witness: Vec<Element>,
    pub method: Method,
    /// `false` when a budget ran out: `value` is then only a lower bound.
    pub exact: bool,
}

impl CupLengthResult {
    /// Re-multiplies the witness and checks the product is nonzero.
    pub fn verify(&self) -> bool {
        if self.witness.len() != self.value as usize {
            return false;
        }
        let Some(first) = self.witness.first() else {
            return true;
        };
        let mut acc = first.algebra().one();
        for w in &self.witness {
            match acc.mul(w) {
                Ok(p) => acc = p,
                Err(_) => return false,
            }
        }
        !acc.is_zero()
    }

    /// The witness product.
    pub fn product(&self) -> Option<Element> {
        let first = self.witness.first()?;
        let mut acc = first.algebra().one();
        for w in &self.witness {
            acc = acc.mul(w).ok()?;
        }
        Some(acc)
    }
}

/// Basic zero-divisors of `A` inside `A⊗A`.
#[derive(Clone, Debug)]
pub struct ZeroDivisorBasis {
    pub source: Algebra,
    pub square: Algebra,
    /// Basis index in `source` of the monomial `m` behind each element.
    pub monomials: Vec<usize>,
    /// `m̄ = 1⊗m − m⊗1`, ordered by ascending degree, then basis index.
    pub elements: Vec<Element>,
}

impl ZeroDivisorBasis {
    /// The cross product `a × b = a⊗b` in the tensor square.
    pub fn cross(&self, a: &Element, b: &Element) -> Result<Element> {
        cross(&self.square, a, b)
    }

    /// Image of a square element under the diagonal, `a⊗b ↦ ab`.
    pub fn diagonal(&self, x: &Element) -> Element {
        diagonal(&self.source, x)
    }
}

/// `a × b` in `A⊗B` for `a ∈ A`, `b ∈ B`, where `tensor` was built from `A` and `B`.
pub fn cross(tensor: &Algebra, a: &Element, b: &Element) -> Result<Element> {
    let (fa, fb) = tensor
        .factors()
        .ok_or_else(|| Error::Domain("algebra is not a tensor product".into()))?;
    if !a.algebra().same(fa) || !b.algebra().same(fb) {
        return Err(Error::Domain("cross product operands do not match the factors".into()));
    }
    let field = tensor.field();
    let db = fb.dim();
    tensor.element(
        a.terms()
            .iter()
            .flat_map(|(i, ci)| b.terms().iter().map(move |(j, cj)| (i * db + j, field.mul(ci, cj)))),
    )
}

/// `Δ*: A⊗A → A`, `a⊗b ↦ ab`.
pub fn diagonal(source: &Algebra, x: &Element) -> Element {
    let field = source.field();
    let d = source.dim();
    let terms: Vec<(usize, Scalar)> = x
        .terms()
        .iter()
        .flat_map(|(k, c)| {
            source
                .mul_basis(k / d, k % d)
                .into_iter()
                .map(move |(m, cm)| (m, field.mul(c, &cm)))
        })
        .collect();
    source.element(terms).expect("indices are in range")
}

/// Cup length of the augmentation ideal.
///
/// Monomial algebras use the closed form `Σ (q_i − 1)`: the product of all
/// top powers `Π x_i^{q_i−1}` is a basis monomial, and any product of more
/// than `Σ (q_i − 1)` positive-degree monomials has some exponent reaching
/// its truncation. Other encodings are searched.
pub fn cup_length(a: &Algebra, limits: &Limits) -> Result<CupLengthResult> {
    if let Some(gens) = a.generators() {
        let mut witness = Vec::new();
        for g in gens {
            let x = a.generator(&g.name).expect("declared generator");
            let idx = x.terms()[0].0;
            for _ in 1..g.truncation {
                witness.push(a.basis_element(idx));
            }
        }
        return Ok(CupLengthResult {
            value: witness.len() as u32,
            witness,
            method: Method::ClosedForm,
            exact: true,
        });
    }
    cup_length_by_search(a, limits)
}

/// Cup length by branch-and-bound search over the positive-degree basis,
/// whatever the encoding.
pub fn cup_length_by_search(a: &Algebra, limits: &Limits) -> Result<CupLengthResult> {
    let gens: Vec<SparseVec> = a
        .positive_basis()
        .into_iter()
        .map(|i| vec![(i, a.field().one())])
        .collect();
    let bound = product_length_bound(a);
    let out = longest_product(a, &gens, bound, limits.search_budget);
    Ok(CupLengthResult {
        value: out.length,
        witness: out
            .witness
            .iter()
            .map(|&k| a.element(gens[k].clone()).expect("in range"))
            .collect(),
        method: Method::Search,
        exact: out.complete,
    })
}

/// Basic zero-divisors `m̄` for every positive-degree basis monomial `m`,
/// each checked to lie in the kernel of the diagonal.
pub fn zero_divisor_generators(a: &Algebra, limits: &Limits) -> Result<ZeroDivisorBasis> {
    let square = a
        .tensor_with_cap(a, limits.max_dim)
        .map_err(|e| e.with_hint("the tensor square is too large; raise --capacity"))?;
    let field = a.field();
    let d = a.dim();
    let mut monomials = a.positive_basis();
    monomials.sort_by_key(|&m| (a.degree_of(m), m));
    let mut elements = Vec::with_capacity(monomials.len());
    for &m in &monomials {
        let bar = square.element([(m, field.one()), (m * d, field.from_i64(-1))])?;
        debug_assert!(diagonal(a, &bar).is_zero());
        if !diagonal(a, &bar).is_zero() {
            return Err(Error::Domain(format!(
                "basic zero-divisor for {} is not in the kernel of the diagonal",
                a.basis_name(m)
            )));
        }
        elements.push(bar);
    }
    Ok(ZeroDivisorBasis {
        source: a.clone(),
        square,
        monomials,
        elements,
    })
}

/// `zcl''(A)`: the longest nonzero product of basic zero-divisors.
pub fn zcl_basic(a: &Algebra, limits: &Limits) -> Result<CupLengthResult> {
    let zd = zero_divisor_generators(a, limits)?;
    let gens: Vec<SparseVec> = zd.elements.iter().map(|e| e.terms().to_vec()).collect();
    let bound = product_length_bound(&zd.square);
    let out = longest_product(&zd.square, &gens, bound, limits.search_budget);
    Ok(CupLengthResult {
        value: out.length,
        witness: out.witness.iter().map(|&k| zd.elements[k].clone()).collect(),
        method: Method::Search,
        exact: out.complete,
    })
}

/// Degree-wise basis of the zero-divisor ideal `Z = ker(μ) ∩ (A⊗A)^{>0}`.
pub fn zero_divisor_ideal(a: &Algebra, square: &Algebra) -> Vec<Vec<SparseVec>> {
    let d = a.dim();
    let field = a.field();
    let top = square.top_degree();
    let mut out = vec![Vec::new(); top as usize + 1];
    for deg in 1..=top {
        let domain = square.basis_indices_in_degree(deg);
        if domain.is_empty() {
            continue;
        }
        let images: Vec<SparseVec> = domain.iter().map(|&k| a.mul_basis(k / d, k % d)).collect();
        out[deg as usize] = kernel(field, &images)
            .into_iter()
            .map(|v| v.into_iter().map(|(j, c)| (domain[j], c)).collect())
            .collect();
    }
    out
}

/// `zcl(A)`: nilpotency length of the zero-divisor ideal, by exact row
/// reduction of `Z^k` degree by degree (`Z^{k+1} = span(Z^k · Z)`).
pub fn zcl_full(a: &Algebra, limits: &Limits) -> Result<CupLengthResult> {
    let needed = a.dim().saturating_mul(a.dim());
    if needed > limits.zcl_full_max_dim {
        return Err(Error::capacity("zero-divisor ideal", needed, limits.zcl_full_max_dim)
            .with_hint("fall back to zcl-basic, which is a lower bound"));
    }
    let square = a.tensor_with_cap(a, limits.max_dim)?;
    let field = a.field();
    let top = square.top_degree() as usize;
    let z = zero_divisor_ideal(a, &square);

    // flat list of Z basis vectors with degrees
    let zlist: Vec<(usize, &SparseVec)> = z
        .iter()
        .enumerate()
        .flat_map(|(d, vs)| vs.iter().map(move |v| (d, v)))
        .collect();
    if zlist.is_empty() {
        return Ok(CupLengthResult {
            value: 0,
            witness: Vec::new(),
            method: Method::LinearAlgebra,
            exact: true,
        });
    }

    // level[k] = spanning products of Z^{k+1} with (parent in level k-1, z index)
    struct Stored {
        degree: usize,
        vec: SparseVec,
        parent: Option<usize>,
        z: usize,
    }
    let mut levels: Vec<Vec<Stored>> = vec![zlist
        .iter()
        .enumerate()
        .map(|(zi, (d, v))| Stored {
            degree: *d,
            vec: (*v).clone(),
            parent: None,
            z: zi,
        })
        .collect()];

    loop {
        let current = levels.last().expect("nonempty");
        let pairs: Vec<(usize, usize)> = current
            .iter()
            .enumerate()
            .flat_map(|(si, s)| {
                zlist
                    .iter()
                    .enumerate()
                    .filter(move |(_, (d, _))| s.degree + d <= top)
                    .map(move |(zi, _)| (si, zi))
            })
            .collect();
        let products: Vec<SparseVec> = pairs
            .par_iter()
            .map(|&(si, zi)| square.mul_vec(&current[si].vec, zlist[zi].1))
            .collect();
        let mut echelons: Vec<EchelonBasis> = (0..=top).map(|_| EchelonBasis::new(field)).collect();
        let mut next = Vec::new();
        for ((si, zi), p) in pairs.into_iter().zip(products) {
            if p.is_empty() {
                continue;
            }
            let degree = current[si].degree + zlist[zi].0;
            if echelons[degree].insert(&p) {
                next.push(Stored {
                    degree,
                    vec: p,
                    parent: Some(si),
                    z: zi,
                });
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort_by_key(|s| s.degree);
        levels.push(next);
    }

    let value = levels.len() as u32;
    let mut witness = Vec::with_capacity(levels.len());
    let mut idx = 0usize;
    for level in levels.iter().rev() {
        let s = &level[idx];
        witness.push(square.element(zlist[s.z].1.clone())?);
        match s.parent {
            Some(p) => idx = p,
            None => break,
        }
    }
    witness.reverse();
    Ok(CupLengthResult {
        value,
        witness,
        method: Method::LinearAlgebra,
        exact: true,
    })
}

/// Best available lower bound on `zcl(A)`: the full computation when the
/// tensor square is small enough, otherwise the basic search, otherwise
/// `cl(A)` (a product `u_1⋯u_r ≠ 0` gives `ū_1⋯ū_r ∋ 1⊗u_1⋯u_r`).
pub fn zcl_lower_bound(a: &Algebra, limits: &Limits) -> Result<CupLengthResult> {
    match zcl_full(a, limits) {
        Ok(r) => return Ok(r),
        Err(Error::Capacity { .. }) => {}
        Err(e) => return Err(e),
    }
    let cl = cup_length(a, limits)?;
    let cl_bound = CupLengthResult {
        value: cl.value,
        witness: Vec::new(),
        method: cl.method,
        exact: false,
    };
    let fits = a.dim().saturating_mul(a.dim()) <= limits.max_dim;
    if fits && a.generators().is_none() {
        let basic = zcl_basic(a, limits)?;
        if basic.value >= cl.value {
            return Ok(basic);
        }
    }
    Ok(cl_bound)
}

/// Brute-force oracle: largest `k ≤ max_len` such that some product of `k`
/// vectors from `span` is nonzero.
pub fn brute_force_cl(a: &Algebra, span: &[SparseVec], max_len: u32, budget: u64) -> Result<u32> {
    brute_force_power_length(a, span, span, max_len, budget)
}

/// Largest `k ≤ max_len` with `span(first) · span(multipliers)^{k−1} ≠ 0`.
///
/// Level `k` holds a maximal independent subset of all level-`(k−1)`
/// products with a multiplier, so it spans the `k`-th power; no degree
/// bookkeeping or search order is involved. `budget` caps the number of
/// products formed.
pub fn brute_force_power_length(
    a: &Algebra,
    first: &[SparseVec],
    multipliers: &[SparseVec],
    max_len: u32,
    budget: u64,
) -> Result<u32> {
    let field = a.field();
    let independent = |vs: &mut dyn Iterator<Item = SparseVec>| -> Vec<SparseVec> {
        let mut basis = EchelonBasis::new(field);
        vs.filter(|v| basis.insert(v)).collect()
    };
    let multipliers = independent(&mut multipliers.iter().cloned());
    let mut level = independent(&mut first.iter().cloned());
    let mut length = 0;
    let mut spent = 0u64;
    while !level.is_empty() && length < max_len {
        length += 1;
        if length == max_len {
            break;
        }
        let mut products = Vec::new();
        for x in &level {
            for v in &multipliers {
                spent += 1;
                if spent > budget {
                    return Err(Error::Budget { budget });
                }
                products.push(a.mul_vec(x, v));
            }
        }
        level = independent(&mut products.into_iter());
    }
    Ok(length)
}

/// Upper bound on the length of any nonzero product of positive-degree
/// elements: `Σ (q_i − 1)` for monomial algebras, the sum over factors for
/// tensor products, `top / min positive degree` otherwise.
pub fn product_length_bound(a: &Algebra) -> u32 {
    if let Some(gens) = a.generators() {
        return gens.iter().map(|g| g.truncation - 1).sum();
    }
    if let Some((x, y)) = a.factors() {
        return product_length_bound(x) + product_length_bound(y);
    }
    let min = a.positive_basis().iter().map(|&i| a.degree_of(i)).min().unwrap_or(1);
    a.top_degree() / min
}

struct SearchOutcome {
    length: u32,
    witness: Vec<usize>,
    complete: bool,
}

/// Longest nonzero product over multisets of `gens`, by depth-first
/// branch and bound.
///
/// Top-level branches run concurrently, each with its own node budget and
/// no shared pruning state, so the result does not depend on scheduling:
/// the longest product wins, ties go to the earliest branch.
fn longest_product(algebra: &Algebra, gens: &[SparseVec], bound: u32, budget: u64) -> SearchOutcome {
    let mut order: Vec<usize> = (0..gens.len()).filter(|&k| !gens[k].is_empty()).collect();
    let degree = |k: usize| algebra.degree_of(gens[k][0].0);
    order.sort_by_key(|&k| (degree(k), k));
    let degs: Vec<u32> = order.iter().map(|&k| degree(k)).collect();
    let top = algebra.top_degree();

    let branches: Vec<SearchOutcome> = (0..order.len())
        .into_par_iter()
        .map(|first| {
            let mut dfs = Dfs {
                algebra,
                gens,
                order: &order,
                degs: &degs,
                top,
                bound,
                budget,
                nodes: 0,
                best: 1,
                best_path: vec![first],
                path: vec![first],
                exhausted: false,
            };
            let start = gens[order[first]].clone();
            dfs.extend(&start, degs[first], first);
            SearchOutcome {
                length: dfs.best,
                witness: dfs.best_path.iter().map(|&p| order[p]).collect(),
                complete: !dfs.exhausted,
            }
        })
        .collect();

    let complete = branches.iter().all(|b| b.complete);
    let best = branches
        .into_iter()
        .reduce(|a, b| if b.length > a.length { b } else { a });
    match best {
        Some(b) => SearchOutcome { complete, ..b },
        None => SearchOutcome {
            length: 0,
            witness: Vec::new(),
            complete: true,
        },
    }
}

struct Dfs<'a> {
    algebra: &'a Algebra,
    gens: &'a [SparseVec],
    order: &'a [usize],
    degs: &'a [u32],
    top: u32,
    bound: u32,
    budget: u64,
    nodes: u64,
    best: u32,
    best_path: Vec<usize>,
    path: Vec<usize>,
    exhausted: bool,
}

impl Dfs<'_> {
    fn extend(&mut self, product: &SparseVec, degree: u32, last: usize) {
        let depth = self.path.len() as u32;
        for next in last..self.order.len() {
            if self.best >= self.bound || self.exhausted {
                return;
            }
            let d = self.degs[next];
            if degree + d > self.top {
                // candidates are sorted by degree
                return;
            }
            // every further factor has degree >= d
            let reachable = depth + (self.top - degree) / d;
            if reachable <= self.best {
                return;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                self.exhausted = true;
                return;
            }
            let p = self.algebra.mul_vec(product, &self.gens[self.order[next]]);
            if p.is_empty() {
                continue;
            }
            self.path.push(next);
            if depth + 1 > self.best {
                self.best = depth + 1;
                self.best_path = self.path.clone();
            }
            self.extend(&p, degree + d, next);
            self.path.pop();
        }
    }
}
