//! Finite-dimensional graded-commutative unital algebras over an exact field.
//!
//! Two user-facing encodings are supported:
//!
//! * **monomial**: a tensor product of truncated polynomial algebras
//!   `K[x_1]/(x_1^{q_1}) ⊗ … ⊗ K[x_r]/(x_r^{q_r})`. The basis is the set of
//!   exponent vectors `e` with `0 ≤ e_i < q_i`, ordered lexicographically with
//!   the first declared generator most significant. Products of basis
//!   monomials carry the Koszul sign obtained by counting transpositions of
//!   odd-degree generator factors.
//! * **table**: an explicit graded basis with structure constants for every
//!   ordered pair of basis elements.
//!
//! Tensor products of two monomial algebras are again monomial (generator
//! lists concatenate). Any other tensor product is kept as a lazy product of
//! its two factors, with `(a⊗b)(a'⊗b') = (-1)^{|b||a'|} aa' ⊗ bb'`.
//!
//! Algebras are immutable and cheap to clone; elements keep a handle on the
//! algebra they live in.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// Default refusal threshold for the dimension of a single algebra.
pub const DEFAULT_MAX_DIM: usize = 4096;

/// Sparse vector in basis coordinates: sorted by index, no zero coefficients.
pub type SparseVec = Vec<(usize, Scalar)>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: u32,
    /// The relation `x^truncation = 0`.
    pub truncation: u32,
}

impl GeneratorSpec {
    pub fn new(name: impl Into<String>, degree: u32, truncation: u32) -> Self {
        GeneratorSpec {
            name: name.into(),
            degree,
            truncation,
        }
    }

    /// An exterior generator (`x^2 = 0`).
    pub fn exterior(name: impl Into<String>, degree: u32) -> Self {
        Self::new(name, degree, 2)
    }
}

#[derive(Clone)]
pub struct Algebra {
    inner: Arc<Inner>,
}

struct Inner {
    field: FieldSpec,
    encoding: Encoding,
    degrees: Vec<u32>,
    by_degree: Vec<Vec<usize>>,
    top_degree: u32,
    names: Vec<String>,
    factors: Option<(Algebra, Algebra)>,
}

enum Encoding {
    Monomial(Monomial),
    Table(Table),
    Tensor(Algebra, Algebra),
}

struct Monomial {
    gens: Vec<GeneratorSpec>,
    odd: Vec<bool>,
    strides: Vec<usize>,
    exponents: Vec<Vec<u32>>,
}

struct Table {
    // row-major, dim * dim entries
    products: Vec<SparseVec>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("field", &self.inner.field)
            .field("encoding", &self.encoding_name())
            .field("dim", &self.dim())
            .field("top_degree", &self.inner.top_degree)
            .finish()
    }
}

fn index_by_degree(degrees: &[u32]) -> (Vec<Vec<usize>>, u32) {
    let top = degrees.iter().copied().max().unwrap_or(0);
    let mut by_degree = vec![Vec::new(); top as usize + 1];
    for (i, &d) in degrees.iter().enumerate() {
        by_degree[d as usize].push(i);
    }
    (by_degree, top)
}

fn monomial_name(gens: &[GeneratorSpec], exps: &[u32]) -> String {
    let parts: Vec<String> = gens
        .iter()
        .zip(exps)
        .filter(|(_, &e)| e > 0)
        .map(|(g, &e)| {
            if e == 1 {
                g.name.clone()
            } else {
                format!("{}^{}", g.name, e)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Accumulates `coeff * e_index` into a sparse map, dropping zeros.
fn accumulate(field: &FieldSpec, acc: &mut BTreeMap<usize, Scalar>, index: usize, coeff: Scalar) {
    use std::collections::btree_map::Entry;
    match acc.entry(index) {
        Entry::Vacant(v) => {
            if !field.is_zero(&coeff) {
                v.insert(coeff);
            }
        }
        Entry::Occupied(mut o) => {
            let sum = field.add(o.get(), &coeff);
            if field.is_zero(&sum) {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}

impl Algebra {
    /// The ground field viewed as an algebra concentrated in degree 0.
    pub fn ground(field: FieldSpec) -> Algebra {
        Self::monomial(field, Vec::new()).expect("empty presentation is valid")
    }

    pub fn monomial(field: FieldSpec, gens: Vec<GeneratorSpec>) -> Result<Algebra> {
        Self::monomial_with_cap(field, gens, DEFAULT_MAX_DIM)
    }

    pub fn monomial_with_cap(field: FieldSpec, gens: Vec<GeneratorSpec>, max_dim: usize) -> Result<Algebra> {
        Self::build_monomial(field, gens, max_dim, None)
    }

    fn build_monomial(
        field: FieldSpec,
        gens: Vec<GeneratorSpec>,
        max_dim: usize,
        factors: Option<(Algebra, Algebra)>,
    ) -> Result<Algebra> {
        let mut dim: usize = 1;
        for g in &gens {
            if g.degree == 0 {
                return Err(Error::InvalidPresentation(format!(
                    "generator {} has degree 0; degrees must be positive",
                    g.name
                )));
            }
            if g.truncation < 2 {
                return Err(Error::InvalidPresentation(format!(
                    "generator {} has truncation {}; need at least 2",
                    g.name, g.truncation
                )));
            }
            if !field.is_char_two() && g.degree % 2 == 1 && g.truncation != 2 {
                return Err(Error::InvalidPresentation(format!(
                    "generator {} has odd degree {} over {}; graded commutativity forces \
                     truncation 2, got {}",
                    g.name, g.degree, field, g.truncation
                )));
            }
            dim = dim
                .checked_mul(g.truncation as usize)
                .filter(|&d| d <= max_dim)
                .ok_or_else(|| {
                    let needed = gens
                        .iter()
                        .try_fold(1usize, |a, g| a.checked_mul(g.truncation as usize))
                        .unwrap_or(usize::MAX);
                    Error::capacity("monomial algebra", needed, max_dim)
                })?;
        }

        let mut strides = vec![1usize; gens.len()];
        for k in (0..gens.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * gens[k + 1].truncation as usize;
        }
        let mut exponents = Vec::with_capacity(dim);
        let mut degrees = Vec::with_capacity(dim);
        let mut names = Vec::with_capacity(dim);
        for idx in 0..dim {
            let exps: Vec<u32> = gens
                .iter()
                .zip(&strides)
                .map(|(g, &s)| ((idx / s) % g.truncation as usize) as u32)
                .collect();
            degrees.push(gens.iter().zip(&exps).map(|(g, &e)| g.degree * e).sum());
            names.push(monomial_name(&gens, &exps));
            exponents.push(exps);
        }
        let (by_degree, top_degree) = index_by_degree(&degrees);
        let odd = gens.iter().map(|g| g.degree % 2 == 1).collect();
        Ok(Algebra {
            inner: Arc::new(Inner {
                field,
                encoding: Encoding::Monomial(Monomial {
                    gens,
                    odd,
                    strides,
                    exponents,
                }),
                degrees,
                by_degree,
                top_degree,
                names,
                factors,
            }),
        })
    }

    /// Builds a table-encoded algebra and validates unitality, grading,
    /// graded commutativity and associativity.
    ///
    /// `basis[0]` must be the unit (degree 0); products involving it may be
    /// omitted and are filled in. Any other absent product is zero.
    pub fn table(
        field: FieldSpec,
        basis: Vec<(String, u32)>,
        products: Vec<(usize, usize, usize, Scalar)>,
    ) -> Result<Algebra> {
        Self::table_with_cap(field, basis, products, DEFAULT_MAX_DIM)
    }

    pub fn table_with_cap(
        field: FieldSpec,
        basis: Vec<(String, u32)>,
        products: Vec<(usize, usize, usize, Scalar)>,
        max_dim: usize,
    ) -> Result<Algebra> {
        let dim = basis.len();
        if dim == 0 {
            return Err(Error::InvalidPresentation("empty basis".into()));
        }
        if dim > max_dim {
            return Err(Error::capacity("table algebra", dim, max_dim));
        }
        if basis[0].1 != 0 {
            return Err(Error::InvalidPresentation(format!(
                "first basis element {} must be the unit in degree 0",
                basis[0].0
            )));
        }
        if let Some((name, _)) = basis.iter().skip(1).find(|(_, d)| *d == 0) {
            return Err(Error::InvalidPresentation(format!(
                "basis element {name} has degree 0; only the unit may (connected algebras only)"
            )));
        }
        for (i, (name, _)) in basis.iter().enumerate() {
            if basis[..i].iter().any(|(n, _)| n == name) {
                return Err(Error::InvalidPresentation(format!("duplicate basis name {name}")));
            }
        }

        let mut acc: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); dim * dim];
        let mut given = vec![false; dim * dim];
        for (x, y, z, c) in products {
            if x >= dim || y >= dim || z >= dim {
                return Err(Error::InvalidPresentation(format!(
                    "product ({x},{y}) -> {z} references an index outside the basis"
                )));
            }
            if field.is_zero(&c) {
                given[x * dim + y] = true;
                continue;
            }
            if basis[x].1 + basis[y].1 != basis[z].1 {
                return Err(Error::InvalidPresentation(format!(
                    "product {}*{} -> {} breaks the grading ({} + {} != {})",
                    basis[x].0, basis[y].0, basis[z].0, basis[x].1, basis[y].1, basis[z].1
                )));
            }
            given[x * dim + y] = true;
            accumulate(&field, &mut acc[x * dim + y], z, c);
        }
        for i in 0..dim {
            for idx in [i, i * dim] {
                if !given[idx] {
                    acc[idx].insert(i, field.one());
                }
            }
        }
        let products: Vec<SparseVec> = acc.into_iter().map(|m| m.into_iter().collect()).collect();

        let degrees: Vec<u32> = basis.iter().map(|(_, d)| *d).collect();
        let names = basis.into_iter().map(|(n, _)| n).collect();
        let (by_degree, top_degree) = index_by_degree(&degrees);
        let algebra = Algebra {
            inner: Arc::new(Inner {
                field,
                encoding: Encoding::Table(Table { products }),
                degrees,
                by_degree,
                top_degree,
                names,
                factors: None,
            }),
        };
        algebra.check_axioms()?;
        Ok(algebra)
    }

    /// Graded tensor product `self ⊗ other`.
    pub fn tensor(&self, other: &Algebra) -> Result<Algebra> {
        self.tensor_with_cap(other, DEFAULT_MAX_DIM)
    }

    pub fn tensor_with_cap(&self, other: &Algebra, max_dim: usize) -> Result<Algebra> {
        if self.field() != other.field() {
            return Err(Error::Domain(format!(
                "cannot tensor algebras over {} and {}",
                self.field(),
                other.field()
            )));
        }
        let dim = self.dim().saturating_mul(other.dim());
        if dim > max_dim {
            return Err(Error::capacity("tensor product", dim, max_dim));
        }
        let factors = Some((self.clone(), other.clone()));
        if let (Some(a), Some(b)) = (self.generators(), other.generators()) {
            let gens = a.iter().chain(b).cloned().collect();
            return Self::build_monomial(self.field(), gens, max_dim, factors);
        }
        let db = other.dim();
        let mut degrees = Vec::with_capacity(dim);
        let mut names = Vec::with_capacity(dim);
        for i in 0..dim {
            let (a, b) = (i / db, i % db);
            degrees.push(self.degree_of(a) + other.degree_of(b));
            names.push(format!("{}⊗{}", self.basis_name(a), other.basis_name(b)));
        }
        let (by_degree, top_degree) = index_by_degree(&degrees);
        Ok(Algebra {
            inner: Arc::new(Inner {
                field: self.field(),
                encoding: Encoding::Tensor(self.clone(), other.clone()),
                degrees,
                by_degree,
                top_degree,
                names,
                factors,
            }),
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.inner.field
    }

    pub fn dim(&self) -> usize {
        self.inner.degrees.len()
    }

    pub fn top_degree(&self) -> u32 {
        self.inner.top_degree
    }

    pub fn degree_of(&self, index: usize) -> u32 {
        self.inner.degrees[index]
    }

    pub fn basis_name(&self, index: usize) -> String {
        match &self.inner.factors {
            Some((a, b)) => {
                let db = b.dim();
                format!("{}⊗{}", a.basis_name(index / db), b.basis_name(index % db))
            }
            None => self.inner.names[index].clone(),
        }
    }

    pub fn encoding_name(&self) -> &'static str {
        match self.inner.encoding {
            Encoding::Monomial(_) => "monomial",
            Encoding::Table(_) => "table",
            Encoding::Tensor(..) => "tensor",
        }
    }

    /// Generator list when the algebra is monomial-encoded.
    pub fn generators(&self) -> Option<&[GeneratorSpec]> {
        match &self.inner.encoding {
            Encoding::Monomial(m) => Some(&m.gens),
            _ => None,
        }
    }

    /// Exponent vector of a basis monomial (monomial encoding only).
    pub fn exponents(&self, index: usize) -> Option<&[u32]> {
        match &self.inner.encoding {
            Encoding::Monomial(m) => Some(&m.exponents[index]),
            _ => None,
        }
    }

    /// The two factors when this algebra was built by [`Algebra::tensor`].
    pub fn factors(&self) -> Option<(&Algebra, &Algebra)> {
        self.inner.factors.as_ref().map(|(a, b)| (a, b))
    }

    /// Handle identity: two handles denote the same algebra.
    pub fn same(&self, other: &Algebra) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }

    pub fn basis_indices_in_degree(&self, d: u32) -> &[usize] {
        self.inner
            .by_degree
            .get(d as usize)
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    pub fn basis_in_degree(&self, d: u32) -> Vec<Element> {
        self.basis_indices_in_degree(d)
            .iter()
            .map(|&i| self.basis_element(i))
            .collect()
    }

    /// Basis counts per degree, index = degree.
    pub fn poincare_polynomial(&self) -> Vec<u64> {
        self.inner.by_degree.iter().map(|v| v.len() as u64).collect()
    }

    /// Indices of all positive-degree basis elements, in basis order.
    pub fn positive_basis(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degree_of(i) > 0).collect()
    }

    pub fn basis_element(&self, index: usize) -> Element {
        Element {
            algebra: self.clone(),
            terms: vec![(index, self.field().one())],
        }
    }

    pub fn one(&self) -> Element {
        self.basis_element(0)
    }

    pub fn zero(&self) -> Element {
        Element {
            algebra: self.clone(),
            terms: Vec::new(),
        }
    }

    /// Element from raw terms; zero coefficients are dropped and duplicates summed.
    pub fn element(&self, terms: impl IntoIterator<Item = (usize, Scalar)>) -> Result<Element> {
        let field = self.field();
        let mut acc = BTreeMap::new();
        for (i, c) in terms {
            if i >= self.dim() {
                return Err(Error::Domain(format!(
                    "basis index {i} out of range for dimension {}",
                    self.dim()
                )));
            }
            accumulate(&field, &mut acc, i, c);
        }
        Ok(Element {
            algebra: self.clone(),
            terms: acc.into_iter().collect(),
        })
    }

    /// The named generator of a monomial algebra (first match).
    pub fn generator(&self, name: &str) -> Option<Element> {
        let m = match &self.inner.encoding {
            Encoding::Monomial(m) => m,
            _ => {
                return (0..self.dim())
                    .find(|&i| self.inner.names[i] == name)
                    .map(|i| self.basis_element(i))
            }
        };
        let k = m.gens.iter().position(|g| g.name == name)?;
        Some(self.basis_element(m.strides[k]))
    }

    /// Index of a basis element by its display name.
    pub fn basis_index(&self, name: &str) -> Option<usize> {
        (0..self.dim()).find(|&i| self.basis_name(i) == name)
    }

    /// Product of two basis elements as a sparse vector.
    pub fn mul_basis(&self, i: usize, j: usize) -> SparseVec {
        let field = self.field();
        match &self.inner.encoding {
            Encoding::Monomial(m) => {
                let (a, b) = (&m.exponents[i], &m.exponents[j]);
                let mut index = 0usize;
                for k in 0..a.len() {
                    let e = a[k] + b[k];
                    if e >= m.gens[k].truncation {
                        return Vec::new();
                    }
                    index += e as usize * m.strides[k];
                }
                // Moving factor k of the right operand past factors l > k of
                // the left operand costs (-1)^{b_k a_l} when both are odd.
                let mut odd_suffix = 0u32;
                let mut parity = 0u32;
                for k in (0..a.len()).rev() {
                    if m.odd[k] {
                        parity ^= (b[k] & 1) & (odd_suffix & 1);
                        odd_suffix += a[k];
                    }
                }
                vec![(index, field.sign(parity == 1))]
            }
            Encoding::Table(t) => t.products[i * self.dim() + j].clone(),
            Encoding::Tensor(left, right) => {
                let db = right.dim();
                let (ia, ib) = (i / db, i % db);
                let (ja, jb) = (j / db, j % db);
                let lp = left.mul_basis(ia, ja);
                if lp.is_empty() {
                    return Vec::new();
                }
                let rp = right.mul_basis(ib, jb);
                if rp.is_empty() {
                    return Vec::new();
                }
                let negative = (right.degree_of(ib) * left.degree_of(ja)) % 2 == 1;
                let sign = field.sign(negative);
                let mut out = Vec::with_capacity(lp.len() * rp.len());
                for (a, ca) in &lp {
                    let sca = field.mul(&sign, ca);
                    for (b, cb) in &rp {
                        let c = field.mul(&sca, cb);
                        if !field.is_zero(&c) {
                            out.push((a * db + b, c));
                        }
                    }
                }
                out
            }
        }
    }

    /// Product of two sparse vectors.
    pub fn mul_vec(&self, x: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> SparseVec {
        let field = self.field();
        let top = self.top_degree();
        let mut acc = BTreeMap::new();
        for (i, ci) in x {
            let di = self.degree_of(*i);
            for (j, cj) in y {
                if di + self.degree_of(*j) > top {
                    continue;
                }
                let cij = field.mul(ci, cj);
                for (k, ck) in self.mul_basis(*i, *j) {
                    accumulate(&field, &mut acc, k, field.mul(&cij, &ck));
                }
            }
        }
        acc.into_iter().collect()
    }

    /// Checks unitality, grading, graded commutativity on all basis pairs and
    /// associativity on all basis triples whose degrees fit below the top degree.
    pub fn check_axioms(&self) -> Result<()> {
        let field = self.field();
        let dim = self.dim();
        let top = self.top_degree();
        for i in 0..dim {
            let unit = vec![(i, field.one())];
            if self.mul_basis(0, i) != unit || self.mul_basis(i, 0) != unit {
                return Err(Error::InvalidPresentation(format!(
                    "unit axiom fails for {}",
                    self.basis_name(i)
                )));
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                let xy = self.mul_basis(i, j);
                let d = self.degree_of(i) + self.degree_of(j);
                if let Some((k, _)) = xy.iter().find(|(k, _)| self.degree_of(*k) != d) {
                    return Err(Error::InvalidPresentation(format!(
                        "{}*{} has a component {} outside degree {d}",
                        self.basis_name(i),
                        self.basis_name(j),
                        self.basis_name(*k)
                    )));
                }
                let negative = (self.degree_of(i) * self.degree_of(j)) % 2 == 1;
                let sign = field.sign(negative);
                let yx: SparseVec = self
                    .mul_basis(j, i)
                    .into_iter()
                    .map(|(k, c)| (k, field.mul(&sign, &c)))
                    .collect();
                if xy != yx {
                    return Err(Error::InvalidPresentation(format!(
                        "graded commutativity fails for the pair ({}, {})",
                        self.basis_name(i),
                        self.basis_name(j)
                    )));
                }
            }
        }
        for i in 1..dim {
            for j in 1..dim {
                let dij = self.degree_of(i) + self.degree_of(j);
                if dij > top {
                    continue;
                }
                let xy = self.mul_basis(i, j);
                for k in 1..dim {
                    if dij + self.degree_of(k) > top {
                        continue;
                    }
                    let left = self.mul_vec(&xy, &[(k, field.one())]);
                    let yz = self.mul_basis(j, k);
                    let right = self.mul_vec(&[(i, field.one())], &yz);
                    if left != right {
                        return Err(Error::InvalidPresentation(format!(
                            "associativity fails for the triple ({}, {}, {})",
                            self.basis_name(i),
                            self.basis_name(j),
                            self.basis_name(k)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A sparse linear combination of basis elements of a fixed algebra.
#[derive(Clone)]
pub struct Element {
    algebra: Algebra,
    terms: SparseVec,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.same(&other.algebra) && self.terms == other.terms
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}

impl Element {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn terms(&self) -> &[(usize, Scalar)] {
        &self.terms
    }

    pub fn into_terms(self) -> SparseVec {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, index: usize) -> Scalar {
        self.terms
            .iter()
            .find(|(i, _)| *i == index)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.algebra.field().zero())
    }

    /// Common degree of all terms, `None` for zero or inhomogeneous elements.
    pub fn degree(&self) -> Option<u32> {
        let mut degs = self.terms.iter().map(|(i, _)| self.algebra.degree_of(*i));
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    fn check_same(&self, other: &Element) -> Result<()> {
        if self.algebra.same(&other.algebra) {
            Ok(())
        } else {
            Err(Error::Domain("operands belong to different algebras".to_string()))
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        self.algebra.element(self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        self.scale(&self.algebra.field().from_i64(-1))
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        let field = self.algebra.field();
        Element {
            algebra: self.algebra.clone(),
            terms: self
                .terms
                .iter()
                .map(|(i, a)| (*i, field.mul(a, c)))
                .filter(|(_, a)| !field.is_zero(a))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        Ok(Element {
            algebra: self.algebra.clone(),
            terms: self.algebra.mul_vec(&self.terms, &other.terms),
        })
    }

    pub fn pow(&self, k: u32) -> Element {
        let mut acc = self.algebra.one();
        for _ in 0..k {
            acc = acc.mul(self).expect("same algebra");
        }
        acc
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (i, c)) in self.terms.iter().enumerate() {
            let name = self.algebra.basis_name(*i);
            let (neg, mag) = if c.is_negative() {
                (true, self.algebra.field().neg(c))
            } else {
                (false, c.clone())
            };
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mag.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{mag}*{name}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    #[test]
    fn exterior_on_two_degree_one_generators_anticommutes() {
        let a = Algebra::monomial(
            q(),
            vec![GeneratorSpec::exterior("a", 1), GeneratorSpec::exterior("b", 1)],
        )
        .unwrap();
        let x = a.generator("a").unwrap();
        let y = a.generator("b").unwrap();
        assert_eq!(y.mul(&x).unwrap(), x.mul(&y).unwrap().neg());
        assert!(x.mul(&x).unwrap().is_zero());
    }

    #[test]
    fn truncation_kills_high_powers() {
        let a = Algebra::monomial(FieldSpec::f2(), vec![GeneratorSpec::new("b", 1, 4)]).unwrap();
        let b = a.generator("b").unwrap();
        assert!(b.mul(&b.pow(3)).unwrap().is_zero());
        assert_eq!(b.mul(&b.pow(2)).unwrap(), b.pow(3));
        assert_eq!(a.basis_name(3), "b^3");
    }

    #[test]
    fn so5_rational_presentation() {
        let a = Algebra::monomial(
            q(),
            vec![GeneratorSpec::exterior("a3", 3), GeneratorSpec::exterior("a7", 7)],
        )
        .unwrap();
        assert_eq!(a.dim(), 4);
        assert_eq!(a.top_degree(), 10);
    }

    #[test]
    fn ground_field_has_dimension_one() {
        let a = Algebra::ground(FieldSpec::f2());
        assert_eq!(a.dim(), 1);
        assert_eq!(a.top_degree(), 0);
    }

    #[test]
    fn odd_generator_must_be_exterior_outside_char_two() {
        let err = Algebra::monomial(q(), vec![GeneratorSpec::new("x", 1, 3)]).unwrap_err();
        assert!(matches!(err, Error::InvalidPresentation(_)));
        assert!(Algebra::monomial(FieldSpec::f2(), vec![GeneratorSpec::new("x", 1, 3)]).is_ok());
    }

    #[test]
    fn capacity_cap_is_enforced() {
        let gens = (0..13).map(|i| GeneratorSpec::exterior(format!("u{i}"), 1)).collect();
        let err = Algebra::monomial(FieldSpec::f2(), gens).unwrap_err();
        assert!(matches!(err, Error::Capacity { needed: 8192, .. }));
    }

    #[test]
    fn table_rejects_non_commuting_products() {
        let basis = vec![
            ("1".to_string(), 0),
            ("a".to_string(), 1),
            ("b".to_string(), 1),
            ("w".to_string(), 2),
        ];
        let f = q();
        // a*b = w and b*a = w: should be b*a = -w.
        let err = Algebra::table(f, basis, vec![(1, 2, 3, f.one()), (2, 1, 3, f.one())]).unwrap_err();
        match err {
            Error::InvalidPresentation(msg) => assert!(msg.contains("(a, b)"), "{msg}"),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn table_sphere() {
        let a = Algebra::table(q(), vec![("1".into(), 0), ("u".into(), 2)], vec![]).unwrap();
        let u = a.basis_element(1);
        assert!(u.mul(&u).unwrap().is_zero());
    }

    #[test]
    fn table_rejects_grading_violation() {
        let f = q();
        let err = Algebra::table(
            f,
            vec![("1".into(), 0), ("u".into(), 1), ("v".into(), 3)],
            vec![(1, 1, 2, f.one())],
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidPresentation(_)));
    }

    #[test]
    fn mixed_algebra_operands_are_rejected() {
        let a = Algebra::ground(q());
        let b = Algebra::ground(q());
        assert!(matches!(a.one().mul(&b.one()), Err(Error::Domain(_))));
    }

    #[test]
    fn tensor_field_mismatch() {
        let a = Algebra::ground(q());
        let b = Algebra::ground(FieldSpec::f2());
        assert!(matches!(a.tensor(&b), Err(Error::Domain(_))));
    }

    #[test]
    fn tensor_of_exterior_classes_poincare() {
        let a = Algebra::monomial(q(), vec![GeneratorSpec::exterior("a", 3)]).unwrap();
        let t = a.tensor(&a).unwrap();
        assert_eq!(t.dim(), 4);
        assert_eq!(t.poincare_polynomial(), vec![1, 0, 0, 2, 0, 0, 1]);
        assert_eq!(t.basis_name(1), "1⊗a");
    }

    #[test]
    fn lazy_tensor_sign() {
        // table-encoded circle, tensored with itself: (1⊗u)(u⊗1) = -(u⊗u)
        let s1 = Algebra::table(q(), vec![("1".into(), 0), ("u".into(), 1)], vec![]).unwrap();
        let t = s1.tensor(&s1).unwrap();
        assert_eq!(t.encoding_name(), "tensor");
        let a = t.basis_element(1);
        let b = t.basis_element(2);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab, t.basis_element(3).neg());
        t.check_axioms().unwrap();
    }

    #[test]
    fn display_elements() {
        let a = Algebra::monomial(q(), vec![GeneratorSpec::new("u", 2, 3)]).unwrap();
        let u = a.generator("u").unwrap();
        let x = a.one().sub(&u.scale(&q().from_i64(2))).unwrap();
        assert_eq!(x.to_string(), "1 - 2*u");
        assert_eq!(a.zero().to_string(), "0");
    }
}
