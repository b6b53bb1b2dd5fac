//! Real functions and subsets on `G × G`, and vectors for the
//! representation-theoretic checks.
//!
//! All inner products and norms average over the domain, so the constant
//! function `1` has norm `1`.

use alloc::vec;
use alloc::vec::Vec;

use serde::Serialize;

use crate::group::{GroupTable, SubsetG};
use crate::math::{self, BOUND_SLACK};
use crate::rng::{self, Rng};
use crate::{BitSet, Error, Fraction, Result};

/// A real function on `G × G`, stored row-major: `data[x·n + y] = f(x, y)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FunctionGG {
    n: usize,
    data: Vec<f64>,
    range: (f64, f64),
}

pub const SIGNED_RANGE: (f64, f64) = (-1.0, 1.0);

impl FunctionGG {
    /// Builds a function with the default range `[-1, 1]`.
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        Self::with_range(n, data, SIGNED_RANGE)
    }

    pub fn with_range(n: usize, data: Vec<f64>, range: (f64, f64)) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::DomainMismatch("function length is not n^2"));
        }
        if let Some(&v) = data
            .iter()
            .find(|&&v| !(v >= range.0 - BOUND_SLACK && v <= range.1 + BOUND_SLACK))
        {
            return Err(Error::RangeViolation {
                what: "function on G×G",
                value: v,
            });
        }
        Ok(FunctionGG { n, data, range })
    }

    /// Unchecked constructor with an unbounded declared range.
    pub fn unbounded(n: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), n * n);
        FunctionGG {
            n,
            data,
            range: (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                data.push(f(x, y));
            }
        }
        Self::unbounded(n, data)
    }

    pub fn zeros(n: usize) -> Self {
        Self::constant(n, 0.0)
    }

    pub fn constant(n: usize, c: f64) -> Self {
        Self::unbounded(n, vec![c; n * n])
    }

    /// Independent uniform `±1` entries.
    pub fn random_signs(n: usize, seed: u64) -> Self {
        let mut r = rng::rng(seed);
        Self::from_fn(n, |_, _| rng::sign(&mut r))
    }

    /// Independent uniform entries in `[-1, 1)`.
    pub fn random_uniform(n: usize, seed: u64) -> Self {
        let mut r = rng::rng(seed);
        Self::from_fn(n, |_, _| rng::symmetric_unit(&mut r))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.data[x * self.n + y]
    }

    #[inline]
    pub fn row(&self, x: usize) -> &[f64] {
        &self.data[x * self.n..(x + 1) * self.n]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn range(&self) -> (f64, f64) {
        self.range
    }

    /// Re-declares the range, checking every entry.
    pub fn checked_range(self, range: (f64, f64)) -> Result<Self> {
        Self::with_range(self.n, self.data, range)
    }

    /// Checks that every entry lies in `[-1, 1]` (with slack).
    pub fn ensure_signed(&self, what: &'static str) -> Result<()> {
        match self.data.iter().find(|v| v.abs() > 1.0 + BOUND_SLACK) {
            Some(&value) => Err(Error::RangeViolation { what, value }),
            None => Ok(()),
        }
    }

    pub fn mean(&self) -> f64 {
        math::mean(&self.data)
    }

    /// `⟨f, g⟩ = avg f·g`
    pub fn inner(&self, other: &FunctionGG) -> f64 {
        debug_assert_eq!(self.n, other.n);
        self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum::<f64>() / self.data.len() as f64
    }

    pub fn l2_norm(&self) -> f64 {
        math::sqrt(self.inner(self))
    }

    pub fn sup_norm(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn l1_norm(&self) -> f64 {
        self.data.iter().map(|v| v.abs()).sum::<f64>() / self.data.len() as f64
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self::unbounded(self.n, self.data.iter().map(|&v| f(v)).collect())
    }

    pub fn zip_with(&self, other: &FunctionGG, f: impl Fn(f64, f64) -> f64) -> Self {
        assert_eq!(self.n, other.n);
        Self::unbounded(
            self.n,
            self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        )
    }

    pub fn sub(&self, other: &FunctionGG) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn pointwise_mul(&self, other: &FunctionGG) -> Self {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn max_abs_diff(&self, other: &FunctionGG) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// `f∘S^h : (x, y) ↦ f(h·x, y)`
    pub fn compose_s(&self, g: &GroupTable, h: usize) -> Self {
        let row = g.row(h);
        Self::from_fn(self.n, |x, y| self.get(row[x] as usize, y))
    }

    /// `f∘T^h : (x, y) ↦ f(x, h·y)`
    pub fn compose_t(&self, g: &GroupTable, h: usize) -> Self {
        let row = g.row(h);
        Self::from_fn(self.n, |x, y| self.get(x, row[y] as usize))
    }

    /// `f∘(ST)^h : (x, y) ↦ f(h·x, h·y)`
    pub fn compose_st(&self, g: &GroupTable, h: usize) -> Self {
        let row = g.row(h);
        Self::from_fn(self.n, |x, y| self.get(row[x] as usize, row[y] as usize))
    }
}

/// A subset of `G × G` as a bit matrix (row `x`, column `y`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsetGG {
    n: usize,
    rows: Vec<BitSet>,
    cardinality: usize,
}

impl SubsetGG {
    pub fn from_rows(rows: Vec<BitSet>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DomainMismatch("bit matrix is not square"));
        }
        let cardinality = rows.iter().map(BitSet::count).sum();
        Ok(SubsetGG { n, rows, cardinality })
    }

    pub fn from_fn(n: usize, mut member: impl FnMut(usize, usize) -> bool) -> Self {
        let rows = (0..n)
            .map(|x| BitSet::from_indices(n, (0..n).filter(|&y| member(x, y))))
            .collect();
        Self::from_rows(rows).unwrap()
    }

    pub fn empty(n: usize) -> Self {
        Self::from_fn(n, |_, _| false)
    }

    pub fn full(n: usize) -> Self {
        Self::from_fn(n, |_, _| true)
    }

    /// Independent Bernoulli(`density`) cells drawn in row-major order.
    pub fn random(n: usize, density: f64, seed: u64) -> Self {
        let mut r = rng::rng(seed);
        Self::from_fn(n, |_, _| r.random::<f64>() < density)
    }

    /// `U × V`
    pub fn product(u: &SubsetG, v: &SubsetG) -> Result<Self> {
        if u.group_order() != v.group_order() {
            return Err(Error::DomainMismatch("product factors differ in order"));
        }
        Ok(Self::from_fn(u.group_order(), |x, y| u.contains(x) && v.contains(y)))
    }

    /// Union of the graphs `{(x, h·x)}` over the given `h`.
    pub fn translation_graphs(g: &GroupTable, hs: &[usize]) -> Result<Self> {
        for &h in hs {
            g.check_index(h)?;
        }
        let n = g.order();
        let mut rows = vec![BitSet::new(n); n];
        for &h in hs {
            for (x, row) in rows.iter_mut().enumerate() {
                row.insert(g.mul(h, x));
            }
        }
        Self::from_rows(rows)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn row(&self, x: usize) -> &BitSet {
        &self.rows[x]
    }

    pub fn rows(&self) -> &[BitSet] {
        &self.rows
    }

    #[inline]
    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.rows[x].contains(y)
    }

    pub fn cardinality(&self) -> usize {
        self.cardinality
    }

    /// `|E| / n²`
    pub fn density(&self) -> Fraction {
        Fraction::new(self.cardinality as u64, (self.n * self.n) as u64)
    }

    pub fn is_subset(&self, other: &SubsetGG) -> bool {
        self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(b))
    }

    /// `1_E` with declared range `[0, 1]`.
    pub fn indicator(&self) -> FunctionGG {
        let f = FunctionGG::from_fn(self.n, |x, y| if self.contains(x, y) { 1.0 } else { 0.0 });
        f.checked_range((0.0, 1.0)).unwrap()
    }
}

/// Where a [`RepVector`] lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    /// Functions on a group of the given order.
    G(usize),
    /// Functions on `G × G` for a group of the given order.
    GG(usize),
    /// A plain coordinate space of the given dimension.
    Plain(usize),
}

impl Domain {
    pub fn len(&self) -> usize {
        match *self {
            Domain::G(n) | Domain::Plain(n) => n,
            Domain::GG(n) => n * n,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A real vector with the averaging inner product of its domain.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RepVector {
    pub domain: Domain,
    pub data: Vec<f64>,
}

impl RepVector {
    pub fn new(domain: Domain, data: Vec<f64>) -> Result<Self> {
        if data.len() != domain.len() {
            return Err(Error::DomainMismatch("vector length does not match its domain"));
        }
        Ok(RepVector { domain, data })
    }

    pub fn on_group(data: Vec<f64>) -> Self {
        RepVector {
            domain: Domain::G(data.len()),
            data,
        }
    }

    pub fn plain(data: Vec<f64>) -> Self {
        RepVector {
            domain: Domain::Plain(data.len()),
            data,
        }
    }

    pub fn from_function(f: &FunctionGG) -> Self {
        RepVector {
            domain: Domain::GG(f.n()),
            data: f.data().to_vec(),
        }
    }

    pub fn to_function(&self) -> Result<FunctionGG> {
        match self.domain {
            Domain::GG(n) => Ok(FunctionGG::unbounded(n, self.data.clone())),
            _ => Err(Error::DomainMismatch("not a function on G×G")),
        }
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn inner(&self, other: &RepVector) -> Result<f64> {
        if self.domain != other.domain {
            return Err(Error::DomainMismatch("inner product across domains"));
        }
        Ok(dot_avg(&self.data, &other.data))
    }

    pub fn norm(&self) -> f64 {
        math::sqrt(dot_avg(&self.data, &self.data))
    }

    pub fn mean(&self) -> f64 {
        math::mean(&self.data)
    }

    pub fn scaled(&self, c: f64) -> Self {
        RepVector {
            domain: self.domain,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    /// The vector divided by its norm (zero stays zero).
    pub fn normalized(&self) -> Self {
        let norm = self.norm();
        if norm == 0.0 {
            self.clone()
        } else {
            self.scaled(1.0 / norm)
        }
    }

    pub fn is_unit(&self) -> bool {
        (self.norm() - 1.0).abs() <= math::IDENTITY_TOL
    }

    pub fn ensure_unit(&self) -> Result<()> {
        if self.is_unit() {
            Ok(())
        } else {
            Err(Error::NotUnitVector { norm: self.norm() })
        }
    }

    /// A seeded random unit vector with Gaussian-like coordinates.
    pub fn random_unit(domain: Domain, seed: u64) -> Self {
        let mut r = rng::rng(seed);
        let data = (0..domain.len())
            .map(|_| {
                // sum of uniforms: cheap, symmetric, good enough for directions
                (0..4).map(|_| rng::symmetric_unit(&mut r)).sum::<f64>()
            })
            .collect();
        RepVector { domain, data }.normalized()
    }
}

#[inline]
pub(crate) fn dot_avg(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    if a.is_empty() {
        return 0.0;
    }
    a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>() / a.len() as f64
}
