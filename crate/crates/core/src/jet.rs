//! Truncated multivariate power series centred at a chart's base point.
//!
//! Coefficients are stored densely in graded order: every monomial of total
//! degree `d` comes before any monomial of degree `d + 1`. Truncating a jet to
//! a lower order is therefore a prefix of its coefficient vector, and jets of
//! different orders over the same number of variables share monomial indices.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::scalar::Field;

/// Largest supported number of variables (8 exponent bits per variable in a `u64` key).
pub const MAX_VARS: usize = 8;

/// Default truncation order for charts.
pub const DEFAULT_ORDER: usize = 6;

const MIN_TABLE_ORDER: usize = 8;

/// Graded enumeration of exponent vectors for a fixed variable count.
#[derive(Debug)]
pub struct Monomials {
    nvars: usize,
    max_order: usize,
    exps: Vec<Vec<u8>>,
    keys: Vec<u64>,
    degrees: Vec<usize>,
    /// `counts[d]` = number of monomials of degree ≤ d.
    counts: Vec<usize>,
    index: HashMap<u64, usize>,
}

fn pack(exps: &[u8]) -> u64 {
    exps.iter()
        .enumerate()
        .fold(0u64, |acc, (v, &e)| acc | (u64::from(e) << (8 * v)))
}

fn push_degree(nvars: usize, degree: usize, prefix: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    if prefix.len() + 1 == nvars {
        prefix.push(degree as u8);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for e in (0..=degree).rev() {
        prefix.push(e as u8);
        push_degree(nvars, degree - e, prefix, out);
        prefix.pop();
    }
}

impl Monomials {
    fn build(nvars: usize, max_order: usize) -> Self {
        let mut exps = Vec::new();
        let mut counts = Vec::with_capacity(max_order + 1);
        for d in 0..=max_order {
            if nvars == 0 {
                if d == 0 {
                    exps.push(Vec::new());
                }
            } else {
                push_degree(nvars, d, &mut Vec::with_capacity(nvars), &mut exps);
            }
            counts.push(exps.len());
        }
        let keys: Vec<u64> = exps.iter().map(|e| pack(e)).collect();
        let degrees = exps.iter().map(|e| e.iter().map(|&x| x as usize).sum()).collect();
        let index = keys.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        Monomials { nvars, max_order, exps, keys, degrees, counts, index }
    }

    /// Shared table for `nvars` variables covering at least `order`.
    pub fn get(nvars: usize, order: usize) -> Arc<Monomials> {
        static TABLES: OnceLock<Mutex<HashMap<usize, Arc<Monomials>>>> = OnceLock::new();
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} jet variables are supported");
        assert!(order < 64, "jet order {order} is unreasonably large");
        let mut tables = TABLES.get_or_init(Default::default).lock().expect("monomial cache");
        if let Some(t) = tables.get(&nvars) {
            if t.max_order >= order {
                return Arc::clone(t);
            }
        }
        let table = Arc::new(Monomials::build(nvars, order.max(MIN_TABLE_ORDER)));
        tables.insert(nvars, Arc::clone(&table));
        table
    }

    /// Number of monomials of total degree ≤ `order`.
    pub fn count(&self, order: usize) -> usize {
        self.counts[order]
    }

    pub fn exponents(&self, idx: usize) -> &[u8] {
        &self.exps[idx]
    }

    pub fn degree(&self, idx: usize) -> usize {
        self.degrees[idx]
    }

    pub fn index_of(&self, exps: &[u8]) -> Option<usize> {
        if exps.len() != self.nvars {
            return None;
        }
        self.index.get(&pack(exps)).copied()
    }
}

/// A truncated power series in `nvars` variables, exact up to total degree `order`.
#[derive(Clone)]
pub struct Jet<F> {
    mons: Arc<Monomials>,
    order: usize,
    coeffs: Vec<F>,
}

impl<F: Field> Jet<F> {
    pub fn zero(nvars: usize, order: usize) -> Self {
        let mons = Monomials::get(nvars, order);
        let coeffs = vec![F::zero(); mons.count(order)];
        Jet { mons, order, coeffs }
    }

    pub fn constant(nvars: usize, order: usize, c: F) -> Self {
        let mut j = Self::zero(nvars, order);
        j.coeffs[0] = c;
        j
    }

    pub fn one(nvars: usize, order: usize) -> Self {
        Self::constant(nvars, order, F::one())
    }

    /// The coordinate function `x_var`.
    pub fn variable(nvars: usize, order: usize, var: usize) -> Self {
        assert!(var < nvars, "variable {var} out of range");
        let mut exps = vec![0u8; nvars];
        exps[var] = 1;
        Self::monomial(nvars, order, &exps, F::one())
    }

    /// `c · x^exps`, or zero when the degree exceeds `order`.
    pub fn monomial(nvars: usize, order: usize, exps: &[u8], c: F) -> Self {
        let mut j = Self::zero(nvars, order);
        let deg: usize = exps.iter().map(|&e| e as usize).sum();
        if deg <= order {
            let idx = j.mons.index_of(exps).expect("exponent vector length");
            j.coeffs[idx] = c;
        }
        j
    }

    pub fn nvars(&self) -> usize {
        self.mons.nvars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn constant_term(&self) -> &F {
        &self.coeffs[0]
    }

    pub fn coeff(&self, exps: &[u8]) -> F {
        match self.mons.index_of(exps) {
            Some(i) if i < self.coeffs.len() => self.coeffs[i].clone(),
            _ => F::zero(),
        }
    }

    /// Nonzero coefficients with their exponent vectors, in graded order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u8], &F)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.mons.exponents(i), c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(F::is_zero)
    }

    /// True when all coefficients of positive degree vanish.
    pub fn is_constant(&self) -> bool {
        self.coeffs[1..].iter().all(F::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order, "cannot raise jet order by truncation");
        Jet {
            mons: Arc::clone(&self.mons),
            order,
            coeffs: self.coeffs[..self.mons.count(order)].to_vec(),
        }
    }

    fn check_vars(&self, other: &Self) {
        assert_eq!(self.nvars(), other.nvars(), "jets over different variable counts");
    }

    pub fn scale(&self, c: &F) -> Self {
        Jet {
            mons: Arc::clone(&self.mons),
            order: self.order,
            coeffs: self.coeffs.iter().map(|x| x.times(c)).collect(),
        }
    }

    /// Checked product: both operands must have the same shape.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.nvars() != other.nvars() || self.order != other.order {
            return Err(Error::ShapeMismatch(format!(
                "jet_mul of ({} vars, order {}) and ({} vars, order {})",
                self.nvars(),
                self.order,
                other.nvars(),
                other.order
            )));
        }
        Ok(self.mul_truncated(other))
    }

    /// Product truncated to the smaller of the two orders.
    pub fn mul_truncated(&self, other: &Self) -> Self {
        self.check_vars(other);
        let order = self.order.min(other.order);
        let mons = if self.mons.max_order >= other.mons.max_order { &self.mons } else { &other.mons };
        let mut out = vec![F::zero(); mons.count(order)];
        let a_len = mons.count(order);
        for (i, a) in self.coeffs[..a_len].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let da = mons.degree(i);
            let ka = mons.keys[i];
            let b_len = mons.count(order - da);
            for (j, b) in other.coeffs[..b_len].iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let target = mons.index[&(ka + mons.keys[j])];
                out[target].add_product(a, b);
            }
        }
        Jet { mons: Arc::clone(mons), order, coeffs: out }
    }

    /// `self += a * b`, truncated to `self.order`.
    pub fn add_product(&mut self, a: &Self, b: &Self) {
        let order = self.order.min(a.order).min(b.order);
        if order < self.order {
            *self = self.truncate(order);
        }
        let mons = Arc::clone(&self.mons);
        let a_len = mons.count(order);
        for (i, x) in a.coeffs[..a_len].iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let da = mons.degree(i);
            let ka = mons.keys[i];
            let b_len = mons.count(order - da);
            for (j, y) in b.coeffs[..b_len].iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let target = mons.index[&(ka + mons.keys[j])];
                self.coeffs[target].add_product(x, y);
            }
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars(), self.order);
        for _ in 0..k {
            acc = acc.mul_truncated(self);
        }
        acc
    }

    /// Multiplicative inverse up to the jet's order.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.constant_term().inverse().ok_or(Error::ZeroConstantTerm)?;
        // a = c·(1 − t) with t of positive valuation; 1/a = c⁻¹ Σ tᵏ.
        let mut t = self.scale(&c0).neg_ref();
        t.coeffs[0] = F::zero();
        let mut sum = Self::one(self.nvars(), self.order);
        let mut power = Self::one(self.nvars(), self.order);
        for _ in 0..self.order {
            power = power.mul_truncated(&t);
            sum = &sum + &power;
        }
        Ok(sum.scale(&c0))
    }

    fn neg_ref(&self) -> Self {
        Jet {
            mons: Arc::clone(&self.mons),
            order: self.order,
            coeffs: self.coeffs.iter().map(F::negate).collect(),
        }
    }

    /// Formal partial derivative. The result has order `order − 1`; a jet of
    /// order 0 differentiates to the zero jet of order 0.
    pub fn partial(&self, var: usize) -> Self {
        assert!(var < self.nvars(), "variable {var} out of range");
        let order = self.order.saturating_sub(1);
        let mut out = vec![F::zero(); self.mons.count(order)];
        if self.order > 0 {
            let shift = 1u64 << (8 * var);
            for (i, c) in self.coeffs.iter().enumerate().skip(1) {
                if c.is_zero() {
                    continue;
                }
                let e = self.mons.exps[i][var];
                if e == 0 {
                    continue;
                }
                let target = self.mons.index[&(self.mons.keys[i] - shift)];
                out[target] = c.times(&F::from_i64(i64::from(e)));
            }
        }
        Jet { mons: Arc::clone(&self.mons), order, coeffs: out }
    }

    /// Reinterpret as a jet in `nvars` variables, old variable `v` becoming `v + offset`.
    pub fn embed(&self, nvars: usize, offset: usize) -> Self {
        assert!(offset + self.nvars() <= nvars, "embedding does not fit");
        let mut out = Self::zero(nvars, self.order);
        let mut exps = vec![0u8; nvars];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            exps.iter_mut().for_each(|e| *e = 0);
            exps[offset..offset + self.nvars()].copy_from_slice(self.mons.exponents(i));
            let idx = out.mons.index_of(&exps).expect("embedded monomial");
            out.coeffs[idx] = c.clone();
        }
        out
    }

    /// Apply `f` to every coefficient, possibly changing the field.
    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> Jet<G> {
        Jet { mons: Arc::clone(&self.mons), order: self.order, coeffs: self.coeffs.iter().map(f).collect() }
    }

    /// Human-readable polynomial using the given variable names.
    pub fn to_poly_string(&self, names: &[String]) -> String {
        let mut out = String::new();
        for (exps, c) in self.terms() {
            let mono: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    let name = names.get(v).cloned().unwrap_or_else(|| format!("x{v}"));
                    if e == 1 { name } else { format!("{name}^{e}") }
                })
                .collect();
            let negative = c.real_sign() == Some(std::cmp::Ordering::Less);
            let magnitude = if negative { c.negate() } else { c.clone() };
            let body = if mono.is_empty() {
                magnitude.to_string()
            } else if magnitude.is_one() {
                mono.join("*")
            } else if magnitude.real_sign().is_some() && !magnitude.to_string().contains('/') {
                format!("{magnitude}*{}", mono.join("*"))
            } else {
                format!("({magnitude})*{}", mono.join("*"))
            };
            let term = if negative { format!("-{body}") } else { body };
            if !out.is_empty() {
                if let Some(rest) = term.strip_prefix('-') {
                    out.push_str(" - ");
                    out.push_str(rest);
                    continue;
                }
                out.push_str(" + ");
            }
            out.push_str(&term);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl<F: Field> PartialEq for Jet<F> {
    fn eq(&self, other: &Self) -> bool {
        self.nvars() == other.nvars() && self.order == other.order && self.coeffs == other.coeffs
    }
}

impl<F: Field> Eq for Jet<F> {}

impl<F: Field> fmt::Debug for Jet<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O({})", self.to_poly_string(&[]), self.order + 1)
    }
}

fn zip_coeffs<F: Field>(a: &Jet<F>, b: &Jet<F>, op: impl Fn(&F, &F) -> F) -> Jet<F> {
    a.check_vars(b);
    let order = a.order.min(b.order);
    let n = a.mons.count(order);
    let coeffs = a.coeffs[..n].iter().zip(&b.coeffs[..n]).map(|(x, y)| op(x, y)).collect();
    let mons = if a.mons.max_order >= b.mons.max_order { &a.mons } else { &b.mons };
    Jet { mons: Arc::clone(mons), order, coeffs }
}

impl<F: Field> Add for &Jet<F> {
    type Output = Jet<F>;
    fn add(self, rhs: &Jet<F>) -> Jet<F> {
        zip_coeffs(self, rhs, F::plus)
    }
}

impl<F: Field> Sub for &Jet<F> {
    type Output = Jet<F>;
    fn sub(self, rhs: &Jet<F>) -> Jet<F> {
        zip_coeffs(self, rhs, F::minus)
    }
}

impl<F: Field> Mul for &Jet<F> {
    type Output = Jet<F>;
    fn mul(self, rhs: &Jet<F>) -> Jet<F> {
        self.mul_truncated(rhs)
    }
}

impl<F: Field> Neg for &Jet<F> {
    type Output = Jet<F>;
    fn neg(self) -> Jet<F> {
        self.neg_ref()
    }
}

impl<F: Field> Add for Jet<F> {
    type Output = Jet<F>;
    fn add(self, rhs: Jet<F>) -> Jet<F> {
        &self + &rhs
    }
}

impl<F: Field> Sub for Jet<F> {
    type Output = Jet<F>;
    fn sub(self, rhs: Jet<F>) -> Jet<F> {
        &self - &rhs
    }
}

impl<F: Field> Mul for Jet<F> {
    type Output = Jet<F>;
    fn mul(self, rhs: Jet<F>) -> Jet<F> {
        self.mul_truncated(&rhs)
    }
}

impl<F: Field> Neg for Jet<F> {
    type Output = Jet<F>;
    fn neg(self) -> Jet<F> {
        self.neg_ref()
    }
}
