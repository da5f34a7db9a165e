//! Connections in a chart and jet-valued tensors.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::linalg::Matrix;
use crate::scalar::Field;

/// Variance of a tensor slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Slot {
    Lower,
    Upper,
}

/// A tensor field near the base point; components stored row-major over the slot list.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorJet<F: Field> {
    dim: usize,
    slots: Vec<Slot>,
    comps: Vec<Jet<F>>,
}

fn flat_index(dim: usize, idx: &[usize]) -> usize {
    idx.iter().fold(0, |acc, &i| {
        debug_assert!(i < dim, "tensor index out of range");
        acc * dim + i
    })
}

fn unflatten(dim: usize, rank: usize, mut flat: usize, out: &mut [usize]) {
    for s in (0..rank).rev() {
        out[s] = flat % dim;
        flat /= dim;
    }
}

impl<F: Field> TensorJet<F> {
    pub fn zeros(dim: usize, slots: &[Slot], nvars: usize, order: usize) -> Self {
        let n = dim.pow(slots.len() as u32);
        TensorJet { dim, slots: slots.to_vec(), comps: vec![Jet::zero(nvars, order); n] }
    }

    pub fn from_fn(dim: usize, slots: &[Slot], mut f: impl FnMut(&[usize]) -> Jet<F>) -> Self {
        let rank = slots.len();
        let n = dim.pow(rank as u32);
        let mut idx = vec![0; rank];
        let comps = (0..n)
            .map(|flat| {
                unflatten(dim, rank, flat, &mut idx);
                f(&idx)
            })
            .collect();
        TensorJet { dim, slots: slots.to_vec(), comps }
    }

    /// Tensor with constant components given by `f`.
    pub fn constant(dim: usize, slots: &[Slot], nvars: usize, order: usize, f: impl Fn(&[usize]) -> F) -> Self {
        Self::from_fn(dim, slots, |idx| Jet::constant(nvars, order, f(idx)))
    }

    /// Symmetric or general (0,2) tensor from a square jet array.
    pub fn covariant2(rows: Vec<Vec<Jet<F>>>) -> Self {
        let dim = rows.len();
        TensorJet { dim, slots: vec![Slot::Lower; 2], comps: rows.into_iter().flatten().collect() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn rank(&self) -> usize {
        self.slots.len()
    }

    /// Smallest order over all components.
    pub fn order(&self) -> usize {
        self.comps.iter().map(Jet::order).min().unwrap_or(0)
    }

    pub fn nvars(&self) -> usize {
        self.comps[0].nvars()
    }

    pub fn get(&self, idx: &[usize]) -> &Jet<F> {
        assert_eq!(idx.len(), self.rank(), "tensor index arity");
        &self.comps[flat_index(self.dim, idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: Jet<F>) {
        assert_eq!(idx.len(), self.rank(), "tensor index arity");
        let i = flat_index(self.dim, idx);
        self.comps[i] = value;
    }

    pub fn components(&self) -> &[Jet<F>] {
        &self.comps
    }

    /// Iterate `(index, component)` pairs in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, &Jet<F>)> + '_ {
        let rank = self.rank();
        self.comps.iter().enumerate().map(move |(flat, c)| {
            let mut idx = vec![0; rank];
            unflatten(self.dim, rank, flat, &mut idx);
            (idx, c)
        })
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Jet::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        self.map(|c| c.truncate(order.min(c.order())))
    }

    pub fn map(&self, f: impl Fn(&Jet<F>) -> Jet<F>) -> Self {
        TensorJet { dim: self.dim, slots: self.slots.clone(), comps: self.comps.iter().map(f).collect() }
    }

    fn zip(&self, other: &Self, f: impl Fn(&Jet<F>, &Jet<F>) -> Jet<F>) -> Self {
        assert_eq!((self.dim, &self.slots), (other.dim, &other.slots), "tensor shapes");
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| f(a, b)).collect();
        TensorJet { dim: self.dim, slots: self.slots.clone(), comps }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, k: &F) -> Self {
        self.map(|c| c.scale(k))
    }

    /// Exact equality of retained coefficients up to the common order.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let order = self.order().min(other.order());
        self.dim == other.dim
            && self.slots == other.slots
            && self.comps.iter().zip(&other.comps).all(|(a, b)| a.truncate(order) == b.truncate(order))
    }

    /// Values at the base point.
    pub fn at_base(&self) -> Vec<F> {
        self.comps.iter().map(|c| c.constant_term().clone()).collect()
    }

    /// Is the tensor unchanged by swapping slots `a` and `b`?
    pub fn is_symmetric_in(&self, a: usize, b: usize) -> bool {
        self.swap_check(a, b, false)
    }

    pub fn is_antisymmetric_in(&self, a: usize, b: usize) -> bool {
        self.swap_check(a, b, true)
    }

    fn swap_check(&self, a: usize, b: usize, anti: bool) -> bool {
        self.iter().all(|(idx, c)| {
            let mut swapped = idx.clone();
            swapped.swap(a, b);
            let other = self.get(&swapped);
            if anti {
                (c + other).is_zero()
            } else {
                c == other
            }
        })
    }

    /// Base-point values of a (0,2) or (1,1) tensor as a matrix.
    pub fn base_matrix(&self) -> Matrix<F> {
        assert_eq!(self.rank(), 2, "base_matrix needs a rank-2 tensor");
        Matrix::from_flat(self.dim, self.at_base())
    }
}

impl<F: Field> fmt::Debug for TensorJet<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "TensorJet {:?} dim {} {{", self.slots, self.dim)?;
        for (idx, c) in self.iter() {
            if !c.is_zero() {
                writeln!(f, "  {idx:?}: {c:?}")?;
            }
        }
        write!(f, "}}")
    }
}

/// A connection ∇ on a coordinate chart: Christoffel jets Γᵏᵢⱼ with
/// ∇_{∂ᵢ}∂ⱼ = Γᵏᵢⱼ ∂ₖ.
#[derive(Clone, PartialEq, Eq)]
pub struct ConnectionChart<F: Field> {
    names: Vec<String>,
    gamma: Vec<Jet<F>>,
}

/// Default coordinate names `x1, …, xn`.
pub fn default_names(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("x{i}")).collect()
}

impl<F: Field> ConnectionChart<F> {
    /// Builds Γᵏᵢⱼ = `f(k, i, j)`; every jet must have `names.len()` variables.
    pub fn from_fn(names: Vec<String>, mut f: impl FnMut(usize, usize, usize) -> Jet<F>) -> Self {
        let n = names.len();
        let mut gamma = Vec::with_capacity(n * n * n);
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let g = f(k, i, j);
                    assert_eq!(g.nvars(), n, "Christoffel jet variable count");
                    gamma.push(g);
                }
            }
        }
        let order = gamma.iter().map(Jet::order).min().unwrap_or(0);
        let gamma = gamma.into_iter().map(|g| g.truncate(order)).collect();
        ConnectionChart { names, gamma }
    }

    pub fn flat(dim: usize, order: usize) -> Self {
        Self::from_fn(default_names(dim), |_, _, _| Jet::zero(dim, order))
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.dim(), "name count");
        self.names = names;
        self
    }

    pub fn order(&self) -> usize {
        self.gamma.first().map_or(0, Jet::order)
    }

    pub fn gamma(&self, k: usize, i: usize, j: usize) -> &Jet<F> {
        let n = self.dim();
        &self.gamma[(k * n + i) * n + j]
    }

    pub fn truncate(&self, order: usize) -> Self {
        ConnectionChart {
            names: self.names.clone(),
            gamma: self.gamma.iter().map(|g| g.truncate(order.min(g.order()))).collect(),
        }
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G + Copy) -> ConnectionChart<G> {
        ConnectionChart { names: self.names.clone(), gamma: self.gamma.iter().map(|g| g.map_coeffs(f)).collect() }
    }

    /// Christoffel symbols as a (1,2) tensor with slots (k up; i, j down).
    pub fn gamma_tensor(&self) -> TensorJet<F> {
        TensorJet::from_fn(self.dim(), &[Slot::Upper, Slot::Lower, Slot::Lower], |idx| {
            self.gamma(idx[0], idx[1], idx[2]).clone()
        })
    }

    /// Tᵏᵢⱼ = Γᵏᵢⱼ − Γᵏⱼᵢ, slots (k up; i, j down).
    pub fn torsion(&self) -> TensorJet<F> {
        TensorJet::from_fn(self.dim(), &[Slot::Upper, Slot::Lower, Slot::Lower], |idx| {
            self.gamma(idx[0], idx[1], idx[2]) - self.gamma(idx[0], idx[2], idx[1])
        })
    }

    pub fn is_torsion_free(&self) -> bool {
        let n = self.dim();
        (0..n).all(|k| (0..n).all(|i| (0..i).all(|j| self.gamma(k, i, j) == self.gamma(k, j, i))))
    }

    fn require_torsion_free(&self) -> Result<()> {
        if self.is_torsion_free() {
            Ok(())
        } else {
            Err(Error::Torsion)
        }
    }

    /// Rₕⱼᵏₗ = ∂ₕΓᵏⱼₗ − ∂ⱼΓᵏₕₗ + ΓᵏₕₘΓᵐⱼₗ − ΓᵏⱼₘΓᵐₕₗ with slots
    /// (h, j down; k up; l down), so that R(∂ₕ,∂ⱼ)∂ₗ = Rₕⱼᵏₗ ∂ₖ.
    pub fn curvature(&self) -> Result<TensorJet<F>> {
        self.require_torsion_free()?;
        let n = self.dim();
        let order = self.order();
        if order == 0 {
            return Err(Error::OrderExhausted { needed: 1, available: 0 });
        }
        let low = self.truncate(order - 1);
        let nonzero: Vec<bool> = low.gamma.iter().map(|g| !g.is_zero()).collect();
        let nz = |k: usize, i: usize, j: usize| nonzero[(k * n + i) * n + j];
        let mut out = TensorJet::zeros(n, &[Slot::Lower, Slot::Lower, Slot::Upper, Slot::Lower], n, order - 1);
        for h in 0..n {
            for j in 0..h {
                for k in 0..n {
                    for l in 0..n {
                        let mut r = &self.gamma(k, j, l).partial(h) - &self.gamma(k, h, l).partial(j);
                        for m in 0..n {
                            if nz(k, h, m) && nz(m, j, l) {
                                r.add_product(low.gamma(k, h, m), low.gamma(m, j, l));
                            }
                            if nz(k, j, m) && nz(m, h, l) {
                                r.add_product(&(-low.gamma(k, j, m)), low.gamma(m, h, l));
                            }
                        }
                        out.set(&[j, h, k, l], -&r);
                        out.set(&[h, j, k, l], r);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Ricⱼₗ = Σₖ Rₖⱼᵏₗ.
    pub fn ricci(&self) -> Result<TensorJet<F>> {
        Ok(ricci_of(&self.curvature()?))
    }

    /// ∇T with the new covariant slot placed first.
    pub fn covariant_derivative(&self, t: &TensorJet<F>) -> Result<TensorJet<F>> {
        let n = self.dim();
        assert_eq!(t.dim(), n, "tensor dimension");
        let order = t.order().min(self.order() + 1);
        if order == 0 {
            return Err(Error::OrderExhausted { needed: 1, available: 0 });
        }
        let low = self.truncate((order - 1).min(self.order()));
        let nonzero: Vec<bool> = low.gamma.iter().map(|g| !g.is_zero()).collect();
        let rank = t.rank();
        let mut slots = vec![Slot::Lower];
        slots.extend_from_slice(t.slots());
        let mut scratch = vec![0usize; rank];
        let out = TensorJet::from_fn(n, &slots, |idx| {
            let d = idx[0];
            let rest = &idx[1..];
            let mut acc = t.get(rest).partial(d).truncate(order - 1);
            for (s, slot) in t.slots().iter().enumerate() {
                scratch.copy_from_slice(rest);
                for m in 0..n {
                    scratch[s] = m;
                    let comp = t.get(&scratch);
                    if comp.is_zero() {
                        continue;
                    }
                    match slot {
                        Slot::Lower => {
                            let g = (m * n + d) * n + rest[s];
                            if nonzero[g] {
                                acc.add_product(&(-&low.gamma[g]), comp);
                            }
                        }
                        Slot::Upper => {
                            let g = (rest[s] * n + d) * n + m;
                            if nonzero[g] {
                                acc.add_product(&low.gamma[g], comp);
                            }
                        }
                    }
                }
            }
            acc
        });
        Ok(out)
    }

    /// Einstein test: Ric symmetric, ∇Ric = 0 at retained
    /// order, and Ric nondegenerate at the base point. With a `reference` form
    /// g, the coefficient λ with Ric = λg is reported when it exists.
    pub fn is_einstein(&self, reference: Option<&TensorJet<F>>) -> Result<EinsteinCheck<F>> {
        let ric = self.ricci()?;
        let reason = if !ric.is_symmetric_in(0, 1) {
            EinsteinReason::RicciAsymmetric
        } else if ric.base_matrix().determinant().is_zero() {
            EinsteinReason::Degenerate
        } else if ric.order() > 0 && !self.covariant_derivative(&ric)?.is_zero() {
            EinsteinReason::RicciNotParallel
        } else {
            EinsteinReason::Einstein
        };
        let coefficient = reference.and_then(|g| proportionality(&ric, g));
        Ok(EinsteinCheck { einstein: reason == EinsteinReason::Einstein, coefficient, reason })
    }
}

impl<F: Field> fmt::Debug for ConnectionChart<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim();
        writeln!(f, "ConnectionChart {:?} order {} {{", self.names, self.order())?;
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let g = self.gamma(k, i, j);
                    if !g.is_zero() {
                        writeln!(f, "  Γ^{}_{}{} = {}", self.names[k], self.names[i], self.names[j], g.to_poly_string(&self.names))?;
                    }
                }
            }
        }
        write!(f, "}}")
    }
}

/// Contraction of the first and upper slots of a curvature tensor.
pub fn ricci_of<F: Field>(r: &TensorJet<F>) -> TensorJet<F> {
    let n = r.dim();
    TensorJet::from_fn(n, &[Slot::Lower, Slot::Lower], |idx| {
        (0..n).fold(Jet::zero(r.nvars(), r.order()), |acc, k| &acc + r.get(&[k, idx[0], k, idx[1]]))
    })
}

/// λ with `a = λ·b` exactly, when it exists.
fn proportionality<F: Field>(a: &TensorJet<F>, b: &TensorJet<F>) -> Option<Jet<F>> {
    let order = a.order().min(b.order());
    let pivot = b.components().iter().position(|c| !c.constant_term().is_zero())?;
    let lambda = &a.components()[pivot].truncate(order) * &b.components()[pivot].truncate(order).inverse().ok()?;
    let ok = a.components().iter().zip(b.components()).all(|(x, y)| x.truncate(order) == &lambda * y);
    ok.then_some(lambda)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EinsteinReason {
    Einstein,
    RicciAsymmetric,
    RicciNotParallel,
    Degenerate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EinsteinCheck<F: Field> {
    pub einstein: bool,
    pub coefficient: Option<Jet<F>>,
    pub reason: EinsteinReason,
}

/// Inverse of a square matrix of jets whose base-point value is invertible.
pub fn jet_matrix_inverse<F: Field>(m: &[Vec<Jet<F>>]) -> Result<Vec<Vec<Jet<F>>>> {
    let n = m.len();
    let nvars = m[0][0].nvars();
    let order = m.iter().flatten().map(Jet::order).min().unwrap_or(0);
    let mut a: Vec<Vec<Jet<F>>> = m.iter().map(|row| row.iter().map(|x| x.truncate(order)).collect()).collect();
    let mut inv: Vec<Vec<Jet<F>>> = (0..n)
        .map(|r| (0..n).map(|c| if r == c { Jet::one(nvars, order) } else { Jet::zero(nvars, order) }).collect())
        .collect();
    for col in 0..n {
        let p = (col..n)
            .find(|&r| !a[r][col].constant_term().is_zero())
            .ok_or_else(|| Error::Degenerate("jet matrix is singular at the base point".into()))?;
        a.swap(col, p);
        inv.swap(col, p);
        let pinv = a[col][col].inverse()?;
        a[col] = a[col].iter().map(|x| x * &pinv).collect();
        inv[col] = inv[col].iter().map(|x| x * &pinv).collect();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..n {
                let t = &f * &a[col][c];
                a[r][c] = &a[r][c] - &t;
                let t = &f * &inv[col][c];
                inv[r][c] = &inv[r][c] - &t;
            }
        }
    }
    Ok(inv)
}

/// Levi-Civita connection of a metric given as a symmetric jet matrix. The
/// resulting Christoffels have one order less than the metric.
pub fn levi_civita<F: Field>(names: Vec<String>, g: &[Vec<Jet<F>>]) -> Result<ConnectionChart<F>> {
    let n = g.len();
    let ginv = jet_matrix_inverse(g)?;
    let half = F::from_frac(1, 2);
    // Γ_{l i j} = ½(∂ᵢg_{jl} + ∂ⱼg_{il} − ∂ₗg_{ij})
    let mut lowered = Vec::with_capacity(n * n * n);
    for l in 0..n {
        for i in 0..n {
            for j in 0..n {
                let s = &(&g[j][l].partial(i) + &g[i][l].partial(j)) - &g[i][j].partial(l);
                lowered.push(s.scale(&half));
            }
        }
    }
    Ok(ConnectionChart::from_fn(names, |k, i, j| {
        (0..n).fold(Jet::zero(n, lowered[0].order()), |mut acc, l| {
            acc.add_product(&ginv[k][l], &lowered[(l * n + i) * n + j]);
            acc
        })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::jet_from_polynomial;
    use crate::scalar::Rational;

    fn p(text: &str, order: usize) -> Jet<Rational> {
        jet_from_polynomial(text, &["x", "y"], order).unwrap()
    }

    /// ∇_X X = y²Y, all other Christoffels zero.
    fn cy_example(order: usize) -> ConnectionChart<Rational> {
        ConnectionChart::from_fn(vec!["x".into(), "y".into()], |k, i, j| {
            if (k, i, j) == (1, 0, 0) {
                p("y^2", order)
            } else {
                Jet::zero(2, order)
            }
        })
    }

    #[test]
    fn torsion_examples() {
        assert!(ConnectionChart::<Rational>::flat(3, 2).torsion().is_zero());
        assert!(cy_example(3).torsion().is_zero());
        let twisted = ConnectionChart::<Rational>::from_fn(default_names(2), |k, i, j| {
            if (k, i, j) == (0, 0, 1) {
                Jet::one(2, 2)
            } else {
                Jet::zero(2, 2)
            }
        });
        let t = twisted.torsion();
        assert_eq!(t.get(&[0, 0, 1]), &Jet::one(2, 2));
        assert_eq!(t.get(&[0, 1, 0]), &-&Jet::one(2, 2));
        assert_eq!(twisted.curvature(), Err(Error::Torsion));
    }

    #[test]
    fn flat_curvature_vanishes() {
        assert!(ConnectionChart::<Rational>::flat(3, 3).curvature().unwrap().is_zero());
    }

    #[test]
    fn cotton_york_example_curvature() {
        let r = cy_example(4).curvature().unwrap();
        // R(X,Y)X = R_{xy}^k_x ∂_k = −2y ∂_y
        assert_eq!(r.get(&[0, 1, 1, 0]), &p("-2*y", 3));
        assert!(r.get(&[0, 1, 0, 0]).is_zero());
        assert!(r.is_antisymmetric_in(0, 1));
        let ric = cy_example(4).ricci().unwrap();
        assert_eq!(ric.get(&[0, 0]), &p("2*y", 3));
        assert!(ric.get(&[0, 1]).is_zero() && ric.get(&[1, 0]).is_zero() && ric.get(&[1, 1]).is_zero());
    }

    #[test]
    fn covariant_derivative_basics() {
        let flat = ConnectionChart::<Rational>::flat(2, 3);
        let scalar = TensorJet::from_fn(2, &[], |_| Jet::constant(2, 3, Rational::from(5)));
        assert!(flat.covariant_derivative(&scalar).unwrap().is_zero());
        assert!(cy_example(3).covariant_derivative(&scalar).unwrap().is_zero());
        let f = TensorJet::from_fn(2, &[], |_| p("x^2*y", 3));
        let df = flat.covariant_derivative(&f).unwrap();
        assert_eq!(df.get(&[0]), &p("2*x*y", 2));
        assert_eq!(df.get(&[1]), &p("x^2", 2));
        let zero_order = TensorJet::from_fn(2, &[], |_| Jet::one(2, 0));
        assert!(matches!(flat.covariant_derivative(&zero_order), Err(Error::OrderExhausted { .. })));
    }

    #[test]
    fn covariant_derivative_of_vector_field() {
        // ∇_{∂x} (∂x) = y² ∂y for the Cotton-York example.
        let conn = cy_example(3);
        let v = TensorJet::from_fn(2, &[Slot::Upper], |idx| if idx[0] == 0 { Jet::one(2, 3) } else { Jet::zero(2, 3) });
        let dv = conn.covariant_derivative(&v).unwrap();
        assert_eq!(dv.get(&[0, 1]), &p("y^2", 2));
        assert!(dv.get(&[1, 1]).is_zero());
    }

    #[test]
    fn einstein_flags() {
        let flat = ConnectionChart::<Rational>::flat(2, 3).is_einstein(None).unwrap();
        assert!(!flat.einstein);
        assert_eq!(flat.reason, EinsteinReason::Degenerate);
    }

    #[test]
    fn jet_matrix_inverse_round_trip() {
        let m = vec![vec![p("1+x", 3), p("y", 3)], vec![p("x*y", 3), p("2-y^2", 3)]];
        let inv = jet_matrix_inverse(&m).unwrap();
        for r in 0..2 {
            for c in 0..2 {
                let mut s = Jet::zero(2, 3);
                for k in 0..2 {
                    s.add_product(&m[r][k], &inv[k][c]);
                }
                let expected = if r == c { Jet::one(2, 3) } else { Jet::zero(2, 3) };
                assert_eq!(s, expected);
            }
        }
    }

    #[test]
    fn levi_civita_of_flat_metric_in_polar_like_chart() {
        // g = dx² + (1+x)² dy²: Γ^x_yy = −(1+x), Γ^y_xy = 1/(1+x).
        let g = vec![vec![p("1", 4), p("0", 4)], vec![p("0", 4), p("(1+x)^2", 4)]];
        let conn = levi_civita(vec!["x".into(), "y".into()], &g).unwrap();
        assert_eq!(conn.order(), 3);
        assert_eq!(conn.gamma(0, 1, 1), &p("-1-x", 3));
        assert_eq!(conn.gamma(1, 0, 1), &p("1 - x + x^2 - x^3", 3));
        assert!(conn.curvature().unwrap().is_zero());
    }
}
