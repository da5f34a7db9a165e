//! Projective invariants of a preferred connection.

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::linalg::Matrix;
use crate::scalar::Field;
use crate::tensor::{ricci_of, ConnectionChart, Slot, TensorJet};

/// A one-form Υ = Υᵢ dxⁱ with jet components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneForm<F: Field> {
    comps: Vec<Jet<F>>,
}

impl<F: Field> OneForm<F> {
    pub fn new(comps: Vec<Jet<F>>) -> Self {
        assert!(!comps.is_empty(), "one-form needs at least one component");
        assert!(comps.iter().all(|c| c.nvars() == comps.len()), "one-form component variable count");
        OneForm { comps }
    }

    pub fn zero(dim: usize, order: usize) -> Self {
        OneForm { comps: vec![Jet::zero(dim, order); dim] }
    }

    /// dφ for a potential φ; the components lose one order.
    pub fn exact(potential: &Jet<F>) -> Self {
        OneForm { comps: (0..potential.nvars()).map(|v| potential.partial(v)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn component(&self, i: usize) -> &Jet<F> {
        &self.comps[i]
    }

    pub fn to_tensor(&self) -> TensorJet<F> {
        TensorJet::from_fn(self.dim(), &[Slot::Lower], |idx| self.comps[idx[0]].clone())
    }
}

fn delta<F: Field>(a: usize, b: usize, nvars: usize, order: usize) -> Option<Jet<F>> {
    (a == b).then(|| Jet::one(nvars, order))
}

/// Pₕⱼ = −(n/(n²−1))Ricₕⱼ − (1/(n²−1))Ricⱼₕ.
pub fn rho_from_ricci<F: Field>(ric: &TensorJet<F>) -> Result<TensorJet<F>> {
    let n = ric.dim();
    if n <= 1 {
        return Err(Error::DimensionTooSmall(n));
    }
    let n_i = n as i64;
    let a = F::from_frac(-n_i, n_i * n_i - 1);
    let b = F::from_frac(-1, n_i * n_i - 1);
    Ok(TensorJet::from_fn(n, &[Slot::Lower, Slot::Lower], |idx| {
        &ric.get(&[idx[0], idx[1]]).scale(&a) + &ric.get(&[idx[1], idx[0]]).scale(&b)
    }))
}

pub fn rho<F: Field>(conn: &ConnectionChart<F>) -> Result<TensorJet<F>> {
    if conn.dim() <= 1 {
        return Err(Error::DimensionTooSmall(conn.dim()));
    }
    rho_from_ricci(&conn.ricci()?)
}

/// Wₕⱼᵏₗ = Rₕⱼᵏₗ − Pₕₗδᵏⱼ + Pⱼₗδᵏₕ − (Pₕⱼ − Pⱼₕ)δᵏₗ.
pub fn weyl_from<F: Field>(r: &TensorJet<F>, p: &TensorJet<F>) -> TensorJet<F> {
    let n = r.dim();
    let (nv, order) = (r.nvars(), r.order());
    TensorJet::from_fn(n, r.slots(), |idx| {
        let (h, j, k, l) = (idx[0], idx[1], idx[2], idx[3]);
        let mut w = r.get(idx).clone();
        if delta::<F>(k, j, nv, order).is_some() {
            w = &w - p.get(&[h, l]);
        }
        if delta::<F>(k, h, nv, order).is_some() {
            w = &w + p.get(&[j, l]);
        }
        if delta::<F>(k, l, nv, order).is_some() {
            w = &(&w - p.get(&[h, j])) + p.get(&[j, h]);
        }
        w.truncate(order)
    })
}

/// The curvature rebuilt from (W, P); equals R exactly.
pub fn reconstruct_curvature<F: Field>(w: &TensorJet<F>, p: &TensorJet<F>) -> TensorJet<F> {
    TensorJet::from_fn(w.dim(), w.slots(), |idx| {
        let (h, j, k, l) = (idx[0], idx[1], idx[2], idx[3]);
        let mut r = w.get(idx).clone();
        if k == j {
            r = &r + p.get(&[h, l]);
        }
        if k == h {
            r = &r - p.get(&[j, l]);
        }
        if k == l {
            r = &(&r + p.get(&[h, j])) - p.get(&[j, h]);
        }
        r.truncate(w.order())
    })
}

pub fn projective_weyl<F: Field>(conn: &ConnectionChart<F>) -> Result<TensorJet<F>> {
    if conn.dim() <= 1 {
        return Err(Error::DimensionTooSmall(conn.dim()));
    }
    let r = conn.curvature()?;
    let p = rho_from_ricci(&ricci_of(&r))?;
    Ok(weyl_from(&r, &p))
}

/// The three independent single traces of a (h, j; k; l) tensor:
/// Σₖ Wₖⱼᵏₗ, Σₖ Wₕₖᵏₗ and Σₖ Wₕⱼᵏₖ.
pub fn weyl_traces<F: Field>(w: &TensorJet<F>) -> [TensorJet<F>; 3] {
    let n = w.dim();
    let (nv, order) = (w.nvars(), w.order());
    let sum = |f: &dyn Fn(usize) -> [usize; 4]| {
        (0..n).fold(Jet::zero(nv, order), |acc, k| &acc + w.get(&f(k)))
    };
    let lower2 = [Slot::Lower, Slot::Lower];
    [
        TensorJet::from_fn(n, &lower2, |i| sum(&|k| [k, i[0], k, i[1]])),
        TensorJet::from_fn(n, &lower2, |i| sum(&|k| [i[0], k, k, i[1]])),
        TensorJet::from_fn(n, &lower2, |i| sum(&|k| [i[0], i[1], k, k])),
    ]
}

pub fn is_trace_free<F: Field>(w: &TensorJet<F>) -> bool {
    weyl_traces(w).iter().all(TensorJet::is_zero)
}

/// CYₕⱼₖ = ∇ₕPⱼₖ − ∇ⱼPₕₖ.
pub fn cotton_york_from_rho<F: Field>(conn: &ConnectionChart<F>, p: &TensorJet<F>) -> Result<TensorJet<F>> {
    let dp = conn.covariant_derivative(p)?;
    let n = conn.dim();
    Ok(TensorJet::from_fn(n, &[Slot::Lower; 3], |idx| {
        dp.get(&[idx[0], idx[1], idx[2]]) - dp.get(&[idx[1], idx[0], idx[2]])
    }))
}

pub fn cotton_york<F: Field>(conn: &ConnectionChart<F>) -> Result<TensorJet<F>> {
    if conn.order() < 2 {
        return Err(Error::OrderExhausted { needed: 2, available: conn.order() });
    }
    cotton_york_from_rho(conn, &rho(conn)?)
}

/// Γ′ᵏᵢⱼ = Γᵏᵢⱼ + Υᵢδᵏⱼ + Υⱼδᵏᵢ.
pub fn change_preferred<F: Field>(conn: &ConnectionChart<F>, upsilon: &OneForm<F>) -> Result<ConnectionChart<F>> {
    if !conn.is_torsion_free() {
        return Err(Error::Torsion);
    }
    if upsilon.dim() != conn.dim() {
        return Err(Error::ShapeMismatch(format!(
            "one-form of dimension {} on a chart of dimension {}",
            upsilon.dim(),
            conn.dim()
        )));
    }
    let order = conn.order().min(upsilon.comps.iter().map(Jet::order).min().unwrap_or(0));
    Ok(ConnectionChart::from_fn(conn.names().to_vec(), |k, i, j| {
        let mut g = conn.gamma(k, i, j).truncate(order);
        if k == j {
            g = &g + upsilon.component(i);
        }
        if k == i {
            g = &g + upsilon.component(j);
        }
        g.truncate(order)
    }))
}

/// Rho tensor of ∇ = ∇′ + Υ over a Ricci-flat ∇′: Pₕⱼ = ∇′ₕΥⱼ − ΥₕΥⱼ.
pub fn rho_from_ricci_flat_change<F: Field>(upsilon: &OneForm<F>, base: &ConnectionChart<F>) -> Result<TensorJet<F>> {
    if !base.ricci()?.is_zero() {
        return Err(Error::NotRicciFlat);
    }
    let du = base.covariant_derivative(&upsilon.to_tensor())?;
    Ok(TensorJet::from_fn(base.dim(), &[Slot::Lower; 2], |idx| {
        let (h, j) = (idx[0], idx[1]);
        du.get(&[h, j]) - &(upsilon.component(h) * upsilon.component(j))
    }))
}

/// Curvature of the tractor connection in the splitting T ⊕ L of the given
/// preferred connection, as (n+1)×(n+1) jet matrices indexed by (h, j).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TractorCurvature<F: Field> {
    dim: usize,
    /// Row-major (n+1)² entries for each ordered pair (h, j).
    blocks: Vec<Vec<Jet<F>>>,
}

impl<F: Field> TractorCurvature<F> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, h: usize, j: usize, row: usize, col: usize) -> &Jet<F> {
        &self.blocks[h * self.dim + j][row * (self.dim + 1) + col]
    }

    /// Base-point value of the endomorphism for (∂ₕ, ∂ⱼ).
    pub fn at_base(&self, h: usize, j: usize) -> Matrix<F> {
        let m = self.dim + 1;
        Matrix::from_flat(m, self.blocks[h * self.dim + j].iter().map(|x| x.constant_term().clone()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().flatten().all(Jet::is_zero)
    }

    /// The W block of every endomorphism vanishes.
    pub fn weyl_block_is_zero(&self) -> bool {
        let m = self.dim + 1;
        self.blocks.iter().all(|b| (0..self.dim).all(|r| (0..self.dim).all(|c| b[r * m + c].is_zero())))
    }

    /// The CY row of every endomorphism vanishes.
    pub fn cotton_york_row_is_zero(&self) -> bool {
        let m = self.dim + 1;
        self.blocks.iter().all(|b| (0..m).all(|c| b[self.dim * m + c].is_zero()))
    }
}

pub fn tractor_curvature<F: Field>(conn: &ConnectionChart<F>) -> Result<TractorCurvature<F>> {
    let data = ProjectiveData::compute(conn)?;
    Ok(data.tractor_curvature())
}

/// ρ, W and CY of a preferred connection.
#[derive(Clone, Debug)]
pub struct ProjectiveData<F: Field> {
    pub conn: ConnectionChart<F>,
    pub rho: TensorJet<F>,
    pub weyl: TensorJet<F>,
    pub cotton_york: TensorJet<F>,
}

impl<F: Field> ProjectiveData<F> {
    pub fn compute(conn: &ConnectionChart<F>) -> Result<Self> {
        if conn.dim() <= 1 {
            return Err(Error::DimensionTooSmall(conn.dim()));
        }
        if conn.order() < 2 {
            return Err(Error::OrderExhausted { needed: 2, available: conn.order() });
        }
        let r = conn.curvature()?;
        let rho = rho_from_ricci(&ricci_of(&r))?;
        let weyl = weyl_from(&r, &rho);
        let cotton_york = cotton_york_from_rho(conn, &rho)?;
        Ok(ProjectiveData { conn: conn.clone(), rho, weyl, cotton_york })
    }

    pub fn tractor_curvature(&self) -> TractorCurvature<F> {
        let n = self.conn.dim();
        let m = n + 1;
        let order = self.cotton_york.order();
        let nv = self.weyl.nvars();
        let blocks = (0..n * n)
            .map(|hj| {
                let (h, j) = (hj / n, hj % n);
                (0..m * m)
                    .map(|e| {
                        let (r, c) = (e / m, e % m);
                        if c == n {
                            Jet::zero(nv, order)
                        } else if r == n {
                            self.cotton_york.get(&[h, j, c]).clone()
                        } else {
                            self.weyl.get(&[h, j, r, c]).truncate(order)
                        }
                    })
                    .collect()
            })
            .collect();
        TractorCurvature { dim: n, blocks }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::jet_from_polynomial;
    use crate::scalar::Rational;

    fn p2(text: &str, order: usize) -> Jet<Rational> {
        jet_from_polynomial(text, &["x", "y"], order).unwrap()
    }

    fn cy_example(order: usize) -> ConnectionChart<Rational> {
        ConnectionChart::from_fn(vec!["x".into(), "y".into()], |k, i, j| {
            if (k, i, j) == (1, 0, 0) {
                p2("y^2", order)
            } else {
                Jet::zero(2, order)
            }
        })
    }

    #[test]
    fn flat_invariants_vanish() {
        let flat = ConnectionChart::<Rational>::flat(3, 3);
        let d = ProjectiveData::compute(&flat).unwrap();
        assert!(d.rho.is_zero() && d.weyl.is_zero() && d.cotton_york.is_zero());
        assert!(d.tractor_curvature().is_zero());
    }

    #[test]
    fn dimension_one_is_rejected() {
        let line = ConnectionChart::<Rational>::flat(1, 3);
        assert_eq!(rho(&line), Err(Error::DimensionTooSmall(1)));
    }

    #[test]
    fn symmetric_ricci_gives_scaled_rho() {
        // P = −Ric/(n−1) when Ric is symmetric.
        let ric = TensorJet::constant(3, &[Slot::Lower; 2], 3, 2, |i| {
            Rational::from(if i[0] == i[1] { 2 } else { 1 })
        });
        let p = rho_from_ricci(&ric).unwrap();
        assert_eq!(p, ric.scale(&Rational::new(-1, 2)));
    }

    #[test]
    fn cotton_york_of_two_dimensional_example() {
        let conn = cy_example(5);
        let d = ProjectiveData::compute(&conn).unwrap();
        assert_eq!(d.rho.get(&[0, 0]), &p2("-2*y", 4));
        assert!(d.weyl.is_zero());
        let c = Jet::constant(2, 3, Rational::from(2));
        assert_eq!(d.cotton_york.get(&[0, 1, 0]), &c);
        assert_eq!(d.cotton_york.get(&[1, 0, 0]), &-&c);
        for (idx, v) in d.cotton_york.iter() {
            if idx[2] == 1 || idx[0] == idx[1] {
                assert!(v.is_zero(), "{idx:?}");
            }
        }
        let t = d.tractor_curvature();
        assert!(t.weyl_block_is_zero());
        assert!(!t.cotton_york_row_is_zero());
    }

    #[test]
    fn weyl_reconstructs_curvature() {
        let conn = cy_example(4);
        let upsilon = OneForm::new(vec![p2("x*y + 1/2", 4), p2("x^2 - 3*y", 4)]);
        let changed = change_preferred(&conn, &upsilon).unwrap();
        let r = changed.curvature().unwrap();
        let p = rho(&changed).unwrap();
        let w = weyl_from(&r, &p);
        assert!(is_trace_free(&w));
        assert_eq!(reconstruct_curvature(&w, &p), r);
    }

    #[test]
    fn change_by_zero_is_identity() {
        let conn = cy_example(3);
        assert_eq!(change_preferred(&conn, &OneForm::zero(2, 3)).unwrap(), conn);
    }

    #[test]
    fn ricci_flat_change_formula() {
        let flat = ConnectionChart::<Rational>::flat(2, 4);
        let dx1 = OneForm::new(vec![Jet::one(2, 4), Jet::zero(2, 4)]);
        let p = rho_from_ricci_flat_change(&dx1, &flat).unwrap();
        assert_eq!(p.get(&[0, 0]), &Jet::constant(2, 3, Rational::from(-1)));
        assert!(p.get(&[0, 1]).is_zero() && p.get(&[1, 1]).is_zero());
        assert!(rho_from_ricci_flat_change(&OneForm::zero(2, 4), &flat).unwrap().is_zero());
        assert_eq!(rho_from_ricci_flat_change(&dx1, &cy_example(4)), Err(Error::NotRicciFlat));

        let upsilon = OneForm::new(vec![p2("1 + x", 4), p2("y", 4)]);
        let direct = rho(&change_preferred(&flat, &upsilon).unwrap()).unwrap();
        assert!(direct.agrees_with(&rho_from_ricci_flat_change(&upsilon, &flat).unwrap()));
    }

    #[test]
    fn exact_one_form() {
        let u = OneForm::exact(&p2("x + x^2*y", 4));
        assert_eq!(u.component(0), &p2("1 + 2*x*y", 3));
        assert_eq!(u.component(1), &p2("x^2", 3));
    }
}
