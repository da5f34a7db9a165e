//! Recognition of bracket-closed matrix algebras by dimension and invariant
//! structures: bilinear forms, commutant and complex or quaternionic
//! structures.

use std::fmt;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::holonomy::EndoSet;
use crate::linalg::{signature, Matrix, Span};
use crate::scalar::{Field, Rational};

pub use crate::linalg::signature as form_signature;

/// Solution space of a homogeneous system in the n² entries of an n×n matrix.
fn matrix_kernel(n: usize, equations: Vec<Vec<Rational>>) -> Vec<Matrix<Rational>> {
    let mut span = Span::new(n * n);
    for e in equations {
        span.insert(&e);
    }
    if span.dim() == 0 {
        return (0..n * n).map(|k| Matrix::unit(n, k / n, k % n)).collect();
    }
    let system = Matrix::from_rows(span.vectors().map(<[Rational]>::to_vec).collect());
    system.nullspace().into_iter().map(|v| Matrix::from_flat(n, v)).collect()
}

/// Solutions S of AᵀS + SA = 0 for every basis element, split into the
/// symmetric and antisymmetric parts.
pub fn invariant_bilinear_forms(algebra: &EndoSet<Rational>) -> (Vec<Matrix<Rational>>, Vec<Matrix<Rational>>) {
    let n = algebra.fiber_dim;
    let mut equations = Vec::new();
    for a in &algebra.basis {
        for r in 0..n {
            for c in 0..n {
                let mut row = vec![Rational::zero(); n * n];
                for k in 0..n {
                    row[k * n + c].add_assign_ref(&a[(k, r)]);
                    row[r * n + k].add_assign_ref(&a[(k, c)]);
                }
                equations.push(row);
            }
        }
    }
    let kernel = matrix_kernel(n, equations);
    let mut sym = Span::new(n * n);
    let mut anti = Span::new(n * n);
    let (mut sym_basis, mut anti_basis) = (Vec::new(), Vec::new());
    for s in kernel {
        let t = s.transpose();
        let plus = s.add(&t);
        let minus = s.sub(&t);
        if sym.insert(plus.as_flat()) {
            sym_basis.push(plus);
        }
        if anti.insert(minus.as_flat()) {
            anti_basis.push(minus);
        }
    }
    (sym_basis, anti_basis)
}

/// All C with [C, A] = 0 for every basis element.
pub fn commutant(algebra: &EndoSet<Rational>) -> Vec<Matrix<Rational>> {
    let n = algebra.fiber_dim;
    let mut equations = Vec::new();
    for a in &algebra.basis {
        for r in 0..n {
            for c in 0..n {
                let mut row = vec![Rational::zero(); n * n];
                for k in 0..n {
                    row[r * n + k].add_assign_ref(&a[(k, c)]);
                    let idx = k * n + c;
                    row[idx] = row[idx].minus(&a[(r, k)]);
                }
                equations.push(row);
            }
        }
    }
    matrix_kernel(n, equations)
}

pub fn is_invariant_form(algebra: &EndoSet<Rational>, s: &Matrix<Rational>) -> bool {
    algebra.basis.iter().all(|a| a.transpose().mul(s).add(&s.mul(a)).is_zero())
}

fn is_scalar(m: &Matrix<Rational>) -> bool {
    let n = m.rows();
    m.sub(&Matrix::identity(n).scale(&m[(0, 0)])).is_zero()
}

/// For C with C² = αC + βI and 4β + α² < 0 returns J₀ = 2C − αI and
/// μ = −(4β + α²), so that J₀² = −μI.
fn complex_candidate(c: &Matrix<Rational>) -> Option<(Matrix<Rational>, Rational)> {
    let n = c.rows();
    if n == 0 || is_scalar(c) {
        return None;
    }
    let c2 = c.mul(c);
    let off = (0..n * n).map(|k| (k / n, k % n)).find(|&(r, s)| r != s && !c[(r, s)].is_zero());
    let alpha = match off {
        Some(pos) => c2[pos].times(&c[pos].inverse()?),
        None => {
            let b = (1..n).find(|&b| c[(b, b)] != c[(0, 0)])?;
            c2[(0, 0)].minus(&c2[(b, b)]).times(&c[(0, 0)].minus(&c[(b, b)]).inverse()?)
        }
    };
    let rest = c2.sub(&c.scale(&alpha));
    if !is_scalar(&rest) {
        return None;
    }
    let beta = rest[(0, 0)].clone();
    let mu = beta.times(&Rational::from(4)).plus(&alpha.times(&alpha)).negate();
    if mu.real_sign() != Some(std::cmp::Ordering::Greater) {
        return None;
    }
    let j0 = c.scale(&Rational::from(2)).sub(&Matrix::identity(n).scale(&alpha));
    Some((j0, mu))
}

fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.0.is_negative() {
        return None;
    }
    let (n, d) = (x.0.numer(), x.0.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| Rational(num_rational::BigRational::new(rn, rd)))
}

/// Complex structures J₀ (J₀² = −μI, μ > 0) found in a commutant basis.
fn complex_structures(comm: &[Matrix<Rational>]) -> Vec<(Matrix<Rational>, Rational)> {
    let mut candidates: Vec<Matrix<Rational>> = comm.to_vec();
    for i in 0..comm.len() {
        for j in 0..i {
            candidates.push(comm[i].add(&comm[j]));
        }
    }
    let mut seen = Span::new(comm.first().map_or(0, |m| m.rows() * m.rows()));
    let mut out = Vec::new();
    for c in candidates {
        if let Some((j0, mu)) = complex_candidate(&c) {
            if seen.insert(j0.as_flat()) {
                out.push((j0, mu));
            }
        }
    }
    out
}

/// Two anticommuting complex structures, after adjusting the second one.
fn quaternionic_pair(structures: &[(Matrix<Rational>, Rational)]) -> Option<(Matrix<Rational>, Matrix<Rational>)> {
    let (j1, mu1) = structures.first()?;
    for (j2, _) in &structures[1..] {
        let anti = j1.mul(j2).add(&j2.mul(j1));
        if !is_scalar(&anti) {
            continue;
        }
        let t = anti[(0, 0)].times(&mu1.times(&Rational::from(2)).inverse()?);
        let k = j2.add(&j1.scale(&t));
        if k.is_zero() {
            continue;
        }
        let k2 = k.mul(&k);
        if is_scalar(&k2) && k2[(0, 0)].real_sign() == Some(std::cmp::Ordering::Less) {
            return Some((j1.clone(), k));
        }
    }
    None
}

/// A representative with nonzero determinant, searched over a fixed list of
/// integer combinations.
fn nondegenerate_combination(basis: &[Matrix<Rational>]) -> Option<Matrix<Rational>> {
    let n = basis.first()?.rows();
    let mut weights: Vec<Vec<i64>> = (0..basis.len()).map(|i| (0..basis.len()).map(|j| i64::from(i == j)).collect()).collect();
    for base in 1..=8i64 {
        weights.push((0..basis.len()).map(|i| base.pow(i as u32)).collect());
    }
    weights.into_iter().find_map(|w| {
        let m = basis
            .iter()
            .zip(&w)
            .fold(Matrix::zeros(n, n), |acc, (b, &k)| acc.add(&b.scale(&Rational::from(k))));
        (!m.determinant().is_zero()).then_some(m)
    })
}

/// Whether the algebra is of the metric kind (projectively Einstein) or not.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Einstein,
    NonEinstein,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub dimension: usize,
    pub fiber_dim: usize,
    pub label: String,
    pub family: Option<Family>,
    /// Whether the dimension restriction attached to the label's family holds.
    pub meets_restriction: Option<bool>,
    pub trace_free: bool,
    pub complex_trace_free: Option<bool>,
    pub invariant_sym_forms: Vec<Matrix<Rational>>,
    /// Nondegenerate invariant symmetric form, signed so that p ≥ q.
    pub sym_representative: Option<Matrix<Rational>>,
    pub signature: Option<(usize, usize)>,
    pub invariant_antisym_forms: Vec<Matrix<Rational>>,
    pub antisym_nondegenerate: bool,
    pub commutant_dim: usize,
    /// Elements J of the commutant with J² = −Id.
    pub commutant_structures: Vec<Matrix<Rational>>,
    pub complex: bool,
    pub quaternionic: bool,
    pub evidence: Vec<String>,
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {} on ℝ^{})", self.label, self.dimension, self.fiber_dim)?;
        if let Some((p, q)) = self.signature {
            write!(f, ", invariant form of signature ({p}, {q})")?;
        }
        Ok(())
    }
}

struct Evidence {
    n: usize,
    d: usize,
    sym_dim: usize,
    anti_dim: usize,
    anti_nondeg: bool,
    sig: Option<(usize, usize)>,
    sym_rep: Option<Matrix<Rational>>,
    j0: Option<(Matrix<Rational>, Rational)>,
    quaternionic: bool,
    tf: bool,
    ctf: bool,
}

fn label_for(e: &Evidence) -> Option<(String, Family, bool)> {
    let (n, d) = (e.n, e.d);
    let no_forms = e.sym_dim == 0 && e.anti_dim == 0;
    let complex = e.j0.is_some();
    if let (Some((p, q)), Some(s)) = (e.sig, &e.sym_rep) {
        if e.sym_dim == 1 && d == n * (n - 1) / 2 {
            return Some((format!("so({p},{q})"), Family::Einstein, p + q >= 5));
        }
        if let Some((j0, mu)) = &e.j0 {
            let m = n / 2;
            let hermitian = j0.transpose().mul(s).mul(j0) == s.scale(mu);
            if n % 2 == 0 && hermitian && e.ctf && d == m * m - 1 && p % 2 == 0 && q % 2 == 0 {
                return Some((format!("su({},{})", p / 2, q / 2), Family::Einstein, m >= 3));
            }
        }
        if e.quaternionic && n % 4 == 0 {
            let k = n / 4;
            if d == k * (2 * k + 1) && p % 4 == 0 && q % 4 == 0 {
                return Some((format!("sp({},{})", p / 4, q / 4), Family::Einstein, k >= 2));
            }
        }
    }
    if complex && n % 2 == 0 && e.ctf {
        let m = n / 2;
        if e.sym_dim == 2 && e.anti_dim == 0 && d == m * (m - 1) {
            return Some((format!("so({m},C)"), Family::Einstein, m >= 5));
        }
        if e.anti_dim == 2 && e.sym_dim == 0 && m % 2 == 0 && d == m * (m + 1) {
            return Some((format!("sp({m},C)"), Family::NonEinstein, m >= 4));
        }
    }
    if e.anti_dim == 1 && e.sym_dim == 0 && e.anti_nondeg && d == n * (n + 1) / 2 {
        return Some((format!("sp({n},R)"), Family::NonEinstein, n >= 4));
    }
    if no_forms && e.tf {
        if d + 1 == n * n {
            return Some((format!("sl({n},R)"), Family::NonEinstein, n >= 3));
        }
        if complex && e.ctf && n % 2 == 0 && d + 2 == n * n / 2 {
            let m = n / 2;
            return Some((format!("sl({m},C)"), Family::NonEinstein, m >= 3));
        }
        if e.quaternionic && n % 4 == 0 && d + 1 == n * n / 4 {
            let k = n / 4;
            return Some((format!("sl({k},H)"), Family::NonEinstein, k >= 2));
        }
    }
    None
}

/// Labels `algebra` (assumed bracket-closed) by dimension and invariants.
pub fn classify(algebra: &EndoSet<Rational>) -> ClassificationReport {
    let n = algebra.fiber_dim;
    let d = algebra.dim();
    let (sym, anti) = invariant_bilinear_forms(algebra);
    let mut evidence = Vec::new();
    let sym_rep = nondegenerate_combination(&sym).map(|s| match signature(&s) {
        Ok((p, q)) if p < q => s.scale(&Rational::from(-1)),
        _ => s,
    });
    let sig = sym_rep.as_ref().and_then(|s| signature(s).ok());
    let anti_nondeg = nondegenerate_combination(&anti).is_some();
    let comm = commutant(algebra);
    let structures = complex_structures(&comm);
    let quaternionic = quaternionic_pair(&structures).is_some();
    let j0 = structures.first().cloned();
    let tf = algebra.is_trace_free();
    let ctf = j0
        .as_ref()
        .is_some_and(|(j, _)| tf && algebra.basis.iter().all(|a| j.mul(a).trace().is_zero()));
    let commutant_structures: Vec<Matrix<Rational>> = structures
        .iter()
        .filter_map(|(j, mu)| Some(j.scale(&rational_sqrt(mu)?.inverse()?)))
        .collect();
    evidence.push(format!("dimension {d} on a fiber of dimension {n}"));
    evidence.push(format!("{} invariant symmetric forms, {} antisymmetric", sym.len(), anti.len()));
    if let Some((p, q)) = sig {
        evidence.push(format!("nondegenerate invariant symmetric form of signature ({p}, {q})"));
    }
    if anti_nondeg {
        evidence.push("nondegenerate invariant antisymmetric form".into());
    }
    evidence.push(format!("commutant of dimension {}", comm.len()));
    if j0.is_some() {
        evidence.push(format!("commutant contains {} complex structure(s)", structures.len()));
    }
    if quaternionic {
        evidence.push("commutant contains anticommuting complex structures".into());
    }
    evidence.push(if tf { "trace-free".into() } else { "not trace-free".into() });

    let e = Evidence {
        n,
        d,
        sym_dim: sym.len(),
        anti_dim: anti.len(),
        anti_nondeg,
        sig,
        sym_rep: sym_rep.clone(),
        j0: j0.clone(),
        quaternionic,
        tf,
        ctf,
    };
    let (label, family, meets) = if d == 0 {
        ("trivial".to_string(), None, None)
    } else {
        match label_for(&e) {
            Some((l, f, m)) => (l, Some(f), Some(m)),
            None => ("unrecognized".to_string(), None, None),
        }
    };
    let mut report = ClassificationReport {
        dimension: d,
        fiber_dim: n,
        label,
        family,
        meets_restriction: meets,
        trace_free: tf,
        complex_trace_free: j0.as_ref().map(|_| ctf),
        invariant_sym_forms: sym,
        sym_representative: sym_rep,
        signature: sig,
        invariant_antisym_forms: anti,
        antisym_nondegenerate: anti_nondeg,
        commutant_dim: comm.len(),
        commutant_structures,
        complex: j0.is_some(),
        quaternionic,
        evidence,
    };
    if !verify_report(algebra, &report) {
        report.label = "unrecognized".into();
        report.family = None;
        report.meets_restriction = None;
        report.evidence.push("re-verification of reported invariants failed".into());
    }
    report
}

/// Exact re-check of every form and complex structure carried by `report`.
pub fn verify_report(algebra: &EndoSet<Rational>, report: &ClassificationReport) -> bool {
    let n = algebra.fiber_dim;
    let minus_id = Matrix::identity(n).scale(&Rational::from(-1));
    report.invariant_sym_forms.iter().all(|s| s.is_symmetric() && is_invariant_form(algebra, s))
        && report.invariant_antisym_forms.iter().all(|s| s.is_antisymmetric() && is_invariant_form(algebra, s))
        && report.sym_representative.as_ref().is_none_or(|s| is_invariant_form(algebra, s) && !s.determinant().is_zero())
        && report.commutant_structures.iter().all(|j| {
            j.mul(j) == minus_id && algebra.basis.iter().all(|a| j.commutator(a).is_zero())
        })
        && report.dimension == algebra.dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::holonomy::lie_closure;

    fn q(x: i64) -> Rational {
        Rational::from(x)
    }

    fn algebra(n: usize, mats: Vec<Matrix<Rational>>) -> EndoSet<Rational> {
        lie_closure(&EndoSet::from_matrices(n, mats))
    }

    /// Basis {A : AᵀS + SA = 0} for a given form S.
    fn preserving(s: &Matrix<Rational>) -> EndoSet<Rational> {
        let n = s.rows();
        let s_inv = s.inverse().unwrap();
        // A = S⁻¹X with X antisymmetric for symmetric S, symmetric X for antisymmetric S
        let sym = s.is_symmetric();
        let mut mats = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if (sym && a < b) || (!sym && a <= b) {
                    let e = Matrix::unit(n, a, b);
                    let x = if sym { e.sub(&e.transpose()) } else { e.add(&e.transpose()) };
                    mats.push(s_inv.mul(&x));
                }
            }
        }
        EndoSet::from_matrices(n, mats)
    }

    fn diag(entries: &[i64]) -> Matrix<Rational> {
        let n = entries.len();
        Matrix::from_fn(n, n, |r, c| if r == c { q(entries[r]) } else { q(0) })
    }

    fn sl(n: usize) -> EndoSet<Rational> {
        let mut mats = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    mats.push(Matrix::unit(n, a, b));
                }
            }
        }
        algebra(n, mats)
    }

    fn standard_j(m: usize) -> Matrix<Rational> {
        crate::catalog::complex_structure(m)
    }

    /// Realification of complex matrices given as (re, im) pairs.
    fn realify(re: &Matrix<Rational>, im: &Matrix<Rational>) -> Matrix<Rational> {
        let m = re.rows();
        Matrix::from_fn(2 * m, 2 * m, |r, c| {
            let (a, b) = (re[(r / 2, c / 2)].clone(), im[(r / 2, c / 2)].clone());
            match (r % 2, c % 2) {
                (0, 0) | (1, 1) => a,
                (1, 0) => b,
                _ => b.negate(),
            }
        })
    }

    #[test]
    fn forms_of_small_algebras() {
        let so3 = preserving(&Matrix::identity(3));
        let (sym, anti) = invariant_bilinear_forms(&so3);
        assert_eq!((sym.len(), anti.len()), (1, 0));
        let (sym, anti) = invariant_bilinear_forms(&sl(3));
        assert_eq!((sym.len(), anti.len()), (0, 0));
        let e12 = EndoSet::from_matrices(2, [Matrix::unit(2, 0, 1)]);
        let (sym, anti) = invariant_bilinear_forms(&e12);
        // E₁₂ is trace-free, so the area form is invariant as well
        assert_eq!((sym.len(), anti.len()), (1, 1));
        assert_eq!(sym[0][(0, 0)], q(0));
        assert_eq!(sym[0][(0, 1)], q(0));
        assert!(!sym[0][(1, 1)].is_zero());
    }

    #[test]
    fn commutant_examples() {
        assert_eq!(commutant(&EndoSet::<Rational>::empty(3)).len(), 9);
        let gl: Vec<Matrix<Rational>> = (0..9).map(|k| Matrix::unit(3, k / 3, k % 3)).collect();
        let comm = commutant(&EndoSet::from_matrices(3, gl));
        assert_eq!(comm.len(), 1);
        assert!(is_scalar(&comm[0]));
    }

    #[test]
    fn orthogonal_labels() {
        let r = classify(&preserving(&Matrix::identity(5)));
        assert_eq!((r.label.as_str(), r.signature, r.meets_restriction), ("so(5,0)", Some((5, 0)), Some(true)));
        let r = classify(&preserving(&diag(&[1, -1, 1, -1, -1])));
        assert_eq!((r.label.as_str(), r.signature), ("so(3,2)", Some((3, 2))));
        assert_eq!(r.family, Some(Family::Einstein));
    }

    #[test]
    fn symplectic_and_special_linear_labels() {
        let nu = crate::catalog::standard_symplectic_form(6);
        let r = classify(&preserving(&nu));
        assert_eq!((r.dimension, r.label.as_str()), (21, "sp(6,R)"));
        assert_eq!(r.invariant_antisym_forms.len(), 1);
        let r = classify(&sl(5));
        assert_eq!((r.dimension, r.label.as_str()), (24, "sl(5,R)"));
        assert!(r.trace_free && r.invariant_sym_forms.is_empty() && r.invariant_antisym_forms.is_empty());
        let r = classify(&EndoSet::from_matrices(2, [Matrix::unit(2, 0, 1)]));
        assert_eq!(r.label, "unrecognized");
        assert_eq!(classify(&EndoSet::empty(3)).label, "trivial");
    }

    fn complex_sl(m: usize) -> EndoSet<Rational> {
        let zero = Matrix::zeros(m, m);
        let mut mats = Vec::new();
        for a in 0..m {
            for b in 0..m {
                if a != b {
                    let e = Matrix::unit(m, a, b);
                    mats.push(realify(&e, &zero));
                    mats.push(realify(&zero, &e));
                }
            }
        }
        algebra(2 * m, mats)
    }

    #[test]
    fn complex_labels() {
        let r = classify(&complex_sl(3));
        assert_eq!((r.dimension, r.label.as_str()), (16, "sl(3,C)"));
        assert!(r.complex && !r.quaternionic);
        assert!(!r.commutant_structures.is_empty());
        let j = standard_j(3);
        assert!(r.commutant_structures.iter().any(|s| *s == j || *s == j.scale(&q(-1))));

        // su(2,1): complex matrices preserving the hermitian form diag(1,1,−1)
        let h = [1, 1, -1];
        let zero = Matrix::zeros(3, 3);
        let mut mats = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                if a < b {
                    // X = E_ab − h_a h_b E_ba and i(E_ab + h_a h_b E_ba) with A = H⁻¹X form
                    let e = Matrix::unit(3, a, b);
                    let et = Matrix::unit(3, b, a).scale(&q(h[a] * h[b]));
                    mats.push(realify(&e.sub(&et), &zero));
                    mats.push(realify(&zero, &e.add(&et)));
                }
            }
        }
        for a in 0..2 {
            let d = Matrix::from_fn(3, 3, |r, c| {
                if r == c && r == a {
                    q(1)
                } else if r == c && r == a + 1 {
                    q(-1)
                } else {
                    q(0)
                }
            });
            mats.push(realify(&zero, &d));
        }
        let r = classify(&algebra(6, mats));
        assert_eq!((r.dimension, r.label.as_str(), r.signature), (8, "su(2,1)", Some((4, 2))));

        // so(5,C) realified
        let so5 = preserving(&Matrix::identity(5));
        let mut mats = Vec::new();
        for a in &so5.basis {
            mats.push(realify(a, &Matrix::zeros(5, 5)));
            mats.push(realify(&Matrix::zeros(5, 5), a));
        }
        let r = classify(&algebra(10, mats));
        assert_eq!((r.dimension, r.label.as_str()), (20, "so(5,C)"));

        // sp(4,C) realified
        let sp4 = preserving(&crate::catalog::standard_symplectic_form(4));
        let mut mats = Vec::new();
        for a in &sp4.basis {
            mats.push(realify(a, &Matrix::zeros(4, 4)));
            mats.push(realify(&Matrix::zeros(4, 4), a));
        }
        let r = classify(&algebra(8, mats));
        assert_eq!((r.dimension, r.label.as_str()), (20, "sp(4,C)"));
    }

    /// Left multiplication by quaternion matrices on ℍᵏ ≅ ℝ⁴ᵏ; the commutant
    /// is right multiplication.
    fn quaternion_left(x: [i64; 4]) -> Matrix<Rational> {
        let [a, b, c, d] = x;
        Matrix::from_rows(
            [[a, -b, -c, -d], [b, a, -d, c], [c, d, a, -b], [d, -c, b, a]]
                .iter()
                .map(|r| r.iter().map(|&v| q(v)).collect())
                .collect(),
        )
    }

    fn quaternionic_matrix(k: usize, entries: &[((usize, usize), [i64; 4])]) -> Matrix<Rational> {
        let mut m = Matrix::zeros(4 * k, 4 * k);
        for &((r, c), x) in entries {
            let block = quaternion_left(x);
            for i in 0..4 {
                for j in 0..4 {
                    m[(4 * r + i, 4 * c + j)] = block[(i, j)].clone();
                }
            }
        }
        m
    }

    #[test]
    fn quaternionic_labels() {
        let units = [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];
        // sl(2,H)
        let mut mats = Vec::new();
        for x in [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]] {
            mats.push(quaternionic_matrix(2, &[((0, 1), x)]));
            mats.push(quaternionic_matrix(2, &[((1, 0), x)]));
        }
        let r = classify(&algebra(8, mats));
        assert_eq!((r.dimension, r.label.as_str()), (15, "sl(2,H)"));
        assert!(r.quaternionic);

        // sp(2,0) = sp(2): quaternion-antihermitian 2×2 matrices
        let mut mats = Vec::new();
        for u in units {
            mats.push(quaternionic_matrix(2, &[((0, 0), u)]));
            mats.push(quaternionic_matrix(2, &[((1, 1), u)]));
            mats.push(quaternionic_matrix(2, &[((0, 1), u), ((1, 0), u)]));
        }
        mats.push(quaternionic_matrix(2, &[((0, 1), [1, 0, 0, 0]), ((1, 0), [-1, 0, 0, 0])]));
        let r = classify(&algebra(8, mats));
        assert_eq!((r.dimension, r.label.as_str(), r.signature), (10, "sp(2,0)", Some((8, 0))));
    }

    #[test]
    fn reported_structures_verify() {
        for alg in [preserving(&Matrix::identity(4)), sl(3), complex_sl(2)] {
            let r = classify(&alg);
            assert!(verify_report(&alg, &r));
            for s in r.invariant_sym_forms.iter().chain(&r.invariant_antisym_forms) {
                assert!(is_invariant_form(&alg, s));
            }
        }
    }

    #[test]
    fn conjugation_keeps_label() {
        let p = Matrix::from_rows(
            [[1, 2, 0, 0, 1], [0, 1, 3, 0, 0], [0, 0, 1, -1, 0], [0, 0, 0, 1, 2], [0, 0, 0, 0, 1]]
                .iter()
                .map(|r| r.iter().map(|&v| q(v)).collect())
                .collect(),
        );
        for alg in [preserving(&diag(&[1, 1, 1, -1, -1])), sl(5)] {
            let a = classify(&alg);
            let b = classify(&alg.conjugate(&p).unwrap());
            assert_eq!((a.label, a.signature), (b.label, b.signature));
        }
    }
}
