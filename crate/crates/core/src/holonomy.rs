//! Infinitesimal holonomy at the base point: values of ∇ᵏR read as
//! endomorphisms of the tangent fiber, closed under commutators.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Span};
use crate::scalar::Field;
use crate::tensor::{ConnectionChart, TensorJet};

/// Where a generator came from: (∇_{z₁}…∇_{z_k}R)(∂ₕ, ∂ⱼ) at the base point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    /// Derivative directions, outermost first.
    pub derivatives: Vec<usize>,
    pub h: usize,
    pub j: usize,
}

impl Provenance {
    pub fn depth(&self) -> usize {
        self.derivatives.len()
    }
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "∇^{}R", self.depth())?;
        if !self.derivatives.is_empty() {
            let z: Vec<String> = self.derivatives.iter().map(ToString::to_string).collect();
            write!(f, "[{}]", z.join(","))?;
        }
        write!(f, "({},{})", self.h, self.j)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator<F: Field> {
    pub matrix: Matrix<F>,
    pub provenance: Provenance,
}

/// A set of fiber endomorphisms together with the basis of their span or
/// Lie closure.
#[derive(Clone, Debug)]
pub struct EndoSet<F: Field> {
    pub fiber_dim: usize,
    /// Linearly independent generators, in discovery order.
    pub generators: Vec<Generator<F>>,
    pub basis: Vec<Matrix<F>>,
    /// Deepest derivative order that contributed generators.
    pub depth: usize,
    pub stabilized: bool,
    /// Closure dimension after each depth, starting at depth 0.
    pub history: Vec<usize>,
    span: Span<F>,
}

impl<F: Field> EndoSet<F> {
    pub fn empty(fiber_dim: usize) -> Self {
        EndoSet {
            fiber_dim,
            generators: Vec::new(),
            basis: Vec::new(),
            depth: 0,
            stabilized: false,
            history: Vec::new(),
            span: Span::new(fiber_dim * fiber_dim),
        }
    }

    /// A set whose basis is the span of `matrices`; provenance is left empty.
    pub fn from_matrices(fiber_dim: usize, matrices: impl IntoIterator<Item = Matrix<F>>) -> Self {
        let mut set = Self::empty(fiber_dim);
        for m in matrices {
            set.push_basis(m);
        }
        set
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn push_basis(&mut self, m: Matrix<F>) -> bool {
        assert_eq!((m.rows(), m.cols()), (self.fiber_dim, self.fiber_dim), "endomorphism shape");
        if self.span.insert(m.as_flat()) {
            self.basis.push(m);
            true
        } else {
            false
        }
    }

    fn push_generator(&mut self, matrix: Matrix<F>, provenance: Provenance) -> bool {
        if self.push_basis(matrix.clone()) {
            self.generators.push(Generator { matrix, provenance });
            true
        } else {
            false
        }
    }

    pub fn contains(&self, m: &Matrix<F>) -> bool {
        self.span.contains(m.as_flat())
    }

    /// Exact check that [A, B] lies in the span for all basis pairs.
    pub fn is_closed(&self) -> bool {
        (0..self.basis.len())
            .all(|i| (0..i).all(|j| self.contains(&self.basis[i].commutator(&self.basis[j]))))
    }

    pub fn is_trace_free(&self) -> bool {
        self.basis.iter().all(|m| m.trace().is_zero())
    }

    /// Conjugates every element by `p`: A ↦ P⁻¹AP.
    pub fn conjugate(&self, p: &Matrix<F>) -> Result<Self> {
        let p_inv = p.inverse()?;
        let mut out = self.clone();
        out.span = Span::new(self.fiber_dim * self.fiber_dim);
        out.basis.clear();
        for m in &self.basis {
            out.push_basis(p_inv.mul(m).mul(p));
        }
        for g in &mut out.generators {
            g.matrix = p_inv.mul(&g.matrix).mul(p);
        }
        Ok(out)
    }
}

/// Brackets until the span is closed.
pub fn lie_closure<F: Field>(set: &EndoSet<F>) -> EndoSet<F> {
    let mut out = set.clone();
    close_in_place(&mut out, 0);
    out
}

/// Closes `set`, assuming pairs among the first `done` basis elements were
/// already bracketed.
fn close_in_place<F: Field>(set: &mut EndoSet<F>, done: usize) {
    let mut i = done;
    while i < set.basis.len() {
        for j in 0..i {
            let c = set.basis[i].commutator(&set.basis[j]);
            set.push_basis(c);
        }
        i += 1;
    }
}

fn endo_at<F: Field>(t: &TensorJet<F>, prefix: &mut Vec<usize>, n: usize) -> Matrix<F> {
    let at = prefix.len();
    let mut data = Vec::with_capacity(n * n);
    for k in 0..n {
        for l in 0..n {
            prefix.push(k);
            prefix.push(l);
            data.push(t.get(prefix).constant_term().clone());
            prefix.truncate(at);
        }
    }
    Matrix::from_flat(n, data)
}

fn for_each_index(n: usize, len: usize, mut f: impl FnMut(&[usize])) {
    let mut idx = vec![0; len];
    loop {
        f(&idx);
        let mut p = len;
        loop {
            if p == 0 {
                return;
            }
            p -= 1;
            idx[p] += 1;
            if idx[p] < n {
                break;
            }
            idx[p] = 0;
        }
    }
}

/// Adds the base-point values of `t` (rank k + 4, slots z₁…z_k h j K l) as generators.
fn collect<F: Field>(set: &mut EndoSet<F>, t: &TensorJet<F>, depth: usize) -> usize {
    let n = set.fiber_dim;
    let mut added = 0;
    for_each_index(n, depth + 2, |prefix| {
        let (z, hj) = prefix.split_at(depth);
        if hj[0] >= hj[1] {
            return;
        }
        let m = endo_at(t, &mut prefix.to_vec(), n);
        if m.is_zero() {
            return;
        }
        let provenance = Provenance { derivatives: z.to_vec(), h: hj[0], j: hj[1] };
        if set.push_generator(m, provenance) {
            added += 1;
        }
    });
    added
}

/// The base-point values of ∇ᵏR for k = 0..=depth, as a generator span.
pub fn curvature_endos<F: Field>(conn: &ConnectionChart<F>, depth: usize) -> Result<EndoSet<F>> {
    if conn.order() < depth + 1 {
        return Err(Error::OrderExhausted { needed: depth + 1, available: conn.order() });
    }
    let conn = conn.truncate(depth + 1);
    let mut set = EndoSet::empty(conn.dim());
    let mut t = conn.curvature()?;
    for k in 0..=depth {
        if k > 0 {
            t = conn.covariant_derivative(&t)?;
        }
        collect(&mut set, &t, k);
        set.history.push(set.dim());
    }
    set.depth = depth;
    Ok(set)
}

/// Options for [`infinitesimal_holonomy_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HolonomyOptions {
    /// Highest derivative depth tried; capped at jet order − 1.
    pub max_depth: Option<usize>,
}

/// Lie closure of curvature generators at increasing depth, stopping once the
/// dimension repeats at two consecutive depths.
pub fn infinitesimal_holonomy<F: Field>(conn: &ConnectionChart<F>) -> Result<EndoSet<F>> {
    infinitesimal_holonomy_with(conn, HolonomyOptions { max_depth: None })
}

pub fn infinitesimal_holonomy_with<F: Field>(conn: &ConnectionChart<F>, opts: HolonomyOptions) -> Result<EndoSet<F>> {
    if conn.order() < 2 {
        return Err(Error::OrderExhausted { needed: 2, available: conn.order() });
    }
    let n = conn.dim();
    let cap = opts.max_depth.map_or(conn.order() - 1, |d| d.min(conn.order() - 1));
    let mut set = EndoSet::empty(n);
    let mut history = Vec::new();
    for depth in 0..=cap {
        // every depth restarts from a chart truncated to exactly the order it needs
        let gens = curvature_endos(conn, depth)?;
        let before = set.dim();
        for g in gens.generators {
            set.push_generator(g.matrix, g.provenance);
        }
        close_in_place(&mut set, before);
        history.push(set.dim());
        set.depth = depth;
        let full = set.dim() == n * n;
        if full || (depth >= 1 && history[depth] == history[depth - 1]) {
            set.stabilized = true;
            break;
        }
    }
    set.history = history;
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cotton_york_2d, flat};
    use crate::cone::projective_cone;
    use crate::scalar::Rational;

    fn r(x: i64) -> Rational {
        Rational::from(x)
    }

    #[test]
    fn closure_of_small_sets() {
        let e12 = Matrix::unit(2, 0, 1);
        let e21 = Matrix::unit(2, 1, 0);
        let abelian = lie_closure(&EndoSet::<Rational>::from_matrices(2, [e12.clone()]));
        assert_eq!(abelian.dim(), 1);
        let sl2 = lie_closure(&EndoSet::from_matrices(2, [e12, e21]));
        assert_eq!(sl2.dim(), 3);
        assert!(sl2.is_closed() && sl2.is_trace_free());
        assert!(sl2.contains(&Matrix::from_rows(vec![vec![r(1), r(0)], vec![r(0), r(-1)]])));
    }

    #[test]
    fn flat_cone_has_trivial_holonomy() {
        let cone = projective_cone(&flat(3, 4).unwrap()).unwrap();
        assert_eq!(curvature_endos(&cone.cone, 1).unwrap().dim(), 0);
        let hol = infinitesimal_holonomy(&cone.cone).unwrap();
        assert_eq!(hol.dim(), 0);
        assert!(hol.stabilized);
    }

    #[test]
    fn cy2d_cone_depth_zero_is_rank_one() {
        let cone = projective_cone(&cotton_york_2d(5).unwrap()).unwrap();
        let gens = curvature_endos(&cone.cone, 0).unwrap();
        assert_eq!(gens.dim(), 1);
        let m = &gens.generators[0].matrix;
        // only the q row is populated
        for row in 0..2 {
            assert!(m.row(row).iter().all(|x| x.is_zero()));
        }
        assert!(curvature_endos(&cone.cone, 9).is_err());
    }

    #[test]
    fn closure_is_monotone_in_depth() {
        let cone = projective_cone(&cotton_york_2d(6).unwrap()).unwrap();
        let mut last = 0;
        for d in 0..4 {
            let dim = lie_closure(&curvature_endos(&cone.cone, d).unwrap()).dim();
            assert!(dim >= last);
            last = dim;
        }
        let hol = infinitesimal_holonomy(&cone.cone).unwrap();
        assert!(hol.is_closed());
        assert!(hol.dim() >= last || !hol.stabilized);
    }

    #[test]
    fn product_holonomy_dimensions() {
        use crate::catalog::Target;
        for (target, order, expected) in [
            ("product:quadric:3,0,1,quadric:3,0,1", 5, 10),
            ("product:non-einstein:2,non-einstein:2", 5, 24),
        ] {
            let t0 = std::time::Instant::now();
            let entry: Target = target.parse().unwrap();
            let cone = projective_cone(&entry.build(order).unwrap().conn).unwrap();
            let hol = infinitesimal_holonomy(&cone.cone).unwrap();
            eprintln!("{target}: dim {} history {:?} in {:?}", hol.dim(), hol.history, t0.elapsed());
            assert_eq!(hol.dim(), expected);
        }
    }

    #[test]
    fn symplectic_cone_holonomy_is_sp6() {
        use crate::catalog::symplectic_example;
        use crate::cone::{ricci_flat_data, symplectic_cone};
        let t0 = std::time::Instant::now();
        let (conn, nu) = symplectic_example(4, 7).unwrap();
        let cone = symplectic_cone(&conn, &ricci_flat_data(&conn, &nu).unwrap()).unwrap();
        let hol = infinitesimal_holonomy(&cone.cone).unwrap();
        eprintln!("symplectic: order {} dim {} history {:?} in {:?}", cone.cone.order(), hol.dim(), hol.history, t0.elapsed());
        assert_eq!(hol.dim(), 21);
    }

    #[test]
    fn tractor_curvature_lies_in_cone_holonomy() {
        use crate::catalog::Target;
        use crate::projective::tractor_curvature;
        for target in ["cy2d", "product:quadric:3,0,1,quadric:3,0,1", "product:non-einstein:2,non-einstein:2"] {
            let base = target.parse::<Target>().unwrap().build(5).unwrap().conn;
            let hol = infinitesimal_holonomy(&projective_cone(&base).unwrap().cone).unwrap();
            let tc = tractor_curvature(&base).unwrap();
            for h in 0..base.dim() {
                for j in 0..base.dim() {
                    assert!(hol.contains(&tc.at_base(h, j)), "{target} ({h},{j})");
                }
            }
        }
    }
}
