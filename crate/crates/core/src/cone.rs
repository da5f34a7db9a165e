//! Cone connections over a preferred connection: the real projective cone,
//! the complex cone and the symplectic cone, plus product connections.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::linalg::Matrix;
use crate::projective::rho;
use crate::scalar::Field;
use crate::tensor::{jet_matrix_inverse, ConnectionChart, Slot, TensorJet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConeKind {
    Real,
    Complex,
    Symplectic,
}

impl std::str::FromStr for ConeKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "real" => Ok(ConeKind::Real),
            "complex" => Ok(ConeKind::Complex),
            "symplectic" => Ok(ConeKind::Symplectic),
            other => Err(Error::InvalidArgument(format!("unknown cone kind `{other}`"))),
        }
    }
}

impl std::fmt::Display for ConeKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ConeKind::Real => "real",
            ConeKind::Complex => "complex",
            ConeKind::Symplectic => "symplectic",
        })
    }
}

/// A cone chart: the base connection, the cone connection and the positions
/// of the distinguished coordinates (q, and r or e when present).
#[derive(Clone, Debug)]
pub struct ConeChart<F: Field> {
    pub base: ConnectionChart<F>,
    pub cone: ConnectionChart<F>,
    pub kind: ConeKind,
    /// Index of q (Q = ∂_q).
    pub q: usize,
    /// Index of r (complex) or e (symplectic).
    pub extra: Option<usize>,
    /// Index of the first base coordinate.
    pub base_offset: usize,
}

/// Results of the exact cone checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeContract {
    pub torsion_free: bool,
    pub ricci_flat: bool,
    pub q_independent: bool,
    pub order: usize,
}

impl ConeContract {
    pub fn holds(&self) -> bool {
        self.torsion_free && self.ricci_flat && self.q_independent
    }
}

impl<F: Field> ConeChart<F> {
    pub fn dim(&self) -> usize {
        self.cone.dim()
    }

    /// Torsion, Ricci and q-independence checks, all exact.
    pub fn contract(&self) -> Result<ConeContract> {
        let torsion_free = self.cone.is_torsion_free();
        let ricci_flat = torsion_free && self.cone.ricci()?.is_zero();
        let n = self.dim();
        let q_independent = (0..n)
            .all(|k| (0..n).all(|i| (0..n).all(|j| self.cone.gamma(k, i, j).partial(self.q).is_zero())));
        Ok(ConeContract { torsion_free, ricci_flat, q_independent, order: self.cone.order() })
    }

    /// The connection seen on base directions, projected along the cone coordinates.
    pub fn project_to_base(&self) -> ConnectionChart<F> {
        let n = self.base.dim();
        let off = self.base_offset;
        let order = self.cone.order();
        ConnectionChart::from_fn(self.base.names().to_vec(), |k, i, j| {
            restrict(self.cone.gamma(k + off, i + off, j + off), n, off, order)
        })
    }
}

/// Drops the non-base variables of a jet, keeping the base block at `offset`.
fn restrict<F: Field>(jet: &Jet<F>, nvars: usize, offset: usize, order: usize) -> Jet<F> {
    let mut out = Jet::zero(nvars, order);
    for (exps, c) in jet.terms() {
        let outside = exps.iter().enumerate().any(|(v, &e)| e > 0 && (v < offset || v >= offset + nvars));
        if !outside {
            let term = Jet::monomial(nvars, order, &exps[offset..offset + nvars], c.clone());
            out = &out + &term;
        }
    }
    out
}

/// Real projective cone on (x¹…xⁿ, q): ∇̂Q = Id, ∇̂_Q Y = Y, ∇̂ₓY = ∇ₓY + P(X,Y)Q.
pub fn projective_cone<F: Field>(conn: &ConnectionChart<F>) -> Result<ConeChart<F>> {
    if !conn.is_torsion_free() {
        return Err(Error::Torsion);
    }
    let p = rho(conn)?;
    if !p.is_symmetric_in(0, 1) {
        return Err(Error::NoVolumeForm);
    }
    let n = conn.dim();
    let q = n;
    let order = p.order();
    let mut names = conn.names().to_vec();
    names.push(unique_name("q", &names));
    let cone = ConnectionChart::from_fn(names, |k, i, j| {
        let base = |jet: &Jet<F>| jet.truncate(order).embed(n + 1, 0);
        if k < n && i < n && j < n {
            base(conn.gamma(k, i, j))
        } else if k == q && i < n && j < n {
            base(p.get(&[i, j]))
        } else if (j == q && k == i) || (i == q && k == j) {
            Jet::one(n + 1, order)
        } else {
            Jet::zero(n + 1, order)
        }
    });
    Ok(ConeChart { base: conn.clone(), cone, kind: ConeKind::Real, q, extra: None, base_offset: 0 })
}

fn unique_name(stem: &str, taken: &[String]) -> String {
    let mut name = stem.to_string();
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

/// Block connection on the concatenated coordinates of `a` and `b`.
pub fn product_connection<F: Field>(a: &ConnectionChart<F>, b: &ConnectionChart<F>) -> ConnectionChart<F> {
    let (na, nb) = (a.dim(), b.dim());
    let n = na + nb;
    let order = a.order().min(b.order());
    let mut names = a.names().to_vec();
    for name in b.names() {
        let unique = unique_name(name, &names);
        names.push(unique);
    }
    ConnectionChart::from_fn(names, |k, i, j| {
        if k < na && i < na && j < na {
            a.gamma(k, i, j).truncate(order).embed(n, 0)
        } else if k >= na && i >= na && j >= na {
            b.gamma(k - na, i - na, j - na).truncate(order).embed(n, na)
        } else {
            Jet::zero(n, order)
        }
    })
}

/// `∇T + w·dq⊗T`; it vanishes exactly when e^{wq}·T is parallel.
pub fn scaled_parallel_defect<F: Field>(
    conn: &ConnectionChart<F>,
    t: &TensorJet<F>,
    q: usize,
    weight: i64,
) -> Result<TensorJet<F>> {
    let dt = conn.covariant_derivative(t)?;
    let w = F::from_i64(weight);
    Ok(TensorJet::from_fn(dt.dim(), dt.slots(), |idx| {
        let mut c = dt.get(idx).clone();
        if idx[0] == q {
            c = &c + &t.get(&idx[1..]).truncate(c.order()).scale(&w);
        }
        c
    }))
}

/// The cone metric h₀ = Ric ⊕ (n−1)dq² of a projective cone over a base with
/// symmetric parallel Ricci tensor; the metric e^{2q}h₀ is ∇̂-parallel.
pub fn cone_metric<F: Field>(cone: &ConeChart<F>) -> Result<TensorJet<F>> {
    if cone.kind != ConeKind::Real {
        return Err(Error::InvalidArgument("cone metric needs a real projective cone".into()));
    }
    let n = cone.base.dim();
    let ric = cone.base.ricci()?;
    let order = cone.cone.order();
    let scale = F::from_i64(n as i64 - 1);
    Ok(TensorJet::from_fn(n + 1, &[Slot::Lower; 2], |idx| match (idx[0] == cone.q, idx[1] == cone.q) {
        (false, false) => ric.get(idx).truncate(order.min(ric.order())).embed(n + 1, 0),
        (true, true) => Jet::constant(n + 1, order, scale.clone()),
        _ => Jet::zero(n + 1, order),
    }))
}

/// Coordinate change q′ = q + s·φ(x) of a real cone chart. For Υ = dφ the
/// cone of ∇ + Υ equals the shift of the cone of ∇ by s = −1.
pub fn shift_cone_coordinate<F: Field>(cone: &ConeChart<F>, potential: &Jet<F>, s: i64) -> ConeChart<F> {
    let n = cone.base.dim();
    let q = cone.q;
    let order = cone.cone.order().min(potential.order().saturating_sub(2));
    let s = F::from_i64(s);
    let dphi: Vec<Jet<F>> = (0..n).map(|i| potential.partial(i).scale(&s).truncate(order).embed(n + 1, 0)).collect();
    let ddphi: Vec<Vec<Jet<F>>> = (0..n)
        .map(|a| (0..n).map(|b| potential.partial(a).partial(b).scale(&s).truncate(order).embed(n + 1, 0)).collect())
        .collect();
    let old = cone.cone.truncate(order);
    let zero = Jet::zero(n + 1, order);
    // dq = dq′ − s dφ, so ∂ₓ|new = ∂ₓ|old + ∂q·(−s φₓ) and ∂_{q′} = ∂_q.
    let jac = |c: usize, a: usize| -> Jet<F> {
        // ∂x^c_old / ∂y^a_new
        if c == a {
            Jet::one(n + 1, order)
        } else if c == q && a < n {
            -&dphi[a]
        } else {
            zero.clone()
        }
    };
    let inv_jac = |c: usize, a: usize| -> Jet<F> {
        // ∂y^c_new / ∂x^a_old
        if c == a {
            Jet::one(n + 1, order)
        } else if c == q && a < n {
            dphi[a].clone()
        } else {
            zero.clone()
        }
    };
    let new = ConnectionChart::from_fn(old.names().to_vec(), |c, a, b| {
        let mut acc = zero.clone();
        for cc in 0..=n {
            let ic = inv_jac(c, cc);
            if ic.is_zero() {
                continue;
            }
            let mut inner = if cc == q && a < n && b < n { -&ddphi[a][b] } else { zero.clone() };
            for aa in 0..=n {
                let ja = jac(aa, a);
                if ja.is_zero() {
                    continue;
                }
                for bb in 0..=n {
                    let jb = jac(bb, b);
                    if jb.is_zero() {
                        continue;
                    }
                    let g = old.gamma(cc, aa, bb);
                    if !g.is_zero() {
                        inner = &inner + &(&(&ja * &jb) * g);
                    }
                }
            }
            acc = &acc + &(&ic * &inner);
        }
        acc
    });
    ConeChart { cone: new, ..cone.clone() }
}

/// Builds Γᶜₐᵦ from a frame e_A = F^b_A ∂_b and frame coefficients
/// ∇_{e_A} e_B = ω^C_{AB} e_C.
fn connection_from_frame<F: Field>(
    names: Vec<String>,
    frame: &[Vec<Jet<F>>],
    omega: impl Fn(usize, usize, usize) -> Jet<F>,
) -> Result<ConnectionChart<F>> {
    let n = frame.len();
    let g = jet_matrix_inverse(frame)?;
    let order = frame.iter().flatten().map(Jet::order).min().unwrap_or(0).saturating_sub(1);
    let om: Vec<Jet<F>> = (0..n * n * n)
        .map(|flat| omega(flat / (n * n), (flat / n) % n, flat % n).truncate(order))
        .collect();
    let om = |c: usize, a: usize, b: usize| &om[(c * n + a) * n + b];
    let g = |r: usize, c: usize| g[r][c].truncate(order + 1);
    let zero = Jet::zero(n, order);
    // Γᶜₐᵦ = F^c_C (∂ₐG^C_b + G^A_a G^B_b ω^C_AB)
    let mut inner = vec![zero.clone(); n * n * n];
    for cc in 0..n {
        for a in 0..n {
            for b in 0..n {
                let mut acc = g(cc, b).partial(a);
                for aa in 0..n {
                    let ga = g(aa, a);
                    if ga.is_zero() {
                        continue;
                    }
                    for bb in 0..n {
                        let w = om(cc, aa, bb);
                        let gb = g(bb, b);
                        if w.is_zero() || gb.is_zero() {
                            continue;
                        }
                        acc = &acc + &(&(&ga * &gb) * w);
                    }
                }
                inner[(cc * n + a) * n + b] = acc;
            }
        }
    }
    Ok(ConnectionChart::from_fn(names, |c, a, b| {
        (0..n).fold(zero.clone(), |mut acc, cc| {
            let f = &frame[c][cc];
            if !f.is_zero() {
                acc.add_product(f, &inner[(cc * n + a) * n + b]);
            }
            acc
        })
    }))
}

/// The complex cone on (q, r, x…) over a realified complex-linear connection.
/// `j` is the coordinate complex structure of the base (Jᵏₗ as a matrix) and
/// `rho_c` the real part of the complex rho tensor.
pub fn complex_cone(conn: &ConnectionChart<crate::Rational>, j: &Matrix<crate::Rational>, rho_c: &TensorJet<crate::Rational>) -> Result<ConeChart<crate::Rational>> {
    complex_cone_generic(conn, j, rho_c)
}

fn complex_cone_generic<F: Field>(conn: &ConnectionChart<F>, jm: &Matrix<F>, p: &TensorJet<F>) -> Result<ConeChart<F>> {
    let n = conn.dim();
    if jm.rows() != n || !jm.mul(jm).add(&Matrix::identity(n)).is_zero() {
        return Err(Error::InvalidArgument("J must satisfy J² = −Id on the base".into()));
    }
    if !conn.is_torsion_free() {
        return Err(Error::Torsion);
    }
    if !is_complex_linear(conn, jm) {
        return Err(Error::NotComplexLinear);
    }
    let order = conn.order().min(p.order());
    let m = n + 2;
    let (q, r, off) = (0, 1, 2);
    // P(X, JY)
    let pj: Vec<Jet<F>> = (0..n * n)
        .map(|ij| {
            let (i, jj) = (ij / n, ij % n);
            (0..n).fold(Jet::zero(n, order), |acc, l| {
                let c = &jm[(l, jj)];
                if c.is_zero() {
                    acc
                } else {
                    &acc + &p.get(&[i, l]).truncate(order).scale(c)
                }
            })
        })
        .collect();
    // Extended J on the cone: JQ = R, JR = −Q.
    let jext = |a: usize, b: usize| -> F {
        match (a, b) {
            (1, 0) => F::one(),
            (0, 1) => F::one().negate(),
            (a, b) if a >= off && b >= off => jm[(a - off, b - off)].clone(),
            _ => F::zero(),
        }
    };
    let mut names = vec![unique_name("q", conn.names()), unique_name("r", conn.names())];
    names.extend(conn.names().iter().cloned());
    let cone = ConnectionChart::from_fn(names, |k, a, b| {
        let embed = |jet: &Jet<F>| jet.truncate(order).embed(m, off);
        if a == q || b == q {
            let other = if a == q { b } else { a };
            return if k == other { Jet::one(m, order) } else { Jet::zero(m, order) };
        }
        if a == r || b == r {
            let other = if a == r { b } else { a };
            return Jet::constant(m, order, jext(k, other));
        }
        let (i, jj) = (a - off, b - off);
        if k == q {
            embed(p.get(&[i, jj]))
        } else if k == r {
            embed(&-&pj[i * n + jj])
        } else {
            embed(conn.gamma(k - off, i, jj))
        }
    });
    if !cone.is_torsion_free() {
        return Err(Error::InvalidArgument("complex rho tensor is not compatible with J".into()));
    }
    Ok(ConeChart { base: conn.clone(), cone, kind: ConeKind::Complex, q, extra: Some(r), base_offset: off })
}

/// Γ(X, JY) = JΓ(X, Y) for all coordinate fields.
pub fn is_complex_linear<F: Field>(conn: &ConnectionChart<F>, jm: &Matrix<F>) -> bool {
    let n = conn.dim();
    (0..n).all(|i| {
        (0..n).all(|jj| {
            (0..n).all(|k| {
                // Σ_l Γᵏᵢₗ J^l_j  vs  Σ_l J^k_l Γˡᵢⱼ
                let order = conn.order();
                let mut lhs = Jet::zero(n, order);
                let mut rhs = Jet::zero(n, order);
                for l in 0..n {
                    if !jm[(l, jj)].is_zero() {
                        lhs = &lhs + &conn.gamma(k, i, l).scale(&jm[(l, jj)]);
                    }
                    if !jm[(k, l)].is_zero() {
                        rhs = &rhs + &conn.gamma(l, i, jj).scale(&jm[(k, l)]);
                    }
                }
                lhs == rhs
            })
        })
    })
}

/// The cone complex structure as a (1,1) tensor, for the check ∇J = 0.
pub fn complex_structure_tensor<F: Field>(cone: &ConeChart<F>, jm: &Matrix<F>) -> TensorJet<F> {
    let m = cone.dim();
    let off = cone.base_offset;
    let order = cone.cone.order();
    TensorJet::constant(m, &[Slot::Upper, Slot::Lower], m, order, |idx| match (idx[0], idx[1]) {
        (1, 0) => F::one(),
        (0, 1) => F::one().negate(),
        (a, b) if a >= off && b >= off => jm[(a - off, b - off)].clone(),
        _ => F::zero(),
    })
}

/// Data (ν, s, σ, U, f) of the symplectic cone.
#[derive(Clone, Debug)]
pub struct SymplecticConeData<F: Field> {
    pub nu: Matrix<F>,
    pub s: TensorJet<F>,
    /// σ as a (1,1) tensor with slots (k up; j down), s = νσ.
    pub sigma: TensorJet<F>,
    /// U as a vector field.
    pub u: TensorJet<F>,
    pub f: Jet<F>,
}

impl<F: Field> SymplecticConeData<F> {
    /// Zero data: s = σ = U = f = 0.
    pub fn zero(nu: Matrix<F>, nvars: usize, order: usize) -> Self {
        let n = nu.rows();
        SymplecticConeData {
            s: TensorJet::zeros(n, &[Slot::Lower; 2], nvars, order),
            sigma: TensorJet::zeros(n, &[Slot::Upper, Slot::Lower], nvars, order),
            u: TensorJet::zeros(n, &[Slot::Upper], nvars, order),
            f: Jet::zero(nvars, order),
            nu,
        }
    }

    /// s(X, Y) = ν(X, σY) exactly.
    pub fn sigma_consistent(&self) -> bool {
        let n = self.nu.rows();
        (0..n).all(|a| {
            (0..n).all(|c| {
                let mut acc = Jet::zero(self.s.nvars(), self.sigma.order());
                for b in 0..n {
                    if !self.nu[(a, b)].is_zero() {
                        acc = &acc + &self.sigma.get(&[b, c]).scale(&self.nu[(a, b)]);
                    }
                }
                acc == self.s.get(&[a, c]).truncate(acc.order().min(self.s.get(&[a, c]).order()))
            })
        })
    }
}

fn check_symplectic<F: Field>(base: &ConnectionChart<F>, nu: &Matrix<F>) -> Result<()> {
    let n = base.dim();
    if n % 2 != 0 || nu.rows() != n {
        return Err(Error::InvalidArgument("symplectic base needs even dimension and a matching ν".into()));
    }
    if !nu.is_antisymmetric() {
        return Err(Error::Degenerate("ν is not antisymmetric".into()));
    }
    if nu.determinant().is_zero() {
        return Err(Error::Degenerate("ν is degenerate".into()));
    }
    let nu_t = TensorJet::constant(n, &[Slot::Lower; 2], n, base.order(), |i| nu[(i[0], i[1])].clone());
    if !base.covariant_derivative(&nu_t)?.is_zero() {
        return Err(Error::NotSymplectic);
    }
    Ok(())
}

/// The choices s = Ric/(2n+2), σ = ν⁻¹s, η = tr(∇σ), U = −ν⁻¹η/(2n+1),
/// f = (tr∇U + tr σ²)/(2n) that make the symplectic cone Ricci-flat.
pub fn ricci_flat_data<F: Field>(base: &ConnectionChart<F>, nu: &Matrix<F>) -> Result<SymplecticConeData<F>> {
    check_symplectic(base, nu)?;
    let dim = base.dim();
    let two_n = dim as i64;
    let nu_inv = nu.inverse()?;
    let ric = base.ricci()?;
    let s = ric.scale(&F::from_frac(1, two_n + 2));
    let sigma = TensorJet::from_fn(dim, &[Slot::Upper, Slot::Lower], |idx| {
        (0..dim).fold(Jet::zero(dim, s.order()), |acc, m| {
            let c = &nu_inv[(idx[0], m)];
            if c.is_zero() {
                acc
            } else {
                &acc + &s.get(&[m, idx[1]]).scale(c)
            }
        })
    });
    let dsigma = base.covariant_derivative(&sigma)?;
    let eta: Vec<Jet<F>> = (0..dim)
        .map(|j| (0..dim).fold(Jet::zero(dim, dsigma.order()), |acc, k| &acc + dsigma.get(&[k, k, j])))
        .collect();
    let u_scale = F::from_frac(-1, two_n + 1);
    let u = TensorJet::from_fn(dim, &[Slot::Upper], |idx| {
        (0..dim)
            .fold(Jet::zero(dim, eta[0].order()), |acc, j| {
                let c = &nu_inv[(idx[0], j)];
                if c.is_zero() {
                    acc
                } else {
                    &acc + &eta[j].scale(c)
                }
            })
            .scale(&u_scale)
    });
    let du = base.covariant_derivative(&u)?;
    let order = du.order();
    let mut f = (0..dim).fold(Jet::zero(dim, order), |acc, k| &acc + du.get(&[k, k]));
    for a in 0..dim {
        for b in 0..dim {
            f.add_product(sigma.get(&[a, b]), sigma.get(&[b, a]));
        }
    }
    let f = f.scale(&F::from_frac(1, two_n));
    Ok(SymplecticConeData { nu: nu.clone(), s, sigma, u, f })
}

/// Symplectic cone on (q, e, x¹…x²ⁿ) with frame Q = ∂_q, E = ∂_e,
/// X̄ᵢ = ∂ᵢ − λᵢ∂_e where λⱼ = Σᵢ xⁱνᵢⱼ, so [X̄ᵢ, X̄ⱼ] = −2νᵢⱼE.
pub fn symplectic_cone<F: Field>(base: &ConnectionChart<F>, data: &SymplecticConeData<F>) -> Result<ConeChart<F>> {
    let nu = &data.nu;
    check_symplectic(base, nu)?;
    let dim = base.dim();
    let m = dim + 2;
    let (q, e, off) = (0usize, 1usize, 2usize);
    let order = base
        .order()
        .min(data.s.order())
        .min(data.sigma.order())
        .min(data.u.order())
        .min(data.f.order());
    let embed = |jet: &Jet<F>, ord: usize| jet.truncate(ord.min(jet.order())).embed(m, off);
    let lambda: Vec<Jet<F>> = (0..dim)
        .map(|j| {
            (0..dim).fold(Jet::zero(m, order + 1), |acc, i| {
                let c = &nu[(i, j)];
                if c.is_zero() {
                    acc
                } else {
                    &acc + &Jet::variable(m, order + 1, i + off).scale(c)
                }
            })
        })
        .collect();
    // Frame columns: F^b_A.
    let frame: Vec<Vec<Jet<F>>> = (0..m)
        .map(|b| {
            (0..m)
                .map(|a| {
                    if a == b {
                        Jet::one(m, order + 1)
                    } else if b == e && a >= off {
                        -&lambda[a - off]
                    } else {
                        Jet::zero(m, order + 1)
                    }
                })
                .collect()
        })
        .collect();
    // ν(X, U) components: νᵢₘUᵐ.
    let nu_u: Vec<Jet<F>> = (0..dim)
        .map(|i| {
            (0..dim).fold(Jet::zero(dim, order), |acc, mm| {
                let c = &nu[(i, mm)];
                if c.is_zero() {
                    acc
                } else {
                    &acc + &data.u.get(&[mm]).truncate(order).scale(c)
                }
            })
        })
        .collect();
    let zero = Jet::zero(m, order);
    let one = Jet::one(m, order);
    let omega = |c: usize, a: usize, b: usize| -> Jet<F> {
        let xb = |x: usize| x >= off;
        // ∇_A Q = e_A
        if b == q {
            return if c == a { one.clone() } else { zero.clone() };
        }
        if a == q {
            // ∇_Q E = E, ∇_Q X̄ = X̄
            return if c == b { one.clone() } else { zero.clone() };
        }
        match (a == e, b == e) {
            (true, true) => {
                // ∇_E E = fQ − UᵏX̄ₖ
                if c == q {
                    embed(&data.f, order)
                } else if xb(c) {
                    -&embed(data.u.get(&[c - off]), order)
                } else {
                    zero.clone()
                }
            }
            (true, false) | (false, true) => {
                // ∇_E X̄ᵢ = ∇_{X̄ᵢ}E = σᵏᵢX̄ₖ + νᵢₘUᵐQ
                let i = if a == e { b - off } else { a - off };
                if c == q {
                    embed(&nu_u[i], order)
                } else if xb(c) {
                    embed(data.sigma.get(&[c - off, i]), order)
                } else {
                    zero.clone()
                }
            }
            (false, false) => {
                // ∇_{X̄ᵢ}X̄ⱼ = ΓᵏᵢⱼX̄ₖ − νᵢⱼE − sᵢⱼQ
                let (i, j) = (a - off, b - off);
                if c == q {
                    -&embed(data.s.get(&[i, j]), order)
                } else if c == e {
                    Jet::constant(m, order, nu[(i, j)].negate())
                } else {
                    embed(base.gamma(c - off, i, j), order)
                }
            }
        }
    };
    let mut names = vec![unique_name("q", base.names()), unique_name("e", base.names())];
    names.extend(base.names().iter().cloned());
    let cone = connection_from_frame(names, &frame, omega)?;
    Ok(ConeChart { base: base.clone(), cone, kind: ConeKind::Symplectic, q, extra: Some(e), base_offset: off })
}

/// ω₀ = π*ν + dq⊗α − α⊗dq with α = de + λ on the symplectic cone chart.
/// The form e^{2q}ω₀ is parallel, i.e. `scaled_parallel_defect(…, 2)` vanishes.
pub fn symplectic_form<F: Field>(cone: &ConeChart<F>, nu: &Matrix<F>) -> TensorJet<F> {
    let m = cone.dim();
    let (q, e, off) = (cone.q, cone.extra.expect("symplectic cone has an e coordinate"), cone.base_offset);
    let order = cone.cone.order() + 1;
    let dim = m - off;
    let alpha = |a: usize| -> Jet<F> {
        if a == e {
            Jet::one(m, order)
        } else if a >= off {
            (0..dim).fold(Jet::zero(m, order), |acc, i| {
                let c = &nu[(i, a - off)];
                if c.is_zero() {
                    acc
                } else {
                    &acc + &Jet::variable(m, order, i + off).scale(c)
                }
            })
        } else {
            Jet::zero(m, order)
        }
    };
    TensorJet::from_fn(m, &[Slot::Lower; 2], |idx| {
        let (a, b) = (idx[0], idx[1]);
        if a >= off && b >= off {
            Jet::constant(m, order, nu[(a - off, b - off)].clone())
        } else if a == q && b != q {
            alpha(b)
        } else if b == q && a != q {
            -&alpha(a)
        } else {
            Jet::zero(m, order)
        }
    })
}

/// Curvature components with a Q slot: R(Q, ·) and R(·, ·)Q, both of which vanish on every cone.
pub fn q_curvature_vanishes<F: Field>(cone: &ConeChart<F>) -> Result<bool> {
    let r = cone.cone.curvature()?;
    let q = cone.q;
    let vanishes = r.iter().all(|(idx, c)| !(idx[0] == q || idx[1] == q || idx[3] == q) || c.is_zero());
    Ok(vanishes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::jet_from_polynomial;
    use crate::projective::{change_preferred, OneForm};
    use crate::scalar::Rational;

    fn cy_example(order: usize) -> ConnectionChart<Rational> {
        ConnectionChart::from_fn(vec!["x".into(), "y".into()], |k, i, j| {
            if (k, i, j) == (1, 0, 0) {
                jet_from_polynomial("y^2", &["x", "y"], order).unwrap()
            } else {
                Jet::zero(2, order)
            }
        })
    }

    fn standard_nu(dim: usize) -> Matrix<Rational> {
        Matrix::from_fn(dim, dim, |r, c| {
            if r % 2 == 0 && c == r + 1 {
                Rational::from(1)
            } else if c % 2 == 0 && r == c + 1 {
                Rational::from(-1)
            } else {
                Rational::from(0)
            }
        })
    }

    #[test]
    fn flat_cone_is_flat() {
        let cone = projective_cone(&ConnectionChart::<Rational>::flat(3, 3)).unwrap();
        assert!(cone.contract().unwrap().holds());
        assert!(cone.cone.curvature().unwrap().is_zero());
    }

    #[test]
    fn cone_identities_in_coordinates() {
        let cone = projective_cone(&cy_example(4)).unwrap();
        let (c, q) = (&cone.cone, cone.q);
        for a in 0..3 {
            for k in 0..3 {
                let expected = if a == k { Jet::one(3, c.order()) } else { Jet::zero(3, c.order()) };
                assert_eq!(c.gamma(k, a, q), &expected);
            }
        }
        let contract = cone.contract().unwrap();
        assert!(contract.holds(), "{contract:?}");
        assert!(!c.curvature().unwrap().is_zero());
        assert!(q_curvature_vanishes(&cone).unwrap());
        assert_eq!(cone.project_to_base(), cy_example(4).truncate(c.order()));
    }

    #[test]
    fn asymmetric_rho_is_rejected() {
        let order = 3;
        let p = |t: &str| jet_from_polynomial::<Rational>(t, &["x", "y"], order).unwrap();
        // Γ' = Γ + Υ⊙δ with a non-closed Υ has asymmetric Ricci.
        let base = ConnectionChart::<Rational>::flat(2, order).with_names(vec!["x".into(), "y".into()]);
        let skew = change_preferred(&base, &OneForm::new(vec![p("y"), p("0")])).unwrap();
        assert_eq!(projective_cone(&skew).unwrap_err(), Error::NoVolumeForm);
    }

    #[test]
    fn splitting_change_is_a_coordinate_shift() {
        let vars = ["x", "y"];
        let phi = jet_from_polynomial::<Rational>("x*y + x^3 - 2*y^2", &vars, 6).unwrap();
        let base = cy_example(5);
        let upsilon = OneForm::exact(&phi);
        let changed = projective_cone(&change_preferred(&base, &upsilon).unwrap()).unwrap();
        let shifted = shift_cone_coordinate(&projective_cone(&base).unwrap(), &phi, -1);
        let order = changed.cone.order().min(shifted.cone.order());
        assert_eq!(changed.cone.truncate(order), shifted.cone.truncate(order));
    }

    #[test]
    fn product_of_flat_is_flat() {
        let p = product_connection(&ConnectionChart::<Rational>::flat(2, 3), &ConnectionChart::flat(2, 3));
        assert_eq!(p.dim(), 4);
        assert_eq!(p.names()[2], "x1'");
        assert!(p.curvature().unwrap().is_zero());
    }

    #[test]
    fn product_ricci_is_block_sum() {
        let a = cy_example(4);
        let p = product_connection(&a, &a);
        let ric = p.ricci().unwrap();
        let ra = a.ricci().unwrap();
        assert_eq!(ric.get(&[0, 0]), &ra.get(&[0, 0]).embed(4, 0));
        assert_eq!(ric.get(&[2, 2]), &ra.get(&[0, 0]).embed(4, 2));
        assert!(ric.get(&[0, 2]).is_zero());
    }

    #[test]
    fn flat_symplectic_cone() {
        let nu = standard_nu(4);
        let base = ConnectionChart::<Rational>::flat(4, 5);
        let data = ricci_flat_data(&base, &nu).unwrap();
        assert!(data.s.is_zero() && data.u.is_zero() && data.f.is_zero());
        let cone = symplectic_cone(&base, &data).unwrap();
        assert!(cone.contract().unwrap().holds());
        assert!(cone.cone.curvature().unwrap().is_zero());
        let omega = symplectic_form(&cone, &nu);
        assert!(scaled_parallel_defect(&cone.cone, &omega, cone.q, 2).unwrap().is_zero());
    }

    #[test]
    fn symplectic_preconditions() {
        let base = ConnectionChart::<Rational>::flat(4, 3);
        let degenerate = Matrix::zeros(4, 4);
        assert!(matches!(ricci_flat_data(&base, &degenerate), Err(Error::Degenerate(_))));
        let odd = ConnectionChart::<Rational>::flat(3, 3);
        assert!(ricci_flat_data(&odd, &standard_nu(3)).is_err());
        let bent = ConnectionChart::<Rational>::from_fn(crate::tensor::default_names(4), |k, i, j| {
            if (k, i, j) == (0, 0, 0) {
                Jet::variable(4, 3, 1)
            } else {
                Jet::zero(4, 3)
            }
        });
        assert_eq!(ricci_flat_data(&bent, &standard_nu(4)).unwrap_err(), Error::NotSymplectic);
    }

    #[test]
    fn flat_complex_cone() {
        let base = ConnectionChart::<Rational>::flat(2, 3);
        let j = Matrix::from_rows(vec![
            vec![Rational::from(0), Rational::from(-1)],
            vec![Rational::from(1), Rational::from(0)],
        ]);
        let p = TensorJet::zeros(2, &[Slot::Lower; 2], 2, 3);
        let cone = complex_cone(&base, &j, &p).unwrap();
        assert!(cone.contract().unwrap().holds());
        assert!(cone.cone.curvature().unwrap().is_zero());
        let jt = complex_structure_tensor(&cone, &j);
        assert!(cone.cone.covariant_derivative(&jt).unwrap().is_zero());
    }
}
