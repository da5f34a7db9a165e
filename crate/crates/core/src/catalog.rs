//! Built-in connections: flat space, gnomonic quadric charts, the
//! non-Einstein deformation of flat space, the two-dimensional Cotton-York
//! example, the symplectic example and complex quadrics.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cone::product_connection;
use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::linalg::{signature, Matrix};
use crate::projective::{change_preferred, rho, OneForm, ProjectiveData};
use crate::scalar::{Field, Gaussian, Rational};
use crate::tensor::{default_names, levi_civita, ConnectionChart, Slot, TensorJet};

/// Generic rational base point used for quadric charts.
pub const QUADRIC_POINT: [(i64, i64); 7] = [(1, 3), (-1, 5), (2, 7), (-1, 4), (1, 6), (-2, 9), (1, 8)];

/// Generic rational base point used for the non-Einstein deformation.
pub const NON_EINSTEIN_POINT: [(i64, i64); 7] = [(-1, 3), (1, 4), (-1, 5), (1, 6), (-1, 7), (1, 8), (-1, 9)];

/// Second base points, used to confirm that results do not depend on the point.
pub const QUADRIC_POINT_ALT: [(i64, i64); 7] = [(1, 5), (1, 7), (-1, 3), (2, 9), (-1, 6), (1, 4), (-1, 8)];
pub const NON_EINSTEIN_POINT_ALT: [(i64, i64); 7] = [(1, 7), (-1, 6), (2, 9), (-1, 8), (1, 5), (-1, 4), (1, 3)];
pub const SYMPLECTIC_POINT_ALT: [(i64, i64); 8] = [(1, 3), (-1, 4), (1, 5), (-1, 6), (1, 7), (-1, 8), (1, 9), (-1, 10)];

/// Gaussian base point of complex quadric charts, as ((re), (im)) pairs.
pub const COMPLEX_QUADRIC_POINT: [((i64, i64), (i64, i64)); 4] =
    [((1, 3), (1, 5)), ((-1, 4), (1, 7)), ((1, 6), (-1, 3)), ((-1, 5), (-1, 8))];

fn rationals(points: &[(i64, i64)], n: usize) -> Vec<Rational> {
    points.iter().take(n).map(|&(p, q)| Rational::new(p, q)).collect()
}

pub fn flat(dim: usize, order: usize) -> Result<ConnectionChart<Rational>> {
    if dim == 0 {
        return Err(Error::InvalidArgument("flat chart needs dim ≥ 1".into()));
    }
    Ok(ConnectionChart::flat(dim, order))
}

fn check_quadric(s: usize, t: usize, a: &Rational) -> Result<()> {
    if s + t < 3 {
        return Err(Error::InvalidArgument(format!("quadric S^({s},{t}) needs s + t ≥ 3")));
    }
    if a.real_sign() != Some(std::cmp::Ordering::Greater) {
        return Err(Error::InvalidArgument("quadric needs a > 0; use S^(t,s)(−a) for negative a".into()));
    }
    if s == 0 {
        return Err(Error::InvalidArgument("quadric S^(0,t)(a) with a > 0 is empty".into()));
    }
    Ok(())
}

/// Signs εᵢ of the chart coordinates of S^(s,t): s − 1 plus signs, then t minus signs.
fn quadric_signs(s: usize, t: usize) -> Vec<i64> {
    std::iter::repeat(1).take(s - 1).chain(std::iter::repeat(-1).take(t)).collect()
}

/// Induced metric of S^(s,t)(a) in the central projection u ↦ λ(u, 1),
/// g_ij = a(εᵢδᵢⱼw − εᵢuᵢεⱼuⱼ)/w² with w = 1 + Σ εᵢuᵢ², expanded at u0.
pub fn quadric_metric<F: Field>(signs: &[i64], a: &F, u0: &[F], order: usize) -> Result<Vec<Vec<Jet<F>>>> {
    let n = signs.len();
    let u: Vec<Jet<F>> = (0..n).map(|i| &Jet::constant(n, order, u0[i].clone()) + &Jet::variable(n, order, i)).collect();
    let eps: Vec<F> = signs.iter().map(|&e| F::from_i64(e)).collect();
    let mut w = Jet::one(n, order);
    for i in 0..n {
        w = &w + &(&u[i] * &u[i]).scale(&eps[i]);
    }
    let winv = w.inverse().map_err(|_| Error::InvalidArgument("quadric base point has w = 0".into()))?;
    let winv2 = &winv * &winv;
    Ok((0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut num = (&u[i] * &u[j]).scale(&eps[i].times(&eps[j]).negate());
                    if i == j {
                        num = &num + &w.scale(&eps[i]);
                    }
                    (&num * &winv2).scale(a)
                })
                .collect()
        })
        .collect())
}

/// A quadric chart together with its metric (the Einstein reference form).
#[derive(Clone, Debug)]
pub struct QuadricChart<F: Field> {
    pub conn: ConnectionChart<F>,
    pub metric: TensorJet<F>,
}

/// Levi-Civita connection of S^(s,t)(a) at the generic base point.
pub fn quadric_chart(s: usize, t: usize, a: Rational, order: usize) -> Result<QuadricChart<Rational>> {
    let n = (s + t).saturating_sub(1);
    quadric_chart_at(s, t, a, &rationals(&QUADRIC_POINT, n), order)
}

pub fn quadric_chart_at(s: usize, t: usize, a: Rational, u0: &[Rational], order: usize) -> Result<QuadricChart<Rational>> {
    check_quadric(s, t, &a)?;
    let signs = quadric_signs(s, t);
    if u0.len() != signs.len() {
        return Err(Error::ShapeMismatch(format!("quadric base point needs {} coordinates", signs.len())));
    }
    let g = quadric_metric(&signs, &a, u0, order + 1)?;
    let names = (1..=signs.len()).map(|i| format!("u{i}")).collect();
    let conn = levi_civita(names, &g)?;
    let metric = TensorJet::covariant2(g).truncate(order);
    Ok(QuadricChart { conn, metric })
}

/// Υ = (1 + x₁)dx₁ + Σ_{l≥2} xₗ dxₗ, re-expanded at `point`.
pub fn non_einstein_upsilon(dim: usize, point: &[Rational], order: usize) -> OneForm<Rational> {
    OneForm::new(
        (0..dim)
            .map(|l| {
                let shift = if l == 0 { Rational::from(1) } else { Rational::from(0) };
                &Jet::constant(dim, order, shift.plus(&point[l])) + &Jet::variable(dim, order, l)
            })
            .collect(),
    )
}

/// The flat connection changed by Υ = d(x₁ + Σ xₗ²/2), in the original chart
/// centred at the origin.
pub fn non_einstein_chart(dim: usize, order: usize) -> Result<ConnectionChart<Rational>> {
    non_einstein_chart_at(dim, &vec![Rational::from(0); dim], order)
}

/// The same connection expanded around `point`.
pub fn non_einstein_chart_at(dim: usize, point: &[Rational], order: usize) -> Result<ConnectionChart<Rational>> {
    if dim < 2 {
        return Err(Error::DimensionTooSmall(dim));
    }
    if point.len() != dim {
        return Err(Error::ShapeMismatch(format!("base point needs {dim} coordinates")));
    }
    change_preferred(&ConnectionChart::flat(dim, order), &non_einstein_upsilon(dim, point, order))
}

/// ∇_X X = y²Y, all other Christoffels zero.
pub fn cotton_york_2d(order: usize) -> Result<ConnectionChart<Rational>> {
    if order < 3 {
        return Err(Error::OrderExhausted { needed: 3, available: order });
    }
    let y2 = Jet::variable(2, order, 1).pow(2);
    Ok(ConnectionChart::from_fn(vec!["x".into(), "y".into()], |k, i, j| {
        if (k, i, j) == (1, 0, 0) {
            y2.clone()
        } else {
            Jet::zero(2, order)
        }
    }))
}

/// ν = dx₁∧dx₂ + … + dx₂ₙ₋₁∧dx₂ₙ as a matrix.
pub fn standard_symplectic_form(dim: usize) -> Matrix<Rational> {
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

/// ∇ = d + Σ_{j≠1} x₁ dx₁(dxⱼ)² + Σ_{k≠1,2} x₂ dx₂(dxₖ)², the cubic terms read
/// as ν(∇_{∂ᵢ}∂ⱼ − dᵢ∂ⱼ, ∂ₘ) = cᵢⱼₘ with c the full symmetrization.
pub fn symplectic_example(dim: usize, order: usize) -> Result<(ConnectionChart<Rational>, Matrix<Rational>)> {
    symplectic_example_at(dim, &vec![Rational::from(0); dim], order)
}

/// The symplectic example re-expanded around `point`.
pub fn symplectic_example_at(
    dim: usize,
    point: &[Rational],
    order: usize,
) -> Result<(ConnectionChart<Rational>, Matrix<Rational>)> {
    if dim < 4 || dim % 2 != 0 {
        return Err(Error::InvalidArgument("symplectic example needs an even dimension ≥ 4".into()));
    }
    if point.len() != dim {
        return Err(Error::ShapeMismatch(format!("base point needs {dim} coordinates")));
    }
    let nu = standard_symplectic_form(dim);
    let nu_inv = nu.inverse()?;
    let mut cubic = vec![Jet::<Rational>::zero(dim, order); dim * dim * dim];
    let mut add_sym = |a: usize, b: usize, coeff: &Jet<Rational>| {
        // every arrangement of the multiset {a, b, b}, each counted twice
        for (i, j, m) in [(a, b, b), (b, a, b), (b, b, a)] {
            let slot = &mut cubic[(i * dim + j) * dim + m];
            *slot = &*slot + &coeff.scale(&Rational::from(2));
        }
    };
    let x1 = &Jet::constant(dim, order, point[0].clone()) + &Jet::variable(dim, order, 0);
    let x2 = &Jet::constant(dim, order, point[1].clone()) + &Jet::variable(dim, order, 1);
    for j in 1..dim {
        add_sym(0, j, &x1);
    }
    for k in 2..dim {
        add_sym(1, k, &x2);
    }
    let conn = ConnectionChart::from_fn(default_names(dim), |k, i, j| {
        (0..dim).fold(Jet::zero(dim, order), |acc, m| {
            let c = &nu_inv[(m, k)];
            if c.is_zero() {
                acc
            } else {
                &acc + &cubic[(i * dim + j) * dim + m].scale(c)
            }
        })
    });
    Ok((conn, nu))
}

/// A holomorphic quadric chart and its realification on (x₁, y₁, x₂, y₂, …).
#[derive(Clone, Debug)]
pub struct ComplexQuadric {
    pub holomorphic: ConnectionChart<Gaussian>,
    pub real: ConnectionChart<Rational>,
    /// Coordinate complex structure J∂xₐ = ∂yₐ.
    pub j: Matrix<Rational>,
    /// P^ℂ = Ric/(2(1 − m)) of the realified connection.
    pub rho_c: TensorJet<Rational>,
}

pub fn complex_structure(m: usize) -> Matrix<Rational> {
    Matrix::from_fn(2 * m, 2 * m, |r, c| {
        if r == c + 1 && c % 2 == 0 {
            Rational::from(1)
        } else if c == r + 1 && r % 2 == 0 {
            Rational::from(-1)
        } else {
            Rational::from(0)
        }
    })
}

/// Substitutes zₐ = xₐ + i·yₐ and splits into real and imaginary parts.
fn realify(jet: &Jet<Gaussian>) -> (Jet<Rational>, Jet<Rational>) {
    let m = jet.nvars();
    let order = jet.order();
    let i = Gaussian::imaginary_unit().expect("ℚ(i) has i");
    let z: Vec<Jet<Gaussian>> = (0..m)
        .map(|a| &Jet::variable(2 * m, order, 2 * a) + &Jet::variable(2 * m, order, 2 * a + 1).scale(&i))
        .collect();
    let mut total = Jet::zero(2 * m, order);
    for (exps, c) in jet.terms() {
        let mut term = Jet::constant(2 * m, order, c.clone());
        for (a, &e) in exps.iter().enumerate() {
            if e > 0 {
                term = &term * &z[a].pow(u32::from(e));
            }
        }
        total = &total + &term;
    }
    let re = total.map_coeffs(|c| Rational(c.re.clone()));
    let im = total.map_coeffs(|c| Rational(c.im.clone()));
    (re, im)
}

/// The real connection on (x₁, y₁, x₂, y₂, …) of a holomorphic connection in
/// z₁, z₂, …, with zₐ = xₐ + i·yₐ.
pub fn realify_connection(holomorphic: &ConnectionChart<Gaussian>) -> ConnectionChart<Rational> {
    let m = holomorphic.dim();
    let parts: Vec<(Jet<Rational>, Jet<Rational>)> = (0..m * m * m)
        .map(|flat| realify(holomorphic.gamma(flat / (m * m), (flat / m) % m, flat % m)))
        .collect();
    let part = |k: usize, i: usize, j: usize| &parts[(k * m + i) * m + j];
    let names = holomorphic.names().iter().flat_map(|z| [format!("re_{z}"), format!("im_{z}")]).collect();
    ConnectionChart::from_fn(names, |k, i, j| {
        let (re, im) = part(k / 2, i / 2, j / 2);
        // ∂x ↔ ∂z and ∂y ↔ i∂z; the factor is i^(number of y slots).
        let value = match i % 2 + j % 2 {
            0 => (re.clone(), im.clone()),
            1 => (-im, re.clone()),
            _ => (-re, -im),
        };
        if k % 2 == 0 {
            value.0
        } else {
            value.1
        }
    })
}

/// Real part of the complex rho tensor, −Ric^ℂ/(m − 1), computed from the
/// realified connection, whose Ricci tensor is 2·Re Ric^ℂ.
pub fn realified_complex_rho(real: &ConnectionChart<Rational>) -> Result<TensorJet<Rational>> {
    let m = real.dim() / 2;
    if m < 2 {
        return Err(Error::DimensionTooSmall(m));
    }
    Ok(real.ricci()?.scale(&Rational::new(1, 2 * (1 - m as i64))))
}

/// The complex quadric Σzₐ² + 1 = λ⁻² in a central chart at a Gaussian point.
pub fn complex_quadric_chart(m: usize, order: usize) -> Result<ComplexQuadric> {
    if !(2..=COMPLEX_QUADRIC_POINT.len()).contains(&m) {
        return Err(Error::InvalidArgument(format!("complex quadric needs 2 ≤ m ≤ {}", COMPLEX_QUADRIC_POINT.len())));
    }
    let z0: Vec<Gaussian> = COMPLEX_QUADRIC_POINT[..m].iter().map(|&(re, im)| Gaussian::from_parts(re, im)).collect();
    let g = quadric_metric(&vec![1; m], &Gaussian::one(), &z0, order + 1)?;
    let names = (1..=m).map(|a| format!("z{a}")).collect();
    let holomorphic = levi_civita(names, &g)?;
    let real = realify_connection(&holomorphic);
    let rho_c = realified_complex_rho(&real)?;
    Ok(ComplexQuadric { holomorphic, real, j: complex_structure(m), rho_c })
}

/// Stable catalog identifiers, as used on the command line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Target {
    Flat(usize),
    Quadric { s: usize, t: usize, a: Rational },
    NonEinstein(usize),
    NonEinsteinOrigin(usize),
    CottonYork2d,
    Symplectic(usize),
    ComplexQuadric(usize),
    Product(Box<Target>, Box<Target>),
}

fn parse_usize(text: &str, what: &str) -> Result<usize> {
    text.trim().parse().map_err(|_| Error::InvalidArgument(format!("bad {what} `{text}`")))
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let (head, args) = match text.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (text, None),
        };
        let target = match (head, args) {
            ("flat", None) => Target::Flat(2),
            ("flat", Some(a)) => Target::Flat(parse_usize(a, "dimension")?),
            ("quadric", None) => Target::Quadric { s: 3, t: 0, a: Rational::from(1) },
            ("quadric", Some(a)) => {
                let parts: Vec<&str> = a.split(',').collect();
                if parts.len() != 3 {
                    return Err(Error::InvalidArgument(format!("quadric needs s,t,a: `{text}`")));
                }
                let a = parts[2].trim().parse::<Rational>().map_err(Error::InvalidArgument)?;
                Target::Quadric { s: parse_usize(parts[0], "s")?, t: parse_usize(parts[1], "t")?, a }
            }
            ("non-einstein", None) => Target::NonEinstein(2),
            ("non-einstein", Some(a)) => match a.split_once(':') {
                Some((d, "origin")) => Target::NonEinsteinOrigin(parse_usize(d, "dimension")?),
                _ => Target::NonEinstein(parse_usize(a, "dimension")?),
            },
            ("cy2d", None) => Target::CottonYork2d,
            ("symplectic", None) => Target::Symplectic(4),
            ("symplectic", Some(a)) => Target::Symplectic(parse_usize(a, "dimension")?),
            ("cquadric", None) => Target::ComplexQuadric(2),
            ("cquadric", Some(a)) => Target::ComplexQuadric(parse_usize(a, "complex dimension")?),
            ("product", Some(rest)) => {
                let split = rest
                    .match_indices(',')
                    .map(|(i, _)| (rest[..i].parse::<Target>(), rest[i + 1..].parse::<Target>()))
                    .find_map(|(a, b)| Some((a.ok()?, b.ok()?)));
                match split {
                    Some((a, b)) => Target::Product(Box::new(a), Box::new(b)),
                    None => return Err(Error::InvalidArgument(format!("cannot split product target `{text}`"))),
                }
            }
            _ => return Err(Error::InvalidArgument(format!("unknown catalog target `{text}`"))),
        };
        Ok(target)
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Flat(n) => write!(f, "flat:{n}"),
            Target::Quadric { s, t, a } => write!(f, "quadric:{s},{t},{a}"),
            Target::NonEinstein(n) => write!(f, "non-einstein:{n}"),
            Target::NonEinsteinOrigin(n) => write!(f, "non-einstein:{n}:origin"),
            Target::CottonYork2d => write!(f, "cy2d"),
            Target::Symplectic(n) => write!(f, "symplectic:{n}"),
            Target::ComplexQuadric(m) => write!(f, "cquadric:{m}"),
            Target::Product(a, b) => write!(f, "product:{a},{b}"),
        }
    }
}

/// Which structure a catalog connection carries beyond the bare chart.
#[derive(Clone, Debug)]
pub enum Extra {
    None,
    Metric(TensorJet<Rational>),
    Symplectic(Matrix<Rational>),
    Complex(Box<ComplexQuadric>),
}

/// Properties asserted for an entry; `None` means not asserted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub projectively_flat: Option<bool>,
    pub einstein: Option<bool>,
    pub cotton_york_zero: Option<bool>,
    pub ricci_symmetric: Option<bool>,
    pub rho_nondegenerate: Option<bool>,
    pub ricci_signature: Option<(usize, usize)>,
    pub preserves_nu: Option<bool>,
    pub complex_linear: Option<bool>,
    /// Expected dimension of the infinitesimal holonomy of the cone.
    pub holonomy_dim: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyCheck {
    pub property: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub target: Target,
    pub conn: ConnectionChart<Rational>,
    pub extra: Extra,
    pub expected: Expected,
    pub base_point: String,
}

fn point_text(p: &[Rational]) -> String {
    let coords: Vec<String> = p.iter().map(ToString::to_string).collect();
    format!("({})", coords.join(", "))
}

/// Which generic base point a catalog entry is expanded at.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasePoint {
    #[default]
    Primary,
    Alternate,
}

impl Target {
    pub fn build(&self, order: usize) -> Result<CatalogEntry> {
        self.build_at(order, BasePoint::Primary)
    }

    pub fn build_at(&self, order: usize, at: BasePoint) -> Result<CatalogEntry> {
        let alt = at == BasePoint::Alternate;
        let target = self.clone();
        let entry = match self {
            Target::Flat(n) => CatalogEntry {
                target,
                conn: flat(*n, order)?,
                extra: Extra::None,
                expected: Expected {
                    projectively_flat: Some(true),
                    cotton_york_zero: (*n >= 2).then_some(true),
                    einstein: (*n >= 2).then_some(false),
                    holonomy_dim: (*n >= 2).then_some(0),
                    ..Expected::default()
                },
                base_point: "origin".into(),
            },
            Target::Quadric { s, t, a } => {
                let n = (s + t).saturating_sub(1);
                let point = rationals(if alt { &QUADRIC_POINT_ALT } else { &QUADRIC_POINT }, n);
                if n > point.len() {
                    return Err(Error::InvalidArgument("quadric dimension too large".into()));
                }
                let q = quadric_chart_at(*s, *t, a.clone(), &point, order)?;
                CatalogEntry {
                    target,
                    conn: q.conn,
                    extra: Extra::Metric(q.metric),
                    expected: Expected {
                        projectively_flat: Some(true),
                        einstein: Some(true),
                        cotton_york_zero: Some(true),
                        ricci_symmetric: Some(true),
                        ricci_signature: Some((s - 1, *t)),
                        ..Expected::default()
                    },
                    base_point: format!("u = {}", point_text(&point)),
                }
            }
            Target::NonEinstein(n) | Target::NonEinsteinOrigin(n) => {
                let origin = matches!(self, Target::NonEinsteinOrigin(_));
                let point = if origin {
                    vec![Rational::from(0); *n]
                } else {
                    rationals(if alt { &NON_EINSTEIN_POINT_ALT } else { &NON_EINSTEIN_POINT }, *n)
                };
                if point.len() < *n {
                    return Err(Error::InvalidArgument("non-Einstein dimension too large".into()));
                }
                CatalogEntry {
                    target,
                    conn: non_einstein_chart_at(*n, &point, order)?,
                    extra: Extra::None,
                    expected: Expected {
                        projectively_flat: Some(true),
                        einstein: Some(false),
                        ricci_symmetric: Some(true),
                        rho_nondegenerate: Some(!origin),
                        ..Expected::default()
                    },
                    base_point: format!("x = {}", point_text(&point)),
                }
            }
            Target::CottonYork2d => CatalogEntry {
                target,
                conn: cotton_york_2d(order)?,
                extra: Extra::None,
                expected: Expected {
                    projectively_flat: Some(false),
                    cotton_york_zero: Some(false),
                    ricci_symmetric: Some(true),
                    ..Expected::default()
                },
                base_point: "origin".into(),
            },
            Target::Symplectic(n) => {
                let point =
                    if alt { rationals(&SYMPLECTIC_POINT_ALT, *n) } else { vec![Rational::from(0); *n] };
                if point.len() < *n {
                    return Err(Error::InvalidArgument("symplectic dimension too large".into()));
                }
                let (conn, nu) = symplectic_example_at(*n, &point, order)?;
                CatalogEntry {
                    target,
                    conn,
                    extra: Extra::Symplectic(nu),
                    expected: Expected {
                        preserves_nu: Some(true),
                        ricci_symmetric: Some(true),
                        holonomy_dim: Some((n + 2) * (n + 3) / 2),
                        ..Expected::default()
                    },
                    base_point: format!("x = {}", point_text(&point)),
                }
            }
            Target::ComplexQuadric(m) => {
                let cq = complex_quadric_chart(*m, order)?;
                CatalogEntry {
                    target,
                    conn: cq.real.clone(),
                    extra: Extra::Complex(Box::new(cq)),
                    expected: Expected {
                        ricci_symmetric: Some(true),
                        complex_linear: Some(true),
                        ..Expected::default()
                    },
                    base_point: {
                        let z: Vec<String> = COMPLEX_QUADRIC_POINT[..*m]
                            .iter()
                            .map(|&(re, im)| Gaussian::from_parts(re, im).to_string())
                            .collect();
                        format!("z = ({})", z.join(", "))
                    },
                }
            }
            Target::Product(a, b) => {
                let ea = a.build_at(order, at)?;
                let eb = b.build_at(order, at)?;
                let conn = product_connection(&ea.conn, &eb.conn);
                let both = |f: &dyn Fn(&Target) -> bool| f(a) && f(b);
                let is_quadric = |t: &Target| matches!(t, Target::Quadric { .. });
                let is_non_einstein = |t: &Target| matches!(t, Target::NonEinstein(_));
                let mut expected = Expected { ricci_symmetric: Some(true), ..Expected::default() };
                if both(&is_quadric) {
                    expected.einstein = Some(true);
                    expected.cotton_york_zero = Some(true);
                    let n = conn.dim() + 1;
                    expected.holonomy_dim = Some(n * (n - 1) / 2);
                }
                if both(&is_non_einstein) {
                    expected.einstein = Some(false);
                    expected.cotton_york_zero = Some(true);
                    expected.rho_nondegenerate = Some(true);
                    let n = conn.dim() + 1;
                    expected.holonomy_dim = Some(n * n - 1);
                }
                CatalogEntry {
                    target,
                    conn,
                    extra: Extra::None,
                    expected,
                    base_point: format!("{} × {}", ea.base_point, eb.base_point),
                }
            }
        };
        Ok(entry)
    }
}

impl CatalogEntry {
    /// Recomputes every asserted property.
    pub fn verify(&self) -> Result<Vec<PropertyCheck>> {
        let mut checks = Vec::new();
        let mut push = |property: &str, expected: String, actual: String| {
            let pass = expected == actual;
            checks.push(PropertyCheck { property: property.into(), expected, actual, pass });
        };
        let e = &self.expected;
        let dim = self.conn.dim();
        if dim >= 2 && self.conn.order() >= 2 {
            let data = ProjectiveData::compute(&self.conn)?;
            if let Some(x) = e.projectively_flat {
                // in dimension two the Weyl tensor vanishes identically
                let flat = data.weyl.is_zero() && (dim > 2 || data.cotton_york.is_zero());
                push("projectively flat", x.to_string(), flat.to_string());
            }
            if let Some(x) = e.cotton_york_zero {
                push("Cotton-York tensor vanishes", x.to_string(), data.cotton_york.is_zero().to_string());
            }
            if let Some(x) = e.rho_nondegenerate {
                let det = data.rho.base_matrix().determinant();
                push("rho nondegenerate at base point", x.to_string(), (!det.is_zero()).to_string());
            }
        } else if let Some(x) = e.projectively_flat {
            push("projectively flat", x.to_string(), (dim == 1).to_string());
        }
        if dim >= 2 {
            let ric = self.conn.ricci()?;
            if let Some(x) = e.ricci_symmetric {
                push("Ricci tensor symmetric", x.to_string(), ric.is_symmetric_in(0, 1).to_string());
            }
            if let Some(x) = e.einstein {
                let reference = match &self.extra {
                    Extra::Metric(g) => Some(g),
                    _ => None,
                };
                let check = self.conn.is_einstein(reference)?;
                push("Einstein", x.to_string(), check.einstein.to_string());
                if let (true, Some(c)) = (x, &check.coefficient) {
                    let positive = c.constant_term().real_sign() == Some(std::cmp::Ordering::Greater);
                    push("Einstein coefficient positive", true.to_string(), positive.to_string());
                }
            }
            if let Some((p, q)) = e.ricci_signature {
                let sig = signature(&ric.base_matrix()).map(|(a, b)| format!("({a}, {b})")).unwrap_or_else(|_| "degenerate".into());
                push("Ricci signature", format!("({p}, {q})"), sig);
            }
        }
        if let (Some(x), Extra::Symplectic(nu)) = (e.preserves_nu, &self.extra) {
            let nu_t = TensorJet::constant(dim, &[Slot::Lower; 2], dim, self.conn.order(), |i| nu[(i[0], i[1])].clone());
            push("∇ν = 0", x.to_string(), self.conn.covariant_derivative(&nu_t)?.is_zero().to_string());
        }
        if let (Some(x), Extra::Complex(cq)) = (e.complex_linear, &self.extra) {
            let linear = crate::cone::is_complex_linear(&cq.real, &cq.j);
            push("complex-linear", x.to_string(), linear.to_string());
            let holomorphic_flat = crate::projective::projective_weyl(&cq.holomorphic)?.is_zero();
            push("holomorphic projective Weyl tensor vanishes", true.to_string(), holomorphic_flat.to_string());
        }
        Ok(checks)
    }

    /// Fails on the first asserted property that does not hold.
    pub fn verify_strict(&self) -> Result<()> {
        match self.verify()?.into_iter().find(|c| !c.pass) {
            Some(c) => Err(Error::InvalidArgument(format!(
                "{}: `{}` expected {}, found {}",
                self.target, c.property, c.expected, c.actual
            ))),
            None => Ok(()),
        }
    }

    pub fn rho(&self) -> Result<TensorJet<Rational>> {
        rho(&self.conn)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::jet_from_polynomial;
    use crate::projective::projective_weyl;

    #[test]
    fn flat_entries_verify() {
        for n in [1, 2, 4] {
            let entry = Target::Flat(n).build(3).unwrap();
            entry.verify_strict().unwrap();
        }
    }

    #[test]
    fn sphere_chart_matches_projective_oracle() {
        // Γᵏᵢⱼ = Υᵢδᵏⱼ + Υⱼδᵏᵢ with Υᵢ = −εᵢuᵢ/w on the gnomonic chart.
        let order = 4;
        let u0 = rationals(&QUADRIC_POINT, 2);
        let q = quadric_chart_at(3, 0, Rational::from(1), &u0, order).unwrap();
        let u: Vec<Jet<Rational>> =
            (0..2).map(|i| &Jet::constant(2, order, u0[i].clone()) + &Jet::variable(2, order, i)).collect();
        let w = &(&Jet::one(2, order) + &(&u[0] * &u[0])) + &(&u[1] * &u[1]);
        let winv = w.inverse().unwrap();
        let ups: Vec<Jet<Rational>> = u.iter().map(|ui| -&(ui * &winv)).collect();
        for k in 0..2 {
            for i in 0..2 {
                for j in 0..2 {
                    let mut expected = Jet::zero(2, order);
                    if k == j {
                        expected = &expected + &ups[i];
                    }
                    if k == i {
                        expected = &expected + &ups[j];
                    }
                    assert_eq!(q.conn.gamma(k, i, j), &expected, "Γ^{k}_{i}{j}");
                }
            }
        }
    }

    #[test]
    fn quadric_entries_verify() {
        Target::Quadric { s: 3, t: 0, a: Rational::from(1) }.build(4).unwrap().verify_strict().unwrap();
        Target::Quadric { s: 2, t: 1, a: Rational::from(1) }.build(4).unwrap().verify_strict().unwrap();
        Target::Quadric { s: 3, t: 1, a: Rational::new(3, 2) }.build(3).unwrap().verify_strict().unwrap();
        assert!(quadric_chart(3, 0, Rational::from(-1), 3).is_err());
        assert!(quadric_chart(0, 3, Rational::from(1), 3).is_err());
    }

    #[test]
    fn non_einstein_at_literal_origin() {
        let conn = non_einstein_chart(2, 5).unwrap();
        let p = rho(&conn).unwrap();
        let poly = |t: &str| jet_from_polynomial::<Rational>(t, &["x1", "x2"], 4).unwrap();
        assert_eq!(p.get(&[0, 0]), &poly("-x1^2 - 2*x1"));
        assert_eq!(p.get(&[0, 1]), &poly("-x1*x2 - x2"));
        assert_eq!(p.get(&[1, 1]), &poly("1 - x2^2"));
        assert!(p.base_matrix().determinant().is_zero());
        let dp = conn.covariant_derivative(&p).unwrap();
        assert_eq!(dp.get(&[0, 1, 1]).constant_term(), &Rational::from(-2));
        assert!(projective_weyl(&conn).unwrap().is_zero());
    }

    #[test]
    fn non_einstein_generic_point_verifies() {
        Target::NonEinstein(2).build(4).unwrap().verify_strict().unwrap();
        Target::NonEinstein(3).build(3).unwrap().verify_strict().unwrap();
        Target::NonEinsteinOrigin(2).build(4).unwrap().verify_strict().unwrap();
    }

    #[test]
    fn cy2d_verifies() {
        Target::CottonYork2d.build(4).unwrap().verify_strict().unwrap();
        assert!(cotton_york_2d(2).is_err());
    }

    #[test]
    fn symplectic_example_facts() {
        let (conn, _) = symplectic_example(4, 4).unwrap();
        Target::Symplectic(4).build(4).unwrap().verify_strict().unwrap();
        let ric = conn.ricci().unwrap();
        let base = ric.base_matrix();
        for r in 0..4 {
            for c in 0..4 {
                let expected = if (r, c) == (0, 1) || (r, c) == (1, 0) { 2 } else { 0 };
                assert_eq!(base[(r, c)], Rational::from(expected));
            }
        }
        // Ric has no linear terms.
        for comp in ric.components() {
            for v in 0..4 {
                let mut exps = [0u8; 4];
                exps[v] = 1;
                assert!(comp.coeff(&exps).is_zero());
            }
        }
        assert!(symplectic_example(3, 4).is_err());
    }

    #[test]
    fn complex_quadric_is_complex_linear_and_flat() {
        let cq = complex_quadric_chart(2, 4).unwrap();
        Target::ComplexQuadric(2).build(4).unwrap().verify_strict().unwrap();
        assert!(projective_weyl(&cq.holomorphic).unwrap().is_zero());
        let ric = cq.holomorphic.ricci().unwrap();
        assert!(ric.is_symmetric_in(0, 1));
        // c-projective flatness is not real projective flatness
        assert!(!projective_weyl(&cq.real).unwrap().is_zero());
    }

    #[test]
    fn complex_quadric_cone_is_ricci_flat_with_parallel_j() {
        use crate::cone::{complex_cone, complex_structure_tensor};
        let cq = complex_quadric_chart(2, 5).unwrap();
        let cone = complex_cone(&cq.real, &cq.j, &cq.rho_c).unwrap();
        let contract = cone.contract().unwrap();
        assert!(contract.torsion_free && contract.ricci_flat, "{contract:?}");
        assert!(contract.order >= 1);
        let jt = complex_structure_tensor(&cone, &cq.j);
        assert!(cone.cone.covariant_derivative(&jt).unwrap().is_zero());
    }

    #[test]
    fn symplectic_example_cone_is_ricci_flat() {
        use crate::cone::{ricci_flat_data, symplectic_cone, symplectic_form, scaled_parallel_defect};
        let (conn, nu) = symplectic_example(4, 6).unwrap();
        let data = ricci_flat_data(&conn, &nu).unwrap();
        assert!(data.sigma_consistent());
        let cone = symplectic_cone(&conn, &data).unwrap();
        let contract = cone.contract().unwrap();
        assert!(contract.torsion_free && contract.ricci_flat, "{contract:?}");
        let omega = symplectic_form(&cone, &nu);
        assert!(scaled_parallel_defect(&cone.cone, &omega, cone.q, 2).unwrap().is_zero());
    }

    #[test]
    fn target_names_round_trip() {
        for text in [
            "flat:4",
            "quadric:3,0,1",
            "quadric:2,1,3/2",
            "non-einstein:2",
            "non-einstein:3:origin",
            "cy2d",
            "symplectic:4",
            "cquadric:2",
            "product:quadric:3,0,1,quadric:3,0,1",
            "product:non-einstein:2,non-einstein:2",
            "product:flat:2,product:cy2d,flat:1",
        ] {
            let t: Target = text.parse().unwrap();
            assert_eq!(t.to_string(), text);
        }
        assert_eq!("flat".parse::<Target>().unwrap(), Target::Flat(2));
        assert!("torus:2".parse::<Target>().is_err());
        assert!("product:flat:2".parse::<Target>().is_err());
    }
}
