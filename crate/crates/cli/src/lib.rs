//! Batch front end: inspection, cone construction, holonomy classification
//! and the acceptance demo, with human-readable and JSON reports.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use phl_core::acceptance::{run_criterion, AcceptanceConfig, CriterionResult, CRITERIA};
use phl_core::catalog::{
    complex_structure, realified_complex_rho, realify_connection, CatalogEntry, Extra, PropertyCheck, Target,
};
use phl_core::classify::{classify, ClassificationReport};
use phl_core::cone::{
    complex_cone, complex_structure_tensor, projective_cone, q_curvature_vanishes, ricci_flat_data, symplectic_cone,
    ConeChart, ConeKind,
};
use phl_core::holonomy::{infinitesimal_holonomy_with, HolonomyOptions};
use phl_core::projective::{cotton_york, projective_weyl, rho};
use phl_core::{jet_from_polynomial, ConnectionChart, Field, Gaussian, Jet, Matrix, Rational, TensorJet};

pub const DEFAULT_ORDER: usize = 6;

#[derive(Debug, Parser)]
#[command(name = "phl", version, about = "Projective invariants, cone connections and holonomy from Christoffel jets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rho, Weyl and Cotton-York tensors of a connection.
    Inspect(TargetArgs),
    /// Build a cone connection and confirm it is torsion-free and Ricci-flat.
    Cone(TargetArgs),
    /// Infinitesimal holonomy of the cone and its classification.
    Holonomy(TargetArgs),
    /// Run the acceptance suite.
    Demo(DemoArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Print the machine-readable report instead of the summary.
    #[arg(long)]
    pub json: bool,
    /// Also write the machine-readable report to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TargetArgs {
    /// Catalog name (e.g. `quadric:3,0,1`) or a TOML/JSON manifest path.
    pub target: String,
    #[arg(long, default_value = "real")]
    pub kind: ConeKind,
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    pub order: usize,
    #[arg(long)]
    pub max_depth: Option<usize>,
    /// Derive the symplectic cone data (s, σ, U, f) from the Ricci tensor.
    /// This is the only supported source, so the flag is implied.
    #[arg(long)]
    pub auto_data: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct DemoArgs {
    /// Run only these criteria (repeatable).
    #[arg(long = "criterion")]
    pub criteria: Vec<u8>,
    /// TOML file overriding expected constants.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// A connection given by Christoffel polynomials in a chart centred at the base point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub name: String,
    pub dim: usize,
    #[serde(default = "default_field")]
    pub field: String,
    pub vars: Vec<String>,
    /// "k,i,j" → Γᵏᵢⱼ; omitted entries are zero.
    #[serde(default)]
    pub gamma: BTreeMap<String, String>,
    #[serde(default)]
    pub order: Option<usize>,
    /// Fill Γᵏⱼᵢ from Γᵏᵢⱼ when only one of the two is given.
    #[serde(default)]
    pub symmetric: bool,
    /// Constant symplectic form for `--kind symplectic`, rows of rationals.
    #[serde(default)]
    pub nu: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub base_point: Option<String>,
}

fn default_field() -> String {
    "rational".into()
}

fn parse_key(key: &str, dim: usize) -> Result<(usize, usize, usize)> {
    let parts: Vec<&str> = key.split(',').map(str::trim).collect();
    let idx: Vec<usize> = parts
        .iter()
        .map(|p| p.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| anyhow!("gamma key `{key}` is not of the form \"k,i,j\""))?;
    match idx.as_slice() {
        &[k, i, j] if k < dim && i < dim && j < dim => Ok((k, i, j)),
        &[_, _, _] => bail!("gamma key `{key}`: index out of range for dim {dim}"),
        _ => bail!("gamma key `{key}` is not of the form \"k,i,j\""),
    }
}

impl Manifest {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let manifest: Manifest = match path.extension().and_then(|e| e.to_str()) {
            Some("json") => serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?,
            _ => toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))?,
        };
        manifest.validate()?;
        Ok(manifest)
    }

    pub fn validate(&self) -> Result<()> {
        if self.vars.len() != self.dim {
            bail!("manifest `{}`: {} vars for dim {}", self.name, self.vars.len(), self.dim);
        }
        if !matches!(self.field.as_str(), "rational" | "gaussian") {
            bail!("manifest `{}`: field must be \"rational\" or \"gaussian\", not `{}`", self.name, self.field);
        }
        for key in self.gamma.keys() {
            parse_key(key, self.dim)?;
        }
        Ok(())
    }

    fn chart<F: Field>(&self, order: usize) -> Result<ConnectionChart<F>> {
        let vars: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        let n = self.dim;
        let mut table = vec![None; n * n * n];
        for (key, text) in &self.gamma {
            let (k, i, j) = parse_key(key, n)?;
            let jet = jet_from_polynomial::<F>(text, &vars, order).map_err(|e| anyhow!("gamma[\"{key}\"]: {e}"))?;
            table[(k * n + i) * n + j] = Some(jet);
        }
        if self.symmetric {
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        let (a, b) = ((k * n + i) * n + j, (k * n + j) * n + i);
                        if table[a].is_none() {
                            table[a] = table[b].clone();
                        }
                    }
                }
            }
        }
        Ok(ConnectionChart::from_fn(self.vars.clone(), |k, i, j| {
            table[(k * n + i) * n + j].clone().unwrap_or_else(|| Jet::zero(n, order))
        }))
    }

    fn nu_matrix(&self) -> Result<Option<Matrix<Rational>>> {
        let Some(rows) = &self.nu else { return Ok(None) };
        let parsed = rows
            .iter()
            .map(|row| row.iter().map(|x| x.trim().parse::<Rational>().map_err(|e| anyhow!("nu entry `{x}`: {e}"))).collect())
            .collect::<Result<Vec<Vec<Rational>>>>()?;
        if parsed.len() != self.dim || parsed.iter().any(|r| r.len() != self.dim) {
            bail!("nu must be a {0}×{0} matrix", self.dim);
        }
        Ok(Some(Matrix::from_rows(parsed)))
    }
}

/// What a command runs on, after resolving the target argument.
enum Input {
    Catalog(Box<CatalogEntry>),
    Rational { manifest: Manifest, conn: ConnectionChart<Rational>, nu: Option<Matrix<Rational>> },
    Gaussian { manifest: Manifest, conn: ConnectionChart<Gaussian> },
}

fn looks_like_path(target: &str) -> bool {
    target.ends_with(".toml") || target.ends_with(".json") || Path::new(target).is_file()
}

fn resolve(target: &str, order: usize) -> Result<Input> {
    if looks_like_path(target) {
        let manifest = Manifest::load(Path::new(target))?;
        let order = manifest.order.unwrap_or(order);
        return Ok(match manifest.field.as_str() {
            "gaussian" => Input::Gaussian { conn: manifest.chart(order)?, manifest },
            _ => Input::Rational { conn: manifest.chart(order)?, nu: manifest.nu_matrix()?, manifest },
        });
    }
    let parsed: Target = target.parse()?;
    Ok(Input::Catalog(Box::new(parsed.build(order)?)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub target: String,
    pub source: String,
    pub field: String,
    pub dim: usize,
    pub order: usize,
    pub kind: Option<ConeKind>,
    pub base_point: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorSummary {
    pub zero: bool,
    pub order: usize,
    /// Lowest-degree part of each nonzero component, keyed by index.
    pub leading: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub ricci_symmetric: bool,
    pub einstein: Option<bool>,
    pub ricci: TensorSummary,
    pub rho: Option<TensorSummary>,
    pub rho_nondegenerate: Option<bool>,
    pub weyl: Option<TensorSummary>,
    pub cotton_york: Option<TensorSummary>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeSummary {
    pub kind: ConeKind,
    pub dim: usize,
    pub order: usize,
    pub torsion_free: bool,
    pub ricci_flat: bool,
    pub q_independent: bool,
    pub extra_checks: Vec<PropertyCheck>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSummary {
    pub provenance: String,
    pub matrix: Matrix<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HolonomySummary {
    pub scope: String,
    pub dimension: usize,
    pub fiber_dim: usize,
    pub depth: usize,
    pub stabilized: bool,
    pub history: Vec<usize>,
    pub closed: bool,
    pub generators: Vec<GeneratorSummary>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub input: Option<InputEcho>,
    pub invariants: Option<Invariants>,
    pub checks: Vec<PropertyCheck>,
    pub cone: Option<ConeSummary>,
    pub holonomy: Option<HolonomySummary>,
    pub classification: Option<ClassificationReport>,
    pub acceptance: Vec<CriterionResult>,
    pub pass: bool,
}

impl Report {
    fn new(command: &str) -> Self {
        Report {
            command: command.into(),
            input: None,
            invariants: None,
            checks: Vec::new(),
            cone: None,
            holonomy: None,
            classification: None,
            acceptance: Vec::new(),
            pass: true,
        }
    }

    fn finish(mut self) -> Self {
        self.pass = self.checks.iter().all(|c| c.pass)
            && self.cone.as_ref().is_none_or(|c| c.torsion_free && c.ricci_flat && c.extra_checks.iter().all(|k| k.pass))
            && self.holonomy.as_ref().is_none_or(|h| h.closed)
            && self.acceptance.iter().all(|a| a.pass);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Plain-text summary.
    pub fn summary(&self) -> String {
        let mut out = Vec::new();
        if let Some(i) = &self.input {
            out.push(format!("{} {} ({} chart, dim {}, jet order {})", self.command, i.target, i.field, i.dim, i.order));
            out.push(format!("  base point: {}", i.base_point));
        }
        if let Some(inv) = &self.invariants {
            let flag = |s: &Option<TensorSummary>| match s {
                Some(t) if t.zero => "zero".to_string(),
                Some(t) => format!("nonzero (leading {})", leading_text(t)),
                None => "n/a".to_string(),
            };
            out.push(format!("  Ric: {}", if inv.ricci.zero { "zero".into() } else { leading_text(&inv.ricci) }));
            out.push(format!("  Ric symmetric: {}", inv.ricci_symmetric));
            if let Some(e) = inv.einstein {
                out.push(format!("  Einstein: {e}"));
            }
            out.push(format!("  P: {}", flag(&inv.rho)));
            if let Some(nd) = inv.rho_nondegenerate {
                out.push(format!("  P nondegenerate at base point: {nd}"));
            }
            out.push(format!("  W: {}", flag(&inv.weyl)));
            out.push(format!("  CY: {}", flag(&inv.cotton_york)));
        }
        if let Some(c) = &self.cone {
            out.push(format!(
                "  {} cone: dim {}, jet order {}, torsion-free {}, Ricci-flat {}, q-independent {}",
                c.kind, c.dim, c.order, c.torsion_free, c.ricci_flat, c.q_independent
            ));
            for k in &c.extra_checks {
                out.push(format!("    {}: {}", k.property, k.actual));
            }
        }
        if let Some(h) = &self.holonomy {
            out.push(format!(
                "  {}: dimension {} on ℝ^{}, depth {}, stabilized {}, history {:?}",
                h.scope, h.dimension, h.fiber_dim, h.depth, h.stabilized, h.history
            ));
        }
        if let Some(c) = &self.classification {
            out.push(format!("  classification: {c}"));
            for e in &c.evidence {
                out.push(format!("    {e}"));
            }
        }
        for c in &self.checks {
            let status = if c.pass { "ok" } else { "FAILED" };
            out.push(format!("  check {}: expected {}, found {} [{status}]", c.property, c.expected, c.actual));
        }
        for a in &self.acceptance {
            out.push(a.to_string());
        }
        out.push(if self.pass { "result: pass".into() } else { "result: FAIL".into() });
        out.join("\n")
    }
}

fn leading_text(t: &TensorSummary) -> String {
    let parts: Vec<String> = t.leading.iter().take(4).map(|(k, v)| format!("[{k}] {v}")).collect();
    let more = if t.leading.len() > 4 { format!(", … {} more", t.leading.len() - 4) } else { String::new() };
    format!("{}{more}", parts.join(", "))
}

fn lowest_degree_part<F: Field>(jet: &Jet<F>) -> Jet<F> {
    let degree = |e: &[u8]| e.iter().map(|&x| usize::from(x)).sum::<usize>();
    let Some(low) = jet.terms().filter(|(_, c)| !c.is_zero()).map(|(e, _)| degree(e)).min() else {
        return Jet::zero(jet.nvars(), jet.order());
    };
    jet.terms()
        .filter(|(e, c)| degree(e) == low && !c.is_zero())
        .fold(Jet::zero(jet.nvars(), jet.order()), |acc, (e, c)| &acc + &Jet::monomial(jet.nvars(), jet.order(), e, c.clone()))
}

fn summarize<F: Field>(t: &TensorJet<F>, names: &[String]) -> TensorSummary {
    let leading = t
        .iter()
        .filter(|(_, j)| !j.is_zero())
        .map(|(idx, j)| {
            let key: Vec<String> = idx.iter().map(ToString::to_string).collect();
            (key.join(","), lowest_degree_part(j).to_poly_string(names))
        })
        .collect();
    TensorSummary { zero: t.is_zero(), order: t.order(), leading }
}

fn invariants<F: Field>(conn: &ConnectionChart<F>, reference: Option<&TensorJet<F>>) -> Result<Invariants> {
    let names = conn.names().to_vec();
    let ric = conn.ricci()?;
    let dim = conn.dim();
    let has_rho = dim >= 2 && conn.order() >= 1;
    let p = if has_rho { Some(rho(conn)?) } else { None };
    let rho_nondegenerate = p.as_ref().and_then(|p| {
        let det = p.base_matrix().determinant();
        p.is_symmetric_in(0, 1).then_some(!det.is_zero())
    });
    let weyl = if has_rho { Some(projective_weyl(conn)?) } else { None };
    let cy = if has_rho && conn.order() >= 2 { Some(cotton_york(conn)?) } else { None };
    let einstein = if dim >= 2 { Some(conn.is_einstein(reference)?.einstein) } else { None };
    Ok(Invariants {
        ricci_symmetric: ric.is_symmetric_in(0, 1),
        einstein,
        ricci: summarize(&ric, &names),
        rho: p.as_ref().map(|t| summarize(t, &names)),
        rho_nondegenerate,
        weyl: weyl.as_ref().map(|t| summarize(t, &names)),
        cotton_york: cy.as_ref().map(|t| summarize(t, &names)),
    })
}

fn echo(target: &str, input: &Input, kind: Option<ConeKind>) -> InputEcho {
    match input {
        Input::Catalog(e) => InputEcho {
            target: e.target.to_string(),
            source: "catalog".into(),
            field: "rational".into(),
            dim: e.conn.dim(),
            order: e.conn.order(),
            kind,
            base_point: e.base_point.clone(),
        },
        Input::Rational { manifest, conn, .. } => InputEcho {
            target: target.into(),
            source: format!("manifest {}", manifest.name),
            field: "rational".into(),
            dim: conn.dim(),
            order: conn.order(),
            kind,
            base_point: manifest.base_point.clone().unwrap_or_else(|| "origin".into()),
        },
        Input::Gaussian { manifest, conn } => InputEcho {
            target: target.into(),
            source: format!("manifest {}", manifest.name),
            field: "gaussian".into(),
            dim: conn.dim(),
            order: conn.order(),
            kind,
            base_point: manifest.base_point.clone().unwrap_or_else(|| "origin".into()),
        },
    }
}

pub fn cmd_inspect(args: &TargetArgs) -> Result<Report> {
    let input = resolve(&args.target, args.order)?;
    let mut report = Report::new("inspect");
    report.input = Some(echo(&args.target, &input, None));
    match &input {
        Input::Catalog(entry) => {
            let reference = match &entry.extra {
                Extra::Metric(g) => Some(g),
                _ => None,
            };
            report.invariants = Some(invariants(&entry.conn, reference)?);
            report.checks = entry.verify()?;
        }
        Input::Rational { conn, .. } => report.invariants = Some(invariants(conn, None)?),
        Input::Gaussian { conn, .. } => report.invariants = Some(invariants(conn, None)?),
    }
    Ok(report.finish())
}

/// The cone selected by `kind`, with kind-specific checks.
fn build_cone(input: &Input, kind: ConeKind) -> Result<(ConeChart<Rational>, Vec<PropertyCheck>)> {
    let check = |property: &str, ok: bool| PropertyCheck {
        property: property.into(),
        expected: "true".into(),
        actual: ok.to_string(),
        pass: ok,
    };
    match kind {
        ConeKind::Real => {
            let conn = match input {
                Input::Catalog(e) => &e.conn,
                Input::Rational { conn, .. } => conn,
                Input::Gaussian { .. } => bail!("the real cone needs a rational chart; use --kind complex"),
            };
            Ok((projective_cone(conn)?, Vec::new()))
        }
        ConeKind::Complex => {
            let (real, j, rho_c) = match input {
                Input::Catalog(e) => match &e.extra {
                    Extra::Complex(cq) => (cq.real.clone(), cq.j.clone(), cq.rho_c.clone()),
                    _ => bail!("`{}` carries no complex structure; try cquadric:2", e.target),
                },
                Input::Gaussian { conn, .. } => {
                    let real = realify_connection(conn);
                    let rho_c = realified_complex_rho(&real)?;
                    (real, complex_structure(conn.dim()), rho_c)
                }
                Input::Rational { .. } => bail!("the complex cone needs a gaussian manifest or a complex catalog entry"),
            };
            let cone = complex_cone(&real, &j, &rho_c)?;
            let jt = complex_structure_tensor(&cone, &j);
            let parallel = cone.cone.covariant_derivative(&jt)?.is_zero();
            Ok((cone, vec![check("∇J = 0", parallel)]))
        }
        ConeKind::Symplectic => {
            let (conn, nu) = match input {
                Input::Catalog(e) => match &e.extra {
                    Extra::Symplectic(nu) => (&e.conn, nu.clone()),
                    _ => bail!("`{}` carries no symplectic form; try symplectic:4", e.target),
                },
                Input::Rational { conn, nu: Some(nu), .. } => (conn, nu.clone()),
                Input::Rational { .. } => bail!("the symplectic cone needs `nu` in the manifest"),
                Input::Gaussian { .. } => bail!("the symplectic cone needs a rational chart"),
            };
            let data = ricci_flat_data(conn, &nu)?;
            let cone = symplectic_cone(conn, &data)?;
            let rq = q_curvature_vanishes(&cone)?;
            Ok((cone, vec![check("R(Q, ·) = 0", rq)]))
        }
    }
}

fn cone_summary(cone: &ConeChart<Rational>, extra_checks: Vec<PropertyCheck>) -> Result<ConeSummary> {
    let k = cone.contract()?;
    Ok(ConeSummary {
        kind: cone.kind,
        dim: cone.dim(),
        order: k.order,
        torsion_free: k.torsion_free,
        ricci_flat: k.ricci_flat,
        q_independent: k.q_independent,
        extra_checks,
    })
}

pub fn cmd_cone(args: &TargetArgs) -> Result<Report> {
    let input = resolve(&args.target, args.order)?;
    let mut report = Report::new("cone");
    report.input = Some(echo(&args.target, &input, Some(args.kind)));
    let (cone, extra) = build_cone(&input, args.kind)?;
    report.cone = Some(cone_summary(&cone, extra)?);
    Ok(report.finish())
}

pub fn cmd_holonomy(args: &TargetArgs) -> Result<Report> {
    let input = resolve(&args.target, args.order)?;
    let mut report = Report::new("holonomy");
    report.input = Some(echo(&args.target, &input, Some(args.kind)));
    let (cone, extra) = build_cone(&input, args.kind)?;
    report.cone = Some(cone_summary(&cone, extra)?);
    let hol = infinitesimal_holonomy_with(&cone.cone, HolonomyOptions { max_depth: args.max_depth })?;
    report.holonomy = Some(HolonomySummary {
        scope: "infinitesimal holonomy at base point".into(),
        dimension: hol.dim(),
        fiber_dim: hol.fiber_dim,
        depth: hol.depth,
        stabilized: hol.stabilized,
        history: hol.history.clone(),
        closed: hol.is_closed(),
        generators: hol
            .generators
            .iter()
            .map(|g| GeneratorSummary { provenance: g.provenance.to_string(), matrix: g.matrix.clone() })
            .collect(),
    });
    if let (Input::Catalog(entry), ConeKind::Real | ConeKind::Symplectic) = (&input, args.kind) {
        if let Some(expected) = entry.expected.holonomy_dim {
            report.checks.push(PropertyCheck {
                property: "holonomy dimension".into(),
                expected: expected.to_string(),
                actual: hol.dim().to_string(),
                pass: expected == hol.dim(),
            });
        }
    }
    report.classification = Some(classify(&hol));
    Ok(report.finish())
}

pub fn load_config(path: Option<&Path>) -> Result<AcceptanceConfig> {
    match path {
        None => Ok(AcceptanceConfig::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            toml::from_str(&text).with_context(|| format!("parsing {}", p.display()))
        }
    }
}

/// Runs the selected criteria (all when empty) in parallel.
pub fn run_demo(config: &AcceptanceConfig, only: &[u8]) -> Result<Report> {
    let ids: Vec<u8> = if only.is_empty() { CRITERIA.iter().map(|c| c.0).collect() } else { only.to_vec() };
    if let Some(bad) = ids.iter().find(|id| !CRITERIA.iter().any(|c| c.0 == **id)) {
        bail!("no acceptance criterion {bad}");
    }
    let results = std::thread::scope(|s| {
        let handles: Vec<_> = ids.iter().map(|&id| s.spawn(move || run_criterion(id, config))).collect();
        handles.into_iter().map(|h| h.join().expect("criterion thread")).collect::<Vec<_>>()
    });
    let mut report = Report::new("demo");
    report.acceptance = results;
    Ok(report.finish())
}

fn emit(report: &Report, output: &OutputArgs) -> Result<()> {
    if let Some(path) = &output.out {
        std::fs::write(path, report.to_json() + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    let text = if output.json { report.to_json() } else { report.summary() };
    match writeln!(std::io::stdout().lock(), "{text}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

/// Executes a parsed command line; returns whether every check passed.
pub fn run(cli: Cli) -> Result<bool> {
    let (report, output) = match &cli.command {
        Command::Inspect(a) => (cmd_inspect(a)?, &a.output),
        Command::Cone(a) => (cmd_cone(a)?, &a.output),
        Command::Holonomy(a) => (cmd_holonomy(a)?, &a.output),
        Command::Demo(a) => (run_demo(&load_config(a.config.as_deref())?, &a.criteria)?, &a.output),
    };
    emit(&report, output)?;
    Ok(report.pass)
}
