//! Report sections for the command line tool.
//!
//! Every section is built from the symbolic results first; substitutions
//! are applied afterwards, and verdicts that depend on residuals being zero
//! are recomputed from the substituted values.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::algebra::{AlgebraError, Bindings, PolyCondition, ScalarExpr, Sym};
use crate::connection::Connection;
use crate::curvature::{codazzi_defect, einstein_factor, eta_parallel_defect, CurvatureBundle, RConvention};
use crate::frame::{CheckStatus, FrameSpec, ValidationReport};
use crate::soliton::{
    classify, consistency_condition, dust_trace_relation, dust_vacuum_check, efe_residual, einstein_quantities,
    flow_lambda, grys_residual, hessian, closedness_defect, lps_axiom_battery, perfect_fluid_energy_tensor,
    q_norm_formulas, rys_residual, soliton_energy_coefficient, soliton_energy_tensor, solve_lambda_einstein,
    stated_flow_lambda, theorem_identity_checks, FluidParams, SolitonParams, Verdict,
};
use crate::spec_file::print_spec;
use crate::tensor::{Matrix, VectorField};

/// Post-hoc substitution applied to every reported expression.
pub struct Ctx<'a> {
    pub bindings: &'a Bindings,
    pub nonzero: &'a BTreeSet<Sym>,
}

impl Ctx<'_> {
    fn val(&self, e: &ScalarExpr) -> Result<ScalarExpr, AlgebraError> {
        if self.bindings.is_empty() {
            Ok(e.clone())
        } else {
            e.substitute(self.bindings)
        }
    }

    fn s(&self, e: &ScalarExpr) -> Result<String, AlgebraError> {
        Ok(self.val(e)?.to_string())
    }

    fn matrix(&self, m: &Matrix) -> Result<Matrix, AlgebraError> {
        if self.bindings.is_empty() {
            Ok(m.clone())
        } else {
            m.substitute(self.bindings)
        }
    }

    fn rows(&self, m: &Matrix) -> Result<Vec<Vec<String>>, AlgebraError> {
        Ok(rows(&self.matrix(m)?))
    }

    fn nonzero_entries(&self, m: &Matrix) -> Result<Vec<Component>, AlgebraError> {
        let m = self.matrix(m)?;
        Ok(m.entries()
            .filter(|(_, v)| !v.is_zero())
            .map(|((i, j), v)| Component::new(&[i, j], v))
            .collect())
    }
}

fn rows(m: &Matrix) -> Vec<Vec<String>> {
    m.rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
}

/// `sha256:` digest of the canonical spec text.
pub fn spec_digest(spec: &FrameSpec) -> String {
    let hash = Sha256::digest(print_spec(spec).as_bytes());
    format!("sha256:{}", hex::encode(hash))
}

#[derive(Debug, Clone, Serialize)]
pub struct Component {
    /// 1-based frame indices.
    pub at: Vec<usize>,
    pub value: String,
}

impl Component {
    fn new(at: &[usize], v: &ScalarExpr) -> Self {
        Component {
            at: at.iter().map(|i| i + 1).collect(),
            value: v.to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConditionOut {
    pub equation: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub roots: Option<Roots>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Roots {
    pub symbol: String,
    pub values: Vec<String>,
}

impl From<&PolyCondition> for ConditionOut {
    fn from(c: &PolyCondition) -> Self {
        ConditionOut {
            equation: c.to_string(),
            roots: c.roots.as_ref().map(|(s, vs)| Roots {
                symbol: s.to_string(),
                values: vs.iter().map(|v| ScalarExpr::from_rational(v.clone()).to_string()).collect(),
            }),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SpecInfo {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dimension: usize,
    pub digest: String,
}

pub fn spec_info(spec: &FrameSpec) -> SpecInfo {
    SpecInfo {
        name: spec.name().map(str::to_string),
        dimension: spec.dim(),
        digest: spec_digest(spec),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOut {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationSection {
    pub valid: bool,
    pub checks: Vec<CheckOut>,
}

pub fn validation_section(report: &ValidationReport) -> ValidationSection {
    ValidationSection {
        valid: report.is_valid(),
        checks: report
            .checks
            .iter()
            .map(|c| CheckOut {
                name: c.name,
                status: c.status,
                detail: c.detail.clone(),
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GammaOut {
    /// `∇_{f_i} f_j` has `value` as its `f_k` component.
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConnectionSection {
    pub coefficients: Vec<GammaOut>,
    pub torsion_free: bool,
    pub metric_compatible: bool,
}

impl ConnectionSection {
    pub fn failed(&self) -> bool {
        !self.torsion_free || !self.metric_compatible
    }
}

pub fn connection_section(spec: &FrameSpec, conn: &Connection, ctx: &Ctx) -> Result<ConnectionSection, AlgebraError> {
    let n = spec.dim();
    let mut coefficients = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = ctx.val(conn.coefficient(k, i, j))?;
                if !v.is_zero() {
                    coefficients.push(GammaOut {
                        i: i + 1,
                        j: j + 1,
                        k: k + 1,
                        value: v.to_string(),
                    });
                }
            }
        }
    }
    Ok(ConnectionSection {
        coefficients,
        torsion_free: conn.torsion(spec).is_zero(),
        metric_compatible: conn.nonmetricity(spec).is_zero(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct RiemannOut {
    /// `R(f_i, f_j) f_k` has `value` as its `f_l` component; only `i < j`.
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub value: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct DefectOut {
    pub holds: bool,
    pub components: Vec<Component>,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityOut {
    pub antisymmetry: bool,
    pub first_bianchi: bool,
    pub pair_symmetry: bool,
    pub ricci_symmetry: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CurvatureSection {
    pub riemann: Vec<RiemannOut>,
    pub ricci: Vec<Vec<String>>,
    pub r_signed: String,
    pub r_unsigned: String,
    pub ricci_operator: Vec<Vec<String>>,
    pub q_norm_squared: String,
    pub einstein_factor: Option<String>,
    pub nabla_ricci: Vec<Component>,
    pub codazzi: DefectOut,
    pub eta_parallel: DefectOut,
    pub identities: IdentityOut,
}

impl CurvatureSection {
    pub fn failed(&self) -> bool {
        let i = &self.identities;
        !(i.antisymmetry && i.first_bianchi && i.pair_symmetry && i.ricci_symmetry)
    }
}

fn defects(list: &crate::curvature::DefectList, ctx: &Ctx) -> Result<DefectOut, AlgebraError> {
    let mut components = Vec::new();
    for (idx, v) in &list.components {
        let v = ctx.val(v)?;
        if !v.is_zero() {
            components.push(Component::new(idx, &v));
        }
    }
    Ok(DefectOut {
        holds: components.is_empty(),
        components,
    })
}

pub fn curvature_section(spec: &FrameSpec, curv: &CurvatureBundle, ctx: &Ctx) -> Result<CurvatureSection, AlgebraError> {
    let n = spec.dim();
    let mut riemann = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in 0..n {
                for l in 0..n {
                    let v = ctx.val(curv.riem.get(l, k, i, j))?;
                    if !v.is_zero() {
                        riemann.push(RiemannOut {
                            i: i + 1,
                            j: j + 1,
                            k: k + 1,
                            l: l + 1,
                            value: v.to_string(),
                        });
                    }
                }
            }
        }
    }
    let mut nabla_ricci = Vec::new();
    for (idx, v) in curv.nabla_s.nonzero() {
        let v = ctx.val(v)?;
        if !v.is_zero() {
            nabla_ricci.push(Component::new(&idx, &v));
        }
    }
    Ok(CurvatureSection {
        riemann,
        ricci: ctx.rows(&curv.ricci)?,
        r_signed: ctx.s(&curv.r_signed)?,
        r_unsigned: ctx.s(&curv.r_unsigned)?,
        ricci_operator: ctx.rows(&curv.q)?,
        q_norm_squared: ctx.s(&curv.q_norm_sq)?,
        einstein_factor: einstein_factor(spec, &curv.ricci).ok().map(|c| ctx.s(&c)).transpose()?,
        nabla_ricci,
        codazzi: defects(&codazzi_defect(&curv.nabla_s), ctx)?,
        eta_parallel: defects(&eta_parallel_defect(&curv.nabla_s), ctx)?,
        identities: IdentityOut {
            antisymmetry: curv.antisymmetry_defects().is_empty(),
            first_bianchi: curv.bianchi_defects().is_empty(),
            pair_symmetry: curv.lowered_symmetry_defects().is_empty(),
            ricci_symmetry: curv.ricci_asymmetry().is_empty(),
        },
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomOut {
    pub id: &'static str,
    pub statement: &'static str,
    pub status: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condition: Option<ConditionOut>,
    pub residuals: Vec<Component>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

pub fn axiom_section(
    spec: &FrameSpec,
    conn: &Connection,
    curv: &CurvatureBundle,
    ctx: &Ctx,
) -> Result<Vec<AxiomOut>, AlgebraError> {
    let mut out = Vec::new();
    for rec in lps_axiom_battery(spec, conn, curv) {
        let rec = if ctx.bindings.is_empty() {
            rec
        } else {
            rec.substitute(ctx.bindings, ctx.nonzero)?
        };
        out.push(AxiomOut {
            id: rec.id,
            statement: rec.statement,
            status: rec.status,
            condition: rec.condition.as_ref().map(ConditionOut::from),
            residuals: rec
                .residuals
                .iter()
                .map(|r| Component {
                    at: r.at.clone(),
                    value: r.value.to_string(),
                })
                .collect(),
            notes: rec.notes,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct EinsteinOut {
    pub factor: String,
    pub lambda: String,
    /// `S(ξ,ξ)` by `c η(ξ)`, by `c g(ξ,ξ)`, in closed form and from the Ricci tensor.
    pub ricci_xi_xi: BTreeMap<&'static str, String>,
    pub ricci_xi_xi_consistent: bool,
    pub soliton_scalar: String,
    /// Soliton residual with the solved `λ`, for `V = 0` and for `V = ξ`.
    pub residual_zero_field: Vec<Component>,
    pub residual_xi: Vec<Component>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_relation: Option<AlphaRelationOut>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AlphaRelationOut {
    /// `λ` after `α = nβ/2`.
    pub lambda: String,
    /// `β(r - n(n-1))/2`.
    pub nonconstant_r_lambda: String,
    pub status: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condition: Option<ConditionOut>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GradientOut {
    /// Potential one-form used, `df = η`.
    pub df: Vec<String>,
    pub hessian: Vec<Vec<String>>,
    pub closed: bool,
    pub residual: Vec<Component>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolitonSection {
    pub r_convention: RConvention,
    pub r_signed: String,
    pub r_unsigned: String,
    pub status: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub einstein: Option<EinsteinOut>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub not_einstein: Vec<Component>,
    pub gradient: GradientOut,
}

pub fn soliton_section(
    spec: &FrameSpec,
    conn: &Connection,
    curv: &CurvatureBundle,
    params: &SolitonParams,
    ctx: &Ctx,
) -> Result<SolitonSection, AlgebraError> {
    let n = spec.dim();
    let eta = spec.eta();
    let gradient = GradientOut {
        df: eta.0.iter().map(|x| ctx.s(x)).collect::<Result<_, _>>()?,
        hessian: ctx.rows(&hessian(conn, &eta))?,
        closed: closedness_defect(spec, &eta).is_zero(),
        residual: ctx.nonzero_entries(&grys_residual(spec, conn, curv, &eta, params))?,
    };
    let base = SolitonSection {
        r_convention: params.r_convention,
        r_signed: ctx.s(&curv.r_signed)?,
        r_unsigned: ctx.s(&curv.r_unsigned)?,
        status: Verdict::Fails,
        einstein: None,
        not_einstein: Vec::new(),
        gradient,
    };
    let lambda = match solve_lambda_einstein(spec, curv, params) {
        Ok(l) => l,
        Err(e) => {
            let not_einstein = e
                .components
                .iter()
                .map(|(idx, v)| Ok(Component::new(idx, &ctx.val(v)?)))
                .collect::<Result<_, AlgebraError>>()?;
            return Ok(SolitonSection { not_einstein, ..base });
        }
    };
    let solved = params.clone().with_lambda(lambda.clone());
    let q = einstein_quantities(spec, curv, &solved)?;
    let zero_field = rys_residual(spec, curv, &VectorField::zero(n), &solved);
    let along_xi = rys_residual(spec, curv, spec.xi(), &solved);
    let alpha_relation = match consistency_condition(spec, curv, params) {
        Some((l, stated, _)) => {
            let diff = ctx.val(&(&l - &stated))?;
            let (status, cond) = classify(&[diff], ctx.nonzero);
            Some(AlphaRelationOut {
                lambda: ctx.s(&l)?,
                nonconstant_r_lambda: ctx.s(&stated)?,
                status,
                condition: cond.as_ref().map(ConditionOut::from),
            })
        }
        None => None,
    };
    let mut xx = BTreeMap::new();
    xx.insert("via_eta", ctx.s(&q.s_xi_xi_via_eta)?);
    xx.insert("via_metric", ctx.s(&q.s_xi_xi_via_metric)?);
    xx.insert("closed_form", ctx.s(&q.s_xi_xi_closed)?);
    xx.insert("ricci_tensor", ctx.s(&q.s_xi_xi_curvature)?);
    let residual_zero_field = ctx.nonzero_entries(&zero_field)?;
    let status = if residual_zero_field.is_empty() {
        Verdict::Holds
    } else {
        Verdict::Fails
    };
    Ok(SolitonSection {
        status,
        einstein: Some(EinsteinOut {
            factor: ctx.s(&q.factor)?,
            lambda: ctx.s(&lambda)?,
            ricci_xi_xi: xx,
            ricci_xi_xi_consistent: q.consistent(),
            soliton_scalar: ctx.s(&q.soliton_scalar)?,
            residual_zero_field,
            residual_xi: ctx.nonzero_entries(&along_xi)?,
            alpha_relation,
        }),
        ..base
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckedExpr {
    pub derived: String,
    pub stated: String,
    pub agree: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct QNormOut {
    pub id: &'static str,
    pub value: String,
    pub check: String,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DustOut {
    pub flow_norm: String,
    pub r_trace: String,
    pub r_flow: String,
    pub r_flow_unit_norm: String,
    pub difference: String,
    pub difference_unit_norm: String,
    pub condition: Option<String>,
    pub branches: Vec<BTreeMap<&'static str, String>>,
    pub vacuum: bool,
    /// Trace of the dust field equation residual under the run's convention.
    pub trace: String,
    pub trace_gives_r_equals_tau_rho: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FluidSection {
    pub r_convention: RConvention,
    pub perfect_fluid_tensor: Vec<Vec<String>>,
    pub soliton_energy_coefficient: String,
    /// Field equation residual with the soliton energy tensor, cosmological term included.
    pub field_equation_residual: Vec<Component>,
    pub flow_lambda: CheckedExpr,
    pub q_norms: Vec<QNormOut>,
    pub dust: DustOut,
}

impl FluidSection {
    pub fn failed(&self) -> bool {
        !self.flow_lambda.agree || self.q_norms.iter().any(|q| !q.holds)
    }
}

pub fn fluid_section(
    spec: &FrameSpec,
    curv: &CurvatureBundle,
    params: &SolitonParams,
    fluid: &FluidParams,
    ctx: &Ctx,
) -> Result<FluidSection, AlgebraError> {
    let r = curv.r(params.r_convention);
    let t = soliton_energy_tensor(spec, params, fluid, r)?;
    let residual = efe_residual(spec, curv, params.r_convention, fluid, &t, true);
    let derived = flow_lambda(spec, params, fluid, r).ok_or(AlgebraError::DivisionByZero)?;
    let stated = stated_flow_lambda(&params.beta, fluid, r);
    let (derived, stated) = (ctx.val(&derived)?, ctx.val(&stated)?);
    let q_norms = q_norm_formulas(params, fluid)?
        .into_iter()
        .map(|q| {
            Ok(QNormOut {
                id: q.id,
                value: ctx.s(&q.expr)?,
                check: q.check,
                holds: q.holds,
            })
        })
        .collect::<Result<_, AlgebraError>>()?;
    let dust = dust_vacuum_check(spec, params, fluid)?;
    let trace = dust_trace_relation(spec, curv, params.r_convention, fluid)?;
    let branches = dust
        .branches
        .iter()
        .map(|b| {
            let mut m = BTreeMap::new();
            m.insert("factor", b.factor.clone());
            m.insert("conclusion", b.conclusion.clone());
            m
        })
        .collect();
    Ok(FluidSection {
        r_convention: params.r_convention,
        perfect_fluid_tensor: ctx.rows(&perfect_fluid_energy_tensor(spec, fluid))?,
        soliton_energy_coefficient: ctx.s(&soliton_energy_coefficient(params, fluid, r)?)?,
        field_equation_residual: ctx.nonzero_entries(&residual)?,
        flow_lambda: CheckedExpr {
            agree: derived == stated,
            derived: derived.to_string(),
            stated: stated.to_string(),
        },
        q_norms,
        dust: DustOut {
            flow_norm: ctx.s(&dust.flow_norm)?,
            r_trace: ctx.s(&dust.r_trace)?,
            r_flow: ctx.s(&dust.r_flow)?,
            r_flow_unit_norm: ctx.s(&dust.r_flow_unit)?,
            difference: ctx.s(&dust.difference)?,
            difference_unit_norm: ctx.s(&dust.difference_unit)?,
            condition: dust.condition.as_ref().map(ToString::to_string),
            branches,
            vacuum: dust.vacuum,
            trace: ctx.s(&trace.trace)?,
            trace_gives_r_equals_tau_rho: trace.reproduces,
        },
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremOut {
    pub id: &'static str,
    pub dimension: i64,
    pub premises: Vec<String>,
    pub conclusion: String,
    pub derived: String,
    pub certified: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

pub fn theorem_section(n: i64, ctx: &Ctx) -> Result<Vec<TheoremOut>, AlgebraError> {
    theorem_identity_checks(n)
        .into_iter()
        .map(|t| {
            let derived = ctx.val(&t.derived)?;
            let stated = ctx.val(&t.stated)?;
            Ok(TheoremOut {
                id: t.id,
                dimension: t.dimension,
                premises: t.premises,
                conclusion: format!("{} = {}", t.lhs, stated),
                certified: derived == stated,
                derived: derived.to_string(),
                notes: t.notes,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Ok,
    Failure,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<SpecInfo>,
    pub r_convention: RConvention,
    pub substitutions: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validation: Option<ValidationSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub connection: Option<ConnectionSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curvature: Option<CurvatureSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axioms: Option<Vec<AxiomOut>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub soliton: Option<SolitonSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fluid: Option<FluidSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theorems: Option<Vec<TheoremOut>>,
    pub outcome: Outcome,
}

impl Report {
    pub fn new(command: &str, convention: RConvention, subs: &Bindings) -> Self {
        Report {
            tool: "soliton-forge",
            command: command.to_string(),
            spec: None,
            r_convention: convention,
            substitutions: subs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
            validation: None,
            connection: None,
            curvature: None,
            axioms: None,
            soliton: None,
            fluid: None,
            theorems: None,
            outcome: Outcome::Ok,
        }
    }

    /// Sets `outcome` from the hard-failure verdicts of every section present.
    pub fn settle(&mut self) {
        let failed = self.validation.as_ref().is_some_and(|v| !v.valid)
            || self.connection.as_ref().is_some_and(ConnectionSection::failed)
            || self.curvature.as_ref().is_some_and(CurvatureSection::failed)
            || self
                .axioms
                .as_ref()
                .is_some_and(|a| a.iter().any(|r| r.status == Verdict::Fails))
            || self.soliton.as_ref().is_some_and(|s| s.status == Verdict::Fails)
            || self.fluid.as_ref().is_some_and(FluidSection::failed)
            || self.theorems.as_ref().is_some_and(|t| t.iter().any(|r| !r.certified));
        self.outcome = if failed { Outcome::Failure } else { Outcome::Ok };
    }

    pub fn to_structured(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        match &self.spec {
            Some(s) => {
                let _ = writeln!(
                    w,
                    "spec {} (n = {}, {})",
                    s.name.as_deref().unwrap_or("<unnamed>"),
                    s.dimension,
                    s.digest
                );
            }
            None => {
                let _ = writeln!(w, "{}", self.tool);
            }
        }
        let _ = writeln!(w, "r convention: {}", self.r_convention);
        if !self.substitutions.is_empty() {
            let subs: Vec<String> = self.substitutions.iter().map(|(k, v)| format!("{k} = {v}")).collect();
            let _ = writeln!(w, "substitutions: {}", subs.join(", "));
        }
        if let Some(v) = &self.validation {
            let _ = writeln!(w, "\n[validation]");
            for c in &v.checks {
                let tag = match c.status {
                    CheckStatus::Pass => "PASS",
                    CheckStatus::Fail => "FAIL",
                    CheckStatus::Warn => "WARN",
                    CheckStatus::Unchecked => "SKIP",
                };
                let _ = writeln!(w, "{tag:4}  {:<14} {}", c.name, c.detail);
            }
        }
        if let Some(c) = &self.connection {
            let _ = writeln!(w, "\n[connection]");
            let mut last = None;
            for g in &c.coefficients {
                if last != Some((g.i, g.j)) {
                    let terms: Vec<String> = c
                        .coefficients
                        .iter()
                        .filter(|h| (h.i, h.j) == (g.i, g.j))
                        .map(|h| format!("({})*f{}", h.value, h.k))
                        .collect();
                    let _ = writeln!(w, "nabla_f{} f{} = {}", g.i, g.j, terms.join(" + "));
                    last = Some((g.i, g.j));
                }
            }
            if c.coefficients.is_empty() {
                let _ = writeln!(w, "all coefficients vanish");
            }
            let _ = writeln!(w, "torsion free: {}, metric compatible: {}", c.torsion_free, c.metric_compatible);
        }
        if let Some(c) = &self.curvature {
            let _ = writeln!(w, "\n[curvature]");
            let mut last = None;
            for r in &c.riemann {
                if last != Some((r.i, r.j, r.k)) {
                    let terms: Vec<String> = c
                        .riemann
                        .iter()
                        .filter(|q| (q.i, q.j, q.k) == (r.i, r.j, r.k))
                        .map(|q| format!("({})*f{}", q.value, q.l))
                        .collect();
                    let _ = writeln!(w, "R(f{}, f{}) f{} = {}", r.i, r.j, r.k, terms.join(" + "));
                    last = Some((r.i, r.j, r.k));
                }
            }
            let _ = writeln!(w, "S = {}", fmt_rows(&c.ricci));
            let _ = writeln!(w, "r (signed, g^jk S_jk) = {}", c.r_signed);
            let _ = writeln!(w, "r (unsigned, sum S_jj) = {}", c.r_unsigned);
            let _ = writeln!(w, "Q = {}", fmt_rows(&c.ricci_operator));
            let _ = writeln!(w, "|Q|^2 = {}", c.q_norm_squared);
            match &c.einstein_factor {
                Some(f) => {
                    let _ = writeln!(w, "Einstein: S = ({f}) g");
                }
                None => {
                    let _ = writeln!(w, "Einstein: no");
                }
            }
            let _ = writeln!(w, "nabla S: {}", fmt_components(&c.nabla_ricci));
            let _ = writeln!(w, "Codazzi: {}", verdict_word(c.codazzi.holds));
            let _ = writeln!(w, "eta-parallel Ricci: {}", verdict_word(c.eta_parallel.holds));
            let i = &c.identities;
            let _ = writeln!(
                w,
                "identities: antisymmetry {}, first Bianchi {}, pair symmetry {}, Ricci symmetry {}",
                i.antisymmetry, i.first_bianchi, i.pair_symmetry, i.ricci_symmetry
            );
        }
        if let Some(axioms) = &self.axioms {
            let _ = writeln!(w, "\n[axioms]");
            for a in axioms {
                let cond = a
                    .condition
                    .as_ref()
                    .map(|c| format!("  if {}{}", c.equation, fmt_roots(c)))
                    .unwrap_or_default();
                let _ = writeln!(w, "{:<11} {:<18} {}{}", a.status.to_string(), a.id, a.statement, cond);
                if a.status != Verdict::Holds {
                    let _ = writeln!(w, "            residuals: {}", fmt_components(&a.residuals));
                }
                for n in &a.notes {
                    let _ = writeln!(w, "            note: {n}");
                }
            }
        }
        if let Some(s) = &self.soliton {
            let _ = writeln!(w, "\n[soliton]");
            let _ = writeln!(w, "r signed = {}, r unsigned = {}", s.r_signed, s.r_unsigned);
            match &s.einstein {
                Some(e) => {
                    let _ = writeln!(w, "Einstein factor c = {}", e.factor);
                    let _ = writeln!(w, "lambda = {}", e.lambda);
                    let _ = writeln!(w, "soliton scalar n*c = {}", e.soliton_scalar);
                    let xx: Vec<String> = e.ricci_xi_xi.iter().map(|(k, v)| format!("{k}: {v}")).collect();
                    let _ = writeln!(w, "S(xi, xi): {} (consistent: {})", xx.join(", "), e.ricci_xi_xi_consistent);
                    let _ = writeln!(w, "residual with V = 0: {}", fmt_components(&e.residual_zero_field));
                    let _ = writeln!(w, "residual with V = xi: {}", fmt_components(&e.residual_xi));
                    if let Some(a) = &e.alpha_relation {
                        let cond = a
                            .condition
                            .as_ref()
                            .map(|c| format!(" if {}{}", c.equation, fmt_roots(c)))
                            .unwrap_or_default();
                        let _ = writeln!(
                            w,
                            "with alpha = n*beta/2: lambda = {} vs {}: {}{}",
                            a.lambda, a.nonconstant_r_lambda, a.status, cond
                        );
                    }
                }
                None => {
                    let _ = writeln!(w, "not Einstein; S - c g: {}", fmt_components(&s.not_einstein));
                }
            }
            let g = &s.gradient;
            let _ = writeln!(w, "gradient with df = eta: Hess = {}", fmt_rows(&g.hessian));
            let _ = writeln!(w, "  df closed: {}, residual: {}", g.closed, fmt_components(&g.residual));
            let _ = writeln!(w, "verdict: {}", s.status);
        }
        if let Some(f) = &self.fluid {
            let _ = writeln!(w, "\n[fluid]");
            let _ = writeln!(w, "T (perfect fluid) = {}", fmt_rows(&f.perfect_fluid_tensor));
            let _ = writeln!(w, "soliton energy coefficient = {}", f.soliton_energy_coefficient);
            let _ = writeln!(w, "field equation residual: {}", fmt_components(&f.field_equation_residual));
            let _ = writeln!(
                w,
                "lambda from flow: {} (closed form {}, agree: {})",
                f.flow_lambda.derived, f.flow_lambda.stated, f.flow_lambda.agree
            );
            for q in &f.q_norms {
                let _ = writeln!(w, "{}: |Q|^2 = {}; {}: {}", q.id, q.value, q.check, q.holds);
            }
            let d = &f.dust;
            let _ = writeln!(w, "dust: r by trace = {}", d.r_trace);
            let _ = writeln!(w, "dust: r by flow contraction = {} (A.A = {})", d.r_flow, d.flow_norm);
            let _ = writeln!(w, "dust: r by flow contraction with A.A = 1: {}", d.r_flow_unit_norm);
            let _ = writeln!(w, "dust: difference {} gives {}", d.difference, d.condition.as_deref().unwrap_or("nothing"));
            for b in &d.branches {
                let _ = writeln!(w, "  branch {}: {}", b["factor"], b["conclusion"]);
            }
            let _ = writeln!(w, "dust: vacuum: {}", d.vacuum);
            let _ = writeln!(
                w,
                "dust: trace of residual = {} (gives r = tau*rho: {})",
                d.trace, d.trace_gives_r_equals_tau_rho
            );
        }
        if let Some(ts) = &self.theorems {
            let _ = writeln!(w, "\n[theorems]");
            for t in ts {
                let tag = if t.certified { "certified" } else { "FAILED" };
                let _ = writeln!(w, "{tag:<9}  {:<30} n = {}  {}", t.id, t.dimension, t.conclusion);
                let _ = writeln!(w, "           from: {}", t.premises.join("; "));
                if !t.certified {
                    let _ = writeln!(w, "           derived: {}", t.derived);
                }
                for n in &t.notes {
                    let _ = writeln!(w, "           note: {n}");
                }
            }
        }
        let _ = writeln!(
            w,
            "\noutcome: {}",
            match self.outcome {
                Outcome::Ok => "ok",
                Outcome::Failure => "failure",
            }
        );
        out
    }
}

fn verdict_word(holds: bool) -> &'static str {
    if holds {
        "holds"
    } else {
        "fails"
    }
}

fn fmt_rows(rows: &[Vec<String>]) -> String {
    let inner: Vec<String> = rows.iter().map(|r| format!("[{}]", r.join(", "))).collect();
    format!("[{}]", inner.join(", "))
}

fn fmt_components(cs: &[Component]) -> String {
    if cs.is_empty() {
        return "none".into();
    }
    cs.iter()
        .map(|c| {
            let idx: Vec<String> = c.at.iter().map(ToString::to_string).collect();
            format!("[{}] {}", idx.join(","), c.value)
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn fmt_roots(c: &ConditionOut) -> String {
    match &c.roots {
        Some(r) if !r.values.is_empty() => format!(" ({} in {{{}}})", r.symbol, r.values.join(", ")),
        _ => String::new(),
    }
}
