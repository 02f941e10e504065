//! Structured reports for `solve` and `cond`, rendered as JSON or text.
//!
//! Float scalars become JSON numbers. Exact scalars become strings in
//! canonical `p/q` form so no precision is lost. Missing values are `null`.

use serde_json::{json, Map, Value};

use crate::conditionality::{AngleExtrema, ConditionalityReport};
use crate::scalar::{Backend, Scalar};
use crate::solver::{Classification, OuterSolution};

/// Key set of the `solve` JSON object, in output order.
pub const SOLVE_KEYS: [&str; 9] = [
    "solution",
    "xi",
    "classification",
    "residual_norm",
    "det_value",
    "kappa_gamma",
    "kappa_beta",
    "backend",
    "timing_ms",
];

pub fn scalar_json<S: Scalar>(v: &S) -> Value {
    if S::is_exact() {
        Value::String(v.to_string())
    } else {
        float_json(v.to_f64())
    }
}

fn float_json(v: f64) -> Value {
    serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
}

fn vec_json<S: Scalar>(v: &[S]) -> Value {
    Value::Array(v.iter().map(scalar_json).collect())
}

fn opt_f64(v: Option<f64>) -> Value {
    v.map_or(Value::Null, float_json)
}

fn log10_or_null(v: f64) -> Value {
    if v > 0.0 && v.is_finite() {
        float_json(v.log10())
    } else {
        Value::Null
    }
}

#[derive(Debug, Clone)]
pub struct SolveReport<S> {
    pub solution: Option<Vec<S>>,
    /// True when `solution` holds a direction at infinity.
    pub is_direction: bool,
    pub xi: Vec<S>,
    pub classification: Classification,
    pub residual_norm: f64,
    pub det_value: S,
    pub kappa_gamma: Option<f64>,
    pub kappa_beta: Option<f64>,
    pub backend: Backend,
    pub timing_ms: f64,
}

impl<S: Scalar> SolveReport<S> {
    pub fn new(
        sol: &OuterSolution<S>,
        cond: Option<&ConditionalityReport>,
        backend: Backend,
        timing_ms: f64,
    ) -> Self {
        let (solution, is_direction) = match sol.classification() {
            Classification::Unique => (sol.solution(), false),
            Classification::AtInfinity => (sol.direction().map(<[S]>::to_vec), true),
            Classification::RankDeficient => (None, false),
        };
        SolveReport {
            solution,
            is_direction,
            xi: sol.xi().to_vec(),
            classification: sol.classification(),
            residual_norm: sol.residual_norm(),
            det_value: sol.det_value().clone(),
            kappa_gamma: cond.map(|c| c.kappa_gamma),
            kappa_beta: cond.and_then(|c| c.kappa_beta),
            backend,
            timing_ms,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert(
            "solution".into(),
            self.solution.as_deref().map_or(Value::Null, vec_json),
        );
        m.insert("xi".into(), vec_json(&self.xi));
        m.insert(
            "classification".into(),
            Value::String(self.classification.as_str().into()),
        );
        m.insert("residual_norm".into(), float_json(self.residual_norm));
        m.insert("det_value".into(), scalar_json(&self.det_value));
        m.insert("kappa_gamma".into(), opt_f64(self.kappa_gamma));
        m.insert("kappa_beta".into(), opt_f64(self.kappa_beta));
        m.insert("backend".into(), Value::String(self.backend.name().into()));
        m.insert("timing_ms".into(), float_json(self.timing_ms));
        Value::Object(m)
    }

    pub fn to_text(&self) -> String {
        let join = |v: &[S]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        let mut out = format!("classification: {}\n", self.classification);
        match &self.solution {
            Some(x) if self.is_direction => out += &format!("direction:      {}\n", join(x)),
            Some(x) => out += &format!("solution:       {}\n", join(x)),
            None => out += "solution:       none\n",
        }
        out += &format!("xi:             {}\n", join(&self.xi));
        out += &format!("det:            {}\n", self.det_value);
        out += &format!("residual:       {:e}\n", self.residual_norm);
        let fmt_k = |k: Option<f64>| k.map_or("n/a".to_string(), |v| format!("{v:.6}"));
        out += &format!("kappa_gamma:    {}\n", fmt_k(self.kappa_gamma));
        if self.kappa_beta.is_some() {
            out += &format!("kappa_beta:     {}\n", fmt_k(self.kappa_beta));
        }
        out += &format!("backend:        {}\n", self.backend);
        out += &format!("time:           {:.3} ms\n", self.timing_ms);
        out
    }
}

#[derive(Debug, Clone)]
pub struct CondReport<S> {
    pub report: ConditionalityReport,
    pub eigen_ratio_diagonal: Option<S>,
    pub backend: Backend,
}

fn extrema_json(e: &AngleExtrema) -> Value {
    json!({
        "min_angle_rad": float_json(e.min_angle),
        "min_angle_deg": float_json(e.min_angle.to_degrees()),
        "max_angle_rad": float_json(e.max_angle),
        "max_angle_deg": float_json(e.max_angle.to_degrees()),
        "argmin_pair": [e.argmin_pair.0, e.argmin_pair.1],
        "argmax_pair": [e.argmax_pair.0, e.argmax_pair.1],
    })
}

fn extrema_text(label: &str, e: &AngleExtrema) -> String {
    format!(
        "{label} min angle: {:.9} rad ({:.6} deg), rows {:?}\n{label} max angle: {:.9} rad ({:.6} deg), rows {:?}\n",
        e.min_angle,
        e.min_angle.to_degrees(),
        e.argmin_pair,
        e.max_angle,
        e.max_angle.to_degrees(),
        e.argmax_pair
    )
}

impl<S: Scalar> CondReport<S> {
    pub fn to_json(&self) -> Value {
        let r = &self.report;
        let eigen = self.eigen_ratio_diagonal.as_ref();
        json!({
            "kappa_gamma": float_json(r.kappa_gamma),
            "log10_kappa_gamma": log10_or_null(r.kappa_gamma),
            "gamma": extrema_json(&r.gamma),
            "kappa_beta": opt_f64(r.kappa_beta),
            "log10_kappa_beta": r.kappa_beta.map_or(Value::Null, log10_or_null),
            "beta": r.beta.as_ref().map_or(Value::Null, extrema_json),
            "eigen_ratio_diagonal": eigen.map_or(Value::Null, scalar_json),
            "log10_eigen_ratio_diagonal": eigen.map_or(Value::Null, |e| log10_or_null(e.to_f64())),
            "notes": r.notes,
            "backend": self.backend.name(),
        })
    }

    pub fn to_text(&self) -> String {
        let r = &self.report;
        let log = |v: f64| {
            if v > 0.0 {
                format!("{:.4}", v.log10())
            } else {
                "-inf".into()
            }
        };
        let mut out = format!(
            "kappa_gamma: {:.9} (log10 {})\n",
            r.kappa_gamma,
            log(r.kappa_gamma)
        );
        out += &extrema_text("A", &r.gamma);
        if let (Some(kb), Some(beta)) = (r.kappa_beta, &r.beta) {
            out += &format!("kappa_beta:  {kb:.9} (log10 {})\n", log(kb));
            out += &extrema_text("[A|-b]", beta);
        }
        if let Some(e) = &self.eigen_ratio_diagonal {
            out += &format!("eigen_ratio_diagonal: {e} (log10 {})\n", log(e.to_f64()));
        }
        for n in &r.notes {
            out += &format!("note: {n}\n");
        }
        out += &format!("backend: {}\n", self.backend);
        out
    }
}
