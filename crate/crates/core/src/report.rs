//! Serializable report envelope shared by the CLI and the examples, plus the
//! plain-text renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::criteria::CriteriaReport;
use crate::error::Error;
use crate::ffield::{EulerFactor, PointCount, TraceResult};
use crate::gamma::{GammaList, HypergeomData};
use crate::hodge::{HodgeSummary, ModulusRowView};
use crate::polytope::EhrhartData;

/// Bumped on any breaking change to the JSON layout.
pub const FORMAT_VERSION: &str = "1.0";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub format_version: String,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub criteria: Option<CriteriaSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ehrhart: Option<EhrhartSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hodge: Option<HodgeSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monodromy: Option<MonodromySection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub traces: Option<Vec<TraceView>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub euler: Option<EulerSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counts: Option<Vec<CountView>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cn: Option<Vec<CnView>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorView>,
}

impl Report {
    pub fn new(command: &str, gamma: Option<&GammaList>) -> Self {
        Report {
            format_version: FORMAT_VERSION.to_string(),
            command: command.to_string(),
            gamma: gamma.map(|g| g.entries().to_vec()),
            criteria: None,
            ehrhart: None,
            hodge: None,
            monodromy: None,
            traces: None,
            euler: None,
            counts: None,
            cn: None,
            error: None,
        }
    }

    pub fn failure(command: &str, gamma: Option<&GammaList>, err: &Error) -> Self {
        let mut r = Report::new(command, gamma);
        r.error = Some(ErrorView::from(err));
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorView {
    pub code: String,
    pub message: String,
}

impl From<&Error> for ErrorView {
    fn from(e: &Error) -> Self {
        let message = match e {
            // the bare reason reads better than the wrapped one
            Error::Gamma(g) => g.to_string(),
            other => other.to_string(),
        };
        ErrorView {
            code: e.code().to_string(),
            message,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriteriaSection {
    pub integral: bool,
    pub landau_integral: bool,
    pub landau_witness: Option<String>,
    pub landau_min: i64,
    pub criterion_a: bool,
    pub criterion_b: bool,
    pub criterion_c: bool,
    pub consistent: bool,
    pub codegree: usize,
    pub codegree_source: String,
    pub r: usize,
    pub s: usize,
    pub hodge_vector: Vec<i64>,
    pub effective_weight: usize,
}

impl From<&CriteriaReport> for CriteriaSection {
    fn from(c: &CriteriaReport) -> Self {
        CriteriaSection {
            integral: c.landau_integral,
            landau_integral: c.landau_integral,
            landau_witness: c.landau_witness.map(|w| w.to_string()),
            landau_min: c.landau_min,
            criterion_a: c.criterion_a,
            criterion_b: c.criterion_b,
            criterion_c: c.criterion_c,
            consistent: c.consistent(),
            codegree: c.codegree,
            codegree_source: c.codegree_source.as_str().to_string(),
            r: c.r,
            s: c.s,
            hodge_vector: c.hodge_vector.clone(),
            effective_weight: c.effective_weight,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EhrhartSection {
    /// `enumeration` or `closed_form`.
    pub method: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counts: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interior_counts: Option<Vec<u64>>,
    pub delta: String,
    pub delta_coeffs: Vec<i64>,
    pub codegree: usize,
    pub vol: u64,
}

impl EhrhartSection {
    pub fn from_enumeration(e: &EhrhartData, vol: u64) -> Self {
        EhrhartSection {
            method: "enumeration".into(),
            counts: Some(e.counts.clone()),
            interior_counts: Some(e.interior_counts.clone()),
            delta: e.delta_poly().to_string(),
            delta_coeffs: e.delta.clone(),
            codegree: e.codegree,
            vol,
        }
    }

    pub fn from_closed_form(h: &HodgeSummary, g: &GammaList) -> Self {
        EhrhartSection {
            method: "closed_form".into(),
            counts: None,
            interior_counts: None,
            delta: h.delta.to_string(),
            delta_coeffs: h.delta.to_i64().unwrap_or_default(),
            codegree: crate::polytope::codegree_of(&h.delta, g.dim()),
            vol: g.vol(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeSection {
    pub table: Vec<ModulusRowView>,
    pub delta_sharp: String,
    pub delta: String,
    pub hodge_vector: Vec<String>,
    pub effective_weight: usize,
    pub e_array: Vec<Vec<String>>,
    pub e_array_text: String,
    pub criterion_b: bool,
    pub criterion_c: bool,
}

impl From<&HodgeSummary> for HodgeSection {
    fn from(h: &HodgeSummary) -> Self {
        HodgeSection {
            table: h.per_n_table.iter().map(ModulusRowView::from).collect(),
            delta_sharp: h.delta_sharp.to_string(),
            delta: h.delta.to_string(),
            hodge_vector: h.hodge_vector.iter().map(ToString::to_string).collect(),
            effective_weight: h.effective_weight,
            e_array: h
                .e_poly
                .to_array()
                .iter()
                .map(|row| row.iter().map(ToString::to_string).collect())
                .collect(),
            e_array_text: h.e_poly.array_string(),
            criterion_b: h.criterion_b,
            criterion_c: h.criterion_c,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonodromySection {
    pub q_inf: String,
    pub q_zero: String,
    pub q_inf_poly: String,
    pub q_zero_poly: String,
    pub cyclotomic_exponents: BTreeMap<u64, i64>,
    pub alpha: Vec<String>,
    pub beta: Vec<String>,
    pub m_constant: String,
    pub vol: u64,
    pub degree: usize,
}

impl From<&HypergeomData> for MonodromySection {
    fn from(h: &HypergeomData) -> Self {
        let show = |v: &[num_rational::Rational64]| v.iter().map(ToString::to_string).collect();
        MonodromySection {
            q_inf: h.factor_string(true),
            q_zero: h.factor_string(false),
            q_inf_poly: h.q_inf.to_string(),
            q_zero_poly: h.q_zero.to_string(),
            cyclotomic_exponents: h.cyclotomic_exponents.clone(),
            alpha: show(&h.alpha),
            beta: show(&h.beta),
            m_constant: h.m_constant.to_string(),
            vol: h.vol,
            degree: h.degree,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceView {
    pub t: String,
    pub q: u64,
    pub value: i64,
    pub method: String,
    pub singular_fiber: bool,
    pub uncalibrated: bool,
    pub residual: f64,
    pub within_weil_bound: bool,
}

impl From<&TraceResult> for TraceView {
    fn from(r: &TraceResult) -> Self {
        TraceView {
            t: r.t.to_string(),
            q: r.q,
            value: r.value,
            method: r.method.as_str().into(),
            singular_fiber: r.singular_fiber,
            uncalibrated: r.uncalibrated,
            residual: r.residual,
            within_weil_bound: r.within_weil_bound,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerSection {
    pub p: u64,
    pub t: String,
    pub poly: String,
    pub coeffs: Vec<String>,
    pub weight: usize,
    pub sign: i8,
    pub power_sums: Vec<i64>,
}

impl From<&EulerFactor> for EulerSection {
    fn from(e: &EulerFactor) -> Self {
        EulerSection {
            p: e.p,
            t: e.t.to_string(),
            poly: e.poly.display_in("x"),
            coeffs: e.poly.coeffs().iter().map(ToString::to_string).collect(),
            weight: e.weight,
            sign: e.sign,
            power_sums: e.power_sums.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountView {
    pub family: String,
    pub t: String,
    pub q: u64,
    pub count: u64,
    pub implied_h: i64,
}

impl From<&PointCount> for CountView {
    fn from(c: &PointCount) -> Self {
        CountView {
            family: c.family.name().into(),
            t: c.t.to_string(),
            q: c.q,
            count: c.count,
            implied_h: c.implied_trace.value,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnView {
    pub n: u64,
    pub value: String,
    pub integral: bool,
}

impl CnView {
    pub fn new(n: u64, v: &BigRational) -> Self {
        CnView {
            n,
            value: v.to_string(),
            integral: v.is_integer(),
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

/// Human-readable rendering. Traces, Euler factors and `c_n` values print
/// bare so they can be diffed against transcripts.
pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    if let Some(e) = &r.error {
        let _ = writeln!(out, "error [{}]: {}", e.code, e.message);
        return out;
    }
    let gamma = r.gamma.as_ref().map(|g| {
        let s: Vec<String> = g.iter().map(ToString::to_string).collect();
        format!("({})", s.join(","))
    });
    match r.command.as_str() {
        "trace" => {
            let vals: Vec<String> = r.traces.iter().flatten().map(|t| t.value.to_string()).collect();
            let _ = writeln!(out, "{}", vals.join(" "));
            return out;
        }
        "euler" => {
            if let Some(e) = &r.euler {
                let _ = writeln!(out, "{}", e.poly);
            }
            return out;
        }
        "cn" => {
            for c in r.cn.iter().flatten() {
                let _ = writeln!(out, "{}", c.value);
            }
            return out;
        }
        _ => {}
    }
    if let Some(g) = &gamma {
        let _ = writeln!(out, "gamma            {g}");
    }
    if let Some(c) = &r.criteria {
        let _ = writeln!(out, "integral         {}", yes_no(c.integral));
        match &c.landau_witness {
            None => {
                let _ = writeln!(out, "landau           L(x) >= 0 at every breakpoint");
            }
            Some(w) => {
                let _ = writeln!(out, "landau           witness x = {w}, L(x) = {}", c.landau_min);
            }
        }
        let _ = writeln!(
            out,
            "criterion A      {}  (codegree {} via {}, r = {})",
            yes_no(c.criterion_a),
            c.codegree,
            c.codegree_source,
            c.r
        );
        let hv: Vec<String> = c.hodge_vector.iter().map(ToString::to_string).collect();
        let _ = writeln!(
            out,
            "criterion B      {}  (Hodge vector {})",
            yes_no(c.criterion_b),
            hv.join(" ")
        );
        let _ = writeln!(
            out,
            "criterion C      {}  (effective weight {}, s - r - 1 = {})",
            yes_no(c.criterion_c),
            c.effective_weight,
            c.s as i64 - c.r as i64 - 1
        );
        if !c.consistent {
            let _ = writeln!(out, "WARNING          verdicts disagree");
        }
    }
    if let Some(e) = &r.ehrhart {
        let _ = writeln!(out, "method           {}", e.method);
        if let Some(c) = &e.counts {
            let s: Vec<String> = c.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "#(kΔ), k=0..d    {}", s.join(" "));
        }
        if let Some(c) = &e.interior_counts {
            let s: Vec<String> = c.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "interior k=1..   {}", s.join(" "));
        }
        let _ = writeln!(out, "δ                {}", e.delta);
        let _ = writeln!(out, "δ(1) = vol       {}", e.vol);
        let _ = writeln!(out, "codegree         {}", e.codegree);
    }
    if let Some(h) = &r.hodge {
        let w = h.table.iter().map(|row| row.n.to_string().len()).max().unwrap_or(1).max(1);
        let _ = writeln!(out, "{:>w$} | m- | m+ | δ_N^#", "N");
        for row in &h.table {
            let _ = writeln!(
                out,
                "{:>w$} | {:>2} | {:>2} | {}",
                row.n, row.m_minus, row.m_plus, row.delta_n_sharp
            );
        }
        let _ = writeln!(out, "δ^#              {}", h.delta_sharp);
        let _ = writeln!(out, "δ                {}", h.delta);
        let _ = writeln!(out, "Hodge vector     {}", h.hodge_vector.join(" "));
        let _ = writeln!(out, "effective weight {}", h.effective_weight);
        let _ = writeln!(out, "E-array          {}", h.e_array_text);
        let cell = h.e_array.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in &h.e_array {
            let cells: Vec<String> = row.iter().map(|c| format!("{c:>cell$}")).collect();
            let _ = writeln!(out, "                 {}", cells.join(" "));
        }
    }
    if let Some(m) = &r.monodromy {
        let _ = writeln!(out, "q_inf            {}", m.q_inf);
        let _ = writeln!(out, "q_0              {}", m.q_zero);
        let _ = writeln!(out, "alpha            {}", m.alpha.join(" "));
        let _ = writeln!(out, "beta             {}", m.beta.join(" "));
        let _ = writeln!(out, "M                {}", m.m_constant);
        let _ = writeln!(out, "degree           {}", m.degree);
    }
    if let Some(cs) = &r.counts {
        let _ = writeln!(out, "{:>6} {:>8} {:>16} {:>6}", "t", "q", "#Z", "H(t)");
        for c in cs {
            let _ = writeln!(out, "{:>6} {:>8} {:>16} {:>6}", c.t, c.q, c.count, c.implied_h);
        }
    }
    out
}
