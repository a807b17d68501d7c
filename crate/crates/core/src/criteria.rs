//! The four equivalent integrality verdicts side by side.

use num_rational::Rational64;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::gamma::{landau_check, GammaList};
use crate::hodge::{hodge_summary, HodgeSummary};
use crate::polytope::{build_polytope, codegree_of, ehrhart_data, EnumerationBudget};

/// Where the codegree came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CodegreeSource {
    /// Lattice-point enumeration, cross-checked against the closed form.
    Enumeration,
    /// Closed-form δ only; enumeration would exceed the budget.
    ClosedForm,
}

impl CodegreeSource {
    pub fn as_str(self) -> &'static str {
        match self {
            CodegreeSource::Enumeration => "enumeration",
            CodegreeSource::ClosedForm => "closed_form",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriteriaReport {
    pub landau_integral: bool,
    pub landau_witness: Option<Rational64>,
    pub landau_min: i64,
    /// `s > r` and `codeg ≥ r`.
    pub criterion_a: bool,
    /// `s > r` and the top `r − 1` Hodge slots vanish.
    pub criterion_b: bool,
    /// `s > r` and effective weight `= s − r − 1`.
    pub criterion_c: bool,
    pub codegree: usize,
    pub codegree_source: CodegreeSource,
    pub hodge_vector: Vec<i64>,
    pub effective_weight: usize,
    pub r: usize,
    pub s: usize,
}

impl CriteriaReport {
    /// All four verdicts agree.
    pub fn consistent(&self) -> bool {
        let l = self.landau_integral;
        self.criterion_a == l && self.criterion_b == l && self.criterion_c == l
    }
}

pub fn criteria_report(g: &GammaList) -> Result<CriteriaReport> {
    criteria_report_with_budget(g, EnumerationBudget::default())
}

pub fn criteria_report_with_budget(
    g: &GammaList,
    budget: EnumerationBudget,
) -> Result<CriteriaReport> {
    let landau = landau_check(g);
    let hodge: HodgeSummary = hodge_summary(g)?;
    let closed_codegree = codegree_of(&hodge.delta, g.dim());
    let (codegree, codegree_source) = match ehrhart_data(&build_polytope(g), budget) {
        Ok(e) => {
            if e.delta_poly() != hodge.delta {
                return Err(Error::Internal(format!(
                    "enumerated δ {} differs from closed form {}",
                    e.delta_poly(),
                    hodge.delta
                )));
            }
            (e.codegree, CodegreeSource::Enumeration)
        }
        Err(Error::BudgetExceeded { .. }) => (closed_codegree, CodegreeSource::ClosedForm),
        Err(e) => return Err(e),
    };
    let (r, s) = (g.r(), g.s());
    let hodge_vector = hodge
        .hodge_vector
        .iter()
        .map(|h| h.to_i64().ok_or_else(|| Error::Internal("Hodge number overflow".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(CriteriaReport {
        landau_integral: landau.integral,
        landau_witness: landau.witness,
        landau_min: landau.min_value,
        criterion_a: s > r && codegree >= r,
        criterion_b: hodge.criterion_b,
        criterion_c: hodge.criterion_c,
        codegree,
        codegree_source,
        hodge_vector,
        effective_weight: hodge.effective_weight,
        r,
        s,
    })
}
