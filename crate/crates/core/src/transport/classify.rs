use serde::{Deserialize, Serialize};

use super::{dual_solve_cost, ellp_transform, solve_cost, subdifferential, CostMatrix, Relation};
use crate::error::Result;
use crate::measures::PointMeasure;
use crate::spacetime::LorentzSpace;
use crate::tolerances::TIMELIKE_VALUE;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dualisability {
    NotCausal,
    CausalOnly,
    TimelikePDualisable,
    StronglyTimelikePDualisable,
}

/// Which sufficient condition upgraded the verdict to strong dualisability.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StrongCriterion {
    /// Every support pair is chronological.
    AllPairsChronological,
    /// The target is a Dirac mass in the chronological future of the source.
    DiracTarget,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualisabilityReport {
    pub verdict: Dualisability,
    /// `l_p` over causal couplings.
    #[serde(with = "crate::document::extended_float")]
    pub value_causal: f64,
    /// `l_p` over chronological couplings.
    #[serde(with = "crate::document::extended_float")]
    pub value_timelike: f64,
    pub criterion: Option<StrongCriterion>,
    /// Index pairs of a set `Gamma` carrying every optimal plan.
    pub witness: Option<Vec<(usize, usize)>>,
}

pub fn classify_dualisability<S: LorentzSpace>(
    space: &S,
    mu: &PointMeasure<S::Point>,
    nu: &PointMeasure<S::Point>,
    p: f64,
) -> Result<DualisabilityReport> {
    let cost = CostMatrix::build(space, mu, nu, p)?;
    let (a, b) = (mu.weights(), nu.weights());
    let causal = solve_cost(&cost, a, b)?;
    let timelike = solve_cost(&cost.restricted(Relation::Chronological), a, b)?;
    let mut report = DualisabilityReport {
        verdict: Dualisability::NotCausal,
        value_causal: causal.value,
        value_timelike: timelike.value,
        criterion: None,
        witness: None,
    };
    if !causal.is_feasible() {
        return Ok(report);
    }
    report.verdict = Dualisability::CausalOnly;
    let finite_positive = causal.value > 0.0 && causal.value.is_finite();
    if !finite_positive || !timelike.is_feasible() || timelike.value < causal.value - TIMELIKE_VALUE {
        return Ok(report);
    }
    report.verdict = Dualisability::TimelikePDualisable;

    let all_chronological = (0..cost.rows).all(|i| (0..cost.cols).all(|j| cost.is_chronological(i, j)));
    if all_chronological && nu.is_dirac() {
        report.verdict = Dualisability::StronglyTimelikePDualisable;
        report.criterion = Some(StrongCriterion::DiracTarget);
        report.witness = Some((0..cost.rows).map(|i| (i, 0)).collect());
    } else if all_chronological {
        let pot = dual_solve_cost(&cost, a, b)?;
        let phi: Vec<f64> = pot.u.iter().map(|x| -x).collect();
        let transform = ellp_transform(&phi, &cost);
        report.verdict = Dualisability::StronglyTimelikePDualisable;
        report.criterion = Some(StrongCriterion::AllPairsChronological);
        report.witness = Some(subdifferential(&phi, &transform, &cost));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spacetime::{Event, MinkowskiSpace};

    fn ev(t: f64, x: f64) -> Event {
        Event::from([t, x])
    }

    #[test]
    fn verdicts() {
        let m = MinkowskiSpace::new(1);
        let mu = PointMeasure::uniform(vec![ev(0.0, 0.0), ev(0.0, 0.5)]).unwrap();
        let nu = PointMeasure::uniform(vec![ev(3.0, 0.0), ev(3.0, 1.0)]).unwrap();
        let r = classify_dualisability(&m, &mu, &nu, 0.5).unwrap();
        assert_eq!(r.verdict, Dualisability::StronglyTimelikePDualisable);
        assert_eq!(r.criterion, Some(StrongCriterion::AllPairsChronological));

        let wide = PointMeasure::uniform(vec![ev(0.0, 0.0), ev(0.0, 6.0)]).unwrap();
        let r = classify_dualisability(&m, &wide, &PointMeasure::dirac(ev(10.0, 3.0)), 0.5).unwrap();
        assert_eq!(r.criterion, Some(StrongCriterion::DiracTarget));

        let r = classify_dualisability(&m, &PointMeasure::dirac(ev(0.0, 0.0)), &PointMeasure::dirac(ev(0.0, 1.0)), 0.5)
            .unwrap();
        assert_eq!(r.verdict, Dualisability::NotCausal);

        let r = classify_dualisability(&m, &PointMeasure::dirac(ev(0.0, 0.0)), &PointMeasure::dirac(ev(1.0, 1.0)), 0.5)
            .unwrap();
        assert_eq!(r.verdict, Dualisability::CausalOnly);
    }

    #[test]
    fn timelike_without_sufficient_condition() {
        let m = MinkowskiSpace::new(1);
        // the anti-diagonal pairs are lightlike, the diagonal ones timelike
        let mu = PointMeasure::uniform(vec![ev(0.0, 0.0), ev(0.0, 2.0)]).unwrap();
        let nu = PointMeasure::uniform(vec![ev(2.0, 0.0), ev(2.0, 2.0)]).unwrap();
        let r = classify_dualisability(&m, &mu, &nu, 0.5).unwrap();
        assert_eq!(r.verdict, Dualisability::TimelikePDualisable);
        assert!(r.witness.is_none());
    }
}
