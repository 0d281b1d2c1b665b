use serde::{Deserialize, Serialize};

use super::{GridMeasure, ReferenceMeasure};
use crate::error::Result;
use crate::tolerances::JENSEN;

/// Relative entropy value, finite or `+inf`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Entropy(pub f64);

impl Entropy {
    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }
}

/// `sum_i p_i log(p_i / m_i)` over cell probabilities `p` and reference
/// masses `m`, with `0 log 0 = 0` and `+inf` if a null cell is charged.
pub fn entropy_from_masses(p: &[f64], m: &[f64]) -> Entropy {
    let mut total = 0.0;
    for (pi, mi) in p.iter().zip(m) {
        if *pi == 0.0 {
            continue;
        }
        if *mi == 0.0 {
            return Entropy(f64::INFINITY);
        }
        total += pi * (pi / mi).ln();
    }
    Entropy(total)
}

/// Relative Boltzmann entropy `Ent(mu | m) = sum_i rho_i log(rho_i) m_i`.
pub fn entropy(mu: &GridMeasure, m: &ReferenceMeasure) -> Result<Entropy> {
    mu.check_reference(m)?;
    Ok(entropy_from_masses(mu.masses(), m.masses()))
}

/// `U_N = exp(-Ent / N)`, zero for infinite entropy.
pub fn u_n(ent: Entropy, n: f64) -> f64 {
    if ent.0 == f64::INFINITY {
        0.0
    } else {
        (-ent.0 / n).exp()
    }
}

/// Outcome of the lower bound `Ent(mu|m) >= -log m(supp mu)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JensenCheck {
    pub holds: bool,
    /// `Ent(mu|m) + log m(supp mu)`.
    pub margin: f64,
    /// True when the entropy is infinite and the bound says nothing.
    pub vacuous: bool,
}

pub fn jensen_bound_check(mu: &GridMeasure, m: &ReferenceMeasure) -> Result<JensenCheck> {
    let ent = entropy(mu, m)?;
    if !ent.is_finite() {
        return Ok(JensenCheck { holds: true, margin: f64::INFINITY, vacuous: true });
    }
    let supp_mass: f64 = mu.support().map(|i| m.masses()[i]).sum();
    let margin = ent.0 + supp_mass.ln();
    Ok(JensenCheck { holds: margin >= -JENSEN, margin, vacuous: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::Grid;
    use crate::spacetime::BoxRegion;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn grid(lo: f64, hi: f64, n: usize) -> Grid {
        Grid::square(BoxRegion::new(vec![lo, lo], vec![hi, hi]).unwrap(), n).unwrap()
    }

    #[test]
    fn uniform_entropy_is_minus_log_volume() {
        let g = grid(0.0, 2.0, 8);
        let m = ReferenceMeasure::lebesgue(&g);
        let mu = GridMeasure::uniform(g).unwrap();
        assert_abs_diff_eq!(entropy(&mu, &m).unwrap().0, -(4.0f64).ln(), epsilon = 1e-12);
        let g1 = grid(0.0, 1.0, 4);
        let m1 = ReferenceMeasure::lebesgue(&g1);
        assert_abs_diff_eq!(entropy(&GridMeasure::uniform(g1).unwrap(), &m1).unwrap().0, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn two_cell_measure() {
        // density (2, 0) on two cells of mass 1/2
        let ent = entropy_from_masses(&[1.0, 0.0], &[0.5, 0.5]);
        assert_abs_diff_eq!(ent.0, 2.0f64.ln(), epsilon = 1e-15);
    }

    #[test]
    fn charged_null_cell_is_infinite() {
        assert_eq!(entropy_from_masses(&[0.5, 0.5], &[1.0, 0.0]).0, f64::INFINITY);
        assert_eq!(u_n(Entropy(f64::INFINITY), 3.0), 0.0);
    }

    #[test]
    fn u_n_values() {
        assert_eq!(u_n(Entropy(0.0), 2.0), 1.0);
        assert_abs_diff_eq!(u_n(Entropy(-(4.0f64).ln()), 2.0), 2.0, epsilon = 1e-15);
    }

    #[test]
    fn jensen_cases() {
        let g = grid(0.0, 1.0, 4);
        let m = ReferenceMeasure::lebesgue(&g);
        let uni = GridMeasure::uniform_where(g.clone(), |x| x.time() < 0.5).unwrap();
        let j = jensen_bound_check(&uni, &m).unwrap();
        assert!(j.holds && j.margin.abs() < 1e-12);
        let mut p = vec![0.0; 16];
        p[0] = 0.7;
        p[1] = 0.3;
        let skew = GridMeasure::from_masses(g, p).unwrap();
        assert!(jensen_bound_check(&skew, &m).unwrap().margin > 1e-3);
        let null = ReferenceMeasure::node_weights(vec![0.0, 1.0]).unwrap();
        let g2 = Grid::new(BoxRegion::new(vec![0.0], vec![1.0]).unwrap(), vec![2]).unwrap();
        let mu2 = GridMeasure::from_masses(g2, vec![0.5, 0.5]).unwrap();
        assert!(jensen_bound_check(&mu2, &null).unwrap().vacuous);
    }

    #[test]
    fn mismatched_reference_is_rejected() {
        let mu = GridMeasure::uniform(grid(0.0, 1.0, 2)).unwrap();
        let m = ReferenceMeasure::lebesgue(&grid(0.0, 1.0, 3));
        assert!(entropy(&mu, &m).is_err());
    }

    proptest! {
        #[test]
        fn permutation_invariant(w in proptest::collection::vec(0.01f64..1.0, 6), m in proptest::collection::vec(0.1f64..2.0, 6), rot in 0usize..6) {
            let total: f64 = w.iter().sum();
            let p: Vec<f64> = w.iter().map(|x| x / total).collect();
            let mut p2 = p.clone();
            let mut m2 = m.clone();
            p2.rotate_left(rot);
            m2.rotate_left(rot);
            prop_assert!((entropy_from_masses(&p, &m).0 - entropy_from_masses(&p2, &m2).0).abs() < 1e-12);
        }

        #[test]
        fn refinement_invariant(w in proptest::collection::vec(0.0f64..1.0, 9), factor in 2usize..4) {
            let total: f64 = w.iter().sum::<f64>() + 1e-3;
            let mut p: Vec<f64> = w.iter().map(|x| x / total).collect();
            p[0] += 1e-3 / total;
            let g = grid(-1.0, 2.0, 3);
            let m = ReferenceMeasure::lebesgue(&g);
            let mu = GridMeasure::from_masses(g, p).unwrap();
            let fine = mu.refined(factor);
            let mf = ReferenceMeasure::lebesgue(&fine.grid);
            prop_assert!((entropy(&mu, &m).unwrap().0 - entropy(&fine, &mf).unwrap().0).abs() < 1e-10);
        }

        #[test]
        fn u_n_monotonicity(e in -3.0f64..3.0, n1 in 0.5f64..5.0, dn in 0.01f64..5.0, de in 0.01f64..1.0) {
            prop_assert!(u_n(Entropy(e + de), n1) <= u_n(Entropy(e), n1));
            let (a, b) = (u_n(Entropy(e), n1), u_n(Entropy(e), n1 + dn));
            if e >= 0.0 { prop_assert!(b >= a); } else { prop_assert!(b <= a); }
        }
    }
}
