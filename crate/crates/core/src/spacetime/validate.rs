use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::LorentzSpace;
use crate::tolerances::TAU_ABS;

const MAX_LISTED: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    CausalNotReflexive,
    ChronologicalNotCausal,
    TauWithoutCausality,
    TauChronologyMismatch,
    CausalNotTransitive,
    ChronologicalNotTransitive,
    ReverseTriangle,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Sample indices involved (two for pair axioms, three for triples).
    pub indices: Vec<usize>,
    /// Signed slack of the violated inequality; negative means violated.
    pub margin: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub points: usize,
    pub pairs_checked: u64,
    pub triples_checked: u64,
    pub violation_count: u64,
    /// First violations found, in scan order.
    pub violations: Vec<Violation>,
    /// Smallest reverse-triangle slack `tau(x,z) - tau(x,y) - tau(y,z)` over causal triples.
    #[serde(with = "crate::document::extended_float")]
    pub worst_triangle_margin: f64,
    /// Axioms with no finite-sample test.
    pub assumed: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violation_count == 0
    }
}

/// Scans all pairs and triples of `sample` for the pre-length space axioms.
pub fn validate_prelength<S: LorentzSpace>(space: &S, sample: &[S::Point]) -> ValidationReport {
    let k = sample.len();
    let mut tau = vec![0.0; k * k];
    let mut causal = vec![false; k * k];
    let mut chron = vec![false; k * k];
    tau.par_chunks_mut(k.max(1))
        .zip(causal.par_chunks_mut(k.max(1)))
        .zip(chron.par_chunks_mut(k.max(1)))
        .enumerate()
        .for_each(|(i, ((t, c), h))| {
            for j in 0..k {
                t[j] = space.tau(&sample[i], &sample[j]);
                c[j] = space.causal(&sample[i], &sample[j]);
                h[j] = space.chronological(&sample[i], &sample[j]);
            }
        });

    let mut violations = Vec::new();
    let mut count = 0u64;
    let mut push = |v: Violation, list: &mut Vec<Violation>| {
        count += 1;
        if list.len() < MAX_LISTED {
            list.push(v);
        }
    };

    for i in 0..k {
        if !causal[i * k + i] {
            push(
                Violation { kind: ViolationKind::CausalNotReflexive, indices: vec![i, i], margin: -1.0 },
                &mut violations,
            );
        }
        for j in 0..k {
            let ij = i * k + j;
            if chron[ij] && !causal[ij] {
                push(
                    Violation { kind: ViolationKind::ChronologicalNotCausal, indices: vec![i, j], margin: -1.0 },
                    &mut violations,
                );
            }
            if !causal[ij] && tau[ij] > TAU_ABS {
                push(
                    Violation { kind: ViolationKind::TauWithoutCausality, indices: vec![i, j], margin: -tau[ij] },
                    &mut violations,
                );
            }
            if (chron[ij] && tau[ij] <= 0.0) || (!chron[ij] && tau[ij] > TAU_ABS) {
                push(
                    Violation {
                        kind: ViolationKind::TauChronologyMismatch,
                        indices: vec![i, j],
                        margin: -tau[ij].abs(),
                    },
                    &mut violations,
                );
            }
        }
    }

    let partial: Vec<(Vec<Violation>, u64, f64, u64)> = (0..k)
        .into_par_iter()
        .map(|i| {
            let mut found = Vec::new();
            let mut n_found = 0u64;
            let mut worst = f64::INFINITY;
            let mut triples = 0u64;
            for j in 0..k {
                let ij = i * k + j;
                if !causal[ij] {
                    continue;
                }
                for l in 0..k {
                    let jl = j * k + l;
                    if !causal[jl] {
                        continue;
                    }
                    triples += 1;
                    let il = i * k + l;
                    let mut record = |v: Violation| {
                        n_found += 1;
                        if found.len() < MAX_LISTED {
                            found.push(v);
                        }
                    };
                    if !causal[il] {
                        record(Violation {
                            kind: ViolationKind::CausalNotTransitive,
                            indices: vec![i, j, l],
                            margin: -1.0,
                        });
                    }
                    if chron[ij] && chron[jl] && !chron[il] {
                        record(Violation {
                            kind: ViolationKind::ChronologicalNotTransitive,
                            indices: vec![i, j, l],
                            margin: -1.0,
                        });
                    }
                    let margin = tau[il] - tau[ij] - tau[jl];
                    worst = worst.min(margin);
                    if margin < -TAU_ABS {
                        record(Violation { kind: ViolationKind::ReverseTriangle, indices: vec![i, j, l], margin });
                    }
                }
            }
            (found, n_found, worst, triples)
        })
        .collect();

    let mut worst = f64::INFINITY;
    let mut triples = 0;
    for (found, n, w, t) in partial {
        count += n;
        worst = worst.min(w);
        triples += t;
        for v in found {
            if violations.len() < MAX_LISTED {
                violations.push(v);
            }
        }
    }

    ValidationReport {
        points: k,
        pairs_checked: (k * k) as u64,
        triples_checked: triples,
        violation_count: count,
        violations,
        worst_triangle_margin: worst,
        assumed: vec!["locally causally closed".to_string(), "lower semicontinuity of tau".to_string()],
    }
}
