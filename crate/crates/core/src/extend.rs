//! Extending a bounded quasi-pseudometric from a subspace `X ⊆ Y` of a
//! finite space to all of `Y`, and certifying failure when the fine
//! quasi-uniformity of `Y` does not trace to that of `X`.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gen::Generator;
use crate::qpspace::{ball_relation, frink_metrize, scale_clip, validate_qpm, Qpm};
use crate::quniform::{
    chain_from, fine_quniformity, quasi_uniformity_violation, trace_excess, Entourage, FiniteTopology,
    QuasiUniformity,
};
use crate::rational::{half, int, pow2_inv, ratio, Rational};

/// `X ⊆ Y` with a quasi-pseudometric `d` on `X`. `subset[i]` is the point
/// of `Y` that `X`'s point `i` maps to.
#[derive(Clone, Debug)]
pub struct EmbeddingInstance {
    pub y_space: FiniteTopology,
    pub subset: Vec<usize>,
    pub x_space: FiniteTopology,
    pub d: Qpm,
}

impl EmbeddingInstance {
    /// `X` with the subspace topology.
    pub fn new(y_space: FiniteTopology, subset: Vec<usize>, d: Qpm) -> Result<EmbeddingInstance> {
        let x_space = y_space.subspace(&subset)?;
        EmbeddingInstance::with_topology(y_space, subset, x_space, d)
    }

    /// `X` with an explicitly given topology.
    pub fn with_topology(
        y_space: FiniteTopology,
        subset: Vec<usize>,
        x_space: FiniteTopology,
        d: Qpm,
    ) -> Result<EmbeddingInstance> {
        if d.size() != subset.len() || x_space.size() != subset.len() {
            return Err(Error::GroundMismatch {
                left: subset.len(),
                right: d.size(),
            });
        }
        Ok(EmbeddingInstance {
            y_space,
            subset,
            x_space,
            d,
        })
    }

    pub fn qu_x(&self) -> QuasiUniformity {
        fine_quniformity(&self.x_space)
    }

    pub fn qu_y(&self) -> QuasiUniformity {
        fine_quniformity(&self.y_space)
    }

    fn excess(&self) -> Result<Option<(usize, usize)>> {
        trace_excess(&self.x_space, &self.y_space, &self.subset)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionResult {
    pub d_tilde: Qpm,
    pub rho: Qpm,
    /// `ρ′(x, y) = min over a, b ∈ X of ρ(x, a) + d(a, b) + ρ(b, y)`.
    pub rho_prime: Vec<Vec<Rational>>,
    pub series_depth: usize,
    /// Factor applied to `d` to bring it below `1/2`; all matrices above are
    /// already scaled back.
    pub normalization: Rational,
}

/// `I = max(1, least i with 2^{-i} ≤ δ)` for the least positive value `δ`.
pub fn series_depth(d: &Qpm) -> usize {
    match d.min_positive() {
        None => 1,
        Some(delta) => (1..).find(|&i| pow2_inv(i) <= delta).expect("δ > 0") as usize,
    }
}

/// `8 Σᵢ 2^{-i} dᵢ` with `dᵢ = min{1, 4ρᵢ}` and `ρᵢ` the chain metric of
/// `X², Vᵢ, E_Y` for the given `Vᵢ`, `i = 1, …, entourages.len()`.
pub fn rho_series(inst: &EmbeddingInstance, entourages: &[Entourage]) -> Result<Qpm> {
    let qu_y = inst.qu_y();
    let n = qu_y.size();
    let mut total = vec![vec![Rational::zero(); n]; n];
    for (k, v) in entourages.iter().enumerate() {
        let i = k as u32 + 1;
        check_trace(inst, v, i)?;
        let d_i = component(&qu_y, v)?;
        let weight = int(8) * pow2_inv(i);
        for (row, d_row) in total.iter_mut().zip(d_i.matrix()) {
            for (cell, value) in row.iter_mut().zip(d_row) {
                *cell += &weight * value;
            }
        }
    }
    validate_qpm(qu_y.labels().to_vec(), total)
}

// Vᵢ ∩ X² ⊆ {d < 2^{-i}}.
fn check_trace(inst: &EmbeddingInstance, v: &Entourage, i: u32) -> Result<()> {
    let bound = pow2_inv(i);
    let m = inst.subset.len();
    for a in 0..m {
        for b in 0..m {
            if v.contains(inst.subset[a], inst.subset[b]) && inst.d.dist(a, b) >= &bound {
                return Err(Error::NotQuasiUniform {
                    x: inst.d.labels()[a].clone(),
                    y: inst.d.labels()[b].clone(),
                });
            }
        }
    }
    Ok(())
}

// A metric bounded by 1 whose 1/4-ball relation lies inside `v`; the chain
// is deepened until that holds.
fn component(qu_y: &QuasiUniformity, v: &Entourage) -> Result<Qpm> {
    for levels in 2..=8 {
        let d_i = scale_clip(&frink_metrize(&chain_from(qu_y, v, levels)?));
        if ball_relation(&d_i, &ratio(1, 4), true)?.is_subset(v) {
            return Ok(d_i);
        }
    }
    Err(Error::PostconditionFailed("no chain depth gives the 1/4-ball condition".into()))
}

/// Extends `inst.d` to `Y`.
///
/// Fails with [`Error::NotEmbedded`] when some pair of `X` is close in `Y`
/// but not in `X`, and with [`Error::NotQuasiUniform`] when `d` does not
/// vanish on the generator of `X`'s fine quasi-uniformity.
pub fn extend_qpm(inst: &EmbeddingInstance) -> Result<ExtensionResult> {
    if let Some((x, y)) = inst.excess()? {
        return Err(Error::NotEmbedded {
            x: inst.x_space.labels()[x].clone(),
            y: inst.x_space.labels()[y].clone(),
        });
    }
    if let Some((x, y)) = quasi_uniformity_violation(&inst.d, &inst.qu_x())? {
        return Err(Error::NotQuasiUniform {
            x: inst.d.labels()[x.0].clone(),
            y: inst.d.labels()[y.0].clone(),
        });
    }
    let max = inst.d.max_entry();
    let factor = if max > half() { half() / &max } else { Rational::one() };
    let scaled = EmbeddingInstance {
        d: inst.d.scale(&factor),
        ..inst.clone()
    };
    let out = extend_normalized(&scaled)?;
    let back = factor.recip();
    let result = ExtensionResult {
        d_tilde: out.d_tilde.scale(&back),
        rho: out.rho.scale(&back),
        rho_prime: out
            .rho_prime
            .iter()
            .map(|row| row.iter().map(|v| v * &back).collect())
            .collect(),
        series_depth: out.series_depth,
        normalization: factor,
    };
    if result.d_tilde.restrict(&inst.subset)?.matrix() != inst.d.matrix() {
        return Err(Error::PostconditionFailed("restriction to X differs from d".into()));
    }
    Ok(result)
}

fn extend_normalized(inst: &EmbeddingInstance) -> Result<ExtensionResult> {
    let qu_y = inst.qu_y();
    let depth = series_depth(&inst.d);
    let entourages = vec![qu_y.generator().clone(); depth];
    let rho = rho_series(inst, &entourages)?;

    let n = qu_y.size();
    let sub = &inst.subset;
    let rho_prime: Vec<Vec<Rational>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    let mut best: Option<Rational> = None;
                    for (a, &ya) in sub.iter().enumerate() {
                        for (b, &yb) in sub.iter().enumerate() {
                            let cand = rho.dist(x, ya) + inst.d.dist(a, b) + rho.dist(yb, y);
                            if best.as_ref().is_none_or(|cur| &cand < cur) {
                                best = Some(cand);
                            }
                        }
                    }
                    best.unwrap_or_else(|| rho.dist(x, y).clone())
                })
                .collect()
        })
        .collect();
    let d_tilde: Vec<Vec<Rational>> = (0..n)
        .map(|x| (0..n).map(|y| rho.dist(x, y).clone().min(rho_prime[x][y].clone())).collect())
        .collect();
    let d_tilde = validate_qpm(qu_y.labels().to_vec(), d_tilde)?;

    for a in 0..sub.len() {
        for b in 0..sub.len() {
            if rho.dist(sub[a], sub[b]) < inst.d.dist(a, b) {
                return Err(Error::PostconditionFailed("the series does not dominate d".into()));
            }
        }
    }
    if quasi_uniformity_violation(&d_tilde, &qu_y)?.is_some() {
        return Err(Error::PostconditionFailed("extension is not quasi-uniform on Y".into()));
    }
    Ok(ExtensionResult {
        d_tilde,
        rho,
        rho_prime,
        series_depth: depth,
        normalization: Rational::one(),
    })
}

/// A quasi-pseudometric on `X` that no quasi-uniform extension to `Y`
/// exists for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonExtendable {
    pub d: Qpm,
    /// A pair of `X` that is close in `Y` but not in `X`; `d` is `1` there.
    pub pair: (usize, usize),
}

/// `d = 0` on `E_X` and `1` elsewhere, when the trace of `E_Y` on `X`
/// strictly contains `E_X`; `None` otherwise.
pub fn non_extendability_witness(
    y_space: &FiniteTopology,
    subset: &[usize],
    x_space: &FiniteTopology,
) -> Result<Option<NonExtendable>> {
    let Some(pair) = trace_excess(x_space, y_space, subset)? else {
        return Ok(None);
    };
    let e_x = fine_quniformity(x_space);
    let m = subset.len();
    let matrix = (0..m)
        .map(|a| {
            (0..m)
                .map(|b| if e_x.generator().contains(a, b) { Rational::zero() } else { Rational::one() })
                .collect()
        })
        .collect();
    let d = validate_qpm(x_space.labels().to_vec(), matrix)?;
    debug_assert!(quasi_uniformity_violation(&d, &e_x)?.is_none());
    debug_assert!(d.dist(pair.0, pair.1).is_positive());
    Ok(Some(NonExtendable { d, pair }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialReport {
    pub trial: usize,
    pub seed: u64,
    pub status: String,
    pub max_restriction_error: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    /// Whether the traced quasi-uniformity equals that of `X`.
    pub embedded: bool,
    /// The pair of `X` refuting it, by label.
    pub witness_pair: Option<(String, String)>,
    pub trials: Vec<TrialReport>,
    pub passed: bool,
}

/// Random trials on one instance. When the trace condition holds, each trial
/// extends a random quasi-uniform `d` and checks the restriction exactly.
/// Otherwise the witness is built and each trial checks that extension of a
/// random `d` is refused.
pub fn embedding_suite(
    y_space: &FiniteTopology,
    subset: &[usize],
    x_space: &FiniteTopology,
    trials: usize,
    seed: u64,
) -> Result<EmbeddingReport> {
    let witness = non_extendability_witness(y_space, subset, x_space)?;
    let embedded = witness.is_none();
    let qu_x = fine_quniformity(x_space);
    let mut seeds = Generator::new(seed);
    let mut reports = Vec::with_capacity(trials);
    for trial in 0..trials {
        let trial_seed = seeds.seed();
        let d = Generator::new(trial_seed).qpm_for(&qu_x);
        let inst = EmbeddingInstance::with_topology(y_space.clone(), subset.to_vec(), x_space.clone(), d.clone())?;
        let (status, error) = match (embedded, extend_qpm(&inst)) {
            (true, Ok(ext)) => {
                let restricted = ext.d_tilde.restrict(subset)?;
                let err = max_abs_difference(&restricted, &d);
                let status = if err.is_zero() { "pass" } else { "fail" };
                (status, err)
            }
            (false, Err(Error::NotEmbedded { .. })) => ("refused", Rational::zero()),
            _ => ("fail", Rational::zero()),
        };
        reports.push(TrialReport {
            trial,
            seed: trial_seed,
            status: status.to_string(),
            max_restriction_error: error.to_string(),
        });
    }
    let passed = reports.iter().all(|r| r.status != "fail");
    let witness_pair = witness.map(|w| (x_space.labels()[w.pair.0].clone(), x_space.labels()[w.pair.1].clone()));
    Ok(EmbeddingReport {
        embedded,
        witness_pair,
        trials: reports,
        passed,
    })
}

fn max_abs_difference(a: &Qpm, b: &Qpm) -> Rational {
    a.matrix()
        .iter()
        .flatten()
        .zip(b.matrix().iter().flatten())
        .map(|(x, y)| (x - y).abs())
        .max()
        .unwrap_or_else(Rational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    fn discrete_instance() -> EmbeddingInstance {
        let y = FiniteTopology::discrete(names(&["a", "b", "c"])).unwrap();
        let d = Qpm::new(names(&["a", "b"]), vec![vec![int(0), ratio(1, 4)], vec![ratio(1, 2), int(0)]]).unwrap();
        EmbeddingInstance::new(y, vec![0, 1], d).unwrap()
    }

    #[test]
    fn discrete_extension() {
        let ext = extend_qpm(&discrete_instance()).unwrap();
        assert_eq!(ext.d_tilde.dist(0, 1), &ratio(1, 4));
        assert_eq!(ext.d_tilde.dist(1, 0), &ratio(1, 2));
        assert!(ext.d_tilde.dist(0, 2).is_positive());
        assert!(ext.d_tilde.dist(2, 0).is_positive());
    }

    #[test]
    fn discrete_series_closed_form() {
        let inst = discrete_instance();
        let depth = 3;
        let rho = rho_series(&inst, &vec![Entourage::identity(3); depth]).unwrap();
        let expected = int(8) * (Rational::one() - pow2_inv(depth as u32));
        assert_eq!(rho.dist(0, 2), &expected);
        assert_eq!(rho.dist(1, 1), &int(0));
    }

    #[test]
    fn zero_metric_and_whole_space() {
        let y = FiniteTopology::discrete(names(&["a", "b", "c"])).unwrap();
        let zero = Qpm::zero(names(&["a", "b"])).unwrap();
        let ext = extend_qpm(&EmbeddingInstance::new(y.clone(), vec![0, 1], zero).unwrap()).unwrap();
        assert_eq!(ext.d_tilde.restrict(&[0, 1]).unwrap().max_entry(), int(0));
        assert_eq!(ext.series_depth, 1);

        let d = Generator::new(3).qpm(3);
        let ext = extend_qpm(&EmbeddingInstance::new(y, vec![0, 1, 2], d.clone()).unwrap()).unwrap();
        assert_eq!(ext.d_tilde.matrix(), d.matrix());
    }

    #[test]
    fn large_bounds_are_normalized() {
        let y = FiniteTopology::discrete(names(&["a", "b", "c"])).unwrap();
        let d = Qpm::new(names(&["a", "b"]), vec![vec![int(0), int(3)], vec![int(5), int(0)]]).unwrap();
        let ext = extend_qpm(&EmbeddingInstance::new(y, vec![0, 1], d).unwrap()).unwrap();
        assert_eq!(ext.normalization, ratio(1, 10));
        assert_eq!(ext.d_tilde.dist(0, 1), &int(3));
        assert_eq!(ext.d_tilde.dist(1, 0), &int(5));
    }

    #[test]
    fn finer_subspace_topology_is_refused() {
        // Sierpiński space {0, 1} with {1} open; X = Y but discrete.
        let y = FiniteTopology::from_opens(names(&["p", "q"]), &[vec![], vec![1], vec![0, 1]]).unwrap();
        let x = FiniteTopology::discrete(names(&["p", "q"])).unwrap();
        let w = non_extendability_witness(&y, &[0, 1], &x).unwrap().unwrap();
        assert_eq!(w.pair, (0, 1));
        assert_eq!(w.d.dist(0, 1), &int(1));
        let inst = EmbeddingInstance::with_topology(y.clone(), vec![0, 1], x, w.d.clone()).unwrap();
        assert!(matches!(extend_qpm(&inst), Err(Error::NotEmbedded { .. })));
        // With the subspace topology nothing is refused.
        assert!(non_extendability_witness(&y, &[0, 1], &y).unwrap().is_none());
    }

    #[test]
    fn non_quasi_uniform_input_is_refused() {
        let y = FiniteTopology::indiscrete(names(&["a", "b"])).unwrap();
        let d = Qpm::new(names(&["a", "b"]), vec![vec![int(0), ratio(1, 4)], vec![int(0), int(0)]]).unwrap();
        let inst = EmbeddingInstance::new(y, vec![0, 1], d).unwrap();
        assert!(matches!(extend_qpm(&inst), Err(Error::NotQuasiUniform { .. })));
    }

    #[test]
    fn suite_runs() {
        let y = FiniteTopology::discrete(names(&["a", "b", "c"])).unwrap();
        let x = y.subspace(&[0, 2]).unwrap();
        let report = embedding_suite(&y, &[0, 2], &x, 20, 5).unwrap();
        assert!(report.passed && report.embedded);
        assert_eq!(report.trials.len(), 20);
        assert!(report.trials.iter().all(|t| t.status == "pass" && t.max_restriction_error == "0"));
        let empty = embedding_suite(&y, &[0, 2], &x, 0, 5).unwrap();
        assert!(empty.trials.is_empty() && empty.embedded);
    }
}
