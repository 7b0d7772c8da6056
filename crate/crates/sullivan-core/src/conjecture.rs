//! Executable theorem and conjecture statements with hypothesis checking.
//!
//! Every check returns a [`TheoremVerdict`] carrying its hypothesis evidence,
//! so an `Undetermined` (window-limited) outcome is distinguishable from
//! `Holds`. A `Fails` on a proven theorem is engine-bug-until-proven-otherwise
//! and callers are expected to surface it loudly.

use std::collections::BTreeSet;

use crate::cohomology::{
    bigraded_dims, ellipticity_verdict, Complex, EllipticityStatus, EllipticityVerdict,
};
use crate::model::SullivanModel;
use crate::spectral::{gap_report, e0_spectrum_direct, SpectralEngine};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conclusion {
    Holds,
    Fails { witness: String },
    HypothesisNotMet { witness: String },
    Undetermined { window: String },
}

#[derive(Clone, Debug)]
pub struct Hypothesis {
    pub name: String,
    pub satisfied: bool,
    pub evidence: String,
}

#[derive(Clone, Debug)]
pub struct TheoremVerdict {
    pub statement: String,
    pub hypotheses: Vec<Hypothesis>,
    pub conclusion: Conclusion,
    /// Key computed quantities backing the conclusion, name → value.
    pub evidence: Vec<(String, String)>,
}

impl TheoremVerdict {
    pub fn holds(&self) -> bool {
        self.conclusion == Conclusion::Holds
    }
}

fn hypothesis_from_verdict(name: &str, v: &EllipticityVerdict) -> Hypothesis {
    Hypothesis {
        name: name.into(),
        satisfied: v.is_elliptic(),
        evidence: format!(
            "status {:?}, N = {}, window {}: {}",
            v.status, v.n_formula, v.window, v.reason
        ),
    }
}

/// dim H(ΛV, d) ≥ dim V for elliptic models (the H-conjecture).
pub fn hilali_check(model: &SullivanModel, window_factor: usize) -> TheoremVerdict {
    let statement = "hilali: dim H(ΛV,d) >= dim V for elliptic (ΛV,d)".to_string();
    let verdict = ellipticity_verdict(model, window_factor);
    let hyp = hypothesis_from_verdict("(ΛV,d) elliptic", &verdict);
    match verdict.status {
        EllipticityStatus::NotElliptic => TheoremVerdict {
            statement,
            hypotheses: vec![hyp],
            conclusion: Conclusion::HypothesisNotMet {
                witness: verdict.reason.clone(),
            },
            evidence: vec![],
        },
        EllipticityStatus::Undetermined => TheoremVerdict {
            statement,
            hypotheses: vec![hyp],
            conclusion: Conclusion::Undetermined {
                window: format!("degrees <= {}", verdict.window),
            },
            evidence: vec![],
        },
        EllipticityStatus::Elliptic => {
            let n = verdict.n_formula as usize;
            let complex = Complex::new(model.algebra(), model.differential());
            let dim_h: usize = (0..=n).map(|i| complex.dim_h(i)).sum();
            let dim_v = model.algebra().len();
            let conclusion = if dim_h >= dim_v {
                Conclusion::Holds
            } else {
                Conclusion::Fails {
                    witness: format!("dim H = {dim_h} < dim V = {dim_v}"),
                }
            };
            TheoremVerdict {
                statement,
                hypotheses: vec![hyp],
                conclusion,
                evidence: vec![
                    ("dimH".into(), dim_h.to_string()),
                    ("dimV".into(), dim_v.to_string()),
                ],
            }
        }
    }
}

/// Resolves the hypothesis shared by the no-gap theorems: (ΛV, d_k) elliptic.
/// Returns the homogeneous model, its ellipticity verdict, and e = e_formula.
fn homogeneous_hypothesis(
    model: &SullivanModel,
    window_factor: usize,
) -> (SullivanModel, EllipticityVerdict, Option<usize>) {
    let homog = model.homogeneous_model();
    let verdict = ellipticity_verdict(&homog, window_factor);
    let e = model.invariants().e_formula;
    (homog, verdict, e)
}

/// No gaps in the E_∞ columns: when (ΛV, d_k) is elliptic, the columns
/// 0..e of the limit term are all nonzero.
pub fn nogap_check(model: &SullivanModel, window_factor: usize) -> TheoremVerdict {
    let statement = "nogap: E_inf columns 0..e are nonzero when (ΛV,d_k) is elliptic".to_string();
    let (_, verdict, e_formula) = homogeneous_hypothesis(model, window_factor);
    let hyp = hypothesis_from_verdict("(ΛV,d_k) elliptic", &verdict);
    match verdict.status {
        EllipticityStatus::NotElliptic => {
            return TheoremVerdict {
                statement,
                hypotheses: vec![hyp],
                conclusion: Conclusion::HypothesisNotMet {
                    witness: verdict.reason.clone(),
                },
                evidence: witness_evidence(&verdict, model),
            }
        }
        EllipticityStatus::Undetermined => {
            return TheoremVerdict {
                statement,
                hypotheses: vec![hyp],
                conclusion: Conclusion::Undetermined {
                    window: format!("degrees <= {}", verdict.window),
                },
                evidence: vec![],
            }
        }
        EllipticityStatus::Elliptic => {}
    }
    let e = e_formula.expect("elliptic homogeneous model has a defined e");
    let n = verdict.n_formula as usize;
    let engine = SpectralEngine::new(model);
    let support = engine.e_infinity_column_support(n);
    let missing: Vec<usize> = (0..=e).filter(|p| !support.contains(p)).collect();
    let conclusion = if missing.is_empty() {
        Conclusion::Holds
    } else {
        Conclusion::Fails {
            witness: format!("E_inf columns {missing:?} vanish although e = {e}"),
        }
    };
    TheoremVerdict {
        statement,
        hypotheses: vec![hyp],
        conclusion,
        evidence: vec![
            ("e".into(), e.to_string()),
            ("columns".into(), format!("{:?}", support)),
        ],
    }
}

fn witness_evidence(verdict: &EllipticityVerdict, model: &SullivanModel) -> Vec<(String, String)> {
    match &verdict.witness {
        Some((deg, class)) => vec![
            ("witness_degree".into(), deg.to_string()),
            (
                "witness_class".into(),
                model.algebra().format_polynomial(class),
            ),
        ],
        None => vec![],
    }
}

/// The H-conjecture special cases: V = V^odd, or (ΛV, d_k) elliptic with
/// k ≥ 3; verified through the proof chain dim H ≥ e ≥ dim V.
pub fn hilali_special_cases(model: &SullivanModel, window_factor: usize) -> TheoremVerdict {
    let statement =
        "hilali-cases: dim H >= e >= dim V when V = V^odd or (ΛV,d_k) elliptic with k >= 3"
            .to_string();
    let inv = model.invariants();
    let case1 = inv.dim_v_even == 0;
    let (_, verdict, e_formula) = homogeneous_hypothesis(model, window_factor);
    let case2 = verdict.is_elliptic() && inv.k.map_or(false, |k| k >= 3);
    let mut hypotheses = vec![
        Hypothesis {
            name: "case 1: V = V^odd".into(),
            satisfied: case1,
            evidence: format!("dim V^even = {}", inv.dim_v_even),
        },
        Hypothesis {
            name: "case 2: (ΛV,d_k) elliptic and k >= 3".into(),
            satisfied: case2,
            evidence: format!("k = {:?}; {}", inv.k, verdict.reason),
        },
    ];
    if !case1 && !case2 {
        return TheoremVerdict {
            statement,
            hypotheses,
            conclusion: Conclusion::HypothesisNotMet {
                witness: "neither case applies".into(),
            },
            evidence: vec![],
        };
    }
    // dim H of the full model; its ellipticity follows from the hypothesis,
    // but is verified rather than assumed
    let full_verdict = ellipticity_verdict(model, window_factor);
    hypotheses.push(hypothesis_from_verdict("(ΛV,d) elliptic", &full_verdict));
    if !full_verdict.is_elliptic() {
        return TheoremVerdict {
            statement,
            hypotheses,
            conclusion: Conclusion::Undetermined {
                window: format!(
                    "full model not certified elliptic within degrees <= {}",
                    full_verdict.window
                ),
            },
            evidence: vec![],
        };
    }
    let n = full_verdict.n_formula as usize;
    let complex = Complex::new(model.algebra(), model.differential());
    let dim_h: usize = (0..=n).map(|i| complex.dim_h(i)).sum();
    let e = e_formula.expect("hypothesis grants a defined e");
    let dim_v = model.algebra().len();
    let first = dim_h >= e;
    let second = e >= dim_v;
    let conclusion = if first && second {
        Conclusion::Holds
    } else {
        Conclusion::Fails {
            witness: format!("chain dim H = {dim_h} >= e = {e} >= dim V = {dim_v} broken"),
        }
    };
    TheoremVerdict {
        statement,
        hypotheses,
        conclusion,
        evidence: vec![
            ("dimH".into(), dim_h.to_string()),
            ("e".into(), e.to_string()),
            ("dimV".into(), dim_v.to_string()),
            ("dimH>=e".into(), first.to_string()),
            ("e>=dimV".into(), second.to_string()),
        ],
    }
}

/// No e₀-gaps: the e₀ spectrum equals {0,…,e}, with the direct filtration
/// route and the E_∞ column support computed independently and compared.
pub fn e0gap_check(model: &SullivanModel, window_factor: usize) -> TheoremVerdict {
    let statement = "e0gap: the e0 spectrum equals {0..e} when (ΛV,d_k) is elliptic".to_string();
    let (_, verdict, e_formula) = homogeneous_hypothesis(model, window_factor);
    let hyp = hypothesis_from_verdict("(ΛV,d_k) elliptic", &verdict);
    match verdict.status {
        EllipticityStatus::NotElliptic => {
            return TheoremVerdict {
                statement,
                hypotheses: vec![hyp],
                conclusion: Conclusion::HypothesisNotMet {
                    witness: verdict.reason.clone(),
                },
                evidence: witness_evidence(&verdict, model),
            }
        }
        EllipticityStatus::Undetermined => {
            return TheoremVerdict {
                statement,
                hypotheses: vec![hyp],
                conclusion: Conclusion::Undetermined {
                    window: format!("degrees <= {}", verdict.window),
                },
                evidence: vec![],
            }
        }
        EllipticityStatus::Elliptic => {}
    }
    let e = e_formula.expect("elliptic homogeneous model has a defined e");
    let n = verdict.n_formula as usize;
    let engine = SpectralEngine::new(model);
    let support = engine.e_infinity_column_support(n);
    let direct = e0_spectrum_direct(model, n);
    if support != direct {
        return TheoremVerdict {
            statement,
            hypotheses: vec![hyp],
            conclusion: Conclusion::Fails {
                witness: format!(
                    "e0 routes disagree: E_inf support {support:?} vs filtration {direct:?}"
                ),
            },
            evidence: vec![],
        };
    }
    let expected: BTreeSet<usize> = (0..=e).collect();
    let gaps = gap_report(&support);
    let conclusion = if support == expected && gaps.is_empty() {
        Conclusion::Holds
    } else {
        Conclusion::Fails {
            witness: format!("spectrum {support:?} differs from {{0..{e}}}; gaps {gaps:?}"),
        }
    };
    TheoremVerdict {
        statement,
        hypotheses: vec![hyp],
        conclusion,
        evidence: vec![
            ("spectrum".into(), format!("{:?}", support)),
            ("e".into(), e.to_string()),
        ],
    }
}

/// Degree sequences of the bigraded cohomology of a length-homogeneous
/// elliptic model: with n_p = min{i : H^i_p ≠ 0} and N_p = max{i : H^i_p ≠ 0},
/// the chains n_{p+1} ≥ n_p + n_1 and N_{p+1} ≥ N_p + n_1 hold, with
/// N_e = N_{e−1} + n_1, n_p + N_{e−p} = N_e, n_e = N_e = N and n_1 > 0.
pub fn lupton_sequence_check(model: &SullivanModel, window_factor: usize) -> TheoremVerdict {
    let statement = "lupton: bigraded degree chains on a homogeneous elliptic model".to_string();
    let homogeneous = model.is_length_homogeneous();
    let mut hypotheses = vec![Hypothesis {
        name: "d length-homogeneous".into(),
        satisfied: homogeneous,
        evidence: format!("differential lengths uniform: {homogeneous}"),
    }];
    if !homogeneous {
        return TheoremVerdict {
            statement,
            hypotheses,
            conclusion: Conclusion::HypothesisNotMet {
                witness: "differential is not word-length homogeneous".into(),
            },
            evidence: vec![],
        };
    }
    let verdict = ellipticity_verdict(model, window_factor);
    hypotheses.push(hypothesis_from_verdict("(ΛV,d) elliptic", &verdict));
    match verdict.status {
        EllipticityStatus::NotElliptic => {
            return TheoremVerdict {
                statement,
                hypotheses,
                conclusion: Conclusion::HypothesisNotMet {
                    witness: verdict.reason.clone(),
                },
                evidence: vec![],
            }
        }
        EllipticityStatus::Undetermined => {
            return TheoremVerdict {
                statement,
                hypotheses,
                conclusion: Conclusion::Undetermined {
                    window: format!("degrees <= {}", verdict.window),
                },
                evidence: vec![],
            }
        }
        EllipticityStatus::Elliptic => {}
    }
    let n = verdict.n_formula as usize;
    let e = model
        .invariants()
        .e_formula
        .expect("homogeneous elliptic model has a defined e");
    // n_p, N_p over degrees <= N
    let mut n_p = vec![None::<usize>; e + 1];
    let mut cap_n_p = vec![None::<usize>; e + 1];
    for i in 0..=n {
        let split = bigraded_dims(model.algebra(), model.differential(), i)
            .expect("homogeneous differential");
        for (&p, &dim) in &split {
            if dim == 0 {
                continue;
            }
            if p > e {
                return TheoremVerdict {
                    statement,
                    hypotheses,
                    conclusion: Conclusion::Fails {
                        witness: format!("H^{i}_{p} nonzero beyond column e = {e}"),
                    },
                    evidence: vec![],
                };
            }
            let slot = &mut n_p[p];
            if slot.is_none() {
                *slot = Some(i);
            }
            cap_n_p[p] = Some(i);
        }
    }
    let mut failures: Vec<String> = Vec::new();
    for p in 1..=e {
        if n_p[p].is_none() {
            failures.push(format!("H_p = 0 for p = {p}"));
        }
    }
    if failures.is_empty() && e == 0 {
        // zero-dimensional case: H concentrated in column 0 at degree 0
        let ok = n_p[0] == Some(0) && cap_n_p[0] == Some(0) && n == 0;
        return TheoremVerdict {
            statement,
            hypotheses,
            conclusion: if ok {
                Conclusion::Holds
            } else {
                Conclusion::Fails {
                    witness: format!("e = 0 but H extends beyond degree 0 (N = {n})"),
                }
            },
            evidence: vec![("e".into(), "0".into())],
        };
    }
    if failures.is_empty() {
        let n_seq: Vec<usize> = n_p.iter().map(|x| x.unwrap()).collect();
        let cap_seq: Vec<usize> = cap_n_p.iter().map(|x| x.unwrap()).collect();
        let n1 = n_seq[1];
        if n1 == 0 {
            failures.push("n_1 = 0".into());
        }
        for p in 1..e {
            if n_seq[p + 1] < n_seq[p] + n1 {
                failures.push(format!("n_{} < n_{} + n_1", p + 1, p));
            }
            if cap_seq[p + 1] < cap_seq[p] + n1 {
                failures.push(format!("N_{} < N_{} + n_1", p + 1, p));
            }
        }
        if e >= 1 && cap_seq[e] != cap_seq[e - 1] + n1 {
            failures.push(format!(
                "N_e = {} != N_(e-1) + n_1 = {}",
                cap_seq[e],
                cap_seq[e - 1] + n1
            ));
        }
        for p in 0..=e {
            if n_seq[p] + cap_seq[e - p] != cap_seq[e] {
                failures.push(format!("n_{p} + N_{} != N_e", e - p));
            }
        }
        if n_seq[e] != n || cap_seq[e] != n {
            failures.push(format!(
                "n_e = {} / N_e = {} differ from N = {n}",
                n_seq[e], cap_seq[e]
            ));
        }
        let conclusion = if failures.is_empty() {
            Conclusion::Holds
        } else {
            Conclusion::Fails {
                witness: failures.join("; "),
            }
        };
        return TheoremVerdict {
            statement,
            hypotheses,
            conclusion,
            evidence: vec![
                ("n_p".into(), format!("{:?}", n_seq)),
                ("N_p".into(), format!("{:?}", cap_seq)),
                ("e".into(), e.to_string()),
            ],
        };
    }
    TheoremVerdict {
        statement,
        hypotheses,
        conclusion: Conclusion::Fails {
            witness: failures.join("; "),
        },
        evidence: vec![],
    }
}

/// The Hurewicz-style predicate of the remark on quadratic parts:
/// ker(d₂ : V^odd → ΛV) ≠ 0. Exposed as a corpus tag helper.
pub fn odd_quadratic_kernel_nonzero(model: &SullivanModel) -> bool {
    let d2 = model.homogeneous_part(2);
    model
        .algebra()
        .generators()
        .iter()
        .filter(|g| g.is_odd())
        .any(|g| d2.value_on(g.id).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Algebra, Monomial, Polynomial};
    use crate::derivation::Derivation;

    fn s2() -> SullivanModel {
        let alg = Algebra::new([("x", 2), ("y", 3)]);
        let d = Derivation::new(1, [(1, Polynomial::monomial(Monomial::power(0, 2), rat(1)))]);
        SullivanModel::new(alg, d)
    }

    fn cp2() -> SullivanModel {
        let alg = Algebra::new([("x", 2), ("y", 5)]);
        let d = Derivation::new(1, [(1, Polynomial::monomial(Monomial::power(0, 3), rat(1)))]);
        SullivanModel::new(alg, d)
    }

    fn e6_pure() -> SullivanModel {
        let alg = Algebra::new([("x", 2), ("y", 2), ("z", 5), ("w", 5)]);
        let d = Derivation::new(
            1,
            [
                (2, Polynomial::monomial(Monomial::power(0, 3), rat(1))),
                (3, Polynomial::monomial(Monomial::power(1, 3), rat(1))),
            ],
        );
        SullivanModel::new(alg, d)
    }

    fn s3xs5() -> SullivanModel {
        SullivanModel::new(Algebra::new([("x", 3), ("y", 5)]), Derivation::zero(1))
    }

    fn mixed1() -> SullivanModel {
        let alg = Algebra::new([("x", 2), ("a", 3), ("b", 3), ("c", 7)]);
        let dc = Polynomial::from_terms([
            (Monomial::from_pairs([(0, 1), (1, 1), (2, 1)]), rat(1)),
            (Monomial::power(0, 4), rat(1)),
        ]);
        SullivanModel::new(alg, Derivation::new(1, [(3, dc)]))
    }

    #[test]
    fn hilali_holds_on_corpus() {
        for (model, dim_h, dim_v) in [(s2(), 2, 2), (cp2(), 3, 2), (e6_pure(), 9, 4)] {
            let v = hilali_check(&model, 2);
            assert!(v.holds(), "{:?}", v.conclusion);
            assert_eq!(v.evidence[0].1, dim_h.to_string());
            assert_eq!(v.evidence[1].1, dim_v.to_string());
        }
    }

    #[test]
    fn nogap_holds_on_corpus() {
        for model in [s2(), cp2(), e6_pure(), s3xs5()] {
            let v = nogap_check(&model, 2);
            assert!(v.holds(), "{}: {:?}", v.statement, v.conclusion);
        }
    }

    #[test]
    fn nogap_hypothesis_fails_on_mixed1() {
        let v = nogap_check(&mixed1(), 2);
        assert!(matches!(v.conclusion, Conclusion::HypothesisNotMet { .. }));
        // witness: a power of x surviving past the formal dimension of (ΛV,d_3)
        assert!(v
            .evidence
            .iter()
            .any(|(k, _)| k == "witness_degree"));
    }

    #[test]
    fn special_cases_detection() {
        // S^3 x S^5: case 1, chain 4 >= 2 >= 2
        let v = hilali_special_cases(&s3xs5(), 2);
        assert!(v.holds(), "{:?}", v.conclusion);
        // CP^2: case 2 with k = 3, chain 3 >= 2 >= 2
        let v = hilali_special_cases(&cp2(), 2);
        assert!(v.holds(), "{:?}", v.conclusion);
        // S^2: k = 2 with even part, neither case
        let v = hilali_special_cases(&s2(), 2);
        assert!(matches!(v.conclusion, Conclusion::HypothesisNotMet { .. }));
    }

    #[test]
    fn e0gap_holds_on_corpus() {
        for (model, e) in [(cp2(), 2usize), (s2(), 1), (e6_pure(), 4)] {
            let v = e0gap_check(&model, 2);
            assert!(v.holds(), "{:?}", v.conclusion);
            assert!(v.evidence.iter().any(|(k, val)| k == "e" && *val == e.to_string()));
        }
    }

    #[test]
    fn lupton_sequences() {
        let v = lupton_sequence_check(&cp2(), 2);
        assert!(v.holds(), "{:?}", v.conclusion);
        assert!(v.evidence.iter().any(|(k, val)| k == "n_p" && val == "[0, 2, 4]"));

        let v = lupton_sequence_check(&e6_pure(), 2);
        assert!(v.holds(), "{:?}", v.conclusion);
        assert!(v.evidence.iter().any(|(k, val)| k == "N_p" && val == "[0, 2, 4, 6, 8]"));

        // free odd model on one degree-3 generator: e = 1, n_1 = N_1 = 3
        let free = SullivanModel::new(Algebra::new([("x", 3)]), Derivation::zero(1));
        let v = lupton_sequence_check(&free, 2);
        assert!(v.holds(), "{:?}", v.conclusion);

        let v = lupton_sequence_check(&mixed1(), 2);
        assert!(matches!(v.conclusion, Conclusion::HypothesisNotMet { .. }));
    }
}
