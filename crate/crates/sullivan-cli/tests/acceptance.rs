//! Acceptance suite: one test per criterion, each printing a PASS line
//! (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! 1. corpus exactness  2. first-page identification  3. convergence
//! 4. theorem regressions  5. dual e0 routes  6. subquotient isomorphisms
//! 7. random structural properties  8. acyclic closures

use std::collections::BTreeMap;

use sullivan_cli::corpus;
use sullivan_core::cohomology::{bigraded_dims, Complex};
use sullivan_core::conjecture::{
    e0gap_check, hilali_check, hilali_special_cases, lupton_sequence_check, nogap_check,
    Conclusion,
};
use sullivan_core::model::sampling::random_minimal_model;
use sullivan_core::model::SullivanModel;
use sullivan_core::spectral::{e0_of_class, e0_spectrum_direct, r_stab, SpectralEngine};

fn corpus_model(id: &str) -> SullivanModel {
    corpus::load(corpus::find(id).expect("corpus id"))
}

fn formal_dimension(model: &SullivanModel) -> usize {
    let n = model.invariants().n_formula;
    assert!(n >= 0, "corpus models have nonnegative formal dimension");
    n as usize
}

#[test]
fn criterion_1_corpus_exactness() {
    // (id, dim H, N, e); re-derived by bounded cochain computation before pinning
    let expected = [
        ("s2", 2usize, 2usize, 1usize),
        ("s3", 2, 3, 1),
        ("s3xs5", 4, 8, 2),
        ("cp2", 3, 4, 2),
        ("cp3", 4, 6, 3),
        ("e6-pure", 9, 8, 4),
        ("free-odd", 8, 15, 3),
    ];
    for (id, dim_h, n, e) in expected {
        let model = corpus_model(id);
        let inv = model.invariants();
        assert_eq!(inv.n_formula, n as i64, "{id}: N");
        assert_eq!(inv.e_formula, Some(e), "{id}: e");
        let complex = Complex::new(model.algebra(), model.differential());
        let computed: usize = (0..=n).map(|i| complex.dim_h(i)).sum();
        assert_eq!(computed, dim_h, "{id}: dim H");
        let verdict = hilali_check(&model, 2);
        assert_eq!(verdict.conclusion, Conclusion::Holds, "{id}: hilali");
    }
    println!("PASS criterion 1: corpus exactness (dim H, N, e, Hilali) on 7 models");
}

#[test]
fn criterion_2_first_page_identification() {
    for entry in corpus::CORPUS {
        let model = corpus::load(entry);
        let n = formal_dimension(&model);
        let k = model.first_length().unwrap_or(2);
        let homogeneous = model.homogeneous_model();
        let engine = SpectralEngine::new(&model);
        for total in 0..=n + 2 {
            let split: BTreeMap<usize, usize> = bigraded_dims(
                homogeneous.algebra(),
                homogeneous.differential(),
                total,
            )
            .expect("homogeneous differential");
            for p in 0..=total {
                let q = total - p;
                let expected = split.get(&p).copied().unwrap_or(0);
                let got = engine.page_entry(k, p as i64, q as i64).dim();
                assert_eq!(
                    got, expected,
                    "{}: E_{k}^{{{p},{q}}} vs H^{{{total}}}_{{{p}}}(d_{k})",
                    entry.id
                );
            }
        }
    }
    println!("PASS criterion 2: E_k matches the d_k-bigraded cohomology on the corpus");
}

#[test]
fn criterion_3_convergence() {
    for entry in corpus::CORPUS {
        let model = corpus::load(entry);
        let n = formal_dimension(&model);
        let engine = SpectralEngine::new(&model);
        let complex = Complex::new(model.algebra(), model.differential());
        for total in 0..=n {
            let einf: usize = engine.e_infinity_dims(total).values().sum();
            assert_eq!(einf, complex.dim_h(total), "{}: degree {total}", entry.id);
        }
    }
    println!("PASS criterion 3: sum of E_inf entries equals dim H^n on the corpus");
}

#[test]
fn criterion_4_theorem_regressions() {
    for entry in corpus::CORPUS {
        let model = corpus::load(entry);
        for (check, verdict) in [
            ("nogaps", nogap_check(&model, 2)),
            ("e0gaps", e0gap_check(&model, 2)),
            ("hilali-cases", hilali_special_cases(&model, 2)),
            ("lupton", lupton_sequence_check(&model, 2)),
        ] {
            match &verdict.conclusion {
                Conclusion::Holds | Conclusion::HypothesisNotMet { .. } => {
                    let hypotheses_met = verdict.hypotheses.iter().any(|h| h.satisfied);
                    if hypotheses_met {
                        assert_eq!(
                            verdict.conclusion,
                            Conclusion::Holds,
                            "{}: {check}",
                            entry.id
                        );
                    }
                }
                other => panic!("{}: {check} returned {other:?}", entry.id),
            }
        }
    }
    // the hypothesis-failure exemplar carries a witness
    let mixed = corpus_model("mixed-1");
    let verdict = nogap_check(&mixed, 2);
    match &verdict.conclusion {
        Conclusion::HypothesisNotMet { witness } => {
            assert!(!witness.is_empty(), "witness text present");
        }
        other => panic!("mixed-1 nogaps: {other:?}"),
    }
    assert!(
        verdict.evidence.iter().any(|(k, _)| k == "witness_degree"),
        "witness degree recorded"
    );
    println!("PASS criterion 4: theorem checks hold on the corpus; mixed-1 reports the witness");
}

#[test]
fn criterion_5_dual_e0_routes() {
    for entry in corpus::CORPUS {
        let model = corpus::load(entry);
        let n = formal_dimension(&model);
        let complex = Complex::new(model.algebra(), model.differential());
        // e0_of_class asserts the quotient-complex route equals the
        // representative route on every class it sees
        for degree in 1..=n {
            for rep in complex.representatives(degree) {
                e0_of_class(&model, &rep).expect("representatives are nonzero cocycles");
            }
        }
        let engine = SpectralEngine::new(&model);
        let support = engine.e_infinity_column_support(n);
        let spectrum = e0_spectrum_direct(&model, n);
        assert_eq!(support, spectrum, "{}", entry.id);
    }
    println!("PASS criterion 5: both e0 routes agree; spectrum equals E_inf column support");
}

#[test]
fn criterion_6_subquotient_isomorphisms() {
    for id in ["cp2", "s2"] {
        let model = corpus_model(id);
        let n = formal_dimension(&model);
        let engine = SpectralEngine::new(&model);
        for r in 1..=r_stab(n + 2) {
            for total in 0..=n + 2 {
                for p in 0..=total {
                    let q = total - p;
                    let report = engine
                        .subquotient_iso_check(r, p as i64, q as i64)
                        .unwrap_or_else(|e| panic!("{id}: r={r} ({p},{q}): {e:?}"));
                    assert!(report.holds());
                }
            }
        }
    }
    println!("PASS criterion 6: ker/im subquotient identifications hold on cp2 and s2");
}

#[test]
fn criterion_7_random_structural_properties() {
    let max_total = 12usize;
    for seed in 0..200u64 {
        let model = random_minimal_model(seed, 4, 8);
        let report = model.validate();
        assert!(report.is_valid(), "seed {seed}: {:?}", report.issues);
        // homogeneous parts recombine to d on every generator
        let lengths: Vec<usize> = model
            .differential()
            .values()
            .flat_map(|(_, p)| p.word_lengths())
            .collect();
        let max_len = lengths.iter().copied().max().unwrap_or(2);
        for g in model.algebra().generators() {
            let mut sum = sullivan_core::Polynomial::zero();
            for l in 2..=max_len {
                sum = sum.add(&model.homogeneous_part(l).value_on(g.id));
            }
            assert_eq!(sum, model.differential().value_on(g.id), "seed {seed}");
        }
        let engine = SpectralEngine::new(&model);
        for r in 1..=r_stab(max_total) {
            for total in 0..=max_total {
                for p in 0..=total {
                    let (p, q) = (p as i64, (total - p) as i64);
                    let here = engine.page_entry(r, p, q).dim();
                    // page dimensions never grow
                    let next = engine.page_entry(r + 1, p, q).dim();
                    assert!(next <= here, "seed {seed}: r={r} ({p},{q})");
                    // H(E_r, delta_r) has the dimension of E_{r+1};
                    // page_differential verifies delta_r well-definedness
                    let homology = engine
                        .page_homology_dim(r, p, q)
                        .unwrap_or_else(|e| panic!("seed {seed}: {e:?}"));
                    assert_eq!(homology, next, "seed {seed}: r={r} ({p},{q})");
                }
            }
        }
    }
    println!("PASS criterion 7: 200 random models pass the structural property suite");
}

#[test]
fn criterion_8_acyclic_closures() {
    for id in ["s2", "s3", "cp2"] {
        let model = corpus_model(id);
        let closure = model.acyclic_closure();
        let complex = Complex::new(closure.algebra(), closure.differential());
        assert_eq!(complex.dim_h(0), 1, "{id}: H^0");
        for i in 1..=10 {
            assert_eq!(complex.dim_h(i), 0, "{id}: H^{i}");
        }
    }
    println!("PASS criterion 8: closures of s2, s3, cp2 are acyclic through degree 10");
}
