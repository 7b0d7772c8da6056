//! The built-in model corpus. Each entry is plain model-language text plus
//! tags naming the checks whose hypotheses the model satisfies.

use sullivan_core::model::SullivanModel;

use crate::parser::parse_model;

#[derive(Clone, Copy, Debug)]
pub struct CorpusEntry {
    pub id: &'static str,
    pub description: &'static str,
    /// Which theorem checks apply, plus structural tags
    /// (`pure`, `odd-quadratic-kernel`, `hypothesis-failure`).
    pub tags: &'static [&'static str],
    pub source: &'static str,
}

pub const CORPUS: &[CorpusEntry] = &[
    CorpusEntry {
        id: "s2",
        description: "the 2-sphere",
        tags: &["hilali", "nogaps", "e0gaps", "lupton", "pure"],
        source: "\
# minimal model of S^2
generator x 2
generator y 3
d y = x^2
",
    },
    CorpusEntry {
        id: "s3",
        description: "the 3-sphere",
        tags: &[
            "hilali",
            "nogaps",
            "e0gaps",
            "hilali-cases",
            "lupton",
            "pure",
            "odd-quadratic-kernel",
        ],
        source: "\
# minimal model of S^3: one odd generator, zero differential
generator x 3
",
    },
    CorpusEntry {
        id: "s3xs5",
        description: "the product S^3 x S^5",
        tags: &[
            "hilali",
            "nogaps",
            "e0gaps",
            "hilali-cases",
            "lupton",
            "pure",
            "odd-quadratic-kernel",
        ],
        source: "\
# minimal model of S^3 x S^5
generator x 3
generator y 5
",
    },
    CorpusEntry {
        id: "cp2",
        description: "the complex projective plane",
        tags: &[
            "hilali",
            "nogaps",
            "e0gaps",
            "hilali-cases",
            "lupton",
            "pure",
            "odd-quadratic-kernel",
        ],
        source: "\
# minimal model of CP^2
generator x 2
generator y 5
d y = x^3
",
    },
    CorpusEntry {
        id: "cp3",
        description: "complex projective 3-space",
        tags: &[
            "hilali",
            "nogaps",
            "e0gaps",
            "hilali-cases",
            "lupton",
            "pure",
            "odd-quadratic-kernel",
        ],
        source: "\
# minimal model of CP^3
generator x 2
generator y 7
d y = x^4
",
    },
    CorpusEntry {
        id: "e6-pure",
        description: "pure model on two even and two odd generators",
        tags: &[
            "hilali",
            "nogaps",
            "e0gaps",
            "hilali-cases",
            "lupton",
            "pure",
            "odd-quadratic-kernel",
        ],
        source: "\
# pure model with formal dimension 8
generator x 2
generator y 2
generator z 5
generator w 5
d z = x^3
d w = y^3
",
    },
    CorpusEntry {
        id: "free-odd",
        description: "free algebra on three odd generators",
        tags: &[
            "hilali",
            "nogaps",
            "e0gaps",
            "hilali-cases",
            "lupton",
            "pure",
            "odd-quadratic-kernel",
        ],
        source: "\
# exterior algebra, zero differential
generator x 3
generator y 5
generator z 7
",
    },
    CorpusEntry {
        id: "mixed-1",
        description: "mixed-length differential whose d_3-homology is infinite",
        tags: &["hilali", "hypothesis-failure", "odd-quadratic-kernel"],
        source: "\
# dc mixes word lengths 3 and 4; (Lambda V, d_3) is not elliptic
generator x 2
generator a 3
generator b 3
generator c 7
d c = x*a*b + x^4
",
    },
];

pub fn find(id: &str) -> Option<&'static CorpusEntry> {
    CORPUS.iter().find(|e| e.id == id)
}

/// Parses a corpus entry; the corpus ships only valid models.
pub fn load(entry: &CorpusEntry) -> SullivanModel {
    parse_model(entry.source).expect("corpus models are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::print_model;

    #[test]
    fn all_entries_parse_and_validate() {
        for entry in CORPUS {
            let model = load(entry);
            assert!(model.validate().is_valid(), "{}", entry.id);
        }
    }

    #[test]
    fn round_trip_on_the_corpus() {
        for entry in CORPUS {
            let model = load(entry);
            let printed = print_model(&model);
            let reparsed = parse_model(&printed).expect("printed corpus model parses");
            assert_eq!(reparsed, model, "{}", entry.id);
        }
    }

    #[test]
    fn ids_are_unique() {
        for (i, a) in CORPUS.iter().enumerate() {
            for b in &CORPUS[i + 1..] {
                assert_ne!(a.id, b.id);
            }
        }
    }

    #[test]
    fn odd_quadratic_kernel_tag_matches_the_predicate() {
        for entry in CORPUS {
            let model = load(entry);
            let expected = sullivan_core::conjecture::odd_quadratic_kernel_nonzero(&model);
            assert_eq!(
                entry.tags.contains(&"odd-quadratic-kernel"),
                expected,
                "{}",
                entry.id
            );
        }
    }
}
