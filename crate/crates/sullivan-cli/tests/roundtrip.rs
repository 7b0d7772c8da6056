//! Parser/printer round-trip identity on arbitrary valid models.

use proptest::prelude::*;

use sullivan_cli::parser::{parse_model, print_model};
use sullivan_core::model::sampling::random_minimal_model;

proptest! {
    #[test]
    fn print_then_parse_is_the_identity(seed in any::<u64>()) {
        let model = random_minimal_model(seed, 4, 8);
        let printed = print_model(&model);
        let reparsed = parse_model(&printed)
            .map_err(|d| TestCaseError::fail(format!("{d:?}")))?;
        prop_assert_eq!(&reparsed, &model);
        prop_assert_eq!(print_model(&reparsed), printed);
    }
}
