mod common;

#[test]
fn every_construct_parses_and_evaluates() {
    let missing = common::coverage::missing_constructs();
    assert!(missing.is_empty(), "constructs without a corpus script: {missing:?}");
}
