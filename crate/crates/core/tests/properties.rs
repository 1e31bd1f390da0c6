mod common;

#[test]
fn valuation_is_additive() {
    common::valuation_additivity(500).unwrap();
}

#[test]
fn pochhammer_concatenates() {
    common::pochhammer_concatenation(200).unwrap();
}

#[test]
fn q_binomial_pascal() {
    common::pascal_recurrence(40).unwrap();
}

#[test]
fn normalization_is_idempotent() {
    common::normalization_idempotence(500).unwrap();
}

#[test]
fn backends_agree_up_to_12() {
    let n = common::backend_cross_check().unwrap();
    assert!(n > 100, "{n}");
}

#[test]
fn pa1_vanishing_implies_main1() {
    common::pa1_implies_main1(30).unwrap();
}
