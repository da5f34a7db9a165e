use phl_core::acceptance::{run_criterion, AcceptanceConfig, CRITERIA};

fn criterion(id: u8) {
    let result = run_criterion(id, &AcceptanceConfig::default());
    println!("{result}");
    assert!(result.pass, "{result}");
}

#[test]
fn criterion_1_flat_baseline() {
    criterion(1);
}

#[test]
fn criterion_2_cotton_york_example() {
    criterion(2);
}

#[test]
fn criterion_3_cone_contract() {
    criterion(3);
}

#[test]
fn criterion_4_full_orthogonal_holonomy() {
    criterion(4);
}

#[test]
fn criterion_5_full_sl_holonomy() {
    criterion(5);
}

#[test]
fn criterion_6_full_symplectic_holonomy() {
    criterion(6);
}

#[test]
fn criterion_7_complex_cone() {
    criterion(7);
}

#[test]
fn criterion_8_tractor_containment() {
    criterion(8);
}

#[test]
fn criterion_9_property_suites() {
    criterion(9);
}

#[test]
fn every_criterion_has_a_test() {
    assert_eq!(CRITERIA.len(), 9);
}
