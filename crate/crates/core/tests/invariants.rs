use somino::verify;

fn assert_suite(name: &str) {
    let outcomes = verify::run(name).unwrap();
    assert!(!outcomes.is_empty());
    let failed: Vec<_> = outcomes.iter().filter(|o| !o.passed()).collect();
    assert!(failed.is_empty(), "{}", verify::table(&outcomes));
}

#[test]
fn tower_suite() {
    assert_suite("tower");
}

#[test]
fn exact_suite() {
    assert_suite("exact");
}

#[test]
fn series_suite() {
    assert_suite("series");
}

#[test]
fn multivariate_suite() {
    assert_suite("multivariate");
}

#[test]
fn enumerate_suite() {
    assert_suite("enumerate");
}

#[test]
fn dyck_suite() {
    assert_suite("dyck");
}

#[test]
fn rowconvex_suite() {
    assert_suite("rowconvex");
}
