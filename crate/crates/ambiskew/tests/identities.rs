mod common;

#[test]
fn commutation_and_product_identities() {
    common::identity_suite(31, 100);
}

#[test]
fn associativity() {
    common::associativity_suite(7, 200);
}
