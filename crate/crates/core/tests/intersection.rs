mod common;

use common::bigon::compare_with_oracle;

#[test]
fn lift_classes_agree_with_bigon_oracle() {
    let a = compare_with_oracle(8);
    assert!(a.classes >= 20, "{} classes", a.classes);
    assert!(a.mismatches.is_empty(), "{:#?}", a.mismatches);
    assert_eq!(a.unresolved, 0, "pairs without a bigon-free drawing");
}
