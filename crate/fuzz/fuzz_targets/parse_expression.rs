#![no_main]

use dualmetric_cli::expr::{check_kinds, parse_expression};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(expr) = parse_expression(text) else {
        return;
    };
    // Printing is fully parenthesized, so it must parse back to the same tree.
    let printed = expr.to_string();
    let again = parse_expression(&printed).expect("printed expression reparses");
    assert_eq!(expr, again);
    for dim in [1, 3, 12] {
        let _ = check_kinds(&expr, dim);
    }
});
