#![no_main]

use augpoly::{parse_poly, VariableList};
use libfuzzer_sys::fuzz_target;

// First line: variable list. Remainder: polynomial text.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let (vars, expr) = text.split_once('\n').unwrap_or(("x,y,z", text));
    let Ok(vars) = VariableList::parse(vars) else {
        return;
    };
    if let Ok(p) = parse_poly(expr, &vars) {
        let rendered = p.to_string();
        let again = parse_poly(&rendered, &vars).expect("rendered polynomial parses");
        assert_eq!(again, p, "round trip through `{rendered}`");
    }
});
