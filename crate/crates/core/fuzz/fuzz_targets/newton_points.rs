#![no_main]

use augpoly::polytope::{fingerprint, PolytopeError};
use augpoly::{parse_poly, VariableList};
use libfuzzer_sys::fuzz_target;

// Polynomial text over three variables; small exponents keep counting cheap.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let vars = VariableList::parse("x,y,z").expect("static");
    let Ok(p) = parse_poly(text, &vars) else {
        return;
    };
    if p.is_zero() || p.terms().any(|t| t.as_slice().iter().any(|e| e.abs() > 64)) {
        return;
    }
    match fingerprint(&p) {
        Ok(f) => {
            assert!(f.total >= f.boundary);
            assert!(f.satisfies_pick());
        }
        Err(PolytopeError::TooLarge) => {}
        Err(e) => panic!("unexpected error {e} for `{p}`"),
    }
});
