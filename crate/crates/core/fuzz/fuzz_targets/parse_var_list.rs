#![no_main]

use augpoly::VariableList;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let input = String::from_utf8_lossy(data);
    if let Ok(vars) = VariableList::parse(&input) {
        assert!(!vars.is_empty());
        let again = VariableList::parse(&vars.names().join(",")).expect("names re-parse");
        assert_eq!(again, vars);
    }
});
