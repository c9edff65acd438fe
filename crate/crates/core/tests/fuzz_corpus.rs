//! Replays the checked-in fuzz seeds on the stable toolchain.

use std::fs;
use std::path::PathBuf;

use augpoly::polytope::fingerprint;
use augpoly::{parse_poly, VariableList};

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fuzz/corpus")
        .join(target);
    let mut out: Vec<(String, Vec<u8>)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            (path.display().to_string(), fs::read(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn parse_poly_seeds_round_trip() {
    let mut parsed = 0;
    for (name, data) in seeds("parse_poly") {
        let text = String::from_utf8(data).unwrap();
        let (vars, expr) = text.split_once('\n').unwrap();
        let vars = VariableList::parse(vars).unwrap();
        if let Ok(p) = parse_poly(expr, &vars) {
            assert_eq!(parse_poly(&p.to_string(), &vars).unwrap(), p, "{name}");
            parsed += 1;
        }
    }
    assert!(parsed >= 3);
}

#[test]
fn var_list_seeds() {
    for (name, data) in seeds("parse_var_list") {
        let text = String::from_utf8(data).unwrap();
        let expected_ok = !(name.ends_with("duplicate") || name.ends_with("empty_name"));
        assert_eq!(VariableList::parse(&text).is_ok(), expected_ok, "{name}");
    }
}

#[test]
fn newton_seeds_satisfy_invariants() {
    let vars = VariableList::parse("x,y,z").unwrap();
    for (name, data) in seeds("newton_points") {
        let p = parse_poly(std::str::from_utf8(&data).unwrap(), &vars).unwrap();
        let f = fingerprint(&p).unwrap();
        assert!(f.total >= f.boundary && f.satisfies_pick(), "{name}: {f:?}");
    }
}
