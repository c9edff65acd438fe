//! Concrete orbit computations: two monodromy scenarios, the α family and
//! the (2, n) torus-knot simplices.
//!
//! Scenario data is written down explicitly and checked when a scenario is
//! built: the supplied inverse of `N` must multiply to the identity, the
//! conjugated step matrix must equal its displayed form, and factoring a
//! monomial out of the step must reproduce the reduced matrix in `(x, y, z)`.

mod torus;

pub use torus::{block_matrix, det_is_unit, torus_simplex_check, torus_value, TorusInstance};

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::laurent::{
    parse_poly, ExponentVector, LaurentError, LaurentPoly, MonomialSubstitution, VariableList,
};
use crate::matrix::{orbit_value, LaurentMatrix, MatrixError};
use crate::polytope::{fingerprint_record, Fingerprint, FingerprintRecord, PolytopeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScenarioError {
    #[error("scenario data is inconsistent: {0}")]
    Construction(String),
    #[error("n = {n}: expected {expected} lattice points, found {found}")]
    CountMismatch { n: u64, expected: u64, found: u64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

impl ScenarioError {
    /// Whether the error is a failed mathematical check rather than bad input.
    pub fn is_verification_failure(&self) -> bool {
        !matches!(self, ScenarioError::InvalidInput(_))
    }
}

pub type Result<T> = std::result::Result<T, ScenarioError>;

/// Names accepted by [`Scenario::by_name`].
pub const SCENARIO_NAMES: [&str; 4] = [
    "beta11",
    "lambda1",
    "beta11-nonorientable",
    "lambda1-nonorientable",
];

/// A chord pair acted on by a 2x2 monodromy, with everything needed to
/// evaluate and certify its orbit.
#[derive(Clone, Debug)]
pub struct Scenario {
    name: &'static str,
    vars: VariableList,
    relations: MonomialSubstitution,
    chords: [&'static str; 2],
    base_values: [LaurentPoly; 2],
    monodromy: LaurentMatrix,
    base_n: LaurentMatrix,
    base_n_inv: LaurentMatrix,
    step: LaurentMatrix,
    reduced: LaurentMatrix,
    xyz: MonomialSubstitution,
    scalar: ExponentVector,
    target_row: usize,
}

fn xyz_vars() -> VariableList {
    VariableList::new(["x", "y", "z"]).expect("static variable names")
}

fn parse(text: &str, vars: &VariableList) -> Result<LaurentPoly> {
    parse_poly(text, vars).map_err(|e| ScenarioError::Construction(format!("`{text}`: {e}")))
}

fn parse_matrix(vars: &VariableList, rows: &[&[&str]]) -> Result<LaurentMatrix> {
    LaurentMatrix::parse(vars, rows).map_err(ScenarioError::Construction)
}

fn ensure(condition: bool, what: &str) -> Result<()> {
    if condition {
        Ok(())
    } else {
        Err(ScenarioError::Construction(what.to_string()))
    }
}

/// Data shared by both scenario constructors, checked in [`Scenario::assemble`].
struct Raw {
    name: &'static str,
    vars: VariableList,
    relations: MonomialSubstitution,
    chords: [&'static str; 2],
    base_values: [LaurentPoly; 2],
    monodromy: LaurentMatrix,
    base_n: LaurentMatrix,
    base_n_inv: LaurentMatrix,
    displayed_step: LaurentMatrix,
    reduced: LaurentMatrix,
    xyz: MonomialSubstitution,
}

impl Scenario {
    fn assemble(raw: Raw) -> Result<Self> {
        ensure(
            raw.base_n.mul(&raw.base_n_inv)?.is_identity(),
            "N * N^-1 is not the identity",
        )?;
        let step = raw.monodromy.conjugate(&raw.base_n, &raw.base_n_inv)?;
        ensure(
            step == raw.displayed_step,
            "N^-1 M N differs from the displayed M1",
        )?;
        let factored = step.factor_monomial()?;
        ensure(
            factored.reduced == raw.reduced.substitute(&raw.xyz)?,
            "factored M1 differs from the reduced matrix in (x, y, z)",
        )?;
        let s = Self {
            name: raw.name,
            vars: raw.vars,
            relations: raw.relations,
            chords: raw.chords,
            base_values: raw.base_values,
            monodromy: raw.monodromy,
            base_n: raw.base_n,
            base_n_inv: raw.base_n_inv,
            step,
            reduced: raw.reduced,
            xyz: raw.xyz,
            scalar: factored.scalar,
            target_row: 1,
        };
        for row in 0..2 {
            ensure(
                s.value_at_row(0, row)? == s.base_values[row],
                "N * e1 does not reproduce the base values",
            )?;
        }
        Ok(s)
    }

    /// Looks up a scenario or one of its aliases.
    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "beta11" => scenario_beta11(),
            "lambda1" => scenario_lambda1(),
            // the characteristic-2 computation is identical for the
            // non-orientable fillings
            "beta11-nonorientable" => Ok(Self {
                name: "beta11-nonorientable",
                ..scenario_beta11()?
            }),
            "lambda1-nonorientable" => Ok(Self {
                name: "lambda1-nonorientable",
                ..scenario_lambda1()?
            }),
            other => Err(ScenarioError::InvalidInput(format!(
                "unknown scenario `{other}` (expected one of {})",
                SCENARIO_NAMES.join(", ")
            ))),
        }
    }

    pub fn name(&self) -> &str {
        self.name
    }

    pub fn vars(&self) -> &VariableList {
        &self.vars
    }

    /// Elimination map from the pre-relation variables onto [`Self::vars`].
    pub fn relations(&self) -> &MonomialSubstitution {
        &self.relations
    }

    /// Chord names of the two tracked components, top to bottom.
    pub fn chords(&self) -> [&'static str; 2] {
        self.chords
    }

    pub fn base_values(&self) -> &[LaurentPoly; 2] {
        &self.base_values
    }

    pub fn monodromy(&self) -> &LaurentMatrix {
        &self.monodromy
    }

    pub fn base_n(&self) -> &LaurentMatrix {
        &self.base_n
    }

    pub fn base_n_inv(&self) -> &LaurentMatrix {
        &self.base_n_inv
    }

    /// `M1 = N^-1 M N`.
    pub fn step(&self) -> &LaurentMatrix {
        &self.step
    }

    /// `M1` with the scalar monomial removed, over `(x, y, z)`.
    pub fn reduced(&self) -> &LaurentMatrix {
        &self.reduced
    }

    /// Sends `x, y, z` to monomials in [`Self::vars`].
    pub fn xyz(&self) -> &MonomialSubstitution {
        &self.xyz
    }

    /// Exponent of the monomial factored out of `M1`.
    pub fn scalar(&self) -> &ExponentVector {
        &self.scalar
    }

    pub fn target_row(&self) -> usize {
        self.target_row
    }

    /// Closed-form lattice point count of the target value's Newton polytope.
    ///
    /// The polytope is a translate of `conv{(1,0), (n,0), (0,2n)}` in a
    /// saturated plane, which has `2n` boundary points, normalized area
    /// `2n(n-1)` and therefore `n^2 + 1` points by Pick's theorem.
    pub fn expected_total(&self, n: u64) -> Option<u64> {
        n.checked_mul(n).and_then(|sq| sq.checked_add(1))
    }

    fn value_at_row(&self, n: u64, row: usize) -> Result<LaurentPoly> {
        Ok(orbit_value(&self.base_n, &self.step, n, row)?)
    }

    /// Value of the tracked chord after `n` monodromy steps, via `N M1^n e1`.
    pub fn value(&self, n: u64) -> Result<LaurentPoly> {
        self.value_at_row(n, self.target_row)
    }

    /// Both chord values after `n` steps, via `N M1^n e1`.
    pub fn values(&self, n: u64) -> Result<[LaurentPoly; 2]> {
        Ok([self.value_at_row(n, 0)?, self.value_at_row(n, 1)?])
    }

    /// Both chord values obtained by applying `M` to the base values `n` times.
    pub fn values_by_monodromy(&self, n: u64) -> Result<[LaurentPoly; 2]> {
        let mut column = self.base_values.to_vec();
        for _ in 0..n {
            column = self.monodromy.apply(&column)?;
        }
        let second = column.pop().expect("two rows");
        let first = column.pop().expect("two rows");
        Ok([first, second])
    }

    /// Upper-left entry of the reduced matrix power, over `(x, y, z)`.
    pub fn reduced_power(&self, n: u64) -> Result<LaurentPoly> {
        Ok(self.reduced.pow(n)?.get(0, 0).clone())
    }

    /// The tracked value reassembled from the reduced matrix power:
    /// `sum_k N[row][k] * scalar^n * (R^n)[k][0]` with `R` pulled back to
    /// the scenario variables.
    pub fn factored_value(&self, n: u64) -> Result<LaurentPoly> {
        let power = self.reduced.pow(n)?;
        let shift = self
            .scalar
            .checked_scale(i64::try_from(n).map_err(|_| LaurentError::Overflow)?)?;
        let mut acc = LaurentPoly::zero(&self.vars);
        for k in 0..2 {
            let entry = power.get(k, 0).substitute(&self.xyz)?.shift(&shift)?;
            acc = acc.add(&self.base_n.get(self.target_row, k).mul(&entry)?)?;
        }
        Ok(acc)
    }
}

/// Case with relations `s10 = s11 = s16^-1 = s13 s12 s9`.
pub fn scenario_beta11() -> Result<Scenario> {
    let raw_vars = VariableList::new(["s9", "s10", "s11", "s12", "s13", "s16"])?;
    let vars = VariableList::new(["s9", "s11", "s12", "s13"])?;
    let relations = MonomialSubstitution::from_text(
        &raw_vars,
        &vars,
        &["s9", "s11", "s11", "s12", "s11*s12^-1*s9^-1", "s11^-1"],
    )?;
    let a19_raw = parse(
        "s9*s13*s12^2*s10^-1*s11^-2*s16^-1 + s13*s12*s11^-1*s16^-1 + s9*s11^-1",
        &raw_vars,
    )?;
    let a19 = parse("s12*s11^-1 + s11*s9^-1 + s11^-1*s9", &vars)?;
    ensure(
        a19_raw.substitute(&relations)? == a19,
        "relations do not simplify the a19 value",
    )?;
    let a19_text = a19.to_string();
    let xyz = MonomialSubstitution::from_text(
        &xyz_vars(),
        &vars,
        &["s12*s9*s11^-1", "s11", "s9^-1*s11"],
    )?;
    Scenario::assemble(Raw {
        name: "beta11",
        relations,
        chords: ["a11", "a9"],
        base_values: [parse("s11", &vars)?, parse("s9", &vars)?],
        monodromy: parse_matrix(&vars, &[&["0", "1"], &["1", &a19_text]])?,
        base_n: parse_matrix(&vars, &[&["s11", "1"], &["s9", "0"]])?,
        base_n_inv: parse_matrix(&vars, &[&["0", "s9^-1"], &["1", "s11*s9^-1"]])?,
        displayed_step: parse_matrix(
            &vars,
            &[
                &["s11*s9^-1 + s12*s11^-1 + s11*s9^-1 + s11^-1*s9", "s9^-1"],
                &["s9^-1*s11^2 + s9 + s12 + s11^2*s9^-1 + s9", "s9^-1*s11"],
            ],
        )?,
        reduced: parse_matrix(&xyz_vars(), &[&["x*y^-1 + z^-2", "y^-1"], &["x", "1"]])?,
        xyz,
        vars,
    })
}

/// Case with relations `s10 s11 s13 = 1` and `s1 s4 s9 s12 = 1`.
pub fn scenario_lambda1() -> Result<Scenario> {
    let raw_vars = VariableList::new(["s1", "s4", "s9", "s10", "s11", "s12", "s13"])?;
    let vars = VariableList::new(["s4", "s9", "s10", "s12", "s13"])?;
    let relations = MonomialSubstitution::from_text(
        &raw_vars,
        &vars,
        &[
            "s4^-1*s9^-1*s12^-1",
            "s4",
            "s9",
            "s10",
            "s10^-1*s13^-1",
            "s12",
            "s13",
        ],
    )?;
    let a10_raw = parse("s10 + s10^2*s11^2*s13*s1^-1*s4^-1*s12^-1", &raw_vars)?;
    let a13_raw = parse(
        "s10*s9^-1 + s13 + s10^2*s11^2*s13*s1^-1*s4^-1*s9^-1*s12^-1",
        &raw_vars,
    )?;
    let a10 = parse("s10 + s9*s13^-1", &vars)?;
    let a13 = parse("s10*s9^-1 + s13 + s13^-1", &vars)?;
    ensure(
        a10_raw.substitute(&relations)? == a10 && a13_raw.substitute(&relations)? == a13,
        "relations do not simplify the a10 and a13 values",
    )?;
    let (a10_text, a13_text) = (a10.to_string(), a13.to_string());
    let xyz = MonomialSubstitution::from_text(&xyz_vars(), &vars, &["s9", "s10", "s13"])?;
    Scenario::assemble(Raw {
        name: "lambda1",
        relations,
        chords: ["a10", "a9"],
        base_values: [a10, parse("s9", &vars)?],
        monodromy: parse_matrix(&vars, &[&[&a13_text, "1"], &["1", "0"]])?,
        base_n: parse_matrix(&vars, &[&[&a10_text, "1"], &["s9", "0"]])?,
        base_n_inv: parse_matrix(&vars, &[&["0", "s9^-1"], &["1", "s13^-1 + s10*s9^-1"]])?,
        displayed_step: parse_matrix(
            &vars,
            &[&["s13^-1 + s10*s9^-1", "s9^-1"], &["s10*s13", "s13"]],
        )?,
        reduced: parse_matrix(
            &xyz_vars(),
            &[&["z^-2 + y*x^-1*z^-1", "x^-1*z^-1"], &["y", "1"]],
        )?,
        xyz,
        vars,
    })
}

/// One orbit step's summary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitRow {
    pub n: u64,
    pub monomials: usize,
    pub fingerprint: FingerprintRecord,
}

/// Fingerprints of the tracked value for `n = 1..=n_max`, in order of `n`.
///
/// A row whose lattice point count disagrees with
/// [`Scenario::expected_total`] is an error.
pub fn orbit_table(s: &Scenario, n_max: u64) -> Result<Vec<OrbitRow>> {
    if n_max == 0 {
        return Err(ScenarioError::InvalidInput(
            "n_max must be at least 1".into(),
        ));
    }
    (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let value = s.value(n)?;
            let fingerprint = fingerprint_record(&value)?;
            if let Some(expected) = s.expected_total(n) {
                if fingerprint.total != expected {
                    return Err(ScenarioError::CountMismatch {
                        n,
                        expected,
                        found: fingerprint.total,
                    });
                }
            }
            Ok(OrbitRow {
                n,
                monomials: value.monomial_count(),
                fingerprint,
            })
        })
        .collect()
}

/// Outcome of [`distinctness_verdict`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub distinct: bool,
    /// Positions of the first colliding pair of rows.
    pub witness: Option<(usize, usize)>,
}

/// True iff the fingerprints of all rows are pairwise different.
pub fn distinctness_verdict(rows: &[OrbitRow]) -> Verdict {
    let mut seen: HashMap<Fingerprint, usize> = HashMap::new();
    for (j, row) in rows.iter().enumerate() {
        if let Some(&i) = seen.get(&row.fingerprint.fingerprint()) {
            return Verdict {
                distinct: false,
                witness: Some((i, j)),
            };
        }
        seen.insert(row.fingerprint.fingerprint(), j);
    }
    Verdict {
        distinct: true,
        witness: None,
    }
}

/// Monomial counts of the upper-left entry of `[[x+y, 1], [x, 1]]^n` mod 2
/// for `n = 1..=40`.
pub const ALPHA_SEQUENCE: [usize; 40] = [
    2, 3, 5, 6, 7, 9, 14, 15, 13, 14, 19, 21, 22, 27, 41, 42, 31, 29, 34, 35, 33, 38, 55, 57, 46,
    47, 61, 66, 67, 81, 122, 123, 85, 74, 79, 77, 66, 71, 97, 98,
];

pub fn alpha_matrix() -> LaurentMatrix {
    let vars = VariableList::new(["x", "y"]).expect("static variable names");
    LaurentMatrix::parse(&vars, &[&["x + y", "1"], &["x", "1"]]).expect("static matrix")
}

/// Upper-left entries of `alpha^n` for `n = 1..=n_max`.
pub fn alpha_powers(n_max: usize) -> Result<Vec<LaurentPoly>> {
    if n_max == 0 {
        return Err(ScenarioError::InvalidInput(
            "n_max must be at least 1".into(),
        ));
    }
    let alpha = alpha_matrix();
    let mut power = alpha.clone();
    let mut out = Vec::with_capacity(n_max);
    for _ in 0..n_max {
        out.push(power.get(0, 0).clone());
        power = power.mul(&alpha)?;
    }
    Ok(out)
}

/// Monomial counts of the upper-left entries of `alpha^n`, `n = 1..=n_max`.
pub fn alpha_sequence(n_max: usize) -> Result<Vec<usize>> {
    Ok(alpha_powers(n_max)?
        .iter()
        .map(LaurentPoly::monomial_count)
        .collect())
}

/// Closed-form fingerprint of `N(alpha^n)`: the triangle
/// `conv{(n,0), (0,n), (1,0)}` for `n >= 2`, a unit segment for `n = 1`.
pub fn alpha_expected_fingerprint(n: u64) -> Option<Fingerprint> {
    match n {
        0 => None,
        1 => Some(Fingerprint {
            intrinsic_dim: 1,
            total: 2,
            boundary: 2,
            interior: 0,
            normalized_volume: Some(1),
        }),
        _ => Some(Fingerprint {
            intrinsic_dim: 2,
            total: (n * n + n) / 2 + 1,
            boundary: 2 * n,
            interior: (n - 1) * (n - 2) / 2,
            normalized_volume: Some(n * n - n),
        }),
    }
}

/// `x^a y^b z^c` exponent helper for the reduced coordinates.
pub fn xyz_exponent(a: i64, b: i64, c: i64) -> ExponentVector {
    ExponentVector::from([a, b, c])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{fingerprint, newton_polytope};

    #[test]
    fn scenarios_build() {
        let b = scenario_beta11().unwrap();
        assert_eq!(b.vars().names(), ["s9", "s11", "s12", "s13"]);
        assert_eq!(b.scalar(), &ExponentVector::from([-1, 1, 0, 0]));
        let l = scenario_lambda1().unwrap();
        assert_eq!(l.scalar(), &ExponentVector::from([0, 0, 0, 0, 1]));
        for name in SCENARIO_NAMES {
            assert_eq!(Scenario::by_name(name).unwrap().name(), name);
        }
        assert!(matches!(
            Scenario::by_name("unknown"),
            Err(ScenarioError::InvalidInput(_))
        ));
    }

    #[test]
    fn base_values() {
        let b = scenario_beta11().unwrap();
        assert_eq!(b.value(0).unwrap().to_string(), "s9");
        let l = scenario_lambda1().unwrap();
        assert_eq!(l.value(0).unwrap(), parse("s9", l.vars()).unwrap());
        assert_eq!(
            l.values(0).unwrap()[0],
            parse("s10 + s9*s13^-1", l.vars()).unwrap()
        );
    }

    #[test]
    fn first_step_values() {
        let b = scenario_beta11().unwrap();
        // M (a11, a9) = (a9, a11 + a19 a9)
        let expected = parse("s11 + s12*s9*s11^-1 + s11 + s11^-1*s9^2", b.vars()).unwrap();
        assert_eq!(b.value(1).unwrap(), expected);
        let l = scenario_lambda1().unwrap();
        assert_eq!(l.value(1).unwrap().monomial_count(), 2);
    }

    #[test]
    fn two_path_consistency() {
        for s in [scenario_beta11().unwrap(), scenario_lambda1().unwrap()] {
            for n in 0..=10 {
                assert_eq!(
                    s.values(n).unwrap(),
                    s.values_by_monodromy(n).unwrap(),
                    "{} n={n}",
                    s.name()
                );
            }
        }
    }

    #[test]
    fn factored_form_consistency() {
        for s in [scenario_beta11().unwrap(), scenario_lambda1().unwrap()] {
            for n in 0..=12 {
                assert_eq!(
                    s.value(n).unwrap(),
                    s.factored_value(n).unwrap(),
                    "{} n={n}",
                    s.name()
                );
            }
        }
    }

    #[test]
    fn beta_and_gamma_hull_vertices() {
        let b = scenario_beta11().unwrap();
        let l = scenario_lambda1().unwrap();
        for n in 2..=20i64 {
            let mut expected = vec![
                xyz_exponent(0, 0, -2 * n),
                xyz_exponent(1, -1, 0),
                xyz_exponent(n, -n, 0),
            ];
            expected.sort();
            let beta = b.reduced_power(n as u64).unwrap();
            assert_eq!(newton_polytope(&beta).unwrap().vertices(), expected);

            let mut expected = vec![
                xyz_exponent(-1, 1, -1),
                xyz_exponent(-n, n, -n),
                xyz_exponent(0, 0, -2 * n),
            ];
            expected.sort();
            let gamma = l.reduced_power(n as u64).unwrap();
            assert_eq!(newton_polytope(&gamma).unwrap().vertices(), expected);
        }
    }

    #[test]
    fn orbit_totals() {
        for s in [scenario_beta11().unwrap(), scenario_lambda1().unwrap()] {
            let rows = orbit_table(&s, 20).unwrap();
            let totals: Vec<u64> = rows.iter().map(|r| r.fingerprint.total).collect();
            assert_eq!(&totals[..5], &[2, 5, 10, 17, 26]);
            assert_eq!(totals[19], 401);
            assert!(distinctness_verdict(&rows).distinct);
            assert_eq!(
                rows.iter().map(|r| r.n).collect::<Vec<_>>(),
                (1..=20).collect::<Vec<_>>()
            );
        }
        assert_eq!(
            orbit_table(&scenario_beta11().unwrap(), 1).unwrap().len(),
            1
        );
        assert!(orbit_table(&scenario_beta11().unwrap(), 0).is_err());
    }

    #[test]
    fn verdict_witness() {
        let rows = orbit_table(&scenario_beta11().unwrap(), 3).unwrap();
        let dup = vec![rows[1].clone(), rows[0].clone(), rows[1].clone()];
        assert_eq!(
            distinctness_verdict(&dup),
            Verdict {
                distinct: false,
                witness: Some((0, 2))
            }
        );
        let mut other = rows[1].clone();
        other.fingerprint.boundary += 1;
        assert!(distinctness_verdict(&[rows[1].clone(), other]).distinct);
    }

    #[test]
    fn alpha_prefix_and_formulas() {
        let seq = alpha_sequence(40).unwrap();
        assert_eq!(seq, ALPHA_SEQUENCE);
        assert_eq!(&seq[..6], &[2, 3, 5, 6, 7, 9]);
        assert_eq!((seq[6], seq[9]), (14, 14));
        assert_eq!((seq[30], seq[31]), (122, 123));
        for (n, p) in alpha_powers(30).unwrap().iter().enumerate() {
            let n = n as u64 + 1;
            assert_eq!(
                Some(fingerprint(p).unwrap()),
                alpha_expected_fingerprint(n),
                "n={n}"
            );
        }
    }
}
