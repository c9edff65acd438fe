//! Sparse Laurent polynomials with coefficients in the two-element field.
//!
//! A polynomial is stored as the sorted set of exponent vectors whose
//! coefficient is 1. Addition is symmetric difference of supports, and
//! multiplication is convolution where colliding exponents cancel in pairs.

mod parse;

pub use parse::{parse_poly, ParseError};

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("variable lists differ: [{left}] vs [{right}]")]
    VariableMismatch { left: String, right: String },
    #[error("exponent vector has length {found}, expected {expected}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("exponent overflow")]
    Overflow,
    #[error("invalid variable list: {0}")]
    InvalidVariables(String),
    #[error("variable `{0}` already present")]
    NameCollision(String),
}

pub type Result<T> = std::result::Result<T, LaurentError>;

/// Ordered list of distinct variable names. Position `i` is coordinate `i`
/// of the exponent lattice.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VariableList {
    names: Arc<[String]>,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VariableList {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(LaurentError::InvalidVariables("no variables".into()));
        }
        let mut seen = HashSet::new();
        for name in &names {
            if !is_identifier(name) {
                return Err(LaurentError::InvalidVariables(format!(
                    "`{name}` is not an identifier"
                )));
            }
            if !seen.insert(name.as_str()) {
                return Err(LaurentError::InvalidVariables(format!(
                    "duplicate variable `{name}`"
                )));
            }
        }
        Ok(Self {
            names: names.into(),
        })
    }

    /// Parses a comma separated list such as `x,y,z`.
    pub fn parse(text: &str) -> Result<Self> {
        Self::new(text.split(',').map(str::trim))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Returns a new list with `name` appended as the last coordinate.
    pub fn with_appended(&self, name: &str) -> Result<Self> {
        if self.index_of(name).is_some() {
            return Err(LaurentError::NameCollision(name.to_string()));
        }
        Self::new(
            self.names
                .iter()
                .cloned()
                .chain(std::iter::once(name.to_string())),
        )
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(LaurentError::VariableMismatch {
                left: self.names.join(","),
                right: other.names.join(","),
            })
        }
    }
}

impl fmt::Debug for VariableList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.names.join(","))
    }
}

impl fmt::Display for VariableList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names.join(","))
    }
}

/// A point of `Z^k`, i.e. the exponents of one Laurent monomial.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExponentVector(Vec<i64>);

impl ExponentVector {
    pub fn new(exponents: Vec<i64>) -> Self {
        Self(exponents)
    }

    pub fn zero(len: usize) -> Self {
        Self(vec![0; len])
    }

    /// The unit vector `e_index` in `Z^len`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = vec![0; len];
        v[index] = 1;
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(LaurentError::ArityMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(LaurentError::Overflow))
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }

    pub fn checked_neg(&self) -> Result<Self> {
        self.0
            .iter()
            .map(|a| a.checked_neg().ok_or(LaurentError::Overflow))
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }

    pub fn checked_scale(&self, factor: i64) -> Result<Self> {
        self.0
            .iter()
            .map(|a| a.checked_mul(factor).ok_or(LaurentError::Overflow))
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<i64>> for ExponentVector {
    fn from(v: Vec<i64>) -> Self {
        Self(v)
    }
}

impl<const N: usize> From<[i64; N]> for ExponentVector {
    fn from(v: [i64; N]) -> Self {
        Self(v.to_vec())
    }
}

/// A Laurent polynomial over F2 in the variables of `vars`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    vars: VariableList,
    support: BTreeSet<ExponentVector>,
}

impl LaurentPoly {
    pub fn zero(vars: &VariableList) -> Self {
        Self {
            vars: vars.clone(),
            support: BTreeSet::new(),
        }
    }

    pub fn one(vars: &VariableList) -> Self {
        Self::monomial(vars, ExponentVector::zero(vars.len())).expect("arity matches")
    }

    pub fn monomial(vars: &VariableList, exponent: ExponentVector) -> Result<Self> {
        Self::from_terms(vars, std::iter::once(exponent))
    }

    /// The single variable `vars[index]`.
    pub fn variable(vars: &VariableList, index: usize) -> Self {
        Self::monomial(vars, ExponentVector::unit(vars.len(), index)).expect("arity matches")
    }

    /// Builds a polynomial from a list of terms; repeated terms cancel in pairs.
    pub fn from_terms<I>(vars: &VariableList, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = ExponentVector>,
    {
        let mut support = BTreeSet::new();
        for term in terms {
            if term.len() != vars.len() {
                return Err(LaurentError::ArityMismatch {
                    expected: vars.len(),
                    found: term.len(),
                });
            }
            if !support.remove(&term) {
                support.insert(term);
            }
        }
        Ok(Self {
            vars: vars.clone(),
            support,
        })
    }

    pub fn vars(&self) -> &VariableList {
        &self.vars
    }

    pub fn support(&self) -> &BTreeSet<ExponentVector> {
        &self.support
    }

    pub fn terms(&self) -> impl Iterator<Item = &ExponentVector> {
        self.support.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.support.len() == 1
            && self
                .support
                .iter()
                .next()
                .is_some_and(ExponentVector::is_zero)
    }

    /// Number of monomials with coefficient 1.
    pub fn monomial_count(&self) -> usize {
        self.support.len()
    }

    pub fn contains(&self, exponent: &ExponentVector) -> bool {
        self.support.contains(exponent)
    }

    /// The exponent of the only term, if this is a single monomial.
    pub fn as_monomial(&self) -> Option<&ExponentVector> {
        if self.support.len() == 1 {
            self.support.iter().next()
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.vars.check_same(&other.vars)?;
        Ok(Self {
            vars: self.vars.clone(),
            support: self
                .support
                .symmetric_difference(&other.support)
                .cloned()
                .collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.vars.check_same(&other.vars)?;
        let mut acc: HashSet<ExponentVector> = HashSet::new();
        for a in &self.support {
            for b in &other.support {
                let c = a.checked_add(b)?;
                if !acc.remove(&c) {
                    acc.insert(c);
                }
            }
        }
        Ok(Self {
            vars: self.vars.clone(),
            support: acc.into_iter().collect(),
        })
    }

    /// Multiplies by the monomial with the given exponent (a pure shift).
    pub fn shift(&self, exponent: &ExponentVector) -> Result<Self> {
        if exponent.len() != self.vars.len() {
            return Err(LaurentError::ArityMismatch {
                expected: self.vars.len(),
                found: exponent.len(),
            });
        }
        let support = self
            .support
            .iter()
            .map(|a| a.checked_add(exponent))
            .collect::<Result<BTreeSet<_>>>()?;
        Ok(Self {
            vars: self.vars.clone(),
            support,
        })
    }

    /// `self^n` by repeated squaring; `p^0 = 1`.
    pub fn pow(&self, mut n: u64) -> Result<Self> {
        let mut result = Self::one(&self.vars);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Applies a monomial ring homomorphism termwise.
    pub fn substitute(&self, sigma: &MonomialSubstitution) -> Result<Self> {
        self.vars.check_same(&sigma.source)?;
        let terms = self
            .support
            .iter()
            .map(|a| sigma.image_of(a))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(&sigma.target, terms)
    }

    /// Rewrites the support pointwise with `f`, into a polynomial over `vars`.
    /// Colliding images cancel in pairs.
    pub fn map_exponents<F>(&self, vars: &VariableList, mut f: F) -> Result<Self>
    where
        F: FnMut(&ExponentVector) -> Result<ExponentVector>,
    {
        let terms = self
            .support
            .iter()
            .map(&mut f)
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(vars, terms)
    }

    /// Adjoins a fresh variable `s` (appended last) and returns `f + g*s^-1`.
    ///
    /// The support of `self` lands in the hyperplane `{s = 0}` and the support
    /// of `g` in `{s = -1}`, so the two never cancel.
    pub fn extend_with_pinch_variable(&self, g: &Self, name: &str) -> Result<Self> {
        self.vars.check_same(&g.vars)?;
        let vars = self.vars.with_appended(name)?;
        let lift = |a: &ExponentVector, last: i64| {
            let mut v = a.as_slice().to_vec();
            v.push(last);
            ExponentVector(v)
        };
        let terms = self
            .support
            .iter()
            .map(|a| lift(a, 0))
            .chain(g.support.iter().map(|a| lift(a, -1)));
        Self::from_terms(&vars, terms)
    }

    /// Views the polynomial over a larger variable list that starts with the
    /// current variables, padding exponents with zeros.
    pub fn pad_to(&self, vars: &VariableList) -> Result<Self> {
        let k = self.vars.len();
        if vars.len() < k || vars.names()[..k] != self.vars.names()[..] {
            return Err(LaurentError::VariableMismatch {
                left: self.vars.to_string(),
                right: vars.to_string(),
            });
        }
        self.map_exponents(vars, |a| {
            let mut v = a.as_slice().to_vec();
            v.resize(vars.len(), 0);
            Ok(ExponentVector(v))
        })
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.support.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for term in self.support.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let mut wrote = false;
            for (name, &e) in self.vars.names().iter().zip(term.as_slice()) {
                if e == 0 {
                    continue;
                }
                if wrote {
                    f.write_str("*")?;
                }
                wrote = true;
                if e == 1 {
                    f.write_str(name)?;
                } else {
                    write!(f, "{name}^{e}")?;
                }
            }
            if !wrote {
                f.write_str("1")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {:?}", self, self.vars)
    }
}

/// A ring homomorphism sending each source variable to a monomial in the
/// target variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialSubstitution {
    source: VariableList,
    target: VariableList,
    images: Vec<ExponentVector>,
}

impl MonomialSubstitution {
    pub fn new(
        source: &VariableList,
        target: &VariableList,
        images: Vec<ExponentVector>,
    ) -> Result<Self> {
        if images.len() != source.len() {
            return Err(LaurentError::ArityMismatch {
                expected: source.len(),
                found: images.len(),
            });
        }
        if let Some(bad) = images.iter().find(|v| v.len() != target.len()) {
            return Err(LaurentError::ArityMismatch {
                expected: target.len(),
                found: bad.len(),
            });
        }
        Ok(Self {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    /// Builds a substitution from monomial text, one entry per source variable
    /// in order, e.g. `["x*y^-1", "z^-2"]`.
    pub fn from_text(
        source: &VariableList,
        target: &VariableList,
        images: &[&str],
    ) -> Result<Self> {
        let images = images
            .iter()
            .map(|text| {
                let p = parse_poly(text, target)
                    .map_err(|e| LaurentError::InvalidVariables(e.to_string()))?;
                p.as_monomial().cloned().ok_or_else(|| {
                    LaurentError::InvalidVariables(format!("`{text}` is not a single monomial"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, images)
    }

    pub fn source(&self) -> &VariableList {
        &self.source
    }

    pub fn target(&self) -> &VariableList {
        &self.target
    }

    pub fn images(&self) -> &[ExponentVector] {
        &self.images
    }

    /// Image of a single source exponent: `sum_i a_i * image_i`.
    pub fn image_of(&self, a: &ExponentVector) -> Result<ExponentVector> {
        if a.len() != self.source.len() {
            return Err(LaurentError::ArityMismatch {
                expected: self.source.len(),
                found: a.len(),
            });
        }
        let mut out = ExponentVector::zero(self.target.len());
        for (&coeff, image) in a.as_slice().iter().zip(&self.images) {
            if coeff != 0 {
                out = out.checked_add(&image.checked_scale(coeff)?)?;
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> VariableList {
        VariableList::new(["x", "y"]).unwrap()
    }

    fn p(text: &str, vars: &VariableList) -> LaurentPoly {
        parse_poly(text, vars).unwrap()
    }

    #[test]
    fn variable_list_validation() {
        assert!(VariableList::new(Vec::<String>::new()).is_err());
        assert!(VariableList::new(["x", "x"]).is_err());
        assert!(VariableList::new(["x", ""]).is_err());
        assert!(VariableList::new(["1x"]).is_err());
        assert_eq!(VariableList::parse("s9, s11,s12").unwrap().len(), 3);
    }

    #[test]
    fn addition_is_symmetric_difference() {
        let v = xy();
        let a = p("x + y", &v);
        assert!(a.add(&a).unwrap().is_zero());
        assert_eq!(a.add(&p("x", &v)).unwrap(), p("y", &v));
        assert_eq!(
            p("x^2 + y^2", &v).add(&p("x^2 + x", &v)).unwrap(),
            p("y^2 + x", &v)
        );
    }

    #[test]
    fn multiplication_examples() {
        let v = xy();
        let s = p("x + y", &v);
        assert_eq!(s.mul(&s).unwrap(), p("x^2 + y^2", &v));
        assert!(p("x^-1", &v).mul(&p("x", &v)).unwrap().is_one());
        assert_eq!(s.mul(&p("x + 1", &v)).unwrap(), p("x^2 + x*y + x + y", &v));
    }

    #[test]
    fn powers() {
        let v = xy();
        let s = p("x + y", &v);
        assert_eq!(s.pow(2).unwrap(), p("x^2 + y^2", &v));
        assert_eq!(s.pow(1).unwrap(), s);
        assert!(s.pow(0).unwrap().is_one());
        assert_eq!(p("x + y + 1", &v).pow(2).unwrap(), p("x^2 + y^2 + 1", &v));
        assert!(LaurentPoly::zero(&v).pow(0).unwrap().is_one());
        assert!(LaurentPoly::zero(&v).pow(3).unwrap().is_zero());
    }

    #[test]
    fn mismatched_variables_rejected() {
        let a = p("x", &xy());
        let b = p("x", &VariableList::new(["x", "z"]).unwrap());
        assert!(matches!(
            a.add(&b),
            Err(LaurentError::VariableMismatch { .. })
        ));
        assert!(matches!(
            a.mul(&b),
            Err(LaurentError::VariableMismatch { .. })
        ));
    }

    #[test]
    fn overflow_is_detected() {
        let v = VariableList::new(["x"]).unwrap();
        let big = LaurentPoly::monomial(&v, ExponentVector::new(vec![i64::MAX])).unwrap();
        assert_eq!(big.mul(&p("x", &v)), Err(LaurentError::Overflow));
        assert_eq!(big.pow(2), Err(LaurentError::Overflow));
    }

    #[test]
    fn substitution_examples() {
        let tilde = VariableList::new(["xt", "yt"]).unwrap();
        let xyz = VariableList::new(["x", "y", "z"]).unwrap();
        let sigma = MonomialSubstitution::from_text(&tilde, &xyz, &["x*y^-1", "z^-2"]).unwrap();
        assert_eq!(
            p("xt + yt", &tilde).substitute(&sigma).unwrap(),
            p("x*y^-1 + z^-2", &xyz)
        );
        assert_eq!(
            p("xt^2 + yt^2 + xt", &tilde).substitute(&sigma).unwrap(),
            p("x^2*y^-2 + z^-4 + x*y^-1", &xyz)
        );
        assert!(p("x", &xy()).substitute(&sigma).is_err());
    }

    #[test]
    fn substitution_can_cancel() {
        let v = xy();
        let one = VariableList::new(["t"]).unwrap();
        let sigma = MonomialSubstitution::from_text(&v, &one, &["t", "t"]).unwrap();
        assert!(p("x + y", &v).substitute(&sigma).unwrap().is_zero());
    }

    #[test]
    fn monomial_counts() {
        let v = xy();
        assert_eq!(p("x + y", &v).monomial_count(), 2);
        assert_eq!(LaurentPoly::zero(&v).monomial_count(), 0);
    }

    #[test]
    fn pinch_extension() {
        let v = VariableList::new(["x", "y"]).unwrap();
        let f = p("x + y", &v);
        let e = f
            .extend_with_pinch_variable(&LaurentPoly::zero(&v), "s")
            .unwrap();
        let xys = VariableList::new(["x", "y", "s"]).unwrap();
        assert_eq!(e, p("x + y", &xys));
        let e = p("x", &v)
            .extend_with_pinch_variable(&LaurentPoly::one(&v), "s")
            .unwrap();
        assert_eq!(e, p("x + s^-1", &xys));
        let e = f.extend_with_pinch_variable(&p("x^2", &v), "s").unwrap();
        assert_eq!(e, p("x + y + x^2*s^-1", &xys));
        assert_eq!(
            f.extend_with_pinch_variable(&f, "x"),
            Err(LaurentError::NameCollision("x".into()))
        );
    }

    #[test]
    fn render_is_canonical() {
        let v = xy();
        assert_eq!(p("x + x^2*y^-1 + 1", &v).to_string(), "x^2*y^-1 + x + 1");
        assert_eq!(LaurentPoly::zero(&v).to_string(), "0");
    }

    #[test]
    fn padding_keeps_support() {
        let v = xy();
        let w = VariableList::new(["x", "y", "z", "w"]).unwrap();
        let q = p("x^2 + y^2 + x", &v).pad_to(&w).unwrap();
        assert!(q.contains(&ExponentVector::from([2, 0, 0, 0])));
        assert!(p("x", &v)
            .pad_to(&VariableList::new(["y", "x"]).unwrap())
            .is_err());
    }
}
