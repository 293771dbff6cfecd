//! Univariate counting polynomials with arbitrary-precision coefficients.
//!
//! A `CountPolynomial` is a sparse map from degree to a nonnegative big
//! integer coefficient. Degree t carries the number of configurations with
//! t selected vertices, so coefficients are never negative and the
//! indeterminate is only ever evaluated at 1 or shifted by a monomial.
//!
//! Invariants:
//! - no stored coefficient is zero (canonical sparse form)
//! - iteration order is ascending degree (`BTreeMap`)

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::Error;

/// Sparse polynomial with nonnegative integer coefficients, degree-indexed.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CountPolynomial {
    terms: BTreeMap<u64, BigUint>,
}

impl CountPolynomial {
    /// The zero polynomial (empty term map).
    pub fn zero() -> Self {
        Self::default()
    }

    /// Single term `c * z^d`; collapses to zero when `c` is zero.
    pub fn monomial(degree: u64, coeff: BigUint) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(degree, coeff);
        }
        Self { terms }
    }

    /// `z^d` with unit coefficient.
    pub fn unit(degree: u64) -> Self {
        Self::monomial(degree, BigUint::from(1u32))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (nonzero) terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient at `degree`, zero if absent.
    pub fn coeff(&self, degree: u64) -> BigUint {
        self.terms.get(&degree).cloned().unwrap_or_else(BigUint::zero)
    }

    /// Terms in ascending degree order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigUint)> {
        self.terms.iter().map(|(&d, c)| (d, c))
    }

    /// Add `c * z^d` in place.
    pub fn add_term(&mut self, degree: u64, coeff: &BigUint) {
        if coeff.is_zero() {
            return;
        }
        *self.terms.entry(degree).or_insert_with(BigUint::zero) += coeff;
    }

    /// Coefficient-wise sum.
    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (d, c) in other.terms() {
            self.add_term(d, c);
        }
    }

    /// Add `other * c * z^d` in place; the one product the vector
    /// iteration needs (matrix entries are monomials).
    pub fn add_shifted(&mut self, other: &Self, degree: u64) {
        for (d, c) in other.terms() {
            self.add_term(d + degree, c);
        }
    }

    /// Multiply by the monomial `c * z^d`: every term (t, k) becomes (t+d, c*k).
    pub fn mul_monomial(&self, coeff: &BigUint, degree: u64) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(&d, c)| (d + degree, c * coeff))
            .collect();
        Self { terms }
    }

    /// Evaluate at z = 1: the sum of all coefficients.
    pub fn eval_one(&self) -> BigUint {
        let mut sum = BigUint::zero();
        for c in self.terms.values() {
            sum += c;
        }
        sum
    }

    /// Lowest-degree term `(degree, coefficient)`.
    ///
    /// The zero polynomial has no minimum term; for partition functions
    /// that would mean no maximal independent set exists, which signals an
    /// internal inconsistency upstream.
    pub fn min_term(&self) -> Result<(u64, BigUint), Error> {
        self.terms
            .iter()
            .next()
            .map(|(&d, c)| (d, c.clone()))
            .ok_or(Error::ZeroPolynomial)
    }

    /// Highest-degree term `(degree, coefficient)`.
    pub fn max_term(&self) -> Result<(u64, BigUint), Error> {
        self.terms
            .iter()
            .next_back()
            .map(|(&d, c)| (d, c.clone()))
            .ok_or(Error::ZeroPolynomial)
    }

    /// JSON form: array of `[degree, "coefficient"]` pairs, ascending degree.
    /// Coefficients are decimal strings since they exceed any fixed-width
    /// numeric type.
    pub fn to_json(&self) -> String {
        let arr: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(&d, c)| serde_json::json!([d, c.to_string()]))
            .collect();
        serde_json::Value::Array(arr).to_string()
    }

    /// Parse the `to_json` format back into canonical form.
    pub fn from_json(text: &str) -> Result<Self, Error> {
        let value: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| Error::PolyFormat(format!("invalid JSON: {e}")))?;
        let arr = value
            .as_array()
            .ok_or_else(|| Error::PolyFormat("expected a JSON array".into()))?;
        let mut out = Self::zero();
        for pair in arr {
            let pair = pair
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| Error::PolyFormat("expected [degree, coeff] pairs".into()))?;
            let degree = pair[0]
                .as_u64()
                .ok_or_else(|| Error::PolyFormat("degree must be a nonnegative integer".into()))?;
            let coeff_str = pair[1]
                .as_str()
                .ok_or_else(|| Error::PolyFormat("coefficient must be a decimal string".into()))?;
            let coeff: BigUint = coeff_str
                .parse()
                .map_err(|_| Error::PolyFormat(format!("bad coefficient {coeff_str:?}")))?;
            if coeff.is_zero() {
                return Err(Error::PolyFormat("zero coefficient is not canonical".into()));
            }
            if out.terms.insert(degree, coeff).is_some() {
                return Err(Error::PolyFormat(format!("duplicate degree {degree}")));
            }
        }
        Ok(out)
    }
}

impl fmt::Display for CountPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (d, c)) in self.terms().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            match (d, c.to_string().as_str()) {
                (0, s) => write!(f, "{s}")?,
                (1, "1") => write!(f, "z")?,
                (1, s) => write!(f, "{s}z")?,
                (d, "1") => write!(f, "z^{d}")?,
                (d, s) => write!(f, "{s}z^{d}")?,
            }
        }
        Ok(())
    }
}
