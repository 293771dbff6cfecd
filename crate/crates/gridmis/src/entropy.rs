//! Growth-rate estimates for the number of MISs per site.
//!
//! sigma grows like kappa^(mn) for a constant kappa; the supremum form
//! uses the (m+1)(n+1)-th root, which is what the joining construction
//! below makes monotone, so both roots are reported. Roots of 300-digit
//! integers are computed through an exact fixed-point base-2 logarithm
//! rather than a float conversion of sigma itself.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::engine::{self, Transfer};
use crate::mosaic::{mis_to_mosaic, mosaic_to_mis, Mosaic, VertexSet};
use crate::Error;

/// Fixed-point fraction bits used for the big-integer logarithm; well past
/// f64 resolution, so doubling it cannot move the reported roots.
pub const DEFAULT_LOG_PRECISION_BITS: u32 = 128;

/// base-2 logarithm of a positive big integer, computed bit by bit in
/// fixed point with `frac_bits` fractional bits before the final float
/// conversion.
pub fn log2_big(x: &BigUint, frac_bits: u32) -> f64 {
    assert!(!x.is_zero(), "log2 of zero");
    assert!(frac_bits >= 8);
    let int_part = x.bits() - 1;
    // Mantissa in [1, 2) carried with frac_bits fractional bits; squaring
    // shifts the next output bit into the integer position.
    let mut y: BigUint = (x << frac_bits) >> int_part;
    let two = BigUint::one() << (frac_bits + 1);
    let mut frac = 0.0f64;
    let mut scale = 0.5f64;
    for _ in 0..64.min(frac_bits) {
        y = (&y * &y) >> frac_bits;
        if y >= two {
            y >>= 1;
            frac += scale;
        }
        scale *= 0.5;
    }
    int_part as f64 + frac
}

/// sigma together with its per-site growth roots.
#[derive(Clone, Debug)]
pub struct EntropyEstimate {
    pub width: u32,
    pub height: u32,
    pub sigma: BigUint,
    /// sigma^(1 / (m n))
    pub root_mn: f64,
    /// sigma^(1 / ((m+1)(n+1))), the supremum form
    pub root_sup: f64,
}

impl EntropyEstimate {
    pub fn from_sigma(width: u32, height: u32, sigma: BigUint) -> Self {
        Self::from_sigma_with_precision(width, height, sigma, DEFAULT_LOG_PRECISION_BITS)
    }

    pub fn from_sigma_with_precision(
        width: u32,
        height: u32,
        sigma: BigUint,
        frac_bits: u32,
    ) -> Self {
        let log2 = log2_big(&sigma, frac_bits);
        let mn = (width as f64) * (height as f64);
        let sup_sites = (width as f64 + 1.0) * (height as f64 + 1.0);
        let estimate = EntropyEstimate {
            width,
            height,
            sigma,
            root_mn: (log2 / mn).exp2(),
            root_sup: (log2 / sup_sites).exp2(),
        };
        debug_assert!(1.0 <= estimate.root_sup && estimate.root_sup <= estimate.root_mn);
        debug_assert!(estimate.root_sup <= 16.0);
        estimate
    }

    /// CSV row: width, height, digits, leading 6 digits of sigma,
    /// power-of-ten exponent, both roots at 12 decimals.
    pub fn csv_row(&self) -> String {
        let (mantissa, exponent) = engine::leading_digits(&self.sigma, 6);
        format!(
            "{},{},{},{},{},{:.12},{:.12}",
            self.width,
            self.height,
            engine::digit_count(&self.sigma),
            mantissa,
            exponent,
            self.root_mn,
            self.root_sup
        )
    }
}

/// Exact sigma plus both roots for one grid.
pub fn entropy_estimate(width: u32, height: u32) -> Result<EntropyEstimate, Error> {
    let sigma = engine::count_mis(width, height)?;
    Ok(EntropyEstimate::from_sigma(width, height, sigma))
}

/// sigma(m1 x n) * sigma(m2 x n) <= sigma((m1+m2+1) x n), exactly.
pub fn fekete_check_width(m1: u32, m2: u32, height: u32) -> Result<bool, Error> {
    let left = engine::count_mis(m1, height)? * engine::count_mis(m2, height)?;
    Ok(left <= engine::count_mis(m1 + m2 + 1, height)?)
}

/// sigma(m x n1) * sigma(m x n2) <= sigma(m x (n1+n2+1)), exactly.
pub fn fekete_check_height(width: u32, n1: u32, n2: u32) -> Result<bool, Error> {
    let transfer = Transfer::new(width)?;
    let left = transfer.sigma(n1) * transfer.sigma(n2);
    Ok(left <= transfer.sigma(n1 + n2 + 1))
}

/// Join two equal-height MIS tilings into one of combined width plus one:
/// the inputs are kept verbatim and the inserted middle column is
/// completed bottom-to-top, selecting a vertex exactly when neither
/// horizontal neighbor is selected and the vertex below was not just
/// selected. The result restricted to the outer blocks recovers the
/// inputs, which makes the join injective.
pub fn join_mosaics(left: &Mosaic, right: &Mosaic) -> Result<Mosaic, Error> {
    if left.height() != right.height() {
        return Err(Error::HeightMismatch {
            left: left.height(),
            right: right.height(),
        });
    }
    let left_set = mosaic_to_mis(left)?;
    let right_set = mosaic_to_mis(right)?;
    left_set.check_mis()?;
    right_set.check_mis()?;

    let (m1, m2, n) = (left.width(), right.width(), left.height());
    let mid = m1 + 1;
    let mut joined = VertexSet::empty(m1 + m2 + 1, n);
    for j in 1..=n {
        for i in 1..=m1 {
            if left_set.contains(i, j) {
                joined.insert(i, j);
            }
        }
        for i in 1..=m2 {
            if right_set.contains(i, j) {
                joined.insert(mid + i, j);
            }
        }
    }
    for j in 1..=n {
        let left_in = joined.contains(mid - 1, j);
        let right_in = joined.contains(mid + 1, j);
        let below_in = j > 1 && joined.contains(mid, j - 1);
        if !left_in && !right_in && !below_in {
            joined.insert(mid, j);
        }
    }
    for j in 1..=n {
        assert!(
            joined.contains(mid, j) || joined.selected_neighbors(mid, j) > 0,
            "middle-column completion left ({mid}, {j}) undominated"
        );
    }
    joined
        .check_mis()
        .expect("joined vertex set must be a MIS");
    mis_to_mosaic(&joined)
}

/// Entropy estimates for one width over an ascending height schedule,
/// computed in a single iteration pass.
pub fn kappa_convergence_report(
    width: u32,
    heights: &[u32],
) -> Result<Vec<EntropyEstimate>, Error> {
    kappa_convergence_report_with_limit(width, heights, crate::barmatrix::DEFAULT_MAX_WIDTH)
}

pub fn kappa_convergence_report_with_limit(
    width: u32,
    heights: &[u32],
    limit: u32,
) -> Result<Vec<EntropyEstimate>, Error> {
    let transfer = Transfer::with_limit(width, limit)?;
    let sigmas = transfer.sigma_profile(heights);
    Ok(heights
        .iter()
        .zip(sigmas)
        .map(|(&n, sigma)| EntropyEstimate::from_sigma(width, n, sigma))
        .collect())
}
