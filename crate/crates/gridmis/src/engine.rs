//! The counting engine: partition functions and MIS counts by row-vector
//! iteration against the sparse transfer matrix.
//!
//! The full 3^m x 3^m matrix power is never formed. A length-3^m vector
//! starts as the c-free row selector, is multiplied through the transfer
//! matrix once per grid row, and is finally dotted with the c-free column
//! selector. Memory stays at O(3^m) values, which is what makes tall grids
//! (hundreds of rows) cheap.
//!
//! Two value modes share the iteration: exact polynomials in z, and plain
//! big integers for z = 1 where entry degrees are ignored. Both are exact;
//! no fixed-width arithmetic is used anywhere on result paths.

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;

use crate::barmatrix::{self, StateMonomialMatrix};
use crate::poly::CountPolynomial;
use crate::Error;

/// Sizes at or above this use the thread pool for the per-column sums.
const PARALLEL_MIN_SIZE: usize = 6561;

/// The transfer matrix of one width in column-major form, bundled with the
/// boundary selectors, ready for repeated application.
#[derive(Clone, Debug)]
pub struct Transfer {
    width: u32,
    size: usize,
    /// cols[j] holds (row, degree) pairs; multiplication from the left
    /// gathers over these, one output column at a time.
    cols: Vec<Vec<(u32, u32)>>,
    row_boundary: Vec<u8>,
    col_boundary: Vec<u8>,
}

impl Transfer {
    pub fn new(width: u32) -> Result<Self, Error> {
        Self::with_limit(width, barmatrix::DEFAULT_MAX_WIDTH)
    }

    pub fn with_limit(width: u32, limit: u32) -> Result<Self, Error> {
        let matrix = barmatrix::transfer_matrix_with_limit(width, limit)?;
        Ok(Self::from_matrix(&matrix))
    }

    /// Column-major conversion; also usable with a hand-built matrix.
    pub fn from_matrix(matrix: &StateMonomialMatrix) -> Self {
        let width = matrix.width();
        let size = matrix.size() as usize;
        let mut cols: Vec<Vec<(u32, u32)>> = vec![Vec::new(); size];
        for i0 in 0..size {
            for &(j0, d) in matrix.row_entries(i0) {
                cols[j0 as usize].push((i0 as u32, d));
            }
        }
        Transfer {
            width,
            size,
            cols,
            row_boundary: barmatrix::boundary_row(width).entries().to_vec(),
            col_boundary: barmatrix::boundary_col(width).entries().to_vec(),
        }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    /// Fault-injection hook for verification harnesses: appends a spurious
    /// transition that both counting modes pick up, so any downstream
    /// comparison against an oracle must fail.
    pub fn inject_fault(&mut self) {
        let last = self.size - 1;
        self.cols[last].push((0, 0));
        self.cols[last].sort_unstable_by_key(|&(i, _)| i);
    }

    fn step_counts(&self, v: &[BigUint]) -> Vec<BigUint> {
        let column = |j: usize| {
            let mut acc = BigUint::zero();
            for &(i, _) in &self.cols[j] {
                acc += &v[i as usize];
            }
            acc
        };
        if self.size >= PARALLEL_MIN_SIZE {
            (0..self.size)
                .into_par_iter()
                .with_min_len(512)
                .map(column)
                .collect()
        } else {
            (0..self.size).map(column).collect()
        }
    }

    fn step_polys(&self, v: &[CountPolynomial]) -> Vec<CountPolynomial> {
        let column = |j: usize| {
            let mut acc = CountPolynomial::zero();
            for &(i, d) in &self.cols[j] {
                acc.add_shifted(&v[i as usize], d as u64);
            }
            acc
        };
        if self.size >= PARALLEL_MIN_SIZE {
            (0..self.size)
                .into_par_iter()
                .with_min_len(512)
                .map(column)
                .collect()
        } else {
            (0..self.size).map(column).collect()
        }
    }

    fn initial_counts(&self) -> Vec<BigUint> {
        self.row_boundary
            .iter()
            .map(|&b| BigUint::from(b))
            .collect()
    }

    fn final_dot_counts(&self, v: &[BigUint]) -> BigUint {
        let mut sum = BigUint::zero();
        for (x, &keep) in v.iter().zip(&self.col_boundary) {
            if keep == 1 {
                sum += x;
            }
        }
        sum
    }

    /// Exact number of MISs on the width x height grid (z = 1 mode).
    pub fn sigma(&self, height: u32) -> BigUint {
        self.sigma_profile(&[height]).pop().unwrap()
    }

    /// One iteration pass reporting sigma at several heights. Checkpoints
    /// must be ascending and at least 1.
    pub fn sigma_profile(&self, heights: &[u32]) -> Vec<BigUint> {
        assert!(!heights.is_empty() && heights[0] >= 1);
        assert!(heights.windows(2).all(|w| w[0] < w[1]));
        let mut out = Vec::with_capacity(heights.len());
        let mut v = self.initial_counts();
        let mut next = heights.iter().peekable();
        for step in 1..=*heights.last().unwrap() {
            v = self.step_counts(&v);
            if next.peek() == Some(&&step) {
                out.push(self.final_dot_counts(&v));
                next.next();
            }
        }
        out
    }

    /// Exact partition function of the width x height grid.
    pub fn partition(&self, height: u32) -> CountPolynomial {
        assert!(height >= 1);
        let mut v: Vec<CountPolynomial> = self
            .row_boundary
            .iter()
            .map(|&b| {
                if b == 1 {
                    CountPolynomial::unit(0)
                } else {
                    CountPolynomial::zero()
                }
            })
            .collect();
        for _ in 0..height {
            v = self.step_polys(&v);
        }
        let mut sum = CountPolynomial::zero();
        for (p, &keep) in v.iter().zip(&self.col_boundary) {
            if keep == 1 {
                sum.add_assign(p);
            }
        }
        sum
    }
}

/// P(z) for the m x n grid: coefficient of z^t counts the MISs with t
/// vertices.
pub fn partition_function(width: u32, height: u32) -> Result<CountPolynomial, Error> {
    Ok(Transfer::new(width)?.partition(height))
}

/// sigma(m, n): the number of MISs, computed in integer mode.
pub fn count_mis(width: u32, height: u32) -> Result<BigUint, Error> {
    Ok(Transfer::new(width)?.sigma(height))
}

/// Minimum MIS size and the number of MISs attaining it: the low-order
/// term of the partition function.
pub fn min_mis(width: u32, height: u32) -> Result<(u64, BigUint), Error> {
    partition_function(width, height)?.min_term()
}

/// MIS counts for every cell of a table, one transfer matrix per row
/// width. In triangular mode row m covers heights 1..=min(m, max_height),
/// matching the usual presentation with the grid transposed above the
/// diagonal.
pub fn sigma_table(
    max_width: u32,
    max_height: u32,
    triangular: bool,
) -> Result<Vec<Vec<BigUint>>, Error> {
    assert!(max_width >= 1 && max_height >= 1);
    let mut table = Vec::with_capacity(max_width as usize);
    for m in 1..=max_width {
        let hi = if triangular {
            m.min(max_height)
        } else {
            max_height
        };
        let heights: Vec<u32> = (1..=hi).collect();
        table.push(Transfer::new(m)?.sigma_profile(&heights));
    }
    Ok(table)
}

/// Partition functions for every cell of a table; same layout as
/// [`sigma_table`].
pub fn partition_table(
    max_width: u32,
    max_height: u32,
    triangular: bool,
) -> Result<Vec<Vec<CountPolynomial>>, Error> {
    assert!(max_width >= 1 && max_height >= 1);
    let mut table = Vec::with_capacity(max_width as usize);
    for m in 1..=max_width {
        let transfer = Transfer::new(m)?;
        let hi = if triangular {
            m.min(max_height)
        } else {
            max_height
        };
        let mut row = Vec::with_capacity(hi as usize);
        for n in 1..=hi {
            row.push(transfer.partition(n));
        }
        table.push(row);
    }
    Ok(table)
}

/// Number of decimal digits of a nonnegative integer (1 for zero).
pub fn digit_count(x: &BigUint) -> usize {
    x.to_string().len()
}

/// Leading decimal digits and power-of-ten exponent, by truncation of the
/// exact decimal expansion: 2093273... with 5 digits gives ("2.0932", 302).
pub fn leading_digits(x: &BigUint, digits: usize) -> (String, i64) {
    assert!(digits >= 1);
    let s = x.to_string();
    let exponent = s.len() as i64 - 1;
    let mut mantissa: String = s.chars().take(digits).collect();
    while mantissa.len() < digits {
        mantissa.push('0');
    }
    if digits > 1 {
        mantissa.insert(1, '.');
    }
    (mantissa, exponent)
}

/// Scientific form with the given number of significant digits, e.g.
/// "2.0932e302".
pub fn sci_string(x: &BigUint, digits: usize) -> String {
    let (mantissa, exponent) = leading_digits(x, digits);
    format!("{mantissa}e{exponent}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mosaic::brute_force_partition;

    #[test]
    fn unit_grid_partition() {
        assert_eq!(partition_function(1, 1).unwrap(), CountPolynomial::unit(1));
    }

    #[test]
    fn small_partitions_match_oracle_examples() {
        assert_eq!(
            partition_function(2, 2).unwrap(),
            CountPolynomial::monomial(2, 2u32.into())
        );
        assert_eq!(
            partition_function(3, 1).unwrap(),
            CountPolynomial::unit(1).add(&CountPolynomial::unit(2))
        );
    }

    #[test]
    fn counts_match_published_values() {
        assert_eq!(count_mis(3, 3).unwrap(), 10u32.into());
        assert_eq!(count_mis(5, 5).unwrap(), 358u32.into());
        assert_eq!(count_mis(10, 8).unwrap(), 106972582u64.into());
    }

    #[test]
    fn min_mis_examples() {
        assert_eq!(min_mis(1, 1).unwrap(), (1, 1u32.into()));
        assert_eq!(min_mis(2, 2).unwrap(), (2, 2u32.into()));
        let (size, count) = min_mis(3, 3).unwrap();
        let oracle = brute_force_partition(3, 3).unwrap();
        assert_eq!((size, count), oracle.min_term().unwrap());
        assert_eq!(size, 3);
    }

    #[test]
    fn sigma_profile_matches_individual_runs() {
        let transfer = Transfer::new(3).unwrap();
        let profile = transfer.sigma_profile(&[1, 2, 5]);
        assert_eq!(profile[0], transfer.sigma(1));
        assert_eq!(profile[1], transfer.sigma(2));
        assert_eq!(profile[2], transfer.sigma(5));
    }

    #[test]
    fn triangular_table_layout() {
        let table = sigma_table(2, 2, true).unwrap();
        assert_eq!(table.len(), 2);
        assert_eq!(table[0], vec![BigUint::from(1u32)]);
        assert_eq!(table[1], vec![BigUint::from(2u32), BigUint::from(2u32)]);

        let row4 = &sigma_table(4, 4, true).unwrap()[3];
        let expected: Vec<BigUint> = [3u32, 6, 18, 42].iter().map(|&x| x.into()).collect();
        assert_eq!(row4, &expected);
    }

    #[test]
    fn poly_table_unit_cell() {
        let table = partition_table(1, 1, true).unwrap();
        assert_eq!(table, vec![vec![CountPolynomial::unit(1)]]);
    }

    #[test]
    fn count_equals_partition_at_one() {
        for m in 1..=6 {
            let transfer = Transfer::new(m).unwrap();
            for n in 1..=6 {
                assert_eq!(
                    transfer.partition(n).eval_one(),
                    transfer.sigma(n),
                    "disagreement at {m}x{n}"
                );
            }
        }
    }

    #[test]
    fn injected_fault_changes_results() {
        let mut transfer = Transfer::new(1).unwrap();
        let clean = transfer.partition(1);
        transfer.inject_fault();
        assert_ne!(transfer.partition(1), clean);
        assert_ne!(transfer.sigma(1), clean.eval_one());
    }

    #[test]
    fn digit_helpers() {
        let x = BigUint::from(2093273u64);
        assert_eq!(digit_count(&x), 7);
        assert_eq!(leading_digits(&x, 5), ("2.0932".into(), 6));
        assert_eq!(sci_string(&x, 5), "2.0932e6");
        assert_eq!(leading_digits(&BigUint::from(5u32), 3), ("5.00".into(), 0));
        assert_eq!(sci_string(&BigUint::from(1u32), 5), "1.0000e0");
    }
}
