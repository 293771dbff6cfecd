//! Single-row state matrices and the boundary vectors of the counting
//! formula.
//!
//! For width p there are three 3^p x 3^p matrices, one per right-side
//! letter x in {a, b, c}. Entry (i, j) counts the suitably adjacent
//! p x 1 tilings whose bottom word is the i-th state in abc order, whose
//! top word is the j-th state in cba order, whose right side carries x,
//! and whose left side is c-free; the count is recorded as the monomial
//! z^d with d the number of vertex tiles. The mixed row/column orderings
//! make index r of a column line up with index r of a row after the a/c
//! flip, so products of these matrices chain tilings vertically.
//!
//! The matrices are built by a block recursion on the width: each step
//! prepends one tile on the right side of the row, which multiplies the
//! size by 3 and places the previous-level matrices into a 3 x 3 block
//! pattern. Entries stay monomials with coefficient 1 because the two
//! summands in every block have disjoint row support; the constructors
//! check this and panic on violation.

use std::collections::BTreeMap;

use crate::mosaic::{paired, MosaicTile};
use crate::states::{pow3, BarState, Letter, MAX_STATE_WIDTH};
use crate::Error;

/// Default width budget: 3^12 rows is the practical sparse limit.
pub const DEFAULT_MAX_WIDTH: u32 = 12;

/// Width cap for the tile-chain enumeration oracle.
pub const ORACLE_MAX_WIDTH: u32 = 6;

/// Sparse 3^p x 3^p matrix whose nonzero entries are monomials z^d with
/// coefficient 1. Rows are abc-ordered bottom words (1-based), columns
/// cba-ordered top words (1-based); absent entries are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateMonomialMatrix {
    width: u32,
    /// rows[i0] holds (column offset, degree) pairs sorted by column.
    rows: Vec<Vec<(u32, u32)>>,
}

impl StateMonomialMatrix {
    fn empty(width: u32) -> Self {
        StateMonomialMatrix {
            width,
            rows: vec![Vec::new(); pow3(width) as usize],
        }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    /// Number of rows (and columns), 3^width.
    pub fn size(&self) -> u64 {
        pow3(self.width)
    }

    pub fn nonzero_count(&self) -> u64 {
        self.rows.iter().map(|r| r.len() as u64).sum()
    }

    /// Degree of the monomial at 1-based (abc row, cba column), if nonzero.
    pub fn entry(&self, i: u64, j: u64) -> Option<u32> {
        let row = &self.rows[(i - 1) as usize];
        let j0 = (j - 1) as u32;
        row.binary_search_by_key(&j0, |&(c, _)| c)
            .ok()
            .map(|pos| row[pos].1)
    }

    /// All nonzero entries as 1-based (row, column, degree), row-major.
    pub fn nonzeros(&self) -> impl Iterator<Item = (u64, u64, u32)> + '_ {
        self.rows.iter().enumerate().flat_map(|(i0, row)| {
            row.iter()
                .map(move |&(j0, d)| (i0 as u64 + 1, j0 as u64 + 1, d))
        })
    }

    pub(crate) fn row_entries(&self, i0: usize) -> &[(u32, u32)] {
        &self.rows[i0]
    }

    /// Entrywise sum. Panics if the supports overlap, since that would
    /// produce a coefficient other than 1 and break the representation.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.width, other.width);
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| merge_disjoint(a, b))
            .collect();
        StateMonomialMatrix {
            width: self.width,
            rows,
        }
    }

    /// Debug dump, one sorted line per nonzero: "row column degree".
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (i, j, d) in self.nonzeros() {
            out.push_str(&format!("{i} {j} {d}\n"));
        }
        out
    }
}

fn merge_disjoint(a: &[(u32, u32)], b: &[(u32, u32)]) -> Vec<(u32, u32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut x, mut y) = (a.iter().peekable(), b.iter().peekable());
    loop {
        match (x.peek(), y.peek()) {
            (Some(&&(ca, _)), Some(&&(cb, _))) => {
                assert_ne!(
                    ca, cb,
                    "overlapping supports: entry would have coefficient > 1"
                );
                if ca < cb {
                    out.push(*x.next().unwrap());
                } else {
                    out.push(*y.next().unwrap());
                }
            }
            (Some(_), None) => out.push(*x.next().unwrap()),
            (None, Some(_)) => out.push(*y.next().unwrap()),
            (None, None) => return out,
        }
    }
}

/// The three bar state matrices of one width, keyed by right-side letter.
#[derive(Clone, Debug)]
pub struct BarMatrices {
    pub right_a: StateMonomialMatrix,
    pub right_b: StateMonomialMatrix,
    pub right_c: StateMonomialMatrix,
}

impl BarMatrices {
    pub fn for_right_edge(&self, letter: Letter) -> &StateMonomialMatrix {
        match letter {
            Letter::A => &self.right_a,
            Letter::B => &self.right_b,
            Letter::C => &self.right_c,
        }
    }
}

fn check_width(width: u32, limit: u32) -> Result<(), Error> {
    if width < 1 || width > limit.min(MAX_STATE_WIDTH) {
        return Err(Error::WidthLimit {
            width,
            limit: limit.min(MAX_STATE_WIDTH),
        });
    }
    Ok(())
}

/// Build the three matrices of the given width by the block recursion,
/// under the default width budget.
pub fn build_bar_matrices(width: u32) -> Result<BarMatrices, Error> {
    build_bar_matrices_with_limit(width, DEFAULT_MAX_WIDTH)
}

/// Same as [`build_bar_matrices`] with an explicit width budget override.
pub fn build_bar_matrices_with_limit(width: u32, limit: u32) -> Result<BarMatrices, Error> {
    check_width(width, limit)?;

    // Level 0 seeds: right-a is the 1x1 zero matrix, right-b and right-c
    // are [1] (the empty row extends any chain without adding a tile).
    let mut a = StateMonomialMatrix { width: 0, rows: vec![Vec::new()] };
    let mut b = StateMonomialMatrix { width: 0, rows: vec![vec![(0, 0)]] };
    let mut c = b.clone();

    for level in 0..width {
        let n = pow3(level) as usize;
        let next = |size: usize| StateMonomialMatrix {
            width: level + 1,
            rows: vec![Vec::new(); size],
        };
        let sum = a.add(&b);
        let mut na = next(3 * n);
        let mut nb = next(3 * n);
        let mut nc = next(3 * n);
        let shift = |row: &[(u32, u32)], col_block: usize, extra_degree: u32| -> Vec<(u32, u32)> {
            row.iter()
                .map(|&(j, d)| (j + (col_block * n) as u32, d + extra_degree))
                .collect()
        };
        for i in 0..n {
            // Row block 1 (bottom word leads with a): the new right tile is
            // the vertex tile, shifting the degree by one; top word leads
            // with a (column block 3 in cba order).
            na.rows[i] = shift(&c.rows[i], 2, 1);

            // Row blocks 2 and 3 (leading b / c): the new right tile is
            // c-free on its right side; column blocks 1 and 2 lead with
            // c and b respectively.
            let mut row = shift(&sum.rows[i], 0, 0);
            row.extend(shift(&a.rows[i], 1, 0));
            nb.rows[n + i] = row;

            let mut row = shift(&sum.rows[i], 0, 0);
            row.extend(shift(&sum.rows[i], 1, 0));
            nb.rows[2 * n + i] = row.clone();
            nc.rows[n + i] = row.clone();
            nc.rows[2 * n + i] = row;
        }
        a = na;
        b = nb;
        c = nc;
    }

    Ok(BarMatrices {
        right_a: a,
        right_b: b,
        right_c: c,
    })
}

/// The row-to-row transfer matrix: entrywise sum of the right-a and
/// right-b matrices (right boundary sides must be c-free). Still monomial
/// because the two supports are row-disjoint.
pub fn transfer_matrix(width: u32) -> Result<StateMonomialMatrix, Error> {
    transfer_matrix_with_limit(width, DEFAULT_MAX_WIDTH)
}

pub fn transfer_matrix_with_limit(width: u32, limit: u32) -> Result<StateMonomialMatrix, Error> {
    let matrices = build_bar_matrices_with_limit(width, limit)?;
    Ok(matrices.right_a.add(&matrices.right_b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryKind {
    /// Selects abc-indexed bottom words without letter c.
    Row,
    /// Selects cba-indexed top words without letter c.
    Column,
}

/// 0/1 vector of length 3^m marking the c-free states, built as an m-fold
/// Kronecker power of [1 1 0] (row) or [0 1 1] (column).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryVector {
    kind: BoundaryKind,
    width: u32,
    entries: Vec<u8>,
}

impl BoundaryVector {
    pub fn kind(&self) -> BoundaryKind {
        self.kind
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn len(&self) -> u64 {
        self.entries.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry at a 1-based rank in the vector's own ordering.
    pub fn entry(&self, index: u64) -> u8 {
        self.entries[(index - 1) as usize]
    }

    pub(crate) fn entries(&self) -> &[u8] {
        &self.entries
    }
}

fn kron_power(base: [u8; 3], width: u32) -> Vec<u8> {
    let mut v = vec![1u8];
    for _ in 0..width {
        let mut next = Vec::with_capacity(v.len() * 3);
        for &x in &v {
            for &y in &base {
                next.push(x * y);
            }
        }
        v = next;
    }
    v
}

/// The left factor of the counting formula, indexed by abc rank.
pub fn boundary_row(width: u32) -> BoundaryVector {
    assert!((1..=MAX_STATE_WIDTH).contains(&width));
    BoundaryVector {
        kind: BoundaryKind::Row,
        width,
        entries: kron_power([1, 1, 0], width),
    }
}

/// The right factor of the counting formula, indexed by cba rank.
pub fn boundary_col(width: u32) -> BoundaryVector {
    assert!((1..=MAX_STATE_WIDTH).contains(&width));
    BoundaryVector {
        kind: BoundaryKind::Column,
        width,
        entries: kron_power([0, 1, 1], width),
    }
}

/// Rebuild the three matrices by enumerating width x 1 tile chains
/// directly over the 16 tiles, independent of the block recursion. The
/// left side is restricted to c-free letters; the chain is routed to one
/// of the three matrices by its right side.
pub fn bar_matrix_oracle(width: u32) -> Result<BarMatrices, Error> {
    if !(1..=ORACLE_MAX_WIDTH).contains(&width) {
        return Err(Error::BarOracleWidthLimit {
            width,
            limit: ORACLE_MAX_WIDTH,
        });
    }
    let tiles = MosaicTile::all();
    // (right letter, abc row, cba column) -> degree; duplicate hits would
    // mean a non-monomial entry, which the tile system rules out.
    let mut found: BTreeMap<(Letter, u64, u64), u32> = BTreeMap::new();
    let mut chain: Vec<MosaicTile> = Vec::with_capacity(width as usize);

    fn dfs(
        chain: &mut Vec<MosaicTile>,
        width: u32,
        tiles: &[MosaicTile],
        found: &mut BTreeMap<(Letter, u64, u64), u32>,
    ) {
        if chain.len() == width as usize {
            // Bottom and top words are read rightmost tile first.
            let bottoms: Vec<Letter> = chain.iter().rev().map(|t| t.bottom).collect();
            let tops: Vec<Letter> = chain.iter().rev().map(|t| t.top).collect();
            let i = BarState::from_letters(&bottoms).abc_index();
            let j = BarState::from_letters(&tops).cba_index();
            let right = chain.last().unwrap().right;
            let degree = chain.iter().filter(|&&t| t == MosaicTile::VERTEX).count() as u32;
            let previous = found.insert((right, i, j), degree);
            assert!(
                previous.is_none(),
                "two chains share (right, bottom, top): entry is not a monomial"
            );
            return;
        }
        for &tile in tiles {
            let ok = match chain.last() {
                None => tile.left != Letter::C,
                Some(prev) => tile.left == paired(prev.right),
            };
            if ok {
                chain.push(tile);
                dfs(chain, width, tiles, found);
                chain.pop();
            }
        }
    }

    dfs(&mut chain, width, &tiles, &mut found);

    let mut matrices = BarMatrices {
        right_a: StateMonomialMatrix::empty(width),
        right_b: StateMonomialMatrix::empty(width),
        right_c: StateMonomialMatrix::empty(width),
    };
    for ((right, i, j), degree) in found {
        let target = match right {
            Letter::A => &mut matrices.right_a,
            Letter::B => &mut matrices.right_b,
            Letter::C => &mut matrices.right_c,
        };
        target.rows[(i - 1) as usize].push(((j - 1) as u32, degree));
    }
    for matrix in [
        &mut matrices.right_a,
        &mut matrices.right_b,
        &mut matrices.right_c,
    ] {
        for row in &mut matrix.rows {
            row.sort_unstable_by_key(|&(c, _)| c);
        }
    }
    Ok(matrices)
}
