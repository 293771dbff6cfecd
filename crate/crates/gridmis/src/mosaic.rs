//! The tile system for maximal independent sets, plus the brute-force
//! enumeration oracle the matrix engine is verified against.
//!
//! A grid MIS is encoded as an m x n array of unit tiles whose four sides
//! carry letters a, b, c. The tile with four a-sides marks a selected
//! vertex; the other fifteen tiles carry only b and c (four b's excluded)
//! and mark unselected vertices, with c pointing at each selected neighbor.
//! Two rules pin the encoding down:
//!
//! - adjacency: sides shared by neighboring tiles pair as a/c or b/b
//! - boundary: no outer side is labeled c
//!
//! Under these rules MISs correspond one-to-one with valid tilings, and the
//! number of selected vertices equals the number of all-a tiles.
//!
//! Coordinates are (column i, row j), 1-based, column 1 leftmost, row 1 at
//! the bottom. Text formats print the top row first.

use std::fmt;
use std::str::FromStr;

use crate::poly::CountPolynomial;
use crate::states::{BarState, Letter};
use crate::{Cell, Error};

/// Cell cap for the brute-force enumeration paths.
pub const ORACLE_MAX_CELLS: u64 = 24;

/// Cell cap below which the plain subset scan is used instead of
/// column-by-column backtracking.
const SUBSET_SCAN_MAX_CELLS: u64 = 20;

/// A unit tile with labeled sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MosaicTile {
    pub left: Letter,
    pub bottom: Letter,
    pub right: Letter,
    pub top: Letter,
}

impl MosaicTile {
    /// The all-a tile marking a selected vertex.
    pub const VERTEX: MosaicTile = MosaicTile {
        left: Letter::A,
        bottom: Letter::A,
        right: Letter::A,
        top: Letter::A,
    };

    pub fn new(left: Letter, bottom: Letter, right: Letter, top: Letter) -> Self {
        MosaicTile {
            left,
            bottom,
            right,
            top,
        }
    }

    /// A tile is valid iff it is the all-a vertex tile, or all four sides
    /// are b/c but not all four b.
    pub fn is_valid(&self) -> bool {
        let sides = [self.left, self.bottom, self.right, self.top];
        if sides.iter().all(|&s| s == Letter::A) {
            return true;
        }
        sides.iter().all(|&s| s == Letter::B || s == Letter::C)
            && !sides.iter().all(|&s| s == Letter::B)
    }

    /// All 16 valid tiles: the vertex tile first, then the b/c tiles in
    /// (left, bottom, right, top) lexicographic order.
    pub fn all() -> Vec<MosaicTile> {
        let mut tiles = vec![MosaicTile::VERTEX];
        let bc = [Letter::B, Letter::C];
        for &l in &bc {
            for &b in &bc {
                for &r in &bc {
                    for &t in &bc {
                        let tile = MosaicTile::new(l, b, r, t);
                        if tile.is_valid() {
                            tiles.push(tile);
                        }
                    }
                }
            }
        }
        tiles
    }
}

impl fmt::Display for MosaicTile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}.{}.{}", self.left, self.bottom, self.right, self.top)
    }
}

/// The letter the far side of a shared edge must carry: a pairs with c and
/// b pairs with b.
pub fn paired(letter: Letter) -> Letter {
    match letter {
        Letter::A => Letter::C,
        Letter::B => Letter::B,
        Letter::C => Letter::A,
    }
}

/// Outcome of the two validity rules, reported independently.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Validity {
    pub suitably_adjacent: bool,
    pub boundary_ok: bool,
}

/// An m x n array of tiles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mosaic {
    width: u32,
    height: u32,
    tiles: Vec<MosaicTile>,
}

impl Mosaic {
    pub fn new(width: u32, height: u32, tiles: Vec<MosaicTile>) -> Self {
        assert_eq!(tiles.len() as u64, width as u64 * height as u64);
        Mosaic {
            width,
            height,
            tiles,
        }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    fn idx(&self, i: u32, j: u32) -> usize {
        debug_assert!(i >= 1 && i <= self.width && j >= 1 && j <= self.height);
        ((j - 1) * self.width + (i - 1)) as usize
    }

    pub fn tile(&self, i: u32, j: u32) -> MosaicTile {
        self.tiles[self.idx(i, j)]
    }

    /// Number of vertex tiles; equals the size of the encoded vertex set.
    pub fn vertex_tile_count(&self) -> u64 {
        self.tiles
            .iter()
            .filter(|&&t| t == MosaicTile::VERTEX)
            .count() as u64
    }

    /// Bottom-side word, rightmost column first.
    pub fn bottom_state(&self) -> BarState {
        let letters: Vec<Letter> = (1..=self.width)
            .rev()
            .map(|i| self.tile(i, 1).bottom)
            .collect();
        BarState::from_letters(&letters)
    }

    /// Top-side word, rightmost column first.
    pub fn top_state(&self) -> BarState {
        let letters: Vec<Letter> = (1..=self.width)
            .rev()
            .map(|i| self.tile(i, self.height).top)
            .collect();
        BarState::from_letters(&letters)
    }

    /// Left-side word, topmost row first.
    pub fn left_state(&self) -> BarState {
        let letters: Vec<Letter> = (1..=self.height)
            .rev()
            .map(|j| self.tile(1, j).left)
            .collect();
        BarState::from_letters(&letters)
    }

    /// Right-side word, topmost row first.
    pub fn right_state(&self) -> BarState {
        let letters: Vec<Letter> = (1..=self.height)
            .rev()
            .map(|j| self.tile(self.width, j).right)
            .collect();
        BarState::from_letters(&letters)
    }

    /// Check both rules and report each independently.
    pub fn validate(&self) -> Validity {
        Validity {
            suitably_adjacent: self.first_adjacency_violation().is_none(),
            boundary_ok: self.first_boundary_violation().is_none(),
        }
    }

    fn first_adjacency_violation(&self) -> Option<(Cell, Cell)> {
        for j in 1..=self.height {
            for i in 1..=self.width {
                let tile = self.tile(i, j);
                if i < self.width && self.tile(i + 1, j).left != paired(tile.right) {
                    return Some(((i, j), (i + 1, j)));
                }
                if j < self.height && self.tile(i, j + 1).bottom != paired(tile.top) {
                    return Some(((i, j), (i, j + 1)));
                }
            }
        }
        None
    }

    fn first_boundary_violation(&self) -> Option<Cell> {
        for j in 1..=self.height {
            for i in 1..=self.width {
                let tile = self.tile(i, j);
                let bad = (i == 1 && tile.left == Letter::C)
                    || (i == self.width && tile.right == Letter::C)
                    || (j == 1 && tile.bottom == Letter::C)
                    || (j == self.height && tile.top == Letter::C);
                if bad {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// First rule violation in scan order, if any.
    pub fn first_violation(&self) -> Option<Error> {
        if let Some(between) = self.first_adjacency_violation() {
            return Some(Error::MosaicAdjacency { between });
        }
        self.first_boundary_violation()
            .map(|at| Error::MosaicBoundary { at })
    }
}

impl fmt::Display for Mosaic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in (1..=self.height).rev() {
            for i in 1..=self.width {
                if i > 1 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.tile(i, j))?;
            }
            if j > 1 {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Mosaic {
    type Err = Error;

    /// Parse the text format: one line per row (top row first), each line
    /// holding width tokens `l.b.r.t`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let lines: Vec<&str> = s.lines().filter(|l| !l.trim().is_empty()).collect();
        if lines.is_empty() {
            return Err(Error::TextFormat {
                line: 1,
                col: 1,
                msg: "empty mosaic".into(),
            });
        }
        let height = lines.len() as u32;
        let mut width = 0u32;
        let mut rows: Vec<Vec<MosaicTile>> = Vec::new();
        for (li, line) in lines.iter().enumerate() {
            let mut row = Vec::new();
            for (ti, token) in line.split_whitespace().enumerate() {
                row.push(parse_tile(token, li + 1, ti + 1)?);
            }
            if li == 0 {
                width = row.len() as u32;
            } else if row.len() as u32 != width {
                return Err(Error::TextFormat {
                    line: li + 1,
                    col: 1,
                    msg: format!("expected {width} tiles, found {}", row.len()),
                });
            }
            rows.push(row);
        }
        // Rows arrive top first; storage is bottom first.
        let mut tiles = Vec::with_capacity((width * height) as usize);
        for row in rows.into_iter().rev() {
            tiles.extend(row);
        }
        Ok(Mosaic::new(width, height, tiles))
    }
}

fn parse_tile(token: &str, line: usize, col: usize) -> Result<MosaicTile, Error> {
    let parts: Vec<&str> = token.split('.').collect();
    let err = |msg: String| Error::TextFormat { line, col, msg };
    if parts.len() != 4 {
        return Err(err(format!("tile token {token:?} is not of the form l.b.r.t")));
    }
    let mut letters = [Letter::A; 4];
    for (k, part) in parts.iter().enumerate() {
        let mut chars = part.chars();
        let (ch, rest) = (chars.next(), chars.next());
        match (ch, rest) {
            (Some(c), None) => {
                letters[k] = Letter::from_char(c)
                    .ok_or_else(|| err(format!("invalid edge letter {c:?} in {token:?}")))?;
            }
            _ => return Err(err(format!("invalid edge label {part:?} in {token:?}"))),
        }
    }
    let tile = MosaicTile::new(letters[0], letters[1], letters[2], letters[3]);
    if !tile.is_valid() {
        return Err(err(format!("{token:?} is not one of the 16 valid tiles")));
    }
    Ok(tile)
}

/// A subset of grid vertices, not necessarily independent or maximal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSet {
    width: u32,
    height: u32,
    membership: Vec<bool>,
}

impl VertexSet {
    pub fn empty(width: u32, height: u32) -> Self {
        assert!(width >= 1 && height >= 1);
        VertexSet {
            width,
            height,
            membership: vec![false; (width as u64 * height as u64) as usize],
        }
    }

    pub fn from_members(width: u32, height: u32, members: &[Cell]) -> Self {
        let mut set = Self::empty(width, height);
        for &(i, j) in members {
            set.insert(i, j);
        }
        set
    }

    /// Rebuild from a bitmap with bit (j-1)*width + (i-1) per vertex.
    pub fn from_bitmap(width: u32, height: u32, bitmap: u64) -> Self {
        let cells = width as u64 * height as u64;
        assert!(cells <= 64);
        let mut set = Self::empty(width, height);
        for b in 0..cells {
            if bitmap >> b & 1 == 1 {
                set.membership[b as usize] = true;
            }
        }
        set
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    fn idx(&self, i: u32, j: u32) -> usize {
        debug_assert!(i >= 1 && i <= self.width && j >= 1 && j <= self.height);
        ((j - 1) * self.width + (i - 1)) as usize
    }

    pub fn contains(&self, i: u32, j: u32) -> bool {
        self.membership[self.idx(i, j)]
    }

    pub fn insert(&mut self, i: u32, j: u32) {
        let idx = self.idx(i, j);
        self.membership[idx] = true;
    }

    pub fn len(&self) -> u64 {
        self.membership.iter().filter(|&&b| b).count() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.membership.iter().all(|&b| !b)
    }

    /// Membership bitmap; only defined up to 64 cells.
    pub fn bitmap(&self) -> u64 {
        assert!(self.membership.len() <= 64);
        let mut out = 0u64;
        for (b, &member) in self.membership.iter().enumerate() {
            if member {
                out |= 1 << b;
            }
        }
        out
    }

    fn neighbors(&self, i: u32, j: u32) -> impl Iterator<Item = Cell> + '_ {
        let (w, h) = (self.width, self.height);
        [
            (i > 1).then(|| (i - 1, j)),
            (i < w).then(|| (i + 1, j)),
            (j > 1).then(|| (i, j - 1)),
            (j < h).then(|| (i, j + 1)),
        ]
        .into_iter()
        .flatten()
    }

    /// Number of selected neighbors of (i, j).
    pub fn selected_neighbors(&self, i: u32, j: u32) -> u8 {
        self.neighbors(i, j).filter(|&(x, y)| self.contains(x, y)).count() as u8
    }

    /// True iff the set is independent and maximal (equivalently, an
    /// independent dominating set).
    pub fn is_mis(&self) -> bool {
        self.check_mis().is_ok()
    }

    /// Like `is_mis` but names the violated condition and a witness vertex.
    pub fn check_mis(&self) -> Result<(), Error> {
        for j in 1..=self.height {
            for i in 1..=self.width {
                if self.contains(i, j) && self.selected_neighbors(i, j) > 0 {
                    return Err(Error::NotIndependent { at: (i, j) });
                }
            }
        }
        for j in 1..=self.height {
            for i in 1..=self.width {
                if !self.contains(i, j) && self.selected_neighbors(i, j) == 0 {
                    return Err(Error::NotDominated { at: (i, j) });
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in (1..=self.height).rev() {
            for i in 1..=self.width {
                write!(f, "{}", if self.contains(i, j) { '1' } else { '0' })?;
            }
            if j > 1 {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

impl FromStr for VertexSet {
    type Err = Error;

    /// Parse the text format: one line of 0/1 per row, top row first.
    fn from_str(s: &str) -> Result<Self, Error> {
        let lines: Vec<&str> = s.lines().filter(|l| !l.trim().is_empty()).collect();
        if lines.is_empty() {
            return Err(Error::TextFormat {
                line: 1,
                col: 1,
                msg: "empty vertex set".into(),
            });
        }
        let height = lines.len() as u32;
        let width = lines[0].trim().len() as u32;
        let mut set = VertexSet::empty(width.max(1), height);
        for (li, line) in lines.iter().enumerate() {
            let line = line.trim();
            if line.len() as u32 != width || width == 0 {
                return Err(Error::TextFormat {
                    line: li + 1,
                    col: 1,
                    msg: format!("expected {width} characters, found {}", line.len()),
                });
            }
            let j = height - li as u32;
            for (ci, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => set.insert(ci as u32 + 1, j),
                    _ => {
                        return Err(Error::TextFormat {
                            line: li + 1,
                            col: ci + 1,
                            msg: format!("expected 0 or 1, found {ch:?}"),
                        })
                    }
                }
            }
        }
        Ok(set)
    }
}

/// Per-vertex counts of selected neighbors; 0 exactly on the selected
/// vertices, 1..=4 elsewhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitArray {
    width: u32,
    height: u32,
    digits: Vec<u8>,
}

impl DigitArray {
    pub fn digit(&self, i: u32, j: u32) -> u8 {
        self.digits[((j - 1) * self.width + (i - 1)) as usize]
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }
}

impl fmt::Display for DigitArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in (1..=self.height).rev() {
            for i in 1..=self.width {
                write!(f, "{}", self.digit(i, j))?;
            }
            if j > 1 {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// Encode a MIS as a tiling: the vertex tile on selected vertices; on the
/// rest, each side carries c toward a selected neighbor and b otherwise
/// (boundary sides get b).
pub fn mis_to_mosaic(set: &VertexSet) -> Result<Mosaic, Error> {
    set.check_mis()?;
    let (w, h) = (set.width(), set.height());
    let mut tiles = Vec::with_capacity((w as u64 * h as u64) as usize);
    for j in 1..=h {
        for i in 1..=w {
            if set.contains(i, j) {
                tiles.push(MosaicTile::VERTEX);
            } else {
                let side = |x: i64, y: i64| -> Letter {
                    let in_grid = x >= 1 && x <= w as i64 && y >= 1 && y <= h as i64;
                    if in_grid && set.contains(x as u32, y as u32) {
                        Letter::C
                    } else {
                        Letter::B
                    }
                };
                let (i, j) = (i as i64, j as i64);
                tiles.push(MosaicTile::new(
                    side(i - 1, j),
                    side(i, j - 1),
                    side(i + 1, j),
                    side(i, j + 1),
                ));
            }
        }
    }
    let mosaic = Mosaic::new(w, h, tiles);
    debug_assert_eq!(
        mosaic.validate(),
        Validity {
            suitably_adjacent: true,
            boundary_ok: true
        }
    );
    Ok(mosaic)
}

/// Decode a valid tiling back to its vertex set (vertex-tile positions).
pub fn mosaic_to_mis(mosaic: &Mosaic) -> Result<VertexSet, Error> {
    if let Some(err) = mosaic.first_violation() {
        return Err(err);
    }
    let mut set = VertexSet::empty(mosaic.width(), mosaic.height());
    for j in 1..=mosaic.height() {
        for i in 1..=mosaic.width() {
            if mosaic.tile(i, j) == MosaicTile::VERTEX {
                set.insert(i, j);
            }
        }
    }
    Ok(set)
}

/// The 0..4 array form of a MIS: each entry counts the selected neighbors
/// of its vertex.
pub fn mis_to_digit_array(set: &VertexSet) -> Result<DigitArray, Error> {
    set.check_mis()?;
    let (w, h) = (set.width(), set.height());
    let mut digits = Vec::with_capacity((w as u64 * h as u64) as usize);
    for j in 1..=h {
        for i in 1..=w {
            digits.push(set.selected_neighbors(i, j));
        }
    }
    Ok(DigitArray {
        width: w,
        height: h,
        digits,
    })
}

fn check_oracle_size(width: u32, height: u32) -> Result<u64, Error> {
    let cells = width as u64 * height as u64;
    if width == 0 || height == 0 {
        return Err(Error::OracleCellLimit {
            cells,
            limit: ORACLE_MAX_CELLS,
        });
    }
    if cells > ORACLE_MAX_CELLS {
        return Err(Error::OracleCellLimit {
            cells,
            limit: ORACLE_MAX_CELLS,
        });
    }
    Ok(cells)
}

/// Every MIS of the grid, ascending by membership bitmap.
pub fn enumerate_mis(width: u32, height: u32) -> Result<Vec<VertexSet>, Error> {
    let bitmaps = mis_bitmaps(width, height)?;
    Ok(bitmaps
        .into_iter()
        .map(|b| VertexSet::from_bitmap(width, height, b))
        .collect())
}

/// Exact partition function by direct enumeration: the coefficient of z^t
/// is the number of MISs with t vertices. Independent of the matrix
/// recursion; this is the verification oracle.
pub fn brute_force_partition(width: u32, height: u32) -> Result<CountPolynomial, Error> {
    let bitmaps = mis_bitmaps(width, height)?;
    let mut poly = CountPolynomial::zero();
    let one = 1u32.into();
    for bitmap in bitmaps {
        poly.add_term(bitmap.count_ones() as u64, &one);
    }
    Ok(poly)
}

fn mis_bitmaps(width: u32, height: u32) -> Result<Vec<u64>, Error> {
    let cells = check_oracle_size(width, height)?;
    if cells <= SUBSET_SCAN_MAX_CELLS {
        Ok(mis_bitmaps_subset_scan(width, height))
    } else {
        Ok(mis_bitmaps_backtrack(width, height))
    }
}

/// Scan all 2^(m*n) subsets with word-level independence and domination
/// tests. Only used at small cell counts.
fn mis_bitmaps_subset_scan(width: u32, height: u32) -> Vec<u64> {
    let (m, cells) = (width as u64, width as u64 * height as u64);
    let full: u64 = if cells == 64 { !0 } else { (1 << cells) - 1 };
    let mut not_last_col = 0u64;
    let mut not_first_col = 0u64;
    for b in 0..cells {
        if b % m != m - 1 {
            not_last_col |= 1 << b;
        }
        if b % m != 0 {
            not_first_col |= 1 << b;
        }
    }
    let mut out = Vec::new();
    for mask in 0..=full {
        if mask & (mask >> 1) & not_last_col != 0 {
            continue;
        }
        if mask & (mask >> m) != 0 {
            continue;
        }
        let dominated = ((mask << 1) & not_first_col)
            | ((mask >> 1) & not_last_col)
            | (mask << m)
            | (mask >> m);
        if full & !mask & !dominated == 0 {
            out.push(mask);
        }
    }
    out
}

/// Column-by-column backtracking with domination lookahead: a column is
/// only extended when every vertex of the previous column is already
/// selected or dominated.
fn mis_bitmaps_backtrack(width: u32, height: u32) -> Vec<u64> {
    // Sweep along the longer dimension so the cross-section stays small.
    if height > width {
        let mut out: Vec<u64> = mis_bitmaps_backtrack(height, width)
            .into_iter()
            .map(|mask| transpose_bitmap(mask, height, width))
            .collect();
        out.sort_unstable();
        return out;
    }
    let (m, n) = (width, height);
    let full_col: u32 = (1 << n) - 1;

    struct Search {
        m: u32,
        full_col: u32,
        /// Column patterns with no two vertically adjacent vertices.
        columns: Vec<u32>,
        vertical_cover: Vec<u32>,
        stack: Vec<u32>,
        out: Vec<u64>,
    }

    impl Search {
        fn dfs(&mut self, col: u32, prev: u32, need: u32) {
            if col > self.m {
                if need == 0 {
                    let mut bitmap = 0u64;
                    for (ci, &cmask) in self.stack.iter().enumerate() {
                        for r in 0..32 {
                            if cmask >> r & 1 == 1 {
                                bitmap |= 1 << (r as u64 * self.m as u64 + ci as u64);
                            }
                        }
                    }
                    self.out.push(bitmap);
                }
                return;
            }
            for idx in 0..self.columns.len() {
                let c = self.columns[idx];
                if c & prev != 0 || need & !c != 0 {
                    continue;
                }
                let new_need = self.full_col & !c & !self.vertical_cover[c as usize] & !prev;
                self.stack.push(c);
                self.dfs(col + 1, c, new_need);
                self.stack.pop();
            }
        }
    }

    let mut search = Search {
        m,
        full_col,
        columns: (0..=full_col).filter(|c| c & (c >> 1) == 0).collect(),
        vertical_cover: (0..=full_col)
            .map(|c| ((c << 1) | (c >> 1)) & full_col)
            .collect(),
        stack: Vec::with_capacity(m as usize),
        out: Vec::new(),
    };
    search.dfs(1, 0, 0);
    let mut out = search.out;
    out.sort_unstable();
    out
}

fn transpose_bitmap(mask: u64, width: u32, height: u32) -> u64 {
    // Input bit layout is (j-1)*width + (i-1); output swaps i and j.
    let mut out = 0u64;
    for j in 0..height as u64 {
        for i in 0..width as u64 {
            if mask >> (j * width as u64 + i) & 1 == 1 {
                out |= 1 << (i * height as u64 + j);
            }
        }
    }
    out
}

/// Every tiling passing both validity rules, found by constraint
/// propagation (left and bottom sides of each tile are forced by its
/// neighbors). The count equals the number of MISs.
pub fn enumerate_valid_mosaics(width: u32, height: u32) -> Result<Vec<Mosaic>, Error> {
    check_oracle_size(width, height)?;
    let tiles = MosaicTile::all();
    let (m, n) = (width, height);
    let mut out = Vec::new();
    let mut partial: Vec<MosaicTile> = Vec::with_capacity((m * n) as usize);

    // Scan row-major from the bottom-left; index k holds cell
    // (k % m + 1, k / m + 1).
    fn dfs(
        k: u32,
        m: u32,
        n: u32,
        tiles: &[MosaicTile],
        partial: &mut Vec<MosaicTile>,
        out: &mut Vec<Mosaic>,
    ) {
        if k == m * n {
            out.push(Mosaic::new(m, n, partial.clone()));
            return;
        }
        let (i, j) = (k % m + 1, k / m + 1);
        for &tile in tiles {
            let left_ok = if i == 1 {
                tile.left != Letter::C
            } else {
                tile.left == paired(partial[(k - 1) as usize].right)
            };
            let bottom_ok = if j == 1 {
                tile.bottom != Letter::C
            } else {
                tile.bottom == paired(partial[(k - m) as usize].top)
            };
            let right_ok = i != m || tile.right != Letter::C;
            let top_ok = j != n || tile.top != Letter::C;
            if left_ok && bottom_ok && right_ok && top_ok {
                partial.push(tile);
                dfs(k + 1, m, n, tiles, partial, out);
                partial.pop();
            }
        }
    }

    dfs(0, m, n, &tiles, &mut partial, &mut out);
    Ok(out)
}
