//! Bar states: fixed-length words over the edge alphabet {a, b, c} with the
//! two orderings used to index state matrices.
//!
//! A bar state records the labels along one side of a row (or column) of
//! tiles. Horizontal sides are read right to left and vertical sides top to
//! bottom, so position 1 of the word is the rightmost column (or topmost
//! row). States are ranked two ways:
//!
//! - abc order: lexicographic with a < b < c (aa, ab, ac, ba, ...)
//! - cba order: reverse lexicographic (cc, cb, ca, bc, ...)
//!
//! Both ranks are 1-based and satisfy `abc + cba = 3^p + 1`. The word is
//! packed as base-3 digits (a=0, b=1, c=2, position 1 most significant), so
//! rank arithmetic is integer arithmetic on the packed code.

use std::fmt;
use std::str::FromStr;

use crate::Error;

/// Edge label of a mosaic tile side. `A` marks a side incident to a selected
/// vertex, `C` a side whose far neighbor is a selected vertex, `B` neither.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
    C,
}

impl Letter {
    pub const ALL: [Letter; 3] = [Letter::A, Letter::B, Letter::C];

    fn digit(self) -> u64 {
        match self {
            Letter::A => 0,
            Letter::B => 1,
            Letter::C => 2,
        }
    }

    fn from_digit(d: u64) -> Letter {
        match d {
            0 => Letter::A,
            1 => Letter::B,
            _ => Letter::C,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
            Letter::C => 'c',
        }
    }

    pub fn from_char(ch: char) -> Option<Letter> {
        match ch {
            'a' => Some(Letter::A),
            'b' => Some(Letter::B),
            'c' => Some(Letter::C),
            _ => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Widths above this overflow the packed `u64` code.
pub const MAX_STATE_WIDTH: u32 = 20;

/// 3^p as u64; callers keep p <= MAX_STATE_WIDTH.
pub fn pow3(p: u32) -> u64 {
    3u64.pow(p)
}

/// A length-p word over {a, b, c}, packed base-3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BarState {
    width: u32,
    code: u64,
}

impl BarState {
    /// Build from letters given in position order (position 1 first).
    pub fn from_letters(letters: &[Letter]) -> BarState {
        assert!(
            !letters.is_empty() && letters.len() <= MAX_STATE_WIDTH as usize,
            "bar state width {} out of range",
            letters.len()
        );
        let mut code = 0u64;
        for &l in letters {
            code = code * 3 + l.digit();
        }
        BarState {
            width: letters.len() as u32,
            code,
        }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    /// Letter at 1-based position (position 1 is most significant).
    pub fn letter_at(&self, pos: u32) -> Letter {
        assert!(pos >= 1 && pos <= self.width);
        let shift = pow3(self.width - pos);
        Letter::from_digit((self.code / shift) % 3)
    }

    pub fn letters(&self) -> Vec<Letter> {
        (1..=self.width).map(|p| self.letter_at(p)).collect()
    }

    /// 1-based rank in lexicographic (abc) order.
    pub fn abc_index(&self) -> u64 {
        self.code + 1
    }

    /// 1-based rank in reverse lexicographic (cba) order.
    pub fn cba_index(&self) -> u64 {
        pow3(self.width) - self.code
    }

    /// Inverse of `abc_index`.
    pub fn from_abc_index(width: u32, index: u64) -> Result<BarState, Error> {
        if width == 0 || width > MAX_STATE_WIDTH {
            return Err(Error::IndexOutOfRange { width, index });
        }
        if index < 1 || index > pow3(width) {
            return Err(Error::IndexOutOfRange { width, index });
        }
        Ok(BarState {
            width,
            code: index - 1,
        })
    }

    /// Inverse of `cba_index`.
    pub fn from_cba_index(width: u32, index: u64) -> Result<BarState, Error> {
        if width == 0 || width > MAX_STATE_WIDTH || index < 1 || index > pow3(width) {
            return Err(Error::IndexOutOfRange { width, index });
        }
        Ok(BarState {
            width,
            code: pow3(width) - index,
        })
    }

    /// True iff some position holds letter c. States describing grid
    /// boundaries must be c-free.
    pub fn contains_letter_c(&self) -> bool {
        let mut code = self.code;
        while code > 0 {
            if code % 3 == 2 {
                return true;
            }
            code /= 3;
        }
        false
    }

    /// All states of a given width in abc order.
    pub fn all(width: u32) -> impl Iterator<Item = BarState> {
        (0..pow3(width)).map(move |code| BarState { width, code })
    }
}

impl fmt::Display for BarState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in 1..=self.width {
            write!(f, "{}", self.letter_at(p))?;
        }
        Ok(())
    }
}

impl FromStr for BarState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut letters = Vec::with_capacity(s.len());
        for ch in s.chars() {
            letters.push(
                Letter::from_char(ch)
                    .ok_or_else(|| Error::StateFormat(format!("invalid letter {ch:?}")))?,
            );
        }
        if letters.is_empty() || letters.len() > MAX_STATE_WIDTH as usize {
            return Err(Error::StateFormat(format!(
                "state length {} out of range 1..={MAX_STATE_WIDTH}",
                letters.len()
            )));
        }
        Ok(BarState::from_letters(&letters))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> BarState {
        text.parse().unwrap()
    }

    #[test]
    fn abc_index_listing() {
        assert_eq!(s("aa").abc_index(), 1);
        assert_eq!(s("ab").abc_index(), 2);
        assert_eq!(s("cc").abc_index(), 9);
        let order: Vec<String> = BarState::all(2).map(|st| st.to_string()).collect();
        assert_eq!(
            order,
            ["aa", "ab", "ac", "ba", "bb", "bc", "ca", "cb", "cc"]
        );
    }

    #[test]
    fn cba_index_listing() {
        assert_eq!(s("cc").cba_index(), 1);
        assert_eq!(s("ab").cba_index(), 8);
        assert_eq!(s("aa").cba_index(), 9);
        let mut by_cba: Vec<(u64, String)> = BarState::all(2)
            .map(|st| (st.cba_index(), st.to_string()))
            .collect();
        by_cba.sort();
        let order: Vec<&str> = by_cba.iter().map(|(_, t)| t.as_str()).collect();
        assert_eq!(order, ["cc", "cb", "ca", "bc", "bb", "ba", "ac", "ab", "aa"]);
    }

    #[test]
    fn from_abc_index_examples() {
        assert_eq!(BarState::from_abc_index(2, 4).unwrap().to_string(), "ba");
        assert_eq!(BarState::from_abc_index(1, 1).unwrap().to_string(), "a");
        assert_eq!(BarState::from_abc_index(3, 27).unwrap().to_string(), "ccc");
        assert!(BarState::from_abc_index(2, 0).is_err());
        assert!(BarState::from_abc_index(2, 10).is_err());
    }

    #[test]
    fn contains_letter_c_examples() {
        assert!(!s("ab").contains_letter_c());
        assert!(s("ac").contains_letter_c());
        assert!(!s("bbb").contains_letter_c());
    }

    #[test]
    fn round_trip_and_duality_exhaustive() {
        for p in 1..=6 {
            for st in BarState::all(p) {
                assert_eq!(BarState::from_abc_index(p, st.abc_index()).unwrap(), st);
                assert_eq!(BarState::from_cba_index(p, st.cba_index()).unwrap(), st);
                assert_eq!(st.abc_index() + st.cba_index(), pow3(p) + 1);
                let reparsed: BarState = st.to_string().parse().unwrap();
                assert_eq!(reparsed, st);
            }
        }
    }

    #[test]
    fn leading_letter_blocks() {
        // The leading letter partitions each ordering into thirds; this is
        // the 3x3 block decomposition the matrix recursion is built on.
        for p in 2..=6 {
            let third = pow3(p - 1);
            for st in BarState::all(p) {
                let abc = st.abc_index();
                let expected = if abc <= third {
                    Letter::A
                } else if abc <= 2 * third {
                    Letter::B
                } else {
                    Letter::C
                };
                assert_eq!(st.letter_at(1), expected);

                let cba = st.cba_index();
                let expected = if cba <= third {
                    Letter::C
                } else if cba <= 2 * third {
                    Letter::B
                } else {
                    Letter::A
                };
                assert_eq!(st.letter_at(1), expected);
            }
        }
    }
}
