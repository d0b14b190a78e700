//! Towers of unit-height blocks and the predicates that classify them.
//!
//! A [`Tower`] is stored as a sorted list of [`Block`]s. Free-standing towers
//! (no platform) are anchored so that the leftmost bottom-row block starts at
//! column 0. Towers resting on a platform are anchored to the platform, which
//! always occupies columns `[0, platform)`; they are never translated.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// The distinct allowed block widths `s_1, ..., s_m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct WidthList(Vec<u32>);

impl WidthList {
    pub fn new(widths: Vec<u32>) -> Result<Self> {
        if widths.is_empty() {
            return invalid("width list must not be empty");
        }
        if widths.contains(&0) {
            return invalid("widths must be positive");
        }
        for (i, w) in widths.iter().enumerate() {
            if widths[..i].contains(w) {
                return invalid(format!("width {w} listed twice; widths must be distinct"));
            }
        }
        Ok(WidthList(widths))
    }

    pub fn single(width: u32) -> Result<Self> {
        Self::new(vec![width])
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, width: u32) -> Option<usize> {
        self.0.iter().position(|&w| w == width)
    }

    pub fn max_width(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }
}

impl TryFrom<Vec<u32>> for WidthList {
    type Error = Error;

    fn try_from(widths: Vec<u32>) -> Result<Self> {
        WidthList::new(widths)
    }
}

impl From<WidthList> for Vec<u32> {
    fn from(list: WidthList) -> Self {
        list.0
    }
}

impl FromStr for WidthList {
    type Err = Error;

    /// Parses a comma separated list such as `2,3`.
    fn from_str(s: &str) -> Result<Self> {
        let widths = parse_list::<u32>(s)?;
        WidthList::new(widths)
    }
}

impl fmt::Display for WidthList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub(crate) fn parse_list<T: FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.parse::<T>()
                .map_err(|_| Error::InvalidInput(format!("cannot parse list entry {p:?}")))
        })
        .collect()
}

/// One unit-height block occupying columns `[offset, offset + width)` of `row`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Block {
    pub row: u32,
    pub offset: i64,
    pub width: u32,
}

impl Block {
    pub fn new(row: u32, offset: i64, width: u32) -> Self {
        Block { row, offset, width }
    }

    /// One past the rightmost occupied column.
    pub fn end(&self) -> i64 {
        self.offset + i64::from(self.width)
    }

    pub fn columns(&self) -> Range<i64> {
        self.offset..self.end()
    }

    pub fn shares_column(&self, other: &Block) -> bool {
        self.offset < other.end() && other.offset < self.end()
    }

    pub fn overlaps_columns(&self, cols: Range<i64>) -> bool {
        self.offset < cols.end && cols.start < self.end()
    }

    fn same_footprint(&self, other: &Block) -> bool {
        self.offset == other.offset && self.width == other.width
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[row {}, cols {}..{}]", self.row, self.offset, self.end())
    }
}

/// The first broken tower invariant found by [`Tower::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Empty,
    UnknownWidth(Block),
    Overlap(Block, Block),
    Unsupported(Block),
    NotCanonical { min_bottom_offset: i64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "empty: a free-standing tower needs at least one block"),
            Violation::UnknownWidth(b) => write!(f, "width: block {b} has a width outside the list"),
            Violation::Overlap(a, b) => write!(f, "overlap: blocks {a} and {b} share a column"),
            Violation::Unsupported(b) => write!(f, "support: block {b} rests on nothing"),
            Violation::NotCanonical { min_bottom_offset } => write!(
                f,
                "canonical: leftmost bottom block starts at column {min_bottom_offset}, expected 0"
            ),
        }
    }
}

impl std::error::Error for Violation {}

/// The tower classes the library can count and enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassSpec {
    /// Convex bottom row made of exactly `b` blocks.
    Wb(u32),
    /// One bottom block and nothing to the left of it.
    U,
    /// Resting on a platform of the given width; the bottom row may have gaps.
    Vl(u32),
    /// Like `Vl`, with nothing to the left of the platform.
    Hl(u32),
    /// Convex bottom row with any number of blocks.
    AnyConvexBottom,
    /// Single-width towers with every row convex, resting on a platform that
    /// is the given number of block widths wide.
    RowConvexOnPlatform(u32),
}

impl ClassSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ClassSpec::Wb(p) | ClassSpec::Vl(p) | ClassSpec::Hl(p) | ClassSpec::RowConvexOnPlatform(p)
                if p == 0 =>
            {
                invalid(format!("class parameter must be at least 1 in {self}"))
            }
            _ => Ok(()),
        }
    }

    /// Platform width in columns for platform classes.
    pub fn platform_width(&self, widths: &WidthList) -> Option<u32> {
        match *self {
            ClassSpec::Vl(l) | ClassSpec::Hl(l) => Some(l),
            ClassSpec::RowConvexOnPlatform(l) => Some(l * widths.max_width()),
            _ => None,
        }
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassSpec::Wb(b) => write!(f, "wb:{b}"),
            ClassSpec::U => write!(f, "u"),
            ClassSpec::Vl(l) => write!(f, "v:{l}"),
            ClassSpec::Hl(l) => write!(f, "h:{l}"),
            ClassSpec::AnyConvexBottom => write!(f, "any"),
            ClassSpec::RowConvexOnPlatform(l) => write!(f, "rowconvex:{l}"),
        }
    }
}

impl FromStr for ClassSpec {
    type Err = Error;

    /// Accepts `wb:B`, `u`, `v:L`, `h:L`, `any` and `rowconvex:L`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, param) = match s.split_once(':') {
            Some((n, p)) => (n, Some(p)),
            None => (s, None),
        };
        let param = |what: &str| -> Result<u32> {
            param
                .ok_or_else(|| Error::InvalidInput(format!("class {what} needs a parameter, e.g. {what}:1")))?
                .parse::<u32>()
                .map_err(|_| Error::InvalidInput(format!("bad parameter in class {s:?}")))
        };
        let class = match name.to_ascii_lowercase().as_str() {
            "wb" | "w" => ClassSpec::Wb(param("wb")?),
            "u" => ClassSpec::U,
            "v" | "vl" => ClassSpec::Vl(param("v")?),
            "h" | "hl" => ClassSpec::Hl(param("h")?),
            "any" | "all" => ClassSpec::AnyConvexBottom,
            "rowconvex" | "rc" => ClassSpec::RowConvexOnPlatform(param("rowconvex")?),
            _ => return invalid(format!("unknown class {s:?}")),
        };
        class.validate()?;
        Ok(class)
    }
}

#[derive(Deserialize)]
struct RawTower {
    widths: WidthList,
    blocks: Vec<Block>,
    #[serde(default)]
    platform: Option<u32>,
}

impl From<RawTower> for Tower {
    fn from(raw: RawTower) -> Self {
        Tower::from_parts(raw.widths, raw.platform, raw.blocks)
    }
}

/// A finite stack of blocks, kept sorted by `(row, offset)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "RawTower")]
pub struct Tower {
    widths: WidthList,
    blocks: Vec<Block>,
    #[serde(skip_serializing_if = "Option::is_none")]
    platform: Option<u32>,
}

impl Tower {
    pub fn new(widths: WidthList, blocks: Vec<Block>) -> Self {
        Self::from_parts(widths, None, blocks)
    }

    pub fn on_platform(widths: WidthList, platform: u32, blocks: Vec<Block>) -> Self {
        Self::from_parts(widths, Some(platform), blocks)
    }

    fn from_parts(widths: WidthList, platform: Option<u32>, mut blocks: Vec<Block>) -> Self {
        blocks.sort();
        Tower { widths, blocks, platform }
    }

    pub fn widths(&self) -> &WidthList {
        &self.widths
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn platform(&self) -> Option<u32> {
        self.platform
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn height(&self) -> u32 {
        self.blocks.last().map_or(0, |b| b.row + 1)
    }

    /// Blocks of one row, left to right.
    pub fn row(&self, r: u32) -> &[Block] {
        let start = self.blocks.partition_point(|b| b.row < r);
        let end = self.blocks.partition_point(|b| b.row <= r);
        &self.blocks[start..end]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Block]> {
        (0..self.height()).map(move |r| self.row(r))
    }

    /// Number of blocks of each listed width, `(n_1, ..., n_m)`.
    pub fn counts(&self) -> Vec<u32> {
        let mut counts = vec![0; self.widths.len()];
        for b in &self.blocks {
            if let Some(i) = self.widths.index_of(b.width) {
                counts[i] += 1;
            }
        }
        counts
    }

    pub fn min_column(&self) -> Option<i64> {
        self.blocks.iter().map(|b| b.offset).min()
    }

    pub fn max_column(&self) -> Option<i64> {
        self.blocks.iter().map(|b| b.end() - 1).max()
    }

    /// Checks width membership, non-overlap, support and the anchoring rule,
    /// reporting the first failure.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        if self.blocks.is_empty() {
            return if self.platform.is_some() { Ok(()) } else { Err(Violation::Empty) };
        }
        if let Some(b) = self.blocks.iter().find(|b| self.widths.index_of(b.width).is_none()) {
            return Err(Violation::UnknownWidth(*b));
        }
        for row in self.rows() {
            if let Some(pair) = row.windows(2).find(|p| p[0].end() > p[1].offset) {
                return Err(Violation::Overlap(pair[0], pair[1]));
            }
        }
        // Sorted order means an empty row is only possible if some later block floats.
        let mut below: &[Block] = &[];
        for r in 0..self.height() {
            let row = self.row(r);
            for b in row {
                let supported = if r == 0 {
                    match self.platform {
                        Some(l) => b.overlaps_columns(0..i64::from(l)),
                        None => true,
                    }
                } else {
                    below.iter().any(|d| d.shares_column(b))
                };
                if !supported {
                    return Err(Violation::Unsupported(*b));
                }
            }
            below = row;
        }
        if self.platform.is_none() {
            let min_bottom_offset = self.row(0)[0].offset;
            if min_bottom_offset != 0 {
                return Err(Violation::NotCanonical { min_bottom_offset });
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    fn require_valid(&self) -> Result<()> {
        self.validate()
            .map_err(|v| Error::InvalidInput(format!("invalid tower: {v}")))
    }

    fn row_is_convex(row: &[Block]) -> bool {
        row.windows(2).all(|p| p[0].end() == p[1].offset)
    }

    /// Class membership; the tower must be valid.
    pub fn is_member(&self, class: ClassSpec) -> Result<bool> {
        self.require_valid()?;
        class.validate()?;
        let nothing_left_of_zero = self.min_column().is_none_or(|c| c >= 0);
        let free_convex = |t: &Tower| t.platform.is_none() && Self::row_is_convex(t.row(0));
        Ok(match class {
            ClassSpec::Wb(b) => free_convex(self) && self.row(0).len() == b as usize,
            ClassSpec::U => free_convex(self) && self.row(0).len() == 1 && nothing_left_of_zero,
            ClassSpec::AnyConvexBottom => free_convex(self),
            ClassSpec::Vl(l) => self.platform == Some(l),
            ClassSpec::Hl(l) => self.platform == Some(l) && nothing_left_of_zero,
            ClassSpec::RowConvexOnPlatform(l) => {
                self.widths.len() == 1
                    && self.platform == Some(l * self.widths.max_width())
                    && self.rows().all(Self::row_is_convex)
            }
        })
    }

    /// True when no block sits directly on a block with the same offset and width.
    pub fn is_restricted(&self) -> Result<bool> {
        self.require_valid()?;
        Ok(self.blocks.iter().filter(|b| b.row > 0).all(|b| {
            !self
                .row(b.row - 1)
                .iter()
                .any(|d| d.same_footprint(b))
        }))
    }

    /// True when every row's occupied columns form one interval.
    pub fn is_row_convex(&self) -> Result<bool> {
        self.require_valid()?;
        Ok(self.rows().all(Self::row_is_convex))
    }

    /// Translates by `delta` columns; the platform, if any, stays put.
    pub fn shifted(&self, delta: i64) -> Tower {
        let blocks = self
            .blocks
            .iter()
            .map(|b| Block::new(b.row, b.offset + delta, b.width))
            .collect();
        Tower::from_parts(self.widths.clone(), self.platform, blocks)
    }

    /// Moves a free-standing tower so the leftmost block of its lowest row
    /// starts at column 0. Platform towers are already anchored and come back
    /// unchanged.
    pub fn canonicalize(&self) -> Result<Tower> {
        if self.platform.is_some() {
            return Ok(self.clone());
        }
        match self.blocks.first() {
            Some(b) => Ok(self.shifted(-b.offset)),
            None => invalid("cannot canonicalize an empty tower"),
        }
    }

    /// Removes every block resting directly on a same-footprint block, then
    /// drops the remaining blocks in row order until they land.
    pub fn collapse_stacks(&self) -> Tower {
        let kept: Vec<Block> = self
            .blocks
            .iter()
            .filter(|b| {
                b.row == 0
                    || !self
                        .row(b.row - 1)
                        .iter()
                        .any(|d| d.same_footprint(b))
            })
            .copied()
            .collect();
        Tower::from_parts(self.widths.clone(), self.platform, drop_in_order(&kept))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tower serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Tower> {
        serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("tower JSON: {e}")))
    }
}

/// Lets blocks fall one after another; each lands just above the highest
/// already placed block that shares a column with it, or on row 0.
pub(crate) fn drop_in_order(blocks: &[Block]) -> Vec<Block> {
    let mut placed: Vec<Block> = Vec::with_capacity(blocks.len());
    for b in blocks {
        let row = placed
            .iter()
            .filter(|p| p.shares_column(b))
            .map(|p| p.row + 1)
            .max()
            .unwrap_or(0);
        placed.push(Block::new(row, b.offset, b.width));
    }
    placed
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dominoes() -> WidthList {
        WidthList::single(2).unwrap()
    }

    fn tower(blocks: &[(u32, i64)]) -> Tower {
        Tower::new(
            dominoes(),
            blocks.iter().map(|&(r, o)| Block::new(r, o, 2)).collect(),
        )
    }

    // Coordinates are (x, y) lower-left corners; y is the row.
    fn from_corners(coords: &[(i64, u32)]) -> Tower {
        let blocks = coords.iter().map(|&(x, y)| Block::new(y, x, 2)).collect();
        Tower::new(dominoes(), blocks).canonicalize().unwrap()
    }

    #[test]
    fn width_list_rejects_bad_input() {
        assert!(WidthList::new(vec![]).is_err());
        assert!(WidthList::new(vec![0, 2]).is_err());
        assert!(WidthList::new(vec![2, 2]).is_err());
        assert_eq!("2,3".parse::<WidthList>().unwrap().as_slice(), &[2, 3]);
    }

    #[test]
    fn validate_examples() {
        assert_eq!(tower(&[(0, 0)]).validate(), Ok(()));
        assert!(matches!(
            tower(&[(0, 0), (0, 0)]).validate(),
            Err(Violation::Overlap(..))
        ));
        assert_eq!(
            tower(&[(0, 0), (1, 5)]).validate(),
            Err(Violation::Unsupported(Block::new(1, 5, 2)))
        );
        assert_eq!(
            tower(&[(0, 3)]).validate(),
            Err(Violation::NotCanonical { min_bottom_offset: 3 })
        );
        assert_eq!(tower(&[]).validate(), Err(Violation::Empty));
        let odd = Tower::new(dominoes(), vec![Block::new(0, 0, 3)]);
        assert!(matches!(odd.validate(), Err(Violation::UnknownWidth(_))));
        // a floating row is caught as missing support
        assert!(matches!(
            tower(&[(0, 0), (2, 0)]).validate(),
            Err(Violation::Unsupported(_))
        ));
    }

    #[test]
    fn platform_towers_need_contact_with_the_platform() {
        let w = dominoes();
        let ok = Tower::on_platform(w.clone(), 1, vec![Block::new(0, -1, 2)]);
        assert!(ok.is_valid());
        let off = Tower::on_platform(w.clone(), 1, vec![Block::new(0, 1, 2)]);
        assert!(matches!(off.validate(), Err(Violation::Unsupported(_))));
        assert!(Tower::on_platform(w, 1, vec![]).is_valid());
    }

    #[test]
    fn membership_of_small_towers() {
        // The three two-domino towers with a single bottom block.
        let w1 = [tower(&[(0, 0), (1, -1)]), tower(&[(0, 0), (1, 0)]), tower(&[(0, 0), (1, 1)])];
        for t in &w1 {
            assert!(t.is_member(ClassSpec::Wb(1)).unwrap());
            assert!(!t.is_member(ClassSpec::Wb(2)).unwrap());
        }
        assert!(!w1[0].is_member(ClassSpec::U).unwrap());
        assert!(w1[1].is_member(ClassSpec::U).unwrap());
        assert!(w1[2].is_member(ClassSpec::U).unwrap());

        let pair = tower(&[(0, 0), (0, 2)]);
        assert!(pair.is_member(ClassSpec::Wb(2)).unwrap());
        let gap = tower(&[(0, 0), (0, 3), (1, 1)]);
        assert!(!gap.is_member(ClassSpec::Wb(2)).unwrap());
        assert!(!gap.is_member(ClassSpec::AnyConvexBottom).unwrap());

        let on_platform = Tower::on_platform(dominoes(), 1, vec![Block::new(0, -1, 2), Block::new(1, -2, 2)]);
        assert!(on_platform.is_member(ClassSpec::Vl(1)).unwrap());
        assert!(!on_platform.is_member(ClassSpec::Hl(1)).unwrap());
        assert!(!on_platform.is_member(ClassSpec::Vl(2)).unwrap());

        assert!(tower(&[(0, 0), (1, 5)]).is_member(ClassSpec::U).is_err());
    }

    #[test]
    fn restricted_examples() {
        let brick_wall = from_corners(&[
            (0, 0), (2, 0), (-1, 1), (3, 1), (2, 2), (-2, 2), (1, 3), (3, 3), (2, 4),
        ]);
        assert_eq!(brick_wall.len(), 9);
        assert!(brick_wall.is_valid());
        assert!(brick_wall.is_restricted().unwrap());

        let stacked = from_corners(&[
            (0, 0), (2, 0), (0, 1), (3, 1), (2, 2), (-1, 2), (-1, 3), (2, 3), (4, 2),
        ]);
        assert_eq!(stacked.len(), 9);
        assert!(stacked.is_valid());
        assert!(!stacked.is_restricted().unwrap());

        assert!(!tower(&[(0, 0), (1, 0)]).is_restricted().unwrap());
    }

    #[test]
    fn row_convexity() {
        assert!(tower(&[(0, 0)]).is_row_convex().unwrap());
        let gap = tower(&[(0, 0), (0, 2), (1, 0), (1, 3)]);
        assert!(gap.is_valid());
        assert!(!gap.is_row_convex().unwrap());
        let filled = tower(&[(0, 0), (0, 2), (1, 1)]);
        assert!(filled.is_row_convex().unwrap());
    }

    #[test]
    fn canonicalize_translates_and_is_idempotent() {
        let t = tower(&[(0, 0), (1, 1)]);
        let moved = t.shifted(7);
        assert_eq!(moved.canonicalize().unwrap(), t);
        assert_eq!(t.canonicalize().unwrap(), t);
        assert!(tower(&[]).canonicalize().is_err());
    }

    #[test]
    fn collapse_removes_stacks() {
        let stack = tower(&[(0, 0), (1, 0), (2, 0), (3, 1)]);
        let collapsed = stack.collapse_stacks();
        assert_eq!(collapsed, tower(&[(0, 0), (1, 1)]));
        assert!(collapsed.is_restricted().unwrap());
    }

    #[test]
    fn json_layout() {
        let t = Tower::new(dominoes(), vec![Block::new(1, 1, 2), Block::new(0, 0, 2)]);
        assert_eq!(
            t.to_json(),
            r#"{"widths":[2],"blocks":[{"row":0,"offset":0,"width":2},{"row":1,"offset":1,"width":2}]}"#
        );
        assert_eq!(Tower::from_json(&t.to_json()).unwrap(), t);
        let p = Tower::on_platform(dominoes(), 3, vec![]);
        assert_eq!(p.to_json(), r#"{"widths":[2],"blocks":[],"platform":3}"#);
        assert!(Tower::from_json(r#"{"widths":[2,2],"blocks":[]}"#).is_err());
    }

    #[test]
    fn class_spec_parsing() {
        assert_eq!("wb:2".parse::<ClassSpec>().unwrap(), ClassSpec::Wb(2));
        assert_eq!("u".parse::<ClassSpec>().unwrap(), ClassSpec::U);
        assert_eq!("h:3".parse::<ClassSpec>().unwrap(), ClassSpec::Hl(3));
        assert!("wb:0".parse::<ClassSpec>().is_err());
        assert!("v".parse::<ClassSpec>().is_err());
        assert!("zz".parse::<ClassSpec>().is_err());
    }
}
