//! Exhaustive brute-force generation of towers, row by row.
//!
//! Every tower decomposes uniquely into its rows, so building rows bottom-up
//! and placing each row's blocks left to right visits each tower once. The
//! geometric rules (support, non-overlap, class constraints) are checked
//! directly; nothing here relies on a counting formula.

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::tower::{Block, ClassSpec, Tower, WidthList};

pub const DEFAULT_CAP: u32 = 8;

/// What to enumerate: block multiplicities, the class, and the size guard.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumSpec {
    pub widths: WidthList,
    pub nvec: Vec<u32>,
    pub class: ClassSpec,
    pub restricted: bool,
    pub cap: u32,
}

impl EnumSpec {
    pub fn new(widths: WidthList, nvec: Vec<u32>, class: ClassSpec) -> Result<Self> {
        if nvec.len() != widths.len() {
            return invalid(format!(
                "multiplicity vector has {} entries but there are {} widths",
                nvec.len(),
                widths.len()
            ));
        }
        class.validate()?;
        if matches!(class, ClassSpec::RowConvexOnPlatform(_)) && widths.len() != 1 {
            return invalid("row-convex platform towers use a single block width");
        }
        Ok(EnumSpec { widths, nvec, class, restricted: false, cap: DEFAULT_CAP })
    }

    pub fn restricted(mut self, restricted: bool) -> Self {
        self.restricted = restricted;
        self
    }

    pub fn with_cap(mut self, cap: u32) -> Self {
        self.cap = cap;
        self
    }

    pub fn blocks(&self) -> u32 {
        self.nvec.iter().sum()
    }
}

struct Search<'a> {
    widths: &'a [u32],
    restricted: bool,
    nonnegative: bool,
    row_convex: bool,
}

#[derive(Clone)]
struct State {
    blocks: Vec<Block>,
    remaining: Vec<u32>,
    left: u32,
}

impl State {
    fn push(&mut self, i: usize, b: Block) {
        self.blocks.push(b);
        self.remaining[i] -= 1;
        self.left -= 1;
    }

    fn pop(&mut self, i: usize) {
        self.blocks.pop();
        self.remaining[i] += 1;
        self.left += 1;
    }
}

type Sink<'s> = dyn FnMut(&[Block]) + 's;

impl Search<'_> {
    /// Called with a completed row `blocks[row_start..]`; starts the next one.
    fn next_row(&self, st: &mut State, row_start: usize, sink: &mut Sink<'_>) {
        if st.left == 0 {
            sink(&st.blocks);
            return;
        }
        let below: Vec<Block> = st.blocks[row_start..].to_vec();
        let row = below[0].row + 1;
        let start = st.blocks.len();
        self.extend_row(st, &below, row, start, i64::MIN, sink);
    }

    /// Either closes the current row or adds one more block to its right.
    fn extend_row(
        &self,
        st: &mut State,
        below: &[Block],
        row: u32,
        row_start: usize,
        min_offset: i64,
        sink: &mut Sink<'_>,
    ) {
        let in_row = st.blocks.len() - row_start;
        if in_row > 0 {
            self.next_row(st, row_start, sink);
        }
        if st.left == 0 {
            return;
        }
        let support_lo = below.iter().map(|b| b.offset).min().expect("nonempty support");
        let support_hi = below.iter().map(|b| b.end() - 1).max().expect("nonempty support");
        let max_w = i64::from(*self.widths.iter().max().expect("nonempty widths"));
        let mut lo = min_offset.max(support_lo - max_w + 1);
        let mut hi = support_hi;
        if self.nonnegative {
            lo = lo.max(0);
        }
        if self.row_convex && in_row > 0 {
            lo = min_offset;
            hi = hi.min(min_offset);
        }
        for offset in lo..=hi {
            for (i, &w) in self.widths.iter().enumerate() {
                if st.remaining[i] == 0 {
                    continue;
                }
                let b = Block::new(row, offset, w);
                if !below.iter().any(|d| d.shares_column(&b)) {
                    continue;
                }
                if self.restricted
                    && row > 0
                    && below.iter().any(|d| d.offset == b.offset && d.width == b.width)
                {
                    continue;
                }
                st.push(i, b);
                self.extend_row(st, below, row, row_start, b.end(), sink);
                st.pop(i);
            }
        }
    }

    /// All convex bottom rows starting at column 0 with `sizes` blocks.
    fn convex_bottoms(&self, st: &mut State, sizes: (u32, u32), out: &mut Vec<State>) {
        let placed = st.blocks.len() as u32;
        if placed >= sizes.0 {
            out.push(st.clone());
        }
        if placed == sizes.1 {
            return;
        }
        let offset = st.blocks.last().map_or(0, Block::end);
        for (i, &w) in self.widths.iter().enumerate() {
            if st.remaining[i] > 0 {
                st.push(i, Block::new(0, offset, w));
                self.convex_bottoms(st, sizes, out);
                st.pop(i);
            }
        }
    }

    /// All nonempty bottom rows resting on the platform `[0, platform)`.
    fn platform_bottoms(&self, st: &mut State, platform: u32, out: &mut Vec<State>) {
        let pseudo = [Block::new(0, 0, platform)];
        self.bottom_rows_rec(st, &pseudo, i64::MIN, out);
    }

    fn bottom_rows_rec(&self, st: &mut State, pseudo: &[Block], min_offset: i64, out: &mut Vec<State>) {
        let in_row = st.blocks.len();
        if in_row > 0 {
            out.push(st.clone());
        }
        if st.left == 0 {
            return;
        }
        let max_w = i64::from(*self.widths.iter().max().expect("nonempty widths"));
        let platform_end = pseudo[0].end();
        let mut lo = min_offset.max(1 - max_w);
        let mut hi = platform_end - 1;
        if self.nonnegative {
            lo = lo.max(0);
        }
        if self.row_convex && in_row > 0 {
            lo = min_offset;
            hi = hi.min(min_offset);
        }
        for offset in lo..=hi {
            for (i, &w) in self.widths.iter().enumerate() {
                if st.remaining[i] == 0 {
                    continue;
                }
                let b = Block::new(0, offset, w);
                if !pseudo[0].shares_column(&b) {
                    continue;
                }
                st.push(i, b);
                self.bottom_rows_rec(st, pseudo, b.end(), out);
                st.pop(i);
            }
        }
    }
}

fn check_cap(spec: &EnumSpec) -> Result<()> {
    let n = spec.blocks();
    if n > spec.cap {
        return Err(Error::CapExceeded { blocks: u64::from(n), cap: u64::from(spec.cap) });
    }
    Ok(())
}

/// Bottom rows are the independent subtrees of the search.
fn roots(spec: &EnumSpec) -> Result<(Search<'_>, Vec<State>)> {
    check_cap(spec)?;
    let n = spec.blocks();
    let class = spec.class;
    let search = Search {
        widths: spec.widths.as_slice(),
        restricted: spec.restricted,
        nonnegative: matches!(class, ClassSpec::U | ClassSpec::Hl(_)),
        row_convex: matches!(class, ClassSpec::RowConvexOnPlatform(_)),
    };
    let mut st = State { blocks: Vec::new(), remaining: spec.nvec.clone(), left: n };
    let mut out = Vec::new();
    match class.platform_width(&spec.widths) {
        Some(_) if n == 0 => out.push(st),
        Some(platform) => search.platform_bottoms(&mut st, platform, &mut out),
        None => {
            if n == 0 {
                return invalid("a free-standing tower needs at least one block");
            }
            let sizes = match class {
                ClassSpec::Wb(b) => (b, b),
                ClassSpec::U => (1, 1),
                _ => (1, n),
            };
            if sizes.0 <= n {
                search.convex_bottoms(&mut st, (sizes.0, sizes.1.min(n)), &mut out);
            }
        }
    }
    Ok((search, out))
}

fn explore(search: &Search<'_>, mut root: State, sink: &mut Sink<'_>) {
    if root.blocks.is_empty() {
        // Only the empty platform tower has no bottom row.
        sink(&root.blocks);
        return;
    }
    search.next_row(&mut root, 0, sink);
}

/// Every tower of the class with exactly the given multiplicities, sorted by
/// their block lists.
pub fn enumerate(spec: &EnumSpec) -> Result<Vec<Tower>> {
    let (search, roots) = roots(spec)?;
    let platform = spec.class.platform_width(&spec.widths);
    let make = |blocks: &[Block]| match platform {
        Some(p) => Tower::on_platform(spec.widths.clone(), p, blocks.to_vec()),
        None => Tower::new(spec.widths.clone(), blocks.to_vec()),
    };
    let mut towers: Vec<Tower> = roots
        .into_par_iter()
        .flat_map_iter(|root| {
            let mut found = Vec::new();
            explore(&search, root, &mut |blocks| found.push(make(blocks)));
            found
        })
        .collect();
    towers.par_sort_unstable_by(|a, b| a.blocks().cmp(b.blocks()));
    towers.dedup();
    Ok(towers)
}

/// Number of towers [`enumerate`] would return, without building them.
pub fn count(spec: &EnumSpec) -> Result<BigUint> {
    let (search, roots) = roots(spec)?;
    let total: u64 = roots
        .into_par_iter()
        .map(|root| {
            let mut n = 0u64;
            explore(&search, root, &mut |_| n += 1);
            n
        })
        .sum();
    Ok(BigUint::from(total))
}

/// Row-convex towers of `n` blocks of width `k` on a platform `ell * k` wide.
pub fn enumerate_row_convex(ell: u32, n: u32, k: u32) -> Result<Vec<Tower>> {
    if k < 2 {
        return invalid("row-convex towers need block width k >= 2");
    }
    let spec = EnumSpec::new(WidthList::single(k)?, vec![n], ClassSpec::RowConvexOnPlatform(ell))?;
    enumerate(&spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(widths: &[u32], nvec: &[u32], class: ClassSpec) -> EnumSpec {
        EnumSpec::new(WidthList::new(widths.to_vec()).unwrap(), nvec.to_vec(), class).unwrap()
    }

    fn count_of(s: &EnumSpec) -> u64 {
        crate::exact::to_u64(&count(s).unwrap())
    }

    #[test]
    fn two_dominoes_single_bottom_block() {
        let towers = enumerate(&spec(&[2], &[2], ClassSpec::Wb(1))).unwrap();
        let expected: Vec<Vec<Block>> = [-1, 0, 1]
            .iter()
            .map(|&o| vec![Block::new(0, 0, 2), Block::new(1, o, 2)])
            .collect();
        let got: Vec<Vec<Block>> = towers.iter().map(|t| t.blocks().to_vec()).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn class_sizes_for_two_dominoes() {
        assert_eq!(count_of(&spec(&[2], &[2], ClassSpec::U)), 2);
        assert_eq!(count_of(&spec(&[2], &[2], ClassSpec::Vl(1))), 6);
        assert_eq!(count_of(&spec(&[2], &[2], ClassSpec::Hl(1))), 2);
        assert_eq!(count_of(&spec(&[2], &[1], ClassSpec::Vl(1))), 2);
        assert_eq!(count_of(&spec(&[2], &[0], ClassSpec::Vl(1))), 1);
    }

    #[test]
    fn domino_totals() {
        let s = spec(&[2], &[3], ClassSpec::AnyConvexBottom);
        assert_eq!(count_of(&s), 16);
        assert_eq!(count_of(&s.clone().restricted(true)), 9);
        for n in 1..=5u32 {
            let s = spec(&[2], &[n], ClassSpec::AnyConvexBottom).restricted(true);
            assert_eq!(count_of(&s), 3u64.pow(n - 1));
        }
    }

    #[test]
    fn mixed_widths() {
        assert_eq!(count_of(&spec(&[1, 2], &[1, 1], ClassSpec::Wb(1))), 4);
        assert_eq!(count_of(&spec(&[2], &[2], ClassSpec::Wb(3))), 0);
    }

    #[test]
    fn count_matches_enumerate_and_output_is_valid() {
        for (w, n, class) in [
            (&[2u32][..], &[3u32][..], ClassSpec::Wb(1)),
            (&[1, 2], &[1, 2], ClassSpec::AnyConvexBottom),
            (&[2, 3], &[1, 1], ClassSpec::U),
            (&[2], &[3], ClassSpec::Vl(2)),
            (&[3], &[2], ClassSpec::Hl(2)),
        ] {
            let s = spec(w, n, class);
            let towers = enumerate(&s).unwrap();
            assert_eq!(towers.len() as u64, count_of(&s));
            for t in &towers {
                assert!(t.is_valid(), "{}", t.to_json());
                assert!(t.is_member(class).unwrap());
                assert_eq!(t.counts(), n);
                assert_eq!(&t.canonicalize().unwrap(), t);
            }
            assert!(towers.windows(2).all(|p| p[0].blocks() < p[1].blocks()));
        }
    }

    #[test]
    fn row_convex_platform_towers() {
        assert_eq!(enumerate_row_convex(1, 1, 2).unwrap().len(), 3);
        assert_eq!(enumerate_row_convex(2, 1, 2).unwrap().len(), 5);
        for ell in 1..4 {
            let empty = enumerate_row_convex(ell, 0, 2).unwrap();
            assert_eq!(empty.len(), 1);
            assert!(empty[0].is_empty());
        }
        for t in enumerate_row_convex(2, 3, 2).unwrap() {
            assert!(t.is_row_convex().unwrap());
            assert!(t.is_member(ClassSpec::RowConvexOnPlatform(2)).unwrap());
        }
    }

    #[test]
    fn guards() {
        let big = spec(&[2], &[9], ClassSpec::AnyConvexBottom);
        assert_eq!(
            count(&big).unwrap_err(),
            Error::CapExceeded { blocks: 9, cap: u64::from(DEFAULT_CAP) }
        );
        assert!(count(&big.with_cap(9)).is_ok());
        assert!(enumerate(&spec(&[2], &[0], ClassSpec::U)).is_err());
        let w = WidthList::new(vec![2, 3]).unwrap();
        assert!(EnumSpec::new(w.clone(), vec![1], ClassSpec::U).is_err());
        assert!(EnumSpec::new(w, vec![1, 1], ClassSpec::RowConvexOnPlatform(1)).is_err());
    }
}
