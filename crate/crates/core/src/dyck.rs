//! Bijection between towers in the class U and generalized Dyck paths.
//!
//! A path is a word over up-letters `l` (a step of `+l`) and the letter `0`
//! (a step of `-1`). A tower block of width `s` becomes the up-letter `s - 1`.
//! Turning the tower on its side, a block's column interval `[offset, end)`
//! becomes a vertical interval; the path climbs through each block in turn
//! and descends between consecutive blocks.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, invariant, Error, Result};
use crate::exact::{CountSpec, HnSpec};
use crate::tower::{drop_in_order, Block, ClassSpec, Tower, WidthList};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DyckPath {
    pub spec: HnSpec,
    pub word: Vec<u32>,
}

impl DyckPath {
    pub fn new(spec: HnSpec, word: Vec<u32>) -> Self {
        DyckPath { spec, word }
    }

    pub fn is_valid(&self) -> bool {
        validate_path(self)
    }

    /// Path heights after each letter, starting from the initial 0.
    pub fn heights(&self) -> Vec<i64> {
        let mut h = 0i64;
        let mut out = vec![0];
        for &c in &self.word {
            h += if c == 0 { -1 } else { i64::from(c) };
            out.push(h);
        }
        out
    }

    pub fn word_string(&self) -> String {
        self.word.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
    }
}

/// Letter multiplicities, length, nonnegative prefix sums and final height 0.
pub fn validate_path(p: &DyckPath) -> bool {
    if p.word.len() as u64 != p.spec.path_len() {
        return false;
    }
    let zeros = p.word.iter().filter(|&&c| c == 0).count() as u64;
    if zeros != p.spec.down_steps() {
        return false;
    }
    for &(t, l) in p.spec.pairs() {
        if p.word.iter().filter(|&&c| c == l).count() != t as usize {
            return false;
        }
    }
    if p.word.iter().any(|&c| c != 0 && p.spec.multiplicity(c).is_none()) {
        return false;
    }
    let heights = p.heights();
    heights.iter().all(|&h| h >= 0) && heights.last() == Some(&0)
}

fn check_u_tower(t: &Tower) -> Result<()> {
    if !t.is_member(ClassSpec::U)? {
        return invalid("the Dyck path bijection needs a tower in the class U");
    }
    if t.blocks().iter().any(|b| b.width < 2) {
        return invalid("width-1 blocks have no Dyck path encoding");
    }
    Ok(())
}

/// The unique block order in which the tower can be built by dropping blocks
/// and each block starts strictly left of the previous block's right end.
pub fn order_blocks(t: &Tower) -> Result<Vec<Block>> {
    check_u_tower(t)?;
    let blocks = t.blocks();
    let mut placed = vec![false; blocks.len()];
    let mut order = Vec::with_capacity(blocks.len());
    let mut current = 0usize;
    placed[0] = true;
    order.push(blocks[0]);
    while order.len() < blocks.len() {
        let end = blocks[current].end();
        // Among droppable blocks that start left of the current right end,
        // the rightmost one comes next.
        let next = (0..blocks.len())
            .filter(|&i| !placed[i] && blocks[i].offset < end)
            .filter(|&i| droppable(blocks, &placed, i))
            .max_by_key(|&i| blocks[i].offset);
        match next {
            Some(i) => {
                placed[i] = true;
                order.push(blocks[i]);
                current = i;
            }
            None => return invariant("no admissible block order exists for this tower"),
        }
    }
    Ok(order)
}

// Every lower block sharing a column with `i` is already placed.
fn droppable(blocks: &[Block], placed: &[bool], i: usize) -> bool {
    let b = &blocks[i];
    blocks
        .iter()
        .zip(placed)
        .all(|(d, &p)| p || d.row >= b.row || !d.shares_column(b))
}

/// Encodes a tower of the class U as a generalized Dyck path.
pub fn tower_to_path(t: &Tower) -> Result<DyckPath> {
    let order = order_blocks(t)?;
    let spec = HnSpec::from_counts(&CountSpec::new(t.widths().clone(), t.counts())?)?;
    let mut word = Vec::with_capacity(spec.path_len() as usize);
    for (i, b) in order.iter().enumerate() {
        word.push(b.width - 1);
        let top = b.end() - 1;
        let next_bottom = order.get(i + 1).map_or(0, |n| n.offset);
        let descent = top - next_bottom;
        if descent < 0 {
            return invariant("block order leaves a gap in the path");
        }
        word.extend(std::iter::repeat_n(0, descent as usize));
    }
    let path = DyckPath::new(spec, word);
    if !path.is_valid() {
        return invariant(format!("encoded path {} is not a valid Dyck path", path.word_string()));
    }
    Ok(path)
}

/// Decodes a valid path into the tower of the class U it encodes.
pub fn path_to_tower(p: &DyckPath, widths: &WidthList) -> Result<Tower> {
    if !p.is_valid() {
        return invalid(format!("{} is not a valid path for {:?}", p.word_string(), p.spec.pairs()));
    }
    let mut height = 0i64;
    let mut sequence = Vec::new();
    for &c in &p.word {
        if c == 0 {
            height -= 1;
            continue;
        }
        if widths.index_of(c + 1).is_none() {
            return invalid(format!("up-step {c} needs width {} which is not listed", c + 1));
        }
        sequence.push(Block::new(0, height, c + 1));
        height += i64::from(c);
    }
    let tower = Tower::new(widths.clone(), drop_in_order(&sequence));
    match tower.is_member(ClassSpec::U) {
        Ok(true) => Ok(tower),
        _ => Err(Error::Invariant(format!(
            "path {} decoded to a tower outside U",
            p.word_string()
        ))),
    }
}

/// All valid paths for a step specification, in lexicographic word order.
pub fn enumerate_paths(spec: &HnSpec) -> Vec<DyckPath> {
    fn go(
        spec: &HnSpec,
        remaining: &mut Vec<u32>,
        zeros: u64,
        height: i64,
        word: &mut Vec<u32>,
        out: &mut Vec<DyckPath>,
    ) {
        if zeros == 0 && remaining.iter().all(|&t| t == 0) {
            if height == 0 {
                out.push(DyckPath::new(spec.clone(), word.clone()));
            }
            return;
        }
        if zeros > 0 && height > 0 {
            word.push(0);
            go(spec, remaining, zeros - 1, height - 1, word, out);
            word.pop();
        }
        let mut ups: Vec<(usize, u32)> = spec.pairs().iter().map(|&(_, l)| l).enumerate().collect();
        ups.sort_by_key(|&(_, l)| l);
        for (i, l) in ups {
            // Heights can never exceed the number of down-steps left.
            if remaining[i] == 0 || height + i64::from(l) > zeros as i64 {
                continue;
            }
            remaining[i] -= 1;
            word.push(l);
            go(spec, remaining, zeros, height + i64::from(l), word, out);
            word.pop();
            remaining[i] += 1;
        }
    }
    let mut remaining: Vec<u32> = spec.pairs().iter().map(|&(t, _)| t).collect();
    let mut out = Vec::new();
    go(spec, &mut remaining, spec.down_steps(), 0, &mut Vec::new(), &mut out);
    out
}
