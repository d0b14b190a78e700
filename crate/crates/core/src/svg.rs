//! SVG diagrams of towers, one rectangle per block.

use std::fmt::Write;

use crate::tower::Tower;

/// User units per column and per row.
pub const UNIT: i64 = 10;

const GAP: i64 = 2 * UNIT;
const MARGIN: i64 = UNIT;
const PLATFORM_THICKNESS: i64 = 3;
const PALETTE: [&str; 8] = [
    "#8fd3e8", "#f4b183", "#a9d18e", "#ffd966", "#c9a0dc", "#f8a5a5", "#9dc3e6", "#d9d9d9",
];

fn fill_for(tower: &Tower, width: u32) -> &'static str {
    let i = tower.widths().index_of(width).unwrap_or(0);
    PALETTE[i % PALETTE.len()]
}

// Column span including the platform, if any.
fn span(tower: &Tower) -> (i64, i64) {
    let (mut lo, mut hi) = (tower.min_column().unwrap_or(0), tower.max_column().map_or(0, |c| c + 1));
    if let Some(p) = tower.platform() {
        lo = lo.min(0);
        hi = hi.max(i64::from(p));
    }
    (lo, hi.max(lo + 1))
}

/// Lays the towers out left to right on a common baseline.
pub fn render(towers: &[Tower]) -> String {
    let rows = towers.iter().map(|t| i64::from(t.height())).max().unwrap_or(0).max(1);
    let widths: Vec<i64> = towers.iter().map(|t| { let (lo, hi) = span(t); hi - lo }).collect();
    let total_cols: i64 = widths.iter().sum::<i64>();
    let gaps = GAP * (towers.len() as i64 - 1).max(0);
    let width = total_cols * UNIT + gaps + 2 * MARGIN;
    let height = rows * UNIT + PLATFORM_THICKNESS + 2 * MARGIN;
    let baseline = MARGIN + rows * UNIT;

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    let mut left = MARGIN;
    for (tower, cols) in towers.iter().zip(&widths) {
        let (lo, _) = span(tower);
        let x_of = |col: i64| left + (col - lo) * UNIT;
        writeln!(out, "  <g>").unwrap();
        if let Some(p) = tower.platform() {
            writeln!(
                out,
                r##"    <rect x="{}" y="{baseline}" width="{}" height="{PLATFORM_THICKNESS}" fill="#404040"/>"##,
                x_of(0),
                i64::from(p) * UNIT
            )
            .unwrap();
        }
        for b in tower.blocks() {
            writeln!(
                out,
                r#"    <rect x="{}" y="{}" width="{}" height="{UNIT}" fill="{}" stroke="black" stroke-width="1"/>"#,
                x_of(b.offset),
                baseline - (i64::from(b.row) + 1) * UNIT,
                i64::from(b.width) * UNIT,
                fill_for(tower, b.width)
            )
            .unwrap();
        }
        writeln!(out, "  </g>").unwrap();
        left += cols * UNIT + GAP;
    }
    out.push_str("</svg>\n");
    out
}
