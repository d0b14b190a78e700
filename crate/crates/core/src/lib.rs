//! Exact enumeration of towers built from one-row blocks of several widths.
//!
//! The crate counts towers by closed formulas, by multivariate generating
//! functions and by brute-force enumeration, and relates the class of towers
//! with a single bottom block to generalized Dyck paths.

pub mod dyck;
pub mod enumerate;
pub mod error;
pub mod exact;
pub mod mseries;
pub mod rowconvex;
pub mod series;
pub mod svg;
pub mod tower;
pub mod verify;

pub use dyck::{enumerate_paths, order_blocks, path_to_tower, tower_to_path, validate_path, DyckPath};
pub use enumerate::{count, enumerate, enumerate_row_convex, EnumSpec};
pub use error::{Error, Result};
pub use exact::{count_dyck, count_total, count_u, count_wb, CountSpec, HnSpec};
pub use mseries::{MSeries, TowerGf};
pub use rowconvex::{RowConvexDp, RowConvexGf};
pub use series::Series;
pub use tower::{Block, ClassSpec, Tower, Violation, WidthList};
