//! Exact simulation of the pointwise periodic maps
//! `F(x, y) = R_α (x - sign(y), y)` for α ∈ {π/2, 2π/3, π/3}: arithmetic in
//! Q(√3), tile geometry, level sets, period classification, a brute-force
//! oracle and SVG rendering.

pub mod dynamics;
pub mod error;
pub mod exactnum;
pub mod necklace;
pub mod oracle;
pub mod render;
pub mod tiling;

pub use dynamics::{
    address, f_inv_step, f_step, itinerary, itinerary_affine, orbit, Address, AffineMap, Case,
    ExactPoint, Itinerary, MapCase, Mat2, Orbit,
};
pub use error::{Error, Result};
pub use exactnum::{parse_rat, Qs3, Rat};
pub use necklace::{
    analytic_period, necklace, AnalyticPeriod, Category, Necklace, PeriodFamily, PeriodReport,
    VertexKind,
};
pub use oracle::{brute_force_period, SampleSpec, VerifyReport};
pub use render::{critical_preimages, render_fractal, render_levels, RenderOptions, SegmentSet};
pub use tiling::{TileAddress, TileShape, Window};
