//! Tilings of the sphere by congruent pentagons.

pub mod generate;
pub mod map;
pub mod search;
pub mod shape;
pub mod validate;

pub use generate::{all_tilings, earth_map_distance5, pentagonal_subdivision, special_tiling_f20, tiling_by_name, Base, NamedTiling};
pub use map::{CombTiling, StructureError, Tile};
pub use search::{search, SearchConfig, SearchOutcome, SearchStatus};
pub use shape::TileShape;
pub use validate::{mutation_survivors, validate, TilingReport};
