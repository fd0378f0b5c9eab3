//! Confluent Hasse diagrams for partial orders of dimension at most two.
//!
//! The pipeline places the elements of a two-dimensional order on a
//! `(2n+1) × (2n+1)` grid from a realizer, inserts one junction per
//! non-element cut of the lattice completion, and connects the points along
//! the cover pairs of the dominance order. Rotated by 45°, those segments
//! form an upward planar drawing in which every cover of the input is a
//! smooth track, using the fewest junctions any confluent diagram can.
//!
//! When the order contains a forced junction with a chain of elements beside
//! it (for instance `e0 < e1 < e3` next to a junction joining `e0` and `e2`
//! below `e3` and `e4`), a smooth track can also run between a comparable
//! non-cover pair. No confluent diagram of such an order avoids this, and
//! [`diagram::validate_diagram`] reports it under its cover check.
//!
//! Series-parallel orders given as decomposition trees have a separate
//! linear-time layout in [`sp`].
//!
//! ```
//! use confluent_core::{poset::Poset, pipeline::draw_poset};
//!
//! let p = Poset::from_relations(
//!     &["a", "b", "c", "d"],
//!     &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
//! ).unwrap();
//! let (_, d) = draw_poset(&p).unwrap();
//! assert_eq!(d.junction_count(), 1);
//! ```

pub mod bench;
pub mod bits;
pub mod diagram;
pub mod error;
pub mod geom;
pub mod grid;
pub mod oracle;
pub mod pipeline;
pub mod poset;
pub mod realizer;
pub mod render;
pub mod sp;

pub use error::{Error, Result};
