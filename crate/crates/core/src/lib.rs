//! Computational workbench for partitions of ω under coarsening.
//!
//! The crate is organised bottom-up:
//!
//! * [`partition`]: finite and eventually-singleton partitions, the
//!   coarsening order `⊑`, its join `⊓`, segments `⊑_seg` and the finite
//!   segment sets used by every other module.
//! * [`codec`]: translation between reals (sets of pair codes) and
//!   partitions.
//! * [`filters`]: finitely generated filters of partitions.
//! * [`ramsey`]: colourings of segment sets, monochromatic witness search,
//!   the `Min` colouring lift and Hales–Jewett machinery.
//! * [`forcing`]: dual Mathias conditions, restricted dual Laver trees, the
//!   uniform-condition embedding and the good/bad/ugly classification.
//! * [`game`]: the partition game as a validated state machine.
//! * [`oracle`]: brute-force reference implementations used to cross-check
//!   the fast paths.
//!
//! All objects are finite. Infinite partitions are represented by
//! eventually-singleton ones and every search carries an explicit bound.

pub mod codec;
pub mod filters;
pub mod forcing;
pub mod game;
pub mod oracle;
pub mod par;
pub mod partition;
pub mod ramsey;

pub use partition::{
    is_almost_coarser, is_coarser, is_segment, join, FinPart, Part, Partition, PartitionError,
    XPart,
};
