//! Edit distance: DP kernels, symbol-level alignments and gadget-level
//! coarse alignments.

mod alignment;
mod coarse;
mod kernels;

pub use alignment::{align_cost, alignment_count, min_align_cost_brute, Alignment};
#[allow(unused_imports)]
pub(crate) use alignment::min_over_alignments;
pub use coarse::{
    coarse_edit_cost, coarse_min_brute, coarse_validate, for_each_coarse, CoarseAlignment, CoarseViolation, Side,
    COARSE_BRUTE_MAX_L,
};
pub use kernels::{edit_distance, edit_distance_banded, edit_distance_bitparallel, edit_distance_within, Bounded};
