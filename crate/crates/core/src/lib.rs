//! Integer sorting algorithms (insertion, bucket, counting, LSD radix) and a
//! deterministic harness that generates benchmark inputs, times the sorts,
//! tracks their auxiliary memory and renders the results.

pub mod alloc_track;
pub mod bench;
pub mod input;
pub mod report;
pub mod sorting;
pub mod verify;

pub use bench::{Algorithm, BenchConfig, BenchResult, Sorter};
pub use input::{generate, CaseId, InputSpec, RngState, SequenceFile};
pub use sorting::{
    bucket_index, bucket_sort, build_radix_plan, counting_sort_by_digit, extract_digit,
    insertion_sort, radix_sort_lsd, Key, RadixPlan, Record, SortError,
};

#[cfg(feature = "global-tracking")]
#[global_allocator]
static GLOBAL: alloc_track::TrackingAllocator<std::alloc::System> =
    alloc_track::TrackingAllocator::new(std::alloc::System);
