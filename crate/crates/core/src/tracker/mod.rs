//! Base paths and numerical continuation along them.

mod continuation;
mod path;

pub use continuation::{
    continue_branch, BranchSample, FiberSample, FiberTrack, StepRecord, SurfacePoint, TrackResult,
};
pub(crate) use continuation::{check_margin, check_start, track_fiber};
pub use path::{loop_path, reverse, BasePath, Segment};
