//! Verification campaigns, reports and caching.

pub mod cache;
pub mod campaign;
pub mod task;

pub use campaign::{run_campaign, run_one, run_tasks, Report, ReportSet, Status};
pub use task::{enumerate, run_task, Caps, Kind, Params, Task};
