//! Benchmarking harness: sampling, campaigns, logs and profiles.

mod campaign;
mod profiles;
mod runlog;
mod sampling;

pub use campaign::{
    run_campaign, Blackbox, BlackboxError, CampaignConfig, CoordinateSearch, EvaluatorBlackbox, RandomSearch,
    Solver, SubprocessBlackbox,
};
pub use profiles::{
    best_known, data_profile, performance_profile, solve_time, write_curves, Curves, ProfileError, ProfileProblem,
};
pub use runlog::{read_logs, write_logs, LogEntry, LogParseError, RunLog, CSV_HEADER};
pub use sampling::{feasibility_stats, lhs_sample, local_sample, sampling_bounds, screen_point, summarize, FeasibilityStats, Screen};
