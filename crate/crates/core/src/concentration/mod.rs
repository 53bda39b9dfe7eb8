//! Chernoff tail bounds, the auxiliary functions used to control them, and
//! checks of the three subset edge-count events on concrete graphs.

mod appendix;
mod chernoff;
mod events;

pub use appendix::{
    f, g, h1, h2, h3, verify_appendix, GridReport, GridSpec, MonotonicityCounts, F_THRESHOLD,
    G_THRESHOLD,
};
pub use chernoff::{
    binomial_tail_check, chernoff_lower, chernoff_upper, phi, ChernoffBounds, TailCheck,
};
pub use events::{
    check_subset_events, default_size_schedule, event_flags, subset_flags, EventFlags,
    EventMode, EventSummary, Regime, RegimeRow, SamplePlan, DEFAULT_EVENTS_CAP,
};
