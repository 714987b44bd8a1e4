//! Expansion of random regular graphs: sampling, exact `i_α`, and the
//! analytic condition behind the published table for degree 6.

mod condition;
pub mod interval;
mod sample;

pub use condition::{
    best_eta, condition_lhs, condition_rhs, ln_lhs, ln_rhs, published_table, verify_rows, verify_table, BestEta,
    ConditionValue, ExpanderError, RowReport, TableReport, TableRow, TABLE_TOL_BITS,
};
pub use interval::Interval;
pub use sample::{
    i_alpha_capped, i_alpha_exact, sample_configuration, sample_regular, sample_regular_where, Configuration, IAlpha,
    DEFAULT_IALPHA_CAP, DEFAULT_RESAMPLE_CAP,
};
