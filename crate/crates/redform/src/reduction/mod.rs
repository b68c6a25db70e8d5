//! Level-by-level elimination on isotypical flags and the block iteration.

mod engine;
mod ledger;
mod rank;

pub use engine::{
    reduce_full, reduce_two_block, BlockReport, CutReduction, LevelReport, ReductionOptions,
    ReductionResult,
};
pub use ledger::{pick_point, search_values, Component, ParamLedger};
pub use rank::{rank_minimize, RankComponent};
