//! Rank formulas, Hilbert series, mildness tests, formality verdicts and
//! rank reports.

mod formality;
mod formulas;
mod hilbert;
mod mild;
mod report;

pub use formality::{compare_dims, graded_formality_compare, one_relator_graded_formality, FormalityVerdict};
pub use formulas::{
    chen_free, chen_free_ranks, labute_one_relator_ranks, moebius, one_relator_chen_series, series_ranks,
    surface_chen, surface_chen_ranks, surface_lcs, witt, witt_ranks,
};
pub use hilbert::{binomial, HilbertSeries};
pub use mild::{
    anick_mild_combinatorial, anick_mild_numeric, anick_mild_search, highest_term, mild_series,
    CombinatorialMildness, NumericMildness, EXHAUSTIVE_ORDERING_LIMIT,
};
pub use report::{
    free_rank_report, link_rank_report, presentation_rank_report, seifert_rank_report, surface_rank_report,
    Mildness, RankEntry, RankReport, RankTable, Source,
};
