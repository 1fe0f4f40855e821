//! Free Lie algebras in Lyndon coordinates, graded ideals and quotients,
//! holonomy Lie algebras and enveloping-algebra dimensions.

mod algebra;
mod envelope;
mod holonomy;
mod ideal;
mod lyndon;

pub use algebra::{FreeLieAlgebra, LieElement};
pub use envelope::{enveloping_dims, pbw_check, pbw_first_mismatch, pbw_series};
pub use holonomy::{
    group_from_quadratic_lie, holonomy_presentation, initial_form_lie_dims, initial_form_relations,
    link_holonomy, linking_graph_connected, HolonomyPresentation,
};
pub use ideal::{
    derived_subalgebra_spans, ideal_spans, quotient_dims, solvable_quotient_dims, GradedIdealSpan,
};
pub use lyndon::{is_lyndon, lyndon_words, standard_split, LyndonBasis};

/// Lyndon basis of the free Lie algebra on `b` generators up to degree `N`.
pub fn lyndon_basis(b: usize, max_degree: usize) -> LyndonBasis {
    LyndonBasis::new(b, max_degree)
}
