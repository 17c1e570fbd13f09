//! Two-setting, two-outcome behaviors and the CHSH local polytope.

pub mod behavior;
pub mod lhv;
pub mod lp;
pub mod singlet;

pub use behavior::{behavior_from_model, check_no_signalling_behavior, BehaviorTable, OUTCOMES};
pub use lhv::{
    chsh_expression, chsh_facet_membership, chsh_value, format_signs, lhv_membership, sign_conventions, ChshValue,
    LhvDecomposition, LhvVerdict, NonLocalWitness, Signs,
};
pub use singlet::{singlet_table, SingletTable, TSIRELSON_ANGLES};
