//! Closed-form invariants of the two Jordan-block automorphisms.

pub mod coefficients;
pub mod generators;
pub mod graded;
pub mod recurrence;
pub mod special;
pub mod systems;

pub use coefficients::{coeff_table, BlockTables, CoefficientTable, TableKind};
pub use generators::{
    affine_generators, m_count, mu_count, u_generator, v_generator, w_generator, y_generator, Case, Generator,
    GeneratorSet,
};
pub use graded::{f_generator, graded_generator, homogenize_z, p_generator, q_generator, GradedKind};
pub use recurrence::{recurrence_check, RecurrenceSpec};
pub use special::{s_element, special_generators, t_element, theta, theta_tilde};
