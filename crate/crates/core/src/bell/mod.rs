//! CHSH correlations, Bell factors, observable families and their optimization.

mod chsh;
mod families;
mod observables;
mod optimize;

pub use chsh::{
    bell_parameter, correlation, horodecki_max_bell, psi_family_state, standard_two_qubit_observables,
    xstate_bell_closed_form, xstate_bell_formula, xstate_observables, CIRELSON,
};
pub use families::{
    family_a_set1, family_b_p1, family_b_p2, family_by_name, LocalRotationFamily, ObservableFamily,
    QubitQutritFamilyA, QubitQutritFamilyB, SuThreeOrder, U2Variant,
};
pub use observables::{DichotomicObservable, ObservableSet, DICHOTOMY_TOL};
pub use optimize::{optimize_bell, polish, BellResult, OptimizeConfig};
