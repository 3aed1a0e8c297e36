//! Exact optimization over set families.

mod clique;
mod cross;
mod report;
mod stars;

pub use cross::{
    enumerate_optima, solve_cross, transversal_closure, CrossInstance, CrossSolution, Guardrails, Mode, Strategy,
};
pub use report::{
    classify_optimum, common_centers, common_star_center, instance_catalogs, is_single_full, max_cross,
    max_cross_with, predicted_optimum, Classification, ConfigurationValues, OptimumReport, Prediction, RegimeFlags,
    REPORT_SCHEMA_VERSION,
};
pub use stars::{has_strict_t_star_property, has_t_star_property, largest_non_star, max_t_intersecting, star_catalog, StarCatalog};
