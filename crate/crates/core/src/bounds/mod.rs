//! Audits of the covering bounds and the squarefree machinery behind them.

mod audit;
pub mod constants;
mod squarefree;

pub use audit::{
    a_bound_audit, g_lower_bound_audit, AuditKind, BoundReport, BoundRow, A_AUDIT_LIMIT,
    G_AUDIT_LIMIT,
};
pub use squarefree::{
    predicted_density, squarefree_density, squarefree_exponent_scan, squarefree_filter,
    DensityReport, FilterReport, DENSITY_LIMIT,
};
