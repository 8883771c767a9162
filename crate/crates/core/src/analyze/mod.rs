//! Post-hoc analysis: solution verification, minimal-pair conditions,
//! point-type census and the exact counting argument.

mod counting;
mod minimality;
mod rational;
mod verify;

pub use counting::{
    admissible_types, counting_system, counting_verdict, full_system, is_admissible, point_type_census, ranges_for,
    system_verdict, type_index, type_name, type_of_index, CodeRange, CountingVerdict, PointType, PointTypeCensus,
    VerdictKind, POINT_TYPES,
};
pub use minimality::{minimality, BitString, Condition, MinimalityReport};
pub use rational::RationalMatrix;
pub use verify::{verify_solution, VerificationReport};
