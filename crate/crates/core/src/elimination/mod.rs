//! Modular-method elimination: Frey families, `B_q` and `A_q`, standard elimination
//! over a packet list and refined elimination per prime of the coefficient field.

mod engine;
mod family;

pub use engine::{
    a_q, b_q, eliminate, pair_tables, passing_pair_count, refined_eliminate, refined_from_tables, standard_eliminate,
    AqValue, EliminationReport, PacketElimination, RefinedReport, RefinedRequest, RefinedVerdict, ResidueVerdict,
    SurvivingSet,
};
pub use family::{
    load_family, parse_family, Admissibility, Branch, Congruence, FamilyCoefficients, FamilyFile, FamilyStatus,
    FreyFamily, IntTerm, PairEntry, PairTable, ReductionRule, Specialization, Term,
};
