//! Elliptic and genus-2 curves over monogenic orders: point counts, traces, Euler
//! factors, Igusa-Clebsch invariants and residual Frobenius data.

mod congruence;
mod count;
mod elliptic;
mod frobenius;
mod hyperelliptic;
mod igusa;
mod io;

pub use congruence::{check_congruence, CongruenceReport, PrimeCheck, PrimeVerdict};
pub use count::{count_double_cover, count_sextic_model, count_weierstrass, MAX_ENUMERATION};
pub use elliptic::{weierstrass_invariants, EcInvariants, EllipticCurveNF, ReductionType};
pub use frobenius::{frobenius_projective_order, ProjectiveOrder, RepeatedRootConvention};
pub use hyperelliptic::{
    describe_sqrt2, g2_rm_split, p7_prime, rm_reduce_mod_p7, EulerFactorG2, HyperellipticCurveNF, RmSplit,
};
pub use igusa::{igusa_clebsch_sextic, transvectant, weighted_pp_equal, IgusaClebsch, IC_WEIGHTS};
pub use io::{load_curve, parse_curve, CurveFile, CurveKind, CurveModel};
