//! Hilbert newform eigenvalue packets as data: loading, residue primes of the
//! coefficient field, and the congruence checkers that consume them.

mod checks;
mod packet;

pub use checks::{
    conjugate_congruence_check, galois_prime_maps, packet_from_elliptic_curve, trace_contradiction_check,
    trace_contradiction_report, ContradictionReport,
};
pub use packet::{
    load_packets, parse_packets, Level, NewformPacket, PacketFile, PacketStatus, ResidueMapSpec, ResiduePrime,
};

#[cfg(test)]
mod tests;
