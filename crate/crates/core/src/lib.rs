pub mod conic;
pub mod error;
pub mod exact;
pub mod gkz;
pub mod hodge;
pub mod hypergeom;
pub mod lattice;
pub mod monodromy;
pub mod ore;
pub mod report;
pub mod verify;
