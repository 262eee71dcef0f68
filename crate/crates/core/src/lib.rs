pub mod bounds;
pub mod codes;
pub mod error;
pub mod forge;
pub mod galois;
pub mod modring;
pub mod polyring;
pub mod reproduce;
pub mod spectral;
pub mod wtdist;

pub use codes::{BoseDistance, CyclicCode};
pub use error::{Error, Result};
pub use galois::{FieldElement, GaloisField, RootOfUnity};
pub use modring::{CosetPartition, DefiningSet};
pub use polyring::{Poly, QuotientPoly};
pub use spectral::Spectrum;
