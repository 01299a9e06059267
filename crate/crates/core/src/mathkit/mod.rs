//! Exact constants, small symmetric linear algebra, Haar sampling and series
//! extrapolation used by every other module.

mod eigen;
mod extrapolate;
mod rng;
mod sampling;
mod symmetric;
mod volumes;

pub use eigen::symmetric_eigenvalues;
pub use extrapolate::{extrapolate_limit, EpsilonLadder, LadderKind, LimitEstimate, SeriesPoint};
pub use rng::Streams;
pub use sampling::{haar_orthogonal, orthonormal_complement, sample_grassmannian, sample_unit_sphere};
pub use symmetric::{elementary_symmetric, elementary_symmetric_all, elementary_from_power_sums};
pub use volumes::{ball_volume, sphere_volume, VolumeTable};
