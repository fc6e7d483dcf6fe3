//! Geometry of the complex plane, Moebius maps, inversion, stereographic
//! projection, quaternion rotations and the Hopf fibration, with scene export.

pub mod complex;
pub mod error;
pub mod export;
pub mod fit;
pub mod hopf;
pub mod inversion;
pub mod linking;
pub mod moebius;
pub mod point;
pub mod quaternion;
pub mod scene;
pub mod stereo;
pub mod tol;
pub mod verify;

pub use complex::Complex;
pub use error::{GeomError, Result};
pub use hopf::{HopfConvention, HopfVariant, S3Point};
pub use quaternion::{Quaternion, UnitQuaternion, Vec3};
pub use scene::SceneDocument;
