//! Self-adjoint extensions of symmetric operators through boundary triples.
//!
//! The crate works entirely over finite-dimensional boundary spaces `G = C^n`:
//!
//! * [`linrel`]: linear relations on `G`, parameter pairs `(A, B)` encoding the
//!   boundary condition `A Γ₁φ = B Γ₂φ`, Cayley transforms and coordinate charts
//!   of Lagrangian subspaces.
//! * [`krein`]: Krein-type resolvent corrections `Bᴴ(QBᴴ − Aᴴ)⁻¹` and
//!   `(BQ − A)⁻¹B`, the spectral indicator `σ_min(BQ(z) − A)` and eigenvalue
//!   scans for any [`krein::BoundaryModel`].
//! * [`point`]: generalized point interactions for `−d²/dx²` on the line.
//! * [`robin`]: the half-plane Laplacian with Robin/mixed boundary conditions,
//!   discretized on a periodic boundary grid.
//!
//! The crate is `no_std` (with `alloc`) when the default `std` feature is off.
//!
//! ```
//! use kreinkit_core::krein::{self, ScanOptions};
//! use kreinkit_core::point::{self, InteractionPoint, PointModel};
//! use kreinkit_core::Complex64;
//!
//! let model = PointModel::new(vec![
//!     InteractionPoint::delta(-1.0, -2.0),
//!     InteractionPoint::delta(1.0, -2.0),
//! ])?;
//! let pair = model.build_pair()?;
//! let states = point::bound_states(&model, &pair, -10.0, -0.01, &ScanOptions::default())?;
//! assert_eq!(states.len(), 2);
//! for s in &states {
//!     println!("z = {:.10}, f(0) = {}", s.spectral.eigenvalue, s.eigenfunctions[0].eval(0.0));
//! }
//! let g = point::green_function(&model, &pair, 0.3, -0.7, Complex64::new(-4.0, 0.0))?;
//! assert!(g.im.abs() < 1e-12);
//! let r = krein::q_identity_residual(&model, Complex64::new(-1.0, 0.5), Complex64::new(-2.0, 0.0))?;
//! assert!(r < 1e-6);
//! # Ok::<(), kreinkit_core::Error>(())
//! ```

#![cfg_attr(not(feature = "std"), no_std)]
// `!(x <= tol)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod error;
pub mod krein;
pub mod linalg;
pub mod linrel;
pub mod point;
pub mod quadrature;
pub mod robin;
pub mod scan;

pub use error::{Error, Result};
pub use krein::{BoundaryModel, ScanOptions, SpectralResult};
pub use linalg::{ComplexMatrix, ComplexVector};
pub use linrel::{LinearRelation, ParamPair};
pub use num_complex::Complex64;
pub use point::{InteractionPoint, PointModel};
pub use robin::RobinProblem;
