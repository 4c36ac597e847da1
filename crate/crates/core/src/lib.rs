//! Exact computer-algebra kernel for deciding finite domination of bounded
//! free cochain complexes over the Laurent polynomial ring `Z[x,x⁻¹,y,y⁻¹]`.
//!
//! The decision procedure tensors a complex with eight Novikov-type
//! completions (four corner rings `Z⟨⟨x^±,y^±⟩⟩` and four edge rings
//! `Z[x,x⁻¹]⟨⟨y^±⟩⟩`, `Z[y,y⁻¹]⟨⟨x^±⟩⟩`) and certifies contractibility of
//! each by unit-pivot elimination. The crate also builds the supporting
//! machinery this rests on: mapping tori of cochain complexes, diagrams over
//! the face lattice of the square `[-1,1]²`, Čech complexes, a finite free
//! replacement complex over `Z`, and exact integer homology via Smith normal
//! form.
//!
//! All arithmetic is exact: polynomial coefficients are arbitrary-precision
//! integers, and truncated series carry an explicit window plus a guaranteed
//! radius inside which their terms are known to be exact.

pub mod complexes;
pub mod detector;
pub mod flavors;
pub mod homology;
pub mod json;
pub mod laurent;
pub mod mat;
pub mod multicomplex;
pub mod square;
pub mod tori;

pub use complexes::{ChainMap, FreeComplex, Homotopy};
pub use detector::{check_finite_domination, eliminate, witness, DominationReport, FlavorVerdict};
pub use flavors::{detection_flavors, RingFlavor, TruncatedSeries, UnitAnswer};
pub use laurent::{LaurentPoly, Monomial, Sign};
