//! Schubert polynomials of classical types via signed pipe dreams.

pub mod error;
pub mod pipedream;
pub mod poly;
pub mod schubert;
pub mod symfun;
pub mod weyl;

pub use error::{Error, Result};
pub use num_rational::BigRational;
pub use pipedream::{Base, Block, CellContent, Part, PipeDream};
pub use poly::{Family, Generator, Level, Monomial, Operator, Polynomial, Tagged, Var};
pub use schubert::{DoubleSchubert, Factorization};
pub use symfun::{ShiftedTableau, Tableau, YoungTableau};
pub use weyl::{GroupType, Letter, LehmerCode, Side, SignedPermutation, Word};
