//! Finite-field arithmetic: the prime field F_q, generic extensions
//! F[y]/(f), the two-level tower F_q ⊂ F_{q^k} ⊂ F_{q^n}, and the
//! root-finding routines the decryption algorithm relies on.

mod ext;
mod field;
mod irreducible;
pub mod poly;
mod prime;
mod roots;
mod tower;

pub use ext::ExtField;
pub use field::{lex_cmp, Field};
pub use irreducible::{is_irreducible, random_irreducible, random_irreducible_over};
pub use prime::{is_prime, prime_factors, PrimeField};
pub use roots::{is_qm1_power, primitive_element, rth_root, solve_quadratic, sqrt, QuadraticRoots};
pub use tower::{linearized_t, BigField, SmallField, TowerContext};
