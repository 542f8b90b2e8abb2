//! Exterior algebra of multivectors and multiforms over a real vector space
//! of dimension up to 12, with the duality contractions, metric extensors and
//! the metric products built from them.
//!
//! Elements are dense: a value in `Λ(V)` stores all `2^n` blade
//! coefficients, indexed by a bitmask of basis indices (bit `j-1` set for
//! `e_j`). Multivectors and multiforms share one generic type, [`Graded`],
//! tagged with a [`Kind`] so the two spaces cannot be mixed by accident.
//!
//! ```
//! use dualmetric::{Dimension, Multivector, Multiform, Duality};
//!
//! let d = Dimension::new(2).unwrap();
//! let e12 = Multivector::blade(d, &[1, 2]).unwrap();
//! let eps1 = Multiform::blade(d, &[1]).unwrap();
//! let duality = Duality::shared(d);
//! let e2 = duality.left_contract_mv(&eps1, &e12).unwrap();
//! assert_eq!(e2, Multivector::blade(d, &[2]).unwrap());
//! ```

pub mod blade;
pub mod compound;
pub mod duality;
pub mod error;
pub mod graded;
pub mod linalg;
pub mod metric;
pub mod oracle;
pub mod products;
pub mod sampling;

pub use blade::{BladeIndex, Dimension, MAX_DIM};
pub use compound::Compound;
pub use duality::{pair, Duality};
pub use error::{AlgebraError, Result};
pub use graded::{Contravariant, Covariant, Graded, Kind, Multiform, Multivector};
pub use metric::{MetricExtensor, MetricTensor, PseudoscalarSet};
pub use products::{
    invert_metric_via_formula, invert_metric_via_formula_alt, MetricSpace,
    PSEUDOSCALAR_NORM_FLOOR,
};
