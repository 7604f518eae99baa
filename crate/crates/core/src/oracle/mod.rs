//! Independent brute-force checks for the cohomology engine: grid enumeration of
//! fibers, Chevalley signs and explicit matrix models.

use core::fmt;

mod brute;
mod chevalley;
pub mod gaussian;
mod models;

pub use brute::brute_fiber;
pub use chevalley::{chevalley_sign, pinned_signs};
pub use models::{matrix_model_check, Assertion, Model, ALL_CHECKS};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    /// Rank or denominator beyond what the enumeration accepts.
    Guard,
    /// A point or one of its images is not on the enumeration grid.
    OffGrid,
    NotImaginary,
    Unsupported,
    /// Structure-constant signs disagree between two decompositions of a root.
    Inconsistent,
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::Guard => write!(f, "oracle guard exceeded"),
            OracleError::OffGrid => write!(f, "point leaves the enumeration grid"),
            OracleError::NotImaginary => write!(f, "root is not imaginary"),
            OracleError::Unsupported => write!(f, "unsupported datum"),
            OracleError::Inconsistent => write!(f, "inconsistent structure constants"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::InnerClassContext;
    use crate::exactlat::TorusPoint;
    use crate::rootdata::{BasedRootDatum, CartanType, InnerClass};

    fn datum(s: &str) -> BasedRootDatum {
        BasedRootDatum::simply_connected(&s.parse::<CartanType>().unwrap())
    }

    #[test]
    fn a1_examples() {
        let rd = datum("A1");
        let ic = InnerClass::compact(&rd);
        assert_eq!(brute_fiber(&rd, &ic, &TorusPoint::zero(1), 2).unwrap().len(), 2);
        assert_eq!(brute_fiber(&rd, &ic, &TorusPoint::from_fractions(&[(1, 2)]), 4).unwrap().len(), 1);
        assert_eq!(brute_fiber(&rd, &ic, &TorusPoint::zero(1), 9), Err(OracleError::Guard));
    }

    #[test]
    fn a3_flip_matches() {
        let rd = datum("A3");
        let ic = InnerClass::flip(&rd).unwrap();
        let ctx = InnerClassContext::new(&rd, &ic).unwrap();
        let z = TorusPoint::zero(3);
        assert_eq!(brute_fiber(&rd, &ic, &z, 4).unwrap().len(), ctx.strong_fiber(&z).unwrap().classes.len());
    }

    #[test]
    fn signs() {
        let a2 = datum("A2");
        let flip = InnerClass::flip(&a2).unwrap();
        assert_eq!(chevalley_sign(&a2, &flip, 2).unwrap(), -1);
        let a3 = datum("A3");
        let flip = InnerClass::flip(&a3).unwrap();
        let k = a3.root_system().find(&[0, 1, 0]).unwrap();
        assert_eq!(chevalley_sign(&a3, &flip, k).unwrap(), 1);
        let d4 = datum("D4");
        assert!(pinned_signs(&d4, &InnerClass::compact(&d4)).unwrap().iter().all(|&s| s == 1));
        assert_eq!(chevalley_sign(&a2, &InnerClass::flip(&a2).unwrap(), 0), Err(OracleError::NotImaginary));
        assert_eq!(pinned_signs(&datum("A5"), &InnerClass::compact(&datum("A5"))), Err(OracleError::Guard));
    }

    #[test]
    fn models() {
        for (m, a) in ALL_CHECKS {
            assert_eq!(matrix_model_check(m, a), Ok(()), "{m:?} {a:?}");
        }
    }
}
