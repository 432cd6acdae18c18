//! Kashiwara crystals for the finite types A1, A1xA1, A2, A3, B2 and G2:
//! a concrete `B(infinity)` with the star involution, highest-weight crystals
//! `B(lambda)`, Demazure crystals and the crystal Demazure operators, plus
//! crystal-free character oracles used to check them.

pub mod binf;
pub mod blambda;
pub mod cartan;
pub mod charring;
pub mod crystal;
pub mod demazure;
pub mod error;
pub mod par;
pub mod verify;
pub mod weyl;

pub use binf::{BInfElement, BInfinity};
pub use blambda::{BLambda, BLambdaElement, ElementId, HighestWeightCrystal, IString};
pub use cartan::{cartan_matrix, CartanData, TypeLabel, Weight};
pub use charring::WeightPolynomial;
pub use crystal::{Crystal, ExtInt, FormalSum};
pub use error::{Error, Result};
pub use verify::{CheckReport, Statement, TypeContext, Verdict};
pub use weyl::{ReducedWord, WeylElement, WeylGroup};
