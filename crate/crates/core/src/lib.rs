//! Complete letter-to-letter transducers and the semigroups they generate.
//!
//! The crate is `no_std` (it only needs `alloc`). It covers
//!
//! * [`transducer`]: complete deterministic transducers, their left action on
//!   words and the dual (right) action of words on state sequences;
//! * [`ops`]: union, composition, powers, duals and the invertibility test;
//! * [`word_problem`]: an exact decision procedure for equality in the
//!   generated semigroup/monoid, relation enumeration and a brute-force
//!   separator search used as an oracle;
//! * [`free`]: generator automata for free semigroups and monoids;
//! * [`pcp`], [`blocks`], [`semigroup`], [`monoid`]: the two reductions from
//!   Post's correspondence problem and the block calculus they rely on;
//! * [`analysis`]: bounded checkers for cancellativity, equidivisibility,
//!   length functions and homomorphism extension.
//!
//! State sequences are written the way they act: the *rightmost* state reads
//! the input first, the leftmost state acts last. Index `0` of a state
//! sequence slice is therefore the state that acts last.

#![no_std]

extern crate alloc;

pub mod analysis;
pub mod blocks;
mod error;
pub mod free;
pub mod monoid;
pub mod ops;
pub mod pcp;
pub mod semigroup;
pub mod sequences;
pub mod transducer;
pub mod word_problem;

pub use error::Error;
pub use transducer::{LetterId, RawAutomaton, RawTransition, StateId, Transducer, ValidationReport};
pub use word_problem::{decide_equal, Decision, Relation};

pub type Result<T, E = Error> = core::result::Result<T, E>;
