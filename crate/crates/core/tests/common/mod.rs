#![allow(dead_code)]

use autfree_core::free::{adding_machine, free_semigroup_automaton, with_identity_state, StubProvider};
use autfree_core::monoid::{self, MonoidArtifacts};
use autfree_core::pcp::{EpcpInstance, PcpInstance, Tile};
use autfree_core::semigroup::{self, SemigroupArtifacts};
use autfree_core::{StateId, Transducer};

pub fn am() -> Transducer {
    adding_machine()
}

pub fn f2() -> Transducer {
    free_semigroup_automaton(&["x", "y"]).unwrap()
}

pub fn f2id() -> Transducer {
    with_identity_state(&f2(), "id").unwrap()
}

fn xy() -> Vec<String> {
    vec!["x".into(), "y".into()]
}

pub fn sgr(phi: &str, psi: &str) -> SemigroupArtifacts {
    let inst = PcpInstance::new(xy(), vec![Tile::from_chars(phi, psi)]).unwrap();
    semigroup::build(&inst, &StubProvider).unwrap()
}

pub fn sgr_solv() -> SemigroupArtifacts {
    sgr("x", "x")
}

pub fn sgr_unsolv() -> SemigroupArtifacts {
    sgr("x", "y")
}

pub fn mon(tiles: &[(&str, &str)]) -> MonoidArtifacts {
    let tiles = tiles.iter().map(|(a, b)| Tile::from_chars(a, b)).collect();
    monoid::build(&EpcpInstance::new(xy(), "e".into(), tiles).unwrap()).unwrap()
}

pub fn mon_triv() -> MonoidArtifacts {
    mon(&[("xe", "xe")])
}

pub fn mon_solv() -> MonoidArtifacts {
    mon(&[("xx", "xe"), ("ye", "xy")])
}

pub fn mon_unsolv() -> MonoidArtifacts {
    mon(&[("xe", "ye")])
}

/// All state sequences of length `0..=k` over `n` states, shortlex.
pub fn sequences(n: usize, k: usize) -> Vec<Vec<StateId>> {
    let space = autfree_core::sequences::SequenceSpace::new(n, k);
    (0..space.len()).map(|i| space.decode(i)).collect()
}

pub fn cat(a: &[StateId], b: &[StateId]) -> Vec<StateId> {
    let mut v = a.to_vec();
    v.extend_from_slice(b);
    v
}
