//! Union, composition, powers and duals of transducers.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::sequences::SequenceSpace;
use crate::transducer::{tuple_name, LetterId, RawAutomaton, StateId, Transducer};
use crate::{Error, Result};

/// Componentwise union of states, letters and transitions.
///
/// The union is only accepted if it is again complete and deterministic,
/// e.g. for disjoint state sets over a common alphabet, or for a common
/// state set over disjoint alphabets.
pub fn union(t1: &Transducer, t2: &Transducer) -> Result<Transducer> {
    let mut raw = t1.to_raw();
    let r2 = t2.to_raw();
    for s in r2.states {
        if t1.state(&s).is_none() {
            raw.states.push(s);
        }
    }
    for a in r2.alphabet {
        if t1.letter(&a).is_none() {
            raw.alphabet.push(a);
        }
    }
    let mut seen: BTreeSet<_> = raw.transitions.iter().cloned().collect();
    for t in r2.transitions {
        if seen.insert(t.clone()) {
            raw.transitions.push(t);
        }
    }
    Transducer::from_raw(&raw).map_err(|r| Error::Invalid(Box::new(r)))
}

/// Unions a list of transducers left to right.
pub fn union_all<'a, I>(parts: I) -> Result<Transducer>
where
    I: IntoIterator<Item = &'a Transducer>,
{
    let mut it = parts.into_iter();
    let first = it.next().ok_or_else(|| {
        Error::Invalid(Box::new(crate::ValidationReport {
            empty_states: true,
            empty_alphabet: true,
            ..Default::default()
        }))
    })?;
    it.try_fold(first.clone(), |acc, t| union(&acc, t))
}

/// The composition `T2 ∘ T1`: the pair state `(q2,q1)` acts like the state
/// sequence `q2 q1`, so `q1` reads the input first.
pub fn compose(t2: &Transducer, t1: &Transducer) -> Result<Transducer> {
    let a1: BTreeSet<&String> = t1.alphabet().iter().collect();
    let a2: BTreeSet<&String> = t2.alphabet().iter().collect();
    if a1 != a2 {
        return Err(Error::AlphabetMismatch);
    }
    // letters of t1 translated to t2's numbering and back
    let to2: Vec<LetterId> = t1.alphabet().iter().map(|a| t2.letter(a).unwrap()).collect();
    let to1: Vec<LetterId> = t2.alphabet().iter().map(|a| t1.letter(a).unwrap()).collect();
    let n1 = t1.num_states();
    let mut names = Vec::with_capacity(t2.num_states() * n1);
    for q2 in t2.states() {
        for q1 in t1.states() {
            names.push(tuple_name(&[q2, q1]));
        }
    }
    Transducer::from_fn(names, t1.alphabet().to_vec(), |pair, a| {
        let (p2, p1) = (StateId((pair.index() / n1) as u32), StateId((pair.index() % n1) as u32));
        let (b, q1) = t1.step(p1, a);
        let (c, q2) = t2.step(p2, to2[b.index()]);
        (to1[c.index()], StateId((q2.index() * n1 + q1.index()) as u32))
    })
}

/// Name of the single state of `T^k` that stands for the sequence `p`
/// (`|p| = k`).
pub fn power_state_name(t: &Transducer, p: &[StateId]) -> String {
    if p.len() == 1 {
        t.state_name(p[0]).to_string()
    } else {
        tuple_name(&t.state_names(p))
    }
}

/// The `k`-th power `T^k`, whose states are the length-`k` state sequences
/// of `T` (rendered `(p_k,...,p_1)` in sequence order; `T^1 = T`).
pub fn power(t: &Transducer, k: usize) -> Result<Transducer> {
    if k == 0 {
        return Err(Error::ZeroPower);
    }
    if k == 1 {
        return Ok(t.clone());
    }
    let space = SequenceSpace::new(t.num_states(), k);
    let range = space.range_of_len(k);
    let names: Vec<String> = range.clone().map(|i| power_state_name(t, &space.decode(i))).collect();
    let first = range.start;
    Transducer::from_fn(names, t.alphabet().to_vec(), |s, a| {
        let mut seq = space.decode(first + s.index());
        let b = t.advance(&mut seq, a);
        (b, StateId((space.index(&seq) - first) as u32))
    })
}

/// The dual `∂T`: states and letters swap roles, `p --a/b--> q` becomes
/// `a --p/q--> b`.
pub fn dual(t: &Transducer) -> Result<Transducer> {
    Transducer::from_fn(t.alphabet().to_vec(), t.states().to_vec(), |a, p| {
        let (b, q) = t.step(StateId(p.0), LetterId(a.0));
        (LetterId(q.0), StateId(b.0))
    })
}

/// True iff every state permutes the alphabet.
pub fn is_invertible(t: &Transducer) -> bool {
    t.state_ids().all(|p| {
        let mut hit = alloc::vec![false; t.num_letters()];
        t.letter_ids().all(|a| {
            let b = t.step(p, a).0.index();
            !core::mem::replace(&mut hit[b], true)
        })
    })
}

/// True iff `s` is a subautomaton of `t`: its states, letters and
/// transitions all occur in `t`.
pub fn is_subautomaton(s: &Transducer, t: &Transducer) -> bool {
    let raw: RawAutomaton = s.to_raw();
    raw.states.iter().all(|p| t.state(p).is_some())
        && raw.alphabet.iter().all(|a| t.letter(a).is_some())
        && raw.transitions.iter().all(|tr| {
            let (p, a) = (t.state(&tr.from).unwrap(), t.letter(&tr.input).unwrap());
            let (b, q) = t.step(p, a);
            t.letter_name(b) == tr.output && t.state_name(q) == tr.to
        })
}
