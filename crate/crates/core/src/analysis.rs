//! Bounded checkers for properties of automaton semigroups.
//!
//! None of these properties is decidable in general, so every checker
//! searches up to an explicit bound and only ever reports "no
//! counterexample up to k" or a concrete counterexample that can be
//! re-verified with [`Counterexample::recheck`].

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::blocks::{Mark, Projection};
use crate::transducer::{LetterId, StateId, Transducer};
use crate::word_problem::{decide_equal, Decision, Relation, SequenceClasses};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    Cancellative(Side),
    Equidivisible,
    LengthFunction { proper: bool },
    HomExtension,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Counterexample {
    /// `s t = s t′` (left) or `t s = t′ s` (right) although `t ≠ t′`;
    /// `separator` tells `t` and `t′` apart.
    Cancellation { side: Side, s: Vec<StateId>, t: Vec<StateId>, t_prime: Vec<StateId>, separator: Vec<LetterId> },
    /// `s1 s2 = s1′ s2′`, but no `x` of length at most `x_bound` (or
    /// empty) gives `s1 = s1′ x, x s2 = s2′` or `s1′ = s1 x, x s2′ = s2`.
    Division { s1: Vec<StateId>, s2: Vec<StateId>, s1_prime: Vec<StateId>, s2_prime: Vec<StateId>, x_bound: usize },
    /// A relation whose sides have different weights.
    Weight { left: Vec<StateId>, right: Vec<StateId>, left_weight: u64, right_weight: u64 },
    /// A sequence of weight zero that does not act as the identity.
    ZeroWeight { p: Vec<StateId>, separator: Vec<LetterId> },
    /// `left = right` in the source, but their images differ in the target.
    Homomorphism {
        left: Vec<StateId>,
        right: Vec<StateId>,
        image_left: Vec<StateId>,
        image_right: Vec<StateId>,
        separator: Vec<LetterId>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    NoCounterexampleUpTo(usize),
    Counterexample(Counterexample),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub property: Property,
    pub bound: usize,
    pub verdict: Verdict,
}

impl PropertyReport {
    pub fn counterexample(&self) -> Option<&Counterexample> {
        match &self.verdict {
            Verdict::Counterexample(c) => Some(c),
            Verdict::NoCounterexampleUpTo(_) => None,
        }
    }

    pub fn passed(&self) -> bool {
        self.counterexample().is_none()
    }
}

fn cat(a: &[StateId], b: &[StateId]) -> Vec<StateId> {
    let mut v = a.to_vec();
    v.extend_from_slice(b);
    v
}

fn weight(weights: &[u64], p: &[StateId]) -> u64 {
    p.iter().map(|s| weights[s.index()]).sum()
}

impl Counterexample {
    /// Re-verifies the counterexample from scratch with [`decide_equal`] and
    /// the actions. `target` is needed for homomorphism counterexamples,
    /// `weights` for weight counterexamples.
    pub fn recheck(&self, t: &Transducer, target: Option<&Transducer>, weights: Option<&[u64]>) -> bool {
        let eq = |p: &[StateId], q: &[StateId]| decide_equal(t, p, q).is_equal();
        let separates = |t: &Transducer, p: &[StateId], q: &[StateId], u: &[LetterId]| t.act(p, u) != t.act(q, u);
        match self {
            Counterexample::Cancellation { side, s, t: a, t_prime: b, separator } => {
                let (l, r) = match side {
                    Side::Right => (cat(a, s), cat(b, s)),
                    _ => (cat(s, a), cat(s, b)),
                };
                eq(&l, &r) && separates(t, a, b, separator)
            }
            Counterexample::Division { s1, s2, s1_prime, s2_prime, x_bound } => {
                if !eq(&cat(s1, s2), &cat(s1_prime, s2_prime)) {
                    return false;
                }
                let mut xs: Vec<Vec<StateId>> = alloc::vec![Vec::new()];
                for l in 1..=*x_bound {
                    let space = crate::sequences::SequenceSpace::new(t.num_states(), l);
                    xs.extend(space.range_of_len(l).map(|i| space.decode(i)));
                }
                !xs.iter().any(|x| {
                    (eq(s1, &cat(s1_prime, x)) && eq(&cat(x, s2), s2_prime))
                        || (eq(s1_prime, &cat(s1, x)) && eq(&cat(x, s2_prime), s2))
                })
            }
            Counterexample::Weight { left, right, left_weight, right_weight } => {
                let Some(w) = weights else { return false };
                eq(left, right)
                    && weight(w, left) == *left_weight
                    && weight(w, right) == *right_weight
                    && left_weight != right_weight
            }
            Counterexample::ZeroWeight { p, separator } => {
                let Some(w) = weights else { return false };
                weight(w, p) == 0 && separates(t, p, &[], separator)
            }
            Counterexample::Homomorphism { left, right, image_left, image_right, separator } => {
                let Some(t2) = target else { return false };
                eq(left, right) && separates(t2, image_left, image_right, separator)
            }
        }
    }
}

fn report(property: Property, bound: usize, found: Option<Counterexample>) -> PropertyReport {
    let verdict = match found {
        Some(c) => Verdict::Counterexample(c),
        None => Verdict::NoCounterexampleUpTo(bound),
    };
    PropertyReport { property, bound, verdict }
}

fn separator(t: &Transducer, p: &[StateId], q: &[StateId]) -> Vec<LetterId> {
    match decide_equal(t, p, q) {
        Decision::Separated(u) => u,
        Decision::Equal => unreachable!("sequences from different classes are separated"),
    }
}

fn cancellation(classes: &SequenceClasses, t: &Transducer, k: usize, side: Side) -> Option<Counterexample> {
    let space = classes.space();
    let parts = space.range_of_lens(1, k);
    for s in parts.clone() {
        // product class -> first factor seen with that product
        let mut first: BTreeMap<usize, usize> = BTreeMap::new();
        for x in parts.clone() {
            let prod = match side {
                Side::Right => space.concat(x, s),
                _ => space.concat(s, x),
            }
            .expect("space covers products");
            let y = *first.entry(classes.class_of(prod)).or_insert(x);
            if !classes.equal(x, y) {
                let (a, b) = (space.decode(y), space.decode(x));
                return Some(Counterexample::Cancellation {
                    side,
                    s: space.decode(s),
                    separator: separator(t, &a, &b),
                    t: a,
                    t_prime: b,
                });
            }
        }
    }
    None
}

/// Searches non-empty `s, t, t′` of length at most `k` with `st = st′`
/// (left) or `ts = t′s` (right) but `t ≠ t′`.
pub fn check_cancellative(t: &Transducer, k: usize, side: Side) -> Result<PropertyReport> {
    if k == 0 {
        return Err(Error::ZeroBound);
    }
    let classes = SequenceClasses::new(t, 2 * k);
    let found = match side {
        Side::Left | Side::Right => cancellation(&classes, t, k, side),
        Side::Both => cancellation(&classes, t, k, Side::Left).or_else(|| cancellation(&classes, t, k, Side::Right)),
    };
    Ok(report(Property::Cancellative(side), k, found))
}

/// For every relation `s1 s2 = s1′ s2′` with non-empty parts of length at
/// most `k`, searches a middle factor `x` (empty or of length at most `k`)
/// with `s1 = s1′ x, x s2 = s2′` or `s1′ = s1 x, x s2′ = s2`.
///
/// A counterexample only says that no such `x` exists within the bound.
pub fn check_equidivisible(t: &Transducer, k: usize) -> Result<PropertyReport> {
    if k == 0 {
        return Err(Error::ZeroBound);
    }
    let classes = SequenceClasses::new(t, 2 * k);
    let space = classes.space();
    let parts = space.range_of_lens(1, k);
    let mut groups: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for s1 in parts.clone() {
        for s2 in parts.clone() {
            let prod = space.concat(s1, s2).expect("space covers products");
            groups.entry(classes.class_of(prod)).or_default().push((s1, s2));
        }
    }
    let middles = space.range_of_lens(0, k);
    // s1 = s1' x and x s2 = s2' for some x
    let splits = |s1: usize, s2: usize, s1p: usize, s2p: usize| {
        middles.clone().any(|x| {
            classes.equal(space.concat(s1p, x).unwrap(), s1) && classes.equal(space.concat(x, s2).unwrap(), s2p)
        })
    };
    // groups are visited in order of their first factorization
    let mut order: Vec<&Vec<(usize, usize)>> = groups.values().filter(|g| g.len() > 1).collect();
    order.sort_by_key(|g| g[0]);
    for g in order {
        for (j, &(s1p, s2p)) in g.iter().enumerate() {
            for &(s1, s2) in &g[..j] {
                if !splits(s1, s2, s1p, s2p) && !splits(s1p, s2p, s1, s2) {
                    let found = Counterexample::Division {
                        s1: space.decode(s1),
                        s2: space.decode(s2),
                        s1_prime: space.decode(s1p),
                        s2_prime: space.decode(s2p),
                        x_bound: k,
                    };
                    return Ok(report(Property::Equidivisible, k, Some(found)));
                }
            }
        }
    }
    Ok(report(Property::Equidivisible, k, None))
}

/// Checks that the state weights extend to a homomorphism into `(ℕ, +)` on
/// all relations up to length `k` (the empty sequence included). If
/// `proper`, sequences of weight zero must also act as the identity.
pub fn check_length_function(t: &Transducer, weights: &[u64], k: usize, proper: bool) -> Result<PropertyReport> {
    if k == 0 {
        return Err(Error::ZeroBound);
    }
    if weights.len() != t.num_states() {
        return Err(Error::Precondition(format!("{} weights for {} states", weights.len(), t.num_states())));
    }
    let classes = SequenceClasses::new(t, k);
    let space = classes.space();
    let mut rep: BTreeMap<usize, (usize, u64)> = BTreeMap::new();
    let property = Property::LengthFunction { proper };
    for i in 0..space.len() {
        let p = space.decode(i);
        let w = weight(weights, &p);
        let (j, wj) = *rep.entry(classes.class_of(i)).or_insert((i, w));
        if w != wj {
            let found = Counterexample::Weight { left: p, right: space.decode(j), left_weight: w, right_weight: wj };
            return Ok(report(property, k, Some(found)));
        }
        if proper && w == 0 && !classes.equal(i, 0) {
            let separator = separator(t, &p, &[]);
            return Ok(report(property, k, Some(Counterexample::ZeroWeight { p, separator })));
        }
    }
    Ok(report(property, k, None))
}

/// Checks whether `map` (a non-empty sequence of target states for every
/// source state) respects all relations between non-empty sequences of
/// length at most `k`.
pub fn check_hom_extension(
    source: &Transducer,
    target: &Transducer,
    map: &[Vec<StateId>],
    k: usize,
) -> Result<PropertyReport> {
    if k == 0 {
        return Err(Error::ZeroBound);
    }
    if map.len() != source.num_states() {
        return Err(Error::Precondition("the map must cover every source state".into()));
    }
    if let Some(i) = map.iter().position(|m| m.is_empty()) {
        return Err(Error::Precondition(format!(
            "`{}` is mapped to the empty sequence",
            source.state_name(StateId(i as u32))
        )));
    }
    if map.iter().flatten().any(|s| s.index() >= target.num_states()) {
        return Err(Error::Precondition("the map uses states outside the target".into()));
    }
    let image = |p: &[StateId]| -> Vec<StateId> { p.iter().flat_map(|s| map[s.index()].iter().copied()).collect() };
    let classes = SequenceClasses::new(source, k);
    let space = classes.space();
    let mut rep: BTreeMap<usize, usize> = BTreeMap::new();
    for i in space.range_of_lens(1, k) {
        let j = *rep.entry(classes.class_of(i)).or_insert(i);
        if j == i {
            continue;
        }
        let (left, right) = (space.decode(i), space.decode(j));
        let (image_left, image_right) = (image(&left), image(&right));
        if let Decision::Separated(separator) = decide_equal(target, &image_left, &image_right) {
            let found = Counterexample::Homomorphism { left, right, image_left, image_right, separator };
            return Ok(report(Property::HomExtension, k, Some(found)));
        }
    }
    Ok(report(Property::HomExtension, k, None))
}

/// Maps every state of `t` to the states of `target` named by its `π′`
/// image (markers become the target states `#1`/`#2`).
pub fn projection_map(t: &Transducer, pi: &Projection, target: &Transducer) -> Result<Vec<Vec<StateId>>> {
    t.state_ids().map(|p| target.parse_states(&pi.pi_prime(&[p]))).collect()
}

/// The first relation of length at most `k` (in the order of
/// [`crate::word_problem::enumerate_relations`]) whose sides have different
/// marker projections.
pub fn find_hash_violation(t: &Transducer, pi: &Projection, k: usize) -> Option<Relation> {
    let classes = SequenceClasses::new(t, k);
    let space = classes.space();
    // class -> (marker projection, first index) for every projection seen
    let mut seen: BTreeMap<usize, Vec<(Vec<Mark>, usize)>> = BTreeMap::new();
    for i in 0..space.len() {
        let p = space.decode(i);
        let hash = pi.pi_hash(&p);
        let entries = seen.entry(classes.class_of(i)).or_default();
        if let Some(&(_, j)) = entries.iter().find(|(h, _)| *h != hash) {
            return Some(Relation { left: p, right: space.decode(j) });
        }
        if !entries.iter().any(|(h, _)| *h == hash) {
            entries.push((hash, i));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free::{adding_machine, free_semigroup_automaton, with_identity_state};
    use alloc::vec;

    fn f2() -> Transducer {
        free_semigroup_automaton(&["x", "y"]).unwrap()
    }

    #[test]
    fn free_semigroups_pass() {
        let f = f2();
        assert!(check_cancellative(&f, 3, Side::Both).unwrap().passed());
        assert!(check_equidivisible(&f, 2).unwrap().passed());
        let fid = with_identity_state(&f, "id").unwrap();
        assert!(check_equidivisible(&fid, 2).unwrap().passed());
        let am = adding_machine();
        assert!(check_cancellative(&am, 2, Side::Both).unwrap().passed());
    }

    #[test]
    fn adding_machine_weights() {
        let am = adding_machine();
        assert!(check_length_function(&am, &[1, 0], 3, true).unwrap().passed());
        let r = check_length_function(&am, &[1, 1], 2, false).unwrap();
        let c = r.counterexample().unwrap();
        let id = am.parse_states(&["id"]).unwrap();
        assert_eq!(c, &Counterexample::Weight { left: id, right: vec![], left_weight: 1, right_weight: 0 });
        assert!(c.recheck(&am, None, Some(&[1, 1])));
        let r = check_length_function(&am, &[0, 0], 2, true).unwrap();
        assert!(matches!(r.counterexample(), Some(Counterexample::ZeroWeight { .. })));
        assert!(check_length_function(&am, &[1], 2, true).is_err());
    }

    #[test]
    fn homomorphisms() {
        let f = f2();
        let ident: Vec<Vec<StateId>> = f.state_ids().map(|p| vec![p]).collect();
        assert!(check_hom_extension(&f, &f, &ident, 3).unwrap().passed());

        let am = adding_machine();
        let map = vec![f.parse_states(&["x"]).unwrap(), f.parse_states(&["y"]).unwrap()];
        let r = check_hom_extension(&am, &f, &map, 2).unwrap();
        let c = r.counterexample().unwrap().clone();
        assert!(c.recheck(&am, Some(&f), None));
        let Counterexample::Homomorphism { left, right, .. } = c else { panic!() };
        assert_eq!(am.state_names(&left), ["q", "id"]);
        assert_eq!(am.state_names(&right), ["q"]);
        // id id = id is mapped to yy and y
        let yy = f.parse_states(&["y", "y"]).unwrap();
        assert!(!decide_equal(&f, &yy, &yy[..1]).is_equal());
    }

    #[test]
    fn free_monoid_is_cancellative() {
        let fid = with_identity_state(&f2(), "id").unwrap();
        assert!(check_cancellative(&fid, 2, Side::Both).unwrap().passed());
    }
}
