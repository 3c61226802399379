//! The word problem of automaton semigroups and monoids.
//!
//! Two state sequences are equal in the generated monoid if they act the
//! same way on every word. Since `p · u` always has length `|p|`, only
//! finitely many pairs `(p · u, q · u)` are reachable, and exploring them is
//! a complete decision procedure.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

use crate::sequences::SequenceSpace;
use crate::transducer::{LetterId, StateId, Transducer};

/// Result of comparing two state sequences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Equal,
    /// A word on which the two sequences produce different outputs.
    Separated(Vec<LetterId>),
}

impl Decision {
    pub fn is_equal(&self) -> bool {
        matches!(self, Decision::Equal)
    }

    pub fn separator(&self) -> Option<&[LetterId]> {
        match self {
            Decision::Equal => None,
            Decision::Separated(u) => Some(u),
        }
    }
}

/// A pair of state sequences with the same action.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Relation {
    pub left: Vec<StateId>,
    pub right: Vec<StateId>,
}

/// Decides `p =_T q`.
///
/// Breadth-first search over the reachable pairs `(p · u, q · u)`, stopping
/// at the first letter on which the outputs differ. The returned separator
/// is therefore a shortest one. The empty sequence is handled as the literal
/// identity.
pub fn decide_equal(t: &Transducer, p: &[StateId], q: &[StateId]) -> Decision {
    let split = p.len();
    let mut start = p.to_vec();
    start.extend_from_slice(q);

    // node -> (parent node, letter read from the parent)
    let mut nodes: Vec<(Vec<StateId>, usize, LetterId)> = Vec::new();
    let mut seen: BTreeSet<Vec<StateId>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    nodes.push((start, usize::MAX, LetterId(0)));
    queue.push_back(0);

    while let Some(n) = queue.pop_front() {
        for a in t.letter_ids() {
            let mut next = nodes[n].0.clone();
            let (left, right) = next.split_at_mut(split);
            if t.advance(left, a) != t.advance(right, a) {
                let mut word = alloc::vec![a];
                let mut m = n;
                while m != 0 {
                    word.push(nodes[m].2);
                    m = nodes[m].1;
                }
                word.reverse();
                return Decision::Separated(word);
            }
            if !seen.contains(&next) {
                seen.insert(next.clone());
                nodes.push((next, n, a));
                queue.push_back(nodes.len() - 1);
            }
        }
    }
    Decision::Equal
}

/// True iff `p` acts as the identity on all words.
pub fn acts_as_identity(t: &Transducer, p: &[StateId]) -> bool {
    decide_equal(t, p, &[]).is_equal()
}

/// Result of [`bounded_separator`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundedDecision {
    /// No word of length at most the depth separates the sequences.
    EqualUpTo(usize),
    Separated(Vec<LetterId>),
}

/// Brute force: tries every word of length at most `depth`, shortest first.
pub fn bounded_separator(t: &Transducer, p: &[StateId], q: &[StateId], depth: usize) -> BoundedDecision {
    fn search(t: &Transducer, p: &[StateId], q: &[StateId], remaining: usize, prefix: &mut Vec<LetterId>) -> bool {
        for a in t.letter_ids() {
            let (mut p2, mut q2) = (p.to_vec(), q.to_vec());
            let (b, c) = (t.advance(&mut p2, a), t.advance(&mut q2, a));
            prefix.push(a);
            if b != c || (remaining > 1 && search(t, &p2, &q2, remaining - 1, prefix)) {
                return true;
            }
            prefix.pop();
        }
        false
    }
    for d in 1..=depth {
        let mut prefix = Vec::new();
        if search(t, p, q, d, &mut prefix) {
            return BoundedDecision::Separated(prefix);
        }
    }
    BoundedDecision::EqualUpTo(depth)
}

/// The `=_T` classes of all state sequences of length at most `n`,
/// computed by partition refinement on the union of the powers `T^0..T^n`.
///
/// Class ids are assigned in order of first appearance in the shortlex
/// numbering of [`SequenceSpace`], so they are deterministic.
#[derive(Clone, Debug)]
pub struct SequenceClasses {
    space: SequenceSpace,
    class: Vec<u32>,
    num_classes: usize,
}

impl SequenceClasses {
    pub fn new(t: &Transducer, n: usize) -> Self {
        let space = SequenceSpace::new(t.num_states(), n);
        let m = t.num_letters();
        let size = space.len();
        // succ[i * m + a] = (output, successor index)
        let mut succ = Vec::with_capacity(size * m);
        for i in 0..size {
            let seq = space.decode(i);
            for a in t.letter_ids() {
                let mut s = seq.clone();
                let b = t.advance(&mut s, a);
                succ.push((b, space.index(&s) as u32));
            }
        }

        let relabel = |keys: Vec<Vec<u32>>| -> (Vec<u32>, usize) {
            let mut ids: BTreeMap<Vec<u32>, u32> = BTreeMap::new();
            let class: Vec<u32> = keys
                .into_iter()
                .map(|k| {
                    let next = ids.len() as u32;
                    *ids.entry(k).or_insert(next)
                })
                .collect();
            (class, ids.len())
        };

        let outputs = (0..size).map(|i| succ[i * m..(i + 1) * m].iter().map(|&(b, _)| b.0).collect()).collect();
        let (mut class, mut count) = relabel(outputs);
        loop {
            let keys = (0..size)
                .map(|i| {
                    let mut k = Vec::with_capacity(m + 1);
                    k.push(class[i]);
                    k.extend(succ[i * m..(i + 1) * m].iter().map(|&(_, s)| class[s as usize]));
                    k
                })
                .collect();
            let (next, next_count) = relabel(keys);
            class = next;
            if next_count == count {
                break;
            }
            count = next_count;
        }
        SequenceClasses { space, class, num_classes: count }
    }

    pub fn space(&self) -> &SequenceSpace {
        &self.space
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn class_of(&self, idx: usize) -> usize {
        self.class[idx] as usize
    }

    pub fn class_of_seq(&self, seq: &[StateId]) -> usize {
        self.class_of(self.space.index(seq))
    }

    pub fn equal(&self, i: usize, j: usize) -> bool {
        self.class[i] == self.class[j]
    }

    /// Members of every class, each list in increasing index order.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = alloc::vec![Vec::new(); self.num_classes];
        for (i, &c) in self.class.iter().enumerate() {
            out[c as usize].push(i);
        }
        out
    }
}

/// All relations `(p, q)` with `|q| ≤ |p| ≤ k` and `p ≠ q`, one per
/// unordered pair. Pairs are ordered by `p`, then `q`, in shortlex order;
/// `q` always precedes `p` in that order.
pub fn enumerate_relations(t: &Transducer, k: usize) -> Vec<Relation> {
    let classes = SequenceClasses::new(t, k);
    relations_of(&classes)
}

pub(crate) fn relations_of(classes: &SequenceClasses) -> Vec<Relation> {
    let space = classes.space();
    let members = classes.members();
    let mut out = Vec::new();
    for p in 0..space.len() {
        let left = space.decode(p);
        for &q in members[classes.class_of(p)].iter().take_while(|&&q| q < p) {
            out.push(Relation { left: left.clone(), right: space.decode(q) });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free::{adding_machine, free_semigroup_automaton, with_identity_state};
    use alloc::vec;

    #[test]
    fn adding_machine_decisions() {
        let am = adding_machine();
        let id = am.parse_states(&["id"]).unwrap();
        assert_eq!(decide_equal(&am, &id, &[]), Decision::Equal);
        assert!(acts_as_identity(&am, &id));
        let q = am.parse_states(&["q"]).unwrap();
        let qq = am.parse_states(&["q", "q"]).unwrap();
        let zero = am.parse_word(&["0"]).unwrap();
        assert_eq!(decide_equal(&am, &q, &qq), Decision::Separated(zero.clone()));
        assert_eq!(bounded_separator(&am, &q, &qq, 1), BoundedDecision::Separated(zero));
        assert_eq!(bounded_separator(&am, &id, &[], 4), BoundedDecision::EqualUpTo(4));
        assert!(decide_equal(&am, &qq, &qq).is_equal());
    }

    #[test]
    fn free_automaton_decisions() {
        let f = free_semigroup_automaton(&["x", "y"]).unwrap();
        let x = f.parse_states(&["x"]).unwrap();
        let y = f.parse_states(&["y"]).unwrap();
        assert!(!acts_as_identity(&f, &x));
        assert_eq!(bounded_separator(&f, &x, &y, 1), BoundedDecision::Separated(f.parse_word(&["x"]).unwrap()));
        assert!(enumerate_relations(&f, 3).is_empty());
    }

    #[test]
    fn separators_separate() {
        let am = adding_machine();
        let space = SequenceSpace::new(2, 3);
        for i in 0..space.len() {
            for j in 0..space.len() {
                let (p, q) = (space.decode(i), space.decode(j));
                if let Decision::Separated(u) = decide_equal(&am, &p, &q) {
                    assert_ne!(am.act(&p, &u), am.act(&q, &u));
                }
            }
        }
    }

    #[test]
    fn identity_relations() {
        let f = free_semigroup_automaton(&["x", "y"]).unwrap();
        let fid = with_identity_state(&f, "id").unwrap();
        let rels = enumerate_relations(&fid, 1);
        let id = fid.parse_states(&["id"]).unwrap();
        assert_eq!(rels, vec![Relation { left: id, right: vec![] }]);
    }

    #[test]
    fn adding_machine_relations() {
        let am = adding_machine();
        let rels = enumerate_relations(&am, 2);
        let s = |names: &[&str]| am.parse_states(names).unwrap();
        for (l, r) in [
            (s(&["id", "q"]), s(&["q"])),
            (s(&["q", "id"]), s(&["q"])),
            (s(&["id", "id"]), s(&["id"])),
            (s(&["id"]), s(&[])),
        ] {
            assert!(rels.contains(&Relation { left: l, right: r }));
        }
        for r in &rels {
            assert!(r.left.len() >= r.right.len() && r.left != r.right);
            assert!(decide_equal(&am, &r.left, &r.right).is_equal());
        }
        let mut sorted = rels.clone();
        sorted.dedup();
        assert_eq!(sorted.len(), rels.len());
    }

    #[test]
    fn classes_match_the_decider() {
        let am = adding_machine();
        let classes = SequenceClasses::new(&am, 3);
        let space = classes.space();
        for i in 0..space.len() {
            for j in 0..space.len() {
                let d = decide_equal(&am, &space.decode(i), &space.decode(j));
                assert_eq!(classes.equal(i, j), d.is_equal());
            }
        }
    }
}
