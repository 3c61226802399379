//! Complete deterministic letter-to-letter transducers.
//!
//! A [`Transducer`] is a triple `(Q, Σ, δ)` in which every pair
//! `(state, input letter)` has exactly one transition `p --a/b--> q`.
//! Symbols are opaque strings; internally states and letters are interned as
//! [`StateId`] and [`LetterId`] and the transition function is a dense table.
//!
//! Descriptions coming from outside (files, unions of automata) are carried
//! as a [`RawAutomaton`] first and only become a [`Transducer`] once
//! [`RawAutomaton::validate`] finds nothing wrong with them.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LetterId(pub u32);

impl StateId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl LetterId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A transition `from --input/output--> to` over symbol names.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RawTransition {
    pub from: String,
    pub input: String,
    pub output: String,
    pub to: String,
}

impl RawTransition {
    pub fn new(from: &str, input: &str, output: &str, to: &str) -> Self {
        RawTransition {
            from: from.to_string(),
            input: input.to_string(),
            output: output.to_string(),
            to: to.to_string(),
        }
    }
}

/// An unchecked automaton description: declared states and letters plus a
/// list of transitions. Transitions are a set, so listing the same
/// transition twice is harmless.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawAutomaton {
    pub states: Vec<String>,
    pub alphabet: Vec<String>,
    pub transitions: Vec<RawTransition>,
}

/// Everything that keeps a [`RawAutomaton`] from being a complete
/// deterministic transducer.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub empty_states: bool,
    pub empty_alphabet: bool,
    pub repeated_symbols: Vec<String>,
    pub undeclared_states: Vec<String>,
    pub undeclared_letters: Vec<String>,
    /// `(state, letter)` cells without a transition.
    pub missing: Vec<(String, String)>,
    /// `(state, letter)` cells with two or more different transitions.
    pub duplicate: Vec<(String, String)>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        !self.empty_states
            && !self.empty_alphabet
            && self.repeated_symbols.is_empty()
            && self.undeclared_states.is_empty()
            && self.undeclared_letters.is_empty()
            && self.missing.is_empty()
            && self.duplicate.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return f.write_str("ok");
        }
        let mut parts: Vec<String> = Vec::new();
        if self.empty_states {
            parts.push("no states".into());
        }
        if self.empty_alphabet {
            parts.push("empty alphabet".into());
        }
        let mut list = |label: &str, items: &[String]| {
            if !items.is_empty() {
                parts.push(alloc::format!("{label}: {}", items.join(", ")));
            }
        };
        list("repeated symbols", &self.repeated_symbols);
        list("undeclared states", &self.undeclared_states);
        list("undeclared letters", &self.undeclared_letters);
        let cells =
            |v: &[(String, String)]| -> Vec<String> { v.iter().map(|(p, a)| alloc::format!("({p},{a})")).collect() };
        if !self.missing.is_empty() {
            parts.push(alloc::format!("missing: {}", cells(&self.missing).join(", ")));
        }
        if !self.duplicate.is_empty() {
            parts.push(alloc::format!("duplicate: {}", cells(&self.duplicate).join(", ")));
        }
        f.write_str(&parts.join("; "))
    }
}

impl RawAutomaton {
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport {
            empty_states: self.states.is_empty(),
            empty_alphabet: self.alphabet.is_empty(),
            ..ValidationReport::default()
        };

        let mut seen = BTreeSet::new();
        for s in &self.states {
            if !seen.insert(s.as_str()) {
                report.repeated_symbols.push(s.clone());
            }
        }
        let mut seen = BTreeSet::new();
        for a in &self.alphabet {
            if !seen.insert(a.as_str()) {
                report.repeated_symbols.push(a.clone());
            }
        }
        let states: BTreeSet<&str> = self.states.iter().map(String::as_str).collect();
        let letters: BTreeSet<&str> = self.alphabet.iter().map(String::as_str).collect();

        let mut undeclared_states = BTreeSet::new();
        let mut undeclared_letters = BTreeSet::new();
        let mut cells: BTreeMap<(&str, &str), BTreeSet<(&str, &str)>> = BTreeMap::new();
        for t in &self.transitions {
            for s in [&t.from, &t.to] {
                if !states.contains(s.as_str()) {
                    undeclared_states.insert(s.clone());
                }
            }
            for a in [&t.input, &t.output] {
                if !letters.contains(a.as_str()) {
                    undeclared_letters.insert(a.clone());
                }
            }
            cells.entry((t.from.as_str(), t.input.as_str())).or_default().insert((t.output.as_str(), t.to.as_str()));
        }
        report.undeclared_states = undeclared_states.into_iter().collect();
        report.undeclared_letters = undeclared_letters.into_iter().collect();

        for p in &self.states {
            for a in &self.alphabet {
                match cells.get(&(p.as_str(), a.as_str())) {
                    None => report.missing.push((p.clone(), a.clone())),
                    Some(targets) if targets.len() > 1 => report.duplicate.push((p.clone(), a.clone())),
                    Some(_) => {}
                }
            }
        }
        report
    }
}

/// A complete deterministic letter-to-letter transducer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transducer {
    states: Vec<String>,
    alphabet: Vec<String>,
    state_index: BTreeMap<String, u32>,
    letter_index: BTreeMap<String, u32>,
    // table[p * |Σ| + a] = (output, successor)
    table: Vec<(LetterId, StateId)>,
}

impl Transducer {
    /// Builds a transducer whose transition for `(p, a)` is `delta(p, a)`.
    ///
    /// Completeness and determinism hold by construction; this only fails on
    /// empty or repeated symbol lists.
    pub fn from_fn<F>(states: Vec<String>, alphabet: Vec<String>, mut delta: F) -> Result<Self>
    where
        F: FnMut(StateId, LetterId) -> (LetterId, StateId),
    {
        let report = ValidationReport {
            empty_states: states.is_empty(),
            empty_alphabet: alphabet.is_empty(),
            repeated_symbols: repeated(&states).chain(repeated(&alphabet)).collect(),
            ..ValidationReport::default()
        };
        if !report.is_ok() {
            return Err(Error::Invalid(Box::new(report)));
        }
        let state_index = index_of(&states);
        let letter_index = index_of(&alphabet);
        let (n, m) = (states.len(), alphabet.len());
        let mut table = Vec::with_capacity(n * m);
        for p in 0..n {
            for a in 0..m {
                let (b, q) = delta(StateId(p as u32), LetterId(a as u32));
                assert!(b.index() < m && q.index() < n, "transition target out of range");
                table.push((b, q));
            }
        }
        Ok(Transducer { states, alphabet, state_index, letter_index, table })
    }

    #[allow(clippy::result_large_err)]
    pub fn from_raw(raw: &RawAutomaton) -> core::result::Result<Self, ValidationReport> {
        let report = raw.validate();
        if !report.is_ok() {
            return Err(report);
        }
        let states = index_of(&raw.states);
        let letters = index_of(&raw.alphabet);
        let m = raw.alphabet.len();
        let mut table = alloc::vec![(LetterId(0), StateId(0)); raw.states.len() * m];
        for t in &raw.transitions {
            let p = states[t.from.as_str()] as usize;
            let a = letters[t.input.as_str()] as usize;
            table[p * m + a] = (LetterId(letters[t.output.as_str()]), StateId(states[t.to.as_str()]));
        }
        Ok(Transducer {
            states: raw.states.clone(),
            alphabet: raw.alphabet.clone(),
            state_index: states,
            letter_index: letters,
            table,
        })
    }

    pub fn to_raw(&self) -> RawAutomaton {
        RawAutomaton {
            states: self.states.clone(),
            alphabet: self.alphabet.clone(),
            transitions: self
                .transitions()
                .map(|(p, a, b, q)| RawTransition {
                    from: self.state_name(p).into(),
                    input: self.letter_name(a).into(),
                    output: self.letter_name(b).into(),
                    to: self.state_name(q).into(),
                })
                .collect(),
        }
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_letters(&self) -> usize {
        self.alphabet.len()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn state_ids(&self) -> impl Iterator<Item = StateId> + Clone {
        (0..self.states.len() as u32).map(StateId)
    }

    pub fn letter_ids(&self) -> impl Iterator<Item = LetterId> + Clone {
        (0..self.alphabet.len() as u32).map(LetterId)
    }

    pub fn state(&self, name: &str) -> Option<StateId> {
        self.state_index.get(name).copied().map(StateId)
    }

    pub fn letter(&self, name: &str) -> Option<LetterId> {
        self.letter_index.get(name).copied().map(LetterId)
    }

    pub fn state_name(&self, p: StateId) -> &str {
        &self.states[p.index()]
    }

    pub fn letter_name(&self, a: LetterId) -> &str {
        &self.alphabet[a.index()]
    }

    pub fn parse_states<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<StateId>> {
        names.iter().map(|n| self.state(n.as_ref()).ok_or_else(|| Error::UnknownState(n.as_ref().into()))).collect()
    }

    pub fn parse_word<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<LetterId>> {
        names.iter().map(|n| self.letter(n.as_ref()).ok_or_else(|| Error::UnknownLetter(n.as_ref().into()))).collect()
    }

    pub fn state_names(&self, p: &[StateId]) -> Vec<String> {
        p.iter().map(|&s| self.state_name(s).to_string()).collect()
    }

    pub fn letter_names(&self, u: &[LetterId]) -> Vec<String> {
        u.iter().map(|&a| self.letter_name(a).to_string()).collect()
    }

    /// The transition of `p` on `a`: `(output, successor)`.
    #[inline]
    pub fn step(&self, p: StateId, a: LetterId) -> (LetterId, StateId) {
        self.table[p.index() * self.alphabet.len() + a.index()]
    }

    /// All transitions `(from, input, output, to)` ordered by state, then letter.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, LetterId, LetterId, StateId)> + '_ {
        let m = self.alphabet.len();
        self.table.iter().enumerate().map(move |(i, &(b, q))| (StateId((i / m) as u32), LetterId((i % m) as u32), b, q))
    }

    /// Feeds one letter through the state sequence `p` (rightmost state
    /// first), replacing `p` by `p · a` and returning `p ∘ a`.
    #[inline]
    pub fn advance(&self, p: &mut [StateId], a: LetterId) -> LetterId {
        let mut c = a;
        for s in p.iter_mut().rev() {
            let (out, next) = self.step(*s, c);
            *s = next;
            c = out;
        }
        c
    }

    /// `p ∘ u` together with `p · u`.
    pub fn run(&self, p: &[StateId], u: &[LetterId]) -> (Vec<LetterId>, Vec<StateId>) {
        let mut seq = p.to_vec();
        let out = u.iter().map(|&a| self.advance(&mut seq, a)).collect();
        (out, seq)
    }

    /// The left action `p ∘ u`.
    pub fn act(&self, p: &[StateId], u: &[LetterId]) -> Vec<LetterId> {
        self.run(p, u).0
    }

    /// The dual action `p · u`.
    pub fn dual_act(&self, p: &[StateId], u: &[LetterId]) -> Vec<StateId> {
        self.run(p, u).1
    }
}

fn index_of(symbols: &[String]) -> BTreeMap<String, u32> {
    symbols.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect()
}

fn repeated(symbols: &[String]) -> impl Iterator<Item = String> + '_ {
    let mut seen = BTreeSet::new();
    symbols.iter().filter(move |s| !seen.insert(s.as_str())).cloned()
}

/// Renders a composite state name as a parenthesised tuple, e.g. `(x,y)`.
pub fn tuple_name<S: AsRef<str>>(parts: &[S]) -> String {
    let mut name = String::from("(");
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            name.push(',');
        }
        name.push_str(p.as_ref());
    }
    name.push(')');
    name
}
