//! From an EPCP instance to an automaton monoid with an identity state `e`.
//!
//! States are `Λ ∪ I ∪ {e, #1, #2}`. Compared to the semigroup reduction,
//! tiles are read one symbol at a time: the sequence `i^L` turns `α_0`
//! into `α_L` by passing through the letters `α_{i,1}, ..., α_{i,L-1}`
//! and leaves the tile `φ(i)` behind as a state sequence.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::analysis::find_hash_violation;
use crate::blocks::{Image, Projection};
use crate::free::{free_semigroup_automaton, with_identity_state};
use crate::pcp::{format_solution, l_hom, EpcpInstance};
use crate::semigroup::{extract_block, mark_position, HASH1, HASH2};
use crate::transducer::{LetterId, StateId, Transducer};
use crate::word_problem::Relation;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidSymbols {
    pub e: StateId,
    pub hash1: StateId,
    pub hash2: StateId,
    pub gamma: Vec<LetterId>,
    pub a: LetterId,
    pub b: LetterId,
    pub iota: LetterId,
    pub alpha_0: LetterId,
    /// `alpha_chain[i - 1][l - 1]` is `α_{i,l}` for `1 ≤ l < L`.
    pub alpha_chain: Vec<Vec<LetterId>>,
    pub alpha_l: LetterId,
    pub beta_0: LetterId,
    pub beta_chain: Vec<Vec<LetterId>>,
    pub beta_l: LetterId,
    pub f_alpha: LetterId,
    pub f_beta: LetterId,
    pub f: LetterId,
}

#[derive(Clone, Debug)]
pub struct MonoidArtifacts {
    pub automaton: Transducer,
    pub instance: EpcpInstance,
    /// The free automaton over `Λ ∪ I` with the identity state `e`.
    pub rhat: Transducer,
    /// `π` with `e ↦ ε`, extended by the markers.
    pub projection: Projection,
    pub symbols: MonoidSymbols,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Alpha,
    Beta,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Letter {
    Gamma,
    A,
    B,
    Iota,
    // α_0 and α_L both start a chain
    Entry(Side),
    Exit(Side),
    // (side, tile index 0-based, l)
    Chain(Side, usize, usize),
    Fail(Side),
    F,
}

pub fn build(inst: &EpcpInstance) -> Result<MonoidArtifacts> {
    let len = inst.len();
    let index = inst.index();
    let e_name = inst.padding();
    let basis: Vec<String> = inst.lambda().iter().chain(&index).cloned().collect();
    let rhat = with_identity_state(&free_semigroup_automaton(&basis)?, e_name)?;
    let n = rhat.num_states();
    let e = StateId(n as u32 - 1);
    for h in [HASH1, HASH2] {
        if rhat.state(h).is_some() {
            return Err(Error::NameClash(h.into()));
        }
    }

    let mut alphabet = rhat.alphabet().to_vec();
    let mut kinds = alloc::vec![Letter::Gamma; alphabet.len()];
    let mut push = |name: String, kind: Letter| -> Result<LetterId> {
        if alphabet.contains(&name) {
            return Err(Error::NameClash(name));
        }
        alphabet.push(name);
        kinds.push(kind);
        Ok(LetterId(alphabet.len() as u32 - 1))
    };
    let a = push("a".into(), Letter::A)?;
    let b = push("b".into(), Letter::B)?;
    let iota = push("iota".into(), Letter::Iota)?;
    let mut family = |side: Side, name: &str| -> Result<(LetterId, Vec<Vec<LetterId>>, LetterId)> {
        let entry = push(format!("{name}_0"), Letter::Entry(side))?;
        let mut chain = Vec::new();
        for (i, idx) in index.iter().enumerate() {
            let mut row = Vec::new();
            for l in 1..len {
                row.push(push(format!("{name}_{{{idx},{l}}}"), Letter::Chain(side, i, l))?);
            }
            chain.push(row);
        }
        let exit = push(format!("{name}_L"), Letter::Exit(side))?;
        Ok((entry, chain, exit))
    };
    let (alpha_0, alpha_chain, alpha_l) = family(Side::Alpha, "alpha")?;
    let (beta_0, beta_chain, beta_l) = family(Side::Beta, "beta")?;
    let f_alpha = push("f_alpha".into(), Letter::Fail(Side::Alpha))?;
    let f_beta = push("f_beta".into(), Letter::Fail(Side::Beta))?;
    let f = push("f".into(), Letter::F)?;

    // tile_state[side][i][l - 1] = the state φ_l(i) (resp. ψ_l(i)),
    // where φ(i) = φ_L(i) ... φ_1(i)
    let tile_state = |w: &[String]| -> Vec<StateId> {
        (1..=len).map(|l| rhat.state(&w[len - l]).expect("tile symbols are states")).collect()
    };
    let phi: Vec<Vec<StateId>> = inst.tiles().iter().map(|t| tile_state(&t.phi)).collect();
    let psi: Vec<Vec<StateId>> = inst.tiles().iter().map(|t| tile_state(&t.psi)).collect();
    let first_index = inst.lambda().len();

    let mut states = rhat.states().to_vec();
    states.push(HASH1.into());
    states.push(HASH2.into());
    let (hash1, hash2) = (StateId(n as u32), StateId(n as u32 + 1));
    let chain_letter = |side: Side, i: usize, l: usize| match side {
        Side::Alpha => alpha_chain[i][l - 1],
        Side::Beta => beta_chain[i][l - 1],
    };
    let by_side = |side: Side, x: LetterId, y: LetterId| if side == Side::Alpha { x } else { y };

    let automaton = Transducer::from_fn(states, alphabet, |p, c| {
        let kind = kinds[c.index()];
        if p == e {
            return (c, e);
        }
        if p == hash1 || p == hash2 {
            return match kind {
                Letter::Gamma => (c, e),
                Letter::A => (b, e),
                Letter::B => (b, p),
                Letter::Iota => (if p == hash1 { alpha_0 } else { beta_0 }, e),
                Letter::Entry(s) | Letter::Chain(s, _, _) => (by_side(s, f_alpha, f_beta), e),
                Letter::Exit(_) => (f, e),
                Letter::Fail(_) | Letter::F => (c, e),
            };
        }
        let tile = p.index().checked_sub(first_index);
        match kind {
            Letter::Gamma => rhat.step(p, c),
            Letter::B => (b, p),
            Letter::A | Letter::Iota | Letter::Fail(_) | Letter::F => (c, e),
            Letter::Entry(s) | Letter::Exit(s) => match tile {
                Some(i) => {
                    let w = if s == Side::Alpha { &phi[i] } else { &psi[i] };
                    (chain_letter(s, i, 1), w[0])
                }
                None => (by_side(s, f_alpha, f_beta), e),
            },
            Letter::Chain(s, j, l) => match tile {
                Some(i) if i == j => {
                    let w = if s == Side::Alpha { &phi[i] } else { &psi[i] };
                    let out = if l + 1 < len { chain_letter(s, i, l + 1) } else { by_side(s, alpha_l, beta_l) };
                    (out, w[l])
                }
                _ => (by_side(s, f_alpha, f_beta), e),
            },
        }
    })?;

    let mut images: Vec<Image> = rhat.states().iter().map(|s| Image::Word(alloc::vec![s.clone()])).collect();
    images[e.index()] = Image::Word(Vec::new());
    let projection = Projection::new(images).with_marks();
    let symbols = MonoidSymbols {
        e,
        hash1,
        hash2,
        gamma: rhat.letter_ids().collect(),
        a,
        b,
        iota,
        alpha_0,
        alpha_chain,
        alpha_l,
        beta_0,
        beta_chain,
        beta_l,
        f_alpha,
        f_beta,
        f,
    };
    Ok(MonoidArtifacts { automaton, instance: inst.clone(), rhat, projection, symbols })
}

/// Verdict of [`MonoidArtifacts::check_free_presentation`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresentationVerdict {
    /// Every relation up to the bound keeps the marker projection.
    ConsistentUpTo(usize),
    /// A relation between sequences with different marker projections.
    Violation(Relation),
}

impl MonoidArtifacts {
    pub fn symbol_table(&self) -> Vec<(&'static str, String)> {
        let t = &self.automaton;
        let s = &self.symbols;
        let mut out = alloc::vec![
            ("e", t.state_name(s.e).to_string()),
            ("hash1", t.state_name(s.hash1).to_string()),
            ("hash2", t.state_name(s.hash2).to_string()),
        ];
        let roles = ["a", "b", "iota", "alpha_0", "alpha_L", "beta_0", "beta_L", "f_alpha", "f_beta", "f"];
        let letters = [s.a, s.b, s.iota, s.alpha_0, s.alpha_l, s.beta_0, s.beta_l, s.f_alpha, s.f_beta, s.f];
        for (role, l) in roles.into_iter().zip(letters) {
            out.push((role, t.letter_name(l).to_string()));
        }
        out
    }

    pub fn index_state(&self, i: usize) -> Result<StateId> {
        self.automaton
            .state(&i.to_string())
            .filter(|_| i >= 1 && i <= self.instance.tiles().len())
            .ok_or_else(|| Error::InvalidInstance(format!("no tile with index {i}")))
    }

    pub fn index_word(&self, word: &[usize]) -> Result<Vec<StateId>> {
        word.iter().map(|&i| self.index_state(i)).collect()
    }

    /// The closed form of `p · a^μ` for `0 ≤ μ ≤ s`:
    /// `(p_s #x_s)...(p_{μ+1} #x_{μ+1}) p_μ e^(μ+|p_{μ-1}...p_0|)`, where the
    /// exponent counts the states of the lower blocks, `e` included.
    pub fn shift_law(&self, p: &[StateId], mu: usize) -> Result<Vec<StateId>> {
        let s = self.projection.factorize(p).s();
        if mu > s {
            return Err(Error::ShiftOutOfRange { mu, min: 0, max: s });
        }
        if mu == 0 {
            return Ok(p.to_vec());
        }
        let cut = mark_position(&self.projection, p, mu);
        let mut out = p[..cut].to_vec();
        out.extend(core::iter::repeat_n(self.symbols.e, p.len() - cut));
        Ok(out)
    }

    /// The relation `#1 L(î) #1 = #1 L(î) #2` for a solution `î`.
    pub fn witness_relation(&self, solution: &[usize]) -> Result<Relation> {
        if !self.instance.is_solution(solution) {
            return Err(Error::NotASolution(format_solution(solution)));
        }
        let hat = self.index_word(&l_hom(solution, self.instance.len()))?;
        let (h1, h2) = (self.symbols.hash1, self.symbols.hash2);
        let mut left = alloc::vec![h1];
        left.extend(&hat);
        let mut right = left.clone();
        left.push(h1);
        right.push(h2);
        Ok(Relation { left, right })
    }

    pub fn extract_solution(&self, p: &[StateId], q: &[StateId]) -> Result<Vec<usize>> {
        let s = &self.symbols;
        let block = extract_block(&self.automaton, &self.projection, s.a, s.iota, s.f, p, q)?;
        let image = self.projection.pi(&block)?;
        let len = self.instance.len();
        let bad = || {
            Error::Consistency(format!(
                "block `{}` is not e-equivalent to a word L(î)",
                self.automaton.state_names(&block).concat()
            ))
        };
        if image.is_empty() || image.len() % len != 0 {
            return Err(bad());
        }
        let mut word = Vec::new();
        for chunk in image.chunks(len) {
            let i = chunk[0].parse::<usize>().map_err(|_| bad())?;
            if self.index_state(i).is_err() || chunk.iter().any(|c| *c != chunk[0]) {
                return Err(bad());
            }
            word.push(i);
        }
        if !self.instance.is_solution(&word) {
            return Err(Error::Consistency(format!("extracted `{}` is not a solution", format_solution(&word))));
        }
        Ok(word)
    }

    /// Looks for a relation of length at most `k` whose sides have different
    /// marker projections. Finding none is evidence only.
    pub fn check_free_presentation(&self, k: usize) -> Result<PresentationVerdict> {
        if k == 0 {
            return Err(Error::ZeroBound);
        }
        Ok(match find_hash_violation(&self.automaton, &self.projection, k) {
            Some(r) => PresentationVerdict::Violation(r),
            None => PresentationVerdict::ConsistentUpTo(k),
        })
    }
}
