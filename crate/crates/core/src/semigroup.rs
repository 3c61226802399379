//! From a PCP instance to an automaton semigroup.
//!
//! The automaton `T` has the states `R̂ ⊎ {#1, #2}`, where `R̂` generates the
//! free semigroup over `Λ ∪ I`, and the letters `Γ ∪ {a, b, ι, α, α′, f_α,
//! β, β′, f_β, f}`. The two sequences `#1 î #1` and `#1 î #2` are equal in
//! `S(T)` exactly when `î` solves the instance; any relation between
//! sequences with different marker projections yields a solution.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::blocks::{Image, Projection};
use crate::free::{build_r_hat_semigroup, FreeBasisProvider, RHat};
use crate::pcp::PcpInstance;
use crate::transducer::{LetterId, StateId, Transducer};
use crate::word_problem::{decide_equal, Relation};
use crate::{Error, Result};

/// Names of the letters added to `Γ`, in declaration order.
pub const LETTERS: [&str; 10] = ["a", "b", "iota", "alpha", "alpha'", "f_alpha", "beta", "beta'", "f_beta", "f"];

pub const HASH1: &str = "#1";
pub const HASH2: &str = "#2";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupSymbols {
    pub lambda_sharp: StateId,
    pub lambda_r: StateId,
    pub hash1: StateId,
    pub hash2: StateId,
    pub gamma: Vec<LetterId>,
    pub a: LetterId,
    pub b: LetterId,
    pub iota: LetterId,
    pub alpha: LetterId,
    pub alpha_prime: LetterId,
    pub f_alpha: LetterId,
    pub beta: LetterId,
    pub beta_prime: LetterId,
    pub f_beta: LetterId,
    pub f: LetterId,
}

#[derive(Clone, Debug)]
pub struct SemigroupArtifacts {
    pub automaton: Transducer,
    pub instance: PcpInstance,
    pub rhat: RHat,
    /// `π` on `R̂`, extended by the markers.
    pub projection: Projection,
    pub symbols: SemigroupSymbols,
}

#[derive(Clone, Copy)]
enum Kind {
    Lambda,
    Index(usize),
}

/// Builds `T` for `inst`. The free generating automaton comes from
/// [`build_r_hat_semigroup`]; for instances with tiles of length one it is
/// self-contained, longer tiles depend on `provider`.
pub fn build(inst: &PcpInstance, provider: &dyn FreeBasisProvider) -> Result<SemigroupArtifacts> {
    let (sharp, r) = inst.special_symbols()?;
    let index = inst.index();
    let len = inst.max_len();
    let rhat = build_r_hat_semigroup(inst.lambda(), &index, len, provider)?;
    let base = &rhat.automaton;
    for h in [HASH1, HASH2] {
        if base.state(h).is_some() {
            return Err(Error::NameClash(h.into()));
        }
    }
    for l in LETTERS {
        if base.letter(l).is_some() {
            return Err(Error::NameClash(l.into()));
        }
    }

    let missing = |w: &[String]| Error::Consistency(format!("R̂ has no state for `{}`", w.concat()));
    let word_state = |w: &[String]| rhat.word_state(w).ok_or_else(|| missing(w));
    let lambda_sharp = word_state(core::slice::from_ref(&sharp))?;
    // lambda_r_pow[m] = the Λ̂ state λ_R^m, for 1 <= m <= L
    let mut lambda_r_pow = alloc::vec![StateId(0)];
    for m in 1..=len {
        lambda_r_pow.push(word_state(&alloc::vec![r.clone(); m])?);
    }
    let phi_state: Vec<StateId> = inst.tiles().iter().map(|t| word_state(&t.phi)).collect::<Result<_>>()?;
    let psi_state: Vec<StateId> = inst.tiles().iter().map(|t| word_state(&t.psi)).collect::<Result<_>>()?;
    let mut kind = Vec::new();
    let mut r_len = Vec::new();
    for p in base.state_ids() {
        let Image::Word(w) = rhat.projection.image(p) else {
            return Err(Error::Consistency("marker inside R̂".into()));
        };
        r_len.push(w.len());
        kind.push(match index.iter().position(|i| w.len() == 1 && w[0] == *i) {
            Some(i) => Kind::Index(i),
            None => Kind::Lambda,
        });
    }

    let n = base.num_states();
    let g = base.num_letters();
    let mut states = base.states().to_vec();
    states.push(HASH1.into());
    states.push(HASH2.into());
    let mut alphabet = base.alphabet().to_vec();
    alphabet.extend(LETTERS.iter().map(|s| s.to_string()));
    let letter = |k: usize| LetterId((g + k) as u32);
    let (hash1, hash2) = (StateId(n as u32), StateId(n as u32 + 1));
    let symbols = SemigroupSymbols {
        lambda_sharp,
        lambda_r: lambda_r_pow[1],
        hash1,
        hash2,
        gamma: base.letter_ids().collect(),
        a: letter(0),
        b: letter(1),
        iota: letter(2),
        alpha: letter(3),
        alpha_prime: letter(4),
        f_alpha: letter(5),
        beta: letter(6),
        beta_prime: letter(7),
        f_beta: letter(8),
        f: letter(9),
    };
    let s = &symbols;

    let automaton = Transducer::from_fn(states, alphabet, |p, c| {
        if c.index() < g {
            // Γ: R̂ as before, both markers copy λ_#
            return base.step(if p.index() < n { p } else { lambda_sharp }, c);
        }
        if p.index() >= n {
            let sharp = lambda_sharp;
            return match c {
                _ if c == s.a => (s.b, sharp),
                _ if c == s.b => (s.b, p),
                _ if c == s.iota => (if p == hash1 { s.alpha } else { s.beta }, sharp),
                _ if c == s.alpha => (s.f_alpha, sharp),
                _ if c == s.beta => (s.f_beta, sharp),
                _ if c == s.alpha_prime || c == s.beta_prime => (s.f, sharp),
                _ => (c, sharp),
            };
        }
        let down = lambda_r_pow[r_len[p.index()]];
        match (c, kind[p.index()]) {
            _ if c == s.b => (s.b, p),
            (_, Kind::Index(i)) if c == s.alpha || c == s.alpha_prime => (s.alpha_prime, phi_state[i]),
            (_, Kind::Index(i)) if c == s.beta || c == s.beta_prime => (s.beta_prime, psi_state[i]),
            (_, Kind::Lambda) if c == s.alpha || c == s.alpha_prime => (s.f_alpha, down),
            (_, Kind::Lambda) if c == s.beta || c == s.beta_prime => (s.f_beta, down),
            // a, ι and the failure letters
            _ => (c, down),
        }
    })?;
    let projection = rhat.projection.with_marks();
    Ok(SemigroupArtifacts { automaton, instance: inst.clone(), rhat, projection, symbols })
}

impl SemigroupArtifacts {
    /// Role names and symbols, for serialization.
    pub fn symbol_table(&self) -> Vec<(&'static str, String)> {
        let t = &self.automaton;
        let s = &self.symbols;
        let mut out = alloc::vec![
            ("lambda_sharp", t.state_name(s.lambda_sharp).to_string()),
            ("lambda_r", t.state_name(s.lambda_r).to_string()),
            ("hash1", t.state_name(s.hash1).to_string()),
            ("hash2", t.state_name(s.hash2).to_string()),
        ];
        let roles = ["a", "b", "iota", "alpha", "alpha_prime", "f_alpha", "beta", "beta_prime", "f_beta", "f"];
        let letters = [s.a, s.b, s.iota, s.alpha, s.alpha_prime, s.f_alpha, s.beta, s.beta_prime, s.f_beta, s.f];
        for (role, l) in roles.into_iter().zip(letters) {
            out.push((role, t.letter_name(l).to_string()));
        }
        out
    }

    /// The state of the index `i` (1-based).
    pub fn index_state(&self, i: usize) -> Result<StateId> {
        self.automaton
            .state(&i.to_string())
            .filter(|_| i >= 1 && i <= self.instance.tiles().len())
            .ok_or_else(|| Error::InvalidInstance(format!("no tile with index {i}")))
    }

    pub fn index_word(&self, word: &[usize]) -> Result<Vec<StateId>> {
        word.iter().map(|&i| self.index_state(i)).collect()
    }

    /// The closed form of `p · a^μ` for `1 ≤ μ ≤ s`:
    /// `(p_s #x_s)...(p_{μ+1} #x_{μ+1}) p_μ λ_# λ_R^(μ-1+|p_{μ-1}...p_0|_R)`.
    pub fn shift_law(&self, p: &[StateId], mu: usize) -> Result<Vec<StateId>> {
        let f = self.projection.factorize(p);
        if mu == 0 || mu > f.s() {
            return Err(Error::ShiftOutOfRange { mu, min: 1, max: f.s() });
        }
        let cut = mark_position(&self.projection, p, mu);
        let lower: usize = f.blocks[..mu].iter().map(|b| self.projection.length_value(b)).sum();
        let mut out = p[..cut].to_vec();
        out.push(self.symbols.lambda_sharp);
        out.extend(core::iter::repeat_n(self.symbols.lambda_r, mu - 1 + lower));
        Ok(out)
    }

    /// The relation `#1 î #1 = #1 î #2` for a solution `î`.
    pub fn witness_relation(&self, solution: &[usize]) -> Result<Relation> {
        if !self.instance.is_solution(solution) {
            return Err(Error::NotASolution(crate::pcp::format_solution(solution)));
        }
        let hat = self.index_word(solution)?;
        let (h1, h2) = (self.symbols.hash1, self.symbols.hash2);
        let mut left = alloc::vec![h1];
        left.extend(&hat);
        let mut right = left.clone();
        left.push(h1);
        right.push(h2);
        Ok(Relation { left, right })
    }

    /// Reads a solution off a relation `p = q` whose marker projections
    /// differ.
    pub fn extract_solution(&self, p: &[StateId], q: &[StateId]) -> Result<Vec<usize>> {
        let block =
            extract_block(&self.automaton, &self.projection, self.symbols.a, self.symbols.iota, self.symbols.f, p, q)?;
        let mut word = Vec::with_capacity(block.len());
        for s in &block {
            match self.automaton.state_name(*s).parse::<usize>() {
                Ok(i) if self.index_state(i) == Ok(*s) => word.push(i),
                _ => {
                    return Err(Error::Consistency(format!(
                        "block `{}` is not a word over the index set",
                        self.automaton.state_names(&block).concat()
                    )))
                }
            }
        }
        if !self.instance.is_solution(&word) {
            return Err(Error::Consistency(format!(
                "extracted `{}` is not a solution",
                crate::pcp::format_solution(&word)
            )));
        }
        Ok(word)
    }
}

/// Index in `p` of the marker `#x_μ`.
pub(crate) fn mark_position(pi: &Projection, p: &[StateId], mu: usize) -> usize {
    let mut seen = 0;
    for i in (0..p.len()).rev() {
        if pi.mark(p[i]).is_some() {
            seen += 1;
            if seen == mu {
                return i;
            }
        }
    }
    unreachable!("fewer than {mu} markers")
}

/// The part common to both reductions: checks the preconditions, shifts
/// the first differing marker into position 1 and returns the block `p_1`
/// of the shifted `p`.
pub(crate) fn extract_block(
    t: &Transducer,
    pi: &Projection,
    a: LetterId,
    iota: LetterId,
    f: LetterId,
    p: &[StateId],
    q: &[StateId],
) -> Result<Vec<StateId>> {
    if pi.pi_hash(p) == pi.pi_hash(q) {
        return Err(Error::Precondition("the marker projections agree".into()));
    }
    if let Some(u) = decide_equal(t, p, q).separator() {
        return Err(Error::Precondition(format!(
            "the sequences are not equal (separated by `{}`)",
            t.letter_names(u).join(",")
        )));
    }
    if !pi.compatible(p, q) {
        return Err(Error::Consistency("equal sequences that are not compatible".into()));
    }
    let (fp, fq) = (pi.factorize(p), pi.factorize(q));
    let mu0 = (0..fp.s())
        .find(|&m| fp.marks[m] != fq.marks[m])
        .map(|m| m + 1)
        .ok_or_else(|| Error::Consistency("compatible sequences with the same markers".into()))?;
    let shift = alloc::vec![a; mu0 - 1];
    let (p1, q1) = (t.dual_act(p, &shift), t.dual_act(q, &shift));
    let (gp, gq) = (pi.factorize(&p1), pi.factorize(&q1));
    if gp.s() + mu0 - 1 != fp.s() || gp.marks[0] != fp.marks[mu0 - 1] || gq.marks[0] != fq.marks[mu0 - 1] {
        return Err(Error::Consistency("shift moved the markers".into()));
    }
    for s in [&p1, &q1] {
        if t.act(s, &[iota]) != [f] {
            return Err(Error::Consistency(format!(
                "ι is mapped to `{}` instead of `{}`",
                t.letter_names(&t.act(s, &[iota])).concat(),
                t.letter_name(f)
            )));
        }
    }
    Ok(gp.blocks[1].clone())
}
