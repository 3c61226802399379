//! Instances of Post's correspondence problem and its padded variant.
//!
//! Tiles are indexed `1..=n`; the index symbols `"1"`, `"2"`, ... double as
//! state names in the reductions, so they must not occur in `Λ`. Solutions
//! are lists of 1-based indices read in homomorphism order: `[1, 2]` stands
//! for `φ(1)φ(2)`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::{Error, Result};

/// A tile: the pair `(φ(i), ψ(i))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tile {
    pub phi: Vec<String>,
    pub psi: Vec<String>,
}

impl Tile {
    pub fn new<S: AsRef<str>>(phi: &[S], psi: &[S]) -> Self {
        Tile {
            phi: phi.iter().map(|s| s.as_ref().to_string()).collect(),
            psi: psi.iter().map(|s| s.as_ref().to_string()).collect(),
        }
    }

    /// Splits both strings into one-character symbols.
    pub fn from_chars(phi: &str, psi: &str) -> Self {
        let split = |s: &str| s.chars().map(|c| c.to_string()).collect();
        Tile { phi: split(phi), psi: split(psi) }
    }
}

fn index_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

fn check_alphabet(lambda: &[String]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for l in lambda {
        if !seen.insert(l) {
            return Err(Error::InvalidInstance(format!("symbol `{l}` listed twice")));
        }
    }
    Ok(())
}

fn concat<'a, F>(word: &[usize], tile: F) -> Vec<String>
where
    F: Fn(usize) -> &'a [String],
{
    word.iter().flat_map(|&i| tile(i).iter().cloned()).collect()
}

/// A PCP instance `φ, ψ : {1..n} → Λ⁺`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcpInstance {
    lambda: Vec<String>,
    tiles: Vec<Tile>,
    /// Preferred choices for `λ_#` and `λ_R`.
    pub lambda_sharp: Option<String>,
    pub lambda_r: Option<String>,
}

impl PcpInstance {
    pub fn new(lambda: Vec<String>, tiles: Vec<Tile>) -> Result<Self> {
        if lambda.len() < 2 {
            return Err(Error::InvalidInstance("Λ needs at least two symbols".into()));
        }
        check_alphabet(&lambda)?;
        if tiles.is_empty() {
            return Err(Error::InvalidInstance("no tiles".into()));
        }
        let index = index_names(tiles.len());
        if let Some(i) = index.iter().find(|i| lambda.contains(i)) {
            return Err(Error::InvalidInstance(format!("index `{i}` is also a symbol of Λ")));
        }
        for (n, t) in tiles.iter().enumerate() {
            if t.phi.is_empty() || t.psi.is_empty() {
                return Err(Error::InvalidInstance(format!("tile {} has an empty component", n + 1)));
            }
            if let Some(s) = t.phi.iter().chain(&t.psi).find(|s| !lambda.contains(s)) {
                return Err(Error::InvalidInstance(format!("tile {} uses `{s}` outside Λ", n + 1)));
            }
        }
        Ok(PcpInstance { lambda, tiles, lambda_sharp: None, lambda_r: None })
    }

    pub fn lambda(&self) -> &[String] {
        &self.lambda
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    /// The index symbols `"1"..="n"`.
    pub fn index(&self) -> Vec<String> {
        index_names(self.tiles.len())
    }

    /// Length of the longest tile component.
    pub fn max_len(&self) -> usize {
        self.tiles.iter().map(|t| t.phi.len().max(t.psi.len())).max().unwrap_or(0)
    }

    /// `(λ_#, λ_R)`: the requested symbols, otherwise the two smallest
    /// symbols of `Λ` in lexicographic order.
    pub fn special_symbols(&self) -> Result<(String, String)> {
        let mut sorted: Vec<&String> = self.lambda.iter().collect();
        sorted.sort();
        let sharp = self.lambda_sharp.clone().unwrap_or_else(|| sorted[0].clone());
        let r = match &self.lambda_r {
            Some(r) => r.clone(),
            None => sorted.iter().find(|s| ***s != sharp).map(|s| (*s).clone()).unwrap(),
        };
        for s in [&sharp, &r] {
            if !self.lambda.contains(s) {
                return Err(Error::InvalidInstance(format!("`{s}` is not a symbol of Λ")));
            }
        }
        if sharp == r {
            return Err(Error::InvalidInstance("λ_# and λ_R must differ".into()));
        }
        Ok((sharp, r))
    }

    fn check_word(&self, word: &[usize]) -> Result<()> {
        match word.iter().find(|&&i| i == 0 || i > self.tiles.len()) {
            Some(i) => Err(Error::InvalidInstance(format!("no tile with index {i}"))),
            None => Ok(()),
        }
    }

    pub fn phi(&self, word: &[usize]) -> Result<Vec<String>> {
        self.check_word(word)?;
        Ok(concat(word, |i| &self.tiles[i - 1].phi))
    }

    pub fn psi(&self, word: &[usize]) -> Result<Vec<String>> {
        self.check_word(word)?;
        Ok(concat(word, |i| &self.tiles[i - 1].psi))
    }

    /// A solution is a non-empty index word with `φ(w) = ψ(w)`.
    pub fn is_solution(&self, word: &[usize]) -> bool {
        !word.is_empty() && matches!((self.phi(word), self.psi(word)), (Ok(a), Ok(b)) if a == b)
    }
}

/// An EPCP instance: tiles over `Λ ∪ {e}` of uniform length `L ≥ 2`,
/// compared up to deletion of the padding symbol `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpcpInstance {
    lambda: Vec<String>,
    padding: String,
    len: usize,
    tiles: Vec<Tile>,
}

impl EpcpInstance {
    pub fn new(lambda: Vec<String>, padding: String, tiles: Vec<Tile>) -> Result<Self> {
        check_alphabet(&lambda)?;
        if tiles.is_empty() {
            return Err(Error::InvalidInstance("no tiles".into()));
        }
        let index = index_names(tiles.len());
        if lambda.len() + index.len() < 2 {
            return Err(Error::InvalidInstance("|I| + |Λ| must be at least 2".into()));
        }
        if let Some(i) = index.iter().find(|i| lambda.contains(i)) {
            return Err(Error::InvalidInstance(format!("index `{i}` is also a symbol of Λ")));
        }
        if lambda.contains(&padding) || index.contains(&padding) {
            return Err(Error::NameClash(padding));
        }
        let len = tiles[0].phi.len();
        if len < 2 {
            return Err(Error::InvalidInstance("tile length must be at least 2".into()));
        }
        for (n, t) in tiles.iter().enumerate() {
            if t.phi.len() != len || t.psi.len() != len {
                return Err(Error::InvalidInstance(format!("tile {} does not have length {len}", n + 1)));
            }
            if let Some(s) = t.phi.iter().chain(&t.psi).find(|s| **s != padding && !lambda.contains(s)) {
                return Err(Error::InvalidInstance(format!("tile {} uses `{s}` outside Λ", n + 1)));
            }
        }
        Ok(EpcpInstance { lambda, padding, len, tiles })
    }

    pub fn lambda(&self) -> &[String] {
        &self.lambda
    }

    pub fn padding(&self) -> &str {
        &self.padding
    }

    /// The uniform tile length `L`.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn index(&self) -> Vec<String> {
        index_names(self.tiles.len())
    }

    pub fn phi(&self, word: &[usize]) -> Result<Vec<String>> {
        self.check_word(word)?;
        Ok(concat(word, |i| &self.tiles[i - 1].phi))
    }

    pub fn psi(&self, word: &[usize]) -> Result<Vec<String>> {
        self.check_word(word)?;
        Ok(concat(word, |i| &self.tiles[i - 1].psi))
    }

    fn check_word(&self, word: &[usize]) -> Result<()> {
        match word.iter().find(|&&i| i == 0 || i > self.tiles.len()) {
            Some(i) => Err(Error::InvalidInstance(format!("no tile with index {i}"))),
            None => Ok(()),
        }
    }

    /// A solution is a non-empty index word with `φ(w) =_e ψ(w)`.
    pub fn is_solution(&self, word: &[usize]) -> bool {
        !word.is_empty()
            && matches!((self.phi(word), self.psi(word)),
                (Ok(a), Ok(b)) if e_equiv(&a, &b, &self.padding))
    }
}

/// Pads every tile component on the right with `e` up to the common length
/// `max(2, longest component)`.
pub fn pad_to_epcp(inst: &PcpInstance, e: &str) -> Result<EpcpInstance> {
    let len = inst.max_len().max(2);
    let pad = |w: &[String]| {
        let mut w = w.to_vec();
        w.resize(len, e.to_string());
        w
    };
    let tiles = inst.tiles.iter().map(|t| Tile { phi: pad(&t.phi), psi: pad(&t.psi) }).collect();
    EpcpInstance::new(inst.lambda.clone(), e.to_string(), tiles)
}

/// Deletes every occurrence of the padding symbol.
pub fn erase<S: AsRef<str>>(u: &[S], e: &str) -> Vec<String> {
    u.iter().map(|s| s.as_ref()).filter(|s| *s != e).map(|s| s.to_string()).collect()
}

/// `u =_e v`: equality after deleting `e`.
pub fn e_equiv<S: AsRef<str>>(u: &[S], v: &[S], e: &str) -> bool {
    let mut a = u.iter().map(|s| s.as_ref()).filter(|s| *s != e);
    let mut b = v.iter().map(|s| s.as_ref()).filter(|s| *s != e);
    loop {
        match (a.next(), b.next()) {
            (None, None) => return true,
            (Some(x), Some(y)) if x == y => {}
            _ => return false,
        }
    }
}

/// The homomorphism `i ↦ i^L`.
pub fn l_hom(word: &[usize], len: usize) -> Vec<usize> {
    word.iter().flat_map(|&i| core::iter::repeat_n(i, len)).collect()
}

/// Parses a solution such as `"12"` or `"1,2"` into index form. Without
/// commas every character is one index.
pub fn parse_solution(s: &str) -> Result<Vec<usize>> {
    let parts: Vec<&str> = if s.contains(',') {
        s.split(',').map(str::trim).collect()
    } else {
        s.char_indices().map(|(i, c)| &s[i..i + c.len_utf8()]).collect()
    };
    parts
        .iter()
        .map(|p| {
            p.parse::<usize>()
                .ok()
                .filter(|&i| i > 0)
                .ok_or_else(|| Error::InvalidInstance(format!("`{p}` is not a tile index")))
        })
        .collect()
}

/// Renders a solution; indices above 9 force the comma form.
pub fn format_solution(word: &[usize]) -> String {
    let sep = if word.iter().any(|&i| i > 9) { "," } else { "" };
    word.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(sep)
}
