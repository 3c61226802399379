//! Projections of state sequences and their factorization into blocks.
//!
//! In both reductions the state set is `R̂ ⊎ {#1, #2}`. Every state of `R̂`
//! projects to a word over the free basis (the padding state projects to the
//! empty word), and the two marker states cut a sequence into blocks:
//!
//! ```text
//! p = (p_s #x_s) ... (p_1 #x_1) p_0
//! ```

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::transducer::{StateId, Transducer};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mark {
    One,
    Two,
}

impl fmt::Display for Mark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mark::One => "#1",
            Mark::Two => "#2",
        })
    }
}

/// What a single state projects to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Image {
    Word(Vec<String>),
    Hash(Mark),
}

/// The natural projection `π` together with its extensions `π_#` and `π′`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection {
    images: Vec<Image>,
}

/// The block factorization of a state sequence. `blocks[0]` is the
/// rightmost block `p_0` and `marks[μ - 1]` is the marker `#x_μ` to the
/// right of `p_μ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub blocks: Vec<Vec<StateId>>,
    pub marks: Vec<Mark>,
}

impl Factorization {
    /// The number `s` of markers.
    pub fn s(&self) -> usize {
        self.marks.len()
    }
}

impl Projection {
    pub fn new(images: Vec<Image>) -> Self {
        Projection { images }
    }

    /// Every state projects to its own name.
    pub fn identity(t: &Transducer) -> Self {
        Projection::new(t.states().iter().map(|s| Image::Word(alloc::vec![s.clone()])).collect())
    }

    /// Number of states covered.
    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, p: StateId) -> &Image {
        &self.images[p.index()]
    }

    /// Extends the projection by the two marker states (in this order).
    pub fn with_marks(&self) -> Self {
        let mut images = self.images.clone();
        images.push(Image::Hash(Mark::One));
        images.push(Image::Hash(Mark::Two));
        Projection::new(images)
    }

    pub fn mark(&self, p: StateId) -> Option<Mark> {
        match self.images[p.index()] {
            Image::Hash(m) => Some(m),
            Image::Word(_) => None,
        }
    }

    /// `π(p)`; undefined if `p` contains a marker state.
    pub fn pi(&self, p: &[StateId]) -> Result<Vec<String>> {
        let mut out = Vec::new();
        for &s in p {
            match &self.images[s.index()] {
                Image::Word(w) => out.extend(w.iter().cloned()),
                Image::Hash(m) => return Err(Error::ProjectionUndefined(m.to_string())),
            }
        }
        Ok(out)
    }

    /// `|p|_R = |π(p)|`.
    pub fn r_len(&self, p: &[StateId]) -> Result<usize> {
        self.pi(p).map(|w| w.len())
    }

    /// `p =_R q`, i.e. `π(p) = π(q)`.
    pub fn r_equiv(&self, p: &[StateId], q: &[StateId]) -> Result<bool> {
        Ok(self.pi(p)? == self.pi(q)?)
    }

    /// `π_#(p)`: the subsequence of markers.
    pub fn pi_hash(&self, p: &[StateId]) -> Vec<Mark> {
        p.iter().filter_map(|&s| self.mark(s)).collect()
    }

    /// `π′(p)`: `π` on the `R̂`-states, markers kept as `#1`/`#2`.
    pub fn pi_prime(&self, p: &[StateId]) -> Vec<String> {
        let mut out = Vec::new();
        for &s in p {
            match &self.images[s.index()] {
                Image::Word(w) => out.extend(w.iter().cloned()),
                Image::Hash(m) => out.push(m.to_string()),
            }
        }
        out
    }

    pub fn factorize(&self, p: &[StateId]) -> Factorization {
        let mut blocks = Vec::new();
        let mut marks = Vec::new();
        let mut end = p.len();
        for i in (0..p.len()).rev() {
            if let Some(m) = self.mark(p[i]) {
                blocks.push(p[i + 1..end].to_vec());
                marks.push(m);
                end = i;
            }
        }
        blocks.push(p[..end].to_vec());
        Factorization { blocks, marks }
    }

    /// Same number of markers and blockwise equal projections. The markers
    /// themselves are not compared.
    pub fn compatible(&self, p: &[StateId], q: &[StateId]) -> bool {
        let (fp, fq) = (self.factorize(p), self.factorize(q));
        fp.s() == fq.s() && fp.blocks.iter().zip(&fq.blocks).all(|(a, b)| self.pi(a).ok() == self.pi(b).ok())
    }

    /// The length function: `|r̂|_R` for states of `R̂`, `1` for markers.
    pub fn length_value(&self, p: &[StateId]) -> usize {
        p.iter()
            .map(|&s| match &self.images[s.index()] {
                Image::Word(w) => w.len(),
                Image::Hash(_) => 1,
            })
            .sum()
    }

    /// The weights of [`Projection::length_value`] per state.
    pub fn weights(&self) -> Vec<u64> {
        (0..self.images.len() as u32).map(|i| self.length_value(&[StateId(i)]) as u64).collect()
    }
}
