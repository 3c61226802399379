//! Dense indexing of all state sequences up to a length bound.
//!
//! Sequences are numbered in shortlex order: shorter sequences first, equal
//! lengths lexicographically by state index with the leftmost state most
//! significant. The empty sequence has index `0`.

use alloc::vec::Vec;

use crate::StateId;

#[derive(Clone, Debug)]
pub struct SequenceSpace {
    base: usize,
    max_len: usize,
    // offsets[l] = number of sequences shorter than l
    offsets: Vec<usize>,
    powers: Vec<usize>,
}

impl SequenceSpace {
    /// # Panics
    /// If the number of sequences overflows `usize`.
    pub fn new(base: usize, max_len: usize) -> Self {
        let mut powers = Vec::with_capacity(max_len + 1);
        let mut offsets = Vec::with_capacity(max_len + 2);
        let (mut pw, mut off) = (1usize, 0usize);
        for _ in 0..=max_len {
            powers.push(pw);
            offsets.push(off);
            off = off.checked_add(pw).expect("sequence space too large");
            pw = pw.saturating_mul(base);
        }
        offsets.push(off);
        SequenceSpace { base, max_len, offsets, powers }
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// Number of sequences of length at most `max_len`.
    pub fn len(&self) -> usize {
        self.offsets[self.max_len + 1]
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Index range of the sequences of exactly length `l`.
    pub fn range_of_len(&self, l: usize) -> core::ops::Range<usize> {
        self.offsets[l]..self.offsets[l + 1]
    }

    /// Indices of all sequences of length `lo..=hi`.
    pub fn range_of_lens(&self, lo: usize, hi: usize) -> core::ops::Range<usize> {
        self.offsets[lo]..self.offsets[hi + 1]
    }

    pub fn length(&self, idx: usize) -> usize {
        debug_assert!(idx < self.len());
        // offsets is increasing; max_len is small so a linear scan is fine
        let mut l = 0;
        while self.offsets[l + 1] <= idx {
            l += 1;
        }
        l
    }

    fn value(&self, idx: usize) -> usize {
        idx - self.offsets[self.length(idx)]
    }

    pub fn index(&self, seq: &[StateId]) -> usize {
        assert!(seq.len() <= self.max_len, "sequence longer than the space bound");
        let v = seq.iter().fold(0usize, |v, s| v * self.base + s.index());
        self.offsets[seq.len()] + v
    }

    pub fn decode(&self, idx: usize) -> Vec<StateId> {
        let l = self.length(idx);
        let mut v = self.value(idx);
        let mut seq = alloc::vec![StateId(0); l];
        for slot in seq.iter_mut().rev() {
            *slot = StateId((v % self.base) as u32);
            v /= self.base;
        }
        seq
    }

    /// Index of the concatenation `s t`, when it fits in the space.
    pub fn concat(&self, s: usize, t: usize) -> Option<usize> {
        let (ls, lt) = (self.length(s), self.length(t));
        if ls + lt > self.max_len {
            return None;
        }
        Some(self.offsets[ls + lt] + self.value(s) * self.powers[lt] + self.value(t))
    }
}
