//! Simulation of a word from every start configuration at once.
//!
//! Start configuration `i` lives in bit `i % 64` of lane word `i / 64`. Each
//! vertex owns one lane (a slice of words); a vertex update is a handful of
//! word operations per 64 start configurations.

use rayon::prelude::*;

use crate::error::{ensure_exhaustive, Result, MAX_EXHAUSTIVE_VERTICES};
use crate::graph::DiGraph;
use crate::network::{Config, NetworkKind, Word};

/// Words processed per parallel task.
const CHUNK_WORDS: usize = 1024;

const PATTERNS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// Number of lane words needed for `2^n` configurations.
pub fn lane_words(n: usize) -> usize {
    if n <= 6 {
        1
    } else {
        1 << (n - 6)
    }
}

/// Bits of a lane word that correspond to real configurations.
pub fn valid_mask(n: usize) -> u64 {
    if n >= 6 {
        !0
    } else {
        (1u64 << (1 << n)) - 1
    }
}

/// State of vertex `v` across the 64 start configurations of word `j`.
#[inline]
pub fn identity_word(v: usize, j: usize) -> u64 {
    if v < 6 {
        PATTERNS[v]
    } else if (j >> (v - 6)) & 1 == 1 {
        !0
    } else {
        0
    }
}

/// Vertex-major lanes over the word range `start..start + len`.
#[derive(Clone, Debug)]
pub struct Lanes {
    n: usize,
    start: usize,
    len: usize,
    valid: u64,
    data: Vec<u64>,
}

impl Lanes {
    /// Every start configuration in the range, unmodified.
    pub fn identity(n: usize, start: usize, len: usize) -> Self {
        let mut data = Vec::with_capacity(n * len);
        for v in 0..n {
            data.extend((start..start + len).map(|j| identity_word(v, j)));
        }
        Lanes {
            n,
            start,
            len,
            valid: valid_mask(n),
            data,
        }
    }

    /// All `2^n` start configurations in one block.
    pub fn full(n: usize) -> Self {
        Self::identity(n, 0, lane_words(n))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn valid(&self) -> u64 {
        self.valid
    }

    pub fn lane(&self, v: usize) -> &[u64] {
        &self.data[v * self.len..(v + 1) * self.len]
    }

    /// Overwrites the lane of `v` with `f(k)` for each word index `k`.
    pub fn reset(&mut self, v: usize, f: impl Fn(usize) -> u64) {
        let len = self.len;
        for k in 0..len {
            self.data[v * len + k] = f(k);
        }
    }

    /// Copies the lanes of `other` (same shape) into `self`.
    pub fn copy_from(&mut self, other: &Lanes) {
        self.data.copy_from_slice(&other.data);
    }

    #[inline]
    pub fn update(&mut self, g: &DiGraph, kind: NetworkKind, v: usize) {
        let len = self.len;
        let ins = g.in_list(v);
        for k in 0..len {
            let mut or = 0u64;
            for &u in ins {
                or |= self.data[u * len + k];
            }
            let own = self.data[v * len + k];
            self.data[v * len + k] = kind.rule_bits(own, !or);
        }
    }

    pub fn apply(&mut self, g: &DiGraph, kind: NetworkKind, w: &[usize]) {
        for &v in w {
            self.update(g, kind, v);
        }
    }

    /// Per word: bits whose current configuration is not a fixed point.
    pub fn unfixed(&self, g: &DiGraph, kind: NetworkKind) -> Vec<u64> {
        (0..self.len).map(|k| self.unfixed_word(g, kind, k)).collect()
    }

    #[inline]
    pub fn unfixed_word(&self, g: &DiGraph, kind: NetworkKind, k: usize) -> u64 {
        let len = self.len;
        let mut bad = 0u64;
        for v in 0..self.n {
            let mut or = 0u64;
            for &u in g.in_list(v) {
                or |= self.data[u * len + k];
            }
            let own = self.data[v * len + k];
            bad |= own ^ kind.rule_bits(own, !or);
        }
        bad & self.valid
    }

    /// Bits where every member of `closed` is 0.
    #[inline]
    pub fn all_zero_word(&self, closed: &[usize], k: usize) -> u64 {
        let mut or = 0u64;
        for &u in closed {
            or |= self.data[u * self.len + k];
        }
        !or & self.valid
    }

    /// Current configuration reached from start `64 * (start + k) + bit`.
    pub fn image(&self, k: usize, bit: u32) -> u64 {
        (0..self.n).fold(0u64, |m, v| m | ((self.data[v * self.len + k] >> bit) & 1) << v)
    }

    /// Global start-configuration index of bit `bit` in local word `k`.
    pub fn index(&self, k: usize, bit: u32) -> u64 {
        ((self.start + k) as u64) << 6 | u64::from(bit)
    }
}

fn chunk_ranges(n: usize) -> Vec<(usize, usize)> {
    let total = lane_words(n);
    (0..total)
        .step_by(CHUNK_WORDS)
        .map(|s| (s, CHUNK_WORDS.min(total - s)))
        .collect()
}

/// Image of every start configuration under a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigMap {
    n: usize,
    images: Vec<u32>,
}

impl ConfigMap {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// Image of the start configuration with the given mask.
    pub fn image_mask(&self, start: u64) -> u64 {
        u64::from(self.images[start as usize])
    }

    pub fn get(&self, x: &Config) -> Config {
        Config::from_mask(self.n, self.image_mask(x.mask()))
    }

    /// `(start, image)` mask pairs in start order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.images
            .iter()
            .enumerate()
            .map(|(i, &y)| (i as u64, u64::from(y)))
    }
}

/// Applies `w` to all `2^n` start configurations.
pub fn batch_apply(g: &DiGraph, kind: NetworkKind, w: &Word) -> Result<ConfigMap> {
    let n = g.n();
    ensure_exhaustive(n, MAX_EXHAUSTIVE_VERTICES)?;
    w.check(n)?;
    let count = 1usize << n;
    let parts: Vec<Vec<u32>> = chunk_ranges(n)
        .into_par_iter()
        .map(|(start, len)| {
            let mut lanes = Lanes::identity(n, start, len);
            lanes.apply(g, kind, w.as_slice());
            let mut out = Vec::with_capacity(len * 64);
            for k in 0..len {
                for bit in 0..64 {
                    if lanes.index(k, bit) as usize >= count {
                        break;
                    }
                    out.push(lanes.image(k, bit) as u32);
                }
            }
            out
        })
        .collect();
    Ok(ConfigMap {
        n,
        images: parts.concat(),
    })
}

/// The smallest start configuration whose image under `w` is not fixed.
pub fn first_unfixed(g: &DiGraph, kind: NetworkKind, w: &Word) -> Result<Option<Config>> {
    let n = g.n();
    ensure_exhaustive(n, MAX_EXHAUSTIVE_VERTICES)?;
    w.check(n)?;
    let found = chunk_ranges(n).into_par_iter().find_map_first(|(start, len)| {
        let mut lanes = Lanes::identity(n, start, len);
        lanes.apply(g, kind, w.as_slice());
        (0..len).find_map(|k| {
            let bad = lanes.unfixed_word(g, kind, k);
            (bad != 0).then(|| lanes.index(k, bad.trailing_zeros()))
        })
    });
    Ok(found.map(|i| Config::from_mask(n, i)))
}

/// Number of start configurations whose image under `w` is fixed.
pub fn count_fixed(g: &DiGraph, kind: NetworkKind, w: &Word) -> Result<u64> {
    let n = g.n();
    ensure_exhaustive(n, MAX_EXHAUSTIVE_VERTICES)?;
    w.check(n)?;
    let bad: u64 = chunk_ranges(n)
        .into_par_iter()
        .map(|(start, len)| {
            let mut lanes = Lanes::identity(n, start, len);
            lanes.apply(g, kind, w.as_slice());
            (0..len)
                .map(|k| u64::from(lanes.unfixed_word(g, kind, k).count_ones()))
                .sum::<u64>()
        })
        .sum();
    Ok((1u64 << n) - bad)
}

/// Sequential sweep: calls `f(global word index, unfixed bits, valid bits)`
/// for every lane word after applying `w`.
pub(crate) fn for_each_unfixed_word<F>(g: &DiGraph, kind: NetworkKind, w: &Word, mut f: F) -> Result<()>
where
    F: FnMut(u64, u64, u64),
{
    let n = g.n();
    ensure_exhaustive(n, MAX_EXHAUSTIVE_VERTICES)?;
    w.check(n)?;
    for (start, len) in chunk_ranges(n) {
        let mut lanes = Lanes::identity(n, start, len);
        lanes.apply(g, kind, w.as_slice());
        for k in 0..len {
            f((start + k) as u64, lanes.unfixed_word(g, kind, k), lanes.valid());
        }
    }
    Ok(())
}
