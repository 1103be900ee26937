//! Configurations, words and the four sequential Boolean networks.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::DiGraph;
use crate::set::VertexSet;

/// One Boolean state per vertex, identified with its support.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Config(VertexSet);

impl Config {
    pub fn zeros(n: usize) -> Self {
        Config(VertexSet::empty(n))
    }

    pub fn ones(n: usize) -> Self {
        Config(VertexSet::full(n))
    }

    pub fn from_support(support: VertexSet) -> Self {
        Config(support)
    }

    /// Bit `v` of `mask` is the state of vertex `v`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        Config(VertexSet::from_mask(n, mask))
    }

    pub fn mask(&self) -> u64 {
        self.0.mask()
    }

    pub fn n(&self) -> usize {
        self.0.universe()
    }

    pub fn get(&self, v: usize) -> bool {
        self.0.contains(v)
    }

    pub fn set(&mut self, v: usize, value: bool) {
        if value {
            self.0.insert(v);
        } else {
            self.0.remove(v);
        }
    }

    /// `1(x)`.
    pub fn ones_set(&self) -> &VertexSet {
        &self.0
    }

    /// `0(x)`.
    pub fn zeros_set(&self) -> VertexSet {
        self.0.complement()
    }

    /// Some member of `s` is in state 1.
    pub fn any_in(&self, s: &VertexSet) -> bool {
        !self.0.is_disjoint(s)
    }

    /// Vertices where `self` and `other` differ.
    pub fn difference_set(&self, other: &Config) -> VertexSet {
        self.0.difference(&other.0).union(&other.0.difference(&self.0))
    }

    /// Coordinatewise `self <= other`.
    pub fn le(&self, other: &Config) -> bool {
        self.0.is_subset(&other.0)
    }
}

impl fmt::Display for Config {
    /// Bit string, vertex 0 first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in 0..self.n() {
            f.write_str(if self.get(v) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Config({self})")
    }
}

impl Serialize for Config {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl FromStr for Config {
    type Err = Error;

    /// Parses a bit string such as `011`, vertex 0 first.
    fn from_str(s: &str) -> Result<Self> {
        let mut c = Config::zeros(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => c.set(i, true),
                _ => {
                    return Err(Error::Parse {
                        offset: i,
                        reason: format!("configuration bit {ch:?} is not 0 or 1"),
                    })
                }
            }
        }
        Ok(c)
    }
}

/// A finite sequence of vertices; repeats allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn new(seq: Vec<usize>) -> Self {
        Word(seq)
    }

    pub fn identity(n: usize) -> Self {
        Word((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// The set `[w]` of visited vertices.
    pub fn visited(&self, n: usize) -> VertexSet {
        VertexSet::from_vertices(n, self.0.iter().copied())
    }

    /// Each of `0..n` occurs exactly once.
    pub fn is_permutation(&self, n: usize) -> bool {
        self.0.len() == n && self.visited(n).len() == n
    }

    pub fn require_permutation(&self, n: usize) -> Result<()> {
        if self.is_permutation(n) {
            Ok(())
        } else {
            Err(Error::NotPermutation)
        }
    }

    /// `w w`.
    pub fn doubled(&self) -> Word {
        let mut seq = self.0.clone();
        seq.extend_from_slice(&self.0);
        Word(seq)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut seq = self.0.clone();
        seq.extend_from_slice(&other.0);
        Word(seq)
    }

    /// Position of each vertex in a permutation.
    pub fn positions(&self, n: usize) -> Vec<usize> {
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in self.0.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    pub(crate) fn check(&self, n: usize) -> Result<()> {
        match self.0.iter().find(|&&v| v >= n) {
            Some(&v) => Err(Error::VertexOutOfRange(v)),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl From<Vec<usize>> for Word {
    fn from(seq: Vec<usize>) -> Self {
        Word(seq)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NetworkKind {
    /// `x_v <- NOR of neighbours`; on a graph.
    Mis,
    /// `x_v <- NOR of in-neighbours`.
    Kernel,
    /// `x_v <- x_v AND NOR of in-neighbours`.
    Independent,
    /// `x_v <- x_v OR NOR of in-neighbours`.
    Dominating,
}

impl NetworkKind {
    pub const ALL: [NetworkKind; 4] = [
        NetworkKind::Mis,
        NetworkKind::Kernel,
        NetworkKind::Independent,
        NetworkKind::Dominating,
    ];

    /// The local rule given the current state and the NOR of in-neighbours.
    #[inline]
    pub fn rule(self, own: bool, nor: bool) -> bool {
        match self {
            NetworkKind::Mis | NetworkKind::Kernel => nor,
            NetworkKind::Independent => own && nor,
            NetworkKind::Dominating => own || nor,
        }
    }

    /// Word-parallel version of [`NetworkKind::rule`].
    #[inline]
    pub fn rule_bits(self, own: u64, nor: u64) -> u64 {
        match self {
            NetworkKind::Mis | NetworkKind::Kernel => nor,
            NetworkKind::Independent => own & nor,
            NetworkKind::Dominating => own | nor,
        }
    }
}

fn nor_in(g: &DiGraph, x: &Config, v: usize) -> bool {
    !g.in_list(v).iter().any(|&u| x.get(u))
}

/// Updates vertex `v` in place.
pub fn update_in_place(g: &DiGraph, kind: NetworkKind, x: &mut Config, v: usize) {
    let value = kind.rule(x.get(v), nor_in(g, x, v));
    x.set(v, value);
}

pub fn update_vertex(g: &DiGraph, kind: NetworkKind, x: &Config, v: usize) -> Result<Config> {
    g.check_vertex(v)?;
    let mut y = x.clone();
    update_in_place(g, kind, &mut y, v);
    Ok(y)
}

fn check_config(g: &DiGraph, x: &Config) -> Result<()> {
    if x.n() == g.n() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "configuration of width {} used with a {}-vertex graph",
            x.n(),
            g.n()
        )))
    }
}

/// Applies `w` left to right.
pub fn apply_word(g: &DiGraph, kind: NetworkKind, x: &Config, w: &Word) -> Result<Config> {
    check_config(g, x)?;
    w.check(g.n())?;
    let mut y = x.clone();
    for &v in w.as_slice() {
        update_in_place(g, kind, &mut y, v);
    }
    Ok(y)
}

/// Applies `w` and returns every intermediate configuration `y^0, ..., y^l`.
pub fn trajectory(g: &DiGraph, kind: NetworkKind, x: &Config, w: &Word) -> Result<Vec<Config>> {
    check_config(g, x)?;
    w.check(g.n())?;
    let mut out = Vec::with_capacity(w.len() + 1);
    let mut y = x.clone();
    out.push(y.clone());
    for &v in w.as_slice() {
        update_in_place(g, kind, &mut y, v);
        out.push(y.clone());
    }
    Ok(out)
}

/// `x` is a fixed point of the synchronous map.
pub fn is_fixed_point(g: &DiGraph, kind: NetworkKind, x: &Config) -> bool {
    (0..g.n()).all(|v| kind.rule(x.get(v), nor_in(g, x, v)) == x.get(v))
}

/// Every fixed point, in increasing mask order.
pub fn fixed_points(g: &DiGraph, kind: NetworkKind) -> Result<Vec<Config>> {
    let n = g.n();
    let mut out = Vec::new();
    crate::batch::for_each_unfixed_word(g, kind, &Word::default(), |index, unfixed, valid| {
        let mut fixed = !unfixed & valid;
        while fixed != 0 {
            let b = fixed.trailing_zeros() as u64;
            out.push(Config::from_mask(n, index * 64 + b));
            fixed &= fixed - 1;
        }
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{family, Family};

    fn p3() -> DiGraph {
        family(Family::Path, 3).unwrap()
    }

    fn c(s: &str) -> Config {
        s.parse().unwrap()
    }

    #[test]
    fn single_updates() {
        let g = p3();
        assert_eq!(update_vertex(&g, NetworkKind::Mis, &c("010"), 0).unwrap(), c("010"));
        assert_eq!(update_vertex(&g, NetworkKind::Mis, &c("000"), 1).unwrap(), c("010"));
        let k1 = DiGraph::empty(1);
        assert_eq!(update_vertex(&k1, NetworkKind::Mis, &c("0"), 0).unwrap(), c("1"));
        assert_eq!(update_vertex(&k1, NetworkKind::Independent, &c("0"), 0).unwrap(), c("0"));
        assert_eq!(update_vertex(&k1, NetworkKind::Dominating, &c("0"), 0).unwrap(), c("1"));
    }

    #[test]
    fn words() {
        let g = p3();
        let x = c("011");
        assert_eq!(apply_word(&g, NetworkKind::Mis, &x, &Word(vec![0, 1, 2])).unwrap(), c("001"));
        assert_eq!(apply_word(&g, NetworkKind::Mis, &x, &Word(vec![0, 2, 1])).unwrap(), c("010"));
        assert_eq!(apply_word(&g, NetworkKind::Mis, &x, &Word::default()).unwrap(), x);
        let t = trajectory(&g, NetworkKind::Mis, &x, &Word(vec![0, 1, 2])).unwrap();
        assert_eq!(t.len(), 4);
        assert_eq!(t[3], c("001"));
    }

    #[test]
    fn fixed_point_examples() {
        let g = p3();
        assert!(is_fixed_point(&g, NetworkKind::Mis, &c("101")));
        assert!(!is_fixed_point(&g, NetworkKind::Mis, &c("000")));
        assert_eq!(fixed_points(&g, NetworkKind::Mis).unwrap(), vec![c("010"), c("101")]);
        let c3 = family(Family::DirectedCycle, 3).unwrap();
        assert!(fixed_points(&c3, NetworkKind::Kernel).unwrap().is_empty());
        let ind = fixed_points(&g, NetworkKind::Independent).unwrap();
        assert_eq!(ind.len(), 5);
        assert!(ind.iter().all(|x| g.is_independent(x.ones_set())));
    }

    #[test]
    fn config_text() {
        assert_eq!(c("0110").to_string(), "0110");
        assert_eq!(c("011").mask(), 0b110);
        assert!("01x".parse::<Config>().is_err());
    }
}
