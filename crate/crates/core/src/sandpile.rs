//! Abelian sandpile dynamics with a sink, used as an independent check on
//! Smith-form critical groups of small graphs.

use std::collections::HashMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::factor::Factorization;
use crate::graph::Graph;

/// Default cap on the number of stable configurations enumerated.
pub const DEFAULT_ENUMERATION_LIMIT: u128 = 5_000_000;

/// Chip counts indexed by vertex. The sink slot is always zero: chips
/// sent to the sink leave the system.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChipConfig {
    pub sink: usize,
    pub chips: Vec<u64>,
}

impl ChipConfig {
    pub fn zero(n: usize, sink: usize) -> Self {
        ChipConfig { sink, chips: vec![0; n] }
    }

    pub fn new(sink: usize, mut chips: Vec<u64>) -> Self {
        chips[sink] = 0;
        ChipConfig { sink, chips }
    }

    pub fn add(&self, other: &ChipConfig) -> ChipConfig {
        assert_eq!(self.sink, other.sink);
        let chips = self.chips.iter().zip(&other.chips).map(|(a, b)| a + b).collect();
        ChipConfig { sink: self.sink, chips }
    }

    pub fn is_stable(&self, g: &Graph) -> bool {
        let deg = g.degrees();
        self.chips.iter().enumerate().all(|(v, &c)| v == self.sink || (c as usize) < deg[v])
    }
}

/// Result of stabilization: the stable configuration and how many times
/// each vertex fired.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stabilization {
    pub config: ChipConfig,
    pub firings: Vec<u64>,
}

struct Board {
    adj: Vec<Vec<usize>>,
    deg: Vec<u64>,
    sink: usize,
}

impl Board {
    fn new(g: &Graph, sink: usize) -> Result<Board> {
        if sink >= g.n() {
            return Err(Error::BadSink(sink));
        }
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        let adj = g.neighbors();
        let deg = adj.iter().map(|a| a.len() as u64).collect();
        Ok(Board { adj, deg, sink })
    }

    fn unstable(&self, chips: &[u64], v: usize) -> bool {
        v != self.sink && chips[v] >= self.deg[v]
    }

    /// Fires unstable vertices until none remain, picking the next vertex
    /// with `choose` from the current list of unstable vertices.
    fn stabilize_by(&self, mut chips: Vec<u64>, mut choose: impl FnMut(&[usize]) -> usize) -> Stabilization {
        let n = chips.len();
        let mut firings = vec![0u64; n];
        let mut unstable: Vec<usize> = (0..n).filter(|&v| self.unstable(&chips, v)).collect();
        while !unstable.is_empty() {
            let idx = choose(&unstable) % unstable.len();
            let v = unstable.swap_remove(idx);
            if !self.unstable(&chips, v) {
                continue;
            }
            // fire as many times as possible at once
            let times = chips[v] / self.deg[v];
            chips[v] -= times * self.deg[v];
            firings[v] += times;
            for &w in &self.adj[v] {
                if w == self.sink {
                    continue;
                }
                let was = self.unstable(&chips, w);
                chips[w] += times;
                if !was && self.unstable(&chips, w) {
                    unstable.push(w);
                }
            }
        }
        chips[self.sink] = 0;
        Stabilization { config: ChipConfig { sink: self.sink, chips }, firings }
    }

    fn stabilize(&self, chips: Vec<u64>) -> Vec<u64> {
        self.stabilize_by(chips, |l| l.len() - 1).config.chips
    }

    /// Dhar's burning test: adding one chip per edge to the sink makes
    /// every vertex fire exactly once iff the configuration is recurrent.
    fn is_recurrent(&self, chips: &[u64]) -> bool {
        let mut burnt = chips.to_vec();
        for &w in &self.adj[self.sink] {
            burnt[w] += 1;
        }
        let s = self.stabilize_by(burnt, |l| l.len() - 1);
        s.firings.iter().enumerate().all(|(v, &f)| v == self.sink || f == 1)
    }

    fn stable_space(&self) -> u128 {
        (0..self.deg.len()).filter(|&v| v != self.sink).map(|v| self.deg[v] as u128).product()
    }

    /// Decodes the `index`-th stable configuration in mixed radix.
    fn decode(&self, mut index: u128) -> Vec<u64> {
        let mut chips = vec![0u64; self.deg.len()];
        for v in (0..chips.len()).filter(|&v| v != self.sink) {
            let d = self.deg[v] as u128;
            chips[v] = (index % d) as u64;
            index /= d;
        }
        chips
    }

    fn recurrents(&self, limit: u128) -> Result<Vec<Vec<u64>>> {
        let total = self.stable_space();
        if total > limit {
            return Err(Error::SizeGuard { needed: total, limit });
        }
        let total = total as u64;
        let mut found: Vec<Vec<u64>> =
            (0..total).into_par_iter().map(|i| self.decode(i as u128)).filter(|c| self.is_recurrent(c)).collect();
        found.sort_unstable();
        Ok(found)
    }
}

pub fn stabilize(c: &ChipConfig, g: &Graph) -> Result<ChipConfig> {
    Ok(Board::new(g, c.sink)?.stabilize_by(c.chips.clone(), |l| l.len() - 1).config)
}

/// Stabilization with a caller-chosen firing order; `choose` receives the
/// currently unstable vertices and returns an index into that slice.
pub fn stabilize_with_order(c: &ChipConfig, g: &Graph, choose: impl FnMut(&[usize]) -> usize) -> Result<Stabilization> {
    Ok(Board::new(g, c.sink)?.stabilize_by(c.chips.clone(), choose))
}

pub fn is_recurrent(c: &ChipConfig, g: &Graph) -> Result<bool> {
    let board = Board::new(g, c.sink)?;
    Ok(c.is_stable(g) && board.is_recurrent(&c.chips))
}

/// All recurrent configurations, sorted.
pub fn recurrent_configs(g: &Graph, sink: usize, limit: u128) -> Result<Vec<ChipConfig>> {
    let board = Board::new(g, sink)?;
    Ok(board.recurrents(limit)?.into_iter().map(|chips| ChipConfig { sink, chips }).collect())
}

/// Number of recurrent configurations, found by exhaustive burning tests.
pub fn recurrent_count(g: &Graph, sink: usize) -> Result<usize> {
    recurrent_count_with_limit(g, sink, DEFAULT_ENUMERATION_LIMIT)
}

pub fn recurrent_count_with_limit(g: &Graph, sink: usize, limit: u128) -> Result<usize> {
    Ok(Board::new(g, sink)?.recurrents(limit)?.len())
}

/// The recurrent identity `(2c - (2c)°)°` with `c` the maximal stable
/// configuration.
pub fn recurrent_identity(g: &Graph, sink: usize) -> Result<ChipConfig> {
    let board = Board::new(g, sink)?;
    Ok(ChipConfig { sink, chips: identity_chips(&board) })
}

fn identity_chips(board: &Board) -> Vec<u64> {
    let twice_max: Vec<u64> =
        (0..board.deg.len()).map(|v| if v == board.sink { 0 } else { 2 * (board.deg[v] - 1) }).collect();
    let stab = board.stabilize(twice_max.clone());
    board.stabilize(twice_max.iter().zip(&stab).map(|(a, b)| a - b).collect())
}

/// Invariant factors (those above 1) of the group of recurrent
/// configurations under addition followed by stabilization.
///
/// For each prime `p` of the group order, the sizes of the subgroups
/// `G[p^j]` (counted by stabilizing `p^j` copies of every element) fix the
/// exponents of the p-primary part.
pub fn sandpile_group_structure(g: &Graph, sink: usize) -> Result<Vec<BigInt>> {
    sandpile_group_structure_with_limit(g, sink, DEFAULT_ENUMERATION_LIMIT)
}

pub fn sandpile_group_structure_with_limit(g: &Graph, sink: usize, limit: u128) -> Result<Vec<BigInt>> {
    let board = Board::new(g, sink)?;
    let elements = board.recurrents(limit)?;
    let identity = identity_chips(&board);
    let index: HashMap<&[u64], usize> = elements.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect();
    assert!(index.contains_key(identity.as_slice()), "identity must be recurrent");

    // x lies in G[m] iff m copies of x stabilize to the identity.
    let killed_by = |m: u64| -> u64 {
        elements
            .par_iter()
            .filter(|x| {
                let scaled = board.stabilize(x.iter().map(|c| c * m).collect());
                debug_assert!(index.contains_key(scaled.as_slice()));
                scaled == identity
            })
            .count() as u64
    };

    let size = elements.len() as u64;
    let mut per_prime: Vec<(u64, Vec<u64>)> = Vec::new();
    for (p, e) in Factorization::of_u64(size).iter() {
        // log_p |G[p^j]| for j = 0..=e
        let log_sizes: Vec<u64> = (0..=e)
            .map(|j| {
                let count = if j == 0 { 1 } else { killed_by(p.pow(j as u32)) };
                let f = Factorization::of_u64(count);
                debug_assert_eq!(f.as_map().len() as u64, (f.exponent(p) > 0) as u64);
                f.exponent(p)
            })
            .collect();
        // number of cyclic factors of exponent >= j
        let at_least: Vec<u64> = (1..=e as usize).map(|j| log_sizes[j] - log_sizes[j - 1]).collect();
        let mut exps = Vec::new();
        for (j, &c) in at_least.iter().enumerate() {
            let next = at_least.get(j + 1).copied().unwrap_or(0);
            exps.extend(std::iter::repeat_n(j as u64 + 1, (c - next) as usize));
        }
        exps.sort_unstable_by(|a, b| b.cmp(a));
        per_prime.push((p, exps));
    }
    let count = per_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut factors: Vec<BigInt> = (0..count)
        .map(|j| {
            per_prime.iter().fold(BigInt::from(1), |acc, (p, exps)| {
                acc * num_traits::pow(BigInt::from(*p), exps.get(j).copied().unwrap_or(0) as usize)
            })
        })
        .collect();
    factors.reverse();
    Ok(factors)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_config_is_fixed() {
        let g = Graph::petersen();
        let c = ChipConfig::zero(10, 0);
        assert_eq!(stabilize(&c, &g).unwrap(), c);
    }

    #[test]
    fn triangle_fires_once() {
        let g = Graph::complete(3);
        let c = ChipConfig::new(0, vec![0, 3, 0]);
        let first = stabilize_with_order(&c, &g, |_| 0).unwrap();
        let last = stabilize_with_order(&c, &g, |l| l.len() - 1).unwrap();
        assert_eq!(first, last);
        assert_eq!(first.config.chips, vec![0, 1, 1]);
        assert_eq!(first.firings, vec![0, 1, 0]);
    }

    #[test]
    fn stable_config_unchanged() {
        let g = Graph::cycle(5);
        let c = ChipConfig::new(2, vec![1, 1, 0, 1, 0]);
        assert_eq!(stabilize(&c, &g).unwrap(), c);
    }

    #[test]
    fn recurrent_counts() {
        assert_eq!(recurrent_count(&Graph::complete(3), 0).unwrap(), 3);
        assert_eq!(recurrent_count(&Graph::cycle(5), 0).unwrap(), 5);
        assert_eq!(recurrent_count(&Graph::complete(4), 2).unwrap(), 16);
    }

    #[test]
    fn structures() {
        assert_eq!(sandpile_group_structure(&Graph::complete(3), 0).unwrap(), vec![BigInt::from(3)]);
        assert_eq!(sandpile_group_structure(&Graph::cycle(5), 1).unwrap(), vec![BigInt::from(5)]);
        let k4: Vec<BigInt> = [4, 4].into_iter().map(BigInt::from).collect();
        assert_eq!(sandpile_group_structure(&Graph::complete(4), 0).unwrap(), k4);
    }

    #[test]
    fn guards() {
        let g = Graph::complete(8);
        assert!(matches!(recurrent_count_with_limit(&g, 0, 1000), Err(Error::SizeGuard { .. })));
        assert!(matches!(recurrent_count(&Graph::complete(3), 5), Err(Error::BadSink(5))));
        let disconnected = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(matches!(recurrent_count(&disconnected, 0), Err(Error::Disconnected)));
    }
}
