//! Young tableaux, Robinson-Schensted row insertion, and the dominance
//! order on partitions.

use crate::coxeter::{CoxeterSystem, Element};
use crate::error::{Error, Result};

/// Row-strict filling with increasing rows and columns; rows store the
/// entries, the shape is the row-length profile.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    rows: Vec<Vec<u32>>,
}

impl Tableau {
    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    /// Standard row insertion; returns the index of the row that grew.
    fn insert(&mut self, x: u32) -> usize {
        let mut bumped = x;
        for (i, row) in self.rows.iter_mut().enumerate() {
            match row.iter().position(|&e| e > bumped) {
                Some(j) => bumped = std::mem::replace(&mut row[j], bumped),
                None => {
                    row.push(bumped);
                    return i;
                }
            }
        }
        self.rows.push(vec![bumped]);
        self.rows.len() - 1
    }

    #[cfg(test)]
    fn is_standard(&self, n: u32) -> bool {
        let mut seen = vec![false; n as usize + 1];
        for (i, row) in self.rows.iter().enumerate() {
            if i + 1 < self.rows.len() && self.rows[i + 1].len() > row.len() {
                return false;
            }
            for (j, &e) in row.iter().enumerate() {
                if e == 0 || e > n || std::mem::replace(&mut seen[e as usize], true) {
                    return false;
                }
                if j + 1 < row.len() && row[j + 1] <= e {
                    return false;
                }
                if i + 1 < self.rows.len() {
                    if let Some(&below) = self.rows[i + 1].get(j) {
                        if below <= e {
                            return false;
                        }
                    }
                }
            }
        }
        seen[1..].iter().all(|&b| b)
    }
}

/// Insertion tableau, recording tableau, and their common shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RSPair {
    pub p: Tableau,
    pub q: Tableau,
    pub shape: Vec<usize>,
}

/// Robinson-Schensted correspondence via row insertion of the one-line
/// notation. Only symmetric groups qualify.
pub fn rs_insert(system: &CoxeterSystem, w: &Element) -> Result<RSPair> {
    if !system.cartan().is_single_a() {
        return Err(Error::usage(format!(
            "rs_insert needs a single type A component, got {}",
            system.cartan()
        )));
    }
    system.element_id(w)?;
    let window = &w.windows()[0];
    let mut p = Tableau { rows: Vec::new() };
    let mut q = Tableau { rows: Vec::new() };
    for (i, &x) in window.iter().enumerate() {
        debug_assert!(x > 0);
        let row = p.insert(x as u32);
        while q.rows.len() <= row {
            q.rows.push(Vec::new());
        }
        q.rows[row].push(i as u32 + 1);
    }
    let shape = p.shape();
    debug_assert_eq!(shape, q.shape());
    Ok(RSPair { p, q, shape })
}

/// Dominance order: p <= r iff every prefix sum of p is at most the
/// matching prefix sum of r. Defined only for partitions of the same n.
pub fn dominance_leq(p: &[usize], r: &[usize]) -> Result<bool> {
    for part in [p, r] {
        if part.windows(2).any(|w| w[0] < w[1]) || part.contains(&0) {
            return Err(Error::usage(format!("not a partition: {part:?}")));
        }
    }
    let (wp, wr) = (p.iter().sum::<usize>(), r.iter().sum::<usize>());
    if wp != wr {
        return Err(Error::usage(format!(
            "dominance needs equal weights, got {wp} and {wr}"
        )));
    }
    let mut sp = 0usize;
    let mut sr = 0usize;
    for i in 0..p.len().max(r.len()) {
        sp += p.get(i).copied().unwrap_or(0);
        sr += r.get(i).copied().unwrap_or(0);
        if sp > sr {
            return Ok(false);
        }
    }
    Ok(true)
}
