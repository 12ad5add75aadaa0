//! Kazhdan-Lusztig cells: the preorder generated by canonical-basis
//! multiplication, its strongly connected components, and the type A
//! description through Robinson-Schensted fibers.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::coxeter::{CoxeterSystem, Element};
use crate::error::Result;
use crate::hecke::KlTable;
use crate::young::{dominance_leq, rs_insert};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellSide {
    Left,
    Right,
    TwoSided,
}

impl fmt::Display for CellSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CellSide::Left => "left",
            CellSide::Right => "right",
            CellSide::TwoSided => "two-sided",
        })
    }
}

/// Partition of W into cells together with the partial order induced on
/// the blocks. Blocks are listed by their minimal element id and each
/// block lists elements in id order.
#[derive(Clone, Debug)]
pub struct CellPartition {
    system: CoxeterSystem,
    side: CellSide,
    blocks: Vec<Vec<Element>>,
    leq: Vec<Vec<bool>>,
    block_of_id: Vec<usize>,
}

impl CellPartition {
    pub fn system(&self) -> &CoxeterSystem {
        &self.system
    }

    pub fn side(&self) -> CellSide {
        self.side
    }

    pub fn blocks(&self) -> &[Vec<Element>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Index of the cell containing w.
    pub fn block_of(&self, w: &Element) -> Result<usize> {
        Ok(self.block_of_id[self.system.element_id(w)? as usize])
    }

    /// Cell order on block indices.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    /// Element-level preorder: x is below y iff their cells are ordered.
    pub fn elem_leq(&self, x: &Element, y: &Element) -> Result<bool> {
        Ok(self.leq[self.block_of(x)?][self.block_of(y)?])
    }

    /// True when every block of `self` sits inside one block of `coarser`.
    pub fn refines(&self, coarser: &CellPartition) -> Result<bool> {
        for block in &self.blocks {
            let target = coarser.block_of(&block[0])?;
            for w in &block[1..] {
                if coarser.block_of(w)? != target {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// x -> z whenever C'_z appears in C'_s C'_x (left), C'_x C'_s (right),
/// or either (two-sided), over all generators s.
fn generation_edges(table: &KlTable, side: CellSide) -> Vec<Vec<u32>> {
    let t = table.tables();
    let n = t.elements.len();
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
    let left = matches!(side, CellSide::Left | CellSide::TwoSided);
    let right = matches!(side, CellSide::Right | CellSide::TwoSided);
    for x in 0..n as u32 {
        for s in 1..=t.rank {
            // C'_s C'_x = C'_{sx} + sum over z < x with sz < z of mu(z,x) C'_z
            // when sx > x, and a scalar multiple of C'_x otherwise.
            if left && !t.has_ldesc(x, s) {
                adj[x as usize].push(t.left_mul(x, s));
                for (z, _) in &table.rows()[x as usize].entries {
                    if *z != x && t.has_ldesc(*z, s) && !table.mu_ids(*z, x).is_zero() {
                        adj[x as usize].push(*z);
                    }
                }
            }
            if right && !t.has_rdesc(x, s) {
                adj[x as usize].push(t.right_mul(x, s));
                for (z, _) in &table.rows()[x as usize].entries {
                    if *z != x && t.has_rdesc(*z, s) && !table.mu_ids(*z, x).is_zero() {
                        adj[x as usize].push(*z);
                    }
                }
            }
        }
        adj[x as usize].sort_unstable();
        adj[x as usize].dedup();
    }
    adj
}

/// Iterative depth-first finish order.
fn finish_order(adj: &[Vec<u32>]) -> Vec<u32> {
    let n = adj.len();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for start in 0..n as u32 {
        if seen[start as usize] {
            continue;
        }
        seen[start as usize] = true;
        let mut stack: Vec<(u32, usize)> = vec![(start, 0)];
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            if let Some(&w) = adj[v as usize].get(*i) {
                *i += 1;
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    stack.push((w, 0));
                }
            } else {
                order.push(v);
                stack.pop();
            }
        }
    }
    order
}

/// Kosaraju strongly connected components; returns the component index of
/// every vertex, with arbitrary component numbering.
fn strong_components(adj: &[Vec<u32>]) -> Vec<usize> {
    let n = adj.len();
    let mut radj: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (v, outs) in adj.iter().enumerate() {
        for &w in outs {
            radj[w as usize].push(v as u32);
        }
    }
    let order = finish_order(adj);
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    for &start in order.iter().rev() {
        if comp[start as usize] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        comp[start as usize] = count;
        while let Some(v) = stack.pop() {
            for &w in &radj[v as usize] {
                if comp[w as usize] == usize::MAX {
                    comp[w as usize] = count;
                    stack.push(w);
                }
            }
        }
        count += 1;
    }
    comp
}

fn partition_from_components(
    system: &CoxeterSystem,
    side: CellSide,
    comp: &[usize],
    adj: &[Vec<u32>],
) -> CellPartition {
    let tables = system.tables().expect("enumerated");
    let count = comp.iter().max().map_or(0, |m| m + 1);
    // Renumber blocks by their minimal element id.
    let mut first = vec![u32::MAX; count];
    for (id, &c) in comp.iter().enumerate() {
        first[c] = first[c].min(id as u32);
    }
    let mut by_first: Vec<usize> = (0..count).collect();
    by_first.sort_by_key(|&c| first[c]);
    let mut renumber = vec![0usize; count];
    for (new, &old) in by_first.iter().enumerate() {
        renumber[old] = new;
    }
    let block_of_id: Vec<usize> = comp.iter().map(|&c| renumber[c]).collect();

    let mut blocks: Vec<Vec<Element>> = vec![Vec::new(); count];
    for (id, &b) in block_of_id.iter().enumerate() {
        blocks[b].push(tables.elements[id].clone());
    }

    // Quotient reachability gives the block order.
    let mut qadj: Vec<Vec<usize>> = vec![Vec::new(); count];
    for (v, outs) in adj.iter().enumerate() {
        for &w in outs {
            let (a, b) = (block_of_id[v], block_of_id[w as usize]);
            if a != b {
                qadj[a].push(b);
            }
        }
    }
    let mut leq = vec![vec![false; count]; count];
    for i in 0..count {
        let mut stack = vec![i];
        leq[i][i] = true;
        while let Some(v) = stack.pop() {
            for &w in &qadj[v] {
                if !leq[i][w] {
                    leq[i][w] = true;
                    stack.push(w);
                }
            }
        }
    }
    for i in 0..count {
        for j in 0..count {
            debug_assert!(
                !(i != j && leq[i][j] && leq[j][i]),
                "quotient order must be antisymmetric"
            );
        }
    }

    CellPartition {
        system: system.clone(),
        side,
        blocks,
        leq,
        block_of_id,
    }
}

/// Cells of the given side: strongly connected components of the
/// generation preorder, ordered by quotient reachability.
pub fn cells(table: &KlTable, side: CellSide) -> CellPartition {
    let adj = generation_edges(table, side);
    let comp = strong_components(&adj);
    partition_from_components(table.system(), side, &comp, &adj)
}

/// The cell preorder on elements of W; x is below y when y is reachable
/// from x through the generation rule.
pub struct CellPreorder {
    partition: CellPartition,
}

impl CellPreorder {
    pub fn leq(&self, x: &Element, y: &Element) -> Result<bool> {
        self.partition.elem_leq(x, y)
    }

    pub fn partition(&self) -> &CellPartition {
        &self.partition
    }
}

pub fn cell_preorder(table: &KlTable, side: CellSide) -> CellPreorder {
    CellPreorder {
        partition: cells(table, side),
    }
}

/// Type A cells through Robinson-Schensted: left cells are fibers of the
/// recording tableau, right cells fibers of the insertion tableau,
/// two-sided cells fibers of the shape. The two-sided block order is
/// dominance, oriented so the single-row shape (the identity's cell) is
/// minimal.
pub fn rs_cells(system: &CoxeterSystem, side: CellSide) -> Result<CellPartition> {
    let tables = system.tables()?;
    let mut fibers: BTreeMap<Vec<u8>, Vec<u32>> = BTreeMap::new();
    let mut shapes: BTreeMap<Vec<u8>, Vec<usize>> = BTreeMap::new();
    for (id, w) in tables.elements.iter().enumerate() {
        let pair = rs_insert(system, w)?;
        let key: Vec<u8> = match side {
            CellSide::Left => format!("{:?}", pair.q.rows()).into_bytes(),
            CellSide::Right => format!("{:?}", pair.p.rows()).into_bytes(),
            CellSide::TwoSided => format!("{:?}", pair.shape).into_bytes(),
        };
        shapes.entry(key.clone()).or_insert(pair.shape);
        fibers.entry(key).or_default().push(id as u32);
    }
    let mut keyed: Vec<(Vec<u32>, Vec<usize>)> = fibers
        .into_iter()
        .map(|(key, ids)| (ids, shapes.remove(&key).expect("keyed")))
        .collect();
    keyed.sort_by_key(|(ids, _)| ids[0]);

    let count = keyed.len();
    let mut block_of_id = vec![0usize; tables.elements.len()];
    let mut blocks = Vec::with_capacity(count);
    for (b, (ids, _)) in keyed.iter().enumerate() {
        for &id in ids {
            block_of_id[id as usize] = b;
        }
        blocks.push(ids.iter().map(|&id| tables.elements[id as usize].clone()).collect());
    }
    let mut leq = vec![vec![false; count]; count];
    for i in 0..count {
        for j in 0..count {
            leq[i][j] = match side {
                // Robinson-Schensted sees the partition only; the order is
                // recorded just for the two-sided side.
                CellSide::Left | CellSide::Right => i == j,
                CellSide::TwoSided => dominance_leq(&keyed[j].1, &keyed[i].1)?,
            };
        }
    }
    Ok(CellPartition {
        system: system.clone(),
        side,
        blocks,
        leq,
        block_of_id,
    })
}

/// For every two-sided cell, a parabolic subset whose longest element
/// lies in the cell, when one exists. `witnesses` is indexed like the
/// blocks of `cells(table, TwoSided)`.
#[derive(Clone, Debug)]
pub struct Fact1Report {
    pub holds: bool,
    pub witnesses: Vec<Option<(Vec<usize>, Element)>>,
}

pub fn check_fact1(table: &KlTable) -> Result<Fact1Report> {
    let system = table.system();
    let partition = cells(table, CellSide::TwoSided);
    let mut witnesses: Vec<Option<(Vec<usize>, Element)>> = vec![None; partition.block_count()];
    let mut masks: Vec<u32> = (0..1u32 << system.rank()).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    for mask in masks {
        let gens: Vec<usize> = (1..=system.rank()).filter(|s| mask >> (s - 1) & 1 == 1).collect();
        let w0j = system.parabolic(&gens)?.longest_element().clone();
        let block = partition.block_of(&w0j)?;
        witnesses[block].get_or_insert((gens, w0j));
    }
    Ok(Fact1Report {
        holds: witnesses.iter().all(Option::is_some),
        witnesses,
    })
}

/// Intersections of left and right cells with more than one element.
/// Fact 2 holds when every such intersection is at most a singleton.
#[derive(Clone, Debug)]
pub struct Fact2Report {
    pub holds: bool,
    pub violations: Vec<(usize, usize, Vec<Element>)>,
}

pub fn check_fact2(table: &KlTable) -> Result<Fact2Report> {
    let left = cells(table, CellSide::Left);
    let right = cells(table, CellSide::Right);
    let mut groups: BTreeMap<(usize, usize), Vec<Element>> = BTreeMap::new();
    for w in table.system().all_elements()? {
        groups
            .entry((left.block_of(w)?, right.block_of(w)?))
            .or_default()
            .push(w.clone());
    }
    let violations: Vec<(usize, usize, Vec<Element>)> = groups
        .into_iter()
        .filter(|(_, ws)| ws.len() > 1)
        .map(|((l, r), ws)| (l, r, ws))
        .collect();
    Ok(Fact2Report {
        holds: violations.is_empty(),
        violations,
    })
}
