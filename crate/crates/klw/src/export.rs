//! Render cell partitions as JSON, DOT, and aligned text for the CLI.

use serde_json::{json, Value};

use crate::cells::{rs_cells, CellPartition, CellSide};
use crate::coxeter::{word_string, Element};
use crate::error::Result;
use crate::young::rs_insert;

fn word_of(p: &CellPartition, w: &Element) -> String {
    word_string(&p.system().reduced_word(w))
}

/// Reduced word for display; the identity shows as "e".
fn display_word(p: &CellPartition, w: &Element) -> String {
    let s = word_of(p, w);
    if s.is_empty() {
        "e".to_string()
    } else {
        s
    }
}

/// Strict order pairs (i, j), i below j, in lexicographic order.
fn order_pairs(p: &CellPartition) -> Vec<(usize, usize)> {
    let n = p.block_count();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && p.leq(i, j) {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

/// Transitive reduction of the strict order: (i, j) with nothing between.
fn cover_pairs(p: &CellPartition) -> Vec<(usize, usize)> {
    let n = p.block_count();
    order_pairs(p)
        .into_iter()
        .filter(|&(i, j)| {
            !(0..n).any(|k| k != i && k != j && p.leq(i, k) && p.leq(k, j))
        })
        .collect()
}

/// In type A, the tableau shape of each cell and whether the partition
/// (and, on the two-sided side, its order) matches the Robinson-Schensted
/// fibers. Elsewhere None.
fn rs_comparison(p: &CellPartition) -> Result<Option<(Vec<Vec<usize>>, bool)>> {
    let system = p.system();
    if !system.cartan().is_single_a() {
        return Ok(None);
    }
    let mut shapes = Vec::with_capacity(p.block_count());
    for block in p.blocks() {
        shapes.push(rs_insert(system, &block[0])?.shape);
    }
    let rs = rs_cells(system, p.side())?;
    let mut agree = p.blocks() == rs.blocks();
    if agree && p.side() == CellSide::TwoSided {
        let n = p.block_count();
        agree = (0..n).all(|i| (0..n).all(|j| p.leq(i, j) == rs.leq(i, j)));
    }
    Ok(Some((shapes, agree)))
}

/// JSON payload: cells as arrays of reduced-word strings (identity = ""),
/// the strict quotient order, and its covers. In type A each cell also
/// carries its tableau shape and the payload records agreement with the
/// Robinson-Schensted fibers.
pub fn cells_json(p: &CellPartition) -> Result<Value> {
    let rs = rs_comparison(p)?;
    let cells: Vec<Value> = p
        .blocks()
        .iter()
        .enumerate()
        .map(|(i, block)| {
            let words: Vec<String> = block.iter().map(|w| word_of(p, w)).collect();
            let mut cell = json!({
                "index": i,
                "size": block.len(),
                "elements": words,
            });
            if let Some((shapes, _)) = &rs {
                cell["shape"] = json!(shapes[i]);
            }
            cell
        })
        .collect();
    let pairs: Vec<Value> = order_pairs(p).iter().map(|&(i, j)| json!([i, j])).collect();
    let covers: Vec<Value> = cover_pairs(p).iter().map(|&(i, j)| json!([i, j])).collect();
    let mut payload = json!({
        "side": p.side().to_string(),
        "cell_count": p.block_count(),
        "cells": cells,
        "order": pairs,
        "covers": covers,
    });
    if let Some((_, agree)) = rs {
        payload["rs_agreement"] = json!(agree);
    }
    Ok(payload)
}

/// DOT digraph of the cell quotient: one node per cell labelled by its
/// index, reduced words in the tooltip, edges the order covers, minimal
/// cells at the bottom.
pub fn cells_dot(p: &CellPartition) -> String {
    let mut out = String::new();
    out.push_str("digraph cells {\n");
    out.push_str("  rankdir=BT;\n");
    out.push_str("  node [shape=circle];\n");
    for (i, block) in p.blocks().iter().enumerate() {
        let words: Vec<String> = block.iter().map(|w| display_word(p, w)).collect();
        // Tooltips hold only digits, commas, and spaces; no escaping needed.
        out.push_str(&format!(
            "  c{i} [label=\"{i}\" tooltip=\"{}\"];\n",
            words.join(" ")
        ));
    }
    for (i, j) in cover_pairs(p) {
        out.push_str(&format!("  c{i} -> c{j};\n"));
    }
    out.push_str("}\n");
    out
}

/// Aligned-text table: one row per cell with size, shape in type A, and
/// reduced words, followed by the order covers.
pub fn cells_table(p: &CellPartition) -> Result<String> {
    let shapes = rs_comparison(p)?.map(|(shapes, _)| shapes);
    let mut rows: Vec<Vec<String>> = Vec::with_capacity(p.block_count());
    for (i, block) in p.blocks().iter().enumerate() {
        let mut row = vec![format!("{i}"), format!("{}", block.len())];
        if let Some(shapes) = &shapes {
            let parts: Vec<String> = shapes[i].iter().map(|r| r.to_string()).collect();
            row.push(format!("({})", parts.join(",")));
        }
        let words: Vec<String> = block.iter().map(|w| display_word(p, w)).collect();
        row.push(words.join(" "));
        rows.push(row);
    }
    let mut header = vec!["cell".to_string(), "size".to_string()];
    if shapes.is_some() {
        header.push("shape".to_string());
    }
    header.push("elements".to_string());

    let cols = header.len();
    let mut width = vec![0usize; cols];
    for row in std::iter::once(&header).chain(rows.iter()) {
        for (c, cell) in row.iter().enumerate() {
            width[c] = width[c].max(cell.len());
        }
    }
    let mut out = format!("side: {}  cells: {}\n", p.side(), p.block_count());
    for row in std::iter::once(&header).chain(rows.iter()) {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, cell)| format!("{:<1$}", cell, width[c]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    let covers: Vec<String> = cover_pairs(p)
        .iter()
        .map(|(i, j)| format!("{i} < {j}"))
        .collect();
    if covers.is_empty() {
        out.push_str("covers: none\n");
    } else {
        out.push_str(&format!("covers: {}\n", covers.join(", ")));
    }
    Ok(out)
}
