//! On-disk persistence for polynomial tables.
//!
//! The format is a single JSON document listing every nonzero polynomial
//! as decimal coefficient strings, keyed by canonical reduced words, in
//! (w, x) enumeration order. Export is deterministic, so export-import-
//! export round trips byte for byte.

use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cartan::CartanType;
use crate::coxeter::{word_string, CoxeterSystem};
use crate::error::{Error, Result};
use crate::hecke::{KlTable, QPoly, Row, NORMALIZATION};

pub const SCHEMA: u32 = 1;
pub const KIND: &str = "kl-table";

#[derive(Serialize, Deserialize)]
struct TableFile {
    schema: u32,
    kind: String,
    cartan: String,
    rank: usize,
    normalization: String,
    version: String,
    /// (x word, w word, coefficients of P_{x,w} in q, ascending, decimal).
    entries: Vec<(String, String, Vec<String>)>,
}

/// Serializes the table; deterministic for a given build of the crate.
pub fn export_table_bytes(table: &KlTable) -> Vec<u8> {
    let system = table.system();
    let elements = system.all_elements().expect("table system is enumerated");
    let mut entries = Vec::new();
    for (wid, row) in table.rows().iter().enumerate() {
        let w_word = word_string(&system.reduced_word(&elements[wid]));
        for (xid, poly) in &row.entries {
            entries.push((
                word_string(&system.reduced_word(&elements[*xid as usize])),
                w_word.clone(),
                poly.iter().map(|c| c.to_string()).collect(),
            ));
        }
    }
    let file = TableFile {
        schema: SCHEMA,
        kind: KIND.to_string(),
        cartan: system.cartan().to_string(),
        rank: system.rank(),
        normalization: NORMALIZATION.to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        entries,
    };
    let mut bytes = serde_json::to_vec(&file).expect("serializable");
    bytes.push(b'\n');
    bytes
}

pub fn write_table(table: &KlTable, path: &Path) -> Result<()> {
    Ok(std::fs::write(path, export_table_bytes(table))?)
}

/// Parses and validates an exported table. The metadata must match this
/// build exactly; the entries must cover the whole group with unit
/// diagonal, ordered support and degrees within the defining bound.
pub fn import_table_bytes(bytes: &[u8]) -> Result<KlTable> {
    let file: TableFile = serde_json::from_slice(bytes)
        .map_err(|e| Error::format(format!("unreadable table file: {e}")))?;
    if file.schema != SCHEMA {
        return Err(Error::format(format!(
            "schema {} unsupported, expected {SCHEMA}",
            file.schema
        )));
    }
    if file.kind != KIND {
        return Err(Error::format(format!("kind {:?}, expected {KIND:?}", file.kind)));
    }
    if file.normalization != NORMALIZATION {
        return Err(Error::format(format!(
            "normalization {:?}, this build uses {NORMALIZATION:?}",
            file.normalization
        )));
    }
    let version = env!("CARGO_PKG_VERSION");
    if file.version != version {
        return Err(Error::format(format!(
            "table written by version {}, this build is {version}; re-export the table",
            file.version
        )));
    }
    let cartan: CartanType = file
        .cartan
        .parse()
        .map_err(|e: Error| Error::format(format!("bad cartan field: {e}")))?;
    if cartan.rank() != file.rank {
        return Err(Error::format(format!(
            "rank field {} does not match {}",
            file.rank, cartan
        )));
    }
    let system = CoxeterSystem::new(cartan);
    let tables = system.tables()?;
    let n = tables.elements.len();

    let mut rows: Vec<Row> = (0..n).map(|_| Row { entries: Vec::new() }).collect();
    for (x_word, w_word, coeffs) in &file.entries {
        let x = system.element_from_word(&system.parse_word(x_word)?)?;
        let w = system.element_from_word(&system.parse_word(w_word)?)?;
        let xid = system.element_id(&x)?;
        let wid = system.element_id(&w)?;
        let poly: QPoly = coeffs
            .iter()
            .map(|c| {
                c.parse::<BigInt>()
                    .ok()
                    .filter(|v| v.sign() != num_bigint::Sign::Minus)
                    .ok_or_else(|| Error::format(format!("bad coefficient {c:?}")))
            })
            .collect::<Result<_>>()?;
        match poly.last() {
            None => return Err(Error::format(format!("empty polynomial at ({x_word},{w_word})"))),
            Some(top) if top.is_zero() => {
                return Err(Error::format(format!(
                    "untrimmed polynomial at ({x_word},{w_word})"
                )))
            }
            _ => {}
        }
        if xid != wid {
            let (lx, lw) = (x.length(), w.length());
            if lx >= lw || 2 * (poly.len() as u32 - 1) + 1 > lw - lx {
                return Err(Error::format(format!(
                    "entry ({x_word},{w_word}) violates the degree bound"
                )));
            }
        }
        rows[wid as usize].entries.push((xid, poly));
    }
    for (wid, row) in rows.iter().enumerate() {
        if !row.entries.windows(2).all(|p| p[0].0 < p[1].0) {
            return Err(Error::format(format!("row {wid} out of order or duplicated")));
        }
        match row.entries.last() {
            Some((xid, poly)) if *xid as usize == wid && poly.len() == 1 && poly[0].is_one() => {}
            _ => return Err(Error::format(format!("row {wid} lacks a unit diagonal"))),
        }
    }
    Ok(KlTable::from_rows(system, rows))
}

pub fn read_table(path: &Path) -> Result<KlTable> {
    import_table_bytes(&std::fs::read(path)?)
}
