//! Exact Hecke algebra arithmetic over Z[v, v^-1] with v^2 = q.
//!
//! The standard basis T_w multiplies through the quadratic relation
//! T_s^2 = (q-1)T_s + q. The canonical basis element C'_w equals
//! v^{-l(w)} sum_x P_{x,w}(q) T_x; the polynomial table is filled by the
//! length recursion, row by row, and every stored row is checked against
//! the degree bound and coefficient non-negativity on construction.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::coxeter::{CoxeterSystem, Element, Tables};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// Normalization tag recorded in reports and table files: the canonical
/// basis is C'_w = v^{-l(w)} sum P_{x,w} T_x.
pub const NORMALIZATION: &str = "v-soergel";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeckeBasis {
    Standard,
    Kl,
}

/// Hecke algebra element: sparse combination of basis elements indexed by
/// group elements, tagged with the basis it is written in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElement {
    system: CoxeterSystem,
    basis: HeckeBasis,
    coeffs: BTreeMap<Element, LaurentPoly>,
}

impl HeckeElement {
    pub fn new(
        system: CoxeterSystem,
        basis: HeckeBasis,
        coeffs: BTreeMap<Element, LaurentPoly>,
    ) -> Result<Self> {
        for w in coeffs.keys() {
            system.element_id(w)?;
        }
        let coeffs = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(HeckeElement {
            system,
            basis,
            coeffs,
        })
    }

    pub fn zero(system: CoxeterSystem, basis: HeckeBasis) -> Self {
        HeckeElement {
            system,
            basis,
            coeffs: BTreeMap::new(),
        }
    }

    /// T_w.
    pub fn standard_unit(system: &CoxeterSystem, w: &Element) -> Result<Self> {
        system.element_id(w)?;
        let mut coeffs = BTreeMap::new();
        coeffs.insert(w.clone(), LaurentPoly::one());
        Ok(HeckeElement {
            system: system.clone(),
            basis: HeckeBasis::Standard,
            coeffs,
        })
    }

    /// C'_w.
    pub fn kl_unit(system: &CoxeterSystem, w: &Element) -> Result<Self> {
        system.element_id(w)?;
        let mut coeffs = BTreeMap::new();
        coeffs.insert(w.clone(), LaurentPoly::one());
        Ok(HeckeElement {
            system: system.clone(),
            basis: HeckeBasis::Kl,
            coeffs,
        })
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.system
    }

    pub fn basis(&self) -> HeckeBasis {
        self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, w: &Element) -> LaurentPoly {
        self.coeffs.get(w).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Element, &LaurentPoly)> {
        self.coeffs.iter()
    }

    pub fn support_size(&self) -> usize {
        self.coeffs.len()
    }
}

/// Dense polynomial in q, lowest coefficient first, no trailing zeros.
pub(crate) type QPoly = Vec<BigInt>;

fn qp_trim(p: &mut QPoly) {
    while matches!(p.last(), Some(c) if c.is_zero()) {
        p.pop();
    }
}

/// p += scale * q^shift * src
fn qp_add_scaled(p: &mut QPoly, src: &[BigInt], scale: &BigInt, shift: usize) {
    if scale.is_zero() {
        return;
    }
    if p.len() < src.len() + shift {
        p.resize(src.len() + shift, BigInt::zero());
    }
    for (k, c) in src.iter().enumerate() {
        p[k + shift] += c * scale;
    }
    qp_trim(p);
}

/// One table row: the polynomials P_{x,w} for a fixed w, sparse over x ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Row {
    pub entries: Vec<(u32, QPoly)>,
}

impl Row {
    pub fn get(&self, x: u32) -> Option<&QPoly> {
        self.entries
            .binary_search_by_key(&x, |e| e.0)
            .ok()
            .map(|i| &self.entries[i].1)
    }
}

/// Coefficient of q^{(l(w)-l(x)-1)/2} in the row entry for x, when that
/// exponent is a non-negative integer; zero otherwise.
fn mu_from_row(row: &Row, x: u32, len_x: u32, len_w: u32) -> BigInt {
    if len_w <= len_x || (len_w - len_x) % 2 == 0 {
        return BigInt::zero();
    }
    let k = ((len_w - len_x - 1) / 2) as usize;
    match row.get(x) {
        Some(p) if k < p.len() => p[k].clone(),
        _ => BigInt::zero(),
    }
}

/// Sealed table of Kazhdan-Lusztig polynomials for a full finite Weyl
/// group; immutable and safe to share across threads once built.
pub struct KlTable {
    system: CoxeterSystem,
    rows: Vec<Row>,
}

impl KlTable {
    /// Computes every row, in length order; rows within one length class
    /// are independent and filled in parallel.
    pub fn build(system: &CoxeterSystem) -> Result<KlTable> {
        let tables = system.tables()?;
        let n = tables.elements.len();
        let mut rows: Vec<Row> = Vec::with_capacity(n);
        rows.push(Row {
            entries: vec![(0, vec![BigInt::one()])],
        });
        for range in tables.len_ranges.iter().skip(1) {
            let done = &rows;
            let mut batch: Vec<Row> = range
                .clone()
                .into_par_iter()
                .map(|wid| compute_row(tables, done, wid))
                .collect();
            rows.append(&mut batch);
        }
        Ok(KlTable {
            system: system.clone(),
            rows,
        })
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.system
    }

    /// Number of stored nonzero polynomials.
    pub fn entry_count(&self) -> usize {
        self.rows.iter().map(|r| r.entries.len()).sum()
    }

    pub(crate) fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub(crate) fn from_rows(system: CoxeterSystem, rows: Vec<Row>) -> KlTable {
        KlTable { system, rows }
    }

    pub(crate) fn tables(&self) -> &Tables {
        self.system.tables().expect("table construction enumerated the group")
    }

    /// P_{x,w} as a polynomial in q (even powers of v). Zero for
    /// incomparable pairs; P_{w,w} = 1.
    pub fn kl_polynomial(&self, x: &Element, w: &Element) -> LaurentPoly {
        let (xid, wid) = match (self.system.element_id(x), self.system.element_id(w)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => return LaurentPoly::zero(),
        };
        match self.rows[wid as usize].get(xid) {
            Some(p) => LaurentPoly::from_q_coeffs(p),
            None => LaurentPoly::zero(),
        }
    }

    /// mu(x, w): the coefficient of q^{(l(w)-l(x)-1)/2} in P_{x,w} for
    /// x < w with integral exponent; zero otherwise.
    pub fn mu(&self, x: &Element, w: &Element) -> BigInt {
        let (xid, wid) = match (self.system.element_id(x), self.system.element_id(w)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => return BigInt::zero(),
        };
        mu_from_row(&self.rows[wid as usize], xid, x.length(), w.length())
    }

    pub(crate) fn mu_ids(&self, x: u32, w: u32) -> BigInt {
        let tables = self.tables();
        mu_from_row(
            &self.rows[w as usize],
            x,
            tables.length[x as usize],
            tables.length[w as usize],
        )
    }

    /// Standard-basis expansion of C'_w, keyed by element id.
    fn kl_unit_standard_ids(&self, wid: u32) -> BTreeMap<u32, LaurentPoly> {
        let lw = self.tables().length[wid as usize] as i32;
        self.rows[wid as usize]
            .entries
            .iter()
            .map(|(x, p)| (*x, LaurentPoly::from_q_coeffs(p).shifted(-lw)))
            .collect()
    }

    fn to_standard_ids(&self, a: &HeckeElement) -> Result<BTreeMap<u32, LaurentPoly>> {
        if a.system != self.system {
            return Err(Error::usage("element belongs to a different system"));
        }
        let mut out: BTreeMap<u32, LaurentPoly> = BTreeMap::new();
        for (w, c) in &a.coeffs {
            let wid = self.system.element_id(w)?;
            match a.basis {
                HeckeBasis::Standard => {
                    let entry = out.entry(wid).or_insert_with(LaurentPoly::zero);
                    entry.add_assign(c);
                }
                HeckeBasis::Kl => {
                    for (x, cx) in self.kl_unit_standard_ids(wid) {
                        let entry = out.entry(x).or_insert_with(LaurentPoly::zero);
                        entry.add_assign(&(&cx * c));
                    }
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// Peels canonical-basis coefficients off a standard-basis id map.
    /// Unitriangularity makes the top term exact at each step.
    fn standard_ids_to_kl(&self, mut m: BTreeMap<u32, LaurentPoly>) -> BTreeMap<u32, LaurentPoly> {
        let tables = self.tables();
        let mut out = BTreeMap::new();
        while let Some((&wid, gamma)) = m.iter().next_back() {
            let lw = tables.length[wid as usize] as i32;
            let c = gamma.shifted(lw);
            for (x, cx) in self.kl_unit_standard_ids(wid) {
                let entry = m.entry(x).or_insert_with(LaurentPoly::zero);
                entry.sub_assign(&(&cx * &c));
                if entry.is_zero() {
                    m.remove(&x);
                }
            }
            assert!(!m.contains_key(&wid), "top term must cancel exactly");
            out.insert(wid, c);
        }
        out
    }

    fn ids_to_element_map(&self, m: BTreeMap<u32, LaurentPoly>) -> BTreeMap<Element, LaurentPoly> {
        let tables = self.tables();
        m.into_iter()
            .map(|(id, c)| (tables.elements[id as usize].clone(), c))
            .collect()
    }

    pub fn to_standard_basis(&self, a: &HeckeElement) -> Result<HeckeElement> {
        let m = self.to_standard_ids(a)?;
        Ok(HeckeElement {
            system: self.system.clone(),
            basis: HeckeBasis::Standard,
            coeffs: self.ids_to_element_map(m),
        })
    }

    pub fn to_kl_basis(&self, a: &HeckeElement) -> Result<HeckeElement> {
        let m = self.to_standard_ids(a)?;
        let kl = self.standard_ids_to_kl(m);
        Ok(HeckeElement {
            system: self.system.clone(),
            basis: HeckeBasis::Kl,
            coeffs: self.ids_to_element_map(kl),
        })
    }

    /// Product in the standard basis. Inputs may be in either basis.
    pub fn multiply(&self, a: &HeckeElement, b: &HeckeElement) -> Result<HeckeElement> {
        let am = self.to_standard_ids(a)?;
        let bm = self.to_standard_ids(b)?;
        let tables = self.tables();
        let mut out: BTreeMap<u32, LaurentPoly> = BTreeMap::new();
        for (&y, cy) in &bm {
            let mut folded = am.clone();
            let word = tables.words[y as usize].clone();
            for s in word {
                folded = t_right_gen(tables, &folded, s as usize);
            }
            for (x, cx) in folded {
                let entry = out.entry(x).or_insert_with(LaurentPoly::zero);
                entry.add_assign(&(&cx * cy));
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(HeckeElement {
            system: self.system.clone(),
            basis: HeckeBasis::Standard,
            coeffs: self.ids_to_element_map(out),
        })
    }

    /// Canonical-basis expansion of C'_x C'_y.
    pub fn h_expansion(&self, x: &Element, y: &Element) -> Result<BTreeMap<Element, LaurentPoly>> {
        let cx = HeckeElement::kl_unit(&self.system, x)?;
        let cy = HeckeElement::kl_unit(&self.system, y)?;
        let prod = self.multiply(&cx, &cy)?;
        Ok(self.to_kl_basis(&prod)?.coeffs)
    }

    /// Structure constant h_{x,y,z}: the coefficient of C'_z in C'_x C'_y.
    pub fn h_constant(&self, x: &Element, y: &Element, z: &Element) -> Result<LaurentPoly> {
        Ok(self
            .h_expansion(x, y)?
            .remove(z)
            .unwrap_or_else(LaurentPoly::zero))
    }

    /// h_{x,y,z} evaluated at q = 1; non-negative.
    pub fn h_constant_at_one(&self, x: &Element, y: &Element, z: &Element) -> Result<BigInt> {
        Ok(self.h_constant(x, y, z)?.eval_at_one())
    }
}

/// Right multiplication by T_s on a standard-basis id map.
fn t_right_gen(
    tables: &Tables,
    a: &BTreeMap<u32, LaurentPoly>,
    s: usize,
) -> BTreeMap<u32, LaurentPoly> {
    let q = LaurentPoly::v_pow(2);
    let q_minus_1 = &q - &LaurentPoly::one();
    let mut out: BTreeMap<u32, LaurentPoly> = BTreeMap::new();
    let mut add = |id: u32, c: LaurentPoly| {
        if c.is_zero() {
            return;
        }
        let entry = out.entry(id).or_insert_with(LaurentPoly::zero);
        entry.add_assign(&c);
        if entry.is_zero() {
            out.remove(&id);
        }
    };
    for (&w, c) in a {
        let ws = tables.right_mul(w, s);
        if tables.has_rdesc(w, s) {
            add(w, c * &q_minus_1);
            add(ws, c * &q);
        } else {
            add(ws, c.clone());
        }
    }
    out
}

/// Fills the row for w from the row of v = sw (s the smallest left
/// descent): scatter C'_s C'_v in polynomial space, then subtract the
/// mu-correction rows.
fn compute_row(tables: &Tables, rows: &[Row], wid: u32) -> Row {
    let n = tables.elements.len();
    let s = tables.first_ldesc(wid);
    debug_assert!(s > 0);
    let vid = tables.left_mul(wid, s);
    let lw = tables.length[wid as usize];
    let lv = lw - 1;
    let row_v = &rows[vid as usize];

    let mut acc: Vec<QPoly> = vec![Vec::new(); n];
    for (x, p) in &row_v.entries {
        let sx = tables.left_mul(*x, s);
        if tables.length[sx as usize] > tables.length[*x as usize] {
            qp_add_scaled(&mut acc[sx as usize], p, &BigInt::one(), 0);
            qp_add_scaled(&mut acc[*x as usize], p, &BigInt::one(), 0);
        } else {
            qp_add_scaled(&mut acc[*x as usize], p, &BigInt::one(), 1);
            qp_add_scaled(&mut acc[sx as usize], p, &BigInt::one(), 1);
        }
    }
    for (z, _) in &row_v.entries {
        if *z == vid || !tables.has_ldesc(*z, s) {
            continue;
        }
        let lz = tables.length[*z as usize];
        let mu = mu_from_row(row_v, *z, lz, lv);
        if mu.is_zero() {
            continue;
        }
        let shift = ((lw - lz) / 2) as usize;
        let neg_mu = -mu;
        for (y, py) in &rows[*z as usize].entries {
            qp_add_scaled(&mut acc[*y as usize], py, &neg_mu, shift);
        }
    }

    let entries: Vec<(u32, QPoly)> = acc
        .into_iter()
        .enumerate()
        .filter(|(_, p)| !p.is_empty())
        .map(|(x, p)| (x as u32, p))
        .collect();
    for (x, p) in &entries {
        let lx = tables.length[*x as usize];
        if *x == wid {
            assert_eq!(p.as_slice(), &[BigInt::one()], "diagonal entry");
        } else {
            assert!(
                2 * (p.len() as u32 - 1) + 1 <= lw - lx,
                "degree bound at x={x}, w={wid}"
            );
        }
        assert!(
            p.iter().all(|c| c.sign() != num_bigint::Sign::Minus),
            "non-negative coefficients at x={x}, w={wid}"
        );
    }
    Row { entries }
}
