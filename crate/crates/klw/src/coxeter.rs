//! Finite Weyl groups of types A, B/C and their products, realized on
//! (signed) permutation windows.
//!
//! A type A_n component acts on a window holding a permutation of 1..n+1;
//! a type B_n/C_n component holds a signed permutation of 1..n. Generator
//! indices are global and 1-based, numbered component by component. Within
//! a signed component the first generator is the sign change at the first
//! window position, so m(s_1, s_2) = 4 there.

use std::collections::HashMap;
use std::fmt;
use std::ops::Range;
use std::sync::{Arc, OnceLock};

use crate::cartan::{CartanType, Family};
use crate::error::{Error, Result};

pub const DEFAULT_CAPACITY: u64 = 1_000_000;

/// Chirality for descents and coset families. `Left` cosets are of the
/// form wW_J; `Right` cosets are W_Jw.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extremal {
    Min,
    Max,
}

/// Group element in normal form: one window per component plus the cached
/// Coxeter length. Two elements are equal iff all windows agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    windows: Vec<Vec<i8>>,
    length: u32,
}

impl Element {
    pub fn length(&self) -> u32 {
        self.length
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    pub fn windows(&self) -> &[Vec<i8>] {
        &self.windows
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (ci, w) in self.windows.iter().enumerate() {
            if ci > 0 {
                write!(f, "|")?;
            }
            for (i, x) in w.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
        }
        write!(f, "]")
    }
}

#[derive(Clone, Copy, Debug)]
struct Comp {
    family: Family,
    rank: usize,
    /// 1-based global index of the component's first generator.
    first_gen: usize,
    window: usize,
}

/// A finite Coxeter system. Cheap to clone; enumeration tables are built
/// once on first use and shared.
#[derive(Clone)]
pub struct CoxeterSystem {
    inner: Arc<Inner>,
}

struct Inner {
    cartan: CartanType,
    comps: Vec<Comp>,
    rank: usize,
    order: u128,
    capacity: u64,
    coxeter_matrix: Vec<Vec<u8>>,
    tables: OnceLock<Tables>,
}

/// Id-indexed multiplication and descent tables over the full enumeration.
/// Ids are assigned in (length, lexicographic reduced word) order.
pub(crate) struct Tables {
    pub elements: Vec<Element>,
    pub id_of: HashMap<Element, u32>,
    pub words: Vec<Vec<u8>>,
    pub right: Vec<u32>,
    pub left: Vec<u32>,
    pub length: Vec<u32>,
    pub rdesc: Vec<u128>,
    pub ldesc: Vec<u128>,
    pub len_ranges: Vec<Range<u32>>,
    pub rank: usize,
}

impl Tables {
    #[inline]
    pub fn right_mul(&self, id: u32, s: usize) -> u32 {
        self.right[id as usize * self.rank + (s - 1)]
    }

    #[inline]
    pub fn left_mul(&self, id: u32, s: usize) -> u32 {
        self.left[id as usize * self.rank + (s - 1)]
    }

    #[inline]
    pub fn has_rdesc(&self, id: u32, s: usize) -> bool {
        self.rdesc[id as usize] >> (s - 1) & 1 == 1
    }

    #[inline]
    pub fn has_ldesc(&self, id: u32, s: usize) -> bool {
        self.ldesc[id as usize] >> (s - 1) & 1 == 1
    }

    /// Smallest left descent; 0 for the identity.
    pub fn first_ldesc(&self, id: u32) -> usize {
        let m = self.ldesc[id as usize];
        if m == 0 {
            0
        } else {
            m.trailing_zeros() as usize + 1
        }
    }
}

/// Standard parabolic subgroup W_J with its longest element and full
/// element list cached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicSubset {
    gens: Vec<usize>,
    w0: Element,
    elements: Vec<Element>,
}

impl ParabolicSubset {
    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// The longest element w_0^J; an involution.
    pub fn longest_element(&self) -> &Element {
        &self.w0
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }
}

impl CoxeterSystem {
    pub fn new(cartan: CartanType) -> Self {
        CoxeterSystem::with_capacity(cartan, DEFAULT_CAPACITY)
    }

    /// `capacity` bounds the group order for enumeration-backed operations.
    pub fn with_capacity(cartan: CartanType, capacity: u64) -> Self {
        let mut comps = Vec::new();
        let mut first_gen = 1;
        for (family, rank) in cartan.components() {
            let window = match family {
                Family::A => rank + 1,
                Family::B | Family::C => *rank,
            };
            comps.push(Comp {
                family: *family,
                rank: *rank,
                first_gen,
                window,
            });
            first_gen += rank;
        }
        let rank = first_gen - 1;
        let order = cartan.weyl_order();
        let coxeter_matrix = build_coxeter_matrix(&comps, rank);
        CoxeterSystem {
            inner: Arc::new(Inner {
                cartan,
                comps,
                rank,
                order,
                capacity,
                coxeter_matrix,
                tables: OnceLock::new(),
            }),
        }
    }

    pub fn cartan(&self) -> &CartanType {
        &self.inner.cartan
    }

    pub fn rank(&self) -> usize {
        self.inner.rank
    }

    pub fn order(&self) -> u128 {
        self.inner.order
    }

    pub fn capacity(&self) -> u64 {
        self.inner.capacity
    }

    /// Coxeter matrix entry m(s_i, s_j), 1-based.
    pub fn coxeter_m(&self, i: usize, j: usize) -> u8 {
        self.inner.coxeter_matrix[i - 1][j - 1]
    }

    pub fn identity(&self) -> Element {
        let windows = self
            .inner
            .comps
            .iter()
            .map(|c| match c.family {
                Family::A => (1..=c.window as i8).collect(),
                Family::B | Family::C => (1..=c.rank as i8).collect(),
            })
            .collect();
        Element { windows, length: 0 }
    }

    pub fn generator(&self, s: usize) -> Result<Element> {
        if s < 1 || s > self.inner.rank {
            return Err(Error::usage(format!(
                "generator index {s} out of range 1..={}",
                self.inner.rank
            )));
        }
        let mut e = self.identity();
        self.inner.right_apply_gen(&mut e.windows, s);
        e.length = 1;
        Ok(e)
    }

    /// Group product ab. Errors when either element has the wrong window
    /// shape for this system.
    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        self.validate(a)?;
        self.validate(b)?;
        let windows = self.inner.compose(&a.windows, &b.windows);
        Ok(self.inner.seal(windows))
    }

    pub fn inverse(&self, w: &Element) -> Result<Element> {
        self.validate(w)?;
        let windows = self.inner.invert(&w.windows);
        debug_assert_eq!(self.inner.windows_length(&windows), w.length);
        Ok(Element {
            windows,
            length: w.length,
        })
    }

    /// Generator indices s with length(ws) < length(w) (right side) or
    /// length(sw) < length(w) (left side).
    pub fn descents(&self, w: &Element, side: Side) -> Vec<usize> {
        debug_assert!(self.validate(w).is_ok());
        let windows = match side {
            Side::Right => w.windows.clone(),
            Side::Left => self.inner.invert(&w.windows),
        };
        (1..=self.inner.rank)
            .filter(|&s| self.inner.right_descent(&windows, s))
            .collect()
    }

    /// Canonical reduced word: greedily take the smallest left descent.
    /// This is the lexicographically smallest reduced expression.
    pub fn reduced_word(&self, w: &Element) -> Vec<usize> {
        debug_assert!(self.validate(w).is_ok());
        let mut inv = self.inner.invert(&w.windows);
        let mut remaining = w.length;
        let mut word = Vec::with_capacity(remaining as usize);
        while remaining > 0 {
            let s = (1..=self.inner.rank)
                .find(|&s| self.inner.right_descent(&inv, s))
                .expect("positive length forces a descent");
            word.push(s);
            self.inner.right_apply_gen(&mut inv, s);
            remaining -= 1;
        }
        word
    }

    pub fn element_from_word(&self, word: &[usize]) -> Result<Element> {
        let mut e = self.identity();
        for &s in word {
            if s < 1 || s > self.inner.rank {
                return Err(Error::usage(format!(
                    "word letter {s} out of range 1..={}",
                    self.inner.rank
                )));
            }
            self.inner.right_apply_gen(&mut e.windows, s);
        }
        Ok(self.inner.seal(e.windows))
    }

    /// Parses a word given as a digit string ("121", "" for the identity)
    /// or comma-separated indices ("1,2,1").
    pub fn parse_word(&self, s: &str) -> Result<Vec<usize>> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Vec::new());
        }
        let letters: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::usage(format!("bad word letter {t:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::usage(format!("bad word character {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        for &l in &letters {
            if l < 1 || l > self.inner.rank {
                return Err(Error::usage(format!(
                    "word letter {l} out of range 1..={}",
                    self.inner.rank
                )));
            }
        }
        Ok(letters)
    }

    /// Bruhat order test by the subword property, walking the canonical
    /// reduced word of `w` through the lifting rule.
    pub fn bruhat_leq(&self, x: &Element, w: &Element) -> bool {
        debug_assert!(self.validate(x).is_ok() && self.validate(w).is_ok());
        if x.length > w.length {
            return false;
        }
        let mut wi = self.inner.invert(&w.windows);
        let mut xi = self.inner.invert(&x.windows);
        let mut lw = w.length;
        let mut lx = x.length;
        while lw > 0 {
            if lx == 0 {
                return true;
            }
            if lx > lw {
                return false;
            }
            let s = (1..=self.inner.rank)
                .find(|&s| self.inner.right_descent(&wi, s))
                .expect("positive length forces a descent");
            self.inner.right_apply_gen(&mut wi, s);
            lw -= 1;
            if self.inner.right_descent(&xi, s) {
                self.inner.right_apply_gen(&mut xi, s);
                lx -= 1;
            }
        }
        lx == 0
    }

    /// Longest element w_0, by greedy ascent. Does not require
    /// enumeration, hence no capacity bound.
    pub fn longest_element(&self) -> Element {
        let mut w = self.identity().windows;
        let mut len = 0u32;
        loop {
            match (1..=self.inner.rank).find(|&s| !self.inner.right_descent(&w, s)) {
                Some(s) => {
                    self.inner.right_apply_gen(&mut w, s);
                    len += 1;
                }
                None => break,
            }
        }
        Element { windows: w, length: len }
    }

    /// Every element exactly once, sorted by (length, lexicographic
    /// canonical reduced word). Errors when the group order exceeds the
    /// configured capacity.
    pub fn all_elements(&self) -> Result<&[Element]> {
        Ok(&self.tables()?.elements)
    }

    /// Standard parabolic subgroup on the given generator indices. The
    /// subgroup is enumerated directly, so this works even when the full
    /// group is over capacity, as long as W_J itself is not.
    pub fn parabolic(&self, gens: &[usize]) -> Result<ParabolicSubset> {
        let mut gens: Vec<usize> = gens.to_vec();
        gens.sort_unstable();
        gens.dedup();
        for &s in &gens {
            if s < 1 || s > self.inner.rank {
                return Err(Error::usage(format!(
                    "parabolic generator {s} out of range 1..={}",
                    self.inner.rank
                )));
            }
        }
        let mut seen: HashMap<Vec<Vec<i8>>, ()> = HashMap::new();
        let id = self.identity();
        seen.insert(id.windows.clone(), ());
        let mut queue = vec![id.windows.clone()];
        let mut head = 0;
        while head < queue.len() {
            let cur = queue[head].clone();
            head += 1;
            if queue.len() as u64 > self.inner.capacity {
                return Err(Error::Capacity {
                    order: queue.len() as u128,
                    bound: self.inner.capacity,
                });
            }
            for &s in &gens {
                let mut next = cur.clone();
                self.inner.right_apply_gen(&mut next, s);
                if !seen.contains_key(&next) {
                    seen.insert(next.clone(), ());
                    queue.push(next);
                }
            }
        }
        let unsorted: Vec<Element> = queue.into_iter().map(|w| self.inner.seal(w)).collect();
        let mut keyed: Vec<(u32, Vec<usize>, usize)> = unsorted
            .iter()
            .enumerate()
            .map(|(i, e)| (e.length, self.reduced_word(e), i))
            .collect();
        keyed.sort();
        let max_len = keyed.last().expect("subgroup is non-empty").0;
        let top_count = keyed.iter().filter(|k| k.0 == max_len).count();
        assert_eq!(top_count, 1, "longest element of W_J is unique");
        let elements: Vec<Element> = keyed.iter().map(|k| unsorted[k.2].clone()).collect();
        let w0 = elements.last().expect("non-empty").clone();
        debug_assert!(self.multiply(&w0, &w0).expect("same system").is_identity());
        Ok(ParabolicSubset { gens, w0, elements })
    }

    /// One representative per coset (wW_J for `Side::Left`, W_Jw for
    /// `Side::Right`), in enumeration order. Max representatives y satisfy
    /// ys < y for all s in J (left side); min representatives the reverse.
    pub fn coset_representatives(
        &self,
        j: &ParabolicSubset,
        side: Side,
        extremal: Extremal,
    ) -> Result<Vec<Element>> {
        let tables = self.tables()?;
        let mut mask: u128 = 0;
        for &s in &j.gens {
            mask |= 1 << (s - 1);
        }
        let picks = tables.elements.iter().enumerate().filter(|(id, _)| {
            let desc = match side {
                Side::Left => tables.rdesc[*id],
                Side::Right => tables.ldesc[*id],
            };
            match extremal {
                Extremal::Min => desc & mask == 0,
                Extremal::Max => desc & mask == mask,
            }
        });
        let reps: Vec<Element> = picks.map(|(_, e)| e.clone()).collect();
        debug_assert_eq!(reps.len() as u128 * j.order() as u128, self.inner.order);
        Ok(reps)
    }

    /// The extremal representative of w's coset; idempotent.
    pub fn coset_rep_of(
        &self,
        w: &Element,
        j: &ParabolicSubset,
        side: Side,
        extremal: Extremal,
    ) -> Element {
        debug_assert!(self.validate(w).is_ok());
        let mut cur = w.windows.clone();
        let mut inv = self.inner.invert(&cur);
        loop {
            let step = j.gens.iter().copied().find(|&s| {
                let has = match side {
                    Side::Left => self.inner.right_descent(&cur, s),
                    Side::Right => self.inner.right_descent(&inv, s),
                };
                match extremal {
                    Extremal::Min => has,
                    Extremal::Max => !has,
                }
            });
            match step {
                Some(s) => match side {
                    Side::Left => {
                        self.inner.right_apply_gen(&mut cur, s);
                        self.inner.left_apply_gen(&mut inv, s);
                    }
                    Side::Right => {
                        self.inner.left_apply_gen(&mut cur, s);
                        self.inner.right_apply_gen(&mut inv, s);
                    }
                },
                None => break,
            }
        }
        self.inner.seal(cur)
    }

    pub(crate) fn tables(&self) -> Result<&Tables> {
        if self.inner.order > self.inner.capacity as u128 {
            return Err(Error::Capacity {
                order: self.inner.order,
                bound: self.inner.capacity,
            });
        }
        Ok(self.inner.tables.get_or_init(|| self.build_tables()))
    }

    pub(crate) fn element_id(&self, w: &Element) -> Result<u32> {
        let tables = self.tables()?;
        tables
            .id_of
            .get(w)
            .copied()
            .ok_or_else(|| Error::usage(format!("element {w} does not belong to this system")))
    }

    fn validate(&self, w: &Element) -> Result<()> {
        let ok = w.windows.len() == self.inner.comps.len()
            && self
                .inner
                .comps
                .iter()
                .zip(&w.windows)
                .all(|(c, win)| window_valid(c, win));
        if ok {
            Ok(())
        } else {
            Err(Error::usage(format!(
                "element {w} does not fit Cartan type {}",
                self.inner.cartan
            )))
        }
    }

    fn build_tables(&self) -> Tables {
        let inner = &*self.inner;
        let rank = inner.rank;
        let id_el = self.identity();
        let mut seen: HashMap<Vec<Vec<i8>>, ()> = HashMap::new();
        seen.insert(id_el.windows.clone(), ());
        let mut queue = vec![id_el.windows];
        let mut head = 0;
        while head < queue.len() {
            let cur = queue[head].clone();
            head += 1;
            for s in 1..=rank {
                let mut next = cur.clone();
                inner.right_apply_gen(&mut next, s);
                if !seen.contains_key(&next) {
                    seen.insert(next.clone(), ());
                    queue.push(next);
                }
            }
        }
        assert_eq!(queue.len() as u128, inner.order, "enumeration count");

        let mut keyed: Vec<(u32, Vec<u8>, Vec<Vec<i8>>)> = queue
            .into_iter()
            .map(|w| {
                let e = inner.seal(w);
                let word: Vec<u8> = self.reduced_word(&e).iter().map(|&s| s as u8).collect();
                (e.length, word, e.windows)
            })
            .collect();
        keyed.sort();

        let n = keyed.len();
        let mut elements = Vec::with_capacity(n);
        let mut words = Vec::with_capacity(n);
        let mut length = Vec::with_capacity(n);
        let mut id_of = HashMap::with_capacity(n);
        for (i, (len, word, windows)) in keyed.into_iter().enumerate() {
            let e = Element {
                windows,
                length: len,
            };
            id_of.insert(e.clone(), i as u32);
            elements.push(e);
            words.push(word);
            length.push(len);
        }

        let mut right = vec![0u32; n * rank];
        let mut left = vec![0u32; n * rank];
        let mut inverse = vec![0u32; n];
        let mut rdesc = vec![0u128; n];
        for (i, e) in elements.iter().enumerate() {
            inverse[i] = id_of[&Element {
                windows: inner.invert(&e.windows),
                length: e.length,
            }];
            for s in 1..=rank {
                let mut wr = e.windows.clone();
                inner.right_apply_gen(&mut wr, s);
                let rl = inner.windows_length(&wr);
                right[i * rank + s - 1] = id_of[&Element {
                    windows: wr,
                    length: rl,
                }];
                if rl < e.length {
                    rdesc[i] |= 1 << (s - 1);
                }
                let mut wl = e.windows.clone();
                inner.left_apply_gen(&mut wl, s);
                let ll = inner.windows_length(&wl);
                left[i * rank + s - 1] = id_of[&Element {
                    windows: wl,
                    length: ll,
                }];
            }
        }
        let ldesc: Vec<u128> = (0..n).map(|i| rdesc[inverse[i] as usize]).collect();

        let max_len = length.last().copied().unwrap_or(0);
        let mut len_ranges = Vec::with_capacity(max_len as usize + 1);
        let mut start = 0u32;
        for l in 0..=max_len {
            let mut end = start;
            while (end as usize) < n && length[end as usize] == l {
                end += 1;
            }
            len_ranges.push(start..end);
            start = end;
        }

        Tables {
            elements,
            id_of,
            words,
            right,
            left,
            length,
            rdesc,
            ldesc,
            len_ranges,
            rank,
        }
    }
}

impl PartialEq for CoxeterSystem {
    fn eq(&self, other: &Self) -> bool {
        self.inner.cartan == other.inner.cartan
    }
}

impl Eq for CoxeterSystem {}

impl fmt::Debug for CoxeterSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoxeterSystem({})", self.inner.cartan)
    }
}

/// Formats a word as a digit string when every letter fits one digit,
/// comma-separated otherwise. Empty word is the empty string.
pub fn word_string(word: &[usize]) -> String {
    if word.iter().all(|&s| s <= 9) {
        word.iter().map(|s| s.to_string()).collect()
    } else {
        word.iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn window_valid(c: &Comp, w: &[i8]) -> bool {
    if w.len() != c.window {
        return false;
    }
    let mut seen = vec![false; c.window];
    for &x in w {
        let a = x.unsigned_abs() as usize;
        if a < 1 || a > c.window || seen[a - 1] {
            return false;
        }
        if x < 0 && !c.family.is_signed() {
            return false;
        }
        seen[a - 1] = true;
    }
    true
}

fn build_coxeter_matrix(comps: &[Comp], rank: usize) -> Vec<Vec<u8>> {
    let mut m = vec![vec![2u8; rank]; rank];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    for c in comps {
        for a in 0..c.rank {
            for b in 0..c.rank {
                if a == b {
                    continue;
                }
                let (i, j) = (c.first_gen - 1 + a, c.first_gen - 1 + b);
                let adjacent = a.abs_diff(b) == 1;
                m[i][j] = match (c.family, adjacent) {
                    (Family::B | Family::C, true) if a.min(b) == 0 => 4,
                    (_, true) => 3,
                    (_, false) => 2,
                };
            }
        }
    }
    m
}

impl Inner {
    fn comp_of(&self, s: usize) -> (usize, usize) {
        for (i, c) in self.comps.iter().enumerate() {
            if s >= c.first_gen && s < c.first_gen + c.rank {
                return (i, s - c.first_gen + 1);
            }
        }
        unreachable!("generator index validated by callers")
    }

    /// Right multiplication by a generator, in place.
    fn right_apply_gen(&self, windows: &mut [Vec<i8>], s: usize) {
        let (ci, local) = self.comp_of(s);
        let w = &mut windows[ci];
        match self.comps[ci].family {
            Family::A => w.swap(local - 1, local),
            Family::B | Family::C => {
                if local == 1 {
                    w[0] = -w[0];
                } else {
                    w.swap(local - 2, local - 1);
                }
            }
        }
    }

    /// Left multiplication by a generator: acts on window values.
    fn left_apply_gen(&self, windows: &mut [Vec<i8>], s: usize) {
        let (ci, local) = self.comp_of(s);
        let w = &mut windows[ci];
        match self.comps[ci].family {
            Family::A => {
                let (a, b) = (local as i8, local as i8 + 1);
                for x in w.iter_mut() {
                    if *x == a {
                        *x = b;
                    } else if *x == b {
                        *x = a;
                    }
                }
            }
            Family::B | Family::C => {
                if local == 1 {
                    for x in w.iter_mut() {
                        if x.abs() == 1 {
                            *x = -*x;
                        }
                    }
                } else {
                    let (a, b) = (local as i8 - 1, local as i8);
                    for x in w.iter_mut() {
                        if x.abs() == a {
                            *x = b * x.signum();
                        } else if x.abs() == b {
                            *x = a * x.signum();
                        }
                    }
                }
            }
        }
    }

    /// (ab)(i) = a(b(i)), extended to signed values by a(-k) = -a(k).
    fn compose(&self, a: &[Vec<i8>], b: &[Vec<i8>]) -> Vec<Vec<i8>> {
        a.iter()
            .zip(b)
            .map(|(wa, wb)| {
                wb.iter()
                    .map(|&x| {
                        if x > 0 {
                            wa[x as usize - 1]
                        } else {
                            -wa[(-x) as usize - 1]
                        }
                    })
                    .collect()
            })
            .collect()
    }

    fn invert(&self, a: &[Vec<i8>]) -> Vec<Vec<i8>> {
        a.iter()
            .map(|w| {
                let mut out = vec![0i8; w.len()];
                for (i, &x) in w.iter().enumerate() {
                    out[x.unsigned_abs() as usize - 1] = (i as i8 + 1) * x.signum();
                }
                out
            })
            .collect()
    }

    fn windows_length(&self, windows: &[Vec<i8>]) -> u32 {
        self.comps
            .iter()
            .zip(windows)
            .map(|(c, w)| {
                let mut inv = 0u32;
                for i in 0..w.len() {
                    for j in i + 1..w.len() {
                        if w[i] > w[j] {
                            inv += 1;
                        }
                    }
                }
                match c.family {
                    Family::A => inv,
                    Family::B | Family::C => {
                        let neg: u32 = w
                            .iter()
                            .filter(|&&x| x < 0)
                            .map(|&x| (-x) as u32)
                            .sum();
                        inv + neg
                    }
                }
            })
            .sum()
    }

    fn right_descent(&self, windows: &[Vec<i8>], s: usize) -> bool {
        let (ci, local) = self.comp_of(s);
        let w = &windows[ci];
        match self.comps[ci].family {
            Family::A => w[local - 1] > w[local],
            Family::B | Family::C => {
                if local == 1 {
                    w[0] < 0
                } else {
                    w[local - 2] > w[local - 1]
                }
            }
        }
    }

    fn seal(&self, windows: Vec<Vec<i8>>) -> Element {
        let length = self.windows_length(&windows);
        Element { windows, length }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn sys(s: &str) -> CoxeterSystem {
        CoxeterSystem::new(s.parse().unwrap())
    }

    fn from_word(sys: &CoxeterSystem, w: &[usize]) -> Element {
        sys.element_from_word(w).unwrap()
    }

    #[test]
    fn generators_are_involutions() {
        for name in ["A1", "A3", "B2", "B3", "A1xB2"] {
            let g = sys(name);
            for s in 1..=g.rank() {
                let e = g.generator(s).unwrap();
                assert_eq!(e.length(), 1);
                assert!(g.multiply(&e, &e).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn coxeter_matrix_relations_hold() {
        for name in ["A3", "B3", "A1xB2"] {
            let g = sys(name);
            for i in 1..=g.rank() {
                for j in 1..=g.rank() {
                    if i == j {
                        assert_eq!(g.coxeter_m(i, j), 1);
                        continue;
                    }
                    let m = g.coxeter_m(i, j);
                    assert_eq!(m, g.coxeter_m(j, i));
                    let si = g.generator(i).unwrap();
                    let sj = g.generator(j).unwrap();
                    let prod = g.multiply(&si, &sj).unwrap();
                    let mut acc = g.identity();
                    let mut ord = 0;
                    loop {
                        acc = g.multiply(&acc, &prod).unwrap();
                        ord += 1;
                        if acc.is_identity() {
                            break;
                        }
                        assert!(ord < 20);
                    }
                    assert_eq!(u8::try_from(ord).unwrap(), m, "order of s{i}s{j} in {name}");
                }
            }
        }
    }

    #[test]
    fn braid_relation_in_a2() {
        let g = sys("A2");
        assert_eq!(from_word(&g, &[1, 2, 1]), from_word(&g, &[2, 1, 2]));
    }

    #[test]
    fn b2_lengths_and_longest_element() {
        let g = sys("B2");
        let all = g.all_elements().unwrap();
        assert_eq!(all.len(), 8);
        let mut lengths: Vec<u32> = all.iter().map(|e| e.length()).collect();
        lengths.sort_unstable();
        assert_eq!(lengths, vec![0, 1, 1, 2, 2, 3, 3, 4]);
        let w0 = g.longest_element();
        assert_eq!(w0.length(), 4);
        assert_eq!(g.reduced_word(&w0), vec![1, 2, 1, 2]);
        assert_eq!((g.multiply(&from_word(&g, &[1, 2]), &from_word(&g, &[1, 2]))).unwrap().length(), 4);
        assert!(from_word(&g, &[1, 2, 1, 2, 1, 2, 1, 2]).is_identity());
    }

    #[test]
    fn canonical_words_golden() {
        let a2 = sys("A2");
        assert_eq!(a2.reduced_word(&a2.longest_element()), vec![1, 2, 1]);
        assert_eq!(a2.reduced_word(&a2.identity()), Vec::<usize>::new());
        assert_eq!(a2.longest_element().length(), 3);
    }

    #[test]
    fn descents_golden() {
        let g = sys("A2");
        let s1s2 = from_word(&g, &[1, 2]);
        assert_eq!(g.descents(&s1s2, Side::Right), vec![2]);
        assert_eq!(g.descents(&s1s2, Side::Left), vec![1]);
        assert_eq!(g.descents(&g.identity(), Side::Right), Vec::<usize>::new());
        let w0 = g.longest_element();
        assert_eq!(g.descents(&w0, Side::Right), vec![1, 2]);
        assert_eq!(g.descents(&w0, Side::Left), vec![1, 2]);
    }

    #[test]
    fn enumeration_counts() {
        for (name, expect) in [("A1", 2u128), ("A2", 6), ("A3", 24), ("B2", 8), ("B3", 48), ("A1xA1", 4), ("A1xB2", 16)] {
            let g = sys(name);
            assert_eq!(g.order(), expect);
            assert_eq!(g.all_elements().unwrap().len() as u128, expect);
        }
    }

    #[test]
    fn enumeration_is_sorted_and_unique() {
        let g = sys("B3");
        let all = g.all_elements().unwrap();
        let keys: Vec<(u32, Vec<usize>)> = all
            .iter()
            .map(|e| (e.length(), g.reduced_word(e)))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn capacity_bound_is_enforced() {
        let g = CoxeterSystem::with_capacity("A3".parse().unwrap(), 10);
        match g.all_elements() {
            Err(Error::Capacity { order, bound }) => {
                assert_eq!(order, 24);
                assert_eq!(bound, 10);
            }
            other => panic!("expected capacity error, got {other:?}"),
        }
    }

    #[test]
    fn product_type_commutes_across_components() {
        let g = sys("A1xA1");
        assert_eq!(g.coxeter_m(1, 2), 2);
        let w0 = g.longest_element();
        assert_eq!(g.reduced_word(&w0), vec![1, 2]);
        assert_eq!(from_word(&g, &[1, 2]), from_word(&g, &[2, 1]));
    }

    #[test]
    fn coset_representatives_golden_a2() {
        let g = sys("A2");
        let j = g.parabolic(&[1]).unwrap();
        assert_eq!(j.order(), 2);
        let max = g
            .coset_representatives(&j, Side::Left, Extremal::Max)
            .unwrap();
        let words: Vec<Vec<usize>> = max.iter().map(|e| g.reduced_word(e)).collect();
        assert_eq!(words, vec![vec![1], vec![2, 1], vec![1, 2, 1]]);
        let min = g
            .coset_representatives(&j, Side::Left, Extremal::Min)
            .unwrap();
        assert_eq!(min.len(), 3);
        assert!(min.iter().any(|e| e.is_identity()));
    }

    #[test]
    fn coset_rep_of_is_idempotent_and_consistent() {
        for name in ["A3", "B2"] {
            let g = sys(name);
            for gens in [[1usize].as_slice(), &[2], &[1, 2]] {
                let j = g.parabolic(gens).unwrap();
                for side in [Side::Left, Side::Right] {
                    for ext in [Extremal::Min, Extremal::Max] {
                        let reps: HashSet<Element> = g
                            .coset_representatives(&j, side, ext)
                            .unwrap()
                            .into_iter()
                            .collect();
                        assert_eq!(
                            reps.len() as u128 * j.order() as u128,
                            g.order()
                        );
                        for w in g.all_elements().unwrap() {
                            let r = g.coset_rep_of(w, &j, side, ext);
                            assert!(reps.contains(&r), "rep of {w} must be extremal");
                            assert_eq!(g.coset_rep_of(&r, &j, side, ext), r);
                            // Same coset: r^-1 w (left) or w r^-1 (right) lies in W_J.
                            let in_j = match side {
                                Side::Left => g
                                    .multiply(&g.inverse(&r).unwrap(), w)
                                    .unwrap(),
                                Side::Right => g
                                    .multiply(w, &g.inverse(&r).unwrap())
                                    .unwrap(),
                            };
                            assert!(j.elements().contains(&in_j));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn full_parabolic_has_single_max_coset() {
        let g = sys("A2");
        let j = g.parabolic(&[1, 2]).unwrap();
        let reps = g
            .coset_representatives(&j, Side::Left, Extremal::Max)
            .unwrap();
        assert_eq!(reps, vec![g.longest_element()]);
        let empty = g.parabolic(&[]).unwrap();
        let all = g
            .coset_representatives(&empty, Side::Left, Extremal::Max)
            .unwrap();
        assert_eq!(all.len(), 6);
    }

    #[test]
    fn parabolic_longest_elements() {
        let g = sys("B3");
        let j = g.parabolic(&[1, 2]).unwrap();
        assert_eq!(j.order(), 8);
        assert_eq!(g.reduced_word(j.longest_element()), vec![1, 2, 1, 2]);
        let j13 = g.parabolic(&[1, 3]).unwrap();
        assert_eq!(j13.order(), 4);
        assert_eq!(g.reduced_word(j13.longest_element()), vec![1, 3]);
    }

    /// All products of subwords of the canonical word of w; x <= w iff x
    /// appears. Exponential, test-only.
    fn bruhat_oracle(g: &CoxeterSystem, w: &Element) -> HashSet<Element> {
        let word = g.reduced_word(w);
        let mut out = HashSet::new();
        for mask in 0u32..(1 << word.len()) {
            let sub: Vec<usize> = word
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &s)| s)
                .collect();
            out.insert(from_word(g, &sub));
        }
        out
    }

    #[test]
    fn bruhat_agrees_with_subword_oracle() {
        for name in ["A3", "B2"] {
            let g = sys(name);
            let all = g.all_elements().unwrap();
            for w in all {
                let below = bruhat_oracle(&g, w);
                for x in all {
                    assert_eq!(
                        g.bruhat_leq(x, w),
                        below.contains(x),
                        "{x} <= {w} in {name}"
                    );
                }
            }
        }
    }

    #[test]
    fn bruhat_extremes_and_atoms() {
        let g = sys("A2");
        let e = g.identity();
        let w0 = g.longest_element();
        let s1 = g.generator(1).unwrap();
        let s2 = g.generator(2).unwrap();
        for w in g.all_elements().unwrap() {
            assert!(g.bruhat_leq(&e, w));
            assert!(g.bruhat_leq(w, &w0));
        }
        assert!(!g.bruhat_leq(&s1, &s2));
        assert!(g.bruhat_leq(&s1, &from_word(&g, &[1, 2, 1])));
    }

    fn arb_word(rank: usize, max_len: usize) -> impl Strategy<Value = Vec<usize>> {
        proptest::collection::vec(1..=rank, 0..max_len)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn word_and_inverse_laws(word in arb_word(3, 12)) {
            for name in ["A3", "B3"] {
                let g = sys(name);
                let w = from_word(&g, &word);
                let inv = g.inverse(&w).unwrap();
                prop_assert_eq!(w.length(), inv.length());
                prop_assert!(g.multiply(&w, &inv).unwrap().is_identity());

                let canon = g.reduced_word(&w);
                prop_assert_eq!(canon.len() as u32, w.length());
                prop_assert_eq!(from_word(&g, &canon), w.clone());

                let reversed: Vec<usize> = canon.iter().rev().copied().collect();
                prop_assert_eq!(from_word(&g, &reversed), inv);
            }
        }

        #[test]
        fn generator_steps_change_length_by_one(word in arb_word(3, 12)) {
            for name in ["A3", "B3"] {
                let g = sys(name);
                let w = from_word(&g, &word);
                for s in 1..=g.rank() {
                    let sw = g.multiply(&g.generator(s).unwrap(), &w).unwrap();
                    prop_assert_eq!(sw.length().abs_diff(w.length()), 1);
                    let has = g.descents(&w, Side::Left).contains(&s);
                    prop_assert_eq!(sw.length() < w.length(), has);
                }
            }
        }

        #[test]
        fn bruhat_is_graded_and_antisymmetric(a in arb_word(3, 9), b in arb_word(3, 9)) {
            let g = sys("B3");
            let x = from_word(&g, &a);
            let w = from_word(&g, &b);
            if g.bruhat_leq(&x, &w) && g.bruhat_leq(&w, &x) {
                prop_assert_eq!(x.clone(), w.clone());
            }
            if g.bruhat_leq(&x, &w) && x != w {
                prop_assert!(x.length() < w.length());
            }
        }
    }
}
