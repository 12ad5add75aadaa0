//! Cartan types: products of finite components of families A, B and C.
//!
//! Family C is carried as a display label only; its Weyl group is the
//! hyperoctahedral group of the same rank, identical to family B.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
}

impl Family {
    /// True when the component is realized by signed permutations.
    pub fn is_signed(self) -> bool {
        matches!(self, Family::B | Family::C)
    }

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
        }
    }
}

/// Finite Cartan type: a non-empty list of (family, rank) components.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CartanType {
    components: Vec<(Family, usize)>,
}

/// Window entries are signed bytes, which caps usable ranks far above
/// anything enumerable anyway.
const MAX_RANK: usize = 100;

impl CartanType {
    pub fn new(components: Vec<(Family, usize)>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::usage("Cartan type needs at least one component"));
        }
        for (f, r) in &components {
            if *r < 1 {
                return Err(Error::usage(format!(
                    "component {}{} has rank below 1",
                    f.letter(),
                    r
                )));
            }
            if *r > MAX_RANK {
                return Err(Error::usage(format!(
                    "component {}{} exceeds the maximal supported rank {}",
                    f.letter(),
                    r,
                    MAX_RANK
                )));
            }
        }
        Ok(CartanType { components })
    }

    pub fn single(family: Family, rank: usize) -> Result<Self> {
        CartanType::new(vec![(family, rank)])
    }

    pub fn components(&self) -> &[(Family, usize)] {
        &self.components
    }

    /// Total number of simple reflections.
    pub fn rank(&self) -> usize {
        self.components.iter().map(|(_, r)| r).sum()
    }

    /// Weyl group order: (n+1)! per A_n component, 2^n n! per B_n/C_n
    /// component. Saturates at `u128::MAX` instead of wrapping.
    pub fn weyl_order(&self) -> u128 {
        let mut order: u128 = 1;
        for (f, r) in &self.components {
            let comp = match f {
                Family::A => factorial(*r as u128 + 1),
                Family::B | Family::C => {
                    checked(factorial(*r as u128), 1u128.checked_shl(*r as u32))
                }
            };
            order = order.checked_mul(comp).unwrap_or(u128::MAX);
        }
        order
    }

    /// True for a single type-A component (the symmetric-group case).
    pub fn is_single_a(&self) -> bool {
        self.components.len() == 1 && self.components[0].0 == Family::A
    }
}

fn factorial(n: u128) -> u128 {
    let mut out: u128 = 1;
    for k in 2..=n {
        out = match out.checked_mul(k) {
            Some(v) => v,
            None => return u128::MAX,
        };
    }
    out
}

fn checked(a: u128, b: Option<u128>) -> u128 {
    match b {
        Some(b) => a.checked_mul(b).unwrap_or(u128::MAX),
        None => u128::MAX,
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (fam, r)) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "{}{}", fam.letter(), r)?;
        }
        Ok(())
    }
}

impl FromStr for CartanType {
    type Err = Error;

    /// Parses strings like "A3", "B2", "A2xA1". Case-insensitive.
    fn from_str(s: &str) -> Result<Self> {
        let mut components = Vec::new();
        for token in s.split(['x', 'X']) {
            let token = token.trim();
            let mut chars = token.chars();
            let family = match chars.next() {
                Some('A') | Some('a') => Family::A,
                Some('B') | Some('b') => Family::B,
                Some('C') | Some('c') => Family::C,
                _ => {
                    return Err(Error::usage(format!(
                        "cannot parse Cartan component {token:?}; expected e.g. A3, B2"
                    )))
                }
            };
            let rank: usize = chars
                .as_str()
                .parse()
                .map_err(|_| Error::usage(format!("bad rank in Cartan component {token:?}")))?;
            components.push((family, rank));
        }
        CartanType::new(components)
    }
}
