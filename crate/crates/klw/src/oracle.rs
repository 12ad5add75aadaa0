//! Independent cross-checks for the polynomial table and the structure
//! constants.
//!
//! The duality oracle recomputes every P_{x,w} from the defining
//! characterization of the canonical basis: build the bar image of each
//! standard basis element from T_s^-1 = q^-1 T_s + (q^-1 - 1) T_e, then
//! solve the self-duality equations by descending length. No step shares
//! code with the row recursion in [`crate::hecke`].
//!
//! The group-algebra oracle recomputes h_{x,y,z}(1) by multiplying
//! specialized canonical-basis vectors in the integral group ring and
//! solving the unitriangular change of basis over the integers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::coxeter::{CoxeterSystem, Element};
use crate::error::Result;
use crate::laurent::LaurentPoly;

/// All nonzero Kazhdan-Lusztig polynomials of the system, keyed by
/// (x, w), written in q (even powers of v). Exponential-free but cubic in
/// the group order; intended for the small verification ranks.
pub fn kl_polynomials_by_duality(
    system: &CoxeterSystem,
) -> Result<BTreeMap<(Element, Element), LaurentPoly>> {
    let tables = system.tables()?;
    let n = tables.elements.len();
    let q_inv = LaurentPoly::v_pow(-2);
    let q_inv_minus_1 = &q_inv - &LaurentPoly::one();

    // bar_rows[y]: expansion of bar(T_y) over the standard basis.
    let mut bar_rows: Vec<BTreeMap<u32, LaurentPoly>> = Vec::with_capacity(n);
    let mut identity_row = BTreeMap::new();
    identity_row.insert(0u32, LaurentPoly::one());
    bar_rows.push(identity_row);
    for y in 1..n as u32 {
        let s = tables.first_ldesc(y);
        let u = tables.left_mul(y, s);
        debug_assert!(tables.length[u as usize] < tables.length[y as usize]);
        let prev = &bar_rows[u as usize];
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
        for (&z, c) in prev {
            let sz = tables.left_mul(z, s);
            if tables.has_ldesc(z, s) {
                // bar(T_s) T_z = T_{sz} when sz < z.
                add(sz, c.clone());
            } else {
                add(sz, c * &q_inv);
                add(z, c * &q_inv_minus_1);
            }
        }
        bar_rows.push(out);
    }
    for (y, row) in bar_rows.iter().enumerate() {
        let ly = tables.length[y] as i32;
        assert_eq!(
            row.get(&(y as u32)),
            Some(&LaurentPoly::v_pow(-2 * ly)),
            "bar diagonal at {y}"
        );
    }

    let mut out: BTreeMap<(Element, Element), LaurentPoly> = BTreeMap::new();
    for wid in 0..n as u32 {
        let lw = tables.length[wid as usize] as i32;
        let mut gamma: BTreeMap<u32, LaurentPoly> = BTreeMap::new();
        gamma.insert(wid, LaurentPoly::v_pow(-lw));
        // Running sum over solved y of bar(gamma_y) * bar_rows[y].
        let mut acc: BTreeMap<u32, LaurentPoly> = BTreeMap::new();
        let push_acc = |acc: &mut BTreeMap<u32, LaurentPoly>, y: u32, g: &LaurentPoly| {
            let gbar = g.bar();
            for (&x, b) in &bar_rows[y as usize] {
                if x == y {
                    continue;
                }
                let entry = acc.entry(x).or_insert_with(LaurentPoly::zero);
                entry.add_assign(&(&gbar * b));
                if entry.is_zero() {
                    acc.remove(&x);
                }
            }
        };
        push_acc(&mut acc, wid, &LaurentPoly::v_pow(-lw));

        for xid in (0..wid).rev() {
            let r = match acc.get(&xid) {
                Some(r) => r.clone(),
                None => continue,
            };
            let lx = tables.length[xid as usize] as i32;
            // gamma_x - bar(gamma_x) v^{-2 l(x)} = r, with the two parts in
            // disjoint exponent ranges around -l(x).
            let mut low = LaurentPoly::zero();
            let mut high = LaurentPoly::zero();
            for (e, c) in r.terms() {
                assert_ne!(e, -lx, "no coefficient at the split exponent");
                if e < -lx {
                    low.add_scaled(&LaurentPoly::one(), c, e);
                } else {
                    high.add_scaled(&LaurentPoly::one(), c, e);
                }
            }
            assert!(
                low.max_exp().map_or(true, |e| e <= -lx - 1),
                "strict degree bound"
            );
            let mirrored = low.bar().shifted(-2 * lx);
            assert_eq!(&high, &(&LaurentPoly::zero() - &mirrored), "self-duality consistency");
            if low.is_zero() {
                continue;
            }
            push_acc(&mut acc, xid, &low);
            gamma.insert(xid, low);
        }

        let w = tables.elements[wid as usize].clone();
        for (xid, g) in gamma {
            let p = g.shifted(lw);
            assert!(p.to_q_coeffs().is_some(), "polynomial in q");
            out.insert((tables.elements[xid as usize].clone(), w.clone()), p);
        }
    }
    Ok(out)
}

/// Structure constants at q = 1 via the integral group ring: multiply the
/// specialized canonical-basis vectors and change basis back by integer
/// back-substitution. Only nonzero constants appear in the result.
pub fn h_table_at_one_by_group_algebra(
    system: &CoxeterSystem,
) -> Result<BTreeMap<(Element, Element, Element), BigInt>> {
    let tables = system.tables()?;
    let n = tables.elements.len();
    let kl = kl_polynomials_by_duality(system)?;

    // cvec[w][x] = P_{x,w}(1)
    let mut cvec = vec![vec![BigInt::zero(); n]; n];
    for ((x, w), p) in &kl {
        let xid = system.element_id(x)? as usize;
        let wid = system.element_id(w)? as usize;
        cvec[wid][xid] = p.eval_at_one();
    }
    for (w, row) in cvec.iter().enumerate() {
        assert!(row[w].is_one(), "unit diagonal at {w}");
    }

    let mut mult = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            let ab = system
                .multiply(&tables.elements[a], &tables.elements[b])
                .expect("same system");
            mult[a * n + b] = system.element_id(&ab)?;
        }
    }

    let mut out = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            let mut prod = vec![BigInt::zero(); n];
            for a in 0..n {
                if cvec[x][a].is_zero() {
                    continue;
                }
                for b in 0..n {
                    if cvec[y][b].is_zero() {
                        continue;
                    }
                    let t = mult[a * n + b] as usize;
                    prod[t] += &cvec[x][a] * &cvec[y][b];
                }
            }
            for z in (0..n).rev() {
                if prod[z].is_zero() {
                    continue;
                }
                let h = prod[z].clone();
                for a in 0..=z {
                    if !cvec[z][a].is_zero() {
                        prod[a] -= &h * &cvec[z][a];
                    }
                }
                assert!(prod[z].is_zero(), "back-substitution clears the top term");
                out.insert(
                    (
                        tables.elements[x].clone(),
                        tables.elements[y].clone(),
                        tables.elements[z].clone(),
                    ),
                    h,
                );
            }
            assert!(prod.iter().all(|c| c.is_zero()), "exact expansion");
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::{HeckeBasis, HeckeElement, KlTable};

    fn sys(s: &str) -> CoxeterSystem {
        CoxeterSystem::new(s.parse().unwrap())
    }

    #[test]
    fn bar_of_ts_is_its_inverse() {
        for name in ["A2", "B2"] {
            let g = sys(name);
            let t = KlTable::build(&g).unwrap();
            let q_inv = LaurentPoly::v_pow(-2);
            for s in 1..=g.rank() {
                let se = g.generator(s).unwrap();
                let mut m = BTreeMap::new();
                m.insert(se.clone(), q_inv.clone());
                m.insert(g.identity(), &q_inv - &LaurentPoly::one());
                let bar_ts = HeckeElement::new(g.clone(), HeckeBasis::Standard, m).unwrap();
                let ts = HeckeElement::standard_unit(&g, &se).unwrap();
                let prod = t.multiply(&ts, &bar_ts).unwrap();
                assert_eq!(prod, HeckeElement::standard_unit(&g, &g.identity()).unwrap());
            }
        }
    }

    #[test]
    fn duality_oracle_on_a2_is_all_ones() {
        let g = sys("A2");
        let kl = kl_polynomials_by_duality(&g).unwrap();
        assert_eq!(kl.len(), 19);
        assert!(kl.values().all(|p| *p == LaurentPoly::one()));
    }

    #[test]
    fn duality_oracle_matches_recursion() {
        for name in ["A2", "B2"] {
            let g = sys(name);
            let t = KlTable::build(&g).unwrap();
            let oracle = kl_polynomials_by_duality(&g).unwrap();
            for w in g.all_elements().unwrap() {
                for x in g.all_elements().unwrap() {
                    let got = t.kl_polynomial(x, w);
                    let want = oracle
                        .get(&(x.clone(), w.clone()))
                        .cloned()
                        .unwrap_or_else(LaurentPoly::zero);
                    assert_eq!(got, want, "{name}: P({x},{w})");
                }
            }
        }
    }

    #[test]
    fn group_algebra_h_matches_hecke_route() {
        let g = sys("A2");
        let t = KlTable::build(&g).unwrap();
        let oracle = h_table_at_one_by_group_algebra(&g).unwrap();
        for x in g.all_elements().unwrap() {
            for y in g.all_elements().unwrap() {
                let expansion = t.h_expansion(x, y).unwrap();
                for z in g.all_elements().unwrap() {
                    let main = expansion
                        .get(z)
                        .map(|p| p.eval_at_one())
                        .unwrap_or_else(BigInt::zero);
                    let alt = oracle
                        .get(&(x.clone(), y.clone(), z.clone()))
                        .cloned()
                        .unwrap_or_else(BigInt::zero);
                    assert_eq!(main, alt, "h({x},{y},{z})");
                }
            }
        }
    }
}
