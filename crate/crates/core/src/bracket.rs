//! Kauffman bracket state expansion with memoised divide-and-conquer, and
//! the Jones polynomial derived from it.
//!
//! Residual diagrams are held as a set of live crossings plus a perfect
//! matching on their ports (crossing slots); smoothing a crossing rewires
//! the matching and closed loops contribute `delta = -A^2 - A^{-2}`.
//! Residuals are canonicalised (relabelling and the rotation-by-two
//! symmetry of each crossing) before memo lookup, so isomorphic residuals
//! reached along different smoothing orders are computed once.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;

use crate::diagram::LinkDiagram;
use crate::error::InvariantError;
use crate::poly::LaurentPoly;
use crate::IntPoly;

/// Crossing-count envelope for the bracket and skein engines.
pub const MAX_CROSSINGS: usize = 16;

type Port = (u16, u8);

#[derive(Clone)]
struct State {
    /// live rotational tuples; slots 0 and 2 carry the under-strand
    tuples: Vec<Option<[u32; 4]>>,
    mate: BTreeMap<Port, Port>,
}

impl State {
    fn from_diagram(d: &LinkDiagram) -> State {
        let tuples: Vec<Option<[u32; 4]>> =
            d.crossings().iter().map(|x| Some(x.arcs)).collect();
        let mut occ: BTreeMap<u32, Vec<Port>> = BTreeMap::new();
        for (ci, x) in d.crossings().iter().enumerate() {
            for (si, &a) in x.arcs.iter().enumerate() {
                occ.entry(a).or_default().push((ci as u16, si as u8));
            }
        }
        let mut mate = BTreeMap::new();
        for sites in occ.values() {
            debug_assert_eq!(sites.len(), 2);
            mate.insert(sites[0], sites[1]);
            mate.insert(sites[1], sites[0]);
        }
        State { tuples, mate }
    }

    fn live(&self) -> impl Iterator<Item = u16> + '_ {
        self.tuples.iter().enumerate().filter(|(_, t)| t.is_some()).map(|(i, _)| i as u16)
    }

    fn live_count(&self) -> usize {
        self.tuples.iter().filter(|t| t.is_some()).count()
    }

    /// Remove crossing `ci`, joining its ports pairwise. Returns the number
    /// of closed loops formed.
    fn smooth(&mut self, ci: u16, pairs: [(u8, u8); 2]) -> usize {
        let mut loops = 0;
        for (s1, s2) in pairs {
            let p1 = (ci, s1);
            let p2 = (ci, s2);
            let m1 = self.mate[&p1];
            let m2 = self.mate[&p2];
            self.mate.remove(&p1);
            self.mate.remove(&p2);
            if m1 == p2 {
                debug_assert_eq!(m2, p1);
                loops += 1;
            } else {
                self.mate.insert(m1, m2);
                self.mate.insert(m2, m1);
            }
        }
        self.tuples[ci as usize] = None;
        loops
    }

    /// Canonical encoding up to crossing relabelling and per-crossing
    /// rotation by two slots.
    fn canonical_key(&self) -> Vec<u32> {
        let live: Vec<u16> = self.live().collect();
        if live.is_empty() {
            return vec![];
        }
        let mut best: Option<Vec<u32>> = None;
        for &start in &live {
            for start_rot in [0u8, 2u8] {
                let enc = self.encode_from(start, start_rot, &live);
                if best.as_ref().map(|b| enc < *b).unwrap_or(true) {
                    best = Some(enc);
                }
            }
        }
        best.unwrap()
    }

    fn encode_from(&self, start: u16, start_rot: u8, live: &[u16]) -> Vec<u32> {
        // BFS assignment of (new id, rotation) per crossing
        let mut id: HashMap<u16, (u16, u8)> = HashMap::new();
        let mut order: Vec<u16> = Vec::new();
        id.insert(start, (0, start_rot));
        order.push(start);
        let mut qi = 0;
        while qi < order.len() {
            let c = order[qi];
            qi += 1;
            let (_, rot) = id[&c];
            for s in 0..4u8 {
                let slot = (s + rot) % 4;
                let (mc, ms) = self.mate[&(c, slot)];
                if !id.contains_key(&mc) {
                    // normalise the entry slot: under ports to 0, over to 1
                    let r = if ms % 2 == 0 { ms } else { (ms + 4 - 1) % 4 };
                    id.insert(mc, (order.len() as u16, r));
                    order.push(mc);
                }
            }
        }
        // disconnected residuals: start remaining groups deterministically
        for &c in live {
            if !id.contains_key(&c) {
                id.insert(c, (order.len() as u16, 0));
                order.push(c);
                let mut qj = order.len() - 1;
                while qj < order.len() {
                    let cc = order[qj];
                    qj += 1;
                    let (_, rot) = id[&cc];
                    for s in 0..4u8 {
                        let slot = (s + rot) % 4;
                        let (mc, ms) = self.mate[&(cc, slot)];
                        if !id.contains_key(&mc) {
                            let r = if ms % 2 == 0 { ms } else { (ms + 4 - 1) % 4 };
                            id.insert(mc, (order.len() as u16, r));
                            order.push(mc);
                        }
                    }
                }
            }
        }
        let mut enc = Vec::with_capacity(order.len() * 4);
        for &c in &order {
            let (_, rot) = id[&c];
            for s in 0..4u8 {
                let slot = (s + rot) % 4;
                let (mc, ms) = self.mate[&(c, slot)];
                let (mid, mrot) = id[&mc];
                let nslot = (ms + 4 - mrot) % 4;
                enc.push((mid as u32) * 4 + nslot as u32);
            }
        }
        enc
    }
}

/// `delta = -A^2 - A^{-2}` in the bracket variable.
fn delta() -> IntPoly {
    LaurentPoly::from_terms([(4, BigInt::from(-1)), (-4, BigInt::from(-1))])
}

// The A-smoothing joins (under-in, slot 3) and (slot 1, under-out); for a
// positive crossing this is the orientation-respecting smoothing.
const A_PAIRS: [(u8, u8); 2] = [(0, 3), (1, 2)];
const B_PAIRS: [(u8, u8); 2] = [(0, 1), (2, 3)];

fn bracket_rec(state: &State, memo: &mut HashMap<Vec<u32>, IntPoly>) -> IntPoly {
    if state.live_count() == 0 {
        return IntPoly::one();
    }
    let key = state.canonical_key();
    if let Some(p) = memo.get(&key) {
        return p.clone();
    }
    // prefer crossings with internally mated ports: smoothing them closes
    // loops immediately and shrinks the strand structure fastest
    let pick = state
        .live()
        .max_by_key(|&c| {
            let internal = (0..4u8).filter(|&s| state.mate[&(c, s)].0 == c).count();
            (internal, std::cmp::Reverse(c))
        })
        .unwrap();
    let d = delta();
    let mut acc = IntPoly::zero();
    for (pairs, exp) in [(A_PAIRS, 2i64), (B_PAIRS, -2i64)] {
        let mut sub = state.clone();
        let loops = sub.smooth(pick, pairs);
        let mut term = bracket_rec(&sub, memo);
        for _ in 0..loops {
            term = &term * &d;
        }
        // A^{+1} carries doubled exponent 2 in the half-exponent encoding
        acc = &acc + &term.shift(exp);
    }
    memo.insert(key, acc.clone());
    acc
}

/// Kauffman bracket of the diagram divided by one loop factor, i.e.
/// normalised so the unknot maps to 1. Polynomial in `A` (doubled
/// exponents: key 2 is `A^1`).
pub fn reduced_bracket(d: &LinkDiagram) -> Result<IntPoly, InvariantError> {
    if d.crossing_count() > MAX_CROSSINGS {
        return Err(InvariantError::TooLarge(d.crossing_count(), MAX_CROSSINGS));
    }
    let state = State::from_diagram(d);
    let mut memo = HashMap::new();
    let mut b = bracket_rec(&state, &mut memo);
    let dl = delta();
    for _ in 0..d.loops() {
        b = &b * &dl;
    }
    // divide once by delta: every complete state carries at least one loop
    Ok(div_exact(&b, &dl))
}

/// Jones polynomial, normalised to 1 on the unknot, in the variable `t`
/// with half-integer exponents.
pub fn jones(d: &LinkDiagram) -> Result<IntPoly, InvariantError> {
    let b = reduced_bracket(d)?;
    let w = d.writhe();
    // multiply by (-A)^{-3w} = (-1)^w A^{-3w}
    let mut v = b.shift(-6 * w);
    if w % 2 != 0 {
        v = -&v;
    }
    // substitute t = A^{-4}: A-exponent k becomes t-exponent -k/4, i.e.
    // doubled exponent da maps to -da/4 (da is divisible by 4 after the
    // writhe correction)
    let mut out = IntPoly::zero();
    for (da, c) in v.terms() {
        debug_assert!(da % 4 == 0, "bracket exponent parity broken");
        out.add_term(-da / 4, c.clone());
    }
    Ok(out)
}

/// Exact division, panicking on a nonzero remainder (used only where
/// divisibility is structural).
fn div_exact(p: &IntPoly, q: &IntPoly) -> IntPoly {
    let mut rem = p.clone();
    let mut quot = IntPoly::zero();
    let (qd, qc) = {
        let d = q.max_doubled_exp().expect("divisor nonzero");
        (d, q.coeff(d))
    };
    while !rem.is_zero() {
        let rd = rem.max_doubled_exp().unwrap();
        let rc = rem.coeff(rd);
        let c = &rc / &qc;
        assert_eq!(&c * &qc, rc, "non-exact bracket division");
        let term = IntPoly::monomial(c, rd - qd);
        rem = &rem - &(&term * q);
        quot = &quot + &term;
    }
    quot
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> LinkDiagram {
        LinkDiagram::parse(s).unwrap()
    }

    fn poly(terms: &[(i64, i64)]) -> IntPoly {
        IntPoly::from_terms(terms.iter().map(|&(d, c)| (d, BigInt::from(c))))
    }

    #[test]
    fn unknot_normalisation() {
        assert_eq!(jones(&LinkDiagram::unknot()).unwrap(), IntPoly::one());
    }

    #[test]
    fn split_unlink_factor() {
        // V(2-component unlink) = -t^(1/2) - t^(-1/2)
        let v = jones(&LinkDiagram::unlink(2)).unwrap();
        assert_eq!(v, poly(&[(1, -1), (-1, -1)]));
    }

    #[test]
    fn negative_hopf_link() {
        // lk = -1: V = -t^(-5/2) - t^(-1/2)
        let d = parse("PD[X[3,1,4,2], X[1,3,2,4]]");
        assert_eq!(d.total_linking(), -1);
        let v = jones(&d).unwrap();
        assert_eq!(v, poly(&[(-5, -1), (-1, -1)]), "got {v}");
    }

    #[test]
    fn trefoil_both_chiralities() {
        let d = parse("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]");
        let v = jones(&d).unwrap();
        let right = poly(&[(8, -1), (6, 1), (2, 1)]); // -t^4 + t^3 + t
        let left = poly(&[(-8, -1), (-6, 1), (-2, 1)]);
        if d.writhe() == 3 {
            assert_eq!(v, right, "got {v}");
            assert_eq!(jones(&d.mirror()).unwrap(), left);
        } else {
            assert_eq!(v, left, "got {v}");
            assert_eq!(jones(&d.mirror()).unwrap(), right);
        }
    }

    #[test]
    fn mirror_inverts_variable() {
        let d = parse("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]");
        let v = jones(&d).unwrap();
        let vm = jones(&d.mirror()).unwrap();
        assert_eq!(vm, v.invert_variable());
    }

    #[test]
    fn connected_sum_multiplies() {
        let t = parse("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]");
        let h = parse("PD[X[3,1,4,2], X[1,3,2,4]]");
        let s = t.connected_sum(&h, 1, 1).unwrap();
        let vs = jones(&s).unwrap();
        let expected = &jones(&t).unwrap() * &jones(&h).unwrap();
        assert_eq!(vs, expected);
    }

    #[test]
    fn oversize_rejected() {
        let t = parse("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]");
        let mut big = t.clone();
        for _ in 0..5 {
            big = big.connected_sum(&t, 1, 1).unwrap();
        }
        assert!(matches!(jones(&big), Err(InvariantError::TooLarge(18, _))));
    }
}
