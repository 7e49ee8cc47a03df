//! The Q polynomial via the unoriented four-term skein relation
//! `Q(L+) + Q(L-) = z (Q(L0) + Q(Loo))`, with `Q(unknot) = 1` and
//! `Q(k-component unlink) = (2 z^{-1} - 1)^{k-1}`, plus its exact
//! evaluation `rho` at `z = (sqrt5 - 1)/2`.
//!
//! The recursion descends: the first crossing whose first visit runs under
//! is either switched (same size, strictly more descending) or smoothed
//! both ways (one crossing fewer). Kink/bigon reduction, split and
//! connected-sum factorisation, and canonical-form memoisation keep the
//! search tree small on table-scale diagrams.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;


use crate::bracket::MAX_CROSSINGS;
use crate::diagram::LinkDiagram;
use crate::error::InvariantError;
use crate::quad::QuadValue;
use crate::IntPoly;

/// Unoriented tangle: rotational tuples (slots 0, 2 under) plus free loops.
#[derive(Clone)]
struct UTang {
    xs: Vec<[u32; 4]>,
    loops: usize,
}

impl UTang {
    fn from_diagram(d: &LinkDiagram) -> UTang {
        UTang { xs: d.crossings().iter().map(|x| x.arcs).collect(), loops: d.loops() }
    }

    fn merge(&mut self, to: u32, from: u32) {
        if to == from {
            self.loops += 1;
            return;
        }
        for x in &mut self.xs {
            for a in x.iter_mut() {
                if *a == from {
                    *a = to;
                }
            }
        }
    }

    fn occurrences(&self) -> BTreeMap<u32, Vec<(usize, usize)>> {
        let mut occ: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
        for (ci, x) in self.xs.iter().enumerate() {
            for (si, &a) in x.iter().enumerate() {
                occ.entry(a).or_default().push((ci, si));
            }
        }
        occ
    }

    fn reduce_r1(&mut self) -> bool {
        for ci in 0..self.xs.len() {
            let arcs = self.xs[ci];
            for i in 0..4 {
                if arcs[i] == arcs[(i + 1) % 4] {
                    let keep = arcs[(i + 2) % 4];
                    let drop = arcs[(i + 3) % 4];
                    self.xs.remove(ci);
                    self.merge(keep, drop);
                    return true;
                }
            }
        }
        false
    }

    fn reduce_r2(&mut self) -> bool {
        let occ = self.occurrences();
        let over = |s: usize| s % 2 == 1;
        for (&arc_x, sx) in &occ {
            if sx.len() != 2 || sx[0].0 == sx[1].0 {
                continue;
            }
            let (c1, s1x) = sx[0];
            let (c2, s2x) = sx[1];
            if over(s1x) != over(s2x) {
                continue;
            }
            let x_over = over(s1x);
            for (&arc_y, sy) in &occ {
                if arc_y == arc_x || sy.len() != 2 {
                    continue;
                }
                let pair = (sy[0].0, sy[1].0);
                let ok = (pair == (c1, c2) || pair == (c2, c1))
                    && over(sy[0].1) == !x_over
                    && over(sy[1].1) == !x_over;
                if !ok {
                    continue;
                }
                let outer = |c: usize, want_over: bool| -> Option<u32> {
                    self.xs[c]
                        .iter()
                        .enumerate()
                        .filter(|(s, _)| over(*s) == want_over)
                        .map(|(_, &a)| a)
                        .find(|&a| a != arc_x && a != arc_y)
                };
                let (Some(p1), Some(p2), Some(q1), Some(q2)) = (
                    outer(c1, x_over),
                    outer(c2, x_over),
                    outer(c1, !x_over),
                    outer(c2, !x_over),
                ) else {
                    continue;
                };
                let (hi, lo) = (c1.max(c2), c1.min(c2));
                self.xs.remove(hi);
                self.xs.remove(lo);
                self.merge(p1, p2);
                let q1 = if q1 == p2 { p1 } else { q1 };
                let q2 = if q2 == p2 { p1 } else { q2 };
                self.merge(q1, q2);
                return true;
            }
        }
        false
    }

    fn reduce(&mut self) {
        loop {
            if self.reduce_r1() {
                continue;
            }
            if self.reduce_r2() {
                continue;
            }
            break;
        }
    }

    fn crossing_groups(&self) -> Vec<Vec<usize>> {
        let n = self.xs.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut Vec<usize>, i: usize) -> usize {
            if p[i] != i {
                let r = find(p, p[i]);
                p[i] = r;
            }
            p[i]
        }
        for sites in self.occurrences().values() {
            if sites.len() == 2 {
                let (a, b) = (find(&mut parent, sites[0].0), find(&mut parent, sites[1].0));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
        groups.into_values().collect()
    }

    fn sub_tang(&self, group: &[usize]) -> UTang {
        UTang { xs: group.iter().map(|&i| self.xs[i]).collect(), loops: 0 }
    }

    fn sum_factor(&self) -> Option<(UTang, UTang)> {
        let occ = self.occurrences();
        let n = self.xs.len();
        if n < 2 {
            return None;
        }
        let arcs: Vec<u32> = occ
            .iter()
            .filter(|(_, s)| s.len() == 2 && s[0].0 != s[1].0)
            .map(|(&a, _)| a)
            .collect();
        fn find(p: &mut Vec<usize>, i: usize) -> usize {
            if p[i] != i {
                let r = find(p, p[i]);
                p[i] = r;
            }
            p[i]
        }
        for i in 0..arcs.len() {
            for j in (i + 1)..arcs.len() {
                let (x, y) = (arcs[i], arcs[j]);
                let mut parent: Vec<usize> = (0..n).collect();
                for (&a, sites) in &occ {
                    if a == x || a == y || sites.len() != 2 {
                        continue;
                    }
                    let (u, v) = (find(&mut parent, sites[0].0), find(&mut parent, sites[1].0));
                    if u != v {
                        parent[u] = v;
                    }
                }
                let r0 = find(&mut parent, 0);
                let group_a: Vec<usize> = (0..n).filter(|&c| find(&mut parent, c) == r0).collect();
                if group_a.len() == n {
                    continue;
                }
                let spans = |a: u32| {
                    let s = &occ[&a];
                    group_a.contains(&s[0].0) != group_a.contains(&s[1].0)
                };
                if !spans(x) || !spans(y) {
                    continue;
                }
                let group_b: Vec<usize> = (0..n).filter(|c| !group_a.contains(c)).collect();
                let mut ta = self.sub_tang(&group_a);
                let mut tb = self.sub_tang(&group_b);
                ta.merge(x, y);
                tb.merge(x, y);
                return Some((ta, tb));
            }
        }
        None
    }

    /// Walk every strand with an arbitrary (deterministic) direction and
    /// report the passage order as (crossing, on-over-strand).
    fn passages(&self) -> Vec<(usize, bool)> {
        let occ = self.occurrences();
        let mut visited_port: BTreeMap<(usize, usize), bool> = BTreeMap::new();
        for (ci, x) in self.xs.iter().enumerate() {
            for si in 0..x.len() {
                visited_port.insert((ci, si), false);
            }
        }
        let port_mate = |ci: usize, si: usize| -> (usize, usize) {
            let sites = &occ[&self.xs[ci][si]];
            if sites[0] == (ci, si) {
                sites[1]
            } else {
                sites[0]
            }
        };
        let mut out = Vec::new();
        let ports: Vec<(usize, usize)> = visited_port.keys().copied().collect();
        for &start in &ports {
            if visited_port[&start] {
                continue;
            }
            // walk: enter at `cur` port, pass through, jump along the arc
            let mut cur = start;
            loop {
                visited_port.insert(cur, true);
                let (ci, si) = cur;
                out.push((ci, si % 2 == 1));
                let exit = (ci, (si + 2) % 4);
                visited_port.insert(exit, true);
                let next = port_mate(exit.0, exit.1);
                if next == start {
                    break;
                }
                cur = next;
            }
        }
        out
    }

    /// First crossing first visited on the under-strand (descending aim).
    fn first_bad(&self) -> Option<usize> {
        let mut visited = vec![false; self.xs.len()];
        for (ci, on_over) in self.passages() {
            if !visited[ci] {
                visited[ci] = true;
                if !on_over {
                    return Some(ci);
                }
            }
        }
        None
    }

    fn component_count(&self) -> usize {
        let mut count = self.loops;
        let occ = self.occurrences();
        let mut visited_port: BTreeMap<(usize, usize), bool> = BTreeMap::new();
        for (ci, x) in self.xs.iter().enumerate() {
            for si in 0..x.len() {
                visited_port.insert((ci, si), false);
            }
        }
        let port_mate = |ci: usize, si: usize| -> (usize, usize) {
            let sites = &occ[&self.xs[ci][si]];
            if sites[0] == (ci, si) {
                sites[1]
            } else {
                sites[0]
            }
        };
        let ports: Vec<(usize, usize)> = visited_port.keys().copied().collect();
        for &start in &ports {
            if visited_port[&start] {
                continue;
            }
            count += 1;
            let mut cur = start;
            loop {
                visited_port.insert(cur, true);
                let (ci, si) = cur;
                let exit = (ci, (si + 2) % 4);
                visited_port.insert(exit, true);
                let next = port_mate(exit.0, exit.1);
                if next == start {
                    break;
                }
                cur = next;
            }
        }
        count
    }

    /// Switch over/under: rotate the tuple by one slot.
    fn switch(&mut self, ci: usize) {
        let x = self.xs[ci];
        self.xs[ci] = [x[1], x[2], x[3], x[0]];
    }

    fn smooth(&mut self, ci: usize, pairs: [(usize, usize); 2]) {
        let x = self.xs.remove(ci);
        let (a1, b1) = (x[pairs[0].0], x[pairs[0].1]);
        self.merge(a1, b1);
        let rn = |v: u32| if v == b1 && a1 != b1 { a1 } else { v };
        let (a2, b2) = (rn(x[pairs[1].0]), rn(x[pairs[1].1]));
        self.merge(a2, b2);
    }

    /// Canonical key up to relabelling and per-crossing rotation by two.
    fn canonical_key(&self) -> Vec<u32> {
        let occ = self.occurrences();
        let n = self.xs.len();
        if n == 0 {
            return vec![self.loops as u32];
        }
        let port_mate = |ci: usize, si: usize| -> (usize, usize) {
            let sites = &occ[&self.xs[ci][si]];
            if sites[0] == (ci, si) {
                sites[1]
            } else {
                sites[0]
            }
        };
        let mut best: Option<Vec<u32>> = None;
        for start in 0..n {
            for start_rot in [0usize, 2usize] {
                let mut id: HashMap<usize, (usize, usize)> = HashMap::new();
                let mut order = vec![start];
                id.insert(start, (0, start_rot));
                let mut qi = 0;
                while qi < order.len() {
                    let c = order[qi];
                    qi += 1;
                    let (_, rot) = id[&c];
                    for s in 0..4 {
                        let (mc, ms) = port_mate(c, (s + rot) % 4);
                        if !id.contains_key(&mc) {
                            let r = if ms % 2 == 0 { ms } else { (ms + 3) % 4 };
                            id.insert(mc, (order.len(), r));
                            order.push(mc);
                        }
                    }
                }
                for c in 0..n {
                    if !id.contains_key(&c) {
                        id.insert(c, (order.len(), 0));
                        order.push(c);
                    }
                }
                let mut enc: Vec<u32> = Vec::with_capacity(n * 4 + 1);
                enc.push(self.loops as u32);
                for &c in &order {
                    let (_, rot) = id[&c];
                    for s in 0..4 {
                        let (mc, ms) = port_mate(c, (s + rot) % 4);
                        let (mid, mrot) = id[&mc];
                        enc.push((mid * 4 + (ms + 4 - mrot) % 4) as u32);
                    }
                }
                if best.as_ref().map(|b| enc < *b).unwrap_or(true) {
                    best = Some(enc);
                }
            }
        }
        best.unwrap()
    }
}

/// `2 z^{-1} - 1`, the extra unlink-component factor.
fn unlink_factor() -> IntPoly {
    IntPoly::from_terms([(-2, BigInt::from(2)), (0, BigInt::from(-1))])
}

fn q_rec(
    t: &UTang,
    memo: &mut HashMap<Vec<u32>, IntPoly>,
    depth: usize,
    max_depth: usize,
) -> Result<IntPoly, InvariantError> {
    if depth > max_depth {
        return Err(InvariantError::NonConvergentUnknotting);
    }
    let mut t = t.clone();
    t.reduce();
    let groups = t.crossing_groups();
    if groups.len() + t.loops > 1 {
        // split: factors multiply with one unlink factor per extra piece
        let mut acc = IntPoly::one();
        for g in &groups {
            let part = q_rec(&t.sub_tang(g), memo, depth + 1, max_depth)?;
            acc = &acc * &part;
        }
        let pieces = groups.len() + t.loops;
        for _ in 0..pieces - 1 {
            acc = &acc * &unlink_factor();
        }
        return Ok(acc);
    }
    if t.xs.is_empty() {
        return Ok(IntPoly::one());
    }
    let key = t.canonical_key();
    if let Some(p) = memo.get(&key) {
        return Ok(p.clone());
    }
    if let Some((a, b)) = t.sum_factor() {
        let pa = q_rec(&a, memo, depth + 1, max_depth)?;
        let pb = q_rec(&b, memo, depth + 1, max_depth)?;
        let prod = &pa * &pb;
        memo.insert(key, prod.clone());
        return Ok(prod);
    }
    let out = match t.first_bad() {
        None => {
            // descending diagram: trivial link
            let k = t.component_count();
            let mut acc = IntPoly::one();
            for _ in 0..k - 1 {
                acc = &acc * &unlink_factor();
            }
            acc
        }
        Some(ci) => {
            let mut switched = t.clone();
            switched.switch(ci);
            let mut s0 = t.clone();
            s0.smooth(ci, [(0, 1), (2, 3)]);
            let mut s8 = t.clone();
            s8.smooth(ci, [(0, 3), (1, 2)]);
            let ps = q_rec(&switched, memo, depth + 1, max_depth)?;
            let p0 = q_rec(&s0, memo, depth + 1, max_depth)?;
            let p8 = q_rec(&s8, memo, depth + 1, max_depth)?;
            let z = IntPoly::monomial(BigInt::from(1), 2);
            &(&z * &(&p0 + &p8)) - &ps
        }
    };
    memo.insert(key, out.clone());
    Ok(out)
}

/// BLM/Ho Q polynomial (unoriented), integer exponents in `z`.
pub fn q_polynomial(d: &LinkDiagram) -> Result<IntPoly, InvariantError> {
    if d.crossing_count() > MAX_CROSSINGS {
        return Err(InvariantError::TooLarge(d.crossing_count(), MAX_CROSSINGS));
    }
    let t = UTang::from_diagram(d);
    let mut memo = HashMap::new();
    let max_depth = 3 * d.crossing_count() + 8;
    q_rec(&t, &mut memo, 0, max_depth)
}

/// `rho(L) = Q(L; (sqrt5 - 1)/2)`.
pub fn rho(d: &LinkDiagram) -> Result<QuadValue, InvariantError> {
    let q = q_polynomial(d)?;
    Ok(crate::quad::eval_poly(&q, &QuadValue::golden_point()).expect("golden point is invertible"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> LinkDiagram {
        LinkDiagram::parse(s).unwrap()
    }

    fn zp(terms: &[(i64, i64)]) -> IntPoly {
        IntPoly::from_terms(terms.iter().map(|&(d, c)| (2 * d, BigInt::from(c))))
    }

    #[test]
    fn axioms() {
        assert_eq!(q_polynomial(&LinkDiagram::unknot()).unwrap(), IntPoly::one());
        assert_eq!(q_polynomial(&LinkDiagram::unlink(2)).unwrap(), zp(&[(-1, 2), (0, -1)]));
        assert_eq!(
            q_polynomial(&LinkDiagram::unlink(3)).unwrap(),
            &zp(&[(-1, 2), (0, -1)]) * &zp(&[(-1, 2), (0, -1)])
        );
    }

    #[test]
    fn hopf_link() {
        let d = parse("PD[X[3,1,4,2], X[1,3,2,4]]");
        let q = q_polynomial(&d).unwrap();
        // -2z^{-1} + 1 + 2z
        assert_eq!(q, zp(&[(-1, -2), (0, 1), (1, 2)]), "got {q}");
        // unoriented invariant: mirror and reversal leave Q unchanged
        assert_eq!(q_polynomial(&d.mirror()).unwrap(), q);
        assert_eq!(q_polynomial(&d.reverse_component(0).unwrap()).unwrap(), q);
        // rho(hopf) = -1
        assert_eq!(rho(&d).unwrap(), QuadValue::integer(-1));
    }

    #[test]
    fn trefoil() {
        let d = parse("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]");
        let q = q_polynomial(&d).unwrap();
        // 2z^2 + 2z - 3
        assert_eq!(q, zp(&[(2, 2), (1, 2), (0, -3)]), "got {q}");
        assert_eq!(q_polynomial(&d.mirror()).unwrap(), q);
        assert_eq!(rho(&d).unwrap(), QuadValue::integer(-1));
    }

    #[test]
    fn figure_eight_rho() {
        let d = parse("PD[X[4,2,5,1], X[8,6,1,5], X[6,3,7,4], X[2,7,3,8]]");
        let q = q_polynomial(&d).unwrap();
        // 2z^3 + 4z^2 - 2z - 3
        assert_eq!(q, zp(&[(3, 2), (2, 4), (1, -2), (0, -3)]), "got {q}");
        assert_eq!(rho(&d).unwrap(), -&QuadValue::sqrt5());
    }

    #[test]
    fn multiplicative_under_sum_and_union() {
        let t = parse("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]");
        let h = parse("PD[X[3,1,4,2], X[1,3,2,4]]");
        let qt = q_polynomial(&t).unwrap();
        let qh = q_polynomial(&h).unwrap();
        let s = t.connected_sum(&h, 1, 1).unwrap();
        assert_eq!(q_polynomial(&s).unwrap(), &qt * &qh);
        let u = t.split_union(&h);
        assert_eq!(q_polynomial(&u).unwrap(), &(&qt * &qh) * &zp(&[(-1, 2), (0, -1)]));
    }
}
