//! Conway and Alexander polynomials via the oriented skein relation
//! `conway(L+) - conway(L-) = z * conway(L0)` with the descending
//! unknotting strategy: resolve the first crossing, in traversal order,
//! whose first visit runs over; switching it moves the diagram strictly
//! closer to an ascending (trivial) form, and the smoothed branch loses a
//! crossing.
//!
//! Diagrams are simplified with kink and bigon removals before every
//! recursion step, split pieces short-circuit to zero, and connected-sum
//! factors are computed independently.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::bracket::MAX_CROSSINGS;
use crate::diagram::{Crossing, LinkDiagram};
use crate::error::InvariantError;
use crate::IntPoly;

/// Oriented tangle: live crossings plus closed crossingless loops.
#[derive(Clone)]
pub(crate) struct Tang {
    pub xs: Vec<Crossing>,
    pub loops: usize,
}

impl Tang {
    pub fn from_diagram(d: &LinkDiagram) -> Tang {
        Tang { xs: d.crossings().to_vec(), loops: d.loops() }
    }

    /// Substitute label `from` by `to` everywhere; equal labels close a loop.
    pub fn merge(&mut self, to: u32, from: u32) {
        if to == from {
            self.loops += 1;
            return;
        }
        for x in &mut self.xs {
            for a in &mut x.arcs {
                if *a == from {
                    *a = to;
                }
            }
        }
    }

    /// Occurrences of each arc as (crossing, slot).
    pub fn occurrences(&self) -> BTreeMap<u32, Vec<(usize, usize)>> {
        let mut occ: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
        for (ci, x) in self.xs.iter().enumerate() {
            for (si, &a) in x.arcs.iter().enumerate() {
                occ.entry(a).or_default().push((ci, si));
            }
        }
        occ
    }

    /// Remove one kink (a crossing with two adjacent equal labels), if any.
    fn reduce_r1(&mut self) -> bool {
        for ci in 0..self.xs.len() {
            let arcs = self.xs[ci].arcs;
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

    /// Remove one reducible bigon: two crossings sharing two distinct arcs
    /// where one shared arc runs over at both ends and the other under at
    /// both ends.
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
                // outer ends of the two strands at each crossing
                let outer = |c: usize, want_over: bool| -> Option<u32> {
                    self.xs[c]
                        .arcs
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
                // q labels may have just been renamed
                let q1 = if q1 == p2 { p1 } else { q1 };
                let q2 = if q2 == p2 { p1 } else { q2 };
                self.merge(q1, q2);
                return true;
            }
        }
        false
    }

    pub fn reduce(&mut self) {
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

    /// Groups of crossings connected through shared arcs.
    pub fn crossing_groups(&self) -> Vec<Vec<usize>> {
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

    /// Number of split pieces (crossing groups plus free loops).
    pub fn pieces(&self) -> usize {
        self.crossing_groups().len() + self.loops
    }

    pub fn sub_tang(&self, group: &[usize]) -> Tang {
        Tang { xs: group.iter().map(|&i| self.xs[i]).collect(), loops: 0 }
    }

    /// Find a connected-sum decomposition: an arc pair whose removal
    /// disconnects the crossing graph. Returns the two closed-up factors.
    pub fn sum_factor(&self) -> Option<(Tang, Tang)> {
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

    /// Ordered passage list: (crossing, visited-on-over-strand) along every
    /// component, components taken in order of their smallest arc.
    fn passages(&self) -> Vec<(usize, bool)> {
        let mut head: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
        for (ci, x) in self.xs.iter().enumerate() {
            head.insert(x.arcs[0], (ci, 0));
            head.insert(x.over_in_arc(), (ci, x.over_in as usize));
        }
        let mut seen: BTreeMap<u32, bool> = head.keys().map(|&a| (a, false)).collect();
        let mut out = Vec::new();
        let starts: Vec<u32> = head.keys().copied().collect();
        for &start in &starts {
            if seen[&start] {
                continue;
            }
            let mut cur = start;
            loop {
                seen.insert(cur, true);
                let (ci, si) = head[&cur];
                out.push((ci, si % 2 == 1));
                let next = self.xs[ci].arcs[(si + 2) % 4];
                if next == start {
                    break;
                }
                cur = next;
            }
        }
        out
    }

    /// First crossing, in traversal order, whose first visit is on the
    /// over-strand. `None` means the diagram is ascending (a trivial link).
    fn first_bad(&self) -> Option<usize> {
        let mut visited: Vec<bool> = vec![false; self.xs.len()];
        for (ci, over) in self.passages() {
            if !visited[ci] {
                visited[ci] = true;
                if over {
                    return Some(ci);
                }
            }
        }
        None
    }

    pub fn component_count(&self) -> usize {
        let mut count = self.loops;
        let mut visited: Vec<bool> = vec![false; self.xs.len()];
        for (ci, _) in self.passages() {
            if !visited[ci] {
                visited[ci] = true;
            }
        }
        // count components by tracing starts in passages(): simpler to
        // recompute directly
        let mut head: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
        for (ci, x) in self.xs.iter().enumerate() {
            head.insert(x.arcs[0], (ci, 0));
            head.insert(x.over_in_arc(), (ci, x.over_in as usize));
        }
        let mut seen: BTreeMap<u32, bool> = head.keys().map(|&a| (a, false)).collect();
        let starts: Vec<u32> = head.keys().copied().collect();
        for &start in &starts {
            if seen[&start] {
                continue;
            }
            count += 1;
            let mut cur = start;
            loop {
                seen.insert(cur, true);
                let (ci, si) = head[&cur];
                let next = self.xs[ci].arcs[(si + 2) % 4];
                if next == start {
                    break;
                }
                cur = next;
            }
        }
        count
    }

    /// Switch the over/under strands at crossing `ci`.
    fn switch(&mut self, ci: usize) {
        let x = self.xs[ci];
        let s = x.over_in as usize;
        self.xs[ci] = Crossing {
            arcs: [x.arcs[s], x.arcs[(s + 1) % 4], x.arcs[(s + 2) % 4], x.arcs[(s + 3) % 4]],
            over_in: ((4 - s) % 4) as u8,
        };
    }

    /// Orientation-respecting smoothing at crossing `ci`.
    fn smooth_oriented(&mut self, ci: usize) {
        let x = self.xs.remove(ci);
        let (a, c) = (x.under_in(), x.under_out());
        let (oi, oo) = (x.over_in_arc(), x.over_out_arc());
        // under-in continues to over-out, over-in continues to under-out
        self.merge(a, oo);
        let oi2 = if oi == oo { a } else { oi };
        let c2 = if c == oo { a } else { c };
        self.merge(oi2, c2);
    }

    /// Canonical key up to crossing relabelling (orientation-aware).
    fn canonical_key(&self) -> Vec<u32> {
        let occ = self.occurrences();
        let n = self.xs.len();
        if n == 0 {
            return vec![self.loops as u32];
        }
        let port_mate = |ci: usize, si: usize| -> (usize, usize) {
            let sites = &occ[&self.xs[ci].arcs[si]];
            debug_assert_eq!(sites.len(), 2);
            if sites[0] == (ci, si) {
                sites[1]
            } else {
                sites[0]
            }
        };
        let mut best: Option<Vec<u32>> = None;
        for start in 0..n {
            let mut id: HashMap<usize, usize> = HashMap::new();
            let mut order = vec![start];
            id.insert(start, 0);
            let mut qi = 0;
            while qi < order.len() {
                let c = order[qi];
                qi += 1;
                for s in 0..4 {
                    let (mc, _) = port_mate(c, s);
                    if !id.contains_key(&mc) {
                        id.insert(mc, order.len());
                        order.push(mc);
                    }
                }
            }
            for c in 0..n {
                if !id.contains_key(&c) {
                    id.insert(c, order.len());
                    order.push(c);
                }
            }
            let mut enc: Vec<u32> = Vec::with_capacity(n * 5 + 1);
            enc.push(self.loops as u32);
            for &c in &order {
                enc.push(self.xs[c].over_in as u32);
                for s in 0..4 {
                    let (mc, ms) = port_mate(c, s);
                    enc.push((id[&mc] * 4 + ms) as u32);
                }
            }
            if best.as_ref().map(|b| enc < *b).unwrap_or(true) {
                best = Some(enc);
            }
        }
        best.unwrap()
    }
}

fn z_term(coeff: i64, deg: u32) -> IntPoly {
    IntPoly::monomial(BigInt::from(coeff), 2 * deg as i64)
}

fn conway_rec(
    t: &Tang,
    memo: &mut HashMap<Vec<u32>, IntPoly>,
    depth: usize,
    max_depth: usize,
) -> Result<IntPoly, InvariantError> {
    if depth > max_depth {
        return Err(InvariantError::NonConvergentUnknotting);
    }
    let mut t = t.clone();
    t.reduce();
    if t.pieces() > 1 {
        return Ok(IntPoly::zero());
    }
    if t.xs.is_empty() {
        // exactly one unknotted loop remains
        return Ok(IntPoly::one());
    }
    let key = t.canonical_key();
    if let Some(p) = memo.get(&key) {
        return Ok(p.clone());
    }
    if let Some((a, b)) = t.sum_factor() {
        let pa = conway_rec(&a, memo, depth + 1, max_depth)?;
        let pb = conway_rec(&b, memo, depth + 1, max_depth)?;
        let prod = &pa * &pb;
        memo.insert(key, prod.clone());
        return Ok(prod);
    }
    let out = match t.first_bad() {
        None => {
            // ascending diagram: trivial link
            if t.component_count() == 1 {
                IntPoly::one()
            } else {
                IntPoly::zero()
            }
        }
        Some(ci) => {
            let sign = t.xs[ci].sign();
            let mut switched = t.clone();
            switched.switch(ci);
            let mut smoothed = t.clone();
            smoothed.smooth_oriented(ci);
            let ps = conway_rec(&switched, memo, depth + 1, max_depth)?;
            let p0 = conway_rec(&smoothed, memo, depth + 1, max_depth)?;
            &ps + &(&z_term(sign as i64, 1) * &p0)
        }
    };
    memo.insert(key, out.clone());
    Ok(out)
}

/// Conway polynomial in `z` (doubled exponents, all even).
pub fn conway(d: &LinkDiagram) -> Result<IntPoly, InvariantError> {
    if d.crossing_count() > MAX_CROSSINGS {
        return Err(InvariantError::TooLarge(d.crossing_count(), MAX_CROSSINGS));
    }
    let t = Tang::from_diagram(d);
    let mut memo = HashMap::new();
    let max_depth = 2 * d.crossing_count() + 4;
    conway_rec(&t, &mut memo, 0, max_depth)
}

/// Alexander polynomial: substitute `z = t^(1/2) - t^(-1/2)` into the
/// Conway polynomial and normalise up to units, choosing minimal
/// non-negative exponents and a positive leading coefficient.
pub fn alexander(d: &LinkDiagram) -> Result<IntPoly, InvariantError> {
    let nabla = conway(d)?;
    Ok(alexander_from_conway(&nabla))
}

pub fn alexander_from_conway(nabla: &IntPoly) -> IntPoly {
    let zsub = &IntPoly::monomial(BigInt::one(), 1) - &IntPoly::monomial(BigInt::one(), -1);
    let raw = nabla.compose(&zsub).expect("conway exponents are non-negative integers");
    normalize_units(&raw)
}

/// Normalise up to `±t^{±r/2}`: shift the minimal exponent to zero and fix
/// a positive leading coefficient.
pub fn normalize_units(p: &IntPoly) -> IntPoly {
    if p.is_zero() {
        return p.clone();
    }
    let min = p.min_doubled_exp().unwrap();
    let shifted = p.shift(-min);
    let lead = shifted.coeff(shifted.max_doubled_exp().unwrap());
    if lead.is_negative() {
        -&shifted
    } else {
        shifted
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> LinkDiagram {
        LinkDiagram::parse(s).unwrap()
    }

    fn zp(terms: &[(u32, i64)]) -> IntPoly {
        IntPoly::from_terms(terms.iter().map(|&(d, c)| (2 * d as i64, BigInt::from(c))))
    }

    #[test]
    fn axioms() {
        assert_eq!(conway(&LinkDiagram::unknot()).unwrap(), IntPoly::one());
        assert_eq!(conway(&LinkDiagram::unlink(2)).unwrap(), IntPoly::zero());
    }

    #[test]
    fn hopf_links() {
        let neg = parse("PD[X[3,1,4,2], X[1,3,2,4]]");
        assert_eq!(conway(&neg).unwrap(), zp(&[(1, -1)]));
        assert_eq!(conway(&neg.mirror()).unwrap(), zp(&[(1, 1)]));
    }

    #[test]
    fn trefoil() {
        let d = parse("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]");
        assert_eq!(conway(&d).unwrap(), zp(&[(2, 1), (0, 1)]));
        assert_eq!(conway(&d.mirror()).unwrap(), zp(&[(2, 1), (0, 1)]));
        // alexander: t - 1 + 1/t, normalised to t^2 - t + 1
        let alex = alexander(&d).unwrap();
        assert_eq!(alex, IntPoly::from_terms([(4, 1.into()), (2, (-1).into()), (0, 1.into())]));
    }

    #[test]
    fn figure_eight() {
        let d = parse("PD[X[4,2,5,1], X[8,6,1,5], X[6,3,7,4], X[2,7,3,8]]");
        assert_eq!(d.mu(), 1);
        assert_eq!(conway(&d).unwrap(), zp(&[(2, -1), (0, 1)]));
    }

    #[test]
    fn connected_sum_multiplies() {
        let t = parse("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]");
        let s = t.connected_sum(&t, 1, 1).unwrap();
        assert_eq!(conway(&s).unwrap(), zp(&[(4, 1), (2, 2), (0, 1)]));
    }

    #[test]
    fn split_anything_vanishes() {
        let t = parse("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]");
        let u = t.split_union(&t);
        assert_eq!(conway(&u).unwrap(), IntPoly::zero());
    }
}
