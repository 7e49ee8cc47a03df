//! Oriented link diagrams as PD codes.
//!
//! A crossing is recorded as `X[a,b,c,d]`: the four incident arc labels in
//! counterclockwise order starting from the incoming under-strand, so the
//! under-strand runs `a -> c`. The over-strand direction is inferred from
//! the global head/tail structure of the arcs (each arc enters exactly one
//! crossing slot and leaves exactly one). A crossing is positive exactly
//! when the over-strand enters at slot 1, i.e. rotating the under-strand
//! direction counterclockwise by a quarter turn gives the over-strand
//! direction.
//!
//! Crossingless unknot components are carried by an explicit `loops` count
//! so the unknot needs no degenerate special case downstream.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::DiagramError;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    /// Arc labels counterclockwise from the incoming under-strand.
    pub arcs: [u32; 4],
    /// Slot (1 or 3) where the over-strand enters.
    pub over_in: u8,
}

impl Crossing {
    pub fn sign(&self) -> i8 {
        if self.over_in == 1 {
            1
        } else {
            -1
        }
    }

    pub fn under_in(&self) -> u32 {
        self.arcs[0]
    }
    pub fn under_out(&self) -> u32 {
        self.arcs[2]
    }
    pub fn over_in_arc(&self) -> u32 {
        self.arcs[self.over_in as usize]
    }
    pub fn over_out_arc(&self) -> u32 {
        self.arcs[(self.over_in as usize + 2) % 4]
    }
}

impl fmt::Debug for Crossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "X[{},{},{},{}]{}",
            self.arcs[0],
            self.arcs[1],
            self.arcs[2],
            self.arcs[3],
            if self.sign() > 0 { "+" } else { "-" }
        )
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    /// Crossingless unknot components.
    loops: usize,
    /// Arc cycles, one per component that meets a crossing, each in
    /// orientation order starting at the smallest arc label.
    components: Vec<Vec<u32>>,
    /// arc label -> index into `components`
    arc_comp: BTreeMap<u32, usize>,
}

impl LinkDiagram {
    pub fn unknot() -> Self {
        LinkDiagram { crossings: vec![], loops: 1, components: vec![], arc_comp: BTreeMap::new() }
    }

    pub fn unlink(n: usize) -> Self {
        LinkDiagram { crossings: vec![], loops: n, components: vec![], arc_comp: BTreeMap::new() }
    }

    /// Number of components.
    pub fn mu(&self) -> usize {
        self.components.len() + self.loops
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn loops(&self) -> usize {
        self.loops
    }

    /// Arc cycles of the components that meet crossings.
    pub fn arc_components(&self) -> &[Vec<u32>] {
        &self.components
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign() as i64).sum()
    }

    pub fn arcs(&self) -> impl Iterator<Item = u32> + '_ {
        self.arc_comp.keys().copied()
    }

    fn component_of_arc(&self, arc: u32) -> usize {
        self.arc_comp[&arc]
    }

    /// Parse the textual grammar `PD[X[a,b,c,d], ...; loops=k]`. The loops
    /// clause is also accepted after the closing bracket.
    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        let mut t = text.trim();
        let mut outer_loops: Option<usize> = None;
        if !t.ends_with(']') {
            if let Some((pd, tail)) = t.rsplit_once(';') {
                let tail = tail.trim();
                let k = tail
                    .strip_prefix("loops=")
                    .and_then(|v| v.trim().parse::<usize>().ok())
                    .ok_or_else(|| DiagramError::MalformedPd(format!("bad tail `{tail}`")))?;
                outer_loops = Some(k);
                t = pd.trim();
            }
        }
        let inner = t
            .strip_prefix("PD[")
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| DiagramError::MalformedPd("expected PD[...]".into()))?;
        let (body, loops) = match inner.rsplit_once(';') {
            Some((body, tail)) => {
                let tail = tail.trim();
                let k = tail
                    .strip_prefix("loops=")
                    .and_then(|v| v.trim().parse::<usize>().ok())
                    .ok_or_else(|| DiagramError::MalformedPd(format!("bad tail `{tail}`")))?;
                (body, k)
            }
            None => (inner, outer_loops.unwrap_or(0)),
        };
        let mut tuples = Vec::new();
        let body = body.trim();
        if !body.is_empty() {
            for part in split_crossings(body)? {
                let nums = part
                    .trim()
                    .strip_prefix("X[")
                    .and_then(|s| s.strip_suffix(']'))
                    .ok_or_else(|| DiagramError::MalformedPd(format!("bad crossing `{part}`")))?;
                let fields: Vec<&str> = nums.split(',').collect();
                if fields.len() != 4 {
                    return Err(DiagramError::MalformedPd(format!("bad crossing `{part}`")));
                }
                let mut arcs = [0u32; 4];
                for (i, fstr) in fields.iter().enumerate() {
                    arcs[i] = fstr
                        .trim()
                        .parse::<u32>()
                        .ok()
                        .filter(|&v| v > 0)
                        .ok_or_else(|| DiagramError::MalformedPd(format!("bad arc `{fstr}`")))?;
                }
                tuples.push(arcs);
            }
        }
        Self::from_tuples(&tuples, loops)
    }

    /// Build a diagram from raw PD tuples, inferring over-strand directions.
    pub fn from_tuples(tuples: &[[u32; 4]], loops: usize) -> Result<Self, DiagramError> {
        // occurrence check
        let mut occ: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
        for (ci, t) in tuples.iter().enumerate() {
            for (si, &a) in t.iter().enumerate() {
                occ.entry(a).or_default().push((ci, si));
            }
        }
        for (&a, sites) in &occ {
            if sites.len() != 2 {
                return Err(DiagramError::InconsistentArcs(a, sites.len()));
            }
        }

        // role[arc] = Some((head_site, tail_site)) once known.
        // Under slots are forced: slot 0 is a head, slot 2 is a tail.
        let mut head: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
        let mut tail: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
        let mut set_head = |m: &mut BTreeMap<u32, (usize, usize)>, a: u32, site: (usize, usize)| {
            if let Some(prev) = m.get(&a) {
                if *prev != site {
                    return Err(DiagramError::OpenStrand);
                }
            }
            m.insert(a, site);
            Ok(())
        };
        for (ci, t) in tuples.iter().enumerate() {
            set_head(&mut head, t[0], (ci, 0))?;
            set_head(&mut tail, t[2], (ci, 2))?;
        }
        // over_in per crossing: 1 or 3, resolved by propagation
        let mut over_in: Vec<Option<u8>> = vec![None; tuples.len()];
        let mut progress = true;
        while progress {
            progress = false;
            for (ci, t) in tuples.iter().enumerate() {
                if over_in[ci].is_some() {
                    continue;
                }
                let b = t[1];
                let d = t[3];
                // b enters here if this site is b's head
                let b_heads_here = head.get(&b) == Some(&(ci, 1));
                let d_heads_here = head.get(&d) == Some(&(ci, 3));
                let b_tails_here = tail.get(&b) == Some(&(ci, 1));
                let d_tails_here = tail.get(&d) == Some(&(ci, 3));
                // an arc whose head is already placed elsewhere must tail here
                let b_head_elsewhere = head.get(&b).map(|s| *s != (ci, 1)).unwrap_or(false);
                let d_head_elsewhere = head.get(&d).map(|s| *s != (ci, 3)).unwrap_or(false);
                let b_tail_elsewhere = tail.get(&b).map(|s| *s != (ci, 1)).unwrap_or(false);
                let d_tail_elsewhere = tail.get(&d).map(|s| *s != (ci, 3)).unwrap_or(false);
                let choose_b = b_heads_here
                    || d_tails_here
                    || (b_tail_elsewhere && occ[&b].contains(&(ci, 1)))
                    || (d_head_elsewhere && occ[&d].contains(&(ci, 3)));
                let choose_d = d_heads_here
                    || b_tails_here
                    || (d_tail_elsewhere && occ[&d].contains(&(ci, 3)))
                    || (b_head_elsewhere && occ[&b].contains(&(ci, 1)));
                let slot = match (choose_b, choose_d) {
                    (true, false) => Some(1u8),
                    (false, true) => Some(3u8),
                    (true, true) => return Err(DiagramError::OpenStrand),
                    (false, false) => None,
                };
                if let Some(s) = slot {
                    over_in[ci] = Some(s);
                    let (hin, hout) = if s == 1 { (t[1], t[3]) } else { (t[3], t[1]) };
                    set_head(&mut head, hin, (ci, s as usize))?;
                    set_head(&mut tail, hout, (ci, (s as usize + 2) % 4))?;
                    progress = true;
                }
            }
        }
        // components never passing under: fall back to the label-order
        // convention (arcs of a component are numbered consecutively).
        for (ci, t) in tuples.iter().enumerate() {
            if over_in[ci].is_none() {
                let b = t[1];
                let d = t[3];
                let s = if d == b + 1 {
                    1
                } else if b == d + 1 {
                    3
                } else if b > d {
                    1
                } else {
                    3
                };
                over_in[ci] = Some(s);
                let (hin, hout) = if s == 1 { (t[1], t[3]) } else { (t[3], t[1]) };
                set_head(&mut head, hin, (ci, s as usize))?;
                set_head(&mut tail, hout, (ci, (s as usize + 2) % 4))?;
            }
        }

        let crossings: Vec<Crossing> = tuples
            .iter()
            .zip(&over_in)
            .map(|(t, s)| Crossing { arcs: *t, over_in: s.unwrap() })
            .collect();
        Self::assemble(crossings, loops)
    }

    /// Validate head/tail structure and trace the oriented arc cycles.
    pub(crate) fn assemble(crossings: Vec<Crossing>, loops: usize) -> Result<Self, DiagramError> {
        let mut head: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
        let mut tail_count: BTreeMap<u32, usize> = BTreeMap::new();
        for (ci, x) in crossings.iter().enumerate() {
            let hslots = [(x.arcs[0], 0usize), (x.over_in_arc(), x.over_in as usize)];
            for (a, s) in hslots {
                if head.insert(a, (ci, s)).is_some() {
                    return Err(DiagramError::OpenStrand);
                }
            }
            *tail_count.entry(x.under_out()).or_insert(0) += 1;
            *tail_count.entry(x.over_out_arc()).or_insert(0) += 1;
        }
        if head.len() != tail_count.len() || tail_count.values().any(|&c| c != 1) {
            return Err(DiagramError::OpenStrand);
        }
        for a in tail_count.keys() {
            if !head.contains_key(a) {
                return Err(DiagramError::OpenStrand);
            }
        }
        // next(arc): the out-arc of the crossing where `arc` heads in
        let next = |a: u32| -> u32 {
            let (ci, s) = head[&a];
            crossings[ci].arcs[(s + 2) % 4]
        };
        let mut seen: BTreeMap<u32, bool> = head.keys().map(|&a| (a, false)).collect();
        let mut components = Vec::new();
        let all_arcs: Vec<u32> = head.keys().copied().collect();
        for &start in &all_arcs {
            if seen[&start] {
                continue;
            }
            let mut cyc = vec![start];
            seen.insert(start, true);
            let mut cur = next(start);
            while cur != start {
                if seen[&cur] {
                    return Err(DiagramError::OpenStrand);
                }
                seen.insert(cur, true);
                cyc.push(cur);
                cur = next(cur);
            }
            // rotate so the smallest arc leads
            let minpos = cyc.iter().enumerate().min_by_key(|(_, &a)| a).unwrap().0;
            cyc.rotate_left(minpos);
            components.push(cyc);
        }
        components.sort_by_key(|c| c[0]);
        let mut arc_comp = BTreeMap::new();
        for (i, c) in components.iter().enumerate() {
            for &a in c {
                arc_comp.insert(a, i);
            }
        }
        Ok(LinkDiagram { crossings, loops, components, arc_comp })
    }

    /// Successor arc along the orientation.
    pub fn next_arc(&self, arc: u32) -> u32 {
        let comp = &self.components[self.component_of_arc(arc)];
        let pos = comp.iter().position(|&a| a == arc).unwrap();
        comp[(pos + 1) % comp.len()]
    }

    /// Mirror image: every crossing switched, signs negated.
    pub fn mirror(&self) -> LinkDiagram {
        let crossings = self
            .crossings
            .iter()
            .map(|x| {
                let s = x.over_in as usize;
                let arcs = [x.arcs[s], x.arcs[(s + 1) % 4], x.arcs[(s + 2) % 4], x.arcs[(s + 3) % 4]];
                Crossing { arcs, over_in: ((4 - s) % 4) as u8 }
            })
            .collect();
        Self::assemble(crossings, self.loops).expect("mirror preserves validity")
    }

    /// Reverse the orientation of one component.
    pub fn reverse_component(&self, comp: usize) -> Result<LinkDiagram, DiagramError> {
        if comp >= self.mu() {
            return Err(DiagramError::BadComponentIndex(comp, self.mu()));
        }
        if comp >= self.components.len() {
            // crossingless loop: reversal is invisible
            return Ok(self.clone());
        }
        let in_comp = |a: u32| self.arc_comp.get(&a) == Some(&comp);
        let crossings = self
            .crossings
            .iter()
            .map(|x| {
                let under_rev = in_comp(x.arcs[0]);
                let over_rev = in_comp(x.over_in_arc());
                let (arcs, mut over_in) = if under_rev {
                    // under-in becomes the old under-out: rotate by 2
                    (
                        [x.arcs[2], x.arcs[3], x.arcs[0], x.arcs[1]],
                        ((x.over_in + 2) % 4) as u8,
                    )
                } else {
                    (x.arcs, x.over_in)
                };
                if over_rev {
                    over_in = (over_in + 2) % 4;
                }
                Crossing { arcs, over_in }
            })
            .collect();
        Self::assemble(crossings, self.loops)
    }

    /// Connected sum, splicing `arc_a` of `self` to `arc_b` of `other`,
    /// respecting orientations.
    pub fn connected_sum(
        &self,
        other: &LinkDiagram,
        arc_a: u32,
        arc_b: u32,
    ) -> Result<LinkDiagram, DiagramError> {
        // summing with a crossingless unknot leaves the other side unchanged
        if self.crossings.is_empty() && self.loops == 1 {
            return Ok(other.clone());
        }
        if other.crossings.is_empty() && other.loops == 1 {
            return Ok(self.clone());
        }
        if !self.arc_comp.contains_key(&arc_a) {
            return Err(DiagramError::BadArc(arc_a));
        }
        if !other.arc_comp.contains_key(&arc_b) {
            return Err(DiagramError::BadArc(arc_b));
        }
        let offset = self.arcs().max().unwrap_or(0);
        let arc_b_shifted = arc_b + offset;
        // Cut both arcs and cross-join: the strand that used to enter a
        // crossing as `arc_a` now arrives as the other diagram's strand.
        let (ha_c, ha_s) = self.head_site(arc_a);
        let (hb_c, hb_s) = other.head_site(arc_b);
        let mut crossings: Vec<Crossing> = Vec::new();
        for (ci, x) in self.crossings.iter().enumerate() {
            let mut arcs = x.arcs;
            if ci == ha_c {
                arcs[ha_s] = arc_b_shifted;
            }
            crossings.push(Crossing { arcs, over_in: x.over_in });
        }
        for (ci, x) in other.crossings.iter().enumerate() {
            let mut arcs = x.arcs.map(|a| a + offset);
            if ci == hb_c {
                arcs[hb_s] = arc_a;
            }
            crossings.push(Crossing { arcs, over_in: x.over_in });
        }
        Self::assemble(crossings, self.loops + other.loops)
    }

    /// Disjoint (split) union.
    pub fn split_union(&self, other: &LinkDiagram) -> LinkDiagram {
        let offset = self.arcs().max().unwrap_or(0);
        let mut crossings = self.crossings.clone();
        crossings.extend(other.crossings.iter().map(|x| Crossing {
            arcs: x.arcs.map(|a| a + offset),
            over_in: x.over_in,
        }));
        Self::assemble(crossings, self.loops + other.loops).expect("union preserves validity")
    }

    fn head_site(&self, arc: u32) -> (usize, usize) {
        for (ci, x) in self.crossings.iter().enumerate() {
            if x.arcs[0] == arc {
                return (ci, 0);
            }
            if x.over_in_arc() == arc {
                return (ci, x.over_in as usize);
            }
        }
        unreachable!("arc {arc} has no head site")
    }

    /// Signed linking number of two distinct components: half the signed
    /// count of crossings between them.
    pub fn linking_number(&self, i: usize, j: usize) -> Result<i64, DiagramError> {
        let mu = self.mu();
        if i >= mu {
            return Err(DiagramError::BadComponentIndex(i, mu));
        }
        if j >= mu {
            return Err(DiagramError::BadComponentIndex(j, mu));
        }
        if i == j {
            return Err(DiagramError::SameComponent);
        }
        let mut sum = 0i64;
        for x in &self.crossings {
            let cu = self.component_of_arc(x.under_in());
            let co = self.component_of_arc(x.over_in_arc());
            if (cu == i && co == j) || (cu == j && co == i) {
                sum += x.sign() as i64;
            }
        }
        debug_assert!(sum % 2 == 0);
        Ok(sum / 2)
    }

    /// Sum of linking numbers over all component pairs.
    pub fn total_linking(&self) -> i64 {
        let mut sum = 0i64;
        for x in &self.crossings {
            let cu = self.component_of_arc(x.under_in());
            let co = self.component_of_arc(x.over_in_arc());
            if cu != co {
                sum += x.sign() as i64;
            }
        }
        debug_assert!(sum % 2 == 0);
        sum / 2
    }

    /// Linking number of component `i` with everything else.
    pub fn component_total_linking(&self, i: usize) -> i64 {
        let mut sum = 0i64;
        for x in &self.crossings {
            let cu = self.component_of_arc(x.under_in());
            let co = self.component_of_arc(x.over_in_arc());
            if (cu == i) != (co == i) {
                sum += x.sign() as i64;
            }
        }
        sum / 2
    }

    /// Crossing-connectivity pieces: groups of components sharing crossings.
    /// Each crossingless loop is its own piece. Returns component index sets.
    pub fn split_pieces(&self) -> Vec<Vec<usize>> {
        let n = self.components.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut Vec<usize>, i: usize) -> usize {
            if p[i] != i {
                let r = find(p, p[i]);
                p[i] = r;
            }
            p[i]
        }
        for x in &self.crossings {
            let cu = self.component_of_arc(x.under_in());
            let co = self.component_of_arc(x.over_in_arc());
            let (a, b) = (find(&mut parent, cu), find(&mut parent, co));
            if a != b {
                parent[a] = b;
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        for l in 0..self.loops {
            out.push(vec![n + l]);
        }
        out
    }

    /// Extract the sub-diagram formed by the given arc-component indices.
    pub(crate) fn sub_diagram(&self, comps: &[usize], loops: usize) -> LinkDiagram {
        let keep: Vec<bool> = (0..self.components.len()).map(|i| comps.contains(&i)).collect();
        let crossings: Vec<Crossing> = self
            .crossings
            .iter()
            .filter(|x| keep[self.component_of_arc(x.under_in())])
            .cloned()
            .collect();
        Self::assemble(crossings, loops).expect("sub-diagram valid")
    }

    /// Canonical relabelling: arcs numbered 1.. along each component in
    /// orientation order; components ordered by their current minimal arc.
    pub fn relabel_canonical(&self) -> LinkDiagram {
        let mut map: BTreeMap<u32, u32> = BTreeMap::new();
        let mut nextlabel = 1u32;
        for comp in &self.components {
            for &a in comp {
                map.insert(a, nextlabel);
                nextlabel += 1;
            }
        }
        let crossings = self
            .crossings
            .iter()
            .map(|x| Crossing { arcs: x.arcs.map(|a| map[&a]), over_in: x.over_in })
            .collect();
        Self::assemble(crossings, self.loops).expect("relabel preserves validity")
    }

    /// Serialise to the PD text grammar (after canonical relabelling the
    /// result re-parses to an equal diagram).
    pub fn render(&self) -> String {
        let body = self
            .crossings
            .iter()
            .map(|x| format!("X[{},{},{},{}]", x.arcs[0], x.arcs[1], x.arcs[2], x.arcs[3]))
            .collect::<Vec<_>>()
            .join(", ");
        if self.loops > 0 {
            format!("PD[{body}; loops={}]", self.loops)
        } else {
            format!("PD[{body}]")
        }
    }
}

impl fmt::Debug for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

fn split_crossings(body: &str) -> Result<Vec<&str>, DiagramError> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, ch) in body.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| DiagramError::MalformedPd("unbalanced brackets".into()))?
            }
            ',' if depth == 0 => {
                parts.push(&body[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(DiagramError::MalformedPd("unbalanced brackets".into()));
    }
    parts.push(&body[start..]);
    Ok(parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    // negative Hopf link: two clasped circles, both crossings negative
    pub(crate) const HOPF_NEG: &str = "PD[X[3,1,4,2], X[1,3,2,4]]";

    #[test]
    fn parse_unknot() {
        for text in ["PD[; loops=1]", "PD[]; loops=1"] {
            let d = LinkDiagram::parse(text).unwrap();
            assert_eq!(d.mu(), 1);
            assert_eq!(d.crossing_count(), 0);
        }
    }

    #[test]
    fn parse_hopf_negative() {
        let d = LinkDiagram::parse(HOPF_NEG).unwrap();
        assert_eq!(d.mu(), 2);
        assert_eq!(d.crossing_count(), 2);
        let signs: Vec<i8> = d.crossings().iter().map(|x| x.sign()).collect();
        assert_eq!(signs, vec![-1, -1]);
        assert_eq!(d.linking_number(0, 1).unwrap(), -1);
        assert_eq!(d.total_linking(), -1);
    }

    #[test]
    fn inconsistent_arc_rejected() {
        let e = LinkDiagram::parse("PD[X[3,1,4,2], X[1,3,2,5]]").unwrap_err();
        assert!(matches!(e, DiagramError::InconsistentArcs(_, _)));
    }

    #[test]
    fn mirror_negates_signs_and_is_involutive() {
        let d = LinkDiagram::parse(HOPF_NEG).unwrap();
        let m = d.mirror();
        assert_eq!(m.total_linking(), 1);
        assert_eq!(m.mirror(), d);
        assert_eq!(m.mu(), d.mu());
        assert_eq!(d.writhe(), -m.writhe());
    }

    #[test]
    fn reverse_component_flips_linking() {
        let d = LinkDiagram::parse(HOPF_NEG).unwrap();
        let r = d.reverse_component(0).unwrap();
        assert_eq!(r.total_linking(), 1);
        assert_eq!(r.mu(), 2);
        let rr = r.reverse_component(0).unwrap();
        assert_eq!(rr, d);
        assert!(d.reverse_component(5).is_err());
    }

    #[test]
    fn trefoil_structure() {
        // standard 3-crossing diagram, all signs equal
        let d = LinkDiagram::parse("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]").unwrap();
        assert_eq!(d.mu(), 1);
        let signs: Vec<i8> = d.crossings().iter().map(|x| x.sign()).collect();
        assert_eq!(signs.iter().map(|&s| s as i64).sum::<i64>().abs(), 3);
        // reversing a knot leaves all crossing signs unchanged
        let r = d.reverse_component(0).unwrap();
        assert_eq!(r.writhe(), d.writhe());
    }

    #[test]
    fn split_union_counts() {
        let d = LinkDiagram::parse(HOPF_NEG).unwrap();
        let u = d.split_union(&LinkDiagram::unknot());
        assert_eq!(u.mu(), 3);
        assert_eq!(u.total_linking(), -1);
        assert_eq!(u.split_pieces().len(), 2);
    }

    #[test]
    fn connected_sum_counts() {
        let t = LinkDiagram::parse("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]").unwrap();
        let s = t.connected_sum(&t, 1, 1).unwrap();
        assert_eq!(s.mu(), 1);
        assert_eq!(s.crossing_count(), 6);
        assert_eq!(s.writhe(), 2 * t.writhe());
        let h = LinkDiagram::parse(HOPF_NEG).unwrap();
        let s2 = t.connected_sum(&h, 1, 1).unwrap();
        assert_eq!(s2.mu(), 2);
        // unknot acts as identity
        assert_eq!(t.connected_sum(&LinkDiagram::unknot(), 1, 1).unwrap(), t);
    }

    #[test]
    fn round_trip_up_to_relabelling() {
        for pd in ["PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]", HOPF_NEG, "PD[; loops=2]"] {
            let d = LinkDiagram::parse(pd).unwrap();
            let r = LinkDiagram::parse(&d.relabel_canonical().render()).unwrap();
            assert_eq!(r.relabel_canonical(), d.relabel_canonical());
            assert_eq!(r.mu(), d.mu());
            assert_eq!(r.writhe(), d.writhe());
        }
    }
}
