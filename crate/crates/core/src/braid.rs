//! Conversion of a connected diagram to a braid word, and braid closures
//! back to diagrams.
//!
//! The conversion repeatedly applies the strand-piercing move: whenever a
//! face of the smoothed (Seifert) picture carries two arcs from different
//! Seifert circles inducing the same boundary orientation, one strand is
//! pulled across the other, adding a cancelling crossing pair. When no
//! such face remains, the Seifert circles are coherently nested and the
//! diagram is a closed braid: the chain order of the circles gives the
//! strand numbering and the crossings are read off in angular order.

use std::collections::BTreeMap;

use crate::diagram::{Crossing, LinkDiagram};
use crate::error::InvariantError;

/// A braid word; generator indices are 1-based (`sigma_1` crosses strands
/// 1 and 2), each letter carries its sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    pub strands: usize,
    pub letters: Vec<(usize, i8)>,
}

fn err(msg: impl Into<String>) -> InvariantError {
    InvariantError::BraidConversion(msg.into())
}

/// Seifert circles: arcs grouped by the orientation-respecting smoothing.
/// Returns (circle index per arc, circles as arc cycles in order).
pub(crate) fn seifert_circles(d: &LinkDiagram) -> (BTreeMap<u32, usize>, Vec<Vec<u32>>) {
    // successor of an arc under the smoothing: the out-arc on the same
    // smoothed strand at the crossing where the arc heads in
    let mut succ: BTreeMap<u32, u32> = BTreeMap::new();
    for x in d.crossings() {
        succ.insert(x.under_in(), x.over_out_arc());
        succ.insert(x.over_in_arc(), x.under_out());
    }
    let mut circle_of = BTreeMap::new();
    let mut circles = Vec::new();
    let arcs: Vec<u32> = succ.keys().copied().collect();
    for &start in &arcs {
        if circle_of.contains_key(&start) {
            continue;
        }
        let id = circles.len();
        let mut cyc = vec![start];
        circle_of.insert(start, id);
        let mut cur = succ[&start];
        while cur != start {
            circle_of.insert(cur, id);
            cyc.push(cur);
            cur = succ[&cur];
        }
        circles.push(cyc);
    }
    (circle_of, circles)
}

/// Faces of the diagram as orbits of the corner-walk. Each directed arc
/// side `(arc, forward)` lies on exactly one face; the walk also records
/// which face owns each crossing corner `(crossing, j)` (the corner between
/// slots j and j+1).
struct Faces {
    /// face id per directed arc side
    side_face: BTreeMap<(u32, bool), usize>,
    /// face id per corner
    corner_face: BTreeMap<(usize, u8), usize>,
    count: usize,
}

fn trace_faces(d: &LinkDiagram) -> Faces {
    // head and tail sites per arc
    let mut head: BTreeMap<u32, (usize, u8)> = BTreeMap::new();
    let mut tail: BTreeMap<u32, (usize, u8)> = BTreeMap::new();
    for (ci, x) in d.crossings().iter().enumerate() {
        head.insert(x.under_in(), (ci, 0));
        head.insert(x.over_in_arc(), (ci, x.over_in));
        tail.insert(x.under_out(), (ci, 2));
        tail.insert(x.over_out_arc(), (ci, (x.over_in + 2) % 4));
    }
    let mut side_face = BTreeMap::new();
    let mut corner_face = BTreeMap::new();
    let mut count = 0;
    let sides: Vec<(u32, bool)> =
        head.keys().flat_map(|&a| [(a, true), (a, false)]).collect();
    for &start in &sides {
        if side_face.contains_key(&start) {
            continue;
        }
        let face = count;
        count += 1;
        let mut cur = start;
        loop {
            side_face.insert(cur, face);
            let (arc, fwd) = cur;
            // travelling along `arc` we enter the crossing at this slot:
            let (ci, s) = if fwd { head[&arc] } else { tail[&arc] };
            // sweep the corner between slots s-1 and s, exit via slot s-1
            let exit = (s + 3) % 4;
            corner_face.insert((ci, exit), face);
            let x = &d.crossings()[ci];
            let next_arc = x.arcs[exit as usize];
            // leaving through `exit`: forward if the arc's tail is here
            let next_fwd = tail.get(&next_arc) == Some(&(ci, exit));
            let next = (next_arc, next_fwd);
            if next == start {
                break;
            }
            debug_assert!(!side_face.contains_key(&next), "face walk collision");
            cur = next;
        }
    }
    Faces { side_face, corner_face, count }
}

fn is_planar(d: &LinkDiagram) -> bool {
    if d.crossing_count() == 0 {
        return true;
    }
    // connected 4-valent diagram: Euler characteristic forces n + 2 faces
    trace_faces(d).count == d.crossing_count() + 2
}

/// Union-find over original faces giving the faces of the smoothed picture.
fn smoothed_face_classes(d: &LinkDiagram, faces: &Faces) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..faces.count).collect();
    fn find(p: &mut Vec<usize>, i: usize) -> usize {
        if p[i] != i {
            let r = find(p, p[i]);
            p[i] = r;
        }
        p[i]
    }
    for (ci, x) in d.crossings().iter().enumerate() {
        // the smoothing channel merges two opposite corners
        let (c1, c2) = if x.over_in == 1 { (0u8, 2u8) } else { (3u8, 1u8) };
        let f1 = faces.corner_face[&(ci, c1)];
        let f2 = faces.corner_face[&(ci, c2)];
        let (a, b) = (find(&mut parent, f1), find(&mut parent, f2));
        if a != b {
            parent[a] = b;
        }
    }
    (0..faces.count).map(|i| find(&mut parent, i)).collect()
}

/// One strand-piercing move: pull the strand of `x_arc` across `y_arc`,
/// inserting a cancelling crossing pair. Both planar insertions are tried;
/// exactly the planar one is kept.
fn pierce(d: &LinkDiagram, x_arc: u32, y_arc: u32) -> Result<LinkDiagram, InvariantError> {
    let fresh = d.arcs().max().unwrap_or(0) + 1;
    let (n1, n2, n3, n4) = (fresh, fresh + 1, fresh + 2, fresh + 3);
    // head slots to relabel
    let head_site = |arc: u32| -> (usize, u8) {
        for (ci, x) in d.crossings().iter().enumerate() {
            if x.under_in() == arc {
                return (ci, 0);
            }
            if x.over_in_arc() == arc {
                return (ci, x.over_in);
            }
        }
        unreachable!()
    };
    let (xc, xs) = head_site(x_arc);
    let (yc, ys) = head_site(y_arc);
    for version in 0..2 {
        let mut xs_new: Vec<Crossing> = d.crossings().to_vec();
        xs_new[xc].arcs[xs as usize] = n2;
        xs_new[yc].arcs[ys as usize] = n4;
        // x crosses over y twice; the two versions approach from opposite
        // sides, so their tuples are mirror images
        let (q1, q2) = if version == 0 {
            (
                Crossing { arcs: [y_arc, n1, n3, x_arc], over_in: 3 },
                Crossing { arcs: [n3, n1, n4, n2], over_in: 1 },
            )
        } else {
            (
                Crossing { arcs: [y_arc, x_arc, n3, n1], over_in: 1 },
                Crossing { arcs: [n3, n2, n4, n1], over_in: 3 },
            )
        };
        xs_new.push(q1);
        xs_new.push(q2);
        if let Ok(nd) = LinkDiagram::assemble(xs_new, d.loops()) {
            if is_planar(&nd) {
                return Ok(nd);
            }
        }
    }
    Err(err("no planar insertion for the piercing move"))
}

/// Find an incoherent pair in the smoothed picture: two arcs on the same
/// smoothed face, in different Seifert circles, with equal boundary
/// orientation.
fn find_incoherent_pair(d: &LinkDiagram) -> Option<(u32, u32)> {
    let (circle_of, _) = seifert_circles(d);
    let faces = trace_faces(d);
    let class = smoothed_face_classes(d, &faces);
    // collect (class, dir) -> arcs
    let mut buckets: BTreeMap<(usize, bool), Vec<u32>> = BTreeMap::new();
    for ((arc, fwd), f) in &faces.side_face {
        buckets.entry((class[*f], *fwd)).or_default().push(*arc);
    }
    for arcs in buckets.values() {
        for (i, &a) in arcs.iter().enumerate() {
            for &b in &arcs[i + 1..] {
                if circle_of[&a] != circle_of[&b] {
                    return Some((a, b));
                }
            }
        }
    }
    None
}

/// Convert a connected diagram to a braid word.
pub fn to_braid(d: &LinkDiagram) -> Result<BraidWord, InvariantError> {
    if d.crossing_count() == 0 {
        if d.mu() != 1 {
            return Err(err("braid conversion needs a connected diagram"));
        }
        return Ok(BraidWord { strands: 1, letters: vec![] });
    }
    if d.loops() > 0 || d.split_pieces().len() > 1 {
        return Err(err("braid conversion needs a connected diagram"));
    }
    let mut cur = d.clone();
    let cap = 2 * (d.crossing_count() + 2) * (d.crossing_count() + 2) + 64;
    let mut steps = 0;
    while let Some((a, b)) = find_incoherent_pair(&cur) {
        cur = pierce(&cur, a, b)?;
        steps += 1;
        if steps > cap {
            return Err(err("piercing loop did not converge"));
        }
    }
    extract_braid(&cur)
}

fn extract_braid(d: &LinkDiagram) -> Result<BraidWord, InvariantError> {
    let (circle_of, circles) = seifert_circles(d);
    let k = circles.len();
    // chain structure: each crossing joins two distinct circles
    let mut adj: Vec<BTreeMap<usize, ()>> = vec![BTreeMap::new(); k];
    for x in d.crossings() {
        let cu = circle_of[&x.under_in()];
        let co = circle_of[&x.over_in_arc()];
        if cu == co {
            return Err(err("coherent diagram has a self-adjacent circle"));
        }
        adj[cu].insert(co, ());
        adj[co].insert(cu, ());
    }
    // order the circles along the path
    let ends: Vec<usize> = (0..k).filter(|&i| adj[i].len() <= 1).collect();
    let order: Vec<usize> = if k == 1 {
        vec![0]
    } else {
        if ends.len() != 2 {
            return Err(err("circle adjacency is not a chain"));
        }
        let start = *ends.iter().min().unwrap();
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while order.len() < k {
            let next = adj[cur]
                .keys()
                .copied()
                .find(|&n| n != prev)
                .ok_or_else(|| err("circle chain broke"))?;
            order.push(next);
            prev = cur;
            cur = next;
        }
        order
    };
    let mut level: Vec<usize> = vec![0; k];
    for (pos, &c) in order.iter().enumerate() {
        level[c] = pos;
    }
    // cyclic crossing sequence along each circle, in orientation order
    let mut head: BTreeMap<u32, usize> = BTreeMap::new();
    for (ci, x) in d.crossings().iter().enumerate() {
        head.insert(x.under_in(), ci);
        head.insert(x.over_in_arc(), ci);
    }
    let circle_seq: Vec<Vec<usize>> = circles
        .iter()
        .map(|cyc| cyc.iter().map(|a| head[a]).collect())
        .collect();
    // place pair-(0,1) crossings from the first circle's cyclic order, then
    // weave in each next level using the shared crossings as anchors
    let seq_of_level = |lvl: usize| -> &Vec<usize> { &circle_seq[order[lvl]] };
    let pair_level = |ci: usize| -> usize {
        let x = &d.crossings()[ci];
        let lu = level[circle_of[&x.under_in()]];
        let lo = level[circle_of[&x.over_in_arc()]];
        lu.min(lo)
    };
    let mut linear: Vec<usize> = Vec::new();
    if k == 1 {
        return Ok(BraidWord { strands: 1, letters: vec![] });
    }
    linear.extend(seq_of_level(0).iter().copied());
    for lvl in 1..k - 1 {
        let seq = seq_of_level(lvl);
        // rotate so the sequence starts at the anchor that is earliest in
        // the current linear order
        let pos_in_linear: BTreeMap<usize, usize> =
            linear.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let first_anchor = seq
            .iter()
            .enumerate()
            .filter(|(_, c)| pos_in_linear.contains_key(c))
            .min_by_key(|(_, c)| pos_in_linear[c])
            .map(|(i, _)| i)
            .ok_or_else(|| err("level has no anchor"))?;
        let rotated: Vec<usize> =
            seq.iter().cycle().skip(first_anchor).take(seq.len()).copied().collect();
        // verify anchors appear in increasing linear position
        let anchor_positions: Vec<usize> = rotated
            .iter()
            .filter_map(|c| pos_in_linear.get(c).copied())
            .collect();
        if anchor_positions.windows(2).any(|w| w[0] >= w[1]) {
            return Err(err("cyclic orders are inconsistent"));
        }
        // insert new crossings after their preceding anchor
        let mut insertions: Vec<(usize, Vec<usize>)> = Vec::new(); // (linear pos, crossings)
        let mut cur_anchor_pos = None;
        let mut pending: Vec<usize> = Vec::new();
        for &c in &rotated {
            if let Some(&p) = pos_in_linear.get(&c) {
                if let Some(ap) = cur_anchor_pos {
                    insertions.push((ap, std::mem::take(&mut pending)));
                } else if !pending.is_empty() {
                    // crossings before the first anchor go to the very end
                    insertions.push((linear.len() - 1, std::mem::take(&mut pending)));
                }
                cur_anchor_pos = Some(p);
            } else {
                pending.push(c);
            }
        }
        if !pending.is_empty() {
            let ap = cur_anchor_pos.unwrap_or(linear.len().saturating_sub(1));
            insertions.push((ap, pending));
        }
        // apply insertions from the back to keep positions stable
        insertions.sort_by_key(|(p, _)| *p);
        for (p, cs) in insertions.into_iter().rev() {
            for (off, c) in cs.into_iter().enumerate() {
                linear.insert(p + 1 + off, c);
            }
        }
    }
    if linear.len() != d.crossing_count() {
        return Err(err("crossing placement incomplete"));
    }
    let letters: Vec<(usize, i8)> = linear
        .iter()
        .map(|&ci| (pair_level(ci) + 1, d.crossings()[ci].sign()))
        .collect();
    Ok(BraidWord { strands: k, letters })
}

/// Diagram of the braid closure (all strands oriented the same way).
pub fn closure_pd(w: &BraidWord) -> LinkDiagram {
    let k = w.strands;
    let mut next_label: u32 = 1;
    let mut start: Vec<u32> = Vec::new();
    let mut cur: Vec<u32> = Vec::new();
    for _ in 0..k {
        start.push(next_label);
        cur.push(next_label);
        next_label += 1;
    }
    let mut tuples: Vec<Crossing> = Vec::new();
    for &(j, e) in &w.letters {
        let (l_in, r_in) = (cur[j - 1], cur[j]);
        let b_out = next_label; // strand continuing at position j
        let a_out = next_label + 1; // strand continuing at position j+1
        next_label += 2;
        let x = if e > 0 {
            Crossing { arcs: [r_in, l_in, b_out, a_out], over_in: 1 }
        } else {
            Crossing { arcs: [l_in, b_out, a_out, r_in], over_in: 3 }
        };
        tuples.push(x);
        cur[j - 1] = b_out;
        cur[j] = a_out;
    }
    // close up: identify each strand's bottom label with its top label
    let mut loops = 0;
    for p in 0..k {
        if cur[p] == start[p] {
            loops += 1;
            continue;
        }
        for x in &mut tuples {
            for a in &mut x.arcs {
                if *a == cur[p] {
                    *a = start[p];
                }
            }
        }
    }
    LinkDiagram::assemble(tuples, loops).expect("braid closure is a valid diagram")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::jones;
    use crate::skein::conway;

    fn parse(s: &str) -> LinkDiagram {
        LinkDiagram::parse(s).unwrap()
    }

    #[test]
    fn closure_of_sigma1_cubed_is_trefoil() {
        let w = BraidWord { strands: 2, letters: vec![(1, 1), (1, 1), (1, 1)] };
        let d = closure_pd(&w);
        assert_eq!(d.mu(), 1);
        assert_eq!(d.writhe(), 3);
        let t = parse("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]");
        assert_eq!(jones(&d).unwrap(), jones(&t).unwrap());
    }

    #[test]
    fn closure_handles_unused_strands() {
        let w = BraidWord { strands: 2, letters: vec![] };
        let d = closure_pd(&w);
        assert_eq!(d.mu(), 2);
        assert_eq!(d.crossing_count(), 0);
    }

    #[test]
    fn faces_of_standard_diagrams() {
        for (pd, n) in
            [("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]", 3), ("PD[X[3,1,4,2], X[1,3,2,4]]", 2)]
        {
            let d = parse(pd);
            assert!(is_planar(&d));
            assert_eq!(trace_faces(&d).count, n + 2);
        }
    }

    #[test]
    fn braid_round_trip_preserves_invariants() {
        let samples = [
            "PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]",
            "PD[X[3,1,4,2], X[1,3,2,4]]",
            "PD[X[4,2,5,1], X[8,6,1,5], X[6,3,7,4], X[2,7,3,8]]",
        ];
        for pd in samples {
            let d = parse(pd);
            let w = to_braid(&d).unwrap();
            let c = closure_pd(&w);
            assert_eq!(c.mu(), d.mu(), "{pd}");
            assert_eq!(jones(&c).unwrap(), jones(&d).unwrap(), "{pd}");
            assert_eq!(conway(&c).unwrap(), conway(&d).unwrap(), "{pd}");
        }
    }

    #[test]
    fn braid_of_already_braided_diagram() {
        let w = BraidWord { strands: 3, letters: vec![(1, 1), (2, -1), (1, 1), (2, -1)] };
        let d = closure_pd(&w);
        let w2 = to_braid(&d).unwrap();
        assert_eq!(w2.strands, 3);
        assert_eq!(w2.letters.len(), 4);
        let mut signs: Vec<i8> = w2.letters.iter().map(|&(_, s)| s).collect();
        signs.sort();
        assert_eq!(signs, vec![-1, -1, 1, 1]);
    }
}
