//! Rolfsen-style link names: `3_1`, `2^2_1`, postfix `'` (one component
//! reversed) and `!` (mirror), infix `#` (connected sum) and `U` (split
//! union). Postfix decorations bind tighter than the infix joiners.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::NameError;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct BaseName {
    /// Crossing number of the table name.
    pub crossings: u32,
    /// Component-count superscript; `None` for knots.
    pub comps: Option<u32>,
    /// Table index subscript.
    pub index: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct DecoratedBase {
    pub base: BaseName,
    /// Orientation of one component reversed.
    pub prime: bool,
    /// Mirror image.
    pub mirror: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Joiner {
    Sum,
    Union,
}

/// A full link name: one or more decorated bases joined by `#` or `U`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LinkName {
    pub first: DecoratedBase,
    pub rest: Vec<(Joiner, DecoratedBase)>,
}

impl LinkName {
    pub fn parse(text: &str) -> Result<LinkName, NameError> {
        let text = text.trim();
        if text.is_empty() {
            return Err(NameError::MalformedName("empty name".into()));
        }
        let mut parts: Vec<(Option<Joiner>, &str)> = Vec::new();
        let mut start = 0usize;
        for (i, ch) in text.char_indices() {
            if ch == '#' || ch == 'U' {
                parts.push((None, &text[start..i]));
                let j = if ch == '#' { Joiner::Sum } else { Joiner::Union };
                if let Some(last) = parts.last_mut() {
                    last.0 = Some(j);
                }
                start = i + 1;
            }
        }
        parts.push((None, &text[start..]));
        let mut bases = Vec::new();
        let mut joiners = Vec::new();
        for (j, p) in &parts {
            bases.push(parse_decorated(p.trim(), text)?);
            if let Some(j) = j {
                joiners.push(*j);
            }
        }
        let first = bases.remove(0);
        let rest = joiners.into_iter().zip(bases).collect();
        Ok(LinkName { first, rest })
    }

    pub fn bases(&self) -> impl Iterator<Item = &DecoratedBase> {
        std::iter::once(&self.first).chain(self.rest.iter().map(|(_, b)| b))
    }

    /// Number of components implied by the name.
    pub fn mu(&self) -> u32 {
        let mut mu = self.first.base.comps.unwrap_or(1);
        for (j, b) in &self.rest {
            let m = b.base.comps.unwrap_or(1);
            mu += match j {
                Joiner::Sum => m - 1,
                Joiner::Union => m,
            };
        }
        mu
    }

    /// Sum of the factors' crossing numbers: the minimal crossing number
    /// proxy used by the pathway constraints.
    pub fn crossing_number(&self) -> u32 {
        self.bases().map(|b| b.base.crossings).sum()
    }

    /// Mirror image: `!` toggled on every factor.
    pub fn mirrored(&self) -> LinkName {
        let flip = |b: &DecoratedBase| DecoratedBase { mirror: !b.mirror, ..*b };
        LinkName {
            first: flip(&self.first),
            rest: self.rest.iter().map(|(j, b)| (*j, flip(b))).collect(),
        }
    }

    pub fn is_single_base(&self) -> bool {
        self.rest.is_empty()
    }

    pub fn render(&self) -> String {
        let mut s = render_decorated(&self.first);
        for (j, b) in &self.rest {
            s.push(match j {
                Joiner::Sum => '#',
                Joiner::Union => 'U',
            });
            s.push_str(&render_decorated(b));
        }
        s
    }
}

fn parse_decorated(text: &str, whole: &str) -> Result<DecoratedBase, NameError> {
    let err = || NameError::MalformedName(whole.to_string());
    let mut core = text;
    let mut prime = false;
    let mut mirror = false;
    loop {
        if let Some(rest) = core.strip_suffix('\'') {
            prime = !prime;
            core = rest;
        } else if let Some(rest) = core.strip_suffix('!') {
            mirror = !mirror;
            core = rest;
        } else {
            break;
        }
    }
    // <n>_<i> or <n>^<c>_<i>
    let (head, index) = core.rsplit_once('_').ok_or_else(err)?;
    let index: u32 = index.parse().map_err(|_| err())?;
    if index == 0 {
        return Err(err());
    }
    let (crossings, comps) = match head.split_once('^') {
        Some((n, c)) => {
            let c: u32 = c.parse().map_err(|_| err())?;
            if c < 1 {
                return Err(err());
            }
            (n.parse().map_err(|_| err())?, Some(c))
        }
        None => (head.parse().map_err(|_| err())?, None),
    };
    if prime && comps.unwrap_or(1) < 2 {
        return Err(NameError::MalformedName(format!(
            "{whole}: ' requires at least two components"
        )));
    }
    Ok(DecoratedBase { base: BaseName { crossings, comps, index }, prime, mirror })
}

fn render_decorated(b: &DecoratedBase) -> String {
    let mut s = match b.base.comps {
        Some(c) => format!("{}^{}_{}", b.base.crossings, c, b.base.index),
        None => format!("{}_{}", b.base.crossings, b.base.index),
    };
    if b.prime {
        s.push('\'');
    }
    if b.mirror {
        s.push('!');
    }
    s
}

impl fmt::Display for LinkName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Debug for LinkName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl std::str::FromStr for LinkName {
    type Err = NameError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LinkName::parse(s)
    }
}

/// Component counts along a pathway; adjacent entries differ by one.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComponentSequence {
    counts: Vec<u32>,
}

impl ComponentSequence {
    pub fn new(counts: Vec<u32>) -> Option<ComponentSequence> {
        if counts.is_empty() || counts.iter().any(|&c| c == 0) {
            return None;
        }
        for w in counts.windows(2) {
            if w[0].abs_diff(w[1]) != 1 {
                return None;
            }
        }
        Some(ComponentSequence { counts })
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub(crate) fn counts_mut(&mut self) -> &mut Vec<u32> {
        &mut self.counts
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(s: &str) -> LinkName {
        LinkName::parse(s).unwrap()
    }

    #[test]
    fn parse_simple_names() {
        let t = n("3_1!");
        assert_eq!(t.first.base, BaseName { crossings: 3, comps: None, index: 1 });
        assert!(t.first.mirror);
        assert!(!t.first.prime);

        let l = n("2^2_1'");
        assert_eq!(l.first.base, BaseName { crossings: 2, comps: Some(2), index: 1 });
        assert!(l.first.prime);
        assert_eq!(l.mu(), 2);
    }

    #[test]
    fn parse_composites() {
        let s = n("3_1#2^2_1");
        assert_eq!(s.rest.len(), 1);
        assert_eq!(s.mu(), 2);
        assert_eq!(s.crossing_number(), 5);

        let u = n("0_1U2^2_1");
        assert_eq!(u.mu(), 3);
        assert_eq!(u.rest[0].0, Joiner::Union);

        let m = n("3_1!#2^2_1'");
        assert!(m.first.mirror);
        assert!(m.rest[0].1.prime);
    }

    #[test]
    fn decorations_normalise() {
        assert_eq!(n("3_1!!"), n("3_1"));
        assert_eq!(n("2^2_1''"), n("2^2_1"));
        assert_eq!(n("2^2_1'!"), n("2^2_1!'"));
        assert_eq!(n("2^2_1'!").render(), "2^2_1'!");
    }

    #[test]
    fn bad_names_rejected() {
        for bad in ["", "3_0", "banana", "3^0_1", "_1", "3_1'", "3_"] {
            assert!(LinkName::parse(bad).is_err(), "{bad} should fail");
        }
    }

    #[test]
    fn round_trip() {
        for s in ["0_1", "3_1!", "2^2_1'", "3_1!#2^2_1", "0_1U2^2_1", "6^2_3'!"] {
            assert_eq!(n(s).render(), s);
            assert_eq!(n(&n(s).render()), n(s));
        }
    }

    #[test]
    fn mirror_is_involution() {
        let x = n("3_1!#2^2_1'");
        assert_eq!(x.mirrored().mirrored(), x);
        assert_eq!(x.mirrored().render(), "3_1#2^2_1'!");
    }

    #[test]
    fn component_sequences_validate() {
        assert!(ComponentSequence::new(vec![1, 2, 1]).is_some());
        assert!(ComponentSequence::new(vec![1, 3]).is_none());
        assert!(ComponentSequence::new(vec![]).is_none());
        assert!(ComponentSequence::new(vec![1, 0]).is_none());
    }
}
