//! Seifert matrices, signatures, and determinants.
//!
//! The Seifert surface is taken from the braid form of each connected
//! piece: one disc per strand, one half-twisted band per letter. The
//! homology basis has one loop for every pair of consecutive occurrences
//! of a generator, and the pushoff linking numbers follow the band-sharing
//! and interleaving pattern of those loops. Split inputs contribute a
//! block-diagonal matrix padded with a zero row per extra piece (the tube
//! joining the pieces), which drives the determinant of split links to
//! zero while signatures add.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::braid::{to_braid, BraidWord};
use crate::bracket::MAX_CROSSINGS;
use crate::diagram::LinkDiagram;
use crate::error::InvariantError;
use crate::IntPoly;

/// Integer Seifert matrix of pushoff linking numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertMatrix {
    entries: Vec<Vec<i64>>,
}

impl SeifertMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    fn symmetrised(&self) -> Vec<Vec<BigInt>> {
        let n = self.size();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| BigInt::from(self.entries[i][j] + self.entries[j][i]))
                    .collect()
            })
            .collect()
    }

    /// Signature of `V + V^T` by exact congruence diagonalisation.
    pub fn signature(&self) -> i64 {
        let m: Vec<Vec<BigRational>> = self
            .symmetrised()
            .into_iter()
            .map(|row| row.into_iter().map(BigRational::from).collect())
            .collect();
        sym_signature(m)
    }

    /// `|det(V + V^T)|`.
    pub fn determinant(&self) -> BigInt {
        bareiss_det(self.symmetrised()).abs()
    }

    /// Conway potential `det(t^{1/2} V - t^{-1/2} V^T)` as a polynomial in
    /// `t` with half-integer exponents; equals the Conway polynomial under
    /// `z = t^{1/2} - t^{-1/2}` up to sign conventions of the basis.
    pub fn conway_potential(&self) -> IntPoly {
        let n = self.size();
        if n == 0 {
            return IntPoly::one();
        }
        // p(x) = det(xV - V^T) has degree <= n; interpolate from n+1 points
        let points: Vec<BigInt> = (0..=n as i64).map(BigInt::from).collect();
        let values: Vec<BigInt> = points
            .iter()
            .map(|x| {
                let m: Vec<Vec<BigInt>> = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| {
                                x * BigInt::from(self.entries[i][j])
                                    - BigInt::from(self.entries[j][i])
                            })
                            .collect()
                    })
                    .collect();
                bareiss_det(m)
            })
            .collect();
        let coeffs = interpolate_integer_poly(&points, &values);
        // x^k term becomes t^{k - n/2}: doubled exponent 2k - n
        let mut out = IntPoly::zero();
        for (k, c) in coeffs.into_iter().enumerate() {
            out.add_term(2 * k as i64 - n as i64, c);
        }
        out
    }
}

/// Seifert matrix of a braid word's closure surface.
pub fn matrix_from_braid(w: &BraidWord) -> SeifertMatrix {
    // occurrences per generator, in word order
    let mut occ: Vec<Vec<(usize, i8)>> = vec![Vec::new(); w.strands.max(1) - 1];
    for (pos, &(g, e)) in w.letters.iter().enumerate() {
        occ[g - 1].push((pos, e));
    }
    // basis loops: (generator, consecutive occurrence pair j, j+1)
    struct Loop {
        gen: usize,
        from: usize,
        to: usize,
        e_from: i8,
        e_to: i8,
    }
    let mut loops: Vec<Loop> = Vec::new();
    for (g, os) in occ.iter().enumerate() {
        for j in 0..os.len().saturating_sub(1) {
            loops.push(Loop {
                gen: g,
                from: os[j].0,
                to: os[j + 1].0,
                e_from: os[j].1,
                e_to: os[j + 1].1,
            });
        }
    }
    let n = loops.len();
    let mut v = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                v[i][i] = -(loops[i].e_from as i64 + loops[i].e_to as i64) / 2;
                continue;
            }
            let (a, b) = (&loops[i], &loops[j]);
            if a.gen == b.gen {
                // consecutive loops share a band
                if a.to == b.from {
                    // i sits directly before j; shared letter sign e
                    let e = a.e_to as i64;
                    v[i][j] = (e + 1) / 2;
                } else if b.to == a.from {
                    let e = a.e_from as i64;
                    v[i][j] = (e - 1) / 2;
                }
                continue;
            }
            if a.gen + 1 == b.gen {
                // interleaving with the next strand pair
                if a.from < b.from && b.from < a.to && a.to < b.to {
                    v[i][j] = INTERLEAVE_LOW_HIGH.0;
                } else if b.from < a.from && a.from < b.to && b.to < a.to {
                    v[i][j] = INTERLEAVE_HIGH_LOW.1;
                }
            } else if b.gen + 1 == a.gen {
                if b.from < a.from && a.from < b.to && b.to < a.to {
                    v[i][j] = INTERLEAVE_LOW_HIGH.1;
                } else if a.from < b.from && b.from < a.to && a.to < b.to {
                    v[i][j] = INTERLEAVE_HIGH_LOW.0;
                }
            }
        }
    }
    SeifertMatrix { entries: v }
}

// Pushoff linking values for interleaved loops on adjacent strand pairs:
// (lk(x+, y), lk(y+, x)) with x on the lower pair. The first constant is
// for the pattern where x starts first, the second where y starts first.
const INTERLEAVE_LOW_HIGH: (i64, i64) = (0, -1);
const INTERLEAVE_HIGH_LOW: (i64, i64) = (1, 0);

fn diagram_pieces(d: &LinkDiagram) -> Vec<LinkDiagram> {
    let groups = d.split_pieces();
    let arc_groups: Vec<Vec<usize>> = groups
        .iter()
        .filter(|g| g.iter().all(|&c| c < d.arc_components().len()))
        .cloned()
        .collect();
    let mut out: Vec<LinkDiagram> = arc_groups.iter().map(|g| d.sub_diagram(g, 0)).collect();
    for _ in 0..d.loops() {
        out.push(LinkDiagram::unknot());
    }
    out
}

/// Seifert matrix of an arbitrary diagram. Split pieces are joined by
/// tubes, contributing zero rows.
pub fn seifert_matrix(d: &LinkDiagram) -> Result<SeifertMatrix, InvariantError> {
    if d.crossing_count() > MAX_CROSSINGS {
        return Err(InvariantError::TooLarge(d.crossing_count(), MAX_CROSSINGS));
    }
    let pieces = diagram_pieces(d);
    let mats: Vec<SeifertMatrix> = pieces
        .iter()
        .map(|p| Ok(matrix_from_braid(&to_braid(p)?)))
        .collect::<Result<_, InvariantError>>()?;
    let total: usize = mats.iter().map(|m| m.size()).sum::<usize>() + pieces.len() - 1;
    let mut v = vec![vec![0i64; total]; total];
    let mut off = 0;
    for m in &mats {
        for i in 0..m.size() {
            for j in 0..m.size() {
                v[off + i][off + j] = m.entries[i][j];
            }
        }
        off += m.size();
    }
    Ok(SeifertMatrix { entries: v })
}

/// Link signature: signature of the symmetrised Seifert matrix.
pub fn signature(d: &LinkDiagram) -> Result<i64, InvariantError> {
    Ok(seifert_matrix(d)?.signature())
}

/// Link determinant `|det(V + V^T)|` (zero for split links).
pub fn determinant(d: &LinkDiagram) -> Result<BigInt, InvariantError> {
    Ok(seifert_matrix(d)?.determinant())
}

/// Signature of a symmetric rational matrix by congruence diagonalisation.
fn sym_signature(mut m: Vec<Vec<BigRational>>) -> i64 {
    let n = m.len();
    let mut sig = 0i64;
    let mut live: Vec<usize> = (0..n).collect();
    while let Some(&first) = live.first() {
        // prefer a nonzero diagonal pivot
        let pivot = live.iter().copied().find(|&i| !m[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                // all-diagonal-zero: find any nonzero off-diagonal entry and
                // transfer it onto the diagonal by a congruence row+column add
                let mut found = None;
                'outer: for &i in &live {
                    for &j in &live {
                        if i != j && !m[i][j].is_zero() {
                            found = Some((i, j));
                            break 'outer;
                        }
                    }
                }
                let Some((i, j)) = found else {
                    // remaining block is zero
                    break;
                };
                for k in 0..n {
                    let add = m[j][k].clone();
                    m[i][k] += add;
                }
                for k in 0..n {
                    let add = m[k][j].clone();
                    m[k][i] += add;
                }
                i
            }
        };
        let d = m[p][p].clone();
        if d.is_zero() {
            // should not happen; avoid infinite loop
            let _ = first;
            break;
        }
        sig += if d.is_positive() { 1 } else { -1 };
        let others: Vec<usize> = live.iter().copied().filter(|&i| i != p).collect();
        for &i in &others {
            if m[i][p].is_zero() {
                continue;
            }
            let f = &m[i][p] / &d;
            for k in 0..n {
                let sub = &f * &m[p][k];
                m[i][k] -= sub;
            }
            for k in 0..n {
                let sub = &f * &m[k][p];
                m[k][i] -= sub;
            }
        }
        live.retain(|&i| i != p);
    }
    sig
}

/// Fraction-free determinant of an integer matrix.
fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !m[i][k].is_zero());
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Lagrange interpolation with integer result coefficients.
fn interpolate_integer_poly(xs: &[BigInt], ys: &[BigInt]) -> Vec<BigInt> {
    let n = xs.len();
    let mut acc = vec![BigRational::zero(); n];
    for i in 0..n {
        // basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j)
        let mut num = vec![BigRational::one()];
        let mut den = BigRational::one();
        for j in 0..n {
            if j == i {
                continue;
            }
            let mut next = vec![BigRational::zero(); num.len() + 1];
            for (k, c) in num.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * BigRational::from(xs[j].clone());
            }
            num = next;
            den *= BigRational::from(xs[i].clone()) - BigRational::from(xs[j].clone());
        }
        let w = BigRational::from(ys[i].clone()) / den;
        for (k, c) in num.iter().enumerate() {
            acc[k] += c * &w;
        }
    }
    acc.into_iter()
        .map(|c| {
            assert!(c.is_integer(), "interpolation gave a non-integer coefficient");
            c.to_integer()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::closure_pd;
    use crate::skein::{alexander_from_conway, conway, normalize_units};

    fn braid(strands: usize, letters: &[i64]) -> BraidWord {
        BraidWord {
            strands,
            letters: letters
                .iter()
                .map(|&l| (l.unsigned_abs() as usize, if l > 0 { 1 } else { -1 }))
                .collect(),
        }
    }

    #[test]
    fn torus_two_strand_family() {
        // closure of sigma_1^n: sig = -(n-1), det = n
        for n in 2..=6 {
            let w = braid(2, &vec![1; n]);
            let m = matrix_from_braid(&w);
            assert_eq!(m.size(), n - 1);
            assert_eq!(m.signature(), -(n as i64 - 1), "T(2,{n})");
            assert_eq!(m.determinant(), BigInt::from(n), "T(2,{n})");
            // mirror braid
            let wm = braid(2, &vec![-1; n]);
            assert_eq!(matrix_from_braid(&wm).signature(), n as i64 - 1);
        }
    }

    #[test]
    fn figure_eight_from_braid() {
        let w = braid(3, &[1, -2, 1, -2]);
        let m = matrix_from_braid(&w);
        assert_eq!(m.size(), 2);
        assert_eq!(m.signature(), 0);
        assert_eq!(m.determinant(), BigInt::from(5));
    }

    #[test]
    fn conway_potential_matches_skein_conway() {
        let words: Vec<BraidWord> = vec![
            braid(2, &[1, 1, 1]),
            braid(2, &[-1, -1, -1]),
            braid(2, &[1, 1]),
            braid(2, &[1, 1, 1, 1]),
            braid(3, &[1, -2, 1, -2]),
            braid(3, &[1, 2, 1, 2, 1, 2, 1, 2]),
            braid(3, &[-1, 2, -1, 2, 2, 2]),
            braid(3, &[1, 1, 2, 2, 1, 2]),
            braid(4, &[1, 2, 3, 1, 2, 3]),
            braid(3, &[1, 1, -2, 1, -2, -2]),
        ];
        for w in &words {
            let d = closure_pd(w);
            let nabla = conway(&d).unwrap();
            let pot = matrix_from_braid(w).conway_potential();
            // z = t^{1/2} - t^{-1/2} substituted into the skein conway
            let zsub = &IntPoly::monomial(BigInt::one(), 1) - &IntPoly::monomial(BigInt::one(), -1);
            let expected = nabla.compose(&zsub).unwrap();
            assert_eq!(
                normalize_units(&pot),
                normalize_units(&expected),
                "word {:?}: potential {pot} vs conway {expected}",
                w.letters
            );
        }
    }

    #[test]
    fn t34_anchor() {
        // closure of (sigma_1 sigma_2)^4: det 3, signature -6,
        // alexander t^6 - t^5 + t^3 - t + 1
        let w = braid(3, &[1, 2, 1, 2, 1, 2, 1, 2]);
        let m = matrix_from_braid(&w);
        assert_eq!(m.determinant(), BigInt::from(3));
        assert_eq!(m.signature(), -6);
        let d = closure_pd(&w);
        let alex = alexander_from_conway(&conway(&d).unwrap());
        let expected = IntPoly::from_terms(
            [(12, 1), (10, -1), (6, 1), (2, -1), (0, 1)]
                .map(|(d, c): (i64, i64)| (d, BigInt::from(c))),
        );
        assert_eq!(alex, expected);
    }

    #[test]
    fn split_diagrams_have_zero_determinant() {
        let t = LinkDiagram::parse("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]").unwrap();
        let u = t.split_union(&LinkDiagram::unknot());
        let m = seifert_matrix(&u).unwrap();
        assert_eq!(m.determinant(), BigInt::zero());
        assert_eq!(m.signature().abs(), 2);
        assert_eq!(determinant(&LinkDiagram::unlink(2)).unwrap(), BigInt::zero());
        assert_eq!(signature(&LinkDiagram::unlink(2)).unwrap(), 0);
    }

    #[test]
    fn unknot_values() {
        assert_eq!(signature(&LinkDiagram::unknot()).unwrap(), 0);
        assert_eq!(determinant(&LinkDiagram::unknot()).unwrap(), BigInt::one());
    }
}
