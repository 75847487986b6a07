//! Biquandle colorings of link diagrams and the counting invariant Φ_X^Z,
//! plus braid-coloring transfer over Z_k[t^{±1}]/(1−t)².
//!
//! At a positive crossing with under-in color x and over-in color y the
//! outgoing colors are under-out = x ⊳̲ y and over-out = y ⊳̄ x, the sideways
//! image S(x, y). Negative crossings impose the inverse relation.

use crate::algebra::{Elt, FiniteBiquandle};
use crate::links::{BraidWord, LinkDiagram, LinkError};

/// One coloring: an element per semiarc. Free loops are not materialized;
/// they multiply counts by |X| each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    pub color_of: Vec<Elt>,
}

/// Enumerates all colorings of `d` by `X`, in lexicographic order of the
/// color vector. Free loops are not included in the vectors; use
/// `counting_invariant` for the full count.
pub fn enumerate_colorings(d: &LinkDiagram, x: &FiniteBiquandle) -> Vec<Coloring> {
    let n = d.semiarc_count();
    if d.crossings().is_empty() {
        return vec![Coloring { color_of: Vec::new() }];
    }
    let mut solver = Solver {
        diagram: d,
        bq: x,
        color: vec![usize::MAX; n],
        out: Vec::new(),
    };
    solver.search();
    solver.out
}

/// Φ_X^Z: the number of colorings, free loops contributing a factor |X| each.
pub fn counting_invariant(d: &LinkDiagram, x: &FiniteBiquandle) -> u64 {
    let base = enumerate_colorings(d, x).len() as u64;
    base * (x.size() as u64).pow(d.free_loops() as u32)
}

struct Solver<'a> {
    diagram: &'a LinkDiagram,
    bq: &'a FiniteBiquandle,
    color: Vec<usize>,
    out: Vec<Coloring>,
}

impl<'a> Solver<'a> {
    /// Propagates crossing relations to a fixpoint. Returns the list of newly
    /// assigned semiarcs, or None on contradiction (after rolling back).
    fn propagate(&mut self) -> Option<Vec<usize>> {
        let mut newly = Vec::new();
        let mut changed = true;
        while changed {
            changed = false;
            for c in self.diagram.crossings() {
                let (src, dst) = if c.sign > 0 {
                    ((c.under_in, c.over_in), (c.over_out, c.under_out))
                } else {
                    ((c.under_out, c.over_out), (c.over_in, c.under_in))
                };
                // forward: S(src) = dst; backward: S⁻¹(dst) = src
                let derived: Option<[(usize, Elt); 2]> =
                    if self.color[src.0] != usize::MAX && self.color[src.1] != usize::MAX {
                        let (oo, uo) = self.bq.sideways(self.color[src.0], self.color[src.1]);
                        Some([(dst.0, oo), (dst.1, uo)])
                    } else if self.color[dst.0] != usize::MAX && self.color[dst.1] != usize::MAX {
                        let (ui, oi) = self.bq.sideways_inv(self.color[dst.0], self.color[dst.1]);
                        Some([(src.0, ui), (src.1, oi)])
                    } else {
                        None
                    };
                if let Some(assignments) = derived {
                    for (s, v) in assignments {
                        if self.color[s] == usize::MAX {
                            self.color[s] = v;
                            newly.push(s);
                            changed = true;
                        } else if self.color[s] != v {
                            for &k in &newly {
                                self.color[k] = usize::MAX;
                            }
                            return None;
                        }
                    }
                }
            }
        }
        Some(newly)
    }

    fn search(&mut self) {
        let seed = match self.color.iter().position(|&c| c == usize::MAX) {
            Some(s) => s,
            None => {
                if self.consistent() {
                    self.out.push(Coloring { color_of: self.color.clone() });
                }
                return;
            }
        };
        for v in 0..self.bq.size() {
            self.color[seed] = v;
            if let Some(newly) = self.propagate() {
                self.search();
                for k in newly {
                    self.color[k] = usize::MAX;
                }
            }
            self.color[seed] = usize::MAX;
        }
    }

    fn consistent(&self) -> bool {
        self.diagram.crossings().iter().all(|c| {
            let (src, dst) = if c.sign > 0 {
                ((c.under_in, c.over_in), (c.over_out, c.under_out))
            } else {
                ((c.under_out, c.over_out), (c.over_in, c.under_in))
            };
            self.bq.sideways(self.color[src.0], self.color[src.1])
                == (self.color[dst.0], self.color[dst.1])
        })
    }
}

// ------------------------------------------------------------------
// braid transfer over Z_k[t^{±1}]/(1−t)^2

/// A color a + b(1−t) in Z_k[t^{±1}]/(1−t)², as the pair (a, b).
/// With modulus 0 the coefficients are exact integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairColor {
    pub a: i64,
    pub b: i64,
}

impl PairColor {
    pub fn new(a: i64, b: i64) -> Self {
        PairColor { a, b }
    }

    pub fn reduce(self, modulus: u64) -> Self {
        if modulus == 0 {
            self
        } else {
            let m = modulus as i64;
            PairColor { a: self.a.rem_euclid(m), b: self.b.rem_euclid(m) }
        }
    }

    /// Quandle operation x ⊳ y = tx + (1−t)y, which in pair encoding is
    /// (a,b) ⊳ (c,d) = (a, b − a + c).
    pub fn op(self, other: PairColor, modulus: u64) -> PairColor {
        PairColor { a: self.a, b: self.b - self.a + other.a }.reduce(modulus)
    }

    /// Inverse operation: the unique z with z ⊳ y = self.
    pub fn op_inv(self, other: PairColor, modulus: u64) -> PairColor {
        PairColor { a: self.a, b: self.b + self.a - other.a }.reduce(modulus)
    }
}

/// Colors of the strand tops/bottoms of a braid over Z_k[t^{±1}]/(1−t)².
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferState {
    pub colors: Vec<PairColor>,
}

/// Applies the braid word to a top color vector: σ_i sends
/// (…, x_i, x_{i+1}, …) to (…, x_{i+1}, x_i ⊳ x_{i+1}, …); σ_i^{-1} is the
/// inverse. Modulus 0 computes with exact integer coefficients.
pub fn braid_transfer(
    w: &BraidWord,
    top: &TransferState,
    modulus: u64,
) -> Result<TransferState, LinkError> {
    if top.colors.len() != w.strands {
        return Err(LinkError::Parse {
            pos: 0,
            msg: format!("state has {} colors for {} strands", top.colors.len(), w.strands),
        });
    }
    let mut v: Vec<PairColor> = top.colors.iter().map(|c| c.reduce(modulus)).collect();
    for &l in &w.letters {
        let i = l.unsigned_abs() as usize - 1;
        if l > 0 {
            let (xi, xj) = (v[i], v[i + 1]);
            v[i] = xj;
            v[i + 1] = xi.op(xj, modulus);
        } else {
            // inverse of (x, y) ↦ (y, x ⊳ y)
            let (yi, yj) = (v[i], v[i + 1]);
            v[i] = yj.op_inv(yi, modulus);
            v[i + 1] = yi;
        }
    }
    Ok(TransferState { colors: v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_alexander_biquandle, make_trivial};
    use crate::links::{braid_closure, parse_pd, BraidWord, LinkDiagram};

    fn braid(strands: usize, letters: &[i32]) -> LinkDiagram {
        braid_closure(&BraidWord::new(strands, letters.to_vec()).unwrap())
    }

    /// Example 6.4-style 4-element quasi-trivial biquandle used across tests.
    pub fn paper_four_element() -> FiniteBiquandle {
        FiniteBiquandle::from_table_text(
            "4\n1 1 1 1 1 1 2 2\n2 2 2 2 2 2 1 1\n4 4 3 3 4 4 3 3\n3 3 4 4 3 3 4 4\n",
        )
        .unwrap()
    }

    #[test]
    fn hopf_and_torus_counts() {
        let x = paper_four_element();
        assert_eq!(counting_invariant(&braid(2, &[1, 1]), &x), 8);
        assert_eq!(counting_invariant(&braid(2, &[1, 1, 1, 1]), &x), 16);
    }

    #[test]
    fn unlink_counts() {
        let x = paper_four_element();
        assert_eq!(counting_invariant(&LinkDiagram::unlink(3), &x), 64);
        assert_eq!(counting_invariant(&LinkDiagram::unlink(2), &x), 16);
    }

    #[test]
    fn borromean_count() {
        let x = paper_four_element();
        assert_eq!(counting_invariant(&braid(3, &[1, -2, 1, -2, 1, -2]), &x), 64);
    }

    #[test]
    fn trefoil_trivial_quandle() {
        // colors constant per component: n colorings
        for n in [2, 3, 5] {
            let x = make_trivial(n);
            assert_eq!(counting_invariant(&braid(2, &[1, 1, 1]), &x), n as u64);
        }
    }

    #[test]
    fn count_is_presentation_invariant() {
        let x = paper_four_element();
        let presentations = [
            braid(2, &[1, 1]),
            braid(3, &[1, 1, 2]),
            braid(3, &[1, 1, -2]),
            braid(2, &[1, 1, -1, 1]),
            parse_pd("PD[X(4,1,3,2), X(2,3,1,4)]").unwrap(),
        ];
        let counts: Vec<u64> = presentations.iter().map(|d| counting_invariant(d, &x)).collect();
        assert!(counts.windows(2).all(|w| w[0] == w[1]), "counts {counts:?}");
    }

    #[test]
    fn count_is_orientation_stable_for_quandles() {
        // quandle colorings do not depend on orientation
        let x = make_alexander_biquandle(4, 1, 3).unwrap();
        let d = braid(2, &[1, 1, 1, 1]);
        let c0 = counting_invariant(&d, &x);
        for dd in d.enumerate_orientations() {
            assert_eq!(counting_invariant(&dd, &x), c0);
        }
    }

    #[test]
    fn transfer_sigma1_squared() {
        // § torus-link example: top (0, 1) ↦ bottom (1−t, t)
        for k in [2u64, 3, 5, 8] {
            let w = BraidWord::new(2, vec![1, 1]).unwrap();
            let top = TransferState {
                colors: vec![PairColor::new(0, 0), PairColor::new(1, 0)],
            };
            let bottom = braid_transfer(&w, &top, k).unwrap();
            // 1 − t = (0, 1); t = 1 − (1 − t) = (1, k−1)
            assert_eq!(bottom.colors[0], PairColor::new(0, 1));
            assert_eq!(bottom.colors[1], PairColor::new(1, k as i64 - 1));
        }
    }

    #[test]
    fn transfer_empty_word_is_identity() {
        let w = BraidWord::new(3, vec![]).unwrap();
        let top = TransferState {
            colors: vec![PairColor::new(1, 2), PairColor::new(0, 1), PairColor::new(2, 0)],
        };
        assert_eq!(braid_transfer(&w, &top, 3).unwrap(), top);
    }

    #[test]
    fn transfer_sigma_2k_is_identity_mod_k() {
        for k in 2..=6u64 {
            let w = BraidWord::new(2, vec![1; 2 * k as usize]).unwrap();
            for a in 0..k as i64 {
                for b in 0..k as i64 {
                    let top = TransferState {
                        colors: vec![PairColor::new(a, b), PairColor::new(b, a)],
                    };
                    let bottom = braid_transfer(&w, &top, k).unwrap();
                    assert_eq!(bottom, top, "sigma^2k is the identity mod {k}");
                }
            }
        }
    }

    #[test]
    fn transfer_inverse_letters_cancel() {
        let w = BraidWord::new(2, vec![1, -1]).unwrap();
        let top = TransferState {
            colors: vec![PairColor::new(2, 1), PairColor::new(0, 3)],
        };
        assert_eq!(braid_transfer(&w, &top, 5).unwrap(), top);
    }

    #[test]
    fn transfer_strand_mismatch() {
        let w = BraidWord::new(3, vec![1]).unwrap();
        let top = TransferState { colors: vec![PairColor::new(0, 0)] };
        assert!(braid_transfer(&w, &top, 3).is_err());
    }
}
