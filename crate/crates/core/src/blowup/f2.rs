//! Exhaustive checks over F_2: no smooth cubic surface over F_2 has
//! Frobenius class c10, and plane cubics with a single rational point are
//! triangles of lines conjugate over F_8.
//!
//! The surface scan walks all 2^20 - 1 coefficient vectors in Gray-code
//! order. The values of F and its partials at every point of P^3 over F_2,
//! F_4, F_8 and F_16 are kept as bit planes, so each step is one XOR of the
//! flipped monomial's planes. A cubic surface has at most four isolated
//! singular points and otherwise a singular line or conic whose components
//! are defined over F_8 or F_4, so a singular point over F_8 or F_16 exists
//! whenever the surface is singular. Smooth surfaces are reduced, and their
//! counts N_1..N_4 fix the class.

use std::collections::HashMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{binary_split_degree, binary_squarefree, monomials, proj, Fe, Form, Gf};
use crate::error::{Error, Result};
use crate::surface::{count_points, is_smooth};
use crate::weyl::ClassId;
use crate::zeta::{candidates, TraceVector};

const NMONS: usize = 20;
/// Forms per parallel block; blocks are aggregated in index order.
const BLOCK: u32 = 1 << 14;
/// Every this many forms, the bit-sliced verdict is recomputed with the
/// general smoothness search and point counter.
pub const CROSS_CHECK_STRIDE: u32 = 1 << 12;

#[derive(Clone, Debug, Serialize)]
pub struct F2ScanReport {
    pub forms: u64,
    pub smooth: u64,
    /// Smooth surfaces per class, by class number.
    pub histogram: Vec<(String, u64)>,
    pub c10: u64,
    /// Smooth surfaces with exactly three F_2-points, which c10 would need.
    pub three_points: u64,
    pub three_points_histogram: Vec<(String, u64)>,
    /// Forms re-verified with the general algorithms.
    pub cross_checked: u64,
    pub elapsed_ms: u128,
}

struct FieldPlanes {
    k: usize,
    words: usize,
    /// 1 for F only, 5 for F and its four partials.
    polys: usize,
    offset: usize,
    valid: Vec<u64>,
}

impl FieldPlanes {
    fn at(&self, poly: usize, bit: usize) -> usize {
        self.offset + (poly * self.k + bit) * self.words
    }
}

struct Planes {
    fields: Vec<FieldPlanes>,
    len: usize,
    /// Per monomial, its contribution to every plane.
    mons: Vec<Vec<u64>>,
}

fn build_planes() -> Result<Planes> {
    let exps = monomials(4, 3);
    let mut fields = Vec::new();
    let mut len = 0;
    for (k, polys) in [(1usize, 1usize), (2, 1), (3, 5), (4, 5)] {
        let f = Gf::new(2, k as u32)?;
        let npts = proj::projective_size(f.order(), 3) as usize;
        let words = npts.div_ceil(64);
        let mut valid = vec![u64::MAX; words];
        if npts % 64 != 0 {
            valid[words - 1] = (1u64 << (npts % 64)) - 1;
        }
        fields.push(FieldPlanes { k, words, polys, offset: len, valid });
        len += polys * k * words;
    }
    let mut mons = vec![vec![0u64; len]; NMONS];
    for fp in &fields {
        let f = Gf::new(2, fp.k as u32)?;
        for (pi, pt) in proj::points(&f, 4).enumerate() {
            let (w, b) = (pi / 64, pi % 64);
            for (m, e) in exps.iter().enumerate() {
                let mut values = vec![monomial_value(&f, e, &pt, None)];
                if fp.polys == 5 {
                    values.extend((0..4).map(|i| monomial_value(&f, e, &pt, Some(i))));
                }
                for (poly, v) in values.into_iter().enumerate() {
                    for bit in 0..fp.k {
                        if v.index() >> bit & 1 == 1 {
                            mons[m][fp.at(poly, bit) + w] |= 1 << b;
                        }
                    }
                }
            }
        }
    }
    Ok(Planes { fields, len, mons })
}

/// Value of a monomial, or of its partial in variable `i`, at a point.
fn monomial_value(f: &Gf, e: &[u8], pt: &[Fe], partial: Option<usize>) -> Fe {
    let mut e = e.to_vec();
    if let Some(i) = partial {
        if e[i] % 2 == 0 {
            return Fe::ZERO;
        }
        e[i] -= 1;
    }
    (0..4).fold(f.one(), |acc, j| f.mul(acc, f.pow(pt[j], e[j] as u128)))
}

impl Planes {
    fn has_singular_point(&self, state: &[u64]) -> bool {
        self.fields.iter().filter(|fp| fp.polys == 5).any(|fp| {
            (0..fp.words).any(|w| {
                let mut nz = 0u64;
                for poly in 1..5 {
                    for bit in 0..fp.k {
                        nz |= state[fp.at(poly, bit) + w];
                    }
                }
                !nz & fp.valid[w] != 0
            })
        })
    }

    fn counts(&self, state: &[u64]) -> [u128; 4] {
        let mut out = [0u128; 4];
        for (d, fp) in self.fields.iter().enumerate() {
            out[d] = (0..fp.words)
                .map(|w| {
                    let nz = (0..fp.k).fold(0u64, |acc, bit| acc | state[fp.at(0, bit) + w]);
                    (!nz & fp.valid[w]).count_ones() as u128
                })
                .sum();
        }
        out
    }
}

fn gray(n: u32) -> u32 {
    n ^ (n >> 1)
}

/// The form whose coefficient vector (in `monomials(4, 3)` order) has bit
/// pattern `bits`.
pub fn f2_form(bits: u32) -> Form {
    let f = Gf::prime(2).expect("F_2");
    let coeffs = (0..NMONS).map(|m| if bits >> m & 1 == 1 { f.one() } else { Fe::ZERO }).collect();
    Form::new(&f, 4, 3, coeffs).expect("twenty coefficients")
}

fn class_of(counts: &[u128; 4]) -> Result<ClassId> {
    let traces = counts
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            let qd = 1i128 << (i + 1);
            let num = n as i128 - 1 - qd * qd;
            if num % qd != 0 {
                return Err(Error::Verification(format!("N_{} = {n} gives a non-integral trace", i + 1)));
            }
            Ok((num / qd) as i64)
        })
        .collect::<Result<Vec<_>>>()?;
    match candidates(&TraceVector { q: 2, traces: traces.clone() })[..] {
        [c] => Ok(c),
        ref other => Err(Error::Verification(format!("traces {traces:?} match {} classes", other.len()))),
    }
}

#[derive(Default)]
struct BlockTally {
    smooth: u64,
    by_class: [u64; 26],
    three_by_class: [u64; 26],
    cross_checked: u64,
}

fn cross_check(bits: u32, smooth: bool, counts: &[u128; 4]) -> Result<()> {
    let x = f2_form(bits);
    if is_smooth(&x)? != smooth {
        return Err(Error::Verification(format!("smoothness of form {bits:#x} disagrees with the search")));
    }
    for d in 1..=4u32 {
        let n = count_points(&x, d)?;
        if n != counts[d as usize - 1] {
            return Err(Error::Verification(format!("N_{d} of form {bits:#x}: planes {} vs counter {n}", counts[d as usize - 1])));
        }
    }
    Ok(())
}

fn scan_block(planes: &Planes, start: u32, end: u32, cache: &mut HashMap<[u128; 4], ClassId>) -> Result<BlockTally> {
    let mut t = BlockTally::default();
    let mut state = vec![0u64; planes.len];
    let g0 = gray(start);
    for (m, mon) in planes.mons.iter().enumerate() {
        if g0 >> m & 1 == 1 {
            state.iter_mut().zip(mon).for_each(|(s, &v)| *s ^= v);
        }
    }
    for n in start..end {
        if n > start {
            let mon = &planes.mons[n.trailing_zeros() as usize];
            state.iter_mut().zip(mon).for_each(|(s, &v)| *s ^= v);
        }
        if n == 0 {
            continue;
        }
        let smooth = !planes.has_singular_point(&state);
        let counts = if smooth || n % CROSS_CHECK_STRIDE == 0 { planes.counts(&state) } else { [0; 4] };
        if n % CROSS_CHECK_STRIDE == 0 {
            cross_check(gray(n), smooth, &counts)?;
            t.cross_checked += 1;
        }
        if !smooth {
            continue;
        }
        let c = match cache.get(&counts) {
            Some(&c) => c,
            None => {
                let c = class_of(&counts)?;
                cache.insert(counts, c);
                c
            }
        };
        t.smooth += 1;
        t.by_class[c.0 as usize] += 1;
        if counts[0] == 3 {
            t.three_by_class[c.0 as usize] += 1;
        }
    }
    Ok(t)
}

fn histogram(by_class: &[u64; 26]) -> Vec<(String, u64)> {
    (1..26).filter(|&c| by_class[c] > 0).map(|c| (ClassId(c as u8).to_string(), by_class[c])).collect()
}

/// Classifies every smooth cubic surface over F_2.
pub fn f2_scan() -> Result<F2ScanReport> {
    let started = Instant::now();
    let planes = build_planes()?;
    let total = 1u32 << NMONS;
    let tallies: Vec<BlockTally> = (0..total / BLOCK)
        .into_par_iter()
        .map(|b| scan_block(&planes, b * BLOCK, (b + 1) * BLOCK, &mut HashMap::new()))
        .collect::<Result<_>>()?;
    let mut all = BlockTally::default();
    for t in &tallies {
        all.smooth += t.smooth;
        all.cross_checked += t.cross_checked;
        for c in 0..26 {
            all.by_class[c] += t.by_class[c];
            all.three_by_class[c] += t.three_by_class[c];
        }
    }
    let hist_sum: u64 = all.by_class.iter().sum();
    if hist_sum != all.smooth {
        return Err(Error::Verification("the class histogram does not sum to the smooth count".into()));
    }
    Ok(F2ScanReport {
        forms: total as u64 - 1,
        smooth: all.smooth,
        histogram: histogram(&all.by_class),
        c10: all.by_class[10],
        three_points: all.three_by_class.iter().sum(),
        three_points_histogram: histogram(&all.three_by_class),
        cross_checked: all.cross_checked,
        elapsed_ms: started.elapsed().as_millis(),
    })
}

/// x^2 y + y^2 z + z^2 x + (xy + xz + yz) t + t^3, the only shape a c10
/// surface over F_2 could take.
pub fn f2_normal_form() -> Form {
    let f = Gf::prime(2).expect("F_2");
    Form::from_terms(
        &f,
        4,
        3,
        &[
            (&[2, 1, 0, 0], 1),
            (&[0, 2, 1, 0], 1),
            (&[1, 0, 2, 0], 1),
            (&[1, 1, 0, 1], 1),
            (&[1, 0, 1, 1], 1),
            (&[0, 1, 1, 1], 1),
            (&[0, 0, 0, 3], 1),
        ],
    )
}

/// Those points (a : a^2 : a^4 : 1), a in F_8 \ F_2, at which the normal
/// form is singular. They are the Frobenius orbit of a root of x^3 + x + 1.
pub fn f2_normal_form_singular_points() -> Result<Vec<Vec<Fe>>> {
    let f8 = Gf::new(2, 3)?;
    let x = f2_normal_form().over(&f8)?;
    let grad = x.gradient();
    let mut out = Vec::new();
    for a in f8.elements().filter(|&a| f8.element_degree(a) == 3) {
        let p = vec![a, f8.pow(a, 2), f8.pow(a, 4), f8.one()];
        if x.eval(&p).is_zero() && grad.iter().all(|g| g.eval(&p).is_zero()) {
            out.push(p);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct OnePointReport {
    pub forms: u64,
    /// Cubics with exactly one F_2-point, that point being singular.
    pub filtered: u64,
    /// Those which are three lines through the point, conjugate over F_8.
    pub triangles: u64,
    /// Coefficient patterns of filtered cubics that are not.
    pub counterexamples: Vec<u32>,
    pub example: Option<String>,
}

/// A matrix in GL_3(F_2) whose last column is `p`.
fn moving_matrix(f: &Gf, p: &[Fe]) -> Vec<Vec<Fe>> {
    let basis: Vec<Vec<Fe>> = (0..3)
        .map(|i| (0..3).map(|j| if i == j { f.one() } else { Fe::ZERO }).collect())
        .collect();
    let pivot = p.iter().position(|c| !c.is_zero()).expect("nonzero point");
    let others: Vec<&Vec<Fe>> = basis.iter().enumerate().filter(|&(i, _)| i != pivot).map(|(_, e)| e).collect();
    (0..3).map(|r| vec![others[0][r], others[1][r], p[r]]).collect()
}

/// Every ternary cubic over F_2 with one F_2-point, singular, splits into
/// three lines conjugate over F_8.
pub fn f2_one_point_cubics() -> Result<OnePointReport> {
    let f = Gf::prime(2)?;
    let nm = monomials(3, 3).len();
    let pts: Vec<Vec<Fe>> = proj::points(&f, 3).collect();
    let mut report = OnePointReport { forms: 0, filtered: 0, triangles: 0, counterexamples: Vec::new(), example: None };
    for bits in 1u32..1 << nm {
        report.forms += 1;
        let coeffs = (0..nm).map(|m| if bits >> m & 1 == 1 { f.one() } else { Fe::ZERO }).collect();
        let c = Form::new(&f, 3, 3, coeffs)?;
        let zeros: Vec<&Vec<Fe>> = pts.iter().filter(|p| c.eval(p).is_zero()).collect();
        let [p] = zeros[..] else { continue };
        if !c.gradient().iter().all(|g| g.eval(p).is_zero()) {
            continue;
        }
        report.filtered += 1;
        // With the point at (0:0:1), c = z Q(x, y) + K(x, y).
        let moved = c.substitute(&moving_matrix(&f, p));
        let q_part = (0..=2u8).any(|i| !moved.coeff(&[2 - i, i, 1]).is_zero());
        let k: Vec<Fe> = (0..=3u8).map(|i| moved.coeff(&[3 - i, i, 0])).collect();
        let ok = !q_part && binary_squarefree(&f, &k) && binary_split_degree(&f, &k)? == 3;
        if ok {
            report.triangles += 1;
            report.example.get_or_insert_with(|| c.display(&crate::surface::PLANE_VARS));
        } else {
            report.counterexamples.push(bits);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{certify_smooth, count_naive};

    fn planes_for(planes: &Planes, bits: u32) -> Vec<u64> {
        let mut state = vec![0u64; planes.len];
        for (m, mon) in planes.mons.iter().enumerate() {
            if bits >> m & 1 == 1 {
                state.iter_mut().zip(mon).for_each(|(s, &v)| *s ^= v);
            }
        }
        state
    }

    #[test]
    fn planes_agree_with_direct_evaluation() {
        let planes = build_planes().unwrap();
        // Fermat, a sparse singular form, and a few dense ones.
        let fermat = (0..NMONS as u32)
            .filter(|&m| monomials(4, 3)[m as usize].contains(&3))
            .fold(0, |acc, m| acc | 1 << m);
        for bits in [fermat, 1, 0b1011_0110_1100_0011_0101, 0xF0F0F, 0x5A5A5] {
            let state = planes_for(&planes, bits);
            let x = f2_form(bits);
            let smooth = !planes.has_singular_point(&state);
            assert_eq!(smooth, is_smooth(&x).unwrap(), "{bits:#x}");
            let counts = planes.counts(&state);
            for d in 1..=3u32 {
                assert_eq!(counts[d as usize - 1], count_naive(&x, d).unwrap(), "{bits:#x} d={d}");
            }
        }
    }

    #[test]
    fn gray_steps_flip_one_monomial() {
        for n in 1..1000u32 {
            assert_eq!((gray(n) ^ gray(n - 1)).count_ones(), 1);
            assert_eq!(gray(n) ^ gray(n - 1), 1 << n.trailing_zeros());
        }
    }

    #[test]
    fn normal_form_is_singular_at_the_f8_points() {
        let pts = f2_normal_form_singular_points().unwrap();
        let f8 = Gf::new(2, 3).unwrap();
        let xi = f8.generator();
        assert_eq!(pts.len(), 3);
        assert!(pts.contains(&vec![xi, f8.pow(xi, 2), f8.pow(xi, 4), f8.one()]));
        assert!(matches!(certify_smooth(&f2_normal_form()), Err(Error::Degenerate(_))));
    }

    #[test]
    fn one_point_cubics_are_f8_triangles() {
        let r = f2_one_point_cubics().unwrap();
        assert_eq!(r.forms, 1023);
        assert!(r.filtered > 0);
        assert_eq!(r.triangles, r.filtered);
        assert!(r.counterexamples.is_empty());
    }

    #[test]
    fn x3_xy2_y3_is_a_triangle_over_f8() {
        let f = Gf::prime(2).unwrap();
        let k = [f.one(), Fe::ZERO, f.one(), f.one()];
        assert!(binary_squarefree(&f, &k));
        assert_eq!(binary_split_degree(&f, &k).unwrap(), 3);
    }

    #[test]
    fn moving_matrix_sends_the_last_basis_vector_to_p() {
        let f = Gf::prime(2).unwrap();
        for p in proj::points(&f, 3) {
            let m = moving_matrix(&f, &p);
            let col: Vec<Fe> = (0..3).map(|r| m[r][2]).collect();
            assert_eq!(col, p);
            let det = crate::algebra::det3(&f, &m[0], &m[1], &m[2]);
            assert!(!det.is_zero());
        }
    }
}
