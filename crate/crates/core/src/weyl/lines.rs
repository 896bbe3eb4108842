//! The 27 lines, the Picard lattice of the blowup of P^2 in six points, and
//! permutations of the lines.

use std::fmt;

use crate::error::{Error, Result};

/// Coefficients in the basis L, E1, ..., E6 of Pic.
pub type PicVec = [i64; 7];

/// Intersection pairing with signature (+1, -1^6).
pub fn pairing(a: &PicVec, b: &PicVec) -> i64 {
    a[0] * b[0] - (1..7).map(|i| a[i] * b[i]).sum::<i64>()
}

/// The canonical class K = -3L + E1 + ... + E6.
pub const CANONICAL: PicVec = [-3, 1, 1, 1, 1, 1, 1];

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LineLabel {
    /// Exceptional curve over the i-th point, 1-based.
    E(u8),
    /// Strict transform of the line through points i < j.
    L(u8, u8),
    /// Strict transform of the conic through all points but j.
    Q(u8),
}

const PAIRS: [(u8, u8); 15] = [
    (1, 2), (1, 3), (1, 4), (1, 5), (1, 6),
    (2, 3), (2, 4), (2, 5), (2, 6),
    (3, 4), (3, 5), (3, 6),
    (4, 5), (4, 6),
    (5, 6),
];

impl LineLabel {
    /// Index in 0..27: E1..E6, then L12..L56 in lexicographic order, then
    /// Q1..Q6.
    pub fn index(self) -> usize {
        match self {
            LineLabel::E(i) => i as usize - 1,
            LineLabel::L(i, j) => 6 + PAIRS.iter().position(|&p| p == (i, j)).expect("i < j"),
            LineLabel::Q(i) => 21 + i as usize - 1,
        }
    }

    pub fn from_index(k: usize) -> LineLabel {
        match k {
            0..=5 => LineLabel::E(k as u8 + 1),
            6..=20 => {
                let (i, j) = PAIRS[k - 6];
                LineLabel::L(i, j)
            }
            21..=26 => LineLabel::Q((k - 21) as u8 + 1),
            _ => panic!("line index {k} out of range"),
        }
    }

    /// `L(i, j)` with the indices put in order.
    pub fn line(i: u8, j: u8) -> LineLabel {
        LineLabel::L(i.min(j), i.max(j))
    }

    pub fn all() -> impl Iterator<Item = LineLabel> {
        (0..27).map(LineLabel::from_index)
    }

    pub fn class(self) -> PicVec {
        let mut v = [0i64; 7];
        match self {
            LineLabel::E(i) => v[i as usize] = 1,
            LineLabel::L(i, j) => {
                v[0] = 1;
                v[i as usize] = -1;
                v[j as usize] = -1;
            }
            LineLabel::Q(j) => {
                v = [2, -1, -1, -1, -1, -1, -1];
                v[j as usize] = 0;
            }
        }
        v
    }

    pub fn from_class(v: &PicVec) -> Option<LineLabel> {
        LineLabel::all().find(|l| &l.class() == v)
    }
}

impl fmt::Display for LineLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LineLabel::E(i) => write!(f, "E{i}"),
            LineLabel::L(i, j) => write!(f, "L{i}{j}"),
            LineLabel::Q(i) => write!(f, "Q{i}"),
        }
    }
}

pub fn intersection_number(a: LineLabel, b: LineLabel) -> i64 {
    pairing(&a.class(), &b.class())
}

/// A permutation of the 27 lines: `map[i]` is the index of the image of line
/// `i`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinePerm {
    pub map: [u8; 27],
}

impl LinePerm {
    pub fn identity() -> LinePerm {
        let mut map = [0u8; 27];
        for (i, m) in map.iter_mut().enumerate() {
            *m = i as u8;
        }
        LinePerm { map }
    }

    pub fn apply(&self, l: LineLabel) -> LineLabel {
        LineLabel::from_index(self.map[l.index()] as usize)
    }

    /// `self` after `other`: x -> self(other(x)).
    pub fn compose(&self, other: &LinePerm) -> LinePerm {
        let mut map = [0u8; 27];
        for (i, m) in map.iter_mut().enumerate() {
            *m = self.map[other.map[i] as usize];
        }
        LinePerm { map }
    }

    pub fn inverse(&self) -> LinePerm {
        let mut map = [0u8; 27];
        for (i, &m) in self.map.iter().enumerate() {
            map[m as usize] = i as u8;
        }
        LinePerm { map }
    }

    pub fn pow(&self, n: u64) -> LinePerm {
        let mut r = LinePerm::identity();
        for _ in 0..n {
            r = self.compose(&r);
        }
        r
    }

    pub fn is_identity(&self) -> bool {
        *self == LinePerm::identity()
    }

    pub fn order(&self) -> u64 {
        let mut g = *self;
        let mut n = 1;
        while !g.is_identity() {
            g = self.compose(&g);
            n += 1;
        }
        n
    }

    /// The permutation induced by a permutation `sigma` of the six points
    /// (`sigma[i-1]` is the image of `i`).
    pub fn from_point_perm(sigma: [u8; 6]) -> LinePerm {
        let s = |i: u8| sigma[i as usize - 1];
        let mut map = [0u8; 27];
        for l in LineLabel::all() {
            let img = match l {
                LineLabel::E(i) => LineLabel::E(s(i)),
                LineLabel::L(i, j) => LineLabel::line(s(i), s(j)),
                LineLabel::Q(i) => LineLabel::Q(s(i)),
            };
            map[l.index()] = img.index() as u8;
        }
        LinePerm { map }
    }

    /// Permutation of the points given in cycle notation, e.g. `&[&[1,2,3], &[4,5]]`.
    pub fn from_cycles(cycles: &[&[u8]]) -> LinePerm {
        let mut sigma = [1u8, 2, 3, 4, 5, 6];
        for c in cycles {
            for (k, &i) in c.iter().enumerate() {
                sigma[i as usize - 1] = c[(k + 1) % c.len()];
            }
        }
        LinePerm::from_point_perm(sigma)
    }

    /// Action on Pic as a 7x7 integer matrix `m` with `m[r][c]` the
    /// r-coordinate of the image of basis vector c.
    pub fn matrix(&self) -> [[i64; 7]; 7] {
        let img = |l: LineLabel| self.apply(l).class();
        let mut cols = [[0i64; 7]; 7];
        // L = E1 + E2 + L12
        let (a, b, c) = (img(LineLabel::E(1)), img(LineLabel::E(2)), img(LineLabel::L(1, 2)));
        for r in 0..7 {
            cols[0][r] = a[r] + b[r] + c[r];
        }
        for i in 1..=6u8 {
            cols[i as usize] = img(LineLabel::E(i));
        }
        let mut m = [[0i64; 7]; 7];
        for (c, col) in cols.iter().enumerate() {
            for r in 0..7 {
                m[r][c] = col[r];
            }
        }
        m
    }

    /// Whether all 27x27 intersection numbers are preserved.
    pub fn preserves_intersections(&self) -> bool {
        LineLabel::all().all(|a| {
            LineLabel::all().all(|b| intersection_number(a, b) == intersection_number(self.apply(a), self.apply(b)))
        })
    }

    pub fn display_cycles(&self) -> String {
        let mut seen = [false; 27];
        let mut parts = Vec::new();
        for i in 0..27 {
            if seen[i] || self.map[i] as usize == i {
                continue;
            }
            let mut cyc = Vec::new();
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                cyc.push(LineLabel::from_index(j).to_string());
                j = self.map[j] as usize;
            }
            parts.push(format!("({})", cyc.join(" ")));
        }
        if parts.is_empty() {
            "id".into()
        } else {
            parts.join("")
        }
    }
}

pub fn mat_vec(m: &[[i64; 7]; 7], v: &PicVec) -> PicVec {
    let mut out = [0i64; 7];
    for r in 0..7 {
        out[r] = (0..7).map(|c| m[r][c] * v[c]).sum();
    }
    out
}

/// The reflection `v -> v + (v . a) a` in a root `a` (a^2 = -2, a . K = 0).
pub fn reflection(root: &PicVec) -> Result<LinePerm> {
    if pairing(root, root) != -2 || pairing(root, &CANONICAL) != 0 {
        return Err(Error::Invalid(format!("{root:?} is not a root")));
    }
    let mut map = [0u8; 27];
    for l in LineLabel::all() {
        let v = l.class();
        let s = pairing(&v, root);
        let mut w = v;
        for i in 0..7 {
            w[i] += s * root[i];
        }
        let img = LineLabel::from_class(&w).ok_or_else(|| Error::Verification("reflection left the 27 lines".into()))?;
        map[l.index()] = img.index() as u8;
    }
    Ok(LinePerm { map })
}

/// The simple roots E1-E2, ..., E5-E6, L-E1-E2-E3.
pub fn simple_roots() -> [PicVec; 6] {
    let mut out = [[0i64; 7]; 6];
    for i in 0..5 {
        out[i][i + 1] = 1;
        out[i][i + 2] = -1;
    }
    out[5] = [1, -1, -1, -1, 0, 0, 0];
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use LineLabel::*;

    #[test]
    fn labels_round_trip() {
        for k in 0..27 {
            assert_eq!(LineLabel::from_index(k).index(), k);
        }
        let anti = [3, -1, -1, -1, -1, -1, -1];
        for l in LineLabel::all() {
            let v = l.class();
            assert_eq!(pairing(&v, &v), -1);
            assert_eq!(pairing(&v, &anti), 1);
        }
    }

    #[test]
    fn intersection_rules() {
        assert_eq!(intersection_number(E(1), E(2)), 0);
        assert_eq!(intersection_number(E(1), L(1, 2)), 1);
        assert_eq!(intersection_number(Q(1), L(2, 3)), 0);
        assert_eq!(intersection_number(Q(1), L(1, 2)), 1);
        assert_eq!(intersection_number(E(1), Q(2)), 1);
        assert_eq!(intersection_number(E(1), Q(1)), 0);
        assert_eq!(intersection_number(L(1, 2), L(3, 4)), 1);
        assert_eq!(intersection_number(L(1, 2), L(1, 3)), 0);
        assert_eq!(intersection_number(Q(3), Q(3)), -1);
        // every line meets exactly 10 others
        for a in LineLabel::all() {
            assert_eq!(LineLabel::all().filter(|&b| intersection_number(a, b) == 1).count(), 10);
        }
    }

    #[test]
    fn transposition_reflection() {
        let r = reflection(&simple_roots()[0]).unwrap();
        assert_eq!(r, LinePerm::from_cycles(&[&[1, 2]]));
        assert_eq!(r.apply(L(1, 3)), L(2, 3));
        assert_eq!(r.apply(Q(1)), Q(2));
        assert!(r.compose(&r).is_identity());
    }

    #[test]
    fn quadric_reflection() {
        let r = reflection(&simple_roots()[5]).unwrap();
        assert_eq!(r.apply(E(1)), L(2, 3));
        assert_eq!(r.apply(E(2)), L(1, 3));
        assert_eq!(r.apply(E(3)), L(1, 2));
        assert_eq!(r.apply(E(4)), E(4));
        assert!(r.compose(&r).is_identity());
        assert!(r.preserves_intersections());
    }

    #[test]
    fn non_root_rejected() {
        assert!(reflection(&[1, 0, 0, 0, 0, 0, 0]).is_err());
        assert!(reflection(&[0, 1, 1, 0, 0, 0, 0]).is_err());
    }

    #[test]
    fn matrix_fixes_canonical_class() {
        let g = reflection(&simple_roots()[5]).unwrap().compose(&LinePerm::from_cycles(&[&[1, 4, 2]]));
        let m = g.matrix();
        assert_eq!(mat_vec(&m, &CANONICAL), CANONICAL);
        for l in LineLabel::all() {
            assert_eq!(mat_vec(&m, &l.class()), g.apply(l).class());
        }
    }
}
