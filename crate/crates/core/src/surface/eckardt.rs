//! Eckardt points, the normal shape t^2 L + C, quadratic twists, and the
//! branch-data construction with its distinguished lines and triangles.

use serde::Serialize;

use crate::algebra::plane::{binary_form_roots, binary_split_degree, binary_squarefree, line_basis};
use crate::algebra::{det3, proj, Fe, Form, Gf, Matrix};
use crate::error::{Error, Result};

use super::count::check_surface;
use super::singular::{certify_smooth, plane_cubic_is_smooth, t_parts};

/// A surface `t^2 L(x,y,z) + C(x,y,z) = 0`; (0:0:0:1) is an Eckardt point
/// when it is smooth, and t -> -t is the Eckardt involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EckardtForm {
    pub l: Form,
    pub c: Form,
}

impl EckardtForm {
    pub fn new(l: Form, c: Form) -> Result<EckardtForm> {
        if l.nvars() != 3 || l.degree() != 1 || c.nvars() != 3 || c.degree() != 3 {
            return Err(Error::Invalid("L must be a linear and C a cubic form in x, y, z".into()));
        }
        if l.field() != c.field() {
            return Err(Error::FieldMismatch(l.field().literal(), c.field().literal()));
        }
        if l.is_zero() {
            return Err(Error::Invalid("L must be nonzero".into()));
        }
        if !l.field().is_odd() {
            return Err(Error::Unsupported("Eckardt normal forms need odd characteristic".into()));
        }
        Ok(EckardtForm { l, c })
    }

    /// Reads `t^2 L + C` back from a surface of that shape.
    pub fn from_surface(x: &Form) -> Result<EckardtForm> {
        check_surface(x)?;
        let parts = t_parts(x);
        if !parts[3].is_zero() || !parts[1].is_zero() {
            return Err(Error::Invalid("surface is not of the shape t^2 L + C".into()));
        }
        EckardtForm::new(parts[2].clone(), parts[0].clone())
    }

    pub fn field(&self) -> &Gf {
        self.l.field()
    }

    pub fn surface(&self) -> Form {
        let f = self.field();
        let mut x = Form::zero(f, 4, 3);
        for (e, c) in self.l.terms() {
            x.set_coeff(&[e[0], e[1], e[2], 2], c).expect("cubic monomial");
        }
        for (e, c) in self.c.terms() {
            x.set_coeff(&[e[0], e[1], e[2], 0], c).expect("cubic monomial");
        }
        x
    }

    /// Branch points T_1, T_2, T_3 = {L = C = 0}, in the least field where
    /// all three are defined, sorted.
    pub fn branch_points(&self) -> Result<(Gf, Vec<Vec<Fe>>)> {
        let f = self.field();
        let (u, v) = line_basis(f, self.l.coeffs())?;
        let binary = self.c.restrict_to_line(&u, &v);
        if binary.iter().all(|c| c.is_zero()) {
            return Err(Error::Degenerate("the line L = 0 is a component of C".into()));
        }
        let e = binary_split_degree(f, &binary)?;
        let ext = f.extension(e as u32)?;
        let emb = |a: Fe| crate::algebra::embed(f, &ext, a).expect("subfield");
        let (u, v): (Vec<Fe>, Vec<Fe>) = (u.iter().map(|&a| emb(a)).collect(), v.iter().map(|&a| emb(a)).collect());
        let bin: Vec<Fe> = binary.iter().map(|&a| emb(a)).collect();
        let mut pts: Vec<Vec<Fe>> = binary_form_roots(&ext, &bin)?
            .into_iter()
            .map(|(a, b)| proj::normalize(&ext, &(0..3).map(|i| ext.add(ext.mul(a, u[i]), ext.mul(b, v[i]))).collect::<Vec<_>>()))
            .collect();
        pts.sort();
        Ok((ext, pts))
    }

    /// Whether t -> -t maps the form to itself (always true for this shape;
    /// checked on the expanded surface).
    pub fn involution_preserves(&self) -> bool {
        let f = self.field();
        let x = self.surface();
        let m: Vec<Vec<Fe>> = (0..4)
            .map(|i| (0..4).map(|j| if i != j { Fe::ZERO } else if i == 3 { f.neg(f.one()) } else { f.one() }).collect())
            .collect();
        x.substitute(&m) == x
    }
}

/// Old coordinates = `matrix` times new coordinates; `inverse` goes back.
#[derive(Clone, Debug)]
pub struct CoordinateChange {
    pub matrix: Matrix,
    pub inverse: Matrix,
}

impl CoordinateChange {
    fn rows(m: &Matrix) -> Vec<Vec<Fe>> {
        (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
    }

    /// The form in new coordinates: `F(matrix * y)`.
    pub fn pull_back(&self, x: &Form) -> Form {
        x.substitute(&Self::rows(&self.matrix))
    }

    /// Back to old coordinates.
    pub fn push_forward(&self, y: &Form) -> Form {
        y.substitute(&Self::rows(&self.inverse))
    }

    /// A point given in new coordinates, in old coordinates.
    pub fn to_old(&self, p: &[Fe]) -> Vec<Fe> {
        self.matrix.mul_vec(p)
    }

    pub fn to_new(&self, p: &[Fe]) -> Vec<Fe> {
        self.inverse.mul_vec(p)
    }
}

/// A change of coordinates whose new (0:0:0:1) is `p`.
fn moving_to_apex(f: &Gf, p: &[Fe]) -> Result<Matrix> {
    let lead = p
        .iter()
        .position(|c| !c.is_zero())
        .ok_or_else(|| Error::Invalid("the zero vector is not a point".into()))?;
    let mut m = Matrix::zeros(f, 4, 4);
    let mut col = 0;
    for j in (0..4).filter(|&j| j != lead) {
        m.set(j, col, f.one());
        col += 1;
    }
    for (i, &c) in p.iter().enumerate() {
        m.set(i, 3, c);
    }
    Ok(m)
}

/// (Q1, Q2, Q3) with `X = t^2 Q1 + t Q2 + Q3` after moving `p` to (0:0:0:1).
fn apex_expansion(x: &Form, p: &[Fe]) -> Result<(Matrix, Vec<Form>)> {
    check_surface(x)?;
    let f = x.field();
    if p.len() != 4 {
        return Err(Error::Invalid("a point of P^3 has four coordinates".into()));
    }
    if !x.eval(p).is_zero() {
        return Err(Error::Invalid("the point does not lie on the surface".into()));
    }
    if x.gradient().iter().all(|g| g.eval(p).is_zero()) {
        return Err(Error::Degenerate("the surface is singular at the point".into()));
    }
    let m = moving_to_apex(f, p)?;
    let rows: Vec<Vec<Fe>> = (0..4).map(|i| m.row(i).to_vec()).collect();
    let g = x.substitute(&rows);
    let parts = t_parts(&g);
    debug_assert!(parts[3].is_zero());
    Ok((m, parts))
}

/// Whether the smooth point `p` of X is an Eckardt point: with X written as
/// t^2 Q1 + t Q2 + Q3 around p, the tangent section is a cone over p exactly
/// when Q1 divides Q2.
pub fn is_eckardt(x: &Form, p: &[Fe]) -> Result<bool> {
    if !x.field().is_odd() {
        return Err(Error::Unsupported("Eckardt test in characteristic 2".into()));
    }
    let (_, parts) = apex_expansion(x, p)?;
    Ok(parts[1].is_zero() || parts[1].divide(&parts[2]).is_some())
}

/// Number of distinct lines through `p` in the tangent-plane section, if that
/// section is a union of lines through `p` (read off the binary cubic).
pub fn tangent_section_lines(x: &Form, p: &[Fe]) -> Result<Option<usize>> {
    let (_, parts) = apex_expansion(x, p)?;
    let f = x.field();
    let (u, v) = line_basis(f, parts[2].coeffs())?;
    if parts[1].restrict_to_line(&u, &v).iter().any(|c| !c.is_zero()) {
        return Ok(None);
    }
    let binary = parts[0].restrict_to_line(&u, &v);
    if binary.iter().all(|c| c.is_zero()) {
        return Ok(None);
    }
    let e = binary_split_degree(f, &binary)?;
    let ext = f.extension(e as u32)?;
    let bin: Vec<Fe> = binary.iter().map(|&a| crate::algebra::embed(f, &ext, a).unwrap()).collect();
    Ok(Some(binary_form_roots(&ext, &bin)?.len()))
}

#[derive(Clone, Debug)]
pub struct EckardtNormalization {
    pub form: EckardtForm,
    pub change: CoordinateChange,
}

/// Moves the Eckardt point to (0:0:0:1) and completes the square in t.
pub fn normalize_eckardt(x: &Form, p: &[Fe]) -> Result<EckardtNormalization> {
    if !is_eckardt(x, p)? {
        return Err(Error::Invalid("not an Eckardt point".into()));
    }
    let f = x.field();
    let (m, parts) = apex_expansion(x, p)?;
    let (q1, q2, q3) = (&parts[2], &parts[1], &parts[0]);
    // Q2 = 2 m Q1; then t -> t - m gives t^2 Q1 + (Q3 - m^2 Q1).
    let two_m = if q2.is_zero() { Form::zero(f, 3, 1) } else { q2.divide(q1).expect("checked by is_eckardt") };
    let half = f.inv(f.from_int(2))?;
    let mlin = two_m.scale(half);
    let c = q3.sub(&mlin.mul(&mlin).mul(q1));
    let mut shift = Matrix::identity(f, 4);
    for (i, var) in [[1u8, 0, 0], [0, 1, 0], [0, 0, 1]].iter().enumerate() {
        shift.set(3, i, f.neg(mlin.coeff(var)));
    }
    let matrix = m.mul(&shift);
    let inverse = matrix.inverse()?;
    let form = EckardtForm::new(q1.clone(), c)?;
    let change = CoordinateChange { matrix, inverse };
    debug_assert_eq!(change.pull_back(x), form.surface());
    Ok(EckardtNormalization { form, change })
}

/// `d t^2 L + C` for the given scalar.
pub fn twist_by(f: &EckardtForm, d: Fe) -> Result<EckardtForm> {
    if d.is_zero() {
        return Err(Error::Invalid("twisting scalar must be nonzero".into()));
    }
    EckardtForm::new(f.l.scale(d), f.c.clone())
}

/// `d t^2 L + C` with d the least non-square of F_q.
pub fn quadratic_twist(f: &EckardtForm) -> Result<EckardtForm> {
    let d = f.field().find_nonsquare()?;
    twist_by(f, d)
}

/// The twice-twisted form together with a change of coordinates carrying it
/// back to `f` (t -> t / d), verified coefficientwise.
pub fn double_twist_equivalence(f: &EckardtForm) -> Result<(EckardtForm, CoordinateChange)> {
    let field = f.field();
    let d = field.find_nonsquare()?;
    let twice = twist_by(&twist_by(f, d)?, d)?;
    let mut matrix = Matrix::identity(field, 4);
    matrix.set(3, 3, field.inv(d)?);
    let inverse = matrix.inverse()?;
    let change = CoordinateChange { matrix, inverse };
    if change.pull_back(&twice.surface()) != f.surface() {
        return Err(Error::Verification("double twist is not undone by t -> t/d".into()));
    }
    Ok((twice, change))
}

/// Eckardt form from a smooth branch cubic C and a line W meeting it in
/// three distinct points.
pub fn build_from_branch_data(c: &Form, w: &Form) -> Result<EckardtForm> {
    let form = EckardtForm::new(w.clone(), c.clone())?;
    if !plane_cubic_is_smooth(c)? {
        return Err(Error::Degenerate("the branch cubic is singular".into()));
    }
    let f = c.field();
    let (u, v) = line_basis(f, w.coeffs())?;
    if !binary_squarefree(f, &c.restrict_to_line(&u, &v)) {
        return Err(Error::Degenerate("the line meets the branch cubic in a non-reduced scheme".into()));
    }
    certify_smooth(&form.surface())?;
    Ok(form)
}

/// A line through a branch point, tangent to C at another point.
#[derive(Clone, Debug, Serialize)]
pub struct DistinguishedLine {
    /// Coefficients (a, b, c) of ax + by + cz, normalized, as field indices.
    #[serde(serialize_with = "ser_fe")]
    pub line: Vec<Fe>,
    /// Index of the branch point T(l) in the sorted list.
    pub t_index: usize,
    #[serde(serialize_with = "ser_fe")]
    pub tangency: Vec<Fe>,
    /// Least d with line, T(l) and P(l) defined over F_{q^d}.
    pub field_degree: u32,
}

fn ser_fe<S: serde::Serializer>(v: &[Fe], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.index())?;
    }
    seq.end()
}

/// The 12 distinguished lines, all coordinates in `field`.
#[derive(Clone, Debug)]
pub struct DistinguishedLines {
    pub field: Gf,
    /// Branch points T_1..T_3 over `field`.
    pub branch_points: Vec<Vec<Fe>>,
    pub lines: Vec<DistinguishedLine>,
}

pub const LINES_PER_BRANCH_POINT: usize = 4;

/// Binary quartic in (mu, nu) whose roots are the pencil members R = mu A +
/// nu B for which the line T R is tangent to C away from T, with the linear
/// and quadratic pieces needed to recover the tangency point.
fn tangency_discriminant(c: &Form, t: &[Fe], a: &[Fe], b: &[Fe]) -> (Form, Form, Form) {
    let f = c.field();
    let m: Vec<Vec<Fe>> = (0..3).map(|i| vec![a[i], b[i]]).collect();
    let grad = c.gradient();
    // C(sT + rR) = r (lin s^2 + quad s r + cub r^2)
    let lin = grad
        .iter()
        .enumerate()
        .fold(Form::zero(f, 2, 1), |acc, (i, g)| acc.add(&Form::linear(f, &m[i]).scale(g.eval(t))));
    let quad = grad
        .iter()
        .enumerate()
        .fold(Form::zero(f, 2, 2), |acc, (i, g)| acc.add(&g.substitute(&m).scale(t[i])));
    let cub = c.substitute(&m);
    (lin, quad, cub)
}

fn quartic_of(lin: &Form, quad: &Form, cub: &Form) -> Form {
    let f = lin.field();
    quad.mul(quad).sub(&lin.mul(cub).scale(f.from_int(4)))
}

fn binary_coeffs(g: &Form) -> Vec<Fe> {
    let d = g.degree();
    (0..=d).map(|j| g.coeff(&[(d - j) as u8, j as u8])).collect()
}

/// Two points completing `t` to a basis of the plane.
fn complement(f: &Gf, t: &[Fe]) -> (Vec<Fe>, Vec<Fe>) {
    let lead = t.iter().position(|c| !c.is_zero()).expect("point");
    let mut others = (0..3).filter(|&j| j != lead).map(|j| {
        let mut e = vec![Fe::ZERO; 3];
        e[j] = f.one();
        e
    });
    (others.next().unwrap(), others.next().unwrap())
}

pub fn distinguished_lines(form: &EckardtForm) -> Result<DistinguishedLines> {
    let base = form.field().clone();
    let (tfield, _) = form.branch_points()?;
    let e = tfield.degree() / base.degree();
    // Field of definition of everything: split every tangency quartic.
    let mut need = e as usize;
    {
        let c = form.c.over(&tfield)?;
        let (_, ts) = form.branch_points()?;
        for t in &ts {
            let (a, b) = complement(&tfield, t);
            let (lin, quad, cub) = tangency_discriminant(&c, t, &a, &b);
            let quartic = quartic_of(&lin, &quad, &cub);
            let s = binary_split_degree(&tfield, &binary_coeffs(&quartic))?;
            need = crate::algebra::poly_lcm(need, e as usize * s);
        }
    }
    let field = base.extension(need as u32)?;
    let c = form.c.over(&field)?;
    let (_, ts) = form.branch_points()?;
    let ts: Vec<Vec<Fe>> = {
        let mut v: Vec<Vec<Fe>> = ts
            .iter()
            .map(|t| proj::normalize(&field, &t.iter().map(|&x| crate::algebra::embed(&tfield, &field, x).unwrap()).collect::<Vec<_>>()))
            .collect();
        v.sort();
        v
    };
    let k = base.degree();
    let mut lines = Vec::new();
    for (ti, t) in ts.iter().enumerate() {
        let (a, b) = complement(&field, t);
        let (lin, quad, cub) = tangency_discriminant(&c, t, &a, &b);
        let quartic = quartic_of(&lin, &quad, &cub);
        if quartic.is_zero() {
            return Err(Error::Degenerate("every line through a branch point is tangent".into()));
        }
        let mut found = Vec::new();
        for (mu, nu) in binary_form_roots(&field, &binary_coeffs(&quartic))? {
            let r: Vec<Fe> = (0..3).map(|i| field.add(field.mul(mu, a[i]), field.mul(nu, b[i]))).collect();
            let lv = lin.eval(&[mu, nu]);
            if lv.is_zero() {
                // The tangent line at T itself, or T is a flex: not distinguished.
                continue;
            }
            let qv = quad.eval(&[mu, nu]);
            // Double root s/r = -quad / (2 lin).
            let s = field.neg(qv);
            let rr = field.mul(field.from_int(2), lv);
            let p: Vec<Fe> = (0..3).map(|i| field.add(field.mul(s, t[i]), field.mul(rr, r[i]))).collect();
            let p = proj::normalize(&field, &p);
            let line = proj::line_through(&field, t, &r);
            let deg = [&line, t, &p]
                .iter()
                .map(|v| proj::point_degree(&field, v, k) as usize)
                .fold(1, crate::algebra::poly_lcm) as u32;
            found.push(DistinguishedLine { line, t_index: ti, tangency: p, field_degree: deg });
        }
        if found.len() != LINES_PER_BRANCH_POINT {
            return Err(Error::Degenerate(format!(
                "{} distinguished lines through a branch point, expected {LINES_PER_BRANCH_POINT}",
                found.len()
            )));
        }
        lines.extend(found);
    }
    Ok(DistinguishedLines { field, branch_points: ts, lines })
}

impl DistinguishedLines {
    /// Whether the tangency points of three lines are collinear.
    pub fn collinear(&self, i: usize, j: usize, k: usize) -> bool {
        let l = &self.lines;
        det3(&self.field, &l[i].tangency, &l[j].tangency, &l[k].tangency).is_zero()
    }

    /// All triangles: one line through each branch point, tangency points
    /// collinear.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let by_t = |ti: usize| (0..self.lines.len()).filter(move |&i| self.lines[i].t_index == ti);
        let mut out = Vec::new();
        for i in by_t(0) {
            for j in by_t(1) {
                for k in by_t(2) {
                    if self.collinear(i, j, k) {
                        out.push([i, j, k]);
                    }
                }
            }
        }
        out
    }

    /// Index permutation induced by the q-power Frobenius.
    pub fn frobenius(&self, base_degree: u32) -> Result<Vec<usize>> {
        let f = &self.field;
        self.lines
            .iter()
            .map(|l| {
                let img = proj::frobenius_point(f, &l.line, base_degree);
                let tp = proj::frobenius_point(f, &l.tangency, base_degree);
                self.lines
                    .iter()
                    .position(|m| m.line == proj::normalize(f, &img) && m.tangency == proj::normalize(f, &tp))
                    .ok_or_else(|| Error::Verification("Frobenius does not permute the distinguished lines".into()))
            })
            .collect()
    }

    /// Frobenius orbits on the lines, each sorted, in order of least member.
    pub fn galois_orbits(&self, base_degree: u32) -> Result<Vec<Vec<usize>>> {
        let perm = self.frobenius(base_degree)?;
        let mut seen = vec![false; perm.len()];
        let mut out = Vec::new();
        for s in 0..perm.len() {
            if seen[s] {
                continue;
            }
            let mut orbit = vec![s];
            seen[s] = true;
            let mut i = perm[s];
            while i != s {
                seen[i] = true;
                orbit.push(i);
                i = perm[i];
            }
            orbit.sort();
            out.push(orbit);
        }
        Ok(out)
    }

    /// Orbits that are triangles.
    pub fn galois_triangles(&self, base_degree: u32) -> Result<Vec<[usize; 3]>> {
        let tri = self.triangles();
        Ok(self
            .galois_orbits(base_degree)?
            .into_iter()
            .filter_map(|o| {
                let mut o: Vec<usize> = o;
                o.sort_by_key(|&i| self.lines[i].t_index);
                (o.len() == 3).then(|| [o[0], o[1], o[2]])
            })
            .filter(|t| tri.contains(t))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{count_points, fermat};

    fn eck(f: &Gf, l: &[i64], c: &[(&[u8], i64)]) -> EckardtForm {
        let l = Form::linear(f, &l.iter().map(|&a| f.from_int(a)).collect::<Vec<_>>());
        EckardtForm::new(l, Form::from_terms(f, 3, 3, c)).unwrap()
    }

    #[test]
    fn fermat_eckardt_point_f7() {
        let f = Gf::prime(7).unwrap();
        let x = fermat(&f);
        let p = [f.one(), f.from_int(-1), Fe::ZERO, Fe::ZERO];
        assert!(is_eckardt(&x, &p).unwrap());
        assert_eq!(tangent_section_lines(&x, &p).unwrap(), Some(3));
        let n = normalize_eckardt(&x, &p).unwrap();
        assert!(plane_cubic_is_smooth(&n.form.c).unwrap());
        assert_eq!(n.change.push_forward(&n.form.surface()), x);
        assert_eq!(count_points(&n.form.surface(), 1).unwrap(), count_points(&x, 1).unwrap());
        assert_eq!(n.change.to_old(&[Fe::ZERO, Fe::ZERO, Fe::ZERO, f.one()]), p.to_vec());
    }

    #[test]
    fn normal_shape_is_its_own_normalization() {
        let f = Gf::prime(5).unwrap();
        let e = eck(&f, &[1, 0, 0], &[(&[0, 3, 0], 1), (&[0, 0, 3], 1), (&[1, 1, 1], 1)]);
        let x = e.surface();
        let apex = [Fe::ZERO, Fe::ZERO, Fe::ZERO, f.one()];
        assert!(is_eckardt(&x, &apex).unwrap());
        let n = normalize_eckardt(&x, &apex).unwrap();
        assert_eq!(n.form, e);
        assert_eq!(n.change.matrix, Matrix::identity(&f, 4));
        assert!(e.involution_preserves());
    }

    #[test]
    fn non_eckardt_points_rejected_consistently() {
        let f = Gf::prime(5).unwrap();
        let x = fermat(&f).add(&Form::from_terms(&f, 4, 3, &[(&[1, 1, 1, 0], 1), (&[0, 1, 1, 1], 2)]));
        let mut checked = 0;
        for p in proj::points(&f, 4).filter(|p| x.eval(p).is_zero()) {
            if x.gradient().iter().all(|g| g.eval(&p).is_zero()) {
                continue;
            }
            let lines = tangent_section_lines(&x, &p).unwrap();
            assert_eq!(is_eckardt(&x, &p).unwrap(), lines == Some(3), "{p:?}");
            checked += 1;
        }
        assert!(checked > 0);
        assert!(is_eckardt(&x, &[f.one(), Fe::ZERO, Fe::ZERO, Fe::ZERO]).is_err());
    }

    #[test]
    fn weierstrass_with_flex_line_refused() {
        let f = Gf::prime(5).unwrap();
        let c = Form::from_terms(&f, 3, 3, &[(&[0, 2, 1], 1), (&[3, 0, 0], -1), (&[1, 0, 2], -1), (&[0, 0, 3], -1)]);
        let w = Form::linear(&f, &[Fe::ZERO, Fe::ZERO, f.one()]);
        assert!(matches!(build_from_branch_data(&c, &w), Err(Error::Degenerate(_))));
    }

    #[test]
    fn twists() {
        let f = Gf::prime(3).unwrap();
        let e = eck(&f, &[1, 0, 0], &[(&[0, 3, 0], 1), (&[0, 0, 3], 1), (&[1, 1, 1], 1)]);
        let t = quadratic_twist(&e).unwrap();
        assert_eq!(t.l, e.l.scale(f.from_int(2)));
        let (_, change) = double_twist_equivalence(&e).unwrap();
        assert_eq!(change.matrix.get(3, 3), f.inv(f.from_int(2)).unwrap());
    }

    #[test]
    fn branch_points_and_distinguished_lines() {
        // y^2 z = x^3 + x z^2 + z^3 over F_5 with the line y = 0 through the
        // 2-torsion (a line through the flex at infinity would give only 3
        // lines there).
        let f = Gf::prime(5).unwrap();
        let c = Form::from_terms(&f, 3, 3, &[(&[0, 2, 1], 1), (&[3, 0, 0], -1), (&[1, 0, 2], -1), (&[0, 0, 3], -1)]);
        let flex_line = Form::linear(&f, &[f.one(), Fe::ZERO, Fe::ZERO]);
        assert!(distinguished_lines(&build_from_branch_data(&c, &flex_line).unwrap()).is_err());
        let w = Form::linear(&f, &[Fe::ZERO, f.one(), Fe::ZERO]);
        let e = build_from_branch_data(&c, &w).unwrap();
        let (tf, ts) = e.branch_points().unwrap();
        assert_eq!(ts.len(), 3);
        let cc = e.c.over(&tf).unwrap();
        for t in &ts {
            assert!(cc.eval(t).is_zero());
        }
        let d = distinguished_lines(&e).unwrap();
        assert_eq!(d.lines.len(), 12);
        let cd = e.c.over(&d.field).unwrap();
        for l in &d.lines {
            let t = &d.branch_points[l.t_index];
            let dot = |p: &[Fe]| (0..3).fold(Fe::ZERO, |a, i| d.field.add(a, d.field.mul(l.line[i], p[i])));
            assert!(dot(t).is_zero() && dot(&l.tangency).is_zero());
            assert!(cd.eval(&l.tangency).is_zero());
            assert_ne!(&l.tangency, t);
            // tangent at P: gradient of C at P is proportional to the line
            let g: Vec<Fe> = cd.gradient().iter().map(|h| h.eval(&l.tangency)).collect();
            assert_eq!(proj::normalize(&d.field, &g), l.line);
        }
        assert_eq!(d.galois_orbits(1).unwrap().iter().map(|o| o.len()).sum::<usize>(), 12);
    }
}
