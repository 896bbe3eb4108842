//! The blowup of P^2 at six points as a cubic surface: the cubics through
//! the points map P^2 to P^3, and the image is recovered as the unique cubic
//! relation among sampled image points.

use crate::algebra::{monomials, proj, Embedding, Fe, Form, Gf, Matrix};
use crate::error::{Error, Result};
use crate::surface::{certify_smooth, is_eckardt, normalize_eckardt, quadratic_twist, EckardtForm, EckardtNormalization};

use super::sixpoint::{choose_parameters, eval_monomials, general_position, SixPointData};

#[derive(Clone, Debug)]
pub struct AnticanonicalMap {
    /// Basis f0..f3 over F_q of the cubics through the six points.
    pub cubics: Vec<Form>,
    /// The fitted surface over F_q.
    pub surface: Form,
    /// Image of the concurrency point, an Eckardt point of the surface.
    pub eckardt_point: Vec<Fe>,
    /// Number of image points used for the fit.
    pub samples: usize,
}

const FIT_STEP: usize = 40;
const FIT_CAP: usize = 1000;

impl AnticanonicalMap {
    /// Image of a point of P^2 over `ext`; `None` at the base points.
    pub fn map_in(&self, ext: &Gf, p: &[Fe]) -> Result<Option<Vec<Fe>>> {
        let e = Embedding::new(self.surface.field(), ext)?;
        let v: Vec<Fe> = self.cubics.iter().map(|c| c.embed(&e).eval(p)).collect();
        Ok(v.iter().any(|c| !c.is_zero()).then(|| proj::normalize(ext, &v)))
    }
}

/// Basis over F_q of the cubics vanishing at the six points. The reduced
/// kernel basis over F_{q^3} is unique and the vanishing conditions are
/// Frobenius-stable, so that basis is already F_q-rational.
pub fn cubics_through(data: &SixPointData) -> Result<Vec<Form>> {
    let ext = &data.ext;
    let mons = monomials(3, 3);
    let rows: Vec<Vec<Fe>> = data.points.iter().map(|p| eval_monomials(ext, &mons, p)).collect();
    let kernel = Matrix::from_rows(ext, &rows).kernel();
    if kernel.len() != 4 {
        return Err(Error::Degenerate(format!("the cubics through the six points form a space of dimension {}", kernel.len())));
    }
    let emb = Embedding::new(&data.base, ext)?;
    kernel
        .into_iter()
        .map(|v| {
            let c: Option<Vec<Fe>> = v.iter().map(|&x| emb.try_descend(x)).collect();
            let c = c.ok_or_else(|| Error::Verification("the cubic system is not defined over F_q".into()))?;
            Form::new(&data.base, 3, 3, c)
        })
        .collect()
}

pub fn anticanonical_surface(data: &SixPointData) -> Result<AnticanonicalMap> {
    general_position(data).map_err(|v| Error::Degenerate(format!("six points not in general position: {v:?}")))?;
    let cubics = cubics_through(data)?;
    let ext = &data.ext;
    let mut map = AnticanonicalMap { cubics, surface: Form::zero(&data.base, 4, 3), eckardt_point: Vec::new(), samples: 0 };
    let mons = monomials(4, 3);
    let mut rows: Vec<Vec<Fe>> = Vec::new();
    let mut fitted = None;
    for p in proj::points(ext, 3) {
        if let Some(img) = map.map_in(ext, &p)? {
            rows.push(eval_monomials(ext, &mons, &img));
        }
        if rows.len() % FIT_STEP == 0 && !rows.is_empty() {
            let kernel = Matrix::from_rows(ext, &rows).kernel();
            if kernel.len() == 1 {
                fitted = Some(kernel[0].clone());
                break;
            }
            if kernel.is_empty() {
                return Err(Error::Verification("the image lies on no cubic surface".into()));
            }
        }
        if rows.len() >= FIT_CAP {
            break;
        }
    }
    let v = fitted.ok_or_else(|| Error::Verification(format!("cubic relation not unique after {} samples", rows.len())))?;
    let emb = Embedding::new(&data.base, ext)?;
    let over_ext = Form::new(ext, 4, 3, v)?.normalized();
    map.surface = over_ext
        .descend(&emb)
        .ok_or_else(|| Error::Verification("the fitted surface is not defined over F_q".into()))?;
    map.samples = rows.len();
    let e = map
        .map_in(&data.base, &data.concurrency)?
        .ok_or_else(|| Error::Verification("the concurrency point is a base point".into()))?;
    if !map.surface.eval(&e).is_zero() {
        return Err(Error::Verification("the image of the concurrency point is off the surface".into()));
    }
    if !is_eckardt(&map.surface, &e)? {
        return Err(Error::Verification("the image of the concurrency point is not an Eckardt point".into()));
    }
    // Smoothness is certified on the Eckardt normal form, which is a linear
    // change of coordinates away.
    certify_smooth(&normalize_eckardt(&map.surface, &e)?.form.surface())?;
    map.eckardt_point = e;
    Ok(map)
}

/// N_d of the blowup counted from the configuration: P^2(F_{q^d}) plus a
/// projective line over F_{q^d} replacing each p_i rational over F_{q^d}.
pub fn combinatorial_count(data: &SixPointData, d: u32) -> u128 {
    let qd = (data.q as u128).pow(d);
    let rational = data
        .points
        .iter()
        .filter(|p| {
            let deg = proj::point_degree(&data.ext, p, data.base.degree());
            d % deg == 0
        })
        .count() as u128;
    qd * qd + qd + 1 + rational * qd
}

#[derive(Clone, Debug)]
pub struct C10Construction {
    pub data: SixPointData,
    pub map: AnticanonicalMap,
    /// The blowup surface moved to the shape t^2 L + C.
    pub normalized: EckardtNormalization,
    /// Its quadratic twist.
    pub twisted: EckardtForm,
}

/// Six-point blowup with an Eckardt point, normalized and twisted by the
/// Eckardt involution.
pub fn c10_pipeline(q: u64) -> Result<C10Construction> {
    if q == 2 {
        return Err(Error::RefusedImpossible("no cubic surface of class c10 exists over F_2".into()));
    }
    let f = Gf::with_order(q)?;
    if !f.is_odd() {
        return Err(Error::RefusedScope(format!("explicit c10 surfaces are built only for odd q, got {q}")));
    }
    let data = choose_parameters(q)?;
    let map = anticanonical_surface(&data)?;
    let normalized = normalize_eckardt(&map.surface, &map.eckardt_point)?;
    let twisted = quadratic_twist(&normalized.form)?;
    Ok(C10Construction { data, map, normalized, twisted })
}
