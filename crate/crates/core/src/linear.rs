//! Two-dimensional linear, projective and affine groups over GF(q).
//!
//! Matrices act on row vectors: `(u, v) M = (u a + v c, u b + v d)`.
//! Projective points are numbered `0 <-> <(0, 1)>` and `1 + v <-> <(1, v)>`.
//! Nonzero vectors are numbered `u q + v - 1`, affine points `u q + v`.

use crate::error::{Error, Result};
use crate::field::{prime_power, FiniteField};
use crate::group::FiniteGroup;
use crate::perm::Permutation;
use crate::subgroup::Subgroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2 {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

impl Mat2 {
    pub fn new(a: u32, b: u32, c: u32, d: u32) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Mat2::new(1, 0, 0, 1)
    }

    pub fn det(&self, k: &FiniteField) -> u32 {
        k.sub(k.mul(self.a, self.d), k.mul(self.b, self.c))
    }

    pub fn mul(&self, o: &Mat2, k: &FiniteField) -> Mat2 {
        Mat2::new(
            k.add(k.mul(self.a, o.a), k.mul(self.b, o.c)),
            k.add(k.mul(self.a, o.b), k.mul(self.b, o.d)),
            k.add(k.mul(self.c, o.a), k.mul(self.d, o.c)),
            k.add(k.mul(self.c, o.b), k.mul(self.d, o.d)),
        )
    }

    /// `(u, v) M`.
    pub fn apply(&self, k: &FiniteField, u: u32, v: u32) -> (u32, u32) {
        (
            k.add(k.mul(u, self.a), k.mul(v, self.c)),
            k.add(k.mul(u, self.b), k.mul(v, self.d)),
        )
    }
}

pub fn point_index(k: &FiniteField, u: u32, v: u32) -> u32 {
    if u == 0 {
        assert!(v != 0, "(0, 0) is not a projective point");
        0
    } else {
        1 + k.div(v, u).expect("u != 0")
    }
}

pub fn point_coords(i: u32) -> (u32, u32) {
    if i == 0 {
        (0, 1)
    } else {
        (1, i - 1)
    }
}

/// Action of a nonsingular matrix on the `q + 1` projective points.
pub fn point_perm(k: &FiniteField, m: &Mat2) -> Permutation {
    let images = (0..=k.q())
        .map(|i| {
            let (u, v) = point_coords(i);
            let (x, y) = m.apply(k, u, v);
            point_index(k, x, y)
        })
        .collect();
    Permutation::from_images(images).expect("nonsingular matrix")
}

/// Coordinatewise `v -> v^(p^e)` on projective points.
pub fn frobenius_points(k: &FiniteField, e: u32) -> Permutation {
    let images = (0..=k.q())
        .map(|i| {
            if i == 0 {
                0
            } else {
                1 + k.pow(i - 1, (k.p() as u64).pow(e))
            }
        })
        .collect();
    Permutation::from_images(images).expect("field automorphism")
}

pub fn vector_index(k: &FiniteField, u: u32, v: u32) -> u32 {
    u * k.q() + v - 1
}

pub fn vector_coords(k: &FiniteField, i: u32) -> (u32, u32) {
    ((i + 1) / k.q(), (i + 1) % k.q())
}

/// Action of a nonsingular matrix on the `q^2 - 1` nonzero vectors.
pub fn vector_perm(k: &FiniteField, m: &Mat2) -> Permutation {
    let n = k.q() * k.q() - 1;
    let images = (0..n)
        .map(|i| {
            let (u, v) = vector_coords(k, i);
            let (x, y) = m.apply(k, u, v);
            vector_index(k, x, y)
        })
        .collect();
    Permutation::from_images(images).expect("nonsingular matrix")
}

/// The matrix of a permutation of nonzero vectors coming from `vector_perm`.
pub fn matrix_of_vector_perm(k: &FiniteField, x: &Permutation) -> Mat2 {
    let (a, b) = vector_coords(k, x.apply(vector_index(k, 1, 0)));
    let (c, d) = vector_coords(k, x.apply(vector_index(k, 0, 1)));
    Mat2::new(a, b, c, d)
}

/// Lower and upper unitriangular matrices with off-diagonal entry `zeta^i`,
/// `i < f`; they generate SL_2(q).
pub fn sl2_generators(k: &FiniteField) -> Vec<Mat2> {
    let mut out = Vec::new();
    for i in 0..k.f() as i64 {
        let t = k.zeta_pow(i);
        out.push(Mat2::new(1, 0, t, 1));
        out.push(Mat2::new(1, t, 0, 1));
    }
    out
}

pub fn gl2_generators(k: &FiniteField) -> Vec<Mat2> {
    let mut out = sl2_generators(k);
    out.push(Mat2::new(k.zeta(), 0, 0, 1));
    out
}

/// Least matrix, in `(a, b, c, d)` order, whose determinant is a non-square.
pub fn least_nonsquare_det_matrix(k: &FiniteField) -> Result<Mat2> {
    let q = k.q();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    let m = Mat2::new(a, b, c, d);
                    let det = m.det(k);
                    if det != 0 && !k.is_square(det) {
                        return Ok(m);
                    }
                }
            }
        }
    }
    Err(Error::BadParameters(format!(
        "every determinant is a square in GF({q})"
    )))
}

fn field(q: u64) -> Result<FiniteField> {
    let (p, f) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    FiniteField::new(p as u32, f, None)
}

fn on_points(k: &FiniteField, ms: &[Mat2]) -> Vec<Permutation> {
    ms.iter().map(|m| point_perm(k, m)).collect()
}

fn require_q(q: u64, min: u64) -> Result<FiniteField> {
    if q < min {
        return Err(Error::BadParameters(format!("q = {q} is below {min}")));
    }
    field(q)
}

pub fn psl2(q: u64) -> Result<FiniteGroup> {
    let k = require_q(q, 2)?;
    FiniteGroup::generate(&on_points(&k, &sl2_generators(&k)))
}

pub fn pgl2(q: u64) -> Result<FiniteGroup> {
    let k = require_q(q, 2)?;
    FiniteGroup::generate(&on_points(&k, &gl2_generators(&k)))
}

pub fn psigmal2(q: u64) -> Result<FiniteGroup> {
    let k = require_q(q, 2)?;
    let mut gens = on_points(&k, &sl2_generators(&k));
    gens.push(frobenius_points(&k, 1));
    FiniteGroup::generate(&gens)
}

pub fn pgammal2(q: u64) -> Result<FiniteGroup> {
    let k = require_q(q, 2)?;
    let mut gens = on_points(&k, &gl2_generators(&k));
    gens.push(frobenius_points(&k, 1));
    FiniteGroup::generate(&gens)
}

pub fn sl2(q: u64) -> Result<FiniteGroup> {
    let k = require_q(q, 2)?;
    let gens: Vec<Permutation> = sl2_generators(&k)
        .iter()
        .map(|m| vector_perm(&k, m))
        .collect();
    FiniteGroup::generate(&gens)
}

pub fn gl2(q: u64) -> Result<FiniteGroup> {
    let k = require_q(q, 2)?;
    let gens: Vec<Permutation> = gl2_generators(&k)
        .iter()
        .map(|m| vector_perm(&k, m))
        .collect();
    FiniteGroup::generate(&gens)
}

/// `PSL_2(q) . <delta phi^k>`: generated by `PSL_2(q)` and `g phi^k` where
/// `g` is the least matrix of non-square determinant.
pub fn extension(q: u64, e: u32) -> Result<FiniteGroup> {
    let k = require_q(q, 3)?;
    if q % 2 == 0 {
        return Err(Error::BadParameters(
            "the diagonal extension needs odd q".into(),
        ));
    }
    if e >= k.f() {
        return Err(Error::BadParameters(format!("need 0 <= k < f = {}", k.f())));
    }
    let mut gens = on_points(&k, &sl2_generators(&k));
    let g = least_nonsquare_det_matrix(&k)?;
    gens.push(point_perm(&k, &g).compose(&frobenius_points(&k, e)));
    FiniteGroup::generate(&gens)
}

pub fn m10() -> Result<FiniteGroup> {
    extension(9, 1)
}

/// The copy of `PSL_2(q)` inside a group acting on the projective line.
pub fn projective_socle(g: &FiniteGroup, q: u64) -> Result<Subgroup> {
    let k = field(q)?;
    if g.degree() != q as usize + 1 {
        return Err(Error::BadParameters(format!(
            "degree {} is not q + 1",
            g.degree()
        )));
    }
    Subgroup::from_permutations(g, &on_points(&k, &sl2_generators(&k)))
}

pub fn agl1(q: u64) -> Result<FiniteGroup> {
    let k = field(q)?;
    let mut gens: Vec<Permutation> = (0..k.f() as i64)
        .map(|i| Permutation::from_images(k.elements().map(|x| k.add(x, k.zeta_pow(i))).collect()))
        .collect::<Result<_>>()?;
    gens.push(Permutation::from_images(
        k.elements().map(|x| k.mul(x, k.zeta())).collect(),
    )?);
    FiniteGroup::generate(&gens)
}

fn affine_point(k: &FiniteField, u: u32, v: u32) -> u32 {
    u * k.q() + v
}

fn affine_translations_gens(k: &FiniteField) -> Result<Vec<Permutation>> {
    let q = k.q();
    let mut out = Vec::new();
    for i in 0..k.f() as i64 {
        let t = k.zeta_pow(i);
        for (du, dv) in [(t, 0), (0, t)] {
            let images = (0..q * q)
                .map(|x| affine_point(k, k.add(x / q, du), k.add(x % q, dv)))
                .collect::<Vec<u32>>();
            out.push(Permutation::from_images(images)?);
        }
    }
    Ok(out)
}

fn affine_linear_gens(k: &FiniteField) -> Result<Vec<Permutation>> {
    let q = k.q();
    gl2_generators(k)
        .iter()
        .map(|m| {
            let images = (0..q * q)
                .map(|x| {
                    let (u, v) = m.apply(k, x / q, x % q);
                    affine_point(k, u, v)
                })
                .collect();
            Permutation::from_images(images)
        })
        .collect()
}

pub fn agl2(q: u64) -> Result<FiniteGroup> {
    let k = field(q)?;
    let mut gens = affine_translations_gens(&k)?;
    gens.extend(affine_linear_gens(&k)?);
    FiniteGroup::generate(&gens)
}

/// The translation subgroup of `agl2(q)` (or of any group containing it).
pub fn affine_translations(g: &FiniteGroup, q: u64) -> Result<Subgroup> {
    Subgroup::from_permutations(g, &affine_translations_gens(&field(q)?)?)
}

/// The stabilizer `GL_2(q)` of the zero vector inside `agl2(q)`.
pub fn affine_linear_part(g: &FiniteGroup, q: u64) -> Result<Subgroup> {
    Subgroup::from_permutations(g, &affine_linear_gens(&field(q)?)?)
}

/// The image in `PSL_2(q)` of an element of `sl2(q)`.
pub fn projective_image(k: &FiniteField, x: &Permutation) -> Permutation {
    point_perm(k, &matrix_of_vector_perm(k, x))
}

/// Full preimage in `sl2` (built by `sl2(q)`) of a subgroup `m` of a group
/// acting on the projective line of GF(q).
pub fn preimage_in_sl2(q: u64, sl2_group: &FiniteGroup, m: &Subgroup) -> Result<Subgroup> {
    if q % 2 == 0 {
        return Err(Error::BadParameters("preimage_in_sl2 needs odd q".into()));
    }
    let k = field(q)?;
    if sl2_group.degree() as u64 != q * q - 1 || m.ambient().degree() as u64 != q + 1 {
        return Err(Error::BadParameters("degrees do not match q".into()));
    }
    let members: Vec<u32> = (0..sl2_group.order() as u32)
        .filter(|&i| m.contains_perm(&projective_image(&k, &sl2_group.perm(i))))
        .collect();
    Subgroup::from_members(sl2_group, &members)
}

/// `{I, -I}` inside `sl2(q)` or `gl2(q)`.
pub fn scalar_center(q: u64, g: &FiniteGroup) -> Result<Subgroup> {
    let k = field(q)?;
    let minus = k.neg(1);
    Subgroup::from_permutations(g, &[vector_perm(&k, &Mat2::new(minus, 0, 0, minus))])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_orders() {
        assert_eq!(psl2(7).unwrap().order(), 168);
        assert_eq!(psl2(4).unwrap().order(), 60);
        assert_eq!(pgl2(5).unwrap().order(), 120);
        assert_eq!(psigmal2(9).unwrap().order(), 720);
        assert_eq!(pgammal2(9).unwrap().order(), 1440);
        assert_eq!(sl2(3).unwrap().order(), 24);
        assert_eq!(gl2(3).unwrap().order(), 48);
        assert_eq!(agl1(5).unwrap().order(), 20);
        assert_eq!(agl1(2).unwrap().order(), 2);
        assert_eq!(agl2(3).unwrap().order(), 432);
    }

    #[test]
    fn extensions() {
        let m = m10().unwrap();
        assert_eq!(m.order(), 720);
        assert_eq!(extension(9, 0).unwrap().order(), 720);
        assert!(extension(9, 0).unwrap().same_elements(&pgl2(9).unwrap()));
        assert!(extension(9, 2).is_err());
        assert!(extension(8, 0).is_err());
    }

    #[test]
    fn matrices_round_trip_through_vectors() {
        let k = FiniteField::of_order(9).unwrap();
        for m in gl2_generators(&k) {
            assert_eq!(matrix_of_vector_perm(&k, &vector_perm(&k, &m)), m);
        }
    }

    #[test]
    fn preimages() {
        let s = sl2(5).unwrap();
        let t = psl2(5).unwrap();
        let z = preimage_in_sl2(5, &s, &Subgroup::trivial(&t)).unwrap();
        assert_eq!(z.order(), 2);
        assert_eq!(z, scalar_center(5, &s).unwrap());
        let stab: Vec<u32> = (0..t.order() as u32)
            .filter(|&i| t.element(i)[0] == 0)
            .collect();
        let borel = Subgroup::from_members(&t, &stab).unwrap();
        assert_eq!(preimage_in_sl2(5, &s, &borel).unwrap().order(), 20);
    }
}
