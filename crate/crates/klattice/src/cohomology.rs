//! Exact arithmetic in truncated even cohomology rings.
//!
//! Two rings are modeled:
//!
//! * the surface ring, spanned by `1, h, B, pt` where `h` is the hyperplane
//!   pullback with `h^2 = 2` and `B` is a formal half-integral class whose
//!   only numerical footprint is the pair of intersection numbers
//!   `2*B.h = m` and `4*B^2 = n`;
//! * the plane ring, spanned by `1, H, pt` with `H^2 = pt`.
//!
//! Multiplication is graded and truncated above degree four. Everything is
//! computed over [`Rat`]; no floating point enters anywhere.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rat::Rat;

/// Intersection numbers of the degree-2 part of the surface ring.
///
/// `h_squared` defaults to 2 (a double plane); `two_bh` and `four_bsq` are
/// the integers `m = 2*B.h` and `n = 4*B^2`. The pairing on `span{h, B}` is
/// then `h.h = h_squared`, `h.B = m/2`, `B.B = n/4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntersectionData {
    pub h_squared: i64,
    pub two_bh: i64,
    pub four_bsq: i64,
}

impl IntersectionData {
    /// Double-plane data (`h^2 = 2`) with the given twist integers.
    pub fn double_plane(two_bh: i64, four_bsq: i64) -> Self {
        IntersectionData {
            h_squared: 2,
            two_bh,
            four_bsq,
        }
    }

    /// Double-plane data with no B-field in play.
    pub fn untwisted() -> Self {
        Self::double_plane(0, 0)
    }

    /// `B.h` as an exact rational.
    pub fn bh(&self) -> Rat {
        Rat::new(self.two_bh, 2)
    }

    /// `B^2` as an exact rational.
    pub fn bsq(&self) -> Rat {
        Rat::new(self.four_bsq, 4)
    }

    /// Pairing of two degree-2 classes `a_h*h + a_b*B` and `b_h*h + b_b*B`.
    pub fn pair_deg2(&self, a_h: &Rat, a_b: &Rat, b_h: &Rat, b_b: &Rat) -> Rat {
        a_h * b_h * Rat::from(self.h_squared)
            + (a_h * b_b + a_b * b_h) * self.bh()
            + a_b * b_b * self.bsq()
    }
}

impl Default for IntersectionData {
    fn default() -> Self {
        Self::untwisted()
    }
}

/// An even cohomology class on the surface: `r + a_h*h + a_b*B + s*pt`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceClass {
    pub r: Rat,
    #[serde(rename = "h")]
    pub a_h: Rat,
    #[serde(rename = "B")]
    pub a_b: Rat,
    #[serde(rename = "pt")]
    pub s: Rat,
}

/// An even cohomology class on the plane: `r + a_h*H + s*pt`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseClass {
    pub r: Rat,
    #[serde(rename = "H")]
    pub a_h: Rat,
    #[serde(rename = "pt")]
    pub s: Rat,
}

/// Errors from operations with a restricted domain.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("exponential input must be purely degree 2 (got r = {r}, pt = {s})")]
    NotDegreeTwo { r: Rat, s: Rat },
    #[error("square root requires leading coefficient 1 (got r = {0})")]
    LeadingCoefficientNotOne(Rat),
    #[error("pushforward of B is not defined in this model (got B coefficient {0})")]
    PushforwardOfB(Rat),
}

impl SurfaceClass {
    pub fn new(r: Rat, a_h: Rat, a_b: Rat, s: Rat) -> Self {
        SurfaceClass { r, a_h, a_b, s }
    }

    /// Convenience constructor from integer coefficients.
    pub fn ints(r: i64, a_h: i64, a_b: i64, s: i64) -> Self {
        SurfaceClass::new(r.into(), a_h.into(), a_b.into(), s.into())
    }

    pub fn zero() -> Self {
        Self::ints(0, 0, 0, 0)
    }

    pub fn one() -> Self {
        Self::ints(1, 0, 0, 0)
    }

    pub fn h() -> Self {
        Self::ints(0, 1, 0, 0)
    }

    pub fn b() -> Self {
        Self::ints(0, 0, 1, 0)
    }

    pub fn pt() -> Self {
        Self::ints(0, 0, 0, 1)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        SurfaceClass::new(c * &self.r, c * &self.a_h, c * &self.a_b, c * &self.s)
    }

    /// The degree-four coefficient, i.e. the integral over the surface.
    pub fn integral(&self) -> Rat {
        self.s.clone()
    }
}

impl BaseClass {
    pub fn new(r: Rat, a_h: Rat, s: Rat) -> Self {
        BaseClass { r, a_h, s }
    }

    pub fn ints(r: i64, a_h: i64, s: i64) -> Self {
        BaseClass::new(r.into(), a_h.into(), s.into())
    }

    pub fn zero() -> Self {
        Self::ints(0, 0, 0)
    }

    pub fn one() -> Self {
        Self::ints(1, 0, 0)
    }

    pub fn hyperplane() -> Self {
        Self::ints(0, 1, 0)
    }

    pub fn pt() -> Self {
        Self::ints(0, 0, 1)
    }

    /// Chern character of `O(k)` on the plane: `1 + k*H + (k^2/2)*pt`.
    pub fn line_bundle(k: i64) -> Self {
        BaseClass::new(Rat::one(), Rat::from(k), Rat::new(k * k, 2))
    }

    /// Todd class of the plane: `1 + (3/2)*H + pt`.
    pub fn todd_plane() -> Self {
        BaseClass::new(Rat::one(), Rat::new(3, 2), Rat::one())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        BaseClass::new(c * &self.r, c * &self.a_h, c * &self.s)
    }

    /// The degree-four coefficient, i.e. the integral over the plane.
    pub fn integral(&self) -> Rat {
        self.s.clone()
    }
}

macro_rules! class_linear_ops {
    ($ty:ident, $($field:ident),+) => {
        impl Add for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                $ty { $($field: &self.$field + &rhs.$field),+ }
            }
        }

        impl Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty {
                &self + &rhs
            }
        }

        impl Sub for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                $ty { $($field: &self.$field - &rhs.$field),+ }
            }
        }

        impl Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                &self - &rhs
            }
        }

        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $ty { $($field: -&self.$field),+ }
            }
        }
    };
}

class_linear_ops!(SurfaceClass, r, a_h, a_b, s);
class_linear_ops!(BaseClass, r, a_h, s);

/// Graded truncated product in the surface ring.
pub fn mul_surface(a: &SurfaceClass, b: &SurfaceClass, data: IntersectionData) -> SurfaceClass {
    SurfaceClass {
        r: &a.r * &b.r,
        a_h: &a.r * &b.a_h + &b.r * &a.a_h,
        a_b: &a.r * &b.a_b + &b.r * &a.a_b,
        s: &a.r * &b.s + &b.r * &a.s + data.pair_deg2(&a.a_h, &a.a_b, &b.a_h, &b.a_b),
    }
}

/// Cohomological dual `v -> sum i^k v_k`: flips the sign of the degree-2 part.
pub fn dual(a: &SurfaceClass) -> SurfaceClass {
    SurfaceClass {
        r: a.r.clone(),
        a_h: -&a.a_h,
        a_b: -&a.a_b,
        s: a.s.clone(),
    }
}

/// Exponential of a purely degree-2 class: `1 + eta + eta^2/2`.
pub fn exp_deg2(
    eta: &SurfaceClass,
    data: IntersectionData,
) -> Result<SurfaceClass, CohomologyError> {
    if !eta.r.is_zero() || !eta.s.is_zero() {
        return Err(CohomologyError::NotDegreeTwo {
            r: eta.r.clone(),
            s: eta.s.clone(),
        });
    }
    let eta_sq = data.pair_deg2(&eta.a_h, &eta.a_b, &eta.a_h, &eta.a_b);
    Ok(SurfaceClass {
        r: Rat::one(),
        a_h: eta.a_h.clone(),
        a_b: eta.a_b.clone(),
        s: eta_sq / Rat::from(2),
    })
}

/// Formal square root of a unit class `a = 1 + x`: `1 + x/2 - x^2/8`.
///
/// Exact under truncation: the returned class squares back to `a`.
pub fn sqrt_unit(
    a: &SurfaceClass,
    data: IntersectionData,
) -> Result<SurfaceClass, CohomologyError> {
    if a.r != Rat::one() {
        return Err(CohomologyError::LeadingCoefficientNotOne(a.r.clone()));
    }
    let x = a - &SurfaceClass::one();
    let x_sq = mul_surface(&x, &x, data);
    let half = Rat::new(1, 2);
    let eighth = Rat::new(1, 8);
    Ok(&(&SurfaceClass::one() + &x.scale(&half)) - &x_sq.scale(&eighth))
}

/// Mukai pairing: the degree-4 coefficient of `dual(a) * b * exp(c*h/2)`,
/// where `c` is the coefficient in `c1(S) = c*h`.
pub fn mukai_pairing(
    a: &SurfaceClass,
    b: &SurfaceClass,
    c1_coeff: &Rat,
    data: IntersectionData,
) -> Rat {
    let half_c1 = SurfaceClass::h().scale(&(c1_coeff / &Rat::from(2)));
    let exp_half_c1 = exp_deg2(&half_c1, data).expect("c1/2 is purely degree 2");
    mul_surface(&mul_surface(&dual(a), b, data), &exp_half_c1, data).integral()
}

/// Pushforward along the double cover: doubles degrees 0 and 2, keeps `pt`.
///
/// Only classes pulled back from the plane (plus `pt`) push forward in this
/// model; a nonzero `B` coefficient is rejected.
pub fn pushforward_double_cover(a: &SurfaceClass) -> Result<BaseClass, CohomologyError> {
    if !a.a_b.is_zero() {
        return Err(CohomologyError::PushforwardOfB(a.a_b.clone()));
    }
    let two = Rat::from(2);
    Ok(BaseClass {
        r: &two * &a.r,
        a_h: &two * &a.a_h,
        s: a.s.clone(),
    })
}

/// Pullback along the double cover: `H -> h`, `pt -> 2*pt`.
pub fn pullback_double_cover(b: &BaseClass) -> SurfaceClass {
    SurfaceClass {
        r: b.r.clone(),
        a_h: b.a_h.clone(),
        a_b: Rat::zero(),
        s: &Rat::from(2) * &b.s,
    }
}

/// Truncated product in the plane ring (`H^2 = pt`).
pub fn mul_base(a: &BaseClass, b: &BaseClass) -> BaseClass {
    BaseClass {
        r: &a.r * &b.r,
        a_h: &a.r * &b.a_h + &b.r * &a.a_h,
        s: &a.r * &b.s + &b.r * &a.s + &a.a_h * &b.a_h,
    }
}

fn fmt_terms(f: &mut fmt::Formatter<'_>, terms: &[(&Rat, &str)]) -> fmt::Result {
    let mut wrote = false;
    for (coeff, symbol) in terms {
        if coeff.is_zero() {
            continue;
        }
        let abs = coeff.abs();
        if wrote {
            write!(f, " {} ", if **coeff < Rat::zero() { "-" } else { "+" })?;
        } else if **coeff < Rat::zero() {
            write!(f, "-")?;
        }
        if symbol.is_empty() {
            write!(f, "{abs}")?;
        } else if abs == Rat::one() {
            write!(f, "{symbol}")?;
        } else {
            write!(f, "{abs}{symbol}")?;
        }
        wrote = true;
    }
    if !wrote {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(
            f,
            &[(&self.r, ""), (&self.a_h, "h"), (&self.a_b, "B"), (&self.s, "pt")],
        )
    }
}

impl fmt::Display for BaseClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, &[(&self.r, ""), (&self.a_h, "H"), (&self.s, "pt")])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(m: i64, n: i64) -> IntersectionData {
        IntersectionData::double_plane(m, n)
    }

    #[test]
    fn one_plus_h_squares_to_self_intersection_two() {
        let a = SurfaceClass::ints(1, 1, 0, 0);
        let sq = mul_surface(&a, &a, data(5, -7));
        assert_eq!(sq, SurfaceClass::ints(1, 2, 0, 2));
    }

    #[test]
    fn unit_law() {
        let x = SurfaceClass::new(Rat::new(3, 7), Rat::new(-1, 2), Rat::from(4), Rat::new(9, 5));
        assert_eq!(mul_surface(&x, &SurfaceClass::one(), data(1, 3)), x);
        assert_eq!(mul_surface(&SurfaceClass::one(), &x, data(1, 3)), x);
    }

    #[test]
    fn two_b_squared_is_n_points() {
        let two_b = SurfaceClass::ints(0, 0, 2, 0);
        let sq = mul_surface(&two_b, &two_b, data(1, 3));
        assert_eq!(sq, SurfaceClass::ints(0, 0, 0, 3));
    }

    #[test]
    fn dual_flips_degree_two_signs() {
        let a = SurfaceClass::ints(2, 3, 0, -1);
        assert_eq!(dual(&a), SurfaceClass::ints(2, -3, 0, -1));
        assert_eq!(dual(&dual(&a)), a);
        assert_eq!(dual(&SurfaceClass::one()), SurfaceClass::one());
    }

    #[test]
    fn exp_of_zero_is_one() {
        assert_eq!(
            exp_deg2(&SurfaceClass::zero(), data(1, 3)).unwrap(),
            SurfaceClass::one()
        );
    }

    #[test]
    fn exp_of_h() {
        assert_eq!(
            exp_deg2(&SurfaceClass::h(), data(9, -5)).unwrap(),
            SurfaceClass::ints(1, 1, 0, 1)
        );
    }

    #[test]
    fn exp_of_b() {
        // B^2/2 = n/8 = 3/8 here.
        assert_eq!(
            exp_deg2(&SurfaceClass::b(), data(1, 3)).unwrap(),
            SurfaceClass::new(Rat::one(), Rat::zero(), Rat::one(), Rat::new(3, 8))
        );
    }

    #[test]
    fn exp_rejects_mixed_degree() {
        assert!(matches!(
            exp_deg2(&SurfaceClass::one(), data(1, 3)),
            Err(CohomologyError::NotDegreeTwo { .. })
        ));
        assert!(exp_deg2(&SurfaceClass::pt(), data(1, 3)).is_err());
    }

    #[test]
    fn sqrt_of_one_is_one() {
        assert_eq!(
            sqrt_unit(&SurfaceClass::one(), data(1, 3)).unwrap(),
            SurfaceClass::one()
        );
    }

    #[test]
    fn sqrt_of_todd() {
        let td = SurfaceClass::new(Rat::one(), Rat::new(-1, 2), Rat::zero(), Rat::from(4));
        let root = sqrt_unit(&td, IntersectionData::untwisted()).unwrap();
        assert_eq!(
            root,
            SurfaceClass::new(Rat::one(), Rat::new(-1, 4), Rat::zero(), Rat::new(31, 16))
        );
        assert_eq!(mul_surface(&root, &root, IntersectionData::untwisted()), td);
    }

    #[test]
    fn sqrt_matches_an_exact_square() {
        // Square 1 + h first, then check the square root comes back.
        let a = SurfaceClass::ints(1, 1, 0, 0);
        let sq = mul_surface(&a, &a, IntersectionData::untwisted());
        assert_eq!(sq, SurfaceClass::ints(1, 2, 0, 2));
        assert_eq!(sqrt_unit(&sq, IntersectionData::untwisted()).unwrap(), a);
    }

    #[test]
    fn sqrt_rejects_nonunit() {
        assert!(matches!(
            sqrt_unit(&SurfaceClass::ints(2, 0, 0, 0), data(1, 3)),
            Err(CohomologyError::LeadingCoefficientNotOne(_))
        ));
    }

    #[test]
    fn mukai_diagonal_h_entry() {
        // sqrt(td)*h = h - pt/2 pairs with itself to -2.
        let v = SurfaceClass::new(Rat::zero(), Rat::one(), Rat::zero(), Rat::new(-1, 2));
        let c = Rat::from(-1);
        assert_eq!(mukai_pairing(&v, &v, &c, data(1, 3)), Rat::from(-2));
    }

    #[test]
    fn mukai_point_against_twisted_generator() {
        let d = data(1, 3);
        let sqrt_td =
            SurfaceClass::new(Rat::one(), Rat::new(-1, 4), Rat::zero(), Rat::new(31, 16));
        let gen = mul_surface(&sqrt_td, &SurfaceClass::ints(2, 0, 2, 0), d);
        let c = Rat::from(-1);
        assert_eq!(mukai_pairing(&SurfaceClass::pt(), &gen, &c, d), Rat::from(2));
    }

    #[test]
    fn mukai_euler_characteristic_of_structure_sheaf() {
        // <sqrt(td), sqrt(td)> = chi(O_S) = 4 for the branch-octic double plane.
        let sqrt_td =
            SurfaceClass::new(Rat::one(), Rat::new(-1, 4), Rat::zero(), Rat::new(31, 16));
        let c = Rat::from(-1);
        assert_eq!(
            mukai_pairing(&sqrt_td, &sqrt_td, &c, IntersectionData::untwisted()),
            Rat::from(4)
        );
    }

    #[test]
    fn pushforward_doubles_pulled_back_degrees() {
        let a = SurfaceClass::ints(4, -2, 0, 17);
        assert_eq!(
            pushforward_double_cover(&a).unwrap(),
            BaseClass::ints(8, -4, 17)
        );
        assert_eq!(
            pushforward_double_cover(&SurfaceClass::one()).unwrap(),
            BaseClass::ints(2, 0, 0)
        );
        assert_eq!(
            pushforward_double_cover(&SurfaceClass::pt()).unwrap(),
            BaseClass::pt()
        );
    }

    #[test]
    fn pushforward_rejects_b() {
        assert!(matches!(
            pushforward_double_cover(&SurfaceClass::b()),
            Err(CohomologyError::PushforwardOfB(_))
        ));
    }

    #[test]
    fn pullback_of_hyperplane_and_point() {
        assert_eq!(pullback_double_cover(&BaseClass::hyperplane()), SurfaceClass::h());
        assert_eq!(
            pullback_double_cover(&BaseClass::pt()),
            SurfaceClass::ints(0, 0, 0, 2)
        );
    }

    #[test]
    fn base_ring_products() {
        let o_minus_1 = BaseClass::line_bundle(-1);
        assert_eq!(mul_base(&o_minus_1, &o_minus_1), BaseClass::line_bundle(-2));

        let x = BaseClass::new(Rat::new(5, 3), Rat::new(-1, 2), Rat::from(7));
        assert_eq!(mul_base(&x, &BaseClass::one()), x);

        let b0 = BaseClass::ints(8, -16, 17);
        assert_eq!(mul_base(&BaseClass::todd_plane(), &b0), BaseClass::ints(8, -4, 1));
    }

    #[test]
    fn display_matches_conventions() {
        let td = SurfaceClass::new(Rat::one(), Rat::new(-1, 2), Rat::zero(), Rat::from(4));
        assert_eq!(td.to_string(), "1 - 1/2h + 4pt");
        assert_eq!(SurfaceClass::zero().to_string(), "0");
        assert_eq!(BaseClass::ints(8, -16, 17).to_string(), "8 - 16H + 17pt");
        assert_eq!(SurfaceClass::ints(0, 0, 2, 0).to_string(), "2B");
    }
}
