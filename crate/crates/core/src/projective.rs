//! Homogeneous coordinates `[x1, ..., xn : w]` with the homogeneous
//! component stored last.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{check_dim, Error, Result};
use crate::scalar::{denominator_lcm, Rational, Scalar};

/// Relative threshold below which a float `w` counts as zero.
pub const AT_INFINITY_EPS: f64 = 1e-12;

/// Whether a homogeneous vector names a point or a hyperplane (line in 2D,
/// plane in 3D). The arithmetic is identical for both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Point,
    Hyperplane,
}

impl Role {
    pub fn dual(self) -> Self {
        match self {
            Role::Point => Role::Hyperplane,
            Role::Hyperplane => Role::Point,
        }
    }
}

/// A projective element of `P^n`: `n` Euclidean-role components plus `w`.
///
/// Never the zero vector. Any nonzero multiple denotes the same element.
#[derive(Debug, Clone, PartialEq)]
pub struct HomVector<S> {
    coords: Vec<S>,
    w: S,
    role: Role,
}

impl<S: Scalar> HomVector<S> {
    pub fn new(coords: Vec<S>, w: S, role: Role) -> Result<Self> {
        if w.is_zero() && coords.iter().all(Zero::is_zero) {
            return Err(Error::ZeroVector);
        }
        Ok(Self { coords, w, role })
    }

    pub fn point(coords: Vec<S>, w: S) -> Result<Self> {
        Self::new(coords, w, Role::Point)
    }

    pub fn hyperplane(coords: Vec<S>, w: S) -> Result<Self> {
        Self::new(coords, w, Role::Hyperplane)
    }

    /// From all `n + 1` components, the last one being `w`.
    pub fn from_components(mut components: Vec<S>, role: Role) -> Result<Self> {
        let w = components.pop().ok_or(Error::DimensionMismatch {
            expected: 1,
            found: 0,
        })?;
        Self::new(components, w, role)
    }

    pub fn from_i64(coords: &[i64], w: i64, role: Role) -> Result<Self> {
        Self::new(
            coords.iter().map(|&c| S::from_i64(c)).collect(),
            S::from_i64(w),
            role,
        )
    }

    /// Euclidean dimension `n`.
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    pub fn w(&self) -> &S {
        &self.w
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn with_role(mut self, role: Role) -> Self {
        self.role = role;
        self
    }

    /// All `n + 1` components, `w` last.
    pub fn components(&self) -> Vec<S> {
        let mut c = self.coords.clone();
        c.push(self.w.clone());
        c
    }

    pub fn component(&self, k: usize) -> &S {
        if k < self.coords.len() {
            &self.coords[k]
        } else {
            &self.w
        }
    }

    fn max_coord_abs(&self) -> f64 {
        self.coords
            .iter()
            .map(|c| c.to_f64().abs())
            .fold(0.0, f64::max)
    }

    pub fn is_at_infinity(&self) -> bool {
        self.w.is_negligible(AT_INFINITY_EPS, self.max_coord_abs())
    }

    /// Multiplies every component by `lambda`.
    pub fn scaled(&self, lambda: &S) -> Result<Self> {
        Self::new(
            self.coords
                .iter()
                .map(|c| c.clone() * lambda.clone())
                .collect(),
            self.w.clone() * lambda.clone(),
            self.role,
        )
    }

    /// True when both vectors denote the same projective element:
    /// every 2x2 minor `a_i b_j - a_j b_i` vanishes (relative to `rel` for
    /// floats).
    pub fn projectively_eq(&self, other: &Self, rel: f64) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        let a = self.components();
        let b = other.components();
        let scale = crate::matrix::norm2_f64(&a) * crate::matrix::norm2_f64(&b);
        (0..a.len()).all(|i| {
            (i + 1..a.len()).all(|j| {
                let m = a[i].clone() * b[j].clone() - a[j].clone() * b[i].clone();
                m.is_negligible(rel, scale)
            })
        })
    }
}

/// `(x1/w, ..., xn/w)`; fails with [`Error::AtInfinity`] when `w` is zero
/// (floats: `|w| <= 1e-12 * max|x_i|`).
pub fn to_euclidean<S: Scalar>(v: &HomVector<S>) -> Result<Vec<S>> {
    if v.is_at_infinity() {
        return Err(Error::AtInfinity);
    }
    Ok(v.coords.iter().map(|c| c.clone() / v.w.clone()).collect())
}

/// `[coords : 1]` as a point.
pub fn from_euclidean<S: Scalar>(coords: &[S]) -> HomVector<S> {
    HomVector {
        coords: coords.to_vec(),
        w: S::one(),
        role: Role::Point,
    }
}

/// Canonical representative: `w = 1` for finite elements. Elements at
/// infinity get their largest-magnitude component set to 1 (floats) or
/// become coprime integers with a positive leading component (exact).
pub fn normalize<S: Scalar>(v: &HomVector<S>) -> HomVector<S> {
    if !v.is_at_infinity() {
        let inv = S::one() / v.w.clone();
        return HomVector {
            coords: v.coords.iter().map(|c| c.clone() * inv.clone()).collect(),
            w: S::one(),
            role: v.role,
        };
    }
    let factor = if S::is_exact() {
        direction_factor_exact(&v.coords)
    } else {
        let largest = v.coords.iter().fold(S::zero(), |best, c| {
            if c.abs() > best.abs() {
                c.clone()
            } else {
                best
            }
        });
        S::one() / largest
    };
    HomVector {
        coords: v
            .coords
            .iter()
            .map(|c| c.clone() * factor.clone())
            .collect(),
        w: S::zero(),
        role: v.role,
    }
}

/// Factor that turns `coords` into coprime integers with a positive first
/// nonzero entry.
fn direction_factor_exact<S: Scalar>(coords: &[S]) -> S {
    let rationals: Vec<Rational> = coords
        .iter()
        .map(|c| c.to_rational().expect("exact backend values are finite"))
        .collect();
    let lcm = denominator_lcm(&rationals);
    let ints: Vec<BigInt> = rationals
        .iter()
        .map(|r| r.numer() * (&lcm / r.denom()))
        .collect();
    let gcd = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let leading_negative = ints
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(Signed::is_negative);
    let factor = Rational::new(lcm, gcd);
    S::from_rational(&if leading_negative { -factor } else { factor })
}

/// Checks that two vectors live in the same projective space.
pub(crate) fn same_dim<S: Scalar>(a: &HomVector<S>, b: &HomVector<S>) -> Result<()> {
    check_dim(a.dim(), b.dim())
}
