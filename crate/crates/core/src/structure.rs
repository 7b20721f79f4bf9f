//! Skew-circulant algebra on the tangent 4-space.
//!
//! The structure `S` is the skew-circulant matrix with first row `(0, 1, 0, 0)`.
//! It satisfies `S^4 = -I`, so conjugation by `S` acts with period four on
//! bilinear forms. A positive definite metric `g` is *compatible* when
//! `g(Su, Sv) = g(u, v)`, and every compatible `g` carries the associated
//! metric `g~(u, v) = g(u, Sv) + g(Su, v)`, which is indefinite of signature
//! `(2, 2)`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::fmt;
use std::ops::Neg;

use nalgebra::{Matrix4, Scalar, Vector4};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

pub type Vec4 = Vector4<f64>;
pub type Mat4 = Matrix4<f64>;

/// Residual bound under which a metric counts as compatible with `S`.
pub const COMPATIBILITY_TOL: f64 = 1e-12;

/// Relative bound on `|g~(v, v)| / |v|^2` below which a vector is isotropic.
pub const ISOTROPIC_TOL: f64 = 1e-9;

/// Smallest `|det [u, Su, S^2u, S^3u]|` accepted as an S-basis.
pub const SBASIS_DET_TOL: f64 = 1e-10;

/// Tolerance for the angle relations between S-basis vectors.
pub const ANGLE_LAW_TOL: f64 = 1e-10;

/// Builds the skew-circulant matrix with the given first row.
///
/// Each row is the previous one shifted right by one place, with the entry
/// that wraps around to the front negated.
pub fn skew_circulant<T>(first_row: [T; 4]) -> Matrix4<T>
where
    T: Scalar + Copy + Neg<Output = T>,
{
    Matrix4::from_fn(|i, j| {
        if j >= i {
            first_row[j - i]
        } else {
            -first_row[4 + j - i]
        }
    })
}

/// `S` with integer entries, for exact identities.
pub fn structure_s_exact() -> Matrix4<i64> {
    skew_circulant([0, 1, 0, 0])
}

pub fn structure_s() -> Mat4 {
    skew_circulant([0.0, 1.0, 0.0, 0.0])
}

/// `J = S^2`.
pub fn structure_j() -> Mat4 {
    let s = structure_s();
    s * s
}

/// Exact integer powers of `S`.
pub fn structure_s_pow_exact(k: u32) -> Matrix4<i64> {
    let s = structure_s_exact();
    (0..k).fold(Matrix4::identity(), |acc, _| acc * s)
}

/// Applies `S^k` to `v`.
pub fn s_pow_apply(k: u32, v: &Vec4) -> Vec4 {
    let s = structure_s();
    (0..k).fold(*v, |acc, _| s * acc)
}

/// A symmetric positive definite bilinear form on 4-space.
#[derive(Debug, Clone, PartialEq)]
pub struct Metric {
    gram: Mat4,
    compatibility_residual: f64,
}

impl Metric {
    /// Validates finiteness, exact symmetry and positive definiteness
    /// (all leading principal minors positive).
    pub fn new(gram: Mat4) -> Result<Self> {
        if gram.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("metric"));
        }
        for i in 0..4 {
            for j in (i + 1)..4 {
                if gram[(i, j)] != gram[(j, i)] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        for order in 1..=4 {
            let minor = gram.view((0, 0), (order, order)).determinant();
            if minor <= 0.0 {
                return Err(Error::NotPositiveDefinite {
                    order,
                    value: minor,
                });
            }
        }
        let compatibility_residual = compatibility_residual(&gram);
        Ok(Self {
            gram,
            compatibility_residual,
        })
    }

    /// Like [`Metric::new`], but also requires compatibility with `S`.
    pub fn compatible(gram: Mat4) -> Result<Self> {
        let g = Self::new(gram)?;
        if !g.is_compatible() {
            return Err(Error::NotCompatible {
                residual: g.compatibility_residual,
            });
        }
        Ok(g)
    }

    pub fn identity() -> Self {
        Self::new(Mat4::identity()).expect("identity is a metric")
    }

    /// Averages a random positive definite form over the cyclic group
    /// generated by `S`: `G = 1/4 * sum_k (S^k)^T G0 S^k`.
    pub fn random_compatible(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Mat4::from_fn(|_, _| rng.random_range(-1.0..=1.0));
        let g0 = a.transpose() * a + Mat4::identity() * 4.0;
        Self::new(average_over_s(&g0)).expect("averaged metric is positive definite")
    }

    pub fn gram(&self) -> &Mat4 {
        &self.gram
    }

    /// `max |S^T g S - g|`.
    pub fn compatibility_residual(&self) -> f64 {
        self.compatibility_residual
    }

    pub fn is_compatible(&self) -> bool {
        self.compatibility_residual <= COMPATIBILITY_TOL
    }

    pub fn inner(&self, u: &Vec4, v: &Vec4) -> f64 {
        u.dot(&(self.gram * v))
    }

    pub fn norm(&self, v: &Vec4) -> f64 {
        self.inner(v, v).sqrt()
    }

    /// Angle between two nonzero vectors; the cosine is clamped to `[-1, 1]`.
    pub fn angle(&self, u: &Vec4, v: &Vec4) -> Result<f64> {
        let nu = self.norm(u);
        let nv = self.norm(v);
        if nu == 0.0 || nv == 0.0 {
            return Err(Error::ZeroVector("angle"));
        }
        let cos = (self.inner(u, v) / (nu * nv)).clamp(-1.0, 1.0);
        Ok(cos.acos())
    }

    pub fn normalize(&self, v: &Vec4) -> Result<Vec4> {
        let n = self.norm(v);
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroVector("direction"));
        }
        Ok(v / n)
    }
}

/// Group average `1/4 * sum_{k=0..3} (S^k)^T G S^k`, symmetrized exactly.
pub fn average_over_s(g0: &Mat4) -> Mat4 {
    let s = structure_s();
    let mut sk = Mat4::identity();
    let mut acc = Mat4::zeros();
    for _ in 0..4 {
        acc += sk.transpose() * g0 * sk;
        sk = s * sk;
    }
    let acc = acc * 0.25;
    (acc + acc.transpose()) * 0.5
}

fn compatibility_residual(gram: &Mat4) -> f64 {
    let s = structure_s();
    (s.transpose() * gram * s - gram).amax()
}

/// The associated metric `g~(u, v) = g(u, Sv) + g(Su, v)`.
pub fn assoc(g: &Metric, u: &Vec4, v: &Vec4) -> f64 {
    let s = structure_s();
    g.inner(u, &(s * v)) + g.inner(&(s * u), v)
}

/// Gram matrix of `g~` in the ambient coordinates: `G S + S^T G`.
pub fn assoc_gram(g: &Metric) -> Mat4 {
    let s = structure_s();
    g.gram() * s + s.transpose() * g.gram()
}

/// Counts of positive, negative and zero eigenvalues of `g~`, with zero
/// decided relative to the largest eigenvalue magnitude.
pub fn assoc_signature(g: &Metric) -> (usize, usize, usize) {
    let eig = assoc_gram(g).symmetric_eigen();
    let scale = eig.eigenvalues.amax();
    let zero = ISOTROPIC_TOL * scale;
    eig.eigenvalues.iter().fold((0, 0, 0), |(p, n, z), &l| {
        if l > zero {
            (p + 1, n, z)
        } else if l < -zero {
            (p, n + 1, z)
        } else {
            (p, n, z + 1)
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CausalCharacter {
    SpaceLike,
    Isotropic,
    TimeLike,
}

impl fmt::Display for CausalCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CausalCharacter::SpaceLike => "space-like",
            CausalCharacter::Isotropic => "isotropic",
            CausalCharacter::TimeLike => "time-like",
        })
    }
}

/// Sign of `g~(v, v)`; the isotropic band is `|g~(v, v)| <= tol * |v|_g^2`.
pub fn causal_character(g: &Metric, v: &Vec4, tol: f64) -> Result<CausalCharacter> {
    let len2 = g.inner(v, v);
    if len2 == 0.0 {
        return Err(Error::ZeroVector("causal character"));
    }
    let q = assoc(g, v, v);
    let band = tol * len2;
    Ok(if q > band {
        CausalCharacter::SpaceLike
    } else if q < -band {
        CausalCharacter::TimeLike
    } else {
        CausalCharacter::Isotropic
    })
}

/// `cos(phi)`, with rounding-level values (as at the floating-point `pi/2`)
/// snapped to exactly zero.
pub fn cos_phi(phi: f64) -> f64 {
    let c = phi.cos();
    if c.abs() <= 4.0 * f64::EPSILON {
        0.0
    } else {
        c
    }
}

pub fn in_phi_range(phi: f64) -> bool {
    phi.is_finite() && phi > FRAC_PI_4 && phi < 3.0 * FRAC_PI_4
}

pub fn check_phi(phi: f64) -> Result<()> {
    if in_phi_range(phi) {
        Ok(())
    } else {
        Err(Error::PhiOutOfRange { phi })
    }
}

/// Causal character of an S-basis generator from its angle `phi = angle(u, Su)`.
///
/// For a unit generator `g~(u, u) = 2 cos(phi)`, so the isotropic band is the
/// same one [`causal_character`] uses with [`ISOTROPIC_TOL`].
pub fn classify_by_phi(phi: f64) -> Result<CausalCharacter> {
    check_phi(phi)?;
    let q = 2.0 * cos_phi(phi);
    Ok(if q > ISOTROPIC_TOL {
        CausalCharacter::SpaceLike
    } else if q < -ISOTROPIC_TOL {
        CausalCharacter::TimeLike
    } else {
        CausalCharacter::Isotropic
    })
}

/// The basis `{u, Su, S^2u, S^3u}` induced by a unit vector `u`.
#[derive(Debug, Clone, PartialEq)]
pub struct SBasis {
    pub generator: Vec4,
    pub vectors: [Vec4; 4],
    /// `angle(u, Su)` in radians.
    pub phi: f64,
}

impl SBasis {
    pub fn cos_phi(&self) -> f64 {
        cos_phi(self.phi)
    }

    /// Column matrix `[u, Su, S^2u, S^3u]`.
    pub fn matrix(&self) -> Mat4 {
        Mat4::from_columns(&self.vectors)
    }

    /// Ambient vector with coordinates `(x, y, z, t)` in this basis.
    pub fn combine(&self, coords: &Vec4) -> Vec4 {
        self.matrix() * coords
    }
}

/// Normalizes `u` and builds the S-basis it induces, checking linear
/// independence, the angle law and the bounds on `phi`.
pub fn s_basis(g: &Metric, u: &Vec4) -> Result<SBasis> {
    if u.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("generator"));
    }
    if !g.is_compatible() {
        return Err(Error::NotCompatible {
            residual: g.compatibility_residual(),
        });
    }
    let u = g.normalize(u)?;
    let s = structure_s();
    let su = s * u;
    let s2u = s * su;
    let s3u = s * s2u;
    let vectors = [u, su, s2u, s3u];
    let det = Mat4::from_columns(&vectors).determinant();
    if det.abs() <= SBASIS_DET_TOL {
        return Err(Error::NotAnSBasis { det });
    }

    let phi = g.angle(&u, &su)?;
    let check = |name: &str, lhs: f64, rhs: f64| -> Result<()> {
        if (lhs - rhs).abs() > ANGLE_LAW_TOL {
            return Err(Error::AngleLaw(format!("{name}: {lhs} != {rhs}")));
        }
        Ok(())
    };
    check("angle(Su, S2u)", g.angle(&su, &s2u)?, phi)?;
    check("angle(S2u, S3u)", g.angle(&s2u, &s3u)?, phi)?;
    check(
        "pi - angle(S3u, u)",
        std::f64::consts::PI - g.angle(&s3u, &u)?,
        phi,
    )?;
    check("angle(u, S2u)", g.angle(&u, &s2u)?, FRAC_PI_2)?;
    check("angle(Su, S3u)", g.angle(&su, &s3u)?, FRAC_PI_2)?;
    check_phi(phi)?;

    Ok(SBasis {
        generator: u,
        vectors,
        phi,
    })
}
