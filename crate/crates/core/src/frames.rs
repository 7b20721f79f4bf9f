//! g-orthonormal frames of the subspaces spanned by S-basis vectors.
//!
//! | tag      | span                | frame                                             |
//! |----------|---------------------|---------------------------------------------------|
//! | `Alpha1` | `u, Su, S^2u`       | `u`, `(-c u + Su - c S^2u)/w`, `S^2u`             |
//! | `Alpha2` | `u, Su, S^3u`       | `Su`, `(u - c Su + c S^3u)/w`, `S^3u`             |
//! | `Beta1`  | `u, S^2u`           | `u`, `S^2u`                                       |
//! | `Beta2`  | `u, Su`             | `(u + Su)/sqrt(2(1+c))`, `(-u + Su)/sqrt(2(1-c))` |
//! | `Beta3`  | `u, S^3u`           | `(u + S^3u)/sqrt(2(1-c))`, `(-u + S^3u)/sqrt(2(1+c))` |
//!
//! with `c = cos(phi)` and `w = sqrt(1 - 2c^2)`.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::structure::{assoc, cos_phi, s_basis, Metric, SBasis, Vec4};

/// Frames with `|1 - 2cos^2(phi)|` at or below this are rejected.
pub const DEGENERACY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SubspaceTag {
    Alpha1,
    Alpha2,
    Beta1,
    Beta2,
    Beta3,
}

impl SubspaceTag {
    pub const ALL: [SubspaceTag; 5] = [
        SubspaceTag::Alpha1,
        SubspaceTag::Alpha2,
        SubspaceTag::Beta1,
        SubspaceTag::Beta2,
        SubspaceTag::Beta3,
    ];

    pub fn dim(self) -> usize {
        match self {
            SubspaceTag::Alpha1 | SubspaceTag::Alpha2 => 3,
            _ => 2,
        }
    }

    /// Exponents `k` of the iterates `S^k u` spanning the subspace.
    pub fn iterates(self) -> &'static [u32] {
        match self {
            SubspaceTag::Alpha1 => &[0, 1, 2],
            SubspaceTag::Alpha2 => &[0, 1, 3],
            SubspaceTag::Beta1 => &[0, 2],
            SubspaceTag::Beta2 => &[0, 1],
            SubspaceTag::Beta3 => &[0, 3],
        }
    }
}

impl fmt::Display for SubspaceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SubspaceTag::Alpha1 => "alpha1",
            SubspaceTag::Alpha2 => "alpha2",
            SubspaceTag::Beta1 => "beta1",
            SubspaceTag::Beta2 => "beta2",
            SubspaceTag::Beta3 => "beta3",
        })
    }
}

impl std::str::FromStr for SubspaceTag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "alpha1" => Ok(SubspaceTag::Alpha1),
            "alpha2" => Ok(SubspaceTag::Alpha2),
            "beta1" => Ok(SubspaceTag::Beta1),
            "beta2" => Ok(SubspaceTag::Beta2),
            "beta3" => Ok(SubspaceTag::Beta3),
            other => Err(format!("unknown subspace `{other}`")),
        }
    }
}

/// An ordered g-orthonormal basis of one of the tagged subspaces.
///
/// The generator's `phi` is carried along so quadric assembly never has to
/// recover it from the (renormalized) frame vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    pub vectors: Vec<Vec4>,
    pub tag: SubspaceTag,
    pub phi: f64,
    pub basis: SBasis,
}

impl Frame {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// The iterates `S^k u` that span the subspace.
    pub fn spanning_iterates(&self) -> Vec<Vec4> {
        self.tag
            .iterates()
            .iter()
            .map(|&k| self.basis.vectors[k as usize])
            .collect()
    }
}

/// Gram matrix of `g~` restricted to a frame.
pub type AssocGramK = DMatrix<f64>;

fn alpha_width(phi: f64) -> Result<f64> {
    let c = cos_phi(phi);
    let gap = 1.0 - 2.0 * c * c;
    if gap.abs() <= DEGENERACY_TOL || gap < 0.0 {
        return Err(Error::DegenerateFrame {
            phi,
            gap: gap.abs(),
        });
    }
    Ok(gap.sqrt())
}

pub fn frame_alpha1(g: &Metric, u: &Vec4) -> Result<Frame> {
    let basis = s_basis(g, u)?;
    let phi = basis.phi;
    let w = alpha_width(phi)?;
    let c = cos_phi(phi);
    let [u, su, s2u, _] = basis.vectors;
    let e2 = (su - u * c - s2u * c) / w;
    Ok(Frame {
        vectors: vec![u, e2, s2u],
        tag: SubspaceTag::Alpha1,
        phi,
        basis,
    })
}

pub fn frame_alpha2(g: &Metric, u: &Vec4) -> Result<Frame> {
    let basis = s_basis(g, u)?;
    let phi = basis.phi;
    let w = alpha_width(phi)?;
    let c = cos_phi(phi);
    let [u, su, _, s3u] = basis.vectors;
    let e2 = (u - su * c + s3u * c) / w;
    Ok(Frame {
        vectors: vec![su, e2, s3u],
        tag: SubspaceTag::Alpha2,
        phi,
        basis,
    })
}

pub fn frame_beta1(g: &Metric, u: &Vec4) -> Result<Frame> {
    let basis = s_basis(g, u)?;
    let [u, _, s2u, _] = basis.vectors;
    Ok(Frame {
        vectors: vec![u, s2u],
        tag: SubspaceTag::Beta1,
        phi: basis.phi,
        basis,
    })
}

pub fn frame_beta2(g: &Metric, u: &Vec4) -> Result<Frame> {
    let basis = s_basis(g, u)?;
    let c = cos_phi(basis.phi);
    let [u, su, _, _] = basis.vectors;
    let e1 = (u + su) / (2.0 * (1.0 + c)).sqrt();
    let e2 = (su - u) / (2.0 * (1.0 - c)).sqrt();
    Ok(Frame {
        vectors: vec![e1, e2],
        tag: SubspaceTag::Beta2,
        phi: basis.phi,
        basis,
    })
}

pub fn frame_beta3(g: &Metric, u: &Vec4) -> Result<Frame> {
    let basis = s_basis(g, u)?;
    let c = cos_phi(basis.phi);
    let [u, _, _, s3u] = basis.vectors;
    let e1 = (u + s3u) / (2.0 * (1.0 - c)).sqrt();
    let e2 = (s3u - u) / (2.0 * (1.0 + c)).sqrt();
    Ok(Frame {
        vectors: vec![e1, e2],
        tag: SubspaceTag::Beta3,
        phi: basis.phi,
        basis,
    })
}

pub fn frame(g: &Metric, u: &Vec4, tag: SubspaceTag) -> Result<Frame> {
    match tag {
        SubspaceTag::Alpha1 => frame_alpha1(g, u),
        SubspaceTag::Alpha2 => frame_alpha2(g, u),
        SubspaceTag::Beta1 => frame_beta1(g, u),
        SubspaceTag::Beta2 => frame_beta2(g, u),
        SubspaceTag::Beta3 => frame_beta3(g, u),
    }
}

/// Entries `g~(f_i, f_j)` computed numerically.
pub fn assoc_gram_on_frame(g: &Metric, f: &Frame) -> AssocGramK {
    let k = f.dim();
    DMatrix::from_fn(k, k, |i, j| assoc(g, &f.vectors[i], &f.vectors[j]))
}

/// Entries `g(f_i, f_j)`.
pub fn metric_gram_on_frame(g: &Metric, f: &Frame) -> DMatrix<f64> {
    let k = f.dim();
    DMatrix::from_fn(k, k, |i, j| g.inner(&f.vectors[i], &f.vectors[j]))
}

/// The `g~` Gram matrix of each frame as a function of `phi` alone.
pub fn closed_form_gram(tag: SubspaceTag, phi: f64) -> Result<AssocGramK> {
    crate::structure::check_phi(phi)?;
    let c = cos_phi(phi);
    let m = match tag {
        SubspaceTag::Alpha1 | SubspaceTag::Alpha2 => {
            let w = alpha_width(phi)?;
            let w23 = if tag == SubspaceTag::Alpha1 { w } else { -w };
            DMatrix::from_row_slice(
                3,
                3,
                &[2.0 * c, w, 0.0, w, -2.0 * c, w23, 0.0, w23, 2.0 * c],
            )
        }
        SubspaceTag::Beta1 => DMatrix::from_diagonal(&DVector::from_vec(vec![2.0 * c, 2.0 * c])),
        SubspaceTag::Beta2 => {
            DMatrix::from_diagonal(&DVector::from_vec(vec![beta_plus(c), beta_minus(c)]))
        }
        SubspaceTag::Beta3 => {
            DMatrix::from_diagonal(&DVector::from_vec(vec![beta_minus(c), beta_plus(c)]))
        }
    };
    Ok(m)
}

/// `(2c + 1) / (1 + c)`
pub fn beta_plus(c: f64) -> f64 {
    (2.0 * c + 1.0) / (1.0 + c)
}

/// `(2c - 1) / (1 - c)`
pub fn beta_minus(c: f64) -> f64 {
    (2.0 * c - 1.0) / (1.0 - c)
}

/// Distance from `v` to the span of `spanning`, via least squares.
pub fn span_residual(spanning: &[Vec4], v: &Vec4) -> f64 {
    let a = DMatrix::from_fn(4, spanning.len(), |i, j| spanning[j][i]);
    let b = DVector::from_column_slice(v.as_slice());
    let svd = a.clone().svd(true, true);
    match svd.solve(&b, 1e-14) {
        Ok(x) => (a * x - b).norm(),
        Err(_) => f64::INFINITY,
    }
}

/// An S-basis that is g-orthonormal (`phi = pi/2`), built from any `w`
/// that induces an S-basis.
///
/// Rotates `w` inside the alpha1 frame it generates until `g~(u, u) = 0`;
/// for a unit `u` that means `g(u, Su) = 0`, and the remaining angle
/// relations make the whole basis orthonormal.
pub fn orthonormal_s_basis(g: &Metric, w: &Vec4) -> Result<SBasis> {
    let b = s_basis(g, w)?;
    if (b.phi - FRAC_PI_2).abs() <= 1e-15 {
        return Ok(b);
    }
    let f = frame_alpha1(g, w)?;
    let c = cos_phi(f.phi);
    let width = (1.0 - 2.0 * c * c).sqrt();
    // g~(cos t e1 + sin t e2) = 2c cos 2t + width sin 2t
    let t = 0.5 * (-2.0 * c).atan2(width);
    let u = f.vectors[0] * t.cos() + f.vectors[1] * t.sin();
    s_basis(g, &u)
}

/// A unit generator whose S-basis has angle `phi`.
///
/// In coordinates of an orthonormal S-basis, `S` acts as the shift
/// `(x, y, z, t) -> (-t, x, y, z)`, whose two invariant planes contain
/// `p = (1, sqrt2, 1, 0)/2` (where `cos(v, Sv) = 1/sqrt2`) and
/// `q = (1, -sqrt2, 1, 0)/2` (where it is `-1/sqrt2`). The mixture
/// `cos(th) p + sin(th) q` has `cos(phi) = cos(2 th)/sqrt2`.
pub fn generator_with_phi(g: &Metric, phi: f64, seed_vector: &Vec4) -> Result<Vec4> {
    crate::structure::check_phi(phi)?;
    let ortho = orthonormal_s_basis(g, seed_vector)?;
    let r = std::f64::consts::SQRT_2;
    let p = Vec4::new(0.5, 0.5 * r, 0.5, 0.0);
    let q = Vec4::new(0.5, -0.5 * r, 0.5, 0.0);
    let th = 0.5 * (r * phi.cos()).clamp(-1.0, 1.0).acos();
    Ok(ortho.combine(&(p * th.cos() + q * th.sin())))
}
