//! Quadratic forms of `g~`-spheres and their classification as Euclidean
//! quadrics.
//!
//! A form is a symmetric matrix `A` together with a right-hand side `a`,
//! standing for the locus `{x : x^T A x = a}`. All loci here are centered at
//! the origin, so the type is decided by the inertia of `A` (counts of
//! positive, negative and zero eigenvalues) and the sign of `a`.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI, SQRT_2};
use std::fmt;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::frames::{self, beta_minus, beta_plus, closed_form_gram, SubspaceTag};
use crate::structure::{assoc_gram, check_phi, cos_phi, Metric, Vec4};

/// Relative eigenvalue-zero threshold: `|l| <= ZERO_TOL * max |l|`.
pub const ZERO_TOL: f64 = 1e-9;

/// Distance from `pi/3`, `pi/2` or `2pi/3` at which `phi` counts as that value.
pub const PHI_BOUNDARY_TOL: f64 = 1e-9;

/// Bound on `|Q(p) - a|` for sampled points.
pub const SAMPLE_RESIDUAL_TOL: f64 = 1e-8;

const SYMMETRY_TOL: f64 = 1e-12;

/// `{x : x^T matrix x = rhs}` in 2, 3 or 4 dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticForm {
    matrix: DMatrix<f64>,
    rhs: f64,
}

impl QuadraticForm {
    /// Accepts square matrices of size 2 to 4 that are symmetric up to
    /// rounding; the stored matrix is exactly symmetric.
    pub fn new(matrix: DMatrix<f64>, rhs: f64) -> Result<Self> {
        let (r, c) = matrix.shape();
        if r != c || !(2..=4).contains(&r) {
            return Err(Error::InvalidForm(format!("shape {r}x{c}")));
        }
        if !rhs.is_finite() || matrix.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("quadratic form"));
        }
        let asym = (&matrix - matrix.transpose()).amax();
        if asym > SYMMETRY_TOL * matrix.amax().max(1.0) {
            return Err(Error::InvalidForm(format!("asymmetry {asym:e}")));
        }
        let matrix = (&matrix + matrix.transpose()) * 0.5;
        Ok(Self { matrix, rhs })
    }

    pub fn diagonal(diag: &[f64], rhs: f64) -> Result<Self> {
        Self::new(
            DMatrix::from_diagonal(&DVector::from_column_slice(diag)),
            rhs,
        )
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn rhs(&self) -> f64 {
        self.rhs
    }

    /// `x^T A x`.
    pub fn value(&self, x: &[f64]) -> f64 {
        let v = DVector::from_column_slice(x);
        v.dot(&(&self.matrix * &v))
    }

    pub fn residual(&self, x: &[f64]) -> f64 {
        (self.value(x) - self.rhs).abs()
    }

    /// The same locus in coordinates `x'` with `x = P x'`: matrix `P^T A P`.
    pub fn congruence(&self, p: &TransformP) -> Result<Self> {
        if p.matrix.nrows() != self.dim() {
            return Err(Error::InvalidForm(format!(
                "transform of size {} applied to a {}-dimensional form",
                p.matrix.nrows(),
                self.dim()
            )));
        }
        Self::new(p.matrix.transpose() * &self.matrix * &p.matrix, self.rhs)
    }

    pub fn scaled(&self, k: f64) -> Result<Self> {
        Self::new(&self.matrix * k, self.rhs * k)
    }

    pub fn coefficients(&self) -> Vec<Vec<f64>> {
        self.matrix
            .row_iter()
            .map(|r| r.iter().copied().collect())
            .collect()
    }

    /// Eigenvalues in descending order with matching unit eigenvectors.
    pub fn spectrum(&self) -> Spectrum {
        let eig = self.matrix.clone().symmetric_eigen();
        let mut order: Vec<usize> = (0..self.dim()).collect();
        order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
        Spectrum {
            values: order.iter().map(|&i| eig.eigenvalues[i]).collect(),
            vectors: order
                .iter()
                .map(|&i| eig.eigenvectors.column(i).iter().copied().collect())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

/// Counts of positive, negative and zero eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Spectrum {
    fn zero_band(&self, tol: f64) -> f64 {
        tol * self.values.iter().fold(0.0f64, |m, l| m.max(l.abs()))
    }

    pub fn inertia(&self, tol: f64) -> Inertia {
        let band = self.zero_band(tol);
        let mut out = Inertia {
            positive: 0,
            negative: 0,
            zero: 0,
        };
        for &l in &self.values {
            if l > band {
                out.positive += 1;
            } else if l < -band {
                out.negative += 1;
            } else {
                out.zero += 1;
            }
        }
        out
    }
}

/// A coordinate change `x = P x'` between orthonormal systems.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformP {
    pub matrix: DMatrix<f64>,
}

impl TransformP {
    /// `max |P^T P - I|`.
    pub fn orthogonality_residual(&self) -> f64 {
        let n = self.matrix.nrows();
        (self.matrix.transpose() * &self.matrix - DMatrix::identity(n, n)).amax()
    }

    /// Primed coordinates of an unprimed point: `x' = P^T x`.
    pub fn to_primed(&self, x: &[f64]) -> Vec<f64> {
        (self.matrix.transpose() * DVector::from_column_slice(x))
            .iter()
            .copied()
            .collect()
    }

    pub fn from_primed(&self, xp: &[f64]) -> Vec<f64> {
        (&self.matrix * DVector::from_column_slice(xp))
            .iter()
            .copied()
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RhsSign {
    Negative,
    Zero,
    Positive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuadricClass {
    /// 4-dimensional locus reported by its inertia and the sign of `a`.
    Hyperquadric {
        positive: usize,
        negative: usize,
        zero: usize,
        rhs: RhsSign,
    },
    /// Nondegenerate indefinite 4-dimensional locus with `a = 0`.
    HyperCone {
        positive: usize,
        negative: usize,
    },
    Ellipsoid,
    HyperboloidOneSheet,
    HyperboloidTwoSheets,
    Cone,
    EllipticCylinder,
    HyperbolicCylinder,
    PairOfPlanes,
    TwoParallelPlanes,
    SinglePlane,
    Circle,
    Ellipse,
    Hyperbola,
    TwoIntersectingLines,
    TwoParallelLines,
    SingleLine,
    Point,
    Empty,
    /// Zero matrix with `a = 0`: the whole space.
    OtherDegenerate,
}

impl fmt::Display for QuadricClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use QuadricClass::*;
        match self {
            Hyperquadric {
                positive,
                negative,
                zero,
                rhs,
            } => {
                let rhs = match rhs {
                    RhsSign::Negative => "negative",
                    RhsSign::Zero => "zero",
                    RhsSign::Positive => "positive",
                };
                write!(f, "hyperquadric-({positive},{negative},{zero})-rhs-{rhs}")
            }
            HyperCone { positive, negative } => write!(f, "hyper-cone-({positive},{negative})"),
            other => f.write_str(match other {
                Ellipsoid => "ellipsoid",
                HyperboloidOneSheet => "hyperboloid-one-sheet",
                HyperboloidTwoSheets => "hyperboloid-two-sheets",
                Cone => "cone",
                EllipticCylinder => "elliptic-cylinder",
                HyperbolicCylinder => "hyperbolic-cylinder",
                PairOfPlanes => "pair-of-planes",
                TwoParallelPlanes => "two-parallel-planes",
                SinglePlane => "single-plane",
                Circle => "circle",
                Ellipse => "ellipse",
                Hyperbola => "hyperbola",
                TwoIntersectingLines => "two-intersecting-lines",
                TwoParallelLines => "two-parallel-lines",
                SingleLine => "single-line",
                Point => "point",
                Empty => "empty",
                OtherDegenerate => "other-degenerate",
                Hyperquadric { .. } | HyperCone { .. } => unreachable!(),
            }),
        }
    }
}

impl Serialize for QuadricClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn rhs_sign(rhs: f64, spectrum: &Spectrum, tol: f64) -> RhsSign {
    let band = spectrum.zero_band(tol);
    if rhs > band {
        RhsSign::Positive
    } else if rhs < -band {
        RhsSign::Negative
    } else {
        RhsSign::Zero
    }
}

/// Classifies `{x : x^T A x = a}` from the eigenvalue signs of `A` and the
/// sign of `a`, with zero decided relative to the largest `|eigenvalue|`.
pub fn classify(form: &QuadraticForm, tol: f64) -> QuadricClass {
    let spectrum = form.spectrum();
    let inertia = spectrum.inertia(tol);
    let sign = rhs_sign(form.rhs, &spectrum, tol);
    if form.dim() == 4 {
        return classify_4d(inertia, sign);
    }

    // x^T A x = a and x^T (-A) x = -a are the same locus
    let (p, n, positive_rhs) = match sign {
        RhsSign::Negative => (inertia.negative, inertia.positive, true),
        RhsSign::Zero => (inertia.positive, inertia.negative, false),
        RhsSign::Positive => (inertia.positive, inertia.negative, true),
    };
    let z = inertia.zero;

    use QuadricClass::*;
    match (form.dim(), p, n, z, positive_rhs) {
        (_, 0, 0, _, true) => Empty,
        (_, 0, 0, _, false) => OtherDegenerate,

        (3, 3, 0, 0, true) => Ellipsoid,
        (3, 2, 1, 0, true) => HyperboloidOneSheet,
        (3, 1, 2, 0, true) => HyperboloidTwoSheets,
        (3, 0, 3, 0, true) => Empty,
        (3, _, _, 0, false) if p > 0 && n > 0 => Cone,
        (3, _, _, 0, false) => Point,
        (3, 2, 0, 1, true) => EllipticCylinder,
        (3, 1, 1, 1, true) => HyperbolicCylinder,
        (3, 0, 2, 1, true) => Empty,
        (3, 1, 1, 1, false) => PairOfPlanes,
        (3, _, _, 1, false) => SingleLine,
        (3, 1, 0, 2, true) => TwoParallelPlanes,
        (3, 0, 1, 2, true) => Empty,
        (3, _, _, 2, false) => SinglePlane,

        (2, 2, 0, 0, true) => {
            let (l1, l2) = (spectrum.values[0].abs(), spectrum.values[1].abs());
            if (l1 - l2).abs() <= spectrum.zero_band(tol) {
                Circle
            } else {
                Ellipse
            }
        }
        (2, 1, 1, 0, true) => Hyperbola,
        (2, 0, 2, 0, true) => Empty,
        (2, 1, 1, 0, false) => TwoIntersectingLines,
        (2, _, _, 0, false) => Point,
        (2, 1, 0, 1, true) => TwoParallelLines,
        (2, 0, 1, 1, true) => Empty,
        (2, _, _, 1, false) => SingleLine,

        (dim, ..) => unreachable!("inertia {inertia:?} in dimension {dim}"),
    }
}

fn classify_4d(inertia: Inertia, rhs: RhsSign) -> QuadricClass {
    if rhs == RhsSign::Zero && inertia.zero == 0 && inertia.positive > 0 && inertia.negative > 0 {
        QuadricClass::HyperCone {
            positive: inertia.positive,
            negative: inertia.negative,
        }
    } else {
        QuadricClass::Hyperquadric {
            positive: inertia.positive,
            negative: inertia.negative,
            zero: inertia.zero,
            rhs,
        }
    }
}

/// `normal . x = offset` with a unit normal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Hyperplane {
    pub normal: Vec<f64>,
    pub offset: f64,
}

impl Hyperplane {
    /// Unit normal whose first non-negligible component is positive.
    fn canonical(normal: Vec<f64>, offset: f64) -> Self {
        let len = normal.iter().map(|x| x * x).sum::<f64>().sqrt();
        let mut normal: Vec<f64> = normal.iter().map(|x| x / len).collect();
        let mut offset = offset / len;
        for x in normal.iter_mut() {
            if x.abs() < 1e-15 {
                *x = 0.0;
            }
        }
        if normal
            .iter()
            .find(|x| x.abs() > 1e-12)
            .is_some_and(|x| *x < 0.0)
        {
            normal.iter_mut().for_each(|x| *x = -*x);
            offset = -offset;
        }
        Self { normal, offset }
    }

    /// Renders e.g. `x = 0.8660254037844386` or `0.7071*y - 0.7071*z = 0`.
    pub fn equation(&self) -> String {
        const NAMES: [&str; 4] = ["x", "y", "z", "t"];
        let terms: Vec<(usize, f64)> = self
            .normal
            .iter()
            .enumerate()
            .filter(|(_, c)| c.abs() > 1e-12)
            .map(|(i, c)| (i, *c))
            .collect();
        let lhs = if let [(i, c)] = terms.as_slice() {
            if (c - 1.0).abs() <= 1e-12 {
                return format!("{} = {}", NAMES[*i], self.offset);
            }
            format!("{c}*{}", NAMES[*i])
        } else {
            let mut s = String::new();
            for (k, (i, c)) in terms.iter().enumerate() {
                if k == 0 {
                    s.push_str(&format!("{c}*{}", NAMES[*i]));
                } else if *c < 0.0 {
                    s.push_str(&format!(" - {}*{}", -c, NAMES[*i]));
                } else {
                    s.push_str(&format!(" + {c}*{}", NAMES[*i]));
                }
            }
            s
        };
        format!("{lhs} = {}", self.offset)
    }
}

/// The lines or planes making up a flat degenerate locus; empty for every
/// other class.
pub fn degenerate_geometry(form: &QuadraticForm, tol: f64) -> Vec<Hyperplane> {
    use QuadricClass::*;
    let class = classify(form, tol);
    let spectrum = form.spectrum();
    let band = spectrum.zero_band(tol);
    let flip = rhs_sign(form.rhs, &spectrum, tol) == RhsSign::Negative;
    let (values, rhs): (Vec<f64>, f64) = if flip {
        (spectrum.values.iter().map(|l| -l).collect(), -form.rhs)
    } else {
        (spectrum.values.clone(), form.rhs)
    };
    let nonzero: Vec<usize> = (0..values.len())
        .filter(|&i| values[i].abs() > band)
        .collect();
    let vec = |i: usize| spectrum.vectors[i].clone();

    match class {
        TwoParallelLines | TwoParallelPlanes => {
            let i = nonzero[0];
            let d = (rhs / values[i]).sqrt();
            let mut planes = vec![
                Hyperplane::canonical(vec(i), d),
                Hyperplane::canonical(vec(i), -d),
            ];
            planes.sort_by(|a, b| b.offset.total_cmp(&a.offset));
            planes
        }
        SingleLine if form.dim() == 2 => vec![Hyperplane::canonical(vec(nonzero[0]), 0.0)],
        SinglePlane => vec![Hyperplane::canonical(vec(nonzero[0]), 0.0)],
        TwoIntersectingLines | PairOfPlanes => {
            let ip = *nonzero.iter().find(|&&i| values[i] > 0.0).unwrap();
            let in_ = *nonzero.iter().find(|&&i| values[i] < 0.0).unwrap();
            let (sp, sn) = (values[ip].sqrt(), (-values[in_]).sqrt());
            let (vp, vn) = (vec(ip), vec(in_));
            let mut planes: Vec<Hyperplane> = [1.0, -1.0]
                .iter()
                .map(|sgn| {
                    let n: Vec<f64> = vp
                        .iter()
                        .zip(&vn)
                        .map(|(a, b)| sp * a - sgn * sn * b)
                        .collect();
                    Hyperplane::canonical(n, 0.0)
                })
                .collect();
            planes.sort_by(|a, b| {
                a.normal
                    .iter()
                    .zip(&b.normal)
                    .map(|(x, y)| y.total_cmp(x))
                    .find(|o| o.is_ne())
                    .unwrap_or(std::cmp::Ordering::Equal)
            });
            planes
        }
        _ => Vec::new(),
    }
}

// ---------------------------------------------------------------------------
// Hyper-spheres in the full tangent space

/// `2(xy - xt + yz + zt) = a` in coordinates of an orthonormal S-basis.
///
/// The matrix is `S + S^T`, which is `assoc_gram` of the identity metric.
pub fn hyper_sphere_form(a: f64) -> Result<QuadraticForm> {
    let m = assoc_gram(&Metric::identity());
    QuadraticForm::new(DMatrix::from_iterator(4, 4, m.iter().copied()), a)
}

/// The constant rotation taking `2(xy - xt + yz + zt)` to
/// `sqrt2 (x'^2 + y'^2 - z'^2 - t'^2)`.
pub fn transform_4d() -> TransformP {
    let h = 0.5;
    let r = FRAC_1_SQRT_2;
    #[rustfmt::skip]
    let m = DMatrix::from_row_slice(4, 4, &[
         h, -h,  h, -h,
        0.0, -r, 0.0, r,
        -h, -h, -h, -h,
        -r, 0.0, r, 0.0,
    ]);
    TransformP { matrix: m }
}

/// Hyper-sphere form after [`transform_4d`]: `diag(sqrt2, sqrt2, -sqrt2, -sqrt2)`.
pub fn hyper_sphere_diagonal(a: f64) -> Result<QuadraticForm> {
    hyper_sphere_form(a)?.congruence(&transform_4d())
}

/// Restricts a 4-dimensional form to the coordinate hyperplane `x_axis = 0`.
pub fn section_by_coordinate_plane(form4: &QuadraticForm, axis: usize) -> Result<QuadraticForm> {
    if form4.dim() != 4 {
        return Err(Error::InvalidForm(format!(
            "coordinate sections need a 4-dimensional form, got {}",
            form4.dim()
        )));
    }
    if axis >= 4 {
        return Err(Error::InvalidAxis { axis, dim: 4 });
    }
    let m = form4.matrix().clone().remove_row(axis).remove_column(axis);
    QuadraticForm::new(m, form4.rhs())
}

/// Deviations observed by [`isotropic_heads_check`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TorusReport {
    pub points: usize,
    /// `max |Q(v)|` over the sampled isotropic unit vectors.
    pub cone_residual: f64,
    /// `max |x'^2 + y'^2 + z'^2 + t'^2 - 1|`.
    pub sphere_residual: f64,
    /// `max` over both circles of `|x'^2 + y'^2 - 1/2|`, `|z'^2 + t'^2 - 1/2|`,
    /// including the four basis heads.
    pub torus_residual: f64,
    pub heads_torus_residual: f64,
}

impl TorusReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.cone_residual <= tol
            && self.sphere_residual <= tol
            && self.torus_residual <= tol
            && self.heads_torus_residual <= tol
    }
}

fn torus_residual(primed: &[f64]) -> f64 {
    let r1 = primed[0] * primed[0] + primed[1] * primed[1];
    let r2 = primed[2] * primed[2] + primed[3] * primed[3];
    (r1 - 0.5).abs().max((r2 - 0.5).abs())
}

/// Samples unit vectors on the isotropic cone `2(xy - xt + yz + zt) = 0`
/// directly in S-basis coordinates (solving the cone equation for `y`),
/// maps them and the four basis heads through [`transform_4d`], and records
/// how far they are from the torus `x'^2 + y'^2 = z'^2 + t'^2 = 1/2`.
pub fn isotropic_heads_check(n: usize, seed: u64) -> TorusReport {
    let p = transform_4d();
    let cone = hyper_sphere_form(0.0).expect("constant form");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = TorusReport {
        points: n,
        cone_residual: 0.0,
        sphere_residual: 0.0,
        torus_residual: 0.0,
        heads_torus_residual: 0.0,
    };

    let mut taken = 0;
    while taken < n {
        let x: f64 = rng.sample(StandardNormal);
        let z: f64 = rng.sample(StandardNormal);
        let t: f64 = rng.sample(StandardNormal);
        if (x + z).abs() < 0.1 {
            continue;
        }
        // y (x + z) = t (x - z)
        let y = t * (x - z) / (x + z);
        let v = Vec4::new(x, y, z, t).normalize();
        let primed = p.to_primed(v.as_slice());
        let norm2: f64 = primed.iter().map(|c| c * c).sum();
        report.cone_residual = report.cone_residual.max(cone.value(v.as_slice()).abs());
        report.sphere_residual = report.sphere_residual.max((norm2 - 1.0).abs());
        report.torus_residual = report.torus_residual.max(torus_residual(&primed));
        taken += 1;
    }

    for k in 0..4 {
        let mut head = [0.0; 4];
        head[k] = 1.0;
        let primed = p.to_primed(&head);
        report.heads_torus_residual = report.heads_torus_residual.max(torus_residual(&primed));
    }
    report
}

// ---------------------------------------------------------------------------
// Spheres in the three-dimensional subspaces

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SphereVariant {
    Alpha1,
    Alpha2,
}

impl SphereVariant {
    pub fn tag(self) -> SubspaceTag {
        match self {
            SphereVariant::Alpha1 => SubspaceTag::Alpha1,
            SphereVariant::Alpha2 => SubspaceTag::Alpha2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CircleVariant {
    Beta1,
    Beta2,
    Beta3,
}

impl CircleVariant {
    pub fn tag(self) -> SubspaceTag {
        match self {
            CircleVariant::Beta1 => SubspaceTag::Beta1,
            CircleVariant::Beta2 => SubspaceTag::Beta2,
            CircleVariant::Beta3 => SubspaceTag::Beta3,
        }
    }
}

/// Coefficients of the rotation diagonalizing the alpha-sphere forms:
/// `(l1, l2, m1, m2)`.
pub fn rotation_coefficients(phi: f64) -> (f64, f64, f64, f64) {
    let k = SQRT_2 * cos_phi(phi);
    let l1 = 0.5 * (1.0 + k).sqrt();
    let l2 = FRAC_1_SQRT_2 * (1.0 - k).sqrt();
    let m1 = 0.5 * (1.0 - k).sqrt();
    let m2 = -FRAC_1_SQRT_2 * (1.0 + k).sqrt();
    (l1, l2, m1, m2)
}

/// Rotation taking the alpha-sphere form to `diag(2cos(phi), sqrt2, -sqrt2)`.
///
/// The alpha2 variant negates the third row's sign pattern.
pub fn transform_3d(phi: f64, variant: SphereVariant) -> Result<TransformP> {
    check_phi(phi)?;
    let (l1, l2, m1, m2) = rotation_coefficients(phi);
    let r = FRAC_1_SQRT_2;
    let third = match variant {
        SphereVariant::Alpha1 => [-r, l1, m1],
        SphereVariant::Alpha2 => [r, -l1, -m1],
    };
    #[rustfmt::skip]
    let m = DMatrix::from_row_slice(3, 3, &[
        r, l1, m1,
        0.0, l2, m2,
        third[0], third[1], third[2],
    ]);
    Ok(TransformP { matrix: m })
}

/// `2cos(phi)(x^2 - y^2 + z^2) + 2 sqrt(1 - 2cos^2 phi)(xy +- yz) = a`.
pub fn sphere_form_closed(phi: f64, variant: SphereVariant, a: f64) -> Result<QuadraticForm> {
    QuadraticForm::new(closed_form_gram(variant.tag(), phi)?, a)
}

/// The `g~`-sphere of radius constant `a` in the alpha subspace generated by
/// `u`, in the coordinates of its orthonormal frame.
pub fn sphere_form_alpha(
    g: &Metric,
    u: &Vec4,
    variant: SphereVariant,
    a: f64,
) -> Result<QuadraticForm> {
    let f = frames::frame(g, u, variant.tag())?;
    sphere_form_closed(f.phi, variant, a)
}

/// Diagonal circle forms of the beta planes.
pub fn circle_form_closed(phi: f64, variant: CircleVariant, a: f64) -> Result<QuadraticForm> {
    QuadraticForm::new(closed_form_gram(variant.tag(), phi)?, a)
}

pub fn circle_form_beta(
    g: &Metric,
    u: &Vec4,
    variant: CircleVariant,
    a: f64,
) -> Result<QuadraticForm> {
    let f = frames::frame(g, u, variant.tag())?;
    circle_form_closed(f.phi, variant, a)
}

// ---------------------------------------------------------------------------
// Curves in the beta2 / beta3 planes

/// Where `phi` sits relative to `pi/3` and `2pi/3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhiRegime {
    /// `(pi/4, pi/3)`
    BelowThird,
    Third,
    /// `(pi/3, 2pi/3)`
    Middle,
    TwoThirds,
    /// `(2pi/3, 3pi/4)`
    AboveTwoThirds,
}

pub fn phi_regime(phi: f64) -> Result<PhiRegime> {
    check_phi(phi)?;
    let third = PI / 3.0;
    let two_thirds = 2.0 * PI / 3.0;
    Ok(if (phi - third).abs() <= PHI_BOUNDARY_TOL {
        PhiRegime::Third
    } else if (phi - two_thirds).abs() <= PHI_BOUNDARY_TOL {
        PhiRegime::TwoThirds
    } else if phi < third {
        PhiRegime::BelowThird
    } else if phi < two_thirds {
        PhiRegime::Middle
    } else {
        PhiRegime::AboveTwoThirds
    })
}

pub fn is_right_angle(phi: f64) -> bool {
    (phi - FRAC_PI_2).abs() <= PHI_BOUNDARY_TOL
}

/// Type of the beta2 and beta3 curves read off from `phi` and the sign of `a`
/// alone.
pub fn curve_table(phi: f64, a: f64) -> Result<QuadricClass> {
    use QuadricClass::*;
    let regime = phi_regime(phi)?;
    let sign = if a > 0.0 {
        RhsSign::Positive
    } else if a < 0.0 {
        RhsSign::Negative
    } else {
        RhsSign::Zero
    };
    Ok(match (regime, sign) {
        (PhiRegime::BelowThird, RhsSign::Positive) => Ellipse,
        (PhiRegime::BelowThird, RhsSign::Zero) => Point,
        (PhiRegime::BelowThird, RhsSign::Negative) => Empty,
        (PhiRegime::Third, RhsSign::Positive) => TwoParallelLines,
        (PhiRegime::Third, RhsSign::Zero) => SingleLine,
        (PhiRegime::Third, RhsSign::Negative) => Empty,
        (PhiRegime::Middle, RhsSign::Zero) => TwoIntersectingLines,
        (PhiRegime::Middle, _) => Hyperbola,
        (PhiRegime::TwoThirds, RhsSign::Positive) => Empty,
        (PhiRegime::TwoThirds, RhsSign::Zero) => SingleLine,
        (PhiRegime::TwoThirds, RhsSign::Negative) => TwoParallelLines,
        (PhiRegime::AboveTwoThirds, RhsSign::Positive) => Empty,
        (PhiRegime::AboveTwoThirds, RhsSign::Zero) => Point,
        (PhiRegime::AboveTwoThirds, RhsSign::Negative) => Ellipse,
    })
}

/// Slope `c` of the line pair `y = +-c x` of the beta2 curve at `a = 0`
/// in the middle regime: `sqrt(c1 / -c2)` from the diagonal coefficients.
pub fn curve_table_slope(phi: f64) -> Result<f64> {
    let c = cos_phi(phi);
    if phi_regime(phi)? != PhiRegime::Middle {
        return Err(Error::InvalidForm(format!(
            "no line pair through p at phi = {phi}"
        )));
    }
    Ok((beta_plus(c) / -beta_minus(c)).sqrt())
}

/// Lines of the beta2 curve in the degenerate cases, from closed forms:
/// `x = +-sqrt(3a)/2` and `x = 0` at `pi/3`, `y = +-sqrt(-3a)/2` and `y = 0`
/// at `2pi/3`, `y = +-c x` in between when `a = 0`.
pub fn curve_table_lines(phi: f64, a: f64) -> Result<Vec<Hyperplane>> {
    let class = curve_table(phi, a)?;
    let axis = |i: usize| {
        let mut n = vec![0.0; 2];
        n[i] = 1.0;
        n
    };
    Ok(match (phi_regime(phi)?, class) {
        (PhiRegime::Third, QuadricClass::TwoParallelLines) => {
            let d = (3.0 * a).sqrt() / 2.0;
            vec![
                Hyperplane::canonical(axis(0), d),
                Hyperplane::canonical(axis(0), -d),
            ]
        }
        (PhiRegime::TwoThirds, QuadricClass::TwoParallelLines) => {
            let d = (-3.0 * a).sqrt() / 2.0;
            vec![
                Hyperplane::canonical(axis(1), d),
                Hyperplane::canonical(axis(1), -d),
            ]
        }
        (PhiRegime::Third, QuadricClass::SingleLine) => vec![Hyperplane::canonical(axis(0), 0.0)],
        (PhiRegime::TwoThirds, QuadricClass::SingleLine) => {
            vec![Hyperplane::canonical(axis(1), 0.0)]
        }
        (PhiRegime::Middle, QuadricClass::TwoIntersectingLines) => {
            let c = curve_table_slope(phi)?;
            // y = c x  <=>  c x - y = 0
            vec![
                Hyperplane::canonical(vec![c, -1.0], 0.0),
                Hyperplane::canonical(vec![c, 1.0], 0.0),
            ]
        }
        _ => Vec::new(),
    })
}

/// `n` evenly spaced interior angles of `(pi/4, 3pi/4)`, minus any within
/// `1e-4` of `pi/3`, `pi/2` or `2pi/3`, plus `pi/3` and `2pi/3` exactly.
pub fn table_phi_grid(n: usize) -> Vec<f64> {
    let special = [PI / 3.0, FRAC_PI_2, 2.0 * PI / 3.0];
    let step = FRAC_PI_2 / (n + 1) as f64;
    let mut phis: Vec<f64> = (1..=n)
        .map(|i| std::f64::consts::FRAC_PI_4 + step * i as f64)
        .filter(|phi| special.iter().all(|s| (phi - s).abs() > 1e-4))
        .collect();
    phis.extend([special[0], special[2]]);
    phis.sort_by(f64::total_cmp);
    phis
}

/// Type of the alpha1/alpha2 sphere read off from `phi` and the sign of `a`.
pub fn alpha_sphere_class(phi: f64, a: f64) -> Result<QuadricClass> {
    use QuadricClass::*;
    check_phi(phi)?;
    let right = is_right_angle(phi);
    Ok(if a == 0.0 {
        if right {
            PairOfPlanes
        } else {
            Cone
        }
    } else if right {
        HyperbolicCylinder
    } else if (a > 0.0) == (phi < FRAC_PI_2) {
        HyperboloidOneSheet
    } else {
        HyperboloidTwoSheets
    })
}

/// Type of the beta1 curve: a circle when `a` and `cos(phi)` share a sign, the
/// origin when `a = 0`, otherwise empty. At `phi = pi/2` the form vanishes.
pub fn beta1_circle_class(phi: f64, a: f64) -> Result<QuadricClass> {
    use QuadricClass::*;
    check_phi(phi)?;
    Ok(if is_right_angle(phi) {
        if a == 0.0 {
            OtherDegenerate
        } else {
            Empty
        }
    } else if a == 0.0 {
        Point
    } else if (a > 0.0) == (phi < FRAC_PI_2) {
        Circle
    } else {
        Empty
    })
}

/// Type of the section `x'_axis = 0` of `x'^2 + y'^2 - z'^2 - t'^2 = a/sqrt2`.
pub fn hyper_section_class(axis: usize, a: f64) -> Result<QuadricClass> {
    use QuadricClass::*;
    if axis >= 4 {
        return Err(Error::InvalidAxis { axis, dim: 4 });
    }
    let drops_positive = axis < 2;
    Ok(if a == 0.0 {
        Cone
    } else if (a > 0.0) == drops_positive {
        HyperboloidTwoSheets
    } else {
        HyperboloidOneSheet
    })
}

// ---------------------------------------------------------------------------
// Sampling

fn unit_direction(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let len = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if len > 1e-6 {
            return v.into_iter().map(|x| x / len).collect();
        }
    }
}

/// Draws `n` points of the locus.
///
/// In eigen-coordinates the locus is `sum_P l y^2 - sum_N |l| y^2 = a`;
/// with `a > 0` the positive block is placed at radius `sqrt(a) cosh s` and
/// the negative block at `sqrt(a) sinh s` (just `sqrt(a)` when there is no
/// negative block), with `a = 0` both blocks share a radius, and directions
/// along zero eigenvalues are free. Points are mapped back to the form's
/// coordinates and checked against [`SAMPLE_RESIDUAL_TOL`].
pub fn sample_points(form: &QuadraticForm, n: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    let spectrum = form.spectrum();
    let inertia = spectrum.inertia(ZERO_TOL);
    let empty = match rhs_sign(form.rhs, &spectrum, ZERO_TOL) {
        RhsSign::Positive => inertia.positive == 0,
        RhsSign::Negative => inertia.negative == 0,
        RhsSign::Zero => false,
    };
    if empty {
        return Err(Error::EmptyQuadric);
    }
    let band = spectrum.zero_band(ZERO_TOL);
    let flip = rhs_sign(form.rhs, &spectrum, ZERO_TOL) == RhsSign::Negative;
    let (values, rhs): (Vec<f64>, f64) = if flip {
        (spectrum.values.iter().map(|l| -l).collect(), -form.rhs)
    } else {
        (spectrum.values.clone(), form.rhs)
    };
    let rhs = if rhs.abs() <= band { 0.0 } else { rhs };
    let pos: Vec<usize> = (0..values.len()).filter(|&i| values[i] > band).collect();
    let neg: Vec<usize> = (0..values.len()).filter(|&i| values[i] < -band).collect();
    let zero: Vec<usize> = (0..values.len())
        .filter(|&i| values[i].abs() <= band)
        .collect();

    let dim = form.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(n);
    for _ in 0..n {
        let mut y = vec![0.0; dim];
        let (rp, rn) = if rhs > 0.0 {
            let s: f64 = if neg.is_empty() {
                0.0
            } else {
                rng.random_range(-1.5..=1.5)
            };
            (rhs.sqrt() * s.cosh(), rhs.sqrt() * s.sinh())
        } else if !pos.is_empty() && !neg.is_empty() {
            let r: f64 = rng.random_range(0.5..=2.0);
            (r, r)
        } else {
            (0.0, 0.0)
        };
        let dp = unit_direction(&mut rng, pos.len().max(1));
        for (k, &i) in pos.iter().enumerate() {
            y[i] = rp * dp[k] / values[i].sqrt();
        }
        let dn = unit_direction(&mut rng, neg.len().max(1));
        for (k, &i) in neg.iter().enumerate() {
            y[i] = rn * dn[k] / (-values[i]).sqrt();
        }
        for &i in &zero {
            y[i] = rng.random_range(-1.0..=1.0);
        }
        let x: Vec<f64> = (0..dim)
            .map(|r| (0..dim).map(|c| spectrum.vectors[c][r] * y[c]).sum())
            .collect();
        let residual = form.residual(&x);
        if residual > SAMPLE_RESIDUAL_TOL {
            return Err(Error::Unsampleable(format!(
                "{} (residual {residual:e})",
                classify(form, ZERO_TOL)
            )));
        }
        points.push(x);
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use QuadricClass::*;

    fn diag(d: &[f64], a: f64) -> QuadraticForm {
        QuadraticForm::diagonal(d, a).unwrap()
    }

    #[test]
    fn form_validation() {
        assert!(QuadraticForm::new(DMatrix::identity(5, 5), 1.0).is_err());
        assert!(QuadraticForm::new(DMatrix::zeros(2, 3), 1.0).is_err());
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 0.0, 1.0]);
        assert!(QuadraticForm::new(m, 1.0).is_err());
        assert!(QuadraticForm::diagonal(&[1.0, f64::INFINITY], 1.0).is_err());
        assert!(QuadraticForm::diagonal(&[1.0, 1.0], f64::NAN).is_err());
    }

    #[test]
    fn hyper_sphere_values() {
        let q = hyper_sphere_form(0.0).unwrap();
        assert_eq!(q.value(&[1.0, 0.0, 0.0, 0.0]), 0.0);
        assert_eq!(q.value(&[1.0, 1.0, 0.0, 0.0]), 2.0);
        let (x, y, z, t) = (0.3, -1.1, 0.7, 2.0);
        assert_abs_diff_eq!(
            q.value(&[x, y, z, t]),
            2.0 * (x * y - x * t + y * z + z * t),
            epsilon = 1e-14
        );
    }

    #[test]
    fn four_dimensional_diagonalization() {
        let p = transform_4d();
        assert!(p.orthogonality_residual() <= 1e-12);
        let d = hyper_sphere_diagonal(1.0).unwrap();
        let want =
            DMatrix::from_diagonal(&DVector::from_vec(vec![SQRT_2, SQRT_2, -SQRT_2, -SQRT_2]));
        assert!((d.matrix() - want).amax() <= 1e-12);

        // primed (1,0,0,0) lies on the sqrt2 hyper-sphere
        let x = p.from_primed(&[1.0, 0.0, 0.0, 0.0]);
        assert_abs_diff_eq!(
            hyper_sphere_form(SQRT_2).unwrap().residual(&x),
            0.0,
            epsilon = 1e-14
        );
    }

    #[test]
    fn three_dimensional_diagonalization() {
        let third = PI / 3.0;
        let (l1, l2, _, _) = rotation_coefficients(third);
        assert_abs_diff_eq!(l1, 0.5 * (1.0 + FRAC_1_SQRT_2).sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(
            l2,
            FRAC_1_SQRT_2 * (1.0 - FRAC_1_SQRT_2).sqrt(),
            epsilon = 1e-15
        );
        for phi in [third, FRAC_PI_2, 2.0 * third, 0.9, 2.2] {
            for v in [SphereVariant::Alpha1, SphereVariant::Alpha2] {
                let p = transform_3d(phi, v).unwrap();
                assert!(p.orthogonality_residual() <= 1e-12);
                let d = sphere_form_closed(phi, v, 1.0)
                    .unwrap()
                    .congruence(&p)
                    .unwrap();
                let want = DMatrix::from_diagonal(&DVector::from_vec(vec![
                    2.0 * phi.cos(),
                    SQRT_2,
                    -SQRT_2,
                ]));
                assert!(
                    (d.matrix() - want).amax() <= 1e-12,
                    "{phi} {v:?}\n{}",
                    d.matrix()
                );
            }
        }
        assert!(transform_3d(0.1, SphereVariant::Alpha1).is_err());
    }

    #[test]
    fn sphere_forms_at_pi_third() {
        let h = FRAC_1_SQRT_2;
        let a1 = sphere_form_closed(PI / 3.0, SphereVariant::Alpha1, 1.0).unwrap();
        let want = DMatrix::from_row_slice(3, 3, &[1.0, h, 0.0, h, -1.0, h, 0.0, h, 1.0]);
        assert!((a1.matrix() - &want).amax() <= 1e-12);
        let a2 = sphere_form_closed(PI / 3.0, SphereVariant::Alpha2, 1.0).unwrap();
        let mut want2 = want.clone();
        want2[(1, 2)] = -h;
        want2[(2, 1)] = -h;
        assert!((a2.matrix() - &want2).amax() <= 1e-12);
    }

    #[test]
    fn circle_forms() {
        let third = PI / 3.0;
        let b1 = circle_form_closed(third, CircleVariant::Beta1, 1.0).unwrap();
        assert!((b1.matrix() - DMatrix::<f64>::identity(2, 2)).amax() <= 1e-15);
        let b2 = circle_form_closed(third, CircleVariant::Beta2, 1.0).unwrap();
        assert_abs_diff_eq!(b2.matrix()[(0, 0)], 4.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(b2.matrix()[(1, 1)], 0.0, epsilon = 1e-15);
        let b3 = circle_form_closed(third, CircleVariant::Beta3, 1.0).unwrap();
        assert_abs_diff_eq!(b3.matrix()[(1, 1)], 4.0 / 3.0, epsilon = 1e-15);
        // assembly at pi/2 is allowed; it is the zero form
        let z = circle_form_closed(FRAC_PI_2, CircleVariant::Beta1, 1.0).unwrap();
        assert!(z.matrix().amax() < 1e-15);
        assert_eq!(classify(&z, ZERO_TOL), Empty);
        let z0 = circle_form_closed(FRAC_PI_2, CircleVariant::Beta1, 0.0).unwrap();
        assert_eq!(classify(&z0, ZERO_TOL), OtherDegenerate);
    }

    #[test]
    fn classify_named_cases() {
        let r = SQRT_2;
        assert_eq!(
            classify(&diag(&[1.0, r, -r], 1.0), ZERO_TOL),
            HyperboloidOneSheet
        );
        assert_eq!(
            classify(&diag(&[1.0, r, -r], -1.0), ZERO_TOL),
            HyperboloidTwoSheets
        );
        assert_eq!(classify(&diag(&[0.0, r, -r], 0.0), ZERO_TOL), PairOfPlanes);
        assert_eq!(
            classify(&diag(&[0.0, r, -r], 1.0), ZERO_TOL),
            HyperbolicCylinder
        );
        assert_eq!(classify(&diag(&[1.0, r, -r], 0.0), ZERO_TOL), Cone);
        assert_eq!(classify(&diag(&[1.0, 2.0, 3.0], 1.0), ZERO_TOL), Ellipsoid);
        assert_eq!(classify(&diag(&[1.0, 2.0, 3.0], -1.0), ZERO_TOL), Empty);
        assert_eq!(classify(&diag(&[1.0, 2.0, 3.0], 0.0), ZERO_TOL), Point);
        assert_eq!(
            classify(&diag(&[1.0, 2.0, 0.0], 1.0), ZERO_TOL),
            EllipticCylinder
        );
        assert_eq!(classify(&diag(&[1.0, 2.0, 0.0], 0.0), ZERO_TOL), SingleLine);
        assert_eq!(
            classify(&diag(&[1.0, 0.0, 0.0], 1.0), ZERO_TOL),
            TwoParallelPlanes
        );
        assert_eq!(
            classify(&diag(&[1.0, 0.0, 0.0], 0.0), ZERO_TOL),
            SinglePlane
        );
        assert_eq!(
            classify(&diag(&[0.0, 0.0, 0.0], 0.0), ZERO_TOL),
            OtherDegenerate
        );

        assert_eq!(classify(&diag(&[1.0, 1.0], 0.0), ZERO_TOL), Point);
        assert_eq!(classify(&diag(&[1.0, 1.0], 2.0), ZERO_TOL), Circle);
        assert_eq!(classify(&diag(&[1.0, 2.0], 2.0), ZERO_TOL), Ellipse);
        assert_eq!(classify(&diag(&[-1.0, -2.0], -2.0), ZERO_TOL), Ellipse);
        assert_eq!(classify(&diag(&[1.5, -0.5], 1.0), ZERO_TOL), Hyperbola);
        assert_eq!(classify(&diag(&[1.5, -0.5], -1.0), ZERO_TOL), Hyperbola);
        assert_eq!(
            classify(&diag(&[1.5, -0.5], 0.0), ZERO_TOL),
            TwoIntersectingLines
        );
        assert_eq!(
            classify(&diag(&[4.0 / 3.0, 0.0], 1.0), ZERO_TOL),
            TwoParallelLines
        );
        assert_eq!(classify(&diag(&[4.0 / 3.0, 0.0], -1.0), ZERO_TOL), Empty);
        assert_eq!(classify(&diag(&[0.0, -1.0], 0.0), ZERO_TOL), SingleLine);
        assert_eq!(classify(&diag(&[0.0, 0.0], 1.0), ZERO_TOL), Empty);
    }

    #[test]
    fn classify_four_dimensional() {
        let d = hyper_sphere_diagonal(0.0).unwrap();
        assert_eq!(
            classify(&d, ZERO_TOL),
            HyperCone {
                positive: 2,
                negative: 2
            }
        );
        let h = hyper_sphere_form(1.0).unwrap();
        assert_eq!(
            classify(&h, ZERO_TOL),
            Hyperquadric {
                positive: 2,
                negative: 2,
                zero: 0,
                rhs: RhsSign::Positive
            }
        );
        assert_eq!(
            classify(&h, ZERO_TOL).to_string(),
            "hyperquadric-(2,2,0)-rhs-positive"
        );
    }

    #[test]
    fn sections_of_the_hyperboloid() {
        let pos = hyper_sphere_diagonal(1.0).unwrap();
        let x_sec = section_by_coordinate_plane(&pos, 0).unwrap();
        assert!(
            (x_sec.matrix()
                - DMatrix::from_diagonal(&DVector::from_vec(vec![SQRT_2, -SQRT_2, -SQRT_2])))
            .amax()
                <= 1e-12
        );
        assert_eq!(classify(&x_sec, ZERO_TOL), HyperboloidTwoSheets);
        assert_eq!(
            classify(&section_by_coordinate_plane(&pos, 2).unwrap(), ZERO_TOL),
            HyperboloidOneSheet
        );
        let zero = hyper_sphere_diagonal(0.0).unwrap();
        for axis in 0..4 {
            assert_eq!(
                classify(&section_by_coordinate_plane(&zero, axis).unwrap(), ZERO_TOL),
                Cone
            );
        }
        assert!(matches!(
            section_by_coordinate_plane(&pos, 4),
            Err(Error::InvalidAxis { .. })
        ));
        assert!(section_by_coordinate_plane(&x_sec, 0).is_err());
    }

    #[test]
    fn torus_heads() {
        let p = transform_4d();
        let primed = p.to_primed(&[1.0, 0.0, 0.0, 0.0]);
        assert_abs_diff_eq!(
            primed[0] * primed[0] + primed[1] * primed[1],
            0.5,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            primed[2] * primed[2] + primed[3] * primed[3],
            0.5,
            epsilon = 1e-15
        );

        let h = FRAC_1_SQRT_2;
        let on_both = [h, 0.0, h, 0.0];
        assert_abs_diff_eq!(
            hyper_sphere_diagonal(0.0).unwrap().value(&on_both),
            0.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            on_both.iter().map(|x| x * x).sum::<f64>(),
            1.0,
            epsilon = 1e-15
        );

        let report = isotropic_heads_check(200, 11);
        assert!(report.passed(1e-10), "{report:?}");
    }

    #[test]
    fn table_rows() {
        let third = PI / 3.0;
        assert_eq!(curve_table(0.9, 1.0).unwrap(), Ellipse);
        assert_eq!(curve_table(2.0 * third, -1.0).unwrap(), TwoParallelLines);
        assert_eq!(curve_table(1.5, 0.0).unwrap(), TwoIntersectingLines);
        assert_eq!(curve_table(2.0 * third, 1.0).unwrap(), Empty);
        assert_eq!(curve_table(2.2, -1.0).unwrap(), Ellipse);
        assert_eq!(curve_table(third, 0.0).unwrap(), SingleLine);
        assert!(curve_table(0.2, 1.0).is_err());

        let lines = curve_table_lines(2.0 * third, -2.0).unwrap();
        assert_abs_diff_eq!(lines[0].offset, (6.0f64).sqrt() / 2.0, epsilon = 1e-15);
        assert_eq!(lines[0].normal, vec![0.0, 1.0]);
    }

    #[test]
    fn degenerate_geometry_of_beta2_at_pi_third() {
        let form = circle_form_closed(PI / 3.0, CircleVariant::Beta2, 1.0).unwrap();
        let lines = degenerate_geometry(&form, ZERO_TOL);
        assert_eq!(lines.len(), 2);
        assert_abs_diff_eq!(lines[0].offset, 3.0f64.sqrt() / 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(lines[1].offset, -(3.0f64.sqrt()) / 2.0, epsilon = 1e-12);
        assert_eq!(lines[0].normal, vec![1.0, 0.0]);
        assert_eq!(lines[0].equation(), format!("x = {}", lines[0].offset));
    }

    #[test]
    fn degenerate_geometry_pair_of_planes() {
        let form = diag(&[0.0, SQRT_2, -SQRT_2], 0.0);
        let planes = degenerate_geometry(&form, ZERO_TOL);
        assert_eq!(planes.len(), 2);
        for p in &planes {
            assert_eq!(p.offset, 0.0);
            assert_abs_diff_eq!(p.normal[0], 0.0);
            assert_abs_diff_eq!(p.normal[1].abs(), FRAC_1_SQRT_2, epsilon = 1e-12);
            assert_abs_diff_eq!(p.normal[2].abs(), FRAC_1_SQRT_2, epsilon = 1e-12);
        }
        assert!(degenerate_geometry(&diag(&[1.0, 2.0], 1.0), ZERO_TOL).is_empty());
    }

    #[test]
    fn samples_lie_on_the_locus() {
        let circle = diag(&[1.0, 1.0], 1.0);
        let pts = sample_points(&circle, 4, 1).unwrap();
        assert_eq!(pts.len(), 4);
        for p in &pts {
            assert_abs_diff_eq!(p[0] * p[0] + p[1] * p[1], 1.0, epsilon = 1e-12);
        }
        let hyp = diag(&[1.0, SQRT_2, -SQRT_2], 1.0);
        for p in sample_points(&hyp, 100, 2).unwrap() {
            assert!(hyp.residual(&p) <= SAMPLE_RESIDUAL_TOL);
        }
        let empty = diag(&[4.0 / 3.0, 0.5], -1.0);
        assert_eq!(sample_points(&empty, 3, 0), Err(Error::EmptyQuadric));
    }

    #[test]
    fn sampling_is_deterministic() {
        let f = sphere_form_closed(1.0, SphereVariant::Alpha2, -0.5).unwrap();
        assert_eq!(
            sample_points(&f, 10, 42).unwrap(),
            sample_points(&f, 10, 42).unwrap()
        );
    }
}
