//! Test-only oracles that share no code with the library.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skewcirc::quadrics::QuadraticForm;
use skewcirc::QuadricClass;

/// Lattice points per axis; odd so the origin is a lattice point.
pub const GRID: usize = 401;
pub const HALF_WIDTH: f64 = 3.0;

/// A random 2x2 form `R diag(l1, l2) R^T` with `rhs`.
#[derive(Debug, Clone, Copy)]
pub struct PlaneForm {
    pub a11: f64,
    pub a12: f64,
    pub a22: f64,
    pub rhs: f64,
}

impl PlaneForm {
    pub fn from_eigen(l1: f64, l2: f64, theta: f64, rhs: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self {
            a11: l1 * c * c + l2 * s * s,
            a12: (l1 - l2) * c * s,
            a22: l1 * s * s + l2 * c * c,
            rhs,
        }
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.a11 * x * x + 2.0 * self.a12 * x * y + self.a22 * y * y - self.rhs
    }

    pub fn to_form(self) -> QuadraticForm {
        let m = nalgebra::DMatrix::from_row_slice(2, 2, &[self.a11, self.a12, self.a12, self.a22]);
        QuadraticForm::new(m, self.rhs).unwrap()
    }
}

/// Eigenvalue magnitudes in `[0.5, 2]`, at most one zero eigenvalue,
/// `|rhs|` in `[0.25, 1]` or `rhs = 0`. Unequal definite eigenvalues differ
/// by a factor of at least 1.5 so circles and ellipses stay apart on the
/// lattice.
pub fn random_plane_form(rng: &mut ChaCha8Rng) -> PlaneForm {
    let sign = |rng: &mut ChaCha8Rng| if rng.random_bool(0.5) { 1.0 } else { -1.0 };
    let theta = rng.random_range(0.0..std::f64::consts::PI);
    let (l1, l2) = match rng.random_range(0..4) {
        0 => {
            let s = sign(rng);
            let l = rng.random_range(0.5..=2.0);
            (s * l, s * l)
        }
        1 => {
            let s = sign(rng);
            let l = rng.random_range(0.5..=1.0);
            (s * l, s * rng.random_range(1.5 * l..=2.0))
        }
        2 => (rng.random_range(0.5..=2.0), -rng.random_range(0.5..=2.0)),
        _ => (sign(rng) * rng.random_range(0.5..=2.0), 0.0),
    };
    let rhs = if rng.random_bool(0.25) {
        0.0
    } else {
        sign(rng) * rng.random_range(0.25..=1.0)
    };
    PlaneForm::from_eigen(l1, l2, theta, rhs)
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn coord(i: usize) -> f64 {
    let h = 2.0 * HALF_WIDTH / (GRID - 1) as f64;
    -HALF_WIDTH + h * i as f64
}

fn spacing() -> f64 {
    2.0 * HALF_WIDTH / (GRID - 1) as f64
}

struct Components {
    label: Vec<usize>,
    sign: Vec<i8>,
    count: usize,
}

/// 4-connected components of the cells with a fixed nonzero sign.
fn sign_components(sign: &[i8]) -> Components {
    let mut label = vec![usize::MAX; sign.len()];
    let mut count = 0;
    let mut stack = Vec::new();
    for start in 0..sign.len() {
        if sign[start] == 0 || label[start] != usize::MAX {
            continue;
        }
        label[start] = count;
        stack.push(start);
        while let Some(k) = stack.pop() {
            let (i, j) = (k / GRID, k % GRID);
            let mut nbrs = Vec::with_capacity(4);
            if i > 0 {
                nbrs.push(k - GRID);
            }
            if i + 1 < GRID {
                nbrs.push(k + GRID);
            }
            if j > 0 {
                nbrs.push(k - 1);
            }
            if j + 1 < GRID {
                nbrs.push(k + 1);
            }
            for m in nbrs {
                if sign[m] == sign[k] && label[m] == usize::MAX {
                    label[m] = count;
                    stack.push(m);
                }
            }
        }
        count += 1;
    }
    Components {
        label,
        sign: sign.to_vec(),
        count,
    }
}

fn on_box_edge(k: usize) -> bool {
    let (i, j) = (k / GRID, k % GRID);
    i == 0 || j == 0 || i == GRID - 1 || j == GRID - 1
}

fn point(k: usize) -> (f64, f64) {
    (coord(k / GRID), coord(k % GRID))
}

/// Cells of component `c` with a 4-neighbor of the opposite sign.
fn boundary_cells(comp: &Components, c: usize) -> Vec<usize> {
    (0..comp.label.len())
        .filter(|&k| comp.label[k] == c)
        .filter(|&k| {
            let (i, j) = (k / GRID, k % GRID);
            let s = comp.sign[k];
            let opp = |m: usize| comp.sign[m] == -s;
            (i > 0 && opp(k - GRID))
                || (i + 1 < GRID && opp(k + GRID))
                || (j > 0 && opp(k - 1))
                || (j + 1 < GRID && opp(k + 1))
        })
        .collect()
}

/// RMS distance of the points from their principal line.
fn line_fit_rms(cells: &[usize]) -> f64 {
    let pts: Vec<(f64, f64)> = cells.iter().map(|&k| point(k)).collect();
    let n = pts.len() as f64;
    let (mx, my) = pts
        .iter()
        .fold((0.0, 0.0), |(a, b), p| (a + p.0 / n, b + p.1 / n));
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in &pts {
        sxx += (x - mx) * (x - mx) / n;
        sxy += (x - mx) * (y - my) / n;
        syy += (y - my) * (y - my) / n;
    }
    let tr = sxx + syy;
    let det = sxx * syy - sxy * sxy;
    let small = tr / 2.0 - ((tr * tr / 4.0 - det).max(0.0)).sqrt();
    small.max(0.0).sqrt()
}

/// Type of `{f = 0}` decided from the signs of `f` on a 401 x 401 lattice
/// over `[-3, 3]^2`, without any eigen-analysis.
///
/// - one sign only: empty, a point or a single line, by the extent of the
///   tube `|f| <= 2 h^2` (`h` the spacing; the tube is empty for a locus
///   missing the box);
/// - two sign components, one of them bounded: circle when the boundary
///   radii agree within `2h`, else ellipse;
/// - three components: two parallel lines when the boundaries of the two
///   same-signed components are straight, else a hyperbola;
/// - four components: two intersecting lines.
pub fn lattice_class(f: &PlaneForm) -> Option<QuadricClass> {
    let h = spacing();
    let values: Vec<f64> = (0..GRID * GRID)
        .map(|k| {
            let (x, y) = point(k);
            f.eval(x, y)
        })
        .collect();
    let sign: Vec<i8> = values
        .iter()
        .map(|&v| {
            if v > 1e-12 {
                1
            } else if v < -1e-12 {
                -1
            } else {
                0
            }
        })
        .collect();
    let has_pos = sign.iter().any(|&s| s > 0);
    let has_neg = sign.iter().any(|&s| s < 0);

    if !(has_pos && has_neg) {
        let tube: Vec<usize> = (0..values.len())
            .filter(|&k| values[k].abs() <= 2.0 * h * h)
            .collect();
        if tube.is_empty() {
            return Some(QuadricClass::Empty);
        }
        let reach = tube
            .iter()
            .map(|&k| {
                let (x, y) = point(k);
                (x * x + y * y).sqrt()
            })
            .fold(0.0, f64::max);
        if reach <= 5.0 * h {
            return Some(QuadricClass::Point);
        }
        if tube.iter().any(|&k| on_box_edge(k)) && line_fit_rms(&tube) <= 1.5 * h {
            return Some(QuadricClass::SingleLine);
        }
        return None;
    }

    let comp = sign_components(&sign);
    let touches: Vec<bool> = (0..comp.count)
        .map(|c| (0..comp.label.len()).any(|k| comp.label[k] == c && on_box_edge(k)))
        .collect();
    match comp.count {
        2 => {
            let bounded = (0..2).find(|&c| !touches[c])?;
            let radii: Vec<f64> = boundary_cells(&comp, bounded)
                .iter()
                .map(|&k| {
                    let (x, y) = point(k);
                    (x * x + y * y).sqrt()
                })
                .collect();
            let lo = radii.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = radii.iter().copied().fold(0.0, f64::max);
            Some(if hi - lo <= 2.0 * h {
                QuadricClass::Circle
            } else {
                QuadricClass::Ellipse
            })
        }
        3 => {
            let sign_of = |c: usize| {
                (0..comp.label.len())
                    .find(|&k| comp.label[k] == c)
                    .map(|k| comp.sign[k])
                    .unwrap()
            };
            let signs: Vec<i8> = (0..3).map(sign_of).collect();
            let pair: Vec<usize> = (0..3)
                .filter(|&c| signs.iter().filter(|&&s| s == signs[c]).count() == 2)
                .collect();
            let straight = pair
                .iter()
                .all(|&c| line_fit_rms(&boundary_cells(&comp, c)) <= h);
            Some(if straight {
                QuadricClass::TwoParallelLines
            } else {
                QuadricClass::Hyperbola
            })
        }
        4 => Some(QuadricClass::TwoIntersectingLines),
        _ => None,
    }
}
