//! Fixed-seed invariant suites behind `skewcirc verify`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::frames::{
    assoc_gram_on_frame, closed_form_gram, frame, generator_with_phi, metric_gram_on_frame,
    orthonormal_s_basis, span_residual, SubspaceTag,
};
use crate::quadrics::{
    alpha_sphere_class, beta1_circle_class, circle_form_closed, classify, curve_table,
    curve_table_lines, degenerate_geometry, hyper_section_class, hyper_sphere_diagonal,
    hyper_sphere_form, isotropic_heads_check, sample_points, section_by_coordinate_plane,
    sphere_form_alpha, sphere_form_closed, table_phi_grid, transform_3d, transform_4d,
    CircleVariant, QuadraticForm, SphereVariant, TransformP, ZERO_TOL,
};
use crate::structure::{
    assoc, assoc_signature, causal_character, classify_by_phi, cos_phi, s_basis, s_pow_apply,
    structure_j, structure_s, structure_s_exact, structure_s_pow_exact, CausalCharacter, Mat4,
    Metric, Vec4, ANGLE_LAW_TOL, ISOTROPIC_TOL,
};

/// Number of random trials for the sampled suites.
pub const TRIALS: usize = 1000;
const SEED: u64 = 0x5eed;

#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    /// Replaces every sampled metric with one that is positive definite but
    /// not compatible with `S`, as a negative control.
    pub corrupt_metric: bool,
}

#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl std::fmt::Display for SuiteOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.passed {
            write!(f, "{}: PASS", self.name)
        } else {
            write!(f, "{}: FAIL ({})", self.name, self.detail)
        }
    }
}

type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

struct Sampler {
    rng: ChaCha8Rng,
    opts: VerifyOptions,
    next_seed: u64,
}

impl Sampler {
    fn new(salt: u64, opts: VerifyOptions) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(SEED ^ salt),
            opts,
            next_seed: salt << 20,
        }
    }

    fn metric(&mut self) -> Metric {
        self.next_seed += 1;
        let g = Metric::random_compatible(self.next_seed);
        if self.opts.corrupt_metric {
            let mut gram = *g.gram();
            gram[(0, 0)] += 0.5;
            Metric::new(gram).expect("perturbation keeps positive definiteness")
        } else {
            g
        }
    }

    fn vector(&mut self) -> Vec4 {
        Vec4::from_fn(|_, _| self.rng.sample(StandardNormal))
    }
}

fn suite(name: &'static str, f: impl FnOnce() -> Check) -> SuiteOutcome {
    match f() {
        Ok(()) => SuiteOutcome {
            name,
            passed: true,
            detail: String::new(),
        },
        Err(detail) => SuiteOutcome {
            name,
            passed: false,
            detail,
        },
    }
}

pub fn run_all(opts: VerifyOptions) -> Vec<SuiteOutcome> {
    vec![
        suite("S^4 = -I", structure_power),
        suite("S^T S = I, J^2 = -I", structure_orthogonality),
        suite("compatible metrics", || compatible_metrics(opts)),
        suite("associated metric identities", || assoc_identities(opts)),
        suite("S-basis angle law", || angle_law(opts)),
        suite("causal trichotomy", || causal_trichotomy(opts)),
        suite("frame orthonormality", || frame_orthonormality(opts)),
        suite("frame Gram closed forms", || frame_closed_forms(opts)),
        suite("frame spans and J-invariance", || frame_spans(opts)),
        suite("hyper-sphere diagonalization", hyper_diagonalization),
        suite("isotropic torus", || isotropic_torus(opts)),
        suite("radius-vector causal character", || radius_vectors(opts)),
        suite("coordinate sections", coordinate_sections),
        suite("alpha spheres", || alpha_spheres(opts)),
        suite("beta1 circles", beta1_circles),
        suite("beta-plane curve table equivalence", table_equivalence),
        suite("classifier invariance", classifier_invariance),
    ]
}

fn structure_power() -> Check {
    let p = structure_s_pow_exact(4);
    ensure(p == -nalgebra::Matrix4::<i64>::identity(), || {
        format!("S^4 = {p}")
    })
}

fn structure_orthogonality() -> Check {
    let s = structure_s_exact();
    ensure(s.transpose() * s == nalgebra::Matrix4::identity(), || {
        "S^T S != I".into()
    })?;
    let j = s * s;
    ensure(j * j == -nalgebra::Matrix4::<i64>::identity(), || {
        "J^2 != -I".into()
    })?;
    let jf = structure_j();
    ensure(jf * jf == -Mat4::identity(), || "floating J^2 != -I".into())
}

fn compatible_metrics(opts: VerifyOptions) -> Check {
    let mut sampler = Sampler::new(1, opts);
    for i in 0..TRIALS {
        let g = sampler.metric();
        ensure(g.is_compatible(), || {
            format!("metric {i}: residual {:e}", g.compatibility_residual())
        })?;
        let min_eig = g.gram().symmetric_eigen().eigenvalues.min();
        ensure(min_eig > 0.0, || {
            format!("metric {i}: eigenvalue {min_eig}")
        })?;
    }
    Ok(())
}

fn assoc_identities(opts: VerifyOptions) -> Check {
    let mut sampler = Sampler::new(2, opts);
    let s = structure_s();
    for i in 0..TRIALS {
        let g = sampler.metric();
        ensure(g.is_compatible(), || {
            format!("trial {i}: incompatible metric")
        })?;
        let (u, v) = (sampler.vector(), sampler.vector());
        let scale = g.norm(&u) * g.norm(&v);
        let sym = (assoc(&g, &u, &v) - assoc(&g, &v, &u)).abs();
        ensure(sym <= 1e-12 * scale, || {
            format!("trial {i}: asymmetry {sym:e}")
        })?;
        let inv = (assoc(&g, &(s * u), &(s * v)) - assoc(&g, &u, &v)).abs();
        ensure(inv <= 1e-12 * scale.max(1.0), || {
            format!("trial {i}: S-invariance {inv:e}")
        })?;
        let twice = (assoc(&g, &v, &v) - 2.0 * g.inner(&v, &(s * v))).abs();
        ensure(twice <= 1e-12 * g.inner(&v, &v), || {
            format!("trial {i}: g~(v,v) - 2g(v,Sv) = {twice:e}")
        })?;
        let sig = assoc_signature(&g);
        ensure(sig == (2, 2, 0), || format!("trial {i}: signature {sig:?}"))?;
    }
    Ok(())
}

fn angle_law(opts: VerifyOptions) -> Check {
    let mut sampler = Sampler::new(3, opts);
    for i in 0..TRIALS {
        let g = sampler.metric();
        let u = sampler.vector();
        let b = s_basis(&g, &u).map_err(|e| format!("trial {i}: {e}"))?;
        let [u, su, s2u, s3u] = b.vectors;
        let ang = |a: &Vec4, c: &Vec4| g.angle(a, c).unwrap();
        let checks = [
            ang(&su, &s2u) - b.phi,
            ang(&s2u, &s3u) - b.phi,
            PI - ang(&s3u, &u) - b.phi,
            ang(&u, &s2u) - FRAC_PI_2,
            ang(&su, &s3u) - FRAC_PI_2,
        ];
        let worst = checks.iter().fold(0.0f64, |m, d| m.max(d.abs()));
        ensure(worst <= ANGLE_LAW_TOL, || {
            format!("trial {i}: deviation {worst:e}")
        })?;
        ensure(b.phi > FRAC_PI_4 && b.phi < 3.0 * FRAC_PI_4, || {
            format!("trial {i}: phi = {}", b.phi)
        })?;
    }
    Ok(())
}

fn causal_trichotomy(opts: VerifyOptions) -> Check {
    let mut sampler = Sampler::new(4, opts);
    for i in 0..TRIALS {
        let g = sampler.metric();
        let u = sampler.vector();
        let b = s_basis(&g, &u).map_err(|e| format!("trial {i}: {e}"))?;
        let raw = u;
        let q = assoc(&g, &raw, &raw);
        let closed = 2.0 * g.inner(&raw, &raw) * b.cos_phi();
        ensure(
            (q - closed).abs() <= 1e-10 * g.inner(&raw, &raw).max(1.0),
            || format!("trial {i}: g~(u,u) = {q}, 2|u|^2 cos phi = {closed}"),
        )?;
        let by_phi = classify_by_phi(b.phi).map_err(|e| e.to_string())?;
        let by_sign = causal_character(&g, &raw, ISOTROPIC_TOL).map_err(|e| e.to_string())?;
        ensure(by_phi == by_sign, || {
            format!("trial {i}: {by_phi} vs {by_sign}")
        })?;
        for k in 1..4 {
            let c = causal_character(&g, &s_pow_apply(k, &raw), ISOTROPIC_TOL)
                .map_err(|e| e.to_string())?;
            ensure(c == by_sign, || {
                format!("trial {i}: S^{k}u is {c}, u is {by_sign}")
            })?;
        }
    }
    // the isotropic case: orthonormal S-bases
    let mut sampler = Sampler::new(40, opts);
    for i in 0..50 {
        let g = sampler.metric();
        let b = orthonormal_s_basis(&g, &sampler.vector()).map_err(|e| format!("iso {i}: {e}"))?;
        for v in &b.vectors {
            let c = causal_character(&g, v, ISOTROPIC_TOL).map_err(|e| e.to_string())?;
            ensure(c == CausalCharacter::Isotropic, || format!("iso {i}: {c}"))?;
        }
        ensure(
            classify_by_phi(b.phi) == Ok(CausalCharacter::Isotropic),
            || format!("iso {i}: phi {}", b.phi),
        )?;
    }
    Ok(())
}

fn frame_orthonormality(opts: VerifyOptions) -> Check {
    let mut sampler = Sampler::new(5, opts);
    for i in 0..TRIALS {
        let g = sampler.metric();
        let u = sampler.vector();
        for tag in SubspaceTag::ALL {
            let f = frame(&g, &u, tag).map_err(|e| format!("trial {i} {tag}: {e}"))?;
            let k = f.dim();
            let dev = (metric_gram_on_frame(&g, &f) - DMatrix::<f64>::identity(k, k)).amax();
            ensure(dev <= 1e-10, || {
                format!("trial {i} {tag}: |Gram - I| = {dev:e}")
            })?;
        }
    }
    Ok(())
}

fn frame_closed_forms(opts: VerifyOptions) -> Check {
    let mut sampler = Sampler::new(6, opts);
    for i in 0..TRIALS {
        let g = sampler.metric();
        let u = sampler.vector();
        for tag in SubspaceTag::ALL {
            let f = frame(&g, &u, tag).map_err(|e| format!("trial {i} {tag}: {e}"))?;
            let closed = closed_form_gram(tag, f.phi).map_err(|e| e.to_string())?;
            let dev = (assoc_gram_on_frame(&g, &f) - closed).amax();
            ensure(dev <= 1e-10, || {
                format!("trial {i} {tag}: deviation {dev:e}")
            })?;
        }
    }
    Ok(())
}

fn frame_spans(opts: VerifyOptions) -> Check {
    let mut sampler = Sampler::new(7, opts);
    let j = structure_j();
    for i in 0..TRIALS {
        let g = sampler.metric();
        let u = sampler.vector();
        for tag in SubspaceTag::ALL {
            let f = frame(&g, &u, tag).map_err(|e| format!("trial {i} {tag}: {e}"))?;
            let span = f.spanning_iterates();
            for v in &f.vectors {
                let r = span_residual(&span, v);
                ensure(r <= 1e-10, || {
                    format!("trial {i} {tag}: off-span residual {r:e}")
                })?;
            }
            if tag == SubspaceTag::Beta1 {
                for v in &f.vectors {
                    let r = span_residual(&f.vectors, &(j * v));
                    ensure(r <= 1e-10, || {
                        format!("trial {i}: J-invariance residual {r:e}")
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn diag_dev(form: &QuadraticForm, diag: &[f64]) -> f64 {
    let want = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(diag));
    (form.matrix() - want).amax()
}

fn hyper_diagonalization() -> Check {
    let p = transform_4d();
    let orth = p.orthogonality_residual();
    ensure(orth <= 1e-12, || format!("|P^T P - I| = {orth:e}"))?;
    let r = std::f64::consts::SQRT_2;
    for a in [-1.0, 0.0, 1.0] {
        let d = hyper_sphere_diagonal(a).map_err(|e| e.to_string())?;
        let dev = diag_dev(&d, &[r, r, -r, -r]);
        ensure(dev <= 1e-12, || format!("a = {a}: deviation {dev:e}"))?;
    }
    Ok(())
}

fn isotropic_torus(opts: VerifyOptions) -> Check {
    let report = isotropic_heads_check(TRIALS, SEED);
    ensure(report.passed(1e-10), || format!("{report:?}"))?;
    // heads of orthonormal S-bases of general metrics, in S-basis coordinates
    let mut sampler = Sampler::new(8, opts);
    let p = transform_4d();
    let cone = hyper_sphere_form(0.0).map_err(|e| e.to_string())?;
    for i in 0..50 {
        let g = sampler.metric();
        let b =
            orthonormal_s_basis(&g, &sampler.vector()).map_err(|e| format!("basis {i}: {e}"))?;
        let coords_of = b.matrix().try_inverse().ok_or("singular S-basis")?;
        for head in &b.vectors {
            let x = coords_of * head;
            ensure(cone.value(x.as_slice()).abs() <= 1e-10, || {
                format!("basis {i}: head off the cone")
            })?;
            let xp = p.to_primed(x.as_slice());
            let r1 = xp[0] * xp[0] + xp[1] * xp[1];
            let r2 = xp[2] * xp[2] + xp[3] * xp[3];
            ensure(
                (r1 - 0.5).abs() <= 1e-10 && (r2 - 0.5).abs() <= 1e-10,
                || format!("basis {i}: torus radii {r1}, {r2}"),
            )?;
        }
    }
    Ok(())
}

fn radius_vectors(opts: VerifyOptions) -> Check {
    let mut sampler = Sampler::new(9, opts);
    for i in 0..20 {
        let g = sampler.metric();
        let b =
            orthonormal_s_basis(&g, &sampler.vector()).map_err(|e| format!("basis {i}: {e}"))?;
        for (a, want) in [
            (-1.0, CausalCharacter::TimeLike),
            (0.0, CausalCharacter::Isotropic),
            (1.0, CausalCharacter::SpaceLike),
        ] {
            let form = hyper_sphere_form(a).map_err(|e| e.to_string())?;
            for x in sample_points(&form, 50, i as u64).map_err(|e| e.to_string())? {
                let v = b.combine(&Vec4::from_column_slice(&x));
                let q = assoc(&g, &v, &v);
                ensure((q - a).abs() <= 1e-8, || {
                    format!("basis {i}: g~(v,v) = {q}, a = {a}")
                })?;
                let c = causal_character(&g, &v, ISOTROPIC_TOL).map_err(|e| e.to_string())?;
                ensure(c == want, || format!("basis {i}, a = {a}: {c}"))?;
            }
        }
    }
    Ok(())
}

fn coordinate_sections() -> Check {
    for a in [-1.0, 0.0, 1.0] {
        let form = hyper_sphere_diagonal(a).map_err(|e| e.to_string())?;
        for axis in 0..4 {
            let sec = section_by_coordinate_plane(&form, axis).map_err(|e| e.to_string())?;
            let got = classify(&sec, ZERO_TOL);
            let want = hyper_section_class(axis, a).map_err(|e| e.to_string())?;
            ensure(got == want, || {
                format!("a = {a}, axis {axis}: {got} vs {want}")
            })?;
        }
    }
    Ok(())
}

/// `n` values of `phi` spread over the open interval, clear of the endpoints.
pub fn interior_phis(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| FRAC_PI_4 + 0.01 + (FRAC_PI_2 - 0.02) * i as f64 / (n - 1) as f64)
        .collect()
}

fn alpha_spheres(opts: VerifyOptions) -> Check {
    let mut sampler = Sampler::new(10, opts);
    let r = std::f64::consts::SQRT_2;
    let mut phis = interior_phis(50);
    phis.push(FRAC_PI_2);
    for (i, &phi) in phis.iter().enumerate() {
        let g = sampler.metric();
        let u = generator_with_phi(&g, phi, &sampler.vector())
            .map_err(|e| format!("phi {phi}: {e}"))?;
        for variant in [SphereVariant::Alpha1, SphereVariant::Alpha2] {
            let f = frame(&g, &u, variant.tag()).map_err(|e| e.to_string())?;
            let numeric = assoc_gram_on_frame(&g, &f);
            let form = sphere_form_alpha(&g, &u, variant, 1.0).map_err(|e| e.to_string())?;
            let dev = (numeric - form.matrix()).amax();
            ensure(dev <= 1e-10, || {
                format!("phi {phi} {variant:?}: Gram deviation {dev:e}")
            })?;
            let p: TransformP = transform_3d(f.phi, variant).map_err(|e| e.to_string())?;
            for a in [-1.0, 0.0, 1.0] {
                let closed = sphere_form_closed(phi, variant, a).map_err(|e| e.to_string())?;
                let d = closed.congruence(&p).map_err(|e| e.to_string())?;
                let dev = diag_dev(&d, &[2.0 * cos_phi(f.phi), r, -r]);
                ensure(dev <= 1e-12, || {
                    format!("sample {i} {variant:?}: diagonal deviation {dev:e}")
                })?;
                let want = alpha_sphere_class(phi, a).map_err(|e| e.to_string())?;
                for (label, form) in [("frame", &closed), ("rotated", &d)] {
                    let got = classify(form, ZERO_TOL);
                    ensure(got == want, || {
                        format!("phi {phi} a {a} {label}: {got} vs {want}")
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn beta1_circles() -> Check {
    let mut phis = interior_phis(50);
    phis.push(FRAC_PI_2);
    for &phi in &phis {
        for a in [-1.0, 0.0, 1.0] {
            let form =
                circle_form_closed(phi, CircleVariant::Beta1, a).map_err(|e| e.to_string())?;
            let two_c = 2.0 * cos_phi(phi);
            ensure(diag_dev(&form, &[two_c, two_c]) == 0.0, || {
                format!("phi {phi}: not diag(2c, 2c)")
            })?;
            if crate::quadrics::is_right_angle(phi) {
                continue;
            }
            let got = classify(&form, ZERO_TOL);
            let want = beta1_circle_class(phi, a).map_err(|e| e.to_string())?;
            ensure(got == want, || format!("phi {phi} a {a}: {got} vs {want}"))?;
        }
    }
    Ok(())
}

fn table_equivalence() -> Check {
    let third = PI / 3.0;
    for phi in table_phi_grid(200) {
        for a in [-1.0, 0.0, 1.0] {
            let want = curve_table(phi, a).map_err(|e| e.to_string())?;
            for variant in [CircleVariant::Beta2, CircleVariant::Beta3] {
                let form = circle_form_closed(phi, variant, a).map_err(|e| e.to_string())?;
                let got = classify(&form, ZERO_TOL);
                ensure(got == want, || {
                    format!("phi {phi} a {a} {variant:?}: {got} vs {want}")
                })?;
            }
        }
    }
    // line offsets at the two boundary angles
    for (phi, a) in [
        (third, 1.0),
        (third, 2.5),
        (2.0 * third, -1.0),
        (2.0 * third, -0.3),
    ] {
        let form = circle_form_closed(phi, CircleVariant::Beta2, a).map_err(|e| e.to_string())?;
        let got = degenerate_geometry(&form, ZERO_TOL);
        let want = curve_table_lines(phi, a).map_err(|e| e.to_string())?;
        ensure(got.len() == 2 && want.len() == 2, || {
            format!("phi {phi} a {a}: {got:?}")
        })?;
        let expected = (3.0 * a.abs()).sqrt() / 2.0;
        for (g, w) in got.iter().zip(&want) {
            ensure(
                (g.offset - w.offset).abs() <= 1e-12 && (g.offset.abs() - expected).abs() <= 1e-12,
                || format!("phi {phi} a {a}: offset {} vs {}", g.offset, w.offset),
            )?;
        }
    }
    Ok(())
}

fn random_rotation(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<f64> {
    let m = DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
    m.qr().q()
}

fn classifier_invariance() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 11);
    for i in 0..TRIALS {
        let n = 2 + i % 3;
        let eig: Vec<f64> = (0..n)
            .map(|_| match rng.random_range(0..4) {
                0 => 0.0,
                1 => rng.random_range(-2.0..-0.25),
                _ => rng.random_range(0.25..2.0),
            })
            .collect();
        let a = [-1.0, 0.0, 1.0][rng.random_range(0..3)] * rng.random_range(0.25..1.5);
        let q = random_rotation(&mut rng, n);
        let base = QuadraticForm::diagonal(&eig, a).map_err(|e| e.to_string())?;
        let rotated = base
            .congruence(&TransformP { matrix: q })
            .map_err(|e| e.to_string())?;
        let k = rng.random_range(0.01..100.0);
        let scaled = rotated.scaled(k).map_err(|e| e.to_string())?;
        let want = classify(&base, ZERO_TOL);
        for (label, f) in [("rotated", &rotated), ("scaled", &scaled)] {
            let got = classify(f, ZERO_TOL);
            ensure(got == want, || {
                format!("trial {i} {label}: {got} vs {want} for {eig:?}, a = {a}")
            })?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_build_passes() {
        let outcomes = run_all(VerifyOptions::default());
        let failed: Vec<String> = outcomes
            .iter()
            .filter(|o| !o.passed)
            .map(|o| o.to_string())
            .collect();
        assert!(failed.is_empty(), "{failed:#?}");
    }

    #[test]
    fn corrupted_metric_fails() {
        let outcomes = run_all(VerifyOptions {
            corrupt_metric: true,
        });
        let failed: Vec<&str> = outcomes
            .iter()
            .filter(|o| !o.passed)
            .map(|o| o.name)
            .collect();
        assert!(failed.contains(&"compatible metrics"));
        assert!(failed.contains(&"S-basis angle law"));
        assert!(outcomes.iter().any(|o| o.name == "S^4 = -I" && o.passed));
    }
}
