//! Quadrature primitives shared by the kernel, discretization and collision
//! modules: Gauss-Legendre rules, scaled Gauss-Hermite rules (Golub-Welsch),
//! graded radial panels for weakly singular radial integrands, and fixed
//! sphere rules.

use ndarray::Array2;
use ndarray_linalg::{Eigh, UPLO};
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, RwLock};

/// Nodes and weights of a quadrature rule on [-1, 1] (Gauss-Legendre) or on
/// the real line (Gauss-Hermite, plain-measure weights).
#[derive(Debug, Clone)]
pub struct Rule1d {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

fn legendre_rule(n: usize) -> Rule1d {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-like initial guess, then Newton on P_n.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0_f64, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Rule1d { nodes, weights }
}

fn rule_cache() -> &'static RwLock<HashMap<usize, Arc<Rule1d>>> {
    static CACHE: std::sync::OnceLock<RwLock<HashMap<usize, Arc<Rule1d>>>> =
        std::sync::OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Gauss-Legendre rule of the given order on [-1, 1], cached.
pub fn gauss_legendre(n: usize) -> Arc<Rule1d> {
    if let Some(r) = rule_cache().read().unwrap().get(&n) {
        return r.clone();
    }
    let r = Arc::new(legendre_rule(n));
    rule_cache().write().unwrap().insert(n, r.clone());
    r
}

/// Integrate `f` over [a, b] with a Gauss-Legendre rule of the given order.
pub fn integrate_gl<F: FnMut(f64) -> f64>(a: f64, b: f64, order: usize, mut f: F) -> f64 {
    let rule = gauss_legendre(order);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = 0.0;
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        acc += w * f(mid + half * x);
    }
    acc * half
}

/// Panel layout for radial integrals `int_0^cutoff f(r) dr` whose integrand
/// has an integrable singularity or a sharp peak at r = 0 with length scale
/// `scale`: panels grow geometrically from `scale` up to `cutoff`.
pub fn graded_panels(scale: f64, cutoff: f64) -> Vec<(f64, f64)> {
    let scale = scale.max(1e-8).min(cutoff);
    let mut edges = vec![0.0, scale];
    let mut hi = scale;
    while hi < cutoff {
        hi = (hi * 2.0).min(cutoff);
        edges.push(hi);
    }
    edges.windows(2).map(|p| (p[0], p[1])).collect()
}

/// Integrate `f` over [0, cutoff] with geometrically graded Gauss-Legendre
/// panels refined toward the origin.
pub fn integrate_radial<F: FnMut(f64) -> f64>(
    scale: f64,
    cutoff: f64,
    order: usize,
    mut f: F,
) -> f64 {
    let mut acc = 0.0;
    for (a, b) in graded_panels(scale, cutoff) {
        acc += integrate_gl(a, b, order, &mut f);
    }
    acc
}

/// Scaled Gauss-Hermite rule: nodes `x_i` and plain-measure weights `W_i`
/// such that `sum_i W_i g(x_i)` is exact for `g(x) = p(x) exp(-x^2/2)` with
/// `p` a polynomial of degree <= 2n-1.
pub fn gauss_hermite_scaled(n: usize) -> Rule1d {
    // Golub-Welsch on the physicists' Hermite recurrence, then substitute
    // x = sqrt(2) t so the implicit weight becomes exp(-x^2/2).
    let mut jac = Array2::<f64>::zeros((n, n));
    for k in 1..n {
        let b = (k as f64 / 2.0).sqrt();
        jac[(k - 1, k)] = b;
        jac[(k, k - 1)] = b;
    }
    let (vals, vecs) = jac.eigh(UPLO::Lower).expect("Jacobi matrix eigensolve");
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 0..n {
        let t = vals[i];
        let v0 = vecs[(0, i)];
        let w_hermite = PI.sqrt() * v0 * v0;
        nodes.push(2.0_f64.sqrt() * t);
        weights.push(2.0_f64.sqrt() * w_hermite * (t * t).exp());
    }
    Rule1d { nodes, weights }
}

/// Surface measure of the unit sphere S^{m} in R^{m+1}.
pub fn sphere_area(m: usize) -> f64 {
    // vol(S^m) = 2 pi^{(m+1)/2} / Gamma((m+1)/2)
    let half = (m as f64 + 1.0) / 2.0;
    2.0 * PI.powf(half) / gamma_fn(half)
}

/// Lanczos approximation of the Gamma function (g = 7, n = 9).
pub fn gamma_fn(x: f64) -> f64 {
    const G: f64 = 7.0;
    const COEF: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        PI / ((PI * x).sin() * gamma_fn(1.0 - x))
    } else {
        let x = x - 1.0;
        let mut a = COEF[0];
        let t = x + G + 0.5;
        for (i, &c) in COEF.iter().enumerate().skip(1) {
            a += c / (x + i as f64);
        }
        (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a
    }
}

/// A fixed quadrature rule on the unit sphere S^{d-1}; weights sum to the
/// sphere area.
#[derive(Debug, Clone)]
pub struct SphereRule {
    pub dirs: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

/// Octahedral (Lebedev-style) rules on S^2 with 6, 14, 26 or 38 points.
pub fn lebedev(n_points: usize) -> SphereRule {
    let mut dirs: Vec<Vec<f64>> = Vec::new();
    let mut rel: Vec<f64> = Vec::new();
    let mut push_axis = |rel_w: f64, dirs: &mut Vec<Vec<f64>>, rel: &mut Vec<f64>| {
        for k in 0..3 {
            for s in [1.0, -1.0] {
                let mut v = vec![0.0; 3];
                v[k] = s;
                dirs.push(v);
                rel.push(rel_w);
            }
        }
    };
    let push_corner = |rel_w: f64, dirs: &mut Vec<Vec<f64>>, rel: &mut Vec<f64>| {
        let c = 1.0 / 3.0_f64.sqrt();
        for sx in [c, -c] {
            for sy in [c, -c] {
                for sz in [c, -c] {
                    dirs.push(vec![sx, sy, sz]);
                    rel.push(rel_w);
                }
            }
        }
    };
    let push_edge = |rel_w: f64, dirs: &mut Vec<Vec<f64>>, rel: &mut Vec<f64>| {
        let c = 1.0 / 2.0_f64.sqrt();
        for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
            for si in [c, -c] {
                for sj in [c, -c] {
                    let mut v = vec![0.0; 3];
                    v[i] = si;
                    v[j] = sj;
                    dirs.push(v);
                    rel.push(rel_w);
                }
            }
        }
    };
    match n_points {
        6 => push_axis(1.0 / 6.0, &mut dirs, &mut rel),
        14 => {
            push_axis(1.0 / 15.0, &mut dirs, &mut rel);
            push_corner(3.0 / 40.0, &mut dirs, &mut rel);
        }
        26 => {
            push_axis(1.0 / 21.0, &mut dirs, &mut rel);
            push_edge(4.0 / 105.0, &mut dirs, &mut rel);
            push_corner(27.0 / 840.0, &mut dirs, &mut rel);
        }
        38 => {
            push_axis(1.0 / 105.0, &mut dirs, &mut rel);
            push_corner(9.0 / 280.0, &mut dirs, &mut rel);
            // 24-point orbit (p, q, 0) with p^2 + q^2 = 1.
            let p = 0.459_700_843_380_983_6;
            let q = 0.888_073_833_977_115_3;
            for (i, j) in [(0usize, 1usize), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1)] {
                for sp in [p, -p] {
                    for sq in [q, -q] {
                        let mut v = vec![0.0; 3];
                        v[i] = sp;
                        v[j] = sq;
                        dirs.push(v);
                        rel.push(1.0 / 35.0);
                    }
                }
            }
        }
        other => panic!("no octahedral sphere rule with {other} points"),
    }
    let area = sphere_area(2);
    SphereRule {
        dirs,
        weights: rel.into_iter().map(|w| w * area).collect(),
    }
}

/// Uniform rule on the unit circle S^1.
pub fn circle_rule(n: usize) -> SphereRule {
    let w = 2.0 * PI / n as f64;
    let mut dirs = Vec::with_capacity(n);
    for k in 0..n {
        let phi = 2.0 * PI * (k as f64 + 0.5) / n as f64;
        dirs.push(vec![phi.cos(), phi.sin()]);
    }
    SphereRule {
        dirs,
        weights: vec![w; n],
    }
}

/// Sphere rule for S^{d-1}: octahedral rule for d = 3, uniform for d = 2.
pub fn sphere_rule(d: usize, n_points: usize) -> SphereRule {
    match d {
        2 => circle_rule(n_points.max(8)),
        3 => lebedev(n_points),
        other => panic!("no sphere rule for d = {other}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gl_integrates_polynomials_exactly() {
        // x^7 - 3x^4 + 2 over [-1, 2]
        let exact = |x: f64| x.powi(8) / 8.0 - 3.0 * x.powi(5) / 5.0 + 2.0 * x;
        let got = integrate_gl(-1.0, 2.0, 6, |x| x.powi(7) - 3.0 * x.powi(4) + 2.0);
        assert_relative_eq!(got, exact(2.0) - exact(-1.0), max_relative = 1e-13);
    }

    #[test]
    fn hermite_rule_integrates_gaussian_moments() {
        let rule = gauss_hermite_scaled(8);
        let m0: f64 = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(x, w)| w * (-x * x / 2.0).exp())
            .sum();
        assert_relative_eq!(m0, (2.0 * PI).sqrt(), max_relative = 1e-12);
        let m2: f64 = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(x, w)| w * x * x * (-x * x / 2.0).exp())
            .sum();
        assert_relative_eq!(m2, (2.0 * PI).sqrt(), max_relative = 1e-12);
        let m6: f64 = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(x, w)| w * x.powi(6) * (-x * x / 2.0).exp())
            .sum();
        assert_relative_eq!(m6, 15.0 * (2.0 * PI).sqrt(), max_relative = 1e-12);
    }

    #[test]
    fn sphere_rules_normalize_and_integrate_quadratics() {
        for n in [6, 14, 26, 38] {
            let rule = lebedev(n);
            let total: f64 = rule.weights.iter().sum();
            assert_relative_eq!(total, 4.0 * PI, max_relative = 1e-12);
            // int_{S^2} z^2 = 4 pi / 3
            let z2: f64 = rule
                .dirs
                .iter()
                .zip(&rule.weights)
                .map(|(v, w)| w * v[2] * v[2])
                .sum();
            assert_relative_eq!(z2, 4.0 * PI / 3.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn lebedev26_integrates_degree_six_monomial() {
        // int_{S^2} x^2 y^2 z^2 = 4 pi / 105; needs exactness degree >= 6.
        let rule = lebedev(26);
        let got: f64 = rule
            .dirs
            .iter()
            .zip(&rule.weights)
            .map(|(v, w)| w * v[0].powi(2) * v[1].powi(2) * v[2].powi(2))
            .sum();
        assert_relative_eq!(got, 4.0 * PI / 105.0, max_relative = 1e-12);
    }

    #[test]
    fn gamma_values() {
        assert_relative_eq!(gamma_fn(0.5), PI.sqrt(), max_relative = 1e-12);
        assert_relative_eq!(gamma_fn(5.0), 24.0, max_relative = 1e-12);
        assert_relative_eq!(sphere_area(2), 4.0 * PI, max_relative = 1e-12);
        assert_relative_eq!(sphere_area(1), 2.0 * PI, max_relative = 1e-12);
        assert_relative_eq!(sphere_area(0), 2.0, max_relative = 1e-12);
    }
}
