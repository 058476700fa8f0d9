//! Brute-force quadrature oracles shared by the integration and acceptance
//! tests. Nothing here calls into the solver crate.
#![allow(dead_code)]

use std::f64::consts::PI;

const G3: [(f64, f64); 3] = [
    (-0.774_596_669_241_483_4, 5.0 / 9.0),
    (0.0, 8.0 / 9.0),
    (0.774_596_669_241_483_4, 5.0 / 9.0),
];

/// Composite 3-point Gauss over `panels` equal panels of `[a, b]`.
pub fn composite(a: f64, b: f64, panels: usize, f: &dyn Fn(f64) -> f64) -> f64 {
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|p| {
            let mid = a + (p as f64 + 0.5) * h;
            G3.iter().map(|&(x, w)| w * f(mid + 0.5 * h * x)).sum::<f64>() * 0.5 * h
        })
        .sum()
}

/// `∫₀¹ f(s) ds` for `f` with an integrable singularity at `s = 0`: dyadic
/// panels toward zero, each split uniformly.
pub fn dyadic(f: &dyn Fn(f64) -> f64) -> f64 {
    (0..=60)
        .map(|j| {
            let hi = 0.5f64.powi(j);
            composite(0.5 * hi, hi, 64, f)
        })
        .sum()
}

/// Oracle H and G built node by node: column `j` collects the falling basis
/// function on element `j` and the rising one on element `j − 1`.
pub fn oracle_matrices(n: usize) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let node = |j: usize| {
        let a = 2.0 * PI * ((j % n) as f64 + 1.0) / n as f64;
        (a.cos(), a.sin())
    };
    // integral over element e of kernel * basis, basis = 1 at `peak` end
    let element = |k: usize, e: usize, peak_at_start: bool| -> (f64, f64) {
        let (ax, ay) = node(e);
        let (bx, by) = node(e + 1);
        let len = ((bx - ax).powi(2) + (by - ay).powi(2)).sqrt();
        let (nx, ny) = ((by - ay) / len, (ax - bx) / len);
        let (sx, sy) = node(k);
        // s in [0, 1] runs from a to b
        let point = |s: f64| (ax + s * (bx - ax), ay + s * (by - ay));
        let basis = |s: f64| if peak_at_start { 1.0 - s } else { s };
        let g = |s: f64| {
            let (x, y) = point(s);
            let r2 = (x - sx).powi(2) + (y - sy).powi(2);
            -0.5 * r2.ln() / (2.0 * PI) * basis(s) * len
        };
        // singular case: the chord is straight, so r = σ·L with σ measured
        // from the collocation node
        let g_sing = |peak_at_node: bool| {
            move |sigma: f64| {
                let b = if peak_at_node { 1.0 - sigma } else { sigma };
                -(sigma * len).ln() / (2.0 * PI) * b * len
            }
        };
        let h = |s: f64| {
            let (x, y) = point(s);
            let r2 = (x - sx).powi(2) + (y - sy).powi(2);
            -((x - sx) * nx + (y - sy) * ny) / (2.0 * PI * r2) * basis(s) * len
        };
        let at_start = k % n == e % n;
        let at_end = k % n == (e + 1) % n;
        if at_start {
            (0.0, dyadic(&g_sing(peak_at_start)))
        } else if at_end {
            (0.0, dyadic(&g_sing(!peak_at_start)))
        } else {
            let panels = 1 << 14;
            (composite(0.0, 1.0, panels, &h), composite(0.0, 1.0, panels, &g))
        }
    };
    let mut hm = vec![vec![0.0; n]; n];
    let mut gm = vec![vec![0.0; n]; n];
    for k in 0..n {
        for j in 0..n {
            let (h1, g1) = element(k, j, true);
            let (h2, g2) = element(k, (j + n - 1) % n, false);
            hm[k][j] = h1 + h2;
            gm[k][j] = g1 + g2;
        }
    }
    (hm, gm)
}

/// Single-layer integrals `(near, far)` over `[0, L]` for a collocation node at
/// `s = 0`, by composite Gauss on `[L 2^{-j-1}, L 2^{-j}]`, `j = 0..=60`.
pub fn singular_pair_oracle(len: f64) -> (f64, f64) {
    let w = |s: f64| -s.ln() / (2.0 * PI);
    let near = (0..=60)
        .map(|j| {
            let hi = len * 0.5f64.powi(j);
            composite(0.5 * hi, hi, 16, &|s| w(s) * (1.0 - s / len))
        })
        .sum();
    let far = (0..=60)
        .map(|j| {
            let hi = len * 0.5f64.powi(j);
            composite(0.5 * hi, hi, 16, &|s| w(s) * s / len)
        })
        .sum();
    (near, far)
}
