//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;

/// Gauss-Legendre nodes and weights on [-1, 1] via Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let step = p1 / dp;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// `int_a^b f` by composite Gauss-Legendre with `panels` pieces.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize, rule: &[(f64, f64)]) -> f64 {
    let h = (b - a) / panels as f64;
    let mut sum = 0.0;
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let mid = lo + h / 2.0;
        let part: f64 = rule.iter().map(|&(x, w)| w * f(mid + x * h / 2.0)).sum();
        sum += part * h / 2.0;
    }
    sum
}

/// Standard normal CDF by quadrature of the density from 0.
pub fn normal_cdf_quadrature(x: f64) -> f64 {
    let rule = gauss_legendre(20);
    let density = |u: f64| (-u * u / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt();
    let panels = ((x.abs() * 8.0).ceil() as usize).max(1);
    let half = integrate(density, 0.0, x.abs(), panels, &rule);
    if x >= 0.0 {
        0.5 + half
    } else {
        0.5 - half
    }
}

/// CDF of `unit` U[0,1] plus `double` U[0,2] variables, built by repeated
/// convolution on the unit grid. Each cell `[k, k+1)` holds the CDF as a
/// polynomial in the local coordinate.
pub struct GridConvolution {
    cells: Vec<Vec<f64>>,
}

fn poly_eval(p: &[f64], u: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, c| acc * u + c)
}

impl GridConvolution {
    pub fn new(unit: usize, double: usize) -> Self {
        // point mass at 0: no cells, CDF is 1 from 0 onwards
        let mut g = GridConvolution { cells: Vec::new() };
        for _ in 0..unit {
            g.convolve(1);
        }
        for _ in 0..double {
            g.convolve(2);
        }
        g
    }

    fn cdf_cell(&self, k: isize) -> Vec<f64> {
        if k < 0 {
            vec![0.0]
        } else if k as usize >= self.cells.len() {
            vec![1.0]
        } else {
            self.cells[k as usize].clone()
        }
    }

    /// Adds an independent U[0, len] variable: density `(F(x) - F(x - len)) / len`.
    fn convolve(&mut self, len: usize) {
        let new_len = self.cells.len() + len;
        let mut cells = Vec::with_capacity(new_len);
        let mut level = 0.0;
        for k in 0..new_len as isize {
            let hi = self.cdf_cell(k);
            let lo = self.cdf_cell(k - len as isize);
            let n = hi.len().max(lo.len());
            let density: Vec<f64> = (0..n)
                .map(|i| (hi.get(i).unwrap_or(&0.0) - lo.get(i).unwrap_or(&0.0)) / len as f64)
                .collect();
            let mut cdf = vec![level];
            cdf.extend(density.iter().enumerate().map(|(i, c)| c / (i + 1) as f64));
            level = poly_eval(&cdf, 1.0);
            cells.push(cdf);
        }
        self.cells = cells;
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        let k = x.floor() as isize;
        poly_eval(&self.cdf_cell(k), x - k as f64)
    }
}

/// Gaussian binomial `[n choose k]_q` by the Pascal recurrence
/// `[n,k] = [n-1,k-1] + q^k [n-1,k]`.
pub fn q_binomial_pascal(n: usize, k: usize) -> Vec<BigInt> {
    let mut rows: Vec<Vec<Vec<BigInt>>> = vec![vec![vec![BigInt::from(1)]]];
    for nn in 1..=n {
        let mut row = Vec::with_capacity(nn + 1);
        for kk in 0..=nn {
            if kk == 0 || kk == nn {
                row.push(vec![BigInt::from(1)]);
                continue;
            }
            let a = &rows[nn - 1][kk - 1];
            let b = &rows[nn - 1][kk];
            let mut out = vec![BigInt::from(0); (a.len()).max(b.len() + kk)];
            for (i, c) in a.iter().enumerate() {
                out[i] += c;
            }
            for (i, c) in b.iter().enumerate() {
                out[i + kk] += c;
            }
            row.push(out);
        }
        rows.push(row);
    }
    rows[n][k].clone()
}

#[test]
fn oracles_self_check() {
    assert!((normal_cdf_quadrature(1.96) - 0.9750021048517795).abs() < 1e-13);
    let g = GridConvolution::new(2, 0);
    assert!((g.cdf(0.5) - 0.125).abs() < 1e-15);
    assert!((g.cdf(1.5) - 0.875).abs() < 1e-15);
    let g = GridConvolution::new(0, 1);
    assert!((g.cdf(1.0) - 0.5).abs() < 1e-15);
    let b: Vec<i64> = q_binomial_pascal(4, 2).iter().map(|c| c.try_into().unwrap()).collect();
    assert_eq!(b, vec![1, 1, 2, 1, 1]);
}
