//! Barycentric Lagrange interpolation on a fixed node set.

use num_complex::Complex64;

/// Node set with precomputed barycentric weights (second form).
#[derive(Debug, Clone)]
pub struct Barycentric {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl Barycentric {
    /// Weights `1/Π_{k≠j}(x_j - x_k)`, accumulated in log space and scaled so
    /// the largest has unit magnitude. Nodes must be distinct.
    pub fn new(nodes: Vec<f64>) -> Self {
        let n = nodes.len();
        let mut logs = vec![0.0; n];
        let mut signs = vec![1.0; n];
        for j in 0..n {
            for k in 0..n {
                if k != j {
                    let d = nodes[j] - nodes[k];
                    logs[j] -= d.abs().ln();
                    if d < 0.0 {
                        signs[j] = -signs[j];
                    }
                }
            }
        }
        let max = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let weights = logs
            .iter()
            .zip(&signs)
            .map(|(l, s)| s * (l - max).exp())
            .collect();
        Self { nodes, weights }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Lagrange basis values `l_j(x)` and, if `deriv` is given, `l_j'(x)`.
    ///
    /// Derivatives are formed relative to the nearest node `k`, as
    /// `l_i' = l_i (g - 1/(x - x_i))` for `i ≠ k` with
    /// `g = Σ_j w_j/(x-x_j)² / Σ_j w_j/(x-x_j)`, and `l_k' = -Σ_{i≠k} l_i'`.
    /// Neither step subtracts nearly equal quantities, so the result stays
    /// accurate when `x` is within rounding distance of a node.
    pub fn basis(&self, x: f64, values: &mut [f64], deriv: Option<&mut [f64]>) {
        let n = self.nodes.len();
        debug_assert_eq!(values.len(), n);
        let mut nearest = 0;
        let mut nearest_dist = f64::INFINITY;
        for (j, &xj) in self.nodes.iter().enumerate() {
            let d = (x - xj).abs();
            if d < nearest_dist {
                nearest = j;
                nearest_dist = d;
            }
        }
        let k = nearest;

        if nearest_dist == 0.0 {
            values.iter_mut().for_each(|v| *v = 0.0);
            values[k] = 1.0;
            if let Some(dl) = deriv {
                let xk = self.nodes[k];
                let wk = self.weights[k];
                let mut sum = 0.0;
                for i in 0..n {
                    if i != k {
                        dl[i] = self.weights[i] / wk / (xk - self.nodes[i]);
                        sum += dl[i];
                    }
                }
                dl[k] = -sum;
            }
            return;
        }

        let mut total = 0.0;
        let mut total_sq = 0.0;
        for j in 0..n {
            let d = x - self.nodes[j];
            let c = self.weights[j] / d;
            values[j] = c;
            total += c;
            total_sq += c / d;
        }
        for v in values.iter_mut() {
            *v /= total;
        }
        if let Some(dl) = deriv {
            let g = total_sq / total;
            let mut sum = 0.0;
            for i in 0..n {
                if i != k {
                    dl[i] = values[i] * (g - 1.0 / (x - self.nodes[i]));
                    sum += dl[i];
                }
            }
            dl[k] = -sum;
        }
    }

    /// Evaluate the interpolant through `data` at `x`.
    pub fn eval(&self, data: &[Complex64], x: f64) -> Complex64 {
        let mut l = vec![0.0; self.len()];
        self.basis(x, &mut l, None);
        dot(&l, data)
    }

    /// Evaluate the interpolant and its derivative at `x`.
    pub fn eval_with_derivative(&self, data: &[Complex64], x: f64) -> (Complex64, Complex64) {
        let mut l = vec![0.0; self.len()];
        let mut dl = vec![0.0; self.len()];
        self.basis(x, &mut l, Some(&mut dl));
        (dot(&l, data), dot(&dl, data))
    }
}

pub(crate) fn dot(basis: &[f64], data: &[Complex64]) -> Complex64 {
    basis.iter().zip(data).map(|(b, d)| d * *b).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cubic(x: f64) -> (f64, f64) {
        (2.0 * x * x * x - x + 0.5, 6.0 * x * x - 1.0)
    }

    #[test]
    fn reproduces_cubic_and_derivative() {
        let b = Barycentric::new(vec![-1.0, -0.3, 0.2, 0.9, 1.0]);
        let data: Vec<Complex64> = b.nodes().iter().map(|&x| Complex64::new(cubic(x).0, 0.0)).collect();
        for &x in &[-0.95, -0.3, 0.0, 0.55, 1.0] {
            let (v, d) = b.eval_with_derivative(&data, x);
            assert!((v.re - cubic(x).0).abs() < 1e-14);
            assert!((d.re - cubic(x).1).abs() < 1e-12, "x={x}: {} vs {}", d.re, cubic(x).1);
        }
    }

    #[test]
    fn derivative_stable_next_to_a_node() {
        let nodes: Vec<f64> = (0..9).map(|j| -(j as f64 * std::f64::consts::PI / 8.0).cos()).collect();
        let b = Barycentric::new(nodes.clone());
        let data: Vec<Complex64> = nodes.iter().map(|&x| Complex64::new(cubic(x).0, 0.0)).collect();
        for &offset in &[1e-17, 1e-15, 1e-12, 1e-9] {
            let x = nodes[4] + offset;
            let (_, d) = b.eval_with_derivative(&data, x);
            assert!((d.re - cubic(x).1).abs() < 1e-11, "offset {offset}: {}", d.re);
        }
    }

    #[test]
    fn weights_do_not_overflow_for_many_nodes() {
        let nodes: Vec<f64> = (0..=900).map(|j| -(j as f64 * std::f64::consts::PI / 900.0).cos()).collect();
        let b = Barycentric::new(nodes);
        assert!(b.weights().iter().all(|w| w.is_finite() && *w != 0.0));
    }
}
