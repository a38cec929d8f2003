use std::f64::consts::PI;
use std::sync::OnceLock;

pub(crate) const ORDER: usize = 16;

/// Nodes and weights of the 16-point Gauss–Legendre rule on `[-1, 1]`.
pub(crate) fn rule() -> &'static ([f64; ORDER], [f64; ORDER]) {
    static RULE: OnceLock<([f64; ORDER], [f64; ORDER])> = OnceLock::new();
    RULE.get_or_init(legendre_rule::<ORDER>)
}

fn legendre_rule<const N: usize>() -> ([f64; N], [f64; N]) {
    let mut nodes = [0.0; N];
    let mut weights = [0.0; N];
    for i in 0..N {
        let mut x = (PI * (i as f64 + 0.75) / (N as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(N, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(N, x);
        dp = if d != 0.0 { d } else { dp };
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

/// `P_n(x)` and `P_n'(x)` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two_and_nodes_are_symmetric() {
        let (x, w) = rule();
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        for i in 0..ORDER {
            assert!((x[i] + x[ORDER - 1 - i]).abs() < 1e-15);
        }
    }

    #[test]
    fn exact_for_degree_31() {
        let (x, w) = rule();
        for d in [0u32, 1, 6, 17, 30, 31] {
            let q: f64 = x.iter().zip(w).map(|(x, w)| w * x.powi(d as i32)).sum();
            let exact = if d % 2 == 1 { 0.0 } else { 2.0 / (d as f64 + 1.0) };
            assert!((q - exact).abs() < 1e-14, "degree {d}");
        }
    }
}
