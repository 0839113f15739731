//! The pair-production sum S(x) = Σ_{n≥1} e^{-nx}/n², i.e. Li₂(e^{-x}).

use std::f64::consts::PI;

/// Hard cap on the number of summed terms.
pub const MAX_TERMS: u32 = 1_000_000;

/// Below this `x` the direct sum converges too slowly and the expansion
/// around x = 0 is used instead.
pub const SMALL_X: f64 = 0.5;

/// B₂, B₄, …, B₃₀.
const EVEN_BERNOULLI: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesSum {
    pub value: f64,
    /// Number of direct-sum terms used; zero for closed-form branches.
    pub terms: u32,
}

/// Evaluates Σ e^{-nx}/n² for `x ≥ 0` (`x = ∞` gives 0).
///
/// For `x ≥ SMALL_X` the terms are summed directly until the next term
/// drops below `rel_tol` times the partial sum or [`MAX_TERMS`] is reached.
pub fn exp_dilog(x: f64, rel_tol: f64) -> SeriesSum {
    debug_assert!(x >= 0.0);
    if x == f64::INFINITY {
        return SeriesSum { value: 0.0, terms: 0 };
    }
    if x == 0.0 {
        return SeriesSum {
            value: PI * PI / 6.0,
            terms: 0,
        };
    }
    if x < SMALL_X {
        return SeriesSum {
            value: small_x_expansion(x),
            terms: 0,
        };
    }
    let mut sum = (-x).exp();
    let mut n = 1u32;
    while n < MAX_TERMS {
        let next = n + 1;
        let nf = next as f64;
        let term = (-nf * x).exp() / (nf * nf);
        if term < rel_tol * sum {
            break;
        }
        sum += term;
        n = next;
    }
    SeriesSum { value: sum, terms: n }
}

/// Li₂(e^{-x}) = π²/6 − x + x ln x − x²/4 + Σ_{j≥1} B_{2j} x^{2j+1} / (2j (2j+1)!),
/// convergent for x < 2π.
fn small_x_expansion(x: f64) -> f64 {
    let mut tail = 0.0;
    // x^{2j+1}/(2j+1)!
    let mut power_over_fact = x;
    for (j, b) in (1..).zip(EVEN_BERNOULLI) {
        let k = 2 * j as u32;
        power_over_fact *= x * x / ((k * (k + 1)) as f64);
        let term = b * power_over_fact / k as f64;
        tail += term;
        if term.abs() < 1e-18 * tail.abs() {
            break;
        }
    }
    PI * PI / 6.0 - x + x * x.ln() - x * x / 4.0 + tail
}
