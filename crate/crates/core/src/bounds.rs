//! Closed-form girth bounds: the Moore upper bound and the lower bound
//! coming from the arithmetic of `p` and `q`.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(n: u32) -> Self {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

fn log_base(x: f64, base: f64) -> f64 {
    x.ln() / base.ln()
}

/// Moore bound for a `degree`-regular graph on `n` vertices:
/// `2 log_{degree-1} n + 1` for odd girth, `2 log_{degree-1} n + 2 - 2 log_{degree-1} 2`
/// for even girth.
pub fn moore_bound(degree: u64, n: u64, parity: Parity) -> f64 {
    assert!(degree >= 3, "Moore bound needs degree >= 3");
    let b = (degree - 1) as f64;
    let l = log_base(n as f64, b);
    match parity {
        Parity::Odd => 2.0 * l + 1.0,
        Parity::Even => 2.0 * l + 2.0 - 2.0 * log_base(2.0, b),
    }
}

/// Lower bound on the girth of `G_{d,p,q}` with `n` vertices:
/// `(2 / 3 kappa) log_d n` when `(p/q) = 1` and
/// `(4 / 3 kappa) log_d n - log_p 4` when `(p/q) = -1`, with `kappa = log_d p`.
pub fn main_inequality_rhs(d: u64, p: u64, n: u64, legendre_pq: i8) -> f64 {
    let kappa = log_base(p as f64, d as f64);
    let log_n = log_base(n as f64, d as f64);
    if legendre_pq == 1 {
        2.0 / (3.0 * kappa) * log_n
    } else {
        4.0 / (3.0 * kappa) * log_n - log_base(4.0, p as f64)
    }
}

/// Word-level form of the same bound, in terms of `q` alone:
/// `2 log_p q` when `(p/q) = 1`, `4 log_p q - log_p 4` when `(p/q) = -1`.
pub fn word_girth_lower_bound(p: u64, q: u64, legendre_pq: i8) -> f64 {
    let l = log_base(q as f64, p as f64);
    if legendre_pq == 1 {
        2.0 * l
    } else {
        4.0 * l - log_base(4.0, p as f64)
    }
}

/// Smallest admissible girth at least `bound`: bipartite graphs only have
/// even cycles.
pub fn smallest_girth_at_least(bound: f64, bipartite: bool) -> u32 {
    let mut g = bound.ceil().max(3.0) as u32;
    if bipartite && g % 2 == 1 {
        g += 1;
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moore_examples() {
        let even = moore_bound(11, 2184, Parity::Even);
        let direct = 2.0 * 2184f64.log10() + 2.0 - 2.0 * 2f64.log10();
        assert!((even - direct).abs() < 1e-12);
        assert!((even - 8.08).abs() < 5e-3);
        let odd = moore_bound(3, 10, Parity::Odd);
        assert!((odd - (2.0 * 10f64.log2() + 1.0)).abs() < 1e-12);
        assert!((odd - 7.64).abs() < 5e-3);
        assert!(5.0 <= moore_bound(3, 10, Parity::Odd));
    }

    #[test]
    fn main_inequality_examples() {
        let kappa = 11f64.ln() / 10f64.ln();
        let bip = main_inequality_rhs(10, 11, 2184, -1);
        let expected = 4.0 / (3.0 * kappa) * 2184f64.log10() - 4f64.ln() / 11f64.ln();
        assert!((bip - expected).abs() < 1e-12);
        assert!((bip - 3.7).abs() < 0.01);
        assert_eq!(smallest_girth_at_least(bip, true), 4);

        let non = main_inequality_rhs(10, 11, 168, 1);
        assert!((non - 2.0 / (3.0 * kappa) * 168f64.log10()).abs() < 1e-12);
    }

    #[test]
    fn word_bound_dominates_graph_bound() {
        for (p, q, l) in [(11u64, 13u64, -1i8), (11, 7, 1), (19, 59, -1), (11, 499, 1)] {
            let n = if l == 1 {
                (q * q * q - q) / 2
            } else {
                q * q * q - q
            };
            let d = if p == 11 { 10 } else { 18 };
            assert!(word_girth_lower_bound(p, q, l) >= main_inequality_rhs(d, p, n, l));
        }
    }
}
