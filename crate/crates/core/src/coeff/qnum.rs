//! Quantum integers, factorials, binomial coefficients, and the
//! Cartan-bracket product used by rank-one weight-space formulas.

use super::{LaurentPoly, Scalar};

/// Balanced quantum integer `[n]_{v^d} = (v^{dn} - v^{-dn})/(v^d - v^{-d})`,
/// expanded as `v^{d(n-1)} + v^{d(n-3)} + ... + v^{-d(n-1)}`.
/// For negative `n`, `[n] = -[-n]`.
pub fn q_int(n: i64, d: u32) -> LaurentPoly {
    if n == 0 {
        return LaurentPoly::zero();
    }
    if n < 0 {
        return -q_int(-n, d);
    }
    let d = d as i64;
    let mut out = LaurentPoly::zero();
    for k in 0..n {
        out += LaurentPoly::v_pow(d * (n - 1 - 2 * k));
    }
    out
}

/// `[n]_{v^d}! = [1][2]...[n]`. Defined for `n >= 0`.
pub fn q_factorial(n: u32, d: u32) -> LaurentPoly {
    let mut out = LaurentPoly::one();
    for k in 1..=n as i64 {
        out = out * q_int(k, d);
    }
    out
}

/// Gaussian binomial `[a choose b]_{v^d} = prod_{j=1}^{b} [a-b+j]/[j]`.
///
/// `a` may be negative (or smaller than `b`); the product formula still
/// yields a Laurent polynomial, e.g. `[-1 choose b] = (-1)^b v^{-db(b+1)/2}`
/// ... times the appropriate sign pattern. Division is exact at every step.
pub fn q_binom(a: i64, b: u32, d: u32) -> LaurentPoly {
    let mut out = LaurentPoly::one();
    for j in 1..=b as i64 {
        out = out * q_int(a - b as i64 + j, d);
        out = out
            .divexact(&q_int(j, d))
            .expect("gaussian binomial division is exact");
    }
    out
}

/// `q_binom` packaged as a field scalar.
pub fn q_binom_scalar(a: i64, b: u32, d: u32) -> Scalar {
    Scalar::from_laurent(&q_binom(a, b, d))
}

/// The bracket product
/// `[kappa; c | t]_d = prod_{n=1}^{t} (kappa v_d^{c-n+1} - kappa^{-1} v_d^{-c+n-1}) / (v_d^n - v_d^{-n})`
/// where `v_d = v^d` and `kappa` is any invertible scalar (a symbolic
/// highest-weight value of a Cartan generator). For `kappa = v_d^m` this
/// reduces to the Gaussian binomial `[m + c choose t]_{v_d}`.
pub fn k_bracket(kappa: &Scalar, c: i64, t: u32, d: u32) -> Scalar {
    let kinv = kappa.inv();
    let mut out = Scalar::one();
    let d = d as i64;
    for n in 1..=t as i64 {
        let e = c - n + 1;
        let numer = kappa.clone() * Scalar::v_pow(d * e) - kinv.clone() * Scalar::v_pow(-d * e);
        let denom = Scalar::v_pow(d * n) - Scalar::v_pow(-d * n);
        out = out * numer / denom;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::Q;
    use super::*;

    #[test]
    fn q_int_values() {
        assert!(q_int(0, 1).is_zero());
        assert!(q_int(1, 1).is_one());
        // [2] = v + v^-1
        assert_eq!(q_int(2, 1), LaurentPoly::v_pow(1) + LaurentPoly::v_pow(-1));
        // [3]_{v^2} = v^4 + 1 + v^-4
        assert_eq!(
            q_int(3, 2),
            LaurentPoly::v_pow(4) + LaurentPoly::one() + LaurentPoly::v_pow(-4)
        );
        // [-2] = -[2]
        assert_eq!(q_int(-2, 1), -q_int(2, 1));
    }

    #[test]
    fn q_int_at_one_is_n() {
        for n in -6..=6 {
            assert_eq!(q_int(n, 1).eval_at_one(), Q::from_integer(n.into()));
            assert_eq!(q_int(n, 3).eval_at_one(), Q::from_integer(n.into()));
        }
    }

    #[test]
    fn q_factorial_values() {
        assert!(q_factorial(0, 1).is_one());
        assert_eq!(q_factorial(2, 1), q_int(2, 1));
        assert_eq!(q_factorial(3, 1), q_int(2, 1) * q_int(3, 1));
    }

    #[test]
    fn q_binom_values() {
        // [3 choose 2] = v^2 + 1 + v^-2 = [3]
        assert_eq!(q_binom(3, 2, 1), q_int(3, 1));
        // [4 choose 2] = v^4 + v^2 + 2 + v^-2 + v^-4
        let mut expect = LaurentPoly::v_pow(4) + LaurentPoly::v_pow(2) + LaurentPoly::v_pow(-2);
        expect += LaurentPoly::v_pow(-4) + LaurentPoly::from_int(2);
        assert_eq!(q_binom(4, 2, 1), expect);
        // bottom out of range
        assert!(q_binom(2, 3, 1).is_zero());
        assert!(q_binom(0, 1, 1).is_zero());
        // edge cases
        assert!(q_binom(5, 0, 2).is_one());
        assert_eq!(q_binom(5, 5, 1), LaurentPoly::one());
    }

    #[test]
    fn q_binom_negative_top() {
        // [-1 choose 1] = [-1] = -1
        assert_eq!(q_binom(-1, 1, 1), LaurentPoly::from_int(-1));
        // [-1 choose 2] = [-1][-2]/[2] = [2]/[2] = 1... with v-powers:
        // [-1][-2]/([1][2]) = ([-1]/[1]) * ([-2]/[2]) = (-1)(-1) = 1
        assert_eq!(q_binom(-1, 2, 1), LaurentPoly::one());
        // symmetry check against the identity [-a choose b] = (-1)^b [a+b-1 choose b]
        for a in 1..5i64 {
            for b in 0..5u32 {
                let lhs = q_binom(-a, b, 1);
                let mut rhs = q_binom(a + b as i64 - 1, b, 1);
                if b % 2 == 1 {
                    rhs = -rhs;
                }
                assert_eq!(lhs, rhs, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn q_binom_pascal() {
        // [a choose b] = v^{b} [a-1 choose b] + v^{-(a-b)} [a-1 choose b-1]
        for a in 1..7i64 {
            for b in 1..=a as u32 {
                let lhs = q_binom(a, b, 1);
                let rhs = q_binom(a - 1, b, 1).shift(b as i64)
                    + q_binom(a - 1, b - 1, 1).shift(-(a - b as i64));
                assert_eq!(lhs, rhs, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn k_bracket_specializes_to_binomial() {
        // kappa = v_d^m  =>  [kappa; c | t]_d = [m + c choose t]_{v^d}
        for d in [1u32, 2] {
            for m in -2..=3i64 {
                for c in -1..=3i64 {
                    for t in 0..=3u32 {
                        let kappa = Scalar::v_pow(d as i64 * m);
                        let got = k_bracket(&kappa, c, t, d);
                        let expect = q_binom_scalar(m + c, t, d);
                        assert_eq!(got, expect, "d={d} m={m} c={c} t={t}");
                    }
                }
            }
        }
    }

    #[test]
    fn k_bracket_symbolic_is_polynomial_in_kappa() {
        // with kappa = z1, the bracket times its denominators clears to a
        // Laurent polynomial in z1 and v; sanity: t = 1, c = 0 gives
        // (z1 - z1^-1)/(v - v^-1).
        let z1 = Scalar::z_pow(1, 1);
        let got = k_bracket(&z1, 0, 1, 1);
        let expect = (z1.clone() - z1.inv()) / (Scalar::v_pow(1) - Scalar::v_pow(-1));
        assert_eq!(got, expect);
    }
}
