use loggas_core::ensemble::GasModel;
use loggas_core::symfun::{
    apply_generator, hermite_lassalle, mc_inner_product, partitions_up_to, Coeff, GeneratorParams, Moments,
    Partition, RatFunc, SymPolynomial,
};
use loggas_core::{Rational, RngStream};
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Direct evaluation of `sum_lambda c_lambda prod_k p_k(x)`, independent of the library.
fn eval_direct(terms: &[(Vec<u32>, f64)], x: &[f64]) -> f64 {
    terms
        .iter()
        .map(|(parts, c)| {
            c * parts
                .iter()
                .map(|&k| x.iter().map(|v| v.powi(k as i32)).sum::<f64>())
                .product::<f64>()
        })
        .sum()
}

/// `Δf - rho x·∇f + beta sum_{i<j} (∂_i f - ∂_j f) / (x_i - x_j)` by central differences.
fn generator_fd(f: impl Fn(&[f64]) -> f64, x: &[f64], beta: f64, rho: f64) -> f64 {
    let h = 1e-4;
    let n = x.len();
    let f0 = f(x);
    let mut grad = vec![0.0; n];
    let mut lap = 0.0;
    for i in 0..n {
        let mut xp = x.to_vec();
        let mut xm = x.to_vec();
        xp[i] += h;
        xm[i] -= h;
        let (fp, fm) = (f(&xp), f(&xm));
        grad[i] = (fp - fm) / (2.0 * h);
        lap += (fp - 2.0 * f0 + fm) / (h * h);
    }
    let mut g = lap - rho * x.iter().zip(&grad).map(|(a, b)| a * b).sum::<f64>();
    for i in 0..n {
        for j in i + 1..n {
            g += beta * (grad[i] - grad[j]) / (x[i] - x[j]);
        }
    }
    g
}

fn spread_points(raw: Vec<f64>) -> Vec<f64> {
    let mut x: Vec<f64> = raw.iter().enumerate().map(|(i, v)| v + 0.5 * i as f64).collect();
    x.sort_by(|a, b| b.total_cmp(a));
    x
}

fn term_strategy(n: usize) -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
    let basis: Vec<Vec<u32>> = partitions_up_to(4, n).into_iter().map(|p| p.parts().to_vec()).collect();
    prop::collection::vec((prop::sample::select(basis), -5i64..=5), 1..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generator_matches_differentiation(
        n in 1usize..=4,
        beta in 0.0f64..4.0,
        rho in 0.5f64..4.0,
        terms in term_strategy(4),
        raw in prop::collection::vec(-0.2f64..0.2, 4),
    ) {
        let terms: Vec<(Vec<u32>, f64)> = terms
            .into_iter()
            .filter(|(p, _)| p.len() <= n)
            .map(|(p, c)| (p, c as f64))
            .collect();
        let mut f = SymPolynomial::<f64>::zero(n);
        for (p, c) in &terms {
            f.add_term(Partition::from_parts(p.clone()), *c);
        }
        let x = spread_points(raw[..n].to_vec());
        let params = GeneratorParams::new(n, beta, rho).unwrap();
        let got = apply_generator(&params, &f).unwrap().evaluate(&x, beta).unwrap();
        let want = generator_fd(|y| eval_direct(&terms, y), &x, beta, rho);
        let scale = 1.0 + want.abs() + eval_direct(&terms, &x).abs();
        prop_assert!((got - want).abs() <= 1e-4 * scale, "{got} vs {want}");
    }

    #[test]
    fn symbolic_generator_specializes(
        n in 1usize..=3,
        beta_num in 0i64..8,
        terms in term_strategy(3),
        raw in prop::collection::vec(-0.2f64..0.2, 3),
    ) {
        let mut f = SymPolynomial::<RatFunc>::zero(n);
        for (p, c) in terms.into_iter().filter(|(p, _)| p.len() <= n) {
            f.add_term(Partition::from_parts(p), RatFunc::from_int(c));
        }
        let beta = Rational::new(beta_num.into(), 2.into());
        let sym = apply_generator(&GeneratorParams::symbolic(n).unwrap(), &f).unwrap();
        let exact = apply_generator(
            &GeneratorParams::rational(n, beta.clone()).unwrap(),
            &f.specialize(&beta).unwrap(),
        )
        .unwrap();
        prop_assert_eq!(sym.specialize(&beta).unwrap(), exact);
        let b = beta_num as f64 / 2.0;
        let x = spread_points(raw[..n].to_vec());
        let numeric = apply_generator(&GeneratorParams::new(n, b, n as f64).unwrap(), &f.to_numeric(b)).unwrap();
        let (u, v) = (sym.evaluate(&x, b).unwrap(), numeric.evaluate(&x, b).unwrap());
        prop_assert!((u - v).abs() <= 1e-9 * (1.0 + v.abs()));
    }

    #[test]
    fn gradient_matches_finite_differences(
        terms in term_strategy(3),
        raw in prop::collection::vec(-0.2f64..0.2, 3),
    ) {
        let terms: Vec<(Vec<u32>, f64)> = terms.into_iter().map(|(p, c)| (p, c as f64)).collect();
        let mut f = SymPolynomial::<f64>::zero(3);
        for (p, c) in &terms {
            f.add_term(Partition::from_parts(p.clone()), *c);
        }
        let x = spread_points(raw);
        let grad = f.gradient(&x, 1.0).unwrap();
        for i in 0..3 {
            let h = 1e-6;
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[i] += h;
            xm[i] -= h;
            let fd = (eval_direct(&terms, &xp) - eval_direct(&terms, &xm)) / (2.0 * h);
            prop_assert!((grad[i] - fd).abs() <= 1e-5 * (1.0 + fd.abs()), "{} vs {fd}", grad[i]);
        }
    }
}

#[test]
fn long_partitions_reduce_consistently() {
    // For n = 2, p_{1,1,1} is rewritten in the basis of partitions of length <= 2.
    let mut f = SymPolynomial::<f64>::zero(2);
    f.add_term(Partition::from_parts(vec![1, 1, 1]), 1.0);
    assert!(f.terms().all(|(p, _)| p.parts().len() <= 2));
    let x = [0.7, -1.3];
    let want = (0.7f64 - 1.3).powi(3);
    assert!((f.evaluate(&x, 1.0).unwrap() - want).abs() < 1e-12);
}

#[test]
fn zero_beta_gives_hermite_polynomials() {
    // One particle, beta irrelevant, rho = 1: probabilists' Hermite polynomials.
    let entries = hermite_lassalle(&GeneratorParams::rational(1, Rational::zero()).unwrap(), 4).unwrap();
    let hermite: [&[i64]; 5] = [&[1], &[0, 1], &[-1, 0, 1], &[0, -3, 0, 1], &[3, 0, -6, 0, 1]];
    for (k, coeffs) in hermite.iter().enumerate() {
        let e = entries
            .iter()
            .find(|e| e.partition.weight() == k as u32)
            .unwrap();
        let mut want = SymPolynomial::<Rational>::zero(1);
        for (d, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                let p = if d == 0 { Partition::empty() } else { Partition::from_parts(vec![d as u32]) };
                want.add_term(p, Rational::from_int(c));
            }
        }
        assert_eq!(e.polynomial, want, "degree {k}");
        assert_eq!(e.eigenvalue, Rational::from_int(-(k as i64)));
    }
}

#[test]
fn zero_beta_factorizes_over_coordinates() {
    // beta = 0, n = 2, rho = 2: coordinates are independent N(0, 1/2), so
    // E[p_2^2] = 2 E[x^4] + 2 E[x^2]^2 = 2 * 3/4 + 2 * 1/4 = 2.
    let mut moments = Moments::new(GeneratorParams::rational(2, Rational::zero()).unwrap());
    let p2 = SymPolynomial::<Rational>::power_sum(2, 2);
    assert_eq!(moments.expectation(&p2.mul(&p2)).unwrap(), Rational::from_int(2));
}

#[test]
fn monte_carlo_norms_of_lassalle_polynomials() {
    // n = 1: P_(2) = x^2 - 1 has E[P^2] = 2 and P_(3) = x^3 - 3x has 6.
    let model = GasModel::hermite(1, 2.0).unwrap();
    let entries = hermite_lassalle(&GeneratorParams::symbolic(1).unwrap(), 3).unwrap();
    let p2 = &entries.iter().find(|e| e.partition.weight() == 2).unwrap().polynomial;
    let p3 = &entries.iter().find(|e| e.partition.weight() == 3).unwrap().polynomial;
    let rng = RngStream::new(21, 0);
    let e22 = mc_inner_product(&model, p2, p2, 200_000, &rng).unwrap();
    let e33 = mc_inner_product(&model, p3, p3, 200_000, &rng.fork(1)).unwrap();
    let e23 = mc_inner_product(&model, p2, p3, 200_000, &rng.fork(2)).unwrap();
    assert!(e22.within(2.0, 4.0), "{e22:?}");
    assert!(e33.within(6.0, 4.0), "{e33:?}");
    assert!(e23.within(0.0, 4.0), "{e23:?}");
    let one = SymPolynomial::<RatFunc>::one(1);
    assert_eq!(mc_inner_product(&model, &one, &one, 10, &rng).unwrap().mean, 1.0);
}

#[test]
fn exact_inner_products_match_monte_carlo() {
    let n = 3;
    let params = GeneratorParams::rational(n, Rational::from_int(1)).unwrap();
    let mut moments = Moments::new(params.clone());
    let model = GasModel::hermite(n, 1.0).unwrap();
    let entries = hermite_lassalle(&params, 2).unwrap();
    let rng = RngStream::new(22, 0);
    for (k, e) in entries.iter().enumerate() {
        let exact = moments.inner_product(&e.polynomial, &e.polynomial).unwrap();
        let mc = mc_inner_product(&model, &e.polynomial, &e.polynomial, 200_000, &rng.fork(k as u64)).unwrap();
        let exact = exact.to_f64_at(1.0);
        assert!(mc.within(exact, 4.0), "{}: {mc:?} vs {exact}", e.partition);
    }
}

#[test]
fn f64_coefficients_track_exact_ones() {
    let exact = hermite_lassalle(&GeneratorParams::rational(3, Rational::from_int(2)).unwrap(), 3).unwrap();
    let numeric = hermite_lassalle(&GeneratorParams::new(3, 2.0, 3.0).unwrap(), 3).unwrap();
    assert_eq!(exact.len(), numeric.len());
    for (a, b) in exact.iter().zip(&numeric) {
        assert_eq!(a.partition, b.partition);
        for (p, c) in a.polynomial.terms() {
            let want = c.to_f64_at(2.0);
            let got = b.polynomial.coefficient(p);
            assert!((got - want).abs() <= 1e-10 * (1.0 + want.abs()), "{p}: {got} vs {want}");
        }
    }
    assert!(RatFunc::one().to_f64_at(0.0) == 1.0);
}
