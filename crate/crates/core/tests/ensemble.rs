use loggas_core::ensemble::{coordinate_moments, GasModel};
use loggas_core::RngStream;

#[test]
fn coordinate_covariance_is_consistent() {
    let (n, rho) = (5, 2.5);
    let model = GasModel::new(n, 2.0, rho).unwrap();
    let m = coordinate_moments(&model, 40_000, &RngStream::new(70, 0)).unwrap();
    // The law is invariant under x -> -x reversed.
    for i in 0..n {
        let (a, b) = (m.mean[i], m.mean[n - 1 - i]);
        assert!((a.mean + b.mean).abs() <= 5.0 * (a.std_error + b.std_error), "{a:?} {b:?}");
        for j in 0..n {
            assert_eq!(m.covariance[i][j], m.covariance[j][i]);
        }
        assert!(m.covariance[i][i] > 0.0);
    }
    assert!(m.mean.windows(2).all(|w| w[0].mean > w[1].mean));
    // Var(sum x) = n / rho.
    let total: f64 = m.covariance.iter().flatten().sum();
    let se = (n as f64 / rho) * (2.0 / 40_000f64).sqrt();
    assert!((total - n as f64 / rho).abs() <= 5.0 * se, "{total}");
    assert!(coordinate_moments(&model, 1, &RngStream::new(0, 0)).is_err());
}

#[test]
fn single_particle_is_gaussian() {
    let model = GasModel::new(1, 3.0, 4.0).unwrap();
    let m = coordinate_moments(&model, 40_000, &RngStream::new(71, 0)).unwrap();
    let se = 0.25 * (2.0 / 40_000f64).sqrt();
    assert!((m.covariance[0][0] - 0.25).abs() <= 5.0 * se);
    assert!(m.mean[0].within(0.0, 5.0));
}
