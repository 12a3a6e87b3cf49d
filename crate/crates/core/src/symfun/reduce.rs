//! Rewriting `p_μ` with more than `n` parts in the basis `{p_λ : ℓ(λ) ≤ n}`
//! of symmetric polynomials in `n` variables.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::partition::{partitions_of, Partition};

type Expansion = Arc<Vec<(Partition, BigRational)>>;

/// Coefficient of `x^ν` (ν padded with zeros to `n` entries) in `p_μ`:
/// the number of ways to send each part of μ to a variable so that the
/// exponents add up to ν.
fn monomial_coefficient(mu: &[u32], target: &mut [u32]) -> u64 {
    let Some((&first, rest)) = mu.split_first() else {
        return u64::from(target.iter().all(|&t| t == 0));
    };
    let mut total = 0;
    for i in 0..target.len() {
        if target[i] >= first {
            target[i] -= first;
            total += monomial_coefficient(rest, target);
            target[i] += first;
        }
    }
    total
}

fn padded(nu: &Partition, n: usize) -> Vec<u32> {
    let mut v = nu.parts().to_vec();
    v.resize(n, 0);
    v
}

/// Inverse of the matrix `M[λ][ν] = [x^ν] p_λ` over partitions of one weight
/// with at most `n` parts.
struct WeightBlock {
    basis: Vec<Partition>,
    inverse: Vec<Vec<BigRational>>,
}

impl WeightBlock {
    fn build(n: usize, weight: u32) -> Self {
        let basis = partitions_of(weight, n);
        let m = basis.len();
        let mut a: Vec<Vec<BigRational>> = basis
            .iter()
            .map(|lambda| {
                basis
                    .iter()
                    .map(|nu| {
                        let c = monomial_coefficient(lambda.parts(), &mut padded(nu, n));
                        BigRational::from_integer(BigInt::from(c))
                    })
                    .collect()
            })
            .collect();
        let mut inv: Vec<Vec<BigRational>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                    .collect()
            })
            .collect();
        for col in 0..m {
            let pivot = (col..m)
                .find(|&r| !a[r][col].is_zero())
                .expect("power sums with at most n parts are a basis");
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let scale = BigRational::one() / &a[col][col];
            for j in 0..m {
                a[col][j] = &a[col][j] * &scale;
                inv[col][j] = &inv[col][j] * &scale;
            }
            for r in 0..m {
                if r != col && !a[r][col].is_zero() {
                    let factor = a[r][col].clone();
                    for j in 0..m {
                        let da = &factor * &a[col][j];
                        let di = &factor * &inv[col][j];
                        a[r][j] = &a[r][j] - da;
                        inv[r][j] = &inv[r][j] - di;
                    }
                }
            }
        }
        Self { basis, inverse: inv }
    }
}

fn blocks() -> &'static Mutex<HashMap<(usize, u32), Arc<WeightBlock>>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u32), Arc<WeightBlock>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn expansions() -> &'static Mutex<HashMap<(usize, Partition), Expansion>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, Partition), Expansion>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn block(n: usize, weight: u32) -> Arc<WeightBlock> {
    if let Some(b) = blocks().lock().unwrap().get(&(n, weight)) {
        return b.clone();
    }
    let b = Arc::new(WeightBlock::build(n, weight));
    blocks().lock().unwrap().insert((n, weight), b.clone());
    b
}

/// Expansion of `p_μ` in `n` variables over `{p_λ : ℓ(λ) ≤ n, |λ| = |μ|}`.
/// Partitions already short enough map to themselves.
pub fn reduce_power_sum(n: usize, mu: &Partition) -> Expansion {
    if mu.len() <= n {
        return Arc::new(vec![(mu.clone(), BigRational::one())]);
    }
    let key = (n, mu.clone());
    if let Some(e) = expansions().lock().unwrap().get(&key) {
        return e.clone();
    }
    let blk = block(n, mu.weight());
    let c: Vec<BigRational> = blk
        .basis
        .iter()
        .map(|nu| {
            BigRational::from_integer(BigInt::from(monomial_coefficient(
                mu.parts(),
                &mut padded(nu, n),
            )))
        })
        .collect();
    // p_μ = Σ_λ a_λ p_λ with c = a·M, so a = c·M⁻¹.
    let m = blk.basis.len();
    let mut out = Vec::new();
    for (j, lambda) in blk.basis.iter().enumerate() {
        let mut a = BigRational::zero();
        for i in 0..m {
            if !c[i].is_zero() {
                a += &c[i] * &blk.inverse[i][j];
            }
        }
        if !a.is_zero() {
            out.push((lambda.clone(), a));
        }
    }
    let e = Arc::new(out);
    expansions().lock().unwrap().insert(key, e.clone());
    e
}
