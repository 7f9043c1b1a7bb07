use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::TraceFormError;
use crate::linalg::RatMatrix;

/// Inertia of a real symmetric matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignatureResult {
    pub dim: usize,
    pub n_plus: usize,
    pub n_minus: usize,
    pub rank: usize,
    pub signature: i64,
    pub nondegenerate: bool,
}

/// Coefficients of `det(λI − A)`, highest degree first, by Berkowitz's
/// division-free recurrence.
pub fn char_poly_integer(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = a.len();
    let mut q: Vec<BigInt> = vec![BigInt::one()];
    for r in 1..=n {
        let last = r - 1;
        // first column of the Toeplitz factor: 1, −a_rr, −R·C, −R·A·C, …
        let mut col = Vec::with_capacity(r + 1);
        col.push(BigInt::one());
        col.push(-&a[last][last]);
        let mut v: Vec<BigInt> = (0..last).map(|i| a[i][last].clone()).collect();
        for k in 0..last {
            let t: BigInt = (0..last).map(|j| &a[last][j] * &v[j]).sum();
            col.push(-t);
            if k + 1 < last {
                v = (0..last)
                    .map(|i| (0..last).map(|j| &a[i][j] * &v[j]).sum())
                    .collect();
            }
        }
        let mut next = vec![BigInt::zero(); r + 1];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, qj) in q.iter().enumerate().take(i + 1) {
                let c = &col[i - j];
                if !c.is_zero() && !qj.is_zero() {
                    *slot += c * qj;
                }
            }
        }
        q = next;
    }
    q
}

fn sign_variations(coeffs: &[BigInt]) -> usize {
    let signs: Vec<bool> = coeffs
        .iter()
        .filter(|c| !c.is_zero())
        .map(Signed::is_positive)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Exact signature of a symmetric rational matrix.
///
/// The characteristic polynomial of a symmetric matrix has only real roots, so
/// Descartes' rule of signs is exact: the sign variations of `p(λ)` count the
/// positive eigenvalues and those of `p(−λ)` the negative ones.
pub fn exact_signature(m: &RatMatrix) -> Result<SignatureResult, TraceFormError> {
    if !m.is_symmetric() {
        return Err(TraceFormError::NotSymmetric);
    }
    let n = m.rows();
    // clear denominators with a positive scale; inertia is unchanged
    let mut lcm = BigInt::one();
    for i in 0..n {
        for j in 0..n {
            lcm = lcm.lcm(m[(i, j)].denom());
        }
    }
    let a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let e = &m[(i, j)];
                    e.numer() * (&lcm / e.denom())
                })
                .collect()
        })
        .collect();
    let p = char_poly_integer(&a);
    let n_plus = sign_variations(&p);
    // p(−λ): the coefficient of λ^(n−i) flips when n − i is odd
    let flipped: Vec<BigInt> = p
        .iter()
        .enumerate()
        .map(|(i, c)| if (n - i) % 2 == 1 { -c } else { c.clone() })
        .collect();
    let n_minus = sign_variations(&flipped);
    let zero_mult = p.iter().rev().take_while(|c| c.is_zero()).count();
    let rank = n - zero_mult;
    debug_assert_eq!(n_plus + n_minus, rank);
    Ok(SignatureResult {
        dim: n,
        n_plus,
        n_minus,
        rank,
        signature: n_plus as i64 - n_minus as i64,
        nondegenerate: rank == n,
    })
}
