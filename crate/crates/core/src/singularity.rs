//! Critical-locus polynomials of a map `f: ℝ³ → ℝ³` and the pointwise
//! swallowtail classifier.
//!
//! For each pair of rows `i < j` of `Df`, the kernel field `K = ∇fᵢ × ∇fⱼ`
//! spans `ker Df` along `J⁻¹(0)` wherever it does not vanish. Differentiating
//! along it gives the chain
//!
//! ```text
//! X = ⟨∇J, K⟩,  Y = ⟨∇X, K⟩,  Z = ⟨∇Y, K⟩,  H = (J, X, Y),  g = Z · det DH
//! ```
//!
//! A point is a simple swallowtail when `rank Df = 2` there and `H` has a
//! simple zero; its sign is `sgn(Z · det DH)`.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::linalg::RatMatrix;
use crate::par;
use crate::polycore::{
    cross, det3, dot, gradient, minors2, PolyMap, PolyRow, PolyVector, Polynomial, Rational,
};

/// Row pair `(i, j)` of the derivative matrix, 1-based as in `K₁₂, K₁₃, K₂₃`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IndexPair {
    P12,
    P13,
    P23,
}

impl IndexPair {
    /// Fixed order; also the order in which weights `α` are given.
    pub const ALL: [IndexPair; 3] = [IndexPair::P12, IndexPair::P13, IndexPair::P23];

    /// Zero-based row indices.
    pub fn rows(self) -> (usize, usize) {
        match self {
            IndexPair::P12 => (0, 1),
            IndexPair::P13 => (0, 2),
            IndexPair::P23 => (1, 2),
        }
    }

    pub fn position(self) -> usize {
        self as usize
    }
}

impl fmt::Display for IndexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j) = self.rows();
        write!(f, "{}{}", i + 1, j + 1)
    }
}

/// The derived chain for one kernel field `K_ij`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelChain {
    pub pair: IndexPair,
    pub kernel: PolyVector,
    pub x: Polynomial,
    pub y: Polynomial,
    pub z: Polynomial,
    /// `det [∇J, ∇X, ∇Y]`.
    pub det_dh: Polynomial,
}

impl KernelChain {
    /// `g_ij = Z_ij · det DH_ij`. Computed on demand; the product can be large.
    pub fn g(&self) -> Polynomial {
        &self.z * &self.det_dh
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularityData {
    pub jacobian: [PolyRow; 3],
    /// `J = det Df`.
    pub j: Polynomial,
    pub chains: [KernelChain; 3],
}

impl SingularityData {
    pub fn chain(&self, pair: IndexPair) -> &KernelChain {
        &self.chains[pair.position()]
    }
}

/// Computes `J` and the three kernel chains.
pub fn derive(f: &PolyMap) -> SingularityData {
    let jacobian = f.jacobian();
    let j = det3(&jacobian);
    let grad_j = gradient(&j);
    let chains = par::map(&IndexPair::ALL, |&pair| {
        let (r1, r2) = pair.rows();
        let kernel = cross(
            &PolyVector(jacobian[r1].clone()),
            &PolyVector(jacobian[r2].clone()),
        );
        let x = dot(&grad_j, &kernel);
        let grad_x = gradient(&x);
        let y = dot(&grad_x, &kernel);
        let grad_y = gradient(&y);
        let z = dot(&grad_y, &kernel);
        let det_dh = det3(&[grad_j.0.clone(), grad_x.0, grad_y.0]);
        KernelChain {
            pair,
            kernel,
            x,
            y,
            z,
            det_dh,
        }
    });
    let chains: [KernelChain; 3] = chains.try_into().expect("three pairs");
    SingularityData {
        jacobian,
        j,
        chains,
    }
}

/// Generator lists of the ideals used to certify genericity and to cut out
/// the swallowtail locus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericityGenerators {
    /// `J, ∂J/∂x, ∂J/∂y, ∂J/∂z`.
    pub i1: Vec<Polynomial>,
    /// `J` and the nine 2×2 minors of `Df`.
    pub i2: Vec<Polynomial>,
    /// `J, X₁₂, X₁₃, X₂₃` and the eighteen 2×2 minors of `D(J, X₁₂, X₁₃, X₂₃)`.
    pub i3: Vec<Polynomial>,
    /// `J, X₁₂, X₁₃, X₂₃, Y₁₂, Y₁₃, Y₂₃`.
    pub swallowtail: Vec<Polynomial>,
}

pub fn genericity_generators(f: &PolyMap) -> GenericityGenerators {
    generators_from(&derive(f))
}

pub fn generators_from(data: &SingularityData) -> GenericityGenerators {
    let j = &data.j;
    let grad_j = gradient(j);
    let mut i1 = vec![j.clone()];
    i1.extend(grad_j.0.iter().cloned());

    let mut i2 = vec![j.clone()];
    i2.extend(minors2(&data.jacobian).expect("three rows"));

    let xs: Vec<Polynomial> = data.chains.iter().map(|c| c.x.clone()).collect();
    let mut rows: Vec<PolyRow> = vec![grad_j.0.clone()];
    rows.extend(xs.iter().map(|x| gradient(x).0));
    let mut i3 = vec![j.clone()];
    i3.extend(xs.iter().cloned());
    i3.extend(minors2(&rows).expect("four rows"));

    let mut swallowtail = vec![j.clone()];
    swallowtail.extend(xs);
    swallowtail.extend(data.chains.iter().map(|c| c.y.clone()));

    GenericityGenerators {
        i1,
        i2,
        i3,
        swallowtail,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Regular,
    SingularNotSwallowtail,
    SimpleSwallowtail,
    DegenerateOrUncertain,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Regular => "Regular",
            Verdict::SingularNotSwallowtail => "SingularNotSwallowtail",
            Verdict::SimpleSwallowtail => "SimpleSwallowtail",
            Verdict::DegenerateOrUncertain => "DegenerateOrUncertain",
        })
    }
}

/// Values gathered while classifying a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostics {
    pub j_value: Rational,
    pub df_rank: usize,
    /// `H(p) = (J, X, Y)(p)` for the witness pair.
    pub h_values: Option<[Rational; 3]>,
    pub z_value: Option<Rational>,
    pub det_dh_value: Option<Rational>,
    /// `g(p) = Z(p) · det DH(p)` for the witness pair.
    pub g_value: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointClassification {
    pub verdict: Verdict,
    /// `+1` or `-1`, present iff the verdict is `SimpleSwallowtail`.
    pub sign: Option<i32>,
    pub witness_pair: Option<IndexPair>,
    pub diagnostics: Diagnostics,
}

pub fn classify_point(f: &PolyMap, p: &[Rational; 3]) -> PointClassification {
    classify_with(&derive(f), p)
}

/// Classifies `p` using already derived data. The witness pair is the first
/// `ij` in `12, 13, 23` with `K_ij(p) ≠ 0`.
pub fn classify_with(data: &SingularityData, p: &[Rational; 3]) -> PointClassification {
    let j_value = data.j.eval(p);
    let df = RatMatrix::from_rows(
        data.jacobian
            .iter()
            .map(|row| row.iter().map(|e| e.eval(p)).collect())
            .collect(),
    );
    let df_rank = df.rank();
    let mut diagnostics = Diagnostics {
        j_value: j_value.clone(),
        df_rank,
        h_values: None,
        z_value: None,
        det_dh_value: None,
        g_value: None,
    };
    let done = |verdict, witness_pair, diagnostics| PointClassification {
        verdict,
        sign: None,
        witness_pair,
        diagnostics,
    };
    if !j_value.is_zero() {
        return done(Verdict::Regular, None, diagnostics);
    }
    if df_rank <= 1 {
        return done(Verdict::SingularNotSwallowtail, None, diagnostics);
    }
    let witness = data
        .chains
        .iter()
        .find(|c| c.kernel.eval(p).iter().any(|v| !v.is_zero()))
        .expect("rank 2 forces a nonzero 2x2 minor");
    let pv = evaluate_pair(data, witness, p);
    diagnostics.h_values = Some(pv.h.clone());
    let pair = Some(witness.pair);
    let Some((z, det, g)) = pv.values else {
        return done(Verdict::SingularNotSwallowtail, pair, diagnostics);
    };
    diagnostics.z_value = Some(z);
    diagnostics.det_dh_value = Some(det);
    diagnostics.g_value = Some(g.clone());
    if g.is_zero() {
        return done(Verdict::DegenerateOrUncertain, pair, diagnostics);
    }
    PointClassification {
        verdict: Verdict::SimpleSwallowtail,
        sign: Some(if g.is_positive() { 1 } else { -1 }),
        witness_pair: pair,
        diagnostics,
    }
}

struct PairValues {
    h: [Rational; 3],
    /// `(Z, det DH, g)` when `H(p) = 0`.
    values: Option<(Rational, Rational, Rational)>,
}

fn evaluate_pair(data: &SingularityData, chain: &KernelChain, p: &[Rational; 3]) -> PairValues {
    let h = [data.j.eval(p), chain.x.eval(p), chain.y.eval(p)];
    if h.iter().any(|v| !v.is_zero()) {
        return PairValues { h, values: None };
    }
    let z = chain.z.eval(p);
    let det = chain.det_dh.eval(p);
    let g = &z * &det;
    PairValues {
        h,
        values: Some((z, det, g)),
    }
}

/// Sign of `p` computed with a specific kernel field, or `None` if that pair
/// is not admissible there (`K(p) = 0`, `H(p) ≠ 0`, or `g(p) = 0`).
pub fn sign_with_pair(data: &SingularityData, p: &[Rational; 3], pair: IndexPair) -> Option<i32> {
    let chain = data.chain(pair);
    if chain.kernel.eval(p).iter().all(Zero::is_zero) {
        return None;
    }
    let (_, _, g) = evaluate_pair(data, chain, p).values?;
    if g.is_zero() {
        None
    } else if g.is_positive() {
        Some(1)
    } else {
        Some(-1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SingularityError {
    #[error("invalid change of coordinates: the linear part is singular")]
    SingularTransform,
}

/// An invertible affine map `q ↦ A q + b` with rational entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    linear: [[Rational; 3]; 3],
    shift: [Rational; 3],
}

impl AffineMap {
    pub fn new(linear: [[Rational; 3]; 3], shift: [Rational; 3]) -> Result<Self, SingularityError> {
        let map = AffineMap { linear, shift };
        if map.det().is_zero() {
            Err(SingularityError::SingularTransform)
        } else {
            Ok(map)
        }
    }

    pub fn identity() -> Self {
        let o = Rational::one;
        let z = Rational::zero;
        AffineMap {
            linear: [[o(), z(), z()], [z(), o(), z()], [z(), z(), o()]],
            shift: [z(), z(), z()],
        }
    }

    pub fn linear(&self) -> &[[Rational; 3]; 3] {
        &self.linear
    }

    pub fn shift(&self) -> &[Rational; 3] {
        &self.shift
    }

    pub fn det(&self) -> Rational {
        let a = &self.linear;
        &a[0][0] * (&a[1][1] * &a[2][2] - &a[1][2] * &a[2][1])
            - &a[0][1] * (&a[1][0] * &a[2][2] - &a[1][2] * &a[2][0])
            + &a[0][2] * (&a[1][0] * &a[2][1] - &a[1][1] * &a[2][0])
    }

    pub fn apply(&self, q: &[Rational; 3]) -> [Rational; 3] {
        std::array::from_fn(|i| {
            (0..3).fold(self.shift[i].clone(), |acc, k| {
                acc + &self.linear[i][k] * &q[k]
            })
        })
    }

    pub fn inverse(&self) -> AffineMap {
        let a = &self.linear;
        let det = self.det();
        let cof = |r: usize, c: usize| -> Rational {
            let rows: Vec<usize> = (0..3).filter(|&i| i != r).collect();
            let cols: Vec<usize> = (0..3).filter(|&j| j != c).collect();
            let m = &a[rows[0]][cols[0]] * &a[rows[1]][cols[1]]
                - &a[rows[0]][cols[1]] * &a[rows[1]][cols[0]];
            if (r + c).is_multiple_of(2) {
                m
            } else {
                -m
            }
        };
        // inverse = adjugate / det, adjugate = cofactor transpose
        let inv: [[Rational; 3]; 3] =
            std::array::from_fn(|i| std::array::from_fn(|j| cof(j, i) / &det));
        let shift = std::array::from_fn(|i| {
            -(0..3).fold(Rational::zero(), |acc, k| acc + &inv[i][k] * &self.shift[k])
        });
        AffineMap { linear: inv, shift }
    }

    /// The coordinate polynomials of the map.
    pub fn as_polys(&self) -> [Polynomial; 3] {
        let vars = [Polynomial::x(), Polynomial::y(), Polynomial::z()];
        std::array::from_fn(|i| {
            (0..3).fold(Polynomial::constant(self.shift[i].clone()), |acc, k| {
                &acc + &vars[k].scale(&self.linear[i][k])
            })
        })
    }
}

/// `f ∘ φ` for `φ(q) = A q + b`.
pub fn compose_linear(
    f: &PolyMap,
    a: [[Rational; 3]; 3],
    b: [Rational; 3],
) -> Result<PolyMap, SingularityError> {
    Ok(compose_source(f, &AffineMap::new(a, b)?))
}

pub fn compose_source(f: &PolyMap, phi: &AffineMap) -> PolyMap {
    let subs = phi.as_polys();
    PolyMap {
        f: std::array::from_fn(|i| f.f[i].substitute(&subs)),
    }
}

/// `ψ ∘ f` for an affine target change `ψ(w) = B w + c`.
pub fn compose_target(psi: &AffineMap, f: &PolyMap) -> PolyMap {
    PolyMap {
        f: std::array::from_fn(|i| {
            (0..3).fold(Polynomial::constant(psi.shift[i].clone()), |acc, k| {
                &acc + &f.f[k].scale(&psi.linear[i][k])
            })
        }),
    }
}
