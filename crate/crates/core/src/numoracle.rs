//! Floating-point cross-check of the exact counts.
//!
//! The real points of `V(I)` are read off the eigenvectors of a random
//! combination `M = Σ c_v M_v` of the multiplication matrices of `A`: the
//! evaluation functional at a point `p` is a common left eigenvector of every
//! `M_v`, with eigenvalue `v(p)`. Each point is then polished by Gauss–Newton
//! on the generators and classified by evaluating the derived chain directly.

use nalgebra::{DMatrix, DVector, Schur};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::groebner::QuotientAlgebra;
use crate::par;
use crate::polycore::{Polynomial, Var};
use crate::singularity::{IndexPair, SingularityData};
use crate::traceforms::CountReport;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleTolerances {
    /// Relative imaginary part below which an eigenvalue counts as real.
    pub imag: f64,
    /// Relative generator residual a point must reach.
    pub residual: f64,
    /// Relative distance under which two points are merged.
    pub cluster: f64,
    /// Relative magnitude of `g(p)` below which its sign is unresolved.
    pub sign: f64,
}

impl Default for OracleTolerances {
    fn default() -> Self {
        OracleTolerances {
            imag: 1e-8,
            residual: 1e-6,
            cluster: 1e-6,
            sign: 1e-9,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ApproxPoint {
    pub coords: [f64; 3],
    /// Largest relative generator value `|h(p)| / Σ|terms of h at p|`.
    pub residual: f64,
    /// Number of eigenvalues merged into this point.
    pub cluster_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("numeric breakdown: {0}")]
    NumericBreakdown(String),
}

/// Relative size of `p` at `x`, in `[0, 1]`; zero when every term vanishes.
fn relative_value(p: &Polynomial, x: [f64; 3]) -> (f64, f64) {
    let v = p.eval_f64(x);
    let scale = p.eval_abs_f64(x);
    if scale == 0.0 {
        (v, 0.0)
    } else {
        (v, v.abs() / scale)
    }
}

fn residual(gens: &[Polynomial], x: [f64; 3]) -> f64 {
    gens.iter()
        .map(|g| relative_value(g, x).1)
        .fold(0.0, f64::max)
}

fn norm(x: [f64; 3]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn distance(a: [f64; 3], b: [f64; 3]) -> f64 {
    norm([a[0] - b[0], a[1] - b[1], a[2] - b[2]])
}

/// Gauss–Newton on the row-scaled system `h(x) = 0`.
fn polish(gens: &[Polynomial], grads: &[[Polynomial; 3]], start: [f64; 3]) -> [f64; 3] {
    let mut x = start;
    let mut best = residual(gens, x);
    for _ in 0..12 {
        if best == 0.0 {
            break;
        }
        let n = gens.len();
        let mut jac = DMatrix::<f64>::zeros(n, 3);
        let mut rhs = DVector::<f64>::zeros(n);
        for (i, (g, dg)) in gens.iter().zip(grads).enumerate() {
            let scale = g.eval_abs_f64(x).max(f64::MIN_POSITIVE);
            rhs[i] = -g.eval_f64(x) / scale;
            for k in 0..3 {
                jac[(i, k)] = dg[k].eval_f64(x) / scale;
            }
        }
        let Ok(step) = jac.svd(true, true).solve(&rhs, 1e-12) else {
            break;
        };
        let next = [x[0] + step[0], x[1] + step[1], x[2] + step[2]];
        if !next.iter().all(|v| v.is_finite()) {
            break;
        }
        let r = residual(gens, next);
        if r >= best {
            break;
        }
        let moved = distance(x, next);
        x = next;
        best = r;
        if moved <= 1e-15 * norm(x).max(1.0) {
            break;
        }
    }
    x
}

/// Unit vector spanning the numerical null space of `a`.
fn null_vector(a: DMatrix<f64>) -> Option<DVector<f64>> {
    let svd = a.svd(false, true);
    let v_t = svd.v_t?;
    let (k, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|x, y| x.1.total_cmp(y.1))?;
    Some(v_t.row(k).transpose())
}

/// Approximate real points of the variety of `A`, with `gens` generators of
/// the defining ideal.
pub fn solve_variety(
    qa: &QuotientAlgebra,
    gens: &[Polynomial],
    tol: &OracleTolerances,
    seed: u64,
) -> Result<Vec<ApproxPoint>, OracleError> {
    let dim = qa.dim();
    if dim == 0 {
        return Ok(Vec::new());
    }
    let mults: Vec<DMatrix<f64>> = Var::ALL.iter().map(|&v| qa.mult(v).to_f64()).collect();
    if mults.iter().any(|m| m.iter().any(|v| !v.is_finite())) {
        return Err(OracleError::NumericBreakdown(
            "multiplication matrix entry out of range".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c: [f64; 3] =
        std::array::from_fn(|_| rng.gen_range(0.5..1.5) * [-1.0, 1.0][rng.gen_range(0..2)]);
    let m = &mults[0] * c[0] + &mults[1] * c[1] + &mults[2] * c[2];
    let mt = m.transpose();

    let schur = Schur::try_new(mt.clone(), f64::EPSILON, 100_000)
        .ok_or_else(|| OracleError::NumericBreakdown("Schur iteration did not converge".into()))?;
    let eigs = schur.complex_eigenvalues();
    if eigs.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(OracleError::NumericBreakdown(
            "non-finite eigenvalue".into(),
        ));
    }

    // group nearby eigenvalues; a multiple root may split into a complex pair
    let mut groups: Vec<(nalgebra::Complex<f64>, usize)> = Vec::new();
    for z in eigs.iter() {
        let scale = z.norm().max(1.0);
        match groups
            .iter_mut()
            .find(|(w, n)| (*w / *n as f64 - z).norm() <= tol.cluster * scale)
        {
            Some((w, n)) => {
                *w += z;
                *n += 1;
            }
            None => groups.push((*z, 1)),
        }
    }

    let grads: Vec<[Polynomial; 3]> = gens
        .iter()
        .map(|g| Var::ALL.map(|v| g.partial(v)))
        .collect();
    let candidates: Vec<(f64, usize)> = groups
        .into_iter()
        .map(|(sum, n)| (sum / n as f64, n))
        .filter(|(z, _)| z.im.abs() <= tol.imag * z.re.abs().max(1.0))
        .map(|(z, n)| (z.re, n))
        .collect();

    let found = par::map(&candidates, |&(lambda, n)| {
        let shifted = &mt - DMatrix::<f64>::identity(dim, dim) * lambda;
        let w = null_vector(shifted)?;
        let ww = w.dot(&w);
        let raw: [f64; 3] = std::array::from_fn(|k| w.dot(&(mults[k].transpose() * &w)) / ww);
        let x = polish(gens, &grads, raw);
        let r = residual(gens, x);
        (r <= tol.residual).then_some(ApproxPoint {
            coords: x,
            residual: r,
            cluster_size: n,
        })
    });

    let mut points: Vec<ApproxPoint> = Vec::new();
    for p in found.into_iter().flatten() {
        let scale = norm(p.coords).max(1.0);
        match points
            .iter_mut()
            .find(|q| distance(q.coords, p.coords) <= tol.cluster * scale)
        {
            Some(q) => {
                q.cluster_size += p.cluster_size;
                if p.residual < q.residual {
                    q.coords = p.coords;
                    q.residual = p.residual;
                }
            }
            None => points.push(p),
        }
    }
    points.sort_by(|a, b| {
        a.coords
            .iter()
            .zip(&b.coords)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(points)
}

/// Repeats [`solve_variety`] with successive seeds until one run succeeds.
pub fn solve_with_retries(
    qa: &QuotientAlgebra,
    gens: &[Polynomial],
    tol: &OracleTolerances,
    seed: u64,
    attempts: usize,
) -> Result<Vec<ApproxPoint>, OracleError> {
    let mut last = OracleError::NumericBreakdown("no attempts".into());
    for k in 0..attempts.max(1) as u64 {
        match solve_variety(qa, gens, tol, seed.wrapping_add(k)) {
            Ok(points) => return Ok(points),
            Err(e) => last = e,
        }
    }
    Err(last)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SignedPoint {
    pub point: ApproxPoint,
    /// `None` when `g(p)` is below the sign cutoff.
    pub sign: Option<i32>,
    pub witness: IndexPair,
    /// `Z(p) · det DH(p)` for the witness pair.
    pub g_value: f64,
    /// Region function at the point, when a region is given.
    pub u_value: Option<f64>,
    /// `None` when `u(p)` is below the residual cutoff.
    pub inside: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleRegion {
    pub total_in: i64,
    pub positive_in: i64,
    pub negative_in: i64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleReport {
    pub points: Vec<SignedPoint>,
    pub total: i64,
    pub positive: i64,
    pub negative: i64,
    pub unresolved: usize,
    pub region: Option<OracleRegion>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Agreement {
    pub agrees: bool,
    pub mismatches: Vec<String>,
}

/// Sign of `Z · det DH` at a floating-point point, with the witness pair
/// chosen as the one whose kernel field is largest there.
pub fn float_sign(
    data: &SingularityData,
    x: [f64; 3],
    cutoff: f64,
) -> (Option<i32>, IndexPair, f64) {
    let witness = IndexPair::ALL
        .into_iter()
        .max_by(|a, b| {
            let ka = norm(data.chain(*a).kernel.eval_f64(x));
            let kb = norm(data.chain(*b).kernel.eval_f64(x));
            ka.total_cmp(&kb)
        })
        .expect("three pairs");
    let chain = data.chain(witness);
    let (z, z_rel) = relative_value(&chain.z, x);
    let (d, d_rel) = relative_value(&chain.det_dh, x);
    let g = z * d;
    let sign = (z_rel >= cutoff && d_rel >= cutoff).then_some(if g > 0.0 { 1 } else { -1 });
    (sign, witness, g)
}

/// Classifies each point by the sign of `g` and, with a region, of `u`.
pub fn oracle_count(
    data: &SingularityData,
    points: &[ApproxPoint],
    region: Option<&Polynomial>,
    tol: &OracleTolerances,
) -> OracleReport {
    let signed: Vec<SignedPoint> = par::map(points, |p| {
        let (sign, witness, g_value) = float_sign(data, p.coords, tol.sign);
        let (u_value, inside) = match region {
            Some(u) => {
                let (v, rel) = relative_value(u, p.coords);
                (Some(v), (rel > tol.residual).then_some(v > 0.0))
            }
            None => (None, None),
        };
        SignedPoint {
            point: p.clone(),
            sign,
            witness,
            g_value,
            u_value,
            inside,
        }
    });
    let count =
        |pred: &dyn Fn(&SignedPoint) -> bool| signed.iter().filter(|s| pred(s)).count() as i64;
    let positive = count(&|s| s.sign == Some(1));
    let negative = count(&|s| s.sign == Some(-1));
    let unresolved = signed
        .iter()
        .filter(|s| s.sign.is_none() || (region.is_some() && s.inside.is_none()))
        .count();
    let region = region.map(|_| OracleRegion {
        total_in: count(&|s| s.inside == Some(true)),
        positive_in: count(&|s| s.inside == Some(true) && s.sign == Some(1)),
        negative_in: count(&|s| s.inside == Some(true) && s.sign == Some(-1)),
    });
    OracleReport {
        total: signed.len() as i64,
        positive,
        negative,
        unresolved,
        region,
        points: signed,
    }
}

impl OracleReport {
    /// Signed total `Σ sgn g(p)` over resolved points.
    pub fn signed_total(&self) -> i64 {
        self.positive - self.negative
    }

    /// Compares against the exact counts; unresolved signs always disagree.
    pub fn agreement(&self, exact: &CountReport) -> Agreement {
        let mut mismatches = Vec::new();
        if self.unresolved > 0 {
            mismatches.push(format!("{} point(s) with unresolved sign", self.unresolved));
        }
        let mut check = |name: &str, ours: i64, theirs: Option<i64>| match theirs {
            Some(t) if t == ours => {}
            Some(t) => mismatches.push(format!("{name}: oracle {ours}, exact {t}")),
            None => mismatches.push(format!("{name}: no exact value")),
        };
        check("total", self.total, exact.sigma_theta);
        check("signed total", self.signed_total(), exact.sigma_psi);
        if let Some(r) = &self.region {
            let exact_region = exact.in_region;
            check("total_in", r.total_in, exact_region.map(|e| e.total_in));
            check(
                "positive_in",
                r.positive_in,
                exact_region.map(|e| e.positive_in),
            );
            check(
                "negative_in",
                r.negative_in,
                exact_region.map(|e| e.negative_in),
            );
        }
        Agreement {
            agrees: mismatches.is_empty(),
            mismatches,
        }
    }
}
