use std::fmt;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{FormLabel, SignatureResult, TraceContext};
use crate::groebner::{
    buchberger, buchberger_bounded, quotient_basis, Budget, MonomialOrder, Quotient,
    QuotientAlgebra,
};
use crate::par;
use crate::polycore::{ratio, PolyMap, Polynomial, Rational};
use crate::singularity::{
    derive, generators_from, GenericityGenerators, IndexPair, SingularityData,
};

pub const DEFAULT_MAX_RETRIES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountOptions {
    pub order: MonomialOrder,
    /// Seed for the replacement weights drawn when a form is degenerate.
    pub seed: u64,
    pub max_retries: usize,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            order: MonomialOrder::DegRevLex,
            seed: 0,
            max_retries: DEFAULT_MAX_RETRIES,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CountError {
    #[error("weights must be non-negative with at least one positive")]
    InvalidWeights,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenericityIdeal {
    I1,
    I2,
    I3,
}

impl fmt::Display for GenericityIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GenericityIdeal::I1 => "I1",
            GenericityIdeal::I2 => "I2",
            GenericityIdeal::I3 => "I3",
        })
    }
}

/// Whether each genericity ideal is the whole ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenericityCheck {
    pub i1: bool,
    pub i2: bool,
    pub i3: bool,
}

impl GenericityCheck {
    pub fn passed(&self) -> bool {
        self.i1 && self.i2 && self.i3
    }

    pub fn first_failure(&self) -> Option<GenericityIdeal> {
        [
            (self.i1, GenericityIdeal::I1),
            (self.i2, GenericityIdeal::I2),
            (self.i3, GenericityIdeal::I3),
        ]
        .into_iter()
        .find(|(ok, _)| !ok)
        .map(|(_, which)| which)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountStatus {
    Ok,
    GenericityFailed(GenericityIdeal),
    InfiniteDimensional,
    DegenerateForm(FormLabel),
}

impl fmt::Display for CountStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CountStatus::Ok => f.write_str("OK"),
            CountStatus::GenericityFailed(i) => write!(f, "GenericityFailed({i})"),
            CountStatus::InfiniteDimensional => f.write_str("InfiniteDimensional"),
            CountStatus::DegenerateForm(l) => write!(f, "DegenerateForm({l})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RegionCounts {
    pub total_in: i64,
    pub positive_in: i64,
    pub negative_in: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub status: CountStatus,
    pub genericity: GenericityCheck,
    pub dim_a: Option<usize>,
    pub sigma_theta: Option<i64>,
    pub sigma_psi: Option<i64>,
    pub sigma_phi1: Option<i64>,
    pub sigma_phi2: Option<i64>,
    pub theta: Option<SignatureResult>,
    pub psi: Option<SignatureResult>,
    pub total: Option<i64>,
    pub positive: Option<i64>,
    pub negative: Option<i64>,
    pub in_region: Option<RegionCounts>,
    /// Weights of the last attempt, in pair order 12, 13, 23.
    pub alphas: [Rational; 3],
    /// Number of weight triples tried, including the requested one.
    pub attempts: usize,
}

impl CountReport {
    fn empty(status: CountStatus, genericity: GenericityCheck, alphas: [Rational; 3]) -> Self {
        CountReport {
            status,
            genericity,
            dim_a: None,
            sigma_theta: None,
            sigma_psi: None,
            sigma_phi1: None,
            sigma_phi2: None,
            theta: None,
            psi: None,
            total: None,
            positive: None,
            negative: None,
            in_region: None,
            alphas,
            attempts: 0,
        }
    }

    pub fn is_ok(&self) -> bool {
        self.status == CountStatus::Ok
    }
}

/// Everything the counting step needs: the derived polynomials, the
/// genericity verdicts and, when those pass, the algebra `A = ℚ[x,y,z]/I`.
pub struct Analysis {
    pub data: SingularityData,
    pub genericity: GenericityCheck,
    pub quotient: Option<Quotient>,
}

impl Analysis {
    pub fn algebra(&self) -> Option<&QuotientAlgebra> {
        match &self.quotient {
            Some(Quotient::Finite(qa)) => Some(qa),
            _ => None,
        }
    }
}

/// Derives the chains, checks `I₁, I₂, I₃` and builds `A` if they pass.
pub fn analyze(f: &PolyMap, order: MonomialOrder) -> Analysis {
    analyze_inner(f, order, None).expect("unbounded")
}

/// As [`analyze`], but `None` if any Gröbner computation exceeds `budget`.
pub fn analyze_bounded(f: &PolyMap, order: MonomialOrder, budget: &Budget) -> Option<Analysis> {
    analyze_inner(f, order, Some(budget))
}

fn genericity_of(
    gens: &GenericityGenerators,
    order: MonomialOrder,
    budget: Option<&Budget>,
) -> Option<GenericityCheck> {
    let ideals = [&gens.i1, &gens.i2, &gens.i3];
    let ones = par::map(&ideals, |g| match budget {
        Some(b) => buchberger_bounded(g, order, b).map(|gb| gb.contains_one()),
        None => Some(buchberger(g, order).contains_one()),
    });
    Some(GenericityCheck {
        i1: ones[0]?,
        i2: ones[1]?,
        i3: ones[2]?,
    })
}

/// Decides whether `I₁, I₂, I₃` are all the whole ring.
pub fn check_genericity(f: &PolyMap, order: MonomialOrder) -> GenericityCheck {
    genericity_of(&generators_from(&derive(f)), order, None).expect("unbounded")
}

fn analyze_inner(f: &PolyMap, order: MonomialOrder, budget: Option<&Budget>) -> Option<Analysis> {
    let gb = |g: &[Polynomial]| match budget {
        Some(b) => buchberger_bounded(g, order, b),
        None => Some(buchberger(g, order)),
    };
    let data = derive(f);
    let gens = generators_from(&data);
    let genericity = genericity_of(&gens, order, budget)?;
    let quotient = if genericity.passed() {
        Some(quotient_basis(&gb(&gens.swallowtail)?))
    } else {
        None
    };
    Some(Analysis {
        data,
        genericity,
        quotient,
    })
}

fn check_weights(alphas: &[Rational; 3]) -> Result<(), CountError> {
    if alphas.iter().any(Signed::is_negative) || alphas.iter().all(Zero::is_zero) {
        return Err(CountError::InvalidWeights);
    }
    Ok(())
}

fn random_weights(rng: &mut ChaCha8Rng) -> [Rational; 3] {
    std::array::from_fn(|_| ratio(rng.gen_range(1..=16), rng.gen_range(1..=16)))
}

fn exact_half(n: i64, d: i64) -> i64 {
    assert!(
        n % d == 0,
        "signature parity violated: {n} is not divisible by {d}"
    );
    let q = n / d;
    assert!(q >= 0, "negative count {q}");
    q
}

/// Signed count of swallowtails on all of `ℝ³`.
pub fn count_swallowtails(
    f: &PolyMap,
    alphas: &[Rational; 3],
    opts: &CountOptions,
) -> Result<CountReport, CountError> {
    check_weights(alphas)?;
    count_from(&analyze(f, opts.order), None, alphas, opts)
}

/// Signed counts on `ℝ³` and inside the region `{u > 0}`.
pub fn count_in_region(
    f: &PolyMap,
    u: &Polynomial,
    alphas: &[Rational; 3],
    opts: &CountOptions,
) -> Result<CountReport, CountError> {
    check_weights(alphas)?;
    count_from(&analyze(f, opts.order), Some(u), alphas, opts)
}

/// Counting step on a precomputed [`Analysis`].
pub fn count_from(
    analysis: &Analysis,
    region: Option<&Polynomial>,
    alphas: &[Rational; 3],
    opts: &CountOptions,
) -> Result<CountReport, CountError> {
    check_weights(alphas)?;
    let genericity = analysis.genericity;
    if let Some(which) = genericity.first_failure() {
        return Ok(CountReport::empty(
            CountStatus::GenericityFailed(which),
            genericity,
            alphas.clone(),
        ));
    }
    let Some(qa) = analysis.algebra() else {
        return Ok(CountReport::empty(
            CountStatus::InfiniteDimensional,
            genericity,
            alphas.clone(),
        ));
    };

    let mut report = CountReport::empty(CountStatus::Ok, genericity, alphas.clone());
    report.dim_a = Some(qa.dim());
    let ctx = TraceContext::new(qa);

    // coordinates of g_ij = Z_ij · det DH_ij, formed inside A
    let g_parts: Vec<Vec<Rational>> = par::map(&IndexPair::ALL, |&pair| {
        let chain = analysis.data.chain(pair);
        let z = qa.mult_matrix(&chain.z);
        z.mul_vec(&qa.coords_of(&chain.det_dh))
    });

    let u_mult = region.map(|u| qa.mult_matrix(u));
    let (theta, phi1) = par::join(
        || {
            ctx.form_from_coords(FormLabel::Theta, &unit(qa.dim()))
                .signature()
        },
        || region.map(|u| ctx.form(FormLabel::Phi1, u).signature()),
    );
    report.theta = Some(theta);
    report.sigma_theta = Some(theta.signature);
    if let Some(phi1) = phi1 {
        report.sigma_phi1 = Some(phi1.signature);
        if !phi1.nondegenerate {
            report.status = CountStatus::DegenerateForm(FormLabel::Phi1);
            return Ok(report);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut weights = alphas.clone();
    for attempt in 0..=opts.max_retries {
        if attempt > 0 {
            weights = random_weights(&mut rng);
        }
        report.attempts = attempt + 1;
        report.alphas = weights.clone();
        let g: Vec<Rational> = (0..qa.dim())
            .map(|k| {
                weights
                    .iter()
                    .zip(&g_parts)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(Rational::zero(), |acc, (a, v)| acc + a * &v[k])
            })
            .collect();
        let (psi, phi2) = par::join(
            || ctx.form_from_coords(FormLabel::Psi, &g).signature(),
            || {
                u_mult.as_ref().map(|m| {
                    ctx.form_from_coords(FormLabel::Phi2, &m.mul_vec(&g))
                        .signature()
                })
            },
        );
        report.psi = Some(psi);
        report.sigma_psi = Some(psi.signature);
        report.sigma_phi2 = phi2.map(|s| s.signature);
        if !psi.nondegenerate {
            report.status = CountStatus::DegenerateForm(FormLabel::Psi);
            continue;
        }
        if phi2.is_some_and(|s| !s.nondegenerate) {
            report.status = CountStatus::DegenerateForm(FormLabel::Phi2);
            continue;
        }
        report.status = CountStatus::Ok;
        break;
    }
    if report.status != CountStatus::Ok {
        return Ok(report);
    }

    let t = theta.signature;
    let p = psi_signature(&report);
    report.total = Some(t);
    report.positive = Some(exact_half(t + p, 2));
    report.negative = Some(exact_half(t - p, 2));
    if let (Some(f1), Some(f2)) = (report.sigma_phi1, report.sigma_phi2) {
        report.in_region = Some(RegionCounts {
            total_in: exact_half(t + f1, 2),
            positive_in: exact_half(t + p + f1 + f2, 4),
            negative_in: exact_half(t - p + f1 - f2, 4),
        });
    }
    Ok(report)
}

fn psi_signature(report: &CountReport) -> i64 {
    report.sigma_psi.expect("set by the retry loop")
}

fn unit(dim: usize) -> Vec<Rational> {
    let mut e = vec![Rational::zero(); dim];
    if dim > 0 {
        e[0] = num_traits::One::one();
    }
    e
}
