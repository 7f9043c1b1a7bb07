//! Text and JSON rendering of reports. Rationals are emitted as `"num/den"`.

use std::fmt::Write as _;

use serde::Serialize;
use swt_core::numoracle::{Agreement, OracleReport};
use swt_core::polycore::Rational;
use swt_core::singularity::PointClassification;
use swt_core::traceforms::{CountReport, GenericityCheck};

pub fn rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn yes_no(trivial: bool) -> &'static str {
    if trivial {
        "trivial"
    } else {
        "NOT trivial"
    }
}

#[derive(Serialize)]
pub struct GenericityJson {
    #[serde(rename = "I1")]
    i1: bool,
    #[serde(rename = "I2")]
    i2: bool,
    #[serde(rename = "I3")]
    i3: bool,
    passed: bool,
}

impl From<&GenericityCheck> for GenericityJson {
    fn from(g: &GenericityCheck) -> Self {
        GenericityJson {
            i1: g.i1,
            i2: g.i2,
            i3: g.i3,
            passed: g.passed(),
        }
    }
}

pub fn genericity_text(g: &GenericityCheck) -> String {
    let mut s = String::new();
    for (name, ok) in [("I1", g.i1), ("I2", g.i2), ("I3", g.i3)] {
        let _ = writeln!(s, "{name}: {}", yes_no(ok));
    }
    let _ = writeln!(s, "generic: {}", if g.passed() { "yes" } else { "no" });
    s
}

#[derive(Serialize)]
struct RegionJson {
    total_in: i64,
    positive_in: i64,
    negative_in: i64,
}

#[derive(Serialize)]
pub struct CountJson {
    status: String,
    genericity: GenericityJson,
    #[serde(rename = "dimA")]
    dim_a: Option<usize>,
    sigma_theta: Option<i64>,
    sigma_psi: Option<i64>,
    sigma_phi1: Option<i64>,
    sigma_phi2: Option<i64>,
    psi_nondegenerate: Option<bool>,
    total: Option<i64>,
    positive: Option<i64>,
    negative: Option<i64>,
    in_region: Option<RegionJson>,
    alphas: [String; 3],
    attempts: usize,
    order: String,
    seed: u64,
}

impl CountJson {
    pub fn new(r: &CountReport, order: &str, seed: u64) -> Self {
        CountJson {
            status: r.status.to_string(),
            genericity: (&r.genericity).into(),
            dim_a: r.dim_a,
            sigma_theta: r.sigma_theta,
            sigma_psi: r.sigma_psi,
            sigma_phi1: r.sigma_phi1,
            sigma_phi2: r.sigma_phi2,
            psi_nondegenerate: r.psi.map(|s| s.nondegenerate),
            total: r.total,
            positive: r.positive,
            negative: r.negative,
            in_region: r.in_region.map(|g| RegionJson {
                total_in: g.total_in,
                positive_in: g.positive_in,
                negative_in: g.negative_in,
            }),
            alphas: std::array::from_fn(|i| rational(&r.alphas[i])),
            attempts: r.attempts,
            order: order.to_string(),
            seed,
        }
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

pub fn count_text(r: &CountReport) -> String {
    let mut s = genericity_text(&r.genericity);
    if let Some(d) = r.dim_a {
        let _ = writeln!(s, "dim A: {d}");
    }
    if let Some(t) = r.sigma_theta {
        let _ = writeln!(s, "sigma(Theta): {t}");
    }
    if let Some(p) = &r.psi {
        let kind = if p.nondegenerate {
            "nondegenerate"
        } else {
            "degenerate"
        };
        let _ = writeln!(s, "sigma(Psi): {} ({kind})", p.signature);
    }
    if let Some(v) = r.sigma_phi1 {
        let _ = writeln!(s, "sigma(Phi1): {v}");
    }
    if let Some(v) = r.sigma_phi2 {
        let _ = writeln!(s, "sigma(Phi2): {v}");
    }
    if r.attempts > 0 {
        let a: Vec<String> = r.alphas.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "alphas: {} (attempt {})", a.join(", "), r.attempts);
    }
    if r.total.is_some() {
        let _ = writeln!(
            s,
            "swallowtails: total {}, positive {}, negative {}",
            opt(r.total),
            opt(r.positive),
            opt(r.negative)
        );
    }
    if let Some(g) = r.in_region {
        let _ = writeln!(
            s,
            "in region u > 0: total {}, positive {}, negative {}",
            g.total_in, g.positive_in, g.negative_in
        );
    }
    let _ = writeln!(s, "status: {}", r.status);
    s
}

#[derive(Serialize)]
pub struct ClassifyJson {
    point: [String; 3],
    verdict: String,
    sign: Option<i32>,
    witness_pair: Option<String>,
    j_value: String,
    df_rank: usize,
    h_values: Option<[String; 3]>,
    z_value: Option<String>,
    det_dh_value: Option<String>,
    g_value: Option<String>,
}

impl ClassifyJson {
    pub fn new(point: &[Rational; 3], c: &PointClassification) -> Self {
        let d = &c.diagnostics;
        ClassifyJson {
            point: std::array::from_fn(|i| rational(&point[i])),
            verdict: c.verdict.to_string(),
            sign: c.sign,
            witness_pair: c.witness_pair.map(|p| p.to_string()),
            j_value: rational(&d.j_value),
            df_rank: d.df_rank,
            h_values: d
                .h_values
                .as_ref()
                .map(|h| std::array::from_fn(|i| rational(&h[i]))),
            z_value: d.z_value.as_ref().map(rational),
            det_dh_value: d.det_dh_value.as_ref().map(rational),
            g_value: d.g_value.as_ref().map(rational),
        }
    }
}

pub fn classify_text(point: &[Rational; 3], c: &PointClassification) -> String {
    let d = &c.diagnostics;
    let mut s = String::new();
    let p: Vec<String> = point.iter().map(ToString::to_string).collect();
    let _ = writeln!(s, "point: ({})", p.join(", "));
    match c.sign {
        Some(sign) => {
            let _ = writeln!(s, "verdict: {} {:+}", c.verdict, sign);
        }
        None => {
            let _ = writeln!(s, "verdict: {}", c.verdict);
        }
    }
    if let Some(pair) = c.witness_pair {
        let _ = writeln!(s, "witness pair: K{pair}");
    }
    let _ = writeln!(s, "J: {}", d.j_value);
    let _ = writeln!(s, "rank Df: {}", d.df_rank);
    if let Some(h) = &d.h_values {
        let _ = writeln!(s, "H = (J, X, Y): ({}, {}, {})", h[0], h[1], h[2]);
    }
    if let (Some(z), Some(det), Some(g)) = (&d.z_value, &d.det_dh_value, &d.g_value) {
        let _ = writeln!(s, "Z: {z}");
        let _ = writeln!(s, "det DH: {det}");
        let _ = writeln!(s, "g: {g}");
    }
    s
}

#[derive(Serialize)]
struct PointJson {
    coords: [f64; 3],
    residual: f64,
    cluster_size: usize,
    sign: Option<i32>,
    witness_pair: String,
    g_value: f64,
    u_value: Option<f64>,
    inside: Option<bool>,
}

#[derive(Serialize)]
pub struct SolveJson {
    points: Vec<PointJson>,
    total: i64,
    positive: i64,
    negative: i64,
    unresolved: usize,
    in_region: Option<RegionJson>,
    exact: CountJson,
    agreement: bool,
    mismatches: Vec<String>,
}

impl SolveJson {
    pub fn new(o: &OracleReport, exact: CountJson, a: &Agreement) -> Self {
        SolveJson {
            points: o
                .points
                .iter()
                .map(|p| PointJson {
                    coords: p.point.coords,
                    residual: p.point.residual,
                    cluster_size: p.point.cluster_size,
                    sign: p.sign,
                    witness_pair: p.witness.to_string(),
                    g_value: p.g_value,
                    u_value: p.u_value,
                    inside: p.inside,
                })
                .collect(),
            total: o.total,
            positive: o.positive,
            negative: o.negative,
            unresolved: o.unresolved,
            in_region: o.region.map(|r| RegionJson {
                total_in: r.total_in,
                positive_in: r.positive_in,
                negative_in: r.negative_in,
            }),
            exact,
            agreement: a.agrees,
            mismatches: a.mismatches.clone(),
        }
    }
}

pub fn solve_text(o: &OracleReport, exact: &CountReport, a: &Agreement) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "real points: {}", o.total);
    for p in &o.points {
        let [x, y, z] = p.point.coords;
        let sign = p.sign.map_or_else(|| "?".to_string(), |v| format!("{v:+}"));
        let _ = write!(
            s,
            "  ({x:.12}, {y:.12}, {z:.12})  sign {sign}  pair K{}  residual {:.2e}",
            p.witness, p.point.residual
        );
        if p.point.cluster_size > 1 {
            let _ = write!(s, "  multiplicity {}", p.point.cluster_size);
        }
        if let Some(inside) = p.inside {
            let _ = write!(s, "  {}", if inside { "inside" } else { "outside" });
        }
        s.push('\n');
    }
    let _ = writeln!(
        s,
        "oracle: total {}, positive {}, negative {}, unresolved {}",
        o.total, o.positive, o.negative, o.unresolved
    );
    if let Some(r) = o.region {
        let _ = writeln!(
            s,
            "oracle in region: total {}, positive {}, negative {}",
            r.total_in, r.positive_in, r.negative_in
        );
    }
    let _ = writeln!(
        s,
        "exact: total {}, sigma(Psi) {}",
        opt(exact.sigma_theta),
        opt(exact.sigma_psi)
    );
    if a.agrees {
        let _ = writeln!(s, "agreement: yes");
    } else {
        let _ = writeln!(s, "agreement: NO");
        for m in &a.mismatches {
            let _ = writeln!(s, "  {m}");
        }
    }
    s
}
