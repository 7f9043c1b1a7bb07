use super::{PolycoreError, Polynomial, Rational, Var};

/// A triple of polynomials: a polynomial vector field on ℝ³.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolyVector(pub [Polynomial; 3]);

impl PolyVector {
    pub fn new(a: Polynomial, b: Polynomial, c: Polynomial) -> Self {
        PolyVector([a, b, c])
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn components(&self) -> &[Polynomial; 3] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Polynomial::is_zero)
    }

    pub fn eval(&self, point: &[Rational; 3]) -> [Rational; 3] {
        [
            self.0[0].eval(point),
            self.0[1].eval(point),
            self.0[2].eval(point),
        ]
    }

    pub fn eval_f64(&self, point: [f64; 3]) -> [f64; 3] {
        [
            self.0[0].eval_f64(point),
            self.0[1].eval_f64(point),
            self.0[2].eval_f64(point),
        ]
    }
}

pub fn gradient(p: &Polynomial) -> PolyVector {
    PolyVector([p.partial(Var::X), p.partial(Var::Y), p.partial(Var::Z)])
}

pub fn cross(a: &PolyVector, b: &PolyVector) -> PolyVector {
    let [a1, a2, a3] = &a.0;
    let [b1, b2, b3] = &b.0;
    PolyVector([
        &(a2 * b3) - &(a3 * b2),
        &(a3 * b1) - &(a1 * b3),
        &(a1 * b2) - &(a2 * b1),
    ])
}

pub fn dot(a: &PolyVector, b: &PolyVector) -> Polynomial {
    let mut acc = Polynomial::zero();
    for i in 0..3 {
        acc = &acc + &(&a.0[i] * &b.0[i]);
    }
    acc
}

/// Rows of a matrix with three columns.
pub type PolyRow = [Polynomial; 3];

/// Determinant of a 3×3 polynomial matrix by cofactor expansion along the first row.
pub fn det3(m: &[PolyRow; 3]) -> Polynomial {
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| -> Polynomial {
        &(&m[r1][c1] * &m[r2][c2]) - &(&m[r1][c2] * &m[r2][c1])
    };
    let t0 = &m[0][0] * &minor(1, 2, 1, 2);
    let t1 = &m[0][1] * &minor(1, 2, 0, 2);
    let t2 = &m[0][2] * &minor(1, 2, 0, 1);
    &(&t0 - &t1) + &t2
}

/// All 2×2 minors of an `r×3` matrix.
///
/// Ordering: row pairs `(i, j)`, `i < j`, lexicographically; within each row
/// pair the column pairs `(0,1), (0,2), (1,2)`. Each minor is
/// `m[i][a]·m[j][b] − m[i][b]·m[j][a]`.
pub fn minors2(m: &[PolyRow]) -> Result<Vec<Polynomial>, PolycoreError> {
    if m.len() < 2 {
        return Err(PolycoreError::MalformedMatrix { rows: m.len() });
    }
    let mut out = Vec::with_capacity(m.len() * (m.len() - 1) / 2 * 3);
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            for (a, b) in [(0, 1), (0, 2), (1, 2)] {
                out.push(&(&m[i][a] * &m[j][b]) - &(&m[i][b] * &m[j][a]));
            }
        }
    }
    Ok(out)
}

/// A polynomial map `f = (f₁, f₂, f₃): ℝ³ → ℝ³`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMap {
    pub f: [Polynomial; 3],
}

impl PolyMap {
    pub fn new(f1: Polynomial, f2: Polynomial, f3: Polynomial) -> Self {
        PolyMap { f: [f1, f2, f3] }
    }

    /// Rows `∇fᵢ` of the derivative matrix `Df`.
    pub fn jacobian(&self) -> [PolyRow; 3] {
        self.f.clone().map(|fi| gradient(&fi).0)
    }

    pub fn eval(&self, point: &[Rational; 3]) -> [Rational; 3] {
        [
            self.f[0].eval(point),
            self.f[1].eval(point),
            self.f[2].eval(point),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::parse;

    fn p(s: &str) -> Polynomial {
        parse(s).unwrap()
    }

    fn c(n: i64) -> Polynomial {
        Polynomial::from_int(n)
    }

    #[test]
    fn gradient_examples() {
        assert_eq!(
            gradient(&p("y + 2*x*z + 4*x^3")),
            PolyVector::new(p("2*z + 12*x^2"), c(1), p("2*x"))
        );
        assert!(gradient(&Polynomial::zero()).is_zero());
        assert_eq!(gradient(&p("x+y+z")), PolyVector::new(c(1), c(1), c(1)));
    }

    #[test]
    fn cross_examples() {
        let e1 = PolyVector::new(c(1), c(0), c(0));
        let e2 = PolyVector::new(c(0), c(1), c(0));
        assert_eq!(cross(&e1, &e2), PolyVector::new(c(0), c(0), c(1)));
        let a = PolyVector::new(p("x*y"), p("z^2 - 1"), p("3/4*x"));
        assert!(cross(&a, &a).is_zero());
        let f = PolyMap::new(p("x*y + x^2*z + x^4"), p("y"), p("z"));
        let jac = f.jacobian();
        let k = cross(&PolyVector(jac[1].clone()), &PolyVector(jac[2].clone()));
        assert_eq!(k, e1);
    }

    #[test]
    fn dot_examples() {
        let grad_j = PolyVector::new(p("2*z + 12*x^2"), c(1), p("2*x"));
        let k = PolyVector::new(c(1), c(0), c(0));
        assert_eq!(dot(&grad_j, &k), p("2*z + 12*x^2"));
        assert!(dot(&grad_j, &PolyVector::zero()).is_zero());
        let xyz = PolyVector::new(p("x"), p("y"), p("z"));
        assert_eq!(dot(&PolyVector::new(c(1), c(1), c(1)), &xyz), p("x+y+z"));
    }

    #[test]
    fn det3_examples() {
        let id = [[c(1), c(0), c(0)], [c(0), c(1), c(0)], [c(0), c(0), c(1)]];
        assert_eq!(det3(&id), c(1));
        let f = PolyMap::new(p("x*y + x^2*z + x^4"), p("y"), p("z"));
        assert_eq!(det3(&f.jacobian()), p("y + 2*x*z + 4*x^3"));
        let r = [p("x"), p("y^2"), p("z - 1")];
        assert!(det3(&[r.clone(), [c(2), p("x*z"), c(0)], r]).is_zero());
    }

    #[test]
    fn minors_of_identity_and_fold() {
        let id = [[c(1), c(0), c(0)], [c(0), c(1), c(0)], [c(0), c(0), c(1)]];
        let ms = minors2(&id).unwrap();
        assert_eq!(ms.len(), 9);
        assert_eq!(ms.iter().filter(|m| m.is_zero()).count(), 6);
        assert_eq!(ms.iter().filter(|m| **m == c(1)).count(), 3);

        let fold = PolyMap::new(p("x^2"), p("y"), p("z")).jacobian();
        let ms = minors2(&fold).unwrap();
        assert_eq!(ms.len(), 9);
        assert!(ms.contains(&p("2*x")));
        assert!(ms.contains(&c(1)));
        // rows (2,3), columns (2,3) is the ninth minor
        assert_eq!(ms[8], c(1));
    }

    #[test]
    fn minors_count_and_malformed() {
        let row = [p("x"), p("y"), p("z")];
        let four = vec![row.clone(), row.clone(), row.clone(), row.clone()];
        assert_eq!(minors2(&four).unwrap().len(), 18);
        assert!(matches!(
            minors2(&four[..1]),
            Err(PolycoreError::MalformedMatrix { rows: 1 })
        ));
    }
}
