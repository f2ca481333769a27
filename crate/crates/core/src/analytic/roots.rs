//! Dense complex polynomials and a simultaneous-iteration root finder.

use num_complex::Complex64;

/// Polynomial with coefficients in descending powers.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    pub fn from_descending(coeffs: Vec<Complex64>) -> Self {
        let first = coeffs.iter().position(|c| *c != Complex64::new(0.0, 0.0));
        let coeffs = match first {
            Some(i) => coeffs[i..].to_vec(),
            None => vec![Complex64::new(0.0, 0.0)],
        };
        Polynomial { coeffs }
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs[0]
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Value and first derivative by Horner's scheme.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let zero = Complex64::new(0.0, 0.0);
        let mut p = zero;
        let mut dp = zero;
        for &c in &self.coeffs {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    pub fn derivative(&self) -> Polynomial {
        let d = self.degree();
        if d == 0 {
            return Polynomial::from_descending(vec![Complex64::new(0.0, 0.0)]);
        }
        let coeffs = self.coeffs[..d]
            .iter()
            .enumerate()
            .map(|(i, &c)| c * (d - i) as f64)
            .collect();
        Polynomial::from_descending(coeffs)
    }

    pub fn scale(&self, factor: Complex64) -> Polynomial {
        Polynomial::from_descending(self.coeffs.iter().map(|&c| c * factor).collect())
    }

    /// `self - value`.
    pub fn shift(&self, value: Complex64) -> Polynomial {
        let mut coeffs = self.coeffs.clone();
        *coeffs.last_mut().expect("nonempty") -= value;
        Polynomial { coeffs }
    }

    /// Synthetic division by `(z - root)`: quotient and remainder.
    pub fn deflate(&self, root: Complex64) -> (Polynomial, Complex64) {
        let mut quotient = Vec::with_capacity(self.degree());
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in &self.coeffs {
            acc = acc * root + c;
            quotient.push(acc);
        }
        let remainder = quotient.pop().expect("nonempty");
        if quotient.is_empty() {
            quotient.push(Complex64::new(0.0, 0.0));
        }
        (Polynomial { coeffs: quotient }, remainder)
    }

    /// Bound on the modulus of every root (Cauchy).
    pub fn root_radius(&self) -> f64 {
        let lead = self.leading().norm();
        1.0 + self.coeffs[1..]
            .iter()
            .map(|c| c.norm() / lead)
            .fold(0.0, f64::max)
    }
}

/// All roots by Durand–Kerner iteration, optionally seeded, then Newton
/// polished. Returns `None` when the iteration does not settle.
pub fn durand_kerner(
    p: &Polynomial,
    seed: Option<&[Complex64]>,
    tol: f64,
    max_iter: usize,
) -> Option<Vec<Complex64>> {
    let d = p.degree();
    if d == 0 {
        return Some(Vec::new());
    }
    let monic = p.scale(p.leading().inv());
    if d == 1 {
        return Some(vec![-monic.coefficients()[1]]);
    }
    let mut z: Vec<Complex64> = match seed {
        Some(s) if s.len() == d => s.to_vec(),
        _ => {
            let r = monic.root_radius();
            let base = Complex64::new(0.4, 0.9);
            (0..d).map(|i| base.powu(i as u32) * r).collect()
        }
    };
    let mut converged = false;
    for _ in 0..max_iter {
        let mut max_delta: f64 = 0.0;
        for i in 0..d {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..d {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                // coincident iterates: nudge apart
                z[i] += Complex64::new(tol.max(1e-12), tol.max(1e-12));
                max_delta = f64::INFINITY;
                continue;
            }
            let delta = monic.eval(z[i]) / denom;
            z[i] -= delta;
            max_delta = max_delta.max(delta.norm() / (1.0 + z[i].norm()));
        }
        if !max_delta.is_finite() && z.iter().any(|x| !x.is_finite()) {
            return None;
        }
        if max_delta <= tol {
            converged = true;
            break;
        }
    }
    if !converged {
        return None;
    }
    for root in z.iter_mut() {
        *root = newton_polish(&monic, *root, 4);
    }
    Some(z)
}

/// A few undamped Newton steps; stops early when the derivative vanishes.
pub fn newton_polish(p: &Polynomial, mut z: Complex64, steps: usize) -> Complex64 {
    for _ in 0..steps {
        let (v, dv) = p.eval_with_derivative(z);
        if dv.norm() == 0.0 || v.norm() == 0.0 {
            break;
        }
        let next = z - v / dv;
        if !next.is_finite() {
            break;
        }
        z = next;
    }
    z
}
