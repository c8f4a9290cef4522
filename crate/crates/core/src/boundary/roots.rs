use num_complex::Complex64;

use super::{BoundaryError, ComplexPoint};

const MAX_ITER: usize = 2000;

/// Horner evaluation of `p` (ascending coefficients) and its derivative.
fn eval_with_derivative(p: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut dv = Complex64::new(0.0, 0.0);
    for &c in p.iter().rev() {
        dv = dv * z + v;
        v = v * z + c;
    }
    (v, dv)
}

pub fn poly_eval(p: &[f64], z: ComplexPoint) -> ComplexPoint {
    eval_with_derivative(p, z.into()).0.into()
}

/// All roots of `p` (ascending coefficients), by Aberth–Ehrlich iteration
/// with a Newton polish. Exact trailing zero coefficients become roots at 0.
/// Sorted by argument, then modulus.
pub fn poly_roots(p: &[f64]) -> Result<Vec<ComplexPoint>, BoundaryError> {
    let coeffs = trimmed(p)?;
    roots_with(coeffs, |z| eval_with_derivative(coeffs, z))
}

fn trimmed(p: &[f64]) -> Result<&[f64], BoundaryError> {
    let mut end = p.len();
    while end > 0 && p[end - 1] == 0.0 {
        end -= 1;
    }
    if end < 2 || p[..end].iter().any(|c| !c.is_finite()) {
        return Err(BoundaryError::Degenerate);
    }
    Ok(&p[..end])
}

/// Roots of the polynomial with coefficients `p`, where `eval` returns the
/// value and derivative of the same polynomial, possibly computed in a
/// better conditioned factored form.
pub(crate) fn roots_with<F>(p: &[f64], eval: F) -> Result<Vec<ComplexPoint>, BoundaryError>
where
    F: Fn(Complex64) -> (Complex64, Complex64),
{
    let p = trimmed(p)?;
    let zeros = p.iter().take_while(|&&c| c == 0.0).count();
    let mut roots = aberth(p, zeros, &eval)?;
    roots.extend(std::iter::repeat_n(Complex64::new(0.0, 0.0), zeros));
    let mut out: Vec<ComplexPoint> = roots.into_iter().map(ComplexPoint::from).collect();
    out.sort_by(|a, b| {
        a.arg()
            .total_cmp(&b.arg())
            .then(a.abs().total_cmp(&b.abs()))
    });
    Ok(out)
}

/// The `degree - zeros` nonzero roots, with the `zeros` roots at the origin
/// held fixed in the Aberth correction.
fn aberth<F>(p: &[f64], zeros: usize, eval: &F) -> Result<Vec<Complex64>, BoundaryError>
where
    F: Fn(Complex64) -> (Complex64, Complex64),
{
    let n = p.len() - 1;
    let free = n - zeros;
    if free == 0 {
        return Ok(Vec::new());
    }
    let lead = p[n];
    // Fujiwara bound on the root moduli
    let bound = (1..=n)
        .map(|k| {
            let c = (p[n - k] / lead).abs();
            let c = if k == n { c / 2.0 } else { c };
            c.powf(1.0 / k as f64)
        })
        .fold(0.0f64, f64::max)
        * 2.0;
    let r = if bound > 0.0 { bound.min(1e6) * 0.5 } else { 1.0 };
    let mut z: Vec<Complex64> = (0..free)
        .map(|k| Complex64::from_polar(r, std::f64::consts::TAU * k as f64 / free as f64 + 0.4))
        .collect();
    let one = Complex64::new(1.0, 0.0);
    for _ in 0..MAX_ITER {
        let mut moved = false;
        for k in 0..free {
            let (v, dv) = eval(z[k]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / dv;
            let mut sum: Complex64 = (0..free)
                .filter(|&j| j != k && z[j] != z[k])
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            if zeros > 0 {
                sum += z[k].inv() * zeros as f64;
            }
            let w = ratio / (one - ratio * sum);
            if !w.is_finite() {
                z[k] += Complex64::new(1e-7, 1e-7) * r;
                moved = true;
                continue;
            }
            z[k] -= w;
            if w.norm() > 1e-15 * z[k].norm().max(1e-3) {
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    for root in z.iter_mut() {
        polish(eval, root);
    }
    let scale = p.iter().fold(0.0f64, |m, c| m.max(c.abs())) / lead.abs();
    let tol = 1e-10 * n as f64 * scale;
    let worst = z.iter().fold(0.0f64, |m, root| {
        if root.is_finite() {
            m.max(eval(*root).0.norm() / lead.abs())
        } else {
            f64::INFINITY
        }
    });
    if worst > tol {
        return Err(BoundaryError::NonConvergence {
            degree: n,
            residual: worst,
        });
    }
    Ok(z)
}

/// A few Newton steps, kept only while the residual shrinks.
fn polish<F>(eval: &F, z: &mut Complex64)
where
    F: Fn(Complex64) -> (Complex64, Complex64),
{
    let (mut v, _) = eval(*z);
    for _ in 0..4 {
        let (_, dv) = eval(*z);
        if dv.norm() == 0.0 {
            return;
        }
        let next = *z - v / dv;
        let (nv, _) = eval(next);
        if !(nv.norm() < v.norm()) {
            return;
        }
        *z = next;
        v = nv;
    }
}
