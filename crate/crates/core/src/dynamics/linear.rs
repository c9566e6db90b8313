//! Small dense floating point linear algebra: 3×3 eigenvalues through the
//! characteristic cubic, 3×3 solves, and 2×2 real eigenpairs.

use core::cmp::Ordering;
use core::f64::consts::PI;

use num_complex::Complex64;

pub type Mat3 = [[f64; 3]; 3];
pub type Vec3 = [f64; 3];

pub fn norm3(v: &Vec3) -> f64 {
    libm::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2])
}

pub fn sub3(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn cross3(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn det2(m: &Mat3, r: [usize; 2], c: [usize; 2]) -> f64 {
    m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]]
}

pub fn det3(m: &Mat3) -> f64 {
    m[0][0] * det2(m, [1, 2], [1, 2]) - m[0][1] * det2(m, [1, 2], [0, 2])
        + m[0][2] * det2(m, [1, 2], [0, 1])
}

/// Coefficients `(c2, c1, c0)` of `det(λ I - m) = λ³ + c2 λ² + c1 λ + c0`.
pub fn characteristic_cubic(m: &Mat3) -> (f64, f64, f64) {
    let trace = m[0][0] + m[1][1] + m[2][2];
    let minors = det2(m, [0, 1], [0, 1]) + det2(m, [0, 2], [0, 2]) + det2(m, [1, 2], [1, 2]);
    (-trace, minors, -det3(m))
}

fn eval_cubic(c2: f64, c1: f64, c0: f64, z: Complex64) -> (Complex64, Complex64) {
    let f = ((z + c2) * z + c1) * z + c0;
    let df = (z * 3.0 + 2.0 * c2) * z + c1;
    (f, df)
}

/// Newton polishing; a step is kept only when it lowers `|p(z)|`.
fn polish(c2: f64, c1: f64, c0: f64, mut z: Complex64) -> Complex64 {
    for _ in 0..8 {
        let (f, df) = eval_cubic(c2, c1, c0, z);
        if f.norm() == 0.0 || df.norm() == 0.0 {
            break;
        }
        let next = z - f / df;
        if eval_cubic(c2, c1, c0, next).0.norm() >= f.norm() {
            break;
        }
        z = next;
    }
    z
}

/// Roots of `λ³ + c2 λ² + c1 λ + c0`: closed form (trigonometric for three
/// real roots, Cardano otherwise) followed by Newton polishing. Sorted by
/// real part, then imaginary part.
pub fn cubic_roots(c2: f64, c1: f64, c0: f64) -> [Complex64; 3] {
    let shift = -c2 / 3.0;
    let p = c1 - c2 * c2 / 3.0;
    let q = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;
    let disc = (q / 2.0) * (q / 2.0) + (p / 3.0) * (p / 3.0) * (p / 3.0);
    let real = |t: f64| Complex64::new(t + shift, 0.0);
    let mut roots = if disc > 0.0 {
        let s = libm::sqrt(disc);
        let u = libm::cbrt(-q / 2.0 + s);
        let v = libm::cbrt(-q / 2.0 - s);
        let re = -(u + v) / 2.0 + shift;
        let im = (u - v) * libm::sqrt(3.0) / 2.0;
        [real(u + v), Complex64::new(re, im), Complex64::new(re, -im)]
    } else if p == 0.0 {
        [real(0.0); 3]
    } else {
        let r = libm::sqrt(-p / 3.0);
        let arg = (3.0 * q / (2.0 * p) * libm::sqrt(-3.0 / p)).clamp(-1.0, 1.0);
        let phi = libm::acos(arg) / 3.0;
        [0.0, 1.0, 2.0].map(|k| real(2.0 * r * libm::cos(phi - 2.0 * PI * k / 3.0)))
    };
    for z in roots.iter_mut() {
        *z = polish(c2, c1, c0, *z);
        if z.im.abs() <= 1e-14 * (1.0 + z.re.abs()) {
            z.im = 0.0;
        }
    }
    roots.sort_by(cmp_complex);
    roots
}

pub fn cmp_complex(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then_with(|| a.im.total_cmp(&b.im))
}

/// Eigenvalues of a real 3×3 matrix.
pub fn eigenvalues3(m: &Mat3) -> [Complex64; 3] {
    let (c2, c1, c0) = characteristic_cubic(m);
    cubic_roots(c2, c1, c0)
}

/// Solves `m x = rhs` by Gaussian elimination with partial pivoting;
/// `None` when a pivot falls below `1e-13` times the largest entry.
pub fn solve3(m: &Mat3, rhs: &Vec3) -> Option<Vec3> {
    let scale = m.iter().flatten().fold(0.0f64, |acc, v| acc.max(v.abs()));
    if scale == 0.0 {
        return None;
    }
    let mut a = *m;
    let mut b = *rhs;
    for col in 0..3 {
        let piv = (col..3)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap_or(col);
        if a[piv][col].abs() < 1e-13 * scale {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..3 {
            let f = a[row][col] / a[col][col];
            let pivot = a[col];
            for (v, p) in a[row].iter_mut().zip(pivot).skip(col) {
                *v -= f * p;
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let s: f64 = (row + 1..3).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    Some(x)
}

/// Real eigenpairs `(μ, w)` of a 2×2 matrix with unit `w`; empty for a
/// complex pair.
pub fn real_eigenpairs2(m: &[[f64; 2]; 2]) -> alloc::vec::Vec<(f64, [f64; 2])> {
    let tr = m[0][0] + m[1][1];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let disc = tr * tr / 4.0 - det;
    if disc < 0.0 {
        return alloc::vec::Vec::new();
    }
    let s = libm::sqrt(disc);
    let mut out = alloc::vec::Vec::new();
    for mu in [tr / 2.0 - s, tr / 2.0 + s] {
        // Rows of (m - μ) are orthogonal to the eigenvector; use the
        // larger one for stability.
        let r0 = [m[0][0] - mu, m[0][1]];
        let r1 = [m[1][0], m[1][1] - mu];
        let r = if libm::hypot(r0[0], r0[1]) >= libm::hypot(r1[0], r1[1]) {
            r0
        } else {
            r1
        };
        let w = if r[0] == 0.0 && r[1] == 0.0 {
            if out.is_empty() { [1.0, 0.0] } else { [0.0, 1.0] }
        } else {
            let n = libm::hypot(r[0], r[1]);
            [-r[1] / n, r[0] / n]
        };
        out.push((mu, w));
    }
    out
}
