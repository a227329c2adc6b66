//! Minimal 3-vector and symmetric 3×3 helpers.

pub type Vec3 = [f64; 3];
pub type Mat3 = [[f64; 3]; 3];

pub fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn norm(a: &Vec3) -> f64 {
    dot(a, a).sqrt()
}

pub fn add(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn sub(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn scale(a: &Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

pub fn mat_vec(m: &Mat3, v: &Vec3) -> Vec3 {
    [dot(&m[0], v), dot(&m[1], v), dot(&m[2], v)]
}

pub fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub fn trace(m: &Mat3) -> f64 {
    m[0][0] + m[1][1] + m[2][2]
}

pub fn outer(a: &Vec3, b: &Vec3) -> Mat3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[i] * b[j];
        }
    }
    out
}

/// `(v M v)`.
pub fn quadratic_form(m: &Mat3, v: &Vec3) -> f64 {
    dot(v, &mat_vec(m, v))
}

pub fn is_symmetric(m: &Mat3, tol: f64) -> bool {
    (0..3).all(|i| (0..3).all(|j| (m[i][j] - m[j][i]).abs() <= tol))
}

/// Every principal minor non-negative, relative to the matrix scale.
pub fn is_positive_semidefinite(m: &Mat3, rel_tol: f64) -> bool {
    let s = m.iter().flatten().fold(0.0_f64, |acc, v| acc.max(v.abs()));
    if s == 0.0 {
        return true;
    }
    let t = rel_tol * s;
    let diag_ok = (0..3).all(|i| m[i][i] >= -t);
    let minors_ok = [(0, 1), (0, 2), (1, 2)]
        .iter()
        .all(|&(i, j)| m[i][i] * m[j][j] - m[i][j] * m[j][i] >= -t * s);
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    diag_ok && minors_ok && det >= -t * s * s
}

/// Orthonormal `(e1, e2)` completing the unit vector `u` to a right-handed frame.
pub fn orthonormal_frame(u: &Vec3) -> (Vec3, Vec3) {
    let helper = if u[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let e1 = sub(&helper, &scale(u, dot(&helper, u)));
    let e1 = scale(&e1, 1.0 / norm(&e1));
    let e2 = [
        u[1] * e1[2] - u[2] * e1[1],
        u[2] * e1[0] - u[0] * e1[2],
        u[0] * e1[1] - u[1] * e1[0],
    ];
    (e1, e2)
}
