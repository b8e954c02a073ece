//! Exact integer linear algebra: ranks, determinants, nullspaces and lattice saturation.

use crate::arith::{make_primitive, sub, Int, IVec, Rat, RVec};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Rank of a list of integer row vectors.
pub fn rank(rows: &[IVec]) -> usize {
    let mut m: Vec<IVec> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in (r + 1)..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let a = m[r][c].clone();
            let b = m[i][c].clone();
            for j in c..cols {
                let v = &m[i][j] * &a - &m[r][j] * &b;
                m[i][j] = v;
            }
            make_primitive(&mut m[i]);
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Rank of a list of rational row vectors.
pub fn rank_rat(rows: &[RVec]) -> usize {
    let ints: Vec<IVec> = rows.iter().map(|r| crate::arith::clear_denominators(r).0).collect();
    rank(&ints)
}

/// Dimension of the affine hull of the points, `-1` for the empty set.
pub fn affine_rank(points: &[&IVec]) -> isize {
    if points.is_empty() {
        return -1;
    }
    let diffs: Vec<IVec> = points[1..].iter().map(|p| sub(p, points[0])).collect();
    rank(&diffs) as isize
}

/// Determinant of a square integer matrix by Bareiss elimination.
pub fn det(mut m: Vec<IVec>) -> Int {
    let n = m.len();
    if n == 0 {
        return Int::one();
    }
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = ((k + 1)..n).find(|&i| !m[i][k].is_zero()) else { return Int::zero() };
            m.swap(k, p);
            sign = -sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Primitive normal vector orthogonal to `d - 1` integer vectors in dimension `d`.
/// Returns the zero vector when the inputs are dependent.
pub fn orthogonal_normal(vectors: &[IVec], d: usize) -> IVec {
    let mut normal = vec![Int::zero(); d];
    for (i, slot) in normal.iter_mut().enumerate() {
        let minor: Vec<IVec> = vectors
            .iter()
            .map(|v| v.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| x.clone()).collect())
            .collect();
        let m = det(minor);
        *slot = if i % 2 == 0 { m } else { -m };
    }
    make_primitive(&mut normal);
    normal
}

/// Reduced row echelon form over the rationals; returns the pivot columns.
pub fn rref(rows: &mut Vec<RVec>) -> Vec<usize> {
    let mut pivots = Vec::new();
    if rows.is_empty() {
        return pivots;
    }
    let cols = rows[0].len();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = Rat::one() / &rows[r][c];
        for j in 0..cols {
            let v = &rows[r][j] * &inv;
            rows[r][j] = v;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..cols {
                    let v = &rows[i][j] - &f * &rows[r][j];
                    rows[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Integer basis (each vector primitive) of the rational nullspace `{x : rows·x = 0}` in dimension `n`.
pub fn nullspace(rows: &[IVec], n: usize) -> Vec<IVec> {
    let mut m: Vec<RVec> = rows.iter().map(|r| crate::arith::to_rvec(r)).collect();
    let pivots = rref(&mut m);
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rat::zero(); n];
        v[free] = Rat::one();
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = -row[free].clone();
        }
        let (mut iv, _) = crate::arith::clear_denominators(&v);
        make_primitive(&mut iv);
        basis.push(iv);
    }
    basis
}

/// Unimodular change of basis adapted to a rational subspace `V` of dimension `k`.
///
/// The last `k` columns of `u` form a basis of `Z^n ∩ V`; `uinv` is the exact inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Saturation {
    pub n: usize,
    pub k: usize,
    pub u: Vec<IVec>,
    pub uinv: Vec<IVec>,
}

impl Saturation {
    /// Builds the saturation of the span of `directions` in `Z^n`.
    pub fn new(directions: &[IVec], n: usize) -> Self {
        let perp = if directions.is_empty() {
            identity(n)
        } else {
            nullspace(directions, n)
        };
        let r = perp.len();
        let mut m = perp;
        let mut u = identity(n);
        let mut uinv = identity(n);
        for i in 0..r {
            for l in (i + 1)..n {
                if m[i][l].is_zero() {
                    continue;
                }
                let a = m[i][i].clone();
                let b = m[i][l].clone();
                let eg = a.extended_gcd(&b);
                let (g, s, t) = (eg.gcd, eg.x, eg.y);
                let bg = &b / &g;
                let ag = &a / &g;
                for row in m.iter_mut().chain(u.iter_mut()) {
                    let cj = row[i].clone();
                    let cl = row[l].clone();
                    row[i] = &s * &cj + &t * &cl;
                    row[l] = -&bg * &cj + &ag * &cl;
                }
                for c in 0..n {
                    let rj = uinv[i][c].clone();
                    let rl = uinv[l][c].clone();
                    uinv[i][c] = &ag * &rj + &bg * &rl;
                    uinv[l][c] = -&t * &rj + &s * &rl;
                }
            }
            if m[i][i].is_zero() {
                let p = ((i + 1)..n).find(|&c| !m[i][c].is_zero()).expect("independent rows");
                for row in m.iter_mut().chain(u.iter_mut()) {
                    row.swap(i, p);
                }
                uinv.swap(i, p);
            }
        }
        Saturation { n, k: n - r, u, uinv }
    }

    pub fn r(&self) -> usize {
        self.n - self.k
    }

    /// Coordinates of a vector in the adapted basis.
    pub fn coords(&self, x: &[Int]) -> IVec {
        self.uinv.iter().map(|row| crate::arith::dot(row, x)).collect()
    }

    pub fn coords_rat(&self, x: &[Rat]) -> RVec {
        self.uinv
            .iter()
            .map(|row| {
                let mut s = Rat::zero();
                for (a, b) in row.iter().zip(x) {
                    if !a.is_zero() {
                        s += Rat::from_integer(a.clone()) * b;
                    }
                }
                s
            })
            .collect()
    }

    /// Vector `U·c` for coordinates `c` in the adapted basis.
    pub fn from_coords(&self, c: &[Int]) -> IVec {
        self.u.iter().map(|row| crate::arith::dot(row, c)).collect()
    }
}

pub fn identity(n: usize) -> Vec<IVec> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Int::one() } else { Int::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &[IVec], b: &[IVec]) -> Vec<IVec> {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum()).collect())
        .collect()
}

pub fn abs_det(m: Vec<IVec>) -> Int {
    det(m).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ivec;

    #[test]
    fn rank_and_det() {
        let m = vec![ivec(&[1, 2, 3]), ivec(&[2, 4, 6]), ivec(&[0, 1, 1])];
        assert_eq!(rank(&m), 2);
        assert_eq!(det(m), Int::zero());
        let m = vec![ivec(&[2, 0, 1]), ivec(&[1, 3, 2]), ivec(&[1, 1, 2])];
        assert_eq!(det(m), Int::from(6));
        let m = vec![ivec(&[0, 1]), ivec(&[1, 0])];
        assert_eq!(det(m), Int::from(-1));
    }

    #[test]
    fn normals_are_orthogonal() {
        let vs = vec![ivec(&[1, 1, 0]), ivec(&[0, 2, 2])];
        let n = orthogonal_normal(&vs, 3);
        assert_eq!(n, ivec(&[1, -1, 1]));
    }

    #[test]
    fn nullspace_basis() {
        let ns = nullspace(&[ivec(&[1, 1, 1])], 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert_eq!(crate::arith::dot(v, &ivec(&[1, 1, 1])), Int::zero());
        }
    }

    #[test]
    fn saturation_is_unimodular_and_adapted() {
        let dirs = vec![ivec(&[2, 4, 0]), ivec(&[0, 3, 3])];
        let s = Saturation::new(&dirs, 3);
        assert_eq!(s.k, 2);
        assert_eq!(mat_mul(&s.u, &s.uinv), identity(3));
        for d in &dirs {
            let c = s.coords(d);
            assert!(c[..s.r()].iter().all(|x| x.is_zero()));
        }
        let c = s.coords(&ivec(&[1, 2, 0]));
        assert!(c[0].is_zero());
        let c = s.coords(&ivec(&[0, 1, 1]));
        assert!(c[0].is_zero());
    }
}
