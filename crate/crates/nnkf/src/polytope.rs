//! Lattice polytopes with face lattices, normalized volumes, Minkowski sums, mixed volumes
//! and lattice-aware projections.

use crate::arith::{pair, rat_int, sub, Int, IVec, Rat};
use crate::error::{Error, Result};
use crate::hull::{face_lattice, full_hull, triangulate, triangulated_volume, Face, Facet};
use crate::linalg::Saturation;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

/// Affine span of a point set together with an adapted basis of its saturated lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeContext {
    pub ambient: usize,
    pub base: IVec,
    pub sat: Saturation,
}

impl LatticeContext {
    pub fn of_points(points: &[IVec]) -> Self {
        let base = points[0].clone();
        let dirs: Vec<IVec> = points[1..].iter().map(|p| sub(p, &base)).filter(|d| d.iter().any(|x| !x.is_zero())).collect();
        let ambient = base.len();
        LatticeContext { ambient, sat: Saturation::new(&dirs, ambient), base }
    }

    /// Dimension of the affine span.
    pub fn dim(&self) -> usize {
        self.sat.k
    }

    /// Coordinates of a lattice point of the span in the induced lattice.
    pub fn local(&self, x: &[Int]) -> IVec {
        let c = self.sat.coords(&sub(x, &self.base));
        c[self.sat.r()..].to_vec()
    }

    /// Local coordinates of a rational point, `None` when it is off the span.
    pub fn local_rat(&self, x: &[Rat]) -> Option<Vec<Rat>> {
        let d: Vec<Rat> = x.iter().zip(&self.base).map(|(a, b)| a - rat_int(b)).collect();
        let c = self.sat.coords_rat(&d);
        if c[..self.sat.r()].iter().any(|v| !v.is_zero()) {
            return None;
        }
        Some(c[self.sat.r()..].to_vec())
    }

    pub fn lift(&self, c: &[Int]) -> IVec {
        let mut full = vec![Int::zero(); self.sat.r()];
        full.extend_from_slice(c);
        crate::arith::add(&self.base, &self.sat.from_coords(&full))
    }

    /// Whether an integer point lies on the affine span.
    pub fn on_span(&self, x: &[Int]) -> bool {
        let c = self.sat.coords(&sub(x, &self.base));
        c[..self.sat.r()].iter().all(|v| v.is_zero())
    }
}

/// Which value a 0-dimensional polytope contributes to a normalized volume.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointConvention {
    /// Volume sums: points contribute nothing.
    Zero,
    /// Mixed-volume base case: an empty collection in a point has volume one.
    One,
}

/// Convex lattice polytope with exact face lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolytope {
    pub ctx: LatticeContext,
    /// Vertices in ambient coordinates, sorted lexicographically.
    pub vertices: Vec<IVec>,
    /// Vertices in local coordinates of the affine span.
    pub local: Vec<IVec>,
    /// Facets in local coordinates.
    pub facets: Vec<Facet>,
    /// Face lattice; entry 0 is the polytope itself.
    pub faces: Vec<Face>,
}

impl LatticePolytope {
    pub fn new(points: &[IVec]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptySupport);
        }
        let n = points[0].len();
        if let Some(p) = points.iter().find(|p| p.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: p.len() });
        }
        let uniq: Vec<IVec> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        let ctx = LatticeContext::of_points(&uniq);
        let local_all: Vec<IVec> = uniq.iter().map(|p| ctx.local(p)).collect();
        let k = ctx.dim();
        if k == 0 {
            let faces = vec![Face { verts: vec![0], dim: 0, facets: vec![], children: vec![] }];
            return Ok(LatticePolytope { vertices: vec![uniq[0].clone()], local: vec![local_all[0].clone()], facets: vec![], faces, ctx });
        }
        let h = full_hull(&local_all);
        let vertices: Vec<IVec> = h.vertices.iter().map(|&i| uniq[i].clone()).collect();
        let local: Vec<IVec> = h.vertices.iter().map(|&i| local_all[i].clone()).collect();
        let faces = face_lattice(&local, k, &h.facets);
        Ok(LatticePolytope { ctx, vertices, local, facets: h.facets, faces })
    }

    pub fn dim(&self) -> usize {
        self.ctx.dim()
    }

    pub fn ambient(&self) -> usize {
        self.ctx.ambient
    }

    /// `k!·vol` in the induced lattice of the affine span; points give zero.
    pub fn normalized_volume(&self) -> Int {
        self.normalized_volume_with(PointConvention::Zero)
    }

    pub fn normalized_volume_with(&self, conv: PointConvention) -> Int {
        if self.dim() == 0 {
            return match conv {
                PointConvention::Zero => Int::zero(),
                PointConvention::One => Int::one(),
            };
        }
        triangulated_volume(&self.local, &triangulate(&self.faces, 0))
    }

    /// Normalized volume counted in dimension `j`: zero unless the polytope has dimension `j`.
    pub fn volume_in_dim(&self, j: usize) -> Int {
        if self.dim() == j {
            self.normalized_volume_with(PointConvention::One)
        } else {
            Int::zero()
        }
    }

    /// Index of the face minimizing `gamma`.
    pub fn support_face(&self, gamma: &[Rat]) -> usize {
        let vals: Vec<Rat> = self.vertices.iter().map(|v| pair(gamma, v)).collect();
        let min = vals.iter().min().expect("non-empty").clone();
        let verts: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] == min).collect();
        self.face_index(&verts).expect("argmin set is a face")
    }

    pub fn face_index(&self, verts: &[usize]) -> Option<usize> {
        self.faces.iter().position(|f| f.verts == verts)
    }

    /// Index of the face whose vertex set is exactly `points` (ambient coordinates).
    pub fn face_of_points(&self, points: &[IVec]) -> Result<usize> {
        let mut verts = Vec::new();
        for p in points {
            match self.vertices.iter().position(|v| v == p) {
                Some(i) => verts.push(i),
                None => return Err(Error::NotAFace(format!("{p:?} is not a vertex"))),
            }
        }
        verts.sort_unstable();
        verts.dedup();
        self.face_index(&verts).ok_or_else(|| Error::NotAFace(format!("{points:?}")))
    }

    pub fn face_vertices(&self, face: usize) -> Vec<IVec> {
        self.faces[face].verts.iter().map(|&i| self.vertices[i].clone()).collect()
    }

    pub fn face_polytope(&self, face: usize) -> LatticePolytope {
        LatticePolytope::new(&self.face_vertices(face)).expect("non-empty face")
    }

    /// Smallest face containing the given integer point, if the point lies in the polytope.
    pub fn carrier_face(&self, x: &[Int]) -> Option<usize> {
        if !self.contains(x) {
            return None;
        }
        let loc = self.ctx.local(x);
        let tight: Vec<usize> =
            (0..self.facets.len()).filter(|&j| crate::arith::dot(&self.facets[j].normal, &loc) == self.facets[j].offset).collect();
        let verts: Vec<usize> = (0..self.vertices.len())
            .filter(|v| tight.iter().all(|&j| self.facets[j].verts.binary_search(v).is_ok()))
            .collect();
        self.face_index(&verts)
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        if !self.ctx.on_span(x) {
            return false;
        }
        let loc = self.ctx.local(x);
        self.facets.iter().all(|f| crate::arith::dot(&f.normal, &loc) >= f.offset)
    }

    pub fn contains_rat(&self, x: &[Rat]) -> bool {
        let Some(loc) = self.ctx.local_rat(x) else { return false };
        self.facets.iter().all(|f| pair(&loc, &f.normal) >= rat_int(&f.offset))
    }

    /// Whether a rational point lies in the relative interior.
    pub fn contains_rat_strict(&self, x: &[Rat]) -> bool {
        let Some(loc) = self.ctx.local_rat(x) else { return false };
        self.facets.iter().all(|f| pair(&loc, &f.normal) > rat_int(&f.offset))
    }

    pub fn translate(&self, t: &[Int]) -> LatticePolytope {
        let pts: Vec<IVec> = self.vertices.iter().map(|v| crate::arith::add(v, t)).collect();
        LatticePolytope::new(&pts).expect("non-empty")
    }
}

pub fn minkowski_sum(p: &LatticePolytope, q: &LatticePolytope) -> Result<LatticePolytope> {
    if p.ambient() != q.ambient() {
        return Err(Error::DimensionMismatch { expected: p.ambient(), found: q.ambient() });
    }
    let mut pts = Vec::with_capacity(p.vertices.len() * q.vertices.len());
    for a in &p.vertices {
        for b in &q.vertices {
            pts.push(crate::arith::add(a, b));
        }
    }
    LatticePolytope::new(&pts)
}

/// Mixed volume of `n` polytopes in `Z^n` by polarization over Minkowski sums, normalized so
/// that `MV(P, …, P) = V_N(P)`.
/// The empty collection in dimension zero has mixed volume one.
pub fn mixed_volume(polys: &[&LatticePolytope], n: usize) -> Result<Int> {
    if polys.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: polys.len() });
    }
    if let Some(p) = polys.iter().find(|p| p.ambient() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: p.ambient() });
    }
    if n == 0 {
        return Ok(Int::one());
    }
    let mut sums: Vec<Option<LatticePolytope>> = vec![None; 1 << n];
    let mut total = Int::zero();
    for mask in 1usize..(1 << n) {
        let last = usize::BITS as usize - 1 - mask.leading_zeros() as usize;
        let rest = mask & !(1 << last);
        let s = if rest == 0 {
            polys[last].clone()
        } else {
            minkowski_sum(sums[rest].as_ref().expect("computed"), polys[last])?
        };
        let v = s.volume_in_dim(n);
        if (n - mask.count_ones() as usize) % 2 == 0 {
            total += v;
        } else {
            total -= v;
        }
        sums[mask] = Some(s);
    }
    Ok(total / crate::arith::factorial(n))
}

/// Mixed volume of point sets, each taken as the hull of its points.
pub fn mixed_volume_of_points(sets: &[Vec<IVec>], n: usize) -> Result<Int> {
    let polys: Vec<LatticePolytope> = sets.iter().map(|s| LatticePolytope::new(s)).collect::<Result<_>>()?;
    let refs: Vec<&LatticePolytope> = polys.iter().collect();
    mixed_volume(&refs, n)
}

/// Projection of `Z^n` onto the quotient lattice `Z^n / (Z^n ∩ V)`, identified with `Z^r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub sat: Saturation,
}

impl Quotient {
    /// Quotient along the span of the given integer direction vectors.
    pub fn along(directions: &[IVec], n: usize) -> Self {
        let dirs: Vec<IVec> = directions.iter().filter(|d| d.iter().any(|x| !x.is_zero())).cloned().collect();
        Quotient { sat: Saturation::new(&dirs, n) }
    }

    /// Quotient along the direction space of an affine point set.
    pub fn along_points(points: &[IVec]) -> Self {
        let n = points[0].len();
        let dirs: Vec<IVec> = points[1..].iter().map(|p| sub(p, &points[0])).collect();
        Self::along(&dirs, n)
    }

    pub fn dim(&self) -> usize {
        self.sat.r()
    }

    pub fn project(&self, x: &[Int]) -> IVec {
        self.sat.coords(x)[..self.sat.r()].to_vec()
    }

    pub fn project_rat(&self, x: &[Rat]) -> Vec<Rat> {
        self.sat.coords_rat(x)[..self.sat.r()].to_vec()
    }

    pub fn project_all(&self, pts: &[IVec]) -> Vec<IVec> {
        pts.iter().map(|p| self.project(p)).collect()
    }
}

/// Covector-induced map `(w⊥, w, a) ↦ (w⊥, ξ·(v·w + a))` on `Z^n ⊕ Z`, where `w` are the
/// coordinates in `e_coords` and `ξ` is the least common denominator of `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CovectorQuotient {
    pub n: usize,
    pub e_coords: Vec<usize>,
    pub v: Vec<Rat>,
    pub xi: Int,
}

impl CovectorQuotient {
    pub fn new(n: usize, e_coords: Vec<usize>, v: Vec<Rat>) -> Self {
        let mut xi = Int::one();
        for x in &v {
            xi = xi.lcm(x.denom());
        }
        CovectorQuotient { n, e_coords, v, xi }
    }

    /// Coordinates of the complement `E⊥`, in increasing order.
    pub fn perp_coords(&self) -> Vec<usize> {
        (0..self.n).filter(|i| !self.e_coords.contains(i)).collect()
    }

    /// Image of a point of `Z^n ⊕ Z` in `Z^{n-k} ⊕ Z`.
    pub fn apply(&self, p: &[Int]) -> IVec {
        let mut out: IVec = self.perp_coords().iter().map(|&i| p[i].clone()).collect();
        let mut level = rat_int(&p[self.n]);
        for (c, &i) in self.v.iter().zip(&self.e_coords) {
            level += c * rat_int(&p[i]);
        }
        let scaled = level * rat_int(&self.xi);
        debug_assert!(scaled.is_integer());
        out.push(scaled.to_integer());
        out
    }

    /// Covector on `Z^n ⊕ Z` obtained by composing `u` on the image with the map.
    pub fn pullback(&self, u_perp: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.n];
        for (c, &i) in self.v.iter().zip(&self.e_coords) {
            out[i] = c.clone();
        }
        let xi = rat_int(&self.xi);
        for (c, &i) in u_perp.iter().zip(&self.perp_coords()) {
            out[i] = c / &xi;
        }
        out
    }
}

/// Sign of `x`, used by callers comparing covector pairings.
pub fn is_positive(x: &Rat) -> bool {
    x.is_positive()
}
