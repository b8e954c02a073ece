//! Newton polyhedra, the Kouchnirenko Newton number and local polytopes.

use crate::arith::{factorial, pair, rat_int, Int, IVec, Rat};
use crate::error::{Error, Result};
use crate::polytope::LatticePolytope;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

/// `Conv(support + R^d_{>=0})`, where the last coordinate is the deformation axis when `has_eps`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolyhedron {
    pub support: Vec<IVec>,
    pub has_eps: bool,
    /// Truncation offset `B`: the hull of the support and the points `p + B e_i`.
    pub bound: Int,
    pub truncated: LatticePolytope,
    /// Indices into `truncated.faces` of the compact faces.
    pub compact_faces: Vec<usize>,
    original: Vec<bool>,
}

/// Support face of a Newton polyhedron: compact part plus recession coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonFace {
    pub points: Vec<IVec>,
    pub recession: Vec<usize>,
}

/// Bounded facet with an inward normal that is strictly positive in the `x` coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveFacet {
    /// Index into `truncated.faces`.
    pub face: usize,
    /// Primitive inward normal in ambient coordinates.
    pub normal: IVec,
    /// Level of the facet under `normal`.
    pub level: Int,
}

impl NewtonPolyhedron {
    pub fn new(support: &[IVec], has_eps: bool) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::EmptySupport);
        }
        let d = support[0].len();
        if let Some(p) = support.iter().find(|p| p.len() != d) {
            return Err(Error::DimensionMismatch { expected: d, found: p.len() });
        }
        let uniq: Vec<IVec> = support.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        let max = uniq.iter().flatten().max().expect("non-empty").clone();
        let min = uniq.iter().flatten().min().expect("non-empty").clone();
        let bound = Int::one() + max - min;
        let mut pts = uniq.clone();
        for p in &uniq {
            for i in 0..d {
                let mut q = p.clone();
                q[i] += &bound;
                pts.push(q);
            }
        }
        let truncated = LatticePolytope::new(&pts)?;
        let set: BTreeSet<&IVec> = uniq.iter().collect();
        let original: Vec<bool> = truncated.vertices.iter().map(|v| set.contains(v)).collect();
        let compact_faces = (0..truncated.faces.len())
            .filter(|&f| truncated.faces[f].dim < d && truncated.faces[f].verts.iter().all(|&v| original[v]))
            .collect();
        Ok(NewtonPolyhedron { support: uniq, has_eps, bound, truncated, compact_faces, original })
    }

    /// Number of coordinates, including the deformation axis when present.
    pub fn ambient(&self) -> usize {
        self.truncated.ambient()
    }

    /// Number of `x` coordinates.
    pub fn n(&self) -> usize {
        self.ambient() - usize::from(self.has_eps)
    }

    /// Support points that are vertices of the polyhedron.
    pub fn vertices(&self) -> Vec<IVec> {
        self.truncated.vertices.iter().zip(&self.original).filter(|(_, &o)| o).map(|(v, _)| v.clone()).collect()
    }

    /// Whether the polyhedron meets every `x` coordinate axis (after dropping the deformation axis).
    pub fn is_convenient(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| self.support.iter().any(|p| (0..n).all(|j| j == i || p[j].is_zero()) && p[i].is_positive()))
            || (n == 0)
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        let loc = self.truncated.ctx.local(x);
        self.truncated
            .facets
            .iter()
            .filter(|f| f.normal.iter().all(|c| !c.is_negative()))
            .all(|f| crate::arith::dot(&f.normal, &loc) >= f.offset)
    }

    pub fn contains_polyhedron(&self, other: &NewtonPolyhedron) -> bool {
        other.vertices().iter().all(|v| self.contains(v))
    }

    /// Face minimizing `gamma`, which must be non-negative.
    pub fn support_face(&self, gamma: &[Rat]) -> Result<NewtonFace> {
        if gamma.iter().any(|g| g.is_negative()) {
            return Err(Error::Unbounded);
        }
        let vals: Vec<Rat> = self.support.iter().map(|p| pair(gamma, p)).collect();
        let min = vals.iter().min().expect("non-empty").clone();
        let pts: Vec<IVec> = self.support.iter().zip(&vals).filter(|(_, v)| **v == min).map(|(p, _)| p.clone()).collect();
        let recession = (0..gamma.len()).filter(|&i| gamma[i].is_zero()).collect();
        let poly = LatticePolytope::new(&pts)?;
        Ok(NewtonFace { points: poly.vertices, recession })
    }

    /// Compact facets whose inward normal is strictly positive in every `x` coordinate and,
    /// with a deformation axis, positive in that coordinate too.
    pub fn positive_facets(&self) -> Vec<PositiveFacet> {
        let d = self.ambient();
        let t = &self.truncated;
        let mut out = Vec::new();
        for &f in &self.compact_faces {
            if t.faces[f].dim + 1 != d {
                continue;
            }
            let facet = &t.facets[t.faces[f].facets[0]];
            if facet.normal.iter().all(|c| c.is_positive()) {
                let level = crate::arith::dot(&facet.normal, &t.vertices[t.faces[f].verts[0]]);
                out.push(PositiveFacet { face: f, normal: facet.normal.clone(), level });
            }
        }
        out
    }

    /// Covector `v` with `(v, 1)` proportional to the normal of a facet of a polyhedron with
    /// deformation axis.
    pub fn eps_covector(facet: &PositiveFacet) -> Vec<Rat> {
        let d = facet.normal.len();
        let last = rat_int(&facet.normal[d - 1]);
        facet.normal[..d - 1].iter().map(|c| rat_int(c) / &last).collect()
    }
}

/// Normalized volume of the compact complement of a convenient Newton polyhedron restricted to the
/// coordinates in `coords`.
pub fn under_volume(support: &[IVec], coords: &[usize]) -> Result<Int> {
    let j = coords.len();
    if j == 0 {
        return Ok(Int::one());
    }
    let inside: Vec<IVec> = support
        .iter()
        .filter(|p| p.iter().enumerate().all(|(i, c)| coords.contains(&i) || c.is_zero()))
        .map(|p| coords.iter().map(|&i| p[i].clone()).collect())
        .collect();
    for axis in 0..j {
        if !inside.iter().any(|p: &IVec| p.iter().enumerate().all(|(i, c)| i == axis || c.is_zero())) {
            return Err(Error::NotConvenient);
        }
    }
    let m = inside.iter().flatten().max().cloned().unwrap_or_else(Int::zero) + Int::one();
    let mut pts = Vec::new();
    for p in &inside {
        for mask in 0u32..(1 << j) {
            let q: IVec = (0..j).map(|i| if mask & (1 << i) != 0 { m.clone() } else { p[i].clone() }).collect();
            pts.push(q);
        }
    }
    let boxed = LatticePolytope::new(&pts)?;
    let mut total = factorial(j);
    for _ in 0..j {
        total *= &m;
    }
    Ok(total - boxed.volume_in_dim(j))
}

/// Kouchnirenko Newton number of a convenient Newton polyhedron in `Z^n_{>=0}`.
pub fn newton_number_of_support(support: &[IVec]) -> Result<Int> {
    if support.is_empty() {
        return Err(Error::EmptySupport);
    }
    let n = support[0].len();
    let mut nu = if n % 2 == 0 { Int::one() } else { -Int::one() };
    for mask in 1u32..(1 << n) {
        let coords: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let v = under_volume(support, &coords)?;
        if (n - coords.len()) % 2 == 0 {
            nu += v;
        } else {
            nu -= v;
        }
    }
    Ok(nu)
}

pub fn newton_number(np: &NewtonPolyhedron) -> Result<Int> {
    if np.has_eps {
        return Err(Error::Precondition("Newton number needs a polyhedron without deformation axis".into()));
    }
    if !np.is_convenient() {
        return Err(Error::NotConvenient);
    }
    newton_number_of_support(&np.support)
}

/// Milnor number of a generic singularity with the given support in `Z^k_{>=0} \ {0}`.
pub fn milnor_generic(support: &[IVec]) -> Result<Int> {
    if support.is_empty() {
        return Err(Error::EmptySupport);
    }
    let has_unit = support.iter().any(|p| p.iter().filter(|c| !c.is_zero()).count() == 1 && p.iter().any(|c| c.is_one()));
    if has_unit {
        return Ok(Int::zero());
    }
    if support[0].is_empty() {
        return Ok(Int::one());
    }
    newton_number_of_support(support)
}

/// `π_ε` of the face of `Conv(hs)` minimizing `(v, 1)`.
pub fn local_polytope(hs: &[IVec], v: &[Rat]) -> Result<LatticePolytope> {
    let pts = argmin_eps(hs, v);
    let proj: Vec<IVec> = pts.iter().map(|p| p[..p.len() - 1].to_vec()).collect();
    LatticePolytope::new(&proj)
}

/// Points of `hs` minimizing `(v, 1)`.
pub fn argmin_eps(hs: &[IVec], v: &[Rat]) -> Vec<IVec> {
    let mut cov = v.to_vec();
    cov.push(Rat::one());
    let vals: Vec<Rat> = hs.iter().map(|p| pair(&cov, p)).collect();
    let Some(min) = vals.iter().min().cloned() else { return Vec::new() };
    hs.iter().zip(&vals).filter(|(_, x)| **x == min).map(|(p, _)| p.clone()).collect()
}
