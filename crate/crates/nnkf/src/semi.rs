//! Daughter sub-polytopes, semi-interlaced families, sutures and the suture-matrix formula for
//! their mixed volume.

use crate::arith::{Int, IVec};
use crate::error::{Error, Result};
use crate::polytope::{mixed_volume, LatticePolytope, PointConvention, Quotient};
use num_traits::{One, Zero};
use std::collections::BTreeSet;

/// A polytope `Ap = Conv(As)` together with its support `As`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportedPolytope {
    pub polytope: LatticePolytope,
    pub support: Vec<IVec>,
    /// Smallest face of `polytope` containing each support point.
    carriers: Vec<usize>,
}

impl SupportedPolytope {
    pub fn new(support: &[IVec]) -> Result<Self> {
        let support: Vec<IVec> = support.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        let polytope = LatticePolytope::new(&support)?;
        let carriers = support.iter().map(|p| polytope.carrier_face(p).expect("support lies in its hull")).collect();
        Ok(SupportedPolytope { polytope, support, carriers })
    }

    pub fn dim(&self) -> usize {
        self.polytope.dim()
    }

    /// Whether support point `i` lies in face `f`.
    pub fn point_in_face(&self, i: usize, f: usize) -> bool {
        let faces = &self.polytope.faces;
        faces[self.carriers[i]].verts.iter().all(|v| faces[f].verts.binary_search(v).is_ok())
    }

    /// Support points lying in face `f`.
    pub fn points_in_face(&self, f: usize) -> Vec<usize> {
        (0..self.support.len()).filter(|&i| self.point_in_face(i, f)).collect()
    }

    fn is_subface(&self, a: usize, b: usize) -> bool {
        let faces = &self.polytope.faces;
        faces[a].verts.iter().all(|v| faces[b].verts.binary_search(v).is_ok())
    }
}

/// Daughter sub-polytope `Conv(As \ ∪ thrown)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Daughter {
    /// Thrown-out faces as indices into the parent's face lattice, sorted.
    pub thrown: Vec<usize>,
    /// Indices of the remaining support points.
    pub points: Vec<usize>,
    pub polytope: LatticePolytope,
}

impl Daughter {
    pub fn meets_face(&self, parent: &SupportedPolytope, f: usize) -> bool {
        self.points.iter().any(|&i| parent.point_in_face(i, f))
    }
}

/// Maximal faces of the parent containing no support point from `points`.
fn maximal_missing_faces(parent: &SupportedPolytope, points: &[usize]) -> Vec<usize> {
    let nf = parent.polytope.faces.len();
    let missing: Vec<usize> = (0..nf).filter(|&f| !points.iter().any(|&i| parent.point_in_face(i, f))).collect();
    let mut out: Vec<usize> =
        missing.iter().copied().filter(|&f| !missing.iter().any(|&g| g != f && parent.is_subface(f, g))).collect();
    out.sort_unstable();
    out
}

/// Builds and validates the daughter obtained by throwing out the given faces.
pub fn make_daughter(parent: &SupportedPolytope, thrown: &[usize]) -> Result<Daughter> {
    let nf = parent.polytope.faces.len();
    if let Some(&f) = thrown.iter().find(|&&f| f >= nf) {
        return Err(Error::NotAFace(format!("face index {f}")));
    }
    let faces = &parent.polytope.faces;
    for (a, &fa) in thrown.iter().enumerate() {
        for &fb in &thrown[a + 1..] {
            if faces[fa].verts.iter().any(|v| faces[fb].verts.binary_search(v).is_ok()) {
                return Err(Error::InvalidDaughter("thrown faces overlap".into()));
            }
        }
    }
    let points: Vec<usize> =
        (0..parent.support.len()).filter(|&i| !thrown.iter().any(|&f| parent.point_in_face(i, f))).collect();
    if points.is_empty() {
        return Err(Error::InvalidDaughter("no support point remains".into()));
    }
    let mut want: Vec<usize> = thrown.to_vec();
    want.sort_unstable();
    want.dedup();
    if maximal_missing_faces(parent, &points) != want {
        return Err(Error::InvalidDaughter("maximal faces missing the daughter differ from the thrown faces".into()));
    }
    let pts: Vec<IVec> = points.iter().map(|&i| parent.support[i].clone()).collect();
    Ok(Daughter { thrown: want, polytope: LatticePolytope::new(&pts)?, points })
}

/// Recognizes a polytope with vertices in the support as a daughter, inferring the thrown faces.
pub fn daughter_of_points(parent: &SupportedPolytope, vertices: &[IVec]) -> Result<Daughter> {
    let inside: Vec<usize> = (0..parent.support.len())
        .filter(|&i| LatticePolytope::new(vertices).map(|p| p.contains(&parent.support[i])).unwrap_or(false))
        .collect();
    let thrown = maximal_missing_faces(parent, &inside);
    let d = make_daughter(parent, &thrown)?;
    let target = LatticePolytope::new(vertices)?;
    if d.polytope.vertices != target.vertices {
        return Err(Error::InvalidDaughter("polytope is not the hull of the support left after throwing faces".into()));
    }
    Ok(d)
}

/// Face-count analysis of a daughter family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Analysis {
    pub interlaced: bool,
    pub semi_interlaced: bool,
    /// For each parent face, the number of daughters meeting it.
    pub counts: Vec<usize>,
    /// Suture face indices: whole polytope first, then by decreasing dimension and vertex order.
    pub sutures: Vec<usize>,
}

pub fn analyze(parent: &SupportedPolytope, daughters: &[Daughter]) -> Result<Analysis> {
    let n = parent.dim();
    if parent.polytope.ambient() != n {
        return Err(Error::Precondition("the parent polytope must be full-dimensional".into()));
    }
    if daughters.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: daughters.len() });
    }
    let faces = &parent.polytope.faces;
    let counts: Vec<usize> = (0..faces.len()).map(|f| daughters.iter().filter(|d| d.meets_face(parent, f)).count()).collect();
    let semi_interlaced = (1..faces.len()).all(|f| counts[f] >= faces[f].dim);
    let mut sutures: Vec<usize> = (1..faces.len()).filter(|&f| counts[f] == faces[f].dim).collect();
    sutures.sort_by(|&a, &b| {
        faces[b].dim.cmp(&faces[a].dim).then_with(|| parent.polytope.face_vertices(a).cmp(&parent.polytope.face_vertices(b)))
    });
    sutures.insert(0, 0);
    let union: Vec<IVec> = daughters.iter().flat_map(|d| d.polytope.vertices.iter().cloned()).collect();
    let u = LatticePolytope::new(&union)?;
    let start = usize::from(u.dim() == u.ambient());
    let interlaced = (start..u.faces.len()).all(|f| {
        let hits = daughters.iter().filter(|d| d.polytope.vertices.iter().any(|p| face_contains(&u, f, p))).count();
        hits > u.faces[f].dim
    });
    Ok(Analysis { interlaced, semi_interlaced, counts, sutures })
}

fn face_contains(u: &LatticePolytope, f: usize, p: &IVec) -> bool {
    u.carrier_face(p).map(|c| u.faces[c].verts.iter().all(|v| u.faces[f].verts.binary_search(v).is_ok())).unwrap_or(false)
}

/// Suture matrices and the mixed-volume vectors computed along two paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SutureTable {
    pub sutures: Vec<usize>,
    /// Vertex lists of the sutures, in suture order.
    pub suture_vertices: Vec<Vec<IVec>>,
    /// `V_N(S)` with vertex sutures counted as one.
    pub volumes: Vec<Int>,
    /// `c[i][j] = V_N(Ζ^{S_i}_{S_j})` for `S_j ⊊ S_i`, one on the diagonal.
    pub c: Vec<Vec<Int>>,
    /// Exact inverse of `c`.
    pub e: Vec<Vec<Int>>,
    /// `𝔈·𝔳`.
    pub tilde_v: Vec<Int>,
    /// Recursive evaluation `ṽ_S = V_N(S) - Σ c^{S,S'} ṽ_{S'}`.
    pub tilde_v_recursive: Vec<Int>,
}

/// Normalized volume of `Ζ^S_{S'}`: the closure of `p_{S'}(S)` minus `p_{S'}(Conv((As∩S) \ S'))`.
pub fn zeta_volume(parent: &SupportedPolytope, s: usize, s_prime: usize) -> Result<Int> {
    let faces = &parent.polytope.faces;
    let k = faces[s].dim - faces[s_prime].dim;
    let q = Quotient::along_points(&parent.polytope.face_vertices(s_prime));
    let big = LatticePolytope::new(&q.project_all(&parent.polytope.face_vertices(s)))?;
    let rest: Vec<IVec> = parent
        .points_in_face(s)
        .into_iter()
        .filter(|&i| !parent.point_in_face(i, s_prime))
        .map(|i| q.project(&parent.support[i]))
        .collect();
    let small = if rest.is_empty() { Int::zero() } else { LatticePolytope::new(&rest)?.volume_in_dim(k) };
    Ok(big.volume_in_dim(k) - small)
}

fn inverse_unit_upper(c: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let m = c.len();
    let mut e = vec![vec![Int::zero(); m]; m];
    for j in 0..m {
        e[j][j] = Int::one();
        for i in (0..j).rev() {
            let mut s = Int::zero();
            for k in (i + 1)..=j {
                s += &c[i][k] * &e[k][j];
            }
            e[i][j] = -s;
        }
    }
    e
}

pub fn suture_table(parent: &SupportedPolytope, analysis: &Analysis) -> Result<SutureTable> {
    if !analysis.semi_interlaced {
        return Err(Error::NotSemiInterlaced);
    }
    let sut = analysis.sutures.clone();
    let m = sut.len();
    let faces = &parent.polytope.faces;
    let volumes: Vec<Int> =
        sut.iter().map(|&s| parent.polytope.face_polytope(s).normalized_volume_with(PointConvention::One)).collect();
    let mut c = vec![vec![Int::zero(); m]; m];
    for i in 0..m {
        c[i][i] = Int::one();
        for j in 0..m {
            if i != j && faces[sut[j]].dim < faces[sut[i]].dim && parent.is_subface(sut[j], sut[i]) {
                c[i][j] = zeta_volume(parent, sut[i], sut[j])?;
            }
        }
    }
    let e = inverse_unit_upper(&c);
    let tilde_v: Vec<Int> = (0..m).map(|i| (0..m).map(|j| &e[i][j] * &volumes[j]).sum()).collect();
    let mut rec = vec![Int::zero(); m];
    for i in (0..m).rev() {
        let mut s = volumes[i].clone();
        for j in (i + 1)..m {
            s -= &c[i][j] * &rec[j];
        }
        rec[i] = s;
    }
    Ok(SutureTable {
        suture_vertices: sut.iter().map(|&s| parent.polytope.face_vertices(s)).collect(),
        sutures: sut,
        volumes,
        c,
        e,
        tilde_v,
        tilde_v_recursive: rec,
    })
}

/// Mixed volume, in the affine span of face `s`, of the daughters restricted to `s`.
pub fn restricted_mixed_volume(parent: &SupportedPolytope, daughters: &[Daughter], s: usize) -> Result<Int> {
    let face = parent.polytope.face_polytope(s);
    let k = face.dim();
    let mut polys = Vec::new();
    for d in daughters {
        let pts: Vec<IVec> =
            d.points.iter().filter(|&&i| parent.point_in_face(i, s)).map(|&i| face.ctx.local(&parent.support[i])).collect();
        if !pts.is_empty() {
            polys.push(LatticePolytope::new(&pts)?);
        }
    }
    let refs: Vec<&LatticePolytope> = polys.iter().collect();
    mixed_volume(&refs, k)
}

/// Mixed volume of a semi-interlaced family via the suture formula.
pub fn mv_semi_interlaced(parent: &SupportedPolytope, daughters: &[Daughter]) -> Result<Int> {
    let a = analyze(parent, daughters)?;
    let t = suture_table(parent, &a)?;
    Ok(t.tilde_v[0].clone())
}

/// Mixed volume of the daughters by polarization.
pub fn mv_polarization(daughters: &[Daughter]) -> Result<Int> {
    let refs: Vec<&LatticePolytope> = daughters.iter().map(|d| &d.polytope).collect();
    let n = refs.first().map(|p| p.ambient()).unwrap_or(0);
    mixed_volume(&refs, n)
}

/// Daughters `Conv(As \ {x_i = 0})`, one per coordinate.
pub fn coordinate_daughters(parent: &SupportedPolytope) -> Result<Vec<Daughter>> {
    let n = parent.polytope.ambient();
    (0..n)
        .map(|i| {
            let on: Vec<IVec> = parent.polytope.vertices.iter().filter(|v| v[i].is_zero()).cloned().collect();
            let thrown = if on.is_empty() {
                vec![]
            } else {
                let mut gamma = vec![crate::arith::Rat::zero(); n];
                gamma[i] = crate::arith::Rat::one();
                vec![parent.polytope.support_face(&gamma)]
            };
            make_daughter(parent, &thrown)
        })
        .collect()
}
