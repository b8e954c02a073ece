//! Asymptotics of critical points of a generic `h` with support in `Z^n_{>=0} ⊕ Z`: stratum
//! classification, internal and semi-internal multiplicities, trace polyhedra for raised
//! asymptotics and dropped asymptotics.

use crate::arith::{rat_int, Int, IVec, Rat};
use crate::asymptotic::{sort_records, AsymptoticClass, AsymptoticRecord, Entry};
use crate::error::{Error, Result};
use crate::linalg::affine_rank;
use crate::lp::strictly_feasible;
use crate::newton::{argmin_eps, milnor_generic, NewtonPolyhedron};
use crate::polytope::{CovectorQuotient, LatticePolytope};
use crate::semi::{analyze, coordinate_daughters, suture_table, Daughter, SupportedPolytope};
use crate::system::projection_meets_axes;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeSet, HashMap};

/// Class of a stratum of the dual projective fan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StratumClass {
    Internal,
    SemiInternal,
    Raised,
}

impl From<StratumClass> for AsymptoticClass {
    fn from(c: StratumClass) -> Self {
        match c {
            StratumClass::Internal => AsymptoticClass::Internal,
            StratumClass::SemiInternal => AsymptoticClass::SemiInternal,
            StratumClass::Raised => AsymptoticClass::Raised,
        }
    }
}

/// Dual polytope of a stratum, `π_ε` of the face, with its class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifiedStratum {
    /// Support points of the dual polytope.
    pub points: Vec<IVec>,
    pub dim: usize,
    pub class: StratumClass,
    /// For raised strata the smallest coordinate subspace containing the polytope; for
    /// semi-internal strata every proper coordinate subspace `E` with `dim(P ∩ E) = dim E`.
    pub witnesses: Vec<Vec<usize>>,
}

fn points_in(points: &[IVec], coords: &[usize]) -> Vec<IVec> {
    points.iter().filter(|p| p.iter().enumerate().all(|(i, c)| coords.contains(&i) || c.is_zero())).cloned().collect()
}

fn dim_of(points: &[IVec]) -> isize {
    let refs: Vec<&IVec> = points.iter().collect();
    affine_rank(&refs)
}

/// Classifies the stratum dual to `Conv(points)` in `R^n`.
pub fn classify_stratum(points: &[IVec]) -> Result<ClassifiedStratum> {
    if points.is_empty() {
        return Err(Error::EmptySupport);
    }
    let n = points[0].len();
    let points: Vec<IVec> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let dim = dim_of(&points) as usize;
    let used: Vec<usize> = (0..n).filter(|&i| points.iter().any(|p| !p[i].is_zero())).collect();
    if used.len() < n {
        return Ok(ClassifiedStratum { points, dim, class: StratumClass::Raised, witnesses: vec![used] });
    }
    let mut witnesses = Vec::new();
    for mask in 1u32..((1 << n) - 1) {
        let sub: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let inside = points_in(&points, &sub);
        if dim_of(&inside) == sub.len() as isize {
            witnesses.push(sub);
        }
    }
    witnesses.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let class = if witnesses.is_empty() { StratumClass::Internal } else { StratumClass::SemiInternal };
    Ok(ClassifiedStratum { points, dim, class, witnesses })
}

/// Points of `hs` lying in `E ⊕ R`, written in the coordinates of `E` followed by `ε`.
pub fn restrict_support(hs: &[IVec], e: &[usize]) -> Vec<IVec> {
    let n = hs.first().map(|p| p.len() - 1).unwrap_or(0);
    let mut out: Vec<IVec> = hs
        .iter()
        .filter(|p| (0..n).all(|i| e.contains(&i) || p[i].is_zero()))
        .map(|p| e.iter().map(|&i| p[i].clone()).chain(std::iter::once(p[n].clone())).collect())
        .collect();
    out.sort();
    out.dedup();
    out
}

/// `π_ε` of the face of `Conv(hs)` minimized by `(v, 1)`, as a supported polytope.
pub fn dual_face(hs: &[IVec], v: &[Rat]) -> Result<SupportedPolytope> {
    let pts = argmin_eps(hs, v);
    let proj: Vec<IVec> = pts.iter().map(|p| p[..p.len() - 1].to_vec()).collect();
    SupportedPolytope::new(&proj)
}

/// Local polytopes `Conv(K ∩ Hs \ E_i)` of the facet of `H_E` dual to `(v, 1)`.
pub fn local_daughters(hs: &[IVec], e: &[usize], v: &[Rat]) -> Result<(SupportedPolytope, Vec<Daughter>)> {
    let parent = dual_face(&restrict_support(hs, e), v)?;
    let daughters = coordinate_daughters(&parent)?;
    Ok((parent, daughters))
}

/// Multiplicity of the asymptotic `v` of the subproblem on the coordinate subspace `e`, where
/// `(v, 1)` is dual to a bounded facet of `H_E`.
pub fn subproblem_multiplicity(hs: &[IVec], e: &[usize], v: &[Rat]) -> Result<Int> {
    if v.len() != e.len() {
        return Err(Error::DimensionMismatch { expected: e.len(), found: v.len() });
    }
    if v.iter().any(|x| !x.is_positive()) {
        return Err(Error::Precondition("the covector must be positive on the subspace".into()));
    }
    let parent = dual_face(&restrict_support(hs, e), v)?;
    if parent.dim() != e.len() {
        return Err(Error::NotAFace("the covector is not dual to a bounded facet".into()));
    }
    let class = classify_stratum(&parent.support)?;
    match class.class {
        StratumClass::Raised => Err(Error::Precondition("raised stratum".into())),
        StratumClass::Internal => Ok(parent.polytope.volume_in_dim(e.len())),
        StratumClass::SemiInternal => {
            let daughters = coordinate_daughters(&parent)?;
            let analysis = analyze(&parent, &daughters)?;
            Ok(suture_table(&parent, &analysis)?.tilde_v[0].clone())
        }
    }
}

/// Newton polyhedron of the image of `Hs \ (E ⊕ R)` under `(w⊥, w, a) ↦ (w⊥, ξ(v·w + a))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TracePolyhedron {
    pub quotient: CovectorQuotient,
    /// Image level `ξ·min(v·w + a)` of the base face, attained at the point `(0, level)`.
    pub level: Int,
    pub support: Vec<IVec>,
    pub polyhedron: NewtonPolyhedron,
}

/// Trace polyhedron of the base asymptotic `v` on the proper coordinate subspace `e`.
pub fn trace_polyhedron(hs: &[IVec], e: &[usize], v: &[Rat]) -> Result<TracePolyhedron> {
    let n = hs.first().ok_or(Error::EmptySupport)?.len() - 1;
    if e.is_empty() || e.len() >= n {
        return Err(Error::Precondition("the base subspace must be a proper non-zero coordinate subspace".into()));
    }
    if v.len() != e.len() || v.iter().any(|x| !x.is_positive()) {
        return Err(Error::Precondition("the base covector must be positive on the subspace".into()));
    }
    let base = dual_face(&restrict_support(hs, e), v)?;
    if base.dim() != e.len() {
        return Err(Error::Precondition("the base face does not span its subspace".into()));
    }
    let quotient = CovectorQuotient::new(n, e.to_vec(), v.to_vec());
    let on_e = |p: &IVec| (0..n).all(|i| e.contains(&i) || p[i].is_zero());
    let level = hs.iter().filter(|p| on_e(p)).map(|p| quotient.apply(p)[n - e.len()].clone()).min().expect("non-empty base");
    let support: Vec<IVec> =
        hs.iter().filter(|p| !on_e(p)).map(|p| quotient.apply(p)).collect::<BTreeSet<_>>().into_iter().collect();
    if support.is_empty() {
        return Err(Error::Precondition("no support point off the base subspace".into()));
    }
    let polyhedron = NewtonPolyhedron::new(&support, true)?;
    Ok(TracePolyhedron { quotient, level, support, polyhedron })
}

impl TracePolyhedron {
    /// Dimension of `E⊥`.
    pub fn k(&self) -> usize {
        self.polyhedron.ambient() - 1
    }

    /// Whether the base point `(0, level)` is the unique minimizer of `(u, 1)` on the image.
    pub fn qualifies(&self, u: &[Rat]) -> bool {
        let k = self.k();
        let c = rat_int(&self.level);
        u.iter().all(|x| x.is_positive())
            && self.support.iter().all(|p| {
                let mut s = rat_int(&p[k]);
                for (a, b) in u.iter().zip(p) {
                    s += a * rat_int(b);
                }
                s > c
            })
    }

    /// Vertex sets of the compact faces `G` of the trace polyhedron for which some strictly
    /// positive `u` has `T^{(u,1)} = G` and qualifies.
    pub fn qualifying_faces(&self) -> Vec<Vec<IVec>> {
        let k = self.k();
        let t = &self.polyhedron.truncated;
        let verts = self.polyhedron.vertices();
        let row = |p: &IVec| -> (Vec<Rat>, Rat) {
            let mut a: Vec<Rat> = p[..k].iter().map(rat_int).collect();
            a.push(-Rat::one());
            (a, -rat_int(&p[k]))
        };
        let mut out = Vec::new();
        for &f in &self.polyhedron.compact_faces {
            let face: Vec<IVec> = t.faces[f].verts.iter().map(|&i| t.vertices[i].clone()).collect();
            let eq: Vec<(Vec<Rat>, Rat)> = face.iter().map(row).collect();
            let mut gt: Vec<(Vec<Rat>, Rat)> = verts.iter().filter(|p| !face.contains(p)).map(row).collect();
            let mut above = vec![Rat::zero(); k + 1];
            above[k] = Rat::one();
            gt.push((above, rat_int(&self.level)));
            for i in 0..k {
                let mut pos = vec![Rat::zero(); k + 1];
                pos[i] = Rat::one();
                gt.push((pos, Rat::zero()));
            }
            if strictly_feasible(&eq, &gt, k + 1).is_some() {
                out.push(face);
            }
        }
        out.sort();
        out
    }
}

/// Internal and semi-internal asymptotic of the full-dimensional problem, including those of
/// multiplicity zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetAsymptotic {
    pub covector: Vec<Rat>,
    pub class: StratumClass,
    pub multiplicity: Int,
}

/// Duals `(v, 1)` of the bounded facets of `H` with `v > 0`, with their multiplicities.
pub fn facet_asymptotics(hs: &[IVec]) -> Result<Vec<FacetAsymptotic>> {
    let n = hs.first().ok_or(Error::EmptySupport)?.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    let h = NewtonPolyhedron::new(hs, true)?;
    let all: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    for facet in h.positive_facets() {
        let v = NewtonPolyhedron::eps_covector(&facet);
        let parent = dual_face(hs, &v)?;
        let class = classify_stratum(&parent.support)?.class;
        let multiplicity = subproblem_multiplicity(hs, &all, &v)?;
        out.push(FacetAsymptotic { covector: v, class, multiplicity });
    }
    out.sort_by(|a, b| a.covector.cmp(&b.covector));
    Ok(out)
}

/// Non-empty proper coordinate subspaces of `R^n`, by increasing dimension.
pub fn proper_subspaces(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (1u32..((1 << n) - 1)).map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect()).collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn lift(e: &[usize], n: usize, v: &[Entry], fill: Entry) -> Vec<Entry> {
    let mut out = vec![fill; n];
    for (x, &i) in v.iter().zip(e) {
        out[i] = x.clone();
    }
    out
}

/// Recursive solver with a write-once memo of the non-dropped asymptotics of each support.
#[derive(Debug, Default)]
pub struct CriticalSolver {
    memo: HashMap<Vec<IVec>, Vec<AsymptoticRecord>>,
}

impl CriticalSolver {
    pub fn new() -> Self {
        Self::default()
    }

    /// Internal, semi-internal and raised asymptotics of positive multiplicity.
    pub fn non_dropped(&mut self, hs: &[IVec]) -> Result<Vec<AsymptoticRecord>> {
        let key: Vec<IVec> = hs.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        if let Some(r) = self.memo.get(&key) {
            return Ok(r.clone());
        }
        let n = key.first().ok_or(Error::EmptySupport)?.len() - 1;
        let all: Vec<usize> = (0..n).collect();
        let mut out = Vec::new();
        for fa in facet_asymptotics(&key)? {
            if fa.multiplicity.is_positive() {
                out.push(AsymptoticRecord::finite(&fa.covector, fa.class.into(), fa.multiplicity, all.clone()));
            }
        }
        for e in proper_subspaces(n) {
            let sub = restrict_support(&key, &e);
            for base in self.non_dropped(&sub)? {
                if base.class == AsymptoticClass::Raised {
                    continue;
                }
                let v: Vec<Rat> = base.covector.iter().map(finite).collect();
                let trace = trace_polyhedron(&key, &e, &v)?;
                for r in self.non_dropped(&trace.support)? {
                    let u: Vec<Rat> = r.covector.iter().map(finite).collect();
                    if !trace.qualifies(&u) {
                        continue;
                    }
                    let full = trace.quotient.pullback(&u);
                    let mut rec =
                        AsymptoticRecord::finite(&full, AsymptoticClass::Raised, &r.multiplicity * &base.multiplicity, e.clone());
                    rec.base = Some(base.covector.clone());
                    out.push(rec);
                }
            }
        }
        sort_records(&mut out);
        self.memo.insert(key, out.clone());
        Ok(out)
    }

    /// Dropped asymptotics `v_E + ∞` of positive multiplicity.
    pub fn dropped(&mut self, hs: &[IVec]) -> Result<Vec<AsymptoticRecord>> {
        let n = hs.first().ok_or(Error::EmptySupport)?.len() - 1;
        let mut out = Vec::new();
        for e in proper_subspaces(n) {
            let bases = self.non_dropped(&restrict_support(hs, &e))?;
            if bases.is_empty() {
                continue;
            }
            let perp: Vec<usize> = (0..n).filter(|i| !e.contains(i)).collect();
            let proj: Vec<IVec> = hs
                .iter()
                .map(|p| perp.iter().map(|&i| p[i].clone()).collect::<IVec>())
                .filter(|p| p.iter().any(|c| !c.is_zero()))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            let mu = match milnor_generic(&proj) {
                Ok(mu) => mu,
                Err(Error::NotConvenient | Error::EmptySupport) => {
                    return Err(Error::NotConvenientProjection { subspace: e.clone() })
                }
                Err(err) => return Err(err),
            };
            if mu.is_zero() {
                continue;
            }
            for base in bases {
                let mut rec = AsymptoticRecord {
                    covector: lift(&e, n, &base.covector, Entry::Infinite),
                    class: AsymptoticClass::Dropped,
                    multiplicity: &base.multiplicity * &mu,
                    subspace: e.clone(),
                    base: None,
                };
                rec.base = Some(base.covector);
                out.push(rec);
            }
        }
        sort_records(&mut out);
        Ok(out)
    }
}

fn finite(e: &Entry) -> Rat {
    match e {
        Entry::Finite(x) => x.clone(),
        Entry::Infinite => unreachable!("non-dropped records are finite"),
    }
}

/// All asymptotics of positive multiplicity of critical points tending to the origin.
pub fn solve_critical(hs: &[IVec]) -> Result<Vec<AsymptoticRecord>> {
    if hs.is_empty() {
        return Err(Error::EmptySupport);
    }
    if !projection_meets_axes(hs) {
        return Err(Error::NotConvenient);
    }
    let mut solver = CriticalSolver::new();
    let mut out = solver.non_dropped(hs)?;
    out.extend(solver.dropped(hs)?);
    sort_records(&mut out);
    Ok(out)
}

/// Sum of the multiplicities of a record list.
pub fn total_multiplicity(records: &[AsymptoticRecord]) -> Int {
    records.iter().map(|r| r.multiplicity.clone()).sum()
}

/// Normalized volume of the support polytope in `R^n`, used for internal strata.
pub fn internal_volume(points: &[IVec]) -> Result<Int> {
    let n = points.first().ok_or(Error::EmptySupport)?.len();
    Ok(LatticePolytope::new(points)?.volume_in_dim(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ivec, rat};
    use crate::nonneg::build_h;

    fn pts(v: &[&[i64]]) -> Vec<IVec> {
        v.iter().map(|p| ivec(p)).collect()
    }

    fn sec81() -> Vec<IVec> {
        let fs = pts(&[&[0, 5, 0], &[5, 0, 0], &[4, 1, 0], &[0, 1, 4], &[0, 0, 6], &[0, 3, 2]]);
        let mut gs = fs.clone();
        gs.extend(pts(&[&[0, 3, 0], &[2, 2, 0], &[3, 1, 0]]));
        build_h(&fs, &gs).unwrap()
    }

    #[test]
    fn classification() {
        let begh = pts(&[&[2, 2, 0], &[5, 0, 0], &[0, 1, 4], &[0, 0, 6]]);
        assert_eq!(classify_stratum(&begh).unwrap().class, StratumClass::Internal);
        let adeg = pts(&[&[0, 3, 0], &[0, 5, 0], &[5, 0, 0], &[0, 1, 4]]);
        let c = classify_stratum(&adeg).unwrap();
        assert_eq!(c.class, StratumClass::SemiInternal);
        assert_eq!(c.witnesses, vec![vec![1], vec![0, 1], vec![1, 2]]);
        let flat = pts(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]);
        assert_eq!(classify_stratum(&flat).unwrap().class, StratumClass::Raised);
    }

    #[test]
    fn sec81_internal_and_semi_internal() {
        let hs = sec81();
        let all = [0, 1, 2];
        assert_eq!(subproblem_multiplicity(&hs, &all, &[rat(3, 1), rat(5, 1), rat(5, 2)]).unwrap(), int(2));
        assert_eq!(subproblem_multiplicity(&hs, &all, &[rat(2, 1), rat(3, 1), rat(7, 4)]).unwrap(), int(0));
    }

    #[test]
    fn trace_in_two_dimensions() {
        let fs = pts(&[&[4, 0], &[0, 4]]);
        let mut gs = fs.clone();
        gs.extend(pts(&[&[2, 0], &[0, 2]]));
        let hs = build_h(&fs, &gs).unwrap();
        let t = trace_polyhedron(&hs, &[0], &[rat(1, 2)]).unwrap();
        assert_eq!(t.quotient.xi, int(2));
        assert_eq!(t.polyhedron.vertices(), pts(&[&[2, 2], &[4, 0]]));
        assert!(trace_polyhedron(&hs, &[0, 1], &[rat(1, 2), rat(1, 2)]).is_err());
    }

    #[test]
    fn sec81_essential_boundary_on_y_axis() {
        let hs = sec81();
        let t = trace_polyhedron(&hs, &[1], &[rat(1, 2)]).unwrap();
        let shadow: BTreeSet<Vec<IVec>> = t
            .qualifying_faces()
            .into_iter()
            .map(|f| f.into_iter().map(|p| p[..2].to_vec()).collect::<BTreeSet<_>>().into_iter().collect())
            .collect();
        assert!(shadow.contains(&pts(&[&[0, 2], &[4, 0]])));
    }

    #[test]
    fn sec46_table() {
        let fs = pts(&[&[9, 0], &[7, 1], &[5, 2], &[2, 4], &[0, 7]]);
        let gs = pts(&[&[1, 0], &[0, 1]]);
        let recs = solve_critical(&build_h(&fs, &gs).unwrap()).unwrap();
        let table: Vec<(String, Int)> = recs.iter().map(|r| (r.covector_string(), r.multiplicity.clone())).collect();
        let expect = vec![
            ("(1/8,1/4)".to_string(), int(8)),
            ("(1/7,3/14)".to_string(), int(14)),
            ("(1/5,1/5)".to_string(), int(5)),
            ("(1/3,1/6)".to_string(), int(6)),
        ];
        assert_eq!(table, expect);
        assert_eq!(total_multiplicity(&recs), int(33));
    }

    #[test]
    fn identical_polyhedra_have_no_asymptotics() {
        let fs = pts(&[&[3, 0], &[1, 1], &[0, 2]]);
        let hs = build_h(&fs, &fs).unwrap();
        assert!(solve_critical(&hs).unwrap().is_empty());
    }

    #[test]
    fn dropped_vanish_with_linear_term() {
        let fs = pts(&[&[3, 0], &[0, 3]]);
        let gs = pts(&[&[1, 0], &[0, 1]]);
        let hs = build_h(&fs, &gs).unwrap();
        let recs = solve_critical(&hs).unwrap();
        assert!(recs.iter().all(|r| r.class != AsymptoticClass::Dropped));
        assert_eq!(total_multiplicity(&recs), int(4));
    }
}
