//! The non-negative formula for differences of Newton numbers: summation indices, essential
//! regions, verification against the classical formula, first jumps and monotonicity reports.

use crate::arith::{Int, IVec, Rat};
use crate::critical::{facet_asymptotics, local_daughters, restrict_support, trace_polyhedron, StratumClass};
use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::newton::{newton_number_of_support, NewtonPolyhedron};
use crate::par::{self, Execution};
use crate::region::{ShadowPiece, StaircaseRegion};
use crate::system::{check_embedding, projection_meets_axes};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

/// Lifted support `i(Fs) ∪ (i(Gs) + e_ε)` for an embedded pair.
pub fn build_h(fs: &[IVec], gs: &[IVec]) -> Result<Vec<IVec>> {
    build_h_at_level(fs, gs, 1)
}

/// Lifted support with `Gs` placed at deformation level `level`.
pub fn build_h_at_level(fs: &[IVec], gs: &[IVec], level: u32) -> Result<Vec<IVec>> {
    let g = check_embedding(fs, gs)?;
    if !g.is_convenient() {
        return Err(Error::NotConvenient);
    }
    let lift = |p: &IVec, l: u32| {
        let mut q = p.clone();
        q.push(Int::from(l));
        q
    };
    Ok(fs.iter().map(|p| lift(p, 0)).chain(gs.iter().map(|p| lift(p, level))).collect())
}

/// Splits a lifted support into `Fs` (level 0) and `Fs ∪ Gs` (levels 0 and 1), the supports of
/// `f` and of the deformed function, if no other level occurs.
pub fn split_levels(hs: &[IVec]) -> Option<(Vec<IVec>, Vec<IVec>)> {
    let n = hs.first()?.len() - 1;
    let mut fs = Vec::new();
    let mut gs = Vec::new();
    for p in hs {
        let x = p[..n].to_vec();
        if p[n].is_zero() {
            fs.push(x);
        } else if p[n].is_one() {
            gs.push(x);
        } else {
            return None;
        }
    }
    if fs.is_empty() || gs.is_empty() {
        return None;
    }
    let union: BTreeSet<IVec> = fs.iter().chain(&gs).cloned().collect();
    Some((fs, union.into_iter().collect()))
}

/// Index `v ∈ IS(E)`: the dual `(v, 1)` of a bounded facet of `H_E` with `v > 0` on `E`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsIndex {
    /// Covector in the coordinates of `subspace`.
    pub covector: Vec<Rat>,
    pub subspace: Vec<usize>,
    pub class: StratumClass,
    pub multiplicity: Int,
}

impl IsIndex {
    /// Covector in `R^n`, zero off the subspace.
    pub fn padded(&self, n: usize) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); n];
        for (x, &i) in self.covector.iter().zip(&self.subspace) {
            out[i] = x.clone();
        }
        out
    }
}

/// Non-empty coordinate subspaces of `R^n`, by decreasing dimension, then lexicographically.
fn subspaces_desc(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (1u32..(1 << n)).map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect()).collect();
    out.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    out
}

fn check_axes(hs: &[IVec]) -> Result<usize> {
    let n = hs.first().ok_or(Error::EmptySupport)?.len();
    if let Some(p) = hs.iter().find(|p| p.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: p.len() });
    }
    if n < 2 || !projection_meets_axes(hs) {
        return Err(Error::NotConvenient);
    }
    Ok(n - 1)
}

/// All indices `IS(E)` over non-empty coordinate subspaces `E`, with their multiplicities.
pub fn enumerate_is(hs: &[IVec]) -> Result<Vec<IsIndex>> {
    let n = check_axes(hs)?;
    let mut out = Vec::new();
    for e in subspaces_desc(n) {
        let sub = restrict_support(hs, &e);
        for fa in facet_asymptotics(&sub)? {
            out.push(IsIndex { covector: fa.covector, subspace: e.clone(), class: fa.class, multiplicity: fa.multiplicity });
        }
    }
    Ok(out)
}

/// Essential region `Γ̃(v)` of the index `v ∈ IS(E)` inside `E⊥_{>=0}`.
pub fn essential_region(hs: &[IVec], e: &[usize], v: &[Rat]) -> Result<StaircaseRegion> {
    let n = hs.first().ok_or(Error::EmptySupport)?.len() - 1;
    if e.len() == n {
        return Ok(StaircaseRegion::trivial());
    }
    let trace = trace_polyhedron(hs, e, v)?;
    let k = trace.k();
    let mut seen = BTreeSet::new();
    let mut pieces = Vec::new();
    for face in trace.qualifying_faces() {
        let proj: Vec<IVec> = face.iter().map(|p| p[..k].to_vec()).collect();
        let piece = ShadowPiece::new(&proj)?;
        if seen.insert(piece.vertices.clone()) {
            pieces.push(piece);
        }
    }
    StaircaseRegion::from_pieces(trace.quotient.perp_coords(), pieces)
}

/// One summand `ν(Γ̃(v))·m_v` of the formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummandRecord {
    pub index: IsIndex,
    pub region: StaircaseRegion,
    pub nu: Int,
    pub contribution: Int,
}

/// Classical Newton numbers of the pair and their difference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub nu_f: Int,
    pub nu_g: Int,
    pub difference: Int,
    pub matched: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaResult {
    pub n: usize,
    pub summands: Vec<SummandRecord>,
    pub total: Int,
    pub verification: Option<Verification>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FormulaOptions {
    /// Keep the raw support instead of reducing it to the vertices of `H`.
    pub keep_support: bool,
    pub execution: Execution,
}

/// Vertices of the Newton polyhedron of a lifted support.
pub fn reduce_support(hs: &[IVec]) -> Result<Vec<IVec>> {
    Ok(NewtonPolyhedron::new(hs, true)?.vertices())
}

/// `ν(Γ_f) - ν(Γ_g)` by the classical formula, when both polyhedra are convenient.
pub fn classical_difference(fs: &[IVec], gs: &[IVec]) -> Option<(Int, Int)> {
    let nu_f = newton_number_of_support(fs).ok()?;
    let nu_g = newton_number_of_support(gs).ok()?;
    Some((nu_f, nu_g))
}

/// Evaluates the formula; a verification block is attached when `hs` splits into an embedded
/// pair of convenient polyhedra.
pub fn evaluate(hs: &[IVec], opts: &FormulaOptions) -> Result<FormulaResult> {
    let n = check_axes(hs)?;
    let work = if opts.keep_support {
        hs.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect()
    } else {
        reduce_support(hs)?
    };
    let indices = enumerate_is(&work)?;
    let summands: Vec<Result<SummandRecord>> = par::map(opts.execution, &indices, |ix| {
        let region = essential_region(&work, &ix.subspace, &ix.covector)?;
        let nu = region.newton_number.clone();
        let contribution = &nu * &ix.multiplicity;
        Ok(SummandRecord { index: ix.clone(), region, nu, contribution })
    });
    let summands: Vec<SummandRecord> = summands.into_iter().collect::<Result<_>>()?;
    let total: Int = summands.iter().map(|s| s.contribution.clone()).sum();
    let verification = split_levels(hs).and_then(|(fs, gs)| classical_difference(&fs, &gs)).map(|(nu_f, nu_g)| {
        let difference = &nu_f - &nu_g;
        Verification { matched: difference == total, nu_f, nu_g, difference }
    });
    Ok(FormulaResult { n, summands, total, verification })
}

/// Evaluates the formula; with `verify`, a mismatch against the classical difference is an error.
pub fn nonneg_formula(hs: &[IVec], verify: bool) -> Result<FormulaResult> {
    let res = evaluate(hs, &FormulaOptions::default())?;
    if verify {
        check_verification(&res)?;
    }
    Ok(res)
}

/// Turns a failed verification block into an error.
pub fn check_verification(res: &FormulaResult) -> Result<()> {
    match &res.verification {
        Some(v) if !v.matched => {
            Err(Error::Verification { formula: res.total.to_string(), classical: v.difference.to_string() })
        }
        _ => Ok(()),
    }
}

/// Both sides of `1 + Σ_{E' ⊋ E} ν(Γ̃_{E'}(v)) = V_N(Γ̃_↓(v))`, the left side evaluated on the
/// subproblems of the coordinate subspaces `E'`.
pub fn complement_identity(hs: &[IVec], e: &[usize], v: &[Rat]) -> Result<(Int, Rat)> {
    let n = check_axes(hs)?;
    let rhs = essential_region(hs, e, v)?.complement_volume();
    let mut lhs = Int::one();
    for big in subspaces_desc(n) {
        if big.len() <= e.len() || !e.iter().all(|i| big.contains(i)) {
            continue;
        }
        let sub = restrict_support(hs, &big);
        let pos: Vec<usize> = e.iter().map(|i| big.iter().position(|j| j == i).expect("contained")).collect();
        let region = essential_region(&sub, &pos, v)?;
        lhs += region.newton_number;
    }
    Ok((lhs, rhs))
}

/// Result of the one-point expansion search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JumpReport {
    pub base: Int,
    /// Smallest positive difference `ν(Γ_f) - ν(Γ_g)`.
    pub difference: Int,
    /// Expansion points achieving the smallest difference.
    pub minimizers: Vec<IVec>,
    /// Every candidate with its difference.
    pub candidates: Vec<(IVec, Int)>,
}

/// Lattice points of the compact complement of a convenient `Γ_f`, origin excluded.
pub fn complement_points(fs: &[IVec]) -> Result<Vec<IVec>> {
    let np = NewtonPolyhedron::new(fs, false)?;
    if !np.is_convenient() {
        return Err(Error::NotConvenient);
    }
    let n = np.n();
    let top: i64 = fs.iter().flatten().max().and_then(|m| i64::try_from(m).ok()).unwrap_or(0);
    let mut out = Vec::new();
    let mut cur = vec![0i64; n];
    loop {
        let p: IVec = cur.iter().map(|&c| Int::from(c)).collect();
        if cur.iter().any(|&c| c != 0) && !np.contains(&p) {
            out.push(p);
        }
        let mut i = 0;
        while i < n && cur[i] == top {
            cur[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        cur[i] += 1;
    }
    Ok(out)
}

/// First non-degenerate jump of Newton numbers under one-point expansions of `Fs`.
pub fn first_jump(fs: &[IVec]) -> Result<JumpReport> {
    first_jump_with(fs, Execution::Parallel)
}

pub fn first_jump_with(fs: &[IVec], exec: Execution) -> Result<JumpReport> {
    let base = newton_number_of_support(fs)?;
    if !base.is_positive() {
        return Err(Error::ZeroNewtonNumber);
    }
    let points = complement_points(fs)?;
    let inner = FormulaOptions { keep_support: false, execution: Execution::Sequential };
    let diffs: Vec<Result<Int>> = par::map(exec, &points, |g| {
        let mut gs = fs.to_vec();
        gs.push(g.clone());
        Ok(evaluate(&build_h(fs, &gs)?, &inner)?.total)
    });
    let mut candidates = Vec::with_capacity(points.len());
    for (p, d) in points.into_iter().zip(diffs) {
        candidates.push((p, d?));
    }
    let difference = candidates
        .iter()
        .map(|(_, d)| d)
        .filter(|d| d.is_positive())
        .min()
        .cloned()
        .ok_or(Error::ZeroNewtonNumber)?;
    let minimizers = candidates.iter().filter(|(_, d)| *d == difference).map(|(p, _)| p.clone()).collect();
    Ok(JumpReport { base, difference, minimizers, candidates })
}

/// Why a summand vanishes, or that it does not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mechanism {
    Positive,
    ZeroNewtonNumber,
    /// `j` of the local polytopes have a Minkowski sum of dimension below `j`.
    DependentLocalPolytopes { daughters: Vec<usize>, span: usize, parallel_segments: bool },
    /// The multiplicity vanishes with no dependent subfamily of local polytopes.
    ZeroMixedVolume,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evidence {
    pub summand: SummandRecord,
    pub mechanism: Mechanism,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotonicityReport {
    pub equal: bool,
    pub total: Int,
    pub evidence: Vec<Evidence>,
}

fn dependent_subfamily(directions: &[Vec<IVec>]) -> Option<(Vec<usize>, usize)> {
    let m = directions.len();
    let mut masks: Vec<u32> = (1u32..(1 << m)).collect();
    masks.sort_by_key(|x| x.count_ones());
    for mask in masks {
        let idx: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).collect();
        let rows: Vec<IVec> = idx.iter().flat_map(|&i| directions[i].iter().cloned()).collect();
        let span = if rows.is_empty() { 0 } else { rank(&rows) };
        if span < idx.len() {
            return Some((idx, span));
        }
    }
    None
}

/// Decides whether `Γ_f` and `Γ_g` have equal Newton numbers, with per-summand evidence.
pub fn monotonicity_report(fs: &[IVec], gs: &[IVec]) -> Result<MonotonicityReport> {
    let hs = build_h(fs, gs)?;
    let res = evaluate(&hs, &FormulaOptions::default())?;
    let work = reduce_support(&hs)?;
    let mut evidence = Vec::with_capacity(res.summands.len());
    for s in res.summands {
        let mechanism = if s.contribution.is_positive() {
            Mechanism::Positive
        } else if s.index.multiplicity.is_positive() {
            Mechanism::ZeroNewtonNumber
        } else {
            let (_, daughters) = local_daughters(&work, &s.index.subspace, &s.index.covector)?;
            let dirs: Vec<Vec<IVec>> = daughters
                .iter()
                .map(|d| d.polytope.vertices.iter().skip(1).map(|v| crate::arith::sub(v, &d.polytope.vertices[0])).collect())
                .collect();
            match dependent_subfamily(&dirs) {
                Some((idx, span)) => {
                    let parallel_segments = idx.len() == 2 && span == 1 && idx.iter().all(|&i| daughters[i].polytope.dim() == 1);
                    Mechanism::DependentLocalPolytopes { daughters: idx, span, parallel_segments }
                }
                None => Mechanism::ZeroMixedVolume,
            }
        };
        evidence.push(Evidence { summand: s, mechanism });
    }
    Ok(MonotonicityReport { equal: res.total.is_zero(), total: res.total, evidence })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ivec, rat};

    fn pts(v: &[&[i64]]) -> Vec<IVec> {
        v.iter().map(|p| ivec(p)).collect()
    }

    fn sec2() -> Vec<IVec> {
        pts(&[&[4, 0, 0, 0], &[0, 4, 0, 0], &[2, 0, 2, 0], &[0, 2, 2, 0], &[0, 0, 5, 0], &[1, 0, 0, 1]])
    }

    #[test]
    fn lifted_support() {
        let h = build_h(&pts(&[&[2, 0]]), &pts(&[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(h, pts(&[&[2, 0, 0], &[1, 0, 1], &[0, 1, 1]]));
        assert_eq!(build_h(&pts(&[&[0, 1]]), &pts(&[&[2, 0], &[0, 2]])), Err(Error::NotEmbedded));
    }

    #[test]
    fn one_dimensional_index() {
        let h = build_h(&pts(&[&[3]]), &pts(&[&[1]])).unwrap();
        let is = enumerate_is(&h).unwrap();
        assert_eq!(is.len(), 1);
        assert_eq!(is[0].covector, vec![rat(1, 2)]);
    }

    #[test]
    fn running_example() {
        let res = nonneg_formula(&sec2(), false).unwrap();
        let covs: Vec<Vec<Rat>> = res.summands.iter().map(|s| s.index.padded(3)).collect();
        let third = |a, b, c| vec![rat(a, 3), rat(b, 3), rat(c, 3)];
        let seventh = |a, b, c| vec![rat(a, 7), rat(b, 7), rat(c, 7)];
        assert_eq!(
            covs,
            vec![third(1, 1, 1), seventh(3, 3, 2), third(1, 1, 0), third(1, 0, 1), seventh(3, 0, 2), third(1, 0, 0)]
        );
        let m: Vec<Int> = res.summands.iter().map(|s| s.index.multiplicity.clone()).collect();
        assert_eq!(m, [12, 0, 0, 0, 7, 3].map(int).to_vec());
        let nu: Vec<Int> = res.summands.iter().map(|s| s.nu.clone()).collect();
        assert_eq!(nu, [1, 1, 1, 1, 1, 3].map(int).to_vec());
        assert_eq!(res.total, int(28));
    }

    #[test]
    fn non_convex_region() {
        let hs = pts(&[&[3, 0, 0, 0], &[2, 1, 0, 0], &[2, 0, 1, 0], &[0, 1, 1, 0], &[0, 0, 5, 0], &[2, 0, 0, 1]]);
        let r = essential_region(&hs, &[0], &[rat(1, 1)]).unwrap();
        assert_eq!(r.newton_number, int(1));
    }

    #[test]
    fn second_region() {
        let r = essential_region(&sec2(), &[0], &[rat(1, 3)]).unwrap();
        assert_eq!(r.newton_number, int(3));
        assert_eq!(r.complement_volume(), rat(8, 1));
    }

    #[test]
    fn verified_against_classical() {
        let fs = pts(&[&[9, 0], &[7, 1], &[5, 2], &[2, 4], &[0, 7]]);
        let gs = pts(&[&[1, 0], &[0, 1]]);
        let res = nonneg_formula(&build_h(&fs, &gs).unwrap(), true).unwrap();
        assert_eq!(res.total, int(33));
        assert!(res.verification.unwrap().matched);
    }

    #[test]
    fn jump_of_morse_square() {
        let rep = first_jump(&pts(&[&[2, 0], &[0, 2]])).unwrap();
        assert_eq!(rep.base, int(1));
        assert_eq!(rep.difference, int(1));
        assert!(rep.minimizers.contains(&ivec(&[1, 0])));
        assert_eq!(first_jump(&pts(&[&[1, 0], &[0, 1]])), Err(Error::ZeroNewtonNumber));
    }

    #[test]
    fn complement_identity_running_example() {
        let (lhs, rhs) = complement_identity(&sec2(), &[0], &[rat(1, 3)]).unwrap();
        assert_eq!(Rat::from_integer(lhs), rhs);
    }
}
