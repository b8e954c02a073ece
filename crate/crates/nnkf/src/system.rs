//! Asymptotics of roots of generic systems `f_i + ε g_i = 0` and of the single-polyhedron
//! generalization.

use crate::arith::{pair, rat_int, Int, IVec, Rat};
use crate::asymptotic::{sort_records, AsymptoticClass, AsymptoticRecord};
use crate::error::{Error, Result};
use crate::newton::{argmin_eps, NewtonPolyhedron};
use crate::polytope::LatticePolytope;
use num_traits::{Signed, Zero};

/// Minimum of `v` over a support together with the minimizing points.
pub fn support_minimum(points: &[IVec], v: &[Rat]) -> (Rat, Vec<IVec>) {
    let vals: Vec<Rat> = points.iter().map(|p| pair(v, p)).collect();
    let min = vals.iter().min().expect("non-empty support").clone();
    let pts = points.iter().zip(&vals).filter(|(_, x)| **x == min).map(|(p, _)| p.clone()).collect();
    (min, pts)
}

/// `ρ_f(v) - ρ_g(v)` as exact pairings, up to the common `|v|` factor.
pub fn rho_gap(v: &[Rat], fs: &[IVec], gs: &[IVec]) -> Rat {
    support_minimum(fs, v).0 - support_minimum(gs, v).0
}

/// Scaled asymptotic `N(v) = v / (ρ_f(v) - ρ_g(v))`.
pub fn normalize_n(v: &[Rat], fs: &[IVec], gs: &[IVec]) -> Result<Vec<Rat>> {
    let gap = rho_gap(v, fs, gs);
    if gap.is_zero() {
        return Err(Error::EqualLevel);
    }
    if gap.is_negative() {
        return Err(Error::Precondition("the f-face is closer to the origin than the g-face".into()));
    }
    Ok(v.iter().map(|x| x / &gap).collect())
}

/// Checks `Γ_f ⊆ Γ_g`.
pub fn check_embedding(fs: &[IVec], gs: &[IVec]) -> Result<NewtonPolyhedron> {
    let g = NewtonPolyhedron::new(gs, false)?;
    if fs.is_empty() {
        return Err(Error::EmptySupport);
    }
    if !fs.iter().all(|p| g.contains(p)) {
        return Err(Error::NotEmbedded);
    }
    Ok(g)
}

/// Zero-dimensional strata of the common refinement of the dual fans, as primitive
/// strictly positive covectors.
pub fn refinement_rays(fs: &[IVec], gs: &[IVec]) -> Result<Vec<IVec>> {
    let mut sums = Vec::with_capacity(fs.len() * gs.len());
    for a in fs {
        for b in gs {
            sums.push(crate::arith::add(a, b));
        }
    }
    let np = NewtonPolyhedron::new(&sums, false)?;
    let mut rays: Vec<IVec> = np.positive_facets().into_iter().map(|f| f.normal).collect();
    rays.sort();
    Ok(rays)
}

/// Dual polytope `Conv(Γ_f^v, Γ_g^v)`.
pub fn dual_polytope(v: &[Rat], fs: &[IVec], gs: &[IVec]) -> Result<LatticePolytope> {
    let mut pts = support_minimum(fs, v).1;
    pts.extend(support_minimum(gs, v).1);
    LatticePolytope::new(&pts)
}

/// Asymptotics of `f_i + ε g_i = 0` with their multiplicities.
pub fn solve_system(fs: &[IVec], gs: &[IVec]) -> Result<Vec<AsymptoticRecord>> {
    let g = check_embedding(fs, gs)?;
    if !g.is_convenient() {
        return Err(Error::NotConvenient);
    }
    let n = gs[0].len();
    let all: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    for ray in refinement_rays(fs, gs)? {
        let v: Vec<Rat> = ray.iter().map(rat_int).collect();
        let gap = rho_gap(&v, fs, gs);
        if !gap.is_positive() {
            continue;
        }
        let m = dual_polytope(&v, fs, gs)?.volume_in_dim(n);
        let nv: Vec<Rat> = v.iter().map(|x| x / &gap).collect();
        out.push(AsymptoticRecord::finite(&nv, AsymptoticClass::Internal, m, all.clone()));
    }
    sort_records(&mut out);
    Ok(out)
}

/// Whether `π_ε` of the support meets every coordinate axis.
pub fn projection_meets_axes(hs: &[IVec]) -> bool {
    let Some(first) = hs.first() else { return false };
    let n = first.len() - 1;
    (0..n).all(|i| hs.iter().any(|p| p[i].is_positive() && (0..n).all(|j| j == i || p[j].is_zero())))
}

/// Asymptotics of the generalized system with a single polyhedron `H` in `Z^n ⊕ Z`.
pub fn solve_system_generalized(hs: &[IVec]) -> Result<Vec<AsymptoticRecord>> {
    if hs.is_empty() {
        return Err(Error::EmptySupport);
    }
    if !projection_meets_axes(hs) {
        return Err(Error::NotConvenient);
    }
    let n = hs[0].len() - 1;
    let all: Vec<usize> = (0..n).collect();
    let h = NewtonPolyhedron::new(hs, true)?;
    let mut out = Vec::new();
    for facet in h.positive_facets() {
        let v = NewtonPolyhedron::eps_covector(&facet);
        let pts = argmin_eps(hs, &v);
        let proj: Vec<IVec> = pts.iter().map(|p| p[..n].to_vec()).collect();
        let m = LatticePolytope::new(&proj)?.volume_in_dim(n);
        out.push(AsymptoticRecord::finite(&v, AsymptoticClass::Internal, m, all.clone()));
    }
    sort_records(&mut out);
    Ok(out)
}

/// Normalized volume of `Γ_g \ Γ_f` for convenient polyhedra.
pub fn difference_volume(fs: &[IVec], gs: &[IVec]) -> Result<Int> {
    let n = gs[0].len();
    let all: Vec<usize> = (0..n).collect();
    Ok(crate::newton::under_volume(fs, &all)? - crate::newton::under_volume(gs, &all)?)
}
