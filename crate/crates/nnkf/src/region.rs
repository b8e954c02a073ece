//! Regions of a coordinate orthant cut out by a shadow of lattice polytopes: the far component,
//! its compact complement, exact complement volumes and the Kouchnirenko-style Newton number.

use crate::arith::{lcm_of_denominators, rat_int, Int, IVec, Rat, RVec};
use crate::error::{Error, Result};
use crate::hull::full_hull;
use crate::linalg::{affine_rank, nullspace};
use crate::polytope::LatticePolytope;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

/// Lattice polytope forming part of a shadow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShadowPiece {
    /// Vertices in region coordinates.
    pub vertices: Vec<IVec>,
    pub dim: usize,
}

impl ShadowPiece {
    pub fn new(points: &[IVec]) -> Result<Self> {
        let poly = LatticePolytope::new(points)?;
        let dim = poly.dim();
        Ok(ShadowPiece { vertices: poly.vertices, dim })
    }

    /// Whether every vertex vanishes outside the coordinate positions `sub`.
    pub fn lies_in(&self, sub: &[usize]) -> bool {
        self.vertices.iter().all(|v| v.iter().enumerate().all(|(i, c)| sub.contains(&i) || c.is_zero()))
    }

    fn restrict(&self, sub: &[usize]) -> ShadowPiece {
        ShadowPiece {
            vertices: self.vertices.iter().map(|v| sub.iter().map(|&i| v[i].clone()).collect()).collect(),
            dim: self.dim,
        }
    }
}

/// Orthant `R^k_{>=0}` split by a shadow into a far region and its compact complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaircaseRegion {
    /// Ambient coordinates spanning the orthant, in increasing order.
    pub coords: Vec<usize>,
    pub pieces: Vec<ShadowPiece>,
    /// `V_N` of the compact complement inside every coordinate subspace, keyed by positions into
    /// `coords`; the empty key holds the origin with volume 1.
    pub complement_volumes: BTreeMap<Vec<usize>, Rat>,
    pub newton_number: Int,
}

impl StaircaseRegion {
    /// Region of the zero-dimensional orthant.
    pub fn trivial() -> Self {
        let mut complement_volumes = BTreeMap::new();
        complement_volumes.insert(Vec::new(), Rat::one());
        StaircaseRegion { coords: Vec::new(), pieces: Vec::new(), complement_volumes, newton_number: Int::one() }
    }

    /// Region cut out by `pieces`, whose vertices live in `R^k`, `k = coords.len()`.
    pub fn from_pieces(coords: Vec<usize>, pieces: Vec<ShadowPiece>) -> Result<Self> {
        let k = coords.len();
        let mut complement_volumes = BTreeMap::new();
        for mask in 0u32..(1 << k) {
            let sub: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).collect();
            let local: Vec<ShadowPiece> = pieces.iter().filter(|p| p.lies_in(&sub)).map(|p| p.restrict(&sub)).collect();
            let vol = complement_volume(sub.len(), &local)?;
            complement_volumes.insert(sub, vol);
        }
        let mut nu = Rat::zero();
        for (sub, vol) in &complement_volumes {
            if (k - sub.len()) % 2 == 0 {
                nu += vol;
            } else {
                nu -= vol;
            }
        }
        if !nu.is_integer() {
            return Err(Error::Precondition(format!("non-integral Newton number {nu} of a region")));
        }
        Ok(StaircaseRegion { coords, pieces, complement_volumes, newton_number: nu.to_integer() })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// `V_N` of the compact complement in the whole orthant.
    pub fn complement_volume(&self) -> Rat {
        let all: Vec<usize> = (0..self.dim()).collect();
        self.complement_volumes[&all].clone()
    }
}

type Hyperplane = (IVec, Int);

fn normalize_hyperplane(mut a: IVec, mut b: Int) -> Hyperplane {
    let mut g = Int::zero();
    for c in &a {
        g = num_integer::Integer::gcd(&g, c);
    }
    for c in a.iter_mut() {
        *c /= &g;
    }
    b /= &g;
    if a.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
        a = a.into_iter().map(|c| -c).collect();
        b = -b;
    }
    (a, b)
}

/// Hyperplane through `points`, which must span an affine hyperplane together with `extra`
/// directions.
fn hyperplane_through(points: &[IVec], extra: &[IVec], k: usize) -> Option<Hyperplane> {
    let p0 = &points[0];
    let mut rows: Vec<IVec> = points[1..].iter().map(|p| crate::arith::sub(p, p0)).collect();
    rows.extend(extra.iter().cloned());
    let ns = nullspace(&rows, k);
    if ns.len() != 1 {
        return None;
    }
    let a = ns.into_iter().next().expect("one vector");
    let b = crate::arith::dot(&a, p0);
    Some(normalize_hyperplane(a, b))
}

fn side(h: &Hyperplane, x: &[Rat]) -> Rat {
    let mut s = -rat_int(&h.1);
    for (a, c) in h.0.iter().zip(x) {
        s += rat_int(a) * c;
    }
    s
}

fn scaled(points: &[RVec]) -> (Vec<IVec>, Int) {
    let mut l = Int::one();
    for p in points {
        l = num_integer::Integer::lcm(&l, &lcm_of_denominators(p));
    }
    let ints = points.iter().map(|p| p.iter().map(|c| (c * rat_int(&l)).to_integer()).collect()).collect();
    (ints, l)
}

/// Vertices of the hull of a full-dimensional rational point set.
fn hull_vertices(points: Vec<RVec>) -> Vec<RVec> {
    let uniq: Vec<RVec> = points.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    let (ints, _) = scaled(&uniq);
    let hull = full_hull(&ints);
    let mut out: Vec<RVec> = hull.vertices.iter().map(|&i| uniq[i].clone()).collect();
    out.sort();
    out
}

fn split(cell: &[RVec], h: &Hyperplane) -> Option<(Vec<RVec>, Vec<RVec>)> {
    let s: Vec<Rat> = cell.iter().map(|x| side(h, x)).collect();
    if !s.iter().any(|v| v.is_positive()) || !s.iter().any(|v| v.is_negative()) {
        return None;
    }
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for (x, v) in cell.iter().zip(&s) {
        if !v.is_negative() {
            pos.push(x.clone());
        }
        if !v.is_positive() {
            neg.push(x.clone());
        }
    }
    for (i, si) in s.iter().enumerate() {
        if !si.is_positive() {
            continue;
        }
        for (j, sj) in s.iter().enumerate() {
            if !sj.is_negative() {
                continue;
            }
            let t = si / (si - sj);
            let x: RVec = cell[i].iter().zip(&cell[j]).map(|(a, b)| a + &t * (b - a)).collect();
            pos.push(x.clone());
            neg.push(x);
        }
    }
    Some((hull_vertices(pos), hull_vertices(neg)))
}

fn cell_volume(cell: &[RVec]) -> Result<Rat> {
    let (ints, l) = scaled(cell);
    let k = cell[0].len();
    let vol = LatticePolytope::new(&ints)?.normalized_volume();
    let mut den = Int::one();
    for _ in 0..k {
        den *= &l;
    }
    Ok(Rat::new(vol, den))
}

fn centroid(cell: &[RVec]) -> RVec {
    let k = cell[0].len();
    let n = Rat::from_integer(Int::from(cell.len()));
    (0..k).map(|i| cell.iter().map(|x| &x[i]).sum::<Rat>() / &n).collect()
}

/// `V_N` of the compact complement of the far region of `R^k_{>=0}` cut out by the pieces.
/// Pieces of dimension `k` are removed from the orthant, pieces of dimension `k - 1` are walls,
/// lower-dimensional pieces are ignored.
pub fn complement_volume(k: usize, pieces: &[ShadowPiece]) -> Result<Rat> {
    if k == 0 {
        return Ok(Rat::one());
    }
    let solids: Vec<&ShadowPiece> = pieces.iter().filter(|p| p.dim == k).collect();
    let walls: Vec<&ShadowPiece> = pieces.iter().filter(|p| p.dim + 1 == k).collect();
    if solids.is_empty() && walls.is_empty() {
        return Err(Error::UnboundedComplement);
    }
    let mut top = Int::zero();
    for p in solids.iter().chain(&walls) {
        for v in &p.vertices {
            for c in v {
                if *c > top {
                    top = c.clone();
                }
            }
        }
    }
    let bound = top + Int::one();
    let mut planes: BTreeSet<Hyperplane> = BTreeSet::new();
    let solid_polys: Vec<LatticePolytope> = solids.iter().map(|p| LatticePolytope::new(&p.vertices)).collect::<Result<_>>()?;
    for poly in &solid_polys {
        for f in &poly.faces {
            if f.dim + 1 == k {
                let pts: Vec<IVec> = f.verts.iter().map(|&i| poly.vertices[i].clone()).collect();
                planes.extend(hyperplane_through(&pts, &[], k));
            }
        }
    }
    let wall_polys: Vec<LatticePolytope> = walls.iter().map(|p| LatticePolytope::new(&p.vertices)).collect::<Result<_>>()?;
    for poly in &wall_polys {
        let Some(own) = hyperplane_through(&poly.vertices, &[], k) else { continue };
        for f in &poly.faces {
            if f.dim + 2 == k {
                let pts: Vec<IVec> = f.verts.iter().map(|&i| poly.vertices[i].clone()).collect();
                planes.extend(hyperplane_through(&pts, std::slice::from_ref(&own.0), k));
            }
        }
        planes.insert(own);
    }
    let planes: Vec<Hyperplane> = planes.into_iter().collect();

    let b = rat_int(&bound);
    let mut cells: Vec<Vec<RVec>> = vec![(0u32..(1 << k))
        .map(|mask| (0..k).map(|i| if mask & (1 << i) != 0 { b.clone() } else { Rat::zero() }).collect())
        .collect()];
    for h in &planes {
        let mut next = Vec::with_capacity(cells.len());
        for c in cells {
            match split(&c, h) {
                Some((p, q)) => {
                    next.push(p);
                    next.push(q);
                }
                None => next.push(c),
            }
        }
        cells = next;
    }

    let centers: Vec<RVec> = cells.iter().map(|c| centroid(c)).collect();
    let signs: Vec<Vec<bool>> =
        centers.iter().map(|x| planes.iter().map(|h| side(h, x).is_positive()).collect()).collect();
    let index: HashMap<&Vec<bool>, usize> = signs.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let shadow: Vec<bool> = centers.iter().map(|x| solid_polys.iter().any(|p| p.contains_rat(x))).collect();
    let corner: RVec = vec![b.clone(); k];
    let mut upper = vec![false; cells.len()];
    let mut queue = VecDeque::new();
    for (i, c) in cells.iter().enumerate() {
        if !shadow[i] && c.contains(&corner) {
            upper[i] = true;
            queue.push_back(i);
        }
    }
    while let Some(i) = queue.pop_front() {
        for (hi, h) in planes.iter().enumerate() {
            let mut s = signs[i].clone();
            s[hi] = !s[hi];
            let Some(&j) = index.get(&s) else { continue };
            if upper[j] || shadow[j] {
                continue;
            }
            let (si, sj) = (side(h, &centers[i]), side(h, &centers[j]));
            let t = &si / (&si - &sj);
            let x: RVec = centers[i].iter().zip(&centers[j]).map(|(a, c)| a + &t * (c - a)).collect();
            if wall_polys.iter().any(|w| w.contains_rat(&x)) {
                continue;
            }
            upper[j] = true;
            queue.push_back(j);
        }
    }
    let mut total = Rat::zero();
    for (i, c) in cells.iter().enumerate() {
        if upper[i] {
            continue;
        }
        if c.iter().any(|x| x.iter().any(|v| *v == b)) {
            return Err(Error::UnboundedComplement);
        }
        total += cell_volume(c)?;
    }
    Ok(total)
}

/// Affine dimension of an integer point set, `None` when empty.
pub fn point_set_dim(points: &[IVec]) -> Option<usize> {
    let refs: Vec<&IVec> = points.iter().collect();
    usize::try_from(affine_rank(&refs)).ok()
}
