//! Exact beneath-beyond convex hull of full-dimensional integer point sets, face lattices
//! and fan triangulations.

use crate::arith::{dot, Int, IVec};
use crate::linalg::{abs_det, affine_rank, orthogonal_normal, rank};
use num_traits::{Signed, Zero};
use std::collections::{BTreeSet, HashMap};

/// Facet `normal·x >= offset` with a primitive inward normal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub normal: IVec,
    pub offset: Int,
    /// Positions into the hull's vertex list.
    pub verts: Vec<usize>,
}

/// Full-dimensional hull of an integer point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hull {
    pub dim: usize,
    /// Indices into the input point list.
    pub vertices: Vec<usize>,
    pub facets: Vec<Facet>,
}

/// Non-empty face of a polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    /// Sorted positions into the vertex list.
    pub verts: Vec<usize>,
    pub dim: usize,
    /// Facets containing the face; their inward normals generate the dual cone.
    pub facets: Vec<usize>,
    /// Faces of dimension one less contained in this face.
    pub children: Vec<usize>,
}

struct Work {
    normal: IVec,
    offset: Int,
    points: BTreeSet<usize>,
}

fn independent_subset(points: &[IVec], cand: &[usize], want: usize) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for &c in cand {
        let mut trial: Vec<&IVec> = chosen.iter().map(|&i| &points[i]).collect();
        trial.push(&points[c]);
        if affine_rank(&trial) as usize == trial.len() - 1 {
            chosen.push(c);
            if chosen.len() == want {
                break;
            }
        }
    }
    chosen
}

fn oriented(points: &[IVec], through: &[usize], d: usize, csum: &[Int], cden: &Int) -> (IVec, Int) {
    let p0 = &points[through[0]];
    let diffs: Vec<IVec> = through[1..].iter().map(|&i| crate::arith::sub(&points[i], p0)).collect();
    let mut normal = orthogonal_normal(&diffs, d);
    let mut offset = dot(&normal, p0);
    if dot(&normal, csum) - cden * &offset < Int::zero() {
        normal = normal.into_iter().map(|x| -x).collect();
        offset = -offset;
    }
    (normal, offset)
}

/// Convex hull of points spanning `R^d` affinely, `d >= 1`.
pub fn full_hull(points: &[IVec]) -> Hull {
    let d = points[0].len();
    let mut seen = HashMap::new();
    let mut uniq = Vec::new();
    for (i, p) in points.iter().enumerate() {
        if seen.insert(p.clone(), i).is_none() {
            uniq.push(i);
        }
    }
    let simplex = independent_subset(points, &uniq, d + 1);
    assert_eq!(simplex.len(), d + 1, "points do not span the ambient space");
    let mut csum = vec![Int::zero(); d];
    for &i in &simplex {
        csum = crate::arith::add(&csum, &points[i]);
    }
    let cden = Int::from(d + 1);
    let mut facets: Vec<Work> = Vec::new();
    for skip in 0..=d {
        let through: Vec<usize> = simplex.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &i)| i).collect();
        let (normal, offset) = oriented(points, &through, d, &csum, &cden);
        facets.push(Work { normal, offset, points: through.into_iter().collect() });
    }
    for &p in &uniq {
        if simplex.contains(&p) {
            continue;
        }
        let sides: Vec<Int> = facets.iter().map(|f| dot(&f.normal, &points[p]) - &f.offset).collect();
        let visible: Vec<usize> = (0..facets.len()).filter(|&i| sides[i].is_negative()).collect();
        if visible.is_empty() {
            for (f, s) in facets.iter_mut().zip(&sides) {
                if s.is_zero() {
                    f.points.insert(p);
                }
            }
            continue;
        }
        let mut fresh: Vec<Work> = Vec::new();
        let mut joins: BTreeSet<usize> = BTreeSet::new();
        for &fi in &visible {
            for gi in 0..facets.len() {
                if sides[gi].is_negative() {
                    continue;
                }
                let common: Vec<usize> = facets[fi].points.intersection(&facets[gi].points).copied().collect();
                let refs: Vec<&IVec> = common.iter().map(|&i| &points[i]).collect();
                if affine_rank(&refs) != d as isize - 2 {
                    continue;
                }
                if sides[gi].is_zero() {
                    joins.insert(gi);
                    continue;
                }
                let mut through = independent_subset(points, &common, d - 1);
                through.push(p);
                let (normal, offset) = oriented(points, &through, d, &csum, &cden);
                let mut pts: BTreeSet<usize> = common.into_iter().collect();
                pts.insert(p);
                match fresh.iter_mut().find(|w| w.normal == normal && w.offset == offset) {
                    Some(w) => w.points.extend(pts),
                    None => fresh.push(Work { normal, offset, points: pts }),
                }
            }
        }
        for (gi, s) in sides.iter().enumerate() {
            if s.is_zero() {
                joins.insert(gi);
            }
        }
        let boundary: BTreeSet<usize> = facets.iter().flat_map(|f| f.points.iter().copied()).collect();
        for w in fresh.iter_mut() {
            for &q in &boundary {
                if dot(&w.normal, &points[q]) == w.offset {
                    w.points.insert(q);
                }
            }
        }
        for &gi in &joins {
            facets[gi].points.insert(p);
        }
        let mut kept: Vec<Work> = facets
            .into_iter()
            .zip(sides)
            .filter(|(_, s)| !s.is_negative())
            .map(|(f, _)| f)
            .collect();
        for w in fresh {
            match kept.iter_mut().find(|k| k.normal == w.normal && k.offset == w.offset) {
                Some(k) => k.points.extend(w.points),
                None => kept.push(w),
            }
        }
        facets = kept;
    }
    let boundary: BTreeSet<usize> = facets.iter().flat_map(|f| f.points.iter().copied()).collect();
    let vertices: Vec<usize> = boundary
        .into_iter()
        .filter(|&q| {
            let normals: Vec<IVec> = facets.iter().filter(|f| f.points.contains(&q)).map(|f| f.normal.clone()).collect();
            rank(&normals) == d
        })
        .collect();
    let pos: HashMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut out: Vec<Facet> = facets
        .into_iter()
        .map(|f| Facet {
            verts: f.points.iter().filter_map(|q| pos.get(q).copied()).collect(),
            normal: f.normal,
            offset: f.offset,
        })
        .collect();
    out.sort_by(|a, b| a.verts.cmp(&b.verts));
    Hull { dim: d, vertices, facets: out }
}

/// All non-empty faces of a polytope of dimension `dim` with the given vertex coordinates and facets.
/// The first face is the polytope itself.
pub fn face_lattice(coords: &[IVec], dim: usize, facets: &[Facet]) -> Vec<Face> {
    let all: Vec<usize> = (0..coords.len()).collect();
    let mut faces: Vec<(Vec<usize>, usize)> = vec![(all, dim)];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    index.insert(faces[0].0.clone(), 0);
    let dim_of = |vs: &[usize]| {
        let refs: Vec<&IVec> = vs.iter().map(|&i| &coords[i]).collect();
        affine_rank(&refs) as usize
    };
    let mut queue = Vec::new();
    for f in facets {
        if !index.contains_key(&f.verts) {
            index.insert(f.verts.clone(), faces.len());
            queue.push(faces.len());
            faces.push((f.verts.clone(), dim - 1));
        }
    }
    while let Some(fi) = queue.pop() {
        let cur = faces[fi].0.clone();
        for f in facets {
            let inter: Vec<usize> = cur.iter().copied().filter(|v| f.verts.binary_search(v).is_ok()).collect();
            if inter.is_empty() || inter.len() == cur.len() || index.contains_key(&inter) {
                continue;
            }
            let dm = dim_of(&inter);
            index.insert(inter.clone(), faces.len());
            queue.push(faces.len());
            faces.push((inter, dm));
        }
    }
    let mut order: Vec<usize> = (1..faces.len()).collect();
    order.sort_by(|&a, &b| faces[b].1.cmp(&faces[a].1).then_with(|| faces[a].0.cmp(&faces[b].0)));
    order.insert(0, 0);
    let sorted: Vec<(Vec<usize>, usize)> = order.iter().map(|&i| faces[i].clone()).collect();
    let mut out: Vec<Face> = sorted
        .iter()
        .map(|(vs, dm)| Face {
            verts: vs.clone(),
            dim: *dm,
            facets: if *dm == dim {
                Vec::new()
            } else {
                (0..facets.len()).filter(|&j| vs.iter().all(|v| facets[j].verts.binary_search(v).is_ok())).collect()
            },
            children: Vec::new(),
        })
        .collect();
    for i in 0..out.len() {
        let children: Vec<usize> = (0..out.len())
            .filter(|&j| {
                out[j].dim + 1 == out[i].dim && out[j].verts.iter().all(|v| out[i].verts.binary_search(v).is_ok())
            })
            .collect();
        out[i].children = children;
    }
    out
}

/// Fan triangulation of a face: simplices as vertex-position lists.
pub fn triangulate(faces: &[Face], face: usize) -> Vec<Vec<usize>> {
    let mut memo: HashMap<usize, Vec<Vec<usize>>> = HashMap::new();
    triangulate_rec(faces, face, &mut memo)
}

fn triangulate_rec(faces: &[Face], face: usize, memo: &mut HashMap<usize, Vec<Vec<usize>>>) -> Vec<Vec<usize>> {
    if let Some(t) = memo.get(&face) {
        return t.clone();
    }
    let f = &faces[face];
    let out = if f.dim == 0 {
        vec![vec![f.verts[0]]]
    } else {
        let apex = f.verts[0];
        let mut out = Vec::new();
        for &c in &f.children {
            if faces[c].verts.binary_search(&apex).is_ok() {
                continue;
            }
            for mut s in triangulate_rec(faces, c, memo) {
                s.insert(0, apex);
                out.push(s);
            }
        }
        out
    };
    memo.insert(face, out.clone());
    out
}

/// Sum of `|det|` over a triangulation of a full-dimensional polytope in `Z^d`, which is `d!·vol`.
pub fn triangulated_volume(coords: &[IVec], simplices: &[Vec<usize>]) -> Int {
    simplices
        .iter()
        .map(|s| {
            let a = &coords[s[0]];
            abs_det(s[1..].iter().map(|&i| crate::arith::sub(&coords[i], a)).collect())
        })
        .sum()
}
