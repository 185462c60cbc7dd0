//! Conversion of matrix actions to permutation actions.
//!
//! Point lists are explicit and sorted, and point indices are positions in
//! the sorted list, so the permutations produced are canonical across runs.

use crate::{Perm, PermError, Result};
use gflin::Mat;
use rustc_hash::FxHashMap;

/// Scale a vector so its first nonzero coordinate is 1.
pub fn normalize_projective(v: &mut [u8], q: u32) {
    let field = gflin::FieldSpec::new(q).expect("prime q");
    if let Some(first) = v.iter().position(|&x| x != 0) {
        let s = field.inv(v[first] as u32);
        if s != 1 {
            for x in v.iter_mut() {
                *x = field.mul(*x as u32, s) as u8;
            }
        }
    }
}

/// All q^n vectors (optionally without zero), lexicographically sorted.
pub fn all_vectors(q: u32, n: usize, include_zero: bool) -> Vec<Vec<u8>> {
    let total = (q as u64).pow(n as u32);
    let mut out = Vec::with_capacity(total as usize);
    let mut cur = vec![0u8; n];
    loop {
        if include_zero || cur.iter().any(|&x| x != 0) {
            out.push(cur.clone());
        }
        // lexicographic increment from the rightmost coordinate
        let mut i = n;
        loop {
            if i == 0 {
                out.sort();
                return out;
            }
            i -= 1;
            if cur[i] as u32 + 1 < q {
                cur[i] += 1;
                for x in cur.iter_mut().skip(i + 1) {
                    *x = 0;
                }
                break;
            }
        }
    }
}

fn apply_flat(v: &[u8], flat: &[u8], n: usize, q: u32) -> Vec<u8> {
    let mut acc = vec![0u32; n];
    for (i, &vi) in v.iter().enumerate() {
        if vi == 0 {
            continue;
        }
        let row = &flat[i * n..(i + 1) * n];
        let vi = vi as u32;
        for (j, &gij) in row.iter().enumerate() {
            acc[j] += vi * gij as u32;
        }
    }
    acc.into_iter().map(|x| (x % q) as u8).collect()
}

/// Orbit of a single vector under the row action, sorted.
pub fn vector_orbit(gens: &[Mat], seed: &[u8]) -> Result<Vec<Vec<u8>>> {
    orbit_points(gens, seed, false)
}

/// Orbit of the 1-space spanned by `seed` on normalized representatives.
pub fn projective_orbit(gens: &[Mat], seed: &[u8]) -> Result<Vec<Vec<u8>>> {
    orbit_points(gens, seed, true)
}

fn orbit_points(gens: &[Mat], seed: &[u8], projective: bool) -> Result<Vec<Vec<u8>>> {
    let Some(first) = gens.first() else {
        return Err(PermError::EmptyGenerators);
    };
    let q = first.q();
    let n = first.cols();
    if seed.len() != n {
        return Err(PermError::Action(format!(
            "seed length {} differs from dimension {n}",
            seed.len()
        )));
    }
    let flats: Vec<Vec<u8>> = gens.iter().map(Mat::to_byte_rows).collect();
    let mut start = seed.to_vec();
    if projective {
        normalize_projective(&mut start, q);
    }
    let mut seen: FxHashMap<Vec<u8>, ()> = FxHashMap::default();
    seen.insert(start.clone(), ());
    let mut queue = vec![start];
    let mut head = 0;
    while head < queue.len() {
        let v = queue[head].clone();
        head += 1;
        for flat in &flats {
            let mut img = apply_flat(&v, flat, n, q);
            if projective {
                normalize_projective(&mut img, q);
            }
            if !seen.contains_key(&img) {
                seen.insert(img.clone(), ());
                queue.push(img);
            }
        }
    }
    queue.sort();
    Ok(queue)
}

/// A fixed sorted point list with an index, ready to turn matrices into
/// permutations.
pub struct MatrixAction {
    q: u32,
    n: usize,
    projective: bool,
    points: Vec<Vec<u8>>,
    index: FxHashMap<Vec<u8>, u32>,
}

impl MatrixAction {
    pub fn new(q: u32, n: usize, points: Vec<Vec<u8>>, projective: bool) -> MatrixAction {
        let index = points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        MatrixAction {
            q,
            n,
            projective,
            points,
            index,
        }
    }

    pub fn degree(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Vec<u8>] {
        &self.points
    }

    pub fn point_index(&self, v: &[u8]) -> Option<u32> {
        if self.projective {
            let mut w = v.to_vec();
            normalize_projective(&mut w, self.q);
            self.index.get(&w).copied()
        } else {
            self.index.get(v).copied()
        }
    }

    /// Permutation induced by v -> v*g on the point list.
    pub fn perm_of(&self, g: &Mat) -> Result<Perm> {
        if g.rows() != self.n || g.cols() != self.n {
            return Err(PermError::Action(format!(
                "matrix is {}x{}, action space has dimension {}",
                g.rows(),
                g.cols(),
                self.n
            )));
        }
        let flat = g.to_byte_rows();
        let mut img = Vec::with_capacity(self.points.len());
        for p in &self.points {
            let mut y = apply_flat(p, &flat, self.n, self.q);
            if self.projective {
                normalize_projective(&mut y, self.q);
            }
            let idx = self.index.get(&y).ok_or_else(|| {
                PermError::Action("image leaves the point set: not closed under this matrix".into())
            })?;
            img.push(*idx);
        }
        Perm::from_images(img)
    }

    /// Translation permutation v -> v+w (vector actions only).
    pub fn perm_of_translation(&self, w: &[u8]) -> Result<Perm> {
        if self.projective {
            return Err(PermError::Action(
                "translations only act on plain vector point sets".into(),
            ));
        }
        let field = gflin::FieldSpec::new(self.q).expect("prime q");
        let mut img = Vec::with_capacity(self.points.len());
        for p in &self.points {
            let y: Vec<u8> = p
                .iter()
                .zip(w)
                .map(|(&a, &b)| field.add(a as u32, b as u32) as u8)
                .collect();
            let idx = self
                .index
                .get(&y)
                .ok_or_else(|| PermError::Action("translation leaves the point set".into()))?;
            img.push(*idx);
        }
        Perm::from_images(img)
    }

    /// Indices of a projective frame inside the point set: n points with
    /// independent representatives plus one whose coordinates in that basis
    /// are all nonzero. Any matrix-induced permutation fixing the frame
    /// pointwise is scalar, hence the identity permutation, which makes the
    /// frame a rigid base for BSGS construction.
    pub fn rigid_frame(&self) -> Option<Vec<u32>> {
        let mut basis_rows: Vec<Vec<u32>> = Vec::new();
        let mut picked: Vec<u32> = Vec::new();
        let mut ech = gflin::Echelon::new(self.q, self.n);
        for (i, p) in self.points.iter().enumerate() {
            let row: Vec<u32> = p.iter().map(|&x| x as u32).collect();
            let v = Mat::row_vector(self.q, &row).ok()?;
            if ech.insert(v) {
                basis_rows.push(row);
                picked.push(i as u32);
                if basis_rows.len() == self.n {
                    break;
                }
            }
        }
        if basis_rows.len() < self.n {
            return None;
        }
        let basis = Mat::from_rows(self.q, &basis_rows).ok()?;
        let binv = basis.inverse().ok()?;
        for (i, p) in self.points.iter().enumerate() {
            let row: Vec<u32> = p.iter().map(|&x| x as u32).collect();
            let v = Mat::row_vector(self.q, &row).ok()?;
            let coords = v.mul(&binv).ok()?;
            if (0..self.n).all(|c| coords.get(0, c) != 0) {
                picked.push(i as u32);
                return Some(picked);
            }
        }
        None
    }
}

/// Permutations of all generators on a shared point list.
pub fn perms_from_matrix_action(
    gens: &[Mat],
    points: Vec<Vec<u8>>,
    projective: bool,
) -> Result<(MatrixAction, Vec<Perm>)> {
    let Some(first) = gens.first() else {
        return Err(PermError::EmptyGenerators);
    };
    let action = MatrixAction::new(first.q(), first.cols(), points, projective);
    let perms = gens
        .iter()
        .map(|g| action.perm_of(g))
        .collect::<Result<Vec<_>>>()?;
    Ok((action, perms))
}

/// All 1-spaces invariant under every generator, as normalized
/// representatives. Solved by intersecting eigenspaces over all eigenvalue
/// combinations, refining one generator at a time.
pub fn joint_invariant_one_spaces(gens: &[Mat]) -> Result<Vec<Vec<u8>>> {
    let Some(first) = gens.first() else {
        return Err(PermError::EmptyGenerators);
    };
    let q = first.q();
    let n = first.rows();
    let field = gflin::FieldSpec::new(q).expect("prime q");
    // spaces as echelonized bases; start with the full space
    let mut spaces: Vec<Mat> = vec![Mat::identity(q, n).map_err(|e| PermError::Action(e.to_string()))?];
    for g in gens {
        let mut next = Vec::new();
        for space in &spaces {
            for lam in 1..q {
                // rows v in span(space) with v g = lam v: solve on coordinates
                // x (space g - lam space) = 0 for x in the coordinate space
                let shifted = {
                    let sg = space.mul(g).map_err(|e| PermError::Action(e.to_string()))?;
                    let scaled = space.scale(lam);
                    sg.sub(&scaled).map_err(|e| PermError::Action(e.to_string()))?
                };
                for x in shifted.left_nullspace() {
                    let v = x.mul(space).map_err(|e| PermError::Action(e.to_string()))?;
                    if !v.is_zero() {
                        next.push(join_span(&v, q));
                    }
                }
                let _ = &field;
            }
        }
        // merge vectors with equal span into eigen-subspaces per generator:
        // collect them as independent spaces (they are distinct eigenvalue
        // spaces, already disjoint except at zero)
        spaces = merge_spans(next, q, n);
        if spaces.is_empty() {
            return Ok(Vec::new());
        }
    }
    // after refining against all generators, every space consists of common
    // eigenvectors; report only 1-dimensional spaces (normalized)
    let mut out = Vec::new();
    for s in &spaces {
        if s.rows() == 1 {
            let mut v: Vec<u8> = (0..n).map(|c| s.get(0, c) as u8).collect();
            normalize_projective(&mut v, q);
            if !out.contains(&v) {
                out.push(v);
            }
        }
    }
    out.sort();
    Ok(out)
}

fn join_span(v: &Mat, q: u32) -> Mat {
    let mut e = gflin::Echelon::new(q, v.cols());
    e.insert(v.clone());
    e.basis_matrix()
}

fn merge_spans(vs: Vec<Mat>, q: u32, n: usize) -> Vec<Mat> {
    // group vectors by identical normalized span (all inputs are single rows)
    let mut out: Vec<Mat> = Vec::new();
    for v in vs {
        let mut e = gflin::Echelon::new(q, n);
        for r in 0..v.rows() {
            e.insert(v.extract_row(r));
        }
        let b = e.basis_matrix();
        if !out.contains(&b) {
            out.push(b);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_vectors_gf2() {
        let pts = all_vectors(2, 3, true);
        assert_eq!(pts.len(), 8);
        let nz = all_vectors(2, 3, false);
        assert_eq!(nz.len(), 7);
    }

    #[test]
    fn gl2_gf2_on_nonzero_vectors() {
        // GL_2(2) ~ S_3 acting on the 3 nonzero vectors
        let a = Mat::from_rows(2, &[vec![0, 1], vec![1, 0]]).unwrap();
        let b = Mat::from_rows(2, &[vec![1, 1], vec![0, 1]]).unwrap();
        let pts = all_vectors(2, 2, false);
        let (_, perms) = perms_from_matrix_action(&[a, b], pts, false).unwrap();
        let bs = crate::schreier_sims(&perms, &crate::BsgsOptions::default()).unwrap();
        assert_eq!(bs.order(), 6);
    }

    #[test]
    fn projective_orbit_gf13() {
        // scalar matrices act trivially on 1-spaces
        let s = Mat::identity(13, 3).unwrap().scale(4);
        let orb = projective_orbit(&[s], &[1, 0, 0]).unwrap();
        assert_eq!(orb.len(), 1);
    }

    #[test]
    fn rigid_frame_exists_for_full_projective_space() {
        let a = Mat::from_rows(3, &[vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let b = Mat::from_rows(3, &[vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]).unwrap();
        // orbit of <e1> under <a, b> covers enough of PG(2, 3)
        let orb = projective_orbit(&[a.clone(), b.clone()], &[1, 0, 0]).unwrap();
        let action = MatrixAction::new(3, 3, orb, true);
        let frame = action.rigid_frame();
        assert!(frame.is_some());
        assert_eq!(frame.unwrap().len(), 4);
    }

    #[test]
    fn joint_one_spaces_diagonal() {
        let a = Mat::from_rows(13, &[vec![2, 0], vec![0, 3]]).unwrap();
        let b = Mat::from_rows(13, &[vec![5, 0], vec![0, 5]]).unwrap();
        let spaces = joint_invariant_one_spaces(&[a, b]).unwrap();
        assert_eq!(spaces, vec![vec![0, 1], vec![1, 0]]);
    }
}
