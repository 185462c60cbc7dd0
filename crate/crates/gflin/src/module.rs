use crate::{Echelon, GflinError, Mat, Result};

/// A G-module: a named set of invertible matrices acting on row vectors.
#[derive(Clone, Debug)]
pub struct GModule {
    q: u32,
    dim: usize,
    names: Vec<String>,
    gens: Vec<Mat>,
}

impl GModule {
    pub fn new(names: Vec<String>, gens: Vec<Mat>) -> Result<GModule> {
        assert_eq!(names.len(), gens.len());
        let q = gens.first().map_or(2, |g| g.q());
        let dim = gens.first().map_or(0, |g| g.rows());
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(GflinError::DuplicateGenerator(n.clone()));
            }
        }
        for g in &gens {
            if g.q() != q {
                return Err(GflinError::FieldMismatch(q, g.q()));
            }
            if g.rows() != dim || g.cols() != dim {
                return Err(GflinError::NotSquare(g.rows(), g.cols()));
            }
            g.inverse()?; // every generator must be invertible
        }
        Ok(GModule { q, dim, names, gens })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn gens(&self) -> &[Mat] {
        &self.gens
    }

    pub fn gen_by_name(&self, name: &str) -> Option<&Mat> {
        self.names.iter().position(|n| n == name).map(|i| &self.gens[i])
    }

    /// Same names, dual matrices (g^{-1})^T.
    pub fn dual(&self) -> GModule {
        let gens = self
            .gens
            .iter()
            .map(|g| g.dual_gen().expect("generators are invertible"))
            .collect();
        GModule {
            q: self.q,
            dim: self.dim,
            names: self.names.clone(),
            gens,
        }
    }

    /// Module on the same space with a subset of the generators.
    pub fn restricted_to(&self, names: &[&str]) -> Result<GModule> {
        let mut gens = Vec::new();
        let mut out_names = Vec::new();
        for n in names {
            let g = self
                .gen_by_name(n)
                .ok_or_else(|| GflinError::GeneratorNames(n.to_string(), self.names.join(",")))?;
            gens.push(g.clone());
            out_names.push(n.to_string());
        }
        GModule::new(out_names, gens)
    }

    /// Action of the generators on the invariant row space spanned by `basis`.
    pub fn submodule(&self, basis: &Echelon) -> Result<GModule> {
        let b = basis.basis_matrix();
        let mut gens = Vec::new();
        for g in &self.gens {
            let img = b.mul(g)?;
            let mut rows = Vec::new();
            for r in 0..img.rows() {
                let coords = basis.coordinates(&img.extract_row(r)).ok_or_else(|| {
                    GflinError::ShapeMismatch {
                        op: "submodule",
                        left: "basis".into(),
                        right: "image escapes the span".into(),
                    }
                })?;
                rows.push(coords);
            }
            gens.push(Mat::from_rows(self.q, &rows)?);
        }
        GModule::new(self.names.clone(), gens)
    }

    /// Action on the quotient by the invariant row space spanned by `basis`.
    pub fn quotient(&self, basis: &Echelon) -> Result<GModule> {
        // complete the basis with standard vectors missing the pivots
        let pivots: Vec<usize> = basis.pivots().to_vec();
        let free: Vec<usize> = (0..self.dim).filter(|c| !pivots.contains(c)).collect();
        let k = free.len();
        // coordinates of a reduced vector on the free positions give quotient coords
        let mut gens = Vec::new();
        for g in &self.gens {
            let mut rows = Vec::new();
            for &c in &free {
                let mut e = Mat::zero(self.q, 1, self.dim)?;
                e.set(0, c, 1);
                let img = basis.reduce(&e.mul(g)?);
                rows.push(free.iter().map(|&f| img.get(0, f)).collect());
            }
            gens.push(Mat::from_rows(self.q, &rows)?);
        }
        let m = GModule::new(self.names.clone(), gens)?;
        debug_assert_eq!(m.dim(), k);
        Ok(m)
    }
}

/// Echelonized basis of the smallest generator-invariant subspace containing
/// the seed vectors. Empty seeds give the zero space.
pub fn spin(m: &GModule, seeds: &[Mat]) -> Echelon {
    let mut e = Echelon::new(m.q(), m.dim());
    let mut queue: Vec<Mat> = Vec::new();
    for s in seeds {
        debug_assert_eq!(s.cols(), m.dim());
        if e.insert(s.clone()) {
            queue.push(s.clone());
        }
    }
    while let Some(v) = queue.pop() {
        for g in m.gens() {
            let img = v.mul(g).expect("dimension match");
            let red = e.reduce(&img);
            if !red.is_zero() && e.insert(img.clone()) {
                queue.push(img);
            }
        }
    }
    e
}

/// Tensor product module; generator action is the Kronecker product.
pub fn tensor(a: &GModule, b: &GModule) -> Result<GModule> {
    if a.q() != b.q() {
        return Err(GflinError::FieldMismatch(a.q(), b.q()));
    }
    if a.names() != b.names() {
        return Err(GflinError::GeneratorNames(
            a.names().join(","),
            b.names().join(","),
        ));
    }
    let (na, nb) = (a.dim(), b.dim());
    let field = crate::FieldSpec::new(a.q())?;
    let mut gens = Vec::new();
    for (ga, gb) in a.gens().iter().zip(b.gens()) {
        let mut m = Mat::zero(a.q(), na * nb, na * nb)?;
        for i in 0..na {
            for j in 0..nb {
                for k in 0..na {
                    let aik = ga.get(i, k);
                    if aik == 0 {
                        continue;
                    }
                    for l in 0..nb {
                        let v = field.mul(aik, gb.get(j, l));
                        if v != 0 {
                            m.set(i * nb + j, k * nb + l, v);
                        }
                    }
                }
            }
        }
        gens.push(m);
    }
    GModule::new(a.names().to_vec(), gens)
}

/// k-th exterior power; the basis is the set of k-subsets of coordinates in
/// lexicographic order, and entries are k x k minors of the generator.
pub fn exterior_power(a: &GModule, k: usize) -> Result<GModule> {
    let n = a.dim();
    if k == 0 || k > n {
        return Err(GflinError::ExteriorRange { k, dim: n });
    }
    let subsets = k_subsets(n, k);
    let index: std::collections::HashMap<&[usize], usize> = subsets
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_slice(), i))
        .collect();
    let field = crate::FieldSpec::new(a.q())?;
    let mut gens = Vec::new();
    for g in a.gens() {
        let mut m = Mat::zero(a.q(), subsets.len(), subsets.len())?;
        for (ri, rs) in subsets.iter().enumerate() {
            for (ci, cs) in subsets.iter().enumerate() {
                let v = minor(g, rs, cs, &field);
                if v != 0 {
                    m.set(ri, ci, v);
                }
            }
        }
        let _ = &index;
        gens.push(m);
    }
    GModule::new(a.names().to_vec(), gens)
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic k-subset
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

fn minor(g: &Mat, rows: &[usize], cols: &[usize], field: &crate::FieldSpec) -> u32 {
    // small k: Gaussian elimination on a copy
    let k = rows.len();
    let mut a = vec![0u32; k * k];
    for (i, &r) in rows.iter().enumerate() {
        for (j, &c) in cols.iter().enumerate() {
            a[i * k + j] = g.get(r, c);
        }
    }
    let mut det = 1u32;
    for col in 0..k {
        let Some(p) = (col..k).find(|&r| a[r * k + col] != 0) else {
            return 0;
        };
        if p != col {
            for t in 0..k {
                a.swap(col * k + t, p * k + t);
            }
            det = field.neg(det);
        }
        let pivot = a[col * k + col];
        det = field.mul(det, pivot);
        let pinv = field.inv(pivot);
        for r in col + 1..k {
            let f = field.mul(a[r * k + col], pinv);
            if f != 0 {
                for t in col..k {
                    let sub = field.mul(f, a[col * k + t]);
                    a[r * k + t] = field.sub(a[r * k + t], sub);
                }
            }
        }
    }
    det
}

/// Dual module (transpose-inverse generators) as a standalone function.
pub fn dual_module(a: &GModule) -> GModule {
    a.dual()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3_perm_module(q: u32) -> GModule {
        // permutation matrices of (1 2) and (1 2 3) on 3 points
        let t = Mat::from_rows(q, &[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]).unwrap();
        let c = Mat::from_rows(q, &[vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]).unwrap();
        GModule::new(vec!["t".into(), "c".into()], vec![t, c]).unwrap()
    }

    #[test]
    fn spin_zero() {
        let m = s3_perm_module(2);
        let z = Mat::zero(2, 1, 3).unwrap();
        assert_eq!(spin(&m, &[z]).dim(), 0);
        assert_eq!(spin(&m, &[]).dim(), 0);
    }

    #[test]
    fn spin_s3_sum_vector() {
        // (1,1,0) spins to the 2-dimensional even-weight submodule over GF(2)
        let m = s3_perm_module(2);
        let v = Mat::row_vector(2, &[1, 1, 0]).unwrap();
        let e = spin(&m, &[v]);
        assert_eq!(e.dim(), 2);
        // brute force over all 8 vectors: even-weight vectors form the span
        for bits in 0..8u32 {
            let v = Mat::row_vector(2, &[bits & 1, (bits >> 1) & 1, (bits >> 2) & 1]).unwrap();
            let even = (bits & 1) + ((bits >> 1) & 1) + ((bits >> 2) & 1);
            assert_eq!(e.contains(&v), even % 2 == 0);
        }
    }

    #[test]
    fn tensor_dims() {
        let a = s3_perm_module(13);
        let b = s3_perm_module(13);
        let t = tensor(&a, &b).unwrap();
        assert_eq!(t.dim(), 9);
    }

    #[test]
    fn exterior_identity_dim() {
        let a = s3_perm_module(13);
        let e1 = exterior_power(&a, 1).unwrap();
        assert_eq!(e1.dim(), 3);
        for (g, h) in a.gens().iter().zip(e1.gens()) {
            assert_eq!(g, h);
        }
        let e2 = exterior_power(&a, 2).unwrap();
        assert_eq!(e2.dim(), 3);
        assert!(exterior_power(&a, 4).is_err());
    }

    #[test]
    fn quotient_dims() {
        let m = s3_perm_module(2);
        let v = Mat::row_vector(2, &[1, 1, 1]).unwrap();
        let e = spin(&m, &[v]);
        assert_eq!(e.dim(), 1);
        let sub = m.submodule(&e).unwrap();
        let quo = m.quotient(&e).unwrap();
        assert_eq!(sub.dim(), 1);
        assert_eq!(quo.dim(), 2);
    }
}
