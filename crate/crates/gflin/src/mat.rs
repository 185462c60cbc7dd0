use crate::field::FieldSpec;
use crate::{GflinError, Result};

/// Dense matrix over GF(q) with entries acting on row vectors (v -> v*g).
///
/// GF(2) rows are packed 64 entries to a word; other prime fields keep one
/// residue per byte. The storage split is invisible outside this module.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Storage,
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Storage {
    /// words_per_row, then rows*words_per_row packed words
    Bits(usize, Vec<u64>),
    Bytes(Vec<u8>),
}

impl Mat {
    pub fn zero(q: u32, rows: usize, cols: usize) -> Result<Mat> {
        let field = FieldSpec::new(q)?;
        let data = if q == 2 {
            let wpr = cols.div_ceil(64);
            Storage::Bits(wpr, vec![0u64; rows * wpr])
        } else {
            Storage::Bytes(vec![0u8; rows * cols])
        };
        Ok(Mat {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn identity(q: u32, n: usize) -> Result<Mat> {
        let mut m = Mat::zero(q, n, n)?;
        for i in 0..n {
            m.set(i, i, 1);
        }
        Ok(m)
    }

    pub fn from_rows(q: u32, rows: &[Vec<u32>]) -> Result<Mat> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Mat::zero(q, r, c)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(GflinError::ShapeMismatch {
                    op: "from_rows",
                    left: format!("{c} cols"),
                    right: format!("{} cols in row {i}", row.len()),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= q {
                    return Err(GflinError::EntryRange(v, q));
                }
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn row_vector(q: u32, entries: &[u32]) -> Result<Mat> {
        Mat::from_rows(q, &[entries.to_vec()])
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        match &self.data {
            Storage::Bits(wpr, w) => ((w[r * wpr + c / 64] >> (c % 64)) & 1) as u32,
            Storage::Bytes(b) => b[r * self.cols + c] as u32,
        }
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        debug_assert!(v < self.field.q());
        match &mut self.data {
            Storage::Bits(wpr, w) => {
                let word = &mut w[r * *wpr + c / 64];
                if v & 1 == 1 {
                    *word |= 1u64 << (c % 64);
                } else {
                    *word &= !(1u64 << (c % 64));
                }
            }
            Storage::Bytes(b) => b[r * self.cols + c] = v as u8,
        }
    }

    pub fn row_entries(&self, r: usize) -> Vec<u32> {
        (0..self.cols).map(|c| self.get(r, c)).collect()
    }

    /// Row-major entries as bytes, independent of the internal layout.
    pub fn to_byte_rows(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.rows * self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.push(self.get(r, c) as u8);
            }
        }
        out
    }

    pub fn extract_row(&self, r: usize) -> Mat {
        let mut out = Mat::zero(self.q(), 1, self.cols).unwrap();
        match (&self.data, &mut out.data) {
            (Storage::Bits(wpr, w), Storage::Bits(_, ow)) => {
                ow.copy_from_slice(&w[r * wpr..(r + 1) * wpr]);
            }
            (Storage::Bytes(b), Storage::Bytes(ob)) => {
                ob.copy_from_slice(&b[r * self.cols..(r + 1) * self.cols]);
            }
            _ => unreachable!(),
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        match &self.data {
            Storage::Bits(_, w) => w.iter().all(|&x| x == 0),
            Storage::Bytes(b) => b.iter().all(|&x| x == 0),
        }
    }

    pub fn is_identity(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) != u32::from(r == c) {
                    return false;
                }
            }
        }
        true
    }

    fn check_field(&self, other: &Mat) -> Result<()> {
        if self.q() != other.q() {
            return Err(GflinError::FieldMismatch(self.q(), other.q()));
        }
        Ok(())
    }

    /// Exact product mod q; dimensions must agree.
    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(GflinError::ShapeMismatch {
                op: "mul",
                left: format!("{}x{}", self.rows, self.cols),
                right: format!("{}x{}", other.rows, other.cols),
            });
        }
        let mut out = Mat::zero(self.q(), self.rows, other.cols)?;
        match (&self.data, &other.data, &mut out.data) {
            (Storage::Bits(awpr, aw), Storage::Bits(bwpr, bw), Storage::Bits(owpr, ow)) => {
                // xor row k of B into row i of C whenever A[i,k] is set
                for i in 0..self.rows {
                    let arow = &aw[i * awpr..(i + 1) * awpr];
                    let orow = i * *owpr;
                    for (kw, &word) in arow.iter().enumerate() {
                        let mut bits = word;
                        while bits != 0 {
                            let k = kw * 64 + bits.trailing_zeros() as usize;
                            bits &= bits - 1;
                            let brow = k * bwpr;
                            for t in 0..*bwpr {
                                ow[orow + t] ^= bw[brow + t];
                            }
                        }
                    }
                }
            }
            (Storage::Bytes(ab), Storage::Bytes(bb), Storage::Bytes(ob)) => {
                let q = self.q() as u32;
                let n = other.cols;
                let mut acc = vec![0u32; n];
                for i in 0..self.rows {
                    acc.iter_mut().for_each(|x| *x = 0);
                    for k in 0..self.cols {
                        let a = ab[i * self.cols + k] as u32;
                        if a == 0 {
                            continue;
                        }
                        let brow = &bb[k * n..(k + 1) * n];
                        for (t, &b) in brow.iter().enumerate() {
                            acc[t] += a * b as u32;
                        }
                        // u32 accumulation is safe: entries < 2^7, products < 2^14,
                        // cols < 2^17 in this workspace; reduce lazily per 2^15 adds
                        if k % (1 << 15) == (1 << 15) - 1 {
                            acc.iter_mut().for_each(|x| *x %= q);
                        }
                    }
                    let orow = &mut ob[i * n..(i + 1) * n];
                    for (t, &v) in acc.iter().enumerate() {
                        orow[t] = (v % q) as u8;
                    }
                }
            }
            _ => unreachable!(),
        }
        Ok(out)
    }

    pub fn add(&self, other: &Mat) -> Result<Mat> {
        self.entrywise(other, "add", |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat> {
        self.entrywise(other, "sub", |f, a, b| f.sub(a, b))
    }

    fn entrywise(
        &self,
        other: &Mat,
        op: &'static str,
        f: impl Fn(&FieldSpec, u32, u32) -> u32,
    ) -> Result<Mat> {
        self.check_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(GflinError::ShapeMismatch {
                op,
                left: format!("{}x{}", self.rows, self.cols),
                right: format!("{}x{}", other.rows, other.cols),
            });
        }
        let mut out = Mat::zero(self.q(), self.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, f(&self.field, self.get(r, c), other.get(r, c)));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: u32) -> Mat {
        let mut out = Mat::zero(self.q(), self.rows, self.cols).unwrap();
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.field.mul(self.get(r, c), s));
            }
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zero(self.q(), self.cols, self.rows).unwrap();
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    /// Gauss-Jordan inverse; errors on non-square or singular input.
    pub fn inverse(&self) -> Result<Mat> {
        if self.rows != self.cols {
            return Err(GflinError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let q = self.q();
        let mut a = self.clone();
        let mut inv = Mat::identity(q, n)?;
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| a.get(r, col) != 0)
                .ok_or(GflinError::Singular)?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let s = self.field.inv(a.get(col, col));
            if s != 1 {
                a.scale_row(col, s);
                inv.scale_row(col, s);
            }
            for r in 0..n {
                if r != col {
                    let f = a.get(r, col);
                    if f != 0 {
                        a.row_subtract(r, col, f);
                        inv.row_subtract(r, col, f);
                    }
                }
            }
        }
        Ok(inv)
    }

    /// The dualizing map g -> (g^{-1})^T.
    pub fn dual_gen(&self) -> Result<Mat> {
        Ok(self.inverse()?.transpose())
    }

    pub fn pow(&self, mut e: u64) -> Result<Mat> {
        if self.rows != self.cols {
            return Err(GflinError::NotSquare(self.rows, self.cols));
        }
        let mut base = self.clone();
        let mut acc = Mat::identity(self.q(), self.rows)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Multiplicative order, or None past `cap`.
    pub fn order(&self, cap: u64) -> Option<u64> {
        let mut x = self.clone();
        for k in 1..=cap {
            if x.is_identity() {
                return Some(k);
            }
            x = x.mul(self).ok()?;
        }
        None
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        match &mut self.data {
            Storage::Bits(wpr, w) => {
                for t in 0..*wpr {
                    w.swap(i * *wpr + t, j * *wpr + t);
                }
            }
            Storage::Bytes(b) => {
                for t in 0..self.cols {
                    b.swap(i * self.cols + t, j * self.cols + t);
                }
            }
        }
    }

    pub fn scale_row(&mut self, r: usize, s: u32) {
        if self.q() == 2 {
            return;
        }
        for c in 0..self.cols {
            let v = self.field.mul(self.get(r, c), s);
            self.set(r, c, v);
        }
    }

    /// row r -= f * row src
    pub fn row_subtract(&mut self, r: usize, src: usize, f: u32) {
        match &mut self.data {
            Storage::Bits(wpr, w) => {
                debug_assert!(f == 1);
                let (lo, hi) = (r.min(src), r.max(src));
                let (a, b) = w.split_at_mut(hi * *wpr);
                let (dst, other) = if r < src {
                    (&mut a[lo * *wpr..(lo + 1) * *wpr], &b[..*wpr])
                } else {
                    let s = &a[lo * *wpr..(lo + 1) * *wpr];
                    (&mut b[..*wpr], s)
                };
                // any of the two orders: xor is symmetric
                for t in 0..dst.len() {
                    dst[t] ^= other[t];
                }
            }
            Storage::Bytes(b) => {
                let q = self.field.q();
                for c in 0..self.cols {
                    let sub = (f as u64 * b[src * self.cols + c] as u64 % q as u64) as u32;
                    let cur = b[r * self.cols + c] as u32;
                    b[r * self.cols + c] = ((cur + q - sub) % q) as u8;
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        let mut e = crate::Echelon::new(self.q(), self.cols);
        for r in 0..self.rows {
            e.insert(self.extract_row(r));
        }
        e.dim()
    }

    /// Basis of the right nullspace {v row vector : v * self^T = 0}? No:
    /// returns basis rows v with v * self = 0 (left nullspace of columns,
    /// i.e. kernel of the row action).
    pub fn left_nullspace(&self) -> Vec<Mat> {
        // reduce self^T and track combinations: solve v * M = 0
        let n = self.rows;
        let q = self.q();
        let mut work = self.clone();
        let mut track = Mat::identity(q, n).unwrap();
        let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
        let mut r = 0usize;
        for c in 0..self.cols {
            if let Some(p) = (r..n).find(|&i| work.get(i, c) != 0) {
                work.swap_rows(r, p);
                track.swap_rows(r, p);
                let s = self.field.inv(work.get(r, c));
                if s != 1 {
                    work.scale_row(r, s);
                    track.scale_row(r, s);
                }
                for i in 0..n {
                    if i != r {
                        let f = work.get(i, c);
                        if f != 0 {
                            work.row_subtract(i, r, f);
                            track.row_subtract(i, r, f);
                        }
                    }
                }
                pivots.push((r, c));
                r += 1;
                if r == n {
                    break;
                }
            }
        }
        (r..n).map(|i| track.extract_row(i)).collect()
    }

    /// Stack rows of `self` above rows of `other`.
    pub fn vstack(&self, other: &Mat) -> Result<Mat> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(GflinError::ShapeMismatch {
                op: "vstack",
                left: format!("{} cols", self.cols),
                right: format!("{} cols", other.cols),
            });
        }
        let mut out = Mat::zero(self.q(), self.rows + other.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
        }
        for r in 0..other.rows {
            for c in 0..self.cols {
                out.set(self.rows + r, c, other.get(r, c));
            }
        }
        Ok(out)
    }
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat GF({}) {}x{}", self.q(), self.rows, self.cols)?;
        for r in 0..self.rows.min(32) {
            let row: Vec<String> = (0..self.cols.min(64))
                .map(|c| self.get(r, c).to_string())
                .collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_mul() {
        let i = Mat::identity(2, 10).unwrap();
        let m = Mat::from_rows(2, &vec![vec![1u32; 10]; 10]).unwrap();
        assert_eq!(i.mul(&m).unwrap(), m);
    }

    #[test]
    fn inverse_small_gf13() {
        let m = Mat::from_rows(13, &[vec![2]]).unwrap();
        assert_eq!(m.inverse().unwrap().get(0, 0), 7);
    }

    #[test]
    fn singular_detected() {
        let m = Mat::from_rows(13, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(matches!(m.inverse(), Err(GflinError::Singular)));
    }

    #[test]
    fn shape_error() {
        let a = Mat::zero(2, 2, 3).unwrap();
        let b = Mat::zero(2, 2, 3).unwrap();
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn dual_is_involution() {
        let g = Mat::from_rows(13, &[vec![1, 2, 0], vec![0, 1, 5], vec![1, 0, 1]]).unwrap();
        let d = g.dual_gen().unwrap();
        assert_eq!(d.dual_gen().unwrap(), g);
    }

    #[test]
    fn left_nullspace_rank() {
        let m = Mat::from_rows(13, &[vec![1, 2], vec![2, 4], vec![0, 1]]).unwrap();
        let ns = m.left_nullspace();
        assert_eq!(ns.len(), 1);
        for v in ns {
            assert!(v.mul(&m).unwrap().is_zero());
        }
    }
}
