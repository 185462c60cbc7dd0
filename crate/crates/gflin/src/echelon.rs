use crate::Mat;

/// Row space in reduced echelon form with incremental insertion.
#[derive(Clone, Debug)]
pub struct Echelon {
    q: u32,
    cols: usize,
    rows: Vec<Mat>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(q: u32, cols: usize) -> Echelon {
        Echelon {
            q,
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce `v` against the current basis (returns the residual row).
    pub fn reduce(&self, v: &Mat) -> Mat {
        let mut w = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let f = w.get(0, p);
            if f != 0 {
                let scaled = if f == 1 { row.clone() } else { row.scale(f) };
                w = w.sub(&scaled).expect("same shape");
            }
        }
        w
    }

    /// Insert a row vector; returns true if the dimension grew.
    pub fn insert(&mut self, v: Mat) -> bool {
        debug_assert_eq!(v.cols(), self.cols);
        let mut w = self.reduce(&v);
        let Some(p) = (0..self.cols).find(|&c| w.get(0, c) != 0) else {
            return false;
        };
        let lead = w.get(0, p);
        if lead != 1 {
            let field = w.field();
            w = w.scale(field.inv(lead));
        }
        // back-substitute into earlier rows to stay fully reduced
        for i in 0..self.rows.len() {
            let f = self.rows[i].get(0, p);
            if f != 0 {
                let scaled = if f == 1 { w.clone() } else { w.scale(f) };
                self.rows[i] = self.rows[i].sub(&scaled).expect("same shape");
            }
        }
        let at = self.pivots.iter().position(|&x| x > p).unwrap_or(self.pivots.len());
        self.pivots.insert(at, p);
        self.rows.insert(at, w);
        true
    }

    pub fn contains(&self, v: &Mat) -> bool {
        self.reduce(v).is_zero()
    }

    /// Basis rows as a dim x cols matrix, pivot order.
    pub fn basis_matrix(&self) -> Mat {
        let mut out = Mat::zero(self.q, self.rows.len(), self.cols).unwrap();
        for (i, row) in self.rows.iter().enumerate() {
            for c in 0..self.cols {
                out.set(i, c, row.get(0, c));
            }
        }
        out
    }

    /// Coordinates of `v` in the basis, if it lies in the span.
    pub fn coordinates(&self, v: &Mat) -> Option<Vec<u32>> {
        let mut w = v.clone();
        let mut coords = vec![0u32; self.rows.len()];
        for (i, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            let f = w.get(0, p);
            if f != 0 {
                coords[i] = f;
                let scaled = if f == 1 { row.clone() } else { row.scale(f) };
                w = w.sub(&scaled).expect("same shape");
            }
        }
        w.is_zero().then_some(coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_and_reduce() {
        let mut e = Echelon::new(13, 3);
        assert!(e.insert(Mat::row_vector(13, &[1, 2, 3]).unwrap()));
        assert!(e.insert(Mat::row_vector(13, &[0, 1, 1]).unwrap()));
        assert!(!e.insert(Mat::row_vector(13, &[1, 3, 4]).unwrap()));
        assert_eq!(e.dim(), 2);
        let c = e
            .coordinates(&Mat::row_vector(13, &[2, 4, 6]).unwrap())
            .unwrap();
        assert_eq!(c.len(), 2);
    }
}
