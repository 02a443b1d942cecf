use num_rational::Rational64;

/// Lower-triangular `T` linking A-coefficients to B-coefficients, `T a = b`:
/// `1/2` on the diagonal, `(-1)^{l-k}` at row `l`, column `k < l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularT {
    n: usize,
    entries: Vec<Vec<Rational64>>,
}

pub fn t_matrix(n: usize) -> TriangularT {
    let entries = (0..n)
        .map(|l| {
            (0..n)
                .map(|k| {
                    if k > l {
                        Rational64::from_integer(0)
                    } else if k == l {
                        Rational64::new(1, 2)
                    } else if (l - k) % 2 == 0 {
                        Rational64::from_integer(1)
                    } else {
                        Rational64::from_integer(-1)
                    }
                })
                .collect()
        })
        .collect();
    TriangularT { n, entries }
}

impl TriangularT {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<Rational64>] {
        &self.entries
    }

    fn get_f64(&self, l: usize, k: usize) -> f64 {
        let v = self.entries[l][k];
        *v.numer() as f64 / *v.denom() as f64
    }

    /// `T a`.
    pub fn apply(&self, a: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|l| (0..=l).map(|k| self.get_f64(l, k) * a[k]).sum())
            .collect()
    }

    /// Forward substitution for `T a = b`.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let mut a = vec![0.0; self.n];
        for l in 0..self.n {
            let partial: f64 = (0..l).map(|k| self.get_f64(l, k) * a[k]).sum();
            a[l] = (b[l] - partial) / self.get_f64(l, l);
        }
        a
    }
}

/// Integer matrix `S` of the weak form: `-1` on odd diagonal positions, `3` on even
/// ones, `2(-1)^l` off the diagonal (indices from 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixS {
    n: usize,
    entries: Vec<Vec<i64>>,
}

pub fn s_matrix(n: usize) -> MatrixS {
    let entries = (1..=n)
        .map(|k| {
            (1..=n)
                .map(|l| match (k == l, l % 2 == 0) {
                    (true, false) => -1,
                    (true, true) => 3,
                    (false, true) => 2,
                    (false, false) => -2,
                })
                .collect()
        })
        .collect();
    MatrixS { n, entries }
}

impl MatrixS {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// `S v`.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        self.entries
            .iter()
            .map(|row| row.iter().zip(v).map(|(&s, x)| s as f64 * x).sum())
            .collect()
    }
}
