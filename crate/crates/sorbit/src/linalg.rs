//! Exact linear algebra: small integer matrices for group actions, and
//! rational column spaces for the graded computations.
//!
//! Rank is computed by fraction-free (Bareiss) elimination over big integers
//! after clearing denominators, which keeps intermediate entries as single
//! exact divisions instead of accumulating rational towers. Span membership
//! and coordinate solves use plain rational elimination; both routes are
//! exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rat::Rat;

/// Dense square integer matrix, row major. Used for the Weyl action on
/// simple-root coordinates and for the degree-m representation matrices.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        IntMatrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        IntMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.n + c] = v;
    }

    pub fn is_identity(&self) -> bool {
        *self == IntMatrix::identity(self.n)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = IntMatrix {
            n,
            data: vec![0; n * n],
        };
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..n {
                    out.data[r * n + c] += a * other.get(k, c);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let n = self.n;
        let mut out = IntMatrix {
            n,
            data: vec![0; n * n],
        };
        for r in 0..n {
            for c in 0..n {
                out.data[c * n + r] = self.get(r, c);
            }
        }
        out
    }

    /// Matrix times integer column vector.
    pub fn apply_int(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|r| (0..self.n).map(|c| self.get(r, c) * v[c]).sum())
            .collect()
    }

    /// Matrix times rational column vector.
    pub fn apply_rat(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|r| {
                let mut acc = Rat::zero();
                for c in 0..self.n {
                    let a = self.get(r, c);
                    if a != 0 {
                        acc += &v[c] * crate::rat::rat_int(a);
                    }
                }
                acc
            })
            .collect()
    }

    /// Smallest k >= 1 with self^k = 1, or None if k exceeds `limit`.
    pub fn multiplicative_order(&self, limit: usize) -> Option<usize> {
        let mut acc = self.clone();
        for k in 1..=limit {
            if acc.is_identity() {
                return Some(k);
            }
            acc = acc.mul(self);
        }
        None
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|r| self.data[r * self.n..(r + 1) * self.n].to_vec())
            .collect()
    }
}

/// Scales a rational vector to coprime integers (sign preserved).
fn clear_denominators(v: &[Rat]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let scaled: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut gcd = BigInt::zero();
    for x in &scaled {
        gcd = gcd.gcd(x);
    }
    if gcd.is_zero() || gcd.is_one() {
        scaled
    } else {
        scaled.into_iter().map(|x| x / &gcd).collect()
    }
}

/// Rank of the column space, by Bareiss fraction-free elimination.
pub fn rank(cols: &[Vec<Rat>]) -> usize {
    if cols.is_empty() {
        return 0;
    }
    // Work on rows = input columns; rank is transpose-invariant.
    let mut rows: Vec<Vec<BigInt>> = cols.iter().map(|c| clear_denominators(c)).collect();
    let nrows = rows.len();
    let ncols = rows[0].len();
    let mut r = 0;
    let mut prev = BigInt::one();
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let num = &rows[r][c] * &rows[i][j] - &rows[i][c] * &rows[r][j];
                debug_assert!((&num % &prev).is_zero());
                rows[i][j] = num / &prev;
            }
            rows[i][c] = BigInt::zero();
        }
        prev = rows[r][c].clone();
        r += 1;
    }
    r
}

/// Incrementally maintained reduced column echelon form of a span.
///
/// Pivot of a column = its first nonzero row; stored columns are normalized
/// to pivot 1 and mutually reduced, so the final column set is the canonical
/// reduced basis of the span (sorted by pivot row).
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    cols: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon {
            dim,
            cols: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.cols.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Residual of `v` after eliminating all stored pivots.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.dim);
        let mut v = v.to_vec();
        for (col, &p) in self.cols.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for (x, c) in v.iter_mut().zip(col) {
                    *x -= &f * c;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Inserts `v` into the span. Returns true if the rank grew.
    pub fn insert(&mut self, v: &[Rat]) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let lead = v[p].clone();
        for x in v.iter_mut() {
            *x /= &lead;
        }
        // keep previously stored columns reduced against the new pivot
        for col in self.cols.iter_mut() {
            if !col[p].is_zero() {
                let f = col[p].clone();
                for (x, nv) in col.iter_mut().zip(&v) {
                    *x -= &f * nv;
                }
            }
        }
        self.cols.push(v);
        self.pivots.push(p);
        true
    }

    /// Canonical reduced basis of the span, sorted by pivot row.
    pub fn into_basis(mut self) -> Vec<Vec<Rat>> {
        let mut order: Vec<usize> = (0..self.cols.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        order
            .into_iter()
            .map(|i| std::mem::take(&mut self.cols[i]))
            .collect()
    }
}

/// Canonical reduced basis of the span of `vectors`.
pub fn reduced_basis(dim: usize, vectors: impl IntoIterator<Item = Vec<Rat>>) -> Vec<Vec<Rat>> {
    let mut ech = Echelon::new(dim);
    for v in vectors {
        ech.insert(&v);
    }
    ech.into_basis()
}

/// Expresses each target as a linear combination of `basis` columns.
/// Returns None if any target is outside the span.
pub fn solve_many(basis: &[Vec<Rat>], targets: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    if basis.is_empty() {
        return targets
            .iter()
            .map(|t| t.iter().all(|x| x.is_zero()).then(Vec::new))
            .collect();
    }
    let dim = basis[0].len();
    let k = basis.len();
    let t = targets.len();
    // augmented rows: [basis columns | targets] laid out as dim rows
    let mut rows: Vec<Vec<Rat>> = (0..dim)
        .map(|r| {
            basis
                .iter()
                .map(|c| c[r].clone())
                .chain(targets.iter().map(|c| c[r].clone()))
                .collect()
        })
        .collect();
    let mut pivot_rows = Vec::with_capacity(k);
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..dim).find(|&i| !rows[i][c].is_zero()) else {
            // basis columns are expected independent; bail out defensively
            return None;
        };
        rows.swap(r, p);
        let lead = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x /= &lead;
        }
        for i in 0..dim {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..k + t {
                    let sub = &f * &rows[r][j];
                    rows[i][j] -= sub;
                }
            }
        }
        pivot_rows.push(r);
        r += 1;
    }
    // rows beyond the pivots must now be zero in every target column
    for row in rows.iter().skip(k) {
        if row[k..].iter().any(|x| !x.is_zero()) {
            return None;
        }
    }
    Some(
        (0..t)
            .map(|j| (0..k).map(|c| rows[c][k + j].clone()).collect())
            .collect(),
    )
}

/// True if `v` lies in the span of `basis`.
pub fn in_span(basis: &[Vec<Rat>], v: &[Rat]) -> bool {
    let mut ech = Echelon::new(v.len());
    for b in basis {
        ech.insert(b);
    }
    ech.contains(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn int_matrix_basics() {
        let m = IntMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]);
        assert!(m.mul(&m).is_identity());
        assert_eq!(m.apply_int(&[3, 5]), vec![5, 3]);
        assert_eq!(m.multiplicative_order(10), Some(2));
    }

    #[test]
    fn rank_matches_rational_elimination() {
        let cols = vec![v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[0, 1, 1])];
        assert_eq!(rank(&cols), 2);
        let mut ech = Echelon::new(3);
        let mut r = 0;
        for c in &cols {
            if ech.insert(c) {
                r += 1;
            }
        }
        assert_eq!(r, 2);
    }

    #[test]
    fn rank_with_fractions() {
        let cols = vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(1, 4), rat(1, 1)],
            vec![rat(3, 4), rat(4, 3)],
        ];
        // col2 = col0 + col1, col1 independent of col0
        assert_eq!(rank(&cols), 2);
        // proportional columns collapse
        let parallel = vec![vec![rat(1, 2), rat(1, 3)], vec![rat(3, 2), rat(1, 1)]];
        assert_eq!(rank(&parallel), 1);
    }

    #[test]
    fn solve_recovers_coefficients() {
        let basis = vec![v(&[1, 0, 2]), v(&[0, 1, 1])];
        let target = vec![rat(3, 1), rat(-1, 1), rat(5, 1)];
        let sol = solve_many(&basis, std::slice::from_ref(&target)).unwrap();
        assert_eq!(sol[0], vec![rat(3, 1), rat(-1, 1)]);
        assert!(in_span(&basis, &target));
        assert!(!in_span(&basis, &v(&[0, 0, 1])));
        assert!(solve_many(&basis, &[v(&[0, 0, 1])]).is_none());
    }

    #[test]
    fn reduced_basis_is_canonical() {
        let a = reduced_basis(3, vec![v(&[2, 2, 0]), v(&[0, 1, 1])]);
        let b = reduced_basis(3, vec![v(&[0, 3, 3]), v(&[1, 1, 0]), v(&[1, 4, 3])]);
        assert_eq!(a, b);
    }
}
