//! Dense matrices over arbitrary-precision integers, Smith normal form,
//! and the lattice primitives (kernels, column spans, exact solving) that
//! the rest of the crate is built on.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Dense row-major matrix over `BigInt`.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl std::fmt::Debug for IntMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = IntMat::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(*v);
            }
        }
        m
    }

    /// Build from columns, each of length `rows`.
    pub fn from_cols(rows: usize, cols: Vec<Vec<BigInt>>) -> Self {
        let mut m = IntMat::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn diag(entries: &[i64]) -> Self {
        let n = entries.len();
        let mut m = IntMat::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = BigInt::from(*e);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn set_col(&mut self, j: usize, v: &[BigInt]) {
        assert_eq!(v.len(), self.rows);
        for i in 0..self.rows {
            self[(i, j)] = v[i].clone();
        }
    }

    pub fn transpose(&self) -> IntMat {
        let mut m = IntMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut m = IntMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let p = a * b;
                        m[(i, j)] += p;
                    }
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "shape mismatch in mul_vec");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn add(&self, other: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for (a, b) in m.data.iter_mut().zip(other.data.iter()) {
            *a += b;
        }
        m
    }

    pub fn sub(&self, other: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for (a, b) in m.data.iter_mut().zip(other.data.iter()) {
            *a -= b;
        }
        m
    }

    pub fn neg(&self) -> IntMat {
        let mut m = self.clone();
        for a in m.data.iter_mut() {
            *a = -a.clone();
        }
        m
    }

    pub fn scale(&self, k: &BigInt) -> IntMat {
        let mut m = self.clone();
        for a in m.data.iter_mut() {
            *a *= k;
        }
        m
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.rows, other.rows);
        let mut m = IntMat::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.cols);
        let mut m = IntMat::zeros(self.rows + other.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..self.cols {
                m[(self.rows + i, j)] = other[(i, j)].clone();
            }
        }
        m
    }

    pub fn submatrix_cols(&self, from: usize, to: usize) -> IntMat {
        assert!(from <= to && to <= self.cols);
        let mut m = IntMat::zeros(self.rows, to - from);
        for i in 0..self.rows {
            for j in from..to {
                m[(i, j - from)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn submatrix_rows(&self, from: usize, to: usize) -> IntMat {
        assert!(from <= to && to <= self.rows);
        let mut m = IntMat::zeros(to - from, self.cols);
        for i in from..to {
            for j in 0..self.cols {
                m[(i - from, j)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Block diagonal sum.
    pub fn block_diag(blocks: &[&IntMat]) -> IntMat {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = IntMat::zeros(rows, cols);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m[(ro + i, co + j)] = b[(i, j)].clone();
                }
            }
            ro += b.rows;
            co += b.cols;
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -self[(a, j)].clone();
            self[(a, j)] = v;
        }
    }

    /// row[a] += k * row[b]
    fn add_row(&mut self, a: usize, b: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(b, j)] * k;
            self[(a, j)] += v;
        }
    }

    /// col[a] += k * col[b]
    fn add_col(&mut self, a: usize, b: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, b)] * k;
            self[(i, a)] += v;
        }
    }
}

/// Smith normal form `S = U * M * V` with `U`, `V` unimodular and their
/// inverses, `S` diagonal with non-negative entries in a divisibility chain.
#[derive(Clone, Debug)]
pub struct Snf {
    pub s: IntMat,
    pub u: IntMat,
    pub u_inv: IntMat,
    pub v: IntMat,
    pub v_inv: IntMat,
    pub rank: usize,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.s.rows().min(self.s.cols());
        (0..n).map(|i| self.s[(i, i)].clone()).collect()
    }
}

/// Compute the Smith normal form of `m`.
pub fn smith_normal_form(m: &IntMat) -> Snf {
    let mut s = m.clone();
    let (rows, cols) = (s.rows, s.cols);
    let mut u = IntMat::identity(rows);
    let mut u_inv = IntMat::identity(rows);
    let mut v = IntMat::identity(cols);
    let mut v_inv = IntMat::identity(cols);

    // Row op E on S gives S' = (E U) M V; U_inv picks up E^{-1} on the right.
    macro_rules! rswap {
        ($a:expr, $b:expr) => {{
            s.swap_rows($a, $b);
            u.swap_rows($a, $b);
            u_inv.swap_cols($a, $b);
        }};
    }
    macro_rules! cswap {
        ($a:expr, $b:expr) => {{
            s.swap_cols($a, $b);
            v.swap_cols($a, $b);
            v_inv.swap_rows($a, $b);
        }};
    }
    macro_rules! radd {
        ($a:expr, $b:expr, $k:expr) => {{
            let k = $k;
            s.add_row($a, $b, &k);
            u.add_row($a, $b, &k);
            u_inv.add_col($b, $a, &(-&k));
        }};
    }
    macro_rules! cadd {
        ($a:expr, $b:expr, $k:expr) => {{
            let k = $k;
            s.add_col($a, $b, &k);
            v.add_col($a, $b, &k);
            v_inv.add_row($b, $a, &(-&k));
        }};
    }

    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        // Pick the nonzero entry of smallest magnitude in the trailing block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !s[(i, j)].is_zero()
                    && pivot.is_none_or(|(pi, pj)| s[(i, j)].abs() < s[(pi, pj)].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        rswap!(t, pi);
        cswap!(t, pj);

        loop {
            // Reduce column entries below the pivot.
            let mut clean = true;
            for i in t + 1..rows {
                if !s[(i, t)].is_zero() {
                    let q = div_round(&s[(i, t)], &s[(t, t)]);
                    radd!(i, t, -q);
                    if !s[(i, t)].is_zero() {
                        // Remainder is strictly smaller: promote it to pivot.
                        rswap!(t, i);
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !s[(t, j)].is_zero() {
                    let q = div_round(&s[(t, j)], &s[(t, t)]);
                    cadd!(j, t, -q);
                    if !s[(t, j)].is_zero() {
                        cswap!(t, j);
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        t += 1;
    }
    let mut rank = 0;
    while rank < n && !s[(rank, rank)].is_zero() {
        rank += 1;
    }

    // Enforce the divisibility chain d_1 | d_2 | ... by folding offending
    // pairs back into a 2x2 elimination.
    loop {
        let mut fixed = true;
        for i in 0..rank.saturating_sub(1) {
            let (a, b) = (s[(i, i)].clone(), s[(i + 1, i + 1)].clone());
            if (&b % &a).is_zero() {
                continue;
            }
            fixed = false;
            // col i += col i+1, then clear the 2x2 block again
            cadd!(i, i + 1, BigInt::one());
            loop {
                let x = s[(i, i)].clone();
                let y = s[(i + 1, i)].clone();
                if y.is_zero() {
                    break;
                }
                if x.is_zero() {
                    rswap!(i, i + 1);
                    continue;
                }
                let q = div_round(&y, &x);
                radd!(i + 1, i, -q);
                if !s[(i + 1, i)].is_zero() {
                    rswap!(i, i + 1);
                }
            }
            // clear the (i, i+1) entry created by the column move
            let x = s[(i, i)].clone();
            loop {
                let y = s[(i, i + 1)].clone();
                if y.is_zero() {
                    break;
                }
                let q = div_round(&y, &x);
                cadd!(i + 1, i, -q);
                if !s[(i, i + 1)].is_zero() {
                    // cannot happen: x divides the whole block now, but keep safe
                    cswap!(i, i + 1);
                }
            }
        }
        if fixed {
            break;
        }
    }

    // Normalize signs.
    for i in 0..rank {
        if s[(i, i)].is_negative() {
            s.negate_row(i);
            u.negate_row(i);
            // E = E^{-1} for a sign flip
            for r in 0..u_inv.rows {
                let vneg = -u_inv[(r, i)].clone();
                u_inv[(r, i)] = vneg;
            }
        }
    }

    Snf { s, u, u_inv, v, v_inv, rank }
}

/// Rounded division: quotient `q` minimizing `|a - q b|`.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = num_integer::Integer::div_rem(a, b);
    let two_r = BigInt::from(2) * r.abs();
    if two_r > b.abs() {
        if (a.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Basis of the integer kernel lattice of `m`: the trailing columns of `V`.
pub fn kernel_basis(m: &IntMat) -> IntMat {
    let snf = smith_normal_form(m);
    snf.v.submatrix_cols(snf.rank, m.cols())
}

/// A lattice basis (independent columns) for the column span of `gens`:
/// the first `rank` columns of `gens * V`.
pub fn column_span_basis(gens: &IntMat) -> IntMat {
    let snf = smith_normal_form(gens);
    gens.mul(&snf.v).submatrix_cols(0, snf.rank)
}

/// Solve `m x = b` exactly over the integers, if possible.
pub fn solve(snf: &Snf, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let z = snf.u.mul_vec(b);
    let n = snf.s.rows().min(snf.s.cols());
    let mut y = vec![BigInt::zero(); snf.s.cols()];
    for (i, zi) in z.iter().enumerate() {
        if i < n && !snf.s[(i, i)].is_zero() {
            let d = &snf.s[(i, i)];
            if (zi % d).is_zero() {
                y[i] = zi / d;
            } else {
                return None;
            }
        } else if !zi.is_zero() {
            return None;
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// Solve `m X = B` column-wise; `None` if any column fails.
pub fn solve_mat(m: &IntMat, b: &IntMat) -> Option<IntMat> {
    assert_eq!(m.rows(), b.rows(), "shape mismatch in solve_mat");
    let snf = smith_normal_form(m);
    let mut out = IntMat::zeros(m.cols(), b.cols());
    for j in 0..b.cols() {
        let x = solve(&snf, &b.col(j))?;
        out.set_col(j, &x);
    }
    Some(out)
}

/// Does `x` lie in the column span of the lattice with precomputed SNF?
pub fn in_span(snf: &Snf, x: &[BigInt]) -> bool {
    solve(snf, x).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_snf(m: &IntMat) {
        let snf = smith_normal_form(m);
        // S = U M V exactly
        assert_eq!(snf.u.mul(m).mul(&snf.v), snf.s);
        // inverses really invert
        assert_eq!(snf.u.mul(&snf.u_inv), IntMat::identity(m.rows()));
        assert_eq!(snf.u_inv.mul(&snf.u), IntMat::identity(m.rows()));
        assert_eq!(snf.v.mul(&snf.v_inv), IntMat::identity(m.cols()));
        // diagonal, non-negative, divisibility chain
        for i in 0..snf.s.rows() {
            for j in 0..snf.s.cols() {
                if i != j {
                    assert!(snf.s[(i, j)].is_zero());
                }
            }
        }
        let d = snf.diagonal();
        for i in 0..d.len() {
            assert!(!d[i].is_negative());
            if i + 1 < d.len() && !d[i].is_zero() && !d[i + 1].is_zero() {
                assert!((&d[i + 1] % &d[i]).is_zero(), "divisibility fails: {:?}", d);
            }
            if d[i].is_zero() && i + 1 < d.len() {
                assert!(d[i + 1].is_zero(), "zeros must trail");
            }
        }
    }

    #[test]
    fn snf_diag_2_3() {
        // diag(2,3) has invariant factors (1, 6)
        let m = IntMat::diag(&[2, 3]);
        check_snf(&m);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn snf_identity() {
        let m = IntMat::identity(3);
        check_snf(&m);
        assert_eq!(smith_normal_form(&m).s, IntMat::identity(3));
    }

    #[test]
    fn snf_4_6_2_2() {
        // gcd of entries 2, |det| = 4, so invariant factors (2, 2)
        let m = IntMat::from_rows(vec![vec![4, 6], vec![2, 2]]);
        check_snf(&m);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.diagonal(), vec![BigInt::from(2), BigInt::from(2)]);
    }

    #[test]
    fn snf_rectangular_and_zero() {
        check_snf(&IntMat::from_rows(vec![vec![1, 2, 3], vec![4, 5, 6]]));
        check_snf(&IntMat::zeros(3, 2));
        check_snf(&IntMat::zeros(0, 4));
        check_snf(&IntMat::zeros(4, 0));
    }

    #[test]
    fn kernel_and_span() {
        let m = IntMat::from_rows(vec![vec![1, 1, 1]]);
        let k = kernel_basis(&m);
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).is_zero());

        let g = IntMat::from_rows(vec![vec![2, 4], vec![0, 0]]);
        let b = column_span_basis(&g);
        assert_eq!(b.cols(), 1);
        assert_eq!(b[(0, 0)].abs(), BigInt::from(2));
    }

    #[test]
    fn solve_works() {
        let m = IntMat::from_rows(vec![vec![2, 0], vec![0, 3]]);
        let snf = smith_normal_form(&m);
        let b = vec![BigInt::from(4), BigInt::from(9)];
        let x = solve(&snf, &b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        assert!(solve(&snf, &[BigInt::from(1), BigInt::from(0)]).is_none());
    }

    proptest::proptest! {
        #[test]
        fn snf_random(entries in proptest::collection::vec(-30i64..30, 1..20),
                      rows in 1usize..5) {
            let cols = entries.len().div_ceil(rows);
            let mut padded = entries.clone();
            padded.resize(rows * cols, 0);
            let m = IntMat {
                rows, cols,
                data: padded.into_iter().map(BigInt::from).collect(),
            };
            check_snf(&m);
        }
    }
}
