//! Integer linear algebra for exponent bookkeeping.
//!
//! Conventions, fixed once for the whole crate: characters (exponent vectors
//! of monomials) are **row** vectors, one-parameter subgroups are **column**
//! vectors. `Im(M)` of a square matrix always means the column span, which
//! equals the row span of the transpose. Lattices are stored by a row basis
//! in Hermite normal form, so lattice equality is structural.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::coeff::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("singular matrix where a nonsingular one is required")]
    SingularMatrix,
    #[error("vector must be nonzero")]
    ZeroVector,
    #[error("the given points do not generate a subgroup of the kernel")]
    NotASubgroup,
}

/// Dense integer matrix with arbitrary-precision entries, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        IntMatrix {
            rows: nrows,
            cols: ncols,
            entries: rows
                .iter()
                .flat_map(|r| r.iter().map(|&v| BigInt::from(v)))
                .collect(),
        }
    }

    pub fn from_bigint_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        IntMatrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let n = entries.len();
        let mut m = Self::zero(n, n);
        for (i, &v) in entries.iter().enumerate() {
            m.set(i, i, BigInt::from(v));
        }
        m
    }

    /// Column vector from a slice.
    pub fn column(v: &[BigInt]) -> Self {
        IntMatrix {
            rows: v.len(),
            cols: 1,
            entries: v.to_vec(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[BigInt]> {
        (0..self.rows).map(|r| self.row(r))
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = Self::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += self.get(r, k) * other.get(k, c);
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    /// Matrix-vector product `M * b` with `b` a column vector.
    pub fn mul_vec(&self, b: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, b.len());
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(b)
                    .map(|(m, x)| m * x)
                    .sum::<BigInt>()
            })
            .collect()
    }

    /// Row-vector-matrix product `a * M`.
    pub fn vec_mul(&self, a: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.rows, a.len());
        (0..self.cols)
            .map(|c| {
                (0..self.rows)
                    .map(|r| self.get(r, c) * &a[r])
                    .sum::<BigInt>()
            })
            .collect()
    }

    /// Exact determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|r| self.row(r).to_vec()).collect();
        let mut sign = 1i8;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    // Bareiss guarantees exact divisibility by the previous pivot
                    a[i][j] = num / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    /// Minor with row `r` and column `c` removed.
    fn minor(&self, r: usize, c: usize) -> Self {
        let mut rows = Vec::with_capacity(self.rows - 1);
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            let mut row = Vec::with_capacity(self.cols - 1);
            for j in 0..self.cols {
                if j != c {
                    row.push(self.get(i, j).clone());
                }
            }
            rows.push(row);
        }
        Self::from_bigint_rows(rows)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.get(r, c).clone();
            self.set(r, c, v);
        }
    }

    /// `row[dst] -= q * row[src]`
    fn sub_scaled_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = self.get(dst, c) - q * self.get(src, c);
            self.set(dst, c, v);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    fn sub_scaled_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = self.get(r, dst) - q * self.get(r, src);
            self.set(r, dst, v);
        }
    }
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self)
    }
}

impl std::fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<String> = self
            .rows_iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|v| v.to_string()).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// Row-style Hermite normal form.
///
/// Returns `(H, U)` with `U` unimodular, `U * A` equal to `H` padded with
/// zero rows at the bottom, pivots positive, and every entry above a pivot
/// reduced into `[0, pivot)`. `H` itself carries only the nonzero rows, so it
/// is the canonical basis of the row space of `A`.
pub fn hnf(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let m = a.nrows();
    let n = a.ncols();
    let mut h = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut pivot_row = 0usize;
    for col in 0..n {
        if pivot_row >= m {
            break;
        }
        loop {
            let best = (pivot_row..m)
                .filter(|&r| !h.get(r, col).is_zero())
                .min_by_key(|&r| h.get(r, col).abs());
            let Some(r) = best else { break };
            h.swap_rows(pivot_row, r);
            u.swap_rows(pivot_row, r);
            let pivot = h.get(pivot_row, col).clone();
            let mut settled = true;
            for rr in pivot_row + 1..m {
                let q = h.get(rr, col).div_floor(&pivot);
                h.sub_scaled_row(rr, pivot_row, &q);
                u.sub_scaled_row(rr, pivot_row, &q);
                if !h.get(rr, col).is_zero() {
                    settled = false;
                }
            }
            if settled {
                if h.get(pivot_row, col).is_negative() {
                    h.negate_row(pivot_row);
                    u.negate_row(pivot_row);
                }
                let pivot = h.get(pivot_row, col).clone();
                for rr in 0..pivot_row {
                    let q = h.get(rr, col).div_floor(&pivot);
                    h.sub_scaled_row(rr, pivot_row, &q);
                    u.sub_scaled_row(rr, pivot_row, &q);
                }
                pivot_row += 1;
                break;
            }
        }
    }
    let kept: Vec<Vec<BigInt>> = (0..pivot_row).map(|r| h.row(r).to_vec()).collect();
    let stripped = if kept.is_empty() {
        IntMatrix::zero(0, n)
    } else {
        IntMatrix::from_bigint_rows(kept)
    };
    (stripped, u)
}

/// Smith normal form: `(S, U, V)` with `S = U * A * V` diagonal,
/// `d_1 | d_2 | ...`, diagonal entries nonnegative, `U`, `V` unimodular.
pub fn snf(a: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let m = a.nrows();
    let n = a.ncols();
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    for k in 0..m.min(n) {
        'place: loop {
            let mut best: Option<(usize, usize)> = None;
            for i in k..m {
                for j in k..n {
                    if s.get(i, j).is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| s.get(i, j).abs() < s.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break 'place };
            s.swap_rows(k, bi);
            u.swap_rows(k, bi);
            s.swap_cols(k, bj);
            v.swap_cols(k, bj);
            let pivot = s.get(k, k).clone();
            let mut settled = true;
            for r in k + 1..m {
                let q = s.get(r, k).div_floor(&pivot);
                s.sub_scaled_row(r, k, &q);
                u.sub_scaled_row(r, k, &q);
                if !s.get(r, k).is_zero() {
                    settled = false;
                }
            }
            for c in k + 1..n {
                let q = s.get(k, c).div_floor(&pivot);
                s.sub_scaled_col(c, k, &q);
                v.sub_scaled_col(c, k, &q);
                if !s.get(k, c).is_zero() {
                    settled = false;
                }
            }
            if !settled {
                continue;
            }
            // enforce divisibility of the remaining block by the pivot
            let mut witness = None;
            'scan: for i in k + 1..m {
                for j in k + 1..n {
                    if !s.get(i, j).is_multiple_of(s.get(k, k)) {
                        witness = Some(i);
                        break 'scan;
                    }
                }
            }
            match witness {
                Some(i) => {
                    let one = BigInt::one();
                    s.sub_scaled_row(k, i, &-&one);
                    u.sub_scaled_row(k, i, &-&one);
                }
                None => {
                    if s.get(k, k).is_negative() {
                        s.negate_row(k);
                        u.negate_row(k);
                    }
                    break 'place;
                }
            }
        }
    }
    (s, u, v)
}

/// The classical adjugate: `M * adjoint(M) = det(M) * I`.
pub fn adjoint(m: &IntMatrix) -> IntMatrix {
    assert!(m.is_square(), "adjoint of a non-square matrix");
    let n = m.nrows();
    if n == 0 {
        return IntMatrix::zero(0, 0);
    }
    if n == 1 {
        return IntMatrix::identity(1);
    }
    let mut out = IntMatrix::zero(n, n);
    for r in 0..n {
        for c in 0..n {
            let cof = m.minor(r, c).det();
            let signed = if (r + c) % 2 == 0 { cof } else { -cof };
            // adj = transposed cofactor matrix
            out.set(c, r, signed);
        }
    }
    out
}

/// Solves `M * b = a` over the integers. Returns `None` when `a` is not in
/// the column image; when `M` is nonsingular the solution is unique.
pub fn solve_in_image(m: &IntMatrix, a: &[BigInt]) -> Result<Option<Vec<BigInt>>, LatticeError> {
    if m.nrows() != a.len() {
        return Err(LatticeError::DimensionMismatch(format!(
            "matrix has {} rows but the target vector has length {}",
            m.nrows(),
            a.len()
        )));
    }
    let (s, u, v) = snf(m);
    let c = u.mul_vec(a);
    let mut y = vec![BigInt::zero(); m.ncols()];
    for i in 0..m.nrows() {
        let d = if i < m.ncols() {
            s.get(i, i).clone()
        } else {
            BigInt::zero()
        };
        if d.is_zero() {
            if !c[i].is_zero() {
                return Ok(None);
            }
        } else {
            let (q, r) = c[i].div_rem(&d);
            if !r.is_zero() {
                return Ok(None);
            }
            y[i] = q;
        }
    }
    Ok(Some(v.mul_vec(&y)))
}

/// Writes `a = sign * scale * direction` with `scale > 0`, `direction`
/// primitive and its first nonzero entry positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitiveDecomposition {
    pub scale: BigInt,
    pub direction: Vec<BigInt>,
    pub sign: i8,
}

pub fn primitive_decompose(a: &[BigInt]) -> Result<PrimitiveDecomposition, LatticeError> {
    let scale = a.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if scale.is_zero() {
        return Err(LatticeError::ZeroVector);
    }
    let mut direction: Vec<BigInt> = a.iter().map(|v| v / &scale).collect();
    let sign = if direction
        .iter()
        .find(|v| !v.is_zero())
        .expect("nonzero vector")
        .is_negative()
    {
        for v in &mut direction {
            *v = -v.clone();
        }
        -1
    } else {
        1
    };
    Ok(PrimitiveDecomposition {
        scale,
        direction,
        sign,
    })
}

/// Sublattice of `Z^n` given by a row basis in Hermite normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    ambient_dim: usize,
    basis: IntMatrix,
}

impl Lattice {
    pub fn from_rows(ambient_dim: usize, rows: &IntMatrix) -> Self {
        assert_eq!(rows.ncols(), ambient_dim);
        let (h, _) = hnf(rows);
        Lattice {
            ambient_dim,
            basis: h,
        }
    }

    /// The full lattice `Z^n`.
    pub fn full(n: usize) -> Self {
        Lattice {
            ambient_dim: n,
            basis: IntMatrix::identity(n),
        }
    }

    /// Column image of a matrix, as a lattice.
    pub fn column_image(m: &IntMatrix) -> Self {
        Lattice::from_rows(m.nrows(), &m.transpose())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool, LatticeError> {
        // v in the row span iff the transposed system has a solution
        Ok(solve_in_image(&self.basis.transpose(), v)?.is_some())
    }

    /// Index in `Z^n`, when full-rank.
    pub fn index(&self) -> Option<BigInt> {
        (self.rank() == self.ambient_dim).then(|| self.basis.det().abs())
    }
}

/// Intersection of two lattices in the same ambient space.
pub fn lattice_intersect(k1: &Lattice, k2: &Lattice) -> Result<Lattice, LatticeError> {
    if k1.ambient_dim() != k2.ambient_dim() {
        return Err(LatticeError::DimensionMismatch(format!(
            "ambient dimensions {} and {} differ",
            k1.ambient_dim(),
            k2.ambient_dim()
        )));
    }
    let n = k1.ambient_dim();
    let r1 = k1.rank();
    let r2 = k2.rank();
    // rows (u | v) with u*B1 - v*B2 = 0; the u*B1 parts span the intersection
    let mut stacked = IntMatrix::zero(r1 + r2, n);
    for r in 0..r1 {
        for c in 0..n {
            stacked.set(r, c, k1.basis().get(r, c).clone());
        }
    }
    for r in 0..r2 {
        for c in 0..n {
            stacked.set(r1 + r, c, -k2.basis().get(r, c).clone());
        }
    }
    let (h, u) = hnf(&stacked);
    let rank = h.nrows();
    let mut rows = Vec::new();
    for r in rank..r1 + r2 {
        let coeffs: Vec<BigInt> = (0..r1).map(|c| u.get(r, c).clone()).collect();
        rows.push(k1.basis().transpose().mul_vec(&coeffs));
    }
    let result = if rows.is_empty() {
        Lattice {
            ambient_dim: n,
            basis: IntMatrix::zero(0, n),
        }
    } else {
        Lattice::from_rows(n, &IntMatrix::from_bigint_rows(rows))
    };
    if k1.rank() == n && k2.rank() == n {
        debug_assert!(result.rank() == n, "intersection of full lattices is full");
        if let (Some(i), Some(i1), Some(i2)) = (result.index(), k1.index(), k2.index()) {
            debug_assert!(
                i.is_multiple_of(&i1.lcm(&i2)) && (&i1 * &i2).is_multiple_of(&i),
                "index multiplicativity violated"
            );
        }
    }
    Ok(result)
}

/// Point of finite order on the torus, stored by rational phases in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorsionPoint {
    phases: Vec<Rational>,
}

impl TorsionPoint {
    pub fn new(phases: Vec<Rational>) -> Self {
        TorsionPoint {
            phases: phases.into_iter().map(reduce_mod_one).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        TorsionPoint {
            phases: vec![Rational::zero(); n],
        }
    }

    pub fn dim(&self) -> usize {
        self.phases.len()
    }

    pub fn phases(&self) -> &[Rational] {
        &self.phases
    }

    pub fn is_identity(&self) -> bool {
        self.phases.iter().all(Zero::is_zero)
    }

    /// Group law (multiplication on the torus = phase addition mod 1).
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        TorsionPoint::new(
            self.phases
                .iter()
                .zip(&other.phases)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn inverse(&self) -> Self {
        TorsionPoint::new(self.phases.iter().map(|a| -a).collect())
    }

    /// lcm of the phase denominators.
    pub fn order(&self) -> BigInt {
        self.phases
            .iter()
            .fold(BigInt::one(), |acc, p| acc.lcm(p.denom()))
    }

    /// Phase pairing with an integer character: `sum_i r_i * v_i` mod 1.
    pub fn pair(&self, exponents: &[BigInt]) -> Rational {
        assert_eq!(self.dim(), exponents.len());
        reduce_mod_one(
            self.phases
                .iter()
                .zip(exponents)
                .map(|(r, v)| r * Rational::from_integer(v.clone()))
                .sum(),
        )
    }

    /// Componentwise `L * r`, integrality of which means membership in the
    /// kernel of the isogeny given by `L`.
    pub fn in_kernel_of(&self, l: &IntMatrix) -> bool {
        assert_eq!(l.ncols(), self.dim());
        (0..l.nrows()).all(|i| {
            let s: Rational = self
                .phases
                .iter()
                .enumerate()
                .map(|(j, r)| r * Rational::from_integer(l.get(i, j).clone()))
                .sum();
            s.is_integer()
        })
    }
}

fn reduce_mod_one(r: Rational) -> Rational {
    let f = r.floor();
    r - f
}

/// All torsion points `zeta` with `zeta^L = 1`, i.e. `L * r` integral, for a
/// nonsingular `L`. Exactly `|det L|` points, sorted by phase vector; the
/// identity is included.
pub fn kernel_elements(l: &IntMatrix) -> Result<Vec<TorsionPoint>, LatticeError> {
    if !l.is_square() {
        return Err(LatticeError::DimensionMismatch(
            "kernel of a non-square matrix".to_string(),
        ));
    }
    let n = l.nrows();
    let (s, _, v) = snf(l);
    let mut ds = Vec::with_capacity(n);
    for i in 0..n {
        let d = s.get(i, i).clone();
        if d.is_zero() {
            return Err(LatticeError::SingularMatrix);
        }
        ds.push(d);
    }
    let mut points = Vec::new();
    let mut counters = vec![BigInt::zero(); n];
    loop {
        let y: Vec<Rational> = counters
            .iter()
            .zip(&ds)
            .map(|(k, d)| Rational::new(k.clone(), d.clone()))
            .collect();
        // r = V * y, reduced mod 1
        let phases: Vec<Rational> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| Rational::from_integer(v.get(i, j).clone()) * &y[j])
                    .sum()
            })
            .collect();
        points.push(TorsionPoint::new(phases));
        // odometer over 0..d_i
        let mut pos = n;
        while pos > 0 {
            pos -= 1;
            counters[pos] += 1;
            if counters[pos] < ds[pos] {
                break;
            }
            counters[pos] = BigInt::zero();
            if pos == 0 {
                points.sort();
                return Ok(points);
            }
        }
        if n == 0 {
            return Ok(points);
        }
    }
}

/// Closure of a set of torsion points under the group law.
pub fn subgroup_closure(gens: &[TorsionPoint], dim: usize) -> Vec<TorsionPoint> {
    let mut elems = vec![TorsionPoint::identity(dim)];
    let mut frontier = elems.clone();
    while let Some(p) = frontier.pop() {
        for g in gens {
            let q = p.compose(g);
            if !elems.contains(&q) {
                elems.push(q.clone());
                frontier.push(q);
            }
        }
    }
    elems.sort();
    elems
}

/// Factors the isogeny given by `L` through the subgroup `H` of its kernel:
/// returns `(M_mu, M_tau)` with `L = M_mu * M_tau`, where the rows of `M_tau`
/// are the HNF basis of the annihilator lattice
/// `Lambda_H = { v : <r, v> integral for all r in H }` and
/// `|det M_mu| = [ker(L) : H]`.
pub fn factor_isogeny(
    l: &IntMatrix,
    subgroup_gens: &[TorsionPoint],
) -> Result<(IntMatrix, IntMatrix), LatticeError> {
    if !l.is_square() {
        return Err(LatticeError::DimensionMismatch(
            "isogeny matrix must be square".to_string(),
        ));
    }
    let n = l.nrows();
    if l.det().is_zero() {
        return Err(LatticeError::SingularMatrix);
    }
    for g in subgroup_gens {
        if g.dim() != n || !g.in_kernel_of(l) {
            return Err(LatticeError::NotASubgroup);
        }
    }
    let h = subgroup_closure(subgroup_gens, n);
    // Common denominator D and integer phase matrix P (|H| x n).
    let d = h
        .iter()
        .fold(BigInt::one(), |acc, p| acc.lcm(&p.order()));
    let s = h.len();
    let mut p = IntMatrix::zero(s, n);
    for (i, pt) in h.iter().enumerate() {
        for (j, ph) in pt.phases().iter().enumerate() {
            let scaled = ph * Rational::from_integer(d.clone());
            debug_assert!(scaled.is_integer());
            p.set(i, j, scaled.to_integer());
        }
    }
    // Lambda_H = { v : P v = 0 mod D }: rows (w | u) of the left kernel of
    // [ P^T ; D I_s ] project onto Lambda_H.
    let mut stacked = IntMatrix::zero(n + s, s);
    let pt = p.transpose();
    for r in 0..n {
        for c in 0..s {
            stacked.set(r, c, pt.get(r, c).clone());
        }
    }
    for i in 0..s {
        stacked.set(n + i, i, d.clone());
    }
    let (hh, uu) = hnf(&stacked);
    let rank = hh.nrows();
    let mut rows = Vec::new();
    for r in rank..n + s {
        rows.push((0..n).map(|c| uu.get(r, c).clone()).collect::<Vec<_>>());
    }
    let lambda = Lattice::from_rows(n, &IntMatrix::from_bigint_rows(rows));
    debug_assert_eq!(lambda.rank(), n, "annihilator lattice is full-rank");
    let m_tau = lambda.basis().clone();
    // M_mu = L * M_tau^{-1} = L * adj(M_tau) / det(M_tau); integral since the
    // rows of L annihilate H.
    let det_tau = m_tau.det();
    let l_adj = l.mul(&adjoint(&m_tau));
    let mut m_mu = IntMatrix::zero(n, n);
    for r in 0..n {
        for c in 0..n {
            let (q, rem) = l_adj.get(r, c).div_rem(&det_tau);
            if !rem.is_zero() {
                return Err(LatticeError::NotASubgroup);
            }
            m_mu.set(r, c, q);
        }
    }
    debug_assert_eq!(m_mu.mul(&m_tau), *l);
    Ok((m_mu, m_tau))
}
