//! Exact linear algebra over a prime field `F_p`.
//!
//! Entries are residues in `[0, p)` stored as `u64`; the [`Field`] value carries
//! the modulus and performs all arithmetic. Subspaces are kept as a basis in
//! reduced row-echelon form, so two subspaces are equal iff their bases are.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// `2^31 - 1`.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// A prime field `F_p` with `2^20 < p < 2^63`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Field {
    p: u64,
}

impl Default for Field {
    fn default() -> Self {
        Field { p: DEFAULT_PRIME }
    }
}

impl Field {
    pub fn new(p: u64) -> Result<Self> {
        if p <= 1 << 20 || p >= 1 << 63 || !primal_check::miller_rabin(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(Field { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, x: u64) -> u64 {
        x % self.p
    }

    pub fn from_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    pub fn random(&self, rng: &mut impl Rng) -> u64 {
        rng.random_range(0..self.p)
    }

    pub fn random_nonzero(&self, rng: &mut impl Rng) -> u64 {
        rng.random_range(1..self.p)
    }
}

/// Derives a child seed from a parent seed and a salt (splitmix64 finalizer).
pub fn derive_seed(seed: u64, salt: u64) -> u64 {
    let mut z = seed
        .wrapping_add(salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Dense row-major matrix of residues.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from integer rows, reducing each entry mod `p`.
    pub fn from_rows(field: &Field, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let data = rows.iter().flatten().map(|&x| field.from_i64(x)).collect();
        Ok(Mat { rows: rows.len(), cols, data })
    }

    /// Wraps residues already in `[0, p)`.
    pub fn from_residues(rows: usize, cols: usize, data: Vec<u64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Mat { rows, cols, data })
    }

    pub fn random(field: &Field, rows: usize, cols: usize, seed: u64) -> Self {
        let mut rng = rng_from_seed(seed);
        let data = (0..rows * cols).map(|_| field.random(&mut rng)).collect();
        Mat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, field: &Field, other: &Mat) -> Result<Mat> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = field.add(out.get(i, j), field.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, field: &Field, v: &[u64]) -> Result<Vec<u64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| field.add(acc, field.mul(a, b)))
            })
            .collect())
    }

    /// Reduced row-echelon form in place; returns the pivot columns.
    pub fn rref(&mut self, field: &Field) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = field.inv(self.get(r, c));
            for j in c..self.cols {
                let v = field.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let v = field.sub(self.get(i, j), field.mul(f, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn inverse(&self, field: &Field) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let pivots = aug.rref(field);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j));
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self, field: &Field) -> bool {
        self.rows == self.cols && rank(field, self) == self.rows
    }
}

pub fn rank(field: &Field, m: &Mat) -> usize {
    m.clone().rref(field).len()
}

/// The kernel `{x : m x = 0}` as a subspace of `F_p^cols`.
pub fn nullspace(field: &Field, m: &Mat) -> Subspace {
    let mut e = m.clone();
    let pivots = e.rref(field);
    let n = m.cols;
    let mut is_pivot = vec![false; n];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0; n];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = field.neg(e.get(r, free));
        }
        basis.push(v);
    }
    Subspace::from_spanning(*field, n, basis).expect("kernel vectors have the ambient length")
}

/// Intersection of subspaces sharing one ambient space.
pub fn intersect(subspaces: &[Subspace]) -> Result<Subspace> {
    let first = subspaces
        .first()
        .ok_or_else(|| Error::DimensionMismatch("empty intersection list".into()))?;
    let field = first.field;
    let ambient = first.ambient;
    let mut constraints: Vec<u64> = Vec::new();
    let mut count = 0;
    for s in subspaces {
        if s.ambient != ambient || s.field != field {
            return Err(Error::DimensionMismatch(format!(
                "ambient {} vs {ambient}",
                s.ambient
            )));
        }
        let ann = s.annihilator();
        constraints.extend_from_slice(&ann.basis.data);
        count += ann.dim();
    }
    let m = Mat { rows: count, cols: ambient, data: constraints };
    Ok(nullspace(&field, &m))
}

/// A uniformly random combination of the basis; deterministic in `seed`.
pub fn random_element(s: &Subspace, seed: u64) -> Vec<u64> {
    let mut rng = rng_from_seed(seed);
    let field = s.field;
    let mut v = vec![0; s.ambient];
    for i in 0..s.dim() {
        let c = field.random(&mut rng);
        for (x, &b) in v.iter_mut().zip(s.basis.row(i)) {
            *x = field.add(*x, field.mul(c, b));
        }
    }
    v
}

/// A random invertible matrix preserving the coordinate flag whose `l`-th step
/// is spanned by `e_{order[0]}, …, e_{order[l-1]}`.
pub fn random_borel(field: &Field, n: usize, flag_order: &[usize], seed: u64) -> Result<Mat> {
    let mut seen = vec![false; n];
    if flag_order.len() != n
        || flag_order.iter().any(|&i| i >= n || std::mem::replace(&mut seen[i], true))
    {
        return Err(Error::DimensionMismatch(format!(
            "flag order {flag_order:?} is not a permutation of 0..{n}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut m = Mat::zeros(n, n);
    for j in 0..n {
        for i in 0..j {
            m.set(flag_order[i], flag_order[j], field.random(&mut rng));
        }
        m.set(flag_order[j], flag_order[j], field.random_nonzero(&mut rng));
    }
    Ok(m)
}

/// A uniformly random invertible matrix (resampled until invertible).
pub fn random_invertible(field: &Field, n: usize, seed: u64) -> Mat {
    (0u64..)
        .map(|attempt| Mat::random(field, n, n, derive_seed(seed, attempt)))
        .find(|m| m.is_invertible(field))
        .expect("an invertible matrix is eventually sampled")
}

/// A subspace of `F_p^ambient` held as a reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Mat,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace { field, ambient, basis: Mat::zeros(0, ambient), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Subspace { field, ambient, basis: Mat::identity(ambient), pivots: (0..ambient).collect() }
    }

    pub fn from_spanning(field: Field, ambient: usize, vectors: Vec<Vec<u64>>) -> Result<Self> {
        if vectors.iter().any(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch(format!(
                "spanning vector length differs from ambient {ambient}"
            )));
        }
        let rows = vectors.len();
        let data = vectors.into_iter().flatten().map(|x| field.reduce(x)).collect();
        let mut m = Mat { rows, cols: ambient, data };
        let pivots = m.rref(&field);
        m.data.truncate(pivots.len() * ambient);
        m.rows = pivots.len();
        Ok(Subspace { field, ambient, basis: m, pivots })
    }

    /// Span of the unit vectors `e_i` for the given indices.
    pub fn coordinate(field: Field, ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let vectors = indices
            .into_iter()
            .map(|i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Subspace::from_spanning(field, ambient, vectors).expect("unit vectors fit the ambient")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn codim(&self) -> usize {
        self.ambient - self.dim()
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> Vec<Vec<u64>> {
        (0..self.dim()).map(|i| self.basis.row(i).to_vec()).collect()
    }

    /// `{w : w·v = 0 for all v in self}`.
    pub fn annihilator(&self) -> Subspace {
        nullspace(&self.field, &self.basis)
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        v.len() == self.ambient && self.reduce_vector(v).iter().all(|&x| x == 0)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        (0..self.dim()).all(|i| other.contains(self.basis.row(i)))
    }

    /// `v` minus its echelon projection; zero exactly when `v ∈ self`.
    pub fn reduce_vector(&self, v: &[u64]) -> Vec<u64> {
        let f = &self.field;
        let mut out = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let c = out[pc];
            if c == 0 {
                continue;
            }
            for (x, &b) in out.iter_mut().zip(self.basis.row(i)) {
                *x = f.sub(*x, f.mul(c, b));
            }
        }
        out
    }

    /// Coordinates of `v ∈ self` with respect to the echelon basis.
    pub fn coordinates(&self, v: &[u64]) -> Option<Vec<u64>> {
        self.contains(v).then(|| self.pivots.iter().map(|&pc| v[pc]).collect())
    }

    /// Coordinates of the class `v + self` in the quotient `F_p^ambient / self`,
    /// read off the non-pivot positions of the reduced vector.
    pub fn quotient_coordinates(&self, v: &[u64]) -> Vec<u64> {
        let reduced = self.reduce_vector(v);
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        reduced
            .into_iter()
            .enumerate()
            .filter(|&(i, _)| !is_pivot[i])
            .map(|(_, x)| x)
            .collect()
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch("sum of subspaces in different spaces".into()));
        }
        let mut vs = self.basis_vectors();
        vs.extend(other.basis_vectors());
        Subspace::from_spanning(self.field, self.ambient, vs)
    }

    /// Image under a linear map given as a matrix acting on column vectors.
    pub fn image(&self, map: &Mat) -> Result<Subspace> {
        if map.cols() != self.ambient {
            return Err(Error::DimensionMismatch("map domain differs from ambient".into()));
        }
        let vs = (0..self.dim())
            .map(|i| map.mul_vec(&self.field, self.basis.row(i)))
            .collect::<Result<Vec<_>>>()?;
        Subspace::from_spanning(self.field, map.rows(), vs)
    }
}
