//! Tangent-space models of Schubert varieties.
//!
//! A map `φ ∈ Hom(V, Q)` with `dim V = r`, `dim Q = c` is stored as a `c × r`
//! matrix (source index = column) and vectorized row-major, so entry `(i, j)`
//! sits at coordinate `i * r + j`. In the coordinate model the tangent space
//! `X̂_λ` is the set of matrices whose column `j` is supported on its top `λ_j`
//! rows.
//!
//! Generic translates are built from explicit flags: `X_λ(F_V, F_Q)` is the
//! space of maps sending the `l`-th step of `F_V` into step `λ_l` of `F_Q`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{self, derive_seed, intersect, nullspace, Field, Mat, Subspace};
use crate::strings::{self, Partition, StepString};

/// A full flag on `F_p^m`: step `l` is the span of the first `l` columns of
/// `basis`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagModel {
    field: Field,
    basis: Mat,
}

impl FlagModel {
    pub fn from_basis(field: Field, basis: Mat) -> Result<Self> {
        if !basis.is_invertible(&field) {
            return Err(Error::DimensionMismatch(
                "flag basis must be square and invertible".into(),
            ));
        }
        Ok(FlagModel { field, basis })
    }

    /// `⟨e_1⟩ ⊂ ⟨e_1, e_2⟩ ⊂ …`
    pub fn standard(field: Field, m: usize) -> Self {
        FlagModel { field, basis: Mat::identity(m) }
    }

    /// `⟨e_m⟩ ⊂ ⟨e_m, e_{m-1}⟩ ⊂ …`, opposite to the standard flag.
    pub fn reversed(field: Field, m: usize) -> Self {
        let mut basis = Mat::zeros(m, m);
        for l in 0..m {
            basis.set(m - 1 - l, l, 1);
        }
        FlagModel { field, basis }
    }

    pub fn random(field: Field, m: usize, seed: u64) -> Self {
        FlagModel { field, basis: exactla::random_invertible(&field, m, seed) }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    /// The `l`-th basis vector (0-based).
    pub fn vector(&self, l: usize) -> Vec<u64> {
        self.basis.column(l)
    }

    pub fn step(&self, l: usize) -> Subspace {
        let vs = (0..l).map(|j| self.vector(j)).collect();
        Subspace::from_spanning(self.field, self.dim(), vs).expect("flag vectors fit the ambient")
    }

    /// The flag transformed by `g`: step `l` becomes `g · F_l`.
    pub fn transformed(&self, g: &Mat) -> Result<Self> {
        FlagModel::from_basis(self.field, g.mul(&self.field, &self.basis)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Geometry {
    /// `Hom(V, Q)`, the tangent space of a Grassmannian.
    HomVQ,
    /// `Hom(V/S, Q)`, carrying `σ(01)`.
    HomVModSQ,
    /// `Hom(S, V/S)`, carrying `σ(12)`.
    HomSVModS,
    /// `Hom(S, Q)`, carrying `σ(02)`.
    HomSQ,
    /// The full two-step tangent space.
    TwoStepFull,
}

/// A coordinate subspace of a `rows × cols` grid of matrix entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternSpace {
    rows: usize,
    cols: usize,
    free: Vec<bool>,
    geometry: Geometry,
}

impl PatternSpace {
    pub fn new(rows: usize, cols: usize, geometry: Geometry) -> Self {
        PatternSpace { rows, cols, free: vec![false; rows * cols], geometry }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    pub fn is_free(&self, i: usize, j: usize) -> bool {
        self.free[i * self.cols + j]
    }

    pub fn set_free(&mut self, i: usize, j: usize, free: bool) {
        self.free[i * self.cols + j] = free;
    }

    /// Number of free cells, the dimension of the subspace.
    pub fn dim(&self) -> usize {
        self.free.iter().filter(|&&f| f).count()
    }

    pub fn free_cells(&self) -> Vec<(usize, usize)> {
        (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .filter(|&(i, j)| self.is_free(i, j))
            .collect()
    }

    pub fn column_counts(&self) -> Vec<usize> {
        (0..self.cols).map(|j| (0..self.rows).filter(|&i| self.is_free(i, j)).count()).collect()
    }

    /// The coordinate subspace of `F_p^(rows·cols)`, vectorized row-major.
    pub fn to_subspace(&self, field: Field) -> Subspace {
        let cols = self.cols;
        Subspace::coordinate(
            field,
            self.rows * cols,
            self.free_cells().into_iter().map(|(i, j)| i * cols + j),
        )
    }
}

/// `X̂_λ`: column `j` free in its top `λ_j` rows.
pub fn hat_x(lambda: &Partition) -> PatternSpace {
    let mut pattern = PatternSpace::new(lambda.cap(), lambda.rows(), Geometry::HomVQ);
    for (j, &p) in lambda.parts().iter().enumerate() {
        for i in 0..p {
            pattern.set_free(i, j, true);
        }
    }
    pattern
}

/// Which rectangular factor of the two-step tangent space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Block {
    /// `Hom(V/S, Q)`, upper left, `(n-r) × (r-d)`.
    ZeroOne,
    /// `Hom(S, Q)`, upper right, `(n-r) × d`.
    ZeroTwo,
    /// `Hom(S, V/S)`, lower right, `(r-d) × d`.
    OneTwo,
}

impl Block {
    pub const ALL: [Block; 3] = [Block::ZeroOne, Block::ZeroTwo, Block::OneTwo];

    pub fn letters(self) -> (u8, u8) {
        match self {
            Block::ZeroOne => (0, 1),
            Block::ZeroTwo => (0, 2),
            Block::OneTwo => (1, 2),
        }
    }

    pub fn geometry(self) -> Geometry {
        match self {
            Block::ZeroOne => Geometry::HomVModSQ,
            Block::ZeroTwo => Geometry::HomSQ,
            Block::OneTwo => Geometry::HomSVModS,
        }
    }
}

/// Coordinates of the two-step tangent space `g/p` for `S ⊂ V ⊂ F^n`.
///
/// Matrix rows are indexed by `Q` (first `n-r`) then `V/S` (next `r-d`);
/// columns by `V/S` then `S`. The vectorization concatenates the blocks
/// `ZeroOne`, `ZeroTwo`, `OneTwo`, each row-major.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwoStepShape {
    pub d: usize,
    pub r: usize,
    pub n: usize,
}

impl TwoStepShape {
    pub fn new(d: usize, r: usize, n: usize) -> Result<Self> {
        if !(0 < d && d < r && r < n) {
            return Err(Error::ShapeMismatch(format!("need 0 < d < r < n, got ({d},{r},{n})")));
        }
        Ok(TwoStepShape { d, r, n })
    }

    fn q(&self) -> usize {
        self.n - self.r
    }

    fn m(&self) -> usize {
        self.r - self.d
    }

    pub fn block_dims(&self, block: Block) -> (usize, usize) {
        match block {
            Block::ZeroOne => (self.q(), self.m()),
            Block::ZeroTwo => (self.q(), self.d),
            Block::OneTwo => (self.m(), self.d),
        }
    }

    fn block_offset(&self, block: Block) -> usize {
        match block {
            Block::ZeroOne => 0,
            Block::ZeroTwo => self.q() * self.m(),
            Block::OneTwo => self.q() * self.m() + self.q() * self.d,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        let (q, m, d) = (self.q(), self.m(), self.d);
        q * m + q * d + m * d
    }

    /// Coordinate of the `n × n` matrix entry `(j, k)` (0-based), if it lies in
    /// `g/p`.
    pub fn coordinate(&self, j: usize, k: usize) -> Option<usize> {
        let (q, m) = (self.q(), self.m());
        let block = if j < q && (q..q + m).contains(&k) {
            Block::ZeroOne
        } else if j < q && k >= q + m && k < self.n {
            Block::ZeroTwo
        } else if (q..q + m).contains(&j) && k >= q + m && k < self.n {
            Block::OneTwo
        } else {
            return None;
        };
        let (row0, col0) = match block {
            Block::ZeroOne => (0, q),
            Block::ZeroTwo => (0, q + m),
            Block::OneTwo => (q, q + m),
        };
        let (_, bc) = self.block_dims(block);
        Some(self.block_offset(block) + (j - row0) * bc + (k - col0))
    }

    fn block_coordinates(&self, block: Block) -> std::ops::Range<usize> {
        let (br, bc) = self.block_dims(block);
        let start = self.block_offset(block);
        start..start + br * bc
    }
}

/// `Ŷ_σ` for a 012-string: free cells are `E_jk` with `η_j < η_k`, where `η`
/// lists the positions of the '0's, then the '1's, then the '2's.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoStepModel {
    shape: TwoStepShape,
    sigma: StepString,
    eta: Vec<usize>,
}

impl TwoStepModel {
    pub fn shape(&self) -> TwoStepShape {
        self.shape
    }

    pub fn sigma(&self) -> &StepString {
        &self.sigma
    }

    /// `η` as 1-based positions.
    pub fn eta(&self) -> &[usize] {
        &self.eta
    }

    /// Whether the entry `(j, k)` (0-based) of `g/p` is free in `Ŷ_σ`.
    pub fn is_free(&self, j: usize, k: usize) -> bool {
        self.shape.coordinate(j, k).is_some() && self.eta[j] < self.eta[k]
    }

    pub fn free_count(&self) -> usize {
        let n = self.shape.n;
        (0..n).flat_map(|j| (0..n).map(move |k| (j, k))).filter(|&(j, k)| self.is_free(j, k)).count()
    }

    /// The full `n × n` pattern; cells outside `g/p` are never free.
    pub fn full_pattern(&self) -> PatternSpace {
        let n = self.shape.n;
        let mut p = PatternSpace::new(n, n, Geometry::TwoStepFull);
        for j in 0..n {
            for k in 0..n {
                p.set_free(j, k, self.is_free(j, k));
            }
        }
        p
    }

    /// `Ŷ_σ` as a coordinate subspace of `g/p`.
    pub fn to_subspace(&self, field: Field) -> Subspace {
        let n = self.shape.n;
        let coords = (0..n)
            .flat_map(|j| (0..n).map(move |k| (j, k)))
            .filter(|&(j, k)| self.is_free(j, k))
            .filter_map(|(j, k)| self.shape.coordinate(j, k));
        Subspace::coordinate(field, self.shape.ambient_dim(), coords)
    }
}

pub fn hat_y(sigma: &StepString, d: usize, r: usize, n: usize) -> Result<TwoStepModel> {
    let shape = TwoStepShape::new(d, r, n)?;
    let counts = if sigma.steps() <= 2 { sigma.with_steps(2)?.counts() } else { Vec::new() };
    if sigma.len() != n || counts != [n - r, r - d, d] {
        return Err(Error::ShapeMismatch(format!(
            "{sigma} needs {} '0's, {} '1's and {d} '2's",
            n - r,
            r - d
        )));
    }
    let mut eta = sigma.positions(0);
    eta.extend(sigma.positions(1));
    eta.extend(sigma.positions(2));
    Ok(TwoStepModel { shape, sigma: sigma.clone(), eta })
}

/// Restrictions of `Ŷ_σ` to the three blocks, in the order `σ(01)`, `σ(02)`,
/// `σ(12)`.
pub fn blocks_of(y: &TwoStepModel) -> [PatternSpace; 3] {
    let TwoStepShape { r, n, .. } = y.shape;
    let (q, m) = (n - r, y.shape.m());
    Block::ALL.map(|block| {
        let (rows, cols) = y.shape.block_dims(block);
        let (row0, col0) = match block {
            Block::ZeroOne => (0, q),
            Block::ZeroTwo => (0, q + m),
            Block::OneTwo => (q, q + m),
        };
        let mut p = PatternSpace::new(rows, cols, block.geometry());
        for i in 0..rows {
            for j in 0..cols {
                p.set_free(i, j, y.is_free(row0 + i, col0 + j));
            }
        }
        p
    })
}

fn hom_shape_check(lambda: &Partition, src: &FlagModel, dst: &FlagModel) -> Result<()> {
    if src.dim() != lambda.rows() || dst.dim() != lambda.cap() {
        return Err(Error::DimensionMismatch(format!(
            "{lambda} needs flags of dimensions ({}, {}), got ({}, {})",
            lambda.rows(),
            lambda.cap(),
            src.dim(),
            dst.dim()
        )));
    }
    if src.field != dst.field {
        return Err(Error::DimensionMismatch("flags over different fields".into()));
    }
    Ok(())
}

/// `X_λ = {φ : φ(F_src,l) ⊆ F_dst,λ_l}`, computed as the kernel of the linear
/// constraints `(A⁻¹ φ b_l)_j = 0` for `j ≥ λ_l`, where `A` is the basis of
/// `F_dst` and `b_l` the `l`-th vector of `F_src`.
pub fn x_from_flags(lambda: &Partition, src: &FlagModel, dst: &FlagModel) -> Result<Subspace> {
    hom_shape_check(lambda, src, dst)?;
    let field = src.field;
    let (r, c) = (lambda.rows(), lambda.cap());
    let a_inv = dst.basis.inverse(&field).expect("flag bases are invertible");
    let mut rows = Vec::new();
    for (l, &part) in lambda.parts().iter().enumerate() {
        let b = src.vector(l);
        for j in part..c {
            let mut row = vec![0; r * c];
            for i in 0..c {
                let a = a_inv.get(j, i);
                if a == 0 {
                    continue;
                }
                for (col, &bv) in b.iter().enumerate() {
                    row[i * r + col] = field.mul(a, bv);
                }
            }
            rows.push(row);
        }
    }
    let n_rows = rows.len();
    let m = Mat::from_residues(n_rows, r * c, rows.into_iter().flatten().collect())?;
    Ok(nullspace(&field, &m))
}

/// Common rectangle `(r, c)` of a list of classes.
pub fn common_shape(lambdas: &[Partition]) -> Result<(usize, usize)> {
    let first = lambdas.first().ok_or_else(|| Error::ShapeMismatch("no classes given".into()))?;
    let shape = (first.rows(), first.cap());
    if let Some(bad) = lambdas.iter().find(|l| (l.rows(), l.cap()) != shape) {
        return Err(Error::ShapeMismatch(format!(
            "{bad} is not in Λ({},{})",
            shape.0, shape.1
        )));
    }
    Ok(shape)
}

/// Tangent spaces `X_{λ^i}` together with the source/destination flags that
/// define them.
#[derive(Clone, Debug)]
pub struct GenericTangents {
    pub flags: Vec<(FlagModel, FlagModel)>,
    pub tangents: Vec<Subspace>,
}

impl GenericTangents {
    pub fn intersection(&self) -> Result<Subspace> {
        intersect(&self.tangents)
    }
}

/// Builds each `X_{λ^i}` from an independent pair of seeded random flags.
pub fn generic_problem(field: Field, lambdas: &[Partition], seed: u64) -> Result<GenericTangents> {
    let (r, c) = common_shape(lambdas)?;
    let mut flags = Vec::with_capacity(lambdas.len());
    let mut tangents = Vec::with_capacity(lambdas.len());
    for (i, lambda) in lambdas.iter().enumerate() {
        let i = i as u64;
        let src = FlagModel::random(field, r, derive_seed(seed, 2 * i));
        let dst = FlagModel::random(field, c, derive_seed(seed, 2 * i + 1));
        tangents.push(x_from_flags(lambda, &src, &dst)?);
        flags.push((src, dst));
    }
    Ok(GenericTangents { flags, tangents })
}

pub fn generic_tangents(field: Field, lambdas: &[Partition], seed: u64) -> Result<Vec<Subspace>> {
    Ok(generic_problem(field, lambdas, seed)?.tangents)
}

/// Outcome of a transversality test on `⋂ X_{λ^i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transversality {
    /// The intersection is transverse, i.e. the product is nonzero.
    pub nonzero: bool,
    /// Smallest intersection dimension seen over all trials.
    pub achieved_dim: usize,
    /// `Σ|λ^i| - (s-1)·r·c`; negative when the codimensions exceed the ambient.
    pub expected_dim: i64,
    pub ambient_dim: usize,
    pub trial_dims: Vec<usize>,
}

/// Expected dimension of an intersection of subspaces of the given dimensions.
pub fn expected_dim(dims: impl IntoIterator<Item = usize>, ambient: usize) -> i64 {
    let mut s = 0i64;
    let mut total = 0i64;
    for d in dims {
        s += 1;
        total += d as i64;
    }
    total - (s - 1).max(0) * ambient as i64
}

/// Whether subspaces of one ambient space meet transversely (codimensions add).
pub fn is_transverse(subspaces: &[Subspace]) -> Result<bool> {
    let ambient = subspaces.first().map_or(0, Subspace::ambient_dim);
    let expected = expected_dim(subspaces.iter().map(Subspace::dim), ambient);
    Ok(intersect(subspaces)?.dim() as i64 == expected)
}

pub fn transversality_verdict(
    field: Field,
    lambdas: &[Partition],
    seed: u64,
    trials: usize,
) -> Result<Transversality> {
    let (r, c) = common_shape(lambdas)?;
    let ambient = r * c;
    let expected = expected_dim(lambdas.iter().map(Partition::weight), ambient);
    let trial_dims = (0..trials.max(1) as u64)
        .map(|t| Ok(generic_problem(field, lambdas, derive_seed(seed, t))?.intersection()?.dim()))
        .collect::<Result<Vec<_>>>()?;
    let achieved = trial_dims.iter().copied().min().unwrap_or(0);
    Ok(Transversality {
        nonzero: achieved as i64 == expected,
        achieved_dim: achieved,
        expected_dim: expected,
        ambient_dim: ambient,
        trial_dims,
    })
}

/// Flags induced by `f` on `v` and on the quotient `F^m / v`, in the
/// canonical coordinates of [`Subspace::coordinates`] and
/// [`Subspace::quotient_coordinates`].
pub fn induced_flag(f: &FlagModel, v: &Subspace) -> Result<(FlagModel, FlagModel)> {
    if v.ambient_dim() != f.dim() {
        return Err(Error::DimensionMismatch("subspace and flag live in different spaces".into()));
    }
    let field = f.field;
    let mut prev = Subspace::zero(field, f.dim());
    let mut sub_vectors = Vec::with_capacity(v.dim());
    let mut quot_vectors = Vec::with_capacity(v.codim());
    for l in 1..=f.dim() {
        let cur = intersect(&[f.step(l), v.clone()])?;
        if cur.dim() > prev.dim() {
            let fresh = cur
                .basis_vectors()
                .into_iter()
                .find(|b| !prev.contains(b))
                .expect("a jump in dimension yields a new vector");
            sub_vectors.push(v.coordinates(&fresh).expect("vector lies in the subspace"));
            prev = cur;
        } else {
            quot_vectors.push(v.quotient_coordinates(&f.vector(l - 1)));
        }
    }
    let to_flag = |vectors: Vec<Vec<u64>>| {
        let k = vectors.len();
        let mut basis = Mat::zeros(k, k);
        for (col, vec) in vectors.iter().enumerate() {
            for (row, &x) in vec.iter().enumerate() {
                basis.set(row, col, x);
            }
        }
        FlagModel::from_basis(field, basis)
    };
    Ok((to_flag(sub_vectors)?, to_flag(quot_vectors)?))
}

/// `σ_l = dim(V ∩ F_l) - dim(V ∩ F_{l-1})`.
pub fn schubert_position(v: &Subspace, f: &FlagModel) -> Result<StepString> {
    if v.ambient_dim() != f.dim() {
        return Err(Error::DimensionMismatch("subspace and flag live in different spaces".into()));
    }
    let mut letters = Vec::with_capacity(f.dim());
    let mut prev = 0;
    for l in 1..=f.dim() {
        let d = intersect(&[f.step(l), v.clone()])?.dim();
        letters.push((d - prev) as u8);
        prev = d;
    }
    StepString::new(letters, 1)
}

/// The subpartition of `λ` at the positions of the '0's of `ρ`.
pub fn quotient_pattern(lambda: &Partition, rho: &StepString) -> Result<Partition> {
    if rho.len() != lambda.rows() || rho.letters().iter().any(|&l| l > 1) {
        return Err(Error::ShapeMismatch(format!(
            "{rho} is not a 01-string of length {}",
            lambda.rows()
        )));
    }
    let parts = rho
        .letters()
        .iter()
        .zip(lambda.parts())
        .filter(|&(&l, _)| l == 0)
        .map(|(_, &p)| p)
        .collect();
    Partition::new(parts, lambda.cap())
}

/// Vectorized `φ` as a `rows × cols` matrix.
pub fn as_map(v: &[u64], rows: usize, cols: usize) -> Result<Mat> {
    Mat::from_residues(rows, cols, v.to_vec())
}

/// A random element of the parabolic subgroup stabilizing the coordinate
/// two-step flag `S ⊂ V` (`S` spanned by the last `d` basis vectors, `V` by
/// the last `r`).
pub fn random_parabolic(field: Field, shape: TwoStepShape, seed: u64) -> Mat {
    let (n, q, qm) = (shape.n, shape.q(), shape.q() + shape.m());
    let allowed = |j: usize, k: usize| {
        if k >= qm {
            j >= qm
        } else if k >= q {
            j >= q
        } else {
            true
        }
    };
    (0u64..)
        .map(|attempt| {
            let mut rng = exactla::rng_from_seed(derive_seed(seed, attempt));
            let mut m = Mat::zeros(n, n);
            for j in 0..n {
                for k in 0..n {
                    if allowed(j, k) {
                        m.set(j, k, field.random(&mut rng));
                    }
                }
            }
            m
        })
        .find(|m| m.is_invertible(&field))
        .expect("an invertible parabolic element is eventually sampled")
}

/// `Ad(p)·Ŷ_σ`: the image in `g/p` of the Borel algebra of the flag `p·F̂(σ)`.
pub fn two_step_translate(field: Field, model: &TwoStepModel, p: &Mat) -> Result<Subspace> {
    let shape = model.shape;
    let n = shape.n;
    if p.rows() != n || p.cols() != n {
        return Err(Error::DimensionMismatch(format!("translate must be {n}x{n}")));
    }
    let mut perm = Mat::zeros(n, n);
    for (m, &e) in model.eta.iter().enumerate() {
        perm.set(m, e - 1, 1);
    }
    let g = p.mul(&field, &perm)?;
    let g_inv = g
        .inverse(&field)
        .ok_or_else(|| Error::DimensionMismatch("translate is not invertible".into()))?;
    let ambient = shape.ambient_dim();
    let coords: Vec<(usize, usize, usize)> = (0..n)
        .flat_map(|j| (0..n).map(move |k| (j, k)))
        .filter_map(|(j, k)| shape.coordinate(j, k).map(|c| (j, k, c)))
        .collect();
    let mut vectors = Vec::with_capacity(n * (n + 1) / 2);
    for a in 0..n {
        for b in a..n {
            let mut v = vec![0; ambient];
            for &(j, k, c) in &coords {
                v[c] = field.mul(g.get(j, a), g_inv.get(b, k));
            }
            vectors.push(v);
        }
    }
    Subspace::from_spanning(field, ambient, vectors)
}

/// A generic translate `Y_σ`.
pub fn generic_two_step_tangent(field: Field, model: &TwoStepModel, seed: u64) -> Result<Subspace> {
    two_step_translate(field, model, &random_parabolic(field, model.shape, seed))
}

/// `Y ∩ block`, in the block's own row-major coordinates.
pub fn block_restriction(y: &Subspace, shape: TwoStepShape, block: Block) -> Result<Subspace> {
    let range = shape.block_coordinates(block);
    let coord = Subspace::coordinate(y.field(), shape.ambient_dim(), range.clone());
    let meet = intersect(&[y.clone(), coord])?;
    let vs = meet.basis_vectors().into_iter().map(|v| v[range.clone()].to_vec()).collect();
    Subspace::from_spanning(y.field(), range.len(), vs)
}

/// Image of `Y` under the coordinate projection onto a block.
pub fn block_projection(y: &Subspace, shape: TwoStepShape, block: Block) -> Result<Subspace> {
    let range = shape.block_coordinates(block);
    let vs = y.basis_vectors().into_iter().map(|v| v[range.clone()].to_vec()).collect();
    Subspace::from_spanning(y.field(), range.len(), vs)
}

/// Convenience: the partition carried by `σ(uv)`.
pub fn block_partition(sigma: &StepString, block: Block) -> Result<Partition> {
    let (u, v) = block.letters();
    strings::string_to_partition(&strings::substring_uv(&sigma.with_steps(2)?, u, v)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> Field {
        Field::default()
    }

    fn p(parts: &[usize], cap: usize) -> Partition {
        Partition::new(parts.to_vec(), cap).unwrap()
    }

    fn w(s: &str) -> StepString {
        s.parse().unwrap()
    }

    #[test]
    fn hat_x_examples() {
        let x = hat_x(&p(&[0, 1, 3, 3], 5));
        assert_eq!((x.rows(), x.cols()), (5, 4));
        assert_eq!(x.column_counts(), vec![0, 1, 3, 3]);
        assert!(x.is_free(0, 1) && !x.is_free(1, 1) && x.is_free(2, 3) && !x.is_free(3, 3));
        assert_eq!(hat_x(&Partition::zero(3, 4)).dim(), 0);
        assert_eq!(hat_x(&Partition::full(3, 4)).dim(), 12);
    }

    #[test]
    fn hat_y_example() {
        let y = hat_y(&w("021010201"), 2, 5, 9).unwrap();
        let eta: String = y.eta().iter().map(|e| e.to_string()).collect();
        assert_eq!(eta, "146835927");
        assert_eq!(y.free_count(), 13);
        let [b01, b02, b12] = blocks_of(&y);
        assert_eq!(b01.column_counts(), vec![1, 2, 4]);
        assert_eq!(b02.column_counts(), vec![1, 3]);
        assert_eq!(b12.column_counts(), vec![0, 2]);
        assert_eq!((b12.rows(), b12.cols()), (3, 2));
    }

    #[test]
    fn hat_y_extremes() {
        let dense = hat_y(&w("000112"), 1, 3, 6).unwrap();
        assert_eq!(dense.free_count(), dense.shape().ambient_dim());
        assert!(blocks_of(&dense).iter().all(|b| b.dim() == b.rows() * b.cols()));
        let point = hat_y(&w("211000"), 1, 3, 6).unwrap();
        assert_eq!(point.free_count(), 0);
        assert!(hat_y(&w("0112"), 1, 3, 5).is_err());
        assert!(hat_y(&w("01122"), 1, 3, 5).is_err());
    }

    #[test]
    fn x_from_standard_flags_is_the_coordinate_pattern() {
        let field = f();
        let lambda = p(&[0, 1, 3, 3], 5);
        let x = x_from_flags(
            &lambda,
            &FlagModel::standard(field, 4),
            &FlagModel::standard(field, 5),
        )
        .unwrap();
        assert_eq!(x, hat_x(&lambda).to_subspace(field));
    }

    #[test]
    fn opposite_intersection_example() {
        let field = f();
        let lambda = p(&[0, 1, 3, 3], 5);
        let mu = p(&[3, 3, 3, 5], 5);
        let x = x_from_flags(&lambda, &FlagModel::standard(field, 4), &FlagModel::standard(field, 5))
            .unwrap();
        let y = x_from_flags(&mu, &FlagModel::reversed(field, 4), &FlagModel::reversed(field, 5))
            .unwrap();
        assert_eq!((x.dim(), y.dim()), (7, 14));
        let meet = intersect(&[x, y]).unwrap();
        assert_eq!(meet.dim(), 2);
        assert_eq!(meet.codim(), 18);
        // the two surviving entries are (row 3, columns 3 and 4)
        assert_eq!(meet, Subspace::coordinate(field, 20, [2 * 4 + 2, 2 * 4 + 3]));
    }

    #[test]
    fn generic_tangents_examples() {
        let field = f();
        let lambda = p(&[0, 1, 3, 3], 5);
        let one = generic_tangents(field, std::slice::from_ref(&lambda), 3).unwrap();
        assert_eq!(one[0].dim(), 7);
        let mu = p(&[3, 3, 3, 5], 5);
        for seed in 0..5 {
            let ts = generic_tangents(field, &[lambda.clone(), mu.clone()], seed).unwrap();
            assert_eq!(intersect(&ts).unwrap().dim(), 2);
        }
        let three = vec![p(&[0, 1], 2); 3];
        let ts = generic_tangents(field, &three, 1).unwrap();
        assert_eq!(intersect(&ts).unwrap().dim(), 0);
    }

    #[test]
    fn verdict_examples() {
        let field = f();
        let v = transversality_verdict(field, &[p(&[0, 1, 3, 3], 5), p(&[3, 3, 3, 5], 5)], 0, 3)
            .unwrap();
        assert!(!v.nonzero);
        assert_eq!((v.achieved_dim, v.expected_dim), (2, 1));

        let v = transversality_verdict(field, &[p(&[0, 3, 3], 4), p(&[1, 3, 3], 4)], 0, 3).unwrap();
        assert!(!v.nonzero);

        // the zero partition is the point class; two points in Gr(2,4) miss
        let v = transversality_verdict(field, &[Partition::zero(2, 2), Partition::zero(2, 2)], 0, 3)
            .unwrap();
        assert!(!v.nonzero);
        assert_eq!((v.achieved_dim, v.expected_dim), (0, -4));

        let v = transversality_verdict(field, &[Partition::full(2, 2), Partition::zero(2, 2)], 0, 3)
            .unwrap();
        assert!(v.nonzero);
    }

    #[test]
    fn induced_flags_of_coordinate_subspaces() {
        let field = f();
        let std6 = FlagModel::standard(field, 6);
        let whole = Subspace::full(field, 6);
        let (on_v, on_q) = induced_flag(&std6, &whole).unwrap();
        assert_eq!(on_v, std6);
        assert_eq!(on_q.dim(), 0);

        // V = last r coordinates of F^n, as in the coordinate model
        let v = Subspace::coordinate(field, 6, 2..6);
        let (on_v, on_q) = induced_flag(&std6, &v).unwrap();
        assert_eq!(on_v, FlagModel::standard(field, 4));
        assert_eq!(on_q, FlagModel::standard(field, 2));
        assert_eq!(schubert_position(&v, &std6).unwrap().to_string(), "001111");
    }

    #[test]
    fn induced_flag_steps_grow_by_one() {
        let field = f();
        let flag = FlagModel::random(field, 7, 5);
        let v = Subspace::from_spanning(field, 7, Mat::random(&field, 3, 7, 9).basis_rows()).unwrap();
        let (on_v, on_q) = induced_flag(&flag, &v).unwrap();
        assert_eq!((on_v.dim(), on_q.dim()), (3, 4));
        for l in 0..=3 {
            assert_eq!(on_v.step(l).dim(), l);
        }
        // a generic 3-plane meets a generic flag in the generic position
        assert_eq!(schubert_position(&v, &flag).unwrap().to_string(), "0000111");
    }

    #[test]
    fn kernel_positions_of_the_worked_examples() {
        let field = f();
        let phi = Mat::from_rows(&field, &[vec![0, 0, 0], vec![0, 3, 0], vec![0, 8, 0], vec![0, 0, 0]])
            .unwrap();
        let ker = nullspace(&field, &phi);
        assert_eq!(schubert_position(&ker, &FlagModel::standard(field, 3)).unwrap().to_string(), "101");
        assert_eq!(schubert_position(&ker, &FlagModel::reversed(field, 3)).unwrap().to_string(), "101");

        let phi = Mat::from_rows(
            &field,
            &[
                vec![0, 0, 0, 0, 0, 0],
                vec![0, 5, 6, 7, 0, 0],
                vec![0, 0, 8, 9, 0, 0],
                vec![0, 0, 0, 0, 0, 1],
            ],
        )
        .unwrap();
        let ker = nullspace(&field, &phi);
        assert_eq!(ker.dim(), 3);
        assert_eq!(
            schubert_position(&ker, &FlagModel::standard(field, 6)).unwrap().to_string(),
            "100110"
        );
        assert_eq!(
            schubert_position(&ker, &FlagModel::reversed(field, 6)).unwrap().to_string(),
            "010011"
        );
    }

    #[test]
    fn quotient_pattern_examples() {
        let lambda = p(&[0, 2, 3, 3, 3, 4], 4);
        assert_eq!(quotient_pattern(&lambda, &w("100110")).unwrap(), p(&[2, 3, 4], 4));
        assert_eq!(quotient_pattern(&lambda, &w("000000")).unwrap(), lambda);
        assert_eq!(quotient_pattern(&lambda, &w("111111")).unwrap().rows(), 0);
        assert!(quotient_pattern(&lambda, &w("101")).is_err());
    }

    #[test]
    fn identity_translate_is_the_coordinate_pattern() {
        let field = f();
        let y = hat_y(&w("021010201"), 2, 5, 9).unwrap();
        let t = two_step_translate(field, &y, &Mat::identity(9)).unwrap();
        assert_eq!(t, y.to_subspace(field));
        let g = generic_two_step_tangent(field, &y, 4).unwrap();
        assert_eq!(g.dim(), 13);
    }

    trait BasisRows {
        fn basis_rows(&self) -> Vec<Vec<u64>>;
    }

    impl BasisRows for Mat {
        fn basis_rows(&self) -> Vec<Vec<u64>> {
            (0..self.rows()).map(|i| self.row(i).to_vec()).collect()
        }
    }
}
