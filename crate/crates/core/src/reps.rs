//! Constructors for the irreducible representations of `S^{1|1}` and
//! `SU(1|1)`, and algorithms that decompose a representation into them.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::grassmann::Parity;
use crate::liealg::{ensure_valid, AlgebraTag, Representation};
use crate::matrix::Matrix;
use crate::scalars::{
    gaussian_root_of_neg_im, sqrt_neg_im_branch, Branch, ExtendedScalar, GaussianRational, Scalar, ScalarMode,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" => Ok(Sign::Plus),
            "-" | "minus" => Ok(Sign::Minus),
            other => Err(Error::UnknownTag(other.to_string())),
        }
    }
}

/// Names of the building blocks produced by the constructors below.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RepLabel {
    /// The one-dimensional even trivial representation.
    Trivial,
    /// `W` for `S^{1|1}`, the adjoint representation for `SU(1|1)`.
    Adjoint,
    /// `ΠW` for `S^{1|1}`.
    ParityAdjoint,
    V(i64),
    Pi(i64, Sign),
}

impl RepLabel {
    pub fn algebra(self) -> Option<AlgebraTag> {
        match self {
            RepLabel::Trivial | RepLabel::Adjoint => None,
            RepLabel::ParityAdjoint | RepLabel::V(_) => Some(AlgebraTag::S11),
            RepLabel::Pi(..) => Some(AlgebraTag::Su11),
        }
    }

    pub fn build(self, algebra: AlgebraTag, mode: ScalarMode, branch: Branch) -> Result<Representation> {
        if self.algebra().is_some_and(|a| a != algebra) {
            return Err(Error::Unsupported(format!("{self} is not a representation of {algebra}")));
        }
        match (self, algebra) {
            (RepLabel::Trivial, _) => Ok(make_trivial(algebra, 1, 0)),
            (RepLabel::Adjoint, AlgebraTag::S11) => Ok(make_weight_zero_s11(WeightZeroVariant::W)),
            (RepLabel::Adjoint, AlgebraTag::Su11) => Ok(make_adjoint_su11()),
            (RepLabel::ParityAdjoint, _) => Ok(make_weight_zero_s11(WeightZeroVariant::PiW)),
            (RepLabel::V(m), _) => make_v_m_branch(m, mode, branch),
            (RepLabel::Pi(m, sign), _) => make_pi_m_branch(m, sign, mode, branch),
        }
    }
}

impl fmt::Display for RepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepLabel::Trivial => write!(f, "trivial"),
            RepLabel::Adjoint => write!(f, "Ad"),
            RepLabel::ParityAdjoint => write!(f, "PiAd"),
            RepLabel::V(m) => write!(f, "V_{m}"),
            RepLabel::Pi(m, s) => write!(f, "pi_{m}^{}", s.symbol()),
        }
    }
}

fn swap_matrix(s: &Scalar) -> Matrix<Scalar> {
    Matrix::from_rows(vec![vec![Scalar::zero(), s.clone()], vec![s.clone(), Scalar::zero()]]).expect("2x2")
}

/// `V_m`: weight `m` on `(v₀|v₁)` with `ρ(Z) = s·[[0,1],[1,0]]`, `s² = -im`.
pub fn make_v_m(m: i64, mode: ScalarMode) -> Result<Representation> {
    make_v_m_branch(m, mode, Branch::Principal)
}

pub fn make_v_m_branch(m: i64, mode: ScalarMode, branch: Branch) -> Result<Representation> {
    let s = sqrt_neg_im_branch(m, mode, branch)?;
    Representation::new(AlgebraTag::S11, vec![Parity::Even, Parity::Odd], vec![m, m], vec![swap_matrix(&s)])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightZeroVariant {
    /// `Z w₁ = w₀` with `w₀` even.
    W,
    /// The parity reverse of `W`: `Z w₁ = w₀` with `w₀` odd. Stored in the
    /// basis `(w₁, w₀)` so that the even vector comes first.
    PiW,
    /// `Z = 0` on `ℂ^{p|q}`.
    Trivial { even: usize, odd: usize },
}

pub fn make_weight_zero_s11(variant: WeightZeroVariant) -> Representation {
    let z = Scalar::zero;
    match variant {
        WeightZeroVariant::W => Representation {
            algebra: AlgebraTag::S11,
            parities: vec![Parity::Even, Parity::Odd],
            weights: vec![0, 0],
            generators: vec![Matrix::from_rows(vec![vec![z(), Scalar::one()], vec![z(), z()]]).expect("2x2")],
        },
        WeightZeroVariant::PiW => Representation {
            algebra: AlgebraTag::S11,
            parities: vec![Parity::Even, Parity::Odd],
            weights: vec![0, 0],
            generators: vec![Matrix::from_rows(vec![vec![z(), z()], vec![Scalar::one(), z()]]).expect("2x2")],
        },
        WeightZeroVariant::Trivial { even, odd } => make_trivial(AlgebraTag::S11, even, odd),
    }
}

/// Zero action on `ℂ^{p|q}` with all weights 0, even vectors first.
pub fn make_trivial(algebra: AlgebraTag, even: usize, odd: usize) -> Representation {
    let n = even + odd;
    Representation {
        algebra,
        parities: std::iter::repeat_n(Parity::Even, even).chain(std::iter::repeat_n(Parity::Odd, odd)).collect(),
        weights: vec![0; n],
        generators: vec![Matrix::zeros(n, n); algebra.odd_generators().len()],
    }
}

/// `π_m^±`: weight `m` on `ℂ^{1|1}` with `U = s·[[0,1],[1,0]]` and
/// `S = [[0, ∓m/s], [±m/s, 0]]`.
pub fn make_pi_m(m: i64, sign: Sign, mode: ScalarMode) -> Result<Representation> {
    make_pi_m_branch(m, sign, mode, Branch::Principal)
}

pub fn make_pi_m_branch(m: i64, sign: Sign, mode: ScalarMode, branch: Branch) -> Result<Representation> {
    let s = sqrt_neg_im_branch(m, mode, branch)?;
    let m_over_s = Scalar::from(m).try_div(&s)?;
    let (upper, lower) = match sign {
        Sign::Plus => (-m_over_s.clone(), m_over_s),
        Sign::Minus => (m_over_s.clone(), -m_over_s),
    };
    let s_mat = Matrix::from_rows(vec![vec![Scalar::zero(), upper], vec![lower, Scalar::zero()]])?;
    Representation::new(AlgebraTag::Su11, vec![Parity::Even, Parity::Odd], vec![m, m], vec![swap_matrix(&s), s_mat])
}

/// The adjoint representation of `SU(1|1)` on `ℂ^{1|2}`: `C = 0`,
/// `U = E₀₁`, `S = E₀₂`.
pub fn make_adjoint_su11() -> Representation {
    let e = |j: usize| Matrix::from_fn(3, 3, |r, c| if r == 0 && c == j { Scalar::one() } else { Scalar::zero() });
    Representation {
        algebra: AlgebraTag::Su11,
        parities: vec![Parity::Even, Parity::Odd, Parity::Odd],
        weights: vec![0, 0, 0],
        generators: vec![e(1), e(2)],
    }
}

/// Multiplicities found by a decomposition together with the change of basis
/// `P` (columns are the new basis vectors) such that `P⁻¹ρP` is the block
/// model returned by [`DecompositionReport::model`].
#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionReport {
    pub algebra: AlgebraTag,
    /// `V_m` multiplicities (`S^{1|1}`).
    pub v: BTreeMap<i64, usize>,
    /// Copies of `W` (`S^{1|1}`).
    pub adjoint: usize,
    /// Copies of `ΠW` (`S^{1|1}`).
    pub parity_adjoint: usize,
    /// Even and odd dimension of the trivial part (`S^{1|1}`).
    pub trivial: (usize, usize),
    /// `π_m^±` multiplicities (`SU(1|1)`).
    pub pi: BTreeMap<(i64, Sign), usize>,
    /// The weight-zero part of an `SU(1|1)` representation, unclassified.
    pub weight_zero: Option<Representation>,
    pub basis_change: Matrix<Scalar>,
    pub mode: ScalarMode,
    pub branch: Branch,
}

impl DecompositionReport {
    /// Labels with multiplicities; weight-zero `SU(1|1)` content is not
    /// listed.
    pub fn labels(&self) -> BTreeMap<RepLabel, usize> {
        let mut out = BTreeMap::new();
        for (&m, &c) in &self.v {
            out.insert(RepLabel::V(m), c);
        }
        for (&(m, s), &c) in &self.pi {
            out.insert(RepLabel::Pi(m, s), c);
        }
        if self.adjoint > 0 {
            out.insert(RepLabel::Adjoint, self.adjoint);
        }
        if self.parity_adjoint > 0 {
            out.insert(RepLabel::ParityAdjoint, self.parity_adjoint);
        }
        out
    }

    /// The block-diagonal model: blocks in increasing weight; inside a
    /// nonzero weight `V_m` or `π_m^+` copies before `π_m^-` copies; at
    /// weight zero `W` copies, `ΠW` copies, then the trivial part (even
    /// vectors first) or the unclassified `SU(1|1)` block.
    pub fn model(&self) -> Result<Representation> {
        let mut weights: Vec<i64> = self.v.keys().copied().chain(self.pi.keys().map(|k| k.0)).collect();
        weights.push(0);
        weights.sort_unstable();
        weights.dedup();
        let mut parts = Vec::new();
        for m in weights {
            if m != 0 {
                for _ in 0..self.v.get(&m).copied().unwrap_or(0) {
                    parts.push(make_v_m_branch(m, self.mode, self.branch)?);
                }
                for sign in [Sign::Plus, Sign::Minus] {
                    for _ in 0..self.pi.get(&(m, sign)).copied().unwrap_or(0) {
                        parts.push(make_pi_m_branch(m, sign, self.mode, self.branch)?);
                    }
                }
                continue;
            }
            match self.algebra {
                AlgebraTag::S11 => {
                    parts.extend(std::iter::repeat_n(make_weight_zero_s11(WeightZeroVariant::W), self.adjoint));
                    parts
                        .extend(std::iter::repeat_n(make_weight_zero_s11(WeightZeroVariant::PiW), self.parity_adjoint));
                    let (p, q) = self.trivial;
                    if p + q > 0 {
                        parts.push(make_trivial(AlgebraTag::S11, p, q));
                    }
                }
                AlgebraTag::Su11 => parts.extend(self.weight_zero.clone()),
            }
        }
        if parts.is_empty() {
            return Ok(make_trivial(self.algebra, 0, 0));
        }
        Representation::direct_sum(&parts)
    }

    /// Whether `P⁻¹ρP` equals the block model entrywise.
    pub fn reproduces(&self, rep: &Representation) -> Result<bool> {
        let model = self.model()?;
        let changed = rep.change_basis(&self.basis_change, &model.parities, &model.weights)?;
        Ok(changed == model)
    }
}

fn unit_vector(n: usize, j: usize) -> Vec<Scalar> {
    (0..n).map(|k| if k == j { Scalar::one() } else { Scalar::zero() }).collect()
}

fn rank_of(columns: &[Vec<Scalar>], n: usize) -> Result<usize> {
    if columns.is_empty() {
        return Ok(0);
    }
    Ok(Matrix::from_columns(n, columns)?.rank())
}

/// Columns in local coordinates of one weight block, with their parities.
struct BlockBasis {
    columns: Vec<Vec<Scalar>>,
    parities: Vec<Parity>,
}

impl BlockBasis {
    fn new() -> Self {
        Self { columns: Vec::new(), parities: Vec::new() }
    }

    fn push(&mut self, v: Vec<Scalar>, p: Parity) {
        self.columns.push(v);
        self.parities.push(p);
    }
}

struct Assembler {
    n: usize,
    columns: Vec<(Vec<usize>, Vec<Scalar>)>,
    parities: Vec<Parity>,
    weights: Vec<i64>,
}

impl Assembler {
    fn new(n: usize) -> Self {
        Self { n, columns: Vec::new(), parities: Vec::new(), weights: Vec::new() }
    }

    fn add_block(&mut self, idx: &[usize], m: i64, block: BlockBasis) {
        for (v, p) in block.columns.into_iter().zip(block.parities) {
            self.columns.push((idx.to_vec(), v));
            self.parities.push(p);
            self.weights.push(m);
        }
    }

    fn finish(self) -> Matrix<Scalar> {
        let mut p = Matrix::zeros(self.n, self.n);
        for (j, (idx, v)) in self.columns.into_iter().enumerate() {
            for (a, c) in idx.into_iter().zip(v) {
                p[(a, j)] = c;
            }
        }
        p
    }
}

fn parity_split(rep: &Representation) -> (Vec<usize>, Vec<usize>) {
    (0..rep.dim()).partition(|&j| rep.parities[j] == Parity::Even)
}

/// Decomposes a weight-zero block with `Z² = 0` as `W^a ⊕ (ΠW)^b ⊕ ℂ^{p|q}`.
/// Returns the local basis in model order and `(a, b, p, q)`.
fn weight_zero_s11_basis(rep: &Representation) -> Result<(BlockBasis, [usize; 4])> {
    let n = rep.dim();
    let z = &rep.generators[0];
    let (even, odd) = parity_split(rep);
    let mut basis = BlockBasis::new();
    let mut targets: [Vec<Vec<Scalar>>; 2] = [Vec::new(), Vec::new()];
    let mut pairs = [0usize; 2];
    // Odd sources give copies of W, even sources copies of ΠW.
    for (slot, (sources, target_rows)) in [(&odd, &even), (&even, &odd)].into_iter().enumerate() {
        let block = z.submatrix(target_rows, sources);
        let pivots = block.echelon().pivots;
        for &c in &pivots {
            let src = unit_vector(n, sources[c]);
            let tgt = z.mul_vec(&src)?;
            targets[slot].push(tgt.clone());
            if slot == 0 {
                basis.push(tgt, Parity::Even);
                basis.push(src, Parity::Odd);
            } else {
                basis.push(src, Parity::Even);
                basis.push(tgt, Parity::Odd);
            }
        }
        pairs[slot] = pivots.len();
    }
    // Trivial part: kernel vectors of each parity completing the image.
    let mut dims = [0usize; 2];
    for (slot, (coords, rows, parity)) in
        [(&even, &odd, Parity::Even), (&odd, &even, Parity::Odd)].into_iter().enumerate()
    {
        let restricted = z.submatrix(rows, coords);
        let kernel: Vec<Vec<Scalar>> = if rows.is_empty() {
            (0..coords.len()).map(|k| unit_vector(coords.len(), k)).collect()
        } else {
            restricted.nullspace()
        };
        let mut span = targets[slot].clone();
        for kv in kernel {
            let mut full = vec![Scalar::zero(); n];
            for (&j, c) in coords.iter().zip(kv) {
                full[j] = c;
            }
            span.push(full.clone());
            if rank_of(&span, n)? == span.len() {
                basis.push(full, parity);
                dims[slot] += 1;
            } else {
                span.pop();
            }
        }
    }
    if basis.columns.len() != n {
        return Err(Error::Validation(vec!["ρ(Z)² ≠ 0 at block m=0".into()]));
    }
    Ok((basis, [pairs[0], pairs[1], dims[0], dims[1]]))
}

/// Weight `m ≠ 0` of an `S^{1|1}` representation: pairs `(e, Ze/s)` over a
/// basis `e` of the even part.
fn v_m_basis(rep: &Representation, m: i64, s: &Scalar) -> Result<(BlockBasis, usize)> {
    let n = rep.dim();
    let (even, odd) = parity_split(rep);
    if even.len() != odd.len() {
        return Err(Error::Validation(vec![format!("unequal even and odd dimensions at block m={m}")]));
    }
    let z = &rep.generators[0];
    let mut basis = BlockBasis::new();
    for &j in &even {
        let e = unit_vector(n, j);
        let ze = z.mul_vec(&e)?;
        let phi = ze.iter().map(|c| c.try_div(s)).collect::<Result<Vec<_>>>()?;
        basis.push(e, Parity::Even);
        basis.push(phi, Parity::Odd);
    }
    Ok((basis, even.len()))
}

/// Weight `m ≠ 0` of an `SU(1|1)` representation: eigenvectors `f` of `US`
/// on the even part with eigenvalue `λ = ±m`, paired with `Uf/s`.
fn pi_m_basis(rep: &Representation, m: i64, s: &Scalar) -> Result<(BlockBasis, usize, usize)> {
    let n = rep.dim();
    let (even, odd) = parity_split(rep);
    if even.len() != odd.len() {
        return Err(Error::Validation(vec![format!("unequal even and odd dimensions at block m={m}")]));
    }
    let (u, s_mat) = (&rep.generators[0], &rep.generators[1]);
    let us = u.try_mul(s_mat)?.submatrix(&even, &even);
    let mut basis = BlockBasis::new();
    let mut counts = [0usize; 2];
    for (slot, lambda) in [m, -m].into_iter().enumerate() {
        let shifted = us.try_sub(&Matrix::identity(even.len()).scale_left(&Scalar::from(lambda)))?;
        let expected = Scalar::gaussian(0, lambda).try_div(&Scalar::from(m))?;
        for local in shifted.nullspace() {
            let mut f = vec![Scalar::zero(); n];
            for (&j, c) in even.iter().zip(local) {
                f[j] = c;
            }
            let uf = u.mul_vec(&f)?;
            let sf = s_mat.mul_vec(&f)?;
            let scaled = uf.iter().map(|c| expected.try_mul(c)).collect::<Result<Vec<_>>>()?;
            if sf != scaled {
                return Err(Error::Eigenvalue(format!("S f ≠ (iλ/m) U f for λ={lambda} at block m={m}")));
            }
            let phi = uf.iter().map(|c| c.try_div(s)).collect::<Result<Vec<_>>>()?;
            basis.push(f, Parity::Even);
            basis.push(phi, Parity::Odd);
            counts[slot] += 1;
        }
    }
    if counts[0] + counts[1] != even.len() {
        return Err(Error::Eigenvalue(format!("ρ(U)ρ(S) has eigenvalues outside {{{m}, {}}} at block m={m}", -m)));
    }
    Ok((basis, counts[0], counts[1]))
}

fn empty_report(rep: &Representation, mode: ScalarMode, branch: Branch) -> DecompositionReport {
    DecompositionReport {
        algebra: rep.algebra,
        v: BTreeMap::new(),
        adjoint: 0,
        parity_adjoint: 0,
        trivial: (0, 0),
        pi: BTreeMap::new(),
        weight_zero: None,
        basis_change: Matrix::identity(rep.dim()),
        mode,
        branch,
    }
}

/// Scalar mode inferred from the entries: float if any entry is a float.
pub fn infer_mode(rep: &Representation) -> ScalarMode {
    for g in &rep.generators {
        for i in 0..g.rows() {
            for j in 0..g.cols() {
                if let Scalar::Float(x) = g.get(i, j) {
                    return ScalarMode::Float { tol: x.tol };
                }
            }
        }
    }
    ScalarMode::Exact
}

/// Splits a weight-zero `S^{1|1}` representation with `ρ(Z)² = 0`.
pub fn decompose_weight_zero_s11(rep: &Representation) -> Result<DecompositionReport> {
    if rep.algebra != AlgebraTag::S11 {
        return Err(Error::Unsupported(format!("expected s11, got {}", rep.algebra)));
    }
    if rep.weights.iter().any(|&m| m != 0) {
        return Err(Error::Validation(vec!["nonzero weight present".into()]));
    }
    let z = &rep.generators[0];
    if !z.try_mul(z)?.is_zero() {
        return Err(Error::Validation(vec!["ρ(Z)² ≠ 0 at block m=0".into()]));
    }
    decompose_s11(rep)
}

pub fn decompose_s11(rep: &Representation) -> Result<DecompositionReport> {
    decompose_s11_branch(rep, Branch::Principal)
}

pub fn decompose_s11_branch(rep: &Representation, branch: Branch) -> Result<DecompositionReport> {
    if rep.algebra != AlgebraTag::S11 {
        return Err(Error::Unsupported(format!("expected s11, got {}", rep.algebra)));
    }
    ensure_valid(rep)?;
    let mode = infer_mode(rep);
    let mut report = empty_report(rep, mode, branch);
    let mut asm = Assembler::new(rep.dim());
    for m in rep.weight_set() {
        let idx = rep.weight_indices(m);
        let block = rep.restrict(&idx);
        if m == 0 {
            let (basis, [a, b, p, q]) = weight_zero_s11_basis(&block)?;
            report.adjoint = a;
            report.parity_adjoint = b;
            report.trivial = (p, q);
            asm.add_block(&idx, 0, basis);
        } else {
            let s = sqrt_neg_im_branch(m, mode, branch)?;
            let (basis, count) = v_m_basis(&block, m, &s)?;
            report.v.insert(m, count);
            asm.add_block(&idx, m, basis);
        }
    }
    report.basis_change = asm.finish();
    Ok(report)
}

pub fn decompose_su11(rep: &Representation) -> Result<DecompositionReport> {
    decompose_su11_branch(rep, Branch::Principal)
}

pub fn decompose_su11_branch(rep: &Representation, branch: Branch) -> Result<DecompositionReport> {
    if rep.algebra != AlgebraTag::Su11 {
        return Err(Error::Unsupported(format!("expected su11, got {}", rep.algebra)));
    }
    ensure_valid(rep)?;
    let mode = infer_mode(rep);
    let mut report = empty_report(rep, mode, branch);
    let mut asm = Assembler::new(rep.dim());
    for m in rep.weight_set() {
        let idx = rep.weight_indices(m);
        let block = rep.restrict(&idx);
        if m == 0 {
            let k = idx.len();
            let mut basis = BlockBasis::new();
            for j in 0..k {
                basis.push(unit_vector(k, j), block.parities[j]);
            }
            report.weight_zero = Some(block);
            asm.add_block(&idx, 0, basis);
        } else {
            let s = sqrt_neg_im_branch(m, mode, branch)?;
            let (basis, plus, minus) = pi_m_basis(&block, m, &s)?;
            if plus > 0 {
                report.pi.insert((m, Sign::Plus), plus);
            }
            if minus > 0 {
                report.pi.insert((m, Sign::Minus), minus);
            }
            asm.add_block(&idx, m, basis);
        }
    }
    report.basis_change = asm.finish();
    Ok(report)
}

pub fn decompose(rep: &Representation) -> Result<DecompositionReport> {
    match rep.algebra {
        AlgebraTag::S11 => decompose_s11(rep),
        AlgebraTag::Su11 => decompose_su11(rep),
    }
}

fn random_gaussian<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> GaussianRational {
    GaussianRational::from_ints(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound))
}

/// A random invertible matrix that preserves parity and weight of `rep`'s
/// basis. Entries are small Gaussian integers; with `extended`, entries in
/// weight-`m` blocks are `c₀ + c₁·s` with `s² = -im`.
pub fn random_even_invertible<R: Rng + ?Sized>(
    rep: &Representation,
    rng: &mut R,
    extended: bool,
) -> Result<Matrix<Scalar>> {
    let n = rep.dim();
    let mut p = Matrix::zeros(n, n);
    for m in rep.weight_set() {
        let idx = rep.weight_indices(m);
        for parity in [Parity::Even, Parity::Odd] {
            let part: Vec<usize> = idx.iter().copied().filter(|&j| rep.parities[j] == parity).collect();
            if part.is_empty() {
                continue;
            }
            let block = loop {
                let candidate = Matrix::from_fn(part.len(), part.len(), |_, _| {
                    let c0 = random_gaussian(rng, 3);
                    if extended && m != 0 && gaussian_root_of_neg_im(m).is_none() {
                        let c1 = random_gaussian(rng, 2);
                        match ExtendedScalar::new(c0.clone(), c1, m) {
                            Ok(x) => Scalar::from(x),
                            Err(_) => Scalar::Exact(c0),
                        }
                    } else {
                        Scalar::Exact(c0)
                    }
                });
                if candidate.inverse().is_ok() {
                    break candidate;
                }
            };
            for (a, &i) in part.iter().enumerate() {
                for (b, &j) in part.iter().enumerate() {
                    p[(i, j)] = block.get(a, b).clone();
                }
            }
        }
    }
    Ok(p)
}

/// Conjugates `rep` by a random grading-preserving invertible matrix.
pub fn scramble<R: Rng + ?Sized>(rep: &Representation, rng: &mut R, extended: bool) -> Result<Representation> {
    let p = random_even_invertible(rep, rng, extended)?;
    rep.conjugate(&p)
}
