//! The Lie superalgebras `⟨C, Z⟩` of `S^{1|1}` and `su(1|1) = ⟨C, U, S⟩`,
//! and finite-dimensional representations of them.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::grassmann::Parity;
use crate::matrix::Matrix;
use crate::scalars::Scalar;
use crate::supermatrix::SuperMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgebraTag {
    S11,
    Su11,
}

impl AlgebraTag {
    pub fn name(self) -> &'static str {
        match self {
            AlgebraTag::S11 => "s11",
            AlgebraTag::Su11 => "su11",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "s11" => Ok(AlgebraTag::S11),
            "su11" => Ok(AlgebraTag::Su11),
            other => Err(Error::UnknownTag(other.to_string())),
        }
    }

    /// Names of the odd generators, in the order representations store them.
    pub fn odd_generators(self) -> &'static [&'static str] {
        match self {
            AlgebraTag::S11 => &["Z"],
            AlgebraTag::Su11 => &["U", "S"],
        }
    }
}

impl fmt::Display for AlgebraTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A finite-dimensional Lie superalgebra given by structure constants:
/// `[x_i, x_j] = Σ_k c[i][j][k] x_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct LieSuperAlgebra {
    names: Vec<String>,
    parities: Vec<Parity>,
    constants: Vec<Vec<Vec<Scalar>>>,
    defining: Option<Vec<SuperMatrix>>,
}

impl LieSuperAlgebra {
    /// Builds an algebra from the brackets `(i, j, [x_i, x_j])` with `i ≤ j`;
    /// the remaining brackets follow from super-antisymmetry. Fails unless
    /// the graded Jacobi identity holds.
    pub fn new(basis: &[(&str, Parity)], brackets: &[(usize, usize, Vec<Scalar>)]) -> Result<Self> {
        let n = basis.len();
        let names: Vec<String> = basis.iter().map(|(s, _)| s.to_string()).collect();
        let parities: Vec<Parity> = basis.iter().map(|(_, p)| *p).collect();
        let mut constants = vec![vec![vec![Scalar::zero(); n]; n]; n];
        for (i, j, v) in brackets {
            let (i, j) = (*i, *j);
            if i >= n || j >= n || v.len() != n {
                return Err(Error::Dimension("bracket index out of range".into()));
            }
            let sign = Scalar::from(-parities[i].sign_with(parities[j]));
            constants[i][j] = v.clone();
            if i != j {
                constants[j][i] = v.iter().map(|c| &sign * c).collect();
            }
        }
        let alg = Self { names, parities, constants, defining: None };
        let violations = alg.check_identities();
        if violations.is_empty() {
            Ok(alg)
        } else {
            Err(Error::Validation(violations))
        }
    }

    pub fn builtin(tag: AlgebraTag) -> Self {
        let z = Scalar::zero;
        match tag {
            AlgebraTag::S11 => {
                Self::new(&[("C", Parity::Even), ("Z", Parity::Odd)], &[(1, 1, vec![Scalar::from(-2), z()])])
                    .expect("builtin s11")
            }
            AlgebraTag::Su11 => {
                let mut alg = Self::new(
                    &[("C", Parity::Even), ("U", Parity::Odd), ("S", Parity::Odd)],
                    &[(1, 1, vec![Scalar::from(-2), z(), z()]), (2, 2, vec![Scalar::from(-2), z(), z()])],
                )
                .expect("builtin su11");
                alg.defining = Some(su11_defining_matrices().to_vec());
                alg
            }
        }
    }

    pub fn parse_builtin(tag: &str) -> Result<Self> {
        Ok(Self::builtin(AlgebraTag::parse(tag)?))
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Coefficients of `[x_i, x_j]`.
    pub fn bracket(&self, i: usize, j: usize) -> &[Scalar] {
        &self.constants[i][j]
    }

    /// Matrices of the defining representation, when one is attached.
    pub fn defining_matrices(&self) -> Option<&[SuperMatrix]> {
        self.defining.as_deref()
    }

    /// Bracket of two homogeneous basis-coordinate vectors.
    fn bracket_vec(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let c = xi * yj;
                for (o, k) in out.iter_mut().zip(&self.constants[i][j]) {
                    *o = &*o + &(&c * k);
                }
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<Scalar> {
        (0..self.dim()).map(|k| if k == i { Scalar::one() } else { Scalar::zero() }).collect()
    }

    /// Super-antisymmetry, parity compatibility and the graded Jacobi
    /// identity on basis triples.
    pub fn check_identities(&self) -> Vec<String> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let sign = Scalar::from(-self.parities[i].sign_with(self.parities[j]));
                let flipped: Vec<Scalar> = self.constants[j][i].iter().map(|c| &sign * c).collect();
                if self.constants[i][j] != flipped {
                    out.push(format!("super-antisymmetry fails for [{}, {}]", self.names[i], self.names[j]));
                }
                let p = self.parities[i] + self.parities[j];
                for k in 0..n {
                    if !self.constants[i][j][k].is_zero() && self.parities[k] != p {
                        out.push(format!("[{}, {}] has a component of the wrong parity", self.names[i], self.names[j]));
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (pi, pj, pk) = (self.parities[i], self.parities[j], self.parities[k]);
                    let term = |a: usize, b: usize, c: usize, s| {
                        let inner = self.bracket_vec(&self.unit(b), &self.unit(c));
                        let outer = self.bracket_vec(&self.unit(a), &inner);
                        outer.into_iter().map(|x| &Scalar::from(s) * &x).collect::<Vec<_>>()
                    };
                    let t1 = term(i, j, k, pi.sign_with(pk));
                    let t2 = term(j, k, i, pj.sign_with(pi));
                    let t3 = term(k, i, j, pk.sign_with(pj));
                    let sum: Vec<Scalar> = (0..n).map(|m| &(&t1[m] + &t2[m]) + &t3[m]).collect();
                    if sum.iter().any(|x| !x.is_zero()) {
                        out.push(format!(
                            "graded Jacobi fails for ({}, {}, {})",
                            self.names[i], self.names[j], self.names[k]
                        ));
                    }
                }
            }
        }
        out
    }
}

/// `C = iI`, `U = [[0,1],[-i,0]]`, `S = [[0,i],[-1,0]]` on `ℂ^{1|1}`.
pub fn su11_defining_matrices() -> [SuperMatrix; 3] {
    let z = Scalar::zero;
    let mk =
        |rows: Vec<Vec<Scalar>>| SuperMatrix::from_scalars(1, 1, &Matrix::from_rows(rows).expect("2x2")).expect("1|1");
    [
        mk(vec![vec![Scalar::i(), z()], vec![z(), Scalar::i()]]),
        mk(vec![vec![z(), Scalar::one()], vec![-Scalar::i(), z()]]),
        mk(vec![vec![z(), Scalar::i()], vec![-Scalar::one(), z()]]),
    ]
}

/// A representation on `ℂ^{p|q}` with a chosen homogeneous weight basis.
///
/// `ρ(C)` is `diag(i·m_j)` and is stored only as the weight vector; the odd
/// generators are stored as matrices in the order of
/// [`AlgebraTag::odd_generators`].
#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    pub algebra: AlgebraTag,
    pub parities: Vec<Parity>,
    pub weights: Vec<i64>,
    pub generators: Vec<Matrix<Scalar>>,
}

impl Representation {
    pub fn new(
        algebra: AlgebraTag,
        parities: Vec<Parity>,
        weights: Vec<i64>,
        generators: Vec<Matrix<Scalar>>,
    ) -> Result<Self> {
        let n = parities.len();
        if weights.len() != n {
            return Err(Error::Dimension("parity and weight vectors differ in length".into()));
        }
        if generators.len() != algebra.odd_generators().len() {
            return Err(Error::Dimension(format!(
                "{} needs {} generator matrices",
                algebra,
                algebra.odd_generators().len()
            )));
        }
        if generators.iter().any(|g| g.rows() != n || g.cols() != n) {
            return Err(Error::Dimension(format!("generator matrices must be {n}x{n}")));
        }
        Ok(Self { algebra, parities, weights, generators })
    }

    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    /// `(p, q)`: numbers of even and odd basis vectors.
    pub fn superdim(&self) -> (usize, usize) {
        let p = self.parities.iter().filter(|&&x| x == Parity::Even).count();
        (p, self.dim() - p)
    }

    pub fn generator(&self, name: &str) -> Option<&Matrix<Scalar>> {
        let k = self.algebra.odd_generators().iter().position(|n| *n == name)?;
        self.generators.get(k)
    }

    /// `ρ(C) = diag(i·m_j)`.
    pub fn c_matrix(&self) -> Matrix<Scalar> {
        Matrix::diagonal(self.weights.iter().map(|&m| Scalar::gaussian(0, m)).collect())
    }

    /// Distinct weights in increasing order.
    pub fn weight_set(&self) -> Vec<i64> {
        self.weights.iter().copied().collect::<BTreeSet<_>>().into_iter().collect()
    }

    /// Basis indices carrying weight `m`.
    pub fn weight_indices(&self, m: i64) -> Vec<usize> {
        (0..self.dim()).filter(|&j| self.weights[j] == m).collect()
    }

    /// The restriction to the span of the basis vectors in `indices`.
    pub fn restrict(&self, indices: &[usize]) -> Self {
        Self {
            algebra: self.algebra,
            parities: indices.iter().map(|&j| self.parities[j]).collect(),
            weights: indices.iter().map(|&j| self.weights[j]).collect(),
            generators: self.generators.iter().map(|g| g.submatrix(indices, indices)).collect(),
        }
    }

    pub fn direct_sum(parts: &[Representation]) -> Result<Self> {
        let algebra = match parts.first() {
            Some(r) => r.algebra,
            None => return Err(Error::Dimension("empty direct sum".into())),
        };
        if parts.iter().any(|r| r.algebra != algebra) {
            return Err(Error::Unsupported("direct sum of different algebras".into()));
        }
        let generators = (0..algebra.odd_generators().len())
            .map(|k| {
                let blocks: Vec<Matrix<Scalar>> = parts.iter().map(|r| r.generators[k].clone()).collect();
                Matrix::direct_sum(&blocks)
            })
            .collect();
        Ok(Self {
            algebra,
            parities: parts.iter().flat_map(|r| r.parities.iter().copied()).collect(),
            weights: parts.iter().flat_map(|r| r.weights.iter().copied()).collect(),
            generators,
        })
    }

    /// The representation in the basis given by the columns of `p`:
    /// `X ↦ p⁻¹ X p`. `p` must preserve parity and weight.
    pub fn conjugate(&self, p: &Matrix<Scalar>) -> Result<Self> {
        self.change_basis(p, &self.parities, &self.weights)
    }

    /// The representation in a new basis whose `j`-th vector is column `j`
    /// of `p` and has the given parity and weight. Every nonzero `p[i, j]`
    /// must connect basis vectors of equal parity and weight.
    pub fn change_basis(&self, p: &Matrix<Scalar>, parities: &[Parity], weights: &[i64]) -> Result<Self> {
        let n = self.dim();
        if p.rows() != n || p.cols() != n || parities.len() != n || weights.len() != n {
            return Err(Error::Dimension(format!("change of basis must be {n}x{n}")));
        }
        for i in 0..n {
            for j in 0..n {
                if !p.get(i, j).is_zero() && (self.parities[i] != parities[j] || self.weights[i] != weights[j]) {
                    return Err(Error::Parity("change of basis must preserve parity and weight".into()));
                }
            }
        }
        let ws = self.weight_set();
        let mut blocks = Vec::new();
        for &m in &ws {
            let old: Vec<usize> = self.weight_indices(m);
            let new: Vec<usize> = (0..n).filter(|&j| weights[j] == m).collect();
            if old.len() != new.len() {
                return Err(Error::Dimension(format!("weight {m} multiplicity changes")));
            }
            let pm = p.submatrix(&old, &new);
            let inv = pm.inverse()?;
            blocks.push((old, new, pm, inv));
        }
        let mut generators = vec![Matrix::zeros(n, n); self.generators.len()];
        for (k, g) in self.generators.iter().enumerate() {
            for (old1, new1, _, inv) in &blocks {
                for (old2, new2, p2, _) in &blocks {
                    let sub = g.submatrix(old1, old2);
                    if sub.is_zero() {
                        continue;
                    }
                    let out = inv.try_mul(&sub)?.try_mul(p2)?;
                    for (a, &i) in new1.iter().enumerate() {
                        for (b, &j) in new2.iter().enumerate() {
                            generators[k][(i, j)] = out.get(a, b).clone();
                        }
                    }
                }
            }
        }
        Ok(Self { algebra: self.algebra, parities: parities.to_vec(), weights: weights.to_vec(), generators })
    }
}

fn block_product(a: &Matrix<Scalar>, b: &Matrix<Scalar>) -> Option<Matrix<Scalar>> {
    a.try_mul(b).ok()
}

/// Checks the defining relations of a representation and returns the list of
/// violated ones (empty when valid).
pub fn validate_representation(rep: &Representation) -> Vec<String> {
    let mut out = Vec::new();
    let n = rep.dim();
    let names = rep.algebra.odd_generators();
    let mut grading_ok = true;
    for (name, g) in names.iter().zip(&rep.generators) {
        let mut odd = true;
        let mut commutes = true;
        for i in 0..n {
            for j in 0..n {
                if g.get(i, j).is_zero() {
                    continue;
                }
                odd &= rep.parities[i] != rep.parities[j];
                commutes &= rep.weights[i] == rep.weights[j];
            }
        }
        if !odd {
            out.push(format!("ρ({name}) is not odd"));
        }
        if !commutes {
            out.push(format!("ρ({name}) does not commute with ρ(C)"));
        }
        grading_ok &= odd && commutes;
    }
    if !grading_ok {
        return out;
    }
    for m in rep.weight_set() {
        let idx = rep.weight_indices(m);
        let k = idx.len();
        let minus_c = Matrix::<Scalar>::identity(k).scale_left(&Scalar::gaussian(0, -m));
        let blocks: Vec<Matrix<Scalar>> = rep.generators.iter().map(|g| g.submatrix(&idx, &idx)).collect();
        for (name, b) in names.iter().zip(&blocks) {
            if block_product(b, b).as_ref() != Some(&minus_c) {
                out.push(format!("ρ({name})² ≠ −ρ(C) at block m={m}"));
            }
        }
        if rep.algebra == AlgebraTag::Su11 {
            let (u, s) = (&blocks[0], &blocks[1]);
            let anti = block_product(u, s).zip(block_product(s, u)).and_then(|(a, b)| a.try_add(&b).ok());
            if !anti.is_some_and(|x| x.is_zero()) {
                out.push(format!("ρ(U)ρ(S) + ρ(S)ρ(U) ≠ 0 at block m={m}"));
            }
            let c_sq = Matrix::<Scalar>::identity(k).scale_left(&Scalar::from(m * m));
            let us_sq = block_product(u, s).and_then(|x| block_product(&x, &x));
            if us_sq.as_ref() != Some(&c_sq) {
                out.push(format!("(ρ(U)ρ(S))² ≠ −ρ(C)² at block m={m}"));
            }
        }
    }
    out
}

/// Fails with the full list of violations unless `rep` is valid.
pub fn ensure_valid(rep: &Representation) -> Result<()> {
    let v = validate_representation(rep);
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::Validation(v))
    }
}

/// A basis of the even intertwiners `F: rep1 → rep2`, i.e. parity-preserving
/// `F` with `F ρ₁(X) = ρ₂(X) F` for every generator `X` including `C`.
pub fn find_even_intertwiners(rep1: &Representation, rep2: &Representation) -> Result<Vec<Matrix<Scalar>>> {
    if rep1.algebra != rep2.algebra {
        return Err(Error::Unsupported("intertwiners between different algebras".into()));
    }
    let (n1, n2) = (rep1.dim(), rep2.dim());
    let mut basis = Vec::new();
    let weights: BTreeSet<i64> = rep1.weights.iter().copied().collect();
    for m in weights {
        let i1 = rep1.weight_indices(m);
        let i2 = rep2.weight_indices(m);
        if i2.is_empty() {
            continue;
        }
        // Unknown F[a, b] maps source vector i1[b] to target vector i2[a].
        let unknowns: Vec<(usize, usize)> = (0..i2.len())
            .flat_map(|a| (0..i1.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| rep2.parities[i2[a]] == rep1.parities[i1[b]])
            .collect();
        if unknowns.is_empty() {
            continue;
        }
        let mut rows = Vec::new();
        for (g1, g2) in rep1.generators.iter().zip(&rep2.generators) {
            let x1 = g1.submatrix(&i1, &i1);
            let x2 = g2.submatrix(&i2, &i2);
            // (F x1 - x2 F)[a, b] = Σ_c F[a, c] x1[c, b] - Σ_c x2[a, c] F[c, b].
            for a in 0..i2.len() {
                for b in 0..i1.len() {
                    let row: Vec<Scalar> = unknowns
                        .iter()
                        .map(|&(ra, rc)| {
                            let mut v = Scalar::zero();
                            if ra == a {
                                v = v.try_add(x1.get(rc, b))?;
                            }
                            if rc == b {
                                v = v.try_sub(x2.get(a, ra))?;
                            }
                            Ok(v)
                        })
                        .collect::<Result<_>>()?;
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        let null = if rows.is_empty() {
            (0..unknowns.len())
                .map(|k| (0..unknowns.len()).map(|l| if k == l { Scalar::one() } else { Scalar::zero() }).collect())
                .collect()
        } else {
            Matrix::from_rows(rows)?.nullspace()
        };
        for v in null {
            let mut f = Matrix::zeros(n2, n1);
            for (&(a, b), c) in unknowns.iter().zip(v) {
                f[(i2[a], i1[b])] = c;
            }
            basis.push(f);
        }
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_tables() {
        let s11 = LieSuperAlgebra::builtin(AlgebraTag::S11);
        assert!(s11.bracket(0, 1).iter().all(|c| c.is_zero()));
        assert_eq!(s11.bracket(1, 1)[0], Scalar::from(-2));
        let su = LieSuperAlgebra::builtin(AlgebraTag::Su11);
        assert!(su.bracket(1, 2).iter().all(|c| c.is_zero()));
        assert!(su.check_identities().is_empty());
    }

    #[test]
    fn defining_matrices_realize_table() {
        let su = LieSuperAlgebra::builtin(AlgebraTag::Su11);
        let mats = su.defining_matrices().unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let lhs = mats[i].supercommutator(&mats[j]).unwrap();
                let mut rhs = SuperMatrix::identity(1, 1).scale(&Scalar::zero());
                for (k, c) in su.bracket(i, j).iter().enumerate() {
                    rhs = rhs.try_add(&mats[k].scale(c)).unwrap();
                }
                assert_eq!(lhs, rhs, "[{i},{j}]");
            }
        }
    }

    #[test]
    fn broken_jacobi_rejected() {
        // [Z,Z] = C with [C,Z] = Z violates graded Jacobi for (Z,Z,Z).
        let r = LieSuperAlgebra::new(
            &[("C", Parity::Even), ("Z", Parity::Odd)],
            &[(0, 1, vec![Scalar::zero(), Scalar::one()]), (1, 1, vec![Scalar::one(), Scalar::zero()])],
        );
        assert!(matches!(r, Err(Error::Validation(_))));
    }

    #[test]
    fn trivial_rep_is_valid() {
        let rep = Representation::new(
            AlgebraTag::Su11,
            vec![Parity::Even, Parity::Odd],
            vec![0, 0],
            vec![Matrix::zeros(2, 2), Matrix::zeros(2, 2)],
        )
        .unwrap();
        assert!(validate_representation(&rep).is_empty());
        assert_eq!(find_even_intertwiners(&rep, &rep).unwrap().len(), 2);
    }

    #[test]
    fn odd_generator_connecting_even_vectors_rejected() {
        let rep = Representation::new(
            AlgebraTag::S11,
            vec![Parity::Even, Parity::Even],
            vec![0, 0],
            vec![Matrix::from_rows(vec![vec![Scalar::zero(), Scalar::one()], vec![Scalar::zero(), Scalar::zero()]])
                .unwrap()],
        )
        .unwrap();
        assert_eq!(validate_representation(&rep), vec!["ρ(Z) is not odd".to_string()]);
    }
}
