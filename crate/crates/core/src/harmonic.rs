//! Matrix coefficients of representations as polynomial functions on the
//! supergroup, and expansion of such functions in matrix coefficients.
//!
//! A function is a finite sum of terms `c · t^m · μ` where `t` is the
//! unit-circle coordinate and `μ` is a monomial in the odd coordinates:
//! `θ` on `S^{1|1}`, `θ` and `η` on `SU(1|1)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::liealg::{ensure_valid, AlgebraTag, Representation};
use crate::matrix::Matrix;
use crate::reps::{RepLabel, Sign};
use crate::scalars::{Branch, Scalar, ScalarMode};

/// Bitmask of odd coordinates: bit 0 is `θ`, bit 1 is `η`.
pub type OddMonomial = u8;

pub const THETA: OddMonomial = 0b01;
pub const ETA: OddMonomial = 0b10;
pub const THETA_ETA: OddMonomial = 0b11;

pub fn monomial_names(mono: OddMonomial) -> Vec<&'static str> {
    let mut out = Vec::new();
    if mono & THETA != 0 {
        out.push("theta");
    }
    if mono & ETA != 0 {
        out.push("eta");
    }
    out
}

/// Parses a list of coordinate names into a canonical monomial, with the
/// sign of the reordering. Repeated names give `None` (the monomial is 0).
pub fn parse_monomial(names: &[String], group: AlgebraTag) -> Result<Option<(OddMonomial, i64)>> {
    let mut mono = 0u8;
    let mut sign = 1;
    for name in names {
        let bit = match name.as_str() {
            "theta" => THETA,
            "eta" if group == AlgebraTag::Su11 => ETA,
            other => return Err(Error::Parse(format!("unknown coordinate `{other}` for {group}"))),
        };
        if mono & bit != 0 {
            return Ok(None);
        }
        if bit == THETA && mono & ETA != 0 {
            sign = -sign;
        }
        mono |= bit;
    }
    Ok(Some((mono, sign)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Section {
    pub group: AlgebraTag,
    terms: BTreeMap<(i64, OddMonomial), Scalar>,
}

impl Section {
    pub fn zero(group: AlgebraTag) -> Self {
        Self { group, terms: BTreeMap::new() }
    }

    pub fn monomial(group: AlgebraTag, m: i64, mono: OddMonomial, coef: Scalar) -> Result<Self> {
        let mut s = Self::zero(group);
        s.add_term(m, mono, coef)?;
        Ok(s)
    }

    pub fn terms(&self) -> &BTreeMap<(i64, OddMonomial), Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: i64, mono: OddMonomial) -> Scalar {
        self.terms.get(&(m, mono)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn weights(&self) -> Vec<i64> {
        let mut w: Vec<i64> = self.terms.keys().map(|k| k.0).collect();
        w.dedup();
        w
    }

    pub fn add_term(&mut self, m: i64, mono: OddMonomial, coef: Scalar) -> Result<()> {
        if self.group == AlgebraTag::S11 && mono & ETA != 0 {
            return Err(Error::Parse("η is not a coordinate of s11".into()));
        }
        let sum = self.coefficient(m, mono).try_add(&coef)?;
        if sum.is_zero() {
            self.terms.remove(&(m, mono));
        } else {
            self.terms.insert((m, mono), sum);
        }
        Ok(())
    }

    pub fn try_add(&self, rhs: &Section) -> Result<Section> {
        if self.group != rhs.group {
            return Err(Error::Unsupported("sections on different groups".into()));
        }
        let mut out = self.clone();
        for (&(m, mono), c) in &rhs.terms {
            out.add_term(m, mono, c.clone())?;
        }
        Ok(out)
    }

    pub fn try_sub(&self, rhs: &Section) -> Result<Section> {
        self.try_add(&rhs.scale(&Scalar::from(-1))?)
    }

    pub fn scale(&self, c: &Scalar) -> Result<Section> {
        let mut out = Self::zero(self.group);
        for (&(m, mono), x) in &self.terms {
            out.add_term(m, mono, c.try_mul(x)?)?;
        }
        Ok(out)
    }

    /// The terms of weight `m`.
    pub fn component(&self, m: i64) -> Section {
        Self {
            group: self.group,
            terms: self.terms.iter().filter(|(k, _)| k.0 == m).map(|(k, v)| (*k, v.clone())).collect(),
        }
    }

    fn mode(&self) -> ScalarMode {
        self.terms
            .values()
            .find_map(|c| match c {
                Scalar::Float(x) => Some(ScalarMode::Float { tol: x.tol }),
                _ => None,
            })
            .unwrap_or(ScalarMode::Exact)
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (&(m, mono), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            if m != 0 {
                write!(f, "·t^{m}")?;
            }
            for name in monomial_names(mono) {
                write!(f, "·{name}")?;
            }
        }
        Ok(())
    }
}

/// Entries of `diag(t^{m_j})·(1 + θρ(U))(1 + ηρ(S))` (or `(1 + θρ(Z))`) as
/// sections, indexed `[i][j]`.
pub fn matrix_coefficients(rep: &Representation) -> Result<Vec<Vec<Section>>> {
    ensure_valid(rep)?;
    let n = rep.dim();
    let group = rep.algebra;
    let gens = &rep.generators;
    let us = match group {
        AlgebraTag::Su11 => Some(gens[0].try_mul(&gens[1])?),
        AlgebraTag::S11 => None,
    };
    let mut out = vec![vec![Section::zero(group); n]; n];
    for (i, row) in out.iter_mut().enumerate() {
        let m = rep.weights[i];
        for (j, entry) in row.iter_mut().enumerate() {
            if i == j {
                entry.add_term(m, 0, Scalar::one())?;
            }
            entry.add_term(m, THETA, gens[0].get(i, j).clone())?;
            if let Some(us) = &us {
                entry.add_term(m, ETA, gens[1].get(i, j).clone())?;
                entry.add_term(m, THETA_ETA, us.get(i, j).clone())?;
            }
        }
    }
    Ok(out)
}

/// A coefficient index: representation label and matrix entry.
pub type CoefficientKey = (RepLabel, (usize, usize));

#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionResult {
    pub group: AlgebraTag,
    pub coefficients: BTreeMap<CoefficientKey, Scalar>,
    pub residual: Section,
}

/// The matrix coefficients used to expand the weight-`m` part of a section:
/// `π_m^+` (or `V_m`) for `m ≠ 0`; the trivial coefficient and the
/// off-diagonal adjoint coefficients for `m = 0`.
pub fn expansion_basis(group: AlgebraTag, m: i64, mode: ScalarMode) -> Result<Vec<(CoefficientKey, Section)>> {
    let (label, entries): (RepLabel, &[(usize, usize)]) = match (group, m) {
        (AlgebraTag::S11, 0) => (RepLabel::Adjoint, &[(0, 1)]),
        (AlgebraTag::Su11, 0) => (RepLabel::Adjoint, &[(0, 1), (0, 2)]),
        (AlgebraTag::S11, _) => (RepLabel::V(m), &[(0, 0), (0, 1)]),
        (AlgebraTag::Su11, _) => (RepLabel::Pi(m, Sign::Plus), &[(0, 0), (0, 1), (1, 0), (1, 1)]),
    };
    let mut out = Vec::new();
    if m == 0 {
        out.push(((RepLabel::Trivial, (0, 0)), Section::monomial(group, 0, 0, Scalar::one())?));
    }
    let coeffs = matrix_coefficients(&label.build(group, mode, Branch::Principal)?)?;
    for &(i, j) in entries {
        out.push(((label, (i, j)), coeffs[i][j].clone()));
    }
    Ok(out)
}

fn monomials(group: AlgebraTag) -> &'static [OddMonomial] {
    match group {
        AlgebraTag::S11 => &[0, THETA],
        AlgebraTag::Su11 => &[0, THETA, ETA, THETA_ETA],
    }
}

/// Writes `f` as a combination of matrix coefficients plus a residual that
/// lies outside their span.
pub fn expand(f: &Section) -> Result<ExpansionResult> {
    let group = f.group;
    let mode = f.mode();
    let mut coefficients = BTreeMap::new();
    let mut residual = Section::zero(group);
    for m in f.weights() {
        let target = f.component(m);
        let basis = expansion_basis(group, m, mode)?;
        let monos = monomials(group);
        let a = Matrix::from_fn(monos.len(), basis.len(), |r, c| basis[c].1.coefficient(m, monos[r]));
        let b: Vec<Scalar> = monos.iter().map(|&mono| target.coefficient(m, mono)).collect();
        // Solve on a maximal set of independent rows; what the basis cannot
        // reach stays in the residual.
        let rows = a.transpose().echelon().pivots;
        let a_sub = a.submatrix(&rows, &(0..basis.len()).collect::<Vec<_>>());
        let b_sub: Vec<Scalar> = rows.iter().map(|&r| b[r].clone()).collect();
        let x = a_sub.solve(&b_sub)?.ok_or_else(|| Error::NotInvertible(format!("expansion system at weight {m}")))?;
        let mut approx = Section::zero(group);
        for ((key, sec), c) in basis.iter().zip(x) {
            if c.is_zero() {
                continue;
            }
            approx = approx.try_add(&sec.scale(&c)?)?;
            coefficients.insert(*key, c);
        }
        residual = residual.try_add(&target.try_sub(&approx)?)?;
    }
    Ok(ExpansionResult { group, coefficients, residual })
}

/// `Σ c · (matrix coefficient)` over the given keys.
pub fn reconstruct(
    group: AlgebraTag,
    coefficients: &BTreeMap<CoefficientKey, Scalar>,
    mode: ScalarMode,
) -> Result<Section> {
    let mut out = Section::zero(group);
    let mut cache: BTreeMap<RepLabel, Vec<Vec<Section>>> = BTreeMap::new();
    for (&(label, (i, j)), c) in coefficients {
        if let std::collections::btree_map::Entry::Vacant(e) = cache.entry(label) {
            let rep = label.build(group, mode, Branch::Principal)?;
            e.insert(matrix_coefficients(&rep)?);
        }
        let coeffs = &cache[&label];
        let sec = coeffs
            .get(i)
            .and_then(|row| row.get(j))
            .ok_or_else(|| Error::Dimension(format!("{label} has no entry ({i},{j})")))?;
        out = out.try_add(&sec.scale(c)?)?;
    }
    Ok(out)
}

impl ExpansionResult {
    /// `reconstruct(coefficients) + residual`.
    pub fn recombine(&self, mode: ScalarMode) -> Result<Section> {
        reconstruct(self.group, &self.coefficients, mode)?.try_add(&self.residual)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::{make_adjoint_su11, make_pi_m, make_v_m};
    use crate::scalars::sqrt_neg_im;

    const EXACT: ScalarMode = ScalarMode::Exact;

    #[test]
    fn pi_plus_coefficients() {
        let m = 3;
        let c = matrix_coefficients(&make_pi_m(m, Sign::Plus, EXACT).unwrap()).unwrap();
        let s = sqrt_neg_im(m, EXACT).unwrap();
        let mut e00 = Section::monomial(AlgebraTag::Su11, m, 0, Scalar::one()).unwrap();
        e00.add_term(m, THETA_ETA, Scalar::from(m)).unwrap();
        assert_eq!(c[0][0], e00);
        let mut e01 = Section::monomial(AlgebraTag::Su11, m, THETA, s.clone()).unwrap();
        e01.add_term(m, ETA, -(&s * &Scalar::i())).unwrap();
        assert_eq!(c[0][1], e01);
    }

    #[test]
    fn adjoint_coefficients() {
        let c = matrix_coefficients(&make_adjoint_su11()).unwrap();
        let one = Section::monomial(AlgebraTag::Su11, 0, 0, Scalar::one()).unwrap();
        assert!((0..3).all(|k| c[k][k] == one));
        assert_eq!(c[0][1], Section::monomial(AlgebraTag::Su11, 0, THETA, Scalar::one()).unwrap());
        assert_eq!(c[0][2], Section::monomial(AlgebraTag::Su11, 0, ETA, Scalar::one()).unwrap());
        let others = [(1, 0), (1, 2), (2, 0), (2, 1)];
        assert!(others.iter().all(|&(i, j)| c[i][j].is_zero()));
    }

    #[test]
    fn v_m_coefficients() {
        let c = matrix_coefficients(&make_v_m(-2, EXACT).unwrap()).unwrap();
        let s = sqrt_neg_im(-2, EXACT).unwrap();
        assert_eq!(c[0][0], Section::monomial(AlgebraTag::S11, -2, 0, Scalar::one()).unwrap());
        assert_eq!(c[1][0], Section::monomial(AlgebraTag::S11, -2, THETA, s).unwrap());
    }

    #[test]
    fn expand_t2_theta() {
        let f = Section::monomial(AlgebraTag::Su11, 2, THETA, Scalar::one()).unwrap();
        let r = expand(&f).unwrap();
        assert!(r.residual.is_zero());
        let s = sqrt_neg_im(2, EXACT).unwrap();
        let half_over_s = Scalar::rational(1, 2).try_div(&s).unwrap();
        let key = |e| (RepLabel::Pi(2, Sign::Plus), e);
        assert_eq!(r.coefficients.get(&key((0, 1))), Some(&half_over_s));
        assert_eq!(r.coefficients.get(&key((1, 0))), Some(&half_over_s));
        assert_eq!(r.coefficients.len(), 2);
        assert_eq!(r.recombine(EXACT).unwrap(), f);
    }

    #[test]
    fn expand_weight_zero() {
        let one = Section::monomial(AlgebraTag::Su11, 0, 0, Scalar::one()).unwrap();
        let r = expand(&one).unwrap();
        assert_eq!(r.coefficients, BTreeMap::from([((RepLabel::Trivial, (0, 0)), Scalar::one())]));
        assert!(r.residual.is_zero());
        let th_eta = Section::monomial(AlgebraTag::Su11, 0, THETA_ETA, Scalar::one()).unwrap();
        let r = expand(&th_eta).unwrap();
        assert!(r.coefficients.is_empty());
        assert_eq!(r.residual, th_eta);
    }

    #[test]
    fn reconstruct_examples() {
        assert!(reconstruct(AlgebraTag::Su11, &BTreeMap::new(), EXACT).unwrap().is_zero());
        let single = BTreeMap::from([((RepLabel::Pi(1, Sign::Plus), (0, 0)), Scalar::one())]);
        let mut expected = Section::monomial(AlgebraTag::Su11, 1, 0, Scalar::one()).unwrap();
        expected.add_term(1, THETA_ETA, Scalar::one()).unwrap();
        assert_eq!(reconstruct(AlgebraTag::Su11, &single, EXACT).unwrap(), expected);
        let bad = BTreeMap::from([((RepLabel::Pi(1, Sign::Plus), (0, 5)), Scalar::one())]);
        assert!(reconstruct(AlgebraTag::Su11, &bad, EXACT).is_err());
    }

    #[test]
    fn monomial_parsing_signs() {
        let names = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        assert_eq!(parse_monomial(&names(&["eta", "theta"]), AlgebraTag::Su11).unwrap(), Some((THETA_ETA, -1)));
        assert_eq!(parse_monomial(&names(&["theta", "theta"]), AlgebraTag::Su11).unwrap(), None);
        assert!(parse_monomial(&names(&["eta"]), AlgebraTag::S11).is_err());
    }
}
