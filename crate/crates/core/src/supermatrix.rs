//! `(p|q)`-graded matrices with Grassmann entries.

use crate::error::{Error, Result};
use crate::grassmann::{ElementParity, GrassmannElement, Parity};
use crate::matrix::Matrix;
use crate::scalars::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct SuperMatrix {
    pdim: usize,
    qdim: usize,
    entries: Matrix<GrassmannElement>,
}

impl SuperMatrix {
    pub fn new(pdim: usize, qdim: usize, entries: Matrix<GrassmannElement>) -> Result<Self> {
        let n = pdim + qdim;
        if entries.rows() != n || entries.cols() != n {
            return Err(Error::Dimension(format!("a ({pdim}|{qdim}) supermatrix needs {n}x{n} entries")));
        }
        Ok(Self { pdim, qdim, entries })
    }

    pub fn from_scalars(pdim: usize, qdim: usize, m: &Matrix<Scalar>) -> Result<Self> {
        Self::new(pdim, qdim, m.map(|c| GrassmannElement::scalar(c.clone())))
    }

    pub fn identity(pdim: usize, qdim: usize) -> Self {
        Self { pdim, qdim, entries: Matrix::identity(pdim + qdim) }
    }

    /// `[[a, β], [γ, d]]` as a (1|1) supermatrix.
    pub fn one_one(a: GrassmannElement, beta: GrassmannElement, gamma: GrassmannElement, d: GrassmannElement) -> Self {
        let entries = Matrix::from_rows(vec![vec![a, beta], vec![gamma, d]]).expect("2x2");
        Self { pdim: 1, qdim: 1, entries }
    }

    pub fn pdim(&self) -> usize {
        self.pdim
    }

    pub fn qdim(&self) -> usize {
        self.qdim
    }

    pub fn entries(&self) -> &Matrix<GrassmannElement> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &GrassmannElement {
        self.entries.get(i, j)
    }

    fn index_parity(&self, i: usize) -> Parity {
        if i < self.pdim {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Whether every entry has the parity `|row| + |col| + parity`.
    pub fn has_parity(&self, parity: Parity) -> bool {
        let n = self.pdim + self.qdim;
        (0..n).all(|i| {
            (0..n).all(|j| {
                if self.get(i, j).is_zero() {
                    return true;
                }
                let want = self.index_parity(i) + self.index_parity(j) + parity;
                match self.get(i, j).parity() {
                    ElementParity::Even => want == Parity::Even,
                    ElementParity::Odd => want == Parity::Odd,
                    ElementParity::Inhomogeneous => false,
                }
            })
        })
    }

    pub fn is_even(&self) -> bool {
        self.has_parity(Parity::Even)
    }

    pub fn is_odd(&self) -> bool {
        self.has_parity(Parity::Odd)
    }

    /// `Some(parity)` for homogeneous matrices. The zero matrix reports even.
    pub fn parity(&self) -> Option<Parity> {
        if self.is_even() {
            Some(Parity::Even)
        } else if self.is_odd() {
            Some(Parity::Odd)
        } else {
            None
        }
    }

    fn check_compatible(&self, rhs: &Self) -> Result<()> {
        if self.pdim != rhs.pdim || self.qdim != rhs.qdim {
            return Err(Error::Dimension(format!("({}|{}) vs ({}|{})", self.pdim, self.qdim, rhs.pdim, rhs.qdim)));
        }
        Ok(())
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_compatible(rhs)?;
        Ok(Self { pdim: self.pdim, qdim: self.qdim, entries: self.entries.try_mul(&rhs.entries)? })
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check_compatible(rhs)?;
        Ok(Self { pdim: self.pdim, qdim: self.qdim, entries: self.entries.try_add(&rhs.entries)? })
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.check_compatible(rhs)?;
        Ok(Self { pdim: self.pdim, qdim: self.qdim, entries: self.entries.try_sub(&rhs.entries)? })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self { pdim: self.pdim, qdim: self.qdim, entries: self.entries.map(|x| x.scale(c)) }
    }

    /// `XY - (-1)^{|X||Y|} YX`.
    pub fn supercommutator(&self, rhs: &Self) -> Result<Self> {
        let px = self.parity().ok_or_else(|| Error::Parity("left operand is inhomogeneous".into()))?;
        let py = rhs.parity().ok_or_else(|| Error::Parity("right operand is inhomogeneous".into()))?;
        let xy = self.try_mul(rhs)?;
        let yx = rhs.try_mul(self)?;
        if px.sign_with(py) < 0 {
            xy.try_add(&yx)
        } else {
            xy.try_sub(&yx)
        }
    }

    /// Inverse of an even matrix with invertible body.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_even() {
            return Err(Error::Parity("only even supermatrices are inverted".into()));
        }
        Ok(Self { pdim: self.pdim, qdim: self.qdim, entries: self.entries.inverse()? })
    }

    /// Berezinian of an even (1|1) matrix `[[a, β], [γ, d]]`:
    /// `d⁻¹ (a - β d⁻¹ γ)`.
    pub fn berezinian(&self) -> Result<GrassmannElement> {
        if self.pdim != 1 || self.qdim != 1 {
            return Err(Error::Dimension("berezinian is implemented for (1|1) only".into()));
        }
        if !self.is_even() {
            return Err(Error::Parity("berezinian of a non-even matrix".into()));
        }
        let (a, beta, gamma, d) = (self.get(0, 0), self.get(0, 1), self.get(1, 0), self.get(1, 1));
        let d_inv = d.invert()?;
        let inner = a.try_sub(&beta.try_mul(&d_inv)?.try_mul(gamma)?)?;
        d_inv.try_mul(&inner)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    use crate::grassmann::GeneratorSet;

    fn scalar_matrix(rows: Vec<Vec<Scalar>>) -> SuperMatrix {
        SuperMatrix::from_scalars(1, 1, &Matrix::from_rows(rows).unwrap()).unwrap()
    }

    fn c_u_s() -> (SuperMatrix, SuperMatrix, SuperMatrix) {
        let z = Scalar::zero;
        let c = scalar_matrix(vec![vec![Scalar::i(), z()], vec![z(), Scalar::i()]]);
        let u = scalar_matrix(vec![vec![z(), Scalar::one()], vec![-Scalar::i(), z()]]);
        let s = scalar_matrix(vec![vec![z(), Scalar::i()], vec![-Scalar::one(), z()]]);
        (c, u, s)
    }

    #[test]
    fn u_squared_is_minus_i() {
        let (_, u, _) = c_u_s();
        let uu = u.try_mul(&u).unwrap();
        assert_eq!(uu, SuperMatrix::identity(1, 1).scale(&-Scalar::i()));
    }

    #[test]
    fn bracket_relations() {
        let (c, u, s) = c_u_s();
        let minus_2c = c.scale(&Scalar::from(-2));
        assert_eq!(u.supercommutator(&u).unwrap(), minus_2c);
        assert_eq!(s.supercommutator(&s).unwrap(), minus_2c);
        assert!(c.supercommutator(&u).unwrap().entries().is_zero());
        assert!(c.supercommutator(&s).unwrap().entries().is_zero());
        assert!(u.supercommutator(&s).unwrap().entries().is_zero());
    }

    #[test]
    fn odd_theta_matrix_squares_to_zero() {
        let set = Arc::new(GeneratorSet::new(["theta"]).unwrap());
        let th = GrassmannElement::generator(&set, "theta").unwrap();
        let m = SuperMatrix::one_one(GrassmannElement::zero(), th.clone(), th, GrassmannElement::zero());
        assert!(m.try_mul(&m).unwrap().entries().is_zero());
    }

    #[test]
    fn inhomogeneous_commutator_rejected() {
        let (c, u, _) = c_u_s();
        let mixed = c.try_add(&u).unwrap();
        assert!(matches!(mixed.supercommutator(&u), Err(Error::Parity(_))));
    }

    #[test]
    fn berezinian_small_cases() {
        assert!(SuperMatrix::identity(1, 1).berezinian().unwrap().is_one());
        let t = GrassmannElement::scalar(Scalar::from(6));
        let d = GrassmannElement::scalar(Scalar::from(3));
        let m = SuperMatrix::one_one(t, GrassmannElement::zero(), GrassmannElement::zero(), d);
        assert_eq!(m.berezinian().unwrap(), GrassmannElement::scalar(Scalar::from(2)));
        let sing = SuperMatrix::one_one(
            GrassmannElement::one(),
            GrassmannElement::zero(),
            GrassmannElement::zero(),
            GrassmannElement::zero(),
        );
        assert!(matches!(sing.berezinian(), Err(Error::NotInvertible(_))));
        let (_, u, _) = c_u_s();
        assert!(matches!(u.berezinian(), Err(Error::Parity(_))));
    }
}
