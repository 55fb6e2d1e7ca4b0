//! Grassmann algebras with paired generators and an antilinear star.
//!
//! An element is a finite sum of terms `c · x^e · ξ_{i1} ⋯ ξ_{ik}` where the
//! `ξ` are anticommuting odd generators (stored as a bitmask in ascending index
//! order) and `x^e` is an optional Laurent monomial in commuting even
//! variables. Plain Grassmann algebras have no even variables; the even
//! variables carry the symbolic coordinates of generic group points.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{DivisionRing, Ring};
use crate::scalars::Scalar;

/// Maximum number of odd generators in one set.
pub const MAX_ODD: usize = 63;

/// Parity of a Grassmann element or of a basis vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bits(n: u32) -> Self {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn as_u8(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    /// `+1` or `-1` according to `(-1)^{|self|·|other|}`.
    pub fn sign_with(self, other: Parity) -> i64 {
        if self == Parity::Odd && other == Parity::Odd {
            -1
        } else {
            1
        }
    }
}

impl std::ops::Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bits(u32::from(self.as_u8() + rhs.as_u8()))
    }
}

/// Result of [`GrassmannElement::parity`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementParity {
    Even,
    Odd,
    Inhomogeneous,
}

/// A generator of the algebra, used to address star images.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variable {
    Odd(usize),
    Even(usize),
}

/// Laurent exponents of the even variables together with the odd bitmask.
/// Trailing zero exponents are trimmed so that scalars have an empty vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    odd: u64,
    exps: Vec<i32>,
}

impl Monomial {
    pub fn new(odd: u64, mut exps: Vec<i32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Self { odd, exps }
    }

    pub fn odd_mask(&self) -> u64 {
        self.odd
    }

    pub fn exps(&self) -> &[i32] {
        &self.exps
    }

    pub fn exp(&self, var: usize) -> i32 {
        self.exps.get(var).copied().unwrap_or(0)
    }

    pub fn odd_degree(&self) -> u32 {
        self.odd.count_ones()
    }

    pub fn is_unit(&self) -> bool {
        self.odd == 0 && self.exps.is_empty()
    }

    /// Product of two monomials and its sign, or `None` if an odd generator
    /// repeats.
    pub fn mul(&self, rhs: &Monomial) -> Option<(i64, Monomial)> {
        if self.odd & rhs.odd != 0 {
            return None;
        }
        let mut swaps = 0u32;
        let mut bits = rhs.odd;
        while bits != 0 {
            let j = bits.trailing_zeros();
            let above = if j >= 63 { 0 } else { self.odd >> (j + 1) };
            swaps += above.count_ones();
            bits &= bits - 1;
        }
        let n = self.exps.len().max(rhs.exps.len());
        let exps = (0..n).map(|k| self.exp(k) + rhs.exp(k)).collect();
        let sign = if swaps.is_multiple_of(2) { 1 } else { -1 };
        Some((sign, Monomial::new(self.odd | rhs.odd, exps)))
    }
}

pub type Terms = BTreeMap<Monomial, Scalar>;

/// Names of the generators and the data defining the star operation.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSet {
    odd: Vec<String>,
    even: Vec<String>,
    pairing: Option<Vec<usize>>,
    even_pairing: Option<Vec<usize>>,
    star_images: BTreeMap<Variable, Terms>,
}

fn involution_from_pairs(n: usize, pairs: &[(usize, usize)], what: &str) -> Result<Vec<usize>> {
    let mut map: Vec<usize> = (0..n).collect();
    let mut seen = vec![false; n];
    for &(a, b) in pairs {
        if a >= n || b >= n {
            return Err(Error::Parse(format!("{what} pairing index out of range")));
        }
        if seen[a] || seen[b] {
            return Err(Error::Parse(format!("{what} pairing is not an involution")));
        }
        seen[a] = true;
        seen[b] = true;
        map[a] = b;
        map[b] = a;
    }
    Ok(map)
}

fn check_distinct(names: &[String]) -> Result<()> {
    for (i, n) in names.iter().enumerate() {
        if names[..i].contains(n) {
            return Err(Error::Parse(format!("duplicate generator name `{n}`")));
        }
    }
    Ok(())
}

impl GeneratorSet {
    /// Odd generators only, no pairing.
    pub fn new<S: Into<String>>(odd: impl IntoIterator<Item = S>) -> Result<Self> {
        let odd: Vec<String> = odd.into_iter().map(Into::into).collect();
        if odd.len() > MAX_ODD {
            return Err(Error::Parse(format!("at most {MAX_ODD} odd generators")));
        }
        check_distinct(&odd)?;
        Ok(Self { odd, even: Vec::new(), pairing: None, even_pairing: None, star_images: BTreeMap::new() })
    }

    /// Declares conjugate pairs among the odd generators. Generators not
    /// mentioned are real (fixed by the star).
    pub fn with_pairing(mut self, pairs: &[(usize, usize)]) -> Result<Self> {
        self.pairing = Some(involution_from_pairs(self.odd.len(), pairs, "odd")?);
        Ok(self)
    }

    /// Adds commuting invertible even variables with their own pairing.
    pub fn with_even<S: Into<String>>(
        mut self,
        names: impl IntoIterator<Item = S>,
        pairs: &[(usize, usize)],
    ) -> Result<Self> {
        self.even = names.into_iter().map(Into::into).collect();
        let mut all = self.odd.clone();
        all.extend(self.even.iter().cloned());
        check_distinct(&all)?;
        self.even_pairing = Some(involution_from_pairs(self.even.len(), pairs, "even")?);
        Ok(self)
    }

    /// Overrides the star image of one generator. The image must be given as
    /// terms over this same set.
    pub fn with_star_image(mut self, var: Variable, image: Terms) -> Result<Self> {
        self.check_variable(var)?;
        for mono in image.keys() {
            self.check_monomial(mono)?;
        }
        self.star_images.insert(var, image);
        Ok(self)
    }

    pub fn odd_names(&self) -> &[String] {
        &self.odd
    }

    pub fn even_names(&self) -> &[String] {
        &self.even
    }

    pub fn pairing(&self) -> Option<&[usize]> {
        self.pairing.as_deref()
    }

    pub fn even_pairing(&self) -> Option<&[usize]> {
        self.even_pairing.as_deref()
    }

    pub fn star_images(&self) -> &BTreeMap<Variable, Terms> {
        &self.star_images
    }

    pub fn odd_index(&self, name: &str) -> Option<usize> {
        self.odd.iter().position(|n| n == name)
    }

    pub fn even_index(&self, name: &str) -> Option<usize> {
        self.even.iter().position(|n| n == name)
    }

    pub fn variable(&self, name: &str) -> Option<Variable> {
        self.odd_index(name).map(Variable::Odd).or_else(|| self.even_index(name).map(Variable::Even))
    }

    fn check_variable(&self, var: Variable) -> Result<()> {
        let ok = match var {
            Variable::Odd(k) => k < self.odd.len(),
            Variable::Even(k) => k < self.even.len(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Parse(format!("unknown generator {var:?}")))
        }
    }

    pub fn check_monomial(&self, mono: &Monomial) -> Result<()> {
        let n = self.odd.len();
        if n < 64 && mono.odd >> n != 0 {
            return Err(Error::Parse("monomial references an unknown odd generator".into()));
        }
        if mono.exps.len() > self.even.len() {
            return Err(Error::Parse("monomial references an unknown even variable".into()));
        }
        Ok(())
    }

    fn name_of(&self, var: Variable) -> &str {
        match var {
            Variable::Odd(k) => &self.odd[k],
            Variable::Even(k) => &self.even[k],
        }
    }

    /// Star image of one generator as terms.
    fn star_of(&self, var: Variable) -> Result<Terms> {
        if let Some(img) = self.star_images.get(&var) {
            return Ok(img.clone());
        }
        let missing = || Error::NoPairing(self.name_of(var).to_string());
        let mono = match var {
            Variable::Odd(k) => {
                let p = self.pairing.as_ref().ok_or_else(missing)?;
                Monomial::new(1 << p[k], Vec::new())
            }
            Variable::Even(k) => {
                let p = self.even_pairing.as_ref().ok_or_else(missing)?;
                let mut exps = vec![0; p[k] + 1];
                exps[p[k]] = 1;
                Monomial::new(0, exps)
            }
        };
        Ok(BTreeMap::from([(mono, Scalar::one())]))
    }
}

/// An element of a Grassmann algebra. `gens == None` marks a pure scalar that
/// is compatible with every generator set.
#[derive(Clone)]
pub struct GrassmannElement {
    gens: Option<Arc<GeneratorSet>>,
    terms: Terms,
}

fn same_set(a: &Arc<GeneratorSet>, b: &Arc<GeneratorSet>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn merge_gens(a: &Option<Arc<GeneratorSet>>, b: &Option<Arc<GeneratorSet>>) -> Result<Option<Arc<GeneratorSet>>> {
    match (a, b) {
        (Some(x), Some(y)) if !same_set(x, y) => Err(Error::GeneratorMismatch),
        (Some(x), _) | (_, Some(x)) => Ok(Some(x.clone())),
        (None, None) => Ok(None),
    }
}

fn insert_term(terms: &mut Terms, mono: Monomial, c: Scalar) {
    use std::collections::btree_map::Entry;
    match terms.entry(mono) {
        Entry::Vacant(v) => {
            if !c.is_zero() {
                v.insert(c);
            }
        }
        Entry::Occupied(mut o) => {
            let sum = o.get().clone() + c;
            if sum.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}

impl GrassmannElement {
    pub fn zero() -> Self {
        Self { gens: None, terms: Terms::new() }
    }

    pub fn one() -> Self {
        Self::scalar(Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        let mut terms = Terms::new();
        insert_term(&mut terms, Monomial::default(), c);
        Self { gens: None, terms }
    }

    /// Builds an element from raw terms, validating the monomials and
    /// dropping zero coefficients.
    pub fn from_terms(gens: &Arc<GeneratorSet>, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Result<Self> {
        let mut out = Terms::new();
        for (mono, c) in terms {
            gens.check_monomial(&mono)?;
            insert_term(&mut out, mono, c);
        }
        Ok(Self { gens: Some(gens.clone()), terms: out })
    }

    /// The odd generator with the given name.
    pub fn generator(gens: &Arc<GeneratorSet>, name: &str) -> Result<Self> {
        let k = gens.odd_index(name).ok_or_else(|| Error::Parse(format!("unknown odd generator `{name}`")))?;
        Ok(Self::odd_generator(gens, k))
    }

    pub fn odd_generator(gens: &Arc<GeneratorSet>, k: usize) -> Self {
        let mono = Monomial::new(1 << k, Vec::new());
        Self { gens: Some(gens.clone()), terms: BTreeMap::from([(mono, Scalar::one())]) }
    }

    /// `x^power` for the even variable with the given name.
    pub fn even_var(gens: &Arc<GeneratorSet>, name: &str, power: i32) -> Result<Self> {
        let k = gens.even_index(name).ok_or_else(|| Error::Parse(format!("unknown even variable `{name}`")))?;
        let mut exps = vec![0; k + 1];
        exps[k] = power;
        Self::from_terms(gens, [(Monomial::new(0, exps), Scalar::one())])
    }

    pub fn gens(&self) -> Option<&Arc<GeneratorSet>> {
        self.gens.as_ref()
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    /// Re-tags a scalar-only element with a generator set.
    pub fn in_set(mut self, gens: &Arc<GeneratorSet>) -> Result<Self> {
        for mono in self.terms.keys() {
            gens.check_monomial(mono)?;
        }
        match &self.gens {
            Some(g) if !same_set(g, gens) => Err(Error::GeneratorMismatch),
            _ => {
                self.gens = Some(gens.clone());
                Ok(self)
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(m, c)| m.is_unit() && *c == Scalar::one())
    }

    /// Coefficient of the unit monomial.
    pub fn body_scalar(&self) -> Scalar {
        self.terms.get(&Monomial::default()).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Terms with no odd generator.
    pub fn body(&self) -> GrassmannElement {
        Self {
            gens: self.gens.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.odd == 0).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn coefficient(&self, mono: &Monomial) -> Scalar {
        self.terms.get(mono).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn parity(&self) -> ElementParity {
        let mut even = false;
        let mut odd = false;
        for m in self.terms.keys() {
            if m.odd_degree() % 2 == 0 {
                even = true;
            } else {
                odd = true;
            }
        }
        match (even, odd) {
            (_, false) => ElementParity::Even,
            (false, true) => ElementParity::Odd,
            (true, true) => ElementParity::Inhomogeneous,
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == ElementParity::Even
    }

    pub fn is_odd(&self) -> bool {
        self.parity() == ElementParity::Odd
    }

    /// Component of the given parity.
    pub fn component(&self, parity: Parity) -> GrassmannElement {
        Self {
            gens: self.gens.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| Parity::from_bits(m.odd_degree()) == parity)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        let gens = merge_gens(&self.gens, &rhs.gens)?;
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            insert_term(&mut terms, m.clone(), c.clone());
        }
        Ok(Self { gens, terms })
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.try_add(&-rhs)
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        let gens = merge_gens(&self.gens, &rhs.gens)?;
        let mut terms = Terms::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                if let Some((sign, mono)) = ma.mul(mb) {
                    let c = ca.try_mul(cb)?;
                    insert_term(&mut terms, mono, if sign < 0 { -c } else { c });
                }
            }
        }
        Ok(Self { gens, terms })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut terms = Terms::new();
        for (m, x) in &self.terms {
            insert_term(&mut terms, m.clone(), x * c);
        }
        Self { gens: self.gens.clone(), terms }
    }

    /// Inverse of an even element whose body is a single invertible term.
    ///
    /// Writing `x = b + n` with `b` the body and `n` nilpotent, the inverse
    /// is `b⁻¹ Σ_k (-n b⁻¹)^k`; the series stops once a power vanishes.
    pub fn invert(&self) -> Result<Self> {
        match self.parity() {
            ElementParity::Even => {}
            ElementParity::Odd => return Err(Error::Parity("cannot invert an odd element".into())),
            ElementParity::Inhomogeneous => return Err(Error::Parity("cannot invert an inhomogeneous element".into())),
        }
        let body: Vec<_> = self.terms.iter().filter(|(m, _)| m.odd == 0).collect();
        let (mono, c) = match body.as_slice() {
            [single] => *single,
            [] => return Err(Error::NotInvertible("body is zero".into())),
            _ => return Err(Error::NotInvertible("body is not a unit monomial".into())),
        };
        let c_inv = c.inv().map_err(|_| Error::NotInvertible("body coefficient is zero".into()))?;
        let inv_exps = mono.exps.iter().map(|e| -e).collect();
        let body_inv = Self { gens: self.gens.clone(), terms: BTreeMap::from([(Monomial::new(0, inv_exps), c_inv)]) };
        let mut nil = self.clone();
        nil.terms.remove(mono);
        let step = -(nil.try_mul(&body_inv)?);
        let mut power = Self::one();
        let mut acc = Self::one();
        loop {
            power = power.try_mul(&step)?;
            if power.is_zero() {
                break;
            }
            acc = acc.try_add(&power)?;
        }
        let mut out = acc.try_mul(&body_inv)?;
        out.gens = self.gens.clone();
        Ok(out)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.invert()? } else { self.clone() };
        let mut out = Self::one();
        for _ in 0..k.unsigned_abs() {
            out = out.try_mul(&base)?;
        }
        if out.gens.is_none() {
            out.gens = self.gens.clone();
        }
        Ok(out)
    }

    /// The antilinear star: conjugates coefficients and replaces every
    /// generator by its star image, extended multiplicatively.
    pub fn star(&self) -> Result<Self> {
        let gens = match &self.gens {
            Some(g) => g.clone(),
            None => {
                let terms = self.terms.iter().map(|(m, c)| (m.clone(), c.conj())).collect();
                return Ok(Self { gens: None, terms });
            }
        };
        let mut odd_images = BTreeMap::new();
        let mut even_images: BTreeMap<(usize, i32), GrassmannElement> = BTreeMap::new();
        let mut out = Self { gens: Some(gens.clone()), terms: Terms::new() };
        for (mono, c) in &self.terms {
            let mut factor = Self::scalar(c.conj());
            for (k, &e) in mono.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let img = match even_images.get(&(k, e)) {
                    Some(x) => x.clone(),
                    None => {
                        let base = Self { gens: Some(gens.clone()), terms: gens.star_of(Variable::Even(k))? };
                        let x = base.pow(i64::from(e))?;
                        even_images.insert((k, e), x.clone());
                        x
                    }
                };
                factor = factor.try_mul(&img)?;
            }
            let mut bits = mono.odd;
            while bits != 0 {
                let k = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if let std::collections::btree_map::Entry::Vacant(e) = odd_images.entry(k) {
                    let terms = gens.star_of(Variable::Odd(k))?;
                    e.insert(Self { gens: Some(gens.clone()), terms });
                }
                factor = factor.try_mul(&odd_images[&k])?;
            }
            out = out.try_add(&factor)?;
        }
        Ok(out)
    }

    /// Replaces every coefficient by `f(coefficient)`.
    pub fn map_coefficients(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        let mut terms = Terms::new();
        for (m, c) in &self.terms {
            insert_term(&mut terms, m.clone(), f(c));
        }
        Self { gens: self.gens.clone(), terms }
    }
}

impl PartialEq for GrassmannElement {
    fn eq(&self, other: &Self) -> bool {
        if merge_gens(&self.gens, &other.gens).is_err() {
            return false;
        }
        self.terms == other.terms
    }
}

impl fmt::Debug for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (mono, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (k, &e) in mono.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = self.gens.as_ref().and_then(|g| g.even.get(k).cloned()).unwrap_or_else(|| format!("x{k}"));
                if e == 1 {
                    write!(f, "·{name}")?;
                } else {
                    write!(f, "·{name}^{e}")?;
                }
            }
            let mut bits = mono.odd;
            while bits != 0 {
                let k = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let name = self.gens.as_ref().and_then(|g| g.odd.get(k).cloned()).unwrap_or_else(|| format!("ξ{k}"));
                write!(f, "·{name}")?;
            }
        }
        Ok(())
    }
}

macro_rules! grassmann_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for GrassmannElement {
            type Output = GrassmannElement;
            fn $method(self, rhs: GrassmannElement) -> GrassmannElement {
                self.$checked(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait for &GrassmannElement {
            type Output = GrassmannElement;
            fn $method(self, rhs: &GrassmannElement) -> GrassmannElement {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

grassmann_binop!(Add, add, try_add);
grassmann_binop!(Sub, sub, try_sub);
grassmann_binop!(Mul, mul, try_mul);

impl Neg for GrassmannElement {
    type Output = GrassmannElement;
    fn neg(self) -> GrassmannElement {
        -&self
    }
}

impl Neg for &GrassmannElement {
    type Output = GrassmannElement;
    fn neg(self) -> GrassmannElement {
        GrassmannElement { gens: self.gens.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl From<Scalar> for GrassmannElement {
    fn from(c: Scalar) -> Self {
        GrassmannElement::scalar(c)
    }
}

impl Ring for GrassmannElement {
    fn zero() -> Self {
        GrassmannElement::zero()
    }
    fn one() -> Self {
        GrassmannElement::one()
    }
    fn is_zero(&self) -> bool {
        GrassmannElement::is_zero(self)
    }
    fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.try_add(rhs)
    }
    fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.try_sub(rhs)
    }
    fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.try_mul(rhs)
    }
}

impl DivisionRing for GrassmannElement {
    fn try_inv(&self) -> Option<Self> {
        self.invert().ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta_set() -> Arc<GeneratorSet> {
        Arc::new(
            GeneratorSet::new(["theta", "thetabar", "eta", "etabar"]).unwrap().with_pairing(&[(0, 1), (2, 3)]).unwrap(),
        )
    }

    fn g(set: &Arc<GeneratorSet>, name: &str) -> GrassmannElement {
        GrassmannElement::generator(set, name).unwrap()
    }

    #[test]
    fn anticommutation_and_nilpotency() {
        let s = theta_set();
        let (th, eta) = (g(&s, "theta"), g(&s, "eta"));
        assert_eq!(&eta * &th, -(&th * &eta));
        assert!((&th * &th).is_zero());
        assert_eq!((&th * &eta).parity(), ElementParity::Even);
    }

    #[test]
    fn one_plus_theta_thetabar_inverse() {
        let s = theta_set();
        let tt = &g(&s, "theta") * &g(&s, "thetabar");
        let plus = GrassmannElement::one() + tt.clone();
        let minus = GrassmannElement::one() - tt;
        assert!((&plus * &minus).is_one());
        assert_eq!(plus.invert().unwrap(), minus);
    }

    #[test]
    fn invert_two_plus_theta_eta() {
        let s = theta_set();
        let te = &g(&s, "theta") * &g(&s, "eta");
        let x = GrassmannElement::scalar(Scalar::from(2)) + te.clone();
        let inv = x.invert().unwrap();
        let expected = GrassmannElement::scalar(Scalar::rational(1, 2)) - te.scale(&Scalar::rational(1, 4));
        assert_eq!(inv, expected);
        assert!((&x * &inv).is_one());
    }

    #[test]
    fn invert_scalar_and_errors() {
        let c = GrassmannElement::scalar(Scalar::gaussian(3, 4));
        assert_eq!(c.invert().unwrap(), GrassmannElement::scalar(Scalar::gaussian(3, 4).inv().unwrap()));
        let s = theta_set();
        assert!(matches!(g(&s, "theta").invert(), Err(Error::Parity(_))));
        let nil = &g(&s, "theta") * &g(&s, "eta");
        assert!(matches!(nil.invert(), Err(Error::NotInvertible(_))));
        let mixed = GrassmannElement::one() + g(&s, "theta");
        assert!(matches!(mixed.invert(), Err(Error::Parity(_))));
    }

    #[test]
    fn parity_classification() {
        let s = theta_set();
        let (th, tb, eta) = (g(&s, "theta"), g(&s, "thetabar"), g(&s, "eta"));
        assert_eq!((&th * &eta).parity(), ElementParity::Even);
        assert_eq!((&(&th * &tb) * &eta + th.clone()).parity(), ElementParity::Odd);
        assert_eq!((GrassmannElement::one() + th).parity(), ElementParity::Inhomogeneous);
        assert_eq!(GrassmannElement::zero().parity(), ElementParity::Even);
    }

    #[test]
    fn star_examples() {
        let s = theta_set();
        let (th, tb) = (g(&s, "theta"), g(&s, "thetabar"));
        assert_eq!(th.star().unwrap(), tb);
        let x = (&th * &tb).scale(&Scalar::i());
        // star(iθθ̄) = -i·θ̄θ = iθθ̄
        assert_eq!(x.star().unwrap(), x);
        assert!(GrassmannElement::one().star().unwrap().is_one());
    }

    #[test]
    fn star_requires_pairing() {
        let s = Arc::new(GeneratorSet::new(["a"]).unwrap());
        let a = g(&s, "a");
        assert_eq!(a.star().unwrap_err(), Error::NoPairing("a".into()));
    }

    #[test]
    fn mismatched_sets_rejected() {
        let s1 = theta_set();
        let s2 = Arc::new(GeneratorSet::new(["x", "y"]).unwrap());
        assert_eq!(g(&s1, "theta").try_mul(&g(&s2, "x")).unwrap_err(), Error::GeneratorMismatch);
    }

    #[test]
    fn laurent_variables_invert() {
        let s = Arc::new(
            GeneratorSet::new(["b", "bb"])
                .unwrap()
                .with_pairing(&[(0, 1)])
                .unwrap()
                .with_even(["a", "abar"], &[(0, 1)])
                .unwrap(),
        );
        let a = GrassmannElement::even_var(&s, "a", 1).unwrap();
        let bb = &g(&s, "b") * &g(&s, "bb");
        let x = &a * &(GrassmannElement::one() + bb);
        let inv = x.invert().unwrap();
        assert!((&x * &inv).is_one());
        assert_eq!(a.star().unwrap(), GrassmannElement::even_var(&s, "abar", 1).unwrap());
        assert!(matches!((a.clone() + GrassmannElement::one()).invert(), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn duplicate_names_rejected() {
        assert!(GeneratorSet::new(["x", "x"]).is_err());
        assert!(GeneratorSet::new(["x", "y"]).unwrap().with_pairing(&[(0, 1), (1, 0)]).is_err());
    }
}
