//! T-points of `(ℂ^{1|1})^×`, `SL(1|1)`, `SU(1|1)` and its isomer
//! `SU(1|1)_-`.
//!
//! A T-point is a matrix with entries in a Grassmann algebra. Symbolic
//! "generic" points live in algebras with Laurent even variables, where the
//! defining constraint of the group is solved for the conjugate coordinate;
//! e.g. for `SU(1|1)` the star of `a` is `a⁻¹(1 - iββ̄)`, which turns
//! `a·ā·(1 + iββ̄) = 1` into an identity.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grassmann::{GeneratorSet, GrassmannElement, Monomial, Terms, Variable};
use crate::scalars::Scalar;
use crate::supermatrix::SuperMatrix;

/// The matrix groups whose membership can be tested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupKind {
    Sl11,
    Su11,
    Su11Minus,
}

impl GroupKind {
    pub fn name(self) -> &'static str {
        match self {
            GroupKind::Sl11 => "sl11",
            GroupKind::Su11 => "su11",
            GroupKind::Su11Minus => "su11-minus",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "sl11" => Ok(GroupKind::Sl11),
            "su11" => Ok(GroupKind::Su11),
            "su11-minus" | "su11_minus" => Ok(GroupKind::Su11Minus),
            other => Err(Error::UnknownTag(other.to_string())),
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn ge(c: Scalar) -> GrassmannElement {
    GrassmannElement::scalar(c)
}

fn i_unit() -> GrassmannElement {
    ge(Scalar::i())
}

/// A point `[[a, β], [γ, d]]` of the general linear supergroup.
#[derive(Debug, Clone, PartialEq)]
pub struct GL11Point {
    pub a: GrassmannElement,
    pub beta: GrassmannElement,
    pub gamma: GrassmannElement,
    pub d: GrassmannElement,
}

impl GL11Point {
    /// Checks the parity constraints and the invertibility of the bodies of
    /// `a` and `d`.
    pub fn new(
        a: GrassmannElement,
        beta: GrassmannElement,
        gamma: GrassmannElement,
        d: GrassmannElement,
    ) -> Result<Self> {
        let p = Self { a, beta, gamma, d };
        p.check()?;
        Ok(p)
    }

    fn check(&self) -> Result<()> {
        if !self.a.is_even() || !self.d.is_even() {
            return Err(Error::Parity("diagonal entries must be even".into()));
        }
        let odd_or_zero = |x: &GrassmannElement| x.is_odd() || x.is_zero();
        if !odd_or_zero(&self.beta) || !odd_or_zero(&self.gamma) {
            return Err(Error::Parity("off-diagonal entries must be odd".into()));
        }
        self.a.invert().map_err(|_| Error::NotInvertible("a".into()))?;
        self.d.invert().map_err(|_| Error::NotInvertible("d".into()))?;
        Ok(())
    }

    pub fn identity() -> Self {
        Self {
            a: GrassmannElement::one(),
            beta: GrassmannElement::zero(),
            gamma: GrassmannElement::zero(),
            d: GrassmannElement::one(),
        }
    }

    pub fn to_supermatrix(&self) -> SuperMatrix {
        SuperMatrix::one_one(self.a.clone(), self.beta.clone(), self.gamma.clone(), self.d.clone())
    }

    pub fn from_supermatrix(m: &SuperMatrix) -> Result<Self> {
        if m.pdim() != 1 || m.qdim() != 1 {
            return Err(Error::Dimension("expected a (1|1) matrix".into()));
        }
        Self::new(m.get(0, 0).clone(), m.get(0, 1).clone(), m.get(1, 0).clone(), m.get(1, 1).clone())
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        Self::from_supermatrix(&self.to_supermatrix().try_mul(&rhs.to_supermatrix())?)
    }

    pub fn inverse(&self) -> Result<Self> {
        Self::from_supermatrix(&self.to_supermatrix().inverse()?)
    }

    pub fn berezinian(&self) -> Result<GrassmannElement> {
        self.to_supermatrix().berezinian()
    }

    /// The generator set shared by the entries, if any entry carries one.
    pub fn gens(&self) -> Option<&Arc<GeneratorSet>> {
        [&self.a, &self.beta, &self.gamma, &self.d].into_iter().find_map(|x| x.gens())
    }
}

/// The involution of `(ℂ^{1|1})^×` whose fixed points form `S^{1|1}`:
/// `(w, η) ↦ (w̄⁻¹, i·w̄⁻²·η̄)`.
pub fn rho_s11(w: &GrassmannElement, eta: &GrassmannElement) -> Result<(GrassmannElement, GrassmannElement)> {
    if !w.is_even() || !eta.is_odd() && !eta.is_zero() {
        return Err(Error::Parity("expected w even and η odd".into()));
    }
    let w_bar = w.star()?;
    let w_bar_inv = w_bar.invert()?;
    let eta_img = i_unit().try_mul(&w_bar_inv.pow(2)?)?.try_mul(&eta.star()?)?;
    Ok((w_bar_inv, eta_img))
}

/// The involution of `SL(1|1)` whose fixed points form `SU(1|1)`:
/// `[[a, β], [γ, d]] ↦ [[d̄⁻¹, -i·ā⁻²·γ̄], [-i·ā⁻²·β̄, ā⁻¹]]`.
pub fn sigma_su(g: &GL11Point) -> Result<GL11Point> {
    let a_bar_inv = g.a.star()?.invert()?;
    let d_bar_inv = g.d.star()?.invert()?;
    let factor = ge(-Scalar::i()).try_mul(&a_bar_inv.pow(2)?)?;
    GL11Point::new(d_bar_inv, factor.try_mul(&g.gamma.star()?)?, factor.try_mul(&g.beta.star()?)?, a_bar_inv)
}

/// Outcome of a membership test with the violated relations, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub group: GroupKind,
    pub violations: Vec<String>,
}

impl Membership {
    pub fn is_member(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Relation names used in membership diagnostics.
pub mod relation {
    pub const PARITY: &str = "parity: a, d even and beta, gamma odd";
    pub const BEREZINIAN: &str = "Ber = 1";
    pub const SU_GAMMA: &str = "gamma = -i*star(beta)*a^2";
    pub const SU_D: &str = "d = star(a)^-1";
    pub const SU_CONSTRAINT: &str = "a*star(a)*(1 + i*beta*star(beta)) = 1";
    pub const SUM_GAMMA: &str = "gamma = star(b)*a^2 with b = -i*beta";
    pub const SUM_CONSTRAINT: &str = "a*star(a)*(1 - i*b*star(b)) = 1 with b = -i*beta";
}

fn relation_holds(lhs: Result<GrassmannElement>, rhs: &GrassmannElement) -> std::result::Result<bool, String> {
    match lhs {
        Ok(x) => Ok(x == *rhs),
        Err(e) => Err(e.to_string()),
    }
}

/// Tests membership of `g` in `group`, naming every violated relation.
pub fn membership(g: &GL11Point, group: GroupKind) -> Membership {
    let mut violations = Vec::new();
    if g.check().is_err() {
        violations.push(relation::PARITY.to_string());
        return Membership { group, violations };
    }
    let mut record = |name: &str, outcome: std::result::Result<bool, String>| match outcome {
        Ok(true) => {}
        Ok(false) => violations.push(name.to_string()),
        Err(e) => violations.push(format!("{name} (cannot evaluate: {e})")),
    };
    let one = GrassmannElement::one();
    match group {
        GroupKind::Sl11 => record(relation::BEREZINIAN, relation_holds(g.berezinian(), &one)),
        GroupKind::Su11 => {
            let gamma = (|| ge(-Scalar::i()).try_mul(&g.beta.star()?)?.try_mul(&g.a.pow(2)?))();
            record(relation::SU_GAMMA, gamma.map(|x| x == g.gamma).map_err(|e| e.to_string()));
            record(relation::SU_D, relation_holds(g.a.star().and_then(|x| x.invert()), &g.d));
            let constraint = (|| {
                let bb = g.beta.try_mul(&g.beta.star()?)?;
                let inner = one.try_add(&i_unit().try_mul(&bb)?)?;
                g.a.try_mul(&g.a.star()?)?.try_mul(&inner)
            })();
            record(relation::SU_CONSTRAINT, relation_holds(constraint, &one));
        }
        GroupKind::Su11Minus => {
            let b = ge(-Scalar::i()).try_mul(&g.beta);
            let gamma = (|| {
                let b = b.clone()?;
                b.star()?.try_mul(&g.a.pow(2)?)
            })();
            record(relation::SUM_GAMMA, gamma.map(|x| x == g.gamma).map_err(|e| e.to_string()));
            record(relation::SU_D, relation_holds(g.a.star().and_then(|x| x.invert()), &g.d));
            let constraint = (|| {
                let b = b.clone()?;
                let bb = b.try_mul(&b.star()?)?;
                let inner = one.try_sub(&i_unit().try_mul(&bb)?)?;
                g.a.try_mul(&g.a.star()?)?.try_mul(&inner)
            })();
            record(relation::SUM_CONSTRAINT, relation_holds(constraint, &one));
        }
    }
    Membership { group, violations }
}

/// The coordinates `(t, θ, η)` of `g = diag(t, t̄⁻¹)(1 + θU)(1 + ηS)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorizationTriple {
    pub t: GrassmannElement,
    pub theta: GrassmannElement,
    pub eta: GrassmannElement,
}

/// `diag(t, t̄⁻¹)(1 + θU)(1 + ηS)` with `U = [[0,1],[-i,0]]`,
/// `S = [[0,i],[-1,0]]` and `t̄ = star(t)`.
///
/// Expanded, this is
/// `[[t(1 - θη), t(θ + iη)], [t̄⁻¹(-iθ - η), t̄⁻¹(1 + θη)]]`.
pub fn defactorize(t: &GrassmannElement, theta: &GrassmannElement, eta: &GrassmannElement) -> Result<GL11Point> {
    if !t.is_even() {
        return Err(Error::Parity("t must be even".into()));
    }
    if !(theta.is_odd() || theta.is_zero()) || !(eta.is_odd() || eta.is_zero()) {
        return Err(Error::Parity("θ and η must be odd".into()));
    }
    let t_bar_inv = t.star()?.invert()?;
    let one = GrassmannElement::one();
    let th_eta = theta.try_mul(eta)?;
    let i_eta = i_unit().try_mul(eta)?;
    let i_theta = i_unit().try_mul(theta)?;
    GL11Point::new(
        t.try_mul(&one.try_sub(&th_eta)?)?,
        t.try_mul(&theta.try_add(&i_eta)?)?,
        t_bar_inv.try_mul(&(-i_theta).try_sub(eta)?)?,
        t_bar_inv.try_mul(&one.try_add(&th_eta)?)?,
    )
}

/// Solves `g = diag(t, t̄⁻¹)(1 + θU)(1 + ηS)` for `(t, θ, η)` without
/// checking group membership.
///
/// From the off-diagonal entries, `θ + iη = t⁻¹ β` and `θ - iη = i t̄ γ`;
/// the (1,1) entry then gives `t = a (1 - θη)⁻¹`. Starting from `t = a` the
/// substitution stabilizes after finitely many rounds because every
/// correction is nilpotent. The result is checked by multiplying back.
pub fn solve_factorization(g: &GL11Point) -> Result<FactorizationTriple> {
    let half = ge(Scalar::rational(1, 2));
    let half_over_i = ge(-Scalar::rational(1, 2) * Scalar::i());
    let one = GrassmannElement::one();
    let mut t = g.a.clone();
    let bound = g.gens().map_or(0, |s| s.odd_names().len()) + 2;
    for _ in 0..=bound {
        let plus = t.invert()?.try_mul(&g.beta)?;
        let minus = i_unit().try_mul(&t.star()?)?.try_mul(&g.gamma)?;
        let theta = half.try_mul(&plus.try_add(&minus)?)?;
        let eta = half_over_i.try_mul(&plus.try_sub(&minus)?)?;
        let next = g.a.try_mul(&one.try_sub(&theta.try_mul(&eta)?)?.invert()?)?;
        if next == t {
            let triple = FactorizationTriple { t, theta, eta };
            let back = defactorize(&triple.t, &triple.theta, &triple.eta)?;
            if back != *g {
                return Err(Error::NotMember {
                    group: "diag(t, star(t)^-1)(1+θU)(1+ηS)".into(),
                    relation: "no factorization reproduces the point".into(),
                });
            }
            return Ok(triple);
        }
        t = next;
    }
    Err(Error::NotMember {
        group: "diag(t, star(t)^-1)(1+θU)(1+ηS)".into(),
        relation: "factorization iteration did not stabilize".into(),
    })
}

/// Factorizes a member of `SU(1|1)` (or of its isomer).
///
/// On `SU(1|1)` the solution is
/// `t = a(1 + (i/2)ββ̄)`, `θ = (β̄a + βā)/2`, `η = i(β̄a - βā)/2`,
/// with `t·t̄ = 1` and `θ`, `η` fixed by the star.
pub fn factorize(g: &GL11Point, group: GroupKind) -> Result<FactorizationTriple> {
    if group == GroupKind::Sl11 {
        return Err(Error::Unsupported("factorization is defined on su11 and su11-minus".into()));
    }
    let m = membership(g, group);
    if !m.is_member() {
        return Err(Error::NotMember { group: group.name().to_string(), relation: m.violations.join("; ") });
    }
    solve_factorization(g)
}

/// Closed-form factorization on `SU(1|1)`, used as an independent check of
/// [`solve_factorization`].
pub fn su11_factorization_closed_form(g: &GL11Point) -> Result<FactorizationTriple> {
    let (a, beta) = (&g.a, &g.beta);
    let (a_bar, beta_bar) = (a.star()?, beta.star()?);
    let bb = beta.try_mul(&beta_bar)?;
    let t = a.try_mul(
        &GrassmannElement::one().try_add(&ge(Scalar::gaussian(0, 1) * Scalar::rational(1, 2)).try_mul(&bb)?)?,
    )?;
    let x = beta_bar.try_mul(a)?;
    let y = beta.try_mul(&a_bar)?;
    let theta = ge(Scalar::rational(1, 2)).try_mul(&x.try_add(&y)?)?;
    let eta = ge(Scalar::i() * Scalar::rational(1, 2)).try_mul(&x.try_sub(&y)?)?;
    Ok(FactorizationTriple { t, theta, eta })
}

/// The coordinates obtained by reading the factorization formulas
/// `t = a(1 - (i/2)ββ̄)`, `θ = (β̄a + βā)/2`, `η = (β̄a - βā)/2` literally,
/// with `β` taken from the shape of `group`: the (1,2) entry for `su11`
/// and `-i` times it for `su11-minus`.
pub fn literal_lemma_formulas(g: &GL11Point, group: GroupKind) -> Result<FactorizationTriple> {
    let beta = match group {
        GroupKind::Su11Minus => ge(-Scalar::i()).try_mul(&g.beta)?,
        _ => g.beta.clone(),
    };
    let a = &g.a;
    let (a_bar, beta_bar) = (a.star()?, beta.star()?);
    let bb = beta.try_mul(&beta_bar)?;
    let t = a.try_mul(&GrassmannElement::one().try_sub(&ge(Scalar::i() * Scalar::rational(1, 2)).try_mul(&bb)?)?)?;
    let x = beta_bar.try_mul(a)?;
    let y = beta.try_mul(&a_bar)?;
    let half = ge(Scalar::rational(1, 2));
    Ok(FactorizationTriple { t, theta: half.try_mul(&x.try_add(&y)?)?, eta: half.try_mul(&x.try_sub(&y)?)? })
}

/// Comparison of the literal factorization formulas with the exact solution
/// on a generic point of one group shape.
#[derive(Debug, Clone, PartialEq)]
pub struct LemmaCheck {
    pub group: GroupKind,
    /// Whether the literal formulas multiply back to the generic point.
    pub round_trip: bool,
    /// Components of the literal triple that differ from the exact one.
    pub mismatched: Vec<&'static str>,
    /// The exact solution, as strings in the generic coordinates.
    pub solved: [String; 3],
    /// Whether `star(θ) = θ` and `star(η) = η` hold for the exact solution.
    pub theta_real: bool,
    pub eta_real: bool,
}

/// Runs the literal formulas against generic points of both `SU(1|1)` and
/// `SU(1|1)_-`.
pub fn check_lemma_against_shapes() -> Result<Vec<LemmaCheck>> {
    let mut out = Vec::new();
    for group in [GroupKind::Su11, GroupKind::Su11Minus] {
        let ring = GenericUnitaryRing::new(group, 1)?;
        let g = &ring.points[0];
        let literal = literal_lemma_formulas(g, group)?;
        let solved = solve_factorization(g)?;
        let round_trip = defactorize(&literal.t, &literal.theta, &literal.eta).map(|p| p == *g).unwrap_or(false);
        let mut mismatched = Vec::new();
        if literal.t != solved.t {
            mismatched.push("t");
        }
        if literal.theta != solved.theta {
            mismatched.push("theta");
        }
        if literal.eta != solved.eta {
            mismatched.push("eta");
        }
        out.push(LemmaCheck {
            group,
            round_trip,
            mismatched,
            theta_real: solved.theta.star()? == solved.theta,
            eta_real: solved.eta.star()? == solved.eta,
            solved: [solved.t.to_string(), solved.theta.to_string(), solved.eta.to_string()],
        });
    }
    Ok(out)
}

fn unit_terms(mono: Monomial, c: Scalar) -> Terms {
    BTreeMap::from([(mono, c)])
}

/// Generic points of `SU(1|1)` or `SU(1|1)_-`.
///
/// The coordinate ring is `ℚ(i)[a_k, a_k⁻¹] ⊗ Λ[β_k, β̄_k]` for `k` independent
/// points, with the star sending `a_k` to `a_k⁻¹(1 ∓ iβ_kβ̄_k)`; this is the
/// group constraint solved for `ā_k`.
#[derive(Debug, Clone)]
pub struct GenericUnitaryRing {
    pub gens: Arc<GeneratorSet>,
    pub group: GroupKind,
    pub points: Vec<GL11Point>,
}

impl GenericUnitaryRing {
    pub fn new(group: GroupKind, count: usize) -> Result<Self> {
        let sign = match group {
            GroupKind::Su11 => -1,
            GroupKind::Su11Minus => 1,
            GroupKind::Sl11 => return Err(Error::Unsupported("sl11 has no unitary ring".into())),
        };
        let odd: Vec<String> = (0..count).flat_map(|k| [format!("beta{k}"), format!("betabar{k}")]).collect();
        let even: Vec<String> = (0..count).map(|k| format!("a{k}")).collect();
        let pairs: Vec<(usize, usize)> = (0..count).map(|k| (2 * k, 2 * k + 1)).collect();
        let mut set = GeneratorSet::new(odd)?.with_pairing(&pairs)?.with_even(even, &[])?;
        for k in 0..count {
            let mut exps = vec![0; k + 1];
            exps[k] = -1;
            let mut image = unit_terms(Monomial::new(0, exps.clone()), Scalar::one());
            image.insert(Monomial::new(0b11 << (2 * k), exps), Scalar::gaussian(0, sign));
            set = set.with_star_image(Variable::Even(k), image)?;
        }
        let gens = Arc::new(set);
        let mut points = Vec::new();
        for k in 0..count {
            let a = GrassmannElement::even_var(&gens, &format!("a{k}"), 1)?;
            let b = GrassmannElement::odd_generator(&gens, 2 * k);
            let b_bar = b.star()?;
            let a_sq = a.pow(2)?;
            let d = a.star()?.invert()?;
            let (beta, gamma) = match group {
                GroupKind::Su11 => (b, ge(-Scalar::i()).try_mul(&b_bar)?.try_mul(&a_sq)?),
                _ => (i_unit().try_mul(&b)?, b_bar.try_mul(&a_sq)?),
            };
            points.push(GL11Point::new(a, beta, gamma, d)?);
        }
        Ok(Self { gens, group, points })
    }
}

/// A generic point of `SL(1|1)`: `[[d + βd⁻¹γ, β], [γ, d]]` over
/// `ℚ(i)[d, d⁻¹, d̄, d̄⁻¹] ⊗ Λ[β, γ, β̄, γ̄]`, whose Berezinian is 1.
pub fn generic_sl11_point() -> Result<GL11Point> {
    let gens = Arc::new(
        GeneratorSet::new(["beta", "gamma", "betabar", "gammabar"])?
            .with_pairing(&[(0, 2), (1, 3)])?
            .with_even(["d", "dbar"], &[(0, 1)])?,
    );
    let d = GrassmannElement::even_var(&gens, "d", 1)?;
    let beta = GrassmannElement::generator(&gens, "beta")?;
    let gamma = GrassmannElement::generator(&gens, "gamma")?;
    let a = d.try_add(&beta.try_mul(&d.invert()?)?.try_mul(&gamma)?)?;
    GL11Point::new(a, beta, gamma, d)
}

/// A generic point `(w, η)` of `(ℂ^{1|1})^×` over
/// `ℚ(i)[w, w⁻¹, w̄, w̄⁻¹] ⊗ Λ[η, η̄]`.
pub fn generic_s11_point() -> Result<(GrassmannElement, GrassmannElement)> {
    let gens =
        Arc::new(GeneratorSet::new(["eta", "etabar"])?.with_pairing(&[(0, 1)])?.with_even(["w", "wbar"], &[(0, 1)])?);
    Ok((GrassmannElement::even_var(&gens, "w", 1)?, GrassmannElement::generator(&gens, "eta")?))
}

/// Generic factorization data: `t` on the unit circle (`star(t) = t⁻¹`) and
/// star-fixed odd `θ`, `η`.
pub fn generic_factor_data() -> Result<FactorizationTriple> {
    let base = GeneratorSet::new(["theta", "eta"])?.with_pairing(&[])?.with_even(["t"], &[])?;
    let gens =
        Arc::new(base.with_star_image(Variable::Even(0), unit_terms(Monomial::new(0, vec![-1]), Scalar::one()))?);
    Ok(FactorizationTriple {
        t: GrassmannElement::even_var(&gens, "t", 1)?,
        theta: GrassmannElement::generator(&gens, "theta")?,
        eta: GrassmannElement::generator(&gens, "eta")?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn su11_generic() -> GL11Point {
        GenericUnitaryRing::new(GroupKind::Su11, 1).unwrap().points.remove(0)
    }

    #[test]
    fn star_is_involutive_on_generic_rings() {
        for group in [GroupKind::Su11, GroupKind::Su11Minus] {
            let ring = GenericUnitaryRing::new(group, 1).unwrap();
            let p = &ring.points[0];
            for x in [&p.a, &p.beta, &p.gamma, &p.d] {
                assert_eq!(&x.star().unwrap().star().unwrap(), x);
            }
        }
    }

    #[test]
    fn rho_fixes_identity_and_is_involutive() {
        let (one, zero) = (GrassmannElement::one(), GrassmannElement::zero());
        assert_eq!(rho_s11(&one, &zero).unwrap(), (one, zero));
        let (w, eta) = generic_s11_point().unwrap();
        let (w1, e1) = rho_s11(&w, &eta).unwrap();
        let (w2, e2) = rho_s11(&w1, &e1).unwrap();
        assert_eq!((w2, e2), (w, eta));
    }

    #[test]
    fn rho_fixed_body_equation() {
        // ρ(w, η) = (w, η) forces w = star(w)⁻¹ on the body, i.e. w·star(w) = 1.
        let (w, eta) = generic_s11_point().unwrap();
        let (w1, _) = rho_s11(&w, &eta).unwrap();
        let defect = (&w - &w1) * w.star().unwrap();
        let expected = &(&w * &w.star().unwrap()) - &GrassmannElement::one();
        assert_eq!(defect, expected);
    }

    #[test]
    fn sigma_is_involutive() {
        let id = GL11Point::identity();
        assert_eq!(sigma_su(&id).unwrap(), id);
        let g = generic_sl11_point().unwrap();
        assert!(membership(&g, GroupKind::Sl11).is_member());
        assert_eq!(sigma_su(&sigma_su(&g).unwrap()).unwrap(), g);
        let su = su11_generic();
        assert_eq!(sigma_su(&sigma_su(&su).unwrap()).unwrap(), su);
    }

    #[test]
    fn generic_su11_point_is_sigma_fixed_member_with_unit_berezinian() {
        let g = su11_generic();
        assert!(membership(&g, GroupKind::Su11).is_member());
        assert!(membership(&g, GroupKind::Sl11).is_member());
        assert!(g.berezinian().unwrap().is_one());
        assert_eq!(sigma_su(&g).unwrap(), g);
    }

    #[test]
    fn sigma_fixed_equations_imply_su11_relations() {
        // Impose d = star(a)⁻¹ and γ = -i star(a)⁻² star(β) on the generic
        // point with Ber = 1 (i.e. in the constrained ring).
        let ring = GenericUnitaryRing::new(GroupKind::Su11, 1).unwrap();
        let p = &ring.points[0];
        let a_bar_inv = p.a.star().unwrap().invert().unwrap();
        let gamma = ge(-Scalar::i()) * a_bar_inv.pow(2).unwrap() * p.beta.star().unwrap();
        let fixed = GL11Point::new(p.a.clone(), p.beta.clone(), gamma, a_bar_inv).unwrap();
        assert_eq!(sigma_su(&fixed).unwrap(), fixed);
        assert!(membership(&fixed, GroupKind::Su11).is_member());
    }

    #[test]
    fn wrong_sign_names_gamma_relation() {
        let g = su11_generic();
        let flipped = GL11Point::new(g.a.clone(), g.beta.clone(), -g.gamma.clone(), g.d.clone()).unwrap();
        let m = membership(&flipped, GroupKind::Su11);
        assert_eq!(m.violations, vec![relation::SU_GAMMA.to_string()]);
    }

    #[test]
    fn reduced_group_point_is_member() {
        let set = Arc::new(GeneratorSet::new(["x", "xbar"]).unwrap().with_pairing(&[(0, 1)]).unwrap());
        let a =
            GrassmannElement::scalar(Scalar::Exact(crate::scalars::GaussianRational::from_fractions((3, 5), (4, 5))))
                .in_set(&set)
                .unwrap();
        let d = a.star().unwrap().invert().unwrap();
        let g = GL11Point::new(a, GrassmannElement::zero(), GrassmannElement::zero(), d).unwrap();
        assert!(membership(&g, GroupKind::Su11).is_member());
        assert!(membership(&GL11Point::identity(), GroupKind::Su11).is_member());
    }

    #[test]
    fn group_closed_under_product_and_inverse() {
        let ring = GenericUnitaryRing::new(GroupKind::Su11, 2).unwrap();
        let (g, h) = (&ring.points[0], &ring.points[1]);
        let gh = g.try_mul(h).unwrap();
        assert!(membership(&gh, GroupKind::Su11).is_member());
        let g_inv = g.inverse().unwrap();
        assert!(membership(&g_inv, GroupKind::Su11).is_member());
        assert_eq!(g.try_mul(&g_inv).unwrap(), GL11Point::identity());
    }

    #[test]
    fn factorization_round_trips() {
        let g = su11_generic();
        let f = factorize(&g, GroupKind::Su11).unwrap();
        assert_eq!(defactorize(&f.t, &f.theta, &f.eta).unwrap(), g);
        assert_eq!(f, su11_factorization_closed_form(&g).unwrap());
        assert_eq!(f.theta.star().unwrap(), f.theta);
        assert_eq!(f.eta.star().unwrap(), f.eta);
        assert!((&f.t * &f.t.star().unwrap()).is_one());

        let data = generic_factor_data().unwrap();
        let h = defactorize(&data.t, &data.theta, &data.eta).unwrap();
        assert!(membership(&h, GroupKind::Su11).is_member());
        assert_eq!(factorize(&h, GroupKind::Su11).unwrap(), data);
    }

    #[test]
    fn factorization_trivial_cases() {
        let g = GL11Point::identity();
        let f = factorize(&g, GroupKind::Su11).unwrap();
        assert!(f.t.is_one() && f.theta.is_zero() && f.eta.is_zero());
        let data = generic_factor_data().unwrap();
        let one_factor = defactorize(&data.t, &data.theta, &GrassmannElement::zero()).unwrap();
        let t_bar_inv = data.t.star().unwrap().invert().unwrap();
        assert_eq!(one_factor.a, data.t);
        assert_eq!(one_factor.beta, &data.t * &data.theta);
        assert_eq!(one_factor.gamma, &(&t_bar_inv * &ge(-Scalar::i())) * &data.theta);
        assert_eq!(one_factor.d, t_bar_inv);
    }

    #[test]
    fn factorize_rejects_non_members() {
        let g = su11_generic();
        let bad = GL11Point::new(g.a.clone(), g.beta.clone(), -g.gamma.clone(), g.d.clone()).unwrap();
        assert!(matches!(factorize(&bad, GroupKind::Su11), Err(Error::NotMember { .. })));
    }

    #[test]
    fn literal_formulas_fail_on_both_shapes() {
        let checks = check_lemma_against_shapes().unwrap();
        assert_eq!(checks.len(), 2);
        assert_eq!(checks[0].group, GroupKind::Su11);
        assert_eq!(checks[0].mismatched, vec!["t", "eta"]);
        assert!(checks[0].theta_real && checks[0].eta_real);
        assert_eq!(checks[1].mismatched, vec!["theta", "eta"]);
        assert!(!checks[1].theta_real);
        assert!(checks.iter().all(|c| !c.round_trip));
    }

    #[test]
    fn minus_isomer_factorizes_with_imaginary_coordinates() {
        let ring = GenericUnitaryRing::new(GroupKind::Su11Minus, 1).unwrap();
        let g = &ring.points[0];
        assert!(membership(g, GroupKind::Su11Minus).is_member());
        assert!(!membership(g, GroupKind::Su11).is_member());
        let f = factorize(g, GroupKind::Su11Minus).unwrap();
        assert_eq!(defactorize(&f.t, &f.theta, &f.eta).unwrap(), *g);
        assert_eq!(f.theta.star().unwrap(), -f.theta.clone());
    }
}
