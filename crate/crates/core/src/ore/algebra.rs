//! Algebra descriptors: the generator kind and its twist maps σ and δ.

use std::fmt;
use std::sync::Arc;

use crate::arith::{ConstField, Poly, RatFun, Rational};
use crate::error::{OreError, Result};

/// The commutation behaviour of the generator `X` with the base variable.
///
/// | kind   | σ(x)  | δ(x) | acts on f as                 |
/// |--------|-------|------|------------------------------|
/// | D      | x     | 1    | f'                           |
/// | S      | x+1   | 0    | f(x+1)                       |
/// | T      | x     | x    | x f'                         |
/// | F      | x+1   | 1    | f(x+1) - f(x)                |
/// | Q      | q x   | 0    | f(q x)                       |
/// | J      | q x   | 1    | (f(q x) - f(x)) / ((q-1) x)  |
/// | Custom | given | given| no built-in action           |
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OreKind {
    D,
    S,
    T,
    F,
    Q,
    J,
    Custom,
}

impl OreKind {
    /// Kind encoded by the first letter of a generator name such as `Dx`.
    pub fn from_prefix(c: char) -> Option<OreKind> {
        Some(match c {
            'D' => OreKind::D,
            'S' => OreKind::S,
            'T' | 'θ' => OreKind::T,
            'F' | 'Δ' => OreKind::F,
            'Q' => OreKind::Q,
            'J' => OreKind::J,
            _ => return None,
        })
    }

    pub fn prefix(self) -> &'static str {
        match self {
            OreKind::D => "D",
            OreKind::S => "S",
            OreKind::T => "T",
            OreKind::F => "F",
            OreKind::Q => "Q",
            OreKind::J => "J",
            OreKind::Custom => "X",
        }
    }

    pub fn is_q_kind(self) -> bool {
        matches!(self, OreKind::Q | OreKind::J)
    }
}

/// Whether operator coefficients are polynomials or rational functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoeffDomain {
    Poly,
    RatFun,
}

#[derive(Clone, PartialEq, Eq)]
pub struct OreAlgebra<K = Rational> {
    base_var: String,
    gen_name: String,
    kind: OreKind,
    sigma_image: RatFun<K>,
    delta_image: RatFun<K>,
    q: Option<K>,
    domain: CoeffDomain,
}

/// Shared handle to an algebra; operators keep one of these.
pub type Algebra<K = Rational> = Arc<OreAlgebra<K>>;

/// Parameters for [`OreAlgebra::new`].
#[derive(Clone)]
pub struct AlgebraSpec<K> {
    pub base_var: String,
    pub gen_name: String,
    pub kind: OreKind,
    pub q: Option<K>,
    pub custom_sigma: Option<RatFun<K>>,
    pub custom_delta: Option<RatFun<K>>,
    pub domain: CoeffDomain,
}

impl<K: ConstField> AlgebraSpec<K> {
    pub fn new(base_var: &str, gen_name: &str, kind: OreKind) -> Self {
        AlgebraSpec {
            base_var: base_var.to_string(),
            gen_name: gen_name.to_string(),
            kind,
            q: None,
            custom_sigma: None,
            custom_delta: None,
            domain: CoeffDomain::Poly,
        }
    }

    pub fn q(mut self, q: K) -> Self {
        self.q = Some(q);
        self
    }

    pub fn custom(mut self, sigma: RatFun<K>, delta: RatFun<K>) -> Self {
        self.custom_sigma = Some(sigma);
        self.custom_delta = Some(delta);
        self
    }

    pub fn domain(mut self, domain: CoeffDomain) -> Self {
        self.domain = domain;
        self
    }

    pub fn build(self) -> Result<Algebra<K>> {
        OreAlgebra::new(self)
    }
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

impl<K: ConstField> OreAlgebra<K> {
    pub fn new(spec: AlgebraSpec<K>) -> Result<Algebra<K>> {
        let AlgebraSpec {
            base_var,
            gen_name,
            kind,
            q,
            custom_sigma,
            custom_delta,
            domain,
        } = spec;
        if !valid_name(&base_var) || !valid_name(&gen_name) || base_var == gen_name {
            return Err(OreError::InvalidAlgebra(format!(
                "bad variable names `{base_var}`, `{gen_name}`"
            )));
        }
        let x = RatFun::x();
        let one = RatFun::one();
        let zero = RatFun::zero();
        let x_plus_1 = RatFun::from_poly(Poly::new(vec![K::one(), K::one()]));
        let need_q = |q: &Option<K>| -> Result<K> {
            let q = q.clone().ok_or_else(|| {
                OreError::InvalidAlgebra(format!("{kind:?} algebra requires a value for q"))
            })?;
            if q.is_zero() {
                return Err(OreError::InvalidAlgebra("q must be nonzero".into()));
            }
            if kind == OreKind::J && q.is_one() {
                return Err(OreError::InvalidAlgebra("q-derivation requires q != 1".into()));
            }
            Ok(q)
        };
        let (sigma, delta, q) = match kind {
            OreKind::D => (x, one, None),
            OreKind::S => (x_plus_1, zero, None),
            OreKind::T => (x.clone(), x, None),
            OreKind::F => (x_plus_1, one, None),
            OreKind::Q => {
                let q = need_q(&q)?;
                (x.scale(&q), zero, Some(q))
            }
            OreKind::J => {
                let q = need_q(&q)?;
                (x.scale(&q), one, Some(q))
            }
            OreKind::Custom => {
                let (Some(s), Some(d)) = (custom_sigma, custom_delta) else {
                    return Err(OreError::InvalidAlgebra(
                        "custom algebras need both σ(x) and δ(x)".into(),
                    ));
                };
                if s.is_constant() {
                    return Err(OreError::InvalidAlgebra(
                        "σ(x) must be nonconstant".into(),
                    ));
                }
                if domain == CoeffDomain::Poly && !(s.is_polynomial() && d.is_polynomial()) {
                    return Err(OreError::InvalidAlgebra(
                        "σ(x) and δ(x) must be polynomials over a polynomial base ring".into(),
                    ));
                }
                (s, d, q)
            }
        };
        Ok(Arc::new(OreAlgebra {
            base_var,
            gen_name,
            kind,
            sigma_image: sigma,
            delta_image: delta,
            q,
            domain,
        }))
    }

    /// Algebra whose kind is read off the generator name, e.g. `Dx` over
    /// `x` or `Sn` over `n`.
    pub fn from_gen_name(gen_name: &str, domain: CoeffDomain) -> Result<Algebra<K>> {
        let mut chars = gen_name.chars();
        let kind = chars
            .next()
            .and_then(OreKind::from_prefix)
            .ok_or_else(|| OreError::InvalidAlgebra(format!("cannot infer kind of `{gen_name}`")))?;
        if kind.is_q_kind() {
            return Err(OreError::InvalidAlgebra(format!(
                "{kind:?} algebra requires a value for q"
            )));
        }
        let base: String = chars.collect();
        AlgebraSpec::new(&base, gen_name, kind).domain(domain).build()
    }

    /// Built-in non-q kind with generator named `<prefix><var>`.
    pub fn builtin(var: &str, kind: OreKind) -> Algebra<K> {
        assert!(!kind.is_q_kind() && kind != OreKind::Custom);
        AlgebraSpec::new(var, &format!("{}{var}", kind.prefix()), kind)
            .build()
            .expect("standard algebra")
    }

    pub fn base_var(&self) -> &str {
        &self.base_var
    }

    pub fn gen_name(&self) -> &str {
        &self.gen_name
    }

    pub fn kind(&self) -> OreKind {
        self.kind
    }

    pub fn domain(&self) -> CoeffDomain {
        self.domain
    }

    pub fn q(&self) -> Option<&K> {
        self.q.as_ref()
    }

    /// σ(x)
    pub fn sigma_image(&self) -> &RatFun<K> {
        &self.sigma_image
    }

    /// δ(x)
    pub fn delta_image(&self) -> &RatFun<K> {
        &self.delta_image
    }

    /// Same algebra over the requested coefficient domain.
    pub fn with_domain(self: &Arc<Self>, domain: CoeffDomain) -> Algebra<K> {
        if self.domain == domain {
            return self.clone();
        }
        Arc::new(OreAlgebra {
            domain,
            ..(**self).clone()
        })
    }

    /// Same algebra with rational-function coefficients.
    pub fn over_fractions(self: &Arc<Self>) -> Algebra<K> {
        self.with_domain(CoeffDomain::RatFun)
    }

    /// Same base variable, other built-in kind; generator `<prefix><var>`.
    pub fn sibling(self: &Arc<Self>, kind: OreKind) -> Algebra<K> {
        let a = Self::builtin(&self.base_var, kind);
        a.with_domain(self.domain)
    }

    /// Equal up to coefficient domain and generator name.
    pub fn compatible(&self, other: &OreAlgebra<K>) -> bool {
        self.kind == other.kind
            && self.base_var == other.base_var
            && self.q == other.q
            && self.sigma_image == other.sigma_image
            && self.delta_image == other.delta_image
    }

    /// The ring endomorphism σ: substitutes x ↦ σ(x).
    pub fn sigma(&self, p: &RatFun<K>) -> RatFun<K> {
        match self.kind {
            OreKind::D | OreKind::T => p.clone(),
            OreKind::S | OreKind::F => p.shift(&K::one()),
            OreKind::Q | OreKind::J => p.scale_var(self.q.as_ref().unwrap()),
            OreKind::Custom => p.compose(&self.sigma_image),
        }
    }

    /// σ applied `k` times.
    pub fn sigma_pow(&self, p: &RatFun<K>, k: usize) -> RatFun<K> {
        match self.kind {
            OreKind::D | OreKind::T => p.clone(),
            OreKind::S | OreKind::F => p.shift(&K::from_i64(k as i64)),
            _ => (0..k).fold(p.clone(), |acc, _| self.sigma(&acc)),
        }
    }

    /// The σ-derivation δ, fixed by δ(x) and δ(c) = 0 on constants.
    pub fn delta(&self, p: &RatFun<K>) -> RatFun<K> {
        if p.is_constant() {
            return RatFun::zero();
        }
        match self.kind {
            OreKind::D => p.derivative(),
            OreKind::T => &RatFun::x() * &p.derivative(),
            OreKind::S | OreKind::Q => RatFun::zero(),
            OreKind::F => &self.sigma(p) - p,
            OreKind::J => {
                let q = self.q.as_ref().unwrap();
                let den = RatFun::from_poly(Poly::monomial(q.minus(&K::one()), 1));
                &(&self.sigma(p) - p) / &den
            }
            OreKind::Custom => self.delta_generic(p),
        }
    }

    fn delta_poly(&self, p: &Poly<K>) -> RatFun<K> {
        // δ(x^n) = δ(x) x^(n-1) + σ(x) δ(x^(n-1))
        let x = RatFun::x();
        let mut acc = RatFun::zero();
        let mut dpow = RatFun::zero();
        let mut xpow = RatFun::one();
        for (n, c) in p.coeffs().iter().enumerate() {
            if n > 0 {
                dpow = &(&self.delta_image * &xpow) + &(&self.sigma_image * &dpow);
                xpow = &xpow * &x;
            }
            if !c.is_zero() {
                acc = &acc + &dpow.scale(c);
            }
        }
        acc
    }

    fn delta_generic(&self, p: &RatFun<K>) -> RatFun<K> {
        let da = self.delta_poly(p.num());
        if p.is_polynomial() {
            return da;
        }
        // δ(a/b) = (δ(a) - σ(a/b) δ(b)) / b
        let b = RatFun::from_poly(p.den().clone());
        let db = self.delta_poly(p.den());
        &(&da - &(&self.sigma(p) * &db)) / &b
    }
}

impl OreAlgebra<Rational> {
    /// `K[x]<Dx>` with `x = var`.
    pub fn differential(var: &str) -> Algebra {
        Self::builtin(var, OreKind::D)
    }

    /// `K[n]<Sn>` with `n = var`.
    pub fn shift(var: &str) -> Algebra {
        Self::builtin(var, OreKind::S)
    }

    pub fn standard(var: &str, kind: OreKind) -> Algebra {
        Self::builtin(var, kind)
    }
}

impl<K: ConstField> fmt::Debug for OreAlgebra<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<K: ConstField> fmt::Display for OreAlgebra<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = match self.domain {
            CoeffDomain::Poly => format!("K[{}]", self.base_var),
            CoeffDomain::RatFun => format!("K({})", self.base_var),
        };
        write!(
            f,
            "{ring}<{}> ({:?}: σ({v}) = {}, δ({v}) = {})",
            self.gen_name,
            self.kind,
            self.sigma_image.render(&self.base_var),
            self.delta_image.render(&self.base_var),
            v = self.base_var
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::rat;
    use crate::arith::QFun;

    type A = OreAlgebra<Rational>;

    fn xpow(k: usize) -> RatFun<Rational> {
        RatFun::from_poly(Poly::monomial(rat(1), k))
    }

    #[test]
    fn builtin_images() {
        let d = A::differential("x");
        assert_eq!(d.sigma_image(), &RatFun::x());
        assert_eq!(d.delta_image(), &RatFun::one());
        let q = AlgebraSpec::new("x", "Qx", OreKind::Q).q(rat(2)).build().unwrap();
        assert_eq!(q.sigma_image(), &RatFun::x().scale(&rat(2)));
        assert!(q.delta_image().is_zero());
    }

    #[test]
    fn missing_q_and_constant_sigma_rejected() {
        assert!(matches!(
            AlgebraSpec::<Rational>::new("x", "Qx", OreKind::Q).build(),
            Err(OreError::InvalidAlgebra(_))
        ));
        assert!(matches!(
            AlgebraSpec::new("x", "X", OreKind::Custom)
                .custom(RatFun::constant(rat(3)), RatFun::one())
                .build(),
            Err(OreError::InvalidAlgebra(_))
        ));
    }

    #[test]
    fn sigma_delta_on_powers() {
        let d = A::differential("x");
        assert_eq!(d.delta(&xpow(5)), xpow(4).scale(&rat(5)));
        assert_eq!(d.sigma(&xpow(5)), xpow(5));
        let s = A::shift("x");
        let xp1 = RatFun::from_poly(Poly::from_i64s(&[1, 1]));
        assert_eq!(s.sigma(&xpow(2)), &xp1 * &xp1);
        assert!(s.delta(&xpow(2)).is_zero());
    }

    #[test]
    fn jackson_delta_symbolic_q() {
        let q = QFun::q_symbol().unwrap();
        let j = AlgebraSpec::<QFun>::new("x", "Jx", OreKind::J).q(q.clone()).build().unwrap();
        let x2 = RatFun::from_poly(Poly::monomial(QFun::one(), 2));
        // δ(x^2) = δ(x) x + σ(x) δ(x) = (q + 1) x
        let expect = RatFun::from_poly(Poly::monomial(&q + &QFun::one(), 1));
        assert_eq!(j.delta(&x2), expect);
    }

    #[test]
    fn custom_matches_forward_difference() {
        let custom = AlgebraSpec::new("x", "X", OreKind::Custom)
            .custom(RatFun::from_poly(Poly::from_i64s(&[1, 1])), RatFun::one())
            .build()
            .unwrap();
        let f = A::standard("x", OreKind::F);
        for k in 0..7 {
            assert_eq!(custom.delta(&xpow(k)), f.delta(&xpow(k)));
        }
        let r = RatFun::new(Poly::one(), Poly::from_i64s(&[2, 1]));
        assert_eq!(custom.delta(&r), f.delta(&r));
    }
}
