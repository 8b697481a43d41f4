//! Exact Walsh spectra of ternary functions in Z[zeta_3]: plateaued
//! classification, weak regularity, sign and dual-function extraction.
//!
//! Every spectral value lives in the Eisenstein ring, so all classification
//! is exact integer arithmetic; no floating point appears anywhere.

use crate::field::{Field, FieldElement, Gf3};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::fmt;
use thiserror::Error;

/// An Eisenstein integer a + b*zeta, where zeta is a primitive cube root of
/// unity with zeta^2 = -1 - zeta.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Eisenstein {
    pub a: BigInt,
    pub b: BigInt,
}

impl Eisenstein {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Eisenstein {
        Eisenstein {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn zero() -> Eisenstein {
        Eisenstein::new(0, 0)
    }

    pub fn one() -> Eisenstein {
        Eisenstein::new(1, 0)
    }

    /// 1 + 2*zeta, a square root of -3.
    pub fn sqrt_neg3() -> Eisenstein {
        Eisenstein::new(1, 2)
    }

    /// zeta^c for c in GF(3): 1, zeta, or -1-zeta.
    pub fn zeta_power(c: Gf3) -> Eisenstein {
        match c.value() {
            0 => Eisenstein::new(1, 0),
            1 => Eisenstein::new(0, 1),
            _ => Eisenstein::new(-1, -1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, rhs: &Eisenstein) -> Eisenstein {
        Eisenstein::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }

    pub fn sub(&self, rhs: &Eisenstein) -> Eisenstein {
        Eisenstein::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }

    pub fn neg(&self) -> Eisenstein {
        Eisenstein::new(-&self.a, -&self.b)
    }

    /// (a + b*zeta)(c + d*zeta) with zeta^2 = -1 - zeta.
    pub fn mul(&self, rhs: &Eisenstein) -> Eisenstein {
        let ac = &self.a * &rhs.a;
        let bd = &self.b * &rhs.b;
        let ad_bc = &self.a * &rhs.b + &self.b * &rhs.a;
        Eisenstein::new(ac - &bd, ad_bc - &bd)
    }

    /// Complex conjugate: zeta maps to zeta^2.
    pub fn conj(&self) -> Eisenstein {
        Eisenstein::new(&self.a - &self.b, -&self.b)
    }

    pub fn scale(&self, k: impl Into<BigInt>) -> Eisenstein {
        let k = k.into();
        Eisenstein::new(&self.a * &k, &self.b * &k)
    }

    pub fn pow(&self, e: u32) -> Eisenstein {
        let mut result = Eisenstein::one();
        for _ in 0..e {
            result = result.mul(self);
        }
        result
    }

    /// Field norm a^2 - ab + b^2 = |a + b*zeta|^2; nonnegative, zero only at 0.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    /// Exact division; None when `rhs` does not divide `self` in Z[zeta].
    pub fn checked_div(&self, rhs: &Eisenstein) -> Option<Eisenstein> {
        let d = rhs.norm();
        if d.is_zero() {
            return None;
        }
        let num = self.mul(&rhs.conj());
        if (&num.a % &d).is_zero() && (&num.b % &d).is_zero() {
            Some(Eisenstein::new(num.a / &d, num.b / &d))
        } else {
            None
        }
    }

    /// Writes a unit of Z[zeta] as (sign, c) with value sign * zeta^c.
    pub fn as_signed_zeta_power(&self) -> Option<(i8, Gf3)> {
        for sign in [1i8, -1] {
            for c in Gf3::all() {
                let mut z = Eisenstein::zeta_power(c);
                if sign < 0 {
                    z = z.neg();
                }
                if &z == self {
                    return Some((sign, c));
                }
            }
        }
        None
    }
}

impl fmt::Display for Eisenstein {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*zeta", self.b)
        } else if self.b.is_negative() {
            write!(f, "{}{}*zeta", self.a, self.b)
        } else {
            write!(f, "{}+{}*zeta", self.a, self.b)
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpectrumError {
    #[error("quadratic character is undefined at 0")]
    CharacterAtZero,
    #[error("term exponent must be positive")]
    ZeroExponent,
    #[error("function has no terms")]
    EmptyFunction,
    #[error("cannot parse function spec {0:?}")]
    BadSpec(String),
    #[error(transparent)]
    Field(#[from] crate::field::FieldError),
}

/// Quadratic character of GF(3)*: 1 is a square, 2 is not.
pub fn quadratic_character(t: Gf3) -> Result<i8, SpectrumError> {
    match t.value() {
        0 => Err(SpectrumError::CharacterAtZero),
        1 => Ok(1),
        _ => Ok(-1),
    }
}

/// Internal shorthand for eta_0 where the argument is known nonzero.
pub(crate) fn eta0(t: Gf3) -> i8 {
    debug_assert!(!t.is_zero());
    if t.value() == 1 {
        1
    } else {
        -1
    }
}

/// A map GF(3^n) -> GF(3) given as a trace polynomial
/// f(x) = Tr(sum_i c_i x^(e_i)), materialized as a value table in
/// enumeration order.
#[derive(Debug, Clone)]
pub struct TernaryFunction {
    field: Field,
    terms: Vec<(FieldElement, u64)>,
    table: Vec<Gf3>,
}

impl TernaryFunction {
    pub fn new(field: Field, terms: Vec<(FieldElement, u64)>) -> Result<Self, SpectrumError> {
        if terms.iter().any(|(_, e)| *e == 0) {
            return Err(SpectrumError::ZeroExponent);
        }
        let table = (0..field.order())
            .map(|i| {
                let x = field.element_at(i);
                let mut acc = field.zero();
                for (c, e) in &terms {
                    acc = field.add(&acc, &field.mul(c, &field.pow(&x, *e)));
                }
                field.trace(&acc)
            })
            .collect();
        Ok(TernaryFunction {
            field,
            terms,
            table,
        })
    }

    /// The trace of the identity map, f(x) = Tr(x).
    pub fn trace_function(field: Field) -> TernaryFunction {
        let one = field.one();
        TernaryFunction::new(field, vec![(one, 1)]).expect("Tr(x) is a valid trace polynomial")
    }

    /// A function given directly by its value table; used by oracles when a
    /// trace-polynomial form is not needed. The term list is left empty.
    pub(crate) fn from_table(field: Field, table: Vec<Gf3>) -> TernaryFunction {
        assert_eq!(table.len(), field.order());
        TernaryFunction {
            field,
            terms: Vec::new(),
            table,
        }
    }

    /// Parses `Tr(c1*x^e1 + c2*x^e2 + ...) @ <field spec>` where each
    /// coefficient is `g^k` relative to the field's primitive element or a
    /// coefficient vector `[c0,c1,...]`.
    pub fn parse_spec(spec: &str) -> Result<TernaryFunction, SpectrumError> {
        let bad = || SpectrumError::BadSpec(spec.to_string());
        let (body, field_spec) = spec.rsplit_once('@').ok_or_else(bad)?;
        let field = Field::parse_spec(field_spec)?;
        let primitive = field.primitive_element();
        let body = body.trim();
        let inner = body
            .strip_prefix("Tr(")
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(bad)?;
        let mut terms = Vec::new();
        for raw in split_terms(inner) {
            let t = raw.trim();
            if t.is_empty() {
                return Err(bad());
            }
            let (coeff_text, exp) = match t.rsplit_once("*x^") {
                Some((c, e)) => (c, e.trim().parse::<u64>().map_err(|_| bad())?),
                None => match t.rsplit_once("*x") {
                    Some((c, tail)) if tail.trim().is_empty() => (c, 1),
                    _ => return Err(bad()),
                },
            };
            let coeff = field.parse_element(coeff_text, &primitive)?;
            terms.push((coeff, exp));
        }
        if terms.is_empty() {
            return Err(SpectrumError::EmptyFunction);
        }
        TernaryFunction::new(field, terms)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> &[(FieldElement, u64)] {
        &self.terms
    }

    pub fn table(&self) -> &[Gf3] {
        &self.table
    }

    pub fn eval_index(&self, index: usize) -> Gf3 {
        self.table[index]
    }

    pub fn spec_string(&self) -> String {
        let primitive = self.field.primitive_element();
        let terms: Vec<String> = self
            .terms
            .iter()
            .map(|(c, e)| {
                format!(
                    "{}*x^{}",
                    self.field.render_element_as_power(c, &primitive),
                    e
                )
            })
            .collect();
        format!("Tr({}) @ {}", terms.join(" + "), self.field.spec_string())
    }
}

/// Coefficient vectors contain commas, never pluses, so a plain split on `+`
/// separates terms.
fn split_terms(s: &str) -> impl Iterator<Item = &str> {
    s.split('+')
}

/// Walsh transform W_f(alpha) = sum_x zeta^(f(x) - Tr(alpha x)), exact.
pub fn walsh_transform(f: &TernaryFunction, alpha: &FieldElement) -> Eisenstein {
    let field = f.field();
    let mut acc = [0i64; 3];
    for i in 0..field.order() {
        let x = field.element_at(i);
        let e = f.eval_index(i) - field.trace(&field.mul(alpha, &x));
        acc[e.value() as usize] += 1;
    }
    // n0 + n1*zeta + n2*zeta^2 with zeta^2 = -1 - zeta
    Eisenstein::new(acc[0] - acc[2], acc[1] - acc[2])
}

/// Full spectrum in enumeration order.
pub fn full_spectrum(f: &TernaryFunction) -> Vec<Eisenstein> {
    let field = f.field();
    // Tr(alpha x) tables reuse the multiplication per element pair; at desk
    // scale the straightforward double loop is fine.
    (0..field.order())
        .map(|ai| walsh_transform(f, &field.element_at(ai)))
        .collect()
}

/// Spectral classification of a plateaued function.
#[derive(Debug, Clone)]
pub struct SpectrumProfile {
    /// Extension degree of the domain.
    pub n: usize,
    /// Plateau amplitude: nonzero squared norms all equal 3^(n+k).
    pub k: usize,
    /// Walsh sign when weakly regular: every support value is
    /// epsilon * sqrt(-3)^(n+k) * zeta^(dual value).
    pub epsilon: Option<i8>,
    pub weakly_regular: bool,
    /// W_f(0) = 0.
    pub balanced: bool,
    /// Weakly regular, unbalanced, f(0) = 0 and f(2x) = f(x).
    pub in_wrp: bool,
    /// Dual satisfies f*(2a) = f*(a) on the support.
    pub dual_homogeneous: bool,
    /// Dual function table; 0 off the support by convention.
    pub dual: Vec<Gf3>,
    /// Indices (enumeration order) of the Walsh support.
    pub support: Vec<usize>,
    /// The full Walsh spectrum in enumeration order.
    pub spectrum: Vec<Eisenstein>,
}

impl SpectrumProfile {
    pub fn support_size(&self) -> usize {
        self.support.len()
    }

    pub fn is_support_index(&self, idx: usize) -> bool {
        !self.spectrum[idx].is_zero()
    }

    /// epsilon for profiles admitted as weakly regular.
    pub fn sign(&self) -> i8 {
        self.epsilon.expect("profile is weakly regular")
    }
}

/// Outcome of spectral analysis. "Not plateaued" is a verdict, not an error.
#[derive(Debug, Clone)]
pub enum Analysis {
    NotPlateaued { distinct_norms: Vec<BigInt> },
    Plateaued(SpectrumProfile),
}

impl Analysis {
    pub fn profile(&self) -> Option<&SpectrumProfile> {
        match self {
            Analysis::Plateaued(p) => Some(p),
            Analysis::NotPlateaued { .. } => None,
        }
    }
}

/// Computes the full spectrum and classifies the function: plateau amplitude,
/// weak regularity with sign in {-1, +1}, dual table, support, and the
/// homogeneity flags used for construction admission.
pub fn analyze(f: &TernaryFunction) -> Analysis {
    let field = f.field();
    let n = field.degree();
    debug_assert_eq!(
        Eisenstein::sqrt_neg3().mul(&Eisenstein::sqrt_neg3()),
        Eisenstein::new(-3, 0)
    );
    let spectrum = full_spectrum(f);

    let mut norms: Vec<BigInt> = spectrum.iter().map(Eisenstein::norm).collect();
    let mut distinct: Vec<BigInt> = norms.clone();
    distinct.sort();
    distinct.dedup();
    let nonzero: Vec<&BigInt> = distinct.iter().filter(|v| !v.is_zero()).collect();
    if nonzero.len() != 1 {
        return Analysis::NotPlateaued {
            distinct_norms: distinct,
        };
    }
    // nonzero squared norms must all equal 3^(n+k) for a single k in 0..=n
    let level = nonzero[0].clone();
    let (mut k, mut power) = (0usize, BigInt::from(3).pow(n as u32));
    while power < level {
        power *= 3;
        k += 1;
    }
    if power != level || k > n {
        return Analysis::NotPlateaued {
            distinct_norms: distinct,
        };
    }
    norms.clear();

    let base = Eisenstein::sqrt_neg3().pow((n + k) as u32);
    let mut support = Vec::new();
    let mut dual = vec![Gf3::ZERO; field.order()];
    let mut signs = [false; 2]; // [plus seen, minus seen]
    let mut weakly_regular = true;
    for (idx, w) in spectrum.iter().enumerate() {
        if w.is_zero() {
            continue;
        }
        support.push(idx);
        let unit = w
            .checked_div(&base)
            .expect("support value has the same norm as the plateau base");
        match unit.as_signed_zeta_power() {
            Some((sign, c)) => {
                signs[if sign > 0 { 0 } else { 1 }] = true;
                dual[idx] = c;
            }
            None => {
                weakly_regular = false;
                break;
            }
        }
    }
    let weakly_regular = weakly_regular && (signs[0] != signs[1]);
    let epsilon = if weakly_regular {
        Some(if signs[0] { 1 } else { -1 })
    } else {
        None
    };
    if !weakly_regular {
        dual = Vec::new();
    }

    let balanced = spectrum[0].is_zero();
    let even = (0..field.order()).all(|i| {
        let x = field.element_at(i);
        let neg = field.index_of(&field.scalar_mul(Gf3::TWO, &x));
        f.eval_index(neg) == f.eval_index(i)
    });
    let in_wrp =
        weakly_regular && !balanced && f.eval_index(0).is_zero() && even;
    let dual_homogeneous = weakly_regular
        && support.iter().all(|&i| {
            let a = field.element_at(i);
            let neg = field.index_of(&field.scalar_mul(Gf3::TWO, &a));
            dual[neg] == dual[i]
        });

    Analysis::Plateaued(SpectrumProfile {
        n,
        k,
        epsilon,
        weakly_regular,
        balanced,
        in_wrp,
        dual_homogeneous,
        dual,
        support,
        spectrum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn fn_of(spec: &str) -> TernaryFunction {
        TernaryFunction::parse_spec(spec).unwrap()
    }

    #[test]
    fn sqrt_neg3_squares_to_minus_three() {
        let s = Eisenstein::sqrt_neg3();
        assert_eq!(s.mul(&s), Eisenstein::new(-3, 0));
    }

    #[test]
    fn zeta_powers_sum_to_zero() {
        let total = Gf3::all()
            .iter()
            .fold(Eisenstein::zero(), |acc, &c| acc.add(&Eisenstein::zeta_power(c)));
        assert!(total.is_zero());
    }

    #[test]
    fn character_weighted_zeta_sum_is_sqrt_neg3() {
        // sum over nonzero kappa of eta0(kappa) * zeta^kappa
        let mut total = Eisenstein::zero();
        for kappa in Gf3::nonzero() {
            let term = Eisenstein::zeta_power(kappa).scale(eta0(kappa) as i64);
            total = total.add(&term);
        }
        assert_eq!(total, Eisenstein::sqrt_neg3());
    }

    #[test]
    fn quadratic_character_values_and_multiplicativity() {
        assert_eq!(quadratic_character(Gf3::ONE).unwrap(), 1);
        assert_eq!(quadratic_character(Gf3::TWO).unwrap(), -1);
        assert!(matches!(
            quadratic_character(Gf3::ZERO),
            Err(SpectrumError::CharacterAtZero)
        ));
        for kappa in Gf3::nonzero() {
            for tau in Gf3::nonzero() {
                let lhs = quadratic_character(kappa * kappa * tau).unwrap();
                assert_eq!(lhs, quadratic_character(tau).unwrap());
            }
        }
    }

    #[test]
    fn eisenstein_ring_laws_exhaustive_small() {
        let vals: Vec<Eisenstein> = (-2..=2)
            .flat_map(|a| (-2..=2).map(move |b| Eisenstein::new(a, b)))
            .collect();
        for x in &vals {
            assert_eq!(x.mul(&Eisenstein::one()), x.clone());
            assert_eq!(x.norm(), x.mul(&x.conj()).a);
            assert!(x.mul(&x.conj()).b.is_zero());
            assert!(x.norm() >= BigInt::from(0));
            for y in &vals {
                assert_eq!(x.mul(y), y.mul(x));
                assert_eq!(x.add(y).sub(y), x.clone());
                for z in &vals {
                    assert_eq!(x.mul(&y.add(z)), x.mul(y).add(&x.mul(z)));
                    assert_eq!(x.mul(&y.mul(z)), x.mul(y).mul(z));
                }
            }
        }
    }

    #[test]
    fn walsh_of_zero_function_at_zero_is_field_size() {
        // f = Tr(0 * x): identically zero
        let field = Field::new(3).unwrap();
        let zero_fn = TernaryFunction::new(field.clone(), vec![(field.zero(), 1)]).unwrap();
        let w = walsh_transform(&zero_fn, &field.zero());
        assert_eq!(w, Eisenstein::new(27, 0));
    }

    #[test]
    fn walsh_of_trace_at_one_is_field_size() {
        let field = Field::new(3).unwrap();
        let f = TernaryFunction::trace_function(field.clone());
        let w = walsh_transform(&f, &field.one());
        assert_eq!(w, Eisenstein::new(27, 0));
        // elsewhere the exponent is a nonzero linear form, so the sum dies
        let w2 = walsh_transform(&f, &field.zero());
        assert!(w2.is_zero());
    }

    #[test]
    fn tr_2x92_is_weakly_regular_2_plateaued_sign_plus() {
        let f = fn_of("Tr([2,0,0,0]*x^92) @ GF(3^4)");
        let norms_ok = full_spectrum(&f)
            .iter()
            .all(|w| w.is_zero() || w.norm() == BigInt::from(729));
        assert!(norms_ok, "norm(W) must lie in {{0, 3^6}}");
        let p = match analyze(&f) {
            Analysis::Plateaued(p) => p,
            other => panic!("expected plateaued, got {other:?}"),
        };
        assert_eq!(p.k, 2);
        assert_eq!(p.epsilon, Some(1));
        assert_eq!(p.support_size(), 9);
        assert!(!p.balanced);
        assert!(p.in_wrp);
        assert!(p.dual_homogeneous);
        assert_eq!(p.dual[0], Gf3::ZERO);
    }

    #[test]
    fn quartic_quadratic_mix_is_1_plateaued_sign_minus() {
        // Tr(w^7 x^4 + w x^2) over GF(27)/x^3+2x+1 where w = [0,1,0]:
        // w = g^7 and w^7 = g^23 relative to the lexicographic-first
        // primitive element g = [0,0,2].
        let g = fn_of("Tr(g^23*x^4 + g^7*x^2) @ GF(3^3)");
        let p = analyze(&g).profile().cloned().expect("plateaued");
        assert_eq!(p.k, 1);
        assert_eq!(p.epsilon, Some(-1));
        assert_eq!(p.support_size(), 9);
        assert!(p.in_wrp && p.dual_homogeneous);
    }

    #[test]
    fn bent_functions_over_gf81_and_gf27() {
        // coefficient 1 gives the minus sign over GF(3^4)
        let g = fn_of("Tr(g^0*x^2) @ GF(3^4)");
        let p = analyze(&g).profile().cloned().unwrap();
        assert_eq!((p.k, p.epsilon), (0, Some(-1)));
        // the primitive coefficient flips the sign
        let g = fn_of("Tr(g^1*x^2) @ GF(3^4)");
        let p = analyze(&g).profile().cloned().unwrap();
        assert_eq!((p.k, p.epsilon), (0, Some(1)));
        // quartic bent over GF(27)
        let g = fn_of("Tr(g^1*x^4) @ GF(3^3)");
        let p = analyze(&g).profile().cloned().unwrap();
        assert_eq!((p.k, p.epsilon), (0, Some(-1)));
        assert!(p.in_wrp && p.dual_homogeneous && !p.balanced);
    }

    #[test]
    fn odd_term_breaks_wrp_membership() {
        // Tr(w x^13 + w^7 x^4 + w^7 x^3 + w x^2): the x^3 term hides a
        // linear form, so f(2x) != f(x) even though the spectrum is still
        // weakly regular 1-plateaued with sign -1.
        let g = fn_of("Tr(g^7*x^13 + g^23*x^4 + g^23*x^3 + g^7*x^2) @ GF(3^3)");
        let p = analyze(&g).profile().cloned().unwrap();
        assert_eq!((p.k, p.epsilon), (1, Some(-1)));
        assert!(!p.in_wrp);
        assert!(!p.dual_homogeneous);
    }

    #[test]
    fn parseval_and_support_size_hold_exhaustively() {
        for spec in [
            "Tr(g^0*x^2) @ GF(3^1)",
            "Tr(g^0*x^2) @ GF(3^2)",
            "Tr(g^1*x^2) @ GF(3^2)",
            "Tr(g^23*x^4 + g^7*x^2) @ GF(3^3)",
            "Tr(g^1*x^4) @ GF(3^3)",
            "Tr([2,0,0,0]*x^92) @ GF(3^4)",
        ] {
            let f = fn_of(spec);
            let n = f.field().degree();
            let spectrum = full_spectrum(&f);
            let total: BigInt = spectrum.iter().map(Eisenstein::norm).sum();
            assert_eq!(total, BigInt::from(3).pow(2 * n as u32), "{spec}");
            if let Analysis::Plateaued(p) = analyze(&f) {
                assert_eq!(p.support_size(), 3usize.pow((n - p.k) as u32), "{spec}");
            }
        }
    }

    #[test]
    fn weakly_regular_reconstruction_is_bit_exact() {
        let f = fn_of("Tr(g^23*x^4 + g^7*x^2) @ GF(3^3)");
        let p = analyze(&f).profile().cloned().unwrap();
        let base = Eisenstein::sqrt_neg3().pow((p.n + p.k) as u32);
        for (idx, w) in p.spectrum.iter().enumerate() {
            let rebuilt = if p.is_support_index(idx) {
                base.mul(&Eisenstein::zeta_power(p.dual[idx]))
                    .scale(p.sign() as i64)
            } else {
                Eisenstein::zero()
            };
            assert_eq!(&rebuilt, w);
        }
    }

    #[test]
    fn random_tables_satisfy_parseval() {
        // Parseval holds for arbitrary functions, not just plateaued ones;
        // random value tables exercise the transform itself.
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for n in 1..=4usize {
            let field = Field::new(n).unwrap();
            let table: Vec<Gf3> = (0..field.order())
                .map(|_| Gf3::new(rng.gen_range(0..3)))
                .collect();
            let f = TernaryFunction::from_table(field.clone(), table);
            let total: BigInt = full_spectrum(&f).iter().map(Eisenstein::norm).sum();
            assert_eq!(total, BigInt::from(3).pow(2 * n as u32));
        }
    }

    #[test]
    fn spec_parsing_round_trips_and_rejects_junk() {
        let f = fn_of("Tr(g^23*x^4 + g^7*x^2) @ GF(3^3)");
        let again = fn_of(&f.spec_string());
        assert_eq!(f.table(), again.table());
        assert!(TernaryFunction::parse_spec("Tr() @ GF(3^2)").is_err());
        assert!(TernaryFunction::parse_spec("Tr(g^1*x^0) @ GF(3^2)").is_err());
        assert!(TernaryFunction::parse_spec("g^1*x^2 @ GF(3^2)").is_err());
        assert!(TernaryFunction::parse_spec("Tr(g^1*x^2)").is_err());
    }

    proptest! {
        #[test]
        fn walsh_values_are_galois_stable_under_conjugation(idx in 0usize..81) {
            // conj(W_f(alpha)) equals W_{2f}(2 alpha) pointwise; checked on a
            // fixed plateaued function over GF(3^4)
            let f = fn_of("Tr(g^0*x^2) @ GF(3^4)");
            let field = f.field().clone();
            let alpha = field.element_at(idx % field.order());
            let w = walsh_transform(&f, &alpha);
            let doubled_table: Vec<Gf3> = f.table().iter().map(|&v| v + v).collect();
            let f2 = TernaryFunction::from_table(field.clone(), doubled_table);
            let w2 = walsh_transform(&f2, &field.scalar_mul(Gf3::TWO, &alpha));
            prop_assert_eq!(w.conj(), w2);
        }
    }
}
