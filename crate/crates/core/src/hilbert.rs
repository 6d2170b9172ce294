//! Hilbert functions, Ehrhart polynomials, h-vectors and the multiplicity
//! of the cokernel `C` of `R -> omega_R(-a)`.
//!
//! Everything here comes in two flavours: a closed form evaluated with exact
//! rationals, and a count of lattice points. The tests pin one against the
//! other.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{binomial, factorial, rat, to_nonneg_integer, RatPoly};
use crate::error::{Error, Result};
use crate::multipartite::{CaseClass, Partition};
use crate::polytope::{ell_closed_form, Budget, SupportSystem};

/// `m -> |mP ∩ Z^d|` as an exact polynomial of degree `dim P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EhrhartPolynomial {
    pub poly: RatPoly,
    pub dim: usize,
}

impl EhrhartPolynomial {
    pub fn eval(&self, m: i64) -> BigRational {
        self.poly.eval_int(m)
    }

    /// Value at a dilation `m >= 0` as an integer.
    pub fn count(&self, m: u64) -> Result<BigInt> {
        to_nonneg_integer(&self.eval(m as i64), "Ehrhart polynomial")
    }

    /// `(-1)^dim i(P, -m)`, which counts interior points of `mP` for `m >= 1`.
    pub fn reciprocal(&self, m: u64) -> BigRational {
        let v = self.eval(-(m as i64));
        if self.dim.is_multiple_of(2) {
            v
        } else {
            -v
        }
    }
}

/// The closed form
/// `C(d+2m-1, d-1) - sum_k sum_{1<=i<=j<=r_k} C(j-i+m-1, j-i) C(d-j+m-1, d-j)`
/// expanded into rational coefficients.
pub fn ehrhart_closed_form(p: &Partition) -> EhrhartPolynomial {
    let d = p.d() as i64;
    let mut poly = RatPoly::binomial(2, d - 1, d - 1);
    for &r in p.parts() {
        let r = r as i64;
        for j in 1..=r {
            // C(d-j+m-1, d-j) depends only on j
            let right = RatPoly::binomial(1, d - j - 1, d - j);
            let mut left = RatPoly::zero();
            for i in 1..=j {
                left = &left + &RatPoly::binomial(1, j - i - 1, j - i);
            }
            poly = &poly - &(&left * &right);
        }
    }
    let dim = SupportSystem::new(p).polytope_dim();
    EhrhartPolynomial { poly, dim }
}

/// The same closed form evaluated termwise with integer binomials at one
/// dilation, without expanding into a polynomial.
pub fn ehrhart_closed_form_value(p: &Partition, m: u64) -> BigInt {
    let d = p.d() as i64;
    let m = m as i64;
    let mut acc = binomial(d + 2 * m - 1, d - 1);
    for &r in p.parts() {
        let r = r as i64;
        for j in 1..=r {
            for i in 1..=j {
                acc -= binomial(j - i + m - 1, j - i) * binomial(d - j + m - 1, d - j);
            }
        }
    }
    acc
}

/// `|mP ∩ Z^d|`, by enumerating the points.
pub fn hilbert_function_counted(p: &Partition, m: u64, budget: &Budget) -> Result<u128> {
    SupportSystem::new(p).count_enumerated(m, false, budget)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    pub dim: usize,
    pub ell: u64,
    pub s: usize,
    pub h: Vec<i128>,
}

impl HilbertData {
    pub fn h_s(&self) -> i128 {
        self.h[self.s]
    }
}

/// Krull dimension and h-vector from counted values of the Hilbert function.
///
/// `h_i = sum_{j<=i} (-1)^j C(dim, j) H(R, i-j)` for `i <= dim`, trailing
/// zeros removed. The socle degree must satisfy `s = dim - ell`.
pub fn h_vector(p: &Partition, budget: &Budget) -> Result<HilbertData> {
    let sys = SupportSystem::new(p);
    let dim = sys.polytope_dim() + 1;
    let values: Vec<i128> = (0..=dim as u64)
        .map(|m| {
            sys.count_points(m, false).and_then(|c| {
                i128::try_from(c).map_err(|_| Error::Overflow("Hilbert function value"))
            })
        })
        .collect::<Result<_>>()?;
    let mut h = Vec::with_capacity(dim + 1);
    for i in 0..=dim {
        let mut acc: i128 = 0;
        for j in 0..=i {
            let c = binomial(dim as i64, j as i64)
                .to_i128()
                .ok_or(Error::Overflow("binomial"))?;
            let term = c
                .checked_mul(values[i - j])
                .ok_or(Error::Overflow("h-vector"))?;
            acc = if j % 2 == 0 {
                acc.checked_add(term)
            } else {
                acc.checked_sub(term)
            }
            .ok_or(Error::Overflow("h-vector"))?;
        }
        h.push(acc);
    }
    while h.len() > 1 && *h.last().unwrap() == 0 {
        h.pop();
    }
    if h[0] != 1 || h.iter().any(|&x| x < 0) {
        return Err(Error::Integrity(format!(
            "h-vector {h:?} of {p} is not admissible"
        )));
    }
    let s = h.len() - 1;
    let ell = sys.ell_bruteforce(budget)?;
    if s as i64 != dim as i64 - ell as i64 {
        return Err(Error::Integrity(format!(
            "socle degree {s} of {p} differs from dim - ell = {dim} - {ell}"
        )));
    }
    Ok(HilbertData { dim, ell, s, h })
}

fn require_non_bipartite(p: &Partition) -> Result<()> {
    if p.is_bipartite() {
        return Err(Error::OutOfScope {
            required: "n >= 3",
            partition: p.to_string(),
        });
    }
    Ok(())
}

/// `(c_{d-1}, c_{d-2})` from
/// `(d-1)! c_{d-1} = 2^{d-1} - sum_k sum_{j<=r_k} C(d-1, j-1)` and
/// `(d-2)! c_{d-2} = 2^{d-3} d - sum_k sum_{j<=r_k} (C(d-2, j-2) + (d-2)/2 (C(d-3, j-3) + C(d-3, j-1)))`.
pub fn leading_coefficients(p: &Partition) -> Result<(BigRational, BigRational)> {
    require_non_bipartite(p)?;
    let d = p.d() as i64;
    let two = BigInt::from(2);
    let mut top = rat(num_traits::pow(two.clone(), (d - 1) as usize));
    // 2^{d-3} d, with d >= 3 here
    let mut next = rat(num_traits::pow(two, (d - 3) as usize) * d);
    let half_dm2 = BigRational::new(BigInt::from(d - 2), BigInt::from(2));
    for &r in p.parts() {
        for j in 1..=r as i64 {
            top -= rat(binomial(d - 1, j - 1));
            next -= rat(binomial(d - 2, j - 2))
                + &half_dm2 * rat(binomial(d - 3, j - 3) + binomial(d - 3, j - 1));
        }
    }
    let top = top / rat(factorial((d - 1) as u64));
    let next = next / rat(factorial((d - 2) as u64));
    Ok((top, next))
}

/// Multiplicity of the cokernel `C`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CokernelMultiplicity {
    /// `ell` used in the coefficient form.
    pub ell: u64,
    /// `(d-2)! ((d-1) ell c_{d-1} - 2 c_{d-2})`.
    pub coefficient_form: BigInt,
    /// `sum_k (d/2 - r_k - 1) C(d-2, r_k - 1)`, case A only.
    pub closed_form: Option<BigInt>,
}

impl CokernelMultiplicity {
    pub fn value(&self) -> &BigInt {
        &self.coefficient_form
    }

    /// Whether the value is covered by the case-A closed form rather than
    /// only by the general coefficient formula.
    pub fn is_stated(&self) -> bool {
        self.closed_form.is_some()
    }
}

/// `e(C)` for `n >= 3`.
///
/// The coefficient form holds for any `ell`. In the main range (`n = 3`
/// with `r_1 >= 2`, or `n >= 4`) `ell` is taken from the case split;
/// outside it (`n = 3`, `r_1 = 1`) the case split is not valid for
/// `K_{1,1,1}`, so `ell` is found by enumeration.
pub fn e_of_c(p: &Partition, budget: &Budget) -> Result<CokernelMultiplicity> {
    require_non_bipartite(p)?;
    let ell = if p.in_main_range() {
        ell_closed_form(p)?
    } else {
        SupportSystem::new(p).ell_bruteforce(budget)?
    };
    let d = p.d() as i64;
    let (c1, c2) = leading_coefficients(p)?;
    let inner = rat(BigInt::from((d - 1) * ell as i64)) * c1 - rat(2) * c2;
    let coefficient_form = to_nonneg_integer(&(inner * rat(factorial((d - 2) as u64))), "e(C)")?;
    let closed_form = (p.case_class() == CaseClass::A).then(|| e_of_c_case_a(p));
    if let Some(cf) = &closed_form {
        if *cf != coefficient_form {
            return Err(Error::Integrity(format!(
                "e(C) of {p}: closed form {cf} != coefficient form {coefficient_form}"
            )));
        }
    }
    Ok(CokernelMultiplicity {
        ell,
        coefficient_form,
        closed_form,
    })
}

/// `sum_k (d/2 - r_k - 1) C(d-2, r_k - 1)`.
pub fn e_of_c_case_a(p: &Partition) -> BigInt {
    let d = p.d() as i64;
    p.parts()
        .iter()
        .map(|&r| {
            let r = r as i64;
            BigInt::from(d / 2 - r - 1) * binomial(d - 2, r - 1)
        })
        .sum()
}

/// `e(C)` from counted values of `H(C, m) = i(P°, m + ell) - i(P, m)`:
/// interpolate, then scale the coefficient of degree `dim C - 1` by
/// `(dim C - 1)!`. Works for every `n`, including bipartite graphs.
pub fn e_of_c_counted(p: &Partition, budget: &Budget) -> Result<BigInt> {
    let sys = SupportSystem::new(p);
    let dim_c = sys.polytope_dim();
    if dim_c == 0 {
        // K_{1,1}: a polynomial ring in one variable, C = 0
        return Ok(BigInt::zero());
    }
    let ell = sys.ell_bruteforce(budget)?;
    let values: Vec<BigInt> = (0..=dim_c as u64)
        .map(|m| {
            let inner = sys.count_points(m + ell, true)?;
            let all = sys.count_points(m, false)?;
            Ok(BigInt::from(inner) - BigInt::from(all))
        })
        .collect::<Result<_>>()?;
    let poly = RatPoly::interpolate(0, &values);
    if poly.degree().is_some_and(|deg| deg >= dim_c) {
        return Err(Error::Integrity(format!(
            "H(C, m) of {p} has degree {:?}, expected < {dim_c}",
            poly.degree()
        )));
    }
    let lead = poly.coeff(dim_c - 1) * rat(factorial(dim_c as u64 - 1));
    to_nonneg_integer(&lead, "e(C) by interpolation")
}

/// Normalized volume `e(R) = dim P! * c_{dim P}`.
pub fn multiplicity(poly: &EhrhartPolynomial) -> BigInt {
    let lead = poly.poly.coeff(poly.dim) * rat(factorial(poly.dim as u64));
    debug_assert!(lead.is_integer() && lead.is_positive());
    lead.to_integer()
}

/// Interior count through reciprocity; for cross-checks only.
pub fn interior_by_reciprocity(p: &Partition, m: u64) -> Result<BigInt> {
    let e = ehrhart_closed_form(p);
    to_nonneg_integer(&e.reciprocal(m), "reciprocity")
}
