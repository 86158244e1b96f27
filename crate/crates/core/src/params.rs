//! Closed-form parameter families.
//!
//! Every formula is evaluated in unbounded integers and every division is
//! checked to be exact before the result is narrowed to `i128`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::prime_power;
use crate::error::ParamsError;

type Res<T> = std::result::Result<T, ParamsError>;

/// `(v, k, λ, μ)` of a partial difference set / strongly regular graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SrgParams {
    pub v: i128,
    pub k: i128,
    pub lambda: i128,
    pub mu: i128,
}

impl fmt::Display for SrgParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.v, self.k, self.lambda, self.mu)
    }
}

impl SrgParams {
    pub fn new(v: i128, k: i128, lambda: i128, mu: i128) -> Self {
        SrgParams { v, k, lambda, mu }
    }

    /// `λ - μ`
    pub fn beta(&self) -> i128 {
        self.lambda - self.mu
    }

    /// `β² + 4(k - μ)`
    pub fn delta(&self) -> i128 {
        self.beta() * self.beta() + 4 * (self.k - self.mu)
    }

    pub fn sqrt_delta(&self) -> Option<i128> {
        exact_sqrt(self.delta())
    }

    /// `k² = k - μ + (λ - μ)k + μv`
    pub fn satisfies_identity(&self) -> bool {
        let (v, k, l, m) = (self.big_v(), big(self.k), big(self.lambda), big(self.mu));
        &k * &k == &k - &m + (l - &m) * &k + m * v
    }

    fn big_v(&self) -> BigInt {
        big(self.v)
    }

    /// The two restricted eigenvalues `(β ± √Δ)/2`, larger first.
    pub fn eigenvalues(&self) -> Res<(i128, i128)> {
        let s = self
            .sqrt_delta()
            .ok_or_else(|| ParamsError::DeltaNotSquare(self.delta().to_string()))?;
        let b = self.beta();
        let half = |x: i128| {
            if x % 2 == 0 {
                Ok(x / 2)
            } else {
                Err(ParamsError::InexactDivision(format!("eigenvalue ({x})/2")))
            }
        };
        Ok((half(b + s)?, half(b - s)?))
    }
}

fn big(x: i128) -> BigInt {
    BigInt::from(x)
}

fn exact_sqrt(x: i128) -> Option<i128> {
    if x < 0 {
        return None;
    }
    let s = big(x).sqrt().to_i128()?;
    (s * s == x).then_some(s)
}

fn exact_div(a: BigInt, b: &BigInt, what: &str) -> Res<BigInt> {
    if b.is_zero() {
        return Err(ParamsError::InexactDivision(format!("{what}: division by zero")));
    }
    let (quo, rem) = a.div_rem(b);
    if !rem.is_zero() {
        return Err(ParamsError::InexactDivision(format!("{what}: {a} / {b}")));
    }
    Ok(quo)
}

fn narrow(x: BigInt, what: &str) -> Res<i128> {
    x.to_i128().ok_or_else(|| ParamsError::Overflow(format!("{what} = {x}")))
}

fn srg(v: BigInt, k: BigInt, l: BigInt, m: BigInt, what: &str) -> Res<SrgParams> {
    let p = SrgParams {
        v: narrow(v, what)?,
        k: narrow(k, what)?,
        lambda: narrow(l, what)?,
        mu: narrow(m, what)?,
    };
    if !p.satisfies_identity() {
        return Err(ParamsError::IdentityViolated(format!("{what} {p}")));
    }
    if p.sqrt_delta().is_none() {
        return Err(ParamsError::DeltaNotSquare(format!("{what} {p}")));
    }
    Ok(p)
}

/// Which of the two families a set belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Primal,
    Dual,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Primal => "primal",
            Family::Dual => "dual",
        })
    }
}

/// `(q, m, ℓ, r)` with the checks common to every formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Shape {
    q: u64,
    m: u32,
    l: u32,
    r: u32,
}

impl Shape {
    fn new(q: u64, m: u32, l: u32, r: u32) -> Res<Self> {
        if prime_power(q).is_none() {
            return Err(ParamsError::InvalidRange(format!("q = {q} is not a prime power")));
        }
        if m == 0 || l == 0 {
            return Err(ParamsError::InvalidRange(format!("need m >= 1 and l >= 1, got m={m}, l={l}")));
        }
        if r > m {
            return Err(ParamsError::InvalidRange(format!("r = {r} exceeds m = {m}")));
        }
        Ok(Shape { q, m, l, r })
    }

    fn pw(&self, e: u32) -> BigInt {
        num_traits::pow(BigInt::from(self.q), e as usize)
    }

    fn q(&self) -> BigInt {
        BigInt::from(self.q)
    }
}

/// Parameters of the generalized Denniston set `D_{r,T}`.
pub fn denniston_params(q: u64, m: u32, l: u32, r: u32) -> Res<SrgParams> {
    let s = Shape::new(q, m, l, r)?;
    let one = BigInt::from(1);
    let qm1 = s.pw(m) - &one;
    let a = s.pw(m * l) - &one;
    let b = s.pw(m * (l + 1)) - &one;
    let qr1 = s.pw(r) - &one;
    let v = s.pw(m * (2 * l + 1));
    let x = exact_div(&qr1 * &b, &qm1, "k_r")?;
    let y = exact_div(&qr1 * &a, &qm1, "lambda_r")?;
    let k = &x * &a + &a;
    let lambda = &x * (&y - &one) + &a - &one;
    let mu = &y * (&x + &one);
    srg(v, k, lambda, mu, "denniston_params")
}

/// Parameters of the dual set `D^+_{r,T}`, checked against the complement of
/// the primal family at `m - r`.
pub fn dual_denniston_params(q: u64, m: u32, l: u32, r: u32) -> Res<SrgParams> {
    let s = Shape::new(q, m, l, r)?;
    let one = BigInt::from(1);
    let qm = s.pw(m);
    let qm1 = &qm - &one;
    let big_a = s.pw(m * (l + 1));
    let a1 = &big_a - &one;
    let low = s.pw(m - r);
    let v = s.pw(m * (2 * l + 1));
    let k = exact_div((&qm - &low) * (s.pw(m * l) - &one) * &a1, &qm1, "k+")? + &a1;
    let mu = exact_div(
        (&qm - &low) * &a1 * (&big_a - s.pw(m * (l + 1) - r) + &low - &one),
        &(&qm1 * &qm1),
        "mu+",
    )?;
    let lambda = &mu
        + exact_div(
            s.pw(m * (l + 2) - r) + s.pw(m * (l + 1) - r) - 2 * &big_a - 2 * &low + 2,
            &qm1,
            "lambda+",
        )?;
    let p = srg(v, k, lambda, mu, "dual_denniston_params")?;
    let via = complement_params(&denniston_params(q, m, l, m - r)?);
    if via != p {
        return Err(ParamsError::IdentityViolated(format!(
            "dual {p} differs from complement {via} of the primal at m - r"
        )));
    }
    Ok(p)
}

pub fn family_params(family: Family, q: u64, m: u32, l: u32, r: u32) -> Res<SrgParams> {
    match family {
        Family::Primal => denniston_params(q, m, l, r),
        Family::Dual => dual_denniston_params(q, m, l, r),
    }
}

/// `(v, v-k-1, v-2-2k+μ, v-2k+λ)`
pub fn complement_params(p: &SrgParams) -> SrgParams {
    SrgParams {
        v: p.v,
        k: p.v - p.k - 1,
        lambda: p.v - 2 - 2 * p.k + p.mu,
        mu: p.v - 2 * p.k + p.lambda,
    }
}

/// Parameters of the dual set formed by the characters with the larger value.
pub fn delsarte_dual_params(p: &SrgParams) -> Res<SrgParams> {
    let delta = p.delta();
    let s = exact_sqrt(delta)
        .filter(|&s| s > 0)
        .ok_or_else(|| ParamsError::DeltaNotSquare(format!("{delta} for {p}")))?;
    let (v, k, b, s, d) = (big(p.v), big(p.k), big(p.beta()), big(s), big(delta));
    let kp = exact_div((&s - &b) * (&v - 1) - 2 * &k, &(2 * &s), "k+")?;
    let t = &v - 2 * &k + &b - &s;
    let mup = &kp + exact_div(&t * &t - &v * &v, &(4 * &d), "mu+")?;
    let lp = &mup + exact_div(t, &s, "lambda+")?;
    srg(v, kp, lp, mup, "delsarte_dual_params")
}

/// `(n, h1, h2)` of a projective two-intersection set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectiveParams {
    pub n: i128,
    pub h1: i128,
    pub h2: i128,
}

/// `(n, w1, w2)` of a projective two-weight code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParams {
    pub n: i128,
    pub w1: i128,
    pub w2: i128,
}

impl CodeParams {
    /// Sorted distinct nonzero weights; a zero `w` is dropped.
    pub fn nonzero_weights(&self) -> Vec<i128> {
        let mut w: Vec<i128> = [self.w1, self.w2].into_iter().filter(|&x| x != 0).collect();
        w.sort_unstable();
        w.dedup();
        w
    }
}

/// Returns `(k, λ, μ)` determined by a projective `[n, ., q]` code with weights `w1, w2`.
pub fn two_weight_pds(q: i128, n: i128, w1: i128, w2: i128) -> Res<(i128, i128, i128)> {
    let (q, n, w1, w2) = (big(q), big(n), big(w1), big(w2));
    let k = &n * (&q - 1);
    let sw = &w1 + &w2;
    let tail = &q * &q * &w1 * &w2 - &k * &q * &sw;
    let lambda = &k * &k + 3 * &k - &q * &sw + &tail;
    let mu = &k * &k + &k + &tail;
    Ok((narrow(k, "k")?, narrow(lambda, "lambda")?, narrow(mu, "mu")?))
}

/// Projective-set and code parameters of either family, with their cross-identities
/// (`h = n - w`, `k = n(q-1)` and the code-to-PDS identities) asserted.
pub fn geometry_params(
    family: Family,
    q: u64,
    m: u32,
    l: u32,
    r: u32,
) -> Res<(ProjectiveParams, CodeParams)> {
    let s = Shape::new(q, m, l, r)?;
    let one = BigInt::from(1);
    let qq = s.q();
    let q1 = &qq - &one;
    let qm = s.pw(m);
    let qm1 = &qm - &one;
    let den = &q1 * &qm1;
    let qr = s.pw(r);
    let big_a = s.pw(m * (l + 1));
    let (n, h1, h2, w1, w2) = match family {
        Family::Primal => {
            let a = s.pw(m * l) - &one;
            let n = exact_div((&qr - &one) * &a * (&big_a - &one), &den, "n_r")?
                + exact_div(a.clone(), &q1, "n_r")?;
            let inner1 = s.pw(m * (l + 1) + r) - &big_a + &qm - &qr;
            let h1 = exact_div((s.pw(m * l - 1) - &one) * &inner1, &den, "h_r1")?;
            let inner2 = s.pw(m * (l + 1) + r - 1) - s.pw(m * (l + 1) - 1) + &qm - &qr;
            let h2 = exact_div(a.clone() * inner2, &den, "h_r2")?;
            let w1 = exact_div(s.pw(m * l - 1) * &inner1, &qm1, "w_r1")?;
            let w2 = exact_div(s.pw(m * (l + 1) - 1) * (&qr - &one) * &a, &qm1, "w_r2")?;
            (n, h1, h2, w1, w2)
        }
        Family::Dual => {
            let low = s.pw(m - r);
            let a1 = &big_a - &one;
            let n = exact_div((&qm - &low) * (s.pw(m * l) - &one) * &a1, &den, "n+")?
                + exact_div(a1.clone(), &q1, "n+")?;
            let h1 = exact_div(
                (s.pw(m * (l + 1) - 1) - &one) * (&big_a - s.pw(m * (l + 1) - r) + &low - &one),
                &den,
                "h+1",
            )?;
            let h2 = exact_div(
                &a1 * (s.pw(m * (l + 1) - 1) - pw_signed(&s, m * (l + 1), r + 1) + &low - &one),
                &den,
                "h+2",
            )?;
            let w1 = exact_div(
                pw_signed(&s, m * (l + 1), r + 1) * (s.pw(m * (l + 1) + r) - &big_a + &qm - &qr),
                &qm1,
                "w+1",
            )?;
            let w2 = exact_div(
                (&qr - &one) * &a1 * (s.pw(m * (l + 1) - r) - pw_signed(&s, m * (l + 1), r + 1)),
                &den,
                "w+2",
            )?;
            (n, h1, h2, w1, w2)
        }
    };
    let proj = ProjectiveParams {
        n: narrow(n.clone(), "n")?,
        h1: narrow(h1, "h1")?,
        h2: narrow(h2, "h2")?,
    };
    let code = CodeParams { n: proj.n, w1: narrow(w1, "w1")?, w2: narrow(w2, "w2")? };
    if proj.h1 != code.n - code.w1 || proj.h2 != code.n - code.w2 {
        return Err(ParamsError::IdentityViolated(format!("h != n - w for {proj:?} {code:?}")));
    }
    let pds = family_params(family, q, m, l, r)?;
    let qi = q as i128;
    if code.n * (qi - 1) != pds.k {
        return Err(ParamsError::IdentityViolated(format!("k != n(q-1) for {pds}")));
    }
    if two_weight_pds(qi, code.n, code.w1, code.w2)? != (pds.k, pds.lambda, pds.mu) {
        return Err(ParamsError::IdentityViolated(format!(
            "code {code:?} does not determine {pds}"
        )));
    }
    Ok((proj, code))
}

/// `q^(a - b)`, the exponent being nonnegative for every legal shape.
fn pw_signed(s: &Shape, a: u32, b: u32) -> BigInt {
    s.pw(a.checked_sub(b).expect("nonnegative exponent"))
}

/// The two nonprincipal character values of `D_{r,T}`: `(positive, negative)`.
pub fn spectrum_values(q: u64, m: u32, l: u32, r: u32) -> Res<(i128, i128)> {
    let s = Shape::new(q, m, l, r)?;
    let one = BigInt::from(1);
    let qm1 = s.pw(m) - &one;
    let pos = exact_div((s.pw(m) - s.pw(r)) * (s.pw(m * l) - &one), &qm1, "positive value")?;
    let neg = -exact_div((s.pw(r) - &one) * (s.pw(m * (l + 1)) - &one), &qm1, "negative value")?
        - &one;
    Ok((narrow(pos, "positive value")?, narrow(neg, "negative value")?))
}

/// Latin or negative Latin square type, if the parameters fit either template.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SrgType {
    Latin { n: i128, r: i128 },
    NegativeLatin { n: i128, r: i128 },
    Neither,
}

impl fmt::Display for SrgType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SrgType::Latin { n, r } => write!(f, "Latin({n},{r})"),
            SrgType::NegativeLatin { n, r } => write!(f, "NegativeLatin({n},{r})"),
            SrgType::Neither => f.write_str("Neither"),
        }
    }
}

pub fn classify_type(p: &SrgParams) -> SrgType {
    let Some(n) = exact_sqrt(p.v).filter(|&n| n > 1) else {
        return SrgType::Neither;
    };
    // Latin: (n², r(n-1), n + r² - 3r, r² - r)
    if p.k % (n - 1) == 0 {
        let r = p.k / (n - 1);
        if r > 0 && p.lambda == n + r * r - 3 * r && p.mu == r * r - r {
            return SrgType::Latin { n, r };
        }
    }
    // negative Latin: (n², r(n+1), -n + r² + 3r, r² + r)
    if p.k % (n + 1) == 0 {
        let r = p.k / (n + 1);
        if r > 0 && p.lambda == -n + r * r + 3 * r && p.mu == r * r + r {
            return SrgType::NegativeLatin { n, r };
        }
    }
    SrgType::Neither
}

/// Everything the closed forms say about one tower and one `r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamReport {
    pub p: u32,
    pub s: u32,
    pub q: u64,
    pub m: u32,
    pub l: u32,
    pub r: u32,
    pub degenerate: bool,
    pub primal: SrgParams,
    pub dual: SrgParams,
    pub complement: SrgParams,
    pub delsarte_dual: SrgParams,
    pub spectrum: (i128, i128),
    pub projective: ProjectiveParams,
    pub code: CodeParams,
    pub dual_projective: ProjectiveParams,
    pub dual_code: CodeParams,
    pub classification: SrgType,
    pub dual_classification: SrgType,
}

pub fn param_report(p: u32, s: u32, m: u32, l: u32, r: u32) -> Res<ParamReport> {
    let q = crate::arith::checked_pow(p as u64, s)
        .filter(|_| prime_power(p as u64).is_some_and(|(_, e)| e == 1))
        .ok_or_else(|| ParamsError::InvalidRange(format!("p = {p}, s = {s} is not a prime power")))?;
    let primal = denniston_params(q, m, l, r)?;
    let dual = dual_denniston_params(q, m, l, r)?;
    let delsarte = delsarte_dual_params(&primal)?;
    if delsarte != dual {
        return Err(ParamsError::IdentityViolated(format!(
            "Delsarte dual {delsarte} of {primal} differs from dual family {dual}"
        )));
    }
    let (projective, code) = geometry_params(Family::Primal, q, m, l, r)?;
    let (dual_projective, dual_code) = geometry_params(Family::Dual, q, m, l, r)?;
    let spectrum = spectrum_values(q, m, l, r)?;
    if primal.eigenvalues()? != spectrum {
        return Err(ParamsError::IdentityViolated(format!(
            "eigenvalues of {primal} differ from {spectrum:?}"
        )));
    }
    Ok(ParamReport {
        p,
        s,
        q,
        m,
        l,
        r,
        degenerate: r == 0 || r == m,
        primal,
        dual,
        complement: complement_params(&primal),
        delsarte_dual: delsarte,
        spectrum,
        projective,
        code,
        dual_projective,
        dual_code,
        classification: classify_type(&primal),
        dual_classification: classify_type(&dual),
    })
}

/// Reports for every combination of the given ranges; `r` runs over `0..=m`
/// when `rs` is `None`, otherwise over the listed values that are at most `m`.
pub fn grid(
    ps: &[u32],
    ss: &[u32],
    ms: &[u32],
    ls: &[u32],
    rs: Option<&[u32]>,
) -> Res<Vec<ParamReport>> {
    let mut out = Vec::new();
    for &p in ps {
        for &s in ss {
            for &m in ms {
                for &l in ls {
                    let all: Vec<u32> = (0..=m).collect();
                    for &r in rs.unwrap_or(&all).iter().filter(|&&r| r <= m) {
                        out.push(param_report(p, s, m, l, r)?);
                    }
                }
            }
        }
    }
    Ok(out)
}

impl ParamReport {
    pub fn family(&self, f: Family) -> SrgParams {
        match f {
            Family::Primal => self.primal,
            Family::Dual => self.dual,
        }
    }
}
