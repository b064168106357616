//! Exact characteristic polynomials of integer matrices and
//! arbitrary-precision isolation of the dominant real root.
//!
//! The characteristic polynomial is computed by Faddeev-LeVerrier over big
//! integers; an independent Bareiss (fraction-free elimination) determinant
//! is provided for cross-checking. Root isolation runs a Sturm sequence over
//! exact rationals, then refines the bracket by bisection with a final Newton
//! polish, so every reported digit is certified by the bracket.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpectralError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("polynomial has no real root")]
    NoRealRoot,
    #[error("matrix support is not primitive (mixing) on some component")]
    NotPrimitive,
}

/// A square matrix with exact big-integer entries, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(n: usize) -> IntMatrix {
        IntMatrix {
            n,
            entries: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<IntMatrix, SpectralError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(SpectralError::NotSquare);
        }
        Ok(IntMatrix {
            n,
            entries: rows.into_iter().flatten().map(BigInt::from).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = IntMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j) + a * b;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> IntMatrix {
        let mut base = self.clone();
        let mut acc = IntMatrix::identity(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn trace(&self) -> BigInt {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn add_scalar_diag(&self, c: &BigInt) -> IntMatrix {
        let mut m = self.clone();
        for i in 0..self.n {
            let v = m.get(i, i) + c;
            m.set(i, i, v);
        }
        m
    }

    /// Entries as JSON-friendly decimal strings, row-major rows.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|e| !e.is_negative())
    }
}

/// Monic-orientation integer polynomial, coefficients ascending by degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> IntPolynomial {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> IntPolynomial {
        if self.degree() == 0 {
            return IntPolynomial::new(vec![BigInt::zero()]);
        }
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Coefficients as decimal strings, ascending degree.
    pub fn to_coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Display for IntPolynomial {
    /// Human-readable descending-degree form, e.g. `x^4 - 3x^3 + x^2 + x - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() && self.degree() > 0 {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if wrote {
                write!(f, " {sign} ")?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let show_coeff = mag != BigInt::one() || i == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Monic characteristic polynomial `det(xI - A)` via Faddeev-LeVerrier.
/// All divisions are exact over the integers.
pub fn charpoly(a: &IntMatrix) -> IntPolynomial {
    let n = a.dim();
    if n == 0 {
        return IntPolynomial::new(vec![BigInt::one()]);
    }
    // p(x) = x^n + c[n-1] x^(n-1) + ... + c[0]
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = a.clone();
    let mut c = -m.trace();
    coeffs[n - 1] = c.clone();
    for k in 2..=n {
        m = a.mul(&m.add_scalar_diag(&c));
        let t = m.trace();
        c = -t / BigInt::from(k as u64);
        coeffs[n - k] = c.clone();
    }
    IntPolynomial::new(coeffs)
}

/// Exact determinant by Bareiss fraction-free Gaussian elimination.
/// Independent of the Faddeev-LeVerrier route; used as a cross-check oracle.
pub fn bareiss_det(a: &IntMatrix) -> BigInt {
    let n = a.dim();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| a.get(i, j).clone()).collect())
        .collect();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// `det(tI - A)` by Bareiss, for spot-checking charpoly at integer points.
pub fn char_value_at(a: &IntMatrix, t: &BigInt) -> BigInt {
    let n = a.dim();
    let mut m = IntMatrix::zero(n);
    for i in 0..n {
        for j in 0..n {
            let v = if i == j { t - a.get(i, j) } else { -a.get(i, j) };
            m.set(i, j, v);
        }
    }
    bareiss_det(&m)
}

/// Sturm chain over the integers: the canonical remainder recursion realized
/// as a primitive pseudo-remainder sequence, so each element differs from the
/// exact rational remainder only by a positive constant (which preserves
/// every sign evaluation while keeping coefficients small).
struct SturmChain {
    chain: Vec<IntPolynomial>,
}

fn primitive_part(mut coeffs: Vec<BigInt>) -> Vec<BigInt> {
    use num_integer::Integer;
    let mut content = BigInt::zero();
    for c in &coeffs {
        content = content.gcd(c);
    }
    if !content.is_zero() && content != BigInt::one() {
        for c in coeffs.iter_mut() {
            *c = &*c / &content;
        }
    }
    coeffs
}

/// Pseudo-remainder of `f` by `g`, scaled by `|lc(g)|^(deg f - deg g + 1)`:
/// a positive multiple of the exact polynomial remainder.
fn positive_prem(f: &IntPolynomial, g: &IntPolynomial) -> IntPolynomial {
    let d = g.degree();
    let lead = g.coeffs()[d].abs();
    let mut r: Vec<BigInt> = f.coeffs().to_vec();
    let trim = |r: &mut Vec<BigInt>| {
        while r.len() > 1 && r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    };
    trim(&mut r);
    let sign_fix = if g.coeffs()[d].is_negative() { -1 } else { 1 };
    while r.len() > d && !(r.len() == 1 && r[0].is_zero()) {
        if d == 0 {
            return IntPolynomial::new(vec![BigInt::zero()]);
        }
        let k = r.len() - 1;
        let top = r[k].clone();
        // r <- |lc(g)| * r  -  sign(lc(g)) * top * x^(k-d) * g
        // (kills the top coefficient; a positive multiple of the exact step)
        for c in r.iter_mut() {
            *c = &*c * &lead;
        }
        for j in 0..=d {
            let sub = &top * &g.coeffs()[j] * BigInt::from(sign_fix);
            r[k - d + j] -= sub;
        }
        r.pop();
        trim(&mut r);
        if r.is_empty() {
            r.push(BigInt::zero());
        }
    }
    IntPolynomial::new(primitive_part(r))
}

impl SturmChain {
    /// Chain for `p`; the generalized Sturm theorem counts distinct roots
    /// even when `p` has repeated factors (the chain then ends at the gcd).
    fn new(p: &IntPolynomial) -> SturmChain {
        let p0 = IntPolynomial::new(primitive_part(p.coeffs().to_vec()));
        let p1 = IntPolynomial::new(primitive_part(p0.derivative().coeffs().to_vec()));
        let mut chain = vec![p0, p1];
        loop {
            let k = chain.len();
            if chain[k - 1].is_zero() {
                chain.pop();
                break;
            }
            if chain[k - 1].degree() == 0 {
                break;
            }
            let r = positive_prem(&chain[k - 2], &chain[k - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(IntPolynomial::new(
                r.coeffs().iter().map(|c| -c).collect(),
            ));
        }
        SturmChain { chain }
    }

    fn sign_variations(&self, x: &BigRational) -> usize {
        let mut signs: Vec<i32> = Vec::new();
        for p in &self.chain {
            let v = eval_sign(p, x);
            if v != 0 {
                signs.push(v);
            }
        }
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots in the half-open interval (lo, hi].
    fn roots_in(&self, lo: &BigRational, hi: &BigRational) -> usize {
        self.sign_variations(lo) - self.sign_variations(hi)
    }
}

/// Sign of `p(a/b)` by integer Horner on the homogenized form.
fn eval_sign(p: &IntPolynomial, x: &BigRational) -> i32 {
    let a = x.numer();
    let b = x.denom(); // > 0
    let mut acc = BigInt::zero();
    let mut bpow = BigInt::one();
    // sum c_i a^i b^(d-i) as a Horner scheme in a with b-powers folded in;
    // this equals b^d * p(a/b) and b > 0, so the sign matches p(a/b)
    for c in p.coeffs().iter().rev() {
        acc = acc * a + c * &bpow;
        bpow *= b;
    }
    if acc.is_zero() {
        0
    } else if acc.is_negative() {
        -1
    } else {
        1
    }
}

/// An isolated and refined real root.
#[derive(Debug, Clone)]
pub struct RootApproximation {
    /// Midpoint of the final bracket.
    pub value: BigRational,
    /// Half-width of the final bracket; `|value - root| <= radius`.
    pub radius: BigRational,
    /// Exact rational interval containing exactly one real root.
    pub bracket: (BigRational, BigRational),
    /// Requested decimal precision.
    pub digits: u32,
}

impl RootApproximation {
    pub fn value_f64(&self) -> f64 {
        self.value.to_f64().unwrap_or(f64::NAN)
    }

    /// Fixed-point decimal string with `digits` fractional digits, correctly
    /// rounded from the exact rational midpoint.
    pub fn decimal(&self) -> String {
        rational_to_decimal(&self.value, self.digits)
    }
}

impl fmt::Display for RootApproximation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± 1e-{}", self.decimal(), self.digits)
    }
}

pub fn rational_to_decimal(x: &BigRational, digits: u32) -> String {
    let neg = x.is_negative();
    let x = x.abs();
    let scale = BigInt::from(10u32).pow(digits);
    // round half away from zero
    let scaled = (x * BigRational::from_integer(scale.clone())
        + BigRational::new(BigInt::one(), BigInt::from(2)))
    .floor()
    .to_integer();
    let (int_part, frac_part) = (scaled.clone() / &scale, scaled % &scale);
    let frac_str = format!("{:0>width$}", frac_part.to_string(), width = digits as usize);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_str}")
    }
}

/// The largest real root of `p`, isolated by a Sturm chain and refined to a
/// bracket of width `<= 10^-digits` by bisection plus a Newton polish.
pub fn dominant_root(p: &IntPolynomial, digits: u32) -> Result<RootApproximation, SpectralError> {
    if p.is_zero() {
        return Err(SpectralError::NoRealRoot);
    }
    // factor out x^k so the chain sees a nonzero constant term; zero is then
    // a candidate root
    let mut coeffs = p.coeffs().to_vec();
    let mut zero_root = false;
    while coeffs.len() > 1 && coeffs[0].is_zero() {
        coeffs.remove(0);
        zero_root = true;
    }
    let q = IntPolynomial::new(coeffs);
    let best = if q.degree() == 0 {
        None
    } else {
        largest_real_root(&q, digits)?
    };
    match best {
        Some(r) => {
            if zero_root && r.value.is_negative() {
                Ok(exact_root(BigRational::zero(), digits))
            } else {
                Ok(r)
            }
        }
        None => {
            if zero_root {
                Ok(exact_root(BigRational::zero(), digits))
            } else {
                Err(SpectralError::NoRealRoot)
            }
        }
    }
}

fn exact_root(v: BigRational, digits: u32) -> RootApproximation {
    RootApproximation {
        bracket: (v.clone(), v.clone()),
        radius: BigRational::zero(),
        value: v,
        digits,
    }
}

/// Primitive integer gcd of two polynomials via the pseudo-remainder chain.
fn int_poly_gcd(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let mut f = IntPolynomial::new(primitive_part(a.coeffs().to_vec()));
    let mut g = IntPolynomial::new(primitive_part(b.coeffs().to_vec()));
    if f.degree() < g.degree() {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_zero() {
        if g.degree() == 0 {
            return IntPolynomial::new(vec![BigInt::one()]);
        }
        let r = positive_prem(&f, &g);
        f = g;
        g = r;
    }
    if f.coeffs().last().is_some_and(|c| c.is_negative()) {
        return IntPolynomial::new(f.coeffs().iter().map(|c| -c).collect());
    }
    f
}

/// Square-free part `q / gcd(q, q')`, returned as a primitive integer
/// polynomial with positive leading coefficient. Same root set as `q`.
fn squarefree_part(q: &IntPolynomial) -> IntPolynomial {
    let qp = IntPolynomial::new(primitive_part(q.coeffs().to_vec()));
    let gcd = int_poly_gcd(&qp, &qp.derivative());
    if gcd.degree() == 0 {
        return qp;
    }
    // exact long division: gcd divides qp in Z[x] (both primitive), so every
    // quotient coefficient is an integer
    let d = gcd.degree();
    let lead = gcd.coeffs()[d].clone();
    let mut rem: Vec<BigInt> = qp.coeffs().to_vec();
    let mut quot = vec![BigInt::zero(); rem.len() - d];
    while rem.len() > d && !(rem.len() == 1 && rem[0].is_zero()) {
        let k = rem.len() - 1;
        let factor = &rem[k] / &lead;
        quot[k - d] = factor.clone();
        for j in 0..=d {
            let sub = &factor * &gcd.coeffs()[j];
            rem[k - d + j] -= sub;
        }
        rem.pop();
        while rem.len() > 1 && rem.last().is_some_and(|c| c.is_zero()) {
            rem.pop();
        }
        if rem.is_empty() {
            rem.push(BigInt::zero());
        }
    }
    let mut sf = quot;
    if sf.last().is_some_and(|c| c.is_negative()) {
        for c in sf.iter_mut() {
            *c = -&*c;
        }
    }
    IntPolynomial::new(sf)
}

fn largest_real_root(
    q: &IntPolynomial,
    digits: u32,
) -> Result<Option<RootApproximation>, SpectralError> {
    let q = &squarefree_part(q);
    let chain = SturmChain::new(q);
    // Cauchy bound: 1 + max |c_i| / |c_n|
    let lead = q.coeffs().last().unwrap().abs();
    let maxc = q
        .coeffs()
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    let bound = BigRational::from_integer(BigInt::one())
        + BigRational::new(maxc, lead);
    let mut lo = -bound.clone();
    let mut hi = bound.clone();
    if chain.roots_in(&lo, &hi) == 0 {
        return Ok(None);
    }
    // shrink (lo, hi] until it contains exactly the largest root
    while chain.roots_in(&lo, &hi) > 1 {
        let mid = (lo.clone() + hi.clone()) / BigRational::from_integer(BigInt::from(2));
        if chain.roots_in(&mid, &hi) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // exact-rational endpoint hit
    if eval_sign(q, &hi) == 0 {
        return Ok(Some(exact_root(hi, digits)));
    }
    let target = BigRational::new(BigInt::one(), BigInt::from(10u32).pow(digits));
    let two = BigRational::from_integer(BigInt::from(2));
    let mut slo = eval_sign(q, &lo);
    if slo == 0 {
        lo = &lo - &target;
        slo = eval_sign(q, &lo);
    }
    debug_assert_ne!(slo, eval_sign(q, &hi), "bracket must change sign");
    // plain dyadic bisection keeps endpoint arithmetic small and exact
    let mut width = hi.clone() - lo.clone();
    while width > target {
        let mid = (lo.clone() + hi.clone()) / two.clone();
        match eval_sign(q, &mid) {
            0 => return Ok(Some(exact_root(mid, digits))),
            s if s == slo => lo = mid,
            _ => hi = mid,
        }
        width = hi.clone() - lo.clone();
    }
    // final Newton polish: step from the midpoint, round onto a coarse
    // decimal grid so endpoint sizes stay bounded, keep only if it tightens
    // the sign-verified bracket
    let deriv = q.derivative();
    let grid = BigInt::from(10u32).pow(digits + 3);
    for _ in 0..2 {
        let mid = (lo.clone() + hi.clone()) / two.clone();
        let fmid = q.eval_rational(&mid);
        if fmid.is_zero() {
            return Ok(Some(exact_root(mid, digits)));
        }
        let dmid = deriv.eval_rational(&mid);
        if dmid.is_zero() {
            break;
        }
        let newton = &mid - fmid / dmid;
        let snapped = BigRational::new(
            (newton * BigRational::from_integer(grid.clone())).round().to_integer(),
            grid.clone(),
        );
        if snapped <= lo || snapped >= hi {
            break;
        }
        match eval_sign(q, &snapped) {
            0 => return Ok(Some(exact_root(snapped, digits))),
            s if s == slo => lo = snapped,
            _ => hi = snapped,
        }
    }
    let width = hi.clone() - lo.clone();
    let value = (lo.clone() + hi.clone()) / two;
    Ok(Some(RootApproximation {
        value,
        radius: width / BigRational::from_integer(BigInt::from(2)),
        bracket: (lo, hi),
        digits,
    }))
}

// ---- primitivity and power iteration ----

/// Wielandt primitivity test on a boolean support matrix: `A^((n-1)^2 + 1)`
/// must be strictly positive. Entries are capped at one bit.
fn bool_primitive(adj: &[bool], n: usize) -> bool {
    if n == 0 {
        return false;
    }
    let e = ((n - 1) * (n - 1) + 1) as u64;
    let mut acc = vec![false; n * n];
    for i in 0..n {
        acc[i * n + i] = true;
    }
    let mut base = adj.to_vec();
    let mut k = e;
    let mul = |x: &[bool], y: &[bool]| -> Vec<bool> {
        let mut out = vec![false; n * n];
        for i in 0..n {
            for l in 0..n {
                if x[i * n + l] {
                    for j in 0..n {
                        if y[l * n + j] {
                            out[i * n + j] = true;
                        }
                    }
                }
            }
        }
        out
    };
    while k > 0 {
        if k & 1 == 1 {
            acc = mul(&acc, &base);
        }
        k >>= 1;
        if k > 0 {
            base = mul(&base, &base);
        }
    }
    acc.iter().all(|&b| b)
}

/// True iff the support graph of the matrix is primitive (single strongly
/// connected aperiodic component covering all nodes).
pub fn is_primitive(a: &IntMatrix) -> bool {
    let n = a.dim();
    let adj: Vec<bool> = (0..n * n).map(|k| !a.entries[k].is_zero()).collect();
    bool_primitive(&adj, n)
}

/// True iff every strongly connected component of the support is either
/// trivial (a single node with no self-loop) or primitive. This is the
/// precondition under which the power iteration converges to the dominant
/// eigenvalue of a nonnegative matrix.
pub fn components_primitive(a: &IntMatrix) -> bool {
    let n = a.dim();
    if n == 0 {
        return false;
    }
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| !a.get(i, j).is_zero()).collect())
        .collect();
    let sccs = tarjan_sccs(n, &adj);
    for comp in sccs {
        if comp.len() == 1 {
            let v = comp[0];
            if a.get(v, v).is_zero() {
                continue; // trivial component
            }
        }
        let idx: std::collections::HashMap<usize, usize> =
            comp.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let m = comp.len();
        let mut sub = vec![false; m * m];
        for (k, &v) in comp.iter().enumerate() {
            for &w in &adj[v] {
                if let Some(&l) = idx.get(&w) {
                    sub[k * m + l] = true;
                }
            }
        }
        if !bool_primitive(&sub, m) {
            return false;
        }
    }
    true
}

pub(crate) fn tarjan_sccs(n: usize, adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    // iterative Tarjan
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut next_index = 0usize;
    let mut out = Vec::new();
    let mut call: Vec<(usize, usize)> = Vec::new();
    for s in 0..n {
        if index[s] != usize::MAX {
            continue;
        }
        call.push((s, 0));
        index[s] = next_index;
        low[s] = next_index;
        next_index += 1;
        stack.push(s);
        on_stack[s] = true;
        while let Some(&mut (v, ref mut ei)) = call.last_mut() {
            if *ei < adj[v].len() {
                let w = adj[v][*ei];
                *ei += 1;
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    out.push(comp);
                }
            }
        }
    }
    out
}

/// Perron-root estimate from iterated vector ratios in double precision.
/// Errors when the support violates [`components_primitive`].
pub fn power_iteration_estimate(a: &IntMatrix, iterations: usize) -> Result<f64, SpectralError> {
    if !a.is_nonnegative() {
        return Err(SpectralError::NotPrimitive);
    }
    if !components_primitive(a) {
        return Err(SpectralError::NotPrimitive);
    }
    let n = a.dim();
    let af: Vec<f64> = a
        .entries
        .iter()
        .map(|e| e.to_f64().unwrap_or(f64::MAX))
        .collect();
    let mut v = vec![1.0f64; n];
    let mut est = 0.0f64;
    for _ in 0..iterations {
        let mut w = vec![0.0f64; n];
        for i in 0..n {
            let mut s = 0.0;
            for j in 0..n {
                s += af[i * n + j] * v[j];
            }
            w[i] = s;
        }
        let norm = w.iter().cloned().fold(0.0f64, f64::max);
        if norm == 0.0 {
            return Ok(0.0);
        }
        // Rayleigh quotient
        let num: f64 = (0..n).map(|i| v[i] * w[i]).sum();
        let den: f64 = (0..n).map(|i| v[i] * v[i]).sum();
        let new_est = num / den;
        for x in w.iter_mut() {
            *x /= norm;
        }
        if (new_est - est).abs() < 1e-14 * new_est.abs().max(1.0) {
            return Ok(new_est);
        }
        est = new_est;
        v = w;
    }
    Ok(est)
}

/// Big-integer trace-ratio estimate `trace(A^(n+1)) / trace(A^n)` as f64.
pub fn trace_ratio(a: &IntMatrix, n: u64) -> f64 {
    let an = a.pow(n);
    let an1 = an.mul(a);
    let t0 = an.trace();
    let t1 = an1.trace();
    big_ratio_f64(&t1, &t0)
}

fn big_ratio_f64(num: &BigInt, den: &BigInt) -> f64 {
    let r = BigRational::new(num.clone(), den.clone());
    r.to_f64().unwrap_or(f64::NAN)
}

/// Number of closed walks of length n: trace(A^n) as an exact big integer.
pub fn closed_walk_count(a: &IntMatrix, n: u64) -> BigUint {
    a.pow(n)
        .trace()
        .to_biguint()
        .expect("nonnegative matrix has nonnegative walk counts")
}
