//! Elements of the cyclotomic field ℚ(ζ_N) in the reduced power basis.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::rc::Rc;

use smallvec::{smallvec, SmallVec};

use super::rational::Rational;
use crate::error::{Error, Result};

pub type Coeffs = SmallVec<[Rational; 4]>;

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    num_integer::lcm(a, b)
}

pub fn euler_phi(n: u64) -> u64 {
    let mut n0 = n;
    let mut r = n;
    let mut p = 2;
    while p * p <= n0 {
        if n0 % p == 0 {
            while n0 % p == 0 {
                n0 /= p;
            }
            r -= r / p;
        }
        p += 1;
    }
    if n0 > 1 {
        r -= r / n0;
    }
    r
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Integer polynomial helpers, coefficients low to high.
#[cfg(test)]
fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a monic integer polynomial; panics on a nonzero remainder.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut r = num.to_vec();
    let dn = den.len() - 1;
    assert_eq!(den[dn], 1);
    let qlen = r.len() - dn;
    let mut q = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = r[k + dn];
        q[k] = c;
        if c != 0 {
            for (i, d) in den.iter().enumerate() {
                r[k + i] -= c * d;
            }
        }
    }
    assert!(r.iter().all(|x| *x == 0), "inexact polynomial division");
    q
}

fn cyclotomic_int(n: u64, memo: &mut HashMap<u64, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    let mut acc = num;
    for d in divisors(n) {
        if d < n {
            let pd = cyclotomic_int(d, memo);
            acc = poly_div_exact(&acc, &pd);
        }
    }
    memo.insert(n, acc.clone());
    acc
}

/// Φ_N as rational coefficients, low degree first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<Rational> {
    assert!(n >= 1);
    let mut memo = HashMap::new();
    cyclotomic_int(n, &mut memo).into_iter().map(Rational::from_int).collect()
}

/// Product of rational polynomials (low degree first).
pub fn rational_poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::ZERO; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

struct CycloData {
    phi: usize,
    poly: Vec<i64>,
    /// x^j mod Φ_N for 0 ≤ j < N
    powers: Vec<Vec<i64>>,
}

thread_local! {
    static CACHE: RefCell<HashMap<u64, Rc<CycloData>>> = RefCell::new(HashMap::new());
}

fn data(n: u64) -> Rc<CycloData> {
    CACHE.with(|c| {
        if let Some(d) = c.borrow().get(&n) {
            return d.clone();
        }
        let mut memo = HashMap::new();
        let poly = cyclotomic_int(n, &mut memo);
        let phi = poly.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by x and reduce
            let top = cur[phi - 1];
            let mut next = vec![0i64; phi];
            for i in (1..phi).rev() {
                next[i] = cur[i - 1];
            }
            for i in 0..phi {
                next[i] -= top * poly[i];
            }
            cur = next;
        }
        let d = Rc::new(CycloData { phi, poly, powers });
        c.borrow_mut().insert(n, d.clone());
        d
    })
}

/// Element of ℚ(ζ_N).
#[derive(Clone)]
pub struct CycScalar {
    order: u64,
    coeffs: Coeffs,
}

impl CycScalar {
    pub fn zero(n: u64) -> Self {
        let phi = data(n).phi;
        CycScalar { order: n, coeffs: smallvec![Rational::ZERO; phi] }
    }

    pub fn one(n: u64) -> Self {
        Self::from_rational(Rational::ONE, n)
    }

    pub fn from_rational(q: Rational, n: u64) -> Self {
        let mut z = Self::zero(n);
        z.coeffs[0] = q;
        z
    }

    pub fn from_int(k: i64, n: u64) -> Self {
        Self::from_rational(Rational::from_int(k), n)
    }

    /// Build from power-basis coordinates (length φ(N)).
    pub fn from_coeffs(n: u64, coeffs: Vec<Rational>) -> Result<Self> {
        let phi = data(n).phi;
        if coeffs.len() != phi {
            return Err(Error::DimensionMismatch(format!(
                "expected {phi} coefficients for order {n}, got {}",
                coeffs.len()
            )));
        }
        Ok(CycScalar { order: n, coeffs: coeffs.into_iter().collect() })
    }

    /// ζ_N^j for any integer j.
    pub fn zeta_pow(n: u64, j: i64) -> Self {
        let d = data(n);
        let j = j.rem_euclid(n as i64) as usize;
        CycScalar {
            order: n,
            coeffs: d.powers[j].iter().map(|c| Rational::from_int(*c)).collect(),
        }
    }

    /// Root of unity e^{2πi num/den} inside ℚ(ζ_N); requires den | N.
    pub fn root(num: i64, den: u64, n: u64) -> Result<Self> {
        if n % den != 0 {
            return Err(Error::OrderMismatch { k: den, n });
        }
        Ok(Self::zeta_pow(n, num * (n / den) as i64))
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Image under ℚ(ζ_N) ⊆ ℚ(ζ_M); requires N | M.
    pub fn lift(&self, m: u64) -> Result<Self> {
        if m == self.order {
            return Ok(self.clone());
        }
        if m % self.order != 0 {
            return Err(Error::OrderMismatch { k: self.order, n: m });
        }
        let step = (m / self.order) as usize;
        let d = data(m);
        let mut out: Coeffs = smallvec![Rational::ZERO; d.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = &d.powers[(i * step) % m as usize];
            for (k, e) in p.iter().enumerate() {
                if *e != 0 {
                    out[k] = &out[k] + &c.mul_int(*e);
                }
            }
        }
        Ok(CycScalar { order: m, coeffs: out })
    }

    /// Express in ℚ(ζ_N) for N | order, if the value lies in that subfield.
    pub fn lower(&self, n: u64) -> Option<Self> {
        if self.order % n != 0 {
            return None;
        }
        if n == self.order {
            return Some(self.clone());
        }
        let pn = data(n).phi;
        let pm = data(self.order).phi;
        // columns: lifts of ζ_n^i
        let cols: Vec<CycScalar> = (0..pn)
            .map(|i| CycScalar::zeta_pow(n, i as i64).lift(self.order).unwrap())
            .collect();
        let mut a: Vec<Vec<Rational>> = (0..pm)
            .map(|r| {
                let mut row: Vec<Rational> = cols.iter().map(|c| c.coeffs[r].clone()).collect();
                row.push(self.coeffs[r].clone());
                row
            })
            .collect();
        let sol = rational_solve(&mut a, pn)?;
        Some(CycScalar { order: n, coeffs: sol.into_iter().collect() })
    }

    /// Smallest order M | N with the value in ℚ(ζ_M).
    pub fn minimal_order(&self) -> u64 {
        for d in divisors(self.order) {
            if self.lower(d).is_some() {
                return d;
            }
        }
        self.order
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let m = lcm(a.order, b.order);
        (a.lift(m).unwrap(), b.lift(m).unwrap())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        CycScalar { order: self.order, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Singular("inverse of zero scalar".into()));
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(q.inv(), self.order));
        }
        let phi = self.coeffs.len();
        // multiplication-by-self matrix, columns are self·ζ^j
        let cols: Vec<CycScalar> = (0..phi)
            .map(|j| self * &CycScalar::zeta_pow(self.order, j as i64))
            .collect();
        let mut a: Vec<Vec<Rational>> = (0..phi)
            .map(|r| {
                let mut row: Vec<Rational> = cols.iter().map(|c| c.coeffs[r].clone()).collect();
                row.push(if r == 0 { Rational::ONE } else { Rational::ZERO });
                row
            })
            .collect();
        let sol = rational_solve(&mut a, phi).expect("nonzero field element is invertible");
        Ok(CycScalar { order: self.order, coeffs: sol.into_iter().collect() })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one(self.order);
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            k >>= 1;
        }
        Ok(acc)
    }

    /// If the value is a root of unity, return (k, m) with value = e^{2πi k/m}, gcd(k,m)=1, 0 ≤ k < m.
    pub fn as_root_of_unity(&self) -> Option<(u64, u64)> {
        let n = self.order;
        let n2 = lcm(n, 2);
        let me = self.lift(n2).ok()?;
        let d = data(n2);
        for (j, p) in d.powers.iter().enumerate() {
            if p.iter().zip(me.coeffs.iter()).all(|(a, b)| Rational::from_int(*a) == *b) {
                let g = gcd(j as u64, n2);
                return Some((j as u64 / g, n2 / g));
            }
        }
        None
    }

    /// If the value is q·ζ for rational q ≠ 0 and a root of unity ζ, return (q, k, m).
    /// The decomposition is normalized to q > 0.
    pub fn as_scaled_root(&self) -> Option<(Rational, u64, u64)> {
        if self.is_zero() {
            return None;
        }
        let n2 = lcm(self.order, 2);
        let me = self.lift(n2).ok()?;
        for j in 0..n2 {
            let t = &me * &CycScalar::zeta_pow(n2, -(j as i64));
            if let Some(q) = t.as_rational() {
                let (q, j) = if q.is_negative() { (-q, (j + n2 / 2) % n2) } else { (q, j) };
                let g = gcd(j, n2);
                return Some((q, j / g, n2 / g));
            }
        }
        None
    }

    /// Some k-th root of the value when it is q·(root of unity) with q having a rational
    /// k-th root. The result may live in a larger cyclotomic field.
    pub fn kth_root(&self, k: u64) -> Result<Self> {
        let (q, j, m) = self.as_scaled_root().ok_or_else(|| {
            Error::FieldNotSplit(format!("{self} is not a rational multiple of a root of unity"))
        })?;
        let rq = q.kth_root(k as u32).ok_or_else(|| {
            Error::FieldNotSplit(format!("{q} has no rational {k}-th root"))
        })?;
        // ζ_m^j = ζ_{mk}^{jk}; its k-th root is ζ_{mk}^j. Try to stay in ℚ(ζ_m) first.
        let target = lcm(self.order, m);
        for a in 0..m {
            if (a * k) % m == j % m {
                return Ok(CycScalar::zeta_pow(target, (a * (target / m)) as i64).scale(&rq));
            }
        }
        let big = lcm(self.order, m * k);
        Ok(CycScalar::zeta_pow(big, (j * (big / (m * k))) as i64).scale(&rq))
    }

    /// Render in the scalar literal grammar.
    pub fn to_literal(&self) -> String {
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            let body = match i {
                0 => a.to_string(),
                _ => {
                    let zp = if i == 1 { "z".to_string() } else { format!("z^{i}") };
                    if a.is_one() {
                        zp
                    } else if i == 1 {
                        format!("{a}*z^1")
                    } else {
                        format!("{a}*{zp}")
                    }
                }
            };
            parts.push((neg, body));
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (idx, (neg, body)) in parts.into_iter().enumerate() {
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { "-" } else { "+" });
            }
            s.push_str(&body);
        }
        s
    }

    /// Parse the scalar literal grammar with z = ζ_N.
    pub fn parse(text: &str, n: u64) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("scalar '{text}': {m}"));
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(bad("empty"));
        }
        // split into signed terms; a leading '-' belongs to the first term
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        let chars: Vec<char> = s.chars().collect();
        for (i, ch) in chars.iter().enumerate() {
            if (*ch == '+' || *ch == '-') && !(i > 0 && chars[i - 1] == '^') {
                if i == 0 {
                    neg = *ch == '-';
                    continue;
                }
                if cur.is_empty() {
                    return Err(bad("dangling sign"));
                }
                terms.push((neg, std::mem::take(&mut cur)));
                neg = *ch == '-';
            } else {
                cur.push(*ch);
            }
        }
        if cur.is_empty() {
            return Err(bad("dangling sign"));
        }
        terms.push((neg, cur));
        let mut acc = CycScalar::zero(n);
        for (neg, t) in terms {
            let (coef, zpart) = if let Some((c, z)) = t.split_once('*') {
                (c.parse::<Rational>().map_err(|e| bad(&e))?, Some(z.to_string()))
            } else if t.starts_with('z') {
                (Rational::ONE, Some(t.clone()))
            } else {
                (t.parse::<Rational>().map_err(|e| bad(&e))?, None)
            };
            let k: i64 = match zpart {
                None => 0,
                Some(z) if z == "z" => 1,
                Some(z) => {
                    let e = z.strip_prefix("z^").ok_or_else(|| bad("expected z^k"))?;
                    e.parse::<i64>().map_err(|_| bad("bad exponent"))?
                }
            };
            let mut term = CycScalar::zeta_pow(n, k).scale(&coef);
            if neg {
                term = -term;
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }
}

/// Gaussian elimination on an augmented rational system with `n` unknowns.
fn rational_solve(a: &mut [Vec<Rational>], n: usize) -> Option<Vec<Rational>> {
    let rows = a.len();
    let mut piv_cols = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].inv();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..=n {
                    let t = &a[r][j] * &f;
                    a[i][j] = &a[i][j] - &t;
                }
            }
        }
        piv_cols.push(c);
        r += 1;
    }
    for row in a.iter().skip(r) {
        if !row[n].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rational::ZERO; n];
    for (i, c) in piv_cols.iter().enumerate() {
        x[*c] = a[i][n].clone();
    }
    Some(x)
}

fn mul_same(a: &CycScalar, b: &CycScalar) -> CycScalar {
    let n = a.order;
    let phi = a.coeffs.len();
    if phi == 1 {
        return CycScalar { order: n, coeffs: smallvec![&a.coeffs[0] * &b.coeffs[0]] };
    }
    if let Some(q) = a.as_rational() {
        return b.scale(&q);
    }
    if let Some(q) = b.as_rational() {
        return a.scale(&q);
    }
    let mut t: SmallVec<[Rational; 8]> = smallvec![Rational::ZERO; 2 * phi - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            if !y.is_zero() {
                t[i + j] = &t[i + j] + &(x * y);
            }
        }
    }
    let d = data(n);
    for j in (phi..2 * phi - 1).rev() {
        if t[j].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut t[j]);
        for i in 0..phi {
            let e = d.poly[i];
            if e != 0 {
                t[j - phi + i] = &t[j - phi + i] - &c.mul_int(e);
            }
        }
    }
    t.truncate(phi);
    CycScalar { order: n, coeffs: t.into_iter().collect() }
}

impl<'a> Mul<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn mul(self, o: &CycScalar) -> CycScalar {
        if self.order == o.order {
            mul_same(self, o)
        } else {
            let (a, b) = CycScalar::common(self, o);
            mul_same(&a, &b)
        }
    }
}

impl<'a> Add<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn add(self, o: &CycScalar) -> CycScalar {
        if self.order == o.order {
            CycScalar {
                order: self.order,
                coeffs: self.coeffs.iter().zip(o.coeffs.iter()).map(|(a, b)| a + b).collect(),
            }
        } else {
            let (a, b) = CycScalar::common(self, o);
            &a + &b
        }
    }
}

impl<'a> Sub<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn sub(self, o: &CycScalar) -> CycScalar {
        if self.order == o.order {
            CycScalar {
                order: self.order,
                coeffs: self.coeffs.iter().zip(o.coeffs.iter()).map(|(a, b)| a - b).collect(),
            }
        } else {
            let (a, b) = CycScalar::common(self, o);
            &a - &b
        }
    }
}

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar { order: self.order, coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Add for CycScalar {
    type Output = CycScalar;
    fn add(self, o: CycScalar) -> CycScalar {
        &self + &o
    }
}

impl Sub for CycScalar {
    type Output = CycScalar;
    fn sub(self, o: CycScalar) -> CycScalar {
        &self - &o
    }
}

impl Mul for CycScalar {
    type Output = CycScalar;
    fn mul(self, o: CycScalar) -> CycScalar {
        &self * &o
    }
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = CycScalar::common(self, other);
            a.coeffs == b.coeffs
        }
    }
}

impl Eq for CycScalar {}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_literal())
    }
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.to_literal(), self.order)
    }
}

/// Primitive k-th root of unity ζ_N^{N/k}.
pub fn root_of_unity(k: u64, n: u64) -> Result<CycScalar> {
    if k == 0 || n % k != 0 {
        return Err(Error::OrderMismatch { k, n });
    }
    Ok(CycScalar::zeta_pow(n, (n / k) as i64))
}

/// Squarefree part of a nonzero integer (sign kept).
fn squarefree_part(mut n: i64) -> i64 {
    let sign = n.signum();
    n = n.abs();
    let mut out = 1;
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= p;
        }
        p += 1;
    }
    sign * out * n
}

/// Conductor of ℚ(√d) for squarefree d ≠ 1.
fn quadratic_conductor(d: i64) -> u64 {
    let m = d.rem_euclid(4);
    if m == 1 {
        d.unsigned_abs()
    } else {
        4 * d.unsigned_abs()
    }
}

fn legendre(a: i64, p: i64) -> i64 {
    let mut r = 1i64;
    let mut b = a.rem_euclid(p);
    let mut e = (p - 1) / 2;
    let mut acc = 1i64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    if acc == p - 1 {
        r = -1;
    } else if acc == 0 {
        r = 0;
    }
    r
}

/// Outcome of asking for √q with q rational inside ℚ(ζ_N).
#[derive(Clone, Debug, PartialEq)]
pub enum SqrtOutcome {
    Root(CycScalar),
    /// ℚ(√q) is not contained in ℚ(ζ_N)
    Absent,
}

/// Square root of a nonzero rational inside ℚ(ζ_N), decided by the conductor of ℚ(√q).
pub fn rational_sqrt_in(q: &Rational, n: u64) -> Option<SqrtOutcome> {
    if q.is_zero() {
        return Some(SqrtOutcome::Root(CycScalar::zero(n)));
    }
    let num = q.numer();
    let den = q.denom();
    use num_traits::ToPrimitive;
    // √(a/b) = √(ab)/b
    let ab = (num * &den).to_i64()?;
    let d0 = squarefree_part(ab);
    let s2 = ab / d0; // perfect square
    let s = (s2 as f64).sqrt().round() as i64;
    let s = (s - 2..=s + 2).find(|x| *x > 0 && x * x == s2)?;
    let scale = Rational::new(s, 1).div(&Rational::from_big(num_rational::BigRational::from(den)));
    if d0 == 1 {
        return Some(SqrtOutcome::Root(CycScalar::from_rational(scale, n)));
    }
    let f = quadratic_conductor(d0);
    if n % f != 0 {
        return Some(SqrtOutcome::Absent);
    }
    // build √d0 from Gauss sums
    let mut r = CycScalar::one(n);
    let mut sq = 1i64;
    let mut m = d0.abs();
    let mut p = 2;
    while m > 1 {
        if m % p == 0 {
            m /= p;
            if p == 2 {
                let t = &CycScalar::zeta_pow(8, 1) + &CycScalar::zeta_pow(8, 7);
                r = &r * &t;
                sq *= 2;
            } else {
                let mut g = CycScalar::zero(p as u64);
                for a in 1..p {
                    let z = CycScalar::zeta_pow(p as u64, a).scale(&Rational::from_int(legendre(a, p)));
                    g = &g + &z;
                }
                r = &r * &g;
                sq *= if p % 4 == 1 { p } else { -p };
            }
        }
        p += 1;
    }
    if sq != d0 {
        r = &r * &CycScalar::zeta_pow(4, 1);
    }
    let out = r.scale(&scale);
    let out = out.lift(lcm(out.order(), n)).ok()?;
    Some(SqrtOutcome::Root(out.lower(n)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), vec![Rational::from_int(-1), Rational::ONE]);
        assert_eq!(cyclotomic_polynomial(2), vec![Rational::ONE, Rational::ONE]);
        let p12: Vec<i64> = vec![1, 0, -1, 0, 1];
        assert_eq!(cyclotomic_polynomial(12), p12.into_iter().map(Rational::from_int).collect::<Vec<_>>());
    }

    #[test]
    fn phi_product_is_xn_minus_one() {
        let mut memo = HashMap::new();
        for n in [1u64, 6, 12, 30] {
            let mut acc = vec![1i64];
            for d in divisors(n) {
                acc = poly_mul(&acc, &cyclotomic_int(d, &mut memo));
            }
            let mut want = vec![0i64; n as usize + 1];
            want[0] = -1;
            want[n as usize] = 1;
            assert_eq!(acc, want);
        }
    }

    #[test]
    fn roots_basic() {
        assert!(root_of_unity(1, 12).unwrap().is_one());
        let i = root_of_unity(4, 4).unwrap();
        assert_eq!(&i * &i, CycScalar::from_int(-1, 4));
        assert!(matches!(root_of_unity(5, 12), Err(Error::OrderMismatch { .. })));
    }

    #[test]
    fn sixth_roots_sum_to_zero() {
        let z = root_of_unity(6, 6).unwrap();
        let mut s = CycScalar::zero(6);
        for j in 0..6 {
            s = &s + &z.pow(j).unwrap();
        }
        assert!(s.is_zero());
    }

    #[test]
    fn mixed_orders_lift() {
        let i = CycScalar::zeta_pow(4, 1);
        let w = CycScalar::zeta_pow(3, 1);
        let p = &i * &w;
        assert_eq!(p.order(), 12);
        assert_eq!(p, CycScalar::zeta_pow(12, 3 + 4));
        assert_eq!(p.as_root_of_unity(), Some((7, 12)));
    }

    #[test]
    fn lower_roundtrip() {
        let a = CycScalar::parse("1/2+3*z", 6).unwrap();
        let l = a.lift(24).unwrap();
        assert_eq!(l.lower(6).unwrap().coeffs(), a.coeffs());
        assert_eq!(l.minimal_order(), 3);
        assert!(CycScalar::zeta_pow(8, 1).lower(4).is_none());
    }

    #[test]
    fn inverse() {
        let a = CycScalar::parse("2+z-1/3*z^3", 8).unwrap();
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
    }

    #[test]
    fn literal_roundtrip() {
        for s in ["0", "1", "-z", "1/2-3/4*z^2+z^3", "-7*z^1+z^2"] {
            let a = CycScalar::parse(s, 8).unwrap();
            let b = CycScalar::parse(&a.to_literal(), 8).unwrap();
            assert_eq!(a, b);
        }
        assert_eq!(CycScalar::parse("z^4", 4).unwrap(), CycScalar::one(4));
        assert!(CycScalar::parse("1/0", 4).is_err());
        assert!(CycScalar::parse("2*", 4).is_err());
    }

    #[test]
    fn kth_roots() {
        let m1 = CycScalar::from_int(-1, 2);
        let r = m1.kth_root(2).unwrap();
        assert_eq!(&r * &r, m1);
        assert_eq!(r.order(), 4);
        let w = CycScalar::parse("8", 3).unwrap();
        assert_eq!(w.kth_root(3).unwrap(), CycScalar::from_int(2, 3));
        assert!(matches!(CycScalar::from_int(2, 4).kth_root(2), Err(Error::FieldNotSplit(_))));
        let z = CycScalar::zeta_pow(4, 1);
        let r = z.kth_root(2).unwrap();
        assert_eq!(r.pow(2).unwrap(), z);
    }

    #[test]
    fn scaled_roots() {
        let a = CycScalar::zeta_pow(6, 1).scale(&Rational::new(-3, 2));
        let (q, k, m) = a.as_scaled_root().unwrap();
        assert_eq!(q, Rational::new(3, 2));
        assert_eq!(CycScalar::root(k as i64, m, 6).unwrap().scale(&q), a);
    }

    #[test]
    fn quadratic_roots() {
        for (q, n) in [(-1i64, 4u64), (2, 8), (-2, 8), (3, 12), (-3, 3), (5, 5), (6, 24), (-4, 4), (9, 1)] {
            let r = Rational::from_int(q);
            match rational_sqrt_in(&r, n).unwrap() {
                SqrtOutcome::Root(s) => assert_eq!(&s * &s, CycScalar::from_rational(r, n), "q={q}"),
                SqrtOutcome::Absent => panic!("expected a root for {q} in order {n}"),
            }
        }
        assert_eq!(rational_sqrt_in(&Rational::from_int(-1), 2), Some(SqrtOutcome::Absent));
        assert_eq!(rational_sqrt_in(&Rational::from_int(3), 6), Some(SqrtOutcome::Absent));
    }
}
