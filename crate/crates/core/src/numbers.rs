//! Exact arithmetic: prime fields, Chinese remaindering, Farey rational
//! reconstruction, and lifting of modular residues to `Q` and `Q(sqrt d)`.
//!
//! Values are immutable and every operation is a pure function, so everything
//! here is safe to call concurrently without coordination.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Largest allowed modulus: primes stay below 2^62 so single-word field
/// arithmetic never overflows the u128 intermediates.
pub const MAX_PRIME: u64 = 1 << 62;

/// Deterministic Miller-Rabin for u64 (the listed bases are a proven
/// deterministic witness set below 2^64).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// An element of the prime field `F_p`, carrying its modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpElem {
    pub value: u64,
    pub modulus: u64,
}

impl FpElem {
    pub fn new(value: i64, modulus: u64) -> Result<Self> {
        if modulus >= MAX_PRIME {
            return Err(Error::PrimeTooLarge(modulus));
        }
        if !is_prime(modulus) {
            return Err(Error::NotPrime(modulus));
        }
        Ok(Self::reduce(value, modulus))
    }

    /// Reduce without re-validating the modulus (caller guarantees primality).
    pub fn reduce(value: i64, modulus: u64) -> Self {
        let m = modulus as i128;
        let v = ((value as i128 % m) + m) % m;
        FpElem {
            value: v as u64,
            modulus,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn add(&self, rhs: &FpElem) -> FpElem {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let mut v = self.value + rhs.value;
        if v >= self.modulus {
            v -= self.modulus;
        }
        FpElem {
            value: v,
            modulus: self.modulus,
        }
    }

    pub fn sub(&self, rhs: &FpElem) -> FpElem {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let v = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.value + self.modulus - rhs.value
        };
        FpElem {
            value: v,
            modulus: self.modulus,
        }
    }

    pub fn mul(&self, rhs: &FpElem) -> FpElem {
        debug_assert_eq!(self.modulus, rhs.modulus);
        FpElem {
            value: mul_mod(self.value, rhs.value, self.modulus),
            modulus: self.modulus,
        }
    }

    pub fn neg(&self) -> FpElem {
        FpElem {
            value: if self.value == 0 {
                0
            } else {
                self.modulus - self.value
            },
            modulus: self.modulus,
        }
    }

    pub fn inv(&self) -> Result<FpElem> {
        mod_inverse(*self)
    }
}

impl fmt::Debug for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

impl fmt::Display for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Multiplicative inverse in `F_p`. Errors on zero.
pub fn mod_inverse(a: FpElem) -> Result<FpElem> {
    if a.value == 0 {
        return Err(Error::NotInvertible);
    }
    // extended Euclid on (value, modulus)
    let (mut old_r, mut r) = (a.value as i128, a.modulus as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "modulus must be prime");
    let m = a.modulus as i128;
    let v = ((old_s % m) + m) % m;
    Ok(FpElem {
        value: v as u64,
        modulus: a.modulus,
    })
}

/// Canonical square root of `d` modulo an odd prime `p`, if one exists.
///
/// The returned root is the one in `[1, (p-1)/2]` (or 0 when `d = 0`), so
/// residue tables built from it are identical across runs.
pub fn sqrt_mod(d: i64, p: u64) -> Option<FpElem> {
    if p == 2 || !is_prime(p) {
        return None;
    }
    let a = FpElem::reduce(d, p).value;
    if a == 0 {
        return Some(FpElem {
            value: 0,
            modulus: p,
        });
    }
    // Euler criterion
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let r = if p % 4 == 3 {
        pow_mod(a, (p + 1) / 4, p)
    } else {
        tonelli_shanks(a, p)
    };
    let r = r.min(p - r);
    Some(FpElem {
        value: r,
        modulus: p,
    })
}

fn tonelli_shanks(a: u64, p: u64) -> u64 {
    // write p-1 = q * 2^s with q odd
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    // find a quadratic non-residue z (deterministic scan keeps runs identical)
    let mut z = 2u64;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    r
}

/// Per-prime residues of one unknown scalar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueTable {
    entries: Vec<(u64, u64)>,
}

impl ResidueTable {
    /// Build a table, validating primality, the modulus cap, distinctness and
    /// residue reduction.
    pub fn new(entries: Vec<(u64, u64)>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for &(p, n) in &entries {
            if p >= MAX_PRIME {
                return Err(Error::PrimeTooLarge(p));
            }
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            if !seen.insert(p) {
                return Err(Error::DuplicatePrime(p));
            }
            if n >= p {
                return Err(Error::InvalidResidue);
            }
        }
        Ok(ResidueTable { entries })
    }

    /// Reduce a rational mod each given prime. Fails on a prime dividing the
    /// denominator.
    pub fn from_rational(value: &BigRational, primes: &[u64]) -> Result<Self> {
        let mut entries = Vec::with_capacity(primes.len());
        for &p in primes {
            let r = reduce_rational_mod(value, p).ok_or(Error::BadPrimeDenominator(p))?;
            entries.push((p, r));
        }
        ResidueTable::new(entries)
    }

    pub fn entries(&self) -> &[(u64, u64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries.iter().map(|&(p, _)| p)
    }

    /// One `p n` pair per line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let p = parts
                .next()
                .and_then(|t| t.parse::<u64>().ok())
                .ok_or_else(|| Error::parse(i + 1, 1, "expected 'p n' pair"))?;
            let n = parts
                .next()
                .and_then(|t| t.parse::<u64>().ok())
                .ok_or_else(|| Error::parse(i + 1, 1, "expected 'p n' pair"))?;
            if parts.next().is_some() {
                return Err(Error::parse(i + 1, 1, "expected exactly two fields"));
            }
            entries.push((p, n));
        }
        ResidueTable::new(entries)
    }
}

impl fmt::Display for ResidueTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (p, n) in &self.entries {
            writeln!(f, "{} {}", p, n)?;
        }
        Ok(())
    }
}

/// Chinese remaindering: the unique `x` in `[0, M)` matching every residue,
/// together with `M` = product of the primes.
pub fn crt_combine(table: &ResidueTable) -> Result<(BigInt, BigInt)> {
    if table.is_empty() {
        return Err(Error::EmptyResidueTable);
    }
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for &(p, n) in table.entries() {
        let p_big = BigInt::from(p);
        let n_big = BigInt::from(n);
        // solve x' = x (mod m), x' = n (mod p); with m, p coprime
        let diff = (&n_big - &x).mod_floor(&p_big);
        let m_inv = big_mod_inverse(&m.mod_floor(&p_big), &p_big).expect("primes are distinct");
        let k = (diff * m_inv).mod_floor(&p_big);
        x += k * &m;
        m *= p_big;
    }
    Ok((x.mod_floor(&m), m))
}

fn big_mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Default Farey bound `floor(sqrt(M/2))`, the symmetric choice with the
/// standard uniqueness guarantee.
pub fn default_farey_bound(m: &BigInt) -> BigInt {
    let half: BigUint = (m / 2u32).to_biguint().unwrap_or_default();
    BigInt::from(half.sqrt())
}

/// Farey/rational reconstruction: a fraction `p/q` with `|p| <= bound`,
/// `1 <= q <= bound`, `gcd(q, M) = 1` and `p = x q (mod M)`, if one exists.
pub fn rational_reconstruct(
    x: &BigInt,
    m: &BigInt,
    bound: &BigInt,
) -> Result<Option<BigRational>> {
    if m <= &BigInt::zero() || x < &BigInt::zero() || x >= m {
        return Err(Error::InvalidResidue);
    }
    if bound < &BigInt::one() {
        return Err(Error::InvalidResidue);
    }
    if x.is_zero() {
        return Ok(Some(BigRational::zero()));
    }
    // Half-extended Euclid on (M, x); stop at the first remainder <= bound.
    let (mut r0, mut r1) = (m.clone(), x.clone());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1.abs() > *bound {
        let q = &r0 / &r1;
        (r0, r1) = (r1.clone(), &r0 - &q * &r1);
        (t0, t1) = (t1.clone(), &t0 - &q * &t1);
    }
    let (mut num, mut den) = (r1, t1);
    if den.is_negative() {
        num = -num;
        den = -den;
    }
    if den.is_zero() || den > *bound || num.abs() > *bound {
        return Ok(None);
    }
    if !num.gcd(&den).is_one() || !den.gcd(m).is_one() {
        return Ok(None);
    }
    // p = x q (mod M) holds by the Euclidean invariant; check defensively.
    debug_assert!((&num - x * &den).mod_floor(m).is_zero());
    Ok(Some(BigRational::new(num, den)))
}

/// Report of primes flagged as bad during a lift.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BadPrimeReport {
    pub bad_primes: Vec<u64>,
}

/// Lift residues to a rational: CRT then Farey reconstruction at the default
/// bound, with a single leave-one-out retry pass when direct reconstruction
/// fails. Exactly one successful omission flags that prime as bad; anything
/// else is an error.
pub fn lift_to_rationals(table: &ResidueTable) -> Result<(BigRational, BadPrimeReport)> {
    if table.len() < 2 {
        return Err(Error::NeedTwoPrimes);
    }
    if let Some(v) = try_lift(table)? {
        verify_lift(&v, table, None)?;
        return Ok((v, BadPrimeReport::default()));
    }
    let mut successes: Vec<(u64, BigRational)> = Vec::new();
    for skip in 0..table.len() {
        let sub: Vec<(u64, u64)> = table
            .entries()
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &e)| e)
            .collect();
        let sub_table = ResidueTable::new(sub)?;
        if let Some(v) = try_lift(&sub_table)? {
            successes.push((table.entries()[skip].0, v));
        }
    }
    match successes.len() {
        1 => {
            let (bad, v) = successes.pop().unwrap();
            verify_lift(&v, table, Some(bad))?;
            Ok((
                v,
                BadPrimeReport {
                    bad_primes: vec![bad],
                },
            ))
        }
        _ => Err(Error::ReconstructionFailed),
    }
}

fn try_lift(table: &ResidueTable) -> Result<Option<BigRational>> {
    let (x, m) = crt_combine(table)?;
    let bound = default_farey_bound(&m);
    if bound < BigInt::one() {
        return Ok(None);
    }
    rational_reconstruct(&x, &m, &bound)
}

fn verify_lift(v: &BigRational, table: &ResidueTable, skip: Option<u64>) -> Result<()> {
    for &(p, n) in table.entries() {
        if Some(p) == skip {
            continue;
        }
        match reduce_rational_mod(v, p) {
            Some(r) if r == n => {}
            _ => return Err(Error::ReconstructionFailed),
        }
    }
    Ok(())
}

/// Reduce a rational mod `p`; `None` when `p` divides the denominator.
pub fn reduce_rational_mod(value: &BigRational, p: u64) -> Option<u64> {
    let p_big = BigInt::from(p);
    let den = value.denom().mod_floor(&p_big);
    if den.is_zero() {
        return None;
    }
    let num = value.numer().mod_floor(&p_big);
    let inv = big_mod_inverse(&den, &p_big)?;
    let r = (num * inv).mod_floor(&p_big);
    r.to_biguint().map(|u| {
        let digits = u.to_u64_digits();
        if digits.is_empty() {
            0
        } else {
            digits[0]
        }
    })
}

/// An element `a + b sqrt(d)` of the quadratic field `Q(sqrt d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadExtElem {
    pub a: BigRational,
    pub b: BigRational,
    pub d: i64,
}

impl QuadExtElem {
    pub fn new(a: BigRational, b: BigRational, d: i64) -> Self {
        QuadExtElem { a, b, d }
    }

    pub fn from_rational(a: BigRational, d: i64) -> Self {
        QuadExtElem {
            a,
            b: BigRational::zero(),
            d,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conjugate(&self) -> QuadExtElem {
        QuadExtElem {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }

    pub fn trace(&self) -> BigRational {
        &self.a + &self.a
    }

    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from(BigInt::from(self.d))
    }

    pub fn add(&self, rhs: &QuadExtElem) -> QuadExtElem {
        debug_assert_eq!(self.d, rhs.d);
        QuadExtElem {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
            d: self.d,
        }
    }

    pub fn mul(&self, rhs: &QuadExtElem) -> QuadExtElem {
        debug_assert_eq!(self.d, rhs.d);
        let d = BigRational::from(BigInt::from(self.d));
        QuadExtElem {
            a: &self.a * &rhs.a + &self.b * &rhs.b * &d,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            d: self.d,
        }
    }

    /// Reduce into `F_p` through the canonical root of `d` when `p` splits.
    pub fn reduce_mod(&self, p: u64) -> Option<u64> {
        let root = sqrt_mod(self.d, p)?;
        let a = reduce_rational_mod(&self.a, p)?;
        let b = reduce_rational_mod(&self.b, p)?;
        Some((a + mul_mod(b, root.value, p)) % p)
    }
}

impl fmt::Display for QuadExtElem {
    /// Prints `(A + B*s)/c` over a common denominator `c` (the `/c` is
    /// dropped when `c = 1`, the `s` part when `b = 0`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let c = self.a.denom().lcm(self.b.denom());
        let na = (&self.a * BigRational::from(c.clone())).to_integer();
        let nb = (&self.b * BigRational::from(c.clone())).to_integer();
        let s_part = if nb == BigInt::one() {
            "s".to_string()
        } else if nb == -BigInt::one() {
            "-s".to_string()
        } else {
            format!("{}*s", nb)
        };
        let body = if na.is_zero() {
            s_part
        } else if nb.is_negative() {
            format!("{} - {}", na, s_part.trim_start_matches('-'))
        } else {
            format!("{} + {}", na, s_part)
        };
        if c.is_one() {
            write!(f, "{}", body)
        } else {
            write!(f, "({})/{}", body, c)
        }
    }
}

/// One prime's worth of input to `quad_lift`: the canonical root of `d` at
/// `p` and the two conjugate residues observed there.
#[derive(Clone, Copy, Debug)]
pub struct QuadResiduePair {
    pub prime: u64,
    pub root: u64,
    pub pair: (u64, u64),
}

/// Lift conjugate residue pairs to an element of `Q(sqrt d)` by lifting the
/// symmetric functions (trace and norm), which are rational and therefore
/// free of the conjugate-pairing ambiguity. The returned root has `b >= 0`.
pub fn quad_lift(d: i64, pairs: &[QuadResiduePair]) -> Result<(QuadExtElem, BadPrimeReport)> {
    if pairs.len() < 2 {
        return Err(Error::NeedTwoPrimes);
    }
    for pr in pairs {
        let expect = sqrt_mod(d, pr.prime).ok_or(Error::NonSplitPrime(d, pr.prime))?;
        if expect.value != pr.root && pr.prime - expect.value != pr.root {
            return Err(Error::NonSplitPrime(d, pr.prime));
        }
    }
    let trace_table = ResidueTable::new(
        pairs
            .iter()
            .map(|pr| (pr.prime, (pr.pair.0 + pr.pair.1) % pr.prime))
            .collect(),
    )?;
    let norm_table = ResidueTable::new(
        pairs
            .iter()
            .map(|pr| (pr.prime, mul_mod(pr.pair.0, pr.pair.1, pr.prime)))
            .collect(),
    )?;
    let (t, rep_t) = lift_to_rationals(&trace_table)?;
    let (n, rep_n) = lift_to_rationals(&norm_table)?;
    let elem = quad_from_trace_norm(d, &t, &n)?;
    // re-check each pair against the lifted element under both embeddings
    for pr in pairs {
        let plus = elem.reduce_mod(pr.prime).ok_or(Error::InconsistentFamily)?;
        let minus = elem
            .conjugate()
            .reduce_mod(pr.prime)
            .ok_or(Error::InconsistentFamily)?;
        let got = [pr.pair.0, pr.pair.1];
        let want = [plus.min(minus), plus.max(minus)];
        let mut sorted = got;
        sorted.sort_unstable();
        if sorted != want
            && !(rep_t.bad_primes.contains(&pr.prime) || rep_n.bad_primes.contains(&pr.prime))
        {
            return Err(Error::InconsistentFamily);
        }
    }
    let mut bad = rep_t.bad_primes;
    for p in rep_n.bad_primes {
        if !bad.contains(&p) {
            bad.push(p);
        }
    }
    bad.sort_unstable();
    Ok((elem, BadPrimeReport { bad_primes: bad }))
}

/// Solve `T^2 - t T + n` inside `Q(sqrt d)`: the discriminant `t^2 - 4n`
/// must be `d` times a rational square.
pub fn quad_from_trace_norm(d: i64, t: &BigRational, n: &BigRational) -> Result<QuadExtElem> {
    let four = BigRational::from(BigInt::from(4));
    let two = BigRational::from(BigInt::from(2));
    let disc = t * t - four * n;
    if disc.is_zero() {
        return Ok(QuadExtElem::from_rational(t / &two, d));
    }
    let q = &disc / BigRational::from(BigInt::from(d));
    let e = rational_sqrt(&q).ok_or(Error::NotQuadElement(d))?;
    Ok(QuadExtElem::new(t / &two, e / &two, d))
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let num = q.numer().to_biguint()?;
    let den = q.denom().to_biguint()?;
    let rn = num.sqrt();
    let rd = den.sqrt();
    if &rn * &rn == num && &rd * &rd == den {
        Some(BigRational::new(BigInt::from(rn), BigInt::from(rd)))
    } else {
        None
    }
}
