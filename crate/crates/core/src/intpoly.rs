//! Integer polynomial utilities: primitive parts, subresultant gcd,
//! squarefree decomposition, and factorization over Q (Cantor–Zassenhaus
//! mod p, quadratic Hensel lifting, subset recombination).
//!
//! Polynomials are dense `Vec<BigInt>` in ascending degree order with a
//! nonzero last element (empty vector = zero polynomial).

use num::bigint::{BigInt, Sign};
use num::{BigUint, Integer, One, Zero};

pub type ZPoly = Vec<BigInt>;

// ---------------------------------------------------------------------------
// Basic Z[x] arithmetic
// ---------------------------------------------------------------------------

pub fn zp_normalize(p: &mut ZPoly) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

pub fn zp_degree(p: &[BigInt]) -> isize {
    p.len() as isize - 1
}

pub fn zp_is_zero(p: &[BigInt]) -> bool {
    p.is_empty()
}

pub fn zp_neg(p: &[BigInt]) -> ZPoly {
    p.iter().map(|c| -c).collect()
}

pub fn zp_add(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    zp_normalize(&mut out);
    out
}

pub fn zp_sub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    zp_add(a, &zp_neg(b))
}

pub fn zp_mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    zp_normalize(&mut out);
    out
}

pub fn zp_mul_scalar(a: &[BigInt], s: &BigInt) -> ZPoly {
    if s.is_zero() {
        return Vec::new();
    }
    a.iter().map(|c| c * s).collect()
}

pub fn zp_content(p: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Primitive part with positive leading coefficient; returns (sign*content, primitive).
pub fn zp_primitive(p: &[BigInt]) -> (BigInt, ZPoly) {
    if p.is_empty() {
        return (BigInt::zero(), Vec::new());
    }
    let mut c = zp_content(p);
    if p.last().unwrap().sign() == Sign::Minus {
        c = -c;
    }
    let prim = p.iter().map(|x| x / &c).collect();
    (c, prim)
}

pub fn zp_derivative(p: &[BigInt]) -> ZPoly {
    if p.len() <= 1 {
        return Vec::new();
    }
    let mut out: ZPoly = p[1..]
        .iter()
        .enumerate()
        .map(|(i, c)| c * BigInt::from(i + 1))
        .collect();
    zp_normalize(&mut out);
    out
}

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a = q*b + r.
pub fn zp_pseudo_rem(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    assert!(!b.is_empty());
    let mut r: ZPoly = a.to_vec();
    let db = zp_degree(b);
    let lb = b.last().unwrap().clone();
    while zp_degree(&r) >= db {
        let dr = zp_degree(&r) as usize;
        let lr = r.last().unwrap().clone();
        // r = lb*r - lr * x^(dr-db) * b
        let mut new_r = zp_mul_scalar(&r, &lb);
        for (j, cb) in b.iter().enumerate() {
            new_r[dr - db as usize + j] -= &lr * cb;
        }
        zp_normalize(&mut new_r);
        r = new_r;
        if r.is_empty() {
            break;
        }
    }
    r
}

/// Primitive gcd via the subresultant polynomial remainder sequence.
pub fn zp_gcd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() {
        return zp_primitive(b).1;
    }
    if b.is_empty() {
        return zp_primitive(a).1;
    }
    let (_, mut f) = zp_primitive(a);
    let (_, mut g) = zp_primitive(b);
    if zp_degree(&f) < zp_degree(&g) {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        let r = zp_pseudo_rem(&f, &g);
        if r.is_empty() {
            return zp_primitive(&g).1;
        }
        if zp_degree(&r) == 0 {
            return vec![BigInt::one()];
        }
        let (_, rp) = zp_primitive(&r);
        f = g;
        g = rp;
    }
}

/// Exact division in Z[x]; panics if not exact (internal use only).
pub fn zp_div_exact(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    assert!(!b.is_empty(), "division by zero polynomial");
    if a.is_empty() {
        return Vec::new();
    }
    let da = zp_degree(a) as usize;
    let db = zp_degree(b) as usize;
    assert!(da >= db);
    let lb = b.last().unwrap();
    let mut r: ZPoly = a.to_vec();
    let mut q = vec![BigInt::zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        if r.len() < db + k + 1 {
            continue;
        }
        let lr = r[db + k].clone();
        if lr.is_zero() {
            continue;
        }
        let (qc, rem) = lr.div_rem(lb);
        assert!(rem.is_zero(), "non-exact polynomial division");
        q[k] = qc.clone();
        for (j, cb) in b.iter().enumerate() {
            r[k + j] -= &qc * cb;
        }
    }
    zp_normalize(&mut r);
    assert!(r.is_empty(), "non-exact polynomial division");
    zp_normalize(&mut q);
    q
}

/// Squarefree decomposition (Yun): returns [(g_i, i)] with f = c * prod g_i^i,
/// the g_i squarefree, pairwise coprime, primitive.
pub fn zp_squarefree_decomposition(f: &[BigInt]) -> Vec<(ZPoly, usize)> {
    let (_, f) = zp_primitive(f);
    if zp_degree(&f) < 1 {
        return Vec::new();
    }
    let df = zp_derivative(&f);
    let a0 = zp_gcd(&f, &df);
    let mut b = zp_div_exact(&f, &a0);
    let mut c = zp_div_exact(&df, &a0);
    let mut out = Vec::new();
    let mut i = 1usize;
    loop {
        let d = zp_sub(&c, &zp_derivative(&b));
        if zp_is_zero(&d) {
            if zp_degree(&b) >= 1 {
                out.push((b, i));
            }
            break;
        }
        let g = zp_gcd(&b, &d);
        if zp_degree(&g) >= 1 {
            out.push((g.clone(), i));
        }
        b = zp_div_exact(&b, &g);
        c = zp_div_exact(&d, &g);
        i += 1;
        if zp_degree(&b) < 1 {
            break;
        }
    }
    out
}

// ---------------------------------------------------------------------------
// F_p[x] arithmetic (p < 2^31)
// ---------------------------------------------------------------------------

#[derive(Clone, Copy)]
pub struct Fp {
    pub p: u64,
}

pub type FpPoly = Vec<u64>;

impl Fp {
    fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }
    fn inv(&self, a: u64) -> u64 {
        // extended Euclid
        let (mut t, mut new_t): (i128, i128) = (0, 1);
        let (mut r, mut new_r): (i128, i128) = (self.p as i128, a as i128);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        assert!(r == 1, "not invertible mod p");
        (((t % self.p as i128) + self.p as i128) % self.p as i128) as u64
    }

    fn norm(p: &mut FpPoly) {
        while p.last() == Some(&0) {
            p.pop();
        }
    }

    pub fn padd(&self, a: &[u64], b: &[u64]) -> FpPoly {
        let mut out = vec![0u64; a.len().max(b.len())];
        for (i, c) in a.iter().enumerate() {
            out[i] = self.add(out[i], *c);
        }
        for (i, c) in b.iter().enumerate() {
            out[i] = self.add(out[i], *c);
        }
        Self::norm(&mut out);
        out
    }

    pub fn psub(&self, a: &[u64], b: &[u64]) -> FpPoly {
        let mut out = vec![0u64; a.len().max(b.len())];
        for (i, c) in a.iter().enumerate() {
            out[i] = self.add(out[i], *c);
        }
        for (i, c) in b.iter().enumerate() {
            out[i] = self.sub(out[i], *c);
        }
        Self::norm(&mut out);
        out
    }

    pub fn pmul(&self, a: &[u64], b: &[u64]) -> FpPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &ca) in a.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (j, &cb) in b.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(ca, cb));
            }
        }
        Self::norm(&mut out);
        out
    }

    pub fn pscale(&self, a: &[u64], s: u64) -> FpPoly {
        let mut out: FpPoly = a.iter().map(|&c| self.mul(c, s)).collect();
        Self::norm(&mut out);
        out
    }

    pub fn pmonic(&self, a: &[u64]) -> FpPoly {
        match a.last() {
            None => Vec::new(),
            Some(&l) => self.pscale(a, self.inv(l)),
        }
    }

    /// Remainder of a by b (b nonzero).
    pub fn prem(&self, a: &[u64], b: &[u64]) -> FpPoly {
        assert!(!b.is_empty());
        let mut r: FpPoly = a.to_vec();
        let db = b.len() - 1;
        let linv = self.inv(*b.last().unwrap());
        while r.len() > db {
            let dr = r.len() - 1;
            let coef = self.mul(*r.last().unwrap(), linv);
            for (j, &cb) in b.iter().enumerate() {
                let t = self.mul(coef, cb);
                r[dr - db + j] = self.sub(r[dr - db + j], t);
            }
            Self::norm(&mut r);
            if r.is_empty() {
                break;
            }
        }
        r
    }

    pub fn pdivrem(&self, a: &[u64], b: &[u64]) -> (FpPoly, FpPoly) {
        assert!(!b.is_empty());
        let mut r: FpPoly = a.to_vec();
        let db = b.len() - 1;
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let mut q = vec![0u64; r.len() - db];
        let linv = self.inv(*b.last().unwrap());
        while r.len() > db {
            let dr = r.len() - 1;
            let coef = self.mul(*r.last().unwrap(), linv);
            q[dr - db] = coef;
            for (j, &cb) in b.iter().enumerate() {
                let t = self.mul(coef, cb);
                r[dr - db + j] = self.sub(r[dr - db + j], t);
            }
            Self::norm(&mut r);
            if r.is_empty() {
                break;
            }
        }
        Self::norm(&mut q);
        (q, r)
    }

    pub fn pgcd(&self, a: &[u64], b: &[u64]) -> FpPoly {
        let mut f = a.to_vec();
        let mut g = b.to_vec();
        while !g.is_empty() {
            let r = self.prem(&f, &g);
            f = g;
            g = r;
        }
        self.pmonic(&f)
    }

    /// base^exp mod m, exponent a BigUint.
    pub fn ppowmod(&self, base: &[u64], exp: &BigUint, m: &[u64]) -> FpPoly {
        let mut result: FpPoly = vec![1];
        let mut b = self.prem(base, m);
        let bits = exp.bits();
        for i in 0..bits {
            if exp.bit(i) {
                result = self.prem(&self.pmul(&result, &b), m);
            }
            if i + 1 < bits {
                b = self.prem(&self.pmul(&b, &b), m);
            }
        }
        result
    }

    pub fn pderiv(&self, a: &[u64]) -> FpPoly {
        if a.len() <= 1 {
            return Vec::new();
        }
        let mut out: FpPoly = a[1..]
            .iter()
            .enumerate()
            .map(|(i, &c)| self.mul(c, ((i + 1) as u64) % self.p))
            .collect();
        Self::norm(&mut out);
        out
    }
}

// ---------------------------------------------------------------------------
// Factorization over F_p: distinct-degree + equal-degree (Cantor–Zassenhaus)
// ---------------------------------------------------------------------------

struct XorShift(u64);

impl XorShift {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }
}

/// Factor a monic squarefree polynomial over F_p into monic irreducibles.
pub fn fp_factor_squarefree(fp: Fp, f: &[u64]) -> Vec<FpPoly> {
    let mut out = Vec::new();
    let mut rng = XorShift(0x9e3779b97f4a7c15);
    let mut rest = f.to_vec();
    // distinct-degree splitting
    let mut h: FpPoly = vec![0, 1]; // x
    let p_big = BigUint::from(fp.p);
    let mut d = 0usize;
    let mut parts: Vec<(FpPoly, usize)> = Vec::new();
    while rest.len() - 1 > 2 * d {
        d += 1;
        h = fp.ppowmod(&h, &p_big, &rest);
        let hx = fp.psub(&h, &[0, 1]);
        let g = fp.pgcd(&hx, &rest);
        if g.len() > 1 {
            parts.push((g.clone(), d));
            rest = fp.pdivrem(&rest, &g).0;
            h = fp.prem(&h, &rest);
        }
    }
    if rest.len() > 1 {
        parts.push((rest.clone(), rest.len() - 1));
    }
    // equal-degree splitting
    for (g, d) in parts {
        let mut stack = vec![g];
        let e = (BigUint::from(fp.p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
        while let Some(g) = stack.pop() {
            let dg = g.len() - 1;
            if dg == d {
                out.push(fp.pmonic(&g));
                continue;
            }
            loop {
                let r: FpPoly = {
                    let mut v: FpPoly = (0..dg).map(|_| rng.next() % fp.p).collect();
                    Fp::norm(&mut v);
                    if v.is_empty() {
                        v = vec![1];
                    }
                    v
                };
                let s = fp.ppowmod(&r, &e, &g);
                let s1 = fp.psub(&s, &[1]);
                let t = fp.pgcd(&s1, &g);
                if t.len() > 1 && t.len() < g.len() {
                    let other = fp.pdivrem(&g, &t).0;
                    stack.push(t);
                    stack.push(other);
                    break;
                }
            }
        }
    }
    out.sort();
    out
}

// ---------------------------------------------------------------------------
// Hensel lifting
// ---------------------------------------------------------------------------

fn bz_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a % m;
    if r.sign() == Sign::Minus {
        r + m
    } else {
        r
    }
}

/// Balanced representative in (-m/2, m/2].
fn bz_balanced(a: &BigInt, m: &BigInt) -> BigInt {
    let r = bz_mod(a, m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn zpm_reduce(a: &[BigInt], m: &BigInt) -> ZPoly {
    let mut out: ZPoly = a.iter().map(|c| bz_mod(c, m)).collect();
    zp_normalize(&mut out);
    out
}

fn zpm_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    zpm_reduce(&zp_mul(a, b), m)
}

fn zpm_sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    zpm_reduce(&zp_sub(a, b), m)
}

fn zpm_add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    zpm_reduce(&zp_add(a, b), m)
}

fn bz_invmod(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "not invertible");
    bz_mod(&e.x, m)
}

/// divrem by a monic polynomial, coefficients mod m.
fn zpm_divrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    assert!(b.last().map_or(false, |c| c.is_one()), "divisor must be monic");
    let db = b.len() - 1;
    let mut r = zpm_reduce(a, m);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let coef = r.last().unwrap().clone();
        q[dr - db] = coef.clone();
        for (j, cb) in b.iter().enumerate() {
            let idx = dr - db + j;
            let v = bz_mod(&(&r[idx] - &coef * cb), m);
            r[idx] = v;
        }
        zp_normalize(&mut r);
        if r.is_empty() {
            break;
        }
    }
    zp_normalize(&mut q);
    (q, r)
}

/// One quadratic Hensel step: given f ≡ g*h (mod m), s*g + t*h ≡ 1 (mod m),
/// h monic, lifts everything mod m^2.
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m: &BigInt,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let m2 = m * m;
    let e = zpm_sub(f, &zp_mul(g, h), &m2);
    let (q, r) = zpm_divrem_monic(&zp_mul(s, &e), h, &m2);
    let g1 = zpm_add(&zpm_add(g, &zp_mul(t, &e), &m2), &zp_mul(&q, g), &m2);
    let h1 = zpm_add(h, &r, &m2);
    let b = zpm_sub(&zp_add(&zp_mul(s, &g1), &zp_mul(t, &h1)), &[BigInt::one()], &m2);
    let (c, d) = zpm_divrem_monic(&zp_mul(s, &b), &h1, &m2);
    let s1 = zpm_sub(s, &d, &m2);
    let t1 = zpm_sub(&zpm_sub(t, &zp_mul(t, &b), &m2), &zp_mul(&c, &g1), &m2);
    (g1, h1, s1, t1)
}

fn fp_to_zp(a: &[u64]) -> ZPoly {
    let mut v: ZPoly = a.iter().map(|&c| BigInt::from(c)).collect();
    zp_normalize(&mut v);
    v
}

/// Lift the factorization f ≡ lc(f) * prod(monic factors) mod p to mod p^(2^iters),
/// returning monic factors mod m_out together with m_out.
fn hensel_lift_tree(
    f: &[BigInt],
    p: u64,
    factors: &[FpPoly],
    target: &BigInt,
) -> (Vec<ZPoly>, BigInt) {
    let mut m = BigInt::from(p);
    if factors.len() == 1 {
        // nothing to lift: f = lc * monic(f) exactly, report monic image mod target-power
        while &m < target {
            m = &m * &m;
        }
        let lc_inv = bz_invmod(f.last().unwrap(), &m);
        let monic = zpm_reduce(&zp_mul_scalar(f, &lc_inv), &m);
        return (vec![monic], m);
    }
    let k = factors.len() / 2;
    let fp = Fp { p };
    let left: FpPoly = factors[..k]
        .iter()
        .fold(vec![1u64], |acc, g| fp.pmul(&acc, g));
    let right: FpPoly = factors[k..]
        .iter()
        .fold(vec![1u64], |acc, g| fp.pmul(&acc, g));
    let lc = bz_mod(f.last().unwrap(), &m);
    let lc_u = {
        let digits = lc.to_u64_digits();
        if digits.1.is_empty() {
            0u64
        } else {
            digits.1[0]
        }
    };
    // g carries lc, h = right stays monic
    let mut g = fp_to_zp(&fp.pscale(&left, lc_u % p));
    let mut h = fp_to_zp(&right);
    // Bezout: s*g + t*h = 1 mod p
    let (gg, ss, tt) = fp_ext_gcd(fp, &zp_to_fp(&g, p), &zp_to_fp(&h, p));
    assert!(gg.len() == 1, "lift sides not coprime");
    let ginv = fp.inv(gg[0]);
    let mut s = fp_to_zp(&fp.pscale(&ss, ginv));
    let mut t = fp_to_zp(&fp.pscale(&tt, ginv));
    while &m < target {
        let (g1, h1, s1, t1) = hensel_step(f, &g, &h, &s, &t, &m);
        g = g1;
        h = h1;
        s = s1;
        t = t1;
        m = &m * &m;
    }
    // recurse into both sides; g side still has lc attached
    let (mut lf, _) = hensel_lift_tree_modm(&g, p, &factors[..k], &m);
    let (rf, _) = hensel_lift_tree_modm(&h, p, &factors[k..], &m);
    lf.extend(rf);
    (lf, m)
}

/// Same as `hensel_lift_tree` but the input is already a lift mod m.
fn hensel_lift_tree_modm(
    f: &[BigInt],
    p: u64,
    factors: &[FpPoly],
    m: &BigInt,
) -> (Vec<ZPoly>, BigInt) {
    if factors.len() == 1 {
        let lc_inv = bz_invmod(f.last().unwrap(), m);
        let monic = zpm_reduce(&zp_mul_scalar(f, &lc_inv), m);
        return (vec![monic], m.clone());
    }
    let k = factors.len() / 2;
    let fp = Fp { p };
    let left: FpPoly = factors[..k]
        .iter()
        .fold(vec![1u64], |acc, g| fp.pmul(&acc, g));
    let right: FpPoly = factors[k..]
        .iter()
        .fold(vec![1u64], |acc, g| fp.pmul(&acc, g));
    let lc = f.last().unwrap();
    let lc_u = {
        let r = bz_mod(lc, &BigInt::from(p));
        let digits = r.to_u64_digits();
        if digits.1.is_empty() {
            0
        } else {
            digits.1[0]
        }
    };
    let mut g = fp_to_zp(&fp.pscale(&left, lc_u));
    let mut h = fp_to_zp(&right);
    let (gg, ss, tt) = fp_ext_gcd(fp, &zp_to_fp(&g, p), &zp_to_fp(&h, p));
    assert!(gg.len() == 1, "lift sides not coprime");
    let ginv = fp.inv(gg[0]);
    let mut s = fp_to_zp(&fp.pscale(&ss, ginv));
    let mut t = fp_to_zp(&fp.pscale(&tt, ginv));
    let mut mm = BigInt::from(p);
    while &mm < m {
        let (g1, h1, s1, t1) = hensel_step(f, &g, &h, &s, &t, &mm);
        g = g1;
        h = h1;
        s = s1;
        t = t1;
        mm = &mm * &mm;
    }
    let (mut lf, _) = hensel_lift_tree_modm(&g, p, &factors[..k], &mm);
    let (rf, _) = hensel_lift_tree_modm(&h, p, &factors[k..], &mm);
    lf.extend(rf);
    (lf, mm)
}

fn zp_to_fp(a: &[BigInt], p: u64) -> FpPoly {
    let pb = BigInt::from(p);
    let mut v: FpPoly = a
        .iter()
        .map(|c| {
            let r = bz_mod(c, &pb);
            let digits = r.to_u64_digits();
            if digits.1.is_empty() {
                0
            } else {
                digits.1[0]
            }
        })
        .collect();
    Fp::norm(&mut v);
    v
}

/// Extended gcd over F_p[x]: returns (g, s, t) with s*a + t*b = g.
fn fp_ext_gcd(fp: Fp, a: &[u64], b: &[u64]) -> (FpPoly, FpPoly, FpPoly) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1): (FpPoly, FpPoly) = (vec![1], Vec::new());
    let (mut t0, mut t1): (FpPoly, FpPoly) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = fp.pdivrem(&r0, &r1);
        let s = fp.psub(&s0, &fp.pmul(&q, &s1));
        let t = fp.psub(&t0, &fp.pmul(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    (r0, s0, t0)
}

// ---------------------------------------------------------------------------
// Factorization over Q
// ---------------------------------------------------------------------------

const PRIMES: &[u64] = &[
    1000003, 1000033, 1000037, 1000039, 1000081, 1000099, 1000117, 1000121, 1000133, 1000151,
    1000159, 1000171, 1000183, 1000187, 1000193, 1000199, 1000211, 1000213, 1000231, 1000249,
];

/// Landau–Mignotte style bound on factor coefficients of f (times lc).
fn factor_bound(f: &[BigInt]) -> BigInt {
    let n = zp_degree(f) as u32;
    let norm2: BigInt = {
        let s: BigInt = f.iter().map(|c| c * c).sum();
        s.sqrt() + 1
    };
    let lc = f.last().unwrap().magnitude().clone();
    (BigInt::one() << (n + 2)) * norm2 * BigInt::from_biguint(Sign::Plus, lc)
}

/// Factor a primitive squarefree polynomial of degree >= 1 into primitive
/// irreducible factors over Z (positive leading coefficients except possibly
/// a global sign).
pub fn zp_factor_squarefree(f: &[BigInt]) -> Vec<ZPoly> {
    let n = zp_degree(f);
    assert!(n >= 1);
    if n == 1 {
        return vec![f.to_vec()];
    }
    // pick a prime where f stays squarefree with unit leading coefficient
    let mut chosen: Option<(u64, Vec<FpPoly>)> = None;
    for &p in PRIMES {
        let fp = Fp { p };
        let fmodp = zp_to_fp(f, p);
        if fmodp.len() != f.len() {
            continue; // lc vanished
        }
        let d = fp.pderiv(&fmodp);
        if d.is_empty() {
            continue;
        }
        let g = fp.pgcd(&fmodp, &d);
        if g.len() != 1 {
            continue;
        }
        let monic = fp.pmonic(&fmodp);
        let facs = fp_factor_squarefree(fp, &monic);
        chosen = Some((p, facs));
        break;
    }
    let (p, facs) = chosen.expect("no suitable prime found for factorization");
    if facs.len() == 1 {
        return vec![f.to_vec()];
    }
    let bound = factor_bound(f);
    let two_bound = &bound * 2;
    let (lifted, m) = hensel_lift_tree(f, p, &facs, &two_bound);

    // subset recombination
    let mut avail: Vec<ZPoly> = lifted;
    let mut rest = f.to_vec();
    let mut out: Vec<ZPoly> = Vec::new();
    let mut card = 1usize;
    'outer: while 2 * card <= avail.len() {
        let idxs: Vec<usize> = (0..avail.len()).collect();
        for combo in combinations(&idxs, card) {
            let lc = rest.last().unwrap().clone();
            let mut cand: ZPoly = vec![lc.clone()];
            for &i in &combo {
                cand = zpm_mul(&cand, &avail[i], &m);
            }
            let cand_bal: ZPoly = {
                let mut v: ZPoly = cand.iter().map(|c| bz_balanced(c, &m)).collect();
                zp_normalize(&mut v);
                v
            };
            if cand_bal.is_empty() {
                continue;
            }
            let (_, prim) = zp_primitive(&cand_bal);
            // trial division over Z
            if zp_trial_divide(&rest, &prim) {
                rest = zp_div_exact(&rest, &prim);
                out.push(prim);
                let combo_set: std::collections::HashSet<usize> = combo.into_iter().collect();
                avail = avail
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !combo_set.contains(i))
                    .map(|(_, g)| g)
                    .collect();
                continue 'outer;
            }
        }
        card += 1;
    }
    if zp_degree(&rest) >= 1 {
        out.push(zp_primitive(&rest).1);
    }
    out
}

fn zp_trial_divide(f: &[BigInt], g: &[BigInt]) -> bool {
    if g.is_empty() || zp_degree(g) > zp_degree(f) {
        return false;
    }
    // cheap checks: constant term and lc divisibility
    if !f[0].is_zero() && !g[0].is_zero() && !(&f[0] % &g[0]).is_zero() {
        return false;
    }
    let da = zp_degree(f) as usize;
    let db = zp_degree(g) as usize;
    let lb = g.last().unwrap();
    let mut r: Vec<BigInt> = f.to_vec();
    for k in (0..=da - db).rev() {
        if r.len() < db + k + 1 {
            continue;
        }
        let lr = r[db + k].clone();
        if lr.is_zero() {
            continue;
        }
        let (qc, rem) = lr.div_rem(lb);
        if !rem.is_zero() {
            return false;
        }
        for (j, cb) in g.iter().enumerate() {
            r[k + j] -= &qc * cb;
        }
    }
    zp_normalize(&mut r);
    r.is_empty()
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let n = items.len();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Full factorization of an arbitrary nonzero integer polynomial:
/// returns (content-with-sign, [(irreducible primitive factor, multiplicity)]).
pub fn zp_factor(f: &[BigInt]) -> (BigInt, Vec<(ZPoly, usize)>) {
    let (c, prim) = zp_primitive(f);
    if zp_degree(&prim) < 1 {
        return (c, Vec::new());
    }
    let mut out = Vec::new();
    for (g, mult) in zp_squarefree_decomposition(&prim) {
        for irred in zp_factor_squarefree(&g) {
            out.push((irred, mult));
        }
    }
    // deterministic order
    out.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    (c, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(v: &[i64]) -> ZPoly {
        let mut out: ZPoly = v.iter().map(|&c| BigInt::from(c)).collect();
        zp_normalize(&mut out);
        out
    }

    #[test]
    fn gcd_shared_root() {
        // gcd(x^2-1, x^2-2x+1) = x-1
        let g = zp_gcd(&zp(&[-1, 0, 1]), &zp(&[1, -2, 1]));
        assert_eq!(g, zp(&[-1, 1]));
    }

    #[test]
    fn squarefree_decomposition() {
        // (x-1)^2 (x+2)^3
        let f = zp_mul(
            &zp_mul(&zp(&[-1, 1]), &zp(&[-1, 1])),
            &zp_mul(&zp_mul(&zp(&[2, 1]), &zp(&[2, 1])), &zp(&[2, 1])),
        );
        let d = zp_squarefree_decomposition(&f);
        assert_eq!(d, vec![(zp(&[-1, 1]), 2), (zp(&[2, 1]), 3)]);
    }

    #[test]
    fn factor_quartic_product() {
        // (x^2+1)(x^2-2)(2x+3)
        let f = zp_mul(&zp_mul(&zp(&[1, 0, 1]), &zp(&[-2, 0, 1])), &zp(&[3, 2]));
        let (_, facs) = zp_factor(&f);
        let degs: Vec<usize> = facs.iter().map(|(g, _)| g.len() - 1).collect();
        assert_eq!(degs, vec![1, 2, 2]);
    }

    #[test]
    fn factor_e3_component_quartic_is_irreducible() {
        // 81x^4+6156x^3+4446x^2-684x+1 stays irreducible over Q
        let f = zp(&[1, -684, 4446, 6156, 81]);
        let (_, facs) = zp_factor(&f);
        assert_eq!(facs.len(), 1);
        assert_eq!(facs[0].1, 1);
    }

    #[test]
    fn factor_with_multiplicity_and_cyclotomic() {
        // x^6 - 1 = (x-1)(x+1)(x^2+x+1)(x^2-x+1)
        let mut f = vec![BigInt::from(-1)];
        f.extend(std::iter::repeat(BigInt::zero()).take(5));
        f.push(BigInt::from(1));
        let (_, facs) = zp_factor(&f);
        assert_eq!(facs.len(), 4);
    }
}
