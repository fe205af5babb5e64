//! Univariate polynomials over a [`FieldSpec`], used to split modules by the
//! primary decomposition of an endomorphism.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use super::{ExactMatrix, FieldSpec, Scalar};

/// Coefficients from the constant term upwards; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: FieldSpec, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: FieldSpec) -> Self {
        Poly::new(field, vec![])
    }

    pub fn one(field: FieldSpec) -> Self {
        Poly::new(field, vec![field.one()])
    }

    /// The monomial `x`.
    pub fn x(field: FieldSpec) -> Self {
        Poly::new(field, vec![field.zero(), field.one()])
    }

    /// `x - a`.
    pub fn linear(field: FieldSpec, a: &Scalar) -> Self {
        Poly::new(field, vec![field.neg(a), field.one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn lead(&self) -> &Scalar {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let f = self.field;
        let inv = f.inv(self.lead());
        Poly::new(f, self.coeffs.iter().map(|c| f.mul(c, &inv)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = f.zero();
        let c = (0..n)
            .map(|i| {
                f.add(
                    self.coeffs.get(i).unwrap_or(&z),
                    other.coeffs.get(i).unwrap_or(&z),
                )
            })
            .collect();
        Poly::new(f, c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = self.field;
        self.add(&Poly::new(f, other.coeffs.iter().map(|c| f.neg(c)).collect()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let f = self.field;
        let mut c = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = f.add(&c[i + j], &f.mul(a, b));
            }
        }
        Poly::new(f, c)
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let f = self.field;
        let mut r = self.coeffs.clone();
        let dl = d.coeffs.len();
        if r.len() < dl {
            return (Poly::zero(f), self.clone());
        }
        let inv = f.inv(d.lead());
        let mut q = vec![f.zero(); r.len() - dl + 1];
        for k in (0..q.len()).rev() {
            let c = f.mul(&r[k + dl - 1], &inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] = f.sub(&r[k + j], &f.mul(&c, dc));
            }
            q[k] = c;
        }
        (Poly::new(f, q), Poly::new(f, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let f = self.field;
        Poly::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
                .collect(),
        )
    }

    /// `self^e mod m` for a big exponent given as little-endian bits.
    fn pow_mod_big(&self, e: &BigInt, m: &Self) -> Self {
        let mut acc = Poly::one(self.field);
        let mut base = self.rem(m);
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
        }
        acc
    }

    /// Evaluates at a square matrix by Horner's rule.
    pub fn eval_matrix(&self, a: &ExactMatrix) -> ExactMatrix {
        let f = self.field;
        let n = a.rows();
        let mut acc = ExactMatrix::zeros(f, n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(a).add(&ExactMatrix::identity(f, n).scale(c));
        }
        acc
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let f = self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }
}

/// Minimal polynomial of a square matrix, found as the first linear
/// dependence among `I, A, A^2, ...`.
pub fn minimal_polynomial(a: &ExactMatrix) -> Poly {
    let f = a.field();
    let n = a.rows();
    assert_eq!(n, a.cols(), "minimal polynomial of a non-square matrix");
    let mut powers: Vec<ExactMatrix> = vec![ExactMatrix::identity(f, n)];
    loop {
        let k = powers.len();
        let cand = powers[k - 1].mul(a);
        if n == 0 {
            return Poly::one(f);
        }
        // columns = flattened previous powers
        let cols: Vec<ExactMatrix> = powers
            .iter()
            .map(|p| ExactMatrix::column_vector(f, p.flatten()))
            .collect();
        let basis = ExactMatrix::hstack_all(f, n * n, &cols);
        let target = ExactMatrix::column_vector(f, cand.flatten());
        if let Ok(sol) = basis.solve(&target) {
            let mut c: Vec<Scalar> = sol.column(0).iter().map(|x| f.neg(x)).collect();
            c.push(f.one());
            return Poly::new(f, c);
        }
        powers.push(cand);
    }
}

/// Finds `mu = u * w` with `u`, `w` non-constant and coprime, or `None` when
/// `mu` is a power of a single irreducible (or when factoring over the
/// rationals needs more than rational roots).
pub fn coprime_split<R: Rng + ?Sized>(mu: &Poly, rng: &mut R) -> Option<(Poly, Poly)> {
    let f = mu.field;
    let mu = mu.monic();
    if mu.degree() < 2 {
        return None;
    }
    let d = mu.derivative();
    if d.is_zero() {
        return None;
    }
    let radical = mu.divrem(&mu.gcd(&d)).0.monic();
    if radical.degree() < 2 {
        return None;
    }
    let factor = match f {
        FieldSpec::Prime(p) => proper_factor_fp(&radical, p, rng)?,
        FieldSpec::Rationals => proper_factor_rational_root(&radical)?,
    };
    // collect the full multiplicity of the primes dividing `factor`
    let mut u = Poly::one(f);
    let mut rest = mu.clone();
    loop {
        let g = rest.gcd(&factor);
        if g.degree() == 0 {
            break;
        }
        u = u.mul(&g);
        rest = rest.divrem(&g).0;
    }
    let w = rest.monic();
    if u.degree() == 0 || w.degree() == 0 {
        return None;
    }
    Some((u.monic(), w))
}

fn proper_factor_fp<R: Rng + ?Sized>(r: &Poly, p: u32, rng: &mut R) -> Option<Poly> {
    let f = r.field;
    let x = Poly::x(f);
    let pb = BigInt::from(p);
    let mut rest = r.clone();
    let mut d = 1u32;
    while rest.degree() > 0 {
        if (2 * d) as usize > rest.degree() {
            // rest is irreducible
            return (rest.degree() < r.degree()).then_some(rest);
        }
        let e = pb.pow(d);
        let xp = x.pow_mod_big(&e, &rest);
        let g = rest.gcd(&xp.sub(&x));
        if g.degree() > 0 && g.degree() < r.degree() {
            return Some(g);
        }
        if g.degree() == r.degree() {
            // every irreducible factor has degree d
            return equal_degree_split(&g, d, p, rng);
        }
        if g.degree() > 0 {
            rest = rest.divrem(&g).0.monic();
        }
        d += 1;
    }
    None
}

fn equal_degree_split<R: Rng + ?Sized>(g: &Poly, d: u32, p: u32, rng: &mut R) -> Option<Poly> {
    let f = g.field;
    if g.degree() as u32 == d {
        return None;
    }
    let pb = BigInt::from(p);
    for _ in 0..64 {
        let a = Poly::new(f, (0..g.degree()).map(|_| f.random(rng)).collect());
        if a.degree() == 0 {
            continue;
        }
        let h = if p == 2 {
            // trace map a + a^2 + ... + a^(2^(md-1)) with md = d
            let mut t = a.rem(g);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(g);
                acc = acc.add(&t);
            }
            acc
        } else {
            let e = (pb.pow(d) - BigInt::one()) / 2;
            a.pow_mod_big(&e, g).sub(&Poly::one(f))
        };
        let c = g.gcd(&h);
        if c.degree() > 0 && c.degree() < g.degree() {
            return Some(c);
        }
    }
    None
}

fn proper_factor_rational_root(r: &Poly) -> Option<Poly> {
    let f = r.field;
    // clear denominators
    let rats: Vec<BigRational> = r
        .coeffs
        .iter()
        .map(|c| match c {
            Scalar::Rat(q) => q.clone(),
            Scalar::Mod(_) => unreachable!(),
        })
        .collect();
    let lcm = rats
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|q| (q * &lcm).to_integer()).collect();
    let a0 = ints.iter().find(|c| !c.is_zero())?.abs();
    if ints[0].is_zero() {
        let root = Poly::linear(f, &f.zero());
        return (r.degree() > 1).then_some(root);
    }
    let an = ints.last().unwrap().abs();
    let divs = |n: &BigInt| -> Option<Vec<BigInt>> {
        let n = n.to_u64()?;
        if n > 10_000_000 {
            return None;
        }
        Some((1..=n).filter(|d| n % d == 0).map(BigInt::from).collect())
    };
    let ps = divs(&a0)?;
    let qs = divs(&an)?;
    for pn in &ps {
        for qd in &qs {
            for sign in [1i64, -1] {
                let cand = BigRational::new(pn * BigInt::from(sign), qd.clone());
                let s = Scalar::Rat(cand);
                if f.is_zero(&r.eval(&s)) {
                    return Some(Poly::linear(f, &s));
                }
            }
        }
    }
    None
}
