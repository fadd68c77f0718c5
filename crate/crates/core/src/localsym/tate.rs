use num_bigint::BigInt;
use num_traits::One;
use rand::Rng;
use serde::Serialize;

use super::classes::{square_classes, LocalClass, Place};
use super::hilbert::hilbert2;
use super::padic::Padic;
use super::residue::{hilbert_etale, LocalElem, LocalFieldDesc, ResidueField};
use super::SymbolValue;
use crate::error::{invalid, unsupported, Result};
use crate::etalealg::SquareClass;
use crate::exactpoly::zmod::{self, Zp};
use crate::exactpoly::{rat, rational_sqrt, BigRational, QuotientRing, RationalPoly};
use crate::kummerh1::{tate_dual_twist, CoclassC3, CoclassV4, QuadElem};

/// How a norm-one group modulo cubes looks locally.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum C3Side {
    /// The quadratic algebra splits: the group is `Q_p^x / cubes`.
    Split,
    /// Unramified quadratic field with p = 2 mod 3: cyclic of order 3.
    Unramified,
    /// The group is trivial.
    Trivial,
}

/// Local data for an order-3 module with `T = Q[sqrt D]` at a prime `p` not dividing 6.
///
/// The sigma side is `H^1(Q_p, M)`, norm-one elements of `T' = Q[sqrt(-3D)]`;
/// the tau side is `H^1(Q_p, M')`, norm-one elements of T. Both are modelled
/// by `LocalElem`s over `F_p` (split side) or `F_p[t]/(t^2 + 3)` (unramified side),
/// where t is the image of `sqrt(-3)`.
#[derive(Clone, Debug)]
pub struct C3Local {
    pub p: u64,
    pub d: SquareClass,
    pub sigma_side: C3Side,
    pub tau_side: C3Side,
    fp: ResidueField,
    fq: Option<ResidueField>,
    /// `sqrt(d') = sqrt(-3) sqrt(D) / k`
    k: BigRational,
    s3: Option<Padic>,
    s_d: Option<Padic>,
    c_d: Option<Padic>,
}

/// A local class of `H^1(Q_p, M)` for an order-3 module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct C3LocalClass {
    pub side: C3Side,
    pub v: u64,
    pub unit: u64,
    pub rep: LocalElem,
}

impl C3Local {
    pub fn new(p: u64, d: &SquareClass) -> Result<Self> {
        if !super::classes::is_prime_u64(p) {
            return invalid(format!("{p} is not prime"));
        }
        if p == 2 || p == 3 {
            return unsupported(format!("the cubic pairing at p = {p} is wild"));
        }
        let dr = d.rep_rational();
        let twist = tate_dual_twist(d);
        let k = rational_sqrt(&(rat(-3) * &dr / twist.rep_rational())).expect("-3D / d' is a square");
        let fp = ResidueField::with_modulus(p, vec![0, 1])?;
        let pd = Padic::from_rational(&dr, p);
        let s_d = pd.sqrt();
        let s3 = Padic::from_int(-3, p).sqrt();
        let mut c_d = None;
        let mut fq = None;
        let (sigma_side, tau_side) = if p % 3 == 1 {
            if s_d.is_some() {
                (C3Side::Split, C3Side::Split)
            } else {
                (C3Side::Trivial, C3Side::Trivial)
            }
        } else {
            fq = Some(ResidueField::with_modulus(p, vec![3, 0, 1])?);
            if s_d.is_some() {
                (C3Side::Unramified, C3Side::Split)
            } else {
                c_d = pd.mul(&Padic::from_rational(&(-rat(1) / rat(3)), p)).sqrt();
                if c_d.is_some() {
                    (C3Side::Split, C3Side::Unramified)
                } else {
                    (C3Side::Trivial, C3Side::Trivial)
                }
            }
        };
        Ok(C3Local { p, d: d.clone(), sigma_side, tau_side, fp, fq, k, s3, s_d, c_d })
    }

    fn field(&self, side: C3Side) -> &ResidueField {
        match side {
            C3Side::Unramified => self.fq.as_ref().unwrap(),
            _ => &self.fp,
        }
    }

    fn kp(&self) -> Padic {
        Padic::from_rational(&self.k, self.p)
    }

    /// Image of `sqrt(d')` in `Q_p` when the sigma side is split.
    fn s_twist(&self) -> Padic {
        let kinv = self.kp().inv().unwrap();
        match self.tau_side {
            C3Side::Split => self.s3.as_ref().unwrap().mul(self.s_d.as_ref().unwrap()).mul(&kinv),
            _ => Padic::from_int(-3, self.p).mul(self.c_d.as_ref().unwrap()).mul(&kinv),
        }
    }

    fn split_elem(&self, x: &Padic) -> Result<LocalElem> {
        match x.v {
            None => invalid("element vanishes locally"),
            Some(v) => Ok(LocalElem { v, residue: vec![x.unit_residue()] }),
        }
    }

    /// `x + y c t` in the unramified model.
    fn unram_elem(&self, x: &BigRational, y: &BigRational, c: &Padic) -> Result<LocalElem> {
        let xp = Padic::from_rational(x, self.p);
        let yp = Padic::from_rational(y, self.p).mul(c);
        let v = match (xp.v, yp.v) {
            (None, None) => return invalid("element vanishes locally"),
            (Some(a), None) | (None, Some(a)) => a,
            (Some(a), Some(b)) => a.min(b),
        };
        let coord = |z: &Padic| if z.v == Some(v) { z.unit_residue() } else { 0 };
        Ok(LocalElem { v, residue: zmod::trim(vec![coord(&xp), coord(&yp)]) })
    }

    fn localize_side(&self, side: C3Side, q: &QuadElem, s: impl Fn() -> Padic, c: impl Fn() -> Padic) -> Result<LocalElem> {
        match side {
            C3Side::Trivial => Ok(LocalElem::unit(vec![1])),
            C3Side::Split => {
                let z = Padic::from_rational(&q.x, self.p).add(&Padic::from_rational(&q.y, self.p).mul(&s()));
                self.split_elem(&z)
            }
            C3Side::Unramified => self.unram_elem(&q.x, &q.y, &c()),
        }
    }

    /// The local image of a global class of `H^1(Q, M)`.
    pub fn localize_sigma(&self, cc: &CoclassC3) -> Result<LocalElem> {
        if cc.d != self.d {
            return invalid("module class differs from the local setup");
        }
        let c = || self.s_d.as_ref().unwrap().mul(&self.kp().inv().unwrap());
        self.localize_side(self.sigma_side, &cc.delta, || self.s_twist(), c)
    }

    /// The local image of a global class of `H^1(Q, M')`, given as a class for the twisted module.
    pub fn localize_tau(&self, cc: &CoclassC3) -> Result<LocalElem> {
        if cc.d != tate_dual_twist(&self.d) {
            return invalid("dual class must be for the twisted module");
        }
        if cc.delta.disc != self.d {
            return invalid("dual delta must lie in Q[sqrt D]");
        }
        self.localize_side(self.tau_side, &cc.delta, || self.s_d.clone().unwrap(), || self.c_d.clone().unwrap())
    }

    fn side_class(&self, side: C3Side, e: &LocalElem) -> Result<(u64, u64)> {
        match side {
            C3Side::Trivial => Ok((0, 0)),
            C3Side::Split => e.class(3, &self.fp),
            C3Side::Unramified => {
                let k = self.fq.as_ref().unwrap();
                let l = k.dlog(&e.residue)?;
                if l % (self.p - 1) != 0 {
                    return invalid("element is not of norm one");
                }
                Ok((0, (l / (self.p - 1)) % 3))
            }
        }
    }

    fn side_reps(&self, side: C3Side) -> Vec<C3LocalClass> {
        let mut out = Vec::new();
        match side {
            C3Side::Trivial => out.push(C3LocalClass { side, v: 0, unit: 0, rep: LocalElem::unit(vec![1]) }),
            C3Side::Split => {
                let units = num_integer::gcd(3, self.p - 1);
                for v in 0..3 {
                    for u in 0..units {
                        let r = self.fp.pow(self.fp.generator(), u);
                        out.push(C3LocalClass { side, v, unit: u, rep: LocalElem { v: v as i64, residue: r } });
                    }
                }
            }
            C3Side::Unramified => {
                let k = self.fq.as_ref().unwrap();
                let h = k.pow(k.generator(), self.p - 1);
                for i in 0..3 {
                    out.push(C3LocalClass { side, v: 0, unit: i, rep: LocalElem::unit(k.pow(&h, i)) });
                }
            }
        }
        out
    }

    pub fn sigma_classes(&self) -> Vec<C3LocalClass> {
        self.side_reps(self.sigma_side)
    }

    pub fn tau_classes(&self) -> Vec<C3LocalClass> {
        self.side_reps(self.tau_side)
    }

    pub fn sigma_class(&self, e: &LocalElem) -> Result<C3LocalClass> {
        let (v, unit) = self.side_class(self.sigma_side, e)?;
        Ok(self.sigma_classes().into_iter().find(|c| c.v == v && c.unit == unit).unwrap())
    }

    pub fn tau_class(&self, e: &LocalElem) -> Result<C3LocalClass> {
        let (v, unit) = self.side_class(self.tau_side, e)?;
        Ok(self.tau_classes().into_iter().find(|c| c.v == v && c.unit == unit).unwrap())
    }

    pub fn mul_sigma(&self, a: &LocalElem, b: &LocalElem) -> LocalElem {
        a.mul(b, self.field(self.sigma_side))
    }

    pub fn mul_tau(&self, a: &LocalElem, b: &LocalElem) -> LocalElem {
        a.mul(b, self.field(self.tau_side))
    }

    /// A random cube on the given side, for checking independence of representatives.
    fn random_cube<R: Rng>(&self, side: C3Side, rng: &mut R) -> LocalElem {
        let k = self.field(side);
        let c = match side {
            C3Side::Trivial => return LocalElem::unit(vec![1]),
            C3Side::Split => LocalElem { v: rng.gen_range(-2..=2), residue: k.pow(k.generator(), rng.gen_range(0..self.p - 1)) },
            C3Side::Unramified => {
                let h = k.pow(k.generator(), self.p - 1);
                LocalElem::unit(k.pow(&h, rng.gen_range(0..self.p + 1)))
            }
        };
        c.pow(3, k)
    }

    /// `<sigma, tau>` as the Hilbert symbol on `E = T (x) Q_p(sqrt(-3))`, each factor's
    /// symbol measured against its image of `zeta_3 = (-1 + sqrt(-3)) / 2`.
    pub fn pair(&self, sigma: &LocalElem, tau: &LocalElem) -> Result<SymbolValue> {
        let p = self.p;
        let half = (p + 1) / 2;
        match (self.sigma_side, self.tau_side) {
            (C3Side::Split, C3Side::Split) => {
                let f = LocalFieldDesc::with_residue(self.fp.clone(), 1);
                let s3 = self.s3.as_ref().unwrap().unit_residue();
                let (mut fs, mut a, mut b, mut z) = (vec![], vec![], vec![], vec![]);
                for ed in [1i64, -1] {
                    for e3 in [1i64, -1] {
                        fs.push(f.clone());
                        a.push(sigma.pow(ed * e3, &self.fp));
                        b.push(tau.pow(ed, &self.fp));
                        let t = if e3 == 1 { s3 } else { p - s3 };
                        z.push(vec![(p - 1 + t) % p * half % p]);
                    }
                }
                hilbert_etale(&fs, &a, &b, 3, Some(&z))
            }
            (C3Side::Unramified, C3Side::Split) | (C3Side::Split, C3Side::Unramified) => {
                let k = self.fq.as_ref().unwrap();
                let f = LocalFieldDesc::with_residue(k.clone(), 1);
                let zeta: Zp = vec![(p - 1) * half % p, half];
                let sigma_unram = self.sigma_side == C3Side::Unramified;
                let (mut a, mut b) = (vec![], vec![]);
                for e in [1i64, -1] {
                    let (un, sp) = if sigma_unram { (sigma, tau) } else { (tau, sigma) };
                    let un_img = if e == 1 { un.clone() } else { LocalElem { v: un.v, residue: k.pow(&un.residue, p) } };
                    let sp_img = LocalElem { v: sp.v * e, residue: k.pow_signed(&k.reduce(&sp.residue), e) };
                    if sigma_unram {
                        a.push(un_img);
                        b.push(sp_img);
                    } else {
                        a.push(sp_img);
                        b.push(un_img);
                    }
                }
                hilbert_etale(&[f.clone(), f], &a, &b, 3, Some(&[zeta.clone(), zeta]))
            }
            _ => Ok(SymbolValue::one(3)),
        }
    }

    pub fn report<R: Rng>(&self, rng: &mut R) -> Result<PairingReport> {
        let rows = self.sigma_classes();
        let cols = self.tau_classes();
        let rs: Vec<LocalElem> = rows.iter().map(|c| c.rep.clone()).collect();
        let cs: Vec<LocalElem> = cols.iter().map(|c| c.rep.clone()).collect();
        let pair = |a: &LocalElem, b: &LocalElem| self.pair(a, b);
        let matrix = pairing_matrix(&rs, &cs, &pair)?;
        let mut bilinear = true;
        for (i, a) in rs.iter().enumerate() {
            for (j, b) in rs.iter().enumerate() {
                let ab = self.mul_sigma(a, b);
                for (l, t) in cs.iter().enumerate() {
                    bilinear &= self.pair(&ab, t)? == matrix[i][l].mul(&matrix[j][l]);
                }
            }
        }
        for (i, s) in rs.iter().enumerate() {
            for (j, a) in cs.iter().enumerate() {
                for (l, b) in cs.iter().enumerate() {
                    bilinear &= self.pair(s, &self.mul_tau(a, b))? == matrix[i][j].mul(&matrix[i][l]);
                }
            }
        }
        let mut well_defined = true;
        for (i, s) in rs.iter().enumerate() {
            for (j, t) in cs.iter().enumerate() {
                let s2 = self.mul_sigma(s, &self.random_cube(self.sigma_side, rng));
                let t2 = self.mul_tau(t, &self.random_cube(self.tau_side, rng));
                well_defined &= self.pair(&s2, &t2)? == matrix[i][j];
            }
        }
        Ok(PairingReport::new(matrix, bilinear, well_defined))
    }
}

/// The local pairing `H^1(Q_p, M) x H^1(Q_p, M') -> mu_3` on global data.
pub fn tate_pair_c3(p: u64, sigma: &CoclassC3, tau: &CoclassC3) -> Result<SymbolValue> {
    let loc = C3Local::new(p, &sigma.d)?;
    loc.pair(&loc.localize_sigma(sigma)?, &loc.localize_tau(tau)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct PairingReport {
    pub rows: usize,
    pub cols: usize,
    pub matrix: Vec<Vec<SymbolValue>>,
    pub bilinear: bool,
    pub nondegenerate: bool,
    pub well_defined: bool,
}

impl PairingReport {
    /// Row 0 and column 0 must be the trivial classes.
    fn new(matrix: Vec<Vec<SymbolValue>>, bilinear: bool, well_defined: bool) -> Self {
        let rows = matrix.len();
        let cols = matrix.first().map_or(0, |r| r.len());
        let row_ok = (1..rows).all(|i| matrix[i].iter().any(|s| !s.is_one()));
        let col_ok = (1..cols).all(|j| matrix.iter().any(|r| !r[j].is_one()));
        let nondegenerate = rows == cols && row_ok && col_ok;
        PairingReport { rows, cols, matrix, bilinear, nondegenerate, well_defined }
    }

    pub fn passed(&self) -> bool {
        self.bilinear && self.nondegenerate && self.well_defined
    }
}

fn pairing_matrix<A, B>(rows: &[A], cols: &[B], pair: &dyn Fn(&A, &B) -> Result<SymbolValue>) -> Result<Vec<Vec<SymbolValue>>> {
    rows.iter().map(|a| cols.iter().map(|b| pair(a, b)).collect()).collect()
}

/// A local class for `C2 x C2` with split R: square classes `(a1, a2, a3)` with trivial product.
pub type V4LocalClass = [LocalClass; 3];

/// All classes of `H^1(Q_v, C2 x C2)` for split R; the trivial class comes first.
pub fn v4_split_classes(place: Place) -> Result<Vec<V4LocalClass>> {
    let sq = square_classes(place)?;
    let mut out = Vec::new();
    for a in &sq {
        for b in &sq {
            out.push([*a, *b, a.mul(b)?]);
        }
    }
    let one = LocalClass::one(place, 2);
    out.sort_by_key(|c| (c[0] != one || c[1] != one, c[0], c[1]));
    Ok(out)
}

/// `<sigma, tau>` for split R: the product of the Hilbert symbols of the coordinates.
pub fn tate_pair_v4_split(place: Place, sigma: &[BigRational; 3], tau: &[BigRational; 3]) -> Result<SymbolValue> {
    for t in [sigma, tau] {
        let n = LocalClass::from_rational(&(&t[0] * &t[1] * &t[2]), place, 2)?;
        if !n.is_trivial() {
            return invalid("coordinates must have square product");
        }
    }
    let mut acc = SymbolValue::one(2);
    for i in 0..3 {
        acc = acc.mul(&hilbert2(&sigma[i], &tau[i], place)?);
    }
    Ok(acc)
}

fn class_reps(c: &V4LocalClass) -> [BigRational; 3] {
    [c[0].rep_rational(), c[1].rep_rational(), c[2].rep_rational()]
}

pub fn v4_split_report<R: Rng>(place: Place, rng: &mut R) -> Result<PairingReport> {
    let classes = v4_split_classes(place)?;
    let reps: Vec<[BigRational; 3]> = classes.iter().map(class_reps).collect();
    let pair = |a: &[BigRational; 3], b: &[BigRational; 3]| tate_pair_v4_split(place, a, b);
    let matrix = pairing_matrix(&reps, &reps, &pair)?;
    let mul = |a: &[BigRational; 3], b: &[BigRational; 3]| [&a[0] * &b[0], &a[1] * &b[1], &a[2] * &b[2]];
    let mut bilinear = true;
    for (i, a) in reps.iter().enumerate() {
        for (j, b) in reps.iter().enumerate() {
            let ab = mul(a, b);
            for (l, t) in reps.iter().enumerate() {
                bilinear &= pair(&ab, t)? == matrix[i][l].mul(&matrix[j][l]);
                bilinear &= pair(t, &ab)? == matrix[l][i].mul(&matrix[l][j]);
            }
        }
    }
    let mut well_defined = true;
    let mut square = || {
        let s1 = rat(rng.gen_range(1..=12)) / rat(rng.gen_range(1..=5));
        let s2 = rat(rng.gen_range(-12..=-1)) / rat(rng.gen_range(1..=5));
        let s3 = BigRational::one() / (&s1 * &s2);
        [&s1 * &s1, &s2 * &s2, &s3 * &s3]
    };
    for (i, a) in reps.iter().enumerate() {
        for (j, b) in reps.iter().enumerate() {
            well_defined &= pair(&mul(a, &square()), &mul(b, &square()))? == matrix[i][j];
        }
    }
    Ok(PairingReport::new(matrix, bilinear, well_defined))
}

/// The simple p-adic roots of a rational polynomial that splits into distinct linear factors mod p.
fn padic_roots(phi: &RationalPoly, p: u64) -> Result<Vec<Padic>> {
    let eval = |x: &Padic, f: &RationalPoly| {
        f.coeffs().iter().rev().fold(Padic::zero(p), |acc, c| acc.mul(x).add(&Padic::from_rational(c, p)))
    };
    let dphi = phi.derivative();
    let mut out = Vec::new();
    for r in 0..p {
        let x = Padic::from_int(r as i64, p);
        let fx = eval(&x, phi);
        if fx.v.map_or(false, |v| v < 1) {
            continue;
        }
        let mut x = x;
        let d = eval(&x, &dphi);
        if d.v != Some(0) {
            return unsupported(format!("R is not unramified at p = {p}"));
        }
        for _ in 0..8 {
            let fx = eval(&x, phi);
            if fx.is_zero() {
                break;
            }
            x = x.add(&fx.mul(&eval(&x, &dphi).inv().unwrap()).neg());
        }
        out.push(x);
    }
    if out.len() != phi.degree() {
        return unsupported(format!("R is not split at p = {p}"));
    }
    Ok(out)
}

/// Coordinates of a V4 class in `R (x) Q_p = Q_p^3`, as square classes.
pub fn localize_v4(cc: &CoclassV4, p: u64) -> Result<V4LocalClass> {
    if p == 2 {
        return unsupported("localizing R at p = 2 is not supported");
    }
    let mut coords = Vec::new();
    for (phi, d) in cc.r.factors().iter().zip(&cc.delta) {
        let phi_int = RationalPoly::from_bigints(&phi.primitive_integer());
        if phi.degree() == 1 {
            let root = -phi.coeff(0) / phi.coeff(1);
            coords.push(Padic::from_rational(&d.eval(&root), p));
            continue;
        }
        let ring = QuotientRing::new(phi);
        let d = ring.reduce(d);
        for root in padic_roots(&phi_int, p)? {
            let z = d.coeffs().iter().rev().fold(Padic::zero(p), |acc, c| acc.mul(&root).add(&Padic::from_rational(c, p)));
            coords.push(z);
        }
    }
    let mut out = Vec::new();
    for z in coords {
        let v = z.v.ok_or_else(|| crate::Error::InvalidInput("coordinate vanishes locally".into()))?;
        let q = BigRational::from_integer(BigInt::from(z.unit_residue())) * rat(p as i64).pow(v as i32);
        out.push(LocalClass::from_rational(&q, Place::Finite(p), 2)?);
    }
    Ok([out[0], out[1], out[2]])
}

/// `<sigma, tau>` for two V4 classes sharing an R that splits at p.
pub fn tate_pair_v4(p: u64, sigma: &CoclassV4, tau: &CoclassV4) -> Result<SymbolValue> {
    if sigma.r != tau.r {
        return invalid("both classes must share the cubic algebra R");
    }
    let a = localize_v4(sigma, p)?;
    let b = localize_v4(tau, p)?;
    tate_pair_v4_split(Place::Finite(p), &class_reps(&a), &class_reps(&b))
}

/// The alternating form on `C2 x C2 = F_2^2` identifying the module with its dual.
pub fn epsilon(x: [u8; 2], y: [u8; 2]) -> u8 {
    (x[0] * y[1] + x[1] * y[0]) % 2
}

/// Local modules with enumerable `H^1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalModule {
    C2,
    Mu3,
    C3(SquareClass),
    V4Split,
}

impl LocalModule {
    pub fn parse(s: &str, d: Option<&SquareClass>) -> Result<Self> {
        match (s, d) {
            ("c2", _) => Ok(LocalModule::C2),
            ("mu3", _) => Ok(LocalModule::Mu3),
            ("c3", Some(d)) => Ok(LocalModule::C3(d.clone())),
            ("c3", None) => invalid("module c3 needs D"),
            ("v4", _) | ("v4-split", _) => Ok(LocalModule::V4Split),
            _ => invalid(format!("unknown module '{s}'")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LocalCoclass {
    C2 { class: LocalClass },
    C3 { class: C3LocalClass },
    V4 { class: V4LocalClass },
}

pub fn enumerate_h1_local(module: &LocalModule, place: Place) -> Result<Vec<LocalCoclass>> {
    let finite = || match place {
        Place::Finite(p) => Ok(p),
        Place::Real => unsupported("only finite places are supported for this module"),
    };
    Ok(match module {
        LocalModule::C2 => square_classes(place)?.into_iter().map(|class| LocalCoclass::C2 { class }).collect(),
        LocalModule::Mu3 => {
            let loc = C3Local::new(finite()?, &SquareClass::from_int(-3)?)?;
            loc.sigma_classes().into_iter().map(|class| LocalCoclass::C3 { class }).collect()
        }
        LocalModule::C3(d) => {
            let loc = C3Local::new(finite()?, d)?;
            loc.sigma_classes().into_iter().map(|class| LocalCoclass::C3 { class }).collect()
        }
        LocalModule::V4Split => v4_split_classes(place)?.into_iter().map(|class| LocalCoclass::V4 { class }).collect(),
    })
}

/// A global class to be localized.
#[derive(Clone, Copy, Debug)]
pub enum GlobalCoclass<'a> {
    C2(&'a BigRational),
    C3(&'a CoclassC3),
    V4(&'a CoclassV4),
}

pub fn localize(g: GlobalCoclass<'_>, place: Place) -> Result<LocalCoclass> {
    let finite = || match place {
        Place::Finite(p) => Ok(p),
        Place::Real => unsupported("only finite places are supported for this module"),
    };
    Ok(match g {
        GlobalCoclass::C2(a) => LocalCoclass::C2 { class: LocalClass::from_rational(a, place, 2)? },
        GlobalCoclass::C3(cc) => {
            let loc = C3Local::new(finite()?, &cc.d)?;
            LocalCoclass::C3 { class: loc.sigma_class(&loc.localize_sigma(cc)?)? }
        }
        GlobalCoclass::V4(cc) => LocalCoclass::V4 { class: localize_v4(cc, finite()?)? },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::etalealg::EtaleAlgebra;
    use crate::exactpoly::frac;
    use crate::kummerh1::random_norm_one;
    use rand::SeedableRng;

    fn cls(n: i64) -> SquareClass {
        SquareClass::from_int(n).unwrap()
    }

    fn h0(split: bool) -> usize {
        if split {
            3
        } else {
            1
        }
    }

    #[test]
    fn c3_counts_match_euler_characteristic() {
        // |H^1(M)| = |H^0(M)| |H^0(M')| for p not dividing 3
        for p in [5u64, 7, 11, 13, 17, 19] {
            for d in [1i64, -1, 2, -3, 5, 7, -7, 13, 6, -15] {
                let loc = C3Local::new(p, &cls(d)).unwrap();
                let t_split = Padic::from_int(d, p).is_square();
                let t2_split = Padic::from_int(-3 * d, p).is_square();
                let expect = h0(t_split) * h0(t2_split);
                assert_eq!(loc.sigma_classes().len(), expect, "p = {p}, D = {d}");
                assert_eq!(loc.tau_classes().len(), expect, "p = {p}, D = {d}");
            }
        }
    }

    #[test]
    fn c3_pairing_at_seven() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let loc = C3Local::new(7, &cls(1)).unwrap();
        let r = loc.report(&mut rng).unwrap();
        assert_eq!((r.rows, r.cols), (9, 9));
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn c3_pairings_nondegenerate() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(8);
        for (p, d) in [(5u64, 1i64), (5, -3), (11, 5), (11, 3), (13, 3), (7, 2), (13, -1), (7, 5)] {
            let r = C3Local::new(p, &cls(d)).unwrap().report(&mut rng).unwrap();
            assert!(r.passed(), "p = {p}, D = {d}: {r:?}");
        }
    }

    #[test]
    fn c3_localization_ignores_cubes() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(9);
        for (p, d) in [(7u64, 1i64), (7, 2), (5, -3), (5, 1), (11, 5), (13, -1)] {
            let loc = C3Local::new(p, &cls(d)).unwrap();
            let twist = tate_dual_twist(&cls(d));
            let mut seen = std::collections::BTreeSet::new();
            for _ in 0..12 {
                let a = CoclassC3::new(cls(d), random_norm_one(&twist, &mut rng)).unwrap();
                let g = random_norm_one(&twist, &mut rng);
                let cube = g.mul(&g).mul(&g);
                let b = CoclassC3::new(cls(d), a.delta.mul(&cube)).unwrap();
                let ca = loc.sigma_class(&loc.localize_sigma(&a).unwrap()).unwrap();
                let cb = loc.sigma_class(&loc.localize_sigma(&b).unwrap()).unwrap();
                assert_eq!(ca, cb);
                seen.insert((ca.v, ca.unit));
                let t = CoclassC3::new(twist.clone(), random_norm_one(&cls(d), &mut rng)).unwrap();
                let t3 = CoclassC3::new(twist.clone(), t.delta.mul(&cube_of(&random_norm_one(&cls(d), &mut rng)))).unwrap();
                let x = tate_pair_c3(p, &a, &t).unwrap();
                assert_eq!(x, tate_pair_c3(p, &b, &t).unwrap());
                assert_eq!(x, tate_pair_c3(p, &a, &t3).unwrap());
            }
            assert!(seen.len() <= loc.sigma_classes().len());
        }
    }

    fn cube_of(q: &QuadElem) -> QuadElem {
        q.mul(q).mul(q)
    }

    #[test]
    fn c3_example_inert() {
        let cc = CoclassC3::new(cls(5), QuadElem::new(cls(-15), frac(1, 4), frac(1, 4))).unwrap();
        match localize(GlobalCoclass::C3(&cc), Place::Finite(7)).unwrap() {
            LocalCoclass::C3 { class } => assert_eq!(class.side, C3Side::Trivial),
            other => panic!("{other:?}"),
        }
        assert!(C3Local::new(3, &cls(5)).unwrap_err().is_unsupported());
    }

    #[test]
    fn enumerations() {
        let n = |m: LocalModule, p: u64| enumerate_h1_local(&m, Place::Finite(p)).unwrap().len();
        assert_eq!(n(LocalModule::Mu3, 5), 3);
        assert_eq!(n(LocalModule::Mu3, 7), 9);
        assert_eq!(n(LocalModule::C2, 5), 4);
        assert_eq!(n(LocalModule::V4Split, 5), 16);
        assert_eq!(n(LocalModule::V4Split, 2), 64);
        assert_eq!(enumerate_h1_local(&LocalModule::C2, Place::Real).unwrap().len(), 2);
    }

    #[test]
    fn v4_pairing_split() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        for p in [3u64, 5, 7] {
            let r = v4_split_report(Place::Finite(p), &mut rng).unwrap();
            assert_eq!(r.rows, 16);
            assert!(r.passed(), "p = {p}");
        }
        let s = [rat(2), frac(1, 2), rat(1)];
        let t = [rat(5), rat(1), frac(1, 5)];
        assert_eq!(tate_pair_v4_split(Place::Finite(5), &s, &t).unwrap().to_string(), "-1");
        assert!(tate_pair_v4_split(Place::Finite(5), &[rat(2), rat(1), rat(1)], &t).is_err());
    }

    #[test]
    fn v4_global_localization() {
        let r = EtaleAlgebra::split(3);
        let d = |a: BigRational, b: BigRational| {
            let c = BigRational::one() / (&a * &b);
            CoclassV4::new(r.clone(), vec![RationalPoly::constant(a), RationalPoly::constant(b), RationalPoly::constant(c)]).unwrap()
        };
        let s = d(rat(2), frac(1, 2));
        let t = d(rat(5), rat(1));
        assert_eq!(tate_pair_v4(5, &s, &t).unwrap().to_string(), "-1");
        let t2 = d(rat(5 * 9), rat(4));
        assert_eq!(tate_pair_v4(5, &s, &t2).unwrap(), tate_pair_v4(5, &s, &t).unwrap());
        // R = Q x Q(sqrt 2) splits at 7
        let r2 = EtaleAlgebra::from_poly(&RationalPoly::from_ints(&[0, -2, 0, 1])).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(1);
        let cc = CoclassV4::new(r2.clone(), crate::kummerh1::random_v4_delta(&r2, &mut rng)).unwrap();
        let loc = localize_v4(&cc, 7).unwrap();
        assert!(loc[0].mul(&loc[1]).unwrap().mul(&loc[2]).unwrap().is_trivial());
        assert!(localize_v4(&cc, 5).unwrap_err().is_unsupported());
    }

    #[test]
    fn epsilon_form() {
        let vs = [[0u8, 0], [1, 0], [0, 1], [1, 1]];
        for x in vs {
            assert_eq!(epsilon(x, x), 0);
            for y in vs {
                assert_eq!(epsilon(x, y), epsilon(y, x));
            }
            if x != [0, 0] {
                assert!(vs.iter().any(|&y| epsilon(x, y) == 1));
            }
        }
    }
}
