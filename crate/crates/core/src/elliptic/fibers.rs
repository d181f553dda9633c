use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ratfun::RatFun;

use super::Curve;

/// A valuation that may be infinite (`None`, the valuation of 0).
pub type Valuation = Option<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub c4: RatFun,
    pub c6: RatFun,
    pub delta: RatFun,
}

/// `c4 = -48 A`, `c6 = -864 B`, `delta = -16 (4 A^3 + 27 B^2)`.
pub fn invariants(curve: &Curve) -> Invariants {
    let f = curve.field();
    let (a, b) = (curve.a(), curve.b());
    let inner = &(&(a * a) * a).scale(&f.from_i64(4)) + &(b * b).scale(&f.from_i64(27));
    Invariants {
        c4: a.scale(&f.from_i64(-48)),
        c6: b.scale(&f.from_i64(-864)),
        delta: inner.scale(&f.from_i64(-16)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KodairaType {
    I0,
    I(u32),
    II,
    III,
    IV,
    I0Star,
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl KodairaType {
    /// Number of irreducible components of the fiber.
    pub fn component_count(&self) -> u32 {
        match self {
            KodairaType::I0 => 1,
            KodairaType::I(n) => *n,
            KodairaType::II => 1,
            KodairaType::III => 2,
            KodairaType::IV => 3,
            KodairaType::I0Star => 5,
            KodairaType::IStar(n) => n + 5,
            KodairaType::IVStar => 7,
            KodairaType::IIIStar => 8,
            KodairaType::IIStar => 9,
        }
    }

    /// Euler number of the fiber, equal to `v(delta)` of a minimal model in
    /// residue characteristic 0.
    pub fn euler_number(&self) -> u32 {
        match self {
            KodairaType::I0 => 0,
            KodairaType::I(n) => *n,
            KodairaType::II => 2,
            KodairaType::III => 3,
            KodairaType::IV => 4,
            KodairaType::I0Star => 6,
            KodairaType::IStar(n) => n + 6,
            KodairaType::IVStar => 8,
            KodairaType::IIIStar => 9,
            KodairaType::IIStar => 10,
        }
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::I0 => write!(f, "I0"),
            KodairaType::I(n) => write!(f, "I{n}"),
            KodairaType::II => write!(f, "II"),
            KodairaType::III => write!(f, "III"),
            KodairaType::IV => write!(f, "IV"),
            KodairaType::I0Star => write!(f, "I0*"),
            KodairaType::IStar(n) => write!(f, "I{n}*"),
            KodairaType::IVStar => write!(f, "IV*"),
            KodairaType::IIIStar => write!(f, "III*"),
            KodairaType::IIStar => write!(f, "II*"),
        }
    }
}

impl std::str::FromStr for KodairaType {
    type Err = Error;
    fn from_str(s: &str) -> Result<KodairaType> {
        let t = s.trim();
        let bad = || Error::Invalid(format!("unknown Kodaira type {t:?}"));
        Ok(match t {
            "II" => KodairaType::II,
            "III" => KodairaType::III,
            "IV" => KodairaType::IV,
            "I0*" => KodairaType::I0Star,
            "IV*" => KodairaType::IVStar,
            "III*" => KodairaType::IIIStar,
            "II*" => KodairaType::IIStar,
            _ => {
                let rest = t.strip_prefix('I').ok_or_else(bad)?;
                match rest.strip_suffix('*') {
                    Some(n) => KodairaType::IStar(n.parse().map_err(|_| bad())?),
                    None => match rest.parse().map_err(|_| bad())? {
                        0 => KodairaType::I0,
                        n => KodairaType::I(n),
                    },
                }
            }
        })
    }
}

fn fmt_val(v: Valuation) -> String {
    v.map_or_else(|| "inf".to_string(), |v| v.to_string())
}

fn at_least(v: Valuation, k: u32) -> bool {
    v.is_none_or(|v| v >= k)
}

/// Kodaira type from the valuations of `c4`, `c6`, `delta` of a minimal
/// model, residue characteristic 0.
pub fn kodaira_classify(v_c4: Valuation, v_c6: Valuation, v_delta: u32) -> Result<KodairaType> {
    if at_least(v_c4, 4) && v_delta >= 12 {
        return Err(Error::NotMinimal);
    }
    let inconsistent = || Error::InconsistentValuations {
        v_c4: fmt_val(v_c4),
        v_c6: fmt_val(v_c6),
        v_delta,
    };
    // 1728 delta = c4^3 - c6^2 forces v(delta) >= min(3 v4, 2 v6), with
    // equality when the two terms have different valuations.
    let t4 = v_c4.map(|v| 3 * v);
    let t6 = v_c6.map(|v| 2 * v);
    match (t4, t6) {
        (None, None) => return Err(inconsistent()),
        (Some(a), None) | (None, Some(a)) if a != v_delta => return Err(inconsistent()),
        (Some(a), Some(b)) if a != b && a.min(b) != v_delta => return Err(inconsistent()),
        (Some(a), Some(b)) if a == b && v_delta < a => return Err(inconsistent()),
        _ => {}
    }
    if v_delta == 0 {
        return Ok(KodairaType::I0);
    }
    if v_c4 == Some(0) {
        return Ok(KodairaType::I(v_delta));
    }
    let (v4, v6) = (v_c4, v_c6);
    let t = match v_delta {
        2 if v6 == Some(1) => KodairaType::II,
        3 if v4 == Some(1) => KodairaType::III,
        4 if v6 == Some(2) => KodairaType::IV,
        6 if at_least(v4, 2) && at_least(v6, 3) => KodairaType::I0Star,
        n if n > 6 && v4 == Some(2) && v6 == Some(3) => KodairaType::IStar(n - 6),
        8 if at_least(v4, 3) && v6 == Some(4) => KodairaType::IVStar,
        9 if v4 == Some(3) && at_least(v6, 5) => KodairaType::IIIStar,
        10 if at_least(v4, 4) && v6 == Some(5) => KodairaType::IIStar,
        _ => return Err(inconsistent()),
    };
    Ok(t)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FiberPlace {
    /// Monic squarefree block of the discriminant; stands for `deg` fibers.
    Block(Poly),
    Infinity,
}

impl fmt::Display for FiberPlace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberPlace::Block(b) => write!(f, "{b}"),
            FiberPlace::Infinity => write!(f, "inf"),
        }
    }
}

/// Valuations of a minimal model at a place and the resulting fiber type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberReport {
    pub place: FiberPlace,
    pub v_c4: Valuation,
    pub v_c6: Valuation,
    pub v_delta: u32,
    pub kodaira: KodairaType,
}

impl FiberReport {
    /// Geometric fibers covered by this report.
    pub fn count(&self) -> u64 {
        match &self.place {
            FiberPlace::Block(b) => b.deg0() as u64,
            FiberPlace::Infinity => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberSurvey {
    /// Bad fibers, finite blocks first then infinity.
    pub fibers: Vec<FiberReport>,
    /// Degree of the minimal discriminant: sum of `count * v_delta`.
    pub delta_degree: u64,
}

impl FiberSurvey {
    /// Twelve exactly for a rational elliptic surface.
    pub fn is_rational_surface(&self) -> bool {
        self.delta_degree == 12
    }

    pub fn types(&self) -> Vec<(KodairaType, u64)> {
        self.fibers.iter().map(|f| (f.kodaira, f.count())).collect()
    }

    pub fn rank(&self) -> Result<u32> {
        shioda_tate_rank(&self.types())
    }
}

fn minimalize(mut v4: Valuation, mut v6: Valuation, mut vd: u32) -> (Valuation, Valuation, u32) {
    while at_least(v4, 4) && at_least(v6, 6) && vd >= 12 {
        v4 = v4.map(|v| v - 4);
        v6 = v6.map(|v| v - 6);
        vd -= 12;
    }
    (v4, v6, vd)
}

/// Splits each block so that `poly`'s root multiplicity is constant on it.
fn split_uniform(
    blocks: Vec<(Poly, Vec<Valuation>)>,
    poly: &RatFun,
) -> Result<Vec<(Poly, Vec<Valuation>)>> {
    if poly.is_zero() {
        return Ok(blocks
            .into_iter()
            .map(|(b, mut v)| {
                v.push(None);
                (b, v)
            })
            .collect());
    }
    let factors = poly.num().squarefree_decomposition()?;
    let mut out = Vec::new();
    for (block, vals) in blocks {
        let mut rest = block;
        for (s, i) in &factors {
            let g = rest.gcd(s)?;
            if g.is_constant() {
                continue;
            }
            rest = rest.exact_div(&g);
            let mut v = vals.clone();
            v.push(Some(*i as u32));
            out.push((g, v));
        }
        if !rest.is_constant() {
            let mut v = vals;
            v.push(Some(0));
            out.push((rest, v));
        }
    }
    Ok(out)
}

/// All bad fibers of the elliptic surface of a curve with polynomial
/// coefficients, including the place at infinity.
pub fn bad_fibers(curve: &Curve) -> Result<FiberSurvey> {
    if !curve.a().is_polynomial() || !curve.b().is_polynomial() {
        return Err(Error::Invalid(
            "bad_fibers needs A and B polynomial in z".into(),
        ));
    }
    let inv = invariants(curve);
    let mut fibers = Vec::new();

    // finite places: blocks of the discriminant, refined so c4 and c6 have a
    // single valuation on each block
    let mut blocks = Vec::new();
    for (s, e) in inv.delta.num().squarefree_decomposition()? {
        blocks.push((s, vec![Some(e as u32)]));
    }
    let blocks = split_uniform(split_uniform(blocks, &inv.c4)?, &inv.c6)?;
    for (block, vals) in blocks {
        let vd = vals[0].expect("delta is nonzero");
        let (v4, v6, vd) = minimalize(vals[1], vals[2], vd);
        if vd == 0 {
            continue;
        }
        fibers.push(FiberReport {
            kodaira: kodaira_classify(v4, v6, vd)?,
            place: FiberPlace::Block(block),
            v_c4: v4,
            v_c6: v6,
            v_delta: vd,
        });
    }
    fibers.sort_by(|a, b| a.place.cmp(&b.place));

    // infinity: w = 1/z and (x, y) -> (w^-2k x, w^-3k y), least k making
    // A and B integral at w = 0
    let deg_a = curve.a().num().degree().map(|d| d as u32);
    let deg_b = curve.b().num().degree().map(|d| d as u32);
    let k = deg_a
        .map_or(0, |d| d.div_ceil(4))
        .max(deg_b.map_or(0, |d| d.div_ceil(6)));
    let v4 = deg_a.map(|d| 4 * k - d);
    let v6 = deg_b.map(|d| 6 * k - d);
    let vd = 12 * k - inv.delta.num().deg0() as u32;
    let (v4, v6, vd) = minimalize(v4, v6, vd);
    if vd > 0 {
        fibers.push(FiberReport {
            kodaira: kodaira_classify(v4, v6, vd)?,
            place: FiberPlace::Infinity,
            v_c4: v4,
            v_c6: v6,
            v_delta: vd,
        });
    }

    let delta_degree = fibers.iter().map(|f| f.count() * f.v_delta as u64).sum();
    Ok(FiberSurvey {
        fibers,
        delta_degree,
    })
}

/// Mordell-Weil rank `8 - sum (m_v - 1)` of a rational elliptic surface,
/// from `(type, number of fibers)` pairs.
pub fn shioda_tate_rank(fibers: &[(KodairaType, u64)]) -> Result<u32> {
    let euler: u64 = fibers
        .iter()
        .map(|(t, c)| c * t.euler_number() as u64)
        .sum();
    if euler != 12 {
        return Err(Error::NotRationalSurface(euler as u32));
    }
    let correction: u64 = fibers
        .iter()
        .map(|(t, c)| c * (t.component_count() as u64 - 1))
        .sum();
    8u64.checked_sub(correction)
        .map(|r| r as u32)
        .ok_or_else(|| {
            Error::Invalid(format!(
                "fiber components exceed the rank bound ({correction} > 8)"
            ))
        })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeInfo {
    pub name: &'static str,
    pub rank: u32,
    pub minimal_height: BigRational,
}

/// Mordell-Weil lattice for the one configuration this crate knows:
/// three `I1` fibers and one `III*` give `A1^vee` (rank 1, minimal height 1/2).
pub fn mordell_weil_lattice(survey: &FiberSurvey) -> Option<LatticeInfo> {
    let mut i1 = 0;
    let mut iii_star = 0;
    for (t, c) in survey.types() {
        match t {
            KodairaType::I(1) => i1 += c,
            KodairaType::IIIStar => iii_star += c,
            _ => return None,
        }
    }
    (i1 == 3 && iii_star == 1).then(|| LatticeInfo {
        name: "A1^vee",
        rank: 1,
        minimal_height: BigRational::new(BigInt::one(), BigInt::from(2)),
    })
}

impl Serialize for FiberReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("FiberReport", 6)?;
        st.serialize_field("place", &self.place.to_string())?;
        st.serialize_field("count", &self.count())?;
        st.serialize_field("v_c4", &self.v_c4)?;
        st.serialize_field("v_c6", &self.v_c6)?;
        st.serialize_field("v_delta", &self.v_delta)?;
        st.serialize_field("type", &self.kodaira.to_string())?;
        st.end()
    }
}
