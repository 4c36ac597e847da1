//! Catalogue of the rings the detector and the face-lattice machinery work
//! over: face algebras `A_F`, the eight Novikov detection rings, power-series
//! rings, and the nested nerve rings `A⟨τ⟩`.
//!
//! Every flavor carries a total membership predicate on monomials and, for
//! the non-polynomial flavors, a leading-term rule that decides units.
//! Internally each flavor is reduced by a coordinate change to a standard
//! representative (series directions positive, series variable `y`, Laurent
//! or inner-Novikov variable `x`), so unit detection is implemented once per
//! structural kind and is substitution-equivariant by construction.

use crate::laurent::{LaurentPoly, Monomial, Sign};
use crate::square::Face;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Guaranteed-radius marker for a series whose stored terms are the complete
/// truth (no unknown tail).
pub const EXACT: i64 = i64::MAX / 4;

const NEG_INF: i64 = i64::MIN / 4;

/// One of the two indeterminates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    pub fn other(self) -> Axis {
        match self {
            Axis::X => Axis::Y,
            Axis::Y => Axis::X,
        }
    }
}

/// A ring from the paper's catalogue.
///
/// * `FullLaurent` — `Z[x,x⁻¹,y,y⁻¹]`.
/// * `FaceAlgebra(F)` — monoid algebra of the tangent cone of the square at
///   the face `F` (for example `A(v_br) = Z[x⁻¹,y]`).
/// * `CornerNovikov(sx,sy)` — `Z⟨⟨x^sx, y^sy⟩⟩ = Z[[x^sx,y^sy]][(xy)^∓]`.
/// * `EdgeNovikov(u, s)` — Laurent polynomials in the other variable,
///   Novikov in `u^s`, e.g. `EdgeNovikov(Y, +1) = Z[x,x⁻¹]⟨⟨y⟩⟩`.
/// * `CornerPowerSeries(sx,sy)` — `Z[[x^sx, y^sy]]`.
/// * `EdgePowerSeries(u, s)` — e.g. `Z[x,x⁻¹][[y]]`.
/// * `NovikovOverPower` — `Z⟨⟨t⟩⟩[[u]]` with `t` the Novikov variable.
/// * `NestedNovikov` — `Z⟨⟨t⟩⟩⟨⟨u⟩⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingFlavor {
    FullLaurent,
    FaceAlgebra(Face),
    CornerNovikov(Sign, Sign),
    EdgeNovikov(Axis, Sign),
    CornerPowerSeries(Sign, Sign),
    EdgePowerSeries(Axis, Sign),
    NovikovOverPower { nov: (Axis, Sign), pow_sign: Sign },
    NestedNovikov { inner: (Axis, Sign), outer_sign: Sign },
}

/// The structural kind after normalization, with the series direction along
/// positive `y` and the free (or inner Novikov) variable `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum StdKind {
    Laurent,
    FaceVertex,
    FaceEdge,
    FaceSquare,
    CornerNov,
    EdgeNov,
    CornerPow,
    EdgePow,
    NovPow,
    NovNov,
}

/// Outcome of the unit test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnitAnswer {
    Unit { leading: Monomial, sign: Sign },
    NotUnit(NotUnitReason),
}

impl UnitAnswer {
    pub fn is_unit(&self) -> bool {
        matches!(self, UnitAnswer::Unit { .. })
    }

    pub fn leading(&self) -> Option<Monomial> {
        match self {
            UnitAnswer::Unit { leading, .. } => Some(*leading),
            UnitAnswer::NotUnit(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NotUnitReason {
    Zero,
    /// No unique extremal support point under the flavor's order.
    NoUniqueLeadingTerm,
    /// The leading coefficient is not `±1`.
    LeadingCoeffNotPmOne,
    /// The extremal slice is not a single term.
    LeadingSliceNotMonomial,
    /// A power-series flavor requires valuation zero for units.
    PositiveValuation,
    /// Polynomial-flavor units must be single monomials.
    NotSingleMonomial,
    /// The candidate monomial's inverse is not a member of the ring.
    InverseNotMember,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlavorError {
    NotAnElement { flavor: RingFlavor, offending: Monomial },
    NotUnit(NotUnitReason),
    FlavorMismatch,
    WindowMismatch,
}

impl fmt::Display for FlavorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlavorError::NotAnElement { flavor, offending } => {
                write!(f, "monomial {} is not an element of {}", offending, flavor.name())
            }
            FlavorError::NotUnit(r) => write!(f, "not a unit: {:?}", r),
            FlavorError::FlavorMismatch => write!(f, "flavor mismatch"),
            FlavorError::WindowMismatch => write!(f, "window mismatch"),
        }
    }
}

impl std::error::Error for FlavorError {}

/// The eight rings of the finite-domination criterion, in canonical order:
/// the four corner rings (bl, br, tl, tr) followed by the four edge rings
/// (bottom, top, left, right).
pub fn detection_flavors() -> [RingFlavor; 8] {
    [
        RingFlavor::CornerNovikov(Sign::Pos, Sign::Pos),
        RingFlavor::CornerNovikov(Sign::Neg, Sign::Pos),
        RingFlavor::CornerNovikov(Sign::Pos, Sign::Neg),
        RingFlavor::CornerNovikov(Sign::Neg, Sign::Neg),
        RingFlavor::EdgeNovikov(Axis::Y, Sign::Pos),
        RingFlavor::EdgeNovikov(Axis::Y, Sign::Neg),
        RingFlavor::EdgeNovikov(Axis::X, Sign::Pos),
        RingFlavor::EdgeNovikov(Axis::X, Sign::Neg),
    ]
}

fn var_name(axis: Axis, sign: Sign) -> &'static str {
    match (axis, sign) {
        (Axis::X, Sign::Pos) => "x",
        (Axis::X, Sign::Neg) => "x^-1",
        (Axis::Y, Sign::Pos) => "y",
        (Axis::Y, Sign::Neg) => "y^-1",
    }
}

/// Vertex with tangent-cone directions `x^sx, y^sy`.
fn vertex_for(sx: Sign, sy: Sign) -> Face {
    match (sx, sy) {
        (Sign::Pos, Sign::Pos) => Face::Vbl,
        (Sign::Neg, Sign::Pos) => Face::Vbr,
        (Sign::Pos, Sign::Neg) => Face::Vtl,
        (Sign::Neg, Sign::Neg) => Face::Vtr,
    }
}

/// Edge whose tangent cone constrains `u^s ≥ 0` and leaves the other
/// variable free.
fn edge_for(u: Axis, s: Sign) -> Face {
    match (u, s) {
        (Axis::Y, Sign::Pos) => Face::Eb,
        (Axis::Y, Sign::Neg) => Face::Et,
        (Axis::X, Sign::Pos) => Face::El,
        (Axis::X, Sign::Neg) => Face::Er,
    }
}

impl RingFlavor {
    /// Canonical display / JSON name.
    pub fn name(&self) -> String {
        match *self {
            RingFlavor::FullLaurent => "Lxy".to_string(),
            RingFlavor::FaceAlgebra(f) => format!("A({})", f.label()),
            RingFlavor::CornerNovikov(sx, sy) => {
                format!("Nov({},{})", var_name(Axis::X, sx), var_name(Axis::Y, sy))
            }
            RingFlavor::EdgeNovikov(u, s) => match u {
                Axis::Y => format!("Lx.Nov({})", var_name(Axis::Y, s)),
                Axis::X => format!("Ly.Nov({})", var_name(Axis::X, s)),
            },
            RingFlavor::CornerPowerSeries(sx, sy) => {
                format!("A<{}>", vertex_for(sx, sy).label())
            }
            RingFlavor::EdgePowerSeries(u, s) => format!("A<{}>", edge_for(u, s).label()),
            RingFlavor::NovikovOverPower { nov, pow_sign } => {
                let (v, e) = vertex_edge_of_nested(nov, pow_sign);
                format!("A<{},{}>", v.label(), e.label())
            }
            RingFlavor::NestedNovikov { inner, outer_sign } => {
                let (v, e) = vertex_edge_of_nested(inner, outer_sign);
                format!("A<{},{},S>", v.label(), e.label())
            }
        }
    }

    /// Parses any of the canonical names, the face-algebra names `A(F)` and
    /// the nerve-flag names `A<...>` (`A<v,S>` and `A<e,S>` resolve to the
    /// corner and edge Novikov rings).
    pub fn parse(s: &str) -> Option<RingFlavor> {
        let all_fixed: &[RingFlavor] = &[
            RingFlavor::FullLaurent,
            RingFlavor::CornerNovikov(Sign::Pos, Sign::Pos),
            RingFlavor::CornerNovikov(Sign::Neg, Sign::Pos),
            RingFlavor::CornerNovikov(Sign::Pos, Sign::Neg),
            RingFlavor::CornerNovikov(Sign::Neg, Sign::Neg),
            RingFlavor::EdgeNovikov(Axis::Y, Sign::Pos),
            RingFlavor::EdgeNovikov(Axis::Y, Sign::Neg),
            RingFlavor::EdgeNovikov(Axis::X, Sign::Pos),
            RingFlavor::EdgeNovikov(Axis::X, Sign::Neg),
        ];
        for f in all_fixed {
            if f.name() == s {
                return Some(*f);
            }
        }
        for face in Face::nonempty() {
            let f = RingFlavor::FaceAlgebra(face);
            if f.name() == s {
                return Some(f);
            }
        }
        if let Some(inner) = s.strip_prefix("A<").and_then(|t| t.strip_suffix('>')) {
            return flavor_of_flag_labels(&inner.split(',').collect::<Vec<_>>());
        }
        None
    }

    /// Substitution carrying this flavor into its standard representative.
    fn normalizer(&self) -> (Sign, Sign, bool) {
        match *self {
            RingFlavor::FullLaurent => (Sign::Pos, Sign::Pos, false),
            RingFlavor::FaceAlgebra(f) => f.normalizer(),
            RingFlavor::CornerNovikov(sx, sy) | RingFlavor::CornerPowerSeries(sx, sy) => {
                (sx, sy, false)
            }
            RingFlavor::EdgeNovikov(u, s) | RingFlavor::EdgePowerSeries(u, s) => match u {
                Axis::Y => (Sign::Pos, s, false),
                Axis::X => (s, Sign::Pos, true),
            },
            RingFlavor::NovikovOverPower { nov: (t_ax, ts), pow_sign }
            | RingFlavor::NestedNovikov { inner: (t_ax, ts), outer_sign: pow_sign } => {
                match t_ax {
                    Axis::X => (ts, pow_sign, false),
                    Axis::Y => (pow_sign, ts, true),
                }
            }
        }
    }

    fn std_kind(&self) -> StdKind {
        match *self {
            RingFlavor::FullLaurent => StdKind::Laurent,
            RingFlavor::FaceAlgebra(f) => match f.dim() {
                0 => StdKind::FaceVertex,
                1 => StdKind::FaceEdge,
                _ => StdKind::FaceSquare,
            },
            RingFlavor::CornerNovikov(..) => StdKind::CornerNov,
            RingFlavor::EdgeNovikov(..) => StdKind::EdgeNov,
            RingFlavor::CornerPowerSeries(..) => StdKind::CornerPow,
            RingFlavor::EdgePowerSeries(..) => StdKind::EdgePow,
            RingFlavor::NovikovOverPower { .. } => StdKind::NovPow,
            RingFlavor::NestedNovikov { .. } => StdKind::NovNov,
        }
    }

    /// Maps a monomial into standard coordinates.
    fn to_std(&self, m: Monomial) -> Monomial {
        let (sx, sy, swap) = self.normalizer();
        m.substitute(sx, sy, swap)
    }

    /// Maps a monomial back from standard coordinates.
    fn from_std(&self, m: Monomial) -> Monomial {
        let (sx, sy, swap) = self.normalizer();
        if swap {
            m.substitute(sy, sx, true)
        } else {
            m.substitute(sx, sy, false)
        }
    }

    fn poly_to_std(&self, p: &LaurentPoly) -> LaurentPoly {
        let (sx, sy, swap) = self.normalizer();
        p.substitute(sx, sy, swap)
    }

    fn poly_from_std(&self, p: &LaurentPoly) -> LaurentPoly {
        let (sx, sy, swap) = self.normalizer();
        if swap {
            p.substitute(sy, sx, true)
        } else {
            p.substitute(sx, sy, false)
        }
    }

    /// Membership of `x^ex y^ey` in the ring.
    pub fn contains_monomial(&self, m: Monomial) -> bool {
        let s = self.to_std(m);
        match self.std_kind() {
            StdKind::Laurent
            | StdKind::FaceSquare
            | StdKind::CornerNov
            | StdKind::EdgeNov
            | StdKind::NovNov => true,
            StdKind::FaceVertex | StdKind::CornerPow => s.ex >= 0 && s.ey >= 0,
            StdKind::FaceEdge | StdKind::EdgePow | StdKind::NovPow => s.ey >= 0,
        }
    }

    pub fn contains_poly(&self, p: &LaurentPoly) -> Result<(), FlavorError> {
        for m in p.support() {
            if !self.contains_monomial(m) {
                return Err(FlavorError::NotAnElement { flavor: *self, offending: m });
            }
        }
        Ok(())
    }

    /// Decides whether the Laurent polynomial `p` is a unit of this ring.
    ///
    /// For region-restricted flavors, `p` must be an element (error
    /// otherwise); for Novikov flavors every Laurent polynomial qualifies.
    pub fn is_unit(&self, p: &LaurentPoly) -> Result<UnitAnswer, FlavorError> {
        match self.std_kind() {
            StdKind::FaceVertex | StdKind::FaceEdge | StdKind::CornerPow | StdKind::EdgePow
            | StdKind::NovPow => self.contains_poly(p)?,
            _ => {}
        }
        let std = self.poly_to_std(p);
        let ans = std_is_unit(self.std_kind(), &std);
        Ok(match ans {
            UnitAnswer::Unit { leading, sign } => {
                UnitAnswer::Unit { leading: self.from_std(leading), sign }
            }
            other => other,
        })
    }

    /// Truncated multiplicative inverse at the given window.
    ///
    /// The value is the geometric series `±m⁻¹ Σ_{t≥0} (−r)^t` for
    /// `p = ±m(1+r)`, computed by the equivalent triangular coefficient
    /// recursion and restricted to the window box.
    pub fn invert(&self, p: &LaurentPoly, window: i64) -> Result<TruncatedSeries, FlavorError> {
        let ans = self.is_unit(p)?;
        let (leading, sign) = match ans {
            UnitAnswer::Unit { leading, sign } => (leading, sign),
            UnitAnswer::NotUnit(r) => return Err(FlavorError::NotUnit(r)),
        };
        let std_p = self.poly_to_std(p);
        let std_m = self.to_std(leading);
        let kind = self.std_kind();
        let inv_std = std_invert(kind, &std_p, std_m, sign, window);
        let terms = self.poly_from_std(&inv_std.terms);
        Ok(TruncatedSeries {
            flavor: *self,
            window,
            guaranteed: inv_std.guaranteed,
            floor: inv_std.floor,
            t_range: inv_std.t_range,
            terms,
        })
    }

    /// Wraps an exact polynomial as a truncated series.
    pub fn series_from_poly(
        &self,
        p: &LaurentPoly,
        window: i64,
    ) -> Result<TruncatedSeries, FlavorError> {
        self.contains_poly(p)?;
        let std = self.poly_to_std(p);
        let clipped_std = std.clip_to_radius(window);
        let exact = clipped_std == std;
        let floor = poly_floor(&std);
        let t_range = poly_t_range(&std);
        Ok(TruncatedSeries {
            flavor: *self,
            window,
            guaranteed: if exact { EXACT } else { window },
            floor,
            t_range,
            terms: self.poly_from_std(&clipped_std),
        })
    }

    /// How a coordinate change `x ↦ x^sx, y ↦ y^sy` (then swap) transports
    /// this flavor: `p` is a unit of `self` iff `substitute(p)` is a unit of
    /// `self.substituted(...)`, with leading terms corresponding.
    pub fn substituted(&self, sx: Sign, sy: Sign, swap: bool) -> RingFlavor {
        let tw = |ax: Axis, s: Sign| -> (Axis, Sign) {
            let ns = match ax {
                Axis::X => if sx == Sign::Neg { s.flip() } else { s },
                Axis::Y => if sy == Sign::Neg { s.flip() } else { s },
            };
            let na = if swap { ax.other() } else { ax };
            (na, ns)
        };
        match *self {
            RingFlavor::FullLaurent => RingFlavor::FullLaurent,
            RingFlavor::FaceAlgebra(f) => RingFlavor::FaceAlgebra(f.transformed(sx, sy, swap)),
            RingFlavor::CornerNovikov(a, b) => {
                let (ax1, s1) = tw(Axis::X, a);
                let (_, s2) = tw(Axis::Y, b);
                if ax1 == Axis::X {
                    RingFlavor::CornerNovikov(s1, s2)
                } else {
                    RingFlavor::CornerNovikov(s2, s1)
                }
            }
            RingFlavor::CornerPowerSeries(a, b) => {
                let (ax1, s1) = tw(Axis::X, a);
                let (_, s2) = tw(Axis::Y, b);
                if ax1 == Axis::X {
                    RingFlavor::CornerPowerSeries(s1, s2)
                } else {
                    RingFlavor::CornerPowerSeries(s2, s1)
                }
            }
            RingFlavor::EdgeNovikov(u, s) => {
                let (nu, ns) = tw(u, s);
                RingFlavor::EdgeNovikov(nu, ns)
            }
            RingFlavor::EdgePowerSeries(u, s) => {
                let (nu, ns) = tw(u, s);
                RingFlavor::EdgePowerSeries(nu, ns)
            }
            RingFlavor::NovikovOverPower { nov: (t_ax, ts), pow_sign } => {
                let (nt, nts) = tw(t_ax, ts);
                let (_, nus) = tw(t_ax.other(), pow_sign);
                RingFlavor::NovikovOverPower { nov: (nt, nts), pow_sign: nus }
            }
            RingFlavor::NestedNovikov { inner: (t_ax, ts), outer_sign } => {
                let (nt, nts) = tw(t_ax, ts);
                let (_, nus) = tw(t_ax.other(), outer_sign);
                RingFlavor::NestedNovikov { inner: (nt, nts), outer_sign: nus }
            }
        }
    }
}

impl fmt::Display for RingFlavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Vertex/edge pair indexing a nested nerve ring `Z⟨⟨t⟩⟩[[u]]` or
/// `Z⟨⟨t⟩⟩⟨⟨u⟩⟩`: `t` runs along the edge away from the vertex, `u` is the
/// vertex's remaining cone direction.
fn vertex_edge_of_nested(nov: (Axis, Sign), pow_sign: Sign) -> (Face, Face) {
    let (t_ax, ts) = nov;
    let (sx, sy) = match t_ax {
        Axis::X => (ts, pow_sign),
        Axis::Y => (pow_sign, ts),
    };
    let v = vertex_for(sx, sy);
    let e = edge_for(t_ax.other(), pow_sign);
    (v, e)
}

/// Resolves a flag of face labels to its nerve ring, following the ring
/// table (the printed nerve figure is not authoritative where they differ).
pub fn flavor_of_flag_labels(labels: &[&str]) -> Option<RingFlavor> {
    let faces: Option<Vec<Face>> = labels.iter().map(|l| Face::from_label(l.trim())).collect();
    flavor_of_flag(&faces?)
}

/// The ring `A⟨τ⟩` of a flag `τ` of faces (strictly increasing, nonempty).
pub fn flavor_of_flag(flag: &[Face]) -> Option<RingFlavor> {
    match flag {
        [Face::S] => Some(RingFlavor::FullLaurent),
        [v] if v.dim() == 0 => {
            let (sx, sy) = v.cone_signs()?;
            Some(RingFlavor::CornerPowerSeries(sx, sy))
        }
        [e] if e.dim() == 1 => {
            let (u, s) = e.halfplane()?;
            Some(RingFlavor::EdgePowerSeries(u, s))
        }
        [v, Face::S] if v.dim() == 0 => {
            let (sx, sy) = v.cone_signs()?;
            Some(RingFlavor::CornerNovikov(sx, sy))
        }
        [e, Face::S] if e.dim() == 1 => {
            let (u, s) = e.halfplane()?;
            Some(RingFlavor::EdgeNovikov(u, s))
        }
        [v, e] if v.dim() == 0 && e.dim() == 1 => {
            let (nov, pow_sign) = nested_params(*v, *e)?;
            Some(RingFlavor::NovikovOverPower { nov, pow_sign })
        }
        [v, e, Face::S] if v.dim() == 0 && e.dim() == 1 => {
            let (inner, outer_sign) = nested_params(*v, *e)?;
            Some(RingFlavor::NestedNovikov { inner, outer_sign })
        }
        _ => None,
    }
}

fn nested_params(v: Face, e: Face) -> Option<((Axis, Sign), Sign)> {
    if !v.is_subface_of(e) {
        return None;
    }
    let (sx, sy) = v.cone_signs()?;
    let (u_ax, _) = e.halfplane()?;
    // t runs along the edge: the edge's free axis; u is the perpendicular.
    let t_ax = u_ax.other();
    let ts = match t_ax {
        Axis::X => sx,
        Axis::Y => sy,
    };
    let us = match t_ax.other() {
        Axis::X => sx,
        Axis::Y => sy,
    };
    Some(((t_ax, ts), us))
}

// ---------------------------------------------------------------------------
// Unit detection in standard coordinates
// ---------------------------------------------------------------------------

fn coeff_sign(c: &BigInt) -> Option<Sign> {
    if c.is_one() {
        Some(Sign::Pos)
    } else if (-c).is_one() {
        Some(Sign::Neg)
    } else {
        None
    }
}

/// Unique componentwise minimum of the support, if any.
fn componentwise_min(p: &LaurentPoly) -> Option<Monomial> {
    let cand = p
        .support()
        .min_by_key(|m| (m.ex + m.ey, m.ex))?;
    for m in p.support() {
        if !(cand.ex <= m.ex && cand.ey <= m.ey) {
            return None;
        }
    }
    Some(cand)
}

fn single_term(p: &LaurentPoly) -> Option<(Monomial, &BigInt)> {
    if p.num_terms() == 1 {
        p.iter().next()
    } else {
        None
    }
}

fn std_is_unit(kind: StdKind, p: &LaurentPoly) -> UnitAnswer {
    use NotUnitReason::*;
    if p.is_zero() {
        return UnitAnswer::NotUnit(Zero);
    }
    match kind {
        StdKind::Laurent | StdKind::FaceSquare => match single_term(p) {
            None => UnitAnswer::NotUnit(NotSingleMonomial),
            Some((m, c)) => match coeff_sign(c) {
                None => UnitAnswer::NotUnit(LeadingCoeffNotPmOne),
                Some(s) => UnitAnswer::Unit { leading: m, sign: s },
            },
        },
        StdKind::FaceVertex => match single_term(p) {
            None => UnitAnswer::NotUnit(NotSingleMonomial),
            Some((m, c)) => {
                if m != Monomial::one() {
                    UnitAnswer::NotUnit(InverseNotMember)
                } else {
                    match coeff_sign(c) {
                        None => UnitAnswer::NotUnit(LeadingCoeffNotPmOne),
                        Some(s) => UnitAnswer::Unit { leading: m, sign: s },
                    }
                }
            }
        },
        StdKind::FaceEdge => match single_term(p) {
            None => UnitAnswer::NotUnit(NotSingleMonomial),
            Some((m, c)) => {
                if m.ey != 0 {
                    UnitAnswer::NotUnit(InverseNotMember)
                } else {
                    match coeff_sign(c) {
                        None => UnitAnswer::NotUnit(LeadingCoeffNotPmOne),
                        Some(s) => UnitAnswer::Unit { leading: m, sign: s },
                    }
                }
            }
        },
        StdKind::CornerNov => match componentwise_min(p) {
            None => UnitAnswer::NotUnit(NoUniqueLeadingTerm),
            Some(m) => match coeff_sign(&p.coeff(m)) {
                None => UnitAnswer::NotUnit(LeadingCoeffNotPmOne),
                Some(s) => UnitAnswer::Unit { leading: m, sign: s },
            },
        },
        StdKind::CornerPow => {
            let origin = Monomial::one();
            let c = p.coeff(origin);
            if c.is_zero() {
                UnitAnswer::NotUnit(PositiveValuation)
            } else {
                match coeff_sign(&c) {
                    None => UnitAnswer::NotUnit(LeadingCoeffNotPmOne),
                    Some(s) => UnitAnswer::Unit { leading: origin, sign: s },
                }
            }
        }
        StdKind::EdgeNov | StdKind::EdgePow => {
            let ey_min = p.support().map(|m| m.ey).min().unwrap();
            if kind == StdKind::EdgePow && ey_min > 0 {
                return UnitAnswer::NotUnit(PositiveValuation);
            }
            let slice = p.y_slice(ey_min);
            match single_term(&slice) {
                None => UnitAnswer::NotUnit(LeadingSliceNotMonomial),
                Some((m, c)) => match coeff_sign(c) {
                    None => UnitAnswer::NotUnit(LeadingCoeffNotPmOne),
                    Some(s) => UnitAnswer::Unit { leading: m, sign: s },
                },
            }
        }
        StdKind::NovPow | StdKind::NovNov => {
            let ey_min = p.support().map(|m| m.ey).min().unwrap();
            if kind == StdKind::NovPow && ey_min > 0 {
                return UnitAnswer::NotUnit(PositiveValuation);
            }
            // Leading slice must be a unit of Z⟨⟨x⟩⟩: lowest x-coefficient ±1.
            let slice = p.y_slice(ey_min);
            let ex_min = slice.support().map(|m| m.ex).min().unwrap();
            let m = Monomial::new(ex_min, ey_min);
            match coeff_sign(&slice.coeff(m)) {
                None => UnitAnswer::NotUnit(LeadingCoeffNotPmOne),
                Some(s) => UnitAnswer::Unit { leading: m, sign: s },
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Truncated series
// ---------------------------------------------------------------------------

/// Componentwise lower bound on the (normalized) support of a series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Bound {
    /// The series is exactly zero.
    Empty,
    Known(i64, i64),
    Unknown,
}

impl Bound {
    fn combine_min(self, other: Bound) -> Bound {
        match (self, other) {
            (Bound::Empty, b) | (b, Bound::Empty) => b,
            (Bound::Known(a1, b1), Bound::Known(a2, b2)) => Bound::Known(a1.min(a2), b1.min(b2)),
            _ => Bound::Unknown,
        }
    }

    fn combine_sum(self, other: Bound) -> Bound {
        match (self, other) {
            (Bound::Empty, _) | (_, Bound::Empty) => Bound::Empty,
            (Bound::Known(a1, b1), Bound::Known(a2, b2)) => {
                Bound::Known(a1.saturating_add(a2), b1.saturating_add(b2))
            }
            _ => Bound::Unknown,
        }
    }
}

/// Interval bound on the normalized `x`-support of an edge-like series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum TRange {
    Empty,
    Known(i64, i64),
    Unknown,
}

impl TRange {
    fn hull(self, other: TRange) -> TRange {
        match (self, other) {
            (TRange::Empty, b) | (b, TRange::Empty) => b,
            (TRange::Known(a1, b1), TRange::Known(a2, b2)) => TRange::Known(a1.min(a2), b1.max(b2)),
            _ => TRange::Unknown,
        }
    }

    fn sum(self, other: TRange) -> TRange {
        match (self, other) {
            (TRange::Empty, _) | (_, TRange::Empty) => TRange::Empty,
            (TRange::Known(a1, b1), TRange::Known(a2, b2)) => {
                TRange::Known(a1.saturating_add(a2), b1.saturating_add(b2))
            }
            _ => TRange::Unknown,
        }
    }
}

fn poly_floor(std: &LaurentPoly) -> Bound {
    match std.support_box() {
        None => Bound::Empty,
        Some(b) => Bound::Known(b.min_ex, b.min_ey),
    }
}

fn poly_t_range(std: &LaurentPoly) -> TRange {
    match std.support_box() {
        None => TRange::Empty,
        Some(b) => TRange::Known(b.min_ex, b.max_ex),
    }
}

/// Window-truncated element of a flavor.
///
/// `terms` holds the known part; every monomial with `L∞ ≤ guaranteed` is
/// exactly right (present with the true coefficient, or genuinely absent).
/// A series with `guaranteed == EXACT` has no unknown tail at all.
/// Arithmetic shrinks the guarantee conservatively, so results are only
/// trusted where they are provably exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    pub flavor: RingFlavor,
    pub window: i64,
    pub guaranteed: i64,
    floor: Bound,
    t_range: TRange,
    pub terms: LaurentPoly,
}

struct StdInverse {
    terms: LaurentPoly,
    guaranteed: i64,
    floor: Bound,
    t_range: TRange,
}

impl TruncatedSeries {
    pub fn is_exact(&self) -> bool {
        self.guaranteed >= EXACT
    }

    /// Provably the zero element.
    pub fn certified_zero(&self) -> bool {
        self.terms.is_zero() && (self.is_exact() || self.floor == Bound::Empty)
    }

    /// Provably nonzero.
    pub fn certified_nonzero(&self) -> bool {
        !self.terms.is_zero()
    }

    pub fn zero(flavor: RingFlavor, window: i64) -> TruncatedSeries {
        TruncatedSeries {
            flavor,
            window,
            guaranteed: EXACT,
            floor: Bound::Empty,
            t_range: TRange::Empty,
            terms: LaurentPoly::zero(),
        }
    }

    fn check_compat(&self, other: &TruncatedSeries) -> Result<(), FlavorError> {
        if self.flavor != other.flavor {
            return Err(FlavorError::FlavorMismatch);
        }
        if self.window != other.window {
            return Err(FlavorError::WindowMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, FlavorError> {
        self.check_compat(other)?;
        Ok(TruncatedSeries {
            flavor: self.flavor,
            window: self.window,
            guaranteed: self.guaranteed.min(other.guaranteed),
            floor: self.floor.combine_min(other.floor),
            t_range: self.t_range.hull(other.t_range),
            terms: self.terms.add_ref(&other.terms),
        })
    }

    pub fn sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, FlavorError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TruncatedSeries {
        TruncatedSeries { terms: self.terms.neg_ref(), ..self.clone() }
    }

    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, FlavorError> {
        self.check_compat(other)?;
        let prod = self.terms.mul_ref(&other.terms);
        let r_self = self.terms.support_radius();
        let r_other = other.terms.support_radius();
        let mut guaranteed = EXACT;
        if !self.is_exact() {
            guaranteed = guaranteed.min(self.guaranteed - r_other);
        }
        if !other.is_exact() {
            guaranteed = guaranteed.min(other.guaranteed - r_self);
        }
        let clipped = prod.clip_to_radius(self.window);
        if guaranteed >= EXACT && clipped != prod {
            guaranteed = self.window;
        }
        Ok(TruncatedSeries {
            flavor: self.flavor,
            window: self.window,
            guaranteed,
            floor: self.floor.combine_sum(other.floor),
            t_range: self.t_range.sum(other.t_range),
            terms: clipped,
        })
    }

    /// Sound-but-incomplete unit test for a window-truncated series: returns
    /// the leading term only when the support bound proves no unknown term
    /// can precede it. Always agrees with `is_unit` on exact series.
    pub fn certified_unit(&self) -> Option<(Monomial, Sign)> {
        let flavor = self.flavor;
        if self.is_exact() {
            return match flavor.is_unit(&self.terms) {
                Ok(UnitAnswer::Unit { leading, sign }) => Some((leading, sign)),
                _ => None,
            };
        }
        let std = flavor.poly_to_std(&self.terms);
        if std.is_zero() {
            return None;
        }
        let kind = flavor.std_kind();
        let lead = match kind {
            StdKind::CornerNov | StdKind::CornerPow | StdKind::FaceVertex => {
                let m = componentwise_min(&std)?;
                let Bound::Known(fx, fy) = self.floor else { return None };
                if (m.ex, m.ey) != (fx, fy) || m.radius() > self.guaranteed {
                    return None;
                }
                if kind != StdKind::CornerNov && m != Monomial::one() {
                    return None;
                }
                m
            }
            StdKind::EdgeNov | StdKind::EdgePow | StdKind::NovPow | StdKind::NovNov
            | StdKind::FaceEdge => {
                let Bound::Known(_, fu) = self.floor else { return None };
                let TRange::Known(tlo, thi) = self.t_range else { return None };
                if tlo.abs().max(thi.abs()) > self.guaranteed || fu.abs() > self.guaranteed {
                    return None;
                }
                let ey_min = std.support().map(|m| m.ey).min().unwrap();
                if ey_min != fu {
                    return None;
                }
                let slice = std.y_slice(ey_min);
                match kind {
                    StdKind::NovPow | StdKind::NovNov => {
                        if kind == StdKind::NovPow && ey_min != 0 {
                            return None;
                        }
                        let ex_min = slice.support().map(|m| m.ex).min().unwrap();
                        Monomial::new(ex_min, ey_min)
                    }
                    _ => {
                        if kind != StdKind::EdgeNov && ey_min != 0 {
                            return None;
                        }
                        let (m, _) = single_term(&slice)?;
                        if kind == StdKind::FaceEdge && slice.num_terms() != 1 {
                            return None;
                        }
                        m
                    }
                }
            }
            StdKind::Laurent | StdKind::FaceSquare => return None,
        };
        let sign = coeff_sign(&std.coeff(lead))?;
        Some((flavor.from_std(lead), sign))
    }

    /// Multiplies by an exact polynomial of the same flavor.
    pub fn mul_poly(&self, p: &LaurentPoly) -> TruncatedSeries {
        let other = TruncatedSeries {
            flavor: self.flavor,
            window: self.window,
            guaranteed: EXACT,
            floor: poly_floor(&self.flavor.poly_to_std(p)),
            t_range: poly_t_range(&self.flavor.poly_to_std(p)),
            terms: p.clone(),
        };
        self.mul(&other).expect("same flavor and window")
    }
}

/// Pointwise add / mul of two series of matching flavor and window.
pub fn series_arith(
    a: &TruncatedSeries,
    b: &TruncatedSeries,
    op: SeriesOp,
) -> Result<TruncatedSeries, FlavorError> {
    match op {
        SeriesOp::Add => a.add(b),
        SeriesOp::Mul => a.mul(b),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Mul,
}

// ---------------------------------------------------------------------------
// Inversion in standard coordinates
// ---------------------------------------------------------------------------

/// Triangular recursion for `Q` with `P·Q = 1`, `P` supported in the positive
/// quadrant with `P_{(0,0)} = 1`. Coefficients are filled in order of total
/// degree, restricted to the box `[0,bx] × [0,by]`.
fn quadrant_reciprocal(p_norm: &LaurentPoly, bx: i64, by: i64) -> LaurentPoly {
    let mut q: BTreeMap<(i64, i64), BigInt> = BTreeMap::new();
    q.insert((0, 0), BigInt::one());
    let p_terms: Vec<(Monomial, BigInt)> =
        p_norm.iter().filter(|(m, _)| *m != Monomial::one()).map(|(m, c)| (m, c.clone())).collect();
    for total in 1..=(bx + by) {
        for ex in 0..=total.min(bx) {
            let ey = total - ex;
            if ey > by {
                continue;
            }
            let mut acc = BigInt::zero();
            for (m, c) in &p_terms {
                let (rx, ry) = (ex - m.ex, ey - m.ey);
                if rx < 0 || ry < 0 {
                    continue;
                }
                if let Some(qc) = q.get(&(rx, ry)) {
                    acc += c * qc;
                }
            }
            if !acc.is_zero() {
                q.insert((ex, ey), -acc);
            }
        }
    }
    let mut out = LaurentPoly::zero();
    for ((ex, ey), c) in q {
        out.add_term(Monomial::new(ex, ey), c);
    }
    out
}

/// Reciprocal of `1 + r(x)` in `Z[[x]]` up to degree `bx`, where `r` has
/// positive x-valuation.
fn one_var_reciprocal(p_norm: &LaurentPoly, bx: i64) -> LaurentPoly {
    quadrant_reciprocal(p_norm, bx, 0)
}

/// Slice recursion for edge-like flavors: `P` has y-support `≥ 0` and
/// `P`'s `y = 0` slice starts with constant coefficient 1 in the `x`-order.
/// Produces `Q` with `P·Q = 1` on slices `y ∈ [0,by]`, `x ∈ [-bt,bt]`.
fn slice_reciprocal(p_norm: &LaurentPoly, bt: i64, by: i64) -> LaurentPoly {
    let clip = |p: LaurentPoly| p.filter_terms(|m| m.ex.abs() <= bt);
    let p0 = p_norm.y_slice(0);
    // Invert the leading slice in Z⟨⟨x⟩⟩ (its lowest x-coefficient is ±1
    // with x-exponent 0 after normalization).
    let q0 = clip(one_var_reciprocal(&p0, 2 * bt));
    let mut slices: Vec<LaurentPoly> = vec![q0.clone()];
    for j in 1..=by {
        let mut acc = LaurentPoly::zero();
        for i in 1..=j {
            let pi = p_norm.y_slice(i).mul_monomial(Monomial::new(0, -i));
            if pi.is_zero() {
                continue;
            }
            acc = acc.add_ref(&clip(pi.mul_ref(&slices[(j - i) as usize])));
        }
        let qj = clip(q0.mul_ref(&acc)).neg_ref();
        slices.push(qj);
    }
    let mut out = LaurentPoly::zero();
    for (j, s) in slices.iter().enumerate() {
        out = out.add_ref(&s.mul_monomial(Monomial::new(0, j as i64)));
    }
    out
}

fn std_invert(
    kind: StdKind,
    std_p: &LaurentPoly,
    std_m: Monomial,
    sign: Sign,
    window: i64,
) -> StdInverse {
    // Normalize to leading term 1 at the origin.
    let eps = LaurentPoly::constant(sign.to_i64());
    let p_norm = std_p.mul_monomial(std_m.inverse()).mul_ref(&eps);
    let tail_zero = p_norm == LaurentPoly::one();
    let minus_m = std_m.inverse();

    if tail_zero {
        let terms = eps.mul_monomial(minus_m);
        return StdInverse {
            guaranteed: EXACT,
            floor: poly_floor(&terms),
            t_range: poly_t_range(&terms),
            terms,
        };
    }

    let q_norm = match kind {
        StdKind::CornerNov | StdKind::CornerPow | StdKind::FaceVertex => {
            let bx = window + std_m.ex.max(0);
            let by = window + std_m.ey.max(0);
            quadrant_reciprocal(&p_norm, bx.max(0), by.max(0))
        }
        StdKind::EdgeNov | StdKind::EdgePow | StdKind::FaceEdge => {
            let by = (window + std_m.ey.max(0)).max(0);
            let spread = std_p.support_box().map(|b| b.max_ex - b.min_ex).unwrap_or(0);
            let bt = window + std_m.ex.abs() + (by + 1) * (spread + 1);
            slice_reciprocal(&p_norm, bt, by)
        }
        StdKind::NovPow | StdKind::NovNov => {
            let by = (window + std_m.ey.max(0)).max(0);
            let spread = std_p.support_box().map(|b| b.max_ex - b.min_ex).unwrap_or(0);
            let bt = window + std_m.ex.abs() + (by + 1) * (spread + 1);
            slice_reciprocal(&p_norm, bt, by)
        }
        StdKind::Laurent | StdKind::FaceSquare => LaurentPoly::one(),
    };
    let q = q_norm.mul_monomial(minus_m).mul_ref(&eps);
    let floor = match kind {
        StdKind::CornerNov | StdKind::CornerPow | StdKind::FaceVertex => {
            Bound::Known(minus_m.ex, minus_m.ey)
        }
        _ => Bound::Known(NEG_INF, minus_m.ey),
    };
    StdInverse {
        terms: q.clip_to_radius(window),
        guaranteed: window,
        floor,
        t_range: TRange::Unknown,
    }
}

/// Checks `p · q ≡ 1` on the sub-window where the product is provably exact;
/// returns that radius on success.
pub fn verify_inverse(p: &LaurentPoly, q: &TruncatedSeries) -> Option<i64> {
    let radius = if q.is_exact() { q.window } else { q.guaranteed - p.support_radius() };
    if radius < 0 {
        return None;
    }
    let prod = p.mul_ref(&q.terms);
    let visible = prod.clip_to_radius(radius);
    if visible == LaurentPoly::one() {
        Some(radius)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{example_mu, example_nu};

    fn p(terms: &[(i64, i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    fn nov(sx: Sign, sy: Sign) -> RingFlavor {
        RingFlavor::CornerNovikov(sx, sy)
    }

    #[test]
    fn membership_table_entries() {
        // A(v_br) = Z[x^-1, y] contains x^-3 y^2
        assert!(RingFlavor::FaceAlgebra(Face::Vbr).contains_monomial(Monomial::new(-3, 2)));
        // A<v_bl> = Z[[x,y]] does not contain x^-1
        assert!(!RingFlavor::CornerPowerSeries(Sign::Pos, Sign::Pos)
            .contains_monomial(Monomial::new(-1, 0)));
        // Nov(x,y) contains x^-7 y^-7
        assert!(nov(Sign::Pos, Sign::Pos).contains_monomial(Monomial::new(-7, -7)));
    }

    #[test]
    fn membership_closed_under_multiplication() {
        let faces: Vec<RingFlavor> = Face::nonempty()
            .into_iter()
            .map(RingFlavor::FaceAlgebra)
            .chain(detection_flavors())
            .collect();
        for f in faces {
            for a in -3..=3 {
                for b in -3..=3 {
                    for c in -3..=3 {
                        for d in -3..=3 {
                            let m1 = Monomial::new(a, b);
                            let m2 = Monomial::new(c, d);
                            if f.contains_monomial(m1) && f.contains_monomial(m2) {
                                assert!(f.contains_monomial(m1 + m2), "{} at {} {}", f, m1, m2);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn detection_flavors_catalogue() {
        let flavors = detection_flavors();
        assert_eq!(flavors.len(), 8);
        assert_eq!(flavors[0], nov(Sign::Pos, Sign::Pos));
        for f in flavors {
            for a in -5..=5 {
                for b in -5..=5 {
                    assert!(f.contains_monomial(Monomial::new(a, b)));
                }
            }
        }
    }

    #[test]
    fn unit_monomial_in_corner() {
        let q = p(&[(-1, 3, -2)]);
        let ans = nov(Sign::Pos, Sign::Pos).is_unit(&q).unwrap();
        assert_eq!(ans, UnitAnswer::Unit { leading: Monomial::new(3, -2), sign: Sign::Neg });
    }

    #[test]
    fn mu_unit_partition_over_detection_flavors() {
        let mu = example_mu();
        let expected: [(RingFlavor, Option<Monomial>); 8] = [
            (nov(Sign::Pos, Sign::Pos), Some(Monomial::new(0, 0))),
            (nov(Sign::Neg, Sign::Pos), Some(Monomial::new(2, 0))),
            (nov(Sign::Pos, Sign::Neg), None),
            (nov(Sign::Neg, Sign::Neg), None),
            (RingFlavor::EdgeNovikov(Axis::Y, Sign::Pos), None),
            (RingFlavor::EdgeNovikov(Axis::Y, Sign::Neg), Some(Monomial::new(1, 2))),
            (RingFlavor::EdgeNovikov(Axis::X, Sign::Pos), Some(Monomial::new(0, 0))),
            (RingFlavor::EdgeNovikov(Axis::X, Sign::Neg), None),
        ];
        for (f, want) in expected {
            let ans = f.is_unit(&mu).unwrap();
            assert_eq!(ans.leading(), want, "flavor {}", f);
        }
    }

    #[test]
    fn nu_unit_in_complementary_flavors() {
        let nu = example_nu();
        for f in detection_flavors() {
            let mu_unit = f.is_unit(&example_mu()).unwrap().is_unit();
            let nu_unit = f.is_unit(&nu).unwrap().is_unit();
            assert!(mu_unit ^ nu_unit, "exactly one of mu/nu should be a unit in {}", f);
        }
    }

    #[test]
    fn constant_two_not_unit() {
        let two = LaurentPoly::constant(2);
        for f in detection_flavors() {
            assert!(!f.is_unit(&two).unwrap().is_unit());
        }
    }

    #[test]
    fn zero_not_unit_anywhere() {
        let z = LaurentPoly::zero();
        for f in detection_flavors() {
            assert_eq!(z.is_zero(), true);
            assert_eq!(f.is_unit(&z).unwrap(), UnitAnswer::NotUnit(NotUnitReason::Zero));
        }
    }

    #[test]
    fn invert_geometric_series() {
        let f = nov(Sign::Pos, Sign::Pos);
        let q = f.invert(&p(&[(1, 0, 0), (-1, 1, 0)]), 3).unwrap();
        assert_eq!(q.terms, p(&[(1, 0, 0), (1, 1, 0), (1, 2, 0), (1, 3, 0)]));
        assert!(verify_inverse(&p(&[(1, 0, 0), (-1, 1, 0)]), &q).is_some());
    }

    #[test]
    fn invert_monomial_is_exact() {
        let f = nov(Sign::Pos, Sign::Pos);
        let q = f.invert(&p(&[(1, 1, 0)]), 5).unwrap();
        assert!(q.is_exact());
        assert_eq!(q.terms, p(&[(1, -1, 0)]));
    }

    #[test]
    fn invert_mu_window_two() {
        let f = nov(Sign::Pos, Sign::Pos);
        let mu = example_mu();
        let q = f.invert(&mu, 2).unwrap();
        assert_eq!(q.terms, p(&[(1, 0, 0), (-1, 2, 0), (-1, 1, 2), (-1, 2, 1)]));
        assert!(verify_inverse(&mu, &q).is_some());
    }

    #[test]
    fn invert_verifies_across_flavors() {
        let mu = example_mu();
        let nu = example_nu();
        for f in detection_flavors() {
            for q in [&mu, &nu] {
                if let Ok(UnitAnswer::Unit { .. }) = f.is_unit(q) {
                    let inv = f.invert(q, 12).unwrap();
                    assert!(verify_inverse(q, &inv).is_some(), "flavor {} poly {}", f, q);
                }
            }
        }
    }

    #[test]
    fn series_arith_examples() {
        let f = nov(Sign::Pos, Sign::Pos);
        let a = f.series_from_poly(&p(&[(1, 0, 0), (1, 1, 0)]), 5).unwrap();
        let b = f.series_from_poly(&p(&[(1, 0, 0), (-1, 1, 0)]), 5).unwrap();
        assert_eq!(series_arith(&a, &b, SeriesOp::Add).unwrap().terms, p(&[(2, 0, 0)]));
        assert_eq!(
            series_arith(&a, &b, SeriesOp::Mul).unwrap().terms,
            p(&[(1, 0, 0), (-1, 2, 0)])
        );
        let xi = f.series_from_poly(&p(&[(1, -1, 0)]), 2).unwrap();
        let x = f.series_from_poly(&p(&[(1, 1, 0)]), 2).unwrap();
        assert_eq!(series_arith(&xi, &x, SeriesOp::Mul).unwrap().terms, LaurentPoly::one());
    }

    #[test]
    fn series_flavor_mismatch() {
        let a = nov(Sign::Pos, Sign::Pos).series_from_poly(&LaurentPoly::one(), 4).unwrap();
        let b = nov(Sign::Neg, Sign::Pos).series_from_poly(&LaurentPoly::one(), 4).unwrap();
        assert_eq!(series_arith(&a, &b, SeriesOp::Add), Err(FlavorError::FlavorMismatch));
    }

    #[test]
    fn unit_equivariance_under_substitution() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(41);
        for _ in 0..200 {
            let n = rng.gen_range(0..=6);
            let mut q = LaurentPoly::zero();
            for _ in 0..n {
                q.add_term(
                    Monomial::new(rng.gen_range(-3..=3), rng.gen_range(-3..=3)),
                    BigInt::from(rng.gen_range(-2i64..=2)),
                );
            }
            for (sx, sy, swap) in [
                (Sign::Neg, Sign::Pos, false),
                (Sign::Pos, Sign::Neg, false),
                (Sign::Neg, Sign::Neg, false),
                (Sign::Pos, Sign::Pos, true),
                (Sign::Neg, Sign::Pos, true),
            ] {
                for f in detection_flavors() {
                    let g = f.substituted(sx, sy, swap);
                    let lhs = f.is_unit(&q).unwrap();
                    let rhs = g.is_unit(&q.substitute(sx, sy, swap)).unwrap();
                    assert_eq!(lhs.is_unit(), rhs.is_unit(), "{} vs {}", f, g);
                    if let (Some(a), Some(b)) = (lhs.leading(), rhs.leading()) {
                        assert_eq!(a.substitute(sx, sy, swap), b);
                    }
                }
            }
        }
    }

    #[test]
    fn nerve_flag_ring_table() {
        // A<v_bl,S> is the corner Novikov ring, per the ring table.
        assert_eq!(
            flavor_of_flag(&[Face::Vbl, Face::S]),
            Some(nov(Sign::Pos, Sign::Pos))
        );
        assert_eq!(
            flavor_of_flag(&[Face::Vtr, Face::S]),
            Some(nov(Sign::Neg, Sign::Neg))
        );
        // A<v_tr, e_r> = Z⟨⟨y^-1⟩⟩[[x^-1]]
        assert_eq!(
            flavor_of_flag(&[Face::Vtr, Face::Er]),
            Some(RingFlavor::NovikovOverPower { nov: (Axis::Y, Sign::Neg), pow_sign: Sign::Neg })
        );
        // A<v_bl,e_b,S> = Z⟨⟨x⟩⟩⟨⟨y⟩⟩
        assert_eq!(
            flavor_of_flag(&[Face::Vbl, Face::Eb, Face::S]),
            Some(RingFlavor::NestedNovikov { inner: (Axis::X, Sign::Pos), outer_sign: Sign::Pos })
        );
        assert_eq!(flavor_of_flag(&[Face::S]), Some(RingFlavor::FullLaurent));
    }

    #[test]
    fn names_round_trip() {
        let mut flavors: Vec<RingFlavor> = detection_flavors().to_vec();
        flavors.push(RingFlavor::FullLaurent);
        for face in Face::nonempty() {
            flavors.push(RingFlavor::FaceAlgebra(face));
        }
        flavors.push(RingFlavor::CornerPowerSeries(Sign::Neg, Sign::Pos));
        flavors.push(RingFlavor::EdgePowerSeries(Axis::X, Sign::Neg));
        flavors.push(RingFlavor::NovikovOverPower { nov: (Axis::Y, Sign::Neg), pow_sign: Sign::Neg });
        flavors.push(RingFlavor::NestedNovikov { inner: (Axis::X, Sign::Pos), outer_sign: Sign::Pos });
        for f in flavors {
            assert_eq!(RingFlavor::parse(&f.name()), Some(f), "name {}", f.name());
        }
    }

    #[test]
    fn not_an_element_error() {
        let f = RingFlavor::CornerPowerSeries(Sign::Pos, Sign::Pos);
        let err = f.is_unit(&p(&[(1, -1, 0)])).unwrap_err();
        assert!(matches!(err, FlavorError::NotAnElement { .. }));
    }
}
