//! Closed-form group computations for spaces and varieties with involution.
//!
//! The engine consumes cohomological ranks as input ([`SpaceDescriptor`]) and
//! returns the groups Q₂, RBr, GBR, WR and, for varieties, Br, BW and W as an
//! [`InvariantReport`]. When only a filtration `0 → sub → E → quotient → 0`
//! is known the group is returned as an [`ExtensionDatum`] and never guessed.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{AbGroup, ExtensionDatum, GroupValue};

/// Cohomological input data of a G-space or real/complex variety.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpaceDescriptor {
    /// Trivial involution. `b1`, `b2` are mod-2 Betti numbers of the whole
    /// space, `bockstein_rank` the rank of `β: H¹ → H²`.
    TrivialAction { #[serde(default = "one")] components: u32, b1: u32, b2: u32, bockstein_rank: u32 },
    /// `X = G × Y`: mod-2 Betti numbers `h0`, `h1` of `Y` and the torsion
    /// orders of `H³(Y, ℤ)`.
    FreeProduct { h0: u32, h1: u32, #[serde(default)] h3tors: Vec<u64> },
    /// Connected 1-dimensional `X` whose fixed set has `nu` components;
    /// `h1quot = dim H¹(X/G, ℤ/2)`.
    Graph { nu: u32, h1quot: u32 },
    /// Compact connected oriented surface of genus `genus`, fixed set a union
    /// of `nu` circles (`nu = 0`: free action).
    SurfaceWithInvolution { genus: u32, nu: u32 },
    /// Smooth projective geometrically irreducible real curve whose real
    /// locus has `nu` components.
    RealCurve { genus: u32, nu: u32 },
    /// Connected complex curve with `h1 = dim H¹_et(V, ℤ/2)`.
    ComplexCurve { h1: u32 },
    /// Connected 4-dimensional G-CW complex with free action.
    /// `h1quot_reduced` is `H¹(X/G, ℤ/2)` modulo the class of `[-1]`;
    /// `two_tors_h3` the rank of the 2-torsion of `H³_G(X, ℤ(1))`.
    FreeFourDim {
        h1quot: u32,
        h1quot_reduced: u32,
        two_tors_h3: u32,
        h3tors_exponent_le_2: bool,
        #[serde(default)]
        h3tors: Option<Vec<u64>>,
    },
    /// Smooth complex projective variety: `h0` components, `h1` the mod-2
    /// first Betti number, `h3tors` the torsion of `H³(V(ℂ), ℤ)`.
    ComplexProjective { rho: u32, h1: u32, #[serde(default = "one")] h0: u32, #[serde(default)] h3tors: Vec<u64> },
    /// Smooth geometrically connected real projective variety: `rbr` is the
    /// torsion of `H³_G(V_top, ℤ(1))`, `h1g = dim H¹_G(V_top, ℤ/2)`.
    RealProjective { rho0: u32, rbr: AbGroup, h1g: u32 },
    /// Smooth complex projective surface.
    ComplexSurfaceWitt {
        rho: u32,
        h1: u32,
        two_tors_h3: u32,
        #[serde(default)]
        h3tors: Option<Vec<u64>>,
    },
    /// Smooth geometrically connected real projective surface without real
    /// points; `two_tors_br` is the rank of `₂Br(V)`.
    RealSurfaceNoPoints {
        rho0: u32,
        two_tors_br: u32,
        h1quot_reduced: u32,
        #[serde(default)]
        h3tors: Option<Vec<u64>>,
    },
}

fn one() -> u32 {
    1
}

/// Everything the engine can say about one descriptor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub descriptor: SpaceDescriptor,
    pub q2: AbGroup,
    pub rbr: Option<AbGroup>,
    pub gbr: Option<GroupValue>,
    pub wr: Option<GroupValue>,
    pub br: Option<AbGroup>,
    pub bw: Option<GroupValue>,
    pub w: Option<GroupValue>,
    /// Facts about the comparison maps between the groups above.
    pub maps: Vec<String>,
    pub citations: Vec<String>,
}

impl InvariantReport {
    /// `|GBR| = |RBr| · |Q₂|` whenever all three are finite and known.
    pub fn orders_consistent(&self) -> Option<bool> {
        let gbr = self.gbr.as_ref()?.resolved()?.order()?;
        let rbr = self.rbr.as_ref()?.order()?;
        let q2 = self.q2.order()?;
        Some(gbr == rbr * q2)
    }
}

mod cite {
    pub const Q2_EXTENSION: &str = "Q2 is a nontrivial extension of H0_G(X,Z/2) by H1_G(X,Z/2)";
    pub const RBR_TORSION_H3: &str = "RBr(X) is the torsion of H3_G(X,Z(1))";
    pub const RBR_DIM_ONE: &str = "for dim X <= 1, H3_G(X,Z(1)) is H0(X^G,Z/2)";
    pub const TRIVIAL_ACTION: &str = "trivial action: RBr = Z/2 + H2, Z/8 summand, Z/4 count = Bockstein rank";
    pub const TRIVIAL_RESOLUTION: &str = "derived: GBR resolution from a+a = beta(a) for trivial actions";
    pub const FREE_PRODUCT: &str = "GBR(G x Y) = H0(Y,Z/2) + H1(Y,Z/2) + tors H3(Y,Z)";
    pub const GRAPH: &str = "GBR of a 1-dimensional G-space: Z/8 + (Z/4)^(nu-1) + H1(X/G) or Z/4 + reduced H1";
    pub const SURFACE: &str = "GBR of an oriented surface with involution";
    pub const REAL_CURVE: &str = "BW(V) = GBR(V_top) for real curves";
    pub const COMPLEX_CURVE: &str = "BW(V) = GBR(V_top) = Z/2 + H1_et(V,Z/2) for complex curves";
    pub const EXACT_SEQUENCE: &str = "0 -> RBr -> GBR -> Q2 -> 0";
    pub const FILTRATION_ONLY: &str = "only the filtration 0 -> RBr -> GBR -> Q2 -> 0 is known";
    pub const WR_PRODUCT: &str = "WR(G x Y) = Z/2 + H1(Y,Z/2) + 2-torsion of H3(Y,Z) for dim Y <= 4";
    pub const WR_FREE_FOUR: &str = "WR of a free 4-dimensional G-complex: extension of Z/4 x reduced H1 by 2H3_G";
    pub const BW_COMPLEX: &str = "complex projective: 0 -> (Q/Z)^rho -> BW -> GBR -> 0 split, Br = (Q/Z)^rho + tors H3";
    pub const BR_REAL: &str = "real projective: Br = (Q/Z)^rho0 + tors H3_G(V_top,Z(1))";
    pub const BW_REAL: &str = "real: 0 -> (Q/Z)^rho0 -> BW -> GBR -> 0";
    pub const W_COMPLEX_SURFACE: &str = "complex surface: 0 -> (Z/2)^rho -> W -> WR -> 0 (W is 2-torsion, so split)";
    pub const W_NO_POINTS: &str = "surface without real points: 0 -> 2Br -> W -> Z/4 x reduced H1_et -> 0";
    pub const W_NO_POINTS_SPLIT: &str = "surface without real points: 0 -> (Z/2)^rho0 -> W -> WR -> 0 split";
}

fn two(k: u32) -> AbGroup {
    AbGroup::power(2, k as usize)
}

fn four_plus_twos(k: u32) -> AbGroup {
    AbGroup::cyclic(4).direct_sum(&two(k))
}

fn torsion_group(orders: &[u64]) -> Result<AbGroup> {
    AbGroup::new(orders, 0, 0)
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidDescriptor(msg.into())
}

fn unsupported(what: &str, d: &SpaceDescriptor) -> Error {
    Error::Unsupported(format!("{what} is not determined for the {} variant", d.name()))
}

/// Order of the 2-torsion of a torsion group given by cyclic orders.
fn two_rank(orders: &[u64]) -> u32 {
    orders.iter().filter(|n| *n % 2 == 0).count() as u32
}

impl SpaceDescriptor {
    pub fn name(&self) -> &'static str {
        match self {
            SpaceDescriptor::TrivialAction { .. } => "trivial_action",
            SpaceDescriptor::FreeProduct { .. } => "free_product",
            SpaceDescriptor::Graph { .. } => "graph",
            SpaceDescriptor::SurfaceWithInvolution { .. } => "surface_with_involution",
            SpaceDescriptor::RealCurve { .. } => "real_curve",
            SpaceDescriptor::ComplexCurve { .. } => "complex_curve",
            SpaceDescriptor::FreeFourDim { .. } => "free_four_dim",
            SpaceDescriptor::ComplexProjective { .. } => "complex_projective",
            SpaceDescriptor::RealProjective { .. } => "real_projective",
            SpaceDescriptor::ComplexSurfaceWitt { .. } => "complex_surface_witt",
            SpaceDescriptor::RealSurfaceNoPoints { .. } => "real_surface_no_points",
        }
    }

    /// Whether the descriptor is one of the variety variants handled by
    /// [`compute_variety`].
    pub fn is_variety(&self) -> bool {
        matches!(
            self,
            SpaceDescriptor::ComplexProjective { .. }
                | SpaceDescriptor::RealProjective { .. }
                | SpaceDescriptor::ComplexSurfaceWitt { .. }
                | SpaceDescriptor::RealSurfaceNoPoints { .. }
        )
    }

    /// Rejects parameter combinations outside the hypotheses of the formulas.
    pub fn validate(&self) -> Result<()> {
        match self {
            SpaceDescriptor::TrivialAction { components, b1, b2, bockstein_rank } => {
                if *components == 0 {
                    return Err(invalid("trivial action needs at least one component"));
                }
                if bockstein_rank > b1.min(b2) {
                    return Err(invalid(format!(
                        "bockstein_rank {bockstein_rank} exceeds min(b1, b2) = {}",
                        b1.min(b2)
                    )));
                }
            }
            SpaceDescriptor::FreeProduct { h0, h3tors, .. } => {
                if *h0 == 0 {
                    return Err(invalid("free product needs h0 >= 1"));
                }
                torsion_group(h3tors)?;
            }
            SpaceDescriptor::Graph { nu, h1quot } => {
                if *nu == 0 && *h1quot == 0 {
                    return Err(invalid("a graph with free action has h1quot >= 1 (the class of [-1] is nonzero)"));
                }
            }
            SpaceDescriptor::FreeFourDim { h1quot, h1quot_reduced, two_tors_h3, h3tors_exponent_le_2, h3tors } => {
                if *h1quot == 0 {
                    return Err(invalid("free action forces h1quot >= 1"));
                }
                if *h1quot_reduced + 1 != *h1quot {
                    return Err(invalid(format!(
                        "h1quot_reduced must be h1quot - 1 = {} for a connected free G-space",
                        h1quot - 1
                    )));
                }
                if let Some(orders) = h3tors {
                    let g = torsion_group(orders)?;
                    if two_rank(orders) != *two_tors_h3 {
                        return Err(invalid("two_tors_h3 disagrees with the 2-rank of h3tors"));
                    }
                    if g.exponent().divides(2) != *h3tors_exponent_le_2 {
                        return Err(invalid("h3tors_exponent_le_2 disagrees with h3tors"));
                    }
                }
            }
            SpaceDescriptor::ComplexProjective { h0, h3tors, .. } => {
                if *h0 == 0 {
                    return Err(invalid("a variety has h0 >= 1"));
                }
                torsion_group(h3tors)?;
            }
            SpaceDescriptor::RealProjective { rbr, h1g, .. } => {
                if !rbr.is_finite() {
                    return Err(invalid("rbr is the torsion of a cohomology group and must be finite"));
                }
                if *h1g == 0 {
                    return Err(invalid("h1g >= 1: the class of [-1] is nonzero"));
                }
            }
            SpaceDescriptor::ComplexSurfaceWitt { two_tors_h3, h3tors, .. } => {
                if let Some(orders) = h3tors {
                    torsion_group(orders)?;
                    if two_rank(orders) != *two_tors_h3 {
                        return Err(invalid("two_tors_h3 disagrees with the 2-rank of h3tors"));
                    }
                }
            }
            SpaceDescriptor::RealSurfaceNoPoints { rho0, two_tors_br, h3tors, .. } => {
                if rho0 > two_tors_br {
                    return Err(invalid(format!(
                        "2Br(V) contains (Z/2)^rho0, so two_tors_br >= rho0 = {rho0}"
                    )));
                }
                if let Some(orders) = h3tors {
                    torsion_group(orders)?;
                    if two_rank(orders) != two_tors_br - rho0 {
                        return Err(invalid("2-rank of h3tors must be two_tors_br - rho0"));
                    }
                }
            }
            SpaceDescriptor::SurfaceWithInvolution { .. }
            | SpaceDescriptor::RealCurve { .. }
            | SpaceDescriptor::ComplexCurve { .. } => {}
        }
        Ok(())
    }
}

/// Q₂ from the extension of `H⁰_G` by `H¹_G`.
pub fn compute_q2(d: &SpaceDescriptor) -> Result<AbGroup> {
    d.validate()?;
    Ok(match d {
        SpaceDescriptor::TrivialAction { components, b1, .. } => {
            AbGroup::power(4, *components as usize).direct_sum(&two(*b1))
        }
        SpaceDescriptor::FreeProduct { h0, h1, .. } => two(h0 + h1),
        SpaceDescriptor::ComplexProjective { h0, h1, .. } => two(h0 + h1),
        SpaceDescriptor::ComplexCurve { h1 } | SpaceDescriptor::ComplexSurfaceWitt { h1, .. } => two(1 + h1),
        SpaceDescriptor::Graph { nu: 0, h1quot } => four_plus_twos(h1quot - 1),
        SpaceDescriptor::Graph { nu, h1quot } => four_plus_twos(nu - 1 + h1quot),
        SpaceDescriptor::SurfaceWithInvolution { genus, nu: 0 } | SpaceDescriptor::RealCurve { genus, nu: 0 } => {
            four_plus_twos(*genus)
        }
        SpaceDescriptor::SurfaceWithInvolution { genus, nu } | SpaceDescriptor::RealCurve { genus, nu } => {
            four_plus_twos(genus + nu - 1)
        }
        SpaceDescriptor::FreeFourDim { h1quot_reduced, .. }
        | SpaceDescriptor::RealSurfaceNoPoints { h1quot_reduced, .. } => four_plus_twos(*h1quot_reduced),
        SpaceDescriptor::RealProjective { h1g, .. } => four_plus_twos(h1g - 1),
    })
}

/// RBr as the torsion of `H³_G(X, ℤ(1))`. Fails with
/// [`Error::Unsupported`] when the descriptor does not determine it.
pub fn compute_rbr(d: &SpaceDescriptor) -> Result<AbGroup> {
    d.validate()?;
    match d {
        SpaceDescriptor::TrivialAction { components, b2, .. } => Ok(two(components + b2)),
        SpaceDescriptor::FreeProduct { h3tors, .. } | SpaceDescriptor::ComplexProjective { h3tors, .. } => {
            torsion_group(h3tors)
        }
        SpaceDescriptor::Graph { nu, .. }
        | SpaceDescriptor::SurfaceWithInvolution { nu, .. }
        | SpaceDescriptor::RealCurve { nu, .. } => Ok(two(*nu)),
        SpaceDescriptor::ComplexCurve { .. } => Ok(AbGroup::trivial()),
        SpaceDescriptor::RealProjective { rbr, .. } => Ok(rbr.clone()),
        SpaceDescriptor::FreeFourDim { h3tors: Some(orders), .. }
        | SpaceDescriptor::ComplexSurfaceWitt { h3tors: Some(orders), .. }
        | SpaceDescriptor::RealSurfaceNoPoints { h3tors: Some(orders), .. } => torsion_group(orders),
        SpaceDescriptor::FreeFourDim { two_tors_h3, h3tors_exponent_le_2: true, .. } => Ok(two(*two_tors_h3)),
        _ => Err(unsupported("RBr (torsion of H3) without h3tors", d)),
    }
}

/// GBR, resolved where a closed form is known and otherwise as the
/// extension of Q₂ by RBr.
pub fn compute_gbr(d: &SpaceDescriptor) -> Result<GroupValue> {
    d.validate()?;
    let resolved = |g: AbGroup| Ok(GroupValue::Resolved(g));
    match d {
        SpaceDescriptor::TrivialAction { components, b1, b2, bockstein_rank: r } => resolved(
            AbGroup::power(8, *components as usize)
                .direct_sum(&AbGroup::power(4, *r as usize))
                .direct_sum(&two(b1 - r))
                .direct_sum(&two(b2 - r)),
        ),
        SpaceDescriptor::FreeProduct { h0, h1, h3tors } | SpaceDescriptor::ComplexProjective { h0, h1, h3tors, .. } => {
            resolved(two(h0 + h1).direct_sum(&torsion_group(h3tors)?))
        }
        SpaceDescriptor::ComplexSurfaceWitt { h1, h3tors: Some(orders), .. } => {
            resolved(two(1 + h1).direct_sum(&torsion_group(orders)?))
        }
        SpaceDescriptor::ComplexCurve { h1 } => resolved(two(1 + h1)),
        SpaceDescriptor::Graph { nu: 0, h1quot } => resolved(four_plus_twos(h1quot - 1)),
        SpaceDescriptor::SurfaceWithInvolution { genus, nu: 0 } | SpaceDescriptor::RealCurve { genus, nu: 0 } => {
            resolved(four_plus_twos(*genus))
        }
        SpaceDescriptor::Graph { nu, h1quot: h }
        | SpaceDescriptor::SurfaceWithInvolution { genus: h, nu }
        | SpaceDescriptor::RealCurve { genus: h, nu } => resolved(
            AbGroup::cyclic(8)
                .direct_sum(&AbGroup::power(4, (nu - 1) as usize))
                .direct_sum(&two(*h)),
        ),
        _ => {
            let sub = compute_rbr(d)?;
            let quotient = compute_q2(d)?;
            Ok(ExtensionDatum::new(sub, quotient, cite::FILTRATION_ONLY).into())
        }
    }
}

/// WR where it is known, as a group or an extension.
pub fn compute_wr(d: &SpaceDescriptor) -> Result<GroupValue> {
    d.validate()?;
    match d {
        SpaceDescriptor::FreeProduct { h0, h1, h3tors } => {
            if *h0 != 1 {
                return Err(unsupported("WR for disconnected Y", d));
            }
            Ok(two(1 + h1 + two_rank(h3tors)).into())
        }
        SpaceDescriptor::ComplexSurfaceWitt { h1, two_tors_h3, .. } => Ok(two(1 + h1 + two_tors_h3).into()),
        SpaceDescriptor::FreeFourDim { two_tors_h3, h1quot_reduced, .. } => {
            Ok(ExtensionDatum::new(two(*two_tors_h3), four_plus_twos(*h1quot_reduced), cite::WR_FREE_FOUR).into())
        }
        SpaceDescriptor::RealSurfaceNoPoints { rho0, two_tors_br, h1quot_reduced, .. } => Ok(ExtensionDatum::new(
            two(two_tors_br - rho0),
            four_plus_twos(*h1quot_reduced),
            cite::WR_FREE_FOUR,
        )
        .into()),
        _ => Err(unsupported("WR", d)),
    }
}

fn add_divisible(g: &GroupValue, rank: u32, br: &AbGroup, q2: &AbGroup, note: &str) -> GroupValue {
    match g.resolved() {
        Some(g) => g.direct_sum(&AbGroup::divisible(rank)).into(),
        None => ExtensionDatum::new(br.clone(), q2.clone(), note).into(),
    }
}

fn add_twos(g: &GroupValue, rank: u32, sub: u32, quotient: &AbGroup, note: &str) -> GroupValue {
    match g.resolved() {
        Some(g) => g.direct_sum(&two(rank)).into(),
        None => ExtensionDatum::new(two(sub), quotient.clone(), note).into(),
    }
}

/// Full report for any descriptor. Groups the descriptor does not determine
/// are left empty.
pub fn report(d: &SpaceDescriptor) -> Result<InvariantReport> {
    d.validate()?;
    let q2 = compute_q2(d)?;
    let rbr = compute_rbr(d).ok();
    let gbr = match compute_gbr(d) {
        Ok(g) => Some(g),
        Err(Error::Unsupported(_)) => None,
        Err(e) => return Err(e),
    };
    let wr = compute_wr(d).ok();
    let mut out = InvariantReport {
        descriptor: d.clone(),
        q2,
        rbr,
        gbr,
        wr,
        br: None,
        bw: None,
        w: None,
        maps: Vec::new(),
        citations: vec![cite::Q2_EXTENSION.into()],
    };
    let cites = &mut out.citations;
    match d {
        SpaceDescriptor::TrivialAction { .. } => {
            cites.extend([cite::TRIVIAL_ACTION, cite::TRIVIAL_RESOLUTION].map(String::from));
        }
        SpaceDescriptor::FreeProduct { .. } => {
            cites.extend([cite::FREE_PRODUCT, cite::RBR_TORSION_H3].map(String::from));
            if out.wr.is_some() {
                cites.push(cite::WR_PRODUCT.into());
                out.maps.push(wr_gbr_map(d));
            }
        }
        SpaceDescriptor::Graph { .. } => {
            cites.extend([cite::GRAPH, cite::RBR_DIM_ONE].map(String::from));
        }
        SpaceDescriptor::SurfaceWithInvolution { .. } => {
            cites.extend([cite::SURFACE, cite::RBR_TORSION_H3].map(String::from));
        }
        SpaceDescriptor::RealCurve { nu, .. } => {
            cites.extend([cite::REAL_CURVE, cite::RBR_TORSION_H3].map(String::from));
            out.br = Some(two(*nu));
            out.bw = out.gbr.clone();
            out.maps.push("BW(V) -> GBR(V_top) is an isomorphism".into());
        }
        SpaceDescriptor::ComplexCurve { .. } => {
            cites.push(cite::COMPLEX_CURVE.into());
            out.br = Some(AbGroup::trivial());
            out.bw = out.gbr.clone();
            out.maps.push("BW(V) -> GBR(V_top) is an isomorphism".into());
        }
        SpaceDescriptor::FreeFourDim { .. } => {
            cites.extend([cite::WR_FREE_FOUR, cite::RBR_TORSION_H3, cite::FILTRATION_ONLY].map(String::from));
            out.maps.push(wr_gbr_map(d));
        }
        _ => return compute_variety(d),
    }
    if out.gbr.as_ref().is_some_and(|g| g.resolved().is_some()) && out.rbr.is_some() {
        out.citations.push(cite::EXACT_SEQUENCE.into());
    }
    Ok(out)
}

fn wr_gbr_map(d: &SpaceDescriptor) -> String {
    let exponent_two = match d {
        SpaceDescriptor::FreeProduct { h3tors, .. } => Some(h3tors.iter().all(|n| *n <= 2)),
        SpaceDescriptor::FreeFourDim { h3tors_exponent_le_2, .. } => Some(*h3tors_exponent_le_2),
        SpaceDescriptor::ComplexSurfaceWitt { h3tors: Some(t), .. }
        | SpaceDescriptor::RealSurfaceNoPoints { h3tors: Some(t), .. } => Some(t.iter().all(|n| *n <= 2)),
        _ => None,
    };
    match exponent_two {
        Some(true) => "WR -> GBR is an isomorphism (torsion of H3 has exponent <= 2)".into(),
        Some(false) => "WR -> GBR is injective, not onto (torsion of H3 has exponent > 2)".into(),
        None => "WR -> GBR is injective; onto iff the torsion of H3 has exponent <= 2".into(),
    }
}

/// Report for the variety variants, including Br, BW and W.
pub fn compute_variety(d: &SpaceDescriptor) -> Result<InvariantReport> {
    d.validate()?;
    if !d.is_variety() {
        return Err(Error::Unsupported(format!(
            "{} is not a variety variant; use the space report",
            d.name()
        )));
    }
    let q2 = compute_q2(d)?;
    let rbr = compute_rbr(d).ok();
    let gbr = compute_gbr(d).ok();
    let wr = compute_wr(d).ok();
    let mut maps = Vec::new();
    let mut citations = vec![cite::Q2_EXTENSION.to_string(), cite::RBR_TORSION_H3.to_string()];
    let (br, bw, w);
    match d {
        SpaceDescriptor::ComplexProjective { rho, h3tors, .. } => {
            br = Some(torsion_group(h3tors)?.direct_sum(&AbGroup::divisible(*rho)));
            bw = gbr.as_ref().map(|g| add_divisible(g, *rho, br.as_ref().unwrap(), &q2, cite::BW_COMPLEX));
            w = None;
            citations.extend([cite::FREE_PRODUCT, cite::BW_COMPLEX].map(String::from));
            maps.push(bw_gbr_map("rho", *rho));
        }
        SpaceDescriptor::ComplexSurfaceWitt { rho, h3tors, .. } => {
            br = h3tors.as_ref().map(|t| torsion_group(t)).transpose()?.map(|t| t.direct_sum(&AbGroup::divisible(*rho)));
            bw = match (&gbr, &br) {
                (Some(g), Some(b)) => Some(add_divisible(g, *rho, b, &q2, cite::BW_COMPLEX)),
                _ => None,
            };
            w = wr.as_ref().map(|g| add_twos(g, *rho, *rho, &q2, cite::W_COMPLEX_SURFACE));
            citations.extend([cite::FREE_PRODUCT, cite::WR_PRODUCT, cite::BW_COMPLEX, cite::W_COMPLEX_SURFACE].map(String::from));
            maps.push(bw_gbr_map("rho", *rho));
            maps.push(format!(
                "W -> WR is onto with kernel (Z/2)^{rho}{}",
                if *rho == 0 { "; an isomorphism" } else { "" }
            ));
            maps.push(wr_gbr_map(d));
        }
        SpaceDescriptor::RealProjective { rho0, .. } => {
            br = rbr.as_ref().map(|r| r.direct_sum(&AbGroup::divisible(*rho0)));
            bw = match (&gbr, &br) {
                (Some(g), Some(b)) => Some(add_divisible(g, *rho0, b, &q2, cite::BW_REAL)),
                _ => None,
            };
            w = None;
            citations.extend([cite::BR_REAL, cite::BW_REAL].map(String::from));
            maps.push(bw_gbr_map("rho0", *rho0));
        }
        SpaceDescriptor::RealSurfaceNoPoints { rho0, two_tors_br, .. } => {
            br = rbr.as_ref().map(|r| r.direct_sum(&AbGroup::divisible(*rho0)));
            bw = match (&gbr, &br) {
                (Some(g), Some(b)) => Some(add_divisible(g, *rho0, b, &q2, cite::BW_REAL)),
                _ => None,
            };
            w = wr.as_ref().map(|g| add_twos(g, *rho0, *two_tors_br, &q2, cite::W_NO_POINTS));
            citations.extend(
                [cite::BR_REAL, cite::BW_REAL, cite::WR_FREE_FOUR, cite::W_NO_POINTS, cite::W_NO_POINTS_SPLIT]
                    .map(String::from),
            );
            maps.push(bw_gbr_map("rho0", *rho0));
            maps.push(format!(
                "W -> WR is a split surjection with kernel (Z/2)^{rho0}{}",
                if *rho0 == 0 { "; an isomorphism" } else { "" }
            ));
            maps.push(wr_gbr_map(d));
        }
        _ => unreachable!("checked by is_variety"),
    }
    if gbr.as_ref().is_some_and(|g| g.resolved().is_none()) {
        citations.push(cite::FILTRATION_ONLY.into());
    }
    Ok(InvariantReport { descriptor: d.clone(), q2, rbr, gbr, wr, br, bw, w, maps, citations })
}

fn bw_gbr_map(symbol: &str, rank: u32) -> String {
    if rank == 0 {
        format!("BW -> GBR(V_top) is an isomorphism ({symbol} = 0)")
    } else {
        format!("BW -> GBR(V_top) is a split surjection with kernel (Q/Z)^{rank} ({symbol} = {rank})")
    }
}

/// The three involutions on the circle: antipodal (`S^{2,0}`), trivial
/// (`S^{0,2}`) and reflection (`S^{1,1}`), each computed by a generic variant.
pub fn circle_table() -> Vec<(String, InvariantReport)> {
    let rows = [
        ("S^{2,0}", SpaceDescriptor::Graph { nu: 0, h1quot: 1 }),
        ("S^{0,2}", SpaceDescriptor::TrivialAction { components: 1, b1: 1, b2: 0, bockstein_rank: 0 }),
        ("S^{1,1}", SpaceDescriptor::Graph { nu: 2, h1quot: 0 }),
    ];
    rows.into_iter()
        .map(|(name, d)| (name.to_string(), report(&d).expect("circle descriptors are valid")))
        .collect()
}

/// One row of a golden table: a report plus the reference values it must
/// reproduce. `None` means the row makes no claim about that group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenRow {
    pub name: String,
    pub report: InvariantReport,
    pub expected: Expected,
    pub source: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub q2: Option<AbGroup>,
    pub rbr: Option<AbGroup>,
    pub gbr: Option<AbGroup>,
    pub wr: Option<AbGroup>,
    pub bw: Option<AbGroup>,
    pub w: Option<AbGroup>,
}

impl GoldenRow {
    /// Names of the groups that disagree with the reference values.
    pub fn mismatches(&self) -> Vec<String> {
        let r = &self.report;
        let e = &self.expected;
        let resolved = |g: &Option<GroupValue>| g.as_ref().and_then(|g| g.resolved().cloned());
        let checks: [(&str, &Option<AbGroup>, Option<AbGroup>); 6] = [
            ("q2", &e.q2, Some(r.q2.clone())),
            ("rbr", &e.rbr, r.rbr.clone()),
            ("gbr", &e.gbr, resolved(&r.gbr)),
            ("wr", &e.wr, resolved(&r.wr)),
            ("bw", &e.bw, resolved(&r.bw)),
            ("w", &e.w, resolved(&r.w)),
        ];
        checks
            .into_iter()
            .filter(|(_, want, got)| want.as_ref().is_some_and(|want| got.as_ref() != Some(want)))
            .map(|(name, want, got)| {
                let got = got.map_or("undetermined".to_string(), |g| g.to_string());
                format!("{name}: expected {}, got {got}", want.as_ref().unwrap())
            })
            .collect()
    }
}

pub const GOLDEN_TABLES: [&str; 6] = ["circles", "rp2", "curves", "surfaces", "exe", "s50"];

fn z(orders: &[u64]) -> AbGroup {
    AbGroup::new(orders, 0, 0).expect("positive orders")
}

fn row(name: String, d: SpaceDescriptor, expected: Expected, source: &str) -> GoldenRow {
    GoldenRow { name, report: report(&d).expect("golden descriptors are valid"), expected, source: source.into() }
}

/// Named worked examples with their reference values.
pub fn golden_table(name: &str) -> Result<Vec<GoldenRow>> {
    let rows = match name {
        "circles" => {
            let gbr = [z(&[4]), z(&[2, 8]), z(&[4, 8])];
            circle_table()
                .into_iter()
                .zip(gbr)
                .map(|((name, report), gbr)| GoldenRow {
                    name,
                    report,
                    expected: Expected { gbr: Some(gbr), ..Default::default() },
                    source: "GBR of the three circles with involution".into(),
                })
                .collect()
        }
        "rp2" => {
            let d = SpaceDescriptor::TrivialAction { components: 1, b1: 1, b2: 1, bockstein_rank: 1 };
            let mut r = row(
                "RP^2".into(),
                d,
                Expected { gbr: Some(z(&[4, 8])), wr: Some(z(&[4]).direct_sum(&AbGroup::free(1))), ..Default::default() },
                "GBR(RP^2) = Z/8 + Z/4; WR(RP^2) = Z + Z/4 is a stored constant",
            );
            r.report.wr = Some(z(&[4]).direct_sum(&AbGroup::free(1)).into());
            vec![r]
        }
        "curves" => {
            let mut rows = Vec::new();
            for genus in 0..=2u32 {
                for nu in 0..=3u32 {
                    let gbr = if nu == 0 {
                        four_plus_twos(genus)
                    } else {
                        z(&[8]).direct_sum(&AbGroup::power(4, (nu - 1) as usize)).direct_sum(&two(genus))
                    };
                    rows.push(row(
                        format!("real curve g={genus} nu={nu}"),
                        SpaceDescriptor::RealCurve { genus, nu },
                        Expected { gbr: Some(gbr.clone()), bw: Some(gbr), rbr: Some(two(nu)), ..Default::default() },
                        "BW(V) = GBR(V_top) for real curves",
                    ));
                }
            }
            rows
        }
        "surfaces" => {
            let mut rows = Vec::new();
            for genus in 0..=3u32 {
                for nu in 0..=3u32 {
                    let gbr = if nu == 0 {
                        four_plus_twos(genus)
                    } else {
                        z(&[8]).direct_sum(&AbGroup::power(4, (nu - 1) as usize)).direct_sum(&two(genus))
                    };
                    rows.push(row(
                        format!("surface g={genus} nu={nu}"),
                        SpaceDescriptor::SurfaceWithInvolution { genus, nu },
                        Expected { gbr: Some(gbr), rbr: Some(two(nu)), ..Default::default() },
                        "GBR of an oriented surface with involution",
                    ));
                }
            }
            rows
        }
        "exe" => [4u32, 3]
            .into_iter()
            .map(|rho| {
                let base = z(&[2, 2, 2, 2, 2]);
                row(
                    format!("E x E rho={rho}"),
                    SpaceDescriptor::ComplexSurfaceWitt { rho, h1: 4, two_tors_h3: 0, h3tors: Some(vec![]) },
                    Expected {
                        q2: Some(base.clone()),
                        gbr: Some(base.clone()),
                        wr: Some(base.clone()),
                        w: Some(base.direct_sum(&two(rho))),
                        bw: Some(base.direct_sum(&AbGroup::divisible(rho))),
                        ..Default::default()
                    },
                    "product of two elliptic curves over C",
                )
            })
            .collect(),
        "s50" => {
            let d = SpaceDescriptor::FreeFourDim {
                h1quot: 1,
                h1quot_reduced: 0,
                two_tors_h3: 1,
                h3tors_exponent_le_2: true,
                h3tors: None,
            };
            let mut r = row(
                "S^{5,0}".into(),
                d,
                Expected { gbr: Some(z(&[8])), wr: Some(z(&[8])), ..Default::default() },
                "4-sphere with antipodal involution: WR = GBR = Z/8",
            );
            for slot in [&mut r.report.gbr, &mut r.report.wr] {
                if let Some(GroupValue::Extension(e)) = slot.take() {
                    *slot = Some(e.with_resolution(z(&[8]))?.into());
                }
            }
            vec![r]
        }
        other => {
            return Err(Error::InvalidDescriptor(format!(
                "unknown table {other:?}; available: {}",
                GOLDEN_TABLES.join(", ")
            )))
        }
    };
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gbr(d: SpaceDescriptor) -> AbGroup {
        compute_gbr(&d).unwrap().resolved().unwrap().clone()
    }

    #[test]
    fn q2_examples() {
        let point = SpaceDescriptor::TrivialAction { components: 1, b1: 0, b2: 0, bockstein_rank: 0 };
        assert_eq!(compute_q2(&point).unwrap(), z(&[4]));
        assert_eq!(compute_q2(&SpaceDescriptor::Graph { nu: 0, h1quot: 3 }).unwrap(), z(&[2, 2, 4]));
        assert_eq!(compute_q2(&SpaceDescriptor::RealCurve { genus: 2, nu: 3 }).unwrap(), z(&[2, 2, 2, 2, 4]));
    }

    #[test]
    fn rbr_examples() {
        assert_eq!(compute_rbr(&SpaceDescriptor::RealCurve { genus: 1, nu: 2 }).unwrap(), z(&[2, 2]));
        let point = SpaceDescriptor::TrivialAction { components: 1, b1: 0, b2: 0, bockstein_rank: 0 };
        assert_eq!(compute_rbr(&point).unwrap(), z(&[2]));
        let d = SpaceDescriptor::FreeProduct { h0: 1, h1: 0, h3tors: vec![3] };
        assert_eq!(compute_rbr(&d).unwrap(), z(&[3]));
    }

    #[test]
    fn gbr_examples() {
        assert_eq!(gbr(SpaceDescriptor::TrivialAction { components: 1, b1: 1, b2: 1, bockstein_rank: 1 }), z(&[4, 8]));
        assert_eq!(gbr(SpaceDescriptor::Graph { nu: 2, h1quot: 0 }), z(&[4, 8]));
        assert_eq!(gbr(SpaceDescriptor::RealCurve { genus: 2, nu: 0 }), z(&[2, 2, 4]));
        assert_eq!(gbr(SpaceDescriptor::ComplexCurve { h1: 2 }), z(&[2, 2, 2]));
        let bad = SpaceDescriptor::TrivialAction { components: 1, b1: 1, b2: 0, bockstein_rank: 1 };
        assert!(matches!(compute_gbr(&bad), Err(Error::InvalidDescriptor(_))));
    }

    #[test]
    fn unresolved_gbr_is_an_extension() {
        let d = SpaceDescriptor::RealProjective { rho0: 0, rbr: z(&[2]), h1g: 2 };
        match compute_gbr(&d).unwrap() {
            GroupValue::Extension(e) => {
                assert_eq!(e.sub, z(&[2]));
                assert_eq!(e.quotient, z(&[2, 4]));
                assert_eq!(e.resolved, None);
            }
            other => panic!("expected an extension, got {other:?}"),
        }
    }

    #[test]
    fn wr_examples() {
        let exe = SpaceDescriptor::FreeProduct { h0: 1, h1: 4, h3tors: vec![] };
        assert_eq!(compute_wr(&exe).unwrap(), GroupValue::Resolved(two(5)));
        let s4 = SpaceDescriptor::FreeProduct { h0: 1, h1: 0, h3tors: vec![] };
        assert_eq!(compute_wr(&s4).unwrap(), GroupValue::Resolved(z(&[2])));
        let s50 = SpaceDescriptor::FreeFourDim {
            h1quot: 1,
            h1quot_reduced: 0,
            two_tors_h3: 1,
            h3tors_exponent_le_2: true,
            h3tors: None,
        };
        match compute_wr(&s50).unwrap() {
            GroupValue::Extension(e) => {
                assert_eq!((e.sub, e.quotient, e.resolved), (z(&[2]), z(&[4]), None));
            }
            other => panic!("expected an extension, got {other:?}"),
        }
        assert!(matches!(compute_wr(&SpaceDescriptor::Graph { nu: 1, h1quot: 0 }), Err(Error::Unsupported(_))));
    }

    #[test]
    fn variety_examples() {
        let exe = SpaceDescriptor::ComplexProjective { rho: 4, h1: 4, h0: 1, h3tors: vec![] };
        let r = compute_variety(&exe).unwrap();
        assert_eq!(r.bw.unwrap().resolved().unwrap(), &two(5).direct_sum(&AbGroup::divisible(4)));
        let flat = SpaceDescriptor::ComplexProjective { rho: 0, h1: 2, h0: 1, h3tors: vec![2] };
        let r = compute_variety(&flat).unwrap();
        assert_eq!(r.bw, r.gbr);
        let real = SpaceDescriptor::RealProjective { rho0: 0, rbr: z(&[2, 2]), h1g: 1 };
        assert_eq!(compute_variety(&real).unwrap().br, Some(z(&[2, 2])));
        assert!(compute_variety(&SpaceDescriptor::Graph { nu: 1, h1quot: 0 }).is_err());
    }

    #[test]
    fn real_surface_without_points() {
        let d = SpaceDescriptor::RealSurfaceNoPoints { rho0: 1, two_tors_br: 3, h1quot_reduced: 1, h3tors: None };
        let r = compute_variety(&d).unwrap();
        let GroupValue::Extension(wr) = r.wr.unwrap() else { panic!() };
        assert_eq!((wr.sub, wr.quotient), (two(2), z(&[2, 4])));
        let GroupValue::Extension(w) = r.w.unwrap() else { panic!() };
        assert_eq!(w.sub, two(3));
        let bad = SpaceDescriptor::RealSurfaceNoPoints { rho0: 4, two_tors_br: 3, h1quot_reduced: 1, h3tors: None };
        assert!(compute_variety(&bad).is_err());
        // With no 2-torsion beyond (Z/2)^rho0 everything resolves.
        let d = SpaceDescriptor::RealSurfaceNoPoints { rho0: 2, two_tors_br: 2, h1quot_reduced: 0, h3tors: Some(vec![]) };
        let r = compute_variety(&d).unwrap();
        assert_eq!(r.w.unwrap().resolved(), Some(&z(&[2, 2, 4])));
        assert_eq!(r.bw.unwrap().resolved(), Some(&z(&[4]).direct_sum(&AbGroup::divisible(2))));
    }

    #[test]
    fn free_four_dim_requires_reduced_h1() {
        let d = SpaceDescriptor::FreeFourDim {
            h1quot: 2,
            h1quot_reduced: 2,
            two_tors_h3: 0,
            h3tors_exponent_le_2: true,
            h3tors: None,
        };
        assert!(matches!(d.validate(), Err(Error::InvalidDescriptor(_))));
    }

    #[test]
    fn descriptor_json() {
        let d: SpaceDescriptor = serde_json::from_str(r#"{"variant":"graph","nu":2,"h1quot":0}"#).unwrap();
        assert_eq!(d, SpaceDescriptor::Graph { nu: 2, h1quot: 0 });
        let d: SpaceDescriptor =
            serde_json::from_str(r#"{"variant":"trivial_action","b1":1,"b2":1,"bockstein_rank":1}"#).unwrap();
        assert_eq!(d, SpaceDescriptor::TrivialAction { components: 1, b1: 1, b2: 1, bockstein_rank: 1 });
        assert!(serde_json::from_str::<SpaceDescriptor>(r#"{"variant":"graph","nu":2}"#).is_err());
        assert!(serde_json::from_str::<SpaceDescriptor>(r#"{"variant":"graph","nu":2,"h1quot":0,"x":1}"#).is_err());
    }

    #[test]
    fn every_golden_table_matches() {
        for name in GOLDEN_TABLES {
            for row in golden_table(name).unwrap() {
                assert!(row.mismatches().is_empty(), "{}: {:?}", row.name, row.mismatches());
            }
        }
        assert!(golden_table("nope").is_err());
    }

    fn descriptors() -> impl Strategy<Value = SpaceDescriptor> {
        prop_oneof![
            (1u32..3, 0u32..4, 0u32..4, 0u32..4).prop_map(|(c, b1, b2, r)| SpaceDescriptor::TrivialAction {
                components: c,
                b1,
                b2,
                bockstein_rank: r.min(b1).min(b2),
            }),
            (0u32..4, 1u32..4).prop_map(|(nu, h)| SpaceDescriptor::Graph { nu, h1quot: h }),
            (0u32..4, 0u32..4).prop_map(|(g, nu)| SpaceDescriptor::SurfaceWithInvolution { genus: g, nu }),
            (0u32..4, 0u32..4).prop_map(|(g, nu)| SpaceDescriptor::RealCurve { genus: g, nu }),
            (0u32..4).prop_map(|h1| SpaceDescriptor::ComplexCurve { h1 }),
            (1u32..3, 0u32..4, prop::collection::vec(2u64..9, 0..3))
                .prop_map(|(h0, h1, h3tors)| SpaceDescriptor::FreeProduct { h0, h1, h3tors }),
        ]
    }

    proptest! {
        #[test]
        fn resolved_reports_have_consistent_orders(d in descriptors()) {
            let r = report(&d).unwrap();
            prop_assert_eq!(r.orders_consistent(), Some(true));
            prop_assert!(r.q2.exponent().divides(4));
            prop_assert_eq!(report(&d.clone()).unwrap(), r);
        }

        #[test]
        fn real_curves_agree_with_graphs(g in 0u32..3, nu in 1u32..4) {
            let curve = report(&SpaceDescriptor::RealCurve { genus: g, nu }).unwrap();
            let graph = report(&SpaceDescriptor::Graph { nu, h1quot: g }).unwrap();
            prop_assert_eq!(curve.q2, graph.q2);
            prop_assert_eq!(curve.rbr, graph.rbr);
            prop_assert_eq!(curve.gbr, graph.gbr);
        }
    }
}
