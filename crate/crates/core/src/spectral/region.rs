use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::linalg::C64;

/// Interval end point of a rectangle side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub value: f64,
    pub inclusive: bool,
}

impl Edge {
    pub fn closed(value: f64) -> Self {
        Self { value, inclusive: true }
    }

    pub fn open(value: f64) -> Self {
        Self {
            value,
            inclusive: false,
        }
    }

    pub fn unbounded_below() -> Self {
        Self::closed(f64::NEG_INFINITY)
    }

    pub fn unbounded_above() -> Self {
        Self::closed(f64::INFINITY)
    }
}

/// Finite description of a plane set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Region {
    Rect {
        re_lo: Edge,
        re_hi: Edge,
        im_lo: Edge,
        im_hi: Edge,
    },
    /// The horizontal line `Im z = c`.
    HLine {
        c: f64,
    },
    /// Closed discs of radius `radius` around each point.
    Points {
        points: Vec<C64>,
        radius: f64,
    },
    Union {
        parts: Vec<Region>,
    },
    /// `{ x − iy : x + iy ∈ inner }`.
    Conjugate {
        inner: Box<Region>,
    },
    /// `{ −z : z ∈ inner }`.
    Negate {
        inner: Box<Region>,
    },
    /// `inner + delta`.
    Shift {
        inner: Box<Region>,
        delta: C64,
    },
}

/// Outcome of a membership test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Inside,
    Outside,
    /// Within the band of an excluded edge without sitting on it.
    Ambiguous,
}

/// Edge bands: points within `band` of an included edge are inside; points
/// within `on_edge` of an excluded edge lie on it and are outside; points
/// between `on_edge` and `band` of an excluded edge are ambiguous.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryBand {
    pub band: f64,
    pub on_edge: f64,
}

impl From<&crate::tol::Tolerances> for BoundaryBand {
    fn from(t: &crate::tol::Tolerances) -> Self {
        Self {
            band: t.boundary,
            on_edge: t.on_edge,
        }
    }
}

fn interval(x: f64, lo: Edge, hi: Edge, b: BoundaryBand) -> Membership {
    let near = |edge: Edge| edge.value.is_finite() && (x - edge.value).abs() <= b.band;
    let on = |edge: Edge| (x - edge.value).abs() <= b.on_edge;
    for edge in [lo, hi] {
        if near(edge) {
            if edge.inclusive {
                return Membership::Inside;
            }
            if on(edge) {
                return Membership::Outside;
            }
            // An excluded edge with the other edge included and coincident
            // (degenerate interval) still yields Inside above.
            return Membership::Ambiguous;
        }
    }
    if x > lo.value && x < hi.value {
        Membership::Inside
    } else {
        Membership::Outside
    }
}

impl Region {
    /// The closed strip `−π ≤ Im z ≤ π`.
    pub fn strip() -> Self {
        Self::horizontal_band(Edge::closed(-PI), Edge::closed(PI))
    }

    /// The open strip `−π < Im z < π`.
    pub fn strip_interior() -> Self {
        Self::horizontal_band(Edge::open(-PI), Edge::open(PI))
    }

    /// `∂S = (ℝ − iπ) ∪ (ℝ + iπ)`.
    pub fn strip_boundary() -> Self {
        Self::Union {
            parts: vec![Self::HLine { c: -PI }, Self::HLine { c: PI }],
        }
    }

    /// `ℝ + i(lo, hi)` with the given edge types.
    pub fn horizontal_band(lo: Edge, hi: Edge) -> Self {
        Self::Rect {
            re_lo: Edge::unbounded_below(),
            re_hi: Edge::unbounded_above(),
            im_lo: lo,
            im_hi: hi,
        }
    }

    pub fn whole_plane() -> Self {
        Self::horizontal_band(Edge::unbounded_below(), Edge::unbounded_above())
    }

    pub fn empty() -> Self {
        Self::Union { parts: Vec::new() }
    }

    pub fn point(z: C64, radius: f64) -> Self {
        Self::Points {
            points: vec![z],
            radius,
        }
    }

    pub fn conjugate(self) -> Self {
        Self::Conjugate { inner: Box::new(self) }
    }

    pub fn negate(self) -> Self {
        Self::Negate { inner: Box::new(self) }
    }

    pub fn shift(self, delta: C64) -> Self {
        Self::Shift {
            inner: Box::new(self),
            delta,
        }
    }

    pub fn membership(&self, z: C64, b: BoundaryBand) -> Membership {
        match self {
            Region::Rect {
                re_lo,
                re_hi,
                im_lo,
                im_hi,
            } => {
                let re = interval(z.re, *re_lo, *re_hi, b);
                let im = interval(z.im, *im_lo, *im_hi, b);
                match (re, im) {
                    (Membership::Outside, _) | (_, Membership::Outside) => Membership::Outside,
                    (Membership::Ambiguous, _) | (_, Membership::Ambiguous) => Membership::Ambiguous,
                    _ => Membership::Inside,
                }
            }
            Region::HLine { c } => {
                if (z.im - c).abs() <= b.band {
                    Membership::Inside
                } else {
                    Membership::Outside
                }
            }
            Region::Points { points, radius } => {
                if points.iter().any(|p| (z - p).norm() <= *radius) {
                    Membership::Inside
                } else {
                    Membership::Outside
                }
            }
            Region::Union { parts } => {
                let mut ambiguous = false;
                for part in parts {
                    match part.membership(z, b) {
                        Membership::Inside => return Membership::Inside,
                        Membership::Ambiguous => ambiguous = true,
                        Membership::Outside => {}
                    }
                }
                if ambiguous {
                    Membership::Ambiguous
                } else {
                    Membership::Outside
                }
            }
            Region::Conjugate { inner } => inner.membership(z.conj(), b),
            Region::Negate { inner } => inner.membership(-z, b),
            Region::Shift { inner, delta } => inner.membership(z - delta, b),
        }
    }
}
