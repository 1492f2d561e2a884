//! Angles given either as exact rational multiples of π or as raw radians.

use std::f64::consts::PI;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational, q, qr, rational_from_f64, rational_to_f64, Rational};

#[derive(Clone, Debug, PartialEq)]
pub enum Angle {
    /// `r·π` with `r` rational.
    PiMultiple(Rational),
    Radians(f64),
}

impl Angle {
    pub fn pi_frac(num: i64, den: i64) -> Angle {
        Angle::PiMultiple(qr(num, den))
    }

    pub fn radians(&self) -> f64 {
        match self {
            Angle::PiMultiple(r) => rational_to_f64(r) * PI,
            Angle::Radians(t) => *t,
        }
    }

    /// Checks membership in `[0, π)`.
    pub fn check_range(&self) -> Result<()> {
        let ok = match self {
            Angle::PiMultiple(r) => !r.is_negative() && *r < q(1),
            Angle::Radians(t) => t.is_finite() && *t >= 0.0 && *t < PI,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::AngleOutOfRange(self.to_string()))
        }
    }

    /// `(a − b)/π`, exact when both are π-multiples.
    pub fn diff_over_pi(a: &Angle, b: &Angle) -> DiffOverPi {
        match (a, b) {
            (Angle::PiMultiple(x), Angle::PiMultiple(y)) => DiffOverPi::Exact(x - y),
            _ => DiffOverPi::Float((a.radians() - b.radians()) / PI),
        }
    }

    /// Exact direction vector `(c, s)` of the line through the origin at this
    /// angle, reduced mod π. Quarter multiples of π get integer directions;
    /// everything else uses the dyadic rationals of `cos`/`sin` of the reduced
    /// angle, so congruent π-multiples always produce identical lines.
    pub fn line_direction(&self) -> (Rational, Rational) {
        let reduced = match self {
            Angle::PiMultiple(r) => {
                let frac = r - r.floor();
                if frac.is_zero() {
                    return (q(1), q(0));
                }
                if frac == qr(1, 2) {
                    return (q(0), q(1));
                }
                if frac == qr(1, 4) {
                    return (q(1), q(1));
                }
                if frac == qr(3, 4) {
                    return (q(-1), q(1));
                }
                rational_to_f64(&frac) * PI
            }
            Angle::Radians(t) => t.rem_euclid(PI),
        };
        if reduced == 0.0 {
            return (q(1), q(0));
        }
        let c = rational_from_f64(reduced.cos()).unwrap_or_else(|_| q(1));
        let s = rational_from_f64(reduced.sin()).unwrap_or_else(|_| q(0));
        (c, s)
    }

    /// Shift by an integer multiple of π.
    pub fn shift_pi(&self, k: i64) -> Angle {
        match self {
            Angle::PiMultiple(r) => Angle::PiMultiple(r + q(k)),
            Angle::Radians(t) => Angle::Radians(t + k as f64 * PI),
        }
    }
}

/// `(a − b)/π` in whichever mode the inputs allowed.
#[derive(Clone, Debug, PartialEq)]
pub enum DiffOverPi {
    Exact(Rational),
    Float(f64),
}

impl DiffOverPi {
    /// Integer value when the difference is a multiple of π. Float
    /// differences within `1e-12` of an integer count as multiples.
    pub fn as_integer(&self) -> Option<i64> {
        match self {
            DiffOverPi::Exact(r) => {
                if r.denom().is_one() {
                    r.numer().try_into().ok()
                } else {
                    None
                }
            }
            DiffOverPi::Float(d) => {
                let k = d.round();
                ((d - k).abs() < 1e-12).then_some(k as i64)
            }
        }
    }

    pub fn floor(&self) -> i64 {
        match self {
            DiffOverPi::Exact(r) => {
                let (fl, _) = r.numer().div_mod_floor(r.denom());
                fl.try_into().unwrap_or(i64::MAX)
            }
            DiffOverPi::Float(d) => d.floor() as i64,
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::PiMultiple(r) => write!(f, "{}pi", format_rational(r)),
            Angle::Radians(t) => write!(f, "{t}"),
        }
    }
}

/// Parses `"p/qpi"`, `"p/q·pi"`, `"p/q*pi"`, `"pi"`, `"-pi"` or a float.
pub fn parse_angle(s: &str) -> Result<Angle> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty angle".into()));
    }
    if let Some(head) = t.strip_suffix("pi").or_else(|| t.strip_suffix("π")) {
        let head = head.trim_end();
        let head = head
            .strip_suffix('·')
            .or_else(|| head.strip_suffix('*'))
            .unwrap_or(head)
            .trim();
        let r = match head {
            "" | "+" => q(1),
            "-" => q(-1),
            h => parse_rational(h)?,
        };
        return Ok(Angle::PiMultiple(r));
    }
    let v: f64 = t.parse().map_err(|_| Error::Parse(format!("bad angle {t:?}")))?;
    if !v.is_finite() {
        return Err(Error::Parse(format!("non-finite angle {t:?}")));
    }
    Ok(Angle::Radians(v))
}

/// Comma-separated angle list.
pub fn parse_angle_list(s: &str) -> Result<Vec<Angle>> {
    if s.trim().is_empty() {
        return Err(Error::Parse("empty angle list".into()));
    }
    s.split(',').map(parse_angle).collect()
}
