use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A scalar argument is outside its admissible range.
    InvalidParameter {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },
    /// An operation that needs at least one record got none.
    Empty(&'static str),
    /// The planform residual keeps one sign over the whole aspect-ratio bracket.
    InfeasiblePlanform {
        aspect_lo: f64,
        aspect_hi: f64,
        residual_lo: f64,
        residual_hi: f64,
    },
    /// Simpson's rule needs an even number of intervals.
    OddIntervalCount(usize),
    /// Station boundaries must fall on sample points.
    StationMisaligned { intervals: usize, stations: usize },
    /// The hexagon does not fit the planform.
    CellTooLarge {
        circumdiameter: f64,
        span: f64,
        chord: f64,
    },
    /// A sample table is not uniform, not sorted, or too short.
    MalformedSamples(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter {
                name,
                value,
                expected,
            } => write!(f, "invalid {name} = {value}: expected {expected}"),
            Error::Empty(what) => write!(f, "{what} is empty"),
            Error::InfeasiblePlanform {
                aspect_lo,
                aspect_hi,
                residual_lo,
                residual_hi,
            } => write!(
                f,
                "no planform satisfies the cruise constraint: residual is {residual_lo:.6e} N/m^2 \
                 at AR = {aspect_lo} and {residual_hi:.6e} N/m^2 at AR = {aspect_hi} (no sign change)"
            ),
            Error::OddIntervalCount(n) => {
                write!(f, "composite Simpson needs an even interval count, got {n}")
            }
            Error::StationMisaligned {
                intervals,
                stations,
            } => write!(
                f,
                "{stations} stations do not split {intervals} sample intervals into even Simpson panels"
            ),
            Error::CellTooLarge {
                circumdiameter,
                span,
                chord,
            } => write!(
                f,
                "hexagon circumdiameter {circumdiameter} m exceeds twice the smaller planform side ({span} m x {chord} m)"
            ),
            Error::MalformedSamples(why) => write!(f, "malformed load samples: {why}"),
        }
    }
}

impl core::error::Error for Error {}

/// Rejects NaN as well as values that fail `ok`.
pub(crate) fn check(
    name: &'static str,
    value: f64,
    expected: &'static str,
    ok: impl FnOnce(f64) -> bool,
) -> Result<f64> {
    if value.is_finite() && ok(value) {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            expected,
        })
    }
}

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64> {
    check(name, value, "a finite value > 0", |v| v > 0.0)
}

pub(crate) fn non_negative(name: &'static str, value: f64) -> Result<f64> {
    check(name, value, "a finite value >= 0", |v| v >= 0.0)
}
