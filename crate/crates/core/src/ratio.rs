use std::fmt;
use std::str::FromStr;

use num_rational::Ratio as R;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A non-negative exact rational, always reduced. Serialises as
/// `{"num": …, "den": …}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ratio(R<u128>);

impl Ratio {
    pub fn new(num: u128, den: u128) -> Ratio {
        assert!(den > 0, "zero denominator");
        Ratio(R::new(num, den))
    }

    pub fn zero() -> Ratio {
        Ratio::new(0, 1)
    }

    pub fn one() -> Ratio {
        Ratio::new(1, 1)
    }

    pub fn num(&self) -> u128 {
        *self.0.numer()
    }

    pub fn den(&self) -> u128 {
        *self.0.denom()
    }

    pub fn to_f64(&self) -> f64 {
        self.num() as f64 / self.den() as f64
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num(), self.den())
    }
}

impl FromStr for Ratio {
    type Err = Error;

    fn from_str(s: &str) -> Result<Ratio> {
        let bad = || Error::Parse {
            pos: 0,
            msg: format!("expected a ratio p/q, found `{s}`"),
        };
        let (a, b) = s.split_once('/').unwrap_or((s, "1"));
        let num: u128 = a.trim().parse().map_err(|_| bad())?;
        let den: u128 = b.trim().parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(bad());
        }
        Ok(Ratio::new(num, den))
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Ratio", 2)?;
        st.serialize_field("num", &self.num())?;
        st.serialize_field("den", &self.den())?;
        st.end()
    }
}
