//! Bit-string parsing and formatting shared by the classical channel and the
//! protocol simulations.

use crate::error::{Error, Result};

/// Parses a string of '0'/'1' characters into bits.
pub fn parse(s: &str) -> Result<Vec<bool>> {
    if s.is_empty() {
        return Err(Error::InvalidArgument("empty bit string".into()));
    }
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::Parse(format!("invalid bit character {other:?}"))),
        })
        .collect()
}

/// Formats bits as a '0'/'1' string.
pub fn format(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Number of leading positions on which the two bit strings agree.
pub fn leading_matches(a: &[bool], b: &[bool]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}
