//! Text forms accepted on the command line.

use crate::asymptotic::{DominantTuple, Generator};
use crate::error::{Error, Result};
use crate::weyl::{AffinePerm, GenSet, Partition, PartitionData};

fn parse_err(what: &str, s: &str) -> Error {
    Error::Parse(format!("cannot read {what} from {s:?}"))
}

fn int(s: &str) -> Result<i64> {
    s.trim().replace('−', "-").parse().map_err(|_| parse_err("an integer", s))
}

/// An element of `W` in one of the forms `w[-1,4]` (or `[-1,4]`), `s1*s0*w^2`, `e` or
/// `{"n":2,"window":[-1,4]}`. In the word form `w` stands for `ω`. The rank
/// is needed for word forms and checked against the others when given.
pub fn parse_element(n: Option<usize>, s: &str) -> Result<AffinePerm> {
    let s = s.trim();
    let check = |w: AffinePerm| match n {
        Some(n) if n != w.rank() => Err(Error::RankMismatch(n, w.rank())),
        _ => Ok(w),
    };
    if s.starts_with('{') {
        let w: AffinePerm = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        return check(w);
    }
    let bare = s.strip_prefix('w').unwrap_or(s);
    if let Some(body) = bare.strip_prefix('[').and_then(|b| b.strip_suffix(']')) {
        let window = body.split(',').map(int).collect::<Result<Vec<_>>>()?;
        return check(AffinePerm::from_window(window.len(), window)?);
    }
    let n = n.ok_or_else(|| Error::Parse(format!("the rank is needed to read {s:?}")))?;
    let mut w = AffinePerm::identity(n);
    for factor in s.split('*').map(str::trim) {
        let next = if factor == "e" || factor == "1" {
            AffinePerm::identity(n)
        } else if let Some(i) = factor.strip_prefix('s') {
            let i = i.parse().map_err(|_| parse_err("a generator", factor))?;
            AffinePerm::simple(n, i)?
        } else if factor == "w" {
            AffinePerm::omega(n)
        } else if let Some(k) = factor.strip_prefix("w^") {
            AffinePerm::omega_pow(n, int(k.trim_matches(|c| c == '(' || c == ')'))?)
        } else {
            return Err(parse_err("an element", factor));
        };
        w = w.compose(&next)?;
    }
    Ok(w)
}

/// `s1,s2`, `1,2`, `{}` or the empty string.
pub fn parse_genset(s: &str) -> Result<GenSet> {
    let s = s.trim().trim_matches(|c| c == '{' || c == '}');
    let mut out = GenSet::EMPTY;
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let i = part
            .trim_start_matches('s')
            .parse()
            .map_err(|_| parse_err("a generator", part))?;
        out.insert(i);
    }
    Ok(out)
}

/// `2,1` or `(2,1)`.
pub fn parse_partition(s: &str) -> Result<Partition> {
    let s = s.trim().trim_matches(|c| c == '(' || c == ')');
    let parts = s
        .split(',')
        .map(|p| p.trim().parse().map_err(|_| parse_err("a partition", s)))
        .collect::<Result<Vec<usize>>>()?;
    Partition::new(parts)
}

/// A lattice point as JSON, e.g. `[[1],[0]]`.
pub fn parse_tuple(data: &PartitionData, s: &str) -> Result<DominantTuple> {
    let blocks: Vec<Vec<i64>> = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    DominantTuple::new(data, blocks)
}

/// `i,j` for `y_{ij}`, `-i` for the inverse of `y_{i m_i}`, `e` for the unit.
pub fn parse_generator(s: &str) -> Result<Generator> {
    let s = s.trim();
    if s == "e" || s == "0" {
        return Ok(Generator::Identity);
    }
    if let Some(i) = s.strip_prefix('-') {
        return Ok(Generator::Inv(i.parse().map_err(|_| parse_err("a generator", s))?));
    }
    let mut it = s.split(',').map(|p| p.trim().parse::<usize>());
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(i)), Some(Ok(j)), None) => Ok(Generator::Pos(i, j)),
        _ => Err(parse_err("a generator", s)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elements() {
        let a = parse_element(None, "w[-1,4]").unwrap();
        assert_eq!(a.window(), &[-1, 4]);
        assert_eq!(parse_element(Some(2), "w[−1,4]").unwrap(), a);
        assert_eq!(parse_element(None, "[-1,4]").unwrap(), a);
        assert_eq!(parse_element(Some(2), "s1*s0").unwrap(), a);
        assert_eq!(parse_element(None, r#"{"n":2,"window":[-1,4]}"#).unwrap(), a);
        assert!(parse_element(Some(3), "w[-1,4]").is_err());
        assert!(parse_element(None, "s1").is_err());
        assert_eq!(parse_element(Some(3), "e").unwrap(), AffinePerm::identity(3));
        assert_eq!(parse_element(Some(3), "w^2").unwrap(), AffinePerm::omega_pow(3, 2));
        assert_eq!(parse_element(Some(3), "w^-1").unwrap(), AffinePerm::omega_pow(3, -1));
        let b = parse_element(Some(2), "s1*s0*w^2").unwrap();
        assert_eq!(b, a.compose(&AffinePerm::omega_pow(2, 2)).unwrap());
        assert!(parse_element(Some(2), "t1").is_err());
    }

    #[test]
    fn other_forms() {
        assert_eq!(parse_genset("s1,s2").unwrap(), GenSet::from_indices([1, 2]));
        assert_eq!(parse_genset("").unwrap(), GenSet::EMPTY);
        assert_eq!(parse_partition("(2,1)").unwrap().parts(), &[2, 1]);
        assert!(parse_partition("1,2").is_err());
        let d = PartitionData::from_parts(&[2, 1]).unwrap();
        assert!(parse_tuple(&d, "[[1],[0]]").is_ok());
        assert!(parse_tuple(&d, "[[1,0]]").is_err());
        assert_eq!(parse_generator("1,2").unwrap(), Generator::Pos(1, 2));
        assert_eq!(parse_generator("-2").unwrap(), Generator::Inv(2));
        assert_eq!(parse_generator("e").unwrap(), Generator::Identity);
    }
}
