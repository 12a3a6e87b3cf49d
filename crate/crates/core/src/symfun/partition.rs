use std::fmt;

use serde::{Deserialize, Serialize};

/// Integer partition with weakly decreasing positive parts. The empty
/// partition indexes the constant `p_0`-free monomial `1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// Builds from arbitrary parts: zeros dropped, parts sorted decreasing.
    pub fn from_parts(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Multiset union of parts (the index of `p_λ · p_μ`).
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Partition::from_parts(parts)
    }

    /// Parses `"3,1,1"`; the empty string is the empty partition.
    pub fn parse(s: &str) -> Option<Partition> {
        let s = s.trim();
        if s.is_empty() {
            return Some(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<u32>().ok().filter(|&p| p > 0))
            .collect::<Option<Vec<_>>>()?;
        Some(Partition::from_parts(parts))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Partitions of `weight` with at most `max_len` parts, lexicographically
/// decreasing: `(3), (2,1), (1,1,1)`.
pub fn partitions_of(weight: u32, max_len: usize) -> Vec<Partition> {
    fn rec(remaining: u32, cap: u32, max_len: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if cur.len() == max_len {
            return;
        }
        for p in (1..=cap.min(remaining)).rev() {
            cur.push(p);
            rec(remaining - p, p, max_len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(weight, weight, max_len, &mut Vec::new(), &mut out);
    out
}

/// All partitions of weight `0..=max_weight` with at most `max_len` parts,
/// by increasing weight, lexicographically decreasing within a weight.
pub fn partitions_up_to(max_weight: u32, max_len: usize) -> Vec<Partition> {
    (0..=max_weight).flat_map(|k| partitions_of(k, max_len)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerates_in_lex_decreasing_order() {
        let p: Vec<String> = partitions_of(4, 4).iter().map(|p| p.to_string()).collect();
        assert_eq!(p, ["4", "3,1", "2,2", "2,1,1", "1,1,1,1"]);
        assert_eq!(partitions_of(4, 2).len(), 3);
        assert_eq!(partitions_of(0, 3), vec![Partition::empty()]);
        // p(10) = 42
        assert_eq!(partitions_of(10, 10).len(), 42);
        assert_eq!(partitions_up_to(3, 3).len(), 1 + 1 + 2 + 3);
    }

    #[test]
    fn parse_and_union() {
        let a = Partition::parse("1, 3").unwrap();
        assert_eq!(a.parts(), &[3, 1]);
        assert_eq!(a.union(&Partition::parse("2").unwrap()).to_string(), "3,2,1");
        assert_eq!(Partition::parse(""), Some(Partition::empty()));
        assert!(Partition::parse("2,x").is_none());
        assert!(Partition::parse("2,0").is_none());
        assert_eq!(a.weight(), 4);
    }
}
