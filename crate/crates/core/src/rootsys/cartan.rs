use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::RootSystemError;

/// Largest rank accepted for the classical families.
pub const MAX_CLASSICAL_RANK: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl FromStr for Family {
    type Err = RootSystemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            other => Err(RootSystemError::UnknownFamily(other.to_string())),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// An irreducible crystallographic Cartan type, e.g. `A3` or `G2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CartanType {
    family: Family,
    rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self, RootSystemError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            return Err(RootSystemError::InvalidRank { family, rank });
        }
        if rank > MAX_CLASSICAL_RANK {
            return Err(RootSystemError::RankTooLarge { family, rank });
        }
        Ok(CartanType { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Gram matrix `(α_i, α_j)` of the simple roots, Bourbaki numbering,
    /// scaled so that every entry is an integer.
    pub fn gram_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut g = vec![vec![0i64; n]; n];
        let link = |i: usize, j: usize, v: i64, g: &mut Vec<Vec<i64>>| {
            g[i][j] = v;
            g[j][i] = v;
        };
        match self.family {
            Family::A => {
                for i in 0..n {
                    g[i][i] = 2;
                }
                for i in 0..n.saturating_sub(1) {
                    link(i, i + 1, -1, &mut g);
                }
            }
            Family::B => {
                for i in 0..n {
                    g[i][i] = if i + 1 < n { 4 } else { 2 };
                }
                for i in 0..n - 1 {
                    link(i, i + 1, -2, &mut g);
                }
            }
            Family::C => {
                for i in 0..n {
                    g[i][i] = if i + 1 < n { 2 } else { 4 };
                }
                for i in 0..n - 2 {
                    link(i, i + 1, -1, &mut g);
                }
                link(n - 2, n - 1, -2, &mut g);
            }
            Family::D => {
                for i in 0..n {
                    g[i][i] = 2;
                }
                for i in 0..n - 2 {
                    link(i, i + 1, -1, &mut g);
                }
                link(n - 3, n - 1, -1, &mut g);
            }
            Family::E => {
                for i in 0..n {
                    g[i][i] = 2;
                }
                link(0, 2, -1, &mut g);
                link(1, 3, -1, &mut g);
                for i in 2..n - 1 {
                    link(i, i + 1, -1, &mut g);
                }
            }
            Family::F => {
                g[0][0] = 4;
                g[1][1] = 4;
                g[2][2] = 2;
                g[3][3] = 2;
                link(0, 1, -2, &mut g);
                link(1, 2, -2, &mut g);
                link(2, 3, -1, &mut g);
            }
            Family::G => {
                g[0][0] = 2;
                g[1][1] = 6;
                link(0, 1, -3, &mut g);
            }
        }
        g
    }

    /// Fundamental degrees `d_1 ≤ … ≤ d_r` of the Weyl group.
    pub fn degrees(&self) -> Vec<u64> {
        let n = self.rank as u64;
        let mut d: Vec<u64> = match self.family {
            Family::A => (2..=n + 1).collect(),
            Family::B | Family::C => (1..=n).map(|i| 2 * i).collect(),
            Family::D => (1..n).map(|i| 2 * i).chain(std::iter::once(n)).collect(),
            Family::E => match n {
                6 => vec![2, 5, 6, 8, 9, 12],
                7 => vec![2, 6, 8, 10, 12, 14, 18],
                _ => vec![2, 8, 12, 14, 18, 20, 24, 30],
            },
            Family::F => vec![2, 6, 8, 12],
            Family::G => vec![2, 6],
        };
        d.sort_unstable();
        d
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = RootSystemError;

    /// Parses strings like `A3`, `e8`, `G2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (fam, rank) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        let family: Family = fam.parse()?;
        let rank: usize =
            rank.parse().map_err(|_| RootSystemError::UnknownFamily(s.to_string()))?;
        CartanType::new(family, rank)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_validation() {
        assert!(CartanType::new(Family::A, 0).is_err());
        assert!(CartanType::new(Family::D, 2).is_err());
        assert!(CartanType::new(Family::E, 5).is_err());
        assert!(CartanType::new(Family::F, 3).is_err());
        assert!(CartanType::new(Family::G, 3).is_err());
        assert!(CartanType::new(Family::B, 1).is_err());
        assert!(CartanType::new(Family::E, 8).is_ok());
    }

    #[test]
    fn parse_roundtrip() {
        let t: CartanType = "g2".parse().unwrap();
        assert_eq!(t.to_string(), "G2");
        assert!("X3".parse::<CartanType>().is_err());
        assert!("A0".parse::<CartanType>().is_err());
    }

    #[test]
    fn gram_is_symmetric_with_even_diagonal() {
        for t in ["A4", "B3", "C3", "D5", "E6", "E7", "E8", "F4", "G2"] {
            let ct: CartanType = t.parse().unwrap();
            let g = ct.gram_matrix();
            for i in 0..ct.rank() {
                assert!(g[i][i] > 0);
                for j in 0..ct.rank() {
                    assert_eq!(g[i][j], g[j][i]);
                    // Cartan integers 2(α_i,α_j)/(α_j,α_j)
                    assert_eq!((2 * g[i][j]) % g[j][j], 0, "{t}");
                }
            }
        }
    }
}
