//! The fully printed small embeddings.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rotation::{rows_from_table, RotationSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SporadicName {
    /// Triangular `K_17 - K_2`, the Case 5 graph for s=1.
    K17mK2,
    /// `K_8` in the double torus with its two quadrilaterals subdivided by
    /// `q0 = 8` and `q1 = 9`.
    K8q0q1,
    /// Triangular `K_11 - C_4`, missing (7,8), (8,9), (9,10), (10,7).
    K11mC4,
}

pub const ALL_SPORADIC: [SporadicName; 3] = [SporadicName::K17mK2, SporadicName::K8q0q1, SporadicName::K11mC4];

impl fmt::Display for SporadicName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for SporadicName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ALL_SPORADIC
            .iter()
            .copied()
            .find(|c| c.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Domain(format!("unknown sporadic embedding {s:?}")))
    }
}

const K17_MINUS_K2: &str = "
0. 1 a 8 5 9 4 13 12 14 b 7 10 6 11 2 3
1. 0 3 7 5 14 10 12 6 13 8 11 4 9 b 2 a
2. 3 0 11 13 4 8 6 12 5 10 7 14 9 a 1 b
3. 4 a 11 8 12 7 1 0 2 b 10 13 9 14 5 6
4. 3 6 10 8 2 13 0 9 1 11 14 7 12 b 5 a
5. 6 3 14 1 7 11 9 0 8 13 10 2 12 a 4 b
6. 7 a 14 11 0 10 4 3 5 b 13 1 12 2 8 9
7. 6 9 13 11 5 1 3 12 4 14 2 10 0 b 8 a
8. 9 6 2 4 10 14 12 3 11 1 13 5 0 a 7 b
9. 10 a 2 14 3 13 7 6 8 b 1 4 0 5 11 12
10. 9 12 1 14 8 4 6 0 7 2 5 13 3 b 11 a
11. 12 9 5 7 13 2 0 6 14 4 1 8 3 a 10 b
12. 13 a 5 2 6 1 10 9 11 b 4 7 3 8 14 0
13. 12 0 4 2 11 7 9 3 10 5 8 1 6 b 14 a
14. 0 12 8 10 1 5 3 9 2 7 4 11 6 a 13 b
a. 0 1 2 9 10 11 3 4 5 12 13 14 6 7 8
b. 0 14 13 6 5 4 12 11 10 3 2 1 9 8 7
";

const K8_Q0_Q1: &str = "
0. 2 7 3 1 4 5 6 8
2. 4 1 5 3 6 7 0 8
4. 6 3 7 5 0 1 2 8
6. 0 5 1 7 2 3 4 8
1. 7 6 5 2 4 0 3 9
3. 1 0 7 4 6 2 5 9
5. 3 2 1 6 0 4 7 9
7. 5 4 3 0 2 6 1 9
8. 6 4 2 0
9. 1 3 5 7
";

const K11_MINUS_C4: &str = "
0. 1 10 8 4 2 9 7 5 3 6
1. 0 6 4 8 5 9 3 7 2 10
2. 0 4 10 1 7 6 5 8 3 9
3. 0 5 10 4 7 1 9 2 8 6
4. 0 8 1 6 9 5 7 3 10 2
5. 0 7 4 9 1 8 2 6 10 3
6. 0 3 8 10 5 2 7 9 4 1
7. 0 9 6 2 1 3 4 5
8. 0 10 6 3 2 5 1 4
9. 0 2 3 1 5 4 6 7
10. 0 1 2 4 3 5 6 8
";

/// The printed table, canonicalized and validated.
pub fn sporadic(name: SporadicName) -> RotationSystem {
    let (modulus, table) = match name {
        SporadicName::K17mK2 => (15, K17_MINUS_K2),
        SporadicName::K8q0q1 => (0, K8_Q0_Q1),
        SporadicName::K11mC4 => (0, K11_MINUS_C4),
    };
    RotationSystem::new(modulus, rows_from_table(table)).expect("printed tables are valid rotation systems")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::{analyze, deficit, is_triangular_ruler, DeficitShape};
    use crate::vertex::VertexId;

    #[test]
    fn printed_rows() {
        let k8 = sporadic(SporadicName::K8q0q1);
        let q0: Vec<String> = k8
            .row(VertexId::Num(8))
            .unwrap()
            .iter()
            .map(|v| v.to_string())
            .collect();
        assert_eq!(q0.join(" "), "0 6 4 2");
        let k11 = sporadic(SporadicName::K11mC4);
        let r7: Vec<String> = k11
            .row(VertexId::Num(7))
            .unwrap()
            .iter()
            .map(|v| v.to_string())
            .collect();
        assert_eq!(r7.join(" "), "0 9 6 2 1 3 4 5");
    }

    #[test]
    fn all_triangular() {
        for name in ALL_SPORADIC {
            let rot = sporadic(name);
            assert!(is_triangular_ruler(&rot), "{name}");
            assert!(analyze(&rot).unwrap().triangular, "{name}");
        }
        assert_eq!(deficit(&sporadic(SporadicName::K11mC4)).shape, DeficitShape::C4);
        assert_eq!(deficit(&sporadic(SporadicName::K17mK2)).shape, DeficitShape::K2);
    }
}
