use serde::{Deserialize, Serialize};

use super::SimplicialSet;

/// The simplicial identity a violation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    /// `d_i d_j = d_{j-1} d_i` for `i < j`.
    FaceFace,
    /// `d_i s_j = s_{j-1} d_i` for `i < j`.
    FaceDegeneracyBelow,
    /// `d_j s_j = d_{j+1} s_j = id`.
    FaceDegeneracyIdentity,
    /// `d_i s_j = s_j d_{i-1}` for `i > j + 1`.
    FaceDegeneracyAbove,
    /// `s_i s_j = s_{j+1} s_i` for `i ≤ j`.
    DegeneracyDegeneracy,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub identity: Identity,
    /// Level of the cell the identity was evaluated on.
    pub level: usize,
    pub indices: (usize, usize),
    pub cell: String,
}

/// Checks all simplicial identities wherever both sides exist within the
/// bound. Returns an empty list iff they all hold.
pub fn validate(x: &SimplicialSet) -> Vec<Violation> {
    let d = x.dim_bound();
    let mut out = Vec::new();
    let mut push = |identity, level, i, j, cell: usize| {
        out.push(Violation { identity, level, indices: (i, j), cell: x.id(level, cell).to_string() });
    };
    for n in 0..=d {
        for c in 0..x.level_size(n) {
            if n >= 2 {
                for j in 1..=n {
                    for i in 0..j {
                        let lhs = x.face(n - 1, i, x.face(n, j, c));
                        let rhs = x.face(n - 1, j - 1, x.face(n, i, c));
                        if lhs != rhs {
                            push(Identity::FaceFace, n, i, j, c);
                        }
                    }
                }
            }
            if n < d {
                // c at level n; s_j c at level n + 1
                for j in 0..=n {
                    let s = x.degeneracy(n, j, c);
                    for i in 0..=n + 1 {
                        let lhs = x.face(n + 1, i, s);
                        let ok = if i < j {
                            lhs == x.degeneracy(n - 1, j - 1, x.face(n, i, c))
                        } else if i == j || i == j + 1 {
                            lhs == c
                        } else {
                            lhs == x.degeneracy(n - 1, j, x.face(n, i - 1, c))
                        };
                        if !ok {
                            let id = if i < j {
                                Identity::FaceDegeneracyBelow
                            } else if i <= j + 1 {
                                Identity::FaceDegeneracyIdentity
                            } else {
                                Identity::FaceDegeneracyAbove
                            };
                            push(id, n, i, j, c);
                        }
                    }
                }
            }
            if n + 2 <= d {
                for j in 0..=n {
                    for i in 0..=j {
                        let lhs = x.degeneracy(n + 1, i, x.degeneracy(n, j, c));
                        let rhs = x.degeneracy(n + 1, j + 1, x.degeneracy(n, i, c));
                        if lhs != rhs {
                            push(Identity::DegeneracyDegeneracy, n, i, j, c);
                        }
                    }
                }
            }
        }
    }
    out
}
