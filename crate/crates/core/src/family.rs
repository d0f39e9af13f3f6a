//! Set families: plain `q`-uniform families over a ground set, and
//! `q`-partite families with one element in each part.

use crate::error::{Error, Result};

/// Family of `q`-subsets of `{0, .., n-1}`. Members are stored sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    n: usize,
    q: usize,
    sets: Vec<Vec<usize>>,
}

impl SetFamily {
    pub fn new(n: usize, q: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidFamily("member size q must be positive".into()));
        }
        let mut sorted = Vec::with_capacity(sets.len());
        for (i, mut s) in sets.into_iter().enumerate() {
            if s.len() != q {
                return Err(Error::InvalidFamily(format!("member {i} has {} elements, expected {q}", s.len())));
            }
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidFamily(format!("member {i} repeats an element")));
            }
            if let Some(&bad) = s.iter().find(|&&u| u >= n) {
                return Err(Error::InvalidFamily(format!("member {i}: element {bad} outside 0..{n}")));
            }
            sorted.push(s);
        }
        Ok(SetFamily { n, q, sets: sorted })
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn member_size(&self) -> usize {
        self.q
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Every `q`-subset of `{0, .., n-1}` in lexicographic order.
    pub fn all_subsets(n: usize, q: usize) -> Self {
        fn rec(start: usize, n: usize, q: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == q {
                out.push(cur.clone());
                return;
            }
            for u in start..n {
                cur.push(u);
                rec(u + 1, n, q, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(0, n, q, &mut Vec::new(), &mut out);
        SetFamily::new(n, q, out).unwrap()
    }
}

/// Family over parts `U_1, .., U_q` of size `r` each. Element `i` of part `j`
/// has global index `j * r + i`; a member lists its `q` global indices, the
/// `j`-th one lying in part `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartiteFamily {
    q: usize,
    r: usize,
    sets: Vec<Vec<usize>>,
}

impl PartiteFamily {
    pub fn new(q: usize, r: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidFamily("partite families need q >= 2".into()));
        }
        let mut ordered = Vec::with_capacity(sets.len());
        for (i, s) in sets.into_iter().enumerate() {
            if s.len() != q {
                return Err(Error::InvalidFamily(format!("member {i} has {} elements, expected {q}", s.len())));
            }
            let mut coords = vec![usize::MAX; q];
            for &u in &s {
                if u >= q * r {
                    return Err(Error::InvalidFamily(format!("member {i}: element {u} outside 0..{}", q * r)));
                }
                let part = u / r;
                if coords[part] != usize::MAX {
                    return Err(Error::InvalidFamily(format!("member {i} has two elements in part {part}")));
                }
                coords[part] = u;
            }
            ordered.push(coords);
        }
        Ok(PartiteFamily { q, r, sets: ordered })
    }

    /// Builds a family from per-part coordinates in `0..r`.
    pub fn from_coordinates(q: usize, r: usize, members: &[Vec<usize>]) -> Result<Self> {
        let sets = members
            .iter()
            .map(|c| c.iter().enumerate().map(|(j, &i)| j * r + i).collect())
            .collect();
        PartiteFamily::new(q, r, sets)
    }

    pub fn dimensions(&self) -> usize {
        self.q
    }

    pub fn part_size(&self) -> usize {
        self.r
    }

    /// Members as global indices, ordered by part.
    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Position of member `set` inside part `part`, in `0..r`.
    pub fn coordinate(&self, set: usize, part: usize) -> usize {
        self.sets[set][part] - part * self.r
    }
}
