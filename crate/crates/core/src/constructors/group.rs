use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Finite group as a Cayley table. Element `mult[a][b]` is `a·b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    labels: Vec<String>,
    mult: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

/// File form of a group table.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupTableFile {
    pub order: usize,
    pub mult: Vec<Vec<usize>>,
    #[serde(default)]
    pub labels: Vec<String>,
}

impl GroupTable {
    /// Validates the Latin-square property, associativity, identity and
    /// inverses. Errors name the offending entries.
    pub fn new(labels: Vec<String>, mult: Vec<Vec<usize>>) -> Result<GroupTable> {
        let n = mult.len();
        if n == 0 {
            return Err(Error::Group("empty table".into()));
        }
        if labels.len() != n {
            return Err(Error::Group(format!("{} labels for order {n}", labels.len())));
        }
        for (a, row) in mult.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Group(format!("row {a} has length {}", row.len())));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(Error::Group(format!("entry {x} in row {a} is out of range")));
            }
            let distinct: BTreeSet<usize> = row.iter().copied().collect();
            if distinct.len() != n {
                return Err(Error::Group(format!("row {a} repeats an element (not a Latin square)")));
            }
        }
        for b in 0..n {
            let distinct: BTreeSet<usize> = (0..n).map(|a| mult[a][b]).collect();
            if distinct.len() != n {
                return Err(Error::Group(format!("column {b} repeats an element (not a Latin square)")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mult[mult[a][b]][c] != mult[a][mult[b][c]] {
                        return Err(Error::Group(format!(
                            "associativity fails at ({a}, {b}, {c}): ({}*{})*{} != {}*({}*{})",
                            labels[a], labels[b], labels[c], labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| mult[e][a] == a && mult[a][e] == a))
            .ok_or_else(|| Error::Group("no identity element".into()))?;
        let inverse = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| mult[a][b] == identity && mult[b][a] == identity)
                    .ok_or_else(|| Error::Group(format!("element {a} has no inverse")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupTable {
            labels,
            mult,
            identity,
            inverse,
        })
    }

    pub fn from_file(file: GroupTableFile) -> Result<GroupTable> {
        if file.mult.len() != file.order {
            return Err(Error::Group(format!(
                "order {} but {} rows",
                file.order,
                file.mult.len()
            )));
        }
        let labels = if file.labels.is_empty() {
            (0..file.order).map(|i| format!("g{i}")).collect()
        } else {
            file.labels
        };
        GroupTable::new(labels, file.mult)
    }

    pub fn to_file(&self) -> GroupTableFile {
        GroupTableFile {
            order: self.order(),
            mult: self.mult.clone(),
            labels: self.labels.clone(),
        }
    }

    pub fn order(&self) -> usize {
        self.mult.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mult
    }

    /// `a⁻¹ b⁻¹ a b`
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    /// `g⁻¹ h g`
    pub fn conjugate(&self, h: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), h), g)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Smallest subgroup containing `gens`, as sorted indices.
    pub fn closure(&self, gens: impl IntoIterator<Item = usize>) -> Vec<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::from([self.identity]);
        let mut frontier: Vec<usize> = gens.into_iter().collect();
        let gens = frontier.clone();
        while let Some(x) = frontier.pop() {
            if set.insert(x) {
                for &g in &gens {
                    frontier.push(self.mul(x, g));
                }
            }
        }
        set.into_iter().collect()
    }
}

/// Subgroup given by sorted element indices, with its own table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    elements: Vec<usize>,
    table: GroupTable,
}

impl Subgroup {
    pub fn new(g: &GroupTable, elements: &[usize]) -> Result<Subgroup> {
        let set: BTreeSet<usize> = elements.iter().copied().collect();
        if set.iter().any(|&x| x >= g.order()) {
            return Err(Error::Group("subgroup element out of range".into()));
        }
        if !set.contains(&g.identity()) {
            return Err(Error::Group("subset does not contain the identity".into()));
        }
        for &a in &set {
            if !set.contains(&g.inv(a)) {
                return Err(Error::Group(format!("{} has no inverse in the subset", g.label(a))));
            }
            for &b in &set {
                if !set.contains(&g.mul(a, b)) {
                    return Err(Error::Group(format!(
                        "{}*{} leaves the subset",
                        g.label(a),
                        g.label(b)
                    )));
                }
            }
        }
        let elements: Vec<usize> = set.into_iter().collect();
        let pos = |x: usize| elements.binary_search(&x).expect("closed");
        let mult = elements
            .iter()
            .map(|&a| elements.iter().map(|&b| pos(g.mul(a, b))).collect())
            .collect();
        let labels = elements.iter().map(|&a| g.label(a).to_string()).collect();
        let table = GroupTable::new(labels, mult)?;
        Ok(Subgroup { elements, table })
    }

    pub fn whole(g: &GroupTable) -> Subgroup {
        Subgroup {
            elements: (0..g.order()).collect(),
            table: g.clone(),
        }
    }

    /// Ambient indices, ascending; local index `i` is `elements()[i]`.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn table(&self) -> &GroupTable {
        &self.table
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn local_index(&self, ambient: usize) -> Option<usize> {
        self.elements.binary_search(&ambient).ok()
    }

    pub fn contains(&self, ambient: usize) -> bool {
        self.local_index(ambient).is_some()
    }

    pub fn is_normal_in(&self, g: &GroupTable) -> bool {
        (0..g.order()).all(|x| self.elements.iter().all(|&h| self.contains(g.conjugate(h, x))))
    }
}

/// `G' = ⟨[g, h]⟩`.
pub fn commutator_subgroup(g: &GroupTable) -> Subgroup {
    let n = g.order();
    let comms: BTreeSet<usize> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| g.commutator(a, b)).collect();
    let elems = g.closure(comms);
    Subgroup::new(g, &elems).expect("commutators generate a subgroup")
}

/// `G ⊇ G' ⊇ G'' ⊇ …` until it stabilizes, as subgroups of `G`.
pub fn derived_series(g: &GroupTable) -> Vec<Subgroup> {
    let mut out = vec![Subgroup::whole(g)];
    loop {
        let last = out.last().expect("nonempty");
        let d = commutator_subgroup(last.table());
        if d.order() == last.order() {
            return out;
        }
        let ambient: Vec<usize> = d.elements().iter().map(|&i| last.elements()[i]).collect();
        out.push(Subgroup::new(g, &ambient).expect("subgroup of a subgroup"));
    }
}

pub fn is_solvable(g: &GroupTable) -> bool {
    derived_series(g).last().map_or(true, |s| s.order() == 1)
}

fn perm_label(p: &[usize]) -> String {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut out = String::new();
    for s in 0..n {
        if seen[s] || p[s] == s {
            continue;
        }
        let mut cyc = vec![s + 1];
        seen[s] = true;
        let mut x = p[s];
        while x != s {
            seen[x] = true;
            cyc.push(x + 1);
            x = p[x];
        }
        out.push('(');
        out.push_str(&cyc.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","));
        out.push(')');
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

/// Group generated by permutations of `0..degree`, elements sorted by image
/// tuple so the identity comes first. Products compose right to left.
fn permutation_group(degree: usize, gens: &[Vec<usize>]) -> GroupTable {
    let id: Vec<usize> = (0..degree).collect();
    let mut set: BTreeSet<Vec<usize>> = BTreeSet::from([id]);
    let mut frontier: Vec<Vec<usize>> = set.iter().cloned().collect();
    while let Some(p) = frontier.pop() {
        for g in gens {
            let q: Vec<usize> = (0..degree).map(|i| p[g[i]]).collect();
            if set.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    let elems: Vec<Vec<usize>> = set.into_iter().collect();
    let pos = |p: &Vec<usize>| elems.binary_search(p).expect("closed");
    let mult = elems
        .iter()
        .map(|a| {
            elems
                .iter()
                .map(|b| pos(&(0..degree).map(|i| a[b[i]]).collect()))
                .collect()
        })
        .collect();
    let labels = elems.iter().map(|p| perm_label(p)).collect();
    GroupTable::new(labels, mult).expect("permutation groups are groups")
}

pub fn cyclic_group(n: usize) -> GroupTable {
    let labels = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{i}"),
        })
        .collect();
    let mult = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    GroupTable::new(labels, mult).expect("cyclic group")
}

/// Dihedral group of order `2n`: `r^i s^j` with `s r s = r⁻¹`.
pub fn dihedral_group(n: usize) -> GroupTable {
    let idx = |i: usize, j: usize| j * n + i;
    let rot = |i: usize| match i {
        0 => String::new(),
        1 => "r".to_string(),
        _ => format!("r^{i}"),
    };
    let mut labels = Vec::with_capacity(2 * n);
    for j in 0..2 {
        for i in 0..n {
            let s = format!("{}{}", rot(i), if j == 1 { "s" } else { "" });
            labels.push(if s.is_empty() { "1".to_string() } else { s });
        }
    }
    let mut mult = vec![vec![0; 2 * n]; 2 * n];
    for j in 0..2 {
        for i in 0..n {
            for l in 0..2 {
                for k in 0..n {
                    // r^i s^j r^k s^l = r^(i ± k) s^(j+l)
                    let ni = if j == 0 { (i + k) % n } else { (i + n - k) % n };
                    mult[idx(i, j)][idx(k, l)] = idx(ni, (j + l) % 2);
                }
            }
        }
    }
    GroupTable::new(labels, mult).expect("dihedral group")
}

pub fn symmetric_group(n: usize) -> GroupTable {
    let mut gens = Vec::new();
    if n >= 2 {
        let mut t: Vec<usize> = (0..n).collect();
        t.swap(0, 1);
        gens.push(t);
        gens.push((0..n).map(|i| (i + 1) % n).collect());
    }
    permutation_group(n, &gens)
}

pub fn alternating_group(n: usize) -> GroupTable {
    let gens: Vec<Vec<usize>> = (2..n)
        .map(|k| {
            let mut p: Vec<usize> = (0..n).collect();
            // 3-cycle (1 2 k+1)
            p[0] = 1;
            p[1] = k;
            p[k] = 0;
            p
        })
        .collect();
    permutation_group(n, &gens)
}

/// Quaternion group `{±1, ±i, ±j, ±k}`.
pub fn quaternion_group() -> GroupTable {
    let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"];
    // unit index u in 0..4 (1,i,j,k) and sign bit
    let table = [[(0, 0), (1, 0), (2, 0), (3, 0)], [(1, 0), (0, 1), (3, 0), (2, 1)], [(2, 0), (3, 1), (0, 1), (1, 0)], [(3, 0), (2, 0), (1, 1), (0, 1)]];
    let mult = (0..8)
        .map(|a| {
            (0..8)
                .map(|b| {
                    let (ua, sa) = (a / 2, a % 2);
                    let (ub, sb) = (b / 2, b % 2);
                    let (u, s) = table[ua][ub];
                    u * 2 + (sa + sb + s) % 2
                })
                .collect()
        })
        .collect();
    GroupTable::new(names.iter().map(|s| s.to_string()).collect(), mult).expect("Q8")
}

/// `Cn` (n ≤ 12), `Dn` (n ≤ 6, order 2n), `S3`, `S4`, `A4`, `Q8`.
pub fn builtin_group(name: &str) -> Result<GroupTable> {
    let unknown = || Error::UnknownGroup(name.to_string());
    let (head, tail) = name.split_at(name.find(|c: char| c.is_ascii_digit()).ok_or_else(unknown)?);
    let n: usize = tail.parse().map_err(|_| unknown())?;
    match (head, n) {
        ("C", 1..=12) => Ok(cyclic_group(n)),
        ("D", 1..=6) => Ok(dihedral_group(n)),
        ("S", 3) | ("S", 4) => Ok(symmetric_group(n)),
        ("A", 4) => Ok(alternating_group(4)),
        ("Q", 8) => Ok(quaternion_group()),
        _ => Err(unknown()),
    }
}

pub const BUILTIN_NAMES: &[&str] = &[
    "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11", "C12", "D1", "D2", "D3", "D4", "D5", "D6",
    "S3", "S4", "A4", "Q8",
];
