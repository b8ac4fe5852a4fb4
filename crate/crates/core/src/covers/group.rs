//! Finite groups as multiplication tables.

use std::collections::HashMap;
use std::fmt;
use std::io::BufRead;

#[derive(Debug, thiserror::Error)]
pub enum GroupError {
    #[error("group must have at least one element")]
    Empty,
    #[error("table is not {0}x{0}")]
    Shape(usize),
    #[error("entry {value} at row {row}, column {col} is out of range")]
    OutOfRange { row: usize, col: usize, value: usize },
    #[error("not a Latin square: {0}")]
    NotLatin(String),
    #[error("no identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A finite group on `0..size` with identity `0`.
#[derive(Clone, PartialEq, Eq)]
pub struct Group {
    name: String,
    size: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({}, order {})", self.name, self.size)
    }
}

impl Group {
    /// Validates `table` (row-major, `table[a*m+b] = a*b`) and relabels so the
    /// identity is element 0. Associativity is checked exhaustively.
    pub fn from_table(name: impl Into<String>, m: usize, table: Vec<u32>) -> Result<Self, GroupError> {
        let g = Self::from_table_unchecked_assoc(name, m, table)?;
        g.check_associative()?;
        Ok(g)
    }

    fn from_table_unchecked_assoc(name: impl Into<String>, m: usize, table: Vec<u32>) -> Result<Self, GroupError> {
        if m == 0 {
            return Err(GroupError::Empty);
        }
        if table.len() != m * m {
            return Err(GroupError::Shape(m));
        }
        for (i, &v) in table.iter().enumerate() {
            if v as usize >= m {
                return Err(GroupError::OutOfRange {
                    row: i / m,
                    col: i % m,
                    value: v as usize,
                });
            }
        }
        let mut seen = vec![usize::MAX; m];
        for a in 0..m {
            for b in 0..m {
                let v = table[a * m + b] as usize;
                if seen[v] == a {
                    return Err(GroupError::NotLatin(format!("row {a} repeats {v}")));
                }
                seen[v] = a;
            }
        }
        seen.fill(usize::MAX);
        for b in 0..m {
            for a in 0..m {
                let v = table[a * m + b] as usize;
                if seen[v] == b {
                    return Err(GroupError::NotLatin(format!("column {b} repeats {v}")));
                }
                seen[v] = b;
            }
        }
        let e = (0..m)
            .find(|&e| (0..m).all(|x| table[e * m + x] as usize == x && table[x * m + e] as usize == x))
            .ok_or(GroupError::NoIdentity)?;
        // Swap labels e and 0.
        let relabel = |x: usize| -> usize {
            if x == e {
                0
            } else if x == 0 {
                e
            } else {
                x
            }
        };
        let mut t = vec![0u32; m * m];
        for a in 0..m {
            for b in 0..m {
                t[relabel(a) * m + relabel(b)] = relabel(table[a * m + b] as usize) as u32;
            }
        }
        let mut inverse = vec![0u32; m];
        for a in 0..m {
            let b = (0..m).find(|&b| t[a * m + b] == 0).ok_or(GroupError::NoInverse(a))?;
            if t[b * m + a] != 0 {
                return Err(GroupError::NoInverse(a));
            }
            inverse[a] = b as u32;
        }
        Ok(Group {
            name: name.into(),
            size: m,
            table: t,
            inverse,
        })
    }

    fn check_associative(&self) -> Result<(), GroupError> {
        let m = self.size;
        for a in 0..m {
            for b in 0..m {
                let ab = self.table[a * m + b] as usize;
                for c in 0..m {
                    let l = self.table[ab * m + c];
                    let r = self.table[a * m + self.table[b * m + c] as usize];
                    if l != r {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(())
    }

    /// Builds a group whose elements are `elems`, with the product given by
    /// `op`. The first element must be the identity. Used for families whose
    /// laws hold by construction.
    fn from_elements<T: Clone + Eq + std::hash::Hash>(name: String, elems: Vec<T>, op: impl Fn(&T, &T) -> T) -> Self {
        let m = elems.len();
        let index: HashMap<T, u32> = elems.iter().cloned().enumerate().map(|(i, x)| (x, i as u32)).collect();
        let mut table = Vec::with_capacity(m * m);
        for a in &elems {
            for b in &elems {
                table.push(index[&op(a, b)]);
            }
        }
        Self::from_table_unchecked_assoc(name, m, table).expect("family construction yields a group")
    }

    pub fn cyclic(m: usize) -> Result<Self, GroupError> {
        if m == 0 {
            return Err(GroupError::Empty);
        }
        Ok(Self::from_elements(format!("Z{m}"), (0..m).collect(), |a, b| (a + b) % m))
    }

    /// Dihedral group of order `2m`: `r^i` is element `i`, `s r^i` is `m+i`.
    pub fn dihedral(m: usize) -> Result<Self, GroupError> {
        if m == 0 {
            return Err(GroupError::Empty);
        }
        let elems: Vec<(usize, usize)> = (0..2).flat_map(|s| (0..m).map(move |i| (s, i))).collect();
        // s^a r^i * s^b r^j = s^(a+b) r^((-1)^b i + j)
        Ok(Self::from_elements(format!("D{}", 2 * m), elems, move |&(a, i), &(b, j)| {
            let i = if b == 1 { (m - i) % m } else { i };
            ((a + b) % 2, (i + j) % m)
        }))
    }

    /// Dicyclic group of order `4m`: `<a, x | a^(2m), x^2 = a^m, x a x^-1 = a^-1>`.
    pub fn dicyclic(m: usize) -> Result<Self, GroupError> {
        if m < 1 {
            return Err(GroupError::Empty);
        }
        let n = 2 * m;
        let elems: Vec<(usize, usize)> = (0..2).flat_map(|e| (0..n).map(move |i| (e, i))).collect();
        // Elements a^i x^e.
        Ok(Self::from_elements(format!("Dic{}", 4 * m), elems, move |&(e, i), &(f, j)| {
            // a^i x^e a^j x^f = a^(i + (-1)^e j) x^(e+f)
            let j = if e == 1 { (n - j) % n } else { j };
            let mut k = (i + j) % n;
            if e + f == 2 {
                k = (k + m) % n;
            }
            ((e + f) % 2, k)
        }))
    }

    /// `Z_m ⋊ Z_s` where the generator of `Z_s` acts by `x -> r x`.
    /// Requires `r^s ≡ 1 (mod m)`.
    pub fn metacyclic(m: usize, s: usize, r: usize) -> Result<Self, GroupError> {
        if m == 0 || s == 0 {
            return Err(GroupError::Empty);
        }
        let mut rp = vec![1usize % m; s + 1];
        for i in 1..=s {
            rp[i] = rp[i - 1] * r % m;
        }
        if rp[s] != 1 % m || gcd(r, m) != 1 {
            return Err(GroupError::Parameters(format!("{r} does not have order dividing {s} mod {m}")));
        }
        let elems: Vec<(usize, usize)> = (0..s).flat_map(|b| (0..m).map(move |a| (a, b))).collect();
        Ok(Self::from_elements(format!("Z{m}:{s}[{r}]"), elems, move |&(a, b), &(c, d)| {
            ((a + rp[b] * c) % m, (b + d) % s)
        }))
    }

    pub fn direct_product(g: &Group, h: &Group) -> Group {
        let elems: Vec<(u32, u32)> = (0..g.size as u32)
            .flat_map(|a| (0..h.size as u32).map(move |b| (a, b)))
            .collect();
        Self::from_elements(format!("{}x{}", g.name, h.name), elems, |&(a, b), &(c, d)| {
            (g.mul(a, c), h.mul(b, d))
        })
    }

    /// The group generated by permutations of `0..degree`.
    pub fn from_permutations(name: impl Into<String>, gens: &[Vec<usize>]) -> Result<Self, GroupError> {
        let degree = gens.first().map_or(0, |g| g.len());
        for g in gens {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return Err(GroupError::Parameters("generators are not permutations of one set".into()));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut known: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let p: Vec<usize> = elems[i].iter().map(|&x| g[x]).collect();
                if !known.contains_key(&p) {
                    known.insert(p.clone(), elems.len());
                    elems.push(p);
                }
            }
            i += 1;
        }
        Ok(Self::from_elements(name.into(), elems, |a, b| b.iter().map(|&x| a[x]).collect()))
    }

    /// Cayley table file: the order `m` on the first line, then `m` rows of
    /// `m` whitespace-separated element indices. Blank lines and lines
    /// starting with `#` are ignored.
    pub fn load_cayley_table<R: BufRead>(name: impl Into<String>, reader: R) -> Result<Self, GroupError> {
        let mut rows = Vec::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let nums = t
                .split_whitespace()
                .map(|w| w.parse::<u32>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| GroupError::Parse {
                    line: i + 1,
                    msg: e.to_string(),
                })?;
            rows.push((i + 1, nums));
        }
        let Some((line, head)) = rows.first() else {
            return Err(GroupError::Empty);
        };
        if head.len() != 1 {
            return Err(GroupError::Parse {
                line: *line,
                msg: "first line must hold the group order".into(),
            });
        }
        let m = head[0] as usize;
        if rows.len() != m + 1 {
            return Err(GroupError::Shape(m));
        }
        let mut table = Vec::with_capacity(m * m);
        for (line, r) in &rows[1..] {
            if r.len() != m {
                return Err(GroupError::Parse {
                    line: *line,
                    msg: format!("expected {m} entries, found {}", r.len()),
                });
            }
            table.extend_from_slice(r);
        }
        Self::from_table(name, m, table)
    }

    /// The table in the file format read by [`Group::load_cayley_table`].
    pub fn to_cayley_table(&self) -> String {
        let mut s = format!("{}\n", self.size);
        for a in 0..self.size {
            let row: Vec<String> = (0..self.size).map(|b| self.table[a * self.size + b].to_string()).collect();
            s += &row.join(" ");
            s.push('\n');
        }
        s
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn identity(&self) -> u32 {
        0
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.size + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    pub fn element_order(&self, a: u32) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.size as u32).all(|a| (0..self.size as u32).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Size of the subgroup generated by `gens`.
    pub fn generated_order(&self, gens: &[u32]) -> usize {
        let mut seen = vec![false; self.size];
        seen[0] = true;
        let mut stack = vec![0u32];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Every metacyclic group `Z_m ⋊_r Z_s` of order `m*s <= max_order` with
/// `1 < r < m`, together with cyclic, dihedral, dicyclic and pairwise direct
/// products. Isomorphic duplicates are not removed.
pub fn builtin_families(max_order: usize) -> Vec<Group> {
    let mut out: Vec<Group> = Vec::new();
    for m in 1..=max_order {
        out.push(Group::cyclic(m).unwrap());
    }
    for m in 3..=max_order / 2 {
        out.push(Group::dihedral(m).unwrap());
    }
    for m in 2..=max_order / 4 {
        out.push(Group::dicyclic(m).unwrap());
    }
    for m in 3..=max_order {
        for s in 2..=max_order / m {
            for r in 2..m {
                if let Ok(g) = Group::metacyclic(m, s, r) {
                    out.push(g);
                }
            }
        }
    }
    let base: Vec<Group> = out.iter().filter(|g| g.order() > 1).cloned().collect();
    for (i, a) in base.iter().enumerate() {
        for b in &base[i..] {
            if a.order() * b.order() <= max_order {
                out.push(Group::direct_product(a, b));
            }
        }
    }
    out.sort_by_key(|g| g.order());
    out
}
