//! A small capability trait over finite groups, realised by [`SpGroup`] and
//! by explicit multiplication tables.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::error::{Error, Result, TableError};
use crate::spgroup::{SElement, SpGroup};

/// A finite group whose elements can be listed by index.
pub trait FiniteGroup: Sync {
    type Elem: Clone + Eq + Send + Sync + std::fmt::Debug;

    /// Number of elements, or `None` when it does not fit in a `u64`.
    fn size(&self) -> Option<u64>;
    fn identity(&self) -> Self::Elem;
    fn multiply(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn invert(&self, x: &Self::Elem) -> Self::Elem;
    /// Element number `index`, `0 <= index < size`.
    fn element_at(&self, index: u64) -> Self::Elem;
    fn index_of(&self, x: &Self::Elem) -> u64;
    fn label(&self, x: &Self::Elem) -> String;
    fn describe(&self) -> String;

    fn pow(&self, x: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut result = self.identity();
        let mut base = x.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.multiply(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.multiply(&base, &base);
            }
        }
        result
    }

    /// A generating set. The default grows one greedily from the
    /// enumeration, which costs `O(|G|)` per generator added.
    fn generators(&self) -> Vec<Self::Elem> {
        let size = self.size().expect("generators() needs an enumerable group");
        let mut in_subgroup = vec![false; size as usize];
        in_subgroup[self.index_of(&self.identity()) as usize] = true;
        let mut members = vec![self.identity()];
        let mut gens = Vec::new();
        for i in 0..size {
            if in_subgroup[i as usize] {
                continue;
            }
            let g = self.element_at(i);
            gens.push(g);
            // Close under right multiplication by all generators.
            let mut frontier = members.clone();
            while let Some(x) = frontier.pop() {
                for h in &gens {
                    let y = self.multiply(&x, h);
                    let iy = self.index_of(&y) as usize;
                    if !in_subgroup[iy] {
                        in_subgroup[iy] = true;
                        members.push(y.clone());
                        frontier.push(y);
                    }
                }
            }
        }
        gens
    }
}

/// Size of `group`, or a guard error if it exceeds `limit`.
pub fn checked_size<G: FiniteGroup>(group: &G, limit: u64) -> Result<u64> {
    match group.size() {
        Some(n) if n <= limit => Ok(n),
        other => Err(Error::SizeGuard {
            what: "group order",
            value: other.map_or_else(|| "> 2^64".to_string(), |n| n.to_string()),
            limit: limit.to_string(),
        }),
    }
}

/// Order of `x` by repeated multiplication.
pub fn element_order<G: FiniteGroup>(group: &G, x: &G::Elem) -> u64 {
    let e = group.identity();
    let mut y = x.clone();
    let mut order = 1;
    while y != e {
        y = group.multiply(&y, x);
        order += 1;
    }
    order
}

impl FiniteGroup for SpGroup {
    type Elem = SElement;

    fn size(&self) -> Option<u64> {
        SpGroup::size(self)
    }

    fn identity(&self) -> SElement {
        SpGroup::identity(self)
    }

    fn multiply(&self, x: &SElement, y: &SElement) -> SElement {
        SpGroup::multiply(self, x, y)
    }

    fn invert(&self, x: &SElement) -> SElement {
        SpGroup::invert(self, x)
    }

    fn element_at(&self, index: u64) -> SElement {
        SpGroup::element_at(self, index)
    }

    fn index_of(&self, x: &SElement) -> u64 {
        SpGroup::index_of(self, x)
    }

    fn label(&self, x: &SElement) -> String {
        self.format_element(x)
    }

    fn describe(&self) -> String {
        self.params().to_string()
    }

    fn pow(&self, x: &SElement, e: u64) -> SElement {
        self.power_generic(x, e)
    }

    /// `a_1` and `b` generate: conjugating by `b` walks `a_1` to every `a_k`.
    fn generators(&self) -> Vec<SElement> {
        vec![self.a(1), self.b()]
    }
}

/// A group given by its Cayley table over indices `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableGroup {
    name: Option<String>,
    order: usize,
    table: Vec<u32>,
    identity: u32,
    inverses: Vec<u32>,
}

/// Tables up to this order get an exhaustive associativity check.
pub const FULL_ASSOCIATIVITY_LIMIT: usize = 512;
/// Random triples tested on larger tables.
pub const SAMPLED_ASSOCIATIVITY_TRIPLES: u64 = 1_000_000;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableDocument {
    order: usize,
    table: Vec<Vec<i64>>,
    #[serde(default)]
    name: Option<String>,
}

impl TableGroup {
    /// Validates a raw Cayley table: shape, Latin-square property,
    /// associativity, identity and inverses, in that order.
    pub fn from_grid(name: Option<String>, grid: &[Vec<i64>]) -> Result<Self, TableError> {
        let order = grid.len();
        if order == 0 {
            return Err(TableError::Empty);
        }
        if order > u32::MAX as usize {
            return Err(TableError::OrderMismatch {
                declared: order,
                rows: order,
            });
        }
        let mut table = Vec::with_capacity(order * order);
        for (row, entries) in grid.iter().enumerate() {
            if entries.len() != order {
                return Err(TableError::NotSquare {
                    row,
                    len: entries.len(),
                    expected: order,
                });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value < 0 || value as usize >= order {
                    return Err(TableError::EntryOutOfRange { row, col, value });
                }
                table.push(value as u32);
            }
        }
        let at = |x: usize, y: usize| table[x * order + y] as usize;

        let mut seen = vec![usize::MAX; order];
        for row in 0..order {
            seen.fill(usize::MAX);
            for col in 0..order {
                let v = at(row, col);
                if seen[v] != usize::MAX {
                    return Err(TableError::LatinRow {
                        row,
                        value: v,
                        first: seen[v],
                        second: col,
                    });
                }
                seen[v] = col;
            }
        }
        for col in 0..order {
            seen.fill(usize::MAX);
            for row in 0..order {
                let v = at(row, col);
                if seen[v] != usize::MAX {
                    return Err(TableError::LatinColumn {
                        col,
                        value: v,
                        first: seen[v],
                        second: row,
                    });
                }
                seen[v] = row;
            }
        }

        let check = |x: usize, y: usize, z: usize| -> Result<(), TableError> {
            let left = at(at(x, y), z);
            let right = at(x, at(y, z));
            if left != right {
                Err(TableError::Associativity {
                    x,
                    y,
                    z,
                    left,
                    right,
                })
            } else {
                Ok(())
            }
        };
        if order <= FULL_ASSOCIATIVITY_LIMIT {
            for x in 0..order {
                for y in 0..order {
                    for z in 0..order {
                        check(x, y, z)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            for _ in 0..SAMPLED_ASSOCIATIVITY_TRIPLES {
                check(
                    rng.gen_range(0..order),
                    rng.gen_range(0..order),
                    rng.gen_range(0..order),
                )?;
            }
        }

        let identity = (0..order)
            .find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or(TableError::NoIdentity)?;
        let mut inverses = Vec::with_capacity(order);
        for x in 0..order {
            let y = (0..order)
                .find(|&y| at(x, y) == identity)
                .filter(|&y| at(y, x) == identity)
                .ok_or(TableError::NoInverse(x))?;
            inverses.push(y as u32);
        }

        Ok(TableGroup {
            name,
            order,
            table,
            identity: identity as u32,
            inverses,
        })
    }

    /// Parses a JSON document `{"order": n, "table": [[...]], "name": ...}`.
    pub fn from_json(text: &str) -> Result<Self, TableError> {
        let doc: TableDocument = serde_json::from_str(text).map_err(|e| TableError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        if doc.order != doc.table.len() {
            return Err(TableError::OrderMismatch {
                declared: doc.order,
                rows: doc.table.len(),
            });
        }
        Self::from_grid(doc.name, &doc.table)
    }

    /// The cyclic group `Z_n` with `i * j = i + j mod n`.
    pub fn cyclic(n: usize) -> Self {
        let grid: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| ((i + j) % n) as i64).collect())
            .collect();
        Self::from_grid(Some(format!("Z_{n}")), &grid).expect("cyclic table is a group")
    }

    /// Cayley table of the permutation group generated by `gens` (each a
    /// permutation of `0..degree` in one-line notation). Elements are
    /// numbered in breadth-first order from the identity.
    pub fn from_permutations(
        name: Option<String>,
        gens: &[Vec<usize>],
        max_order: usize,
    ) -> Result<Self, Error> {
        let degree = gens.first().map_or(0, Vec::len);
        let is_perm = |g: &Vec<usize>| {
            let mut s = g.clone();
            s.sort_unstable();
            g.len() == degree && s.iter().enumerate().all(|(i, &x)| i == x)
        };
        if let Some(bad) = gens.iter().find(|g| !is_perm(g)) {
            return Err(Error::InvalidParams(format!(
                "{bad:?} is not a permutation of 0..{degree}"
            )));
        }
        let compose =
            |x: &[usize], y: &[usize]| -> Vec<usize> { y.iter().map(|&i| x[i]).collect() };
        let mut elements: Vec<Vec<usize>> = vec![(0..degree).collect()];
        let mut index = std::collections::HashMap::new();
        index.insert(elements[0].clone(), 0usize);
        let mut next = 0;
        while next < elements.len() {
            for g in gens {
                let y = compose(&elements[next], g);
                if !index.contains_key(&y) {
                    if elements.len() == max_order {
                        return Err(Error::SizeGuard {
                            what: "permutation group order",
                            value: format!("> {max_order}"),
                            limit: max_order.to_string(),
                        });
                    }
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                }
            }
            next += 1;
        }
        let grid: Vec<Vec<i64>> = elements
            .iter()
            .map(|x| {
                elements
                    .iter()
                    .map(|y| index[&compose(x, y)] as i64)
                    .collect()
            })
            .collect();
        Ok(Self::from_grid(name, &grid)?)
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity_index(&self) -> u32 {
        self.identity
    }

    #[inline]
    pub fn product(&self, x: u32, y: u32) -> u32 {
        self.table[x as usize * self.order + y as usize]
    }

    pub fn grid(&self) -> Vec<Vec<i64>> {
        self.table
            .chunks(self.order)
            .map(|r| r.iter().map(|&x| x as i64).collect())
            .collect()
    }

    /// Renames elements by `perm` (element `i` becomes `perm[i]`).
    pub fn relabel(&self, perm: &[u32]) -> Self {
        let n = self.order;
        let mut grid = vec![vec![0i64; n]; n];
        for x in 0..n {
            for y in 0..n {
                grid[perm[x] as usize][perm[y] as usize] =
                    perm[self.product(x as u32, y as u32) as usize] as i64;
            }
        }
        Self::from_grid(self.name.clone(), &grid).expect("relabelling preserves the group axioms")
    }
}

impl FiniteGroup for TableGroup {
    type Elem = u32;

    fn size(&self) -> Option<u64> {
        Some(self.order as u64)
    }

    fn identity(&self) -> u32 {
        self.identity
    }

    fn multiply(&self, x: &u32, y: &u32) -> u32 {
        self.product(*x, *y)
    }

    fn invert(&self, x: &u32) -> u32 {
        self.inverses[*x as usize]
    }

    fn element_at(&self, index: u64) -> u32 {
        index as u32
    }

    fn index_of(&self, x: &u32) -> u64 {
        *x as u64
    }

    fn label(&self, x: &u32) -> String {
        x.to_string()
    }

    fn describe(&self) -> String {
        match &self.name {
            Some(name) => format!("{name} (table, order {})", self.order),
            None => format!("table group of order {}", self.order),
        }
    }
}
