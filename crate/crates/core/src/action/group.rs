use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Finite group given by its multiplication table; `table[a][b] = a·b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteGroup {
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
    #[serde(skip)]
    identity: usize,
    #[serde(skip)]
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates closure, associativity, identity and inverses.
    pub fn from_table(elements: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::InvalidGroup("no elements".into()));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidGroup("table is not n×n over the elements".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "not associative at ({}, {}, {})",
                            elements[a], elements[b], elements[c]
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::InvalidGroup("no identity".into()))?;
        let inverses = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| table[a][b] == identity && table[b][a] == identity)
                    .ok_or_else(|| Error::InvalidGroup(format!("{} has no inverse", elements[a])))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteGroup { elements, table, identity, inverses })
    }

    /// `Z/n` with elements `g^0, …, g^{n-1}`.
    pub fn cyclic(n: usize) -> Result<Self> {
        let elements = (0..n).map(|k| format!("g^{k}")).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(elements, table)
    }

    /// Group of permutations, closed under composition; `perms[i][x]` is the
    /// image of `x`. Products compose right to left: `(a·b)(x) = a(b(x))`.
    pub fn from_permutations(perms: &[Vec<usize>]) -> Result<Self> {
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p);
        let mut table = vec![vec![0; perms.len()]; perms.len()];
        for (i, a) in perms.iter().enumerate() {
            for (j, b) in perms.iter().enumerate() {
                let ab: Vec<usize> = b.iter().map(|&x| a[x]).collect();
                table[i][j] = index(&ab).ok_or_else(|| Error::InvalidGroup("not closed".into()))?;
            }
        }
        let names = (0..perms.len()).map(|i| format!("{:?}", perms[i])).collect();
        Self::from_table(names, table)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            elements: Vec<String>,
            table: Vec<Vec<usize>>,
        }
        let raw: Raw = serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("group JSON: {e}")))?;
        Self::from_table(raw.elements, raw.table)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }
}
