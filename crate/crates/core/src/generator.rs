//! Enumeration of all hemirings of a small order up to isomorphism.

use std::collections::BTreeMap;
use std::path::Path;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::hemiring::{Hemiring, RawTables};

/// Largest order accepted by [`canonical_form`].
pub const MAX_CANONICAL_ORDER: usize = 8;

const UNSET: u8 = u8::MAX;

/// Lexicographically least `(add, mul)` table pair, flattened row-major,
/// over all relabelings that fix the zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub order: usize,
    pub tables: Vec<u8>,
}

impl CanonicalForm {
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.tables[x * self.order + y] as usize
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.tables[self.order * self.order + x * self.order + y] as usize
    }

    /// Tables with elements named `0, a, b, ..`.
    pub fn to_tables(&self, name: impl Into<String>) -> RawTables {
        let n = self.order;
        let grid = |f: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<usize>> {
            (0..n).map(|x| (0..n).map(|y| f(x, y)).collect()).collect()
        };
        RawTables {
            name: name.into(),
            elements: default_names(n),
            add: grid(&|x, y| self.add(x, y)),
            mul: grid(&|x, y| self.mul(x, y)),
        }
    }
}

fn default_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| match i {
            0 => "0".to_string(),
            i if i <= 26 => ((b'a' + i as u8 - 1) as char).to_string(),
            i => format!("e{i}"),
        })
        .collect()
}

fn relabel(n: usize, add: &[u8], mul: &[u8], perm: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; 2 * n * n];
    for x in 0..n {
        for y in 0..n {
            let (px, py) = (perm[x] as usize, perm[y] as usize);
            out[px * n + py] = perm[add[x * n + y] as usize];
            out[n * n + px * n + py] = perm[mul[x * n + y] as usize];
        }
    }
    out
}

fn zero_fixing_perms(n: usize) -> Vec<Vec<u8>> {
    (1..n as u8)
        .permutations(n.saturating_sub(1))
        .map(|rest| std::iter::once(0).chain(rest).collect())
        .collect()
}

fn canonical_flat(n: usize, add: &[u8], mul: &[u8], perms: &[Vec<u8>]) -> CanonicalForm {
    let tables = perms
        .iter()
        .map(|p| relabel(n, add, mul, p))
        .min()
        .expect("at least the identity permutation");
    CanonicalForm { order: n, tables }
}

fn flatten(t: &[Vec<usize>]) -> Vec<u8> {
    t.iter().flatten().map(|&v| v as u8).collect()
}

/// Canonical form of a structure of order at most [`MAX_CANONICAL_ORDER`].
pub fn canonical_form(h: &Hemiring) -> Result<CanonicalForm> {
    let n = h.order();
    if n > MAX_CANONICAL_ORDER {
        return Err(Error::Capacity(format!(
            "canonical forms are computed up to order {MAX_CANONICAL_ORDER}, got {n}"
        )));
    }
    let t = h.tables();
    Ok(canonical_flat(n, &flatten(&t.add), &flatten(&t.mul), &zero_fixing_perms(n)))
}

/// True iff some relabeling fixing the zero maps one structure onto the other.
pub fn are_isomorphic(a: &Hemiring, b: &Hemiring) -> Result<bool> {
    if a.order() != b.order() {
        return Err(Error::Domain(format!(
            "orders differ ({} vs {})",
            a.order(),
            b.order()
        )));
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

/// Commutative monoid tables with identity 0, one per isomorphism class.
fn additive_tables(n: usize, perms: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let cells: Vec<(usize, usize)> = (1..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let mut seen = BTreeMap::new();
    let mut table = vec![0u8; n * n];
    for i in 0..n {
        table[i] = i as u8;
        table[i * n] = i as u8;
    }
    for choice in (0..cells.len()).map(|_| 0..n as u8).multi_cartesian_product() {
        for (&(i, j), &v) in cells.iter().zip(&choice) {
            table[i * n + j] = v;
            table[j * n + i] = v;
        }
        let assoc = (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    let xy = table[x * n + y] as usize;
                    let yz = table[y * n + z] as usize;
                    table[xy * n + z] == table[x * n + yz]
                })
            })
        });
        if assoc {
            // canonical over the additive table alone
            let key = perms.iter().map(|p| relabel(n, &table, &table, p)).min().unwrap();
            seen.entry(key).or_insert_with(|| table.clone());
        }
    }
    if cells.is_empty() {
        return vec![table];
    }
    seen.into_values().collect()
}

/// Checks every associativity and distributivity instance whose products
/// are all assigned.
fn partial_ok(n: usize, add: &[u8], mul: &[u8]) -> bool {
    let m = |x: usize, y: usize| mul[x * n + y];
    let a = |x: usize, y: usize| add[x * n + y] as usize;
    for x in 0..n {
        for y in 0..n {
            let xy = m(x, y);
            for z in 0..n {
                if xy != UNSET {
                    let yz = m(y, z);
                    if yz != UNSET {
                        let l = m(xy as usize, z);
                        let r = m(x, yz as usize);
                        if l != UNSET && r != UNSET && l != r {
                            return false;
                        }
                    }
                }
                // x·(y+z) = x·y + x·z and (y+z)·x = y·x + z·x
                let (xz, yx, zx) = (m(x, z), m(y, x), m(z, x));
                let xs = m(x, a(y, z));
                if xs != UNSET && xy != UNSET && xz != UNSET && xs as usize != a(xy as usize, xz as usize) {
                    return false;
                }
                let sx = m(a(y, z), x);
                if sx != UNSET && yx != UNSET && zx != UNSET && sx as usize != a(yx as usize, zx as usize) {
                    return false;
                }
            }
        }
    }
    true
}

/// All multiplications compatible with `add`, by backtracking over the
/// cells off the zero row and column.
fn multiplications(n: usize, add: &[u8]) -> Vec<Vec<u8>> {
    let mut mul = vec![UNSET; n * n];
    for i in 0..n {
        mul[i] = 0;
        mul[i * n] = 0;
    }
    let cells: Vec<usize> = (1..n).flat_map(|i| (1..n).map(move |j| i * n + j)).collect();
    let mut out = Vec::new();
    fn go(n: usize, add: &[u8], mul: &mut Vec<u8>, cells: &[usize], k: usize, out: &mut Vec<Vec<u8>>) {
        if k == cells.len() {
            out.push(mul.clone());
            return;
        }
        for v in 0..n as u8 {
            mul[cells[k]] = v;
            if partial_ok(n, add, mul) {
                go(n, add, mul, cells, k + 1, out);
            }
        }
        mul[cells[k]] = UNSET;
    }
    if partial_ok(n, add, &mul) {
        go(n, add, &mut mul, &cells, 0, &mut out);
    }
    out
}

/// Every hemiring of order `n` exactly once up to isomorphism, sorted by
/// canonical form and named `order<n>_<index>`.
pub fn enumerate_hemirings(n: usize, config: &Config) -> Result<Vec<Hemiring>> {
    Ok(enumerate_canonical(n, config)?
        .into_iter()
        .enumerate()
        .map(|(i, form)| {
            Hemiring::new(form.to_tables(format!("order{n}_{i}")))
                .expect("generated tables satisfy the axioms")
        })
        .collect())
}

/// Canonical forms of every hemiring of order `n`, sorted.
pub fn enumerate_canonical(n: usize, config: &Config) -> Result<Vec<CanonicalForm>> {
    if n == 0 {
        return Err(Error::Domain("order must be positive".into()));
    }
    if n > config.generator_cap {
        return Err(Error::Capacity(format!(
            "generator order cap is {}, got {n}",
            config.generator_cap
        )));
    }
    if n > MAX_CANONICAL_ORDER {
        return Err(Error::Capacity(format!("order {n} is beyond canonical-form support")));
    }
    let perms = zero_fixing_perms(n);
    let mut forms: Vec<CanonicalForm> = additive_tables(n, &perms)
        .par_iter()
        .flat_map_iter(|add| {
            let perms = &perms;
            multiplications(n, add)
                .into_iter()
                .map(move |mul| canonical_flat(n, add, &mul, perms))
        })
        .collect();
    forms.sort();
    forms.dedup();
    Ok(forms)
}

/// Corpus summary written next to the structure files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Manifest {
    pub counts: BTreeMap<usize, usize>,
    pub files: Vec<String>,
}

/// Writes `order<n>_<index>.json` for each order plus `manifest.json`.
pub fn write_corpus(dir: &Path, orders: &[usize], config: &Config) -> Result<Manifest> {
    std::fs::create_dir_all(dir)?;
    let mut manifest = Manifest { counts: BTreeMap::new(), files: Vec::new() };
    for &n in orders {
        let structures = enumerate_hemirings(n, config)?;
        manifest.counts.insert(n, structures.len());
        for h in structures {
            let file = format!("{}.json", h.name());
            std::fs::write(dir.join(&file), h.to_json() + "\n")?;
            manifest.files.push(file);
        }
    }
    std::fs::write(dir.join("manifest.json"), serde_json::to_string_pretty(&manifest)? + "\n")?;
    Ok(manifest)
}

/// Loads every `*.json` structure in `dir` except the manifest, sorted by
/// file name.
pub fn load_corpus(dir: &Path) -> Result<Vec<Hemiring>> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.extension().is_some_and(|e| e == "json")
                && p.file_name().is_some_and(|f| f != "manifest.json")
        })
        .collect();
    paths.sort();
    paths.into_iter().map(Hemiring::load).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::hemiring::verify_axioms;
    use std::collections::BTreeSet;

    /// Independent oracle: every table pair with 0 as additive identity,
    /// filtered by the full axiom check, then canonicalised.
    fn oracle(n: usize, every_cell: bool) -> BTreeSet<CanonicalForm> {
        let perms = zero_fixing_perms(n);
        let lo = if every_cell { 0 } else { 1 };
        let free: Vec<(usize, usize)> =
            (lo..n).flat_map(|i| (lo..n).map(move |j| (i, j))).collect();
        let mut out = BTreeSet::new();
        for add_choice in (0..free.len()).map(|_| 0..n).multi_cartesian_product() {
            let mut add: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| if i == 0 { j } else if j == 0 { i } else { 0 }).collect()).collect();
            for (&(i, j), &v) in free.iter().zip(&add_choice) {
                add[i][j] = v;
            }
            if (0..n).any(|i| (0..n).any(|j| add[i][j] != add[j][i])) {
                continue;
            }
            for mul_choice in (0..free.len()).map(|_| 0..n).multi_cartesian_product() {
                let mut mul = vec![vec![0; n]; n];
                for (&(i, j), &v) in free.iter().zip(&mul_choice) {
                    mul[i][j] = v;
                }
                let t = RawTables {
                    name: "x".into(),
                    elements: default_names(n),
                    add: add.clone(),
                    mul,
                };
                if verify_axioms(&t, false).unwrap().valid {
                    out.insert(canonical_flat(n, &flatten(&t.add), &flatten(&t.mul), &perms));
                }
            }
        }
        out
    }

    #[test]
    fn order_one_and_two() {
        let config = Config::default();
        assert_eq!(enumerate_hemirings(1, &config).unwrap().len(), 1);
        let two = enumerate_canonical(2, &config).unwrap();
        assert_eq!(two.len(), 4);
        assert_eq!(two.iter().cloned().collect::<BTreeSet<_>>(), oracle(2, true));
    }

    #[test]
    fn order_three_matches_oracle() {
        let three = enumerate_canonical(3, &Config::default()).unwrap();
        assert_eq!(three.len(), 22);
        assert_eq!(three.iter().cloned().collect::<BTreeSet<_>>(), oracle(3, false));
    }

    #[test]
    fn named_order_two_structures_are_distinct() {
        let all = enumerate_hemirings(2, &Config::default()).unwrap();
        for h in [fixtures::z2_field(), fixtures::z2_null(), fixtures::boolean(), fixtures::boolean_null()] {
            assert_eq!(all.iter().filter(|g| are_isomorphic(g, &h).unwrap()).count(), 1);
        }
        assert!(!are_isomorphic(&fixtures::boolean(), &fixtures::z2_field()).unwrap());
    }

    #[test]
    fn relabeling_is_detected() {
        let h = fixtures::absorbing();
        let t = h.tables();
        // swap a and 1
        let p = [0usize, 2, 1];
        let mut add = vec![vec![0; 3]; 3];
        let mut mul = vec![vec![0; 3]; 3];
        for x in 0..3 {
            for y in 0..3 {
                add[p[x]][p[y]] = p[t.add[x][y]];
                mul[p[x]][p[y]] = p[t.mul[x][y]];
            }
        }
        let swapped = Hemiring::new(RawTables { name: "swapped".into(), elements: t.elements.clone(), add, mul }).unwrap();
        assert!(are_isomorphic(&h, &swapped).unwrap());
        assert!(matches!(are_isomorphic(&h, &fixtures::z2_field()), Err(Error::Domain(_))));
    }

    #[test]
    fn canonical_form_is_idempotent() {
        for h in enumerate_hemirings(3, &Config::default()).unwrap() {
            let c = canonical_form(&h).unwrap();
            let again = Hemiring::new(c.to_tables("again")).unwrap();
            assert_eq!(canonical_form(&again).unwrap(), c);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let config = Config { generator_cap: 2, ..Config::default() };
        assert!(matches!(enumerate_hemirings(3, &config), Err(Error::Capacity(_))));
    }
}
