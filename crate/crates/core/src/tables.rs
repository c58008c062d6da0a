//! Orbit tables: one row per (family, prime, seed), as in the published
//! δ2/δ4 union table and the two single-seed tables.
//!
//! CSV schema: `d,k,p,seed_tag,status,vector`, one vector per line and an
//! empty vector field on `Complete` rows. Vectors are space separated.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Prime, ResidueVec4};
use crate::catalog::{catalog, family, FamilyParams};
use crate::orbit::{orbit_mod_p, orbit_union, Seed};

pub const GOLDEN_TABLE2: &str = include_str!("../golden/table2.csv");
pub const GOLDEN_TABLE3: &str = include_str!("../golden/table3.csv");
pub const GOLDEN_TABLE4: &str = include_str!("../golden/table4.csv");

pub const CSV_HEADER: &str = "d,k,p,seed_tag,status,vector";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SeedTag {
    Delta2,
    Delta4,
    Union,
}

impl fmt::Display for SeedTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeedTag::Delta2 => "delta2",
            SeedTag::Delta4 => "delta4",
            SeedTag::Union => "union",
        })
    }
}

impl FromStr for SeedTag {
    type Err = TableError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "delta2" => Ok(SeedTag::Delta2),
            "delta4" => Ok(SeedTag::Delta4),
            "union" => Ok(SeedTag::Union),
            _ => Err(TableError::Parse(format!("unknown seed tag {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Status {
    Listed,
    Complete,
}

/// Which of the three tables a row belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Table {
    /// Union of the δ2 and δ4 orbits.
    Union,
    Delta2,
    Delta4,
}

impl Table {
    pub const ALL: [Table; 3] = [Table::Union, Table::Delta2, Table::Delta4];

    pub fn file_stem(self) -> &'static str {
        match self {
            Table::Union => "table2",
            Table::Delta2 => "table3",
            Table::Delta4 => "table4",
        }
    }

    pub fn tag(self) -> SeedTag {
        match self {
            Table::Union => SeedTag::Union,
            Table::Delta2 => SeedTag::Delta2,
            Table::Delta4 => SeedTag::Delta4,
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            Table::Union => "Orbit of vectors delta2 and delta4",
            Table::Delta2 => "Orbit of vector delta2",
            Table::Delta4 => "Orbit of vector delta4",
        }
    }

    pub fn golden_csv(self) -> &'static str {
        match self {
            Table::Union => GOLDEN_TABLE2,
            Table::Delta2 => GOLDEN_TABLE3,
            Table::Delta4 => GOLDEN_TABLE4,
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum TableError {
    #[error("malformed table data: {0}")]
    Parse(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub d: u32,
    pub k: u32,
    pub p: u32,
    pub seed_tag: SeedTag,
    pub status: Status,
    /// Sorted; empty when `status` is `Complete`.
    #[serde(serialize_with = "serialize_vectors")]
    pub vectors: Vec<ResidueVec4>,
}

fn serialize_vectors<S: serde::Serializer>(v: &[ResidueVec4], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(plain_vector))
}

/// `n1 n2 n3 n4` without parentheses.
pub fn plain_vector(v: &ResidueVec4) -> String {
    let [a, b, c, d] = v.entries();
    format!("{a} {b} {c} {d}")
}

impl TableRow {
    /// Row for an orbit (or union) of size `members.len()` mod p.
    pub fn from_members(f: &FamilyParams, p: Prime, tag: SeedTag, members: Vec<ResidueVec4>) -> Self {
        let complete = members.len() as u64 == p.space_size() - 1 && !members.iter().any(ResidueVec4::is_zero);
        TableRow {
            d: f.d,
            k: f.k,
            p: p.get(),
            seed_tag: tag,
            status: if complete { Status::Complete } else { Status::Listed },
            vectors: if complete { Vec::new() } else { members },
        }
    }

    pub fn key(&self) -> RowKey {
        RowKey { d: self.d, k: self.k, p: self.p, tag: self.seed_tag }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RowKey {
    pub d: u32,
    pub k: u32,
    pub p: u32,
    pub tag: SeedTag,
}

impl fmt::Display for RowKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{}) p={} {}", self.d, self.k, self.p, self.tag)
    }
}

/// The three tables, rows in catalog order then ascending prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tables {
    pub union: Vec<TableRow>,
    pub delta2: Vec<TableRow>,
    pub delta4: Vec<TableRow>,
}

impl Tables {
    pub fn get(&self, t: Table) -> &[TableRow] {
        match t {
            Table::Union => &self.union,
            Table::Delta2 => &self.delta2,
            Table::Delta4 => &self.delta4,
        }
    }
}

/// Computes all rows for every catalog family at the given primes.
/// Jobs run in parallel; output order is canonical.
pub fn generate_tables(primes: &[Prime]) -> Tables {
    let mut primes = primes.to_vec();
    primes.sort_unstable();
    primes.dedup();
    let jobs: Vec<(FamilyParams, Prime)> = catalog()
        .into_iter()
        .flat_map(|f| primes.iter().map(move |&p| (f, p)))
        .collect();
    let rows: Vec<[TableRow; 3]> = jobs
        .par_iter()
        .map(|(f, p)| {
            let a = orbit_mod_p(&Seed::Delta2.vector(), *p, f);
            let b = orbit_mod_p(&Seed::Delta4.vector(), *p, f);
            let u = orbit_union(&a, &b).expect("same family and prime");
            [
                TableRow::from_members(f, *p, SeedTag::Union, u),
                TableRow::from_members(f, *p, SeedTag::Delta2, a.members().to_vec()),
                TableRow::from_members(f, *p, SeedTag::Delta4, b.members().to_vec()),
            ]
        })
        .collect();
    let mut t = Tables { union: Vec::new(), delta2: Vec::new(), delta4: Vec::new() };
    for [u, a, b] in rows {
        t.union.push(u);
        t.delta2.push(a);
        t.delta4.push(b);
    }
    t
}

pub fn to_csv(rows: &[TableRow]) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let prefix = format!("{},{},{},{}", r.d, r.k, r.p, r.seed_tag);
        match r.status {
            Status::Complete => writeln!(out, "{prefix},Complete,").unwrap(),
            Status::Listed => {
                for v in &r.vectors {
                    writeln!(out, "{prefix},Listed,{}", plain_vector(v)).unwrap();
                }
            }
        }
    }
    out
}

/// Markdown laid out like the published tables.
pub fn to_markdown(table: Table, rows: &[TableRow]) -> String {
    let mut out = format!("## {}\n\n| (d,k) | Prime | Orbit |\n|---|---|---|\n", table.title());
    for r in rows {
        let orbit = match r.status {
            Status::Complete => "Complete".to_string(),
            Status::Listed => r.vectors.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
        };
        writeln!(out, "| ({},{}) | p={} | {} |", r.d, r.k, r.p, orbit).unwrap();
    }
    out
}

/// Parses the CSV schema back into rows, grouping consecutive vector lines.
pub fn parse_csv(text: &str) -> Result<Vec<TableRow>, TableError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    match lines.next() {
        Some(h) if h.trim() == CSV_HEADER => {}
        other => return Err(TableError::Parse(format!("bad header {other:?}"))),
    }
    let mut rows: BTreeMap<RowKey, TableRow> = BTreeMap::new();
    let mut order: Vec<RowKey> = Vec::new();
    for line in lines {
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let [d, k, p, tag, status, vector] = fields[..] else {
            return Err(TableError::Parse(format!("expected 6 fields: {line:?}")));
        };
        let num = |s: &str| s.parse::<u32>().map_err(|e| TableError::Parse(format!("{s:?}: {e}")));
        let (d, k, p) = (num(d)?, num(k)?, num(p)?);
        let prime = Prime::new(p.into()).map_err(|e| TableError::Parse(e.to_string()))?;
        let tag: SeedTag = tag.parse()?;
        let status = match status {
            "Listed" => Status::Listed,
            "Complete" => Status::Complete,
            s => return Err(TableError::Parse(format!("unknown status {s:?}"))),
        };
        let key = RowKey { d, k, p, tag };
        let row = rows.entry(key).or_insert_with(|| {
            order.push(key);
            TableRow { d, k, p, seed_tag: tag, status, vectors: Vec::new() }
        });
        if row.status != status {
            return Err(TableError::Parse(format!("{key}: mixed statuses")));
        }
        match status {
            Status::Complete if !vector.is_empty() => {
                return Err(TableError::Parse(format!("{key}: Complete row carries a vector")));
            }
            Status::Complete => {}
            Status::Listed => {
                let comps: Vec<i64> = vector
                    .split_whitespace()
                    .map(|x| x.parse::<i64>().map_err(|e| TableError::Parse(format!("{x:?}: {e}"))))
                    .collect::<Result<_, _>>()?;
                let [a, b, c, e] = comps[..] else {
                    return Err(TableError::Parse(format!("{key}: vector needs 4 entries")));
                };
                if [a, b, c, e].iter().any(|&x| x < 0 || x >= i64::from(p)) {
                    return Err(TableError::Parse(format!("{key}: entry outside [0, {p})")));
                }
                row.vectors.push(ResidueVec4::new(prime, [a, b, c, e]));
            }
        }
    }
    Ok(order.into_iter().map(|k| rows.remove(&k).expect("key recorded")).collect())
}

/// One disagreement between computed and reference rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub key: RowKey,
    pub detail: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.key, self.detail)
    }
}

/// Compares every computed row with its reference row. Reference rows whose
/// prime was not computed are ignored.
pub fn diff_rows(computed: &[TableRow], reference: &[TableRow]) -> Vec<Mismatch> {
    let reference: BTreeMap<RowKey, &TableRow> = reference.iter().map(|r| (r.key(), r)).collect();
    let mut out = Vec::new();
    for row in computed {
        let key = row.key();
        let Some(gold) = reference.get(&key) else {
            out.push(Mismatch { key, detail: "missing from reference".into() });
            continue;
        };
        if row.status != gold.status {
            out.push(Mismatch {
                key,
                detail: format!("status {:?}, reference {:?}", row.status, gold.status),
            });
            continue;
        }
        let mut gold_sorted = gold.vectors.clone();
        gold_sorted.sort_unstable();
        if row.vectors != gold_sorted {
            let missing: Vec<String> =
                gold_sorted.iter().filter(|v| !row.vectors.contains(v)).map(ToString::to_string).collect();
            let extra: Vec<String> =
                row.vectors.iter().filter(|v| !gold_sorted.contains(v)).map(ToString::to_string).collect();
            out.push(Mismatch {
                key,
                detail: format!("missing [{}], unexpected [{}]", missing.join(", "), extra.join(", ")),
            });
        }
    }
    out
}

/// Reference rows embedded in the crate, for one table.
pub fn golden(table: Table) -> Vec<TableRow> {
    parse_csv(table.golden_csv()).expect("embedded golden data parses")
}

/// The family for a row, if it is a catalog family.
pub fn row_family(r: &TableRow) -> Option<FamilyParams> {
    family(r.d, r.k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::TABLE_PRIMES;

    fn primes(ps: &[u32]) -> Vec<Prime> {
        ps.iter().map(|&p| Prime::new(p.into()).unwrap()).collect()
    }

    #[test]
    fn golden_files_parse() {
        for t in Table::ALL {
            let rows = golden(t);
            assert_eq!(rows.len(), 14 * 9, "{t:?}");
            assert!(rows.iter().all(|r| r.seed_tag == t.tag()));
        }
    }

    #[test]
    fn csv_round_trip() {
        let t = generate_tables(&primes(&[2, 3, 5]));
        for table in Table::ALL {
            let rows = t.get(table);
            assert_eq!(parse_csv(&to_csv(rows)).unwrap(), rows);
        }
    }

    #[test]
    fn published_rows() {
        let t = generate_tables(&primes(&[2, 3]));
        let find = |rows: &[TableRow], d, k, p| rows.iter().find(|r| (r.d, r.k, r.p) == (d, k, p)).unwrap().clone();
        let r = find(&t.delta2, 2, 4, 2);
        let got: Vec<String> = r.vectors.iter().map(ToString::to_string).collect();
        assert_eq!(got, ["(0 1 0 0)", "(0 1 0 1)", "(0 1 1 0)", "(0 1 1 1)"]);
        let r = find(&t.delta4, 9, 6, 3);
        let got: Vec<String> = r.vectors.iter().map(ToString::to_string).collect();
        assert_eq!(got, ["(0 0 0 1)", "(0 0 1 1)", "(0 0 2 1)"]);
        assert_eq!(find(&t.union, 1, 4, 2).status, Status::Complete);
    }

    #[test]
    fn detects_single_vector_deviation() {
        let t = generate_tables(&primes(&[2, 5]));
        let mut gold = golden(Table::Delta2);
        assert!(diff_rows(&t.delta2, &gold).is_empty());
        let row = gold.iter_mut().find(|r| r.status == Status::Listed).unwrap();
        let v = row.vectors[0].entries();
        row.vectors[0] = ResidueVec4::new(Prime::new(row.p.into()).unwrap(), [v[0] as i64, v[1] as i64, v[2] as i64, (v[3] as i64 + 1) % row.p as i64]);
        let m = diff_rows(&t.delta2, &gold);
        assert_eq!(m.len(), 1, "{m:?}");
    }

    #[test]
    fn status_mismatch_reported() {
        let t = generate_tables(&primes(&[3]));
        let mut gold = golden(Table::Union);
        let row = gold.iter_mut().find(|r| r.p == 3 && r.status == Status::Complete).unwrap();
        row.status = Status::Listed;
        assert_eq!(diff_rows(&t.union, &gold).len(), 1);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_csv("nope\n").is_err());
        assert!(parse_csv(&format!("{CSV_HEADER}\n5,5,4,delta2,Complete,\n")).is_err());
        assert!(parse_csv(&format!("{CSV_HEADER}\n5,5,2,delta2,Listed,0 1 0\n")).is_err());
        assert!(parse_csv(&format!("{CSV_HEADER}\n5,5,2,delta2,Listed,0 1 0 2\n")).is_err());
        assert!(parse_csv(&format!("{CSV_HEADER}\n5,5,2,delta2,Complete,0 1 0 0\n")).is_err());
        assert!(parse_csv(&format!("{CSV_HEADER}\n5,5,2,delta9,Complete,\n")).is_err());
    }

    #[test]
    fn markdown_layout() {
        let t = generate_tables(&primes(&[2]));
        let md = to_markdown(Table::Delta2, &t.delta2);
        assert!(md.contains("| (5,5) | p=2 | (0 0 1 1), (0 1 0 0), (0 1 0 1), (1 0 0 1), (1 0 1 1) |"));
        assert!(md.contains("| (1,4) | p=2 |"));
        let _ = TABLE_PRIMES;
    }
}
