//! JSON and CSV serialization with stable field ordering, plus the inverse
//! parsers needed for round-tripping.

use serde_json::{json, Value};

use crate::chc::build_chc;
use crate::enumeration::CountTable;
use crate::error::{Error, Result};
use crate::paths::{Family, LatticePath};
use crate::perm::Permutation;

/// JSON object for a permutation: `n`, `perm`, `descents`,
/// `uniquely_sorted`, and `hooks` when the permutation is sorted.
pub fn perm_to_json(pi: &Permutation) -> Value {
    let mut obj = serde_json::Map::new();
    obj.insert("n".into(), json!(pi.len()));
    obj.insert("perm".into(), json!(pi.entries()));
    obj.insert("descents".into(), json!(pi.descents()));
    obj.insert(
        "uniquely_sorted".into(),
        json!(crate::stacksort::is_uniquely_sorted(pi)),
    );
    if let Some(chc) = build_chc(pi) {
        let hooks: Vec<Value> = chc
            .hooks
            .iter()
            .map(|h| json!([[h.sw.pos, h.sw.val], [h.ne.pos, h.ne.val]]))
            .collect();
        obj.insert("hooks".into(), Value::Array(hooks));
    }
    Value::Object(obj)
}

/// Reads a permutation back from the `perm` field of [`perm_to_json`]
/// output.
pub fn perm_from_json(value: &Value) -> Result<Permutation> {
    let entries = value
        .get("perm")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::InvalidInput("missing \"perm\" array".into()))?
        .iter()
        .map(|v| {
            v.as_u64()
                .map(|x| x as u32)
                .ok_or_else(|| Error::InvalidInput(format!("bad permutation entry {v}")))
        })
        .collect::<Result<Vec<u32>>>()?;
    Permutation::new(entries)
}

/// JSON object for a path: `{"family", "steps", "k"}`.
pub fn path_to_json(path: &LatticePath) -> Value {
    json!({
        "family": path.family().name(),
        "steps": path.to_string(),
        "k": path.size(),
    })
}

/// Reads a path back from [`path_to_json`] output, revalidating it.
pub fn path_from_json(value: &Value) -> Result<LatticePath> {
    let family: Family = value
        .get("family")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::InvalidInput("missing \"family\" string".into()))?
        .parse()?;
    let steps = value
        .get("steps")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::InvalidInput("missing \"steps\" string".into()))?;
    LatticePath::parse(steps, family)
}

/// CSV for a count table, header `k,patterns,count,provenance`. Pattern
/// lists are quoted because they contain commas.
pub fn count_table_to_csv(table: &CountTable) -> String {
    let mut out = String::from("k,patterns,count,provenance\n");
    for row in &table.rows {
        out.push_str(&format!(
            "{},\"{}\",{},{}\n",
            row.k, row.patterns, row.count, row.provenance
        ));
    }
    out
}

/// CSV for a permutation list: header `n,perm`, entries space-separated.
pub fn perm_list_to_csv(perms: &[Permutation]) -> String {
    let mut out = String::from("n,perm\n");
    for pi in perms {
        out.push_str(&format!("{},{}\n", pi.len(), pi));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{CountRow, Provenance};

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn perm_json_shape() {
        let v = perm_to_json(&p("213"));
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"n":3,"perm":[2,1,3],"descents":[1],"uniquely_sorted":true,"hooks":[[[1,2],[3,3]]]}"#
        );
        // unsorted permutations carry no hooks field
        assert!(perm_to_json(&p("231")).get("hooks").is_none());
    }

    #[test]
    fn perm_json_round_trip() {
        for s in ["213", "31425", "2 7 3 5 9 4 8 1 6 10 11 12"] {
            let pi = p(s);
            assert_eq!(perm_from_json(&perm_to_json(&pi)).unwrap(), pi);
        }
        assert!(perm_from_json(&json!({"n": 3})).is_err());
    }

    #[test]
    fn path_json_round_trip() {
        let path = LatticePath::parse("UDUD", Family::Dyck).unwrap();
        let v = path_to_json(&path);
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"family":"dyck","steps":"UDUD","k":2}"#
        );
        assert_eq!(path_from_json(&v).unwrap(), path);
        assert!(path_from_json(&json!({"steps": "UDUD"})).is_err());
    }

    #[test]
    fn csv_formats() {
        let empty = CountTable::default();
        assert_eq!(count_table_to_csv(&empty), "k,patterns,count,provenance\n");
        let table = CountTable {
            rows: vec![CountRow {
                k: 2,
                patterns: "132,231".into(),
                count: 2,
                provenance: Provenance::Enumerated,
            }],
        };
        assert_eq!(
            count_table_to_csv(&table),
            "k,patterns,count,provenance\n2,\"132,231\",2,enumerated\n"
        );
        assert_eq!(perm_list_to_csv(&[p("213")]), "n,perm\n3,2 1 3\n");
    }
}
