//! Static data for the exceptional groups G4..G37, parsed once from the
//! embedded `data/exceptional.txt`.

use std::sync::LazyLock;

/// Projective class of a primitive rank-2 group, or `Primitive` for rank ≥ 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExceptionalClass {
    Tetrahedral,
    Octahedral,
    Icosahedral,
    Primitive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionalRecord {
    pub id: u32,
    pub rank: u32,
    pub degrees: Vec<u64>,
    pub codegrees: Vec<u64>,
    pub order: u128,
    pub class: ExceptionalClass,
}

const TABLE_SOURCE: &str = include_str!("../../data/exceptional.txt");

static TABLE: LazyLock<Vec<ExceptionalRecord>> = LazyLock::new(|| {
    parse_table(TABLE_SOURCE).unwrap_or_else(|e| panic!("embedded exceptional table: {e}"))
});

pub fn lookup(id: u32) -> Option<&'static ExceptionalRecord> {
    TABLE.iter().find(|r| r.id == id)
}

pub fn records() -> &'static [ExceptionalRecord] {
    &TABLE
}

fn parse_list(value: &str) -> Result<Vec<u64>, String> {
    value
        .split(',')
        .map(|v| v.parse::<u64>().map_err(|e| format!("bad integer {v:?}: {e}")))
        .collect()
}

pub(crate) fn parse_table(source: &str) -> Result<Vec<ExceptionalRecord>, String> {
    let mut out = Vec::new();
    for (lineno, line) in source.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let ctx = |msg: String| format!("line {}: {msg}", lineno + 1);
        let (mut id, mut rank, mut degrees, mut codegrees, mut order, mut class) =
            (None, None, None, None, None, None);
        for field in line.split_whitespace() {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| ctx(format!("field {field:?} is not key=value")))?;
            match key {
                "id" => id = Some(value.parse::<u32>().map_err(|e| ctx(e.to_string()))?),
                "rank" => rank = Some(value.parse::<u32>().map_err(|e| ctx(e.to_string()))?),
                "degrees" => degrees = Some(parse_list(value).map_err(ctx)?),
                "codegrees" => codegrees = Some(parse_list(value).map_err(ctx)?),
                "order" => order = Some(value.parse::<u128>().map_err(|e| ctx(e.to_string()))?),
                "class" => {
                    class = Some(match value {
                        "tetrahedral" => ExceptionalClass::Tetrahedral,
                        "octahedral" => ExceptionalClass::Octahedral,
                        "icosahedral" => ExceptionalClass::Icosahedral,
                        "primitive" => ExceptionalClass::Primitive,
                        other => return Err(ctx(format!("unknown class {other:?}"))),
                    })
                }
                other => return Err(ctx(format!("unknown key {other:?}"))),
            }
        }
        let missing = |k: &str| ctx(format!("missing key {k}"));
        let record = ExceptionalRecord {
            id: id.ok_or_else(|| missing("id"))?,
            rank: rank.ok_or_else(|| missing("rank"))?,
            degrees: degrees.ok_or_else(|| missing("degrees"))?,
            codegrees: codegrees.ok_or_else(|| missing("codegrees"))?,
            order: order.ok_or_else(|| missing("order"))?,
            class: class.ok_or_else(|| missing("class"))?,
        };
        if record.degrees.len() != record.rank as usize
            || record.codegrees.len() != record.rank as usize
        {
            return Err(ctx("degree/codegree count differs from rank".into()));
        }
        if !record.degrees.is_sorted() || !record.codegrees.iter().rev().is_sorted() {
            return Err(ctx("degrees must ascend and codegrees descend".into()));
        }
        if record.codegrees.last() != Some(&0) {
            return Err(ctx("smallest codegree must be 0".into()));
        }
        out.push(record);
    }
    Ok(out)
}
