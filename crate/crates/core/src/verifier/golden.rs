//! Printed tables shipped as CSV and compared against computed ones.

use super::report::Table;

const TABLE1: &str = include_str!("../../golden/table1.csv");
const TABLE2: &str = include_str!("../../golden/table2.csv");
const TABLE3: &str = include_str!("../../golden/table3.csv");

pub const TABLE1_TITLE: &str = "Maximal possible D for weight k, (2) inert, D > 5";
pub const TABLE2_TITLE: &str = "Possible k1, k2 and D, (2) inert";
pub const TABLE3_TITLE: &str = "Possible k1, k2 and D, (2) not inert";

pub fn golden_table(id: &str) -> Option<Table> {
    let (text, title) = match id {
        "table1" => (TABLE1, TABLE1_TITLE),
        "table2" => (TABLE2, TABLE2_TITLE),
        "table3" => (TABLE3, TABLE3_TITLE),
        _ => return None,
    };
    Table::parse_csv(id, title, text)
}

/// Row-by-row equality with the golden table of the same id.
pub fn matches_golden(t: &Table) -> Option<bool> {
    let g = golden_table(&t.id)?;
    Some(g.rows == t.rows && g.columns == t.columns && g.key_label == t.key_label)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_tables_parse() {
        let t1 = golden_table("table1").unwrap();
        assert_eq!(t1.rows.len(), 10);
        assert_eq!(t1.value(2, 0), Some(1549));
        let t2 = golden_table("table2").unwrap();
        assert_eq!(t2.rows.len(), 14);
        assert_eq!(t2.value(28, 0), None);
        let t3 = golden_table("table3").unwrap();
        assert_eq!(t3.column(1), vec![Some(73), Some(8), None, None, None, None]);
    }
}
