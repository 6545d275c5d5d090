use topomodal::algebra::{meta_check, table, table_meta_check, BaseRelation, CompositionTable, Kind, RelationSet};
use topomodal::suite::fixtures::{entries, RCC5_COLUMNS, RCC5_ERRATA, RCC5_ROWS, RCC8_COLUMNS, RCC8_ROWS};
use topomodal::suite::table_fidelity;

#[test]
fn embedded_tables_match_the_printed_layout() {
    let r = table_fidelity(table(Kind::Rcc8), table(Kind::Rcc5));
    assert!(r.passed, "{}", r.tsv());
    assert_eq!(r.failures, 0);
}

#[test]
fn embedded_tables_pass_the_audit() {
    assert!(table_meta_check(Kind::Rcc8).is_empty());
    assert!(table_meta_check(Kind::Rcc5).is_empty());
}

#[test]
fn corrupted_rcc8_cell_is_caught() {
    let mut bad = table(Kind::Rcc8).clone();
    bad.set(
        BaseRelation::Tpp,
        BaseRelation::Tpp,
        RelationSet::singleton(Kind::Rcc8, BaseRelation::Tpp),
    );
    let r = table_fidelity(&bad, table(Kind::Rcc5));
    assert!(!r.passed);
    assert!(r.failures >= 1);
}

#[test]
fn corrupted_rcc5_cell_is_caught() {
    let mut bad = table(Kind::Rcc5).clone();
    bad.set(
        BaseRelation::Dr,
        BaseRelation::Dr,
        RelationSet::singleton(Kind::Rcc5, BaseRelation::Dr),
    );
    let r = table_fidelity(table(Kind::Rcc8), &bad);
    assert!(!r.passed);
}

#[test]
fn printed_rcc8_layout_is_a_coherent_table() {
    let e = entries(&RCC8_COLUMNS, &RCC8_ROWS);
    let t = CompositionTable::from_entries(Kind::Rcc8, &e).unwrap();
    assert!(meta_check(&t).is_empty());
    assert_eq!(&t, table(Kind::Rcc8));
}

#[test]
fn printed_rcc5_cell_fails_and_correction_passes() {
    let e = entries(&RCC5_COLUMNS, &RCC5_ROWS);
    let printed = CompositionTable::from_entries(Kind::Rcc5, &e).unwrap();
    assert!(!meta_check(&printed).is_empty());
    let corrected: Vec<_> = e
        .iter()
        .map(|&(r, c, cell)| {
            match RCC5_ERRATA.iter().find(|(er, ec, _, _)| *er == r && *ec == c) {
                Some(&(_, _, _, fixed)) => (r, c, fixed),
                None => (r, c, cell),
            }
        })
        .collect();
    let fixed = CompositionTable::from_entries(Kind::Rcc5, &corrected).unwrap();
    assert!(meta_check(&fixed).is_empty());
    assert_eq!(&fixed, table(Kind::Rcc5));
}
