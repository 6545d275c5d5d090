//! Composition tables transcribed from their printed row layout, kept
//! separate from the tables in `algebra` so that each checks the other.

/// Column order of the printed RCC8 table.
pub const RCC8_COLUMNS: [&str; 7] = ["dc", "ec", "tpp", "tppi", "po", "ntpp", "ntppi"];

/// Printed RCC8 rows in printed order; `*` is all eight relations.
pub const RCC8_ROWS: [(&str, [&str; 7]); 7] = [
    (
        "dc",
        [
            "*",
            "dc ec po tpp ntpp",
            "dc ec po tpp ntpp",
            "dc",
            "dc ec po tpp ntpp",
            "dc ec po tpp ntpp",
            "dc",
        ],
    ),
    (
        "ec",
        [
            "dc ec po tppi ntppi",
            "dc ec po tpp tppi eq",
            "ec po tpp ntpp",
            "dc ec",
            "dc ec po tpp ntpp",
            "po tpp ntpp",
            "dc",
        ],
    ),
    (
        "tpp",
        [
            "dc",
            "dc ec",
            "tpp ntpp",
            "dc ec po tpp tppi eq",
            "dc ec po tpp ntpp",
            "ntpp",
            "dc ec po tppi ntppi",
        ],
    ),
    (
        "tppi",
        [
            "dc ec po tppi ntppi",
            "ec po tppi ntppi",
            "po eq tpp tppi",
            "tppi ntppi",
            "po tppi ntppi",
            "po tpp ntpp",
            "ntppi",
        ],
    ),
    (
        "po",
        [
            "dc ec po tppi ntppi",
            "dc ec po tppi ntppi",
            "po tpp ntpp",
            "dc ec po tppi ntppi",
            "*",
            "po tpp ntpp",
            "dc ec po tppi ntppi",
        ],
    ),
    (
        "ntpp",
        [
            "dc",
            "dc",
            "ntpp",
            "dc ec po tpp ntpp",
            "dc ec po tpp ntpp",
            "ntpp",
            "*",
        ],
    ),
    (
        "ntppi",
        [
            "dc ec po tppi ntppi",
            "po tppi ntppi",
            "po tppi ntppi",
            "ntppi",
            "po tppi ntppi",
            "po tppi tpp ntpp ntppi eq",
            "ntppi",
        ],
    ),
];

/// Column order of the printed RCC5 table.
pub const RCC5_COLUMNS: [&str; 4] = ["dr", "po", "pp", "ppi"];

/// Printed RCC5 rows, verbatim including the misprinted `(ppi, po)` cell.
pub const RCC5_ROWS: [(&str, [&str; 4]); 4] = [
    ("dr", ["*", "dr po pp", "dr po pp", "dr"]),
    ("po", ["dr po ppi", "*", "po pp", "dr po ppi"]),
    ("pp", ["dr", "dr po pp", "pp", "*"]),
    ("ppi", ["dr po ppi", "po pp", "eq po pp ppi", "ppi"]),
];

/// A printed cell known to be wrong: `(row, column, printed, corrected)`.
pub type Erratum = (&'static str, &'static str, &'static str, &'static str);

/// `(ppi, po)` is printed as `{po, pp}`, which is not the converse of the
/// `(po, pp)` cell `{po, pp}`.
pub const RCC5_ERRATA: [Erratum; 1] = [("ppi", "po", "po pp", "po ppi")];

/// Flattens a printed layout into `(row, column, entry)` triples.
pub fn entries<const N: usize>(
    columns: &[&'static str; N],
    rows: &[(&'static str, [&'static str; N])],
) -> Vec<(&'static str, &'static str, &'static str)> {
    rows.iter()
        .flat_map(|(r, cells)| columns.iter().zip(cells).map(move |(c, e)| (*r, *c, *e)))
        .collect()
}
