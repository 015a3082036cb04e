//! Orbit representatives produced by `search_representatives`, one per Weyl
//! orbit of root configurations of catalogued type. Variant names follow the
//! case numbering of the classification figures where a type splits there.

use super::registry::RegistryEntry;

const fn entry(type_name: &'static str, roots: &'static [&'static str]) -> RegistryEntry {
    RegistryEntry {
        type_name,
        variant: None,
        roots,
        note: None,
    }
}

const fn variant(type_name: &'static str, variant: &'static str, roots: &'static [&'static str]) -> RegistryEntry {
    RegistryEntry {
        type_name,
        variant: Some(variant),
        roots,
        note: None,
    }
}

pub(super) const ENTRIES: &[RegistryEntry] = &[
    entry("A1", &["A'12"]),
    entry("A2", &["A'12", "A'23"]),
    entry("A3", &["A'12", "A'23", "A'34"]),
    entry("A4", &["A'12", "A'23", "A'34", "A'45"]),
    variant("A5", "1", &["A'12", "A'23", "A'34", "A'45", "B'167"]),
    variant("A5", "2", &["A'12", "A'23", "A'34", "A'45", "A'56"]),
    entry("A6", &["A'12", "A'23", "A'34", "A'45", "A'56", "A'67"]),
    entry("A7", &["A'12", "A'23", "A'34", "A'45", "A'56", "A'67", "C'7"]),
    entry("D4", &["A'12", "A'23", "A'34", "B'125"]),
    entry("D5", &["A'12", "A'23", "A'34", "A'45", "B'123"]),
    entry("D6", &["A'12", "A'23", "A'34", "A'45", "A'56", "B'127"]),
    entry("E6", &["A'12", "A'23", "A'34", "A'45", "A'56", "B'123"]),
    entry("E7", &["A'12", "A'23", "A'34", "A'45", "A'56", "A'67", "B'123"]),
    entry("2A1", &["A'12", "A'34"]),
    entry("A1+A2", &["A'12", "A'23", "A'45"]),
    variant("A1+A3", "1", &["A'12", "A'23", "A'34", "B'567"]),
    variant("A1+A3", "2", &["A'12", "A'23", "A'34", "A'56"]),
    entry("A1+A4", &["A'12", "A'23", "A'34", "A'45", "A'67"]),
    variant("A1+A5", "a", &["A'12", "A'23", "A'34", "A'45", "A'56", "C'7"]),
    variant("A1+A5", "b", &["A'12", "A'23", "A'34", "A'45", "A'67", "B'167"]),
    entry("A1+D4", &["A'12", "A'23", "A'34", "A'56", "B'127"]),
    entry("A1+D5", &["A'12", "A'23", "A'34", "A'45", "A'67", "B'123"]),
    entry("A1+D6", &["A'12", "A'23", "A'34", "A'45", "A'56", "B'127", "C'7"]),
    entry("2A2", &["A'12", "A'23", "A'45", "A'56"]),
    entry("A2+A3", &["A'12", "A'23", "A'34", "A'56", "A'67"]),
    entry("A2+A4", &["A'12", "A'23", "A'34", "A'45", "A'67", "C'7"]),
    entry("A2+A5", &["A'12", "A'23", "A'34", "A'45", "A'67", "B'167", "C'7"]),
    entry("2A3", &["A'12", "A'23", "A'34", "A'56", "A'67", "C'7"]),
    variant("3A1", "1", &["A'12", "A'34", "B'567"]),
    variant("3A1", "2", &["A'12", "A'34", "A'56"]),
    entry("2A1+A2", &["A'12", "A'23", "A'45", "A'67"]),
    variant("2A1+A3", "1", &["A'12", "A'23", "A'34", "A'56", "C'7"]),
    variant("2A1+A3", "2", &["A'12", "A'23", "A'34", "A'56", "B'567"]),
    entry("2A1+D4", &["A'12", "A'23", "A'34", "A'56", "B'127", "B'567"]),
    entry("A1+2A2", &["A'12", "A'23", "A'45", "A'56", "B'123"]),
    entry("A1+A2+A3", &["A'12", "A'23", "A'34", "A'56", "A'67", "B'567"]),
    entry("A1+2A3", &["A'12", "A'23", "A'34", "A'56", "A'67", "B'567", "C'7"]),
    entry("3A2", &["A'12", "A'23", "A'45", "A'56", "B'123", "B'456"]),
    variant("4A1", "with-L315-curve", &["A'12", "A'34", "A'56", "B'127"]),
    variant("4A1", "no-L315-curve", &["A'12", "A'34", "A'56", "C'7"]),
    entry("3A1+A2", &["A'12", "A'23", "A'45", "A'67", "B'123"]),
    entry("3A1+A3", &["A'12", "A'23", "A'34", "A'56", "B'567", "C'7"]),
    entry("3A1+D4", &["A'12", "A'23", "A'34", "A'56", "B'127", "B'567", "C'7"]),
    entry("5A1", &["A'12", "A'34", "A'56", "B'127", "B'347"]),
    entry("6A1", &["A'12", "A'34", "A'56", "B'127", "B'347", "B'567"]),
    RegistryEntry {
        type_name: "7A1",
        variant: None,
        roots: &["A'12", "A'34", "A'56", "B'127", "B'347", "B'567", "C'7"],
        note: Some("occurs only in characteristic 2"),
    },
];
