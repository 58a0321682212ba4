//! Data files compiled into the library.

pub const TURBINES_CSV: &str = include_str!("../data/turbines.csv");
pub const PRICES_CSV: &str = include_str!("../data/prices.csv");
pub const SOLAR5_FIELD_CSV: &str = include_str!("../data/solar5_field.csv");
pub const SOLAR6_FIELD_CSV: &str = include_str!("../data/solar6_field.csv");

pub const DEMAND_SOLAR2: &str = include_str!("../data/demand/solar2.csv");
pub const DEMAND_SOLAR3: &str = include_str!("../data/demand/solar3.csv");
pub const DEMAND_SOLAR4: &str = include_str!("../data/demand/solar4.csv");
pub const DEMAND_SOLAR5: &str = include_str!("../data/demand/solar5.csv");
pub const DEMAND_SOLAR6: &str = include_str!("../data/demand/solar6.csv");

pub const X0: [&str; 10] = [
    include_str!("../data/x0/solar1.txt"),
    include_str!("../data/x0/solar2.txt"),
    include_str!("../data/x0/solar3.txt"),
    include_str!("../data/x0/solar4.txt"),
    include_str!("../data/x0/solar5.txt"),
    include_str!("../data/x0/solar6.txt"),
    include_str!("../data/x0/solar7.txt"),
    include_str!("../data/x0/solar8.txt"),
    include_str!("../data/x0/solar9.txt"),
    include_str!("../data/x0/solar10.txt"),
];

/// Non-comment, non-empty lines split on commas.
pub fn csv_rows(text: &str) -> impl Iterator<Item = Vec<&str>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.split(',').map(str::trim).collect())
}

/// Second column of a two-or-more column numeric CSV, in file order.
pub fn series(text: &str) -> Vec<f64> {
    csv_rows(text)
        .map(|r| r[1].parse().expect("numeric series"))
        .collect()
}

/// Whitespace-separated numbers, `#` comments ignored.
pub fn numbers(text: &str) -> Vec<f64> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(str::split_whitespace)
        .map(|t| t.parse().expect("numeric start point"))
        .collect()
}
