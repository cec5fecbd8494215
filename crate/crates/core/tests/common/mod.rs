#![allow(dead_code)]

use std::path::PathBuf;

use splitcode::design::{Block, Point, SplittingDesign};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("fixtures")
        .join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap()
}

fn parse_cell(cell: &str) -> Vec<Point> {
    cell.trim_matches(|c| c == '{' || c == '}')
        .split(',')
        .map(|x| x.parse().unwrap())
        .collect()
}

/// Rows of a golden matrix fixture, read as written (not developed).
pub fn golden_blocks(name: &str) -> Vec<Block> {
    read_fixture(name)
        .lines()
        .take_while(|l| !l.is_empty())
        .filter(|l| l.starts_with('e'))
        .map(|l| Block::new(l.split(' ').skip(1).map(parse_cell).collect()))
        .collect()
}

pub fn golden_design(table: u32) -> SplittingDesign {
    let (name, v) = match table {
        1 => ("table1.txt", 9),
        2 => ("table2.txt", 17),
        _ => unreachable!(),
    };
    SplittingDesign::new(v, 2, golden_blocks(name))
}
