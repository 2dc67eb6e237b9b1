//! Plain-text instance files.
//!
//! ```text
//! # optional comment lines
//! n W
//! w p [u]     (n lines)
//! ```
//!
//! Fields are ASCII decimal separated by whitespace. A file is a Bounded
//! Knapsack instance if any item line carries a multiplicity, otherwise a
//! 0-1 instance.

use knapsack_core::{BoundedInstance, BoundedItem, Instance01, Item01};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceFile {
    ZeroOne(Instance01),
    Bounded(BoundedInstance),
}

impl InstanceFile {
    pub fn to_bounded(&self) -> BoundedInstance {
        match self {
            InstanceFile::ZeroOne(i) => BoundedInstance::from_01(i),
            InstanceFile::Bounded(b) => b.clone(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            InstanceFile::ZeroOne(i) => i.len(),
            InstanceFile::Bounded(b) => b.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

fn field<T: std::str::FromStr>(line: usize, name: &str, s: &str) -> Result<T, ParseError> {
    s.parse()
        .map_err(|_| err(line, format!("bad {name} {s:?}")))
}

pub fn parse(text: &str) -> Result<InstanceFile, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines
        .next()
        .ok_or_else(|| err(1, "missing header \"n W\""))?;
    let h: Vec<&str> = header.split_whitespace().collect();
    if h.len() != 2 {
        return Err(err(hline, "header must be \"n W\""));
    }
    let n: usize = field(hline, "item count", h[0])?;
    let capacity: u64 = field(hline, "capacity", h[1])?;

    let mut items = Vec::with_capacity(n.min(1 << 20));
    let mut bounded = false;
    let mut last = hline;
    for (no, line) in lines {
        if items.len() == n {
            return Err(err(no, format!("more than {n} item lines")));
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        let (w, p, u) = match f.as_slice() {
            [w, p] => (w, p, None),
            [w, p, u] => (w, p, Some(u)),
            _ => return Err(err(no, "item line must be \"w p\" or \"w p u\"")),
        };
        let weight: u64 = field(no, "weight", w)?;
        let profit: i128 = field(no, "profit", p)?;
        let multiplicity: u64 = match u {
            Some(u) => {
                bounded = true;
                field(no, "multiplicity", u)?
            }
            None => 1,
        };
        if weight == 0 || profit <= 0 || multiplicity == 0 {
            return Err(err(no, "weight, profit and multiplicity must be positive"));
        }
        items.push((no, BoundedItem::new(weight, profit, multiplicity)));
        last = no;
    }
    if items.len() != n {
        return Err(err(
            last,
            format!("expected {n} items, found {}", items.len()),
        ));
    }

    let line_of = |index: usize| items.get(index).map_or(hline, |(no, _)| *no);
    let map = |e: knapsack_core::Error| match &e {
        knapsack_core::Error::InvalidItem { index, .. } => err(line_of(*index), e.to_string()),
        _ => err(hline, e.to_string()),
    };
    if bounded {
        let list = items.iter().map(|(_, it)| *it).collect();
        Ok(InstanceFile::Bounded(
            BoundedInstance::new(list, capacity).map_err(map)?,
        ))
    } else {
        let list = items
            .iter()
            .map(|(_, it)| Item01::new(it.weight, it.profit))
            .collect();
        Ok(InstanceFile::ZeroOne(
            Instance01::new(list, capacity).map_err(map)?,
        ))
    }
}

pub fn emit(file: &InstanceFile) -> String {
    let mut out = String::new();
    match file {
        InstanceFile::ZeroOne(i) => {
            out.push_str(&format!("{} {}\n", i.len(), i.capacity()));
            for it in i.items() {
                out.push_str(&format!("{} {}\n", it.weight, it.profit));
            }
        }
        InstanceFile::Bounded(b) => {
            out.push_str(&format!("{} {}\n", b.len(), b.capacity()));
            for it in b.items() {
                out.push_str(&format!(
                    "{} {} {}\n",
                    it.weight, it.profit, it.multiplicity
                ));
            }
        }
    }
    out
}
