//! CNF formulas and the bi-colored gadget graph whose BC-cliques through
//! `Y1` encode truth assignments.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

use super::graph::{BiColoredGraph, EdgeColor};

/// A CNF formula over variables `1..=vars`. Literals use the DIMACS sign
/// convention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf {
    pub vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

impl Cnf {
    pub fn new(vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self> {
        for clause in &clauses {
            for &lit in clause {
                if lit == 0 || lit.unsigned_abs() as usize > vars {
                    return Err(Error::Format(format!(
                        "literal {lit} is outside variables 1..={vars}"
                    )));
                }
            }
        }
        Ok(Cnf { vars, clauses })
    }

    /// Exhaustive satisfiability check.
    pub fn is_satisfiable(&self) -> bool {
        (0u64..1 << self.vars).any(|assign| {
            self.clauses.iter().all(|c| {
                c.iter().any(|&lit| {
                    let value = assign >> (lit.unsigned_abs() - 1) & 1 == 1;
                    value == (lit > 0)
                })
            })
        })
    }
}

/// Parses DIMACS CNF. The `p cnf` header is required; `c` lines are
/// comments and clauses may span lines.
pub fn parse_dimacs(text: &str) -> Result<Cnf> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if line.starts_with('p') {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if header.is_some() {
                return Err(Error::parse(line_no, "second `p` line"));
            }
            if fields.len() != 4 || fields[1] != "cnf" {
                return Err(Error::parse(line_no, "expected `p cnf <vars> <clauses>`"));
            }
            let vars = fields[2]
                .parse()
                .map_err(|_| Error::parse(line_no, "bad variable count"))?;
            let count = fields[3]
                .parse()
                .map_err(|_| Error::parse(line_no, "bad clause count"))?;
            header = Some((vars, count));
            continue;
        }
        let Some((vars, _)) = header else {
            return Err(Error::parse(line_no, "clause before the `p cnf` header"));
        };
        for tok in line.split_whitespace() {
            let lit: i32 = tok
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad literal `{tok}`")))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() as usize > vars {
                return Err(Error::parse(
                    line_no,
                    format!("literal {lit} exceeds {vars} variables"),
                ));
            } else {
                current.push(lit);
            }
        }
    }
    let Some((vars, count)) = header else {
        return Err(Error::Format("missing `p cnf` header".into()));
    };
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != count {
        return Err(Error::Format(format!(
            "header announces {count} clauses, found {}",
            clauses.len()
        )));
    }
    Cnf::new(vars, clauses)
}

/// Node labels of the gadget for a formula with `k` clauses and `n`
/// variables: `C1..Ck`, then `T1..Tn`, `F1..Fn`, `Y1..Yn`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GadgetLabels {
    pub clauses: usize,
    pub vars: usize,
}

impl GadgetLabels {
    pub fn c(&self, i: usize) -> u32 {
        i as u32
    }
    pub fn t(&self, j: usize) -> u32 {
        (self.clauses + j) as u32
    }
    pub fn f(&self, j: usize) -> u32 {
        (self.clauses + self.vars + j) as u32
    }
    pub fn y(&self, j: usize) -> u32 {
        (self.clauses + 2 * self.vars + j) as u32
    }
    pub fn node_count(&self) -> usize {
        self.clauses + 3 * self.vars
    }

    /// Human-readable name of a label, e.g. `T2`.
    pub fn name(&self, label: u32) -> String {
        let l = label as usize;
        let (k, n) = (self.clauses, self.vars);
        if l <= k {
            format!("C{l}")
        } else if l <= k + n {
            format!("T{}", l - k)
        } else if l <= k + 2 * n {
            format!("F{}", l - k - n)
        } else {
            format!("Y{}", l - k - 2 * n)
        }
    }
}

/// The gadget graph of `cnf`.
pub fn sat_gadget(cnf: &Cnf) -> Result<BiColoredGraph> {
    if cnf.clauses.is_empty() || cnf.vars == 0 {
        return Err(Error::precondition(
            "sat_gadget needs at least one clause and one variable",
        ));
    }
    let lab = GadgetLabels {
        clauses: cnf.clauses.len(),
        vars: cnf.vars,
    };
    let mut black = BTreeSet::new();
    let mut add = |u: u32, v: u32| {
        black.insert((u.min(v), u.max(v)));
    };
    for i in 1..=cnf.vars {
        add(lab.y(i), lab.t(i));
        add(lab.y(i), lab.f(i));
        if i > 1 {
            add(lab.y(i), lab.t(i - 1));
            add(lab.y(i), lab.f(i - 1));
        }
    }
    for (ci, clause) in cnf.clauses.iter().enumerate() {
        for &lit in clause {
            let j = lit.unsigned_abs() as usize;
            add(lab.c(ci + 1), if lit > 0 { lab.t(j) } else { lab.f(j) });
        }
    }

    let n = lab.node_count();
    let mut g = BiColoredGraph::new(n);
    for &(u, v) in &black {
        g.add_edge(u, v, EdgeColor::Black)?;
    }
    for u in 1..=n as u32 {
        for v in u + 1..=n as u32 {
            let tf_pair = (1..=cnf.vars).any(|j| (u, v) == (lab.t(j), lab.f(j)));
            if !tf_pair && !black.contains(&(u, v)) {
                g.add_edge(u, v, EdgeColor::White)?;
            }
        }
    }
    Ok(g)
}
