//! Exhaustive structural classification of small systems.

use serde::Serialize;

use crate::catalog::graph::connected_within;
use crate::error::Result;
use crate::oracle::{membership_table, superset_table};
use crate::system::SetSystemInstance;

pub const CLASSIFY_GUARD: usize = 20;

/// Which defining implications hold, with the first counterexample found
/// for each one that fails.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub accessible: bool,
    pub strongly_accessible: bool,
    pub hereditary: bool,
    /// Whether `F` is connected hereditary with respect to the graph whose
    /// edges are the two-element members.
    pub connected_hereditary_witness: bool,
    pub commutable: bool,
    pub counterexamples: Vec<(String, String)>,
}

fn show(mask: usize) -> String {
    let items: Vec<String> = (0..usize::BITS)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| (i + 1).to_string())
        .collect();
    format!("{{{}}}", items.join(","))
}

pub fn classify_system(inst: &SetSystemInstance) -> Result<Classification> {
    classify_system_with_guard(inst, CLASSIFY_GUARD)
}

pub fn classify_system_with_guard(
    inst: &SetSystemInstance,
    guard: usize,
) -> Result<Classification> {
    let n = inst.size();
    let member = membership_table(inst, guard, "ground set")?;
    let up = superset_table(&member, n);
    let full = (1usize << n) - 1;
    let members: Vec<usize> = (0..member.len()).filter(|&m| member[m]).collect();
    let mut report = Classification::default();
    let note = |report: &mut Classification, what: &str, detail: String| {
        report.counterexamples.push((what.to_string(), detail));
    };

    let bits = |m: usize| (0..n).filter(move |b| m >> b & 1 == 1);

    report.accessible = true;
    for &x in members.iter().filter(|&&x| x != 0) {
        if !bits(x).any(|b| member[x & !(1 << b)]) {
            report.accessible = false;
            note(
                &mut report,
                "accessible",
                format!("{} has no member one element smaller", show(x)),
            );
            break;
        }
    }

    report.hereditary = true;
    'her: for &x in &members {
        for b in bits(x) {
            if !member[x & !(1 << b)] {
                report.hereditary = false;
                note(
                    &mut report,
                    "hereditary",
                    format!("{} ∈ F but {} ∉ F", show(x), show(x & !(1 << b))),
                );
                break 'her;
            }
        }
    }

    // X ⊂ Y both in F must leave some z ∈ Y \ X with X ∪ {z} ∈ F: look for a
    // member strictly above X using only elements outside ext(X)
    report.strongly_accessible = true;
    'sa: for &x in &members {
        let ext = (0..n)
            .filter(|&b| x >> b & 1 == 0 && member[x | 1 << b])
            .fold(0, |acc, b| acc | 1 << b);
        let rest = full & !x & !ext;
        let mut t = rest;
        while t != 0 {
            if member[x | t] {
                report.strongly_accessible = false;
                note(
                    &mut report,
                    "strongly accessible",
                    format!("{} ⊂ {} with no single-element step", show(x), show(x | t)),
                );
                break 'sa;
            }
            t = (t - 1) & rest;
        }
    }

    report.commutable = true;
    'com: for &x in members.iter().filter(|&&x| x != 0) {
        let ext: Vec<usize> = (0..n)
            .filter(|&b| x >> b & 1 == 0 && member[x | 1 << b])
            .collect();
        for (i, &a) in ext.iter().enumerate() {
            for &b in &ext[i + 1..] {
                let both = x | 1 << a | 1 << b;
                if up[both] && !member[both] {
                    report.commutable = false;
                    note(
                        &mut report,
                        "commutable",
                        format!(
                            "{} extends by {} and by {} inside a member, but not by both",
                            show(x),
                            a + 1,
                            b + 1
                        ),
                    );
                    break 'com;
                }
            }
        }
    }

    let pair = |u: u32, v: u32| member[1 << (u - 1) | 1 << (v - 1)];
    let labels = |m: usize| bits(m).map(|b| b as u32 + 1).collect::<Vec<u32>>();
    report.connected_hereditary_witness = true;
    'ch: for &y in &members {
        if !connected_within(&labels(y), pair) {
            report.connected_hereditary_witness = false;
            note(
                &mut report,
                "connected hereditary",
                format!("{} is not connected by two-element members", show(y)),
            );
            break;
        }
        for b in bits(y) {
            let smaller = y & !(1 << b);
            if smaller != 0 && !member[smaller] && connected_within(&labels(smaller), pair) {
                report.connected_hereditary_witness = false;
                note(
                    &mut report,
                    "connected hereditary",
                    format!(
                        "{} ∈ F but its connected subset {} ∉ F",
                        show(y),
                        show(smaller)
                    ),
                );
                break 'ch;
            }
        }
    }

    Ok(report)
}
