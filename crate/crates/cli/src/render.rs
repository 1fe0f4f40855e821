use std::fmt::Write;

use holokit::matrix::QMatrix;
use holokit::ranks::{FormalityVerdict, Mildness, NumericMildness, RankTable, Source};

use crate::Report;

fn source_text(s: &Source) -> String {
    match s {
        Source::Formula { name } => name.clone(),
        Source::LinearAlgebra => "linear-algebra".into(),
        Source::Both { formula } => format!("{formula} = linear-algebra"),
        Source::Transferred { from, .. } => format!("from {from}"),
    }
}

fn table(out: &mut String, label: &str, t: &RankTable) {
    let values: Vec<String> = t.entries.iter().map(|e| e.value.to_string()).collect();
    let _ = write!(out, "  {label:<10} {}", values.join(", "));
    let mut sources: Vec<String> = t.entries.iter().map(|e| source_text(&e.source)).collect();
    sources.dedup();
    let _ = writeln!(out, "   [{}]", sources.join("; "));
}

fn matrix(out: &mut String, indent: &str, m: &QMatrix) {
    for row in m.to_rows() {
        let cells: Vec<String> = row.iter().map(|c| format!("{c:>4}")).collect();
        let _ = writeln!(out, "{indent}{}", cells.join(" "));
    }
}

fn int_rows(out: &mut String, label: &str, rows: &[Vec<i64>]) {
    let _ = writeln!(out, "  {label}:");
    for row in rows {
        let cells: Vec<String> = row.iter().map(|c| format!("{c:>4}")).collect();
        let _ = writeln!(out, "    {}", cells.join(" "));
    }
}

fn formality(v: &FormalityVerdict) -> String {
    match v {
        FormalityVerdict::Holds { reason } => format!("graded-formal ({reason})"),
        FormalityVerdict::HoldsThrough { degree } => format!("dimensions agree through degree {degree}"),
        FormalityVerdict::Fails { degree, holonomy, graded } => {
            format!("not graded-formal: degree {degree} holonomy {holonomy} vs graded {graded}")
        }
        FormalityVerdict::Unknown { reason } => format!("unknown ({reason})"),
    }
}

fn mildness(m: &Mildness) -> String {
    match m {
        Mildness::Proved { reason } => format!("mild ({reason})"),
        Mildness::RefutedNumerically { degree, expected, actual } => {
            format!("not mild: degree {degree} expects {expected}, found {actual}")
        }
        Mildness::EvidenceTo { degree } => format!("series consistent through degree {degree}"),
        Mildness::Unknown { reason } => format!("unknown ({reason})"),
    }
}

/// Human-readable rendering of a report.
pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {} {}  (N = {}, cap = {})", r.tool, r.version, r.command, r.max_degree, r.cap);
    let _ = writeln!(out, "fingerprint {}", r.fingerprint);
    if let Some(p) = &r.presentation {
        let _ = writeln!(out, "presentation < {} | {} >", p.generators.join(", "), p.relators.join(", "));
    }
    if let Some(l) = &r.linking_matrix {
        int_rows(&mut out, "linking matrix", l);
    }
    if let Some(e) = &r.echelon {
        let _ = writeln!(out, "echelon: rank {}, b1 = {}", e.rank, e.b);
        int_rows(&mut out, "jacobian", &e.jacobian);
        int_rows(&mut out, "C", &e.c);
        int_rows(&mut out, "H", &e.h);
        let _ = writeln!(out, "  H1 basis: {}", e.h1_basis.join(", "));
        let _ = writeln!(out, "  H2 relators: {:?}", e.h2_basis);
        for (k, w) in e.echelon_relators.iter().enumerate() {
            let _ = writeln!(out, "  w{} = {w}", k + 1);
        }
        let _ = writeln!(out, "  projection:");
        matrix(&mut out, "    ", &e.projection);
    }
    if let Some(c) = &r.cup {
        let _ = writeln!(out, "cup products on H1 = <{}>: rank {}, kernel {}", c.basis.join(", "), c.rank, c.kernel_dim);
        for (label, m) in c.h2_labels.iter().zip(&c.matrices) {
            let _ = writeln!(out, "  relator {}:", label + 1);
            matrix(&mut out, "    ", m);
        }
    }
    if let Some(h) = &r.holonomy {
        let _ = write!(out, "holonomy on {}", h.generators.join(", "));
        if h.free {
            let _ = writeln!(out, ": free");
        } else {
            let _ = writeln!(out);
            for rel in &h.relations {
                let _ = writeln!(out, "  {rel}");
            }
        }
        if h.dropped_zero > 0 {
            let _ = writeln!(out, "  ({} zero relations dropped)", h.dropped_zero);
        }
    }
    if let Some(d) = &r.dims {
        let _ = writeln!(out, "dims ({}):", d.kind);
        table(&mut out, "dim", &d.table);
    }
    if let Some(rr) = &r.ranks {
        let _ = writeln!(out, "ranks:");
        for (label, t) in [("phi", &rr.phi), ("phi_bar", &rr.phi_bar), ("theta", &rr.theta), ("theta_bar", &rr.theta_bar)] {
            match t {
                Some(t) => table(&mut out, label, t),
                None => {
                    let _ = writeln!(out, "  {label:<10} n/a");
                }
            }
        }
        let _ = writeln!(out, "  mildness:  {}", mildness(&rr.mildness));
        let _ = writeln!(out, "  formality: {}", formality(&rr.formality));
        for n in &rr.notes {
            let _ = writeln!(out, "  note: {n}");
        }
    }
    if let Some(m) = &r.mildness {
        let _ = writeln!(out, "weights: {}", m.weights.join(", "));
        let numeric = match &m.numeric {
            NumericMildness::ConsistentTo { degree } => format!("consistent through degree {degree}"),
            NumericMildness::NotMild { degree, expected, actual } => {
                format!("not mild at degree {degree}: expected {expected}, found {actual}")
            }
        };
        let _ = writeln!(out, "numeric test: {numeric}");
        let c = &m.combinatorial;
        let verdict = if c.certified { "certified mild" } else { "inconclusive" };
        let _ = writeln!(out, "highest-monomial test: {verdict} under {}", c.ordering.join(" > "));
        let _ = writeln!(out, "  highest terms: {}", c.highest_terms.join(", "));
        if let Some(reason) = &c.reason {
            let _ = writeln!(out, "  {reason}");
        }
    }
    if let Some(f) = &r.formality {
        let _ = writeln!(out, "formality: {}", formality(&f.comparison));
        if let Some(b) = f.one_relator_weight_test {
            let _ = writeln!(out, "  one-relator weight test: {}", if b { "graded-formal" } else { "not graded-formal" });
        }
    }
    out
}
