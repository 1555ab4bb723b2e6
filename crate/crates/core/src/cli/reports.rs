//! End-to-end reproductions of the order-20 and order-27 families.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::reference::{self, Cell};
use crate::isoclass::{classify_actions, deciders::IsoDecider, IsoClassReport, IsoError};
use crate::perms::{enumerate_stabilizer_torsion, Permutation};
use crate::semidirect::{product, ActionHom};
use crate::structure::{rules, StructureReport, SubsetKind};
use crate::tables::Loop;

/// All actions of `Z_h` on `Z_m` by identity-fixing permutations, in
/// enumeration order.
pub fn cyclic_family(m: usize, h: usize) -> Result<Vec<ActionHom>, IsoError> {
    let gens =
        enumerate_stabilizer_torsion(m, 0, h).map_err(crate::semidirect::ActionError::from)?;
    let base = Loop::cyclic(m)?;
    Ok(gens
        .iter()
        .map(|g| ActionHom::cyclic(base.clone(), h, g))
        .collect::<Result<Vec<_>, _>>()?)
}

/// Table 1 columns in published order.
pub const TABLE1_COLUMNS: [SubsetKind; 6] = [
    SubsetKind::LeftNucleus,
    SubsetKind::RightNucleus,
    SubsetKind::MiddleNucleus,
    SubsetKind::Nucleus,
    SubsetKind::Commutant,
    SubsetKind::Center,
];

#[derive(Debug, Clone, Serialize)]
pub struct CaseRow {
    pub case: String,
    pub generator: String,
    /// Position of the generator in the enumeration.
    pub index: usize,
    pub report: StructureReport,
}

fn cell_matches(report: &StructureReport, kind: SubsetKind, cell: Cell) -> bool {
    match cell {
        Cell::Label(l) => report.label(kind) == l,
        Cell::Size(k) => report.get(kind).len() == k,
    }
}

fn computed_cell(report: &StructureReport, kind: SubsetKind, cell: Cell) -> String {
    match cell {
        Cell::Size(_) => format!("size {}", report.get(kind).len()),
        Cell::Label(_) => report.label(kind).to_string(),
    }
}

/// Disagreeing cells of a row, as `(column, computed, published)`.
pub fn table1_diffs(row: &CaseRow) -> Vec<(SubsetKind, String, String)> {
    let Some((_, cells)) = reference::TABLE1.iter().find(|(c, _)| *c == row.case) else {
        return Vec::new();
    };
    TABLE1_COLUMNS
        .iter()
        .zip(cells)
        .filter(|(k, c)| !cell_matches(&row.report, **k, **c))
        .map(|(k, c)| (*k, computed_cell(&row.report, *k, *c), c.text()))
        .collect()
}

/// Computed rows next to the published ones, with a match line per case.
pub fn render_table1(rows: &[CaseRow]) -> String {
    let mut out = String::new();
    let _ = write!(out, "{:<5} {:<10}", "case", "source");
    for k in TABLE1_COLUMNS {
        let _ = write!(out, " {:<10}", k.name());
    }
    out.push('\n');
    for row in rows {
        let published = reference::TABLE1.iter().find(|(c, _)| *c == row.case);
        let _ = write!(out, "{:<5} {:<10}", row.case, "computed");
        for (i, k) in TABLE1_COLUMNS.iter().enumerate() {
            let text = match published {
                Some((_, cells)) => computed_cell(&row.report, *k, cells[i]),
                None => row.report.label(*k).to_string(),
            };
            let _ = write!(out, " {text:<10}");
        }
        out.push('\n');
        if let Some((_, cells)) = published {
            let _ = write!(out, "{:<5} {:<10}", "", "published");
            for c in cells {
                let _ = write!(out, " {:<10}", c.text());
            }
            out.push('\n');
            let _ = write!(out, "{:<5} {:<10}", "", "match");
            for (k, c) in TABLE1_COLUMNS.iter().zip(cells) {
                let mark = if cell_matches(&row.report, *k, *c) {
                    "yes"
                } else {
                    "NO"
                };
                let _ = write!(out, " {mark:<10}");
            }
            out.push('\n');
        }
    }
    out
}

/// Evidence for one disagreeing cell: the computed subset and, for `N_ρ`,
/// the containment `{1} x H ⊆ N_ρ` together with the order of `(0, 1)`.
fn evidence(
    row: &CaseRow,
    action: &ActionHom,
    l: &Loop,
    kind: SubsetKind,
    published: &str,
) -> String {
    let s = row.report.get(kind);
    let mut out = format!(
        "  computed {} = {:?} (size {}, {})\n",
        kind.name(),
        s.members(),
        s.len(),
        row.report.label(kind)
    );
    if kind == SubsetKind::RightNucleus {
        let h = action.acting_copy();
        let _ = writeln!(
            out,
            "  {{1}} x H = {:?} contained in N_rho: {}",
            h.members(),
            h.is_subset_of(s)
        );
        let g = action.encode(0, 1);
        let order = (1..=l.order())
            .scan(g, |x, k| {
                let cur = *x;
                *x = l.mul(*x, g);
                Some((k, cur))
            })
            .find(|&(_, x)| x == 0)
            .map_or(0, |(k, _)| k);
        let _ = writeln!(out, "  (0,1) = element {g} has order {order}");
        let cyclic = published
            .strip_prefix("Z_")
            .and_then(|k| k.parse::<usize>().ok());
        if let Some(k) = cyclic.filter(|k| order == 0 || k % order != 0) {
            let _ = writeln!(out, "  Z_{k} has no element of order {order}");
        }
    }
    for c in rules::cross_check(action, l) {
        if c.target == kind {
            let _ = writeln!(out, "  characterization {}: {:?}", c.name, c.outcome);
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct Order20 {
    pub actions: Vec<ActionHom>,
    pub classes: IsoClassReport,
    /// For each published case, the computed class holding its generators.
    pub case_classes: Vec<Option<usize>>,
    pub rows: Vec<CaseRow>,
}

impl Order20 {
    pub fn compute(decider: &dyn IsoDecider) -> Result<Order20, IsoError> {
        let actions = cyclic_family(5, 4)?;
        let classes = classify_actions(&actions, decider)?;
        let index_of = |g: &str| -> Option<usize> {
            let p = Permutation::parse_cycles(g, 5).ok()?;
            actions.iter().position(|a| *a.phi(1) == p)
        };
        let case_classes = reference::ORDER20_CASES
            .iter()
            .map(|case| {
                let idx: Option<Vec<usize>> = case.generators.iter().map(|g| index_of(g)).collect();
                let mut idx = idx?;
                idx.sort_unstable();
                classes.classes.iter().position(|c| c.members == idx)
            })
            .collect();
        let rows = reference::TABLE1
            .par_iter()
            .map(|(case, _)| {
                let gen = reference::ORDER20_CASES
                    .iter()
                    .find(|c| c.name == *case)
                    .map(|c| c.generators[0])
                    .expect("every table row is a case");
                let i = index_of(gen).expect("published generators are enumerated");
                Ok(CaseRow {
                    case: case.to_string(),
                    generator: gen.to_string(),
                    index: i,
                    report: StructureReport::compute(&product(&actions[i])?),
                })
            })
            .collect::<Result<Vec<_>, IsoError>>()?;
        Ok(Order20 {
            actions,
            classes,
            case_classes,
            rows,
        })
    }

    pub fn counts_agree(&self) -> bool {
        self.classes.input_count == reference::ORDER20_ACTIONS
            && self.classes.class_count == reference::ORDER20_CLASSES
            && self.classes.associative_count() == reference::ORDER20_GROUPS
    }

    pub fn cases_agree(&self) -> bool {
        self.case_classes
            .iter()
            .zip(&reference::ORDER20_CASES)
            .all(|(c, case)| c.is_some_and(|c| self.classes.classes[c].associative == case.group))
    }

    pub fn table1_agrees(&self) -> bool {
        self.rows.iter().all(|r| table1_diffs(r).is_empty())
    }

    pub fn render(&self) -> String {
        let c = &self.classes;
        let mut out = String::from("Z_5 x| Z_4: all actions of Z_4 on Z_5 fixing 0\n\n");
        let _ = writeln!(
            out,
            "actions {:>4}  classes {:>3}  associative {:>2}   published {} / {} / {}   {}",
            c.input_count,
            c.class_count,
            c.associative_count(),
            reference::ORDER20_ACTIONS,
            reference::ORDER20_CLASSES,
            reference::ORDER20_GROUPS,
            mark(self.counts_agree())
        );
        out.push_str(
            "\ncase  published generators                  computed class      group  match\n",
        );
        for (case, cls) in reference::ORDER20_CASES.iter().zip(&self.case_classes) {
            let computed = match cls {
                Some(i) => format!("{:?}", c.classes[*i].members),
                None => "(split)".to_string(),
            };
            let ok = cls.is_some_and(|i| c.classes[i].associative == case.group);
            let _ = writeln!(
                out,
                "{:<5} {:<36} {:<19} {:<6} {}",
                case.name,
                case.generators.join(" "),
                computed,
                if case.group { "yes" } else { "no" },
                mark(ok)
            );
        }
        out.push_str("\nNuclei, commutant and center of Cases IV-VII\n");
        out.push_str(&render_table1(&self.rows));
        let mut discrepancies = String::new();
        for row in &self.rows {
            let i = row.index;
            let l = product(&self.actions[i]).expect("valid action");
            for (kind, computed, published) in table1_diffs(row) {
                let _ = writeln!(
                    discrepancies,
                    "DISCREPANCY case {} ({}) {}: computed {}, published {}",
                    row.case,
                    row.generator,
                    kind.name(),
                    computed,
                    published
                );
                discrepancies.push_str(&evidence(row, &self.actions[i], &l, kind, &published));
            }
        }
        if !discrepancies.is_empty() {
            out.push('\n');
            out.push_str(&discrepancies);
        }
        out
    }

    pub fn agrees(&self) -> bool {
        self.counts_agree() && self.cases_agree() && self.table1_agrees()
    }
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "agree"
    } else {
        "DISAGREE"
    }
}

/// Counts over a set of order-27 classes, in the order of
/// `reference::ORDER27_STATS`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Order27Stats {
    pub classes: usize,
    pub n_lambda_z9: usize,
    pub n_rho_e9: usize,
    pub n_rho_z3: usize,
    pub nucleus_is_center: usize,
    pub nucleus_z3: usize,
    pub nucleus_trivial: usize,
    pub associator_z9: usize,
    pub commutant_6: usize,
    pub commutant_3: usize,
}

impl Order27Stats {
    pub fn tally<'a>(reports: impl IntoIterator<Item = &'a StructureReport>) -> Order27Stats {
        let mut s = Order27Stats {
            classes: 0,
            n_lambda_z9: 0,
            n_rho_e9: 0,
            n_rho_z3: 0,
            nucleus_is_center: 0,
            nucleus_z3: 0,
            nucleus_trivial: 0,
            associator_z9: 0,
            commutant_6: 0,
            commutant_3: 0,
        };
        for r in reports {
            let label = |k| r.label(k);
            s.classes += 1;
            s.n_lambda_z9 += (label(SubsetKind::LeftNucleus) == "Z_9") as usize;
            s.n_rho_e9 += (label(SubsetKind::RightNucleus) == "Z_3 x Z_3") as usize;
            s.n_rho_z3 += (label(SubsetKind::RightNucleus) == "Z_3") as usize;
            s.nucleus_is_center += (r.nucleus == r.center) as usize;
            s.nucleus_z3 += (label(SubsetKind::Nucleus) == "Z_3") as usize;
            s.nucleus_trivial += (r.nucleus.len() == 1) as usize;
            s.associator_z9 += (label(SubsetKind::Associator) == "Z_9") as usize;
            s.commutant_6 += (r.commutant.len() == 6) as usize;
            s.commutant_3 += (r.commutant.len() == 3) as usize;
        }
        s
    }

    pub fn values(&self) -> [usize; 10] {
        [
            self.classes,
            self.n_lambda_z9,
            self.n_rho_e9,
            self.n_rho_z3,
            self.nucleus_is_center,
            self.nucleus_z3,
            self.nucleus_trivial,
            self.associator_z9,
            self.commutant_6,
            self.commutant_3,
        ]
    }

    /// Fields that differ from the published counts.
    pub fn diffs(&self) -> Vec<(&'static str, usize, usize)> {
        reference::ORDER27_STATS
            .iter()
            .zip(self.values())
            .filter(|((_, p), c)| p != c)
            .map(|((name, p), c)| (*name, c, *p))
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct Order27 {
    pub actions: Vec<ActionHom>,
    pub classes: IsoClassReport,
    /// One structure report per class, in class order.
    pub reports: Vec<StructureReport>,
}

impl Order27 {
    pub fn compute(decider: &dyn IsoDecider) -> Result<Order27, IsoError> {
        let actions = cyclic_family(9, 3)?;
        let classes = classify_actions(&actions, decider)?;
        let reports = classes
            .classes
            .par_iter()
            .map(|c| {
                Ok(StructureReport::compute(&product(
                    &actions[c.representative],
                )?))
            })
            .collect::<Result<Vec<_>, IsoError>>()?;
        Ok(Order27 {
            actions,
            classes,
            reports,
        })
    }

    pub fn counts_agree(&self) -> bool {
        self.classes.input_count == reference::ORDER27_ACTIONS
            && self.classes.class_count == reference::ORDER27_CLASSES
            && self.classes.associative_count() == reference::ORDER27_GROUPS
    }

    /// Statistics over the non-associative classes.
    pub fn loop_stats(&self) -> Order27Stats {
        Order27Stats::tally(self.reports.iter().filter(|r| !r.associative))
    }

    /// Statistics over every class, groups included.
    pub fn all_stats(&self) -> Order27Stats {
        Order27Stats::tally(&self.reports)
    }

    pub fn agrees(&self) -> bool {
        self.counts_agree() && self.loop_stats().diffs().is_empty()
    }

    pub fn render(&self) -> String {
        let c = &self.classes;
        let mut out = String::from("Z_9 x| Z_3: all actions of Z_3 on Z_9 fixing 0\n\n");
        let _ = writeln!(
            out,
            "actions {:>4}  classes {:>3}  associative {:>2}   published {} / {} / {}   {}",
            c.input_count,
            c.class_count,
            c.associative_count(),
            reference::ORDER27_ACTIONS,
            reference::ORDER27_CLASSES,
            reference::ORDER27_GROUPS,
            mark(self.counts_agree())
        );
        out.push_str("\nassociator: smallest normal subloop with associative quotient\n");
        let (loops, all) = (self.loop_stats(), self.all_stats());
        let _ = writeln!(
            out,
            "\n{:<20} {:>9} {:>10} {:>9}  match",
            "statistic", "published", "non-assoc", "all"
        );
        for (((name, p), l), a) in reference::ORDER27_STATS
            .iter()
            .zip(loops.values())
            .zip(all.values())
        {
            let _ = writeln!(out, "{name:<20} {p:>9} {l:>10} {a:>9}  {}", mark(*p == l));
        }
        let diffs = loops.diffs();
        if !diffs.is_empty() {
            out.push('\n');
        }
        for (name, computed, published) in diffs {
            let _ = writeln!(
                out,
                "DISCREPANCY {name}: computed {computed} of {} non-associative classes, published {published}",
                loops.classes
            );
            for (cls, r) in c.classes.iter().zip(&self.reports) {
                if !r.associative && !stat_holds(name, r) {
                    let _ = writeln!(
                        out,
                        "  class rep {:>4} generator {:<24} A = {:?} ({}), N = {:?}",
                        cls.representative,
                        cls.generator.as_deref().unwrap_or("()"),
                        r.associator.members(),
                        r.label(SubsetKind::Associator),
                        r.nucleus.members()
                    );
                }
            }
        }
        out
    }
}

/// Whether the universally quantified statistic `name` holds for `r`.
fn stat_holds(name: &str, r: &StructureReport) -> bool {
    match name {
        "N_lambda ~ Z_9" => r.label(SubsetKind::LeftNucleus) == "Z_9",
        "N = Z" => r.nucleus == r.center,
        "A ~ Z_9" => r.label(SubsetKind::Associator) == "Z_9",
        _ => true,
    }
}
