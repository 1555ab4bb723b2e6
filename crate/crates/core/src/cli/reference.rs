//! Published values the reproduction reports are compared against.

/// A published table cell: an isomorphism label, or only a size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cell {
    Label(&'static str),
    Size(usize),
}

impl Cell {
    pub fn text(self) -> String {
        match self {
            Cell::Label(s) => s.to_string(),
            Cell::Size(k) => format!("size {k}"),
        }
    }
}

pub struct Case {
    pub name: &'static str,
    /// Generator images `φ(1)` as printed, on the points `1..4` of `Z_5`.
    pub generators: &'static [&'static str],
    pub group: bool,
}

/// The seven order-20 isomorphism classes of `Z_5 ⋊ Z_4`.
pub const ORDER20_CASES: [Case; 7] = [
    Case {
        name: "I",
        generators: &["()"],
        group: true,
    },
    Case {
        name: "II",
        generators: &["(1243)", "(1342)"],
        group: true,
    },
    Case {
        name: "III",
        generators: &["(14)(23)"],
        group: true,
    },
    Case {
        name: "IV",
        generators: &["(1234)", "(1324)", "(1432)", "(1423)"],
        group: false,
    },
    Case {
        name: "V",
        generators: &["(12)", "(13)", "(24)", "(34)"],
        group: false,
    },
    Case {
        name: "VI",
        generators: &["(14)", "(23)"],
        group: false,
    },
    Case {
        name: "VII",
        generators: &["(12)(34)", "(13)(42)"],
        group: false,
    },
];

pub const ORDER20_ACTIONS: usize = 16;
pub const ORDER20_CLASSES: usize = 7;
pub const ORDER20_GROUPS: usize = 3;

/// Columns in published order: `N_λ, N_ρ, N_μ, N, C, Z`.
pub const TABLE1: [(&str, [Cell; 6]); 4] = [
    (
        "IV",
        [
            Cell::Label("Z_5"),
            Cell::Label("Z_4"),
            Cell::Label("Z_4"),
            Cell::Label("trivial"),
            Cell::Label("trivial"),
            Cell::Label("trivial"),
        ],
    ),
    (
        "V",
        [
            Cell::Label("Z_10"),
            Cell::Label("Z_4"),
            Cell::Label("Z_4"),
            Cell::Label("Z_2"),
            Cell::Size(6),
            Cell::Label("Z_2"),
        ],
    ),
    (
        "VI",
        [
            Cell::Label("Z_10"),
            Cell::Label("Z_10"),
            Cell::Label("Z_4"),
            Cell::Label("Z_2"),
            Cell::Size(6),
            Cell::Label("Z_2"),
        ],
    ),
    (
        "VII",
        [
            Cell::Label("Z_10"),
            Cell::Label("Z_4"),
            Cell::Label("Z_4"),
            Cell::Label("Z_2"),
            Cell::Label("Z_2"),
            Cell::Label("Z_2"),
        ],
    ),
];

pub const ORDER27_ACTIONS: usize = 1233;
pub const ORDER27_CLASSES: usize = 111;
pub const ORDER27_GROUPS: usize = 2;

/// Published counts over the non-associative order-27 classes, in the
/// field order of `Order27Stats`.
pub const ORDER27_STATS: [(&str, usize); 10] = [
    ("classes", 109),
    ("N_lambda ~ Z_9", 109),
    ("N_rho ~ Z_3 x Z_3", 2),
    ("N_rho ~ Z_3", 107),
    ("N = Z", 109),
    ("N ~ Z_3", 2),
    ("N trivial", 107),
    ("A ~ Z_9", 109),
    ("|C| = 6", 10),
    ("|C| = 3", 99),
];
