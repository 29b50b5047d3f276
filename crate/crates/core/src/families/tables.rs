//! The two printed tables, stored verbatim as squared radii.

use std::fmt;
use std::str::FromStr;

use num_traits::One;

use super::{
    hypersurface_is_minimal, int, solve, weighted_reciprocal_sum, Branch, Family, FamilyParams,
    FamilySolve, RadiiSolution, RadiusValue, SolveError, SquaredRadius,
};
use crate::surd::{quad_solve, rat, QuadSurd, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableId {
    HypersurfaceN5,
    LagrangianN4,
}

impl TableId {
    pub fn slug(self) -> &'static str {
        match self {
            TableId::HypersurfaceN5 => "hypersurface-n5",
            TableId::LagrangianN4 => "lagrangian-n4",
        }
    }

    pub fn family(self) -> Family {
        match self {
            TableId::HypersurfaceN5 => Family::CpnHypersurface,
            TableId::LagrangianN4 => Family::CpnLagrangianTorus,
        }
    }

    pub fn n(self) -> u32 {
        match self {
            TableId::HypersurfaceN5 => 5,
            TableId::LagrangianN4 => 4,
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

impl FromStr for TableId {
    type Err = SolveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "hypersurface-n5" => Ok(TableId::HypersurfaceN5),
            "lagrangian-n4" => Ok(TableId::LagrangianN4),
            other => Err(SolveError::UnknownTable(other.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TableRow {
    pub params: FamilyParams,
    /// Radii exactly as typeset.
    pub printed_r: &'static str,
    pub printed_s: &'static str,
    pub r_squared: QuadSurd,
    pub s_squared: QuadSurd,
    /// Branch of the family solver that reproduces this row, if any.
    pub solver_branch: Option<Branch>,
    /// Branch of the variant hypersurface equation reproducing the row.
    pub variant_branch: Option<Branch>,
}

impl TableRow {
    pub fn solver_match(&self) -> bool {
        self.solver_branch.is_some()
    }

    pub fn variant_match(&self) -> bool {
        self.variant_branch.is_some()
    }

    /// The row as a [`RadiiSolution`] so it can be fed to the oracles.
    pub fn as_solution(&self) -> Result<RadiiSolution, SolveError> {
        let (mr, ms) = match self.params.family {
            Family::CpnHypersurface => (1, 1),
            _ => (self.params.p, self.params.q),
        };
        let squared_radii = vec![
            SquaredRadius {
                label: "r",
                value: RadiusValue::Exact(self.r_squared.clone()),
                multiplicity: mr,
            },
            SquaredRadius {
                label: "s",
                value: RadiusValue::Exact(self.s_squared.clone()),
                multiplicity: ms,
            },
        ];
        Ok(RadiiSolution {
            params: self.params,
            branch: self.solver_branch.or(self.variant_branch).unwrap_or(Branch::Given),
            d: weighted_reciprocal_sum(&squared_radii)?,
            squared_radii,
            t: None,
            proper: true,
            exact: true,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PaperTable {
    pub id: TableId,
    pub rows: Vec<TableRow>,
    /// Family solver output for every `(p, q)` that appears in the table.
    pub solver_output: Vec<FamilySolve>,
    /// Variant-equation output, hypersurface table only.
    pub variant_output: Vec<FamilySolve>,
}

impl PaperTable {
    pub fn solver_matches(&self) -> usize {
        self.rows.iter().filter(|r| r.solver_match()).count()
    }
}

fn s(a: (i64, i64), b: (i64, i64), d: u64) -> QuadSurd {
    QuadSurd::new(rat(a.0, a.1), rat(b.0, b.1), d)
}

struct Stored {
    p: u32,
    q: u32,
    printed_r: &'static str,
    printed_s: &'static str,
    r2: QuadSurd,
    s2: QuadSurd,
}

fn stored_rows(id: TableId) -> Vec<Stored> {
    match id {
        TableId::HypersurfaceN5 => vec![
            Stored {
                p: 0,
                q: 4,
                printed_r: r"\sqrt{(3*(5 - \sqrt3))/22}",
                printed_s: r"\sqrt{(7 +(3*\sqrt3))/22}",
                r2: s((15, 22), (-3, 22), 3),
                s2: s((7, 22), (3, 22), 3),
            },
            Stored {
                p: 0,
                q: 4,
                printed_r: r"\sqrt{(3*(5 + \sqrt3))/22}",
                printed_s: r"\sqrt{(7 -(3*\sqrt3))/22}",
                r2: s((15, 22), (3, 22), 3),
                s2: s((7, 22), (-3, 22), 3),
            },
            Stored {
                p: 1,
                q: 3,
                printed_r: r"\sqrt{(13 - \sqrt{15})/22}",
                printed_s: r"\sqrt{(9 + \sqrt{15})/22}",
                r2: s((13, 22), (-1, 22), 15),
                s2: s((9, 22), (1, 22), 15),
            },
            Stored {
                p: 1,
                q: 3,
                printed_r: r"\sqrt{(13 + \sqrt{15})/22}",
                printed_s: r"\sqrt{(9 - \sqrt{15})/22}",
                r2: s((13, 22), (1, 22), 15),
                s2: s((9, 22), (-1, 22), 15),
            },
            Stored {
                p: 2,
                q: 2,
                printed_r: r"\sqrt{(11 + \sqrt{11})/22}",
                printed_s: r"\sqrt{(11 - \sqrt{11})/22}",
                r2: s((11, 22), (1, 22), 11),
                s2: s((11, 22), (-1, 22), 11),
            },
        ],
        TableId::LagrangianN4 => vec![
            Stored {
                p: 1,
                q: 4,
                printed_r: r"\sqrt{(11 - \sqrt{65})/7}/2",
                printed_s: r"\sqrt{(17 + \sqrt{65})/7}/4",
                r2: s((11, 28), (-1, 28), 65),
                s2: s((17, 112), (1, 112), 65),
            },
            Stored {
                p: 1,
                q: 4,
                printed_r: r"\sqrt{(11 + \sqrt{65})/7}/2",
                printed_s: r"\sqrt{(17 - \sqrt{65})/7}/4",
                r2: s((11, 28), (1, 28), 65),
                s2: s((17, 112), (-1, 112), 65),
            },
            Stored {
                p: 2,
                q: 3,
                printed_r: r"\sqrt{(13 - \sqrt{57})/14}/2",
                printed_s: r"\sqrt{(15 + \sqrt{57})/21}/2",
                r2: s((13, 56), (-1, 56), 57),
                s2: s((15, 84), (1, 84), 57),
            },
            Stored {
                p: 2,
                q: 3,
                printed_r: r"\sqrt{((13+\sqrt{57})/14)}/2",
                printed_s: r"\sqrt{(15 - \sqrt{57})/21}/2",
                r2: s((13, 56), (1, 56), 57),
                s2: s((15, 84), (-1, 84), 57),
            },
        ],
    }
}

/// Solves `(2p+1)x + (2q+1)/x = 2(n+1)` with `x = (r/s)²`, the equation the
/// printed hypersurface table actually satisfies.
pub fn solve_variant_hypersurface(params: &FamilyParams) -> Result<FamilySolve, SolveError> {
    if params.family != Family::CpnHypersurface {
        return Err(SolveError::Inadmissible("hypersurface family only".into()));
    }
    let (n, p, q) = (params.n as i64, params.p as i64, params.q as i64);
    let roots = quad_solve(&int(2 * p + 1), &int(-2 * (n + 1)), &int(2 * q + 1))?;
    let discriminant = roots.discriminant.clone().unwrap_or_else(|| rat(0, 1));
    let mut solutions = Vec::new();
    let positive: Vec<_> = roots.roots.iter().filter(|x| x.is_positive()).collect();
    let branches = if positive.len() == 1 {
        vec![Branch::Minus]
    } else {
        vec![Branch::Minus, Branch::Plus]
    };
    for (x, branch) in positive.into_iter().zip(branches) {
        let one_plus = x.add_rational(&Rational::one());
        let squared_radii = vec![
            SquaredRadius {
                label: "r",
                value: RadiusValue::Exact(x.checked_div(&one_plus)?),
                multiplicity: 1,
            },
            SquaredRadius {
                label: "s",
                value: RadiusValue::Exact(one_plus.recip()?),
                multiplicity: 1,
            },
        ];
        let proper = !hypersurface_is_minimal(params, &squared_radii)?;
        solutions.push(RadiiSolution {
            params: *params,
            branch,
            d: weighted_reciprocal_sum(&squared_radii)?,
            squared_radii,
            t: None,
            proper,
            exact: true,
        });
    }
    Ok(FamilySolve {
        params: *params,
        discriminant,
        solutions,
        diagnostic: None,
    })
}

fn matching_branch(out: &FamilySolve, r2: &QuadSurd, s2: &QuadSurd) -> Option<Branch> {
    out.solutions.iter().find_map(|sol| {
        let r = sol.entry("r")?.value.exact()?;
        let s = sol.entry("s")?.value.exact()?;
        (r == r2 && s == s2).then_some(sol.branch)
    })
}

/// Rebuilds a printed table and checks every row against the solvers.
pub fn reconstruct_paper_table(id: TableId) -> Result<PaperTable, SolveError> {
    let stored = stored_rows(id);
    let mut keys: Vec<(u32, u32)> = stored.iter().map(|r| (r.p, r.q)).collect();
    keys.dedup();
    let mut solver_output = Vec::new();
    let mut variant_output = Vec::new();
    for &(p, q) in &keys {
        let params = FamilyParams::new(id.family(), id.n(), p, q)?;
        solver_output.push(solve(&params)?);
        if id == TableId::HypersurfaceN5 {
            variant_output.push(solve_variant_hypersurface(&params)?);
        }
    }
    let rows = stored
        .into_iter()
        .map(|row| {
            let params = FamilyParams::new(id.family(), id.n(), row.p, row.q)?;
            let idx = keys.iter().position(|&k| k == (row.p, row.q)).expect("key present");
            let solver_branch = matching_branch(&solver_output[idx], &row.r2, &row.s2);
            let variant_branch = variant_output
                .get(idx)
                .and_then(|out| matching_branch(out, &row.r2, &row.s2));
            Ok(TableRow {
                params,
                printed_r: row.printed_r,
                printed_s: row.printed_s,
                r_squared: row.r2,
                s_squared: row.s2,
                solver_branch,
                variant_branch,
            })
        })
        .collect::<Result<Vec<_>, SolveError>>()?;
    Ok(PaperTable {
        id,
        rows,
        solver_output,
        variant_output,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::clifford_norm_b_sq_exact;

    #[test]
    fn lagrangian_table_matches_solver() {
        let table = reconstruct_paper_table(TableId::LagrangianN4).unwrap();
        assert_eq!(table.rows.len(), 4);
        assert_eq!(table.solver_matches(), 4);
        for row in &table.rows {
            let total = row
                .r_squared
                .scale(&rat(row.params.p as i64, 1))
                .checked_add(&row.s_squared.scale(&rat(row.params.q as i64, 1)))
                .unwrap();
            assert_eq!(total, QuadSurd::one());
        }
        let discs: Vec<_> = table.solver_output.iter().map(|o| o.discriminant.clone()).collect();
        assert_eq!(discs, vec![rat(585, 1), rat(57, 1)]);
    }

    #[test]
    fn hypersurface_table_matches_variant_only() {
        let table = reconstruct_paper_table(TableId::HypersurfaceN5).unwrap();
        assert_eq!(table.rows.len(), 5);
        for row in &table.rows {
            assert!(!row.solver_match(), "{:?}", row.params);
            assert!(row.variant_match(), "{:?}", row.params);
            assert_eq!(row.r_squared.checked_add(&row.s_squared).unwrap(), QuadSurd::one());
            // With (s/r)² weighted by 2p+1 the printed rows give 2(n+1) = 12.
            let b = clifford_norm_b_sq_exact(row.params.p, row.params.q, &row.s_squared, &row.r_squared).unwrap();
            assert_eq!(b, int(12));
        }
        let row = &table.rows[0];
        let b = clifford_norm_b_sq_exact(0, 4, &row.r_squared, &row.s_squared).unwrap();
        assert!((b.to_f64() - 8.479).abs() < 1e-3, "{}", b.to_f64());
    }

    #[test]
    fn unknown_table() {
        assert!(matches!("bogus".parse::<TableId>(), Err(SolveError::UnknownTable(_))));
    }
}
