use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use super::arrangement::TropicalComplex;
use super::point::{cell_membership, Cell, Membership};
use crate::schoen::{Factor, GeneratorSet};

/// The set cut out by one choice of a linear factor per generator: the closed
/// simplex face on `allowed` (chosen variables are infinite), intersected
/// with the hypersurfaces of the chosen sums.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SelectionPiece {
    pub allowed: BTreeSet<usize>,
    pub sums: BTreeSet<Vec<usize>>,
    /// One factor per generator, in generator order.
    pub choice: Vec<Factor>,
}

impl SelectionPiece {
    /// Cells of the stratification lying entirely in the piece. `Err` holds a
    /// cell only partly inside, which this description cannot represent.
    pub fn cells(&self) -> Result<Vec<Cell>, Cell> {
        let vars = self.allowed.iter().copied().collect::<Vec<_>>();
        let mut out = Vec::new();
        for s in 1u64..(1 << vars.len()) {
            let support = bits(&vars, s);
            for m in sub_masks(s) {
                let cell = Cell::new(support.clone(), bits(&vars, m));
                let mut inside = true;
                for t in &self.sums {
                    match cell_membership(&cell, &Factor::Sum(t.clone())) {
                        Membership::All => {}
                        Membership::None => inside = false,
                        Membership::Partial => return Err(cell),
                    }
                }
                if inside {
                    out.push(cell);
                }
            }
        }
        Ok(out)
    }

    /// Largest cell dimension, `None` for an empty piece.
    pub fn dim(&self) -> Result<Option<usize>, Cell> {
        Ok(self.cells()?.iter().map(Cell::dim).max())
    }

    pub fn describe(&self) -> String {
        let faces = self
            .allowed
            .iter()
            .map(|i| format!("F{}", i + 1))
            .collect::<Vec<_>>()
            .join(",");
        let choice = self.choice.iter().map(Factor::render).collect::<Vec<_>>().join(", ");
        format!(
            "face {{{faces}}} from ({choice}){}",
            if self.sums.is_empty() { "" } else { " cut by a sum" }
        )
    }
}

fn bits(vars: &[usize], mask: u64) -> Vec<usize> {
    vars.iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, &v)| v)
        .collect()
}

/// Nonempty submasks of `mask`.
fn sub_masks(mask: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut m = mask;
    while m != 0 {
        out.push(m);
        m = (m - 1) & mask;
    }
    out
}

/// All distinct nonempty selection pieces, in a deterministic order.
pub fn enumerate_selection_pieces(gens: &GeneratorSet) -> Vec<SelectionPiece> {
    let all = (0..gens.nvars).collect::<BTreeSet<_>>();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut choice = Vec::new();
    walk(
        gens,
        0,
        &BTreeSet::new(),
        &BTreeSet::new(),
        &mut choice,
        &mut seen,
        &mut out,
        &all,
    );
    out.sort_by(|a, b| (&a.allowed, &a.sums).cmp(&(&b.allowed, &b.sums)));
    out
}

#[allow(clippy::too_many_arguments)]
fn walk(
    gens: &GeneratorSet,
    i: usize,
    forced: &BTreeSet<usize>,
    sums: &BTreeSet<Vec<usize>>,
    choice: &mut Vec<Factor>,
    seen: &mut HashSet<(usize, BTreeSet<usize>, BTreeSet<Vec<usize>>)>,
    out: &mut Vec<SelectionPiece>,
    all: &BTreeSet<usize>,
) {
    if !seen.insert((i, forced.clone(), sums.clone())) {
        return;
    }
    if forced.len() == all.len() {
        return;
    }
    if i == gens.generators.len() {
        let allowed = all.difference(forced).copied().collect();
        let piece = SelectionPiece {
            allowed,
            sums: sums.clone(),
            choice: choice.clone(),
        };
        if piece.dim() != Ok(None) {
            out.push(piece);
        }
        return;
    }
    let mut factors = gens.generators[i].factors.clone();
    factors.sort();
    factors.dedup();
    for f in factors {
        let (mut forced, mut sums) = (forced.clone(), sums.clone());
        match &f {
            Factor::Var(j) => {
                forced.insert(*j);
            }
            Factor::Sum(t) => {
                sums.insert(t.clone());
            }
        }
        choice.push(f);
        walk(gens, i + 1, &forced, &sums, choice, seen, out, all);
        choice.pop();
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BasisViolation {
    /// A cell of the complex lies outside some generator's hypersurface.
    CellOutside { cell: Cell, generator: usize },
    /// A selection piece has dimension above one.
    PieceTooLarge { piece: SelectionPiece, dim: usize },
    /// A cell of a selection piece is not part of the complex.
    PieceUncovered { piece: SelectionPiece, cell: Cell },
    /// A selection piece cuts a cell partway; not decidable by cell bookkeeping.
    Unsupported { piece: SelectionPiece, cell: Cell },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisCertificate {
    pub cells_checked: usize,
    pub pieces: Vec<SelectionPiece>,
}

/// Checks that the generators' tropical hypersurfaces intersect in exactly
/// the complex: every cell of the complex lies in each hypersurface (some
/// factor contains it entirely), and every selection piece is at most
/// one-dimensional and made of cells of the complex.
pub fn tropical_basis_check(
    gens: &GeneratorSet,
    complex: &TropicalComplex,
) -> Result<BasisCertificate, BasisViolation> {
    let cells = complex.cells();
    for cell in &cells {
        for (k, g) in gens.generators.iter().enumerate() {
            if !g.factors.iter().any(|f| cell_membership(cell, f) == Membership::All) {
                return Err(BasisViolation::CellOutside {
                    cell: cell.clone(),
                    generator: k,
                });
            }
        }
    }
    let pieces = enumerate_selection_pieces(gens);
    for piece in &pieces {
        let piece_cells = piece.cells().map_err(|cell| BasisViolation::Unsupported {
            piece: piece.clone(),
            cell,
        })?;
        let dim = piece_cells.iter().map(Cell::dim).max().unwrap_or(0);
        if dim > 1 {
            return Err(BasisViolation::PieceTooLarge {
                piece: piece.clone(),
                dim,
            });
        }
        if let Some(cell) = piece_cells.into_iter().find(|c| !cells.contains(c)) {
            return Err(BasisViolation::PieceUncovered {
                piece: piece.clone(),
                cell,
            });
        }
    }
    Ok(BasisCertificate {
        cells_checked: cells.len(),
        pieces,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named, planar_embed, PlanarEmbedding};
    use crate::schoen::{build_schoen, dual_complex, stanley_reisner_generators, Generator};
    use crate::tropical::{build_arrangement, tropicalize_line};

    fn setup(e: &PlanarEmbedding) -> (GeneratorSet, TropicalComplex) {
        let n = e.genus();
        let gens = stanley_reisner_generators(&dual_complex(e).unwrap());
        let lines = build_schoen(e)
            .unwrap()
            .iter()
            .map(|l| tropicalize_line(l, n))
            .collect::<Vec<_>>();
        (gens, build_arrangement(&lines, n).unwrap())
    }

    fn cube() -> PlanarEmbedding {
        planar_embed(&named::cube(), Some(&[4, 5, 6, 7])).unwrap().mirrored()
    }

    #[test]
    fn cube_passes() {
        let (gens, c) = setup(&cube());
        let cert = tropical_basis_check(&gens, &c).unwrap();
        assert_eq!(cert.pieces.len(), 8);
    }

    #[test]
    fn k4_passes() {
        let (gens, c) = setup(&planar_embed(&named::k4(), None).unwrap());
        assert!(tropical_basis_check(&gens, &c).is_ok());
    }

    #[test]
    fn cube_selection_examples() {
        let (gens, _) = setup(&cube());
        let pieces = enumerate_selection_pieces(&gens);
        let find = |allowed: &[usize], with_sum: bool| {
            pieces
                .iter()
                .find(|p| p.allowed == allowed.iter().copied().collect() && p.sums.is_empty() != with_sum)
        };
        // (x_F2, x_F3, x_F1) leaves the edge {F4, F5}
        assert_eq!(find(&[3, 4], false).unwrap().dim(), Ok(Some(1)));
        assert_eq!(find(&[1, 2], false).unwrap().dim(), Ok(Some(1)));
        // (x_F2, x_F5, sum) leaves a tripod in the face {F1, F3, F4}
        assert_eq!(find(&[0, 2, 3], true).unwrap().dim(), Ok(Some(1)));
    }

    #[test]
    fn dropping_a_generator_fails() {
        let (mut gens, c) = setup(&cube());
        gens.generators.remove(0);
        match tropical_basis_check(&gens, &c) {
            Err(BasisViolation::PieceTooLarge { dim, .. }) => assert_eq!(dim, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn altering_a_generator_fails() {
        let (mut gens, c) = setup(&cube());
        gens.generators[0] = Generator::from_factors(5, vec![], vec![Factor::Var(1), Factor::Var(4)]);
        assert!(tropical_basis_check(&gens, &c).is_err());
    }
}
