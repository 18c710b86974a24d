use crate::entropy::FunctionFamily;
use crate::error::{Error, Result};
use crate::psi::{PGrid, PsiFunction};

use super::lp_norm;

/// Natural generating function `ψ₀(p) = max_t |Y(t)|_p`, tabulated on the
/// grid. Every member then has `||Y(t)||_{G(ψ₀)} ≤ 1`, with equality for the
/// member attaining the maximum at some node.
pub fn natural_psi(family: &FunctionFamily, grid: &PGrid) -> Result<PsiFunction> {
    let mut table = Vec::with_capacity(grid.len());
    for &p in grid.points() {
        let mut best = 0.0_f64;
        for y in family.members() {
            best = best.max(lp_norm(y, p)?);
        }
        if !(best > 0.0) || !best.is_finite() {
            return Err(Error::domain(format!(
                "natural psi is {best} at p = {p}; the family vanishes or diverges there"
            )));
        }
        table.push((p, best));
    }
    PsiFunction::table_labeled("natural", &table)
}
