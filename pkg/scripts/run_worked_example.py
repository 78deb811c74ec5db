"""Walk the qutrit worked example end to end and print every intermediate.

Usage: python scripts/run_worked_example.py
"""

import numpy as np

from wqent.channel import basis_projector, channel_then_check
from wqent.entropy import qutrit_mutual_information_closed_form
from wqent.inequality import check_subadditivity, qutrit_condition_gap, qutrit_weight_condition
from wqent.states import QutritDiagonal, WeightMatrix, embed_qutrit

P1, P2, P3 = 0.1, 0.1, 0.8
PHI = (0.75, 0.25)
CHI = (1 / 3, 2 / 3)


def main():
    state = embed_qutrit(QutritDiagonal(P1, P2, P3))
    wa = WeightMatrix(np.diag(PHI).astype(complex))
    wb = WeightMatrix(np.diag(CHI).astype(complex))

    diag = ", ".join(f"{x:g}" for x in np.diag(state.rho.matrix).real)
    print(f"state: diag({diag}) split 2x2")
    cond = qutrit_weight_condition(*PHI, *CHI)
    print(f"weight sign condition (phi1-phi2)(chi2-chi1) = {cond.value:.12g} "
          f"-> {'holds' if cond.holds else 'fails'}")

    rep = check_subadditivity(wa, wb, state)
    print(f"S_AB = {rep.s_ab:.12g}")
    print(f"S_A  = {rep.s_a:.12g}")
    print(f"S_B  = {rep.s_b:.12g}")
    print(f"gap  = S_A + S_B - S_AB = {rep.gap:.12g}")
    print(f"trace condition: lhs = {rep.condition_lhs:.12g}, rhs = {rep.condition_rhs:.12g}, "
          f"gap = {rep.condition_gap:.12g}")
    closed = qutrit_mutual_information_closed_form(P1, P2, *PHI, *CHI)
    print(f"closed form I = {closed:.12g} (matrix-path delta {abs(closed - rep.gap):.3e})")
    ident = qutrit_condition_gap(P1, P2, *PHI, *CHI)
    print(f"condition-gap identity p2 p3 (phi1-phi2)(chi2-chi1) = {ident:.12g}")

    proj = basis_projector(4, (0, 2))
    rho_out, rep_out = channel_then_check(proj, wa, wb, state)
    print(f"\nprojective channel through {proj!r}:")
    out_diag = ", ".join(f"{x:.12g}" for x in np.diag(rho_out.matrix).real)
    print(f"output state: diag({out_diag})")
    print(f"transformed gap = {rep_out.gap:.12g}, condition gap = {rep_out.condition_gap:.12g}")


if __name__ == "__main__":
    main()
