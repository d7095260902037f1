"""Single-point curvature algebra from metric jets, numpy implementation.

Input is the 2-jet of the metric at one point: g (4,4), dg (4,4,4) with
dg[a] = d_a g, ddg (4,4,4,4) with ddg[a,b] = d_a d_b g.  Output is everything
downstream code needs: the inverse metric, Christoffel symbols and their
first derivatives, the (0,4) Riemann tensor, the Ricci tensor and scalar.

Index conventions (fixed across the package and its compiled twin):
  Gamma^a_{bc} = (1/2) g^{ad} (d_b g_{dc} + d_c g_{db} - d_d g_{bc})
  R^a_{bcd}    = d_c Gamma^a_{db} - d_d Gamma^a_{cb}
                 + Gamma^a_{ce} Gamma^e_{db} - Gamma^a_{de} Gamma^e_{cb}
  ric_{bd}     = R^a_{bad}      (round spheres come out positive)
"""
import numpy as np


def curvature_from_jets(g, dg, ddg):
    """Returns (ginv, gam, dgam, riemann_lower, ric, scal).

    gam[a, b, c] = Gamma^a_{bc}; dgam[e, a, b, c] = d_e Gamma^a_{bc};
    riemann_lower[a, b, c, d] = g_{ae} R^e_{bcd}.
    """
    ginv = np.linalg.inv(g)
    # T[d, b, c] = d_b g_{dc} + d_c g_{db} - d_d g_{bc}
    T = dg.transpose(1, 0, 2) + dg.transpose(1, 2, 0) - dg
    gam = 0.5 * np.einsum("ad,dbc->abc", ginv, T)
    dginv = -np.einsum("af,efk,kd->ead", ginv, dg, ginv)
    # dT[e, d, b, c] = d_e T[d, b, c]
    dT = ddg.transpose(0, 2, 1, 3) + ddg.transpose(0, 2, 3, 1) - ddg
    dgam = 0.5 * np.einsum("ead,dbc->eabc", dginv, T) + 0.5 * np.einsum(
        "ad,edbc->eabc", ginv, dT
    )
    rup = (
        np.einsum("cadb->abcd", dgam)
        - np.einsum("dacb->abcd", dgam)
        + np.einsum("ace,edb->abcd", gam, gam)
        - np.einsum("ade,ecb->abcd", gam, gam)
    )
    riemann = np.einsum("ae,ebcd->abcd", g, rup)
    ric = np.einsum("abad->bd", rup)
    scal = float(np.einsum("bd,bd->", ginv, ric))
    return ginv, gam, dgam, riemann, ric, scal
