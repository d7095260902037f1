# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Single-point curvature algebra from metric jets, compiled implementation.

Mirrors _curvnumpy.curvature_from_jets exactly (same conventions, same return
tuple); explicit C loops beat numpy dispatch overhead on these tiny tensors.
"""
import numpy as np

cimport cython


def curvature_from_jets(object g_in, object dg_in, object ddg_in):
    g_arr = np.ascontiguousarray(g_in, dtype=np.float64)
    dg_arr = np.ascontiguousarray(dg_in, dtype=np.float64)
    ddg_arr = np.ascontiguousarray(ddg_in, dtype=np.float64)
    ginv_arr = np.ascontiguousarray(np.linalg.inv(g_arr))

    cdef double[:, :] g = g_arr
    cdef double[:, :] ginv = ginv_arr
    cdef double[:, :, :] dg = dg_arr
    cdef double[:, :, :, :] ddg = ddg_arr

    T_arr = np.empty((4, 4, 4))
    gam_arr = np.empty((4, 4, 4))
    dginv_arr = np.empty((4, 4, 4))
    dT_arr = np.empty((4, 4, 4, 4))
    dgam_arr = np.empty((4, 4, 4, 4))
    rup_arr = np.empty((4, 4, 4, 4))
    riemann_arr = np.empty((4, 4, 4, 4))
    ric_arr = np.empty((4, 4))

    cdef double[:, :, :] T = T_arr
    cdef double[:, :, :] gam = gam_arr
    cdef double[:, :, :] dginv = dginv_arr
    cdef double[:, :, :, :] dT = dT_arr
    cdef double[:, :, :, :] dgam = dgam_arr
    cdef double[:, :, :, :] rup = rup_arr
    cdef double[:, :, :, :] riemann = riemann_arr
    cdef double[:, :] ric = ric_arr

    cdef int a, b, c, d, e, f, k
    cdef double acc, scal

    for d in range(4):
        for b in range(4):
            for c in range(4):
                T[d, b, c] = dg[b, d, c] + dg[c, d, b] - dg[d, b, c]

    for a in range(4):
        for b in range(4):
            for c in range(4):
                acc = 0.0
                for d in range(4):
                    acc += ginv[a, d] * T[d, b, c]
                gam[a, b, c] = 0.5 * acc

    # dginv[e, a, d] = d_e (g^{-1})^{ad} = -g^{af} (d_e g_{fk}) g^{kd}
    for e in range(4):
        for a in range(4):
            for d in range(4):
                acc = 0.0
                for f in range(4):
                    for k in range(4):
                        acc += ginv[a, f] * dg[e, f, k] * ginv[k, d]
                dginv[e, a, d] = -acc

    for e in range(4):
        for d in range(4):
            for b in range(4):
                for c in range(4):
                    dT[e, d, b, c] = ddg[e, b, d, c] + ddg[e, c, d, b] - ddg[e, d, b, c]

    for e in range(4):
        for a in range(4):
            for b in range(4):
                for c in range(4):
                    acc = 0.0
                    for d in range(4):
                        acc += dginv[e, a, d] * T[d, b, c] + ginv[a, d] * dT[e, d, b, c]
                    dgam[e, a, b, c] = 0.5 * acc

    for a in range(4):
        for b in range(4):
            for c in range(4):
                for d in range(4):
                    acc = dgam[c, a, d, b] - dgam[d, a, c, b]
                    for e in range(4):
                        acc += gam[a, c, e] * gam[e, d, b] - gam[a, d, e] * gam[e, c, b]
                    rup[a, b, c, d] = acc

    for a in range(4):
        for b in range(4):
            for c in range(4):
                for d in range(4):
                    acc = 0.0
                    for e in range(4):
                        acc += g[a, e] * rup[e, b, c, d]
                    riemann[a, b, c, d] = acc

    for b in range(4):
        for d in range(4):
            acc = 0.0
            for a in range(4):
                acc += rup[a, b, a, d]
            ric[b, d] = acc

    scal = 0.0
    for b in range(4):
        for d in range(4):
            scal += ginv[b, d] * ric[b, d]

    return ginv_arr, gam_arr, dgam_arr, riemann_arr, ric_arr, scal
