"""Brute-force reference evaluator using plain loops over the triangle chain.

Pure Python with 1-based cyclic indices, no numpy and no shared code with the
package. Slow; meant for small N and T.
"""
import math


def _nxt(v, N):
    return 1 if v == N else v + 1


def _prv(v, N):
    return N if v == 1 else v - 1


def evaluate(path, coeff=(1, 2, 4, 4, 2, 16, 4)):
    """Return a dict with every intermediate quantity of the model.

    ``path`` is a nested list [slice][vertex][xy] with T+1 slices.
    """
    A0, A1, A2, A3, B0, B1, C0 = [float(x) for x in coeff]
    T = len(path) - 1
    N = len(path[0])
    S = range(1, T + 2)
    V = range(1, N + 1)
    c = {(t, v, i): float(path[t - 1][v - 1][i - 1]) for t in S for v in V for i in (1, 2)}

    c_x = {(t, v, i): c[t, _nxt(v, N), i] - c[t, v, i] for t in S for v in V for i in (1, 2)}
    vol_edge = {(t, v): math.sqrt(c_x[t, v, 1] ** 2 + c_x[t, v, 2] ** 2) for t in S for v in V}
    vol_vert = {(t, v): (vol_edge[t, _prv(v, N)] + vol_edge[t, v]) / 2 for t in S for v in V}
    vol_tri = {}
    for t in S:
        for v in V:
            for w in (_prv(v, N), v):
                vol_tri[t, v, w] = vol_vert[t, v] + vol_edge[t, w]
    tangent = {(t, v, i): c_x[t, v, i] / vol_edge[t, v] for t in S for v in V for i in (1, 2)}
    n = {}
    for t in S:
        for v in V:
            n[t, v, 1] = tangent[t, v, 2]
            n[t, v, 2] = -tangent[t, v, 1]
    length = {t: sum(vol_edge[t, v] for v in V) for t in S}
    angle = {}
    for t in S:
        for v in V:
            d = (tangent[t, _prv(v, N), 1] * tangent[t, v, 1]
                 + tangent[t, _prv(v, N), 2] * tangent[t, v, 2])
            angle[t, v] = math.acos(max(-1.0, min(1.0, d)))
    kappa = {(t, v): angle[t, v] / vol_vert[t, v] for t in S for v in V}
    kappa_s = {(t, v): (kappa[t, _nxt(v, N)] - kappa[t, v]) / vol_edge[t, v] for t in S for v in V}

    c_t = {(t, v, i): T * (c[t + 1, v, i] - c[t, v, i])
           for t in range(1, T + 1) for v in V for i in (1, 2)}

    a, a_s, a_ss = {}, {}, {}
    for t in range(1, T + 1):
        for s in (t, t + 1):
            for v in V:
                for w in (_prv(v, N), v):
                    a[t, s, v, w] = sum(c_t[t, v, i] * n[s, w, i] for i in (1, 2))
    for t in range(1, T + 1):
        for s in (t, t + 1):
            for v in V:
                for w in (_prv(v, N), v):
                    if w == v:
                        num = (sum(c_t[t, v, i] * (n[s, w, i] - n[s, _prv(w, N), i]) for i in (1, 2))
                               + sum((c_t[t, _nxt(v, N), i] - c_t[t, v, i]) * n[s, w, i] for i in (1, 2)))
                    else:
                        num = (sum(c_t[t, v, i] * (n[s, _nxt(w, N), i] - n[s, w, i]) for i in (1, 2))
                               + sum((c_t[t, v, i] - c_t[t, _prv(v, N), i]) * n[s, w, i] for i in (1, 2)))
                    a_s[t, s, v, w] = num / vol_tri[s, v, w]
                    if w == v:
                        a_ss[t, s, v, w] = (
                            (a[t, s, _nxt(v, N), w] - a[t, s, v, w]) / vol_edge[s, w]
                            - (a[t, s, v, w] - a[t, s, v, _prv(w, N)]) / vol_vert[s, v]
                        ) / (vol_edge[s, w] + vol_vert[s, v])
                    else:
                        a_ss[t, s, v, w] = (
                            (a[t, s, v, _nxt(w, N)] - a[t, s, v, w]) / vol_vert[s, v]
                            - (a[t, s, v, w] - a[t, s, _prv(v, N), w]) / vol_edge[s, w]
                        ) / vol_tri[s, v, w]

    penalty = sum((vol_edge[t, v] - length[t] / N) ** 2 for t in S for v in V)
    energy = {}
    for t in range(1, T + 1):
        acc = 0.0
        for s in (t, t + 1):
            for v in V:
                for w in (_prv(v, N), v):
                    acc += ((A0 + A1 * kappa[s, v] ** 2 + A2 * kappa[s, v] ** 4
                             + A3 * kappa_s[s, w] ** 2) * a[t, s, v, w] ** 2
                            + (B0 + B1 * kappa[s, v] ** 2) * a_s[t, s, v, w] ** 2
                            + C0 * a_ss[t, s, v, w] ** 2) * vol_tri[s, v, w]
        energy[t] = acc / 8
    total_energy = sum(energy[t] for t in range(1, T + 1)) / T
    return {
        "T": T, "N": N, "vol_edge": vol_edge, "vol_vert": vol_vert, "vol_tri": vol_tri,
        "tangent": tangent, "n": n, "length": length, "angle": angle, "kappa": kappa,
        "kappa_s": kappa_s, "c_t": c_t, "a": a, "a_s": a_s, "a_ss": a_ss,
        "penalty": penalty, "energy": energy, "total_energy": total_energy,
        "objective": total_energy + penalty,
    }


def to_array_index(t, s, v, w, N):
    """Map oracle keys (1-based, w in {prev(v), v}) to package TriangleField indices."""
    return (t - 1, s - t, v - 1, 1 if w == v else 0)


def sobolev_h1(curve, h):
    """Brute-force discrete H^1 value: componentwise triangle stencils, /4 normalization."""
    N = len(curve)
    V = range(1, N + 1)
    x = {(v, i): float(curve[v - 1][i - 1]) for v in V for i in (1, 2)}
    hh = {(v, i): float(h[v - 1][i - 1]) for v in V for i in (1, 2)}
    e = {v: math.hypot(x[_nxt(v, N), 1] - x[v, 1], x[_nxt(v, N), 2] - x[v, 2]) for v in V}
    vv = {v: (e[_prv(v, N)] + e[v]) / 2 for v in V}
    total = 0.0
    for v in V:
        for w in (_prv(v, N), v):
            tri = vv[v] + e[w]
            if w == v:
                d = [(hh[_nxt(v, N), i] - hh[v, i]) / tri for i in (1, 2)]
            else:
                d = [(hh[v, i] - hh[_prv(v, N), i]) / tri for i in (1, 2)]
            total += (hh[v, 1] ** 2 + hh[v, 2] ** 2 + d[0] ** 2 + d[1] ** 2) * tri
    return total / 4
