# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled lattice-point kernels; same contracts as ``_pykernels``.

Inputs must fit comfortably in 64-bit integers; the dispatcher in
``kernels.py`` checks magnitudes before calling in here.
"""

from libc.stdlib cimport malloc, free

ctypedef long long i64


def cone_points(normals, grading, long long bound, lower, upper):
    cdef int k = len(lower)
    cdef int f = len(normals)
    cdef i64 *lo = <i64 *> malloc(k * sizeof(i64))
    cdef i64 *hi = <i64 *> malloc(k * sizeof(i64))
    cdef i64 *x = <i64 *> malloc(k * sizeof(i64))
    cdef i64 *g = <i64 *> malloc(k * sizeof(i64))
    cdef i64 *nm = <i64 *> malloc((f * k + 1) * sizeof(i64))
    cdef int i, j, pos
    cdef i64 deg, s
    cdef bint ok
    out = []
    try:
        for i in range(k):
            lo[i] = lower[i]
            hi[i] = upper[i]
            g[i] = grading[i]
            x[i] = lo[i]
            if lo[i] > hi[i]:
                return []
        for j in range(f):
            for i in range(k):
                nm[j * k + i] = normals[j][i]
        while True:
            deg = 0
            for i in range(k):
                deg += g[i] * x[i]
            if 1 <= deg <= bound:
                ok = True
                for j in range(f):
                    s = 0
                    for i in range(k):
                        s += nm[j * k + i] * x[i]
                    if s < 0:
                        ok = False
                        break
                if ok:
                    out.append((deg, tuple([x[i] for i in range(k)])))
            pos = k - 1
            while pos >= 0:
                if x[pos] < hi[pos]:
                    x[pos] += 1
                    break
                x[pos] = lo[pos]
                pos -= 1
            if pos < 0:
                break
    finally:
        free(lo)
        free(hi)
        free(x)
        free(g)
        free(nm)
    out.sort()
    return [p for _, p in out]


def irreducibles(points, normals):
    cdef int n = len(points)
    cdef int f = len(normals)
    if n == 0:
        return []
    cdef int k = len(points[0])
    cdef i64 *pts = <i64 *> malloc((n * k + 1) * sizeof(i64))
    cdef i64 *nm = <i64 *> malloc((f * k + 1) * sizeof(i64))
    cdef int *basis = <int *> malloc((n + 1) * sizeof(int))
    cdef int nb = 0
    cdef int a, b, i, j
    cdef i64 s
    cdef bint inside, reducible
    try:
        for a in range(n):
            for i in range(k):
                pts[a * k + i] = points[a][i]
        for j in range(f):
            for i in range(k):
                nm[j * k + i] = normals[j][i]
        for a in range(n):
            reducible = False
            for b in range(nb):
                inside = True
                for j in range(f):
                    s = 0
                    for i in range(k):
                        s += nm[j * k + i] * (pts[a * k + i] - pts[basis[b] * k + i])
                    if s < 0:
                        inside = False
                        break
                if inside:
                    reducible = True
                    break
            if not reducible:
                basis[nb] = a
                nb += 1
        return [points[basis[b]] for b in range(nb)]
    finally:
        free(pts)
        free(nm)
        free(basis)


cdef bint _search(int j, i64 remaining, int m, int dim, int free_rank,
                  i64 *gens, i64 *degrees, i64 *target, i64 *tors,
                  i64 *acc, i64 *coeffs):
    cdef int i
    cdef i64 c, top, diff
    if remaining == 0:
        for i in range(dim):
            if i < free_rank:
                if acc[i] != target[i]:
                    return False
            else:
                diff = (acc[i] - target[i]) % tors[i - free_rank]
                if diff != 0:
                    return False
        return True
    if j == m:
        return False
    top = remaining // degrees[j]
    c = top
    while c >= 0:
        coeffs[j] = c
        for i in range(dim):
            acc[i] += c * gens[j * dim + i]
        if _search(j + 1, remaining - c * degrees[j], m, dim, free_rank,
                   gens, degrees, target, tors, acc, coeffs):
            for i in range(dim):
                acc[i] -= c * gens[j * dim + i]
            return True
        for i in range(dim):
            acc[i] -= c * gens[j * dim + i]
        c -= 1
    coeffs[j] = 0
    return False


def find_combination(target, gens, degrees, long long target_degree, int free_rank, torsion):
    cdef int m = len(gens)
    cdef int dim = len(target)
    cdef int i, j
    if target_degree < 0:
        return None
    cdef i64 *g = <i64 *> malloc((m * dim + 1) * sizeof(i64))
    cdef i64 *d = <i64 *> malloc((m + 1) * sizeof(i64))
    cdef i64 *t = <i64 *> malloc((dim + 1) * sizeof(i64))
    cdef i64 *tr = <i64 *> malloc((dim + 1) * sizeof(i64))
    cdef i64 *acc = <i64 *> malloc((dim + 1) * sizeof(i64))
    cdef i64 *co = <i64 *> malloc((m + 1) * sizeof(i64))
    try:
        for j in range(m):
            d[j] = degrees[j]
            co[j] = 0
            for i in range(dim):
                g[j * dim + i] = gens[j][i]
        for i in range(dim):
            t[i] = target[i]
            acc[i] = 0
        for i in range(len(torsion)):
            tr[i] = torsion[i]
        if _search(0, target_degree, m, dim, free_rank, g, d, t, tr, acc, co):
            return tuple([co[j] for j in range(m)])
        return None
    finally:
        free(g)
        free(d)
        free(t)
        free(tr)
        free(acc)
        free(co)
