"""Pure-Python lattice-point kernels (reference backend)."""

from __future__ import annotations

from itertools import product


def cone_points(normals, grading, bound, lower, upper):
    """Integer points ``x`` of a box with ``n.x >= 0`` for every normal and
    ``1 <= grading.x <= bound``, sorted by degree then lexicographically."""
    out = []
    for x in product(*(range(lo, hi + 1) for lo, hi in zip(lower, upper))):
        deg = sum(g * v for g, v in zip(grading, x))
        if deg < 1 or deg > bound:
            continue
        if all(sum(a * v for a, v in zip(n, x)) >= 0 for n in normals):
            out.append((deg, x))
    out.sort()
    return [x for _, x in out]


def irreducibles(points, normals):
    """Points not of the form ``y + z`` with ``y`` an earlier irreducible and
    ``z`` a nonzero cone point; ``points`` must be sorted by degree."""
    basis = []
    for x in points:
        for y in basis:
            z = [a - b for a, b in zip(x, y)]
            if all(sum(a * v for a, v in zip(n, z)) >= 0 for n in normals):
                break
        else:
            basis.append(x)
    return basis


def find_combination(target, gens, degrees, target_degree, free_rank, torsion):
    """Nonnegative integers ``c`` with ``sum c_j gens_j == target``.

    Coordinates past ``free_rank`` are compared modulo ``torsion``; every
    generator has a positive degree and the degrees of a solution sum to
    ``target_degree``.  Returns None if no combination exists.
    """
    m = len(gens)
    dim = len(target)
    coeffs = [0] * m
    acc = [0] * dim

    def matches():
        for i in range(dim):
            if i < free_rank:
                if acc[i] != target[i]:
                    return False
            elif (acc[i] - target[i]) % torsion[i - free_rank]:
                return False
        return True

    def search(j, remaining):
        if remaining == 0:
            return matches()
        if j == m:
            return False
        g, d = gens[j], degrees[j]
        top = remaining // d
        for c in range(top, -1, -1):
            coeffs[j] = c
            for i in range(dim):
                acc[i] += c * g[i]
            ok = search(j + 1, remaining - c * d)
            for i in range(dim):
                acc[i] -= c * g[i]
            if ok:
                return True
        coeffs[j] = 0
        return False

    if target_degree < 0:
        return None
    return tuple(coeffs) if search(0, target_degree) else None
