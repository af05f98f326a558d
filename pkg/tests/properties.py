"""Randomized property checks shared by the unit tests and the acceptance run.

Each ``check_*`` function draws one instance from ``rng`` and returns whether
the property held on it.
"""

from fractions import Fraction
from itertools import product

from treach import EPS, PseudoHalfSpace, SystemModel, TargetSetM, TropicalPolyhedron, cone_contains_point, intersect_all, linear_image, member, rho
from treach.maxplus import identity, scalar_vec_mul, vec_add

from oracles import (
    NEG,
    grid,
    oadd,
    ocomb,
    odot,
    omatvec,
    onormalize,
    oshift,
    ovec,
    pseudo_member,
    pvec,
    random_matrix,
    random_polyhedron,
    random_vector,
)


def random_halfspace(rng, n1, n_u=None, lo=-3, hi=3):
    def row():
        return tuple(EPS if rng.random() < 0.4 else rng.randint(lo, hi) for _ in range(n1))

    n_u = n_u or rng.randint(1, 3)
    us = [(0,) + tuple(EPS if rng.random() < 0.2 else rng.randint(lo, hi) for _ in range(n1 - 1)) for _ in range(n_u)]
    return PseudoHalfSpace(row(), row(), us)


def random_lifted(rng, n1, lo=-5, hi=5):
    head = 0 if rng.random() < 0.7 else EPS
    return (head,) + tuple(EPS if rng.random() < 0.2 else rng.randint(lo, hi) for _ in range(n1 - 1))


def _rho_case(rng):
    while True:
        H = random_halfspace(rng, 3)
        v, w = random_lifted(rng, 3), random_lifted(rng, 3)
        if member(H, v) and not member(H, w):
            return H, v, w


def _combo_member(H, v, lam, w):
    x = onormalize(oadd(ovec(v), oshift(lam, ovec(w))))
    return pseudo_member(H.c, H.d, H.u_gens, pvec(x))


def check_rho_maximal(rng):
    H, v, w = _rho_case(rng)
    r = rho(H, v, w)
    if r is EPS:
        return all(not _combo_member(H, v, lam, w) for lam in (-20, 0, 20))
    if not _combo_member(H, v, r, w):
        return False
    return all(not _combo_member(H, v, r + Fraction(delta), w) for delta in ("1/4", "1", "4"))


def check_closure(rng):
    n = rng.randint(1, 2)
    Hs = [random_halfspace(rng, n + 1) for _ in range(rng.randint(1, 2))]
    gens = intersect_all(Hs, n).generators
    if not gens:
        return True
    x, y = rng.choice(gens), rng.choice(gens)
    lam = EPS if rng.random() < 0.1 else rng.randint(-4, 4)
    mu = rng.randint(-4, 4)
    z = onormalize(ovec(vec_add(scalar_vec_mul(lam, x), scalar_vec_mul(mu, y))))
    return all(pseudo_member(H.c, H.d, H.u_gens, pvec(z)) for H in Hs)


def check_complement(rng):
    while True:
        H = random_halfspace(rng, 3)
        outs = [v for v in (random_lifted(rng, 3) for _ in range(40)) if not member(H, v)]
        if len(outs) >= 2:
            break
    x, y = outs[:2]
    s = onormalize(oadd(ovec(x), ovec(y)))
    lam = rng.randint(-5, 5)
    t = onormalize(oshift(lam, ovec(x)))
    return not pseudo_member(H.c, H.d, H.u_gens, pvec(s)) and not pseudo_member(H.c, H.d, H.u_gens, pvec(t))


def grid_mismatches(rng):
    """Grid points where Span(intersect_all) and the constraints disagree."""
    n = rng.randint(1, 2)
    Hs = [random_halfspace(rng, n + 1) for _ in range(rng.randint(1, 2))]
    cone = intersect_all(Hs, n)
    bad = 0
    for tail in grid(n, -6, 6):
        for head in (0, NEG):
            x = pvec((head,) + tail)
            inside = all(pseudo_member(H.c, H.d, H.u_gens, x) for H in Hs)
            if cone_contains_point(cone, x)[0] != inside:
                bad += 1
    return bad


def target_ok(lhs, rhs, y):
    z = (0,) + tuple(y)
    return all(odot(ovec(a), z) <= odot(ovec(b), z) for a, b in zip(lhs, rhs))


def control_witnesses(U, lam_values):
    """Points of ``U`` built from coefficient grids over its generators."""
    conv = [ovec(e) for e in U.conv_gens]
    span = [ovec(r) for r in U.span_gens]
    m = U.dim
    mu_values = [NEG] + list(range(-10, 1))
    bounded = [ocomb(conv, mus, m) for mus in product(mu_values, repeat=len(conv)) if max(mus) == 0]
    out = set()
    for b in bounded:
        for lams in product(lam_values, repeat=len(span)):
            out.add(oadd(b, ocomb(span, lams, m)))
    return out


def random_system(rng):
    n = rng.randint(1, 2)
    m = 1
    A = random_matrix(rng, n, n)
    B = random_matrix(rng, n, m)
    C = identity(n) if rng.random() < 0.5 else random_matrix(rng, n, n, p_eps=0.2)
    U = random_polyhedron(rng, m, max_span=1, max_conv=2)
    W = TropicalPolyhedron(n, [], [random_vector(rng, n, -2, 2, p_eps=0.1) for _ in range(rng.randint(1, 2))])
    rows = rng.randint(1, 2)
    target = TargetSetM(n, random_matrix(rng, rows, n + 1), random_matrix(rng, rows, n + 1))
    return SystemModel(A, B, C, U, W), target


def upsilon_sound(model, target, result):
    """Every generator-derived point of ``result`` has a control witness."""
    if result.is_empty:
        return True
    lam = list(range(-6, 7)) + [NEG]
    us = control_witnesses(model.U_set, lam)
    Wp = linear_image(model.C_dist, model.W_set)
    ws = [ovec(e) for e in Wp.conv_gens]
    ws += [oadd(e, oshift(k, ovec(r))) for e in ws for r in Wp.span_gens for k in range(-4, 1)]
    A = [ovec(r) for r in model.A]
    B = [ovec(r) for r in model.B]
    points = [ovec(e) for e in result.conv_gens]
    points += [oadd(ovec(e), oshift(k, ovec(r))) for e in result.conv_gens for r in result.span_gens for k in (0, 3)]
    for g in points:
        ag = omatvec(A, g)
        ok = any(all(target_ok(target.lhs, target.rhs, oadd(oadd(ag, omatvec(B, u)), w)) for w in ws) for u in us)
        if not ok:
            return False
    return True


