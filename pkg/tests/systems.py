"""Shared input systems for the test-suite."""
import random

from tbb.fields import GF, QQ
from tbb.laurent import LaurentPoly
from tbb.parsing import parse_system
from tbb.region import ball

P = 32003
FP = GF(P)

DIAMOND = [(a, b) for a in range(-2, 3) for b in range(-2, 3) if abs(a) + abs(b) <= 2]
BOX = [(a, b) for a in range(-2, 3) for b in range(-2, 3)]


def generic_diamond(seed, field=FP):
    """Two random polynomials supported on the 13 points of the radius-2 diamond."""
    rng = random.Random(seed)
    return [LaurentPoly.from_terms({m: field(rng.randrange(1, P)) for m in DIAMOND}, 2, field)
            for _ in range(2)]


def random_box_system(seed, field=FP):
    """Two sparse random polynomials with supports in [-2,2]^2."""
    rng = random.Random(seed)
    return [LaurentPoly.from_terms({m: field(rng.randrange(1, P))
                                    for m in rng.sample(BOX, rng.randint(3, 10))}, 2, field)
            for _ in range(2)]


def generic_octahedron(seed, field=FP):
    """Three random polynomials on the 7 points of Ball(1) in three variables."""
    rng = random.Random(seed)
    return [LaurentPoly.from_terms({m: field(rng.randint(1, 30)) for m in ball(3, 1)}, 3, field)
            for _ in range(3)]


TEXT_SYSTEMS = {
    "linear-1": ("x1 - 2", 1),
    "quadratic-1": ("x1^2 - 3*x1 + 2", 1),
    "cubic-1": ("x1^3 - 1", 1),
    "laurent-1": ("x1 + x1^-1 - 5/2", 2),
    "point-2": ("x1 - 2\nx2 + 3", 1),
    "mixed-2": ("x1^2 - 3*x1 + 2\nx2 - x1^-1", 2),
    "inverse-2": ("x1*x2 - 1\nx1 + x2 - 3", 2),
    "point-3": ("x1 - 1\nx2 - 2\nx3 - 3", 1),
    "chain-3": ("x1^2 - 2\nx2 - x1\nx3*x2 - 1", 2),
}


def text_system(name, field=QQ):
    text, _ = TEXT_SYSTEMS[name]
    return parse_system(text, field)


def corpus():
    """(name, inputs) pairs: n <= 3, quotient dimension <= 30."""
    out = [(name, text_system(name)) for name in TEXT_SYSTEMS]
    out += [(f"diamond-{s}", generic_diamond(s)) for s in range(3)]
    out += [(f"box-{s}", random_box_system(s)) for s in range(6)]
    out += [(f"octahedron-{s}", generic_octahedron(s)) for s in range(2)]
    out += [("octahedron-q", generic_octahedron(7, QQ))]
    return out


def solved(polys, gamma=None):
    from tbb.laurent import ChoiceFunction
    from tbb.solver import SolverConfig, run
    return run(polys, gamma or ChoiceFunction(), SolverConfig(field=polys[0].field))


def point_family(rng, d, field=FP):
    """B = {1}; x_i -> a_i and x_i^-1 -> b_i, consistent exactly when a_i b_i = 1."""
    from tbb.projection import Projection
    rules = {}
    for i in range(2):
        a = field(rng.choice([2, 3, 5]))
        b = field.inv(a) if rng.random() < 0.5 else field(rng.choice([2, 3, 5]))
        for sign, c in ((1, a), (-1, b)):
            h = tuple(sign if k == i else 0 for k in range(2))
            rules[h] = LaurentPoly({(0, 0): c}, 2, field)
    return Projection(2, field, d, [(0, 0)], rules)


def perturbed(pi, rng):
    """Same family with one tail coefficient nudged."""
    from tbb.projection import Projection
    rules = dict(pi.rules)
    h = rng.choice(sorted(rules))
    b = rng.choice(sorted(m for m in pi.basis if sum(map(abs, m)) <= sum(map(abs, h))))
    one = LaurentPoly({b: pi.field(1)}, pi.nvars, pi.field)
    rules[h] = rules[h] + one
    return Projection(pi.nvars, pi.field, pi.degree, pi.basis, rules)


def random_families(seed, count):
    """Rewriting families with n = 2, 2 <= d <= 4: truncated border bases,
    perturbations of them, and point families."""
    from tbb.criteria import restrict
    rng = random.Random(seed)
    bases = []
    for s in range(12):
        r = solved(random_box_system(seed * 100 + s))
        if r.outcome == "border_basis":
            bases.append(r.projection)
    out = []
    while len(out) < count:
        d = rng.randint(2, 4)
        kind = rng.random()
        if kind < 0.4:
            out.append(restrict(rng.choice(bases), d))
        elif kind < 0.75:
            pi = restrict(rng.choice(bases), d)
            if pi.rules:
                out.append(perturbed(pi, rng))
        else:
            out.append(point_family(rng, d))
    return out
