import random

from lattens import polytope


def random_polytope(rng: random.Random, ambient: int, coord_bound: int = 4, dim: int | None = None):
    """Seeded random lattice polytope, optionally of prescribed dimension.

    Lower-dimensional instances are built in fewer coordinates and embedded
    on a random axis subset with a random small translation, so affine-hull
    handling gets exercised.
    """
    target = dim if dim is not None else rng.choice([ambient] * 3 + list(range(1, ambient + 1)))
    base_bound = max(1, coord_bound - 2)  # leave room for the final shift
    for _ in range(200):
        npels = rng.randint(target + 1, target + 4)
        pts = [
            tuple(rng.randint(0, base_bound) for _ in range(target)) for _ in range(npels)
        ]
        base = polytope.from_points(pts, ambient_dim=target)
        if base.dim != target:
            continue
        if target == ambient:
            embedded = base
        else:
            axes = sorted(rng.sample(range(ambient), target))
            lifted = []
            for v in base.vertices:
                w = [0] * ambient
                for axis, value in zip(axes, v):
                    w[axis] = value
                lifted.append(tuple(w))
            embedded = polytope.from_points(lifted)
        shift = tuple(rng.randint(-2, 2) for _ in range(ambient))
        return polytope.translate(embedded, shift)
    raise RuntimeError("could not sample a polytope of the requested dimension")


def random_point(rng: random.Random, ambient: int, bound: int = 3):
    return tuple(rng.randint(-bound, bound) for _ in range(ambient))
