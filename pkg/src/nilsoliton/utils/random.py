import random

import numpy
import scipy.linalg

from nilsoliton.components.algebra import Bracket, act


FLOAT_TO_INT_MULTIPLIER = 2000000000


def generate_python_random_seed():
    """Generate a random integer suitable for seeding a numpy Generator
    """
    return int(random.uniform(0, 1.0) * FLOAT_TO_INT_MULTIPLIER)


def random_two_step_bracket(dim, rng):
    """A random 2-step bracket: the last `dim // 3` (at least one) basis
    vectors are central and take all the brackets of the others.
    """
    z = max(1, dim // 3)
    v = dim - z
    terms = [
        (i, j, k, rng.standard_normal())
        for i in range(1, v + 1)
        for j in range(i + 1, v + 1)
        for k in range(v + 1, dim + 1)
    ]
    return Bracket(dim, terms)


def model_filiform_bracket(dim, coefficients=None):
    """mu(e_1, e_i) = c_i e_{i+1} for i = 2..dim-1."""
    coefficients = [1.0] * (dim - 2) if coefficients is None else coefficients
    return Bracket(dim, [(1, i, i + 1, c) for i, c in zip(range(2, dim), coefficients)])


def random_nilpotent_bracket(dim, rng, eps=0.5):
    """A random valid nilpotent bracket of the given dimension (at least 3).

    A random seed family (2-step, model filiform with random coefficients or
    h3 plus an abelian factor) is moved by exp(eps A) for a Gaussian A, so
    the result is nilpotent but has no particular shape in the basis.
    """
    if dim < 3:
        raise ValueError("nilpotent non-abelian brackets need dim >= 3")
    family = rng.integers(3)
    if family == 0:
        seed = random_two_step_bracket(dim, rng)
    elif family == 1:
        seed = model_filiform_bracket(dim, rng.uniform(0.5, 1.5, size=dim - 2))
    else:
        seed = Bracket(dim, [(1, 2, 3, rng.uniform(0.5, 1.5))])
    g = scipy.linalg.expm(eps * rng.standard_normal((dim, dim)) / numpy.sqrt(dim))
    return act(g, seed)
