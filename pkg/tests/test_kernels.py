import os
import random
import subprocess
import sys

import pytest

from resolvere import _pykernels, kernels

OPS = (kernels.OP_AND, kernels.OP_OR, kernels.OP_XOR)
IMPLS = sorted(kernels.IMPLEMENTATIONS.items())


def random_program(r, n, size):
    prog, depth = [], 0
    for _ in range(size):
        x = r.random()
        if depth >= 2 and x < 0.45:
            prog.append(r.choice(OPS))
            depth -= 1
        elif depth >= 1 and x < 0.6:
            prog.append(kernels.OP_NOT)
        elif x < 0.65 or n == 0:
            prog.append(r.choice((kernels.OP_TRUE, kernels.OP_FALSE)))
            depth += 1
        else:
            prog.append(r.randrange(n))
            depth += 1
    while depth > 1:
        prog.append(r.choice(OPS))
        depth -= 1
    return prog


def brute(prog, n):
    for row in range(1 << n):
        stack = []
        for op in prog:
            if op >= 0:
                stack.append(bool(row >> op & 1))
            elif op == kernels.OP_NOT:
                stack.append(not stack.pop())
            elif op == kernels.OP_FALSE:
                stack.append(False)
            elif op == kernels.OP_TRUE:
                stack.append(True)
            else:
                b, a = stack.pop(), stack.pop()
                stack.append({kernels.OP_AND: a and b, kernels.OP_OR: a or b, kernels.OP_XOR: a != b}[op])
        if stack.pop():
            return row
    return -1


@pytest.mark.parametrize("name,impl", IMPLS)
def test_matches_row_by_row_evaluation(name, impl):
    r = random.Random(5)
    for _ in range(400):
        n = r.randint(0, 9)
        prog = random_program(r, n, r.randint(1, 25))
        assert impl(prog, n) == brute(prog, n), prog


@pytest.mark.parametrize("name,impl", IMPLS)
def test_high_atoms(name, impl):
    # only the last row satisfies the conjunction of all atoms
    n = 21
    prog = [0] + [x for i in range(1, n) for x in (i, kernels.OP_AND)]
    assert impl(prog, n) == (1 << n) - 1
    assert impl(prog + [0, kernels.OP_NOT, kernels.OP_AND], n) == -1


@pytest.mark.parametrize("name,impl", IMPLS)
@pytest.mark.parametrize("prog", [[], [kernels.OP_AND], [0, 1], [3], [-9]])
def test_malformed_programs(name, impl, prog):
    with pytest.raises(ValueError):
        impl(prog, 2)


def test_backends_agree():
    if "cython" not in kernels.IMPLEMENTATIONS:
        pytest.skip("compiled kernel not built")
    cy = kernels.IMPLEMENTATIONS["cython"]
    r = random.Random(9)
    for _ in range(2000):
        n = r.randint(0, 16)
        prog = random_program(r, n, r.randint(1, 40))
        assert cy(prog, n) == _pykernels.find_true_row(prog, n)


def test_env_var_forces_fallback():
    env = dict(os.environ, RESOLVERE_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from resolvere import kernels; print(kernels.BACKEND)"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "python"


def test_default_backend():
    if os.environ.get("RESOLVERE_PURE_PYTHON"):
        assert kernels.BACKEND == "python"
    else:
        assert kernels.BACKEND == ("cython" if "cython" in kernels.IMPLEMENTATIONS else "python")
