"""Pure-Python kernels, used when the compiled extension is unavailable.

Programs are postfix int sequences over atom indices; see ``kernels``.
Each truth-table chunk is evaluated bit-parallel with Python integers: the
column of atom ``i`` is an integer whose bit ``r`` is bit ``i`` of row ``r``.
"""

from __future__ import annotations

OP_NOT, OP_AND, OP_OR, OP_XOR, OP_FALSE, OP_TRUE = -1, -2, -3, -4, -5, -6

CHUNK_BITS = 20


def _column(i: int, nbits: int) -> int:
    # bit r set iff bit i of r set, for r < 2**nbits
    half = 1 << i
    block = ((1 << half) - 1) << half
    width = 2 * half
    total = 1 << nbits
    while width < total:
        block |= block << width
        width *= 2
    return block


def check_program(program, n_atoms: int) -> None:
    """Raise ValueError unless ``program`` is a well-formed postfix program."""
    depth = 0
    for k, op in enumerate(program):
        if op >= n_atoms or op < OP_TRUE:
            raise ValueError(f"bad opcode {op}")
        if op >= 0 or op in (OP_FALSE, OP_TRUE):
            depth += 1
        elif op != OP_NOT:
            depth -= 1
        if depth < 1:
            raise ValueError(f"stack underflow at position {k}")
    if depth != 1:
        raise ValueError("program must leave exactly one value")


def find_true_row(program, n_atoms: int) -> int:
    """First row (atom ``i`` = bit ``i`` of the row) where ``program`` is true, or -1."""
    program = list(program)
    check_program(program, n_atoms)
    low = min(n_atoms, CHUNK_BITS)
    rows = 1 << low
    full = (1 << rows) - 1
    cols = [_column(i, low) for i in range(low)]
    for chunk in range(1 << (n_atoms - low)):
        vals = cols + [full if (chunk >> (i - low)) & 1 else 0 for i in range(low, n_atoms)]
        stack: list[int] = []
        push = stack.append
        pop = stack.pop
        for op in program:
            if op >= 0:
                push(vals[op])
            elif op == OP_NOT:
                push(full ^ pop())
            elif op == OP_AND:
                b = pop()
                push(pop() & b)
            elif op == OP_OR:
                b = pop()
                push(pop() | b)
            elif op == OP_XOR:
                b = pop()
                push(pop() ^ b)
            elif op == OP_FALSE:
                push(0)
            else:
                push(full)
        result = pop()
        if result:
            return (chunk << low) + ((result & -result).bit_length() - 1)
    return -1

