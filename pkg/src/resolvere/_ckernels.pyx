# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled truth-table kernel; same contract as ``_pykernels.find_true_row``.

Rows are evaluated 64 at a time: the low six atoms have fixed bit patterns
inside a word, higher atoms are constant across a word.
"""

from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free

cdef enum:
    OP_NOT = -1
    OP_AND = -2
    OP_OR = -3
    OP_XOR = -4
    OP_FALSE = -5
    OP_TRUE = -6

cdef uint64_t[6] LOW_MASKS
LOW_MASKS[0] = 0xAAAAAAAAAAAAAAAAULL
LOW_MASKS[1] = 0xCCCCCCCCCCCCCCCCULL
LOW_MASKS[2] = 0xF0F0F0F0F0F0F0F0ULL
LOW_MASKS[3] = 0xFF00FF00FF00FF00ULL
LOW_MASKS[4] = 0xFFFF0000FFFF0000ULL
LOW_MASKS[5] = 0xFFFFFFFF00000000ULL


cdef inline int _ctz(uint64_t x) nogil:
    cdef int k = 0
    while not (x & 1):
        x >>= 1
        k += 1
    return k


cdef enum:
    BLOCK = 64  # words per opcode dispatch


def find_true_row(program, int n_atoms):
    cdef Py_ssize_t n = len(program)
    cdef Py_ssize_t k, sp, depth, i, bw
    cdef int64_t op
    cdef int64_t wb, nwords, row
    cdef uint64_t valid, res, bit
    cdef uint64_t full = 0xFFFFFFFFFFFFFFFFULL
    cdef uint64_t *top
    cdef uint64_t *under
    cdef int64_t *prog = <int64_t *> malloc(max(n, 1) * sizeof(int64_t))
    cdef uint64_t *stack = <uint64_t *> malloc((n + 1) * BLOCK * sizeof(uint64_t))
    if prog == NULL or stack == NULL:
        free(prog); free(stack)
        raise MemoryError()
    try:
        if n_atoms < 0 or n_atoms > 62:
            raise ValueError(f"unsupported atom count {n_atoms}")
        depth = 0
        for k in range(n):
            prog[k] = program[k]
            op = prog[k]
            if op >= n_atoms or op < OP_TRUE:
                raise ValueError(f"bad opcode {op}")
            if op >= 0 or op == OP_FALSE or op == OP_TRUE:
                depth += 1
            elif op != OP_NOT:
                depth -= 1
            if depth < 1:
                raise ValueError(f"stack underflow at position {k}")
        if depth != 1:
            raise ValueError("program must leave exactly one value")
        if n_atoms >= 6:
            nwords = (<int64_t> 1) << (n_atoms - 6)
            valid = full
        else:
            nwords = 1
            valid = ((<uint64_t> 1) << ((<uint64_t> 1) << n_atoms)) - 1
        row = -1
        with nogil:
            wb = 0
            while wb < nwords:
                bw = min(<int64_t> BLOCK, nwords - wb)
                sp = 0
                for k in range(n):
                    op = prog[k]
                    if op < -1 and op > OP_FALSE:
                        sp -= 1
                        top = stack + sp * BLOCK
                        under = top - BLOCK
                        if op == OP_AND:
                            for i in range(bw):
                                under[i] &= top[i]
                        elif op == OP_OR:
                            for i in range(bw):
                                under[i] |= top[i]
                        else:
                            for i in range(bw):
                                under[i] ^= top[i]
                    elif op == OP_NOT:
                        top = stack + (sp - 1) * BLOCK
                        for i in range(bw):
                            top[i] = ~top[i]
                    else:
                        top = stack + sp * BLOCK
                        sp += 1
                        if op == OP_FALSE:
                            for i in range(bw):
                                top[i] = 0
                        elif op == OP_TRUE or op < 6:
                            bit = full if op == OP_TRUE else LOW_MASKS[op]
                            for i in range(bw):
                                top[i] = bit
                        else:
                            for i in range(bw):
                                top[i] = full if ((wb + i) >> (op - 6)) & 1 else 0
                for i in range(bw):
                    res = stack[i] & valid
                    if res:
                        row = ((wb + i) << 6) + _ctz(res)
                        break
                if row >= 0:
                    break
                wb += BLOCK
        return row
    finally:
        free(prog)
        free(stack)
