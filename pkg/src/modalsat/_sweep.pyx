# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled valuation sweep.

Same contract as ``modalsat._sweep_py.first_model``.  Valuations are scanned
in blocks of up to 16 machine words (1024 valuations); within a block each
opcode is one tight loop over the words, which the C compiler vectorizes.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free

cdef enum:
    WORD_BITS = 6
    BLOCK_WORD_BITS = 4

cdef uint64_t[6] PATTERNS
PATTERNS[0] = 0xAAAAAAAAAAAAAAAAULL
PATTERNS[1] = 0xCCCCCCCCCCCCCCCCULL
PATTERNS[2] = 0xF0F0F0F0F0F0F0F0ULL
PATTERNS[3] = 0xFF00FF00FF00FF00ULL
PATTERNS[4] = 0xFFFF0000FFFF0000ULL
PATTERNS[5] = 0xFFFFFFFF00000000ULL

# opcodes, mirrored in _sweep_py
cdef enum:
    OP_VAR = 0
    OP_NEGVAR = 1
    OP_TRUE = 2
    OP_FALSE = 3
    OP_NOT = 4
    OP_AND = 5
    OP_OR = 6
    OP_BOX = 7
    OP_DIA = 8


cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil

cdef inline int _ctz(uint64_t x) noexcept nogil:
    return __builtin_ctzll(x)


def first_model(int n_worlds, offsets, targets, ops, arg_a, arg_b,
                int n_vars, int root, long long start=0):
    cdef int nbits = n_worlds * n_vars
    if nbits > 62:
        raise ValueError("too many valuation bits")
    cdef int n_ops = len(ops)
    cdef int n_edges = len(targets)
    cdef int L = nbits if nbits < WORD_BITS else WORD_BITS
    cdef int B = nbits - L if nbits - L < BLOCK_WORD_BITS else BLOCK_WORD_BITS
    cdef int W = 1 << B
    cdef int LB = L + B
    cdef long long n_chunks = (<long long>1) << (nbits - LB)
    cdef uint64_t full = 0xFFFFFFFFFFFFFFFFULL if L == WORD_BITS else (((<uint64_t>1) << (1 << L)) - 1)

    cdef int *c_off = <int *>malloc((n_worlds + 1) * sizeof(int))
    cdef int *c_tgt = <int *>malloc((n_edges + 1) * sizeof(int))
    cdef int *c_op = <int *>malloc((n_ops + 1) * sizeof(int))
    cdef int *c_a = <int *>malloc((n_ops + 1) * sizeof(int))
    cdef int *c_b = <int *>malloc((n_ops + 1) * sizeof(int))
    cdef uint64_t *vals = <uint64_t *>malloc((n_ops * n_worlds * W + 1) * sizeof(uint64_t))
    cdef uint64_t *varw = <uint64_t *>malloc((nbits * W + 1) * sizeof(uint64_t))
    cdef int i, w, j, e, bit, top, op
    cdef long long c, first_chunk, lo, base
    cdef uint64_t *dst
    cdef uint64_t *x
    cdef uint64_t *y
    cdef uint64_t res
    cdef long long found = -1
    try:
        if not (c_off and c_tgt and c_op and c_a and c_b and vals and varw):
            raise MemoryError()
        for i in range(n_worlds + 1):
            c_off[i] = offsets[i]
        for i in range(n_edges):
            c_tgt[i] = targets[i]
        for i in range(n_ops):
            c_op[i] = ops[i]
            c_a[i] = arg_a[i]
            c_b[i] = arg_b[i]
        top = n_ops - 1
        if start < 0:
            start = 0
        first_chunk = start >> LB
        with nogil:
            # bits inside a block do not depend on the chunk
            for bit in range(LB):
                for j in range(W):
                    if bit < L:
                        varw[bit * W + j] = PATTERNS[bit] & full
                    elif (j >> (bit - L)) & 1:
                        varw[bit * W + j] = full
                    else:
                        varw[bit * W + j] = 0
            for c in range(first_chunk, n_chunks):
                for bit in range(LB, nbits):
                    res = full if (c >> (bit - LB)) & 1 else 0
                    for j in range(W):
                        varw[bit * W + j] = res
                for i in range(n_ops):
                    op = c_op[i]
                    for w in range(n_worlds):
                        dst = vals + (i * n_worlds + w) * W
                        if op == OP_VAR:
                            x = varw + (w * n_vars + c_a[i]) * W
                            for j in range(W):
                                dst[j] = x[j]
                        elif op == OP_NEGVAR:
                            x = varw + (w * n_vars + c_a[i]) * W
                            for j in range(W):
                                dst[j] = (~x[j]) & full
                        elif op == OP_TRUE:
                            for j in range(W):
                                dst[j] = full
                        elif op == OP_FALSE:
                            for j in range(W):
                                dst[j] = 0
                        elif op == OP_NOT:
                            x = vals + (c_a[i] * n_worlds + w) * W
                            for j in range(W):
                                dst[j] = (~x[j]) & full
                        elif op == OP_AND:
                            x = vals + (c_a[i] * n_worlds + w) * W
                            y = vals + (c_b[i] * n_worlds + w) * W
                            for j in range(W):
                                dst[j] = x[j] & y[j]
                        elif op == OP_OR:
                            x = vals + (c_a[i] * n_worlds + w) * W
                            y = vals + (c_b[i] * n_worlds + w) * W
                            for j in range(W):
                                dst[j] = x[j] | y[j]
                        elif op == OP_BOX:
                            for j in range(W):
                                dst[j] = full
                            for e in range(c_off[w], c_off[w + 1]):
                                x = vals + (c_a[i] * n_worlds + c_tgt[e]) * W
                                for j in range(W):
                                    dst[j] = dst[j] & x[j]
                        else:
                            for j in range(W):
                                dst[j] = 0
                            for e in range(c_off[w], c_off[w + 1]):
                                x = vals + (c_a[i] * n_worlds + c_tgt[e]) * W
                                for j in range(W):
                                    dst[j] = dst[j] | x[j]
                x = vals + (top * n_worlds + root) * W
                for j in range(W):
                    res = x[j]
                    base = (c << LB) + ((<long long>j) << L)
                    if c == first_chunk and base < start:
                        lo = start - base
                        if lo >= (1 << L):
                            res = 0
                        else:
                            res = res & ~(((<uint64_t>1) << lo) - 1)
                    if res:
                        found = base + _ctz(res)
                        break
                if found >= 0:
                    break
    finally:
        free(c_off); free(c_tgt); free(c_op); free(c_a); free(c_b); free(vals); free(varw)
    return found
