"""Pure-Python valuation sweep, used when the compiled extension is unavailable.

Valuations of a frame with ``n_worlds`` worlds over ``n_vars`` variables are
numbered ``0 .. 2**(n_worlds*n_vars) - 1``; bit ``w*n_vars + k`` of the number
is the value of variable ``k`` at world ``w``.  Truth values are computed for
a whole block of consecutive valuations at once, one valuation per bit of a
Python integer.
"""

OP_VAR, OP_NEGVAR, OP_TRUE, OP_FALSE, OP_NOT, OP_AND, OP_OR, OP_BOX, OP_DIA = range(9)

BLOCK_BITS = 12


def _pattern(bit: int, width: int) -> int:
    # bit i of the result is bit `bit` of i
    period = 1 << bit
    unit = ((1 << period) - 1) << period
    out = 0
    for shift in range(0, width, 2 * period):
        out |= unit << shift
    return out


_PATTERNS = [_pattern(b, 1 << BLOCK_BITS) for b in range(BLOCK_BITS)]


def first_model(n_worlds, offsets, targets, ops, arg_a, arg_b, n_vars, root, start=0):
    """Smallest valuation index >= ``start`` making the program's last slot true
    at ``root``, or -1 when there is none."""
    nbits = n_worlds * n_vars
    L = min(nbits, BLOCK_BITS)
    width = 1 << L
    full = (1 << width) - 1
    n_chunks = 1 << (nbits - L)
    succ = [targets[offsets[w]:offsets[w + 1]] for w in range(n_worlds)]
    low = [_PATTERNS[b] & full for b in range(L)]
    top = len(ops) - 1
    start = max(start, 0)
    first_chunk = start >> L
    worlds = range(n_worlds)
    for c in range(first_chunk, n_chunks):
        varw = low + [full if (c >> (b - L)) & 1 else 0 for b in range(L, nbits)]
        vals: list[list[int]] = []
        for op, a, b in zip(ops, arg_a, arg_b):
            if op == OP_VAR:
                row = [varw[w * n_vars + a] for w in worlds]
            elif op == OP_NEGVAR:
                row = [full ^ varw[w * n_vars + a] for w in worlds]
            elif op == OP_TRUE:
                row = [full] * n_worlds
            elif op == OP_FALSE:
                row = [0] * n_worlds
            elif op == OP_NOT:
                row = [full ^ x for x in vals[a]]
            elif op == OP_AND:
                row = [x & y for x, y in zip(vals[a], vals[b])]
            elif op == OP_OR:
                row = [x | y for x, y in zip(vals[a], vals[b])]
            elif op == OP_BOX:
                va = vals[a]
                row = []
                for w in worlds:
                    acc = full
                    for v in succ[w]:
                        acc &= va[v]
                    row.append(acc)
            elif op == OP_DIA:
                va = vals[a]
                row = []
                for w in worlds:
                    acc = 0
                    for v in succ[w]:
                        acc |= va[v]
                    row.append(acc)
            else:
                raise ValueError(f"bad opcode {op}")
            vals.append(row)
        res = vals[top][root]
        if c == first_chunk:
            res &= ~((1 << (start & (width - 1))) - 1)
        if res:
            return (c << L) + ((res & -res).bit_length() - 1)
    return -1
