"""Regenerate src/aswlab/data/moduli.json.

For every prime power q = p^m <= 2**16 with m >= 2 this records the least
primitive monic polynomial of degree m over F_p, ordering candidates by
their coefficient tuple (c_{m-1}, ..., c_0) read as a base-p number.
"""

import itertools
import json
from pathlib import Path

from sympy import factorint, primerange

LIMIT = 2**16
OUT = Path(__file__).resolve().parents[1] / "src" / "aswlab" / "data" / "moduli.json"


def mulmod(a, b, f, p):
    # a, b, f: low-to-high coefficient lists; f monic of degree m
    m = len(f) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for k in range(len(prod) - 1, m - 1, -1):
        c = prod[k]
        if c:
            for j in range(m + 1):
                prod[k - m + j] = (prod[k - m + j] - c * f[j]) % p
    return prod[:m] + [0] * (m - len(prod[:m]))


def powmod(e, f, p):
    m = len(f) - 1
    result = [1] + [0] * (m - 1)
    base = [0, 1] + [0] * (m - 2) if m > 1 else [0]
    while e:
        if e & 1:
            result = mulmod(result, base, f, p)
        base = mulmod(base, base, f, p)
        e >>= 1
    return result


def is_primitive(f, p):
    m = len(f) - 1
    order = p**m - 1
    one = [1] + [0] * (m - 1)
    if powmod(order, f, p) != one:
        return False
    return all(powmod(order // r, f, p) != one for r in factorint(order))


def least_primitive(p, m):
    for tail in itertools.product(range(p), repeat=m):
        # tail = (c_{m-1}, ..., c_0)
        if tail[-1] == 0:
            continue
        f = list(reversed(tail)) + [1]
        if is_primitive(f, p):
            return f
    raise RuntimeError(f"no primitive polynomial for {p}^{m}")


def main():
    table = {}
    for p in primerange(2, 257):
        m = 2
        while p**m <= LIMIT:
            table[f"{p},{m}"] = least_primitive(p, m)
            m += 1
    OUT.write_text(json.dumps({"version": 1, "moduli": table}, sort_keys=True, indent=1) + "\n")
    print(f"wrote {len(table)} moduli to {OUT}")


if __name__ == "__main__":
    main()
