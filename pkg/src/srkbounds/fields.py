"""Finite-field arithmetic tables for small prime powers.

Everything downstream that touches explicit space elements (enumeration
oracles, graph construction, matrix ranks) funnels through :class:`GF`.
Only small fields matter here — explicit spaces are capped at a few
thousand elements — so full addition/multiplication tables are the
simplest correct representation.  Elements are labelled ``0..q-1``;
for q = p^k the label is read base-p as the coefficient vector of a
polynomial over F_p, reduced modulo a fixed irreducible polynomial.
"""

from __future__ import annotations

from functools import lru_cache

_MAX_TABLE_Q = 64


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return (p, k) with q = p**k, or raise ValueError if q is not a prime power."""
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    for p in range(2, q + 1):
        if p * p > q and p != q:
            break
        if q % p == 0:
            k = 0
            rem = q
            while rem % p == 0:
                rem //= p
                k += 1
            if rem != 1:
                raise ValueError(f"q = {q} is not a prime power")
            return p, k
    return q, 1  # q itself is prime


def _poly_mul_mod(a: tuple[int, ...], b: tuple[int, ...], mod: tuple[int, ...], p: int) -> tuple[int, ...]:
    """Multiply two coefficient vectors over F_p and reduce modulo the monic
    polynomial x^k + sum_j mod[j] x^j, where k = len(mod)."""
    deg_m = len(mod)
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    # long division by the monic modulus
    for i in range(len(prod) - 1, deg_m - 1, -1):
        c = prod[i]
        if c:
            prod[i] = 0
            for j in range(deg_m):
                prod[i - deg_m + j] = (prod[i - deg_m + j] - c * mod[j]) % p
    return tuple(prod[:deg_m])


def _find_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Smallest monic irreducible polynomial of degree k over F_p, low-degree
    coefficients first (x^k coefficient implicit 1).  Brute force: a degree-k
    polynomial with no roots can still be reducible, so test irreducibility by
    trial division against all monic polynomials of degree <= k//2."""

    def poly_divmod_rem_zero(poly: list[int], div: list[int]) -> bool:
        rem = poly[:]
        dd = len(div) - 1
        inv_lead = pow(div[-1], p - 2, p) if div[-1] != 1 else 1
        for i in range(len(rem) - 1, dd - 1, -1):
            c = (rem[i] * inv_lead) % p
            if c:
                for j in range(dd + 1):
                    rem[i - dd + j] = (rem[i - dd + j] - c * div[j]) % p
        return all(x == 0 for x in rem[:dd])

    for code in range(p**k):
        coeffs = []
        v = code
        for _ in range(k):
            coeffs.append(v % p)
            v //= p
        full = coeffs + [1]  # monic of degree k
        if full[0] == 0:
            continue  # divisible by x
        reducible = False
        for deg in range(1, k // 2 + 1):
            for dcode in range(p**deg):
                dcoeffs = []
                dv = dcode
                for _ in range(deg):
                    dcoeffs.append(dv % p)
                    dv //= p
                div = dcoeffs + [1]
                if poly_divmod_rem_zero(full, div):
                    reducible = True
                    break
            if reducible:
                break
        if not reducible:
            return tuple(coeffs)
    raise RuntimeError(f"no irreducible polynomial found for p={p}, k={k}")  # pragma: no cover


class GF:
    """Arithmetic in F_q via lookup tables (q <= 64).

    For prime q the tables are plain modular arithmetic; for prime powers
    they come from polynomial arithmetic modulo an irreducible polynomial.
    The zero element is 0 and the one element is 1 in both encodings.
    """

    def __init__(self, q: int):
        p, k = factor_prime_power(q)
        if q > _MAX_TABLE_Q:
            raise ValueError(f"field tables only built for q <= {_MAX_TABLE_Q}, got {q}")
        self.q = q
        self.p = p
        self.k = k
        if k == 1:
            self.add = [[(a + b) % p for b in range(q)] for a in range(q)]
            self.sub = [[(a - b) % p for b in range(q)] for a in range(q)]
            self.mul = [[(a * b) % p for b in range(q)] for a in range(q)]
        else:
            mod = _find_irreducible(p, k)

            def decode(e: int) -> tuple[int, ...]:
                c = []
                for _ in range(k):
                    c.append(e % p)
                    e //= p
                return tuple(c)

            def encode(c: tuple[int, ...]) -> int:
                e = 0
                for d in reversed(c):
                    e = e * p + d
                return e

            polys = [decode(e) for e in range(q)]
            self.add = [[encode(tuple((x + y) % p for x, y in zip(polys[a], polys[b]))) for b in range(q)] for a in range(q)]
            self.sub = [[encode(tuple((x - y) % p for x, y in zip(polys[a], polys[b]))) for b in range(q)] for a in range(q)]
            self.mul = [[encode(_poly_mul_mod(polys[a], polys[b], mod, p)) for b in range(q)] for a in range(q)]
        self.neg = [self.sub[0][a] for a in range(q)]
        # multiplicative inverses (0 maps to 0, unused)
        self.inv = [0] * q
        for a in range(1, q):
            row = self.mul[a]
            self.inv[a] = row.index(1)

    def matrix_rank(self, rows: list[list[int]]) -> int:
        """Rank of a matrix with entries in 0..q-1 by Gaussian elimination."""
        if not rows:
            return 0
        work = [row[:] for row in rows]
        ncols = len(work[0])
        mul, sub, inv = self.mul, self.sub, self.inv
        rank = 0
        col = 0
        nrows = len(work)
        while rank < nrows and col < ncols:
            pivot = None
            for r in range(rank, nrows):
                if work[r][col]:
                    pivot = r
                    break
            if pivot is None:
                col += 1
                continue
            work[rank], work[pivot] = work[pivot], work[rank]
            piv_inv = inv[work[rank][col]]
            prow = work[rank]
            if piv_inv != 1:
                work[rank] = prow = [mul[piv_inv][x] for x in prow]
            for r in range(rank + 1, nrows):
                f = work[r][col]
                if f:
                    mf = mul[f]
                    work[r] = [sub[x][mf[y]] for x, y in zip(work[r], prow)]
            rank += 1
            col += 1
        return rank


@lru_cache(maxsize=None)
def get_field(q: int) -> GF:
    return GF(q)
