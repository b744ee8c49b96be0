"""Exact Levine-Tristram signatures at prime-order roots of unity.

For a Seifert matrix V and omega = exp(2*pi*i*j/q) on the unit circle, the
Levine-Tristram signature sigma_K(omega) is the signature of the Hermitian
form

    H(omega) = (1 - omega) V + (1 - conj(omega)) V^T.

We evaluate it exactly: omega lives in the cyclotomic field Q(zeta_q), the
form is diagonalized by congruence over that field (symmetric Gaussian
elimination, with the usual off-diagonal pivot trick when every remaining
diagonal entry vanishes), and each pivot is a nonzero real element of the
field whose sign is certified by interval arithmetic.  No floating point
number ever decides a signature.

At omega of prime order the form is nonsingular (roots of unity of prime
power order are never roots of an Alexander polynomial normalized with
p(1) = 1); degeneracy is still checked and reported as an error rather
than a value.

The total over all nontrivial q-th roots,

    sigma^(q)(K) = sum over j = 1..q-1 of sigma_K(exp(2*pi*i*j/q)),

equals the signature of the q-fold cyclic cover of the 4-ball branched over
a pushed-in Seifert surface for K.  For odd q it is divisible by 4, by the
symmetry sigma_K(omega) = sigma_K(conj(omega)).
"""

from __future__ import annotations

from .cyclotomic import Cyclotomic, is_prime
from .seifert import SeifertMatrix


class SingularFormError(ArithmeticError):
    """The Hermitian form is degenerate at the requested root of unity."""


def _hermitian_form(V: SeifertMatrix, q: int, j: int) -> list[list[Cyclotomic]]:
    n = V.size
    omega = Cyclotomic.zeta_power(q, j)
    omega_bar = omega.conjugate()
    one = Cyclotomic.one(q)
    a = one - omega
    b = one - omega_bar
    rows = V.rows
    out = []
    for r in range(n):
        row = []
        for c in range(n):
            entry = a.scale(rows[r][c]) + b.scale(rows[c][r])
            row.append(entry)
        out.append(row)
    return out


def _signature_by_congruence(m: list[list[Cyclotomic]], q: int) -> int:
    """Signature of a Hermitian matrix over Q(zeta_q) by congruence
    diagonalization.  Raises SingularFormError on a degenerate form."""
    n = len(m)
    zero = Cyclotomic.zero(q)
    sig = 0
    for k in range(n):
        # Choose a nonzero diagonal pivot, creating one from an off-diagonal
        # entry if the remaining diagonal is entirely zero: adding a times
        # row j to row i (and conjugate to columns) puts 2*a*conj(a) > 0 at
        # position (i, i) when a = m[i][j] is nonzero.
        piv_idx = next((i for i in range(k, n) if not m[i][i].is_zero()), None)
        if piv_idx is None:
            off = None
            for i in range(k, n):
                for j in range(i + 1, n):
                    if not m[i][j].is_zero():
                        off = (i, j)
                        break
                if off:
                    break
            if off is None:
                raise SingularFormError(
                    "Hermitian form is degenerate (omega is a root of the "
                    "Alexander polynomial)"
                )
            i, j = off
            a = m[i][j]
            abar = a.conjugate()
            for c in range(k, n):
                m[i][c] = m[i][c] + a * m[j][c]
            for r in range(k, n):
                m[r][i] = m[r][i] + abar * m[r][j]
            piv_idx = i
            assert not m[i][i].is_zero()
        if piv_idx != k:
            m[k], m[piv_idx] = m[piv_idx], m[k]
            for r in range(n):
                m[r][k], m[r][piv_idx] = m[r][piv_idx], m[r][k]
        p = m[k][k]
        assert p.is_real()
        sig += p.sign()
        p_inv = p.inverse()
        for r in range(k + 1, n):
            if m[r][k].is_zero():
                continue
            f = m[r][k] * p_inv
            for c in range(k + 1, n):
                m[r][c] = m[r][c] - f * m[k][c]
            m[r][k] = zero
        for c in range(k + 1, n):
            m[k][c] = zero
    return sig


def lt_signature(V: SeifertMatrix, q: int, j: int) -> int:
    """Levine-Tristram signature sigma_K(omega) at omega = exp(2*pi*i*j/q).

    q must be prime and 1 <= j <= q-1, so omega != 1.  The result is exact
    and always even.
    """
    if not is_prime(q):
        raise ValueError(f"q must be prime, got {q}")
    if not 1 <= j <= q - 1:
        raise ValueError(f"need 1 <= j <= q-1, got j={j}, q={q}")
    if V.size == 0:
        return 0
    m = _hermitian_form(V, q, j)
    sig = _signature_by_congruence(m, q)
    assert sig % 2 == 0 and abs(sig) <= V.size
    return sig


def signature(V: SeifertMatrix) -> int:
    """Ordinary knot signature sigma(K) = sigma_K(-1)."""
    return lt_signature(V, 2, 1)


def sigma_q(V: SeifertMatrix, q: int) -> int:
    """sigma^(q)(K): the sum of sigma_K over all nontrivial q-th roots.

    Every term is computed independently; the divisibility by 4 for odd q is
    a consequence, not an input.
    """
    if not is_prime(q):
        raise ValueError(f"q must be prime, got {q}")
    total = sum(lt_signature(V, q, j) for j in range(1, q))
    if q % 2 == 1:
        assert total % 4 == 0, f"sigma^({q}) = {total} is not divisible by 4"
    return total
