"""p-adic scalars with tracked precision, finite fields, and unramified lifts.

Scalars are residues mod p^N with the precision N carried along; division
by p costs precision explicitly.  Unramified extensions Z_q are realized
as Z/p^N[x] modulo a monic lift of an irreducible polynomial over F_p;
Teichmuller lifts, Frobenius, and the trace to Z_p all live here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import MixedModulus, NonIntegral, PrecisionExhausted


def val_p(x, p):
    """p-adic valuation of a nonzero integer or Fraction."""
    if isinstance(x, Fraction):
        return val_p(x.numerator, p) - val_p(x.denominator, p)
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def val_p_factorial(j, p):
    """Legendre's formula for val_p(j!)."""
    v = 0
    q = p
    while q <= j:
        v += j // q
        q *= p
    return v


def reduce_fraction(x, p, prec):
    """Residue of a p-integral rational mod p^prec."""
    num, den = x.numerator, x.denominator
    if num == 0:
        return 0
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    if v < 0:
        raise NonIntegral(f"{x} is not p-integral at p={p}")
    m = p ** prec
    return p ** v * num * pow(den, -1, m) % m


@dataclass(frozen=True)
class PadicScalar:
    """An element of Z_p known mod p^prec."""

    p: int
    prec: int
    residue: int

    @classmethod
    def make(cls, p, prec, value):
        return cls(p, prec, value % p ** prec)

    def _join(self, other):
        if not isinstance(other, PadicScalar):
            raise TypeError(f"cannot combine PadicScalar with {type(other)}")
        if other.p != self.p:
            raise MixedModulus(f"primes differ: {self.p} vs {other.p}")
        return min(self.prec, other.prec)

    def __add__(self, other):
        prec = self._join(other)
        return PadicScalar.make(self.p, prec, self.residue + other.residue)

    def __sub__(self, other):
        prec = self._join(other)
        return PadicScalar.make(self.p, prec, self.residue - other.residue)

    def __mul__(self, other):
        prec = self._join(other)
        return PadicScalar.make(self.p, prec, self.residue * other.residue)

    def __neg__(self):
        return PadicScalar.make(self.p, self.prec, -self.residue)

    def is_zero(self):
        return self.residue % self.p ** self.prec == 0

    def unit_inverse(self):
        if self.residue % self.p == 0:
            raise ZeroDivisionError("not a p-adic unit")
        m = self.p ** self.prec
        return PadicScalar(self.p, self.prec, pow(self.residue, -1, m))

    def divide_by_p_power(self, v):
        """Exact division by p^v; costs v digits of precision."""
        if v == 0:
            return self
        if self.prec <= v:
            raise PrecisionExhausted(f"dividing by p^{v} at precision {self.prec}")
        if self.residue % self.p ** v != 0:
            raise NonIntegral("residue not divisible by requested p power")
        return PadicScalar(self.p, self.prec - v, self.residue // self.p ** v)

    def lower_precision(self, prec):
        if prec > self.prec:
            raise PrecisionExhausted(f"cannot raise precision {self.prec} -> {prec}")
        return PadicScalar.make(self.p, prec, self.residue)


def teichmuller_zp(a, p, prec):
    """Teichmuller lift of a in F_p: the fixed point of x -> x^p mod p^prec."""
    x = a % p
    for _ in range(prec):
        x = pow(x, p, p ** prec)
    return x


def binomial_series_coeffs(a_residue, p, prec_in, M, prec_out):
    """Coefficients binom(a, j) mod p^prec_out for j = 0..M.

    a is a p-adic integer known mod p^prec_in; the divisions by j! cost
    val_p(j!) digits, so prec_in must cover prec_out + val_p(M!).
    """
    loss = val_p_factorial(M, p)
    if prec_in < prec_out + loss:
        raise PrecisionExhausted(
            f"need input precision >= {prec_out + loss}, have {prec_in}")
    m_in = p ** prec_in
    out = [1 % p ** prec_out]
    X = 1
    fact_unit_inv = 1
    fact_val = 0
    for j in range(1, M + 1):
        X = X * ((a_residue - j + 1) % m_in) % m_in
        jj = j
        while jj % p == 0:
            jj //= p
            fact_val += 1
        fact_unit_inv = fact_unit_inv * pow(jj, -1, m_in) % m_in
        t = X * fact_unit_inv % m_in
        if t % p ** fact_val != 0:
            raise NonIntegral(f"binom(a,{j}) failed integrality")
        out.append((t // p ** fact_val) % p ** prec_out)
    return out


# ---------------------------------------------------------------------------
# finite fields F_{p^m} as polynomial quotients
# ---------------------------------------------------------------------------

def _poly_mulmod(a, b, modulus, p):
    m = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for d in range(len(prod) - 1, m - 1, -1):
        c = prod[d]
        if c:
            prod[d] = 0
            for i in range(m):
                prod[d - m + i] = (prod[d - m + i] - c * modulus[i]) % p
    prod = prod[:m] + [0] * max(0, m - len(prod))
    return tuple(prod[:m])


def _poly_powmod(a, e, modulus, p):
    m = len(modulus) - 1
    result = tuple([1] + [0] * (m - 1))
    base = a
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, modulus, p)
        base = _poly_mulmod(base, base, modulus, p)
        e >>= 1
    return result


def _poly_gcd(a, b, p):
    a, b = list(a), list(b)

    def strip(c):
        while c and c[-1] % p == 0:
            c.pop()
        return c

    a, b = strip(a), strip(b)
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b):
            coef = a[-1] * inv % p
            shift = len(a) - len(b)
            for i, bi in enumerate(b):
                a[i + shift] = (a[i + shift] - coef * bi) % p
            a = strip(a)
            if not a:
                break
        a, b = b, a
    return a


def is_irreducible(coeffs, p):
    """Irreducibility over F_p of the monic polynomial with the given
    low-to-high coefficient list (leading 1 included)."""
    m = len(coeffs) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    xq = _poly_powmod((0, 1) + (0,) * (m - 2), p ** m, coeffs, p)
    if xq != (0, 1) + (0,) * (m - 2):
        return False
    for r in {d for d in range(2, m + 1) if m % d == 0 and _is_prime(d)}:
        xd = _poly_powmod((0, 1) + (0,) * (m - 2), p ** (m // r), coeffs, p)
        diff = tuple((xd[i] - (1 if i == 1 else 0)) % p for i in range(m))
        if len(_poly_gcd(coeffs, diff, p)) > 1:
            return False
    return True


def _is_prime(t):
    if t < 2:
        return False
    d = 2
    while d * d <= t:
        if t % d == 0:
            return False
        d += 1
    return True


def prime_factors(t):
    out = set()
    d = 2
    while d * d <= t:
        while t % d == 0:
            out.add(d)
            t //= d
        d += 1
    if t > 1:
        out.add(t)
    return out


def find_irreducible(p, m, rng):
    """Random monic irreducible of degree m over F_p (any such works; nothing
    downstream depends on compatibility between degrees)."""
    if m == 1:
        return (0, 1)
    while True:
        coeffs = tuple(rng.randrange(p) for _ in range(m)) + (1,)
        if coeffs[0] != 0 and is_irreducible(coeffs, p):
            return coeffs


class FiniteField:
    """F_{p^m} with elements as coefficient tuples of length m."""

    def __init__(self, p, m, modulus=None, rng=None):
        self.p = p
        self.m = m
        if modulus is None:
            import random
            modulus = find_irreducible(p, m, rng or random.Random(2024))
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree m")
        self.modulus = tuple(x % p for x in modulus)

    @property
    def q(self):
        return self.p ** self.m

    def zero(self):
        return (0,) * self.m

    def one(self):
        return (1,) + (0,) * (self.m - 1)

    def from_int(self, a):
        return (a % self.p,) + (0,) * (self.m - 1)

    def mul(self, a, b):
        return _poly_mulmod(a, b, self.modulus, self.p)

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def pow(self, a, e):
        if not any(a):
            return self.one() if e == 0 else self.zero()
        return _poly_powmod(a, e % (self.q - 1), self.modulus, self.p)

    def elements(self):
        for tup in itertools.product(range(self.p), repeat=self.m):
            yield tup

    def frobenius(self, a):
        return self.pow(a, self.p) if any(a) else a

    def multiplicative_generator(self):
        order = self.q - 1
        factors = prime_factors(order)
        for tup in self.elements():
            if not any(tup):
                continue
            if all(self.pow(tup, order // r) != self.one() for r in factors):
                return tup
        raise AssertionError("no generator found")


class ZqContext:
    """The unramified extension Z_q = Z_{p^m} truncated at p^prec.

    Elements are tuples of length m of residues mod p^prec, in the basis
    1, g, ..., g^{m-1} where g is a root of the monic lift Phi of the
    field modulus.
    """

    def __init__(self, field: FiniteField, prec: int):
        self.field = field
        self.p = field.p
        self.m = field.m
        self.prec = prec
        self.mod = field.p ** prec
        self.Phi = tuple(int(c) for c in field.modulus)
        self._red_rows = self._reduction_rows()
        self._power_sums = self._newton_power_sums()
        self._frob_g = None

    def _reduction_rows(self):
        # row d (0-based from m) expresses g^{m+d} in the basis
        m, mod = self.m, self.mod
        rows = []
        cur = [(-self.Phi[i]) % mod for i in range(m)]
        rows.append(tuple(cur))
        for _ in range(m - 2):
            nxt = [0] + cur[:-1]
            top = cur[-1]
            if top:
                for i in range(m):
                    nxt[i] = (nxt[i] - top * self.Phi[i]) % mod
            cur = nxt
            rows.append(tuple(cur))
        return rows

    def _newton_power_sums(self):
        # power sums s_k of the roots of Phi mod p^prec, for k = 0..m-1
        m, mod = self.m, self.mod
        a = self.Phi  # a[i] multiplies x^i, a[m] = 1
        s = [m % mod]
        for k in range(1, m):
            acc = (-k * a[m - k]) % mod
            for i in range(1, k):
                acc = (acc - a[m - i] * s[k - i]) % mod
            s.append(acc)
        return s

    def zero(self):
        return (0,) * self.m

    def one(self):
        return (1,) + (0,) * (self.m - 1)

    def from_int(self, a):
        return (a % self.mod,) + (0,) * (self.m - 1)

    def add(self, a, b):
        return tuple((x + y) % self.mod for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.mod for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x % self.mod for x in a)

    def scale(self, c, a):
        return tuple(c * x % self.mod for x in a)

    def mul(self, a, b):
        m, mod = self.m, self.mod
        prod = [0] * (2 * m - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] = (prod[i + j] + ai * bj) % mod
        out = prod[:m]
        for d in range(m, 2 * m - 1):
            c = prod[d]
            if c:
                row = self._red_rows[d - m]
                for i in range(m):
                    out[i] = (out[i] + c * row[i]) % mod
        return tuple(out)

    def pow(self, a, e):
        result = self.one()
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def is_zero(self, a):
        return all(x % self.mod == 0 for x in a)

    def reduce_mod_p(self, a):
        """Image in the residue field."""
        return tuple(x % self.p for x in a)

    def teichmuller(self, a_field):
        """The unique lift with omega^q = omega reducing to the field element."""
        x = tuple(int(c) % self.mod for c in a_field)
        q = self.field.q
        for _ in range(self.prec):
            x = self.pow(x, q)
        return x

    def trace_to_zp(self, a):
        """Trace to Z_p mod p^prec via the power sums of Phi."""
        return sum(ai * si for ai, si in zip(a, self._power_sums)) % self.mod

    def frobenius_generator_image(self):
        """sigma(g): the root of Phi congruent to g^p, by Newton iteration."""
        if self._frob_g is not None:
            return self._frob_g
        g = (0, 1) + (0,) * (self.m - 2) if self.m > 1 else (0,)
        if self.m == 1:
            self._frob_g = g
            return g
        t = self.pow(g, self.p)
        for _ in range(self.prec + 1):
            ft = self._eval_Phi(t)
            dft = self._eval_dPhi(t)
            inv = self.inverse(dft)
            t = self.sub(t, self.mul(ft, inv))
        if not self.is_zero(self._eval_Phi(t)):
            raise AssertionError("Frobenius lift did not converge")
        self._frob_g = t
        return t

    def _eval_Phi(self, t):
        acc = self.from_int(self.Phi[0])
        power = self.one()
        for i in range(1, self.m + 1):
            power = self.mul(power, t)
            c = self.Phi[i] if i < self.m else 1
            acc = self.add(acc, self.scale(c, power))
        return acc

    def _eval_dPhi(self, t):
        acc = self.from_int(self.Phi[1] if self.m >= 1 else 0)
        power = self.one()
        for i in range(2, self.m + 1):
            power = self.mul(power, t)
            c = i * (self.Phi[i] if i < self.m else 1)
            acc = self.add(acc, self.scale(c, power))
        return acc

    def inverse(self, a):
        """Inverse of a unit (nonzero mod p), by Hensel from the field."""
        abar = self.reduce_mod_p(a)
        if not any(abar):
            raise ZeroDivisionError("not a unit in Z_q")
        # invert in the residue field by Lagrange (a^(q-2)), then lift
        inv0 = self.field.pow(abar, self.field.q - 2)
        x = tuple(int(c) for c in inv0)
        for _ in range(self.prec.bit_length() + 1):
            ax = self.mul(a, x)
            x = self.sub(self.scale(2, x), self.mul(x, ax))
        if self.mul(a, x) != self.one():
            raise AssertionError("unit inversion failed")
        return x

    def frobenius(self, a):
        """The arithmetic Frobenius, acting coefficientwise through sigma(g)."""
        sg = self.frobenius_generator_image()
        acc = self.from_int(a[0])
        power = self.one()
        for i in range(1, self.m):
            power = self.mul(power, sg)
            acc = self.add(acc, self.scale(a[i], power))
        return acc
