"""Dense univariate polynomials over the integers and exact real-root isolation.

Coefficients are Python ints stored lowest power first. Root isolation runs on
the square-free part with Sturm sequences and bisection over dyadic intervals,
so every answer is a certificate rather than a floating-point estimate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from typing import Iterable

DEFAULT_MAX_WIDTH = Fraction(1, 1 << 30)


class IntPolynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[int, ...] = tuple(c)

    @classmethod
    def x_minus(cls, a: int) -> IntPolynomial:
        return cls((-a, 1))

    @classmethod
    def constant(cls, c: int) -> IntPolynomial:
        return cls((c,))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPolynomial((other,))
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self):
        """Space-separated coefficients, constant term first."""
        return " ".join(str(c) for c in self.coeffs) if self.coeffs else "0"

    def pretty(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            body = str(a) if (a != 1 or k == 0) else ""
            terms.append((sign, body + mono))
        s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, t in terms[1:]:
            s += f" {sign} {t}"
        return s

    def __neg__(self):
        return IntPolynomial(-c for c in self.coeffs)

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPolynomial((other,))
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPolynomial([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntPolynomial((other,))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(other * c for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = IntPolynomial((1,))
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> IntPolynomial:
        return IntPolynomial(k * c for k, c in enumerate(self.coeffs) if k)

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self) -> IntPolynomial:
        """Divide out the content and make the leading coefficient positive."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.lc < 0:
            g = -g
        return IntPolynomial(c // g for c in self.coeffs)

    def sign_at(self, num: int, den: int = 1) -> int:
        """Sign of p(num/den) for den > 0, computed in exact integers."""
        c = self.coeffs
        if not c:
            return 0
        acc = 0
        dp = 1
        # Horner on the homogenised form sum c_k num^k den^(d-k)
        for ck in reversed(c):
            acc = acc * num + ck * dp
            dp *= den
        return (acc > 0) - (acc < 0)


def poly_arith(p: IntPolynomial, q: IntPolynomial, op: str) -> IntPolynomial:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown op {op!r}")


def taylor_shift(p: IntPolynomial, k: int) -> IntPolynomial:
    """Return q with q(x) = p(x - k)."""
    c = p.coeffs
    n = len(c)
    if k == 0 or n <= 1:
        return p
    out = [0] * n
    for i, ci in enumerate(c):
        if ci:
            # ci * (x - k)^i
            for j in range(i + 1):
                out[j] += ci * comb(i, j) * (-k) ** (i - j)
    return IntPolynomial(out)


def pseudo_divmod(a: IntPolynomial, b: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
    """lc(b)^(deg a - deg b + 1) * a = q * b + r."""
    if b.is_zero():
        raise ZeroDivisionError("pseudo-division by zero polynomial")
    db = b.degree
    if a.degree < db:
        return IntPolynomial(), a
    r = list(a.coeffs)
    q = [0] * (a.degree - db + 1)
    lb = b.lc
    bc = b.coeffs
    for k in range(a.degree - db, -1, -1):
        lead = r[k + db]
        q = [x * lb for x in q]
        q[k] += lead
        r = [x * lb for x in r]
        for i, y in enumerate(bc):
            r[k + i] -= lead * y
        r.pop()
    return IntPolynomial(q), IntPolynomial(r)


def exact_div(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Quotient a / b, raising ArithmeticError if b does not divide a over Z."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    r = list(a.coeffs)
    db = b.degree
    if len(r) - 1 < db:
        if r:
            raise ArithmeticError("inexact polynomial division")
        return IntPolynomial()
    q = [0] * (len(r) - db)
    lb = b.lc
    for k in range(len(r) - 1 - db, -1, -1):
        lead = r[k + db]
        if lead % lb:
            raise ArithmeticError("inexact polynomial division")
        t = lead // lb
        q[k] = t
        for i, y in enumerate(b.coeffs):
            r[k + i] -= t * y
    if any(r):
        raise ArithmeticError("inexact polynomial division")
    return IntPolynomial(q)


def poly_gcd(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """Primitive gcd with positive leading coefficient (primitive PRS)."""
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    a, b = p.primitive(), q.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        _, r = pseudo_divmod(a, b)
        a, b = b, r.primitive()
    return a.primitive()


def squarefree_decompose(p: IntPolynomial) -> list[tuple[IntPolynomial, int]]:
    """Yun's algorithm. Returns nonconstant (factor, multiplicity) pairs with
    ``prod factor**mult == p.primitive()``, factors primitive and coprime."""
    if p.is_zero():
        raise ValueError("square-free decomposition of the zero polynomial")
    f = p.primitive()
    if f.degree <= 0:
        return []
    fp = f.derivative()
    a = poly_gcd(f, fp)
    # b and c are only ever divided by the same primitive gcd, which keeps
    # d = c - b' consistent over Z without rescaling.
    b = exact_div(f, a)
    c = exact_div(fp, a)
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        g = poly_gcd(b, d) if not d.is_zero() else b.primitive()
        if g.degree > 0:
            out.append((g, i))
        b = exact_div(b, g)
        c = exact_div(d, g)
        d = c - b.derivative()
        i += 1
    return out


# -- real roots -------------------------------------------------------------

@dataclass(frozen=True)
class RationalInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def intersect(self, other: RationalInterval) -> RationalInterval | None:
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        return RationalInterval(lo, hi) if lo <= hi else None

    def __str__(self):
        if self.lo == self.hi:
            return f"[{self.lo}]"
        return f"[{self.lo}, {self.hi}]"


@dataclass(frozen=True)
class IsolatedRoot:
    interval: RationalInterval
    multiplicity: int

    @property
    def exact(self) -> bool:
        return self.interval.lo == self.interval.hi

    def approx(self) -> float:
        return float(self.interval.mid)


def sturm_sequence(f: IntPolynomial) -> list[IntPolynomial]:
    """Sturm chain of ``f`` with every member scaled by a positive constant."""
    seq = [f, f.derivative()]
    while seq[-1].degree > 0:
        a, b = seq[-2], seq[-1]
        _, r = pseudo_divmod(a, b)
        if b.lc < 0 and (a.degree - b.degree + 1) % 2:
            r = -r
        if r.is_zero():
            break
        r = -r
        g = r.content()
        seq.append(IntPolynomial(c // g for c in r.coeffs))
    return seq


def _frac_sign(p: IntPolynomial, x: Fraction) -> int:
    return p.sign_at(x.numerator, x.denominator)


def sign_variations(seq: list[IntPolynomial], x: Fraction) -> int:
    num, den = x.numerator, x.denominator
    v = 0
    last = 0
    for p in seq:
        s = p.sign_at(num, den)
        if s:
            if last and s != last:
                v += 1
            last = s
    return v


def cauchy_bound(p: IntPolynomial) -> int:
    """A power of two strictly above every |root| of ``p``."""
    lc = abs(p.lc)
    m = max((abs(c) for c in p.coeffs[:-1]), default=0)
    bound = 1 + -(-m // lc)
    b = 1
    while b <= bound:
        b <<= 1
    return b


class RootIsolator:
    """Exact isolation of the real roots of a nonzero integer polynomial.

    Works on the square-free part; multiplicities come from the square-free
    decomposition. Intervals returned are closed and pairwise disjoint, and an
    endpoint is a root only when the interval has width zero.
    """

    def __init__(self, p: IntPolynomial):
        if p.is_zero():
            raise ValueError("root isolation of the zero polynomial")
        self.poly = p
        self.factors = squarefree_decompose(p)
        sqf = IntPolynomial((1,))
        for f, _ in self.factors:
            sqf = sqf * f
        self.sqf = sqf
        self.sturm = sturm_sequence(sqf) if sqf.degree > 0 else [sqf]
        self._fsturm = [sturm_sequence(f) for f, _ in self.factors]
        self.bound = cauchy_bound(sqf) if sqf.degree > 0 else 1

    def count(self, lo: Fraction, hi: Fraction) -> int:
        """Distinct real roots in the half-open interval (lo, hi]."""
        if self.sqf.degree <= 0:
            return 0
        return sign_variations(self.sturm, lo) - sign_variations(self.sturm, hi)

    def count_closed(self, iv: RationalInterval) -> int:
        c = self.count(iv.lo, iv.hi) if iv.lo < iv.hi else 0
        return c + (_frac_sign(self.sqf, iv.lo) == 0)

    def is_root(self, x: Fraction) -> bool:
        return _frac_sign(self.sqf, x) == 0

    def distinct_count(self) -> int:
        return self.count(Fraction(-self.bound), Fraction(self.bound))

    def multiplicity_of(self, iv: RationalInterval) -> int:
        for (f, k), seq in zip(self.factors, self._fsturm):
            c = sign_variations(seq, iv.lo) - sign_variations(seq, iv.hi)
            c += _frac_sign(f, iv.lo) == 0
            if c:
                return k
        raise ValueError(f"no root of {self.poly.pretty()} in {iv}")

    def _settle(self, lo: Fraction, hi: Fraction, max_width: Fraction) -> RationalInterval:
        # (lo, hi] holds exactly one root; shrink until the closed interval is
        # a certificate of width <= max_width with no root at an endpoint.
        while True:
            if self.is_root(hi):
                return RationalInterval(hi, hi)
            if hi - lo <= max_width and not self.is_root(lo):
                return RationalInterval(lo, hi)
            mid = (lo + hi) / 2
            if self.is_root(mid):
                return RationalInterval(mid, mid)
            if self.count(lo, mid):
                hi = mid
            else:
                lo = mid

    def isolate(self, max_width: Fraction = DEFAULT_MAX_WIDTH) -> list[IsolatedRoot]:
        """Isolated roots in ascending order."""
        max_width = Fraction(max_width)
        if max_width < 0:
            raise ValueError("max_width must be nonnegative")
        if self.sqf.degree <= 0:
            return []
        found: list[RationalInterval] = []
        stack = [(Fraction(-self.bound), Fraction(self.bound))]
        while stack:
            lo, hi = stack.pop()
            c = self.count(lo, hi)
            if c == 0:
                continue
            if c == 1:
                found.append(self._settle(lo, hi, max_width))
                continue
            mid = (lo + hi) / 2
            stack.append((mid, hi))
            stack.append((lo, mid))
        found.sort(key=lambda iv: iv.lo)
        roots = [IsolatedRoot(iv, self.multiplicity_of(iv)) for iv in found]
        # neighbouring pieces may touch at a shared non-root endpoint
        for i in range(len(roots) - 1):
            while roots[i].interval.hi >= roots[i + 1].interval.lo:
                roots[i] = self.refine(roots[i], roots[i].interval.width / 2)
                roots[i + 1] = self.refine(roots[i + 1], roots[i + 1].interval.width / 2)
        return roots

    def refine(self, root: IsolatedRoot, max_width: Fraction) -> IsolatedRoot:
        iv = root.interval
        if iv.width <= max_width:
            return root
        lo, hi = iv.lo, iv.hi
        while hi - lo > max_width:
            mid = (lo + hi) / 2
            if self.is_root(mid):
                return IsolatedRoot(RationalInterval(mid, mid), root.multiplicity)
            if self.count(lo, mid):
                hi = mid
            else:
                lo = mid
        return IsolatedRoot(RationalInterval(lo, hi), root.multiplicity)


def isolate_real_roots(p: IntPolynomial,
                       max_width: Fraction = DEFAULT_MAX_WIDTH) -> list[IsolatedRoot]:
    return RootIsolator(p).isolate(max_width)
