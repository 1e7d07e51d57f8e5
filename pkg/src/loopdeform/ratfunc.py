"""Exact arithmetic in the field Q(q, eta, zeta, u, v, w).

Polynomials are stored sparsely as {exponent-tuple: Fraction} with terms kept
in graded-lexicographic order, so equal polynomials have identical storage.
Rational functions are kept fully reduced (gcd cancelled) with the
denominator's leading coefficient normalized to 1, which makes equality
structural.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import PoleError

VARIABLES = ("q", "eta", "zeta", "u", "v", "w")
NVARS = len(VARIABLES)
VAR_INDEX = {name: i for i, name in enumerate(VARIABLES)}
_ZEXP = (0,) * NVARS


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError("coefficients must be Fraction or int, got %r" % (c,))


def _grlex_key(exp):
    return (sum(exp), exp)


class MultiPoly:
    """Multivariate polynomial over Q in the fixed variable tuple VARIABLES."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for exp, c in sorted(terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True):
                c = _as_fraction(c)
                if c:
                    clean[tuple(exp)] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def const(cls, c):
        c = _as_fraction(c)
        return cls({_ZEXP: c}) if c else cls()

    @classmethod
    def one(cls):
        return cls.const(1)

    @classmethod
    def var(cls, name, power=1):
        i = VAR_INDEX[name]
        exp = [0] * NVARS
        exp[i] = power
        return cls({tuple(exp): Fraction(1)})

    @classmethod
    def monomial(cls, exp, c):
        return cls({tuple(exp): _as_fraction(c)})

    # -- predicates / views ------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_const(self):
        return not self.terms or (len(self.terms) == 1 and _ZEXP in self.terms)

    def const_value(self) -> Fraction:
        if not self.is_const():
            raise ValueError("polynomial is not constant: %s" % self)
        return self.terms.get(_ZEXP, Fraction(0))

    def vars_used(self):
        used = set()
        for exp in self.terms:
            for i, e in enumerate(exp):
                if e:
                    used.add(i)
        return used

    def degree(self, i):
        """Largest exponent of variable i (0 for the zero polynomial)."""
        return max((exp[i] for exp in self.terms), default=0)

    def min_degree(self, i):
        return min((exp[i] for exp in self.terms), default=0)

    def leading(self):
        """(exponent, coefficient) of the graded-lex leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exp = next(iter(self.terms))  # storage is grlex-descending
        return exp, self.terms[exp]

    # -- arithmetic ---------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, MultiPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __neg__(self):
        return MultiPoly({e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly(out)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MultiPoly(out)

    __rmul__ = __mul__

    def scale(self, c):
        c = _as_fraction(c)
        if not c:
            return MultiPoly()
        return MultiPoly({e: k * c for e, k in self.terms.items()})

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a MultiPoly; use RatFunc")
        out = MultiPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- substitution -------------------------------------------------------

    def eval_var(self, i, value: Fraction):
        """Substitute a rational value for variable i."""
        value = _as_fraction(value)
        out = {}
        for exp, c in self.terms.items():
            c2 = c * value ** exp[i]
            e = exp[:i] + (0,) + exp[i + 1 :]
            if c2:
                s = out.get(e, Fraction(0)) + c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MultiPoly(out)

    def map_vars(self, mapping):
        """Simultaneously send variable i to variable mapping[i] (exponents add)."""
        out = {}
        for exp, c in self.terms.items():
            e = [0] * NVARS
            for i, p in enumerate(exp):
                e[mapping.get(i, i)] += p
            e = tuple(e)
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly(out)

    def shift_var(self, i):
        """Substitute x_i -> x_i + 1 (exact binomial expansion)."""
        out = MultiPoly()
        for exp, c in self.terms.items():
            n = exp[i]
            base = exp[:i] + (0,) + exp[i + 1 :]
            # (x+1)^n = sum binom(n,m) x^m
            binom = 1
            row = {}
            for m in range(n + 1):
                e = base[:i] + (m,) + base[i + 1 :]
                row[e] = row.get(e, Fraction(0)) + c * binom
                binom = binom * (n - m) // (m + 1)
            out = out + MultiPoly(row)
        return out

    def to_univariate(self, i):
        """View as a polynomial in variable i: {degree: MultiPoly in the rest}."""
        out = {}
        for exp, c in self.terms.items():
            d = exp[i]
            e = exp[:i] + (0,) + exp[i + 1 :]
            out.setdefault(d, {})[e] = c
        return {d: MultiPoly(t) for d, t in out.items()}

    @staticmethod
    def from_univariate(i, coeffs):
        out = {}
        for d, p in coeffs.items():
            for exp, c in p.terms.items():
                e = exp[:i] + (exp[i] + d,) + exp[i + 1 :]
                out[e] = out.get(e, Fraction(0)) + c
        return MultiPoly(out)

    # -- printing -----------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for exp, c in self.terms.items():
            neg = c < 0
            ac = -c if neg else c
            factors = []
            if ac != 1 or not any(exp):
                factors.append(_coeff_str(ac))
            for i, e in enumerate(exp):
                if e == 1:
                    factors.append(VARIABLES[i])
                elif e:
                    factors.append("%s^%d" % (VARIABLES[i], e))
            term = "*".join(factors)
            if not pieces:
                pieces.append(("-" if neg else "") + term)
            else:
                pieces.append(("- " if neg else "+ ") + term)
        return " ".join(pieces)

    def __repr__(self):
        return "MultiPoly(%s)" % self


def _coeff_str(c: Fraction):
    return str(c.numerator) if c.denominator == 1 else "(%d/%d)" % (c.numerator, c.denominator)


# -- gcd machinery ----------------------------------------------------------


def _monic(p: MultiPoly) -> MultiPoly:
    if p.is_zero():
        return p
    _, lc = p.leading()
    return p.scale(Fraction(1) / lc)


def divexact(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Exact division f/g; raises ValueError if g does not divide f."""
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    q = {}
    r = f
    gexp, gc = g.leading()
    while not r.is_zero():
        rexp, rc = r.leading()
        diff = tuple(a - b for a, b in zip(rexp, gexp))
        if any(d < 0 for d in diff):
            raise ValueError("non-exact polynomial division")
        c = rc / gc
        q[diff] = c
        r = r - MultiPoly.monomial(diff, c) * g
    return MultiPoly(q)


def _prem(f: MultiPoly, g: MultiPoly, i) -> MultiPoly:
    """Pseudo-remainder of f by g with respect to variable i."""
    fu = f.to_univariate(i)
    gu = g.to_univariate(i)
    n = max(gu)
    lg = gu[n]
    r = dict(fu)
    while r and max(r) >= n:
        m = max(r)
        lr = r[m]
        # r := lg*r - lr * g * x^(m-n)
        new = {}
        for d, p in r.items():
            new[d] = lg * p
        for d, p in gu.items():
            dd = d + m - n
            new[dd] = new.get(dd, MultiPoly()) - lr * p
        r = {d: p for d, p in new.items() if not p.is_zero()}
    return MultiPoly.from_univariate(i, r) if r else MultiPoly()


def _content_in(f: MultiPoly, i) -> MultiPoly:
    coeffs = list(f.to_univariate(i).values())
    g = coeffs[0]
    for p in coeffs[1:]:
        g = mp_gcd(g, p)
        if g.is_const() and not g.is_zero():
            break
    return _monic(g)


def mp_gcd(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Gcd over Q[VARIABLES], normalized to leading coefficient 1."""
    if f.is_zero():
        return _monic(g)
    if g.is_zero():
        return _monic(f)
    if f.is_const() or g.is_const():
        return MultiPoly.one()
    if f.terms == g.terms:
        return _monic(f)
    if len(f.terms) == 1 or len(g.terms) == 1:
        # a monomial is involved: the gcd is the elementwise-min monomial
        # over every exponent occurring in either polynomial
        exps = None
        for p in (f, g):
            for e in p.terms:
                exps = e if exps is None else tuple(map(min, exps, e))
        return MultiPoly({exps: Fraction(1)})
    used = f.vars_used() | g.vars_used()
    i = min(used)
    if f.degree(i) == 0 or g.degree(i) == 0:
        # variable i occurs in only one of them: gcd lives in the coefficients
        fc = _content_in(f, i) if f.degree(i) else f
        gc = _content_in(g, i) if g.degree(i) else g
        return mp_gcd(fc, gc)
    fc = _content_in(f, i)
    gc = _content_in(g, i)
    c = mp_gcd(fc, gc)
    fp = divexact(f, fc)
    gp = divexact(g, gc)
    if fp.degree(i) < gp.degree(i):
        fp, gp = gp, fp
    while True:
        r = _prem(fp, gp, i)
        if r.is_zero():
            h = gp
            break
        fp = gp
        gp = divexact(r, _content_in(r, i))
        if gp.degree(i) == 0:
            h = MultiPoly.one()
            break
    return _monic(c * _monic(h))


# -- rational functions ------------------------------------------------------


class RatFunc:
    """Reduced fraction of MultiPolys; structural equality is field equality."""

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly = None):
        if den is None:
            den = MultiPoly.one()
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num = MultiPoly()
            self.den = MultiPoly.one()
            return
        if den.is_const():
            self.num = num.scale(Fraction(1) / den.const_value())
            self.den = MultiPoly.one()
            return
        g = mp_gcd(num, den)
        if not (g.is_const() and g.const_value() == 1):
            num = divexact(num, g)
            den = divexact(den, g)
        _, lc = den.leading()
        if lc != 1:
            inv = Fraction(1) / lc
            num = num.scale(inv)
            den = den.scale(inv)
        self.num = num
        self.den = den

    # -- constructors -------------------------------------------------------

    @classmethod
    def const(cls, c):
        return cls(MultiPoly.const(c))

    @classmethod
    def zero(cls):
        return cls(MultiPoly())

    @classmethod
    def one(cls):
        return cls(MultiPoly.one())

    @classmethod
    def var(cls, name, power=1):
        if power >= 0:
            return cls(MultiPoly.var(name, power))
        return cls(MultiPoly.one(), MultiPoly.var(name, -power))

    # -- predicates ----------------------------------------------------------

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_const(self):
        return self.num.is_const() and self.den.is_const()

    def const_value(self) -> Fraction:
        return self.num.const_value() / self.den.const_value()

    def vars_used(self):
        return self.num.vars_used() | self.den.vars_used()

    # -- arithmetic ----------------------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self):
        out = RatFunc.__new__(RatFunc)
        out.num = -self.num
        out.den = self.den
        return out

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        d1, d2 = self.den, other.den
        if d1 == d2:
            return RatFunc(self.num + other.num, d1)
        g = mp_gcd(d1, d2)
        if g.is_const():
            # coprime reduced denominators: the sum is already reduced
            out = RatFunc.__new__(RatFunc)
            out.num = self.num * d2 + other.num * d1
            out.den = d1 * d2
            if out.num.is_zero():
                out.den = MultiPoly.one()
            return out
        d2g = divexact(d2, g)
        t = self.num * d2g + other.num * divexact(d1, g)
        # only the shared factor can still cancel against the numerator
        h = mp_gcd(t, g)
        if not h.is_const():
            return RatFunc(divexact(t, h), divexact(d1, h) * d2g)
        out = RatFunc.__new__(RatFunc)
        out.num = t
        out.den = d1 * d2g
        if out.num.is_zero():
            out.den = MultiPoly.one()
        return out

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return RatFunc.zero()
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if d1.is_const() and d2.is_const():
            out = RatFunc.__new__(RatFunc)
            out.num = n1 * n2
            out.den = MultiPoly.one()
            return out
        # cross-cancel: with both inputs reduced, the product of the
        # cross-reduced pieces is reduced
        g1 = mp_gcd(n1, d2)
        if not g1.is_const():
            n1 = divexact(n1, g1)
            d2 = divexact(d2, g1)
        g2 = mp_gcd(n2, d1)
        if not g2.is_const():
            n2 = divexact(n2, g2)
            d1 = divexact(d1, g2)
        out = RatFunc.__new__(RatFunc)
        out.num = n1 * n2
        out.den = d1 * d2
        return out

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __pow__(self, n):
        if n < 0:
            return RatFunc.one() / self ** (-n)
        out = RatFunc.one()
        for _ in range(n):
            out = out * self
        return out

    # -- substitution and limits ----------------------------------------------

    def eval_var(self, name, value):
        """Substitute a rational value; PoleError if the reduced denominator dies."""
        if self.is_zero():
            return RatFunc.zero()
        i = VAR_INDEX[name]
        value = _as_fraction(value)
        den = self.den.eval_var(i, value)
        if den.is_zero():
            raise PoleError("pole of %s at %s=%s" % (self, name, value))
        return RatFunc(self.num.eval_var(i, value), den)

    def map_vars(self, name_mapping):
        """Simultaneous variable renaming, e.g. {'u': 'v', 'v': 'w'}."""
        mapping = {VAR_INDEX[a]: VAR_INDEX[b] for a, b in name_mapping.items()}
        den = self.den.map_vars(mapping)
        if den.is_zero():
            raise ZeroDivisionError("renaming collapsed the denominator")
        return RatFunc(self.num.map_vars(mapping), den)

    def var_degree_range(self, name):
        """(min, max) net exponent of a variable across monomials.

        The denominator must be homogeneous in the variable (a single power
        times a part free of it); its exponent counts negatively.  Used for
        grading checks on deformation-parameter coefficients."""
        i = VAR_INDEX[name]
        if self.is_zero():
            return (0, 0)
        dmin, dmax = self.den.min_degree(i), self.den.degree(i)
        if dmin != dmax:
            raise ValueError("denominator is not homogeneous in %s" % name)
        return (self.num.min_degree(i) - dmin, self.num.degree(i) - dmin)

    def extract_power(self, name, k):
        """Divide by name^k exactly; ValueError if the result still involves name."""
        out = self / RatFunc.var(name, k)
        if VAR_INDEX[name] in out.vars_used():
            raise ValueError("%s is not exactly %s^%d * (free part)" % (self, name, k))
        return out

    def __str__(self):
        if self.den.is_const() and self.den.const_value() == 1:
            return _paren_poly(self.num)
        return "(%s)/(%s)" % (self.num, self.den)

    def __repr__(self):
        return "RatFunc(%s)" % self


def _paren_poly(p: MultiPoly):
    s = str(p)
    return "(%s)" % s if (" " in s) else s


def _coerce(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, Fraction)):
        return RatFunc.const(x)
    if isinstance(x, MultiPoly):
        return RatFunc(x)
    return NotImplemented


def rf(text_or_value) -> RatFunc:
    """Convenience constructor: rf('q'), rf(3), rf('(1-q^2)/(q-q^-1)')."""
    if isinstance(text_or_value, str):
        return parse_ratfunc(text_or_value)
    return _coerce(text_or_value)


def q_power(n: int) -> RatFunc:
    return RatFunc.var("q", n)


# -- limits and series -------------------------------------------------------


def rf_limit(f: RatFunc, name: str, value) -> RatFunc:
    """Exact limit of f as name -> value (a rational number)."""
    return f.eval_var(name, value)


def laurent_coeffs(f: RatFunc, name: str, point, upto: int):
    """Laurent expansion of f at name=point up to order `upto`.

    Returns (ord0, coeffs) with f = sum_{m>=ord0} coeffs[m-ord0]*(name-point)^m
    + O((name-point)^(upto+1)); coefficients are RatFuncs in the remaining
    variables.  ord0 > upto is reported as (upto+1, []).
    """
    if f.is_zero():
        return (upto + 1, [])
    i = VAR_INDEX[name]
    point = _as_fraction(point)
    num, den = f.num, f.den
    if point:
        # substitute name -> name + point, exactly
        num = _shift_to(num, i, point)
        den = _shift_to(den, i, point)
    nu = num.to_univariate(i)
    du = den.to_univariate(i)
    vn, vd = min(nu), min(du)
    ord0 = vn - vd
    if ord0 > upto:
        return (upto + 1, [])
    d0 = RatFunc(du[vd])
    coeffs = []
    # series division: c_m = (N_{m} - sum_{j>=1} D_j c_{m-j}) / D_0
    for m in range(0, upto - ord0 + 1):
        acc = RatFunc(nu.get(vn + m, MultiPoly()))
        for j in range(1, m + 1):
            dj = du.get(vd + j)
            if dj is not None and m - j < len(coeffs):
                acc = acc - RatFunc(dj) * coeffs[m - j]
        coeffs.append(acc / d0)
    return (ord0, coeffs)


def _shift_to(p: MultiPoly, i: int, point: Fraction) -> MultiPoly:
    """Substitute x_i -> x_i + point (exact binomial expansion)."""
    out = MultiPoly()
    for exp, c in p.terms.items():
        n = exp[i]
        base = exp[:i] + (0,) + exp[i + 1 :]
        row = {}
        b = 1  # binom(n, m), updated incrementally
        for m in range(n + 1):
            cc = c * b * point ** (n - m)
            if cc:
                e = base[:i] + (m,) + base[i + 1 :]
                row[e] = row.get(e, Fraction(0)) + cc
            b = b * (n - m) // (m + 1)
        out = out + MultiPoly(row)
    return out


def rf_series_coeff(f: RatFunc, name: str, k: int) -> RatFunc:
    """Taylor coefficient of name^k at name=0; PoleError if den(0) vanishes."""
    i = VAR_INDEX[name]
    if f.den.min_degree(i) > 0 or RatFunc(f.den).eval_var(name, 0).is_zero():
        raise PoleError("reduced denominator of %s vanishes at %s=0" % (f, name))
    ord0, coeffs = laurent_coeffs(f, name, 0, k)
    if k < ord0 or k - ord0 >= len(coeffs):
        return RatFunc.zero()
    return coeffs[k - ord0]


# -- text format --------------------------------------------------------------


class _Tok:
    def __init__(self, text):
        self.toks = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                self.toks.append(("int", text[i:j]))
                i = j
            elif ch.isalpha() or ch == "_":
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                self.toks.append(("name", text[i:j]))
                i = j
            elif ch in "+-*/^()":
                self.toks.append((ch, ch))
                i += 1
            else:
                raise ValueError("bad character %r in %r" % (ch, text))
        self.pos = 0

    def peek(self):
        return self.toks[self.pos][0] if self.pos < len(self.toks) else None

    def next(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t


def parse_ratfunc(text: str) -> RatFunc:
    """Parse infix +-*/^ with integer (possibly negative) exponents."""
    tk = _Tok(text)
    out = _parse_expr(tk)
    if tk.peek() is not None:
        raise ValueError("trailing input in %r" % text)
    return out


def _parse_expr(tk):
    acc = _parse_term(tk)
    while tk.peek() in ("+", "-"):
        op = tk.next()[0]
        rhs = _parse_term(tk)
        acc = acc + rhs if op == "+" else acc - rhs
    return acc


def _parse_term(tk):
    acc = _parse_unary(tk)
    while tk.peek() in ("*", "/"):
        op = tk.next()[0]
        rhs = _parse_unary(tk)
        acc = acc * rhs if op == "*" else acc / rhs
    return acc


def _parse_unary(tk):
    if tk.peek() == "-":
        tk.next()
        return -_parse_unary(tk)
    return _parse_power(tk)


def _parse_power(tk):
    base = _parse_atom(tk)
    if tk.peek() == "^":
        tk.next()
        sign = 1
        if tk.peek() == "-":
            tk.next()
            sign = -1
        kind, val = tk.next()
        if kind != "int":
            raise ValueError("exponent must be an integer")
        return base ** (sign * int(val))
    return base


def _parse_atom(tk):
    kind, val = tk.next()
    if kind == "int":
        return RatFunc.const(int(val))
    if kind == "name":
        if val not in VAR_INDEX:
            raise ValueError("unknown variable %r" % val)
        return RatFunc.var(val)
    if kind == "(":
        inner = _parse_expr(tk)
        if tk.next()[0] != ")":
            raise ValueError("missing closing parenthesis")
        return inner
    raise ValueError("unexpected token %r" % val)
