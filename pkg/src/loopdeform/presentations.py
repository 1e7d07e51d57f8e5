"""Presentations of the supported algebras as oriented rewriting systems.

Supported families:

* ``uq``          -- the standard one-parameter quantum group on a finite
                     Cartan matrix (rank 1 and 2 presets).
* ``drinfeldian`` -- the two-parameter deformation: the quantum group extended
                     by a loop-raising generator ``xi`` of loop degree 1 and a
                     central group-like generator ``kd+``, with cross relations
                     whose right-hand sides carry the second parameter ``eta``.
* ``yangian``     -- the degenerate (q -> 1) algebra with a Cartan generator
                     ``ha1`` and the same loop generator; relations carry
                     ``eta`` only.
* ``classical``   -- plain enveloping-algebra presentations (used internally
                     for representation checks and as the target of limits).

Every relation is stored as an oriented, monic rewrite rule: a leading word
(maximal in the term order: total loop degree, then length, then letter ids
lexicographically) together with the lower-order replacement.  The rule set of
each deformed family is constructed mechanically: cross relations are built as
(iterated, weight-graded) q-brackets of a shifted loop generator, reduced
against the already-installed rules, and only then oriented.  This is what
keeps the stored coefficients free of spurious poles at q = 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    DegreeBoundExceeded,
    InvalidCartanError,
    PoleError,
    UnsupportedAlgebraError,
)
from .freealg import (
    Alphabet,
    GenSymbol,
    NCPoly,
    TensorPoly,
    ad_q_power,
    commutator,
    q_commutator,
)
from .ratfunc import RatFunc, laurent_coeffs, q_power, rf, rf_limit

DEFAULT_DEGREE_BOUND = 12


# ---------------------------------------------------------------------------
# Cartan data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CartanData:
    """A symmetrizable Cartan matrix plus the highest-root vector."""

    name: str
    matrix: tuple
    symmetrizers: tuple
    labels: tuple
    highest_root: tuple

    def __post_init__(self):
        n = len(self.matrix)
        if n == 0 or any(len(row) != n for row in self.matrix):
            raise InvalidCartanError("matrix must be square and non-empty")
        if len(self.symmetrizers) != n or len(self.labels) != n or len(self.highest_root) != n:
            raise InvalidCartanError("rank mismatch between matrix and metadata")
        for i in range(n):
            if self.matrix[i][i] != 2:
                raise InvalidCartanError("diagonal entries must equal 2")
            for j in range(n):
                if i != j and self.matrix[i][j] > 0:
                    raise InvalidCartanError("off-diagonal entries must be <= 0")
                if self.symmetrizers[i] * self.matrix[i][j] != self.symmetrizers[j] * self.matrix[j][i]:
                    raise InvalidCartanError("matrix is not symmetrizable by the given weights")
        if any(x < 0 for x in self.highest_root):
            raise InvalidCartanError("highest root must have non-negative coordinates")

    @property
    def rank(self):
        return len(self.matrix)

    @property
    def pairing_matrix(self):
        """Symmetrized matrix B_ij = d_i a_ij."""
        return tuple(
            tuple(self.symmetrizers[i] * self.matrix[i][j] for j in range(self.rank))
            for i in range(self.rank)
        )

    def root_pairing(self, i, j):
        return self.pairing_matrix[i][j]

    def theta_pairing(self, i):
        """(alpha_i, theta) for the highest root theta."""
        return sum(self.pairing_matrix[i][j] * self.highest_root[j] for j in range(self.rank))

    def loop_serre_order_on_e(self, i):
        """Number of e_i brackets annihilating the loop generator."""
        return 1 + 2 * self.theta_pairing(i) // self.pairing_matrix[i][i]

    def loop_serre_order_on_xi(self, i):
        """Number of loop-generator brackets annihilating e_i."""
        theta_norm = sum(
            self.highest_root[i] * self.pairing_matrix[i][j] * self.highest_root[j]
            for i in range(self.rank)
            for j in range(self.rank)
        )
        return 1 + 2 * self.theta_pairing(i) // theta_norm


_PRESETS = {
    "sl2": CartanData("sl2", ((2,),), (1,), ("a1",), (1,)),
    "sl3": CartanData("sl3", ((2, -1), (-1, 2)), (1, 1), ("a1", "a2"), (1, 1)),
}


def cartan_data(name) -> CartanData:
    try:
        return _PRESETS[name]
    except KeyError:
        raise UnsupportedAlgebraError(
            "no Cartan preset %r (have: %s)" % (name, ", ".join(sorted(_PRESETS)))
        ) from None


# ---------------------------------------------------------------------------
# relations and presentations
# ---------------------------------------------------------------------------


@dataclass
class Relation:
    """Oriented monic rewrite rule lead -> repl, with structural metadata."""

    label: str
    lead: tuple
    repl: NCPoly
    kind: str
    meta: dict = field(default_factory=dict)

    def zero_form(self, alphabet) -> NCPoly:
        return NCPoly(alphabet, {self.lead: rf(1)}) - self.repl


class Presentation:
    """An algebra given by generators and oriented rewrite rules."""

    #: human-readable description of the monomial order used by normal_form
    term_order = "loop degree, then word length, then leftmost generator id"

    def __init__(self, name, family, cartan, alphabet, relations=None,
                 degree_bound=DEFAULT_DEGREE_BOUND, params=(),
                 shift_element=None):
        self.name = name
        self.family = family
        self.cartan = cartan
        self.alphabet = alphabet
        self.relations = list(relations or [])
        self.degree_bound = degree_bound
        self.params = tuple(params)
        #: for loop deformations: the weight-homogeneous word whose a-multiple
        #: is subtracted from the loop generator before rule orientation
        self.shift_element = shift_element
        # single-word normal forms memoized against the current rule set
        self._word_nf = {}
        self._rules_version = 0
        self._word_nf_version = 0

    # -- term order ----------------------------------------------------------

    def word_key(self, word):
        return (self.alphabet.word_loop_degree(word), len(word), word)

    def leading_term(self, x: NCPoly):
        if x.is_zero():
            raise ValueError("zero element has no leading term")
        w = max(x.terms, key=self.word_key)
        return w, x.terms[w]

    # -- rewriting -----------------------------------------------------------

    def _first_occurrence(self, word):
        """(relation, position) for the first rule (in priority order) that
        matches a subword, at its leftmost position; None if irreducible."""
        n = len(word)
        for rel in self.relations:
            lead = rel.lead
            m = len(lead)
            if m > n:
                continue
            for pos in range(n - m + 1):
                if word[pos : pos + m] == lead:
                    return rel, pos
        return None

    def normal_form(self, x: NCPoly, bound=None) -> NCPoly:
        """Rewrite x until no rule applies.

        Strategy: repeatedly pick the term-order-highest reducible word and
        rewrite its leftmost highest-priority occurrence.  Every replacement
        word is strictly smaller, so this terminates; the guard raises
        DegreeBoundExceeded if intermediate words outgrow the bound.
        """
        bound = self.degree_bound if bound is None else bound
        alphabet = self.alphabet
        work = x
        irreducible = set()
        while True:
            best = None
            best_key = None
            for w in work.terms:
                if w in irreducible:
                    continue
                if len(w) > bound:
                    raise DegreeBoundExceeded(
                        "word of length %d exceeds bound %d during rewriting"
                        % (len(w), bound)
                    )
                k = self.word_key(w)
                if best_key is None or k > best_key:
                    best, best_key = w, k
            if best is None:
                return work
            occ = self._first_occurrence(best)
            if occ is None:
                irreducible.add(best)
                continue
            rel, pos = occ
            c = work.terms[best]
            prefix = NCPoly(alphabet, {best[:pos]: rf(1)})
            suffix = NCPoly(alphabet, {best[pos + len(rel.lead):]: rf(1)})
            replaced = prefix * rel.repl * suffix
            work = work - NCPoly(alphabet, {best: c}) + c * replaced

    def word_normal_form(self, word, bound=None):
        """Normal form of a single word, memoized (default bound only).

        The memo is keyed to the rule set via _rules_version; code that
        mutates .relations directly (rather than through
        add_rule_from_zero_form) must bump that counter."""
        if bound is not None and bound != self.degree_bound:
            return self.normal_form(
                NCPoly(self.alphabet, {word: rf(1)}), bound=bound)
        if self._word_nf_version != self._rules_version:
            self._word_nf.clear()
            self._word_nf_version = self._rules_version
        hit = self._word_nf.get(word)
        if hit is None:
            hit = self.normal_form(NCPoly(self.alphabet, {word: rf(1)}))
            self._word_nf[word] = hit
        return hit

    def normal_form_tensor(self, t: TensorPoly, bound=None) -> TensorPoly:
        """Slotwise normal form of a tensor element."""
        out = t
        for i in range(t.arity):
            out = out.map_slot(i, lambda w: self.word_normal_form(w, bound))
        return out

    def is_zero_mod(self, x: NCPoly, reps=(), bound=None) -> str:
        """'zero' / 'nonzero' / 'unknown' for x in the presented algebra.

        'zero' means the rewrite system reduces x to 0 (a proof, since every
        rule is a consequence of the relations).  A nonzero normal form is
        *not* a disproof -- confluence of the rule system is not established
        -- so 'nonzero' is only returned when a supplied representation
        evaluates x to a nonzero matrix; otherwise the verdict is 'unknown'.
        Each rep must expose evaluate(NCPoly) -> matrix with .is_zero()."""
        try:
            nf = self.normal_form(x, bound=bound)
        except DegreeBoundExceeded:
            nf = None
        if nf is not None and nf.is_zero():
            return "zero"
        for rep in reps:
            if not rep.evaluate(x).is_zero():
                return "nonzero"
        return "unknown"

    # -- construction helpers ---------------------------------------------------

    def gen(self, name) -> NCPoly:
        return NCPoly.gen(self.alphabet, name)

    def unit(self) -> NCPoly:
        return NCPoly.unit(self.alphabet)

    def add_rule_from_zero_form(self, z: NCPoly, label, kind, meta=None):
        """Reduce z against the installed rules, orient monically, install.

        Returns the added Relation, or None when z reduces to zero (the
        relation is implied by earlier ones)."""
        z = self.normal_form(z)
        if z.is_zero():
            return None
        lead, c = self.leading_term(z)
        repl = -(z - NCPoly(self.alphabet, {lead: c})).scale(rf(1) / c)
        rel = Relation(label, lead, repl, kind, dict(meta or {}))
        self.relations.append(rel)
        self._rules_version += 1
        return rel

    def relation(self, label) -> Relation:
        for rel in self.relations:
            if rel.label == label:
                return rel
        raise KeyError(label)

    def self_reduction(self):
        """[(label, residual NCPoly)] of each relation's zero form reduced by
        the full rule set; all residuals must vanish in a coherent system."""
        out = []
        for rel in self.relations:
            out.append((rel.label, self.normal_form(rel.zero_form(self.alphabet))))
        return out

    def __repr__(self):
        return "Presentation(%s: %d generators, %d relations)" % (
            self.name,
            len(self.alphabet),
            len(self.relations),
        )


# ---------------------------------------------------------------------------
# alphabets
# ---------------------------------------------------------------------------


def _basis_weight(rank, i, value=1):
    w = [0] * rank
    w[i] = value
    return tuple(w)


def _finite_symbols(cd: CartanData):
    rank = cd.rank
    syms = []
    for i in range(rank):  # lowering letters first
        syms.append(GenSymbol("e-%s" % cd.labels[i], _basis_weight(rank, i, -1)))
    for i in range(rank):
        syms.append(GenSymbol("e+%s" % cd.labels[i], _basis_weight(rank, i, 1)))
    return syms


def _k_symbols(cd: CartanData):
    # each letter sits next to its inverse so that id-sorting brings inverse
    # pairs adjacent and the contraction k k^-1 = 1 can always fire
    rank = cd.rank
    zero = (0,) * rank
    syms = []
    for i in range(rank):
        syms.append(GenSymbol("k+%s" % cd.labels[i], zero, inv_name="k-%s" % cd.labels[i]))
        syms.append(GenSymbol("k-%s" % cd.labels[i], zero, inv_name="k+%s" % cd.labels[i]))
    return syms


def uq_alphabet(cd: CartanData) -> Alphabet:
    return Alphabet(_finite_symbols(cd) + _k_symbols(cd), cd.pairing_matrix)


def drinfeldian_alphabet(cd: CartanData) -> Alphabet:
    rank = cd.rank
    zero = (0,) * rank
    minus_theta = tuple(-x for x in cd.highest_root)
    syms = (
        _finite_symbols(cd)
        + [GenSymbol("xi", minus_theta, loop_degree=1)]
        + _k_symbols(cd)
        + [GenSymbol("kd+", zero, inv_name="kd-"), GenSymbol("kd-", zero, inv_name="kd+")]
    )
    return Alphabet(syms, cd.pairing_matrix)


def yangian_alphabet(cd: CartanData) -> Alphabet:
    rank = cd.rank
    zero = (0,) * rank
    minus_theta = tuple(-x for x in cd.highest_root)
    syms = (
        _finite_symbols(cd)
        + [GenSymbol("xi", minus_theta, loop_degree=1)]
        + [GenSymbol("h%s" % cd.labels[i], zero) for i in range(rank)]
    )
    return Alphabet(syms, cd.pairing_matrix)


def classical_alphabet(cd: CartanData) -> Alphabet:
    rank = cd.rank
    zero = (0,) * rank
    syms = _finite_symbols(cd) + [GenSymbol("h%s" % cd.labels[i], zero) for i in range(rank)]
    return Alphabet(syms, cd.pairing_matrix)


# ---------------------------------------------------------------------------
# shared rule installers
# ---------------------------------------------------------------------------


def _install_k_rules(p: Presentation, k_labels, conj_targets):
    """Commutation rules among group-like letters and conjugation rules
    k x k^-1 = q^(alpha_i, wt x) x for the listed target letters."""
    A = p.alphabet
    cd = p.cartan
    k_ids = [A.id_of(n) for n in k_labels]
    # sort group-like monomials: higher id hops left over lower id
    for a in k_ids:
        for b in k_ids:
            if a > b and A.inverse.get(a) != b:
                p.relations.append(
                    Relation(
                        "kk:%s,%s" % (A.name_of(a), A.name_of(b)),
                        (a, b),
                        NCPoly(A, {(b, a): rf(1)}),
                        "k_comm",
                        {"a": A.name_of(a), "b": A.name_of(b)},
                    )
                )
            elif a > b and A.inverse.get(a) == b:
                # adjacent inverse pairs contract inside NCPoly already, but a
                # reversed pair needs one swap to meet and cancel
                p.relations.append(
                    Relation(
                        "kk:%s,%s" % (A.name_of(a), A.name_of(b)),
                        (a, b),
                        NCPoly.unit(A),
                        "k_comm",
                        {"a": A.name_of(a), "b": A.name_of(b), "inverse_pair": True},
                    )
                )
    for kname in k_labels:
        sign = 1 if kname.startswith("k+") else -1
        root_label = kname[2:]
        i = cd.labels.index(root_label)
        kid = A.id_of(kname)
        for xname in conj_targets:
            xid = A.id_of(xname)
            c = sign * A.pairing(_basis_weight(cd.rank, i), A.symbols[xid].weight)
            p.relations.append(
                Relation(
                    "conj:%s,%s" % (kname, xname),
                    (kid, xid),
                    NCPoly(A, {(xid, kid): q_power(c)}),
                    "k_conj",
                    {"k": kname, "x": xname, "root": i, "sign": sign, "exponent": c},
                )
            )


def _install_ef_rules(p: Presentation):
    A = p.alphabet
    cd = p.cartan
    qq = rf("q") - q_power(-1)
    for i in range(cd.rank):
        for j in range(cd.rank):
            e = A.id_of("e+%s" % cd.labels[i])
            f = A.id_of("e-%s" % cd.labels[j])
            repl = NCPoly(A, {(f, e): rf(1)})
            if i == j:
                k = A.id_of("k+%s" % cd.labels[i])
                ki = A.id_of("k-%s" % cd.labels[i])
                repl = repl + NCPoly(A, {(k,): rf(1) / qq, (ki,): -rf(1) / qq})
            p.relations.append(
                Relation(
                    "cross:%s,%s" % (A.name_of(e), A.name_of(f)),
                    (e, f),
                    repl,
                    "ef_cartan",
                    {"i": i, "j": j},
                )
            )


def _install_serre_rules(p: Presentation):
    A = p.alphabet
    cd = p.cartan
    for sign in ("+", "-"):
        for i in range(cd.rank):
            for j in range(cd.rank):
                if i == j or cd.matrix[i][j] == 0:
                    continue
                n = 1 - cd.matrix[i][j]
                xi_ = NCPoly.gen(A, "e%s%s" % (sign, cd.labels[i]))
                xj_ = NCPoly.gen(A, "e%s%s" % (sign, cd.labels[j]))
                z = ad_q_power(xi_, xj_, n)
                p.add_rule_from_zero_form(
                    z,
                    "serre:e%s%s,e%s%s" % (sign, cd.labels[i], sign, cd.labels[j]),
                    "serre",
                    {"i": i, "j": j, "sign": sign, "order": n},
                )


def _install_central_rules(p: Presentation, central, others):
    A = p.alphabet
    for cname in central:
        cid = A.id_of(cname)
        for xname in others:
            xid = A.id_of(xname)
            if A.inverse.get(cid) == xid:
                continue
            p.relations.append(
                Relation(
                    "central:%s,%s" % (cname, xname),
                    (cid, xid),
                    NCPoly(A, {(xid, cid): rf(1)}),
                    "k_central",
                    {"k": cname, "x": xname},
                )
            )


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------


def build_uq(g) -> Presentation:
    """One-parameter quantum group on the finite Cartan preset g."""
    cd = cartan_data(g)
    A = uq_alphabet(cd)
    p = Presentation("uq-%s" % g, "uq", cd, A, params=("q",))
    k_labels = [s.name for s in A.symbols if s.name.startswith("k")]
    ef_labels = [s.name for s in A.symbols if s.name.startswith("e")]
    _install_k_rules(p, k_labels, ef_labels)
    _install_ef_rules(p)
    _install_serre_rules(p)
    return p


def lower_root_vector(p: Presentation, style="dressed") -> NCPoly:
    """A weight -theta element with nonzero classical limit, used to shift
    the loop generator.  Any such element is admissible; the builders default
    to the Cartan-dressed one.

    style="dressed": rank 1 gives f k; rank 2 gives [f_1, f_2]_q k_1 k_2.
    style="plain":   the same words without the trailing Cartan letters.

    The dressing is what makes the shifted loop generator compatible with the
    group-like letters: with the plain choice the cross-relation right-hand
    sides collapse to zero and the q -> 1 degeneration loses its eta terms
    (the "plain" builder variant exists so that collapse can be demonstrated).
    """
    cd = p.cartan
    if cd.rank == 1:
        bare = p.gen("e-a1")
        dress = p.gen("k+a1")
    elif cd.rank == 2:
        bare = q_commutator(p.gen("e-a1"), p.gen("e-a2"))
        dress = p.gen("k+a1") * p.gen("k+a2")
    else:
        raise UnsupportedAlgebraError("no lowest-root element for rank > 2")
    if style == "plain":
        return bare
    if style == "dressed":
        return bare * dress
    raise ValueError("unknown lowest-root style %r" % (style,))


def loop_shift_coefficient() -> RatFunc:
    """a = eta / (q - q^-1), the coefficient of the dressed shift."""
    return rf("eta") / (rf("q") - q_power(-1))


def shifted_loop_generator(p: Presentation, style="dressed") -> NCPoly:
    """xi - a * (lowest-root element); weight-homogeneous."""
    return p.gen("xi") - loop_shift_coefficient() * lower_root_vector(p, style)


def build_drinfeldian(g, shift_style="dressed") -> Presentation:
    """Two-parameter deformation on the loop extension of the preset g."""
    cd = cartan_data(g)
    A = drinfeldian_alphabet(cd)
    p = Presentation("drinfeldian-%s" % g, "drinfeldian", cd, A, params=("q", "eta"))
    k_labels = ["k+%s" % l for l in cd.labels] + ["k-%s" % l for l in cd.labels]
    ef_labels = [s.name for s in A.symbols if s.name.startswith("e")]
    conj_targets = ef_labels + ["xi"]
    _install_k_rules(p, k_labels, conj_targets)
    _install_central_rules(p, ["kd+", "kd-"],
                           [s.name for s in A.symbols if not s.name.startswith("kd")])
    _install_ef_rules(p)
    _install_serre_rules(p)

    p.shift_element = lower_root_vector(p, shift_style)
    xt = shifted_loop_generator(p, shift_style)
    # loop generator commutes with every lowering generator
    for i in range(cd.rank):
        f = p.gen("e-%s" % cd.labels[i])
        p.add_rule_from_zero_form(
            commutator(f, xt),
            "loop-comm:e-%s" % cd.labels[i],
            "mixed_comm",
            {"i": i},
        )
    # iterated raising brackets annihilate the shifted loop generator
    for i in range(cd.rank):
        n = cd.loop_serre_order_on_e(i)
        e = p.gen("e+%s" % cd.labels[i])
        p.add_rule_from_zero_form(
            ad_q_power(e, xt, n),
            "loop-serre-e:e+%s" % cd.labels[i],
            "mixed_serre_e",
            {"i": i, "order": n},
        )
    # iterated loop brackets annihilate each raising generator
    for i in range(cd.rank):
        if cd.theta_pairing(i) == 0:
            continue
        m = cd.loop_serre_order_on_xi(i)
        e = p.gen("e+%s" % cd.labels[i])
        p.add_rule_from_zero_form(
            ad_q_power(xt, e, m),
            "loop-serre-xi:e+%s" % cd.labels[i],
            "mixed_serre_xi",
            {"i": i, "order": m},
        )
    return p


def build_yangian_sl2() -> Presentation:
    """The eta-deformed degeneration in rank 1, built directly."""
    cd = cartan_data("sl2")
    A = yangian_alphabet(cd)
    p = Presentation("yangian-sl2", "yangian", cd, A, params=("eta",))
    h, e, f, xi_ = p.gen("ha1"), p.gen("e+a1"), p.gen("e-a1"), p.gen("xi")
    eta = rf("eta")
    _install_h_conj(p, "ha1", 0)
    p.add_rule_from_zero_form(commutator(e, f) - h, "cross:e+a1,e-a1",
                              "classical_ef", {"i": 0, "j": 0})
    p.add_rule_from_zero_form(commutator(f, xi_) - eta * f * f,
                              "loop-comm:e-a1", "mixed_comm", {"i": 0})
    ad3 = commutator(e, commutator(e, commutator(e, xi_)))
    p.add_rule_from_zero_form(ad3 - 6 * eta * e * e,
                              "loop-serre-e:e+a1", "mixed_serre_e", {"i": 0, "order": 3})
    ad3x = commutator(commutator(commutator(e, xi_), xi_), xi_)
    p.add_rule_from_zero_form(ad3x - 6 * eta * xi_ * xi_,
                              "loop-serre-xi:e+a1", "mixed_serre_xi", {"i": 0, "order": 3})
    return p


def build_twisted_yangian_sl2() -> Presentation:
    """Same underlying algebra as yangian-sl2; the second parameter zeta only
    enters through the twisted coproduct series, not the relations."""
    p = build_yangian_sl2()
    p.name = "twisted-yangian-sl2"
    p.params = ("eta", "zeta")
    return p


def build_classical_sl2() -> Presentation:
    """Plain rank-1 enveloping algebra {h, e, f} (for representation checks)."""
    cd = cartan_data("sl2")
    A = classical_alphabet(cd)
    p = Presentation("classical-sl2", "classical", cd, A)
    _install_h_conj(p, "ha1", 0)
    p.add_rule_from_zero_form(
        commutator(p.gen("e+a1"), p.gen("e-a1")) - p.gen("ha1"),
        "cross:e+a1,e-a1", "classical_ef", {"i": 0, "j": 0})
    return p


def _install_h_conj(p: Presentation, hname, i):
    """[h_i, x] = (alpha_i, wt x) x for every non-Cartan letter x."""
    A = p.alphabet
    hid = A.id_of(hname)
    for xid, sym in enumerate(A.symbols):
        if sym.name.startswith("h"):
            continue
        c = A.pairing(_basis_weight(p.cartan.rank, i), sym.weight)
        p.relations.append(
            Relation(
                "conj:%s,%s" % (hname, sym.name),
                (hid, xid),
                NCPoly(A, {(xid, hid): rf(1), (xid,): rf(c)}),
                "h_conj",
                {"h": hname, "x": sym.name, "root": i, "exponent": c},
            )
        )


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

ALGEBRA_BUILDERS = {
    "uq-sl2": lambda: build_uq("sl2"),
    "uq-sl3": lambda: build_uq("sl3"),
    "drinfeldian-sl2": lambda: build_drinfeldian("sl2"),
    "drinfeldian-sl3": lambda: build_drinfeldian("sl3"),
    "yangian-sl2": build_yangian_sl2,
    "twisted-yangian-sl2": build_twisted_yangian_sl2,
}


def get_presentation(name) -> Presentation:
    try:
        builder = ALGEBRA_BUILDERS[name]
    except KeyError:
        raise UnsupportedAlgebraError(
            "unknown algebra %r (have: %s)" % (name, ", ".join(sorted(ALGEBRA_BUILDERS)))
        ) from None
    return builder()


# ---------------------------------------------------------------------------
# specialization (limits of presentations)
# ---------------------------------------------------------------------------


def specialize(p: Presentation, assignments: dict) -> Presentation:
    """Degenerate a presentation exactly.

    Supported assignments (applied in this order):

    * ``{"kdelta": 1}``  -- send the central group-like pair to 1 (drops the
      letters; only meaningful for the drinfeldian family).
    * ``{"eta": 0}``     -- kill the second deformation parameter in every
      coefficient.
    * ``{"q": 1}``       -- the degeneration limit.  For the drinfeldian
      family this is structural: group-like letters k are expanded as
      exponentials of new Cartan letters h around q = 1 and every relation's
      limit is taken exactly (PoleError when a genuine pole survives).  For
      the uq family coefficients are substituted naively, which raises
      PoleError on the Cartan cross relation -- that family has no q -> 1
      limit in these coordinates.
    """
    out = p
    unknown = set(assignments) - {"kdelta", "eta", "q"}
    if unknown:
        raise ValueError("unsupported specialization keys: %s" % sorted(unknown))
    if "kdelta" in assignments:
        if assignments["kdelta"] != 1:
            raise ValueError("the central group-like letter can only be sent to 1")
        out = _drop_central_letters(out)
    if "eta" in assignments:
        if assignments["eta"] != 0:
            raise ValueError("eta can only be sent to 0")
        out = _substitute_coefficients(out, "eta", 0, "%s[eta->0]" % out.name)
    if "q" in assignments:
        if assignments["q"] != 1:
            raise ValueError("q can only be sent to 1")
        if out.family == "drinfeldian":
            out = _structural_q1_limit(out)
        elif out.family in ("yangian", "classical"):
            out = _substitute_coefficients(out, "q", 1, "%s[q->1]" % out.name)
        elif out.family == "uq":
            out = _substitute_coefficients(out, "q", 1, "%s[q->1]" % out.name)
        else:
            raise UnsupportedAlgebraError("no q->1 path for family %r" % out.family)
    return out


def _substitute_coefficients(p: Presentation, var, value, new_name) -> Presentation:
    rels = []
    for rel in p.relations:
        try:
            repl = rel.repl.map_coeffs(lambda c: c.eval_var(var, value))
        except PoleError as exc:
            raise PoleError("relation %s: %s" % (rel.label, exc)) from None
        rels.append(Relation(rel.label, rel.lead, repl, rel.kind, dict(rel.meta)))
    family = p.family if var == "eta" else "classical"
    return Presentation(new_name, family, p.cartan, p.alphabet, rels,
                        p.degree_bound, tuple(x for x in p.params if x != var))


def _drop_central_letters(p: Presentation) -> Presentation:
    A = p.alphabet
    drop = {A.id_of("kd+"), A.id_of("kd-")}
    keep = [s for i, s in enumerate(A.symbols) if i not in drop]
    newA = Alphabet(keep, A.pairing_matrix)
    remap = {}
    for i, s in enumerate(A.symbols):
        if i not in drop:
            remap[i] = newA.id_of(s.name)

    def map_word(w):
        return tuple(remap[i] for i in w if i not in drop)

    rels = []
    for rel in p.relations:
        if rel.kind == "k_central" and rel.meta.get("k", "").startswith("kd"):
            continue
        lead = map_word(rel.lead)
        repl = NCPoly(newA, {map_word(w): c for w, c in rel.repl.terms.items()})
        if NCPoly(newA, {lead: rf(1)}) == repl:
            continue
        rels.append(Relation(rel.label, lead, repl, rel.kind, dict(rel.meta)))
    return Presentation("%s[kdelta->1]" % p.name, p.family, p.cartan, newA, rels,
                        p.degree_bound, p.params)


# -- the structural q -> 1 machine -------------------------------------------


def _binom_poly(c, m):
    """binomial(c*h, m) as {h-power: Fraction}: prod_{j<m} (c h - j) / m!."""
    poly = {0: Fraction(1)}
    for j in range(m):
        nxt = {}
        for d, x in poly.items():
            nxt[d + 1] = nxt.get(d + 1, Fraction(0)) + x * c
            if j:
                nxt[d] = nxt.get(d, Fraction(0)) - x * j
        poly = {d: x for d, x in nxt.items() if x}
        if not poly:
            return {}
    fact = 1
    for j in range(2, m + 1):
        fact *= j
    return {d: x / fact for d, x in poly.items()}


def _h_expansion(cexp, mmax):
    """Expansion of prod_i k_i^(c_i) with k_i = q^(h_i), q = 1 + s.

    Returns {s-power m: {h-monomial tuple: Fraction}} truncated at s^mmax."""
    acc = {0: {tuple([0] * len(cexp)): Fraction(1)}}
    for i, c in enumerate(cexp):
        if not c:
            continue
        factor = {}
        for m in range(mmax + 1):
            bp = _binom_poly(c, m)
            if bp:
                factor[m] = bp
        nxt = {}
        for m1, mono1 in acc.items():
            for m2, bp in factor.items():
                if m1 + m2 > mmax:
                    continue
                dst = nxt.setdefault(m1 + m2, {})
                for hmono, x1 in mono1.items():
                    for d, x2 in bp.items():
                        key = hmono[:i] + (hmono[i] + d,) + hmono[i + 1:]
                        val = dst.get(key, Fraction(0)) + x1 * x2
                        if val:
                            dst[key] = val
                        else:
                            dst.pop(key, None)
        acc = nxt
    return acc


def _structural_q1_limit(p: Presentation) -> Presentation:
    """Exact q -> 1 limit of a drinfeldian presentation.

    Cartan conjugation relations become bracket relations with new letters
    h_i; relations whose words involve group-like letters are expanded with
    k_i = q^(h_i) around q = 1 and the constant term extracted exactly."""
    cd = p.cartan
    A = p.alphabet
    has_central = "kd+" in A.index
    rank = cd.rank
    zero = (0,) * rank
    minus_theta = tuple(-x for x in cd.highest_root)
    syms = list(_finite_symbols(cd)) + [GenSymbol("xi", minus_theta, loop_degree=1)]
    syms += [GenSymbol("h%s" % cd.labels[i], zero) for i in range(rank)]
    if has_central:
        syms += [GenSymbol("kd+", zero, inv_name="kd-"), GenSymbol("kd-", zero, inv_name="kd+")]
    newA = Alphabet(syms, cd.pairing_matrix)
    out = Presentation("%s[q->1]" % p.name, "yangian" if "eta" in p.params else "classical",
                       cd, newA, params=tuple(x for x in p.params if x != "q"))

    # Cartan letters commute among themselves
    for i in range(rank):
        for j in range(i):
            hi = newA.id_of("h%s" % cd.labels[i])
            hj = newA.id_of("h%s" % cd.labels[j])
            out.relations.append(Relation(
                "kk:h%s,h%s" % (cd.labels[i], cd.labels[j]),
                (hi, hj), NCPoly(newA, {(hj, hi): rf(1)}),
                "k_comm", {"a": "h%s" % cd.labels[i], "b": "h%s" % cd.labels[j]}))
    if has_central:
        _install_central_rules(out, ["kd+", "kd-"],
                               [s.name for s in newA.symbols if not s.name.startswith("kd")])

    # conjugation relations become h-brackets (from k+ letters only;
    # the k- copies carry the same content with the exponent negated)
    for rel in p.relations:
        if rel.kind == "k_conj" and rel.meta["sign"] == 1:
            i = rel.meta["root"]
            _install_single_h_conj(out, i, rel.meta["x"], rel.meta["exponent"],
                                   label=rel.label.replace("k+", "h"))

    # cross and Serre and mixed relations via the exact limit of zero forms
    for rel in p.relations:
        if rel.kind in ("k_comm", "k_conj", "k_central"):
            continue
        z = rel.zero_form(A)
        z_lim = _limit_zero_form(z, p, out)
        if z_lim.is_zero():
            continue
        out.add_rule_from_zero_form(z_lim, rel.label, rel.kind, dict(rel.meta))
    return out


def _install_single_h_conj(p: Presentation, i, xname, c, label):
    A = p.alphabet
    hid = A.id_of("h%s" % p.cartan.labels[i])
    xid = A.id_of(xname)
    p.relations.append(Relation(
        label, (hid, xid),
        NCPoly(A, {(xid, hid): rf(1), (xid,): rf(c)}),
        "h_conj", {"h": A.name_of(hid), "x": xname, "root": i, "exponent": c}))


def _limit_zero_form(z: NCPoly, src: Presentation, dst: Presentation) -> NCPoly:
    """Exact q -> 1 limit of a normal-form element of the drinfeldian algebra
    (arity-1 wrapper around the tensor version)."""
    out = _limit_tensor_zero_form(z.tensor(), src, dst)
    return NCPoly(dst.alphabet, {k[0]: c for k, c in out.terms.items()})


def _limit_tensor_zero_form(z: TensorPoly, src: Presentation,
                            dst: Presentation) -> TensorPoly:
    """Exact q -> 1 limit of a slotwise-normal-form tensor element.

    Every slot word must carry its group-like letters contiguously at the
    right end (slotwise normal form guarantees this).  Each k_i^(c_i) tail is
    expanded as (1+s)^(c_i h_i) with q = 1 + s; coefficients are expanded as
    exact Laurent series at q = 1; negative net orders must cancel within
    each (slot cores, slot central-exponents) group, else PoleError.  The
    pole bookkeeping is shared across all slots of a term, which is what
    makes group-like differences such as a*(x (x) (k^2 - 1)) converge."""
    srcA = src.alphabet
    dstA = dst.alphabet
    cd = src.cartan
    rank = cd.rank
    k_sign = {}
    for i in range(rank):
        k_sign[srcA.id_of("k+%s" % cd.labels[i])] = (i, 1)
        k_sign[srcA.id_of("k-%s" % cd.labels[i])] = (i, -1)
    central = {}
    if "kd+" in srcA.index:
        central[srcA.id_of("kd+")] = 1
        central[srcA.id_of("kd-")] = -1
    h_ids = [dstA.id_of("h%s" % cd.labels[i]) for i in range(rank)]

    def split(word):
        core = []
        cexp = [0] * rank
        d = 0
        tail = False
        for letter in word:
            if letter in k_sign:
                i, s = k_sign[letter]
                cexp[i] += s
                tail = True
            elif letter in central:
                d += central[letter]
                tail = True
            else:
                if tail:
                    raise ValueError(
                        "group-like letters not contiguous at right end of %s"
                        % srcA.word_str(word))
                core.append(dstA.id_of(srcA.name_of(letter)))
        return tuple(core), tuple(cexp), d

    groups = {}
    for words, coeff in z.terms.items():
        cores, cexps, ds = [], [], []
        for word in words:
            core, cexp, d = split(word)
            cores.append(core)
            cexps.append(cexp)
            ds.append(d)
        groups.setdefault((tuple(cores), tuple(ds)), []).append(
            (tuple(cexps), coeff))

    zero_mono = tuple([0] * rank)
    terms = {}
    for (cores, ds), entries in groups.items():
        acc = {}  # (t, per-slot h-monomials) -> RatFunc
        for cexps, coeff in entries:
            ord0, coeffs = laurent_coeffs(coeff, "q", 1, 0)
            mmax = max(0, -ord0)
            # fold the per-slot expansions into {s-power: {mono tuple: Fraction}}
            combined = {0: {(zero_mono,) * len(cexps): Fraction(1)}}
            for slot, cexp in enumerate(cexps):
                hexp = _h_expansion(cexp, mmax)
                nxt = {}
                for m1, monos1 in combined.items():
                    for m2, hpolys in hexp.items():
                        if m1 + m2 > mmax:
                            continue
                        dst_m = nxt.setdefault(m1 + m2, {})
                        for mt, x1 in monos1.items():
                            for hmono, x2 in hpolys.items():
                                key = mt[:slot] + (hmono,) + mt[slot + 1:]
                                val = dst_m.get(key, Fraction(0)) + x1 * x2
                                if val:
                                    dst_m[key] = val
                                else:
                                    dst_m.pop(key, None)
                combined = nxt
            for m, monos in combined.items():
                for j, fc in enumerate(coeffs):
                    t = ord0 + j + m
                    if t > 0 or fc.is_zero():
                        continue
                    for mt, bc in monos.items():
                        key = (t, mt)
                        val = acc.get(key, RatFunc.zero()) + fc * bc
                        if val.is_zero():
                            acc.pop(key, None)
                        else:
                            acc[key] = val
        for (t, mt), val in acc.items():
            if t < 0:
                raise PoleError(
                    "net pole of order %d at q=1 in the limit of %s" % (-t, z))
            out_words = []
            for slot, core in enumerate(cores):
                word = list(core)
                for i, m in enumerate(mt[slot]):
                    word.extend([h_ids[i]] * m)
                d = ds[slot]
                if d:
                    if "kd+" not in dstA.index:
                        raise ValueError(
                            "central letters must be eliminated (kdelta=1) "
                            "before this limit")
                    kd = dstA.id_of("kd+") if d > 0 else dstA.id_of("kd-")
                    word.extend([kd] * abs(d))
                out_words.append(tuple(word))
            w = tuple(out_words)
            cur = terms.get(w, RatFunc.zero()) + val
            if cur.is_zero():
                terms.pop(w, None)
            else:
                terms[w] = cur
    return TensorPoly(dstA, z.arity, terms)


# ---------------------------------------------------------------------------
# comparison
# ---------------------------------------------------------------------------


def compare_presentations(p1: Presentation, p2: Presentation,
                          reps1=(), reps2=()):
    """Mutual reduction check: every relation of each presentation must be
    zero in the other.  Generators are matched by name.  Returns a list of
    (direction, label, verdict) triples; reps1/reps2 are nonzero witnesses
    for p1/p2 respectively (see is_zero_mod)."""
    out = []
    for a, b, tag, reps in ((p1, p2, "forward", reps2),
                            (p2, p1, "backward", reps1)):
        for rel in a.relations:
            z = rel.zero_form(a.alphabet)
            try:
                zb = NCPoly(b.alphabet, {
                    tuple(b.alphabet.id_of(a.alphabet.name_of(i)) for i in w): c
                    for w, c in z.terms.items()})
            except KeyError:
                out.append((tag, rel.label, "unknown"))
                continue
            out.append((tag, rel.label, b.is_zero_mod(zb, reps=reps)))
    return out
