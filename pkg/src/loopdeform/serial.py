"""Line-oriented text format for presentations, Hopf data, and matrix reps.

The format is deliberately plain so diffs stay reviewable:

    presentation <name>
    family <uq|drinfeldian|yangian|classical>
    cartan <sl2|sl3>
    params <comma-list or ->
    degree-bound <int>
    shift <NCPoly>                      (loop deformations only)
    gen <name> weight=<ints> degree=<int> parity=<0|1> [inverse=<name>]
    rel <label>: <word or NCPoly> => <NCPoly>
    delta <gen>: <two-slot TensorPoly>  (Hopf appendix, optional)
    antipode <gen>: <NCPoly>
    counit <gen>: <RatFunc>
    rep <label> dim=<int>               (matrix blocks, optional)
    mat <gen>: e,e,...;e,e,...          (rows ;-separated, entries ,-separated)

Elements serialize through their canonical string forms (sorted terms,
reduced monic-denominator coefficients), so dumping is deterministic and a
load/dump round trip is byte-identical.  Loading rebuilds the alphabet from
the family and Cartan type, verifies every ``gen`` line against it, and
reconstructs relations as plain rewrite rules; the structural metadata that
drives parameter limits is not part of the text format, so loaded
presentations verify and rewrite but are not inputs to the limit machinery.
Hopf maps are re-validated for generator coverage and representations replay
their full relation check on load.
"""

from .errors import UnsupportedAlgebraError
from .freealg import NCPoly, TensorPoly
from .hopf import HopfData
from .presentations import (
    Presentation,
    Relation,
    cartan_data,
    classical_alphabet,
    drinfeldian_alphabet,
    uq_alphabet,
    yangian_alphabet,
)
from .ratfunc import RatFunc, parse_ratfunc, rf
from .repn import MatrixRF, Rep

_ALPHABET_BUILDERS = {
    "uq": uq_alphabet,
    "drinfeldian": drinfeldian_alphabet,
    "yangian": yangian_alphabet,
    "classical": classical_alphabet,
}


class FormatError(ValueError):
    """A text document did not match the presentation file format."""

    def __init__(self, lineno, message):
        super().__init__("line %d: %s" % (lineno, message))
        self.lineno = lineno


# ---------------------------------------------------------------------------
# element parsing (inverse of the canonical __str__ forms)
# ---------------------------------------------------------------------------


def _split_sum(text):
    """Split on top-level ' + ' (plus signs inside parentheses stay put)."""
    parts, depth, start, i = [], 0, 0, 0
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and text.startswith(" + ", i):
            parts.append(text[start:i])
            i += 3
            start = i
            continue
        i += 1
    parts.append(text[start:])
    return parts


def _split_coeff(part):
    """Split 'coeff*payload' at the last top-level '*'; None if there is no
    separator (bare word with unit coefficient)."""
    depth, pos = 0, None
    for i, ch in enumerate(part):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "*" and depth == 0:
            pos = i
    if pos is None:
        return None, part
    return part[:pos], part[pos + 1:]


def parse_ncpoly(text, alphabet) -> NCPoly:
    """Parse the canonical NCPoly text form over the given alphabet."""
    text = text.strip()
    if text == "0":
        return NCPoly.zero(alphabet)
    terms = {}
    for part in _split_sum(text):
        coeff_text, word_text = _split_coeff(part.strip())
        c = rf(1) if coeff_text is None else parse_ratfunc(coeff_text)
        w = alphabet.parse_word(word_text)
        s = terms.get(w, rf(0)) + c
        if s.is_zero():
            terms.pop(w, None)
        else:
            terms[w] = s
    return NCPoly(alphabet, terms)


def _trailing_group(part):
    """Split 'coeff*( ... )' at the parenthesized payload that ends the term."""
    if not part.endswith(")"):
        raise ValueError("tensor term %r does not end in a slot group" % part)
    depth = 0
    for i in range(len(part) - 1, -1, -1):
        if part[i] == ")":
            depth += 1
        elif part[i] == "(":
            depth -= 1
            if depth == 0:
                if i == 0 or part[i - 1] != "*":
                    raise ValueError("tensor term %r lacks a coefficient" % part)
                return part[:i - 1], part[i + 1:-1]
    raise ValueError("unbalanced parentheses in %r" % part)


def parse_tensorpoly(text, alphabet, arity) -> TensorPoly:
    """Parse the canonical TensorPoly text form over the given alphabet."""
    text = text.strip()
    if text == "0":
        return TensorPoly.zero(alphabet, arity)
    terms = {}
    for part in _split_sum(text):
        coeff_text, slots_text = _trailing_group(part.strip())
        c = parse_ratfunc(coeff_text)
        slots = slots_text.split(" @ ")
        if len(slots) != arity:
            raise ValueError("expected %d slots, got %d in %r"
                             % (arity, len(slots), part))
        key = tuple(alphabet.parse_word(s) for s in slots)
        s = terms.get(key, rf(0)) + c
        if s.is_zero():
            terms.pop(key, None)
        else:
            terms[key] = s
    return TensorPoly(alphabet, arity, terms)


def _parse_matrix(text) -> MatrixRF:
    rows = [[parse_ratfunc(e) for e in row.split(",")]
            for row in text.strip().split(";")]
    return MatrixRF(rows)


def _matrix_text(m: MatrixRF) -> str:
    return ";".join(",".join(str(c) for c in row) for row in m.rows)


# ---------------------------------------------------------------------------
# dumping
# ---------------------------------------------------------------------------


def dump_presentation(p: Presentation) -> str:
    lines = [
        "presentation %s" % p.name,
        "family %s" % p.family,
        "cartan %s" % p.cartan.name,
        "params %s" % (",".join(p.params) if p.params else "-"),
        "degree-bound %d" % p.degree_bound,
    ]
    if p.shift_element is not None:
        lines.append("shift %s" % p.shift_element)
    for s in p.alphabet.symbols:
        line = "gen %s weight=%s degree=%d parity=%d" % (
            s.name, ",".join(str(x) for x in s.weight),
            s.loop_degree, s.parity)
        if s.inv_name is not None:
            line += " inverse=%s" % s.inv_name
        lines.append(line)
    for rel in p.relations:
        lines.append("rel %s: %s => %s"
                     % (rel.label, p.alphabet.word_str(rel.lead), rel.repl))
    return "\n".join(lines) + "\n"


def dump_hopf(H: HopfData) -> str:
    """The Hopf appendix (generator maps in alphabet order)."""
    lines = []
    names = [s.name for s in H.presentation.alphabet.symbols]
    for name in names:
        lines.append("delta %s: %s" % (name, H.delta[name]))
    for name in names:
        lines.append("antipode %s: %s" % (name, H.antipode[name]))
    for name in names:
        lines.append("counit %s: %s" % (name, H.epsilon[name]))
    return "\n".join(lines) + "\n"


def dump_rep(r: Rep) -> str:
    lines = ["rep %s dim=%d" % (r.label, r.dimension)]
    for s in r.presentation.alphabet.symbols:
        lines.append("mat %s: %s" % (s.name, _matrix_text(r.images[s.name])))
    return "\n".join(lines) + "\n"


def dump_bundle(p: Presentation, hopf: HopfData = None, reps=()) -> str:
    text = dump_presentation(p)
    if hopf is not None:
        if hopf.presentation is not p:
            raise ValueError("Hopf data belongs to a different presentation")
        text += dump_hopf(hopf)
    for r in reps:
        if r.presentation is not p:
            raise ValueError("rep %s belongs to a different presentation"
                             % r.label)
        text += dump_rep(r)
    return text


# ---------------------------------------------------------------------------
# loading
# ---------------------------------------------------------------------------


def _expect_fields(lineno, line, key):
    if not line.startswith(key + " "):
        raise FormatError(lineno, "expected %r header, got %r" % (key, line))
    return line[len(key) + 1:].strip()


def _parse_gen_line(lineno, rest, alphabet):
    """Validate one `gen` line against the rebuilt alphabet."""
    fields = rest.split()
    if not fields:
        raise FormatError(lineno, "empty gen line")
    name, attrs = fields[0], {}
    for f in fields[1:]:
        if "=" not in f:
            raise FormatError(lineno, "malformed attribute %r" % f)
        k, v = f.split("=", 1)
        attrs[k] = v
    try:
        sym = alphabet.symbols[alphabet.id_of(name)]
    except KeyError:
        raise FormatError(lineno, "letter %r is not part of this family's "
                          "alphabet" % name) from None
    weight = tuple(int(x) for x in attrs.get("weight", "").split(","))
    if (weight != sym.weight
            or int(attrs.get("degree", "0")) != sym.loop_degree
            or int(attrs.get("parity", "0")) != sym.parity
            or attrs.get("inverse") != sym.inv_name):
        raise FormatError(lineno, "gen %s does not match the rebuilt alphabet"
                          % name)
    return name


def load_bundle(text):
    """Parse a document into (Presentation, HopfData or None, list of Rep).

    The presentation header must come first; `gen` lines are validated
    against the alphabet rebuilt from family and Cartan type; relations,
    Hopf maps, and representation blocks follow in any interleaving after
    their owners."""
    lines = [(n + 1, raw.strip()) for n, raw in enumerate(text.splitlines())]
    lines = [(n, s) for n, s in lines if s and not s.startswith("#")]
    if not lines:
        raise FormatError(0, "empty document")
    pos = 0

    def take(key):
        nonlocal pos
        n, line = lines[pos]
        value = _expect_fields(n, line, key)
        pos += 1
        return n, value

    _, name = take("presentation")
    _, family = take("family")
    if family not in _ALPHABET_BUILDERS:
        raise FormatError(lines[pos - 1][0], "unknown family %r" % family)
    _, cartan_name = take("cartan")
    try:
        cd = cartan_data(cartan_name)
    except UnsupportedAlgebraError as exc:
        raise FormatError(lines[pos - 1][0], str(exc)) from None
    _, params_text = take("params")
    params = () if params_text == "-" else tuple(params_text.split(","))
    _, bound_text = take("degree-bound")
    alphabet = _ALPHABET_BUILDERS[family](cd)

    shift = None
    if pos < len(lines) and lines[pos][1].startswith("shift "):
        n, value = take("shift")
        shift = parse_ncpoly(value, alphabet)

    p = Presentation(name, family, cd, alphabet,
                     degree_bound=int(bound_text), params=params,
                     shift_element=shift)

    seen_gens = set()
    delta, antipode, counit = {}, {}, {}
    reps = []
    current_rep = None  # (label, dim, images dict)

    def close_rep():
        nonlocal current_rep
        if current_rep is not None:
            label, _, images = current_rep
            reps.append(Rep(p, images, label))
            current_rep = None

    while pos < len(lines):
        n, line = lines[pos]
        pos += 1
        key, _, rest = line.partition(" ")
        if key == "gen":
            seen_gens.add(_parse_gen_line(n, rest, alphabet))
            continue
        if key == "rel":
            label, sep, body = rest.partition(": ")
            if not sep or " => " not in body:
                raise FormatError(n, "malformed rel line %r" % line)
            lead_text, _, repl_text = body.partition(" => ")
            # a rule lead is a raw pattern: parse it without the inverse-pair
            # contraction that element constructors apply (group-like rules
            # spell out exactly such pairs)
            lead = tuple(alphabet.id_of(x)
                         for x in lead_text.strip().split("."))
            repl = parse_ncpoly(repl_text, alphabet)
            # keep the written orientation rather than re-orienting, so a
            # dump/load round trip is the identity on rule lists
            p.relations.append(Relation(label, lead, repl, "loaded", {}))
            p._rules_version += 1
            continue
        if key == "delta":
            gen, _, body = rest.partition(": ")
            delta[gen] = parse_tensorpoly(body, alphabet, 2)
            continue
        if key == "antipode":
            gen, _, body = rest.partition(": ")
            antipode[gen] = parse_ncpoly(body, alphabet)
            continue
        if key == "counit":
            gen, _, body = rest.partition(": ")
            counit[gen] = parse_ratfunc(body)
            continue
        if key == "rep":
            close_rep()
            fields = rest.split()
            if len(fields) != 2 or not fields[1].startswith("dim="):
                raise FormatError(n, "malformed rep header %r" % line)
            current_rep = (fields[0], int(fields[1][4:]), {})
            continue
        if key == "mat":
            if current_rep is None:
                raise FormatError(n, "mat line outside a rep block")
            gen, _, body = rest.partition(": ")
            m = _parse_matrix(body)
            if m.nrows != current_rep[1] or m.ncols != current_rep[1]:
                raise FormatError(n, "matrix for %s is not %dx%d"
                                  % (gen, current_rep[1], current_rep[1]))
            current_rep[2][gen] = m
            continue
        raise FormatError(n, "unrecognized line %r" % line)

    close_rep()
    missing = {s.name for s in alphabet.symbols} - seen_gens
    if missing:
        raise FormatError(0, "gen lines missing for %s"
                          % ", ".join(sorted(missing)))

    hopf = None
    if delta or antipode or counit:
        hopf = HopfData(p, delta, counit, antipode)
    return p, hopf, reps


def load_presentation(text) -> Presentation:
    return load_bundle(text)[0]
