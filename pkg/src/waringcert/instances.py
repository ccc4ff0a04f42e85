"""JSON instance files: points, weights and (optionally) the 70 form coefficients.

Rationals are stored as decimal strings "p/q".  Serialization is
deterministic, so generate -> parse -> serialize is byte-identical.
"""

import json

from .constructor import Instance
from .decomposition import Decomposition, InputError
from .fields import rational_str, to_rational, unlimited_digits
from .poly import NVARS, dim_graded

FORMAT = "waringcert-instance/1"
DEGREE = 4


class ParseError(ValueError):
    """Malformed instance file; names the offending field (and line for JSON syntax errors)."""

    def __init__(self, message, field=None, line=None):
        where = []
        if line is not None:
            where.append("line %d" % line)
        if field is not None:
            where.append("field %s" % field)
        super().__init__(("%s: " % ", ".join(where) if where else "") + message)
        self.field = field
        self.line = line


def instance_to_dict(inst, include_form=True):
    d = inst.decomposition
    out = {"format": FORMAT, "variables": NVARS, "degree": DEGREE,
           "points": [[rational_str(c) for c in p.coords] for p in d.points],
           "weights": [rational_str(w) for w in d.weights]}
    if include_form:
        out["form"] = [rational_str(c) for c in d.form.coeffs]
    out["seed"] = inst.seed
    out["provenance"] = {"kind": inst.kind, "data": inst.data}
    return out


def dumps(inst, include_form=True):
    with unlimited_digits():
        return json.dumps(instance_to_dict(inst, include_form), indent=1) + "\n"


def write_instance(inst, path, include_form=True):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(inst, include_form))


def _rational(value, field):
    if isinstance(value, bool) or isinstance(value, float):
        raise ParseError("expected an integer or a rational string, got %r" % (value,), field)
    try:
        return to_rational(value)
    except (TypeError, ValueError) as exc:
        raise ParseError(str(exc), field) from exc


def loads(text):
    """Parse an instance document into an :class:`Instance` (validated exactly)."""
    try:
        with unlimited_digits():
            doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from exc
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    fmt = doc.get("format", FORMAT)
    if fmt != FORMAT:
        raise ParseError("unsupported format %r (expected %r)" % (fmt, FORMAT), "format")
    if doc.get("variables", NVARS) != NVARS:
        raise ParseError("only 5 variables are supported", "variables")
    if doc.get("degree", DEGREE) != DEGREE:
        raise ParseError("only quartics are supported", "degree")
    pts = doc.get("points")
    if not isinstance(pts, list) or not pts:
        raise ParseError("expected a non-empty list of points", "points")
    points = []
    for i, p in enumerate(pts):
        if not isinstance(p, list) or len(p) != NVARS:
            raise ParseError("a point needs %d coordinates" % NVARS, "points[%d]" % i)
        coords = [_rational(c, "points[%d][%d]" % (i, j)) for j, c in enumerate(p)]
        if all(c == 0 for c in coords):
            raise ParseError("the zero vector is not a point", "points[%d]" % i)
        points.append(coords)
    ws = doc.get("weights")
    if not isinstance(ws, list):
        raise ParseError("expected a list of weights", "weights")
    if len(ws) != len(points):
        raise ParseError("%d weights for %d points" % (len(ws), len(points)), "weights")
    weights = [_rational(w, "weights[%d]" % i) for i, w in enumerate(ws)]
    for i, w in enumerate(weights):
        if w == 0:
            raise ParseError("weight is zero", "weights[%d]" % i)
    form = None
    if "form" in doc:
        f = doc["form"]
        if not isinstance(f, list) or len(f) != dim_graded(DEGREE):
            raise ParseError("expected %d coefficients" % dim_graded(DEGREE), "form")
        form = [_rational(c, "form[%d]" % i) for i, c in enumerate(f)]
    seed = doc.get("seed")
    prov = doc.get("provenance") or {}
    if not isinstance(prov, dict):
        raise ParseError("expected an object", "provenance")
    try:
        decomp = Decomposition.build(points, weights, form)
    except InputError as exc:
        raise ParseError(str(exc), "form" if form is not None and "form" in str(exc) else "points") from exc
    except ValueError as exc:
        raise ParseError(str(exc), "points") from exc
    return Instance(decomp, prov.get("kind", "given"), seed, prov.get("data", {}))


def read_instance(path):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
