"""JSON encoding of scalars, matrices, specs, point sets and verdicts.

Scalars: rationals are strings "a/b" (or "a"), cyclotomic numbers {"N": N, "coeffs": [...]}
in the power basis of Q(zeta_N), quaternions {"q": [a, b, c, d]}.  Matrices are row-major
nested arrays.  No floats anywhere.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import lcm

from .errors import AntipodalError, ShapeError, SpecMismatch
from .exact import CYC, QUAT, Matrix
from .groups import GroupSpec, InvolutionSpec
from .scalars import Cyc, Quat


class MalformedInput(AntipodalError, ValueError):
    def __init__(self, msg, line=None, column=None):
        super().__init__(msg)
        self.line = line
        self.column = column


def frac_str(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_frac(s) -> Fraction:
    if isinstance(s, bool):
        raise MalformedInput(f"not a rational: {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        try:
            return Fraction(s.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise MalformedInput(f"not an exact rational: {s!r}")


def encode_scalar(x):
    if isinstance(x, Quat):
        return {"q": [frac_str(p) for p in x.parts]}
    if isinstance(x, Cyc):
        if x.is_rational():
            return frac_str(x.to_fraction())
        return {"N": x.N, "coeffs": [frac_str(c) for c in x.coeffs]}
    return frac_str(x)


def decode_scalar(obj, kind: str = CYC, N: int = 1):
    if isinstance(obj, dict):
        if "q" in obj:
            parts = obj["q"]
            if not isinstance(parts, list) or len(parts) != 4:
                raise MalformedInput("quaternion needs four parts")
            return Quat(*(parse_frac(p) for p in parts))
        if "N" in obj and "coeffs" in obj:
            if not isinstance(obj["N"], int) or obj["N"] < 1:
                raise MalformedInput("cyclotomic conductor must be a positive integer")
            c = Cyc.from_coeffs(obj["N"], [parse_frac(v) for v in obj["coeffs"]])
            if kind == QUAT:
                if not c.is_rational():
                    raise MalformedInput("quaternion matrix entries must be real or quaternions")
                return Quat(c.to_fraction())
            return c
        raise MalformedInput(f"unknown scalar object {sorted(obj)}")
    q = parse_frac(obj)
    return Quat(q) if kind == QUAT else Cyc.rational(q, N)


def encode_matrix(A: Matrix):
    return [[encode_scalar(x) for x in row] for row in A.rows]


def decode_matrix(obj, kind: str = CYC, N: int = 1) -> Matrix:
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise MalformedInput("matrix must be a non-empty array of rows")
    width = len(obj[0])
    if any(len(r) != width for r in obj):
        raise ShapeError("ragged matrix rows")
    rows = [[decode_scalar(x, kind, N) for x in r] for r in obj]
    if kind == CYC:
        A = Matrix(rows, CYC)
        return A.lift(lcm(A.N, N)) if N > 1 and A.N % N else A
    return Matrix(rows, QUAT)


def encode_group(g: GroupSpec) -> dict:
    return g.to_json()


def decode_group(d) -> GroupSpec:
    if not isinstance(d, dict):
        raise MalformedInput("group spec must be an object")
    try:
        return GroupSpec(d["family"], int(d["n"]), int(d.get("m", 1)))
    except KeyError as e:
        raise MalformedInput(f"group spec lacks {e}") from None


def decode_involution(d) -> InvolutionSpec:
    if not isinstance(d, dict) or "theta" not in d:
        raise MalformedInput("involution spec needs a 'theta' field")
    return InvolutionSpec(d["theta"], int(d.get("p", 0)), int(d.get("q", 0)))


def space_spec(space) -> dict:
    return {"id": space.name, "group": space.group.to_json(),
            "involution": space.involution.to_json()}


def encode_set(X) -> dict:
    return {"space": space_spec(X.space), "points": [encode_matrix(p.rep) for p in X.points]}


def set_space_id(obj):
    """The space id named inside a set file, if any."""
    sp = obj.get("space") if isinstance(obj, dict) else None
    if isinstance(sp, str):
        return sp
    if isinstance(sp, dict):
        return sp.get("id")
    return None


def decode_set(obj, space):
    """Rebuild an AntipodalSet in `space`; a mismatching embedded spec is rejected."""
    if isinstance(obj, list):
        pts = obj
    elif isinstance(obj, dict) and "points" in obj:
        pts = obj["points"]
        sp = obj.get("space")
        if isinstance(sp, dict) and "group" in sp:
            if decode_group(sp["group"]) != space.group:
                raise SpecMismatch("set file names a different group")
            if "involution" in sp and decode_involution(sp["involution"]) != space.involution:
                raise SpecMismatch("set file names a different involution")
    else:
        raise MalformedInput("set file needs a 'points' array")
    if not isinstance(pts, list):
        raise MalformedInput("'points' must be an array")
    G = space.group
    mats = [decode_matrix(m, G.kind, G.conductor) for m in pts]
    return space.make_set([space.point(_to_group(G, A)) for A in mats])


def _to_group(G, A: Matrix) -> Matrix:
    # points may need a larger field than the group's conductor (e.g. zeta_8 in SU(2))
    if A.kind == CYC and A.N % G.conductor:
        return A.lift(lcm(A.N, G.conductor))
    return A


def encode_verdict(v: dict) -> dict:
    w = v.get("witness")
    return {"antipodal": bool(v["antipodal"]), "method": v["method"],
            "witness": list(w) if w is not None else None}


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedInput(f"malformed JSON: {e.msg}", e.lineno, e.colno) from None


def load_file(path):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
