"""JSON reading and writing for groups, words, relator sets, complexes,
chains and reports.  Rationals are written as "p/q" strings (or "p" for
integers); faces list signed edges, with a reversed edge e written ~e
(that is, -e - 1) so that edge 0 can be reversed."""
import json
import re
from dataclasses import fields, is_dataclass
from fractions import Fraction
from pathlib import Path

from .amalgam import AmalgamContext, Letter
from .chains import CombinatorialLoop, RationalChain, SparseRationalMatrix, TwoComplexBall
from .errors import InputError
from .groups import GroupHom, cyclic_group, make_group


def rational(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(s):
    try:
        if isinstance(s, bool):
            raise TypeError
        if isinstance(s, (int, Fraction)):
            return Fraction(s)
        if isinstance(s, str):
            return Fraction(s.strip())
        raise TypeError
    except (TypeError, ValueError, ZeroDivisionError):
        raise InputError(f"not a rational number: {s!r}") from None


def to_jsonable(obj):
    """Recursively convert reports to plain JSON data."""
    if isinstance(obj, Fraction):
        return rational(obj)
    if isinstance(obj, Letter):
        return {"factor": obj.factor, "elem": obj.elem}
    if isinstance(obj, RationalChain):
        return chain_to_json(obj)
    if isinstance(obj, CombinatorialLoop):
        return {"base": obj.base, "steps": [[e, s] for e, s in obj.steps]}
    if is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return [to_jsonable(v) for v in sorted(obj)]
    return obj


def dumps(obj):
    """Deterministic JSON text."""
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2) + "\n"


# groups

def group_from_json(data):
    if not isinstance(data, dict):
        raise InputError("group must be a JSON object")
    if "cyclic" in data:
        return cyclic_group(int(data["cyclic"]))
    try:
        return make_group(data["mult"], data.get("names"))
    except KeyError:
        raise InputError("group needs a 'mult' table") from None


def group_to_json(G):
    out = {"order": G.order, "mult": [list(r) for r in G.mult]}
    if G.element_names is not None:
        out["names"] = list(G.element_names)
    return out


def hom_from_json(data, source, target):
    images = data["map"] if isinstance(data, dict) else data
    if len(images) != source.order:
        raise InputError(f"map has {len(images)} entries, source has order {source.order}")
    return GroupHom(source, target, tuple(int(x) for x in images))


def context_from_json(data):
    A = group_from_json(data["A"])
    B = group_from_json(data["B"])
    C = group_from_json(data["C"])
    return AmalgamContext(A, B, C, hom_from_json(data["iota_A"], C, A), hom_from_json(data["iota_B"], C, B))


# words

_TOKEN = re.compile(r"\S+")


def parse_word(ctx, text):
    """Parse "A3 B1 A2" into a word; "1" or an empty string is the identity."""
    out = []
    for m in _TOKEN.finditer(text):
        tok = m.group()
        if tok == "1" and not out and text.strip() == "1":
            break
        f, name = tok[0], tok[1:]
        if f not in ("A", "B") or not name:
            raise InputError(f"bad letter {tok!r}", m.start())
        try:
            out.append(Letter(f, ctx.groups[f].index_of(name)))
        except ValueError:
            raise InputError(f"unknown element {name!r} of {f}", m.start() + 1) from None
    return tuple(out)


def word_from_json(ctx, data):
    if isinstance(data, str):
        return parse_word(ctx, data)
    out = []
    for k, x in enumerate(data):
        try:
            f, e = x["factor"], int(x["elem"])
        except (KeyError, TypeError, ValueError):
            raise InputError(f"bad letter at index {k}: {x!r}") from None
        if f not in ("A", "B") or not 0 <= e < ctx.groups[f].order:
            raise InputError(f"letter out of range at index {k}: {x!r}")
        out.append(Letter(f, e))
    return tuple(out)


def word_to_json(w):
    return [{"factor": f, "elem": x} for f, x in w]


def relators_from_json(ctx, data):
    if isinstance(data, dict):
        data = data.get("relators", [])
    return [word_from_json(ctx, r) for r in data]


# complexes and chains

def _face_step(x):
    x = int(x)
    return (x, 1) if x >= 0 else (~x, -1)


def complex_to_json(X):
    return {
        "vertices": X.n_vertices,
        "edges": [list(e) for e in X.edges],
        "faces": [[e if s > 0 else ~e for e, s in f] for f in X.faces],
        "frontier": sorted(X.frontier),
    }


def complex_from_json(data):
    try:
        faces = [[_face_step(x) for x in f] for f in data.get("faces", [])]
        return TwoComplexBall(int(data["vertices"]), data["edges"], faces, data.get("frontier", ()))
    except KeyError as e:
        raise InputError(f"complex is missing {e}") from None


def chain_to_json(c):
    return {"deg": c.degree, "coeffs": {str(i): rational(q) for i, q in sorted(c.coeffs.items())}}


def chain_from_json(data):
    try:
        return RationalChain(int(data["deg"]),
                             {int(i): parse_rational(q) for i, q in data["coeffs"].items()})
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"bad chain: {e}") from None


def matrix_from_json(data):
    """Dense list of rows, or {"rows", "cols", "entries": [[i, j, q], ...]}."""
    if isinstance(data, dict):
        try:
            ent = {(int(i), int(j)): parse_rational(q) for i, j, q in data.get("entries", [])}
            return SparseRationalMatrix(int(data["rows"]), int(data["cols"]), ent)
        except (KeyError, IndexError, ValueError) as e:
            raise InputError(f"bad matrix: {e}") from None
    return SparseRationalMatrix.from_dense([[parse_rational(q) for q in r] for r in data])


def matrix_to_json(M):
    return {"rows": M.rows, "cols": M.cols,
            "entries": [[i, j, rational(q)] for (i, j), q in sorted(M.entries.items())]}


def family_from_json(data):
    return {int(k): matrix_from_json(v) for k, v in data.items()}


def load_json(path):
    path = Path(path)
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON: {e.msg}", e.pos) from None
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None
