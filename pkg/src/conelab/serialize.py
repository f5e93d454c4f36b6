"""JSON round-tripping for realizations, elements, families, and reports.

Wire conventions: rationals travel as canonical strings ("5", "-3/7"); plain
ints are accepted on input but floats never are. Output dicts are plain JSON
types only, so dumps_canonical (sorted keys) yields stable golden files.
"""

import json
import re
from fractions import Fraction

from conelab import degrees as degrees_mod
from conelab import rank3 as rank3_mod
from conelab.core import BlockPartition, ConeElement, GroupElement, VCollection
from conelab.errors import SerializationError
from conelab.linalg import normalize_rational

_RAT_RE = re.compile(r"^-?\d+(/[1-9]\d*)?$")


def parse_rational(value):
    """Read one rational off the wire.

    Accepts ints and "p" / "p/q" strings; "4/6" style non-canonical input is
    normalized. Floats and bools are rejected: exactness is the whole point.
    """
    if isinstance(value, bool):
        raise SerializationError("booleans are not rational values: %r" % (value,))
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        if not _RAT_RE.match(value):
            raise SerializationError("malformed rational %r" % (value,))
        if "/" in value:
            num, den = value.split("/")
            return normalize_rational(Fraction(int(num), int(den)))
        return int(value)
    raise SerializationError("expected a rational string or int, got %r" % (value,))


def rational_to_str(value):
    value = normalize_rational(value)
    if isinstance(value, Fraction):
        return "%d/%d" % (value.numerator, value.denominator)
    return str(value)


def _rat_list(values):
    return [rational_to_str(v) for v in values]


def _parse_list(values, where):
    if not isinstance(values, list):
        raise SerializationError("%s must be a list" % where)
    return tuple(parse_rational(v) for v in values)


def _require_keys(d, required, optional, where):
    if not isinstance(d, dict):
        raise SerializationError("%s must be an object" % where)
    missing = [k for k in required if k not in d]
    if missing:
        raise SerializationError("%s missing key %s" % (where, missing[0]))
    extra = [k for k in d if k not in required and k not in optional]
    if extra:
        raise SerializationError("%s has unknown key %r" % (where, extra[0]))


def _parse_index(value, name):
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise SerializationError("%s must be a positive integer" % name)
    return value


# realizations


def realization_to_dict(V):
    spaces = []
    for k, j in V.spaces():
        basis = [
            _rat_list(e for row in mat for e in row) for mat in V.basis(k, j)
        ]
        spaces.append({"k": k, "j": j, "basis": basis})
    return {"partition": list(V.partition.sizes), "spaces": spaces}


def realization_from_dict(d):
    _require_keys(d, ("partition", "spaces"), (), "realization")
    if not isinstance(d["partition"], list) or not d["partition"]:
        raise SerializationError("partition must be a nonempty list")
    sizes = tuple(_parse_index(n, "partition entry") for n in d["partition"])
    partition = BlockPartition(sizes)
    r = partition.r
    bases = {}
    if not isinstance(d["spaces"], list):
        raise SerializationError("spaces must be a list")
    for entry in d["spaces"]:
        _require_keys(entry, ("k", "j", "basis"), (), "space entry")
        k = _parse_index(entry["k"], "k")
        j = _parse_index(entry["j"], "j")
        if not (1 <= j < k <= r):
            raise SerializationError("bad space index (%d, %d)" % (k, j))
        if (k, j) in bases:
            raise SerializationError("duplicate space entry (%d, %d)" % (k, j))
        nk, nj = partition.size(k), partition.size(j)
        mats = []
        if not isinstance(entry["basis"], list):
            raise SerializationError("basis of V_%d%d must be a list" % (k, j))
        for flat in entry["basis"]:
            values = _parse_list(flat, "basis element of V_%d%d" % (k, j))
            if len(values) != nk * nj:
                raise SerializationError(
                    "basis element of V_%d%d has %d entries, expected %d"
                    % (k, j, len(values), nk * nj)
                )
            mats.append(
                tuple(values[i * nj : (i + 1) * nj] for i in range(nk))
            )
        bases[(k, j)] = mats
    return VCollection(partition, bases)


# elements

def _coords_to_list(mapping):
    out = []
    for (k, j), coords in sorted(mapping.items()):
        if any(coords):
            out.append({"k": k, "j": j, "coords": _rat_list(coords)})
    return out


def _coords_from_list(entries, where):
    if not isinstance(entries, list):
        raise SerializationError("%s must be a list" % where)
    out = {}
    for entry in entries:
        _require_keys(entry, ("k", "j", "coords"), (), where)
        k = _parse_index(entry["k"], "k")
        j = _parse_index(entry["j"], "j")
        if (k, j) in out:
            raise SerializationError("duplicate %s entry (%d, %d)" % (where, k, j))
        out[(k, j)] = _parse_list(entry["coords"], where)
    return out


def element_to_dict(x):
    return {"diag": _rat_list(x.diag), "off": _coords_to_list(x.off)}


def element_from_dict(d, V):
    from conelab.core import cone_element

    _require_keys(d, ("diag",), ("off",), "element")
    diag = _parse_list(d["diag"], "diag")
    off = _coords_from_list(d.get("off", []), "off")
    return cone_element(V, diag, off)


def group_to_dict(h):
    return {"diag": _rat_list(h.diag), "lower": _coords_to_list(h.lower)}


def group_from_dict(d, V):
    from conelab.core import group_element

    _require_keys(d, ("diag",), ("lower",), "group element")
    diag = _parse_list(d["diag"], "diag")
    lower = _coords_from_list(d.get("lower", []), "lower")
    return group_element(V, diag, lower)


# composition families


def family_to_dict(F):
    return {
        "r": F.r,
        "s": F.s,
        "n": F.n,
        "A": [[_rat_list(row) for row in mat] for mat in F.mats],
    }


def family_from_dict(d):
    _require_keys(d, ("r", "s", "n", "A"), (), "family")
    for key in ("r", "s", "n"):
        if not isinstance(d[key], int) or isinstance(d[key], bool) or d[key] < 0:
            raise SerializationError("%s must be a nonnegative integer" % key)
    if not isinstance(d["A"], list):
        raise SerializationError("A must be a list of matrices")
    mats = []
    for idx, mat in enumerate(d["A"]):
        if not isinstance(mat, list):
            raise SerializationError("A[%d] must be a list of rows" % idx)
        mats.append(tuple(_parse_list(row, "A[%d] row" % idx) for row in mat))
    return rank3_mod.CompositionFamily(d["r"], d["s"], d["n"], mats)


# rank-3 points


def point_to_dict(X):
    return {
        "x11": rational_to_str(X.x11),
        "x22": rational_to_str(X.x22),
        "x33": rational_to_str(X.x33),
        "x": _rat_list(X.x),
        "y": _rat_list(X.y),
        "z": _rat_list(X.z),
    }


def point_from_dict(d, F):
    _require_keys(d, ("x11", "x22", "x33"), ("x", "y", "z"), "point")
    return rank3_mod.rank3_element(
        F,
        parse_rational(d["x11"]),
        parse_rational(d["x22"]),
        parse_rational(d["x33"]),
        _parse_list(d.get("x", [0] * F.r), "x"),
        _parse_list(d.get("y", [0] * F.s), "y"),
        _parse_list(d.get("z", [0] * F.n), "z"),
    )


def dual_point_to_dict(Xi):
    return {
        "xi11": rational_to_str(Xi.xi11),
        "xi22": rational_to_str(Xi.xi22),
        "xi33": rational_to_str(Xi.xi33),
        "xi": _rat_list(Xi.xi),
        "eta": _rat_list(Xi.eta),
        "zeta": _rat_list(Xi.zeta),
    }


def dual_point_from_dict(d, F):
    _require_keys(d, ("xi11", "xi22", "xi33"), ("xi", "eta", "zeta"), "dual point")
    return rank3_mod.dual_rank3_element(
        F,
        parse_rational(d["xi11"]),
        parse_rational(d["xi22"]),
        parse_rational(d["xi33"]),
        _parse_list(d.get("xi", [0] * F.r), "xi"),
        _parse_list(d.get("eta", [0] * F.s), "eta"),
        _parse_list(d.get("zeta", [0] * F.n), "zeta"),
    )


# dimension tables and sigma output


def _dim_key(k, j):
    # two-digit block indices need the separator to stay unambiguous
    return "d%d_%d" % (k, j) if k >= 10 or j >= 10 else "d%d%d" % (k, j)


_DIM_KEY_RE = re.compile(r"^d(\d+)_(\d+)$|^d(\d)(\d)$")


def dims_to_dict(table):
    return {
        "r": table.r,
        "dims": {_dim_key(k, j): v for (k, j), v in table.items()},
    }


def dims_from_dict(d):
    _require_keys(d, ("r", "dims"), (), "dims")
    r = _parse_index(d["r"], "r")
    if not isinstance(d["dims"], dict):
        raise SerializationError("dims must be an object")
    entries = {}
    for key, value in d["dims"].items():
        m = _DIM_KEY_RE.match(key)
        if not m:
            raise SerializationError("bad dimension key %r" % key)
        k, j = (m.group(1), m.group(2)) if m.group(1) else (m.group(3), m.group(4))
        if not isinstance(value, int) or isinstance(value, bool) or value < 0:
            raise SerializationError("dimension %s must be a nonnegative integer" % key)
        entries[(int(k), int(j))] = value
    try:
        return degrees_mod.DimTable(r, entries)
    except ValueError as exc:
        raise SerializationError(str(exc)) from exc


def sigma_to_dict(sigma):
    steps = []
    for step in sigma.trace:
        steps.append(
            {
                "i": step.i,
                "stages": [
                    {"k": k, "l": list(vec)} for k, vec in step.stages
                ],
                "epsilon": list(step.epsilon),
            }
        )
    return {
        "sigma": [list(row) for row in sigma.rows],
        "degrees": list(degrees_mod.degrees_from_sigma(sigma)),
        "trace": {"steps": steps},
    }


# reports


def verification_report_to_dict(report):
    def cond(c):
        d = {"passed": c.passed}
        if c.counterexample is not None:
            d["counterexample"] = list(c.counterexample)
        return d

    return {
        "passed": report.passed,
        "v1": cond(report.v1),
        "v2": cond(report.v2),
        "v3": cond(report.v3),
        "dims": dims_to_dict(report.dims)["dims"],
        "orthonormal": report.orthonormal,
    }


def ldl_to_dict(result, approx=False):
    out = {
        "member": result.is_member,
        "status": result.status,
        "pivots": _rat_list(result.pivots),
    }
    if result.unit is not None:
        out["unit"] = group_to_dict(result.unit)
    if approx:
        out["pivots_approx"] = [float(Fraction(p)) for p in result.pivots]
    return out


def classification_to_dict(c):
    return {
        "case": c.case,
        "triple": list(c.triple),
        "normalized": list(c.normalized),
        "swapped": c.swapped,
        "primal_degrees": list(c.primal),
        "dual_degrees": list(c.dual),
    }


def dumps_canonical(obj):
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def load_file(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SerializationError("%s: invalid JSON at line %d column %d"
                                 % (path, exc.lineno, exc.colno)) from exc
    except OSError as exc:
        raise SerializationError("%s: %s" % (path, exc.strerror)) from exc


def dump_file(path, obj):
    with open(path, "w") as fh:
        fh.write(dumps_canonical(obj))
