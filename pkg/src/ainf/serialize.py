"""JSON forms of modules, maps, cochains, algebras and representations.

Scalars are strings (``"3"``, ``"-7/3"``, ``"2+t"``), never JSON numbers.
Output is canonical: entries are sorted, so serializing the same object
twice gives the same bytes.
"""

from __future__ import annotations

import json
from typing import Any

from .cochains import Cochain
from .comodules import MatrixFactorization
from .core.graded import GradedMap, GradedModule
from .core.report import Report
from .core.rings import Ring, RingError, ZZ, parse_ring
from .representations import AdjointFamily, ShamashSystem
from .unital import SplitUnitAlgebra, SplitUnitModule


class SchemaError(ValueError):
    """Malformed input; ``path`` locates the offending node."""

    def __init__(self, path: str, reason: str, source: str | None = None):
        self.path = path
        self.reason = reason
        self.source = source
        where = f"{source}: " if source else ""
        super().__init__(f"{where}{path or '$'}: {reason}")


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _need(d, key, path, kind=None):
    if not isinstance(d, dict):
        raise SchemaError(path, "expected an object")
    if key not in d:
        raise SchemaError(path, f"missing key {key!r}")
    v = d[key]
    if kind is not None and not isinstance(v, kind):
        raise SchemaError(f"{path}.{key}", f"expected {kind.__name__}")
    return v


def _int(v, path):
    if isinstance(v, bool) or not isinstance(v, int):
        raise SchemaError(path, "expected an integer")
    return v


def _scalar(ring: Ring, text, path):
    try:
        return ring.parse(text)
    except (RingError, ValueError, ZeroDivisionError) as e:
        raise SchemaError(path, f"bad scalar {text!r}: {e}") from None


def _fmt_vec(ring: Ring, vec: dict) -> dict:
    return {str(k): ring.format(c) for k, c in sorted(vec.items(), key=lambda kv: str(kv[0]))}


def ring_of(doc: dict, default: Ring | None = None, path: str = "") -> Ring:
    if "ring" not in doc:
        return default or ZZ
    try:
        return parse_ring(_need(doc, "ring", path, str))
    except RingError as e:
        raise SchemaError(f"{path}.ring", str(e)) from None


def formatter(ring: Ring):
    """Turn residual dicts (labels, words or pairs as keys) into JSON."""

    def fmt(x):
        if isinstance(x, dict):
            return {_key(k): ring.format(c) for k, c in sorted(x.items(), key=lambda kv: repr(kv[0]))}
        return ring.format(x)

    return fmt


def _key(k) -> str:
    if isinstance(k, tuple):
        if len(k) == 2 and isinstance(k[0], tuple):
            return "[" + "|".join(k[0]) + "] (x) " + str(k[1])
        return "[" + "|".join(k) + "]"
    return str(k)


# --------------------------------------------------------------------------
# modules and maps


def module_to_json(M: GradedModule) -> dict:
    return {"degrees": {str(d): list(ls) for d, ls in sorted(M.basis.items()) if ls}}


def module_from_json(doc, path: str = "module") -> GradedModule:
    degs = _need(doc, "degrees", path, dict)
    basis = {}
    for k, ls in degs.items():
        try:
            d = int(k)
        except ValueError:
            raise SchemaError(f"{path}.degrees", f"degree key {k!r} is not an integer") from None
        if not isinstance(ls, list) or not all(isinstance(l, str) for l in ls):
            raise SchemaError(f"{path}.degrees.{k}", "expected a list of labels")
        basis[d] = ls
    try:
        return GradedModule(basis)
    except ValueError as e:
        raise SchemaError(path, str(e)) from None


def gmap_to_json(f: GradedMap, ring: Ring | None = None) -> dict:
    ring = ring or f.ring
    entries = [{"from": x, "to": y, "coeff": ring.format(c)}
               for x in f.source.labels for y, c in sorted(f.entries.get(x, {}).items())]
    return {"degree": f.degree, "entries": entries}


def _entries_from_json(doc, ring, path):
    out: dict = {}
    for i, e in enumerate(_need(doc, "entries", path, list)):
        p = f"{path}.entries[{i}]"
        x, y = _need(e, "from", p, str), _need(e, "to", p, str)
        c = _scalar(ring, _need(e, "coeff", p), f"{p}.coeff")
        row = out.setdefault(x, {})
        row[y] = row.get(y, ring.zero()) + c
    return out


def gmap_from_json(doc, source: GradedModule, target: GradedModule, ring: Ring,
                   path: str = "map") -> GradedMap:
    try:
        return GradedMap(source, target, _int(_need(doc, "degree", path), f"{path}.degree"),
                         _entries_from_json(doc, ring, path), ring)
    except SchemaError:
        raise
    except ValueError as e:
        raise SchemaError(path, str(e)) from None


def _loose_map_to_json(entries: dict, source: GradedModule, ring: Ring) -> dict:
    return {"degree": None,
            "entries": [{"from": x, "to": y, "coeff": ring.format(c)}
                        for x in source.labels for y, c in sorted(entries.get(x, {}).items())]}


# --------------------------------------------------------------------------
# cochains


def cochain_to_json(c: Cochain) -> dict:
    comps = []
    for n in sorted(c.components):
        comp = c.components[n]
        entries = [{"inputs": list(w), "output": _fmt_vec(c.ring, comp[w])}
                   for w in sorted(comp)]
        comps.append({"arity": n, "entries": entries})
    return {"degree": c.degree, "max_arity": c.max_arity, "components": comps}


def cochain_from_json(doc, source: GradedModule, target: GradedModule, ring: Ring,
                      path: str = "cochain", max_arity: int | None = None) -> Cochain:
    deg = _int(_need(doc, "degree", path), f"{path}.degree")
    N = _int(_need(doc, "max_arity", path), f"{path}.max_arity") if max_arity is None \
        else max_arity
    comps: dict = {}
    for i, comp in enumerate(_need(doc, "components", path, list)):
        p = f"{path}.components[{i}]"
        n = _int(_need(comp, "arity", p), f"{p}.arity")
        for j, e in enumerate(_need(comp, "entries", p, list)):
            q = f"{p}.entries[{j}]"
            w = _need(e, "inputs", q, list)
            if len(w) != n:
                raise SchemaError(f"{q}.inputs", f"word of length {len(w)} under arity {n}")
            row = comps.setdefault(n, {}).setdefault(tuple(w), {})
            for b, v in _need(e, "output", q, dict).items():
                row[b] = row.get(b, ring.zero()) + _scalar(ring, v, f"{q}.output.{b}")
    try:
        return Cochain(source, target, deg, N, comps, ring)
    except ValueError as e:
        raise SchemaError(path, str(e)) from None


# --------------------------------------------------------------------------
# algebras


def algebra_to_json(alg) -> dict:
    """A nonunital structure ``nu`` or a :class:`SplitUnitAlgebra`."""
    if isinstance(alg, SplitUnitAlgebra):
        return {"type": "split_unit_algebra", "ring": alg.ring.spec,
                "module": module_to_json(alg.module), "unit": alg.unit,
                "mu_bar": cochain_to_json(alg.mu_bar), "h": cochain_to_json(alg.h)}
    return {"type": "ainf_algebra", "ring": alg.ring.spec, "module": module_to_json(alg.source),
            "nu": cochain_to_json(alg)}


def algebra_from_json(doc, ring: Ring | None = None, max_arity: int | None = None):
    """Returns a degree -1 cochain ``nu`` or a :class:`SplitUnitAlgebra`
    (unvalidated; the checkers decide validity)."""
    kind = _need(doc, "type", "", str)
    ring = ring or ring_of(doc)
    M = module_from_json(_need(doc, "module", ""), "module")
    if kind == "ainf_algebra":
        nu = cochain_from_json(_need(doc, "nu", ""), M, M, ring, "nu")
        return _resize(nu, max_arity)
    if kind == "split_unit_algebra":
        unit = _need(doc, "unit", "", str)
        if unit not in M.labels:
            raise SchemaError("unit", f"{unit!r} is not a basis label")
        mu_bar = _resize(cochain_from_json(_need(doc, "mu_bar", ""), M, M, ring, "mu_bar"),
                         max_arity)
        h = _resize(cochain_from_json(_need(doc, "h", ""), M, M, ring, "h"), max_arity)
        try:
            return SplitUnitAlgebra(SplitUnitModule(M, unit), mu_bar, h, validate=False)
        except ValueError as e:
            raise SchemaError("", str(e)) from None
    raise SchemaError("type", f"unknown algebra type {kind!r}")


def _resize(c: Cochain, n: int | None) -> Cochain:
    if n is None or n == c.max_arity:
        return c
    return c.truncate(n) if n < c.max_arity else c.widen(n)


# --------------------------------------------------------------------------
# representations and Shamash systems


def adjoint_to_json(lam: AdjointFamily) -> dict:
    maps = []
    for n in sorted(lam.maps):
        comp = lam.maps[n]
        entries = [{"word": list(w), "from": m, "to": y, "coeff": lam.ring.format(c)}
                   for (w, m) in sorted(comp) for y, c in sorted(comp[(w, m)].items())]
        maps.append({"arity": n, "entries": entries})
    out = {"type": "adjoint_family", "ring": lam.ring.spec, "degree": lam.degree,
           "max_arity": lam.max_arity, "fiber": module_to_json(lam.source), "maps": maps}
    if lam.target != lam.source:
        out["target"] = module_to_json(lam.target)
    return out


def adjoint_from_json(doc, algebra: GradedModule, ring: Ring | None = None,
                      path: str = "") -> AdjointFamily:
    ring = ring or ring_of(doc, path=path)
    M = module_from_json(_need(doc, "fiber", path), f"{path}.fiber")
    T = module_from_json(doc["target"], f"{path}.target") if "target" in doc else M
    deg = _int(_need(doc, "degree", path), f"{path}.degree")
    N = _int(_need(doc, "max_arity", path), f"{path}.max_arity")
    maps: dict = {}
    for i, comp in enumerate(_need(doc, "maps", path, list)):
        p = f"{path}.maps[{i}]"
        n = _int(_need(comp, "arity", p), f"{p}.arity")
        for j, e in enumerate(_need(comp, "entries", p, list)):
            q = f"{p}.entries[{j}]"
            w = tuple(_need(e, "word", q, list))
            key = (w, _need(e, "from", q, str))
            row = maps.setdefault(n, {}).setdefault(key, {})
            y = _need(e, "to", q, str)
            row[y] = row.get(y, ring.zero()) + _scalar(ring, _need(e, "coeff", q), f"{q}.coeff")
    try:
        return AdjointFamily(algebra, M, N, maps, ring, deg, T)
    except ValueError as e:
        raise SchemaError(path, str(e)) from None


def shamash_to_json(sys: ShamashSystem) -> dict:
    return {"type": "shamash_system", "ring": sys.ring.spec, "f": sys.ring.format(sys.f),
            "max_arity": sys.max_arity, "module": module_to_json(sys.module),
            "sigma": [{"n": n, **gmap_to_json(sys.sigma[n])} for n in sorted(sys.sigma)]}


def shamash_from_json(doc, ring: Ring | None = None, f=None) -> ShamashSystem:
    ring = ring or ring_of(doc)
    M = module_from_json(_need(doc, "module", ""), "module")
    fv = _scalar(ring, _need(doc, "f", ""), "f") if f is None else ring.coerce(f)
    sigma = {}
    for i, s in enumerate(_need(doc, "sigma", "", list)):
        p = f"sigma[{i}]"
        n = _int(_need(s, "n", p), f"{p}.n")
        sigma[n] = gmap_from_json(s, M, M, ring, p)
    N = _int(doc.get("max_arity", max(sigma, default=0) + 2), "max_arity")
    try:
        return ShamashSystem(fv, M, sigma, N, ring, validate=False)
    except ValueError as e:
        raise SchemaError("sigma", str(e)) from None


def mf_to_json(mf: MatrixFactorization) -> dict:
    return {"type": "matrix_factorization", "ring": mf.ring.spec, "f": mf.ring.format(mf.f),
            "even": module_to_json(mf.even), "odd": module_to_json(mf.odd),
            "phi": _loose_map_to_json(mf.phi, mf.even, mf.ring),
            "psi": _loose_map_to_json(mf.psi, mf.odd, mf.ring)}


def report_to_json(rep: Report, ring: Ring, **extra) -> dict:
    out = rep.to_json(formatter(ring))
    out.update(extra)
    return out
