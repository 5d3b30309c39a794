"""``pgverify``: load ``.pg`` structure documents and run verification suites.

Exit codes: 0 all checks pass, 1 some check failed, 2 input or parse error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import bialgebra, dynamical, manin, matgroup, nijenhuis, polyfield
from .exterior import KDifferential, Multivector, sort_sign
from .kernel import ParseError, parse_expression
from .lie_core import (BilinearForm, ChevalleyData, LieAlgebra, check_form, chevalley_sl, gl,
                       matrix_lie_algebra, validate_lie_algebra, vec_str)
from .report import CheckReport, aggregate, render, skipped, to_json

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class LoadError(ValueError):
    """Malformed document; ``path`` locates the offending entry."""

    def __init__(self, path, msg):
        super().__init__(f"{path}: {msg}")
        self.path = path


class MissingSection(LoadError):
    pass


# -- scalar and table parsing ------------------------------------------------------------

def _scalar(v, path):
    if isinstance(v, bool) or isinstance(v, float):
        raise LoadError(path, "coefficients must be integers or strings (no floats)")
    if isinstance(v, int):
        return Fraction(v)
    if not isinstance(v, str):
        raise LoadError(path, f"expected a scalar, got {type(v).__name__}")
    try:
        p = parse_expression(v, (), "poly", gaussian=True)
    except ParseError as exc:
        raise LoadError(path, str(exc)) from exc
    return p.constant_value()


def _split_pair(key, open_, close, path):
    key = key.strip()
    if not (key.startswith(open_) and key.endswith(close)):
        raise LoadError(path, f"bracket key {key!r} must look like {open_}a,b{close}")
    parts = [p.strip() for p in key[1:-1].split(",")]
    if len(parts) != 2 or not all(parts):
        raise LoadError(path, f"bracket key {key!r} needs exactly two entries")
    return parts


def _lookup(names, name, path):
    try:
        return names.index(name)
    except ValueError:
        raise LoadError(path, f"unknown name {name!r}") from None


def _mirrored(table, names, open_, close, path, parse):
    """``{(i, j): value}`` with ``i < j``; mirrored keys must carry negated values."""
    out = {}
    for key, raw in table.items():
        p = f"{path}/{key}"
        a, b = _split_pair(key, open_, close, p)
        i, j = _lookup(names, a, p), _lookup(names, b, p)
        v = parse(raw, p)
        if i == j:
            if v:
                raise LoadError(p, "a bracket of an element with itself must vanish")
            continue
        if i > j:
            i, j, v = j, i, -v
        if (i, j) in out:
            if not (out[(i, j)] == v):
                raise LoadError(p, f"duplicate entry for {{{names[i]},{names[j]}}} is not "
                                   "the negated mirror")
            continue
        out[(i, j)] = v
    return out


def _wedge_terms(names, table, path, grade=None, strip_d=False):
    """``{"a^b": coeff}`` to sorted ``{(i, j): coeff}`` with permutation signs."""
    if not isinstance(table, dict):
        raise LoadError(path, "expected an object of wedge monomials")
    out = {}
    for key, raw in table.items():
        p = f"{path}/{key}"
        legs = [s.strip() for s in key.split("^")]
        if strip_d:
            legs = [s[1:] if s not in names and s.startswith("d") else s for s in legs]
        idx = [_lookup(names, s, p) for s in legs]
        if grade is not None and len(idx) != grade:
            raise LoadError(p, f"expected a degree-{grade} monomial")
        sign, srt = sort_sign(idx)
        if sign == 0:
            raise LoadError(p, "repeated factor in a wedge monomial")
        v = out.get(srt, 0) + sign * _scalar(raw, p)
        if v:
            out[srt] = v
        else:
            out.pop(srt, None)
    return out


def _matrix(rows, path, parse=None):
    parse = parse or _scalar
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise LoadError(path, "expected a list of rows")
    n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise LoadError(path, "ragged matrix")
    return [[parse(v, f"{path}[{i}][{j}]") for j, v in enumerate(r)] for i, r in enumerate(rows)]


# -- the document ------------------------------------------------------------------------

@dataclass
class Document:
    source: str
    raw: dict
    algebra: LieAlgebra | None = None
    chevalley: ChevalleyData | None = None
    form: BilinearForm | None = None
    r: Multivector | None = None
    delta: KDifferential | None = None
    phi: Multivector | None = None
    manin: manin.ManinData | None = None
    chart: polyfield.Chart | None = None
    pi: polyfield.PolyField | None = None
    three_form: polyfield.PolyField | None = None
    twisted_scale: Fraction = Fraction(1)
    tensor_n: nijenhuis.TensorN | None = None
    dynamical: dynamical.DynamicalR | None = None
    matrix_group: dict | None = None
    action: list | None = None
    sections: set = field(default_factory=set)


SECTIONS = ("lie_algebra", "bilinear_form", "cobracket", "r_matrix", "phi", "manin", "poisson",
            "three_form", "tensor_n", "dynamical", "matrix_group", "action")


def _need(doc, *names, within="document"):
    for s in names:
        if s not in doc.sections:
            raise MissingSection(s, f"section {s!r} is required by {within}")


def _load_lie(spec, path):
    if not isinstance(spec, dict):
        raise LoadError(path, "expected an object")
    preset = spec.get("preset")
    if preset is not None:
        n = spec.get("n")
        if not isinstance(n, int) or n < 1:
            raise LoadError(f"{path}/n", "preset needs a positive integer n")
        if preset == "sl":
            L, data, K = chevalley_sl(n)
            return L, data, K
        if preset == "gl":
            return gl(n), None, None
        raise LoadError(f"{path}/preset", f"unknown preset {preset!r}")
    if "matrices" in spec:
        mats = spec["matrices"]
        if not isinstance(mats, dict) or not mats:
            raise LoadError(f"{path}/matrices", "expected a non-empty object")
        names = list(mats)
        ms = [_matrix(mats[k], f"{path}/matrices/{k}") for k in names]
        try:
            return matrix_lie_algebra(names, ms), None, None
        except ValueError as exc:
            raise LoadError(f"{path}/matrices", str(exc)) from exc
    names = spec.get("basis")
    if not isinstance(names, list) or not names or not all(isinstance(b, str) for b in names):
        raise LoadError(f"{path}/basis", "expected a non-empty list of names")
    if len(set(names)) != len(names):
        raise LoadError(f"{path}/basis", "duplicate basis names")
    n = len(names)

    def linear(raw, p):
        if not isinstance(raw, str):
            raw = str(raw)
        try:
            poly = parse_expression(raw, names)
        except ParseError as exc:
            raise LoadError(p, str(exc)) from exc
        vec = [Fraction(0)] * n
        for exps, c in poly.terms.items():
            if sum(exps) != 1:
                raise LoadError(p, f"{raw!r} is not a linear combination of basis elements")
            vec[exps.index(1)] = c
        return _Vec(vec)

    table = _mirrored(spec.get("brackets", {}), names, "[", "]", f"{path}/brackets", linear)
    return LieAlgebra.from_brackets(names, {k: v.v for k, v in table.items()}), None, None


class _Vec:
    """Coefficient list with the negation and equality the mirror check needs."""

    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __neg__(self):
        return _Vec([-x for x in self.v])

    def __eq__(self, other):
        return self.v == other.v

    def __bool__(self):
        return any(self.v)


def _load_form(spec, doc, path):
    L = doc.algebra
    if spec.get("trace"):
        if L.matrices is None:
            raise LoadError(f"{path}/trace", "the trace form needs a matrix realization")
        ms = L.matrices
        n = L.dim
        rows = [[sum((ms[a][i][k] * ms[b][k][i] for i in range(len(ms[a])) for k in range(len(ms[a]))),
                     Fraction(0)) for b in range(n)] for a in range(n)]
        return BilinearForm.of(rows)
    if "matrix" in spec:
        m = _matrix(spec["matrix"], f"{path}/matrix")
        if len(m) != L.dim or len(m[0]) != L.dim:
            raise LoadError(f"{path}/matrix", f"must be {L.dim}x{L.dim}")
        return BilinearForm.of(m)
    raise LoadError(path, "give 'trace': true or a 'matrix'")


def _load_r(spec, doc, path):
    L = doc.algebra
    if isinstance(spec, dict) and spec.get("chevalley"):
        if doc.chevalley is None:
            raise LoadError(f"{path}/chevalley", "needs the 'sl' preset")
        return bialgebra.chevalley_r_matrix(doc.chevalley)
    terms = spec.get("terms", {}) if isinstance(spec, dict) else None
    if terms is None:
        raise LoadError(path, "expected an object")
    return Multivector(L, 2, _wedge_terms(L.basis_names, terms, f"{path}/terms", 2))


def _load_cobracket(spec, doc, path):
    L = doc.algebra
    if spec.get("coboundary"):
        if doc.r is None:
            raise LoadError(f"{path}/coboundary", "needs an r_matrix section")
        return bialgebra.Cobracket.coboundary(doc.r)
    images = spec.get("images")
    if not isinstance(images, dict):
        raise LoadError(path, "give 'coboundary': true or 'images'")
    imgs = [Multivector.zero(L, 2) for _ in range(L.dim)]
    for name, terms in images.items():
        i = _lookup(list(L.basis_names), name, f"{path}/images")
        imgs[i] = Multivector(L, 2, _wedge_terms(L.basis_names, terms, f"{path}/images/{name}", 2))
    return bialgebra.Cobracket(L, imgs)


def _load_manin(spec, doc, path):
    preset = spec.get("preset")
    if preset == "direct_sum":
        if doc.algebra is None or doc.form is None:
            raise LoadError(path, "the direct_sum preset needs lie_algebra and bilinear_form")
        h = _scalar(spec.get("h_scale", "1/2"), f"{path}/h_scale")
        return manin.direct_sum_double(doc.algebra, doc.form, h)
    if preset == "twisted_double":
        if doc.delta is None:
            raise LoadError(path, "the twisted_double preset needs a cobracket")
        n = doc.algebra.dim
        A = _matrix(spec.get("A", [[0] * n for _ in range(n)]), f"{path}/A")
        return manin.twisted_double(doc.delta, A)
    if preset is not None:
        raise LoadError(f"{path}/preset", f"unknown preset {preset!r}")
    d, _, _ = _load_lie(spec.get("double"), f"{path}/double")
    pm = _matrix(spec.get("pairing"), f"{path}/pairing")
    g_basis = _matrix(spec.get("g_basis"), f"{path}/g_basis")
    h_basis = _matrix(spec.get("h_basis"), f"{path}/h_basis")
    try:
        return manin.ManinData(d, BilinearForm.of(pm), g_basis, h_basis,
                               tuple(spec.get("g_names", ())))
    except ValueError as exc:
        raise LoadError(path, str(exc)) from exc


def _load_poisson(spec, path):
    names = spec.get("chart")
    if not isinstance(names, list) or not names:
        raise LoadError(f"{path}/chart", "expected a list of coordinate names")
    try:
        chart = polyfield.Chart(names, spec.get("mode", "poly"), spec.get("gaussian", False))
    except ValueError as exc:
        raise LoadError(path, str(exc)) from exc

    def expr(raw, p):
        try:
            return chart.parse(str(raw))
        except ParseError as exc:
            raise LoadError(p, str(exc)) from exc

    table = _mirrored(spec.get("brackets", {}), list(names), "{", "}", f"{path}/brackets", expr)
    return chart, polyfield.bivector(chart, table), expr


def ingest(text: str, source="<string>") -> Document:
    """Parse and resolve a document; raises :class:`LoadError` or :class:`ParseError`."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LoadError("/", f"invalid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise LoadError("/", "a document is a JSON object")
    unknown = sorted(set(raw) - set(SECTIONS) - {"description"})
    if unknown:
        raise LoadError("/", f"unknown section(s): {', '.join(unknown)}")
    doc = Document(source, raw, sections={s for s in SECTIONS if s in raw})
    if "lie_algebra" in raw:
        doc.algebra, doc.chevalley, doc.form = _load_lie(raw["lie_algebra"], "/lie_algebra")
    for s in ("bilinear_form", "cobracket", "r_matrix", "phi", "dynamical", "matrix_group"):
        if s in raw:
            _need(doc, "lie_algebra", within=f"section {s!r}")
    if "bilinear_form" in raw:
        doc.form = _load_form(raw["bilinear_form"], doc, "/bilinear_form")
    if "r_matrix" in raw:
        doc.r = _load_r(raw["r_matrix"], doc, "/r_matrix")
    if "cobracket" in raw:
        doc.delta = _load_cobracket(raw["cobracket"], doc, "/cobracket")
    if "phi" in raw:
        L = doc.algebra
        doc.phi = Multivector(L, 3, _wedge_terms(L.basis_names, raw["phi"], "/phi", 3))
    if "manin" in raw:
        doc.manin = _load_manin(raw["manin"], doc, "/manin")
    expr = None
    if "poisson" in raw:
        doc.chart, doc.pi, expr = _load_poisson(raw["poisson"], "/poisson")
    for s in ("three_form", "tensor_n", "action"):
        if s in raw:
            _need(doc, "poisson", within=f"section {s!r}")
    if "three_form" in raw:
        spec = raw["three_form"]
        chart = doc.chart
        terms = {}
        for key, v in spec.get("terms", {}).items():
            p = f"/three_form/terms/{key}"
            legs = [s.strip() for s in key.split("^")]
            legs = [s[1:] if s not in chart.names and s.startswith("d") else s for s in legs]
            idx = [_lookup(list(chart.names), s, p) for s in legs]
            if len(idx) != 3:
                raise LoadError(p, "expected a 3-form monomial")
            sign, srt = sort_sign(idx)
            if sign == 0:
                raise LoadError(p, "repeated factor")
            terms[srt] = terms.get(srt, chart.zero()) + expr(v, p) * sign
        doc.three_form = polyfield.PolyField(chart, polyfield.FORM, 3, terms)
        doc.twisted_scale = _scalar(spec.get("twisted_scale", 1), "/three_form/twisted_scale")
    if "tensor_n" in raw:
        m = _matrix(raw["tensor_n"].get("matrix"), "/tensor_n/matrix", expr)
        try:
            doc.tensor_n = nijenhuis.TensorN(doc.chart, m)
        except ValueError as exc:
            raise LoadError("/tensor_n/matrix", str(exc)) from exc
    if "dynamical" in raw:
        spec = raw["dynamical"]
        L = doc.algebra
        cartan = spec.get("cartan", [])
        for c in cartan:
            _lookup(list(L.basis_names), c, "/dynamical/cartan")
        lam = spec.get("lambda") or [f"l{i + 1}" for i in range(len(cartan))]
        table = {}
        for key, v in spec.get("r_of_lambda", {}).items():
            p = f"/dynamical/r_of_lambda/{key}"
            legs = [s.strip() for s in key.split("^")]
            if len(legs) != 2:
                raise LoadError(p, "expected a bivector monomial")
            for s in legs:
                _lookup(list(L.basis_names), s, p)
            try:
                table[tuple(legs)] = parse_expression(str(v), lam, mode="ratfunc")
            except ParseError as exc:
                raise LoadError(p, str(exc)) from exc
        try:
            doc.dynamical = dynamical.DynamicalR.from_table(L, cartan, table, lam)
        except ValueError as exc:
            raise LoadError("/dynamical", str(exc)) from exc
    if "matrix_group" in raw:
        spec = dict(raw["matrix_group"])
        if spec.get("group", "GL") not in matgroup.GROUPS:
            raise LoadError("/matrix_group/group", f"must be one of {matgroup.GROUPS}")
        if doc.algebra.matrices is None:
            raise LoadError("/matrix_group", "the Lie algebra needs a matrix realization")
        if "r_matrix" in spec:
            spec["r"] = _load_r(spec["r_matrix"], doc, "/matrix_group/r_matrix")
        elif doc.r is not None:
            spec["r"] = doc.r
        else:
            raise LoadError("/matrix_group", "needs an r_matrix (inline or as a section)")
        if "derivative_X" in spec:
            spec["derivative_X"] = _matrix(spec["derivative_X"], "/matrix_group/derivative_X")
        doc.matrix_group = spec
    if "action" in raw:
        _need(doc, "lie_algebra", "cobracket", within="section 'action'")
        L = doc.algebra
        fields = raw["action"].get("vector_fields", {})
        rho = []
        for name in L.basis_names:
            comps = fields.get(name)
            if not isinstance(comps, list) or len(comps) != doc.chart.dim:
                raise LoadError(f"/action/vector_fields/{name}",
                                f"expected {doc.chart.dim} components")
            rho.append(polyfield.vector_field(doc.chart, [expr(c, f"/action/vector_fields/{name}")
                                                         for c in comps]))
        doc.action = rho
    return doc


def load(path) -> Document:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise LoadError(str(path), f"cannot read: {exc}") from exc
    return ingest(text, str(path))


# -- checks ----------------------------------------------------------------------------------

def _named(name, rep: CheckReport) -> CheckReport:
    return aggregate(name, [rep])


def run_check_lie(doc, opts):
    _need(doc, "lie_algebra", within="check-lie")
    reps = [validate_lie_algebra(doc.algebra)]
    if doc.form is not None:
        reps.append(check_form(doc.algebra, doc.form))
    return aggregate("check-lie", reps, details={"dim": doc.algebra.dim})


def run_check_rmatrix(doc, opts):
    _need(doc, "lie_algebra", "r_matrix", within="check-rmatrix")
    reps = [bialgebra.check_r_matrix(doc.r)]
    spec = doc.raw["r_matrix"]
    if isinstance(spec, dict) and spec.get("compact") and doc.chevalley is not None:
        reps.append(bialgebra.check_compact_r_matrix(doc.chevalley))
    return aggregate("check-rmatrix", reps, details={"r": str(doc.r)})


def run_check_bialgebra(doc, opts):
    _need(doc, "lie_algebra", "cobracket", within="check-bialgebra")
    return aggregate("check-bialgebra", [bialgebra.check_bialgebra(doc.delta),
                                         bialgebra.check_double_compatibility(doc.delta)])


def run_check_quasi(doc, opts):
    _need(doc, "lie_algebra", "cobracket", "phi", within="check-quasi")
    q = bialgebra.QuasiBialgebra(doc.delta, doc.phi)
    return _named("check-quasi", bialgebra.check_quasi_bialgebra(q))


def run_dualize(doc, opts):
    _need(doc, "lie_algebra", "cobracket", within="dualize")
    D = bialgebra.dual_bracket(doc.delta)
    brackets = {}
    for i in range(D.dim):
        for j in range(i + 1, D.dim):
            v = D.bracket(D.basis_vector(i), D.basis_vector(j))
            if any(v):
                brackets[f"[{D.basis_names[i]},{D.basis_names[j]}]"] = vec_str(D, v)
    return aggregate("dualize", [validate_lie_algebra(D),
                                 bialgebra.check_delta_squared(doc.delta)],
                     details={"brackets": brackets})


def run_manin_extract(doc, opts):
    _need(doc, "manin", within="manin-extract")
    m = doc.manin
    rep = manin.validate_manin(m)
    if not rep:
        return aggregate("manin-extract", [rep])
    q, _ = manin._extract(m)
    F = {m.g_names[i]: str(img) for i, img in enumerate(q.delta.images) if img.terms}
    return aggregate("manin-extract", [rep, bialgebra.check_quasi_bialgebra(q)],
                     details={"F": F, "phi": str(q.phi)})


def run_check_poisson(doc, opts):
    _need(doc, "poisson", within="check-poisson")
    return _named("check-poisson", polyfield.is_poisson(doc.pi))


def run_check_twisted(doc, opts):
    _need(doc, "poisson", "three_form", within="check-twisted")
    tw = polyfield.TwistedCotangent(doc.pi, doc.three_form)
    return aggregate("check-twisted", [
        polyfield.check_twisted(doc.pi, doc.three_form, doc.twisted_scale),
        polyfield.check_quasi_algebroid(tw.algebroid, tw.delta, doc.three_form),
    ])


def run_check_pn(doc, opts):
    _need(doc, "poisson", "tensor_n", within="check-pn")
    return _named("check-pn", nijenhuis.check_pn(doc.pi, doc.tensor_n))


def run_check_pqn(doc, opts):
    _need(doc, "poisson", "tensor_n", "three_form", within="check-pqn")
    return aggregate("check-pqn", [
        nijenhuis.check_pqn(doc.pi, doc.tensor_n, doc.three_form),
        nijenhuis.check_lemma_pnij(nijenhuis.d_N_derivation(doc.tensor_n)),
        nijenhuis.check_qn_coherence(doc.pi, doc.tensor_n, doc.three_form),
    ])


def run_check_prop310(doc, opts):
    _need(doc, "poisson", "tensor_n", "three_form", within="check-prop310")
    return _named("check-prop310", nijenhuis.check_prop_310(doc.pi, doc.tensor_n, doc.three_form))


def run_check_dynamical(doc, opts):
    _need(doc, "lie_algebra", "dynamical", within="check-dynamical")
    reps = [dynamical.check_dynamical(doc.dynamical)]
    if opts.numeric_dynamical:
        if doc.chevalley is None:
            reps.append(skipped("dynamical_numeric", "the coth family needs the 'sl' preset"))
        else:
            data = doc.chevalley
            pts = [[Fraction(2 * k + 1, 3 + j) for j in range(data.rank)] for k in range(3)]
            reps.append(dynamical.check_dynamical_numeric(
                data.algebra, data.h, dynamical.coth_family(data), pts))
    return aggregate("check-dynamical", reps)


def run_check_multiplicative(doc, opts):
    _need(doc, "lie_algebra", "matrix_group", within="check-multiplicative")
    spec = doc.matrix_group
    samples = opts.samples if opts.samples is not None else spec.get("samples", 20)
    seed = opts.seed if opts.seed is not None else spec.get("seed", 0)
    reps = [matgroup.sample_checks(spec["r"], spec.get("group", "GL"), samples, seed)]
    if "derivative_X" in spec:
        reps.append(matgroup.check_tilde_derivative(spec["r"], spec["derivative_X"],
                                                    spec.get("derivative_against", "[X,r]")))
    return aggregate("check-multiplicative", reps)


def run_check_action(doc, opts):
    _need(doc, "lie_algebra", "cobracket", "poisson", "action", within="check-action")
    return _named("check-action", polyfield.poisson_action_check(doc.action, doc.delta, doc.pi))


COMMANDS = {
    "check-lie": (run_check_lie, ("lie_algebra",)),
    "check-rmatrix": (run_check_rmatrix, ("lie_algebra", "r_matrix")),
    "check-bialgebra": (run_check_bialgebra, ("lie_algebra", "cobracket")),
    "check-quasi": (run_check_quasi, ("lie_algebra", "cobracket", "phi")),
    "dualize": (run_dualize, ("lie_algebra", "cobracket")),
    "manin-extract": (run_manin_extract, ("manin",)),
    "check-poisson": (run_check_poisson, ("poisson",)),
    "check-twisted": (run_check_twisted, ("poisson", "three_form")),
    "check-pn": (run_check_pn, ("poisson", "tensor_n")),
    "check-pqn": (run_check_pqn, ("poisson", "tensor_n", "three_form")),
    "check-prop310": (run_check_prop310, ("poisson", "tensor_n", "three_form")),
    "check-dynamical": (run_check_dynamical, ("lie_algebra", "dynamical")),
    "check-multiplicative": (run_check_multiplicative, ("lie_algebra", "matrix_group")),
    "check-action": (run_check_action, ("lie_algebra", "cobracket", "poisson", "action")),
}


def run_all(doc, opts):
    """Every check whose sections are present; the rest are reported as skipped."""
    reps = []
    for name in sorted(COMMANDS):
        fn, needs = COMMANDS[name]
        missing = [s for s in needs if s not in doc.sections]
        if missing:
            reps.append(skipped(name, f"missing section(s): {', '.join(missing)}"))
        else:
            reps.append(fn(doc, opts))
    return reps


def run(command, path, opts) -> CheckReport:
    """Report for one file; raises LoadError / ParseError on bad input."""
    doc = load(path)
    name = Path(path).name
    if command == "all":
        return aggregate(name, run_all(doc, opts))
    fn, _ = COMMANDS[command]
    return aggregate(name, [fn(doc, opts)])


def _expand(paths):
    out = []
    for p in paths:
        p = Path(p)
        if p.is_dir():
            out.extend(sorted(p.glob("*.pg")))
        else:
            out.append(p)
    return out


def _error_report(name, msg):
    return CheckReport(name, "error", note=msg)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="pgverify", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=sorted(COMMANDS) + ["all"])
    parser.add_argument("files", nargs="+", help=".pg documents or directories of them")
    parser.add_argument("--json", action="store_true", help="write the report JSON to stdout")
    parser.add_argument("--seed", type=int, default=None, help="seed for randomized sampling")
    parser.add_argument("--samples", type=int, default=None, help="random pair count")
    parser.add_argument("--numeric-dynamical", action="store_true",
                        help="also run the non-certifying numeric coth spot check")
    opts = parser.parse_args(argv)

    files = _expand(opts.files)
    if not files:
        print("error: no .pg documents found", file=sys.stderr)
        return EXIT_INPUT
    reports, input_error = [], False
    for f in files:
        try:
            reports.append(run(opts.command, f, opts))
        except (LoadError, ParseError) as exc:
            input_error = True
            print(f"error: {f}: {exc}", file=sys.stderr)
            reports.append(_error_report(f.name, str(exc)))
    top = reports[0] if len(reports) == 1 else aggregate("pgverify", reports)
    if opts.json:
        print(to_json(top, include_timing=False))
    else:
        print(render(top))
    if input_error:
        return EXIT_INPUT
    return EXIT_PASS if top.status in ("pass", "skipped") else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
