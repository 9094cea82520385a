"""End-to-end analysis of one element: PF data, a(n), b(n) and diagnostics."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from . import _exact
from .action_graph import ActionMatrix, action_matrix, unit_component
from .asymptotics import (
    AsymptoticFormula,
    character_asymptotics,
    convergence_ratio_estimate,
    exact_agreement,
    formula_from_pf,
    growth_from_matrix,
    ratio_table,
    root_test,
)
from .based_algebra import (
    CharacterTable,
    Element,
    StructureTensor,
    from_character_table,
    power_expand,
    total_coefficient_sum,
)
from .catalog import CatalogEntry
from .errors import InputError, InsufficientData, NotFaithful
from .formats import Document, SCHEMA_VERSION
from .spectral import pf_data

DEFAULT_NMAX = 40
MAX_NMAX = 200
ORACLE_NMAX = 12
ROOT_TEST_N = 40
ROOT_TEST_TOL = 0.05
#: Reference ratios at or above this count as slow convergence.
SLOW_RATIO = 0.8
FIT_TOL = 0.1


@dataclass
class Subject:
    """Everything needed to analyze one element, whatever the input source."""

    matrix: ActionMatrix
    algebra: StructureTensor | None = None
    element: Element | None = None
    table: CharacterTable | None = None
    table_element: tuple | None = None
    meta: dict = field(default_factory=dict)
    expected: AsymptoticFormula | None = None


# -- element specs ------------------------------------------------------------

def parse_element_spec(spec: str, labels) -> list:
    """A basis label, or a comma separated list of (rational) coefficients."""
    spec = spec.strip()
    labels = list(labels)
    if spec in labels:
        out = [0] * len(labels)
        out[labels.index(spec)] = 1
        return out
    parts = [p for p in spec.split(",")]
    if len(parts) == 1 and not _looks_numeric(spec):
        raise InputError(f"unknown basis label {spec!r}; labels are {', '.join(labels)}")
    values = [_exact.to_exact(p) for p in parts]
    if len(values) != len(labels):
        raise InputError(f"element has {len(values)} coefficients, basis has {len(labels)}")
    return values


def _looks_numeric(s: str) -> bool:
    try:
        _exact.to_exact(s)
        return True
    except InputError:
        return False


# -- building subjects ----------------------------------------------------------

def formula_to_dict(f: AsymptoticFormula) -> dict:
    return {
        "base": f.base,
        "period": f.period,
        "coefficients": [[c.real, c.imag] for c in f.coefficients],
        "provenance": f.provenance,
    }


def formula_from_dict(d: dict) -> AsymptoticFormula:
    try:
        coeffs = tuple(complex(re, im) for re, im in d["coefficients"])
        return AsymptoticFormula(float(d["base"]), int(d["period"]), coeffs,
                                 d.get("provenance", "catalog-closed-form"))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed expected_formula in meta: {exc}") from None


def entry_meta(entry: CatalogEntry) -> dict:
    meta = {
        "name": entry.name,
        "params": dict(entry.params),
        "exactness": entry.exactness,
        "extrapolated": entry.extrapolated,
        "notes": list(entry.notes),
    }
    if entry.expected_formula is not None:
        meta["expected_formula"] = formula_to_dict(entry.expected_formula)
    return meta


def subject_from_entry(entry: CatalogEntry, element_spec: str | None = None) -> Subject:
    subj = Subject(
        matrix=entry.matrix,
        algebra=entry.algebra,
        element=entry.element,
        table=entry.character_table,
        table_element=entry.character_element,
        meta=entry_meta(entry),
        expected=entry.expected_formula,
    )
    if element_spec is None:
        return subj
    if entry.matrix_only:
        raise InputError(f"{entry.name} is a matrix-only entry; --element is not supported")
    if entry.character_table is not None:
        coeffs = parse_element_spec(element_spec, entry.character_table.row_labels())
        new = _subject_from_table(entry.character_table, coeffs, subj.meta)
    else:
        coeffs = parse_element_spec(element_spec, entry.algebra.labels)
        elem = Element(tuple(coeffs))
        new = replace(subj, element=elem, matrix=action_matrix(entry.algebra, elem))
    if new.element == entry.element:
        return replace(new, expected=subj.expected)
    meta = dict(new.meta, exactness=None)
    meta.pop("expected_formula", None)
    return replace(new, meta=meta, expected=None)


def _subject_from_table(table: CharacterTable, coeffs, meta) -> Subject:
    alg = from_character_table(table)
    elem = table.element(coeffs)
    return Subject(
        matrix=action_matrix(alg, elem), algebra=alg, element=elem,
        table=table, table_element=tuple(coeffs), meta=dict(meta),
    )


def subject_from_document(doc: Document, element_spec: str | None = None) -> Subject:
    meta = dict(doc.meta)
    expected = formula_from_dict(meta["expected_formula"]) if "expected_formula" in meta else None
    if doc.kind == "matrix":
        if element_spec is not None:
            raise InputError("--element does not apply to a raw action matrix")
        subj = Subject(matrix=unit_component(doc.matrix), meta=meta)
    else:
        labels = doc.algebra.labels if doc.kind == "algebra" else doc.table.row_labels()
        if element_spec is not None:
            coeffs = parse_element_spec(element_spec, labels)
        elif doc.element is not None:
            coeffs = [_exact.to_exact(x) for x in doc.element]
        else:
            raise InputError("no element given: pass --element or add an 'element' key")
        if doc.kind == "algebra":
            elem = Element(tuple(coeffs))
            subj = Subject(matrix=action_matrix(doc.algebra, elem), algebra=doc.algebra,
                           element=elem, meta=meta)
        else:
            subj = _subject_from_table(doc.table, coeffs, meta)
        if element_spec is not None and doc.element is not None and \
                [_exact.to_exact(x) for x in doc.element] != list(coeffs):
            meta.pop("expected_formula", None)
            meta["exactness"] = None
            expected = None
    return replace(subj, expected=expected)


# -- the pipeline ---------------------------------------------------------------

def oracle_check(alg: StructureTensor, elem: Element, values, n_max: int) -> bool:
    """Compare matrix-iteration ``b(n)`` with brute-force power expansion."""
    return all(
        total_coefficient_sum(power_expand(alg, elem, n)) == values[n] for n in range(n_max + 1)
    )


def _distance(f: AsymptoticFormula, g: AsymptoticFormula) -> float:
    return max(abs(f.base - g.base), f.coefficient_distance(g))


def analyze(subject: Subject, n_max: int = DEFAULT_NMAX, *, strict_faithful: bool = False):
    """Run the pipeline; returns ``(report, ratio_rows)``.

    PFPropertyViolation and the other module errors propagate to the caller.
    """
    if not 0 <= n_max <= MAX_NMAX:
        raise InputError(f"n_max must lie in [0, {MAX_NMAX}], got {n_max}")
    m = subject.matrix
    warnings: list[str] = []

    pf = pf_data(m)
    formula = formula_from_pf(pf, m.unit_position)
    seq = growth_from_matrix(m, n_max, subject.element)
    rows = ratio_table(seq, formula)

    try:
        conv = convergence_ratio_estimate(rows, pf)
        convergence = {
            "estimate": conv.estimate,
            "reference": conv.reference,
            "consistent": conv.consistent,
            "exact_match": conv.exact_match,
            "rows_used": conv.rows_used,
        }
        if not conv.consistent and not conv.exact_match:
            how = "faster" if conv.estimate < conv.reference else "slower"
            warnings.append(
                f"fitted ratio {conv.estimate:.4f} is not within {FIT_TOL:.0%} of "
                f"|lambda_sec|/lambda = {conv.reference:.4f} (decay is {how})"
            )
    except InsufficientData as exc:
        convergence = None
        warnings.append(f"no convergence estimate: {exc}")

    if pf.ratio >= SLOW_RATIO:
        warnings.append(f"slow convergence: |lambda_sec|/lambda = {pf.ratio:.4f}")
    if not pf.irreducible:
        warnings.append("reducible action matrix: period detected from the spectrum")
    if subject.meta.get("extrapolated"):
        warnings.append("extrapolated generator: matrix pattern not checked against published data")

    root = None
    if n_max >= 1:
        rn = min(ROOT_TEST_N, n_max)
        value = root_test(seq[rn], rn)
        rel = abs(value - pf.lam) / pf.lam
        root = {"n": rn, "value": value, "relative_error": rel, "within_tolerance": rel <= ROOT_TEST_TOL}
        if rel > ROOT_TEST_TOL:
            warnings.append(f"root test b({rn})^(1/{rn}) is {rel:.1%} from lambda")

    expected = None
    if subject.expected is not None:
        d = _distance(formula, subject.expected)
        expected = dict(formula_to_dict(subject.expected), distance=d, agrees=d <= 1e-9)

    character = None
    if subject.table is not None:
        try:
            cf = character_asymptotics(subject.table, subject.table_element,
                                       strict_faithful=True)
            d = _distance(formula, cf)
            character = dict(formula_to_dict(cf), distance=d, agrees=d <= 1e-9, faithful=True)
        except NotFaithful:
            if strict_faithful:
                raise
            warnings.append("non-faithful element: character formula replaced by the spectral one")
            character = {"faithful": False}

    if subject.algebra is not None:
        on = min(n_max, ORACLE_NMAX)
        oracle = {"checked": True, "n_max": on,
                  "agrees": oracle_check(subject.algebra, subject.element, seq.values, on)}
        if not oracle["agrees"]:
            warnings.append("matrix iteration disagrees with power expansion")
    else:
        oracle = {"checked": False, "reason": "matrix-only input: no structure tensor"}

    exact_n1 = exact_agreement(seq, formula, start=1)
    report = {
        "schema_version": SCHEMA_VERSION,
        "entry": {
            "name": subject.meta.get("name", "input"),
            "params": subject.meta.get("params", {}),
            "exactness_claim": subject.meta.get("exactness"),
            "extrapolated": bool(subject.meta.get("extrapolated", False)),
            "notes": list(subject.meta.get("notes", [])),
        },
        "element": None if subject.element is None else {
            "coefficients": [_exact.format_exact(x) for x in subject.element],
            "labels": list(subject.algebra.labels),
        },
        "action_matrix": {
            "size": m.size,
            "labels": None if m.labels is None else list(m.labels),
        },
        "pf": {
            "lambda": pf.lam,
            "period": pf.period,
            "period_source": pf.period_source,
            "second_modulus": pf.second_modulus,
            "ratio": pf.ratio,
            "pf_property_holds": pf.pf_property_holds,
            "irreducible": pf.irreducible,
        },
        "formula": formula_to_dict(formula),
        "expected_formula": expected,
        "character_formula": character,
        "exactness": {
            "n_max": n_max,
            "exact_from_n1": exact_n1,
            "exact_from_n0": exact_n1 and exact_agreement(seq, formula, start=0),
        },
        "convergence": convergence,
        "root_test": root,
        "oracle": oracle,
        "ratio_table": [
            {"n": r.n, "b": _exact.format_exact(r.b), "a": r.a, "ratio": r.ratio} for r in rows
        ],
        "warnings": warnings,
    }
    return report, rows


def summary_lines(report: dict) -> list[str]:
    """Short human-readable digest of a report."""
    e, pf, f = report["entry"], report["pf"], report["formula"]
    title = e["name"]
    if e["params"]:
        title += "(" + ", ".join(f"{k}={v}" for k, v in e["params"].items()) + ")"
    coeffs = ", ".join(
        f"{re:.10g}" if abs(im) < 1e-15 else f"{re:.10g}{im:+.10g}i" for re, im in f["coefficients"]
    )
    out = [
        f"{title}: lambda = {pf['lambda']:.12g}, period h = {pf['period']} ({pf['period_source']})",
        f"  coefficients c_k: {coeffs}",
        f"  |lambda_sec|/lambda = {pf['ratio']:.6g}, irreducible = {pf['irreducible']}",
    ]
    if report["expected_formula"] is not None:
        out.append(f"  expected formula distance: {report['expected_formula']['distance']:.3g}")
    ch = report["character_formula"]
    if ch is not None and ch.get("faithful"):
        out.append(f"  character formula distance: {ch['distance']:.3g}")
    ex = report["exactness"]
    out.append(f"  b(n) = a(n) exactly for 1 <= n <= {ex['n_max']}: {ex['exact_from_n1']}")
    conv = report["convergence"]
    if conv is not None:
        if conv["exact_match"]:
            out.append("  convergence: exact match (no deviations above the noise floor)")
        else:
            out.append(f"  convergence ratio: fitted {conv['estimate']:.6g}, "
                       f"reference {conv['reference']:.6g}")
    if report["root_test"] is not None:
        rt = report["root_test"]
        out.append(f"  root test b({rt['n']})^(1/{rt['n']}) = {rt['value']:.6g}")
    if not report["oracle"]["checked"]:
        out.append(f"  oracle check skipped ({report['oracle']['reason']})")
    out += [f"  warning: {w}" for w in report["warnings"]]
    return out

