"""CSV and JSON serialization of sweeps, identity reports, and scan results.

Numbers are printed with 17 significant digits so that parsing the emitted
text reproduces the exact float64 values. JSON documents round-trip to equal
objects; CSV documents round-trip to identical text (the CSV carries the
documented numeric columns, JSON additionally carries applicability flags,
notes, and the symmetry classification).
"""
from __future__ import annotations

import csv
import io as _io
import json
import math

from .identities import IDENTITY_IDS, IdentityEntry, IdentityReport, PhaseRecord
from .potentials import SymmetryClass
from .scan import Feature, ScanResult, SweepResult
from .transfer import ScatteringData

CSV_FORMAT = "csv"
JSON_FORMAT = "json"


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    v = float(x)
    if v == 0.0:  # normalize -0.0
        return "0"
    return "%.17g" % v


def _parse_opt_float(cell: str):
    return None if cell == "" else float(cell)


def _parse_opt_int(cell: str):
    return None if cell == "" else int(cell)


def _parse_bool(cell: str) -> bool:
    return cell == "true"


def _c2j(z: complex):
    return {"re": z.real, "im": z.imag}


def _j2c(obj) -> complex:
    return complex(obj["re"], obj["im"])


# --- sweep tables -----------------------------------------------------------

SWEEP_COLUMNS = (
    "k", "re_T", "im_T", "re_R_left", "im_R_left", "re_R_right", "im_R_right",
    "abs2_T", "abs2_R_left", "abs2_R_right", "re_D", "im_D",
    "condition", "finite", "backend",
)


def _scattering_row(s: ScatteringData) -> list[str]:
    return [
        _fmt(s.k),
        _fmt(s.T.real), _fmt(s.T.imag),
        _fmt(s.R_left.real), _fmt(s.R_left.imag),
        _fmt(s.R_right.real), _fmt(s.R_right.imag),
        _fmt(abs(s.T) ** 2), _fmt(abs(s.R_left) ** 2), _fmt(abs(s.R_right) ** 2),
        _fmt(s.D.real), _fmt(s.D.imag),
        _fmt(s.condition), _fmt(s.finite), s.backend,
    ]


def _scattering_from_cells(cells: dict[str, str]) -> ScatteringData:
    t = complex(float(cells["re_T"]), float(cells["im_T"]))
    rl = complex(float(cells["re_R_left"]), float(cells["im_R_left"]))
    rr = complex(float(cells["re_R_right"]), float(cells["im_R_right"]))
    d = complex(float(cells["re_D"]), float(cells["im_D"]))
    return ScatteringData(
        k=float(cells["k"]), T=t, R_left=rl, R_right=rr, D=d,
        finite=_parse_bool(cells["finite"]), condition=float(cells["condition"]),
        backend=cells["backend"],
    )


def sweep_to_csv(sw: SweepResult) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_COLUMNS)
    for s in sw.rows:
        w.writerow(_scattering_row(s))
    return buf.getvalue()


def sweep_from_csv(text: str) -> SweepResult:
    rows = []
    reader = csv.reader(_io.StringIO(text))
    header = next(reader)
    if tuple(header) != SWEEP_COLUMNS:
        raise ValueError(f"unexpected sweep CSV header: {header}")
    for rec in reader:
        cells = dict(zip(SWEEP_COLUMNS, rec))
        rows.append(_scattering_from_cells(cells))
    return SweepResult(tuple(rows), ())


def _scattering_json(s: ScatteringData):
    return {
        "k": s.k, "T": _c2j(s.T), "R_left": _c2j(s.R_left), "R_right": _c2j(s.R_right),
        "D": _c2j(s.D), "finite": s.finite, "condition": s.condition,
        "backend": s.backend,
    }


def _scattering_from_json(obj) -> ScatteringData:
    return ScatteringData(
        k=obj["k"], T=_j2c(obj["T"]), R_left=_j2c(obj["R_left"]),
        R_right=_j2c(obj["R_right"]), D=_j2c(obj["D"]),
        finite=obj["finite"], condition=obj["condition"], backend=obj["backend"],
    )


def sweep_to_json(sw: SweepResult) -> str:
    doc = {
        "type": "sweep",
        "rows": [_scattering_json(s) for s in sw.rows],
        "errors": [[k, msg] for k, msg in sw.errors],
    }
    return json.dumps(doc, indent=2)


def sweep_from_json(text: str) -> SweepResult:
    doc = json.loads(text)
    if doc.get("type") != "sweep":
        raise ValueError("not a sweep document")
    rows = tuple(_scattering_from_json(o) for o in doc["rows"])
    errors = tuple((float(k), str(m)) for k, m in doc["errors"])
    return SweepResult(rows, errors)


# --- identity reports -------------------------------------------------------

REPORT_COLUMNS = (
    "k", "re_T", "im_T", "re_R_left", "im_R_left", "re_R_right", "im_R_right",
    "abs2_T", "abs2_R_left", "abs2_R_right", "re_D", "im_D",
    "tau", "lambda", "rho", "m1", "m2",
) + IDENTITY_IDS

LONG_REPORT_COLUMNS = ("k", "identity", "residual", "applicable", "note")


def _report_row(r: IdentityReport) -> list[str]:
    s = r.scattering
    ph = s.phases
    cells = [
        _fmt(r.k),
        _fmt(s.T.real), _fmt(s.T.imag),
        _fmt(s.R_left.real), _fmt(s.R_left.imag),
        _fmt(s.R_right.real), _fmt(s.R_right.imag),
        _fmt(abs(s.T) ** 2), _fmt(abs(s.R_left) ** 2), _fmt(abs(s.R_right) ** 2),
        _fmt(s.D.real), _fmt(s.D.imag),
        _fmt(ph.tau if ph else None), _fmt(ph.lam if ph else None),
        _fmt(ph.rho if ph else None),
        _fmt(ph.m1 if ph else None), _fmt(ph.m2 if ph else None),
    ]
    by_id = {e.identity: e for e in r.entries}
    for identity in IDENTITY_IDS:
        e = by_id.get(identity)
        cells.append(_fmt(e.residual if e else None))
    return cells


def reports_to_csv(reports) -> str:
    """Wide table: one row per k, one column per identity residual."""
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(REPORT_COLUMNS)
    for r in reports:
        w.writerow(_report_row(r) if isinstance(r, IdentityReport) else
                   [_fmt(r.get(c)) if not isinstance(r.get(c), str) else r[c]
                    for c in REPORT_COLUMNS])
    return buf.getvalue()


def reports_from_csv(text: str) -> list[dict]:
    """Parse the wide table back into row dicts (the columns the CSV carries)."""
    reader = csv.reader(_io.StringIO(text))
    header = next(reader)
    if tuple(header) != REPORT_COLUMNS:
        raise ValueError(f"unexpected report CSV header: {header}")
    out = []
    for rec in reader:
        cells = dict(zip(REPORT_COLUMNS, rec))
        row: dict = {}
        for col, cell in cells.items():
            if col in ("m1", "m2"):
                row[col] = _parse_opt_int(cell)
            else:
                row[col] = _parse_opt_float(cell)
        out.append(row)
    return out


def reports_to_long_csv(reports) -> str:
    """Long table: one row per (k, identity), with applicability and notes."""
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(LONG_REPORT_COLUMNS)
    for r in reports:
        for e in r.entries:
            w.writerow([_fmt(r.k), e.identity, _fmt(e.residual),
                        _fmt(e.applicable), e.note])
    return buf.getvalue()


def reports_from_long_csv(text: str) -> list[dict]:
    reader = csv.reader(_io.StringIO(text))
    header = next(reader)
    if tuple(header) != LONG_REPORT_COLUMNS:
        raise ValueError(f"unexpected long report CSV header: {header}")
    out = []
    for rec in reader:
        cells = dict(zip(LONG_REPORT_COLUMNS, rec))
        out.append({
            "k": float(cells["k"]),
            "identity": cells["identity"],
            "residual": _parse_opt_float(cells["residual"]),
            "applicable": _parse_bool(cells["applicable"]),
            "note": cells["note"],
        })
    return out


def _phases_json(ph: PhaseRecord | None):
    if ph is None:
        return None
    return {
        "tau": ph.tau, "lambda": ph.lam, "rho": ph.rho,
        "m1": ph.m1, "m2": ph.m2,
        "m1_residue": ph.m1_residue, "m2_residue": ph.m2_residue,
    }


def _phases_from_json(obj) -> PhaseRecord | None:
    if obj is None:
        return None
    return PhaseRecord(
        tau=obj["tau"], lam=obj["lambda"], rho=obj["rho"],
        m1=obj["m1"], m2=obj["m2"],
        m1_residue=obj["m1_residue"], m2_residue=obj["m2_residue"],
    )


def _symmetry_json(sym: SymmetryClass):
    return {
        "is_real": sym.is_real, "is_even": sym.is_even,
        "is_pt_symmetric": sym.is_pt_symmetric,
        "real_violation": sym.real_violation, "even_violation": sym.even_violation,
        "pt_violation": sym.pt_violation, "tol": sym.tol,
    }


def _symmetry_from_json(obj) -> SymmetryClass:
    return SymmetryClass(
        is_real=obj["is_real"], is_even=obj["is_even"],
        is_pt_symmetric=obj["is_pt_symmetric"],
        real_violation=obj["real_violation"], even_violation=obj["even_violation"],
        pt_violation=obj["pt_violation"], tol=obj["tol"],
    )


def reports_to_json(reports) -> str:
    docs = []
    for r in reports:
        docs.append({
            "k": r.k,
            "symmetry": _symmetry_json(r.symmetry),
            "scattering": _scattering_json(r.scattering),
            "scattering_negk": _scattering_json(r.scattering_negk),
            "phases": _phases_json(r.scattering.phases),
            "entries": [
                {"identity": e.identity, "residual": e.residual,
                 "applicable": e.applicable, "note": e.note}
                for e in r.entries
            ],
        })
    return json.dumps({"type": "verify", "reports": docs}, indent=2)


def reports_from_json(text: str) -> list[IdentityReport]:
    doc = json.loads(text)
    if doc.get("type") != "verify":
        raise ValueError("not a verify document")
    out = []
    for obj in doc["reports"]:
        s = _scattering_from_json(obj["scattering"])
        ph = _phases_from_json(obj["phases"])
        if ph is not None:
            from dataclasses import replace

            s = replace(s, phases=ph)
        out.append(IdentityReport(
            k=obj["k"],
            entries=tuple(
                IdentityEntry(e["identity"], e["residual"], e["applicable"], e["note"])
                for e in obj["entries"]
            ),
            scattering=s,
            scattering_negk=_scattering_from_json(obj["scattering_negk"]),
            symmetry=_symmetry_from_json(obj["symmetry"]),
        ))
    return out


# --- scan results -----------------------------------------------------------

SCAN_COLUMNS = ("kind", "k_star", "residual", "bracket_lo", "bracket_hi",
                "boundary_warning", "note")


def scan_to_csv(res: ScanResult) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SCAN_COLUMNS)
    for f in res.features:
        w.writerow([f.kind, _fmt(f.k_star), _fmt(f.residual),
                    _fmt(f.bracket[0]), _fmt(f.bracket[1]),
                    _fmt(f.boundary_warning), f.note])
    return buf.getvalue()


def scan_from_csv(text: str) -> tuple[Feature, ...]:
    reader = csv.reader(_io.StringIO(text))
    header = next(reader)
    if tuple(header) != SCAN_COLUMNS:
        raise ValueError(f"unexpected scan CSV header: {header}")
    feats = []
    for rec in reader:
        cells = dict(zip(SCAN_COLUMNS, rec))
        feats.append(Feature(
            kind=cells["kind"], k_star=float(cells["k_star"]),
            residual=float(cells["residual"]),
            bracket=(float(cells["bracket_lo"]), float(cells["bracket_hi"])),
            boundary_warning=_parse_bool(cells["boundary_warning"]),
            note=cells["note"],
        ))
    return tuple(feats)


def scan_to_json(res: ScanResult) -> str:
    doc = {
        "type": "scan",
        "k_min": res.k_min, "k_max": res.k_max, "grid_step": res.grid_step,
        "features": [
            {"kind": f.kind, "k_star": f.k_star, "residual": f.residual,
             "bracket": [f.bracket[0], f.bracket[1]],
             "boundary_warning": f.boundary_warning, "note": f.note}
            for f in res.features
        ],
    }
    return json.dumps(doc, indent=2)


def scan_from_json(text: str) -> ScanResult:
    doc = json.loads(text)
    if doc.get("type") != "scan":
        raise ValueError("not a scan document")
    feats = tuple(
        Feature(kind=o["kind"], k_star=o["k_star"], residual=o["residual"],
                bracket=(o["bracket"][0], o["bracket"][1]),
                boundary_warning=o["boundary_warning"], note=o["note"])
        for o in doc["features"]
    )
    return ScanResult(feats, doc["k_min"], doc["k_max"], doc["grid_step"])


def roundtrip_floats_exact(x: float) -> bool:
    """17 significant digits reproduce any finite float64 exactly."""
    return math.isnan(x) or float(_fmt(x)) == x
