"""Reports and certificates.

Each command produces a Report whose certificate is a typed payload of
exact values (integers, and rationals or surds as strings). ``check``
replays a certificate from its payload alone: witnesses are re-verified,
searches are not redone.
"""

from __future__ import annotations

import hashlib
import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from . import __version__
from . import nilpower, presburger, rotation, vdw
from .config import Config
from .groups import FGAbelian, HeisenbergElement, Integers
from .surd import Surd, parse_surd
from .thickset import PreconditionError

EXIT_OK, EXIT_REFUTED, EXIT_UNRESOLVED, EXIT_USAGE = 0, 1, 2, 64

__all__ = [
    "Report",
    "dumps",
    "parse_alpha",
    "parse_group",
    "report_parse",
    "report_thick",
    "report_generic",
    "report_rotation",
    "report_vdw",
    "report_heis",
    "report_hom",
    "check",
    "EXIT_OK",
    "EXIT_REFUTED",
    "EXIT_UNRESOLVED",
    "EXIT_USAGE",
]


def _exact(o):
    if isinstance(o, (Fraction, Surd, HeisenbergElement)):
        return str(o)
    if isinstance(o, (set, frozenset)):
        return sorted(o)
    if isinstance(o, tuple):
        return list(o)
    raise TypeError(f"not serialisable: {type(o).__name__}")


def dumps(obj, indent: int | None = 2) -> str:
    return json.dumps(obj, default=_exact, sort_keys=True, indent=indent)


@dataclass
class Report:
    command: str
    inputs: dict
    verdict: str
    cert_type: str
    payload: dict
    exit_code: int
    config: Config = field(default_factory=Config)
    text: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)

    @property
    def input_hash(self) -> str:
        blob = dumps({"command": self.command, "inputs": self.inputs}, indent=None)
        return hashlib.sha256(blob.encode()).hexdigest()

    def to_dict(self, timings: bool = True) -> dict:
        d = {"command": self.command, "inputs": self.inputs, "input_hash": self.input_hash,
             "verdict": self.verdict, "cert": {"type": self.cert_type, "payload": self.payload},
             "seed": self.config.seed, "version": __version__, "config": self.config.as_dict()}
        if timings:
            d["timings"] = self.timings
        return d

    def cert_bytes(self) -> bytes:
        """Canonical certificate payload, timings excluded."""
        return dumps(self.to_dict(timings=False), indent=None).encode()

    def render(self, fmt: str = "json") -> str:
        if fmt == "json":
            return dumps(self.to_dict())
        lines = [f"{self.command}: {self.verdict}"] + [f"  {t}" for t in self.text]
        return "\n".join(lines)


# -- input parsing ----------------------------------------------------------------

_SQRT = re.compile(r"^sqrt\(?(\d+)\)?$")


def parse_alpha(text: str) -> Surd:
    """'sqrt2', 'sqrt(3)' or an exact surd '(a+b*sqrt(d))/c'."""
    s = text.replace(" ", "")
    m = _SQRT.match(s)
    if m:
        return Surd.sqrt(int(m.group(1)))
    return parse_surd(s)


_GROUP = re.compile(r"^Z(?:\^(\d+))?((?:\+Z/\d+)*)$")


def parse_group(text: str):
    """'Z', 'Z^2', 'Z^1+Z/6', 'Z^0+Z/5'."""
    s = text.replace(" ", "")
    m = _GROUP.match(s)
    if not m:
        raise ValueError(f"bad group spec {text!r}; expected Z^r+Z/c+...")
    rank = int(m.group(1)) if m.group(1) is not None else 1
    moduli = [int(c) for c in re.findall(r"Z/(\d+)", m.group(2))]
    if rank == 1 and not moduli and m.group(1) is None:
        return Integers()
    return FGAbelian(rank, moduli)


def _data_payload(data: presburger.EventualData) -> dict:
    return {"T": data.T, "L": data.L, "Rplus": sorted(data.Rplus), "Rminus": sorted(data.Rminus)}


# -- commands ---------------------------------------------------------------------


def report_parse(expr: str, config: Config) -> Report:
    P = presburger.parse(expr)
    N = presburger.normalize(P)
    data = presburger.eventual_data(P)
    payload = {"normalized": str(N), "symmetric": presburger.is_symmetric(P), "eventual": _data_payload(data)}
    return Report("parse", {"set": expr}, "parsed", "presburger_set", payload, EXIT_OK, config,
                  [f"normal form: {N}", f"T = {data.T}, L = {data.L}"])


def report_thick(expr: str, config: Config) -> Report:
    P = presburger.parse(expr)
    v = presburger.decide_thick(P, cap=config.cap)
    payload = {"thick": v.thick, "witness": list(v.witness), "spacing": v.spacing,
               "eventual": _data_payload(v.data), "symmetrized": not v.was_symmetric,
               "symmetric_form": str(v.symmetric_form) if v.symmetric_form is not None else None}
    if not v.thick:
        payload["family"] = "{k * spacing : k >= 0}"
        return Report("thick", {"set": expr}, "not thick", "thickness", payload, EXIT_REFUTED, config,
                      [f"independent family with spacing {v.spacing}: {v.witness[:6]}...", v.reason])
    if not v.exact:
        payload["bounds"] = list(v.n_range)
        return Report("thick", {"set": expr}, "unresolved", "thickness", payload, EXIT_UNRESOLVED, config,
                      [f"thick, minimal thickness in {v.n_range}"])
    payload["n"] = v.n
    return Report("thick", {"set": expr}, "thick", "thickness", payload, EXIT_OK, config,
                  [f"minimal thickness {v.n}", f"maximum independent set {v.witness}"])


def report_generic(expr: str, config: Config) -> Report:
    P = presburger.parse(expr)
    v = presburger.decide_generic(P)
    payload = {"generic": v.generic, "shifts": list(v.shifts), "m": v.m,
               "m_range": list(v.m_range) if v.m_range else None, "eventual": _data_payload(v.data)}
    if not v.generic:
        return Report("generic", {"set": expr}, "not generic", "genericity", payload, EXIT_REFUTED, config,
                      [v.reason])
    text = [f"{len(v.shifts)} translates cover Z: {v.shifts}"]
    if v.m is None:
        text.append(f"minimal number in {v.m_range}")
    return Report("generic", {"set": expr}, "generic", "genericity", payload, EXIT_OK, config, text)


def report_rotation(alpha: str, t: str, config: Config, member: int | None = None, thickness: bool = False,
                    window: int | None = None, witnesses: int | None = None) -> Report:
    beta = parse_alpha(alpha)
    h = vdw._hom_for(beta)
    tt = Fraction(t)
    X = rotation.BohrSet(h, tt)
    inputs = {"alpha": str(beta), "t": str(tt)}
    if member is not None:
        inputs["member"] = member
        v = h.value(member)
        ok = rotation.bohr_member(X, member)
        payload = {"x": member, "value": str(v), "distance": str(abs(v)), "member": ok}
        return Report("rotation", inputs, "member" if ok else "not a member", "bohr_membership", payload,
                      EXIT_OK if ok else EXIT_REFUTED, config, [f"g({member}) = {v} mod 1"])
    if witnesses is not None:
        inputs["M"] = witnesses
        cert = vdw.certify_no_subgroup(X, witnesses, config.witness_bound)
        payload = cert.payload()
        code = EXIT_OK if cert.complete else EXIT_UNRESOLVED
        return Report("rotation", inputs, "no subgroup" if cert.complete else "unresolved", "no_subgroup",
                      payload, code, config, [f"witnesses for m <= {witnesses}"])
    if thickness:
        inputs["window"] = window
        bt = rotation.thickness_of_bohr(tt, h, window=window, cap=config.cap)
        payload = {"upper_bound": bt.analytic, "exact_irrational": bt.irrational_exact,
                   "stated_constant": bt.paper_constant}
        if bt.empirical is not None:
            payload["empirical"] = bt.empirical.n
            payload["independent_set"] = list(bt.empirical.witness.points)
            payload["stated_constant_refuted"] = bt.paper_constant_refuted
        return Report("rotation", inputs, "decided", "bohr_thickness", payload, EXIT_OK, config,
                      [f"minimal thickness {bt.irrational_exact}"])
    raise ValueError("rotation needs --member, --thickness or --witnesses")


def report_vdw(n: int, variant: int, config: Config, M: int = 100) -> Report:
    c = vdw.build_covering(n, variant)
    s = vdw.power_parameter(c)
    Pn = rotation.BohrSet(c.hom, s)
    ns = vdw.certify_no_subgroup(Pn, M, config.witness_bound)
    k = (3 * n) // 2 + 1 if variant == 1 else n + 1
    pc = vdw.certify_power_covers(rotation.BohrSet(c.hom, 2 * c.t), k, seed=config.seed)
    payload = c.certificate.payload()
    payload.update({"n": n, "variant": variant, "Q": str(c.t), "P": str(2 * c.t), "P_power_n": str(s),
                    "no_subgroup": ns.payload(), "power_cover": pc.payload()})
    ok = c.certificate.covered and ns.complete and pc.ok
    return Report("vdw", {"n": n, "variant": variant, "M": M}, "verified" if ok else "unresolved", "arc_cover",
                  payload, EXIT_OK if ok else EXIT_UNRESOLVED, config,
                  [f"{c.size} translates {c.translates}", f"P^{n} = X({s})", f"P^{k} = G"])


def report_heis(n: int, config: Config, member: tuple | None = None, malcev: bool = False,
                radius: int = 5) -> Report:
    H = nilpower.power_subgroup(n)
    payload = {"n": n, "hermite": [list(r) for r in H.hermite], "center_modulus": H.d, "index": H.index,
               "generators": [str(g) for g in H.generators()]}
    inputs: dict[str, Any] = {"n": n}
    if member is not None:
        e = HeisenbergElement(*member)
        inputs["member"] = str(e)
        ok = H.contains(e)
        payload["element"], payload["member"] = str(e), ok
        return Report("heis", inputs, "member" if ok else "not a member", "power_subgroup", payload,
                      EXIT_OK if ok else EXIT_REFUTED, config, [f"{e} in <g^{n}>: {ok}"])
    if malcev:
        inputs.update({"malcev": True, "radius": radius})
        rep = nilpower.malcev_containment(n, radius)
        payload.update({"malcev_checked": rep.checked, "malcev_exceptions": [str(g) for g in rep.exceptions],
                        "radius": radius})
        ok = not rep.exceptions
        return Report("heis", inputs, "verified" if ok else "refuted", "power_subgroup", payload,
                      EXIT_OK if ok else EXIT_REFUTED, config, [f"{rep.checked} elements of <g^{n * n}> have roots of order {n}"])
    return Report("heis", inputs, "decided", "power_subgroup", payload, EXIT_OK, config,
                  [f"index {H.index}, centre modulus {H.d}"])


def report_hom(config: Config, group: str | None = None, torsion: list | None = None,
               eps: list | None = None, pairs: int = 10**4) -> Report:
    eps = [Fraction(e) for e in (eps or ["1/10", "1/100"])]
    if torsion is not None:
        spec = rotation.TorsionSpec(tuple(torsion))
        inputs = {"torsion": list(torsion)}
    else:
        spec = parse_group(group or "Z")
        inputs = {"group": group or "Z"}
    inputs.update({"eps": [str(e) for e in eps], "pairs": pairs})
    try:
        h = rotation.build_dense_hom(spec)
    except PreconditionError as e:
        return Report("hom", inputs, "refuted", "dense_hom", {"reason": str(e)}, EXIT_REFUTED, config, [str(e)])
    bad = rotation.check_hom_law(h, pairs, seed=config.seed)
    wits = []
    for e in eps:
        w = rotation.density_witness(h, e, bound=config.witness_bound)
        wits.append({"eps": str(e), "element": _element_payload(w.element) if w.found else None,
                     "value": str(w.value) if w.found else None})
    payload = {"label": h.label, "hom_law_pairs": pairs, "hom_law_failures": len(bad), "density": wits}
    ok = not bad and all(w["element"] is not None for w in wits)
    if torsion is not None:
        payload["moduli"] = [spec.modulus(i) for i in range(len(torsion) + 2)]
    return Report("hom", inputs, "verified" if ok else "unresolved", "dense_hom", payload,
                  EXIT_OK if ok else EXIT_UNRESOLVED, config, [f"hom law failures: {len(bad)}"])


def _element_payload(x):
    if isinstance(x, int):
        return x
    if isinstance(x, tuple):
        return list(x)
    if hasattr(x, "free"):
        return {"free": list(x.free), "torsion": list(x.torsion)}
    return str(x)


# -- replay -----------------------------------------------------------------------


def check(doc: dict) -> tuple[bool, str]:
    """Re-validate a serialized report from its payload."""
    cert = doc.get("cert") or {}
    kind, p = cert.get("type"), cert.get("payload") or {}
    inputs = doc.get("inputs") or {}
    try:
        fn = _CHECKERS[kind]
    except KeyError:
        return False, f"unknown certificate type {kind!r}"
    return fn(inputs, p, doc.get("verdict"))


def _check_presburger_set(inputs, p, verdict):
    P = presburger.parse(inputs["set"])
    ok = str(presburger.normalize(P)) == p["normalized"]
    return ok, "normal form reproduced" if ok else "normal form differs"


def _check_thickness(inputs, p, verdict):
    P = presburger.parse(inputs["set"])
    S = P | P.negate()
    data = presburger.eventual_data(S)
    if p["thick"]:
        w = p["witness"]
        indep = all(not S.contains(a - b) for i, a in enumerate(w) for b in w[:i])
        if not indep:
            return False, "witness is not independent"
        n = p.get("n")
        if n is not None and n != len(w) + 1:
            return False, "n does not match the witness size"
        return True, f"independent set of size {len(w)} re-verified (the upper bound comes from the search)"
    s = p["spacing"]
    if s % data.L or 0 in data.Rplus:
        return False, "spacing is not a multiple of the period with 0 outside the tail"
    if any(S.contains(k * s) for k in range(1, data.T // s + 2)):
        return False, "a multiple of the spacing lies in the set"
    return True, f"multiples of {s} avoid the set"


def _check_genericity(inputs, p, verdict):
    P = presburger.parse(inputs["set"])
    if not p["generic"]:
        data = presburger.eventual_data(P)
        return (not data.Rplus or not data.Rminus), "an empty tail leaves a half-line uncovered"
    ok = presburger.covers(presburger.symmetrize(P), p["shifts"])
    return ok, "translates cover Z" if ok else "translates do not cover"


def _check_bohr_membership(inputs, p, verdict):
    h = vdw._hom_for(inputs["alpha"])
    ok = h.member(p["x"], Fraction(inputs["t"])) == p["member"] and str(h.value(p["x"])) == p["value"]
    return ok, "membership re-decided"


def _check_no_subgroup(inputs, p, verdict):
    ok = vdw.NoSubgroupCertificate.revalidate_payload(p)
    return ok, "witness table re-verified" if ok else "witness table invalid"


def _check_bohr_thickness(inputs, p, verdict):
    t = Fraction(inputs["t"])
    h = vdw._hom_for(inputs["alpha"])
    if p["upper_bound"] != math.floor(1 / t) + 1 or p["exact_irrational"] != math.ceil(1 / t):
        return False, "analytic constants differ"
    pts = p.get("independent_set", [])
    indep = all(not h.member(a - b, t) for i, a in enumerate(pts) for b in pts[:i])
    return indep, "constants and independent set re-verified"


def _check_arc_cover(inputs, p, verdict):
    arc = vdw.ArcCoverCertificate.from_payload(p)
    if not arc.covered or arc.centres != p["centres"]:
        return False, "arc cover does not re-validate"
    if not vdw.NoSubgroupCertificate.revalidate_payload(p["no_subgroup"]):
        return False, "no-subgroup table invalid"
    if not vdw.PowerCoverCertificate.revalidate_payload(p["power_cover"]):
        return False, "power cover invalid"
    return True, "arc cover, witness table and power cover re-verified"


def _check_power_subgroup(inputs, p, verdict):
    gens = []
    for g in p["generators"]:
        x, y, z = (int(v) for v in g.strip("()").split(","))
        gens.append(HeisenbergElement(x, y, z))
    H = nilpower.subgroup_from_generators(gens)
    n = inputs["n"]
    # every n-th power lies in H, and every stored generator is a product of
    # n-th powers: it lies in the subgroup built from the radius-2 powers
    powers_in = all(H.contains(g ** n) for g in nilpower.box(2))
    ref = nilpower.power_subgroup(n, check=False)
    gens_in = all(ref.contains(g) for g in gens)
    ok = powers_in and gens_in and H.index == p["index"]
    if ok and "element" in p:
        x, y, z = (int(v) for v in p["element"].strip("()").split(","))
        ok = H.contains(HeisenbergElement(x, y, z)) == p["member"]
    if ok and "malcev_exceptions" in p:
        ok = not p["malcev_exceptions"] or verdict == "refuted"
    return ok, "index and membership re-derived from the stored generators"


def _check_dense_hom(inputs, p, verdict):
    if "reason" in p:
        if "torsion" not in inputs:
            return True, "refutation recorded"
        try:
            rotation.build_dense_hom(rotation.TorsionSpec(tuple(inputs["torsion"])))
        except PreconditionError:
            return True, "rejection reproduced"
        return False, "spec was accepted on replay"
    if "torsion" in inputs:
        spec = rotation.TorsionSpec(tuple(inputs["torsion"]))
    else:
        spec = parse_group(inputs["group"])
    h = rotation.build_dense_hom(spec)
    for w in p["density"]:
        e = w["element"]
        if e is None:
            continue
        dom = h.domain
        x = (tuple(e) if isinstance(e, list) else
             dom.element(e["free"], e["torsion"]) if isinstance(e, dict) else e)
        v = h.value(x)
        if str(v) != w["value"] or not (v.sign() != 0 and abs(v) < Fraction(w["eps"])):
            return False, f"density witness for eps = {w['eps']} fails"
    return True, "density witnesses re-verified"


_CHECKERS = {
    "presburger_set": _check_presburger_set,
    "thickness": _check_thickness,
    "genericity": _check_genericity,
    "bohr_membership": _check_bohr_membership,
    "no_subgroup": _check_no_subgroup,
    "bohr_thickness": _check_bohr_thickness,
    "arc_cover": _check_arc_cover,
    "power_subgroup": _check_power_subgroup,
    "dense_hom": _check_dense_hom,
}
