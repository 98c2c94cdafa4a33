"""Instance files: parse, validate and serialize cleft extensions.

An instance is a JSON object

    {
      "name": "qc2_smash",
      "field": "Q" | {"Fp": p},
      "H": {"dim", "mult", "unit", "comult", "counit", "antipode"},
      "A": {"dim", "mult", "unit"},
      "rho": rho[h][a] = coordinates of e_h·e_a,
      "f": "trivial" | f[h][l] = coordinates of f(e_h ⊗ e_l),
      "f_inv": optional, same layout as "f",
      "K": "minimal" | list of vectors of A,
      "M": "M=E" | {"name", "dim", "left", "right"}
    }

Tensors are nested row-major lists; rationals are "p/q" strings and F_p
elements are integers. The actions of M are given on the basis of E that
``CrossedProductBundle`` builds (left[x][v] = coordinates of e_x·v).
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

from tools.cleft.spaces import CleftSetting
from tools.crossed.bundle import CrossedProductBundle, build_checks, verify_cleft_identities
from tools.crossed.cocycle import (
    CocyclePair,
    bilinear_from_tensor,
    bilinear_to_tensor,
    invert_cocycle,
    trivial_cocycle,
    u2,
    verify_cocycle_pair,
    verify_crossed_hypotheses,
)
from tools.crossed.measure import (
    StableSubalgebra,
    WeakMeasure,
    minimal_stable_subalgebra,
    stable_subalgebra,
    verify_weak_module_algebra,
)
from tools.errors import AxiomFailure, DimensionMismatch, InstanceParseError, NotStable
from tools.linalg.matrix import ExactMatrix
from tools.linalg.scalars import Field, field_from_descriptor
from tools.relative.tensor import Bimodule, SidedModule
from tools.report import Report
from tools.weak_hopf.bialgebra import (
    WeakBialgebra,
    WeakHopfAlgebra,
    verify_antipode,
    verify_structure_identities,
    verify_weak_bialgebra,
)
from tools.weak_hopf.structure import StructureAlgebra, StructureCoalgebra

logger = logging.getLogger(__name__)

REQUIRED_KEYS = ("field", "H", "A", "rho")


@dataclass
class Instance:
    """Everything built from one instance file.

    When loaded with ``strict=False`` the stages after the first failed one
    are left as None, and ``reports`` holds the suites that ran.
    """

    name: str
    field: Field
    H: WeakHopfAlgebra
    A: Optional[StructureAlgebra] = None
    measure: Optional[WeakMeasure] = None
    pair: Optional[CocyclePair] = None
    bundle: Optional[CrossedProductBundle] = None
    K: Optional[StableSubalgebra] = None
    M: Optional[Bimodule] = None
    reports: List[Report] = field(default_factory=list)
    f_is_trivial: bool = False
    _settings: dict = field(default_factory=dict, repr=False)

    @property
    def complete(self) -> bool:
        return self.M is not None

    @property
    def passed(self) -> bool:
        return self.complete and all(r.passed for r in self.reports)

    @property
    def setting(self) -> CleftSetting:
        """The setting with the instance's own coefficients M."""
        return self._setting("M", lambda: self.M)

    @property
    def regular_setting(self) -> CleftSetting:
        """The setting with M = E, used for products and cyclic homology."""
        if self.M is not None and self.M.base is self.bundle.E and self.M.name == "E":
            return self.setting
        return self._setting("E", lambda: Bimodule.regular(self.bundle.E, "E"))

    def _setting(self, key: str, module) -> CleftSetting:
        if not self.complete:
            raise ValueError(f"instance {self.name} did not load completely")
        st = self._settings.get(key)
        if st is None:
            st = self._settings[key] = CleftSetting(self.bundle, self.K, module())
        return st


def _block(payload: dict, key: str) -> dict:
    block = payload.get(key)
    if not isinstance(block, dict):
        raise InstanceParseError(f"'{key}' must be an object")
    return block


def _scalars(F: Field, data):
    if isinstance(data, list):
        return [_scalars(F, x) for x in data]
    try:
        return F.parse(data)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InstanceParseError(f"bad scalar {data!r}: {exc}") from exc


def parse_hopf(F: Field, block: dict, name: str = "H") -> WeakHopfAlgebra:
    """The H block as a ``WeakHopfAlgebra``; the axioms are not checked here."""
    dim = int(block["dim"])
    algebra = StructureAlgebra(F, dim, _scalars(F, block["mult"]), _scalars(F, block["unit"]), name)
    coalgebra = StructureCoalgebra(F, dim, _scalars(F, block["comult"]), _scalars(F, block["counit"]), name)
    antipode = ExactMatrix.from_dense(F, _scalars(F, block["antipode"]), dim)
    if antipode.shape != (dim, dim):
        raise DimensionMismatch(f"{name}.antipode has shape {antipode.shape}")
    return WeakHopfAlgebra(algebra, coalgebra, antipode, block.get("name", name))


def verify_hopf_stage(H: WeakHopfAlgebra) -> Report:
    report = verify_weak_bialgebra(H)
    report.title = f"weak Hopf algebra {H.name}"
    report.extend(verify_antipode(H, H.antipode))
    if report.passed:
        report.extend(verify_structure_identities(H))
    return report


def _stage(inst: Instance, report: Report, strict: bool) -> bool:
    inst.reports.append(report)
    if strict:
        report.raise_on_failure()
    return report.passed


def _failed(name: str, exc: Exception) -> Report:
    report = Report(name)
    check = exc.check if isinstance(exc, AxiomFailure) else name
    witness = exc.witness if isinstance(exc, AxiomFailure) else None
    report.add(check, False, witness, str(exc))
    return report


def _cocycle(payload: dict, m: WeakMeasure, inst: Instance, strict: bool) -> Optional[CocyclePair]:
    F, H, A = m.field, m.H, m.A
    raw = payload.get("f", "trivial")
    if raw == "trivial":
        inst.f_is_trivial = True
        try:
            return trivial_cocycle(m)
        except AxiomFailure as exc:
            if strict:
                raise
            inst.reports.append(_failed("trivial cocycle", exc))
            return None
    f = bilinear_from_tensor(F, _scalars(F, raw), H.dim, A.dim)
    if not _stage(inst, verify_crossed_hypotheses(m, f), strict):
        return None
    if "f_inv" in payload:
        pair = CocyclePair(f, bilinear_from_tensor(F, _scalars(F, payload["f_inv"]), H.dim, A.dim), u2(m))
        return pair if _stage(inst, verify_cocycle_pair(m, pair), strict) else None
    pair = invert_cocycle(m, f)
    if not pair:
        exc = AxiomFailure("invertible cocycle: f*f⁻¹ = u₂", None, pair.reason)
        if strict:
            raise exc
        inst.reports.append(_failed("invertible cocycle", exc))
        return None
    return pair


def _module(payload: dict, E: StructureAlgebra) -> Bimodule:
    raw = payload.get("M", "M=E")
    if raw == "M=E":
        return Bimodule.regular(E, "E")
    if not isinstance(raw, dict):
        raise InstanceParseError("'M' must be \"M=E\" or an object")
    F, dim, name = E.field, int(raw["dim"]), raw.get("name", "M")
    left = SidedModule.from_tensor(F, dim, E, _scalars(F, raw["left"]), "left", name)
    right = SidedModule.from_tensor(F, dim, E, _scalars(F, raw["right"]), "right", name)
    return Bimodule(left, right, name)


def load_instance(payload: dict, strict: bool = True, name: str = None) -> Instance:
    """Build and verify every structure of an instance payload.

    With ``strict`` the first failed suite raises ``AxiomFailure`` (or
    ``NotStable`` for K); otherwise loading stops at that stage and the
    failing report is kept on the instance.
    """
    if not isinstance(payload, dict):
        raise InstanceParseError("an instance must be a JSON object")
    missing = [k for k in REQUIRED_KEYS if k not in payload]
    if missing:
        raise InstanceParseError(f"missing keys: {missing}")
    name = name or payload.get("name", "instance")
    try:
        F = field_from_descriptor(payload["field"])
        H = parse_hopf(F, _block(payload, "H"))
        inst = Instance(name, F, H)
        if not _stage(inst, verify_hopf_stage(H), strict):
            return inst
        block = _block(payload, "A")
        A = StructureAlgebra(F, int(block["dim"]), _scalars(F, block["mult"]), _scalars(F, block["unit"]),
                             block.get("name", "A"))
        if not _stage(inst, A.verify(), strict):
            return inst
        inst.A = A
        m = WeakMeasure(H, A, _scalars(F, payload["rho"]))
        if not _stage(inst, verify_weak_module_algebra(m), strict):
            return inst
        inst.measure = m
        pair = _cocycle(payload, m, inst, strict)
        if pair is None:
            return inst
        inst.pair = pair
        bundle = CrossedProductBundle(m, pair, payload.get("E_name", "E"))
        checks = build_checks(bundle)
        checks.extend(verify_cleft_identities(bundle))
        if not _stage(inst, checks, strict):
            return inst
        inst.bundle = bundle
        try:
            raw_k = payload.get("K", "minimal")
            if raw_k == "minimal":
                inst.K = minimal_stable_subalgebra(m)
            else:
                inst.K = stable_subalgebra(m, [dict((i, c) for i, c in enumerate(_scalars(F, v)) if c) for v in raw_k])
        except NotStable as exc:
            if strict:
                raise
            inst.reports.append(_failed("K is a stable subalgebra", exc))
            return inst
        M = _module(payload, bundle.E)
        if not _stage(inst, M.verify(), strict):
            return inst
        inst.M = M
    except (KeyError, TypeError, DimensionMismatch) as exc:
        raise InstanceParseError(f"{name}: malformed instance ({exc!r})") from exc
    logger.info(f"loaded {name}: dim H {H.dim}, dim A {A.dim}, dim E {bundle.dim}, dim K {inst.K.dim}, dim M {M.dim}")
    return inst


def parse_instance(path, strict: bool = True) -> Instance:
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    except OSError as exc:
        raise InstanceParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InstanceParseError(f"{path}: invalid JSON ({exc})") from exc
    return load_instance(payload, strict, payload.get("name", path.stem) if isinstance(payload, dict) else None)


# serialization

def _tensor3(F: Field, arr) -> list:
    n0, n1, n2 = arr.shape
    return [[[F.serialize(arr[i, j, k]) for k in range(n2)] for j in range(n1)] for i in range(n0)]


def _dense(F: Field, vec: dict, dim: int) -> list:
    return [F.serialize(vec.get(i, F.zero)) for i in range(dim)]


def _action(F: Field, module: SidedModule) -> list:
    return [[_dense(F, module.action[r, v], module.dim) for v in range(module.dim)] for r in range(module.base.dim)]


def serialize_hopf(H: WeakBialgebra) -> dict:
    F = H.field
    block = {
        "name": H.name,
        "dim": H.dim,
        "mult": _tensor3(F, H.algebra.mult),
        "unit": [F.serialize(c) for c in H.algebra.unit],
        "comult": _tensor3(F, H.coalgebra.comult),
        "counit": [F.serialize(c) for c in H.coalgebra.counit],
    }
    if isinstance(H, WeakHopfAlgebra):
        rows = H.antipode.to_numpy()
        block["antipode"] = [[F.serialize(c) for c in row] for row in rows]
    return block


def serialize(inst: Instance) -> dict:
    """The payload of a completely loaded instance; ``load_instance`` of it rebuilds the same structures."""
    if not inst.complete:
        raise ValueError(f"instance {inst.name} did not load completely")
    F, H, A = inst.field, inst.H, inst.A
    payload = {
        "name": inst.name,
        "field": F.descriptor(),
        "H": serialize_hopf(H),
        "A": {"name": A.name, "dim": A.dim, "mult": _tensor3(F, A.mult), "unit": [F.serialize(c) for c in A.unit]},
        "rho": [[_dense(F, inst.measure.rho[h, a], A.dim) for a in range(A.dim)] for h in range(H.dim)],
    }
    if inst.f_is_trivial:
        payload["f"] = "trivial"
    else:
        payload["f"] = bilinear_to_tensor(F, inst.pair.f, H.dim, A.dim)
        payload["f_inv"] = bilinear_to_tensor(F, inst.pair.f_inv, H.dim, A.dim)
    payload["K"] = [_dense(F, v, A.dim) for v in inst.K.basis]
    M = inst.M
    if M.name == "E" and M.dim == inst.bundle.dim:
        payload["M"] = "M=E"
    else:
        payload["M"] = {"name": M.name, "dim": M.dim, "left": _action(F, M.left), "right": _action(F, M.right)}
    return payload


def dump_instance(payload: dict, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=1)
        fh.write("\n")
    logger.info(f"wrote {path}")
    return path
