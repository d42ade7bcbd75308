"""tau-tilting finiteness decisions for special biserial presentations.

A special biserial algebra is tau-tilting finite exactly when no band module
is a brick.  Bands are searched up to a length bound; finding no brick band
under the bound is reported as such and never as unconditional finiteness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import (
    CheckFailed,
    DuplicateLambda,
    NotABand,
    NotABrickBand,
    NotAdmissible,
    NotSpecialBiserial,
    ZeroLambda,
)
from .linalg import (
    build_band_module,
    build_string_module,
    combine,
    find_map,
    hom_basis,
    hom_dim,
    is_brick_oracle,
    nullspace,
)
from .quiver import Presentation, check_admissible, is_special_biserial
from .words import (
    Band,
    StringWord,
    _band_ok,
    band_endo_pairs,
    is_band_brick,
    is_string_brick,
    iter_bands,
    make_string,
    power_string,
)

TAU_INFINITE = "tau-infinite"
TAU_FINITE_UP_TO_BOUND = "tau-finite-up-to-bound"
TAU_FINITE = "tau-finite"


@dataclass(frozen=True)
class Decision:
    verdict: str
    band: Optional[str] = None
    verified_by: tuple[str, ...] = ()
    bound: Optional[int] = None
    reason: Optional[str] = None
    details: dict = field(default_factory=dict, compare=False)

    @property
    def infinite(self) -> bool:
        return self.verdict == TAU_INFINITE

    def to_json(self) -> dict:
        out: dict = {"verdict": self.verdict}
        if self.reason is not None:
            out["reason"] = self.reason
        if self.verdict == TAU_INFINITE and self.band is not None:
            out["certificate"] = {"band": self.band, "verified_by": list(self.verified_by)}
        if self.bound is not None:
            out["bound"] = self.bound
        if self.verdict != TAU_INFINITE and self.verified_by:
            out["verified_by"] = list(self.verified_by)
        out.update(self.details)
        return out


def default_band_bound(pres: Presentation) -> int:
    return 2 * len(pres.quiver.arrows)


def _oracle_brick(b: Band) -> bool:
    return is_brick_oracle(b.pres, build_band_module(b.pres, b, 1, 1))


def _require_sb_admissible(pres: Presentation) -> None:
    report = is_special_biserial(pres)
    if not report:
        raise NotSpecialBiserial(report.violation)
    adm = check_admissible(pres)
    if not adm.admissible:
        raise NotAdmissible(f"path {' '.join(adm.violation)} of length {adm.bound} is not in the ideal")


def decide_tau_finite_sb(pres: Presentation, max_band_len: Optional[int] = None,
                         oracle: bool = False) -> Decision:
    """Search canonical bands by increasing length for a brick.

    The certificate is the lexicographically greatest brick band among the
    shortest ones.  With ``oracle`` every band examined is also checked by the
    linear-algebra oracle; a disagreement raises :class:`CheckFailed`.
    """
    _require_sb_admissible(pres)
    verified = ("combinatorial", "oracle") if oracle else ("combinatorial",)
    if pres.quiver.underlying_is_forest():
        return Decision(TAU_FINITE, reason="no-cyclic-walks", verified_by=("combinatorial",))
    bound = default_band_bound(pres) if max_band_len is None else max_band_len
    checked = 0
    for length in range(2, bound + 1):
        bricks = []
        for b in iter_bands(pres, length, min_len=length):
            checked += 1
            brick = is_band_brick(b)
            if oracle and _oracle_brick(b) != brick:
                raise CheckFailed(f"oracle disagrees on brickness of band {b}")
            if brick:
                bricks.append(b)
        if bricks:
            cert = max(bricks, key=lambda b: b.letters)
            return Decision(TAU_INFINITE, band=str(cert), verified_by=verified, bound=bound,
                            details={"bands_checked": checked})
    return Decision(TAU_FINITE_UP_TO_BOUND, bound=bound, verified_by=verified,
                    details={"bands_checked": checked})


def advisory_brick_band(pres: Presentation, max_band_len: Optional[int] = None) -> Optional[Band]:
    """For any presentation: a band whose module is a brick by the oracle.

    A brick band module forces tau-tilting infiniteness for every algebra, so
    a hit is meaningful even outside the special biserial class; a miss says
    nothing.
    """
    bound = default_band_bound(pres) if max_band_len is None else max_band_len
    for b in iter_bands(pres, bound):
        if _oracle_brick(b):
            return b
    return None


# -- Brauer-Thrall evidence ---------------------------------------------------


@dataclass(frozen=True)
class FamilyMember:
    string: StringWord
    dimension: int
    brick_combinatorial: bool
    brick_oracle: Optional[bool] = None

    def to_json(self) -> dict:
        out = {"string": str(self.string), "dimension": self.dimension,
               "brick_combinatorial": self.brick_combinatorial}
        if self.brick_oracle is not None:
            out["brick_oracle"] = self.brick_oracle
        return out


def _require_brick_band(b: Band) -> None:
    if not isinstance(b, Band) or not _band_ok(b.letters, b.pres):
        raise NotABand(f"{b} is not a band")
    if not is_band_brick(b):
        raise NotABrickBand(f"band {b} is not a brick")


def brick_family_bt1(b: Band, k: int, oracle: bool = False) -> list[FamilyMember]:
    """String bricks ``b^1, ..., b^k`` of strictly growing dimension."""
    _require_brick_band(b)
    out = []
    for n in range(1, k + 1):
        w = power_string(b, n)
        dim = w.dimension
        comb = is_string_brick(w)
        orc = is_brick_oracle(b.pres, build_string_module(b.pres, w)) if oracle else None
        if not comb or orc is False:
            raise CheckFailed(f"power {n} of brick band {b} is not a brick")
        if dim != n * len(b) + 1:
            raise CheckFailed(f"power {n} of {b} has dimension {dim}")
        out.append(FamilyMember(w, dim, comb, orc))
    return out


def _check_lambdas(lambdas: Sequence) -> list[Fraction]:
    lams = [Fraction(x) for x in lambdas]
    if any(x == 0 for x in lams):
        raise ZeroLambda("lambda must be non-zero")
    if len(set(lams)) != len(lams):
        raise DuplicateLambda("lambdas must be pairwise distinct")
    return lams


def brick_family_bt2(b: Band, lambdas: Sequence) -> dict:
    """M(b, lam, 1) for each lam: bricks of one dimension with no maps between them."""
    _require_brick_band(b)
    lams = _check_lambdas(lambdas)
    pres = b.pres
    mods = {lam: build_band_module(pres, b, lam, 1) for lam in lams}
    bricks = []
    for lam in lams:
        e = hom_dim(pres, mods[lam], mods[lam])
        bricks.append({"lambda": str(lam), "dimension": len(b), "end_dim": e, "brick": e == 1})
    cross = []
    for lam in lams:
        for mu in lams:
            if lam != mu:
                cross.append({"source": str(lam), "target": str(mu),
                              "hom_dim": hom_dim(pres, mods[lam], mods[mu])})
    ok = all(r["brick"] for r in bricks) and all(c["hom_dim"] == 0 for c in cross)
    return {"band": str(b), "dimension": len(b), "bricks": bricks, "cross": cross, "certified": ok}


# -- torsion witnesses --------------------------------------------------------


def _extension_witness(b: Band, lam: Fraction) -> dict:
    """0 -> M(b,lam,1) -> M(b,lam,2) -> M(b,lam,1) -> 0 from oracle hom bases."""
    pres = b.pres
    m1 = build_band_module(pres, b, lam, 1)
    m2 = build_band_module(pres, b, lam, 2)
    f = find_map(pres, m1, m2, "injective")
    if f is None:
        return {"lambda": str(lam), "found": False}
    g_basis = hom_basis(pres, m2, m1)
    # restrict to maps g with g f = 0
    comps = [g.compose(f) for g in g_basis]
    rows: dict = {}
    for idx, h in enumerate(comps):
        for v, m in h.components.items():
            for i, row in enumerate(m):
                for j, x in enumerate(row):
                    if x:
                        rows.setdefault((v, i, j), {})[idx] = x
    kernel = nullspace(list(rows.values()), len(g_basis))
    killing = [combine(g_basis, vec) for vec in kernel]
    g = None
    if killing:
        g = find_map(pres, m2, m1, "surjective", basis=killing)
    return {"lambda": str(lam), "found": g is not None,
            "injection_rank": f.rank(), "surjection_rank": g.rank() if g else None,
            "middle_dimension": m2.dimension}


def torsion_witnesses(b: Band, lambdas: Sequence = (1, 2)) -> dict:
    """Finite witnesses for the closure of torsion classes containing M(b, lam, 1).

    (i) M(b,lam,2) as an extension of M(b,lam,1) by itself;
    (ii) for a non-brick band, a string module M(w) that is both a quotient
    and a submodule of M(b,lam,1) for every lam tested.
    """
    if not isinstance(b, Band) or not _band_ok(b.letters, b.pres):
        raise NotABand(f"{b} is not a band")
    lams = _check_lambdas(lambdas)
    pres = b.pres
    extensions = [_extension_witness(b, lam) for lam in lams]
    pairs = band_endo_pairs(b)
    sub_quotient = []
    if pairs:
        p = pairs[0]
        occ = p.quotient
        if occ.word:
            w = make_string(pres, pres.quiver.walk(occ.word))
        else:
            w = make_string(pres, f"@{occ.vertex}")
        mw = build_string_module(pres, w)
        for lam in lams:
            mb = build_band_module(pres, b, lam, 1)
            surj = find_map(pres, mb, mw, "surjective")
            inj = find_map(pres, mw, mb, "injective")
            sub_quotient.append({
                "lambda": str(lam), "word": str(w.walk),
                "quotient_map_rank": surj.rank() if surj else None,
                "submodule_map_rank": inj.rank() if inj else None,
                "found": surj is not None and inj is not None,
            })
    independent = len({r["word"] for r in sub_quotient}) <= 1 and all(r["found"] for r in sub_quotient)
    return {
        "band": str(b),
        "brick": not pairs,
        "extensions": extensions,
        "sub_quotient": sub_quotient,
        "lambda_independent": independent,
    }
