"""The Q_m(lambda), U_m(lambda) and U'_m(lambda) genericity checks and the Monte Carlo survey.

Condition ids:

1. no relator is theta-readable
2. the symmetrized closure satisfies C'(lambda)
3. no relator is a proper power
4. no relator is a rotation of another relator or its inverse
5. no subword z of a rotation of eta(r_i) with |z| > |r_i|/3 is a subword
   of a rotation of any r_j^{+-1}
6. no relator is a rotation of its own inverse
7. every relator has length at least ``min_length``
"""

from __future__ import annotations

import itertools
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from statistics import NormalDist

from .barbell import theta_readable
from .smallcancel import satisfies_cprime
from .tuples import DEFAULT_BUDGET, RelatorTuple, iter_transforms, symmetrized_closure, transform_count
from .words import canonical_rotation, eta, gamma, invert, random_cyclic

PAPER_LAMBDA = Fraction(1, 120)
PAPER_THETA = Fraction(1, 40)
PAPER_MIN_LENGTH = 1200

CONDITIONS = ("1", "2", "3", "4", "5", "6", "7")


class ParamsError(ValueError):
    pass


@dataclass(frozen=True)
class GenericityParams:
    lam: Fraction = PAPER_LAMBDA
    theta: Fraction = PAPER_THETA
    min_length: int = PAPER_MIN_LENGTH
    mode: str = "paper"

    def __post_init__(self) -> None:
        object.__setattr__(self, "lam", Fraction(self.lam))
        object.__setattr__(self, "theta", Fraction(self.theta))
        if self.mode not in ("paper", "experiment"):
            raise ParamsError(f"unknown mode {self.mode!r}")
        if not 0 < self.lam <= 1:
            raise ParamsError("lambda must lie in (0, 1]")
        if not 0 < self.theta < 1:
            raise ParamsError("theta must lie in (0, 1)")
        if self.min_length < 0:
            raise ParamsError("min_length must be non-negative")
        if self.mode == "paper":
            if self.lam > PAPER_LAMBDA:
                raise ParamsError(f"paper mode requires lambda <= 1/120, got {self.lam}")
            if self.min_length < PAPER_MIN_LENGTH:
                raise ParamsError(f"paper mode requires min_length >= 1200, got {self.min_length}")

    @classmethod
    def experiment(cls, lam=Fraction(1, 24), theta=Fraction(1, 24), min_length=0) -> "GenericityParams":
        return cls(Fraction(lam), Fraction(theta), min_length, "experiment")

    def to_dict(self) -> dict:
        return {
            "lambda": str(self.lam),
            "theta": str(self.theta),
            "min_length": self.min_length,
            "mode": self.mode,
        }


@dataclass(frozen=True)
class Verdict:
    status: str  # "pass", "fail", "skipped" or "undecided"
    witness: dict | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        out = {"status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


PASS = Verdict("pass")


@dataclass(frozen=True)
class GenericityReport:
    verdicts: dict[str, Verdict]
    overall_Q: bool
    overall_U: bool
    overall_Uprime: bool | None  # None when undecided or not evaluated
    params: GenericityParams

    def to_dict(self) -> dict:
        return {
            "verdicts": {k: v.to_dict() for k, v in self.verdicts.items()},
            "overall_Q": self.overall_Q,
            "overall_U": self.overall_U,
            "overall_Uprime": self.overall_Uprime,
            "params": self.params.to_dict(),
            "condition5_rule": "fail iff a common cyclic subword has length > floor(|r_i|/3)",
        }


def check_readability(t: RelatorTuple, theta: Fraction) -> Verdict:
    for i, r in enumerate(t.relators):
        res = theta_readable(r, theta)
        if res.readable:
            return Verdict("fail", {"relator": i, "u": res.witness.u, "v": res.witness.v})
    return PASS


def check_small_cancellation(t: RelatorTuple, lam: Fraction) -> Verdict:
    res = satisfies_cprime(symmetrized_closure(t), lam)
    if res.holds:
        return Verdict("pass", {"max_piece": res.max_piece})
    piece, r, other = res.violation
    return Verdict("fail", {"piece": piece, "member": r, "other": other, "max_piece": res.max_piece})


def proper_power_offset(r: str) -> int | None:
    """Smallest nonzero rotation fixing ``r``, or None."""
    off = (r + r).find(r, 1)
    return off if off < len(r) else None


def check_proper_power(t: RelatorTuple) -> Verdict:
    for i, r in enumerate(t.relators):
        off = proper_power_offset(r)
        if off is not None:
            return Verdict("fail", {"relator": i, "offset": off})
    return PASS


def check_distinct(t: RelatorTuple) -> Verdict:
    keys = [canonical_rotation(r) for r in t.relators]
    inv_keys = [canonical_rotation(invert(r)) for r in t.relators]
    for i, j in itertools.combinations(range(t.m), 2):
        for inverse, target in ((False, keys[j]), (True, inv_keys[j])):
            if keys[i] == target:
                x = invert(t[j]) if inverse else t[j]
                return Verdict(
                    "fail", {"i": i, "j": j, "inverse": inverse, "offset": (x + x).find(t[i])}
                )
    return PASS


def _windows(x: str, length: int) -> dict[str, int]:
    """Cyclic subwords of ``x`` of the given length -> first offset."""
    xx = x + x
    out: dict[str, int] = {}
    for s in range(len(x)):
        out.setdefault(xx[s:s + length], s)
    return out


def check_eta_overlap(t: RelatorTuple) -> Verdict:
    cache: dict[tuple[int, bool, int], dict[str, int]] = {}
    for i, r in enumerate(t.relators):
        length = len(r) // 3 + 1
        eta_windows = _windows(eta(r), length)
        for j, s in enumerate(t.relators):
            if length > len(s):
                continue
            for inverse in (False, True):
                key = (j, inverse, length)
                if key not in cache:
                    cache[key] = _windows(invert(s) if inverse else s, length)
                common = eta_windows.keys() & cache[key].keys()
                if common:
                    z = min(common)
                    return Verdict(
                        "fail",
                        {
                            "i": i,
                            "j": j,
                            "inverse": inverse,
                            "z": z,
                            "eta_offset": eta_windows[z],
                            "offset": cache[key][z],
                        },
                    )
    return PASS


def check_self_inverse(t: RelatorTuple) -> Verdict:
    for i, r in enumerate(t.relators):
        off = (r + r).find(invert(r))
        if 0 <= off < len(r):
            return Verdict("fail", {"relator": i, "offset": off})
    return PASS


def check_length(t: RelatorTuple, min_length: int) -> Verdict:
    for i, r in enumerate(t.relators):
        if len(r) < min_length:
            return Verdict("fail", {"relator": i, "length": len(r), "min_length": min_length})
    return PASS


@dataclass(frozen=True)
class UprimeResult:
    outcome: str  # "true", "false" or "undecided"
    witness: tuple | None = None  # a formally nontrivial transform keeping all prefixes
    matching_transforms: int | None = None

    @property
    def holds(self) -> bool | None:
        return {"true": True, "false": False}.get(self.outcome)


def _prefix_matches(x: str, prefix: str) -> list[int]:
    """Rotations s of ``x`` whose first len(prefix) letters equal ``prefix``."""
    n = len(x)
    xx = x + x
    out = []
    s = xx.find(prefix)
    while 0 <= s < n:
        out.append(s)
        s = xx.find(prefix, s + 1)
    return out


def check_Uprime(t: RelatorTuple, p: GenericityParams, budget: int = DEFAULT_BUDGET) -> UprimeResult:
    """Does every formally nontrivial transform change the tuple of length-floor(lam n) prefixes?

    For each eta-power and permutation, the transforms keeping all prefixes
    factor into independent per-entry choices of (rotation, inversion), so
    they are counted rather than enumerated; only the 2 m! permutations are
    enumerated, and that count is checked against ``budget``.
    """
    if not t.equal_lengths:
        raise ValueError("U' needs equal relator lengths")
    m = t.m
    if 2 * math.factorial(m) > budget:
        return UprimeResult("undecided")
    n = len(t[0])
    length = math.floor(p.lam * n)
    prefixes = [r[:length] for r in t.relators]
    total = 0
    witness = None
    for delta in (0, 1):
        src = t.relators if delta == 0 else tuple(eta(r) for r in t.relators)
        # choices[i][j]: (shift, inverted) options putting source j at position i
        choices = [
            [
                [(s, False) for s in _prefix_matches(src[j], prefixes[i])]
                + [(s, True) for s in _prefix_matches(invert(src[j]), prefixes[i])]
                for j in range(m)
            ]
            for i in range(m)
        ]
        for perm in itertools.permutations(range(m)):
            per_pos = [choices[i][perm[i]] for i in range(m)]
            count = math.prod(len(c) for c in per_pos)
            if not count:
                continue
            total += count
            if witness is None:
                identity = delta == 0 and perm == tuple(range(m))
                for combo in itertools.product(*per_pos):
                    if not (identity and all(c == (0, False) for c in combo)):
                        witness = (delta, perm, combo)
                        break
    if total > 1:
        return UprimeResult("false", witness, total)
    return UprimeResult("true", None, total)


def check_Uprime_bruteforce(t: RelatorTuple, p: GenericityParams, budget: int = DEFAULT_BUDGET) -> UprimeResult:
    """Reference version enumerating every formal transform."""
    if transform_count(t) > budget:
        return UprimeResult("undecided")
    n = len(t[0])
    length = math.floor(p.lam * n)
    target = tuple(r[:length] for r in t.relators)
    identity = (0, tuple(range(t.m)), tuple((0, False) for _ in range(t.m)))
    total = 0
    witness = None
    for label, image in iter_transforms(t):
        if tuple(r[:length] for r in image.relators) == target:
            total += 1
            if label != identity and witness is None:
                witness = label
    return UprimeResult("false" if total > 1 else "true", witness, total)


def check_Q(t: RelatorTuple, p: GenericityParams = GenericityParams(), *, uprime: bool = True,
            budget: int = DEFAULT_BUDGET) -> GenericityReport:
    verdicts = {
        "1": check_readability(t, p.theta),
        "2": check_small_cancellation(t, p.lam),
        "3": check_proper_power(t),
        "4": check_distinct(t),
        "5": check_eta_overlap(t),
        "6": check_self_inverse(t),
        "7": check_length(t, p.min_length),
    }
    overall_Q = all(verdicts[c].passed for c in CONDITIONS)
    verdicts["equal_lengths"] = PASS if t.equal_lengths else Verdict(
        "fail", {"lengths": [len(r) for r in t.relators]}
    )
    overall_U = overall_Q and t.equal_lengths
    overall_Uprime: bool | None = False
    if not uprime:
        verdicts["prefix_distinct"] = Verdict("skipped", {"reason": "not requested"})
        overall_Uprime = None
    elif not overall_U:
        verdicts["prefix_distinct"] = Verdict("skipped", {"reason": "U condition failed"})
    else:
        res = check_Uprime(t, p, budget)
        if res.outcome == "true":
            verdicts["prefix_distinct"] = PASS
            overall_Uprime = True
        elif res.outcome == "false":
            delta, perm, combo = res.witness
            verdicts["prefix_distinct"] = Verdict(
                "fail",
                {"eta": delta, "permutation": list(perm), "entries": [list(c) for c in combo]},
            )
        else:
            verdicts["prefix_distinct"] = Verdict("undecided", {"reason": "budget"})
            overall_Uprime = None
    return GenericityReport(verdicts, overall_Q, overall_U, overall_Uprime, p)


def apply_transform(t: RelatorTuple, delta: int, perm, entries) -> RelatorTuple:
    """Image of ``t`` under (eta^delta, permutation, per-entry (shift, inverted))."""
    src = t.relators if delta == 0 else tuple(eta(r) for r in t.relators)
    out = []
    for j, (shift, inverted) in zip(perm, entries):
        x = invert(src[j]) if inverted else src[j]
        out.append(x[shift:] + x[:shift])
    return RelatorTuple(tuple(out))


# --- Monte Carlo survey -----------------------------------------------------

Z95 = NormalDist().inv_cdf(0.975)


def wilson_interval(successes: int, trials: int, z: float = Z95) -> tuple[float, float]:
    if trials <= 0:
        raise ValueError("trials must be positive")
    phat = successes / trials
    denom = 1 + z * z / trials
    centre = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    lo, hi = max(0.0, centre - half), min(1.0, centre + half)
    # the closed forms are exact at the edges; keep rounding from cutting them
    if successes == 0:
        lo = 0.0
    if successes == trials:
        hi = 1.0
    return lo, hi


def random_cyclic_upto(rng: random.Random, n: int) -> str:
    """Uniform over nonempty cyclically reduced words of length at most ``n``."""
    weights = [gamma(k) for k in range(1, n + 1)]
    k = rng.choices(range(1, n + 1), weights=weights)[0]
    if k == 1:
        return rng.choice("abB")
    return random_cyclic(rng, k)


def sample_tuple(rng: random.Random, n: int, m: int, equal_lengths: bool = True) -> RelatorTuple:
    if equal_lengths:
        return RelatorTuple(tuple(random_cyclic(rng, n) for _ in range(m)))
    return RelatorTuple(tuple(random_cyclic_upto(rng, n) for _ in range(m)))


def trial_seed(seed: int, trial: int) -> int:
    return seed ^ trial


SURVEY_ROWS = CONDITIONS + ("Q", "U")


def _survey_chunk(args) -> dict[str, int]:
    n, m, seed, trials, p, equal_lengths = args
    counts = dict.fromkeys(SURVEY_ROWS, 0)
    for trial in trials:
        rng = random.Random(trial_seed(seed, trial))
        report = check_Q(sample_tuple(rng, n, m, equal_lengths), p, uprime=False)
        for c in CONDITIONS:
            counts[c] += report.verdicts[c].passed
        counts["Q"] += report.overall_Q
        counts["U"] += report.overall_U
    return counts


@dataclass(frozen=True)
class SurveyRow:
    condition: str
    n: int
    m: int
    trials: int
    passes: int
    pass_rate: float
    ci_low: float
    ci_high: float


@dataclass(frozen=True)
class Survey:
    rows: list[SurveyRow]
    params: GenericityParams
    seed: int
    equal_lengths: bool = True
    extra: dict = field(default_factory=dict)

    def row(self, condition: str) -> SurveyRow:
        return next(r for r in self.rows if r.condition == condition)


def survey(n: int, m: int, trials: int, seed: int, p: GenericityParams, *,
           equal_lengths: bool = True, workers: int = 1) -> Survey:
    """Per-condition pass rates over ``trials`` sampled tuples, with 95% Wilson intervals.

    Trial ``i`` uses its own generator seeded with ``seed ^ i``, so results
    do not depend on ``workers``.
    """
    if n < 2 or n % 2:
        raise ValueError("n must be even and >= 2")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if workers > 1:
        chunks = [range(w, trials, workers) for w in range(workers)]
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_survey_chunk, [(n, m, seed, c, p, equal_lengths) for c in chunks]))
        counts = {c: sum(part[c] for part in parts) for c in SURVEY_ROWS}
    else:
        counts = _survey_chunk((n, m, seed, range(trials), p, equal_lengths))
    rows = []
    for c in SURVEY_ROWS:
        lo, hi = wilson_interval(counts[c], trials)
        rows.append(SurveyRow(c, n, m, trials, counts[c], counts[c] / trials, lo, hi))
    return Survey(rows, p, seed, equal_lengths)
