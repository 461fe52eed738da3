"""Exhaustive fast-versus-oracle sweeps and randomized join checks."""

from __future__ import annotations

import csv
import io
import json
import random
from dataclasses import dataclass, field
from itertools import combinations

from lexcm.classify import (
    DEFAULT_BUDGET,
    NO_LEVEL,
    classify_fast,
    classify_oracle,
    classify_pattern,
    compare_reports,
    is_cm_reisner,
    join_decompose_lexsegment,
    lexsegment_complex,
    pattern_level,
    strict_cm_level,
)
from lexcm.errors import InvalidInputError
from lexcm.homology import GF2, GF3, QQ, FieldSpec, boundary_squares_to_zero, reduced_betti
from lexcm.monomial import MAX_VARIABLES, LexSegmentInstance, enumerate_md
from lexcm.simplicial import SimplicialComplex, f_vector, join, link, vertices_of

CSV_COLUMNS = (
    "n", "d", "u", "v", "i", "pure", "connected", "flag", "s2", "shellable", "cm", "buchsbaum",
    "strict_level_fast", "strict_level_oracle", "agree",
)
MODES = ("fast", "oracle", "pattern")


@dataclass(frozen=True)
class SweepConfig:
    n_range: tuple[int, int]
    d_range: tuple[int, int]
    field: FieldSpec = GF2
    modes: frozenset[str] = frozenset({"fast", "oracle"})
    budget: int = DEFAULT_BUDGET
    homology_checks: bool = True

    def __post_init__(self) -> None:
        lo, hi = self.d_range
        if lo < 2 or hi < lo:
            raise InvalidInputError(f"degree range must satisfy 2 <= min <= max, got {self.d_range}")
        nlo, nhi = self.n_range
        if nhi < nlo or nlo < 1:
            raise InvalidInputError(f"bad n range {self.n_range}")
        if nhi > MAX_VARIABLES:
            raise InvalidInputError(f"n may not exceed {MAX_VARIABLES}")
        unknown = set(self.modes) - set(MODES)
        if unknown or not self.modes:
            raise InvalidInputError(f"modes must be a non-empty subset of {MODES}")


def ordered_instances(n_range: tuple[int, int], d_range: tuple[int, int]) -> list[LexSegmentInstance]:
    """Every lexsegment ``L(u, v)`` with ``u >= v``, ordered by (d, n, u, v)."""
    out = []
    for d in range(d_range[0], d_range[1] + 1):
        for n in range(max(n_range[0], d), n_range[1] + 1):
            md = enumerate_md(n, d)
            for a in range(len(md)):
                for b in range(a, len(md)):
                    out.append(LexSegmentInstance(n, d, md[a], md[b]))
    return out


# -- homology self-tests ---------------------------------------------------------

HOMOLOGY_FIELDS = (GF2, GF3, QQ)


def homology_self_test(c: SimplicialComplex) -> list[str]:
    """Problems found on ``c`` and all its links; empty when everything checks out."""
    problems = []
    if not boundary_squares_to_zero(c):
        problems.append("boundary composite is nonzero")
    for face in c.faces:
        lk = link(c, face)
        vectors = [reduced_betti(lk, f) for f in HOMOLOGY_FIELDS]
        if len({b.ranks for b in vectors}) != 1:
            problems.append(
                f"Betti numbers of link {sorted_face(face)} depend on the field: {[b.ranks for b in vectors]}"
            )
        chi = sum((-1) ** (k - 1) * f for k, f in enumerate(f_vector(lk)))
        for b in vectors:
            if b.reduced_euler() != chi:
                problems.append(f"Euler characteristic mismatch at link {sorted_face(face)} over {b.field.name}")
    return problems


def sorted_face(mask: int) -> list[int]:
    return list(vertices_of(mask))


# -- the sweep -----------------------------------------------------------------


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


@dataclass
class SweepRow:
    inst: LexSegmentInstance
    verdicts: dict
    level_fast: object = None
    level_oracle: object = None
    level_pattern: object = None
    mismatches: list[str] | None = None
    second_level: object = None  # oracle level of the second join factor
    problems: list[str] = field(default_factory=list)

    @property
    def agree(self) -> bool | None:
        return None if self.mismatches is None else not self.mismatches

    def as_record(self, with_pattern: bool) -> dict:
        rec = {
            "n": self.inst.n,
            "d": self.inst.d,
            "u": ",".join(map(str, self.inst.u.support)),
            "v": ",".join(map(str, self.inst.v.support)),
            "i": self.inst.leading_index,
        }
        for k in ("pure", "connected", "flag", "s2", "shellable", "cm", "buchsbaum"):
            rec[k] = self.verdicts.get(k)
        rec["strict_level_fast"] = self.level_fast
        rec["strict_level_oracle"] = self.level_oracle
        rec["agree"] = self.agree
        if with_pattern:
            rec["strict_level_pattern"] = self.level_pattern
        return rec


@dataclass
class SweepResult:
    config: SweepConfig
    rows: list[SweepRow]
    findings: dict

    @property
    def disagreements(self) -> list[SweepRow]:
        return [r for r in self.rows if r.agree is False]

    @property
    def homology_problems(self) -> list[SweepRow]:
        return [r for r in self.rows if r.problems]

    def summary(self) -> dict:
        out = {
            "instances": len(self.rows),
            "disagreements": len(self.disagreements),
            "homology_problems": len(self.homology_problems),
        }
        if "pattern" in self.config.modes:
            out["pattern_discrepancies"] = sum(
                1 for r in self.rows if r.level_oracle is not None and r.level_pattern != r.level_oracle
            )
        return out

    @property
    def ok(self) -> bool:
        s = self.summary()
        return s["disagreements"] == 0 and s["homology_problems"] == 0

    def summary_line(self) -> str:
        return "sweep: " + " ".join(f"{k}={v}" for k, v in self.summary().items())

    def to_csv(self) -> str:
        buf = io.StringIO()
        with_pattern = "pattern" in self.config.modes
        cols = list(CSV_COLUMNS) + (["strict_level_pattern"] if with_pattern else [])
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(cols)
        for row in self.rows:
            rec = row.as_record(with_pattern)
            writer.writerow([_fmt(rec[c]) for c in cols])
        return buf.getvalue()

    def to_json(self) -> str:
        with_pattern = "pattern" in self.config.modes
        doc = {
            "config": {
                "n_range": list(self.config.n_range),
                "d_range": list(self.config.d_range),
                "field": str(self.config.field),
                "modes": sorted(self.config.modes),
                "budget": self.config.budget,
            },
            "summary": self.summary(),
            "findings": self.findings,
            "rows": [row.as_record(with_pattern) for row in self.rows],
            "disagreements": [
                {"n": r.inst.n, "u": list(r.inst.u.support), "v": list(r.inst.v.support), "fields": r.mismatches}
                for r in self.disagreements
            ],
            "homology_problems": [
                {"n": r.inst.n, "u": list(r.inst.u.support), "v": list(r.inst.v.support), "problems": r.problems}
                for r in self.homology_problems
            ],
        }
        return json.dumps(doc, indent=1) + "\n"


def sweep_row(inst: LexSegmentInstance, config: SweepConfig) -> SweepRow:
    fast = classify_fast(inst) if "fast" in config.modes or "pattern" in config.modes else None
    oracle = classify_oracle(inst, config.field, config.budget) if "oracle" in config.modes else None
    primary = oracle or fast
    verdicts = {k: getattr(primary, k) for k in ("pure", "connected", "flag", "s2", "shellable", "cm", "buchsbaum")}
    row = SweepRow(inst, verdicts)
    if fast is not None and "fast" in config.modes:
        row.level_fast = fast.strict_cm_level
    if oracle is not None:
        row.level_oracle = oracle.strict_cm_level
        _, second, _ = join_decompose_lexsegment(inst)
        row.second_level = strict_cm_level(second, config.field)
        if config.homology_checks:
            row.problems = homology_self_test(lexsegment_complex(inst))
    if "fast" in config.modes and oracle is not None:
        row.mismatches = compare_reports(fast, oracle)
    if "pattern" in config.modes:
        row.level_pattern = classify_pattern(inst, bounds="literal").strict_cm_level
    return row


def _inst_dict(inst: LexSegmentInstance) -> dict:
    return {"n": inst.n, "d": inst.d, "u": list(inst.u.support), "v": list(inst.v.support), "i": inst.leading_index}


GOLDEN_LITERAL = ((5, (2, 3), (3, 4)),)
GOLDEN_SHIFTED = ((6, (2, 4), (4, 5)),)


def open_question_findings(rows: list[SweepRow], field: FieldSpec = GF2, budget: int = DEFAULT_BUDGET) -> dict:
    """Resolve the join-index and pattern-bound questions from oracle rows.

    *index_shift*: for every instance whose second join factor is strictly
    CM_t (t >= 1), compare the oracle level with ``(i - 1) + t`` and ``i + t``.

    *pattern_bounds*: compare the literal and the shifted pattern bounds
    with the oracle level on all degree-2 rows.
    """
    index = {"checked": 0, "matches_i_minus_1_plus_t": 0, "matches_i_plus_t": 0, "examples": []}
    for r in rows:
        if r.level_oracle is None or not isinstance(r.second_level, int) or r.second_level < 1:
            continue
        i, t = r.inst.leading_index, r.second_level
        index["checked"] += 1
        index["matches_i_minus_1_plus_t"] += r.level_oracle == i - 1 + t
        index["matches_i_plus_t"] += r.level_oracle == i + t
        if r.level_oracle != i + t and len(index["examples"]) < 3 and (i >= 2 or not index["examples"]):
            index["examples"].append(
                {**_inst_dict(r.inst), "second_factor_level": t, "oracle_level": r.level_oracle,
                 "i_plus_t": i + t, "i_minus_1_plus_t": i - 1 + t}
            )
    index["resolution"] = (
        "(i-1)+t" if index["checked"] and index["matches_i_minus_1_plus_t"] == index["checked"] else "unresolved"
    )

    literal_bad, shifted_bad = [], []
    for r in rows:
        if r.level_oracle is None or r.inst.d != 2 or r.level_oracle == 0:
            continue
        oracle_level = r.level_oracle
        for bounds, bucket in (("literal", literal_bad), ("shifted", shifted_bad)):
            t = pattern_level(r.inst, bounds)
            predicted = NO_LEVEL if t is None else t
            if predicted != oracle_level:
                bucket.append({**_inst_dict(r.inst), "pattern_level": predicted, "oracle_level": oracle_level})
    golden = []
    for n, u, v in GOLDEN_LITERAL + GOLDEN_SHIFTED:
        inst = LexSegmentInstance.from_supports(n, u, v)
        rep = classify_oracle(inst, field, budget)
        golden.append({
            **_inst_dict(inst),
            "literal_pattern_level": pattern_level(inst, "literal"),
            "shifted_pattern_level": pattern_level(inst, "shifted"),
            "oracle_pure": rep.pure,
            "oracle_level": rep.strict_cm_level,
        })
    patterns = {
        "literal_discrepancies": literal_bad,
        "shifted_discrepancies": shifted_bad,
        "golden": golden,
    }
    return {"index_shift": index, "pattern_bounds": patterns}


def run_sweep(config: SweepConfig, progress=None) -> SweepResult:
    rows = []
    for inst in ordered_instances(config.n_range, config.d_range):
        rows.append(sweep_row(inst, config))
        if progress is not None:
            progress(len(rows))
    findings = open_question_findings(rows, config.field, config.budget) if "oracle" in config.modes else {}
    return SweepResult(config, rows, findings)


def findings_lines(findings: dict) -> list[str]:
    if not findings:
        return []
    idx = findings["index_shift"]
    pat = findings["pattern_bounds"]
    lines = [
        f"finding: join index: {idx['matches_i_minus_1_plus_t']}/{idx['checked']} decomposed instances "
        f"have oracle level (i-1)+t, {idx['matches_i_plus_t']}/{idx['checked']} have i+t; "
        f"resolution {idx['resolution']}",
    ]
    shown = [ex for ex in idx["examples"] if ex["i"] >= 2] or idx["examples"]
    for ex in shown[:1]:
        lines.append(
            f"finding: e.g. n={ex['n']} u={ex['u']} v={ex['v']} i={ex['i']}: second factor level "
            f"{ex['second_factor_level']}, oracle {ex['oracle_level']}, i+t would give {ex['i_plus_t']}"
        )
    lines.append(
        f"finding: pattern bounds: literal bounds disagree with the oracle on "
        f"{len(pat['literal_discrepancies'])} instances, shifted bounds on {len(pat['shifted_discrepancies'])}"
    )
    for g in pat["golden"]:
        lines.append(
            f"finding: n={g['n']} u={g['u']} v={g['v']}: literal pattern level {g['literal_pattern_level']}, "
            f"shifted {g['shifted_pattern_level']}, oracle pure={str(g['oracle_pure']).lower()} "
            f"level={g['oracle_level']}"
        )
    return lines


# -- join theorem ----------------------------------------------------------------


def random_complex(rng: random.Random, vertices: list[int], n: int, pure: bool) -> SimplicialComplex:
    """Erdos-Renyi style facet sampling on ``vertices``; irrelevant when there are none."""
    if not vertices:
        return SimplicialComplex.irrelevant(n)
    while True:
        if pure:
            size = rng.randint(1, len(vertices))
            pool = list(combinations(vertices, size))
        else:
            pool = [s for k in range(1, len(vertices) + 1) for s in combinations(vertices, k)]
        prob = 0.5 if pure else 1.5 / len(pool) ** 0.5
        chosen = [s for s in pool if rng.random() < prob]
        if chosen:
            return SimplicialComplex.from_facets(n, chosen)


@dataclass
class JoinTrial:
    first: SimplicialComplex
    second: SimplicialComplex
    first_rank: int  # dim(first) + 1
    second_level: int
    join_level: object
    cm_checks: list[tuple[bool, bool, bool]]  # (first CM, second CM, join CM)

    @property
    def ok(self) -> bool:
        if self.join_level != self.first_rank + self.second_level:
            return False
        return all(j == (a and b) for a, b, j in self.cm_checks)

    def to_dict(self) -> dict:
        return {
            "first_facets": self.first.facet_lists(),
            "second_facets": self.second.facet_lists(),
            "first_rank": self.first_rank,
            "second_level": self.second_level,
            "join_level": self.join_level,
            "expected_join_level": self.first_rank + self.second_level,
            "cm_checks": [list(x) for x in self.cm_checks],
        }


class ResampleCapExceeded(RuntimeError):
    pass


def _sample_until(rng, predicate, make, cap: int = 2000):
    for _ in range(cap):
        c = make()
        if predicate(c):
            return c
    raise ResampleCapExceeded(f"no acceptable complex after {cap} draws")


def join_trial(rng: random.Random, field: FieldSpec = GF2) -> JoinTrial:
    k1 = rng.randint(0, 3)
    k2 = rng.randint(4, 5)  # every pure complex on at most 3 vertices is CM
    n = k1 + k2
    v1 = list(range(1, k1 + 1))
    v2 = list(range(k1 + 1, n + 1))

    first = _sample_until(rng, lambda c: is_cm_reisner(c, field), lambda: random_complex(rng, v1, n, True))

    def strictly_buchsbaum_or_worse(c):
        level = strict_cm_level(c, field)
        return isinstance(level, int) and level >= 1

    second = _sample_until(rng, strictly_buchsbaum_or_worse, lambda: random_complex(rng, v2, n, True))
    other_first = random_complex(rng, v1, n, rng.random() < 0.5)
    other_second = random_complex(rng, v2, n, rng.random() < 0.5)

    cm_checks = []
    for a in (first, other_first):
        for b in (second, other_second):
            cm_checks.append((is_cm_reisner(a, field), is_cm_reisner(b, field), is_cm_reisner(join(a, b), field)))
    return JoinTrial(
        first=first,
        second=second,
        first_rank=first.dim + 1,
        second_level=strict_cm_level(second, field),
        join_level=strict_cm_level(join(first, second), field),
        cm_checks=cm_checks,
    )


def verify_join(trials: int, seed: int = 0, field: FieldSpec = GF2) -> list[JoinTrial]:
    if trials < 1:
        raise InvalidInputError("need at least one trial")
    rng = random.Random(seed)
    return [join_trial(rng, field) for _ in range(trials)]
