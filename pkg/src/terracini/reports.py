"""Report containers shared by the probes, plus JSON/CSV serialization.

Every JSON document carries ``schema: "terracini-report/1"``; keys are
emitted in a fixed order so identical inputs give identical bytes.
"""

from collections import Counter
from dataclasses import dataclass, field
import csv
import io
import json
import random

SCHEMA = "terracini-report/1"
EVIDENCE_NOTE = "statistical evidence only; sampling does not prove emptiness"


def trial_rng(seed, label, index):
    """Independent, scheduling-free RNG for trial ``index`` of a run."""
    return random.Random(f"{seed}:{label}:{index}")


@dataclass
class ProbeReport:
    kind: str
    parameters: dict
    trials: int
    histogram: dict
    expected_rank: int
    members_found: int
    summary: str
    seed: int
    defective: bool = None
    evidence: str = EVIDENCE_NOTE
    extra: dict = field(default_factory=dict)

    @classmethod
    def from_ranks(cls, kind, parameters, ranks, expected_rank, members_found,
                   summary, seed, defective=None, extra=None):
        hist = Counter(ranks)
        return cls(kind, dict(parameters), len(ranks),
                   {r: hist[r] for r in sorted(hist)}, expected_rank,
                   members_found, summary, seed, defective, EVIDENCE_NOTE,
                   dict(extra or {}))

    @property
    def max_rank(self):
        return max(self.histogram)

    @property
    def min_rank(self):
        return min(self.histogram)

    def to_dict(self):
        d = {
            "schema": SCHEMA,
            "report": "probe",
            "kind": self.kind,
            "parameters": self.parameters,
            "seed": self.seed,
            "trials": self.trials,
            "histogram": {str(r): c for r, c in self.histogram.items()},
            "expected_rank": self.expected_rank,
            "members_found": self.members_found,
        }
        if self.defective is not None:
            d["defective"] = self.defective
        d["summary"] = self.summary
        d["evidence"] = self.evidence
        if self.extra:
            d["extra"] = self.extra
        return d

    csv_header = ("kind", "parameters", "seed", "trials", "min_rank", "max_rank",
                  "expected_rank", "members_found", "defective", "summary")

    def csv_row(self):
        return {
            "kind": self.kind,
            "parameters": json.dumps(self.parameters, separators=(",", ":")),
            "seed": self.seed,
            "trials": self.trials,
            "min_rank": self.min_rank,
            "max_rank": self.max_rank,
            "expected_rank": self.expected_rank,
            "members_found": self.members_found,
            "defective": "" if self.defective is None else self.defective,
            "summary": self.summary,
        }


def to_json(report):
    """Serialize a report (anything with ``to_dict``) or a plain dict."""
    d = report.to_dict() if hasattr(report, "to_dict") else dict(report)
    if "schema" not in d:
        d = {"schema": SCHEMA, **d}
    return json.dumps(d, indent=2, ensure_ascii=False) + "\n"


def to_csv(rows, header):
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(header), lineterminator="\n",
                       extrasaction="raise")
    w.writeheader()
    for row in rows:
        w.writerow(row)
    return buf.getvalue()
