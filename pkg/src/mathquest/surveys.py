"""Five-point survey aggregation: item, group, and overall means with labels.

All means are rounded half-up at exactly two decimals, at every level, and
the arithmetic is exact (fractions under the hood, decimals on the surface)
so printed tables can be reproduced digit for digit. Interpretation bands
are injected configuration because label boundaries vary between
instruments; two presets ship with the package.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import ConfigurationError, DomainError, ValidationError

SCALE_MIN = 1
SCALE_MAX = 5


@dataclass(frozen=True)
class LikertResponseSet:
    """All responses collected for one survey item."""

    item_id: str
    responses: tuple[int, ...]

    def __post_init__(self):
        if not self.responses:
            raise ValidationError(f"item {self.item_id}: no responses")
        for value in self.responses:
            if not isinstance(value, int) or not SCALE_MIN <= value <= SCALE_MAX:
                raise ValidationError(
                    f"item {self.item_id}: responses must be integers in "
                    f"[{SCALE_MIN}, {SCALE_MAX}]"
                )


@dataclass(frozen=True)
class Interpretation:
    label: str
    secondary: str | None = None


@dataclass(frozen=True)
class InterpretationBands:
    """Ordered (upper bound, label) bands covering [1.00, 5.00] with no gaps."""

    bands: tuple[tuple[Decimal, str], ...]
    secondary: Mapping[str, str] | None = None

    def __post_init__(self):
        if not self.bands:
            raise ValidationError("at least one interpretation band is required")
        previous = None
        for upper, label in self.bands:
            if not label:
                raise ValidationError("band labels must be non-empty")
            if previous is not None and upper <= previous:
                raise ValidationError("band upper bounds must strictly increase")
            previous = upper
        if self.bands[-1][0] != Decimal("5.00"):
            raise ValidationError("the final band must end at 5.00")


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Decimal):
        return Fraction(value)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        # Going through str keeps 2-decimal inputs exact.
        return Fraction(Decimal(str(value)))
    if isinstance(value, str):
        return Fraction(Decimal(value))
    raise DomainError(f"cannot interpret {value!r} as a number")


def round_half_up_2dp(value) -> Decimal:
    """Exact half-up rounding to two decimal places."""
    scaled = _as_fraction(value) * 100
    whole, part = divmod(scaled.numerator, scaled.denominator)
    if Fraction(part, scaled.denominator) >= Fraction(1, 2):
        whole += 1
    return Decimal(whole).scaleb(-2)


def item_mean(response_set: LikertResponseSet) -> Decimal:
    """Arithmetic mean of one item's responses, half-up at 2 decimals."""
    return round_half_up_2dp(
        Fraction(sum(response_set.responses), len(response_set.responses))
    )


def _mean_of(values: Sequence, what: str) -> Decimal:
    values = list(values)
    if not values:
        raise DomainError(f"cannot average an empty list of {what}")
    total = sum((_as_fraction(v) for v in values), Fraction(0))
    return round_half_up_2dp(total / len(values))


def group_mean(item_means: Sequence) -> Decimal:
    """Unweighted mean of item means, half-up at 2 decimals."""
    return _mean_of(item_means, "item means")


def overall_mean(group_means: Sequence) -> Decimal:
    """Unweighted mean of group means, half-up at 2 decimals."""
    return _mean_of(group_means, "group means")


def interpret(mean, bands: InterpretationBands) -> Interpretation:
    """Label a mean with the first band whose upper bound reaches it."""
    value = _as_fraction(mean)
    if value < SCALE_MIN or value > SCALE_MAX:
        raise DomainError(f"mean {mean} is outside [{SCALE_MIN}.00, {SCALE_MAX}.00]")
    for upper, label in bands.bands:
        if value <= Fraction(upper):
            secondary = bands.secondary.get(label) if bands.secondary else None
            return Interpretation(label=label, secondary=secondary)
    raise AssertionError("bands validated to cover the scale")  # pragma: no cover


_EFFECT_LABELS = {
    "Strongly Agree": "Highly Effective",
    "Agree": "Effective",
    "Moderately Agree": "Moderately Effective",
    "Disagree": "Ineffective",
    "Strongly Disagree": "Highly Ineffective",
}

BAND_PRESETS: dict[str, InterpretationBands] = {
    # Five equal-width intervals across the 1-5 scale.
    "equal-width": InterpretationBands(
        bands=(
            (Decimal("1.80"), "Strongly Disagree"),
            (Decimal("2.60"), "Disagree"),
            (Decimal("3.40"), "Moderately Agree"),
            (Decimal("4.20"), "Agree"),
            (Decimal("5.00"), "Strongly Agree"),
        )
    ),
    # Slightly wider Agree band, with effectiveness wording as a second
    # label; matches instruments that report "Agree / Effective" rows.
    "effectiveness": InterpretationBands(
        bands=(
            (Decimal("1.80"), "Strongly Disagree"),
            (Decimal("2.60"), "Disagree"),
            (Decimal("3.37"), "Moderately Agree"),
            (Decimal("4.20"), "Agree"),
            (Decimal("5.00"), "Strongly Agree"),
        ),
        secondary=dict(_EFFECT_LABELS),
    ),
}


def bands_preset(name: str) -> InterpretationBands:
    try:
        return BAND_PRESETS[name]
    except KeyError:
        raise ConfigurationError(
            f"unknown bands preset {name!r}; available: {sorted(BAND_PRESETS)}"
        ) from None


@dataclass(frozen=True)
class ItemReport:
    item_id: str
    mean: Decimal
    interpretation: Interpretation


@dataclass(frozen=True)
class GroupReport:
    name: str
    items: tuple[ItemReport, ...]
    mean: Decimal
    interpretation: Interpretation


@dataclass(frozen=True)
class SurveyReport:
    groups: tuple[GroupReport, ...]
    overall_mean: Decimal
    interpretation: Interpretation


def build_report(
    groups: Mapping[str, Sequence[LikertResponseSet]],
    bands: InterpretationBands,
) -> SurveyReport:
    """Aggregate grouped response sets into a full survey report."""
    if not groups:
        raise DomainError("at least one group of response sets is required")
    group_reports = []
    for name, response_sets in groups.items():
        items = tuple(
            ItemReport(
                item_id=rs.item_id,
                mean=item_mean(rs),
                interpretation=interpret(item_mean(rs), bands),
            )
            for rs in response_sets
        )
        if not items:
            raise DomainError(f"group {name!r} has no response sets")
        mean = group_mean([item.mean for item in items])
        group_reports.append(
            GroupReport(
                name=name, items=items, mean=mean, interpretation=interpret(mean, bands)
            )
        )
    overall = overall_mean([g.mean for g in group_reports])
    return SurveyReport(
        groups=tuple(group_reports),
        overall_mean=overall,
        interpretation=interpret(overall, bands),
    )


def report_to_dict(report: SurveyReport) -> dict:
    def label_dict(interpretation: Interpretation) -> dict:
        out = {"label": interpretation.label}
        if interpretation.secondary:
            out["secondary"] = interpretation.secondary
        return out

    return {
        "groups": [
            {
                "name": group.name,
                "items": [
                    {
                        "item_id": item.item_id,
                        "mean": str(item.mean),
                        **label_dict(item.interpretation),
                    }
                    for item in group.items
                ],
                "mean": str(group.mean),
                **label_dict(group.interpretation),
            }
            for group in report.groups
        ],
        "overall_mean": str(report.overall_mean),
        **label_dict(report.interpretation),
    }


def render_text(report: SurveyReport) -> str:
    """Plain-text table: item rows per group, a mean row each, and a footer."""
    lines = []
    for group in report.groups:
        lines.append(group.name)
        for item in group.items:
            label = item.interpretation.label
            if item.interpretation.secondary:
                label = f"{label} / {item.interpretation.secondary}"
            lines.append(f"  {item.item_id:<40} {item.mean:>6} {label}")
        label = group.interpretation.label
        if group.interpretation.secondary:
            label = f"{label} / {group.interpretation.secondary}"
        lines.append(f"  {'Mean':<40} {group.mean:>6} {label}")
        lines.append("")
    label = report.interpretation.label
    if report.interpretation.secondary:
        label = f"{label} / {report.interpretation.secondary}"
    lines.append(f"{'Overall Mean':<42} {report.overall_mean:>6} {label}")
    return "\n".join(lines) + "\n"


def parse_responses_csv(text: str) -> list[LikertResponseSet]:
    """Read (item_id, response) rows into response sets, keeping item order."""
    order: list[str] = []
    collected: dict[str, list[int]] = {}
    for row_number, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or (row_number == 1 and row[0].strip().lower() == "item_id"):
            continue
        if len(row) != 2:
            raise ValidationError(f"row {row_number}: expected item_id,response")
        item_id = row[0].strip()
        try:
            value = int(row[1])
        except ValueError:
            raise ValidationError(
                f"row {row_number}: response {row[1]!r} is not an integer"
            ) from None
        if item_id not in collected:
            order.append(item_id)
            collected[item_id] = []
        collected[item_id].append(value)
    return [
        LikertResponseSet(item_id=item_id, responses=tuple(collected[item_id]))
        for item_id in order
    ]


def parse_groups_json(text: str) -> dict[str, list[LikertResponseSet]]:
    """Read {"groups": {name: [{item_id, responses}]}} into response sets."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"response input is not valid JSON: {exc}") from exc
    groups = data.get("groups") if isinstance(data, dict) else None
    if not isinstance(groups, dict):
        raise ValidationError('expected an object with a "groups" mapping')
    out: dict[str, list[LikertResponseSet]] = {}
    for name, entries in groups.items():
        out[name] = [
            LikertResponseSet(
                item_id=str(entry["item_id"]),
                responses=tuple(int(v) for v in entry["responses"]),
            )
            for entry in entries
        ]
    return out
