"""Bill-of-materials power and cost roll-up for the analog encoder board."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .errors import BomFormatError, ParameterError


@dataclass(frozen=True)
class ComponentSpec:
    """One BOM line: a part, how many, and its unit power [W] and cost."""

    name: str
    count: int
    unit_power: float
    unit_cost: float

    def __post_init__(self):
        if int(self.count) != self.count or self.count < 0:
            raise ParameterError(f"count must be an integer >= 0, got {self.count!r}")
        if self.unit_power < 0:
            raise ParameterError(f"unit_power must be >= 0, got {self.unit_power!r}")
        if self.unit_cost < 0:
            raise ParameterError(f"unit_cost must be >= 0, got {self.unit_cost!r}")

    @property
    def power(self) -> float:
        return self.count * self.unit_power

    @property
    def cost(self) -> float:
        return self.count * self.unit_cost


@dataclass(frozen=True)
class BomReport:
    """Totals plus the per-component breakdown they were summed from."""

    components: tuple[ComponentSpec, ...]
    total_power: float
    total_cost: float


def estimate_power(bom: list[ComponentSpec]) -> float:
    """Total power in watts: sum of count * unit_power."""
    return sum(c.power for c in bom)


def estimate_cost(bom: list[ComponentSpec]) -> float:
    """Total cost: sum of count * unit_cost."""
    return sum(c.cost for c in bom)


def make_report(bom: list[ComponentSpec]) -> BomReport:
    return BomReport(tuple(bom), estimate_power(bom), estimate_cost(bom))


def derive_bom(params) -> list[ComponentSpec]:
    """Structural component counts for an L-level board (zero unit power/cost).

    One multiplexer per level by construction. The comparator and op-amp
    counts follow the affine rules L+6 and L+5, which are fitted to the
    single published 11-level tally (17 comparators, 16 op-amps); treat
    extrapolations away from L=11 as what-if estimates, not datasheet facts.
    """
    levels = getattr(params, "num_levels", params)
    if int(levels) != levels or levels < 0:
        raise ParameterError(f"level count must be an integer >= 0, got {levels!r}")
    levels = int(levels)
    return [
        ComponentSpec("op-amp", levels + 5, 0.0, 0.0),
        ComponentSpec("comparator", levels + 6, 0.0, 0.0),
        ComponentSpec("analog-multiplexer", levels, 0.0, 0.0),
    ]


def load_bom(path) -> list[ComponentSpec]:
    """Parse a BOM text file: one 'name, count, unit_power_w, unit_cost' line
    per component; blank lines and '#' comments are skipped."""
    bom = []
    text = Path(path).read_text(encoding="utf-8")
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split(",")]
        if len(fields) != 4:
            raise BomFormatError(line_no, f"expected 4 comma-separated fields, got {len(fields)}")
        name, count_s, power_s, cost_s = fields
        if not name:
            raise BomFormatError(line_no, "component name is empty")
        try:
            count = int(count_s)
            unit_power = float(power_s)
            unit_cost = float(cost_s)
        except ValueError as exc:
            raise BomFormatError(line_no, f"bad numeric field ({exc})") from None
        try:
            bom.append(ComponentSpec(name, count, unit_power, unit_cost))
        except ParameterError as exc:
            raise BomFormatError(line_no, str(exc)) from None
    return bom
