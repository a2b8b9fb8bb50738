"""Named experiment presets for every published table and figure.

Tables 1-4 use stochastic-volatility factors, tables 5-8 Wiener factors; within each
group the idiosyncratic driver is Wiener, then NTS with alpha = 0.25, 0.5, 0.75. Each
table preset carries its published cells, mean of r-hat and P(r-hat = 6), per estimator
in ``ESTIMATOR_NAMES`` order.
"""

from dataclasses import dataclass, field

from weakfactor.config import ModelConfig, SweepParameter
from weakfactor.errors import ParameterError
from weakfactor.estimators import ESTIMATOR_NAMES

SAMPLE_SIZES: tuple[int, ...] = (26, 78, 390)
DIMENSIONS: tuple[int, ...] = (100, 500, 1000, 1500)
DEFAULT_REPLICATIONS = 1000

# Operating point of every figure.
FIGURE_N = 78
FIGURE_D = 500

Cell = tuple[float, float]
ReferenceTable = dict[tuple[int, int], tuple[Cell, Cell, Cell, Cell, Cell]]

_SATURATED: Cell = (20.0, 0.0)

# fmt: off
_TABLE1: ReferenceTable = {
    (26, 100): (_SATURATED, (4.63, 0.17), _SATURATED, (9.90, 0.11), (2.37, 0.02)),
    (26, 500): (_SATURATED, (4.74, 0.20), _SATURATED, (4.34, 0.14), (3.47, 0.09)),
    (26, 1000): (_SATURATED, (4.85, 0.25), _SATURATED, (4.26, 0.13), (3.86, 0.14)),
    (26, 1500): (_SATURATED, (4.91, 0.28), _SATURATED, (4.20, 0.12), (4.14, 0.19)),
    (78, 100): ((5.88, 0.41), (4.73, 0.21), (6.98, 0.23), (4.32, 0.17), (3.75, 0.17)),
    (78, 500): ((5.81, 0.46), (5.29, 0.49), (5.73, 0.45), (5.52, 0.58), (5.36, 0.55)),
    (78, 1000): ((6.01, 0.49), (5.44, 0.58), (5.29, 0.36), (5.53, 0.62), (5.62, 0.67)),
    (78, 1500): ((6.10, 0.55), (5.51, 0.62), (5.03, 0.28), (5.54, 0.65), (5.72, 0.73)),
    (390, 100): ((4.75, 0.20), (5.09, 0.30), (6.62, 0.33), (4.23, 0.19), (5.51, 0.33)),
    (390, 500): ((4.81, 0.20), (5.65, 0.61), (6.43, 0.43), (5.66, 0.62), (6.57, 0.43)),
    (390, 1000): ((4.94, 0.26), (5.75, 0.71), (6.20, 0.48), (6.33, 0.58), (6.65, 0.43)),
    (390, 1500): ((4.97, 0.27), (5.78, 0.76), (5.97, 0.53), (6.21, 0.69), (6.59, 0.49)),
}

_TABLE2: ReferenceTable = {
    (26, 100): (_SATURATED, (5.14, 0.26), _SATURATED, (13.77, 0.07), (2.70, 0.05)),
    (26, 500): (_SATURATED, (5.26, 0.41), _SATURATED, (5.14, 0.37), (4.06, 0.22)),
    (26, 1000): (_SATURATED, (5.34, 0.48), _SATURATED, (5.05, 0.37), (4.47, 0.32)),
    (26, 1500): (_SATURATED, (5.38, 0.50), _SATURATED, (4.97, 0.35), (4.69, 0.35)),
    (78, 100): ((10.93, 0.00), (5.17, 0.31), (14.61, 0.00), (5.31, 0.32), (4.09, 0.21)),
    (78, 500): ((9.04, 0.03), (5.61, 0.65), (8.66, 0.04), (5.87, 0.67), (5.60, 0.61)),
    (78, 1000): ((9.37, 0.01), (5.70, 0.73), (6.31, 0.38), (5.83, 0.79), (5.79, 0.71)),
    (78, 1500): ((10.21, 0.00), (5.76, 0.78), (5.51, 0.42), (5.83, 0.82), (5.86, 0.80)),
    (390, 100): ((7.76, 0.14), (5.45, 0.38), (15.00, 0.00), (5.13, 0.33), (5.53, 0.31)),
    (390, 500): ((5.49, 0.35), (5.83, 0.70), (12.02, 0.00), (6.07, 0.69), (6.41, 0.52)),
    (390, 1000): ((5.28, 0.34), (5.89, 0.81), (9.12, 0.04), (6.42, 0.59), (6.57, 0.53)),
    (390, 1500): ((5.19, 0.32), (5.91, 0.85), (7.59, 0.18), (6.31, 0.67), (6.54, 0.57)),
}

_TABLE3: ReferenceTable = {
    (26, 100): (_SATURATED, (5.03, 0.26), _SATURATED, (13.01, 0.09), (2.59, 0.04)),
    (26, 500): (_SATURATED, (5.16, 0.36), _SATURATED, (5.04, 0.32), (3.94, 0.19)),
    (26, 1000): (_SATURATED, (5.26, 0.44), _SATURATED, (4.95, 0.31), (4.41, 0.28)),
    (26, 1500): (_SATURATED, (5.33, 0.48), _SATURATED, (4.87, 0.30), (4.64, 0.33)),
    (78, 100): ((10.10, 0.00), (5.08, 0.30), (13.62, 0.00), (5.08, 0.30), (3.99, 0.21)),
    (78, 500): ((8.82, 0.03), (5.52, 0.59), (8.47, 0.05), (5.81, 0.65), (5.58, 0.59)),
    (78, 1000): ((9.22, 0.03), (5.65, 0.71), (6.34, 0.38), (5.80, 0.76), (5.73, 0.71)),
    (78, 1500): ((9.94, 0.01), (5.73, 0.77), (5.55, 0.41), (5.81, 0.80), (5.86, 0.80)),
    (390, 100): ((7.32, 0.18), (5.39, 0.35), (13.57, 0.00), (4.98, 0.31), (5.46, 0.32)),
    (390, 500): ((5.51, 0.35), (5.80, 0.68), (11.68, 0.00), (5.97, 0.69), (6.41, 0.51)),
    (390, 1000): ((5.33, 0.33), (5.88, 0.79), (9.17, 0.04), (6.42, 0.57), (6.51, 0.52)),
    (390, 1500): ((5.23, 0.33), (5.89, 0.85), (7.85, 0.15), (6.29, 0.68), (6.48, 0.58)),
}

_TABLE4: ReferenceTable = {
    (26, 100): (_SATURATED, (4.86, 0.22), _SATURATED, (12.01, 0.10), (2.52, 0.04)),
    (26, 500): (_SATURATED, (5.07, 0.32), _SATURATED, (4.83, 0.26), (3.77, 0.16)),
    (26, 1000): (_SATURATED, (5.13, 0.37), _SATURATED, (4.73, 0.25), (4.22, 0.23)),
    (26, 1500): (_SATURATED, (5.20, 0.41), _SATURATED, (4.67, 0.24), (4.49, 0.28)),
    (78, 100): ((8.75, 0.04), (4.97, 0.28), (11.68, 0.00), (4.82, 0.26), (3.83, 0.19)),
    (78, 500): ((8.34, 0.06), (5.49, 0.59), (8.06, 0.08), (5.71, 0.65), (5.53, 0.60)),
    (78, 1000): ((8.88, 0.04), (5.60, 0.67), (6.41, 0.36), (5.71, 0.71), (5.75, 0.71)),
    (78, 1500): ((9.80, 0.01), (5.66, 0.71), (5.62, 0.40), (5.72, 0.75), (5.82, 0.77)),
    (390, 100): ((6.58, 0.23), (5.34, 0.34), (11.27, 0.00), (4.80, 0.28), (5.49, 0.33)),
    (390, 500): ((5.61, 0.33), (5.77, 0.67), (10.72, 0.01), (5.89, 0.66), (6.49, 0.47)),
    (390, 1000): ((5.45, 0.33), (5.84, 0.76), (9.19, 0.05), (6.39, 0.57), (6.57, 0.49)),
    (390, 1500): ((5.33, 0.35), (5.86, 0.81), (8.03, 0.12), (6.28, 0.68), (6.56, 0.51)),
}

_TABLE5: ReferenceTable = {
    (26, 100): (_SATURATED, (5.55, 0.47), _SATURATED, (11.18, 0.20), (2.50, 0.09)),
    (26, 500): (_SATURATED, (5.79, 0.79), _SATURATED, (5.70, 0.73), (4.72, 0.53)),
    (26, 1000): (_SATURATED, (5.89, 0.89), _SATURATED, (5.69, 0.74), (5.30, 0.70)),
    (26, 1500): (_SATURATED, (5.89, 0.89), _SATURATED, (5.59, 0.66), (5.52, 0.74)),
    (78, 100): ((7.21, 0.14), (5.91, 0.80), (8.11, 0.00), (5.87, 0.77), (4.87, 0.59)),
    (78, 500): ((6.39, 0.63), (6.00, 1.00), (6.32, 0.69), (6.01, 0.98), (6.04, 0.96)),
    (78, 1000): ((6.32, 0.69), (6.00, 1.00), (6.02, 0.98), (6.00, 1.00), (6.03, 0.97)),
    (78, 1500): ((6.34, 0.67), (6.00, 1.00), (6.00, 1.00), (6.00, 1.00), (6.02, 0.98)),
    (390, 100): ((6.33, 0.66), (6.13, 0.80), (8.01, 0.02), (5.96, 0.80), (6.33, 0.53)),
    (390, 500): ((6.01, 0.99), (6.02, 0.98), (7.14, 0.20), (6.05, 0.95), (6.89, 0.42)),
    (390, 1000): ((6.00, 1.00), (6.01, 0.99), (6.53, 0.53), (6.45, 0.61), (6.90, 0.39)),
    (390, 1500): ((6.00, 1.00), (6.00, 1.00), (6.15, 0.85), (6.28, 0.73), (6.76, 0.41)),
}

_TABLE6: ReferenceTable = {
    (26, 100): (_SATURATED, (5.84, 0.56), _SATURATED, (14.96, 0.06), (2.92, 0.17)),
    (26, 500): (_SATURATED, (5.95, 0.89), _SATURATED, (5.97, 0.87), (5.17, 0.67)),
    (26, 1000): (_SATURATED, (5.98, 0.94), _SATURATED, (5.94, 0.92), (5.68, 0.83)),
    (26, 1500): (_SATURATED, (5.97, 0.96), _SATURATED, (5.91, 0.91), (5.83, 0.88)),
    (78, 100): ((11.61, 0.00), (6.01, 0.80), (15.00, 0.00), (6.29, 0.68), (4.91, 0.56)),
    (78, 500): ((9.63, 0.01), (6.01, 0.99), (9.28, 0.01), (6.12, 0.89), (6.08, 0.93)),
    (78, 1000): ((9.72, 0.00), (6.00, 1.00), (6.72, 0.46), (6.03, 0.97), (6.06, 0.95)),
    (78, 1500): ((10.47, 0.00), (6.00, 1.00), (6.17, 0.84), (6.01, 0.99), (6.06, 0.94)),
    (390, 100): ((8.86, 0.02), (6.18, 0.75), (15.64, 0.00), (6.26, 0.70), (6.48, 0.48)),
    (390, 500): ((6.31, 0.73), (6.03, 0.97), (12.66, 0.00), (6.21, 0.81), (6.66, 0.62)),
    (390, 1000): ((6.10, 0.90), (6.02, 0.98), (9.52, 0.02), (6.54, 0.57), (6.63, 0.60)),
    (390, 1500): ((6.06, 0.94), (6.00, 1.00), (7.78, 0.15), (6.37, 0.67), (6.55, 0.62)),
}

_TABLE7: ReferenceTable = {
    (26, 100): (_SATURATED, (5.79, 0.55), _SATURATED, (14.54, 0.07), (2.87, 0.14)),
    (26, 500): (_SATURATED, (5.91, 0.88), _SATURATED, (5.90, 0.86), (5.15, 0.67)),
    (26, 1000): (_SATURATED, (5.96, 0.94), _SATURATED, (5.90, 0.90), (5.60, 0.81)),
    (26, 1500): (_SATURATED, (5.97, 0.95), _SATURATED, (5.88, 0.88), (5.74, 0.86)),
    (78, 100): ((10.90, 0.00), (6.00, 0.77), (14.10, 0.00), (6.19, 0.70), (4.93, 0.57)),
    (78, 500): ((9.36, 0.00), (6.00, 0.99), (9.06, 0.01), (6.12, 0.89), (6.07, 0.93)),
    (78, 1000): ((9.69, 0.00), (6.00, 1.00), (6.82, 0.42), (6.02, 0.98), (6.06, 0.95)),
    (78, 1500): ((10.34, 0.00), (6.00, 1.00), (6.22, 0.80), (6.00, 0.99), (6.05, 0.96)),
    (390, 100): ((8.61, 0.03), (6.16, 0.78), (14.47, 0.00), (6.20, 0.74), (6.34, 0.51)),
    (390, 500): ((6.38, 0.68), (6.03, 0.97), (12.38, 0.00), (6.17, 0.84), (6.59, 0.62)),
    (390, 1000): ((6.14, 0.87), (6.01, 0.99), (9.61, 0.01), (6.55, 0.56), (6.65, 0.57)),
    (390, 1500): ((6.10, 0.90), (6.00, 1.00), (7.99, 0.12), (6.35, 0.68), (6.51, 0.62)),
}

_TABLE8: ReferenceTable = {
    (26, 100): (_SATURATED, (5.71, 0.52), _SATURATED, (13.44, 0.12), (2.79, 0.15)),
    (26, 500): (_SATURATED, (5.92, 0.88), _SATURATED, (5.88, 0.86), (5.14, 0.65)),
    (26, 1000): (_SATURATED, (5.95, 0.94), _SATURATED, (5.86, 0.87), (5.51, 0.78)),
    (26, 1500): (_SATURATED, (5.94, 0.94), _SATURATED, (5.83, 0.84), (5.74, 0.85)),
    (78, 100): ((9.83, 0.00), (6.01, 0.81), (12.48, 0.00), (6.08, 0.77), (4.88, 0.59)),
    (78, 500): ((8.90, 0.02), (6.00, 1.00), (8.61, 0.03), (6.07, 0.94), (6.07, 0.94)),
    (78, 1000): ((9.33, 0.01), (6.00, 1.00), (6.87, 0.39), (6.01, 0.99), (6.05, 0.95)),
    (78, 1500): ((9.97, 0.00), (6.00, 1.00), (6.34, 0.71), (6.00, 1.00), (6.03, 0.97)),
    (390, 100): ((7.91, 0.08), (6.16, 0.76), (12.30, 0.00), (6.12, 0.76), (6.35, 0.51)),
    (390, 500): ((6.46, 0.62), (6.03, 0.97), (11.50, 0.00), (6.11, 0.90), (6.71, 0.54)),
    (390, 1000): ((6.29, 0.75), (6.01, 0.99), (9.66, 0.01), (6.55, 0.54), (6.72, 0.52)),
    (390, 1500): ((6.21, 0.81), (6.00, 1.00), (8.30, 0.07), (6.36, 0.65), (6.66, 0.52)),
}
# fmt: on


@dataclass(frozen=True)
class Panel:
    """One (factor model, idiosyncratic model) combination."""

    factor_kind: str
    idio_kind: str
    alpha: float | None = None

    def configure(self, n: int, d: int, replications: int, seed: int) -> ModelConfig:
        return ModelConfig.model_validate(
            {
                "n": n,
                "d": d,
                "factor_kind": self.factor_kind,
                "idio_kind": self.idio_kind,
                "alpha": self.alpha,
                "replications": replications,
                "master_seed": seed,
            }
        )


IDIO_PANELS: tuple[tuple[str, float | None], ...] = (
    ("wiener", None),
    ("nts", 0.25),
    ("nts", 0.5),
    ("nts", 0.75),
)


@dataclass(frozen=True)
class TablePreset:
    """An (n, d) grid for one panel, with the published cells."""

    preset_id: str
    title: str
    panel: Panel
    reference: ReferenceTable

    def expand(
        self, replications: int = DEFAULT_REPLICATIONS, seed: int = 0
    ) -> list[ModelConfig]:
        """One config per (n, d) cell, n-major as in the published layout."""
        return [
            self.panel.configure(n, d, replications, seed)
            for n in SAMPLE_SIZES
            for d in DIMENSIONS
        ]

    def reference_cell(self, n: int, d: int, estimator: str) -> Cell | None:
        """Published (mean, probability) for a cell, or None if it is not in the table."""
        cells = self.reference.get((n, d))
        if cells is None or estimator not in ESTIMATOR_NAMES:
            return None
        return cells[ESTIMATOR_NAMES.index(estimator)]


@dataclass(frozen=True)
class FigurePreset:
    """A one-parameter sweep at the figure operating point, for each panel."""

    preset_id: str
    title: str
    parameter: SweepParameter
    grid: tuple[float, ...]
    panels: tuple[Panel, ...] = field(default_factory=tuple)
    n: int = FIGURE_N
    d: int = FIGURE_D

    def expand(
        self, replications: int = DEFAULT_REPLICATIONS, seed: int = 0
    ) -> list[ModelConfig]:
        """Base configs, one per panel; the sweep varies ``parameter`` on each."""
        return [panel.configure(self.n, self.d, replications, seed) for panel in self.panels]


def _table_presets() -> dict[str, TablePreset]:
    references = (_TABLE1, _TABLE2, _TABLE3, _TABLE4, _TABLE5, _TABLE6, _TABLE7, _TABLE8)
    presets = {}
    for k, reference in enumerate(references):
        factor_kind = "sv" if k < 4 else "wiener"
        idio_kind, alpha = IDIO_PANELS[k % 4]
        driver = "Wiener" if alpha is None else f"NTS alpha={alpha:g}"
        factors = "SV factors" if factor_kind == "sv" else "Wiener factors"
        preset_id = f"table{k + 1}"
        presets[preset_id] = TablePreset(
            preset_id=preset_id,
            title=f"{factors}, {driver} idiosyncratic driver",
            panel=Panel(factor_kind, idio_kind, alpha),
            reference=reference,
        )
    return presets


def _figure_presets() -> dict[str, FigurePreset]:
    every_idio = tuple(
        Panel(factor_kind, idio_kind, alpha)
        for factor_kind in ("wiener", "sv")
        for idio_kind, alpha in IDIO_PANELS
    )
    nts_075 = tuple(Panel(factor_kind, "nts", 0.75) for factor_kind in ("wiener", "sv"))
    return {
        "fig1": FigurePreset(
            "fig1",
            "Sensitivity of r^P,cor to the scale a of g(d) = a sqrt(log log d)",
            "g_scale",
            (0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0),
            every_idio,
        ),
        "fig2": FigurePreset(
            "fig2",
            "Sensitivity of r^P,cor to gamma",
            "gamma",
            (0.01, 0.02, 0.05, 0.1, 0.2),
            every_idio,
        ),
        "fig3": FigurePreset(
            "fig3",
            "Effect of the signal-to-noise ratio theta",
            "theta",
            (0.5, 1.0, 1.5, 2.0, 3.0),
            nts_075,
        ),
        "fig4": FigurePreset(
            "fig4",
            "Effect of the idiosyncratic cross-sectional correlation phi",
            "phi",
            (0.0, 0.1, 0.3, 0.5, 0.7),
            nts_075,
        ),
    }


TABLES: dict[str, TablePreset] = _table_presets()
FIGURES: dict[str, FigurePreset] = _figure_presets()


def list_presets() -> list[TablePreset | FigurePreset]:
    """Every preset, tables first."""
    return [*TABLES.values(), *FIGURES.values()]


def get_preset(preset_id: str) -> TablePreset | FigurePreset:
    """Look up a preset by id (table1..table8, fig1..fig4)."""
    preset = TABLES.get(preset_id) or FIGURES.get(preset_id)
    if preset is None:
        known = ", ".join(p.preset_id for p in list_presets())
        raise ParameterError(f"Unknown preset: {preset_id} (known: {known})")
    return preset


def expand_table(
    preset_id: str, replications: int = DEFAULT_REPLICATIONS, seed: int = 0
) -> list[ModelConfig]:
    preset = get_preset(preset_id)
    if not isinstance(preset, TablePreset):
        raise ParameterError(f"{preset_id} is a figure preset, not a table")
    return preset.expand(replications, seed)


def expand_figure(
    preset_id: str, replications: int = DEFAULT_REPLICATIONS, seed: int = 0
) -> list[ModelConfig]:
    preset = get_preset(preset_id)
    if not isinstance(preset, FigurePreset):
        raise ParameterError(f"{preset_id} is a table preset, not a figure")
    return preset.expand(replications, seed)
