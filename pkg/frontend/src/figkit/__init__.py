"""Figure rendering for the tricorr CLI's CSV outputs."""

__version__ = "0.1.0"

from .render import FigureSpec, SchemaError, load_dynamics_series, load_w_grid, render

__all__ = ["FigureSpec", "SchemaError", "load_dynamics_series", "load_w_grid", "render"]
