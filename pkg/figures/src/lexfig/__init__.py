"""Figure rendering for roadmap planning outputs.

Consumes the planning toolkit's file formats directly: scenario JSON
for workspace overlays, summary CSV for metric band charts, and plan
JSON payloads for route polylines.  No planning code is imported;
this package stays on its own side of the file boundary.
"""

from .charts import band_series, read_summary
from .figspec import FigureSpec, load_figure_spec
from .render import render
from .workspace import load_workspace, visibility_image

__version__ = "0.1.0"

__all__ = [
    "FigureSpec",
    "band_series",
    "load_figure_spec",
    "load_workspace",
    "read_summary",
    "render",
    "visibility_image",
]
