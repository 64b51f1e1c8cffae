"""Figure rendering for the interference-channel bounds toolkit.

Consumes the toolkit's documented CSV outputs (gap surface and region
frontiers); no in-process coupling to the toolkit itself.
"""

from .render import SchemaError, SurfaceTable, render_regions, render_surface

__version__ = "0.1.0"
