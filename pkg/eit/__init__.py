"""
EIT transient simulator package.

This package contains:
- shared/: Common infrastructure (errors, run logging, handoff contracts)
- model/: Parameter records, density matrices, switching schedules, dressed states
- ode/: Direct integration of the density-matrix equations of motion
- laplace/: Laplace-domain rational functions, residues and inversion
- analytic/: Closed-form pumping, turn-on and turn-off transients
- vector3/: Decay-free 3D vector model
- observe/: Transmission, spectra and (t, detuning) scans
- fit/: Turn-off trace fitting and envelope decay
- graph/: Three-route comparison pipeline (ode -> laplace -> analytic)
- cli/: Command-line front end, config files and figure presets
"""

from eit.graph.build import create_compare_graph
from eit.model.params import LambdaParams, validate

__all__ = ["create_compare_graph", "LambdaParams", "validate"]
