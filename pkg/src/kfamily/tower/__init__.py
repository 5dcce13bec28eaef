"""Blowup towers: charts on exceptional fibers and the maps between them."""

from .atlas import TOWERS, ChartAtlas, build_tower
from .charts import Chart, ChartFactory
from .limits import (
    LimitUndefined,
    MoebiusMap,
    induced_fiber_map,
    map_order,
    order_of_vanishing,
    pull_through,
)
from .orbits import (
    Collision,
    OrbitPoint,
    OrbitReport,
    OrbitTrace,
    exceptional_orbit_report,
    genericity_report,
)

__all__ = ["TOWERS", "Chart", "ChartAtlas", "ChartFactory", "Collision", "LimitUndefined",
           "MoebiusMap", "OrbitPoint", "OrbitReport", "OrbitTrace", "build_tower",
           "exceptional_orbit_report", "genericity_report", "induced_fiber_map", "map_order",
           "order_of_vanishing", "pull_through"]
