"""Monte Carlo simulator for TDD vs FDD downlink efficiency in LEO systems."""

from .channel import CsiAgingModel, LinkBudgetParams, LinkQuality
from .config import ConfigError, ScenarioConfig, load_config
from .duplexing import FrameScheme, OverlapWindow, ResourceShare, SchemeKind
from .geometry import ConstellationGeometry, SightLine, UePlacement
from .sync import GnssErrorModel, SyncBudget, SyncReport

__all__ = [
    "ConstellationGeometry",
    "UePlacement",
    "SightLine",
    "LinkBudgetParams",
    "CsiAgingModel",
    "LinkQuality",
    "FrameScheme",
    "SchemeKind",
    "OverlapWindow",
    "ResourceShare",
    "GnssErrorModel",
    "SyncBudget",
    "SyncReport",
    "ScenarioConfig",
    "ConfigError",
    "load_config",
]

__version__ = "0.1.0"
