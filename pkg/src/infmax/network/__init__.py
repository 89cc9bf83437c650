"""
Multilayer network model and synthetic generators.
"""

from .core import ActorId, LayerId, MultilayerNetwork, MultilayerNetworkBuilder
from .generators import ErGenConfig, PaGenConfig, generate_er, generate_pa

__all__ = [
    "ActorId",
    "LayerId",
    "MultilayerNetwork",
    "MultilayerNetworkBuilder",
    "ErGenConfig",
    "PaGenConfig",
    "generate_er",
    "generate_pa",
]
