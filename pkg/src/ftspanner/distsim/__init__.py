"""Round-by-round LOCAL and CONGEST simulation of distributed spanner constructions."""

from .congest import baswana_sen, dk_congest_ft_spanner
from .decomposition import ClusterDecomposition, padded_decomposition
from .local import local_ft_spanner
from .network import CONGEST, LOCAL, SimConfig, SimTrace, message_bits

__all__ = [
    "CONGEST",
    "LOCAL",
    "ClusterDecomposition",
    "SimConfig",
    "SimTrace",
    "baswana_sen",
    "dk_congest_ft_spanner",
    "local_ft_spanner",
    "message_bits",
    "padded_decomposition",
]
