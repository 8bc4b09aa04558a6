"""Secrecy-degrees-of-freedom toolkit for the MIMO two-user wiretap
interference channel: region computation, boundary-achieving precoder
construction, rank- and rate-based verification, and Monte-Carlo channel
simulation."""

from .region import AntennaConfig, SdofPoint, SdofRegion, boundary, subset_dims
from .precoder import ChannelSet, PrecoderPair, Subset, construct, subset_basis
from .verifier import membership, rates, sdof_of, slope_estimate
from .chansim import Scenario, gaussian_channels, monte_carlo

__version__ = "0.1.0"

__all__ = [
    "AntennaConfig",
    "ChannelSet",
    "PrecoderPair",
    "Scenario",
    "SdofPoint",
    "SdofRegion",
    "Subset",
    "boundary",
    "construct",
    "gaussian_channels",
    "membership",
    "monte_carlo",
    "rates",
    "sdof_of",
    "slope_estimate",
    "subset_basis",
    "subset_dims",
]
