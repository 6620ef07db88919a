"""Exact gauge sums, Cantor geometry and L^r probes for the Cantor counterexample.

Rationals go in and come out as fractions.Fraction; intervals come back as Enclosure.
Pairs are named "smooth", "zero", "main" or "thin"; gauges use the CLI gauge
strings ("const:1/5", "pwc:FILE", "rank:FILE").
"""

from ._core import *  # noqa: F401,F403
from ._core import Enclosure, LrgaugeError  # noqa: F401
