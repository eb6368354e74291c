# SPDX-License-Identifier: Apache-2.0
"""CSI acquisition simulator for IRS-assisted mmWave links."""

from ._irssim import *  # noqa: F401,F403
from ._irssim import __doc__  # noqa: F401

__version__ = "0.1.0"
