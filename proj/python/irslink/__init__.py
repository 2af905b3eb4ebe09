"""IRS-assisted MISO link simulator.

Spectral and energy efficiency of a single-user MISO downlink relayed by an
intelligent reflecting surface, with transmitter RF impairments and surface
phase errors. The heavy lifting lives in the compiled extension; this
package just re-exports it.
"""

from ._irslink import *  # noqa: F401,F403
from ._irslink import __version__  # noqa: F401
