"""Fixed unit system: hbar = 2m = e0 = 1, hence h = 2*pi.

Consequences used throughout the package:

* dispersion on an edge with constant potential V:  E = k**2 + V,
  so the wavenumber is k = sqrt(E - V);
* group velocity in a lead (V = 0) at energy E:  v = dE/dk = 2*k;
* coherent current per unit energy window:  (e0/h) |s|**2 = |s|**2 / (2*pi).

These are package constants, not per-run settings; every CSV the tools
emit states them in its header.
"""

import math

HBAR = 1.0
TWO_M = 1.0
E0 = 1.0
H = 2.0 * math.pi

UNITS_NOTE = "hbar=1 2m=1 e0=1 h=2pi; k = sqrt(E - V); v = 2k"
