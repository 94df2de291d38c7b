"""Physical constants in the unit system used throughout the package.

Energies are ordinary frequencies (MHz or GHz), lengths are atomic units
internally and micrometers at interfaces, fields are V/cm and Gauss,
times are microseconds.  Angular frequency (the 2*pi) enters only inside
the propagator.
"""

# Hartree energy as an ordinary frequency, E_h / h.
HARTREE_MHZ = 6.579683920502e9

# Atomic unit of electric field, in V/cm.
FIELD_AU_VCM = 5.14220674763e9

# Bohr radius in meters.
BOHR_RADIUS_M = 0.52917721067e-10

# One micrometer in Bohr radii.
MICROMETER_AU = 1e-6 / BOHR_RADIUS_M

# Bohr magneton as ordinary frequency per Gauss, mu_B / h.
BOHR_MAGNETON_MHZ_G = 1.39962449361

# Infinite-mass Rydberg constant as frequency, R_inf * c, in GHz.
RYDBERG_INF_GHZ = 3.2898419602508e6

# Electron mass in unified atomic mass units.
ELECTRON_MASS_U = 5.48579909065e-4
