"""Default resource ceilings for the exhaustive search routines.

Every enumeration in the package is gated by one of these knobs; callers can
raise them explicitly, and the CLI reads ``ITL_MAX_ATOMS`` / ``ITL_MAX_WORLDS``
when no flag is given.
"""

# Upper bound on the number of independent Boolean atoms a routine may
# enumerate over (2**MAX_ATOMS assignments): valuation bits n*W in frame
# checks, and the atom set of a reduced normal form.
DEFAULT_MAX_ATOMS = 20

# Upper bound on window width for the uniform decision procedure.
DEFAULT_MAX_WORLDS = 12

# Valuation batches are processed in chunks of 2**CHUNK_BITS.
DEFAULT_CHUNK_BITS = 16


class ResourceCapError(RuntimeError):
    """An enumeration would exceed its configured ceiling."""
