"""Parking functions, the circular-street argument, and the Catalan count of
weakly increasing parking functions, checked exhaustively."""

from circpark.counts import catalan_closed, catalan_recursive, central_binomial, pollak_count
from circpark.enumeration import (
    OrbitClass,
    iter_contents,
    iter_tuples,
    iter_weakly_increasing,
    orbit_of,
    partition_orbits,
)
from circpark.errors import DegenerateOrbit, InvalidInput, ResourceBoundExceeded
from circpark.maps import Content, Relabeling, kappa, omega, phi, pollak_rotate, sigma_apply, sigma_of, tau
from circpark.parking import (
    ParkingOutcome,
    PrefTuple,
    is_parking_function_char,
    is_parking_function_sim,
    is_weakly_increasing,
    park_circular,
    park_linear,
)
from circpark.verifier import (
    OrbitReport,
    VerificationReport,
    reproduce_example,
    sample_verify,
    verify_orbit,
    verify_pollak,
    verify_theorem,
)

__version__ = "0.1.0"
