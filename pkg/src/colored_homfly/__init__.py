"""Colored HOMFLY polynomials of twist knots and the Whitehead link."""
