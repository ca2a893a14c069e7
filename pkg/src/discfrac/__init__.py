"""Discrete fractional calculus of variations on Z and hZ."""
