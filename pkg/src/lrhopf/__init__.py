"""Exact computations with the enveloping Hopf algebroid of a Lie-Rinehart algebra."""
