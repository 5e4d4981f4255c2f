"""Jordanian twist families for the algebra {P_mu, D}: exact Hopf data, realizations and star products."""

__version__ = "0.1.0"
