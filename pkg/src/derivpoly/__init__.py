"""Derivative polynomials and closed-form higher derivatives."""
