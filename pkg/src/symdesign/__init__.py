"""Feasibility toolkit for symmetric designs."""
