"""Bivariate means, MN-convexity and mean-inequality audits."""
