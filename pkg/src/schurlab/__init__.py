"""Chern and Schur forms of Hermitian curvature at a point, and positivity of (p,p)-forms."""
