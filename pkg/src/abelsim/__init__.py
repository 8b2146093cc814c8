"""Exact classical simulation of normalizer circuits over Z^a x T^b x Z_N."""
