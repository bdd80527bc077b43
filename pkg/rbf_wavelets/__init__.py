"""
Orthonormal radial-basis-function wavelet transforms.

Discrete Bessel series, continuous B- and K-transforms, convection-diffusion and
time-space kernels, classic RBF fitting, and checks for the operator identities.
"""
