import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("SECMUX_PURE"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "secmux._sweep_kernel",
                    ["src/secmux/_sweep_kernel.pyx"],
                    # no FP contraction: candidate coordinates must match the
                    # numpy backend bit for bit
                    extra_compile_args=["-O3", "-ffp-contract=off"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # No Cython: install pure-Python; the sweep falls back to numpy.
        ext_modules = []

setup(ext_modules=ext_modules)
