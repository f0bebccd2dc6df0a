import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("SOCENTER_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "socenter._straighten",
                    ["src/socenter/_straighten.pyx"],
                    extra_compile_args=["-O3"],
                    optional=True,
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
